import inspect

from .exceptions import parse_errors, process_errors, ArgumentTypeError
from .utils import merge_dictionaries


class ErrorSettings(object):
    """
    Live view on the configured error pipeline
    """

    @property
    def parser(self):
        return _GLOBAL_SETTINGS["errors"]["parser"]

    @property
    def processor(self):
        return _GLOBAL_SETTINGS["errors"]["processor"]

    @property
    def exception(self):
        return _GLOBAL_SETTINGS["errors"]["exception"]


class Settings(object):
    """
    Settings of one validated entry point, resolved against the global options on every access
    """

    def __init__(self, enabled=None):
        self._enabled = enabled
        self._error_settings = ErrorSettings()

    @property
    def enabled(self):
        """
        Argument validation runs when the global switch is on and no local override turns it off
        """
        if not _GLOBAL_SETTINGS["enabled"]:
            return False
        if self._enabled is None:
            return True
        return self._enabled

    @enabled.setter
    def enabled(self, value):
        self._enabled = value

    @property
    def invariants(self):
        """
        Returns if internal consistency assertions are evaluated
        """
        return _GLOBAL_SETTINGS["invariants"]

    @property
    def workers(self):
        return _GLOBAL_SETTINGS["workers"]

    @property
    def errors(self):
        return self._error_settings

    def __bool__(self):
        return bool(self.enabled)


def config(options=None, *, reset=False):
    """
    Updates the global options; a None value leaves an option unchanged
    """
    if reset:
        _GLOBAL_SETTINGS.clear()
        _GLOBAL_SETTINGS.update(_default_settings())
        return

    update = merge_dictionaries(
        {
            "enabled": None,
            "invariants": None,
            "workers": None,
            "errors": {"parser": None, "processor": None, "exception": None},
        },
        options or {},
    )
    for key, value in update.items():
        if key in ("enabled", "invariants"):
            _set_flag(key, value)
        elif key == "workers":
            _set_workers(value)
        elif key == "errors":
            _set_errors(value)
        else:
            raise KeyError("Unknown option '{}'".format(key))


def _set_flag(key, value):
    if value is None:
        return
    if not isinstance(value, bool):
        raise KeyError("Option '{}' must be boolean".format(key))
    _GLOBAL_SETTINGS[key] = value


def _set_workers(value):
    if value is None:
        return
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise KeyError("Option 'workers' must be a positive integer")
    _GLOBAL_SETTINGS["workers"] = value


def _set_errors(value):
    changes = {}
    for key, handler in value.items():
        if key not in ("parser", "processor", "exception"):
            raise KeyError("Unknown option for errors: '{}'".format(key))
        if handler is None:
            continue
        if key != "exception" and not inspect.isfunction(handler):
            raise KeyError("Error {} is not a function".format(key))
        changes[key] = handler
    _GLOBAL_SETTINGS["errors"].update(changes)


def _default_settings():
    return {
        "enabled": True,
        "invariants": True,
        "workers": 1,
        "errors": {
            "parser": parse_errors,
            "processor": process_errors,
            "exception": ArgumentTypeError,
        },
    }


_GLOBAL_SETTINGS = _default_settings()
