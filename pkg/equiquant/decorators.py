import collections.abc
import functools
import inspect
import typing
from threading import RLock

from wrapt import decorator

from .settings import Settings

BuildLock = RLock()


def validated(data=None, *, enabled=None):
    """
    This decorator checks the arguments of a call against the function annotations
    Annotations which are classes, Unions of classes or generic aliases are checked,
    anything else (Any, unannotated parameters, TypeVars) is accepted
    """
    if enabled is not None and not isinstance(enabled, bool):
        raise TypeError("Enabled parameter must be boolean")

    # see https://wrapt.readthedocs.io/en/latest/decorators.html#decorators-with-optional-arguments
    if data is None:
        return functools.partial(validated, enabled=enabled)

    configuration = Settings(enabled=enabled)
    signature = inspect.signature(data)
    resolved = {}

    def get_hints():
        with BuildLock:
            if "hints" not in resolved:
                try:
                    hints = typing.get_type_hints(data)
                except (NameError, TypeError):
                    hints = {}
                hints.pop("return", None)
                resolved["hints"] = hints
        return resolved["hints"]

    @decorator
    def universal(wrapped, instance, args, kwargs):
        if configuration:
            bound_args = args if instance is None else (instance,) + tuple(args)
            check_arguments(wrapped, signature, get_hints(), bound_args, kwargs, configuration)
        return wrapped(*args, **kwargs)

    return universal(data)


def check_arguments(func, signature, hints, args, kwargs, configuration):
    """
    Binds the call and reports every argument which does not conform to its hint
    """
    try:
        bound = signature.bind(*args, **kwargs)
    except TypeError:
        # Let the call itself raise the usual signature error
        return

    errors = []
    for name, value in bound.arguments.items():
        hint = hints.get(name)
        if hint is None:
            continue

        parameter = signature.parameters[name]
        if parameter.kind == inspect.Parameter.VAR_POSITIONAL:
            values = value
        elif parameter.kind == inspect.Parameter.VAR_KEYWORD:
            values = value.values()
        else:
            values = (value,)

        for item in values:
            if not conforms(item, hint):
                errors.append((name, type(item).__name__))
                break

    if errors:
        settings = configuration.errors
        settings.processor(
            settings.parser, settings.exception, errors, hints, func.__name__
        )


def conforms(value, hint) -> bool:
    """
    Shallow runtime check of a value against a type hint
    """
    if hint is typing.Any or isinstance(hint, typing.TypeVar):
        return True

    if hint is None or hint is type(None):
        return value is None

    origin = typing.get_origin(hint)

    if origin is typing.Union:
        return any(conforms(value, argument) for argument in typing.get_args(hint))

    if origin is not None:
        hint = origin

    if hint is collections.abc.Callable:
        return callable(value)

    if isinstance(hint, type):
        if hint is int and isinstance(value, bool):
            return False
        return isinstance(value, hint)

    supertype = getattr(hint, "__supertype__", None)
    if supertype is not None:
        return conforms(value, supertype)

    return True
