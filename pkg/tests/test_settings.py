import unittest

from equiquant.exceptions import ArgumentTypeError, parse_errors, process_errors
from equiquant.settings import Settings, _GLOBAL_SETTINGS, config


class SettingsTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_local_override(self):
        """
        Verifies that a local override only changes its own Settings instance
        """
        settings = Settings()
        self.assertTrue(settings)

        settings.enabled = False
        self.assertFalse(settings)
        self.assertTrue(Settings())
        self.assertTrue(_GLOBAL_SETTINGS["enabled"])

        settings.enabled = None
        self.assertTrue(settings)

    def test_global_switch_overrides_local(self):
        """
        Verifies that the global enabled switch wins over a local override
        """
        settings = Settings(enabled=True)

        config({"enabled": False})
        self.assertFalse(settings)

        config({"enabled": True})
        self.assertTrue(settings)

    def test_invariants_and_workers(self):
        """
        Verifies that the invariants switch and the worker count are read from the global config
        """
        settings = Settings()

        self.assertTrue(settings.invariants)
        self.assertEqual(settings.workers, 1)

        config({"invariants": False, "workers": 4})

        self.assertFalse(settings.invariants)
        self.assertEqual(settings.workers, 4)

        config({"workers": None})
        self.assertEqual(settings.workers, 4)

        config(reset=True)
        self.assertTrue(settings.invariants)
        self.assertEqual(settings.workers, 1)

    def test_invalid_options(self):
        """
        Verifies that unknown keys and badly typed values are rejected
        """
        with self.assertRaises(KeyError):
            config({"colour": "blue"})

        with self.assertRaises(KeyError):
            config({"workers": 0})

        with self.assertRaises(KeyError):
            config({"workers": True})

        with self.assertRaises(KeyError):
            config({"invariants": 1})

        with self.assertRaises(KeyError):
            config({"errors": {"parser": "not a function"}})

        with self.assertRaises(KeyError):
            config({"errors": {"handler": None}})

    def test_error_settings(self):
        """
        Verifies that the error parser, processor and exception can be replaced
        """
        settings = Settings()

        self.assertIs(settings.errors.parser, parse_errors)
        self.assertIs(settings.errors.processor, process_errors)
        self.assertIs(settings.errors.exception, ArgumentTypeError)

        def parser(errors, hints, function_name=""):
            return "custom"

        config({"errors": {"parser": parser, "exception": RuntimeError}})

        self.assertIs(settings.errors.parser, parser)
        self.assertIs(settings.errors.processor, process_errors)
        self.assertIs(settings.errors.exception, RuntimeError)


if __name__ == "__main__":
    unittest.main()
