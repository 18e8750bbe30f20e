import argparse

from elementary_groups.specs import ConfigError


class ArgumentParser(argparse.ArgumentParser):
    """
    An argument parser which doesn't terminate the application

    Errors are instead raised as ConfigError so that a bad flag gets the same
    exit status as a bad ring spec.

    When we would normally exit safely, such as with --help, we'll set an extra
    flag on the parser so that the caller can determine it shouldn't proceed.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.exited = False

    def error(self, message):
        raise ConfigError(message)

    def exit(self, status=0, message=None):
        if message:
            self._print_message(message)
        self.exited = True
