import logging
from typing import Callable, Optional

import click


class HSPException(Exception):
    """ Base class for all exceptions in the HSP solver toolkit. """
    pass


class ValidationException(HSPException):
    """ Exception is raised when graph data violates the weighted graph invariants or a node id is unknown. """
    pass


class ParamException(HSPException):
    """ Exception is raised when a solver, generator or harness parameter is out of range. """
    pass


class LogicException(HSPException):
    """ Exception is raised when an operation is called with its precondition violated. """
    pass


class TooLargeException(HSPException):
    """ Exception is raised when exact enumeration would exceed the configured subset limit. """
    pass


class ParseException(HSPException):
    """ Exception is raised when an instance file is malformed. """

    def __init__(self, message: str, path: Optional[str] = None, line_number: Optional[int] = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}:{line_number}: " if line_number is not None else f"{path}: "
        super().__init__(f"{location}{message}")


class InstanceLoadException(HSPException):
    """ Exception is raised when the benchmark harness cannot load an instance. """
    pass


class StorageException(HSPException):
    """ Exception is raised when reading or writing a file fails. """
    pass


def create_exception_handler(exit_code: int, prefix: str) -> Callable[[Exception], None]:
    """
    Build a handler that reports an exception and exits the CLI with a fixed code.

    Args:
        exit_code (int): Process exit code to use.
        prefix (str): Short label printed before the exception message.

    Returns:
        Callable[[Exception], None]: Handler raising ``click.exceptions.Exit``.
    """

    def exception_handler(exception: Exception) -> None:
        logging.getLogger("hsp.cli").debug("command failed", exc_info=exception)
        click.echo(f"{prefix}: {exception}", err=True)
        raise click.exceptions.Exit(exit_code)

    return exception_handler
