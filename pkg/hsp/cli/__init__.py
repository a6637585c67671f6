import logging
from typing import Callable, Dict, Optional, Type

import click
import pydantic
from dotenv import load_dotenv

from ..core.config import Config
from ..exceptions import HSPException, create_exception_handler
from .bench import bench_command
from .exact import exact_command
from .gen import gen_command
from .solve import solve_command


load_dotenv()


class HSPGroup(click.Group):
    """Click group that routes exceptions raised by commands to registered handlers."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.exception_handlers: Dict[Type[BaseException], Callable[[Exception], None]] = {}

    def add_exception_handler(self, exc_type: Type[BaseException], handler: Callable[[Exception], None]) -> None:
        self.exception_handlers[exc_type] = handler

    def _handler_for(self, exception: BaseException) -> Optional[Callable[[Exception], None]]:
        for klass in type(exception).__mro__:
            if klass in self.exception_handlers:
                return self.exception_handlers[klass]
        return None

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.exceptions.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except Exception as e:
            handler = self._handler_for(e)
            if handler is None:
                raise
            handler(e)


@click.group(cls=HSPGroup)
@click.option("--log-level", default=None, show_default="HSP_LOG_LEVEL or WARNING",
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              help="Logging verbosity.")
def cli(log_level: Optional[str]):
    """Heaviest k-subgraph solvers (OVNS, BVNS), exact oracle, generators and benchmark harness."""
    logging.basicConfig(level=(log_level or Config.LOG_LEVEL).upper(), format=Config.LOG_FORMAT)


# Register commands
cli.add_command(solve_command, name="solve")
cli.add_command(exact_command, name="exact")
cli.add_command(gen_command, name="gen")
cli.add_command(bench_command, name="bench")

# Register exception handlers
cli.add_exception_handler(pydantic.ValidationError, create_exception_handler(2, "Invalid options"))
cli.add_exception_handler(HSPException, create_exception_handler(1, "Error"))
