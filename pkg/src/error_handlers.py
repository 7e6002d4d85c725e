import logging

import click

from src.errors import ConfigurationError
from src.errors import IsphError

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def _fail(ctx: click.Context, message: str, status: int):
    click.echo(f"Error: {message}", err=True)
    ctx.exit(status)


class ErrorHandlingGroup(click.Group):
    """Click group that turns library exceptions into messages and exit statuses.

    Configuration errors exit with status 2 like click's own usage errors; input,
    computation and I/O errors exit with status 1.
    """

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except ConfigurationError as e:
            logger.debug(f"Configuration error: {e}", exc_info=True)
            _fail(ctx, str(e), EXIT_USAGE)
        except (IsphError, OSError) as e:
            logger.debug(f"Command failed: {e}", exc_info=True)
            _fail(ctx, str(e), EXIT_FAILURE)
        except Exception as e:
            debug = bool(getattr(ctx.obj, "debug", False))
            logger.error(f"Unhandled exception: {str(e)}", exc_info=debug)
            _fail(ctx, f"An unexpected error occurred: {e}", EXIT_FAILURE)
