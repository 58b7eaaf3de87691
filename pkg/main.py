import sys

import click
import typer
from dotenv import load_dotenv

from routers.app import cli_router

load_dotenv()

app = typer.main.get_command(cli_router)


def run_cli(argv=None):
    """Run the command line on `argv` and return the exit code instead of exiting."""
    try:
        result = app.main(args=argv, prog_name="minorcert", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run_cli())
