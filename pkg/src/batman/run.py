import sys
from collections.abc import Sequence
from functools import partial

import anyio
import asyncclick as click

import batman.identity.commands
import batman.ledger.commands
import batman.reputation.commands
import batman.simharness.commands
import batman.sybilguard.commands
import batman.weboftrust.commands
from batman.common import commandgroup
from batman.errors import BatmanError, ContractRejection


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run one command line and return its exit code.

    0 on success, 1 on a domain error, 2 on a usage error.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = anyio.run(partial(commandgroup.main, args=args, prog_name="batman", standalone_mode=False, obj={}))
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.secho("Aborted!", fg="red", err=True)
        return 1
    except ContractRejection as e:
        click.secho(f"Rejected: {e}", fg="red", bold=True, err=True)
        return 1
    except BatmanError as e:
        click.secho(f"There was an error: {e}", fg="red", bold=True, err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
