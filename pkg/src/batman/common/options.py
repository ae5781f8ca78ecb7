from pathlib import Path
from typing import Any

import asyncclick as click

from batman.common.hashing import parse_hash_hex
from batman.identity.registry import KeyRole


class HashHex(click.ParamType):
    """A Hash256 given as 64 hex characters."""

    name = "hash"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> bytes:
        if isinstance(value, bytes):
            return value
        try:
            return parse_hash_hex(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class Role(click.ParamType):
    name = "role"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> KeyRole:
        if isinstance(value, KeyRole):
            return value
        try:
            return KeyRole.from_label(value)
        except ValueError:
            self.fail(f"{value!r} is not one of {', '.join(role.label for role in KeyRole)}", param, ctx)


HASH_HEX = HashHex()
ROLE = Role()

ledger_option = click.option(
    "--ledger",
    "ledger_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Ledger file (defaults to ledger.path from the config).",
)


def at_option(help: str = "Tick of the operation (defaults to one past the latest transaction).") -> Any:
    return click.option("--at", type=click.IntRange(min=0), default=None, help=help)


seed_option = click.option("--seed", type=click.IntRange(0, (1 << 64) - 1), default=None, help="RNG seed.")
out_option = click.option(
    "--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Output file (default: stdout)."
)


def resolve_seed(ctx: click.Context, seed: int | None, fallback: int) -> int:
    """Subcommand ``--seed``, then the global one, then ``fallback``."""
    if seed is not None:
        return seed
    global_seed = (ctx.obj or {}).get("seed")
    return fallback if global_seed is None else global_seed


def resolve_out(ctx: click.Context, out: str | None) -> str | None:
    return out if out is not None else (ctx.obj or {}).get("out")


def write_output(text: str, out: str | None) -> None:
    """Write data to ``out``, or standard output when unset. Always UTF-8 with LF line endings."""
    if out:
        with open(Path(out), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        click.secho(f"Wrote {out}", fg="green", err=True)
    else:
        click.echo(text, nl=False)
