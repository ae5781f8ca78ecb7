import asyncclick as click
import msgspec

from batman.common.aliases import AliasedCommands
from batman.common.concurrency import process_items
from batman.common.hashing import hash_to_int, is_hash_hex, parse_hash_hex, sha256, short_hex
from batman.version import get_version_data, version_message

__all__ = [
    "AliasedCommands",
    "commandgroup",
    "hash_to_int",
    "is_hash_hex",
    "parse_csv_ints",
    "parse_hash_hex",
    "process_items",
    "sha256",
    "short_hex",
]

_version_data = get_version_data()


@click.group(context_settings={"help_option_names": ["-h", "--help"]}, cls=AliasedCommands)
@click.version_option(
    version=_version_data.current if _version_data else "unknown",
    prog_name="batman",
    message=version_message(),
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="TOML config file replacing the user config for this run.",
)
@click.option(
    "--seed",
    type=click.IntRange(0, (1 << 64) - 1),
    default=None,
    help="RNG seed for commands that draw random numbers.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write data output to this file instead of standard output.",
)
@click.pass_context
async def commandgroup(ctx: click.Context, config_path: str | None, seed: int | None, out: str | None) -> None:
    """Decentralized authentication and trust model simulator."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed
    ctx.obj["out"] = out
    if config_path:
        from batman.config import use_config_file

        try:
            use_config_file(config_path)
        except (msgspec.ValidationError, msgspec.DecodeError) as e:
            raise click.BadParameter(str(e), param_hint="--config") from e


def parse_csv_ints(value: str) -> list[int]:
    """Parse ``"500,1000,1500"`` or a ``"min:max:step"`` range into integers.

    Raises:
        ValueError: If any entry is not an integer or the range is malformed.
    """
    value = value.strip()
    if ":" in value:
        lo, hi, step = (int(part) for part in value.split(":"))
        if step < 1 or hi < lo:
            raise ValueError(f"Invalid range {value!r}")
        return list(range(lo, hi + 1, step))
    return [int(part) for part in value.split(",") if part.strip()]
