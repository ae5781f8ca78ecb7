import time

import asyncclick as click
from humanfriendly import format_timespan

from batman.common import AliasedCommands, commandgroup
from batman.common.options import HASH_HEX
from batman.errors import BatmanError
from batman.sybilguard.pow import NONCE_SIZE, UuidClaim, mine_uuid, threshold_for_bits, uuid_hash, verify_uuid

difficulty_option = click.option(
    "--difficulty-bits",
    type=click.IntRange(0, 256),
    default=None,
    help="Leading-zero bits of work required (default: config).",
)


def _threshold(difficulty_bits: int | None) -> int:
    from batman import cfg

    return threshold_for_bits(cfg.sybilguard.difficulty_bits if difficulty_bits is None else difficulty_bits)


@commandgroup.group("pow", cls=AliasedCommands)
async def pow_() -> None:
    """Mine and verify proof of work on hash_uuid."""
    pass


@pow_.command()
@click.option("--seed-hex", "seed", type=HASH_HEX, required=True, help="Master key hash the work is bound to.")
@difficulty_option
@click.option("--max-iters", type=click.IntRange(min=1), default=None, help="Nonces to try (default: config).")
async def mine(seed: bytes, difficulty_bits: int | None, max_iters: int | None) -> None:
    """Search for a nonce whose uuid hash meets the difficulty."""
    from batman import cfg

    started = time.monotonic()
    mined = mine_uuid(seed, _threshold(difficulty_bits), max_iters or cfg.sybilguard.max_iters)
    click.echo(f"nonce {mined.nonce}")
    click.echo(f"uuid  {mined.uuid.hex()}")
    click.echo(f"hash  {mined.hash_uuid.hex()}")
    click.secho(
        f"Found after {mined.iterations} iterations in {format_timespan(time.monotonic() - started)}",
        fg="green",
        err=True,
    )


@pow_.command()
@click.option("--seed-hex", "seed", type=HASH_HEX, required=True, help="Master key hash the work is bound to.")
@click.option("--nonce", type=click.IntRange(0, (1 << (8 * NONCE_SIZE)) - 1), required=True)
@click.option(
    "--uuid-hash", "uuid_hash_claim", type=HASH_HEX, default=None, help="Claimed hash_uuid; recomputed if unset."
)
@difficulty_option
async def verify(seed: bytes, nonce: int, uuid_hash_claim: bytes | None, difficulty_bits: int | None) -> None:
    """Check that the nonce is valid work for the seed."""
    digest = uuid_hash(seed, nonce)
    claim = UuidClaim(hash_m=seed, hash_uuid=uuid_hash_claim or digest)
    if not verify_uuid(claim, nonce, _threshold(difficulty_bits)):
        if claim.hash_uuid != digest:
            raise BatmanError(f"hash_uuid does not match nonce {nonce}: expected {digest.hex()}")
        raise BatmanError(f"Nonce {nonce} does not meet the difficulty")
    click.secho(f"Valid work: {claim.hash_uuid.hex()}", fg="green")
