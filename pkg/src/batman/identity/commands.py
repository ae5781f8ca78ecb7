from typing import cast

import asyncclick as click

from batman.common import AliasedCommands, commandgroup, short_hex
from batman.common.options import HASH_HEX, ROLE, at_option, ledger_option
from batman.identity.registry import KeyRole, RegistrationReceipt, SecondaryKeyRecord
from batman.ledger.scenario import make_registration
from batman.ledger.session import LedgerSession
from batman.ledger.transactions import RevokeKey, RevokeMaster, RotateKey


@commandgroup.group(cls=AliasedCommands)
async def identity() -> None:
    """Register identities and manage their keys."""
    pass


def _describe_record(record: SecondaryKeyRecord) -> str:
    line = f"{record.role.label:<14} {short_hex(record.key_hash)} [{record.valid_from}, {record.valid_until})"
    if record.revoked_at is not None:
        line += f" revoked at {record.revoked_at}"
    return line


@identity.command()
@click.argument("hostname")
@click.option("--master", "hash_m", type=HASH_HEX, required=True, help="Hash of the master public key.")
@click.option(
    "--nonce", type=click.IntRange(0, (1 << 64) - 1), default=None, help="Proof of work nonce; mined if unset."
)
@click.option("--lifetime", type=click.IntRange(min=1), default=None, help="Key validity in ticks.")
@click.option("--auth-key", type=HASH_HEX, default=None, help="Authentication key hash.")
@click.option("--signing-key", type=HASH_HEX, default=None, help="Signing key hash.")
@click.option("--encryption-key", type=HASH_HEX, default=None, help="Encryption key hash.")
@at_option()
@ledger_option
async def register(
    hostname: str,
    hash_m: bytes,
    nonce: int | None,
    lifetime: int | None,
    auth_key: bytes | None,
    signing_key: bytes | None,
    encryption_key: bytes | None,
    at: int | None,
    ledger_path: str | None,
) -> None:
    """Register HOSTNAME with one key per role."""
    from batman import cfg

    session = LedgerSession.from_cfg(ledger_path)
    at = session.next_tick if at is None else at
    lifetime = lifetime or cfg.identity.max_key_lifetime
    keys = {KeyRole.AUTHENTICATION: auth_key, KeyRole.SIGNING: signing_key, KeyRole.ENCRYPTION: encryption_key}
    payload = make_registration(
        hash_m, hostname, at, cfg.sybilguard.threshold, lifetime, cfg.sybilguard.max_iters, nonce, keys
    )
    receipt = cast("RegistrationReceipt", session.submit(payload, hash_m, at))
    click.secho(f"Registered {receipt.hostname} at tick {receipt.registered_at}", fg="green")
    click.echo(f"hash_m              {receipt.hash_m.hex()}")
    click.echo(f"hash_uuid           {payload.hash_uuid.hex()} (nonce {payload.pow_nonce})")
    click.echo(f"key contract        {receipt.key_contract_id.hex()}")
    click.echo(f"reputation contract {receipt.reputation_contract_id.hex()}")


@identity.command()
@click.argument("hostname")
@click.argument("role", type=ROLE)
@click.option("--key", "key_hash", type=HASH_HEX, required=True, help="Hash of the new key.")
@click.option("--from", "valid_from", type=click.IntRange(min=0), required=True, help="First valid tick.")
@click.option("--until", "valid_until", type=click.IntRange(min=0), required=True, help="First invalid tick.")
@ledger_option
async def rotate(
    hostname: str, role: KeyRole, key_hash: bytes, valid_from: int, valid_until: int, ledger_path: str | None
) -> None:
    """Replace the ROLE key of HOSTNAME from tick --from on."""
    session = LedgerSession.from_cfg(ledger_path)
    hash_m = session.identity(hostname).hash_m
    payload = RotateKey(hash_m=hash_m, role=role, key_hash=key_hash, valid_from=valid_from, valid_until=valid_until)
    session.submit(payload, hash_m, valid_from)
    click.secho(f"Rotated the {role.label} key of {hostname}", fg="green")


@identity.command("revoke-key")
@click.argument("hostname")
@click.argument("role", type=ROLE)
@at_option()
@ledger_option
async def revoke_key(hostname: str, role: KeyRole, at: int | None, ledger_path: str | None) -> None:
    """Revoke the ROLE key of HOSTNAME."""
    session = LedgerSession.from_cfg(ledger_path)
    hash_m = session.identity(hostname).hash_m
    session.submit(RevokeKey(hash_m=hash_m, role=role), hash_m, at)
    click.secho(f"Revoked the {role.label} key of {hostname}", fg="yellow")


@identity.command("revoke-master")
@click.argument("hostname")
@at_option()
@ledger_option
async def revoke_master(hostname: str, at: int | None, ledger_path: str | None) -> None:
    """Revoke the master key of HOSTNAME, retiring the identity for good."""
    session = LedgerSession.from_cfg(ledger_path)
    hash_m = session.identity(hostname).hash_m
    session.submit(RevokeMaster(hash_m=hash_m), hash_m, at)
    click.secho(f"Revoked the master key of {hostname}; the hostname is free again", fg="yellow")


@identity.command()
@click.argument("hostname")
@ledger_option
async def show(hostname: str, ledger_path: str | None) -> None:
    """Show the registry entry for HOSTNAME."""
    node = LedgerSession.from_cfg(ledger_path).identity(hostname)
    click.secho(node.hostname, fg="cyan", bold=True)
    click.echo(f"hash_m     {node.hash_m.hex()}")
    click.echo(f"hash_uuid  {node.hash_uuid.hex()}")
    click.echo(f"registered {node.registered_at}")
    if node.revoked:
        click.secho(f"revoked    {node.revoked_at}", fg="red")
    for role in KeyRole:
        for record in node.records(role):
            click.echo(_describe_record(record))


@identity.command("key-valid")
@click.argument("hostname")
@click.argument("role", type=ROLE)
@click.option("--at", type=click.IntRange(min=0), required=True, help="Tick to check.")
@ledger_option
async def key_valid(hostname: str, role: KeyRole, at: int, ledger_path: str | None) -> None:
    """Print whether the ROLE key of HOSTNAME is valid at tick --at."""
    session = LedgerSession.from_cfg(ledger_path)
    valid = session.state.contracts.registry.is_key_valid(session.identity(hostname).hash_m, role, at)
    click.secho("valid" if valid else "invalid", fg="green" if valid else "red")
