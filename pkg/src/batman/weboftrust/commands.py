import asyncclick as click
import msgspec

from batman.common import AliasedCommands, commandgroup
from batman.common.options import at_option, ledger_option
from batman.ledger.session import LedgerSession
from batman.ledger.transactions import Endorse


@commandgroup.group(cls=AliasedCommands)
async def wot() -> None:
    """Endorse identities and query their validation status."""
    pass


@wot.command()
@click.argument("signer")
@click.argument("subject")
@at_option()
@ledger_option
async def endorse(signer: str, subject: str, at: int | None, ledger_path: str | None) -> None:
    """SIGNER vouches for SUBJECT with its signing key."""
    session = LedgerSession.from_cfg(ledger_path)
    signer_hash = session.identity(signer).hash_m
    subject_hash = session.identity(subject).hash_m
    session.submit(Endorse(signer=signer_hash, subject=subject_hash), signer_hash, at)
    endorsement = session.state.contracts.wot.endorsements(subject_hash)[-1]
    click.secho(f"{signer} endorsed {subject} at tick {endorsement.at}", fg="green")
    click.echo(f"signature {endorsement.signature_hash.hex()}")


@wot.command()
@click.argument("subject")
@click.option("--at", type=click.IntRange(min=0), default=None, help="Tick to evaluate (default: latest).")
@click.option("-k", "k", type=click.IntRange(min=1), default=None, help="Endorsements required (default: config).")
@ledger_option
async def status(subject: str, at: int | None, k: int | None, ledger_path: str | None) -> None:
    """Print {subject, count, k, status} for SUBJECT as one JSON line."""
    session = LedgerSession.from_cfg(ledger_path)
    at = max(session.next_tick - 1, 0) if at is None else at
    k = session.state.settings.k if k is None else k
    report = session.state.contracts.wot.report(session.identity(subject).hash_m, at, k)
    click.echo(msgspec.json.encode(report).decode())
