import asyncclick as click

from batman.common import AliasedCommands, commandgroup
from batman.common.options import at_option, ledger_option
from batman.constants import METHODS
from batman.ledger.session import LedgerSession
from batman.ledger.transactions import RecordEvent
from batman.reputation.contract import Method


@commandgroup.group(cls=AliasedCommands)
async def rep() -> None:
    """Record events and query reputation estimates."""
    pass


@rep.command()
@click.argument("node")
@click.option("--outcome", type=click.IntRange(0, 1), required=True, help="1 for success, 0 for failure.")
@click.option("--reporter", required=True, help="Hostname of the identity reporting the event.")
@at_option()
@ledger_option
async def record(node: str, outcome: int, reporter: str, at: int | None, ledger_path: str | None) -> None:
    """Record the outcome of an action performed by NODE."""
    session = LedgerSession.from_cfg(ledger_path)
    node_hash = session.identity(node).hash_m
    reporter_hash = session.identity(reporter).hash_m
    session.submit(RecordEvent(node=node_hash, outcome=outcome), reporter_hash, at)
    contract = session.state.contracts.reputation[node_hash]
    click.secho(f"Recorded outcome {outcome} for {node} at tick {contract.last_tick}", fg="green")


@rep.command()
@click.argument("node")
@click.option("--method", type=click.Choice(METHODS), default="mlm", show_default=True)
@click.option(
    "--at", type=click.IntRange(min=0), default=None, help="Tick closing the MLT window (default: last event)."
)
@ledger_option
async def query(node: str, method: Method, at: int | None, ledger_path: str | None) -> None:
    """Print the estimate of p(A_n) for NODE and the number of events it rests on."""
    session = LedgerSession.from_cfg(ledger_path)
    contract = session.state.contracts.reputation[session.identity(node).hash_m]
    estimate = contract.estimate(method, at)
    click.echo(f"{method} {estimate!r} samples={contract.sample_count(method, at)}")
