import asyncclick as click

from batman.common import AliasedCommands, commandgroup, short_hex
from batman.common.options import ledger_option, out_option, resolve_out, resolve_seed, seed_option, write_output
from batman.errors import LedgerError
from batman.ledger.chain import verify_chain
from batman.ledger.scenario import random_scenario
from batman.ledger.session import LedgerSession
from batman.ledger.state import ContractSettings, state_digest
from batman.ledger.transactions import describe_payload, transaction_to_bytes


@commandgroup.group(cls=AliasedCommands)
async def ledger() -> None:
    """Build, inspect and verify transaction ledgers."""
    pass


@ledger.command()
@click.option("--txs", type=click.IntRange(min=1), default=100, show_default=True, help="Transactions to generate.")
@seed_option
@out_option
@click.pass_context
async def demo(ctx: click.Context, txs: int, seed: int | None, out: str | None) -> None:
    """Generate a random scenario touching every contract and write it as a ledger file."""
    from batman import cfg

    state = random_scenario(
        txs, resolve_seed(ctx, seed, cfg.simulation.seed), ContractSettings.from_cfg(cfg), cfg.ledger.block_size
    )
    write_output("".join(f"{transaction_to_bytes(tx).hex()}\n" for tx in state.transactions()), resolve_out(ctx, out))
    click.secho(
        f"{state.tx_count} transactions in {len(state.blocks)} sealed blocks, "
        f"state digest {state_digest(state.contracts).hex()}",
        fg="green",
        err=True,
    )


@ledger.command()
@ledger_option
@click.option("--expect-digest", default=None, help="Fail unless the replayed state has this digest (hex).")
async def verify(ledger_path: str | None, expect_digest: str | None) -> None:
    """Replay a ledger file and check its hash chain."""
    session = LedgerSession.from_cfg(ledger_path)
    state = session.state
    if not verify_chain(state):
        raise LedgerError(f"Hash chain of {session.path} does not verify")
    digest = state_digest(state.contracts).hex()
    if expect_digest is not None and digest != expect_digest.strip().lower():
        raise LedgerError(f"State digest {digest} does not match {expect_digest}")

    click.secho(f"Chain OK: {state.tx_count} transactions, {len(state.blocks)} sealed blocks", fg="green")
    click.echo(f"head  {state.head_hash.hex()}")
    click.echo(f"state {digest}")


@ledger.command()
@ledger_option
async def show(ledger_path: str | None) -> None:
    """List blocks and transactions."""
    state = LedgerSession.from_cfg(ledger_path).state
    for block in state.blocks:
        click.secho(f"Block {block.height} {short_hex(block.block_hash)} <- {short_hex(block.prev_hash)}", fg="cyan")
        for tx in block.txs:
            click.echo(f"  #{tx.seq} t={tx.timestamp} {describe_payload(tx.payload)}")
    if state.open_txs:
        click.secho("Open block", fg="yellow")
        for tx in state.open_txs:
            click.echo(f"  #{tx.seq} t={tx.timestamp} {describe_payload(tx.payload)}")
