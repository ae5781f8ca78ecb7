import asyncclick as click
import pytest

import batman
from batman.common import commandgroup, sha256
from batman.constants import SWEEP_CSV_COLUMNS, TRACE_CSV_COLUMNS
from batman.run import run_cli

ALPHA = sha256(b"alpha").hex()
BETA = sha256(b"beta").hex()


@pytest.fixture
def restore_cfg(monkeypatch):
    for name in batman.cfg.__struct_fields__:
        monkeypatch.setattr(batman.cfg, name, getattr(batman.cfg, name))


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def subcommands(name: str) -> set[str]:
    group = commandgroup.commands[name]
    assert isinstance(group, click.Group)
    return set(group.commands)


def test_every_module_has_a_subcommand() -> None:
    assert set(commandgroup.commands) == {"ledger", "identity", "wot", "pow", "rep", "simulate", "sweep"}
    assert subcommands("identity") == {"register", "rotate", "revoke-key", "revoke-master", "show", "key-valid"}
    assert subcommands("wot") == {"endorse", "status"}
    assert subcommands("rep") == {"record", "query"}
    assert subcommands("pow") == {"mine", "verify"}
    assert subcommands("ledger") == {"demo", "verify", "show"}


def test_version(capsys) -> None:
    code, out, _ = run(capsys, "--version")

    assert code == 0
    assert out.strip() == "batman 0.1.0 (model 1.0)"


def test_usage_errors_exit_two(capsys) -> None:
    code, _, err = run(capsys, "simulate", "--T", "0")
    assert code == 2
    assert "Usage" in err

    assert run(capsys, "simulate", "--bogus")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "simulate", "--p", "0.3", "--nodes", "3")[0] == 2


def test_simulate_writes_trace(capsys) -> None:
    code, out, _ = run(capsys, "simulate", "--nodes", "10", "--T", "3000", "--seed", "7")

    lines = out.splitlines()
    assert code == 0
    assert lines[0] == ",".join(TRACE_CSV_COLUMNS)
    assert len(lines) == 1 + 10 * 3000
    assert lines[1].startswith("1,0,")


def test_simulate_is_deterministic(capsys) -> None:
    first = run(capsys, "simulate", "--nodes", "3", "--T", "200", "--seed", "5")[1]
    second = run(capsys, "--seed", "5", "simulate", "--nodes", "3", "--T", "200")[1]
    other = run(capsys, "simulate", "--nodes", "3", "--T", "200", "--seed", "6")[1]

    assert first == second
    assert first != other


def test_simulate_fixed_reliabilities_and_summary(capsys) -> None:
    code, out, _ = run(capsys, "sim", "--p", "0.3", "--p", "0.9", "--T", "50")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1 + 2 * 50
    assert [line.split(",")[2] for line in lines[1:3]] == ["0.3", "0.9"]

    code, out, _ = run(capsys, "simulate", "--summary", "--nodes", "2", "--T", "300", "--engine", "vectorized")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == ",".join(SWEEP_CSV_COLUMNS)
    assert len(lines) == 1 + 2 * 4


def test_simulate_reads_params_file(tmp_path, capsys) -> None:
    params = tmp_path / "params.toml"
    params.write_text("T = 20\nn_nodes = 4\n")

    code, out, _ = run(capsys, "simulate", "--params", str(params), "--nodes", "2")

    assert code == 0
    assert len(out.splitlines()) == 1 + 2 * 20


def test_sweep_default_grid_row_count(tmp_path, capsys) -> None:
    out_path = tmp_path / "sweep.csv"

    code, out, err = run(
        capsys, "sweep", "--grid-default", "--seeds", "1", "--nodes", "1", "--workers", "2", "--out", str(out_path)
    )

    data = out_path.read_bytes()
    assert code == 0
    assert out == ""
    assert "mle  window=100" in err
    assert b"\r" not in data
    lines = data.decode("utf-8").splitlines()
    assert lines[0] == ",".join(SWEEP_CSV_COLUMNS)
    assert len(lines) == 1 + 10 * 9 * 1 * 1 * 4


def test_sweep_custom_grid(capsys) -> None:
    code, out, _ = run(
        capsys, "--seed", "3", "sweep", "--T-values", "300,600", "--windows", "50", "--seeds", "2", "--nodes", "2"
    )

    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 1 + 2 * 1 * 2 * 2 * 4
    assert {line.split(",")[5] for line in lines[1:]} == {"3", "4"}
    assert run(capsys, "sweep", "--windows", "0")[0] == 2


def test_pow_mine_and_verify(capsys) -> None:
    code, out, _ = run(capsys, "pow", "mine", "--seed-hex", ALPHA, "--difficulty-bits", "4")
    assert code == 0
    nonce = out.splitlines()[0].split()[1]

    assert run(capsys, "pow", "verify", "--seed-hex", ALPHA, "--nonce", nonce, "--difficulty-bits", "4")[0] == 0
    code, _, err = run(capsys, "pow", "verify", "--seed-hex", ALPHA, "--nonce", nonce, "--uuid-hash", "00" * 32)
    assert code == 1
    assert "does not match" in err
    code, _, err = run(capsys, "pow", "verify", "--seed-hex", ALPHA, "--nonce", nonce, "--difficulty-bits", "256")
    assert code == 1
    assert "does not meet the difficulty" in err


def test_ledger_demo_verify_and_show(tmp_path, capsys) -> None:
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"

    assert run(capsys, "ledger", "demo", "--txs", "30", "--seed", "3", "--out", str(first))[0] == 0
    assert run(capsys, "--out", str(second), "ledger", "demo", "--txs", "30", "--seed", "3")[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().splitlines()) == 30

    code, out, _ = run(capsys, "ledger", "verify", "--ledger", str(first))
    assert code == 0
    assert "Chain OK: 30 transactions, 3 sealed blocks" in out
    digest = out.split("state ")[1].strip()
    assert run(capsys, "ledger", "verify", "--ledger", str(first), "--expect-digest", digest)[0] == 0
    assert run(capsys, "ledger", "verify", "--ledger", str(first), "--expect-digest", "00")[0] == 1

    code, out, _ = run(capsys, "chain", "show", "--ledger", str(first))
    assert code == 0
    assert "Block 2" in out


def test_identity_trust_and_reputation_flow(tmp_path, capsys) -> None:
    ledger = str(tmp_path / "ledger.txt")

    code, out, _ = run(capsys, "identity", "register", "alpha", "--master", ALPHA, "--ledger", ledger)
    assert code == 0
    assert "Registered alpha at tick 0" in out
    assert run(capsys, "identity", "register", "beta", "--master", BETA, "--ledger", ledger)[0] == 0

    code, _, err = run(capsys, "identity", "register", "gamma", "--master", ALPHA, "--ledger", ledger)
    assert code == 1
    assert "Rejected: DuplicateIdentity" in err

    assert run(capsys, "wot", "endorse", "alpha", "beta", "--ledger", ledger)[0] == 0
    code, out, _ = run(capsys, "wot", "status", "beta", "--ledger", ledger)
    assert out.strip() == '{"subject":"beta","count":1,"k":1,"status":"Validated"}'

    for outcome in ("1", "0"):
        args = ("--outcome", outcome, "--reporter", "alpha", "--ledger", ledger)
        assert run(capsys, "rep", "record", "beta", *args)[0] == 0
    code, out, _ = run(capsys, "rep", "query", "beta", "--method", "mlm", "--ledger", ledger)
    assert out.strip() == "mlm 0.5 samples=2"

    assert run(capsys, "identity", "key-valid", "alpha", "signing", "--at", "5", "--ledger", ledger)[1] == "valid\n"
    assert run(capsys, "identity", "revoke-master", "alpha", "--ledger", ledger)[0] == 0
    assert run(capsys, "identity", "key-valid", "alpha", "signing", "--at", "5", "--ledger", ledger)[1] == "invalid\n"
    code, out, _ = run(capsys, "wot", "status", "beta", "--ledger", ledger)
    assert '"status":"Unvalidated"' in out

    code, out, _ = run(capsys, "identity", "show", "alpha", "--ledger", ledger)
    assert "revoked    5" in out
    code, out, _ = run(capsys, "ledger", "verify", "--ledger", ledger)
    assert "Chain OK: 6 transactions, 0 sealed blocks" in out


def test_rotation_and_key_revocation(tmp_path, capsys) -> None:
    ledger = str(tmp_path / "ledger.txt")
    run(capsys, "identity", "register", "alpha", "--master", ALPHA, "--lifetime", "100", "--ledger", ledger)

    args = ("--key", BETA, "--from", "50", "--until", "150", "--ledger", ledger)
    assert run(capsys, "identity", "rotate", "alpha", "signing", *args)[0] == 0
    assert run(capsys, "identity", "revoke-key", "alpha", "encryption", "--at", "60", "--ledger", ledger)[0] == 0
    assert run(capsys, "identity", "revoke-key", "alpha", "encryption", "--at", "61", "--ledger", ledger)[0] == 1

    valid = {
        (role, at): run(capsys, "identity", "key-valid", "alpha", role, "--at", at, "--ledger", ledger)[1].strip()
        for role in ("signing", "encryption")
        for at in ("59", "60", "149")
    }
    assert valid == {
        ("signing", "59"): "valid",
        ("signing", "60"): "valid",
        ("signing", "149"): "valid",
        ("encryption", "59"): "valid",
        ("encryption", "60"): "invalid",
        ("encryption", "149"): "invalid",
    }
    assert run(capsys, "identity", "key-valid", "alpha", "bogus", "--at", "1", "--ledger", ledger)[0] == 2


def test_config_flag_applies_to_the_run(tmp_path, capsys, restore_cfg) -> None:
    ledger = str(tmp_path / "ledger.txt")
    config = tmp_path / "config.toml"
    config.write_text("[weboftrust]\nk = 2\n")
    run(capsys, "identity", "register", "alpha", "--master", ALPHA, "--ledger", ledger)
    run(capsys, "identity", "register", "beta", "--master", BETA, "--ledger", ledger)
    run(capsys, "wot", "endorse", "alpha", "beta", "--ledger", ledger)

    code, out, _ = run(capsys, "--config", str(config), "wot", "status", "beta", "--ledger", ledger)

    assert code == 0
    assert out.strip() == '{"subject":"beta","count":1,"k":2,"status":"Unvalidated"}'


def test_domain_errors_exit_one(tmp_path, capsys) -> None:
    code, _, err = run(capsys, "identity", "show", "ghost", "--ledger", str(tmp_path / "ledger.txt"))

    assert code == 1
    assert "There was an error" in err


def test_out_of_order_requests_exit_one(tmp_path, capsys) -> None:
    ledger = str(tmp_path / "ledger.txt")
    run(capsys, "identity", "register", "alpha", "--master", ALPHA, "--ledger", ledger)
    run(capsys, "identity", "register", "beta", "--master", BETA, "--ledger", ledger)
    for at in ("5", "9"):
        args = ("--outcome", "1", "--reporter", "alpha", "--at", at, "--ledger", ledger)
        assert run(capsys, "rep", "record", "beta", *args)[0] == 0

    code, _, err = run(capsys, "rep", "query", "beta", "--method", "mlt", "--at", "4", "--ledger", ledger)
    assert code == 1
    assert "precedes the last recorded event" in err

    assert run(capsys, "identity", "revoke-master", "alpha", "--ledger", ledger)[0] == 0
    code, _, err = run(capsys, "wot", "endorse", "alpha", "beta", "--at", "0", "--ledger", ledger)
    assert code == 1
    assert "precedes the latest timestamp" in err
    code, _, err = run(capsys, "wot", "endorse", "alpha", "beta", "--ledger", ledger)
    assert code == 1
    assert "Rejected: MasterRevoked" in err
    code, out, _ = run(capsys, "ledger", "verify", "--ledger", ledger)
    assert "Chain OK: 5 transactions" in out
