from typing import Annotated, Literal

import msgspec

from batman.constants import DEFAULT_T_RANGE, DEFAULT_WINDOW_RANGE, UINT256_MAX


class BaseStruct(msgspec.Struct, forbid_unknown_fields=False):
    pass


class Ledger(BaseStruct):
    # seal the open block once it holds this many transactions, 0 disables auto-sealing
    block_size: Annotated[int, msgspec.Meta(ge=0)] = 10
    # transaction file used by the identity, wot and rep commands
    path: str = "batman-ledger.txt"


class Identity(BaseStruct):
    max_key_lifetime: Annotated[int, msgspec.Meta(ge=1)] = 1_000_000


class SybilGuard(BaseStruct):
    difficulty_bits: Annotated[int, msgspec.Meta(ge=0, le=256)] = 4
    max_iters: Annotated[int, msgspec.Meta(ge=1)] = 1_000_000

    @property
    def threshold(self) -> int:
        """Maximum admissible numeric value of hash_uuid."""
        return min(1 << (256 - self.difficulty_bits), UINT256_MAX)


class WebOfTrust(BaseStruct):
    k: Annotated[int, msgspec.Meta(ge=1)] = 1


class Reputation(BaseStruct):
    s: Annotated[int, msgspec.Meta(ge=1)] = 150
    n_e: Annotated[int, msgspec.Meta(ge=1)] = 150


EngineLiteral = Literal["contract", "vectorized"]


class SimConfig(BaseStruct):
    n_nodes: Annotated[int, msgspec.Meta(ge=1)] = 10
    mu: float = 0.5
    sigma: Annotated[float, msgspec.Meta(ge=0.0)] = 0.2
    ticks: Annotated[int, msgspec.Meta(ge=1)] = msgspec.field(default=3000, name="T")
    s: Annotated[int, msgspec.Meta(ge=1)] = 150
    n_e: Annotated[int, msgspec.Meta(ge=1)] = msgspec.field(default=150, name="N_e")
    p_arrival: Annotated[float, msgspec.Meta(ge=0.0, le=1.0)] = 1.0
    seed: Annotated[int, msgspec.Meta(ge=0)] = 0
    burn_in: Annotated[int, msgspec.Meta(ge=0)] | None = None
    engine: EngineLiteral = "contract"

    def __post_init__(self):
        # Meta constraints only run on decode, structs built in code are checked here
        if self.n_nodes < 1:
            raise ValueError("simulation.n_nodes must be >= 1")
        if self.ticks < 1:
            raise ValueError("simulation.T must be >= 1")
        if self.s < 1 or self.n_e < 1:
            raise ValueError("simulation.s and simulation.N_e must be >= 1")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError("simulation.mu must lie in [0, 1]")
        if self.sigma < 0.0:
            raise ValueError("simulation.sigma must be >= 0")
        if not 0.0 <= self.p_arrival <= 1.0:
            raise ValueError("simulation.p_arrival must lie in [0, 1]")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("simulation.seed must be a 64-bit unsigned integer")
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError("simulation.burn_in must be >= 0")
        if self.engine not in ("contract", "vectorized"):
            raise ValueError(f"Unknown simulation engine {self.engine!r}")

    @property
    def effective_burn_in(self) -> int:
        """Ticks excluded from error statistics, always leaving at least the last tick."""
        burn_in = self.burn_in if self.burn_in is not None else max(self.s, self.n_e)
        return min(burn_in, self.ticks - 1)

    def with_overrides(self, overrides: "SimOverrides") -> "SimConfig":
        changes = {f: v for f in overrides.__struct_fields__ if (v := getattr(overrides, f)) is not None}
        return SimConfig(**{**msgspec.structs.asdict(self), **changes})


class SimOverrides(BaseStruct, forbid_unknown_fields=True):
    """Flat ``key = value`` parameter file accepted by ``simulate`` and ``sweep``."""

    n_nodes: int | None = None
    mu: float | None = None
    sigma: float | None = None
    ticks: int | None = msgspec.field(default=None, name="T")
    s: int | None = None
    n_e: int | None = msgspec.field(default=None, name="N_e")
    p_arrival: float | None = None
    seed: int | None = None
    burn_in: int | None = None
    engine: EngineLiteral | None = None


class Sweep(BaseStruct):
    seeds: Annotated[int, msgspec.Meta(ge=1)] = 10
    workers: Annotated[int, msgspec.Meta(ge=1)] = 4
    t_range: tuple[int, int, int] = DEFAULT_T_RANGE
    window_range: tuple[int, int, int] = DEFAULT_WINDOW_RANGE
    engine: EngineLiteral = "vectorized"

    def __post_init__(self):
        for name, (lo, hi, step) in (("t_range", self.t_range), ("window_range", self.window_range)):
            if lo < 1 or hi < lo or step < 1:
                raise ValueError(f"sweep.{name} must be (min >= 1, max >= min, step >= 1)")


class Cfg(BaseStruct):
    "This class defines the schema that msgspec uses to parse the config"

    ledger: Ledger = msgspec.field(default_factory=Ledger)
    identity: Identity = msgspec.field(default_factory=Identity)
    sybilguard: SybilGuard = msgspec.field(default_factory=SybilGuard)
    weboftrust: WebOfTrust = msgspec.field(default_factory=WebOfTrust)
    reputation: Reputation = msgspec.field(default_factory=Reputation)
    simulation: SimConfig = msgspec.field(default_factory=SimConfig)
    sweep: Sweep = msgspec.field(default_factory=Sweep)
