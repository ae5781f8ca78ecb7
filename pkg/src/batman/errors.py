class BatmanError(Exception):
    pass


class CodecError(BatmanError):
    """Raised when bytes are not a canonical encoding."""

    pass


class LedgerError(BatmanError):
    pass


class SeqMismatch(LedgerError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"Transaction seq {got} does not match ledger height {expected}")


class NonMonotoneTimestamp(LedgerError):
    def __init__(self, last: int, got: int):
        self.last = last
        self.got = got
        super().__init__(f"Transaction timestamp {got} precedes the latest timestamp {last}")


class InvalidTransaction(LedgerError):
    """Raised when a transaction has no canonical encoding."""

    pass


class EmptyBlock(LedgerError):
    pass


class ContractRejection(LedgerError):
    """Raised when a contract refuses a transaction payload.

    The contract's own exception is kept on ``reason`` and chained as the cause.
    """

    def __init__(self, reason: "ContractError"):
        self.reason = reason
        super().__init__(f"{reason.__class__.__name__}: {reason}")


class ContractError(BatmanError):
    pass


class InvalidIdentity(ContractError):
    pass


class DuplicateIdentity(ContractError):
    pass


class DuplicateHostname(ContractError):
    pass


class PowInvalid(ContractError):
    pass


class KeyLifetimeExceeded(ContractError):
    pass


class BadWindow(ContractError):
    pass


class UnknownIdentity(ContractError):
    pass


class MasterRevoked(ContractError):
    pass


class KeyNotActive(ContractError):
    pass


class AlreadyRevoked(ContractError):
    pass


class Unauthorized(ContractError):
    """Raised when a transaction author does not own the identity it acts on."""

    pass


class SelfEndorsement(ContractError):
    pass


class SignerKeyInvalid(ContractError):
    pass


class DuplicateEndorsement(ContractError):
    pass


class NodeMismatch(ContractError):
    pass


class NonMonotoneTick(ContractError):
    pass


class InvalidEvent(ContractError):
    pass


class EstimateError(BatmanError):
    pass


class NoData(EstimateError):
    pass


class EmptyWindow(EstimateError):
    """Raised when no event falls inside the time window."""

    pass


class QueryBeforeLastEvent(EstimateError):
    pass


class Exhausted(BatmanError):
    def __init__(self, message, iterations: int = 0):
        self.iterations = iterations
        super().__init__(message)


class SimulationError(BatmanError):
    pass
