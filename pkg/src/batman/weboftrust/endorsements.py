import enum

import msgspec

from batman.common.codec import Encoder
from batman.common.hashing import sha256
from batman.errors import DuplicateEndorsement, MasterRevoked, SelfEndorsement, SignerKeyInvalid
from batman.identity.registry import KeyRole, Registry


class ValidationStatus(enum.Enum):
    UNVALIDATED = "Unvalidated"
    VALIDATED = "Validated"


class Endorsement(msgspec.Struct, frozen=True):
    signer: bytes
    subject: bytes
    at: int
    signature_hash: bytes


class StatusReport(msgspec.Struct, frozen=True):
    subject: str
    count: int
    k: int
    status: ValidationStatus


def signature_hash(signer_hash_m: bytes, subject_hash_m: bytes, subject_hash_uuid: bytes, at: int) -> bytes:
    """Simulated signature over the endorsed identity."""
    payload = Encoder().hash256(signer_hash_m).hash256(subject_hash_m).hash256(subject_hash_uuid).u64(at)
    return sha256(payload.getvalue())


class WebOfTrust:
    """Endorsement contract: peers vouch for identities by signature."""

    def __init__(self, registry: Registry) -> None:
        self.registry = registry
        self._by_subject: dict[bytes, dict[bytes, Endorsement]] = {}

    def endorse(self, signer: bytes, subject: bytes, at: int) -> Endorsement:
        if signer == subject:
            raise SelfEndorsement("An identity cannot endorse itself")
        signer_identity = self.registry.get(signer)
        subject_identity = self.registry.get(subject)
        for identity in (subject_identity, signer_identity):
            if identity.revoked:
                raise MasterRevoked(f"Master key of {identity.hostname!r} is revoked")
        if not self.registry.is_key_valid(signer, KeyRole.SIGNING, at):
            raise SignerKeyInvalid(f"Signing key of {signer_identity.hostname!r} is not valid at tick {at}")
        if signer in self._by_subject.get(subject, {}):
            raise DuplicateEndorsement(
                f"{signer_identity.hostname!r} already endorsed {subject_identity.hostname!r}"
            )

        endorsement = Endorsement(
            signer=signer,
            subject=subject,
            at=at,
            signature_hash=signature_hash(signer, subject, subject_identity.hash_uuid, at),
        )
        self._by_subject.setdefault(subject, {})[signer] = endorsement
        return endorsement

    def endorsements(self, subject: bytes | None = None) -> list[Endorsement]:
        """Endorsements grouped by subject in recording order, optionally for one subject."""
        if subject is not None:
            return list(self._by_subject.get(subject, {}).values())
        return [e for by_signer in self._by_subject.values() for e in by_signer.values()]

    def live_count(self, subject: bytes, at: int) -> int:
        """Endorsements of ``subject`` made by ``at`` whose signer is not revoked at ``at``."""
        self.registry.get(subject)
        return sum(
            1
            for e in self._by_subject.get(subject, {}).values()
            if e.at <= at and not self.registry.get(e.signer).is_revoked_at(at)
        )

    def validation_status(self, subject: bytes, at: int, k: int) -> ValidationStatus:
        count = self.live_count(subject, at)
        if self.registry.get(subject).is_revoked_at(at) or count < k:
            return ValidationStatus.UNVALIDATED
        return ValidationStatus.VALIDATED

    def report(self, subject: bytes, at: int, k: int) -> StatusReport:
        return StatusReport(
            subject=self.registry.get(subject).hostname,
            count=self.live_count(subject, at),
            k=k,
            status=self.validation_status(subject, at, k),
        )
