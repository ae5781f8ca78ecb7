from batman.identity.registry import (
    KeyGrant,
    KeyRole,
    NodeIdentity,
    RegistrationReceipt,
    Registry,
    SecondaryKeyRecord,
    contract_id,
)

__all__ = [
    "KeyGrant",
    "KeyRole",
    "NodeIdentity",
    "RegistrationReceipt",
    "Registry",
    "SecondaryKeyRecord",
    "contract_id",
]
