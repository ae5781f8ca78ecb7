from batman.weboftrust.endorsements import Endorsement, StatusReport, ValidationStatus, WebOfTrust, signature_hash

__all__ = ["Endorsement", "StatusReport", "ValidationStatus", "WebOfTrust", "signature_hash"]
