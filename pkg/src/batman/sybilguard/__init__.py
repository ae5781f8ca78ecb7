from batman.sybilguard.pow import MinedUuid, make_uuid, mine_uuid, threshold_for_bits, uuid_hash, verify_uuid

__all__ = ["MinedUuid", "make_uuid", "mine_uuid", "threshold_for_bits", "uuid_hash", "verify_uuid"]
