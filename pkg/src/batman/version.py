from pathlib import Path

import msgspec

LOCAL_VERSION_FILE = Path(__file__).parent / "data" / "version.toml"

_cached_version: "VersionData | None" = None


class VersionData(msgspec.Struct, frozen=True):
    current: str
    model: str


def get_version_data() -> VersionData | None:
    """Returns the packaged version data, cached after first read.

    Returns:
        The parsed version file, or None if it is missing.
    """
    global _cached_version
    if _cached_version is not None:
        return _cached_version
    try:
        _cached_version = msgspec.toml.decode(LOCAL_VERSION_FILE.read_bytes(), type=VersionData)
        return _cached_version
    except FileNotFoundError:
        return None


def version_message() -> str:
    """Returns the line printed by ``batman --version``."""
    data = get_version_data()
    if data is None:
        return "batman (version file not found)"
    return f"batman {data.current} (model {data.model})"
