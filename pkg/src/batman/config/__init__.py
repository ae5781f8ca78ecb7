from pathlib import Path

import msgspec
from platformdirs import user_config_dir

from .validations import Cfg

APPNAME = "batman"

_PKG_DIR = Path(__file__).parent.parent


def get_user_cfg_path() -> Path:
    return Path(user_config_dir(APPNAME)) / "config.toml"


def get_default_config_path() -> Path:
    return _PKG_DIR / "data" / "config.default.toml"


def parse_config(config_path: Path) -> Cfg:
    return msgspec.toml.decode(config_path.read_bytes(), type=Cfg)


def find_config_path() -> Path:
    config_dir_path = get_user_cfg_path()
    root_config_path = _PKG_DIR.parent.parent / "config.toml"

    # You can put a config.toml in the root directory for development purposes
    if root_config_path.exists():
        return root_config_path
    elif config_dir_path.exists():
        return config_dir_path
    else:
        return get_default_config_path()


def setup_config() -> Cfg:
    path = find_config_path()
    if not path.exists():
        # packaged defaults missing (e.g. a stripped install): the schema defaults are the same values
        return Cfg()
    return parse_config(path)


def use_config_file(config_path: str | Path) -> Cfg:
    """Replace the process-wide config with the contents of ``config_path``.

    Sections are swapped in place so modules holding ``batman.cfg`` see the change.
    """
    from batman import cfg

    new_cfg = parse_config(Path(config_path))
    for name in cfg.__struct_fields__:
        setattr(cfg, name, getattr(new_cfg, name))
    return cfg
