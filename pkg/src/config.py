"""Runtime settings for orecalc.

Defaults come from ``config/orecalc_config.json``; ``ORECALC_*`` environment
variables override single keys.  A missing or unreadable file is not fatal:
the built-in defaults are used and the failure is kept in ``load_error``.
"""

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import galois
from pydantic import BaseModel, Field, ValidationError, field_validator

from src.errors import InputError


DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "orecalc_config.json"

# environment variable -> settings key
ENV_OVERRIDES: Dict[str, str] = {
    "ORECALC_MAX_CODEWORDS": "max_codewords",
    "ORECALC_SCAN_BLOCK": "scan_block_size",
    "ORECALC_TABLE_LIMIT": "table_limit",
    "ORECALC_WEYL_PRIME": "weyl_prime",
    "ORECALC_VERBOSE": "verbose",
}


class Settings(BaseModel):
    max_codewords: int = Field(2**24, gt=0, description="Largest q^k the distance scan may enumerate.")
    scan_block_size: int = Field(4096, gt=0, description="Messages encoded per vectorised block.")
    table_limit: int = Field(256, ge=2, description="Largest field order served from lookup tables.")
    weyl_prime: int = Field(101, description="Characteristic of the Weyl preset when none is named.")
    verbose: bool = Field(False, description="Emit progress logs on stderr.")
    load_error: Optional[str] = Field(None, description="Why the config file was not used, if it was not.")

    @field_validator("weyl_prime")
    @classmethod
    def _prime(cls, value: int) -> int:
        if not galois.is_prime(value):
            raise ValueError(f"weyl_prime must be prime, got {value}")
        return value


def load_settings(path: str | os.PathLike | None = None) -> Settings:
    """Read the JSON defaults, apply environment overrides and validate.

    :param path: Config file; defaults to ``$ORECALC_CONFIG`` or the bundled file.
    :raises InputError: if an override or file value fails validation.
    """
    path = path or os.getenv("ORECALC_CONFIG") or DEFAULT_CONFIG_PATH
    data: Dict[str, Any] = {}
    load_error = None
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError("top level must be an object")
    except Exception as e:
        data = {}
        load_error = f"Failed to load {path}: {e}"
    data.pop("load_error", None)

    for env, key in ENV_OVERRIDES.items():
        value = os.getenv(env)
        if value not in (None, ""):
            data[key] = value

    try:
        return Settings(**data, load_error=load_error)
    except ValidationError as e:
        raise InputError(f"invalid settings: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings; call ``get_settings.cache_clear()`` after changing the environment."""
    return load_settings()
