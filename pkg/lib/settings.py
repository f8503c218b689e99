import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from lib.errors import InvalidParameter

load_dotenv()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class Settings:
    quad_tol: float = 1e-8
    output_dir: Path = Path("out")
    log_level: str = "INFO"
    strict: bool = True
    max_workers: Optional[int] = None   # None -> os.cpu_count()
    tol_override: bool = False          # quad_tol came from the command line and beats scenario files

    def __post_init__(self) -> None:
        if not (1e-12 < self.quad_tol < 1e-3):
            raise InvalidParameter(f"quad_tol must lie in (1e-12, 1e-3), got {self.quad_tol!r}")
        if self.max_workers is not None and self.max_workers < 1:
            raise InvalidParameter(f"max_workers must be >= 1, got {self.max_workers!r}")

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with every non-None override applied (CLI flags)."""
        applied = {k: v for k, v in overrides.items() if v is not None}
        if "quad_tol" in applied:
            applied["tol_override"] = True
        return replace(self, **applied)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise InvalidParameter(f"Environment variable {name}={raw!r} is not a number") from None


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    if raw.strip().lower() in _TRUE:
        return True
    if raw.strip().lower() in _FALSE:
        return False
    raise InvalidParameter(f"Environment variable {name}={raw!r} is not a boolean")


def load_settings() -> Settings:
    workers = os.getenv("RYDBERG_EIT_MAX_WORKERS")
    try:
        max_workers = int(workers) if workers else None
    except ValueError:
        raise InvalidParameter(f"Environment variable RYDBERG_EIT_MAX_WORKERS={workers!r} is not an integer") from None
    return Settings(
        quad_tol=_env_float("RYDBERG_EIT_QUAD_TOL", 1e-8),
        output_dir=Path(os.getenv("RYDBERG_EIT_OUTPUT_DIR", "out")),
        log_level=os.getenv("RYDBERG_EIT_LOG_LEVEL", "INFO").upper(),
        strict=_env_bool("RYDBERG_EIT_STRICT", True),
        max_workers=max_workers,
    )


def configure_logging(level: str = "INFO") -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT)
