"""
Runtime configuration loaded from the environment (.env supported)
"""
from dataclasses import dataclass
import os
import sys
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Support running this module directly (``python cyclogon/settings.py``)
if __package__ in (None, ""):
    repo_root = Path(__file__).resolve().parent.parent
    if str(repo_root) not in sys.path:
        sys.path.insert(0, str(repo_root))

load_dotenv()

REPO_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_GOLDEN_DIR = REPO_ROOT / "golden" / "v1"


@dataclass
class Settings:
    """Process-wide settings"""
    golden_dir: Path
    tolerance: float = 1e-6
    workers: int = 4
    log_level: str = "WARNING"
    oracle_samples: int = 24

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from environment variables

        Returns:
            Settings with defaults for anything unset
        """
        return cls(
            golden_dir=Path(os.getenv("CYCLOGON_GOLDEN_DIR", str(DEFAULT_GOLDEN_DIR))),
            tolerance=float(os.getenv("CYCLOGON_TOL", "1e-6")),
            workers=int(os.getenv("CYCLOGON_WORKERS", str(min(8, os.cpu_count() or 1)))),
            log_level=os.getenv("CYCLOGON_LOG_LEVEL", "WARNING").upper(),
            oracle_samples=int(os.getenv("CYCLOGON_ORACLE_SAMPLES", "24")),
        )


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create global settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def set_settings(settings: Optional[Settings]) -> None:
    """Override the global settings instance.

    Test fixtures use this to point golden-file lookups at a temporary
    directory. Passing ``None`` resets the singleton so the next
    ``get_settings`` call rebuilds it from the environment.
    """
    global _settings
    _settings = settings


if __name__ == "__main__":
    print(get_settings())
