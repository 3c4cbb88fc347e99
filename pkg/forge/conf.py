import os
from dataclasses import dataclass
from pathlib import Path

DEFAULT_EXPECTATIONS = Path(__file__).resolve().parent / "data" / "expectations.json"


@dataclass(frozen=True)
class EngineSettings:
    threads: int = 1
    dim_cap: int = 2048
    height_cap: int = 64
    orbit_cap: int = 1000
    verify_orbit_sdim: bool = True
    check_max_dim: int = 64
    structure_pairs: int = 200
    expectations: Path = DEFAULT_EXPECTATIONS


def settings_from_env() -> EngineSettings:
    return EngineSettings(
        threads=int(os.getenv("CARTANFORGE_THREADS", str(os.cpu_count() or 1))),
        dim_cap=int(os.getenv("CARTANFORGE_DIM_CAP", "2048")),
        height_cap=int(os.getenv("CARTANFORGE_HEIGHT_CAP", "64")),
        orbit_cap=int(os.getenv("CARTANFORGE_ORBIT_CAP", "1000")),
        verify_orbit_sdim=os.getenv("CARTANFORGE_VERIFY_ORBIT_SDIM", "true").lower() == "true",
        check_max_dim=int(os.getenv("CARTANFORGE_CHECK_MAX_DIM", "64")),
        structure_pairs=int(os.getenv("CARTANFORGE_STRUCTURE_PAIRS", "200")),
        expectations=Path(os.getenv("CARTANFORGE_EXPECTATIONS", str(DEFAULT_EXPECTATIONS))),
    )


def engine_settings() -> EngineSettings:
    """Settings for the engine.

    Inside a configured Django process the values come from
    ``settings.CARTANFORGE``; plain scripts fall back to the environment.
    """
    try:
        from django.conf import settings

        if settings.configured and hasattr(settings, "CARTANFORGE"):
            return settings.CARTANFORGE
    except ImportError:
        pass
    return settings_from_env()
