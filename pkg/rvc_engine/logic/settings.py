"""
Engine Settings
===============
Environment-driven configuration, read lazily on first access.

    RVC_THREADS               worker processes for the exact search (1)
    RVC_TIME_LIMIT            per-solve time limit in seconds (unset)
    RVC_LOG_JSON              "1"/"true" for JSON log lines
    RVC_LOG_LEVEL             logging level name (INFO)
    RVC_ORACLE_MAX_VERTICES   brute-force oracle guard for vertex parameters (8)
    RVC_ORACLE_MAX_ARCS       brute-force oracle guard for arc parameters (14)
    RVC_DIAM2_ATTEMPTS        tournament diameter-2 search budget (100000)
    RVC_DISTANCE_CACHE        distance-matrix LRU size (256)
"""

import os
from typing import Optional

from pydantic import BaseModel, Field

_TRUE = ("1", "true", "yes", "on")


class EngineSettings(BaseModel):
    threads: int = Field(default=1, ge=1)
    time_limit: Optional[float] = Field(default=None, gt=0)
    log_json: bool = False
    log_level: str = "INFO"
    oracle_max_vertices: int = Field(default=8, ge=1)
    oracle_max_arcs: int = Field(default=14, ge=1)
    diam2_attempts: int = Field(default=100_000, ge=1)
    distance_cache: int = Field(default=256, ge=1)

    @classmethod
    def from_env(cls) -> "EngineSettings":
        env = os.environ
        time_limit = env.get("RVC_TIME_LIMIT")
        return cls(
            threads=int(env.get("RVC_THREADS", "1")),
            time_limit=float(time_limit) if time_limit else None,
            log_json=env.get("RVC_LOG_JSON", "").lower() in _TRUE,
            log_level=env.get("RVC_LOG_LEVEL", "INFO").upper(),
            oracle_max_vertices=int(env.get("RVC_ORACLE_MAX_VERTICES", "8")),
            oracle_max_arcs=int(env.get("RVC_ORACLE_MAX_ARCS", "14")),
            diam2_attempts=int(env.get("RVC_DIAM2_ATTEMPTS", "100000")),
            distance_cache=int(env.get("RVC_DISTANCE_CACHE", "256")),
        )


_settings: Optional[EngineSettings] = None


def get_settings() -> EngineSettings:
    global _settings
    if _settings is None:
        _settings = EngineSettings.from_env()
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
