"""Service configuration: one JSON file, overridable via UNFUN_* env vars."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .game import RewardConfig


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    db_path: str = "unfun.db"
    seed: int = 20260811
    alpha: float = 1.0 / 3.0
    epsilon: float = 0.01
    unfun_scale: float = 1000.0
    rating_scale: float = 200.0
    pattern_priority: dict = field(default_factory=dict)
    satirical_corpus: Optional[str] = None
    serious_corpus: Optional[str] = None
    static_dir: Optional[str] = None
    leaderboard_size: int = 10

    def reward_config(self) -> RewardConfig:
        return RewardConfig(alpha=self.alpha, epsilon=self.epsilon,
                            unfun_scale=self.unfun_scale, rating_scale=self.rating_scale)


_ENV_FIELDS = {
    "UNFUN_HOST": ("host", str),
    "UNFUN_PORT": ("port", int),
    "UNFUN_DB": ("db_path", str),
    "UNFUN_SEED": ("seed", int),
    "UNFUN_ALPHA": ("alpha", float),
    "UNFUN_EPSILON": ("epsilon", float),
    "UNFUN_STATIC_DIR": ("static_dir", str),
    "UNFUN_LEADERBOARD_SIZE": ("leaderboard_size", int),
}


def load_config(path: Optional[str | Path] = None,
                env: Optional[Mapping[str, str]] = None) -> ServerConfig:
    cfg = ServerConfig()
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - set(cfg.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(cfg, key, value)
    env = os.environ if env is None else env
    for var, (attr, cast) in _ENV_FIELDS.items():
        if var in env:
            setattr(cfg, attr, cast(env[var]))
    cfg.reward_config()  # validate reward parameters eagerly
    return cfg
