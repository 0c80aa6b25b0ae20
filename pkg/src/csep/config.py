"""Engine configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

STRATEGIES = ("default", "short-first", "wide", "binary")


@dataclass(frozen=True)
class StrategyConfig:
    """Search knobs shared by both engines.

    ``max_steps`` bounds saturation rounds and ``time_limit`` wall-clock
    seconds; hitting either yields an Unknown verdict.  ``node_budget`` caps the
    extension tree explored per round.
    """

    max_steps: int = 2000
    max_width: int = 64
    max_term_depth: int = 8
    time_limit: float | None = None
    start_rotation: bool = True
    fallback_binary: bool = True
    strategy: str = "default"
    seed: int = 0
    node_budget: int = 400
    keep_per_round: int = 3
    max_clauses: int = 20000

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {', '.join(STRATEGIES)}")
        if self.max_width < 2:
            raise ValueError("max_width must be at least 2")
        if self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")

    def with_(self, **changes) -> "StrategyConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def effective_width(self) -> int:
        if self.strategy == "binary":
            return 2
        return self.max_width

    @property
    def effective_node_budget(self) -> int:
        # short-first explores little per round; wide lets chains grow long
        if self.strategy == "short-first":
            return max(1, self.node_budget // 4)
        if self.strategy == "wide":
            return self.node_budget * 4
        return self.node_budget

    @property
    def effective_keep(self) -> int:
        if self.strategy == "short-first":
            return 1
        if self.strategy == "wide":
            return self.keep_per_round * 2
        return self.keep_per_round
