"""Run configuration and enumeration budgets."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class Budgets:
    max_group_order: int = 250_000
    max_subgroup_order: int = 10_000_000
    max_class_n: int = 4
    max_class_q: int = 9
    threads: int = 1
    # verdict grid: sigma-selfdual theta exponents examined per (spec, m)
    theta_samples: int = 64

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"budget {f.name} must be positive")

    def relaxed(self, order: int) -> "Budgets":
        """Budgets allowing factor groups of an already-approved subgroup of this order."""
        return replace(self, max_group_order=max(self.max_group_order, order))


DEFAULT_BUDGETS = Budgets()


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    out: str | None = None
    budgets: Budgets = DEFAULT_BUDGETS
    seed: int = 0
    ell: int = 0

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if isinstance(d.get("budgets"), dict):
            b = d["budgets"]
            bad = set(b) - {f.name for f in fields(Budgets)}
            if bad:
                raise ValueError(f"unknown budget keys: {sorted(bad)}")
            d["budgets"] = Budgets(**b)
        if "inputs" in d:
            d["inputs"] = tuple(d["inputs"])
        return cls(**d)
