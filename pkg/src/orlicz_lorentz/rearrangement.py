"""Simple functions on a finite non-atomic measure space.

A :class:`StepFn` is a list of ``(value, weight)`` atoms: ``value`` is taken on
a set of measure ``weight``.  Every quantity used downstream depends on the
function only through its distribution function and rearrangement, so the
placement of the sets is irrelevant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .monotone import Const, MonotoneFn


@dataclass(frozen=True)
class StepFn:
    atoms: tuple
    total_measure: float

    def __post_init__(self):
        atoms = tuple((float(v), float(w)) for v, w in self.atoms)
        for v, w in atoms:
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"atom value must be finite and non-negative, got {v}")
            if not (math.isfinite(w) and w > 0):
                raise ValueError(f"atom weight must be positive, got {w}")
        object.__setattr__(self, "atoms", atoms)
        tm = float(self.total_measure)
        if not tm > 0:
            raise ValueError("total measure must be positive")
        if self.support_measure > tm * (1 + 1e-12):
            raise ValueError("atoms exceed the total measure")
        object.__setattr__(self, "total_measure", tm)

    @classmethod
    def from_pairs(cls, pairs: Iterable, total_measure: float | None = None) -> "StepFn":
        pairs = tuple(pairs)
        if total_measure is None:
            total_measure = max(sum(w for _, w in pairs), 1e-300) if pairs else 1.0
        return cls(pairs, total_measure)

    @classmethod
    def characteristic(cls, measure: float, value: float = 1.0, total_measure: float | None = None):
        tm = measure if total_measure is None else total_measure
        return cls(((value, measure),), tm)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def support_measure(self) -> float:
        return float(sum(w for v, w in self.atoms if v > 0))

    @property
    def max_value(self) -> float:
        return max((v for v, _ in self.atoms), default=0.0)

    def scaled(self, c: float) -> "StepFn":
        return StepFn(tuple((c * v, w) for v, w in self.atoms), self.total_measure)

    def plateaus(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct positive values in decreasing order and the measure of each level set."""
        vals = self.values
        w = self.weights
        pos = vals > 0
        if not pos.any():
            return np.empty(0), np.empty(0)
        uniq, inv = np.unique(vals[pos], return_inverse=True)
        mass = np.bincount(inv, weights=w[pos])
        return uniq[::-1], mass[::-1]


def distribution(f: StepFn) -> MonotoneFn:
    """``f_*(lam) = |{f > lam}|``, right-continuous and non-increasing."""
    levels, mass = f.plateaus()
    if levels.size == 0:
        return MonotoneFn.constant(0.0, direction=-1)
    asc = levels[::-1]
    # on [v_{k-1}, v_k) the superlevel set is every atom with value >= v_k
    tail = np.cumsum(mass)[::-1]
    breaks = np.concatenate([[0.0], asc])
    vals = np.concatenate([tail, [0.0]])
    return MonotoneFn(tuple(breaks), tuple(Const(float(v)) for v in vals), -1, right_continuous=True)


def rearrange(f: StepFn) -> MonotoneFn:
    """``f^*(t) = inf{lam >= 0 : f_*(lam) <= t}``: atoms sorted by decreasing value."""
    levels, mass = f.plateaus()
    if levels.size == 0:
        return MonotoneFn.constant(0.0, direction=-1)
    ends = np.cumsum(mass)
    breaks = np.concatenate([[0.0], ends])
    vals = np.concatenate([levels, [0.0]])
    return MonotoneFn(tuple(breaks), tuple(Const(float(v)) for v in vals), -1, right_continuous=True)
