"""Classical order-dependent operations: rigid rotations and polarizer cascades."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Rotation3:
    axis: str
    angle: float  # degrees

    def __post_init__(self):
        if self.axis not in ("x", "y", "z"):
            raise ValueError(f"unknown rotation axis {self.axis!r}")
        if not math.isfinite(self.angle):
            raise ValueError("rotation angle must be finite")

    def matrix(self) -> np.ndarray:
        """Active right-handed rotation acting on column vectors."""
        t = math.radians(self.angle)
        c, s = math.cos(t), math.sin(t)
        # snap to exact values at multiples of 90 degrees
        c, s = (round(c) if abs(c - round(c)) < 1e-15 else c), (round(s) if abs(s - round(s)) < 1e-15 else s)
        if self.axis == "x":
            return np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=float)
        if self.axis == "y":
            return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]], dtype=float)
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=float)


def rotate_sequence(rotations: Sequence[Rotation3], v) -> np.ndarray:
    """Apply rotations in listed order (first element acts first)."""
    out = np.asarray(v, dtype=float)
    if out.shape != (3,) or not np.all(np.isfinite(out)):
        raise ValueError("v must be a finite 3-vector")
    for r in rotations:
        out = r.matrix() @ out
    return out


@dataclass(frozen=True)
class PolarizerStack:
    initial: float
    polarizers: tuple[float, ...]

    def __post_init__(self):
        if not self.polarizers:
            raise ValueError("polarizer stack must not be empty")
        object.__setattr__(self, "polarizers", tuple(float(p) for p in self.polarizers))


def _cos2(deg: float) -> float:
    # half-angle form rounds to 0, 1/2 and 1 exactly at multiples of 45 degrees
    c2 = 0.5 * (1.0 + math.cos(math.radians(2.0 * deg)))
    return 0.0 if c2 < 1e-15 else (1.0 if 1.0 - c2 < 1e-15 else c2)


def polarizer_cascade(stack: PolarizerStack) -> float:
    """Fraction of intensity transmitted by ideal polarizers inserted in order (Malus)."""
    frac = 1.0
    pol = stack.initial
    for axis in stack.polarizers:
        frac *= _cos2(axis - pol)
        pol = axis
    return frac
