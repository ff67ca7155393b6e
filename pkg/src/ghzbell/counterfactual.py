"""Exhaustive scan of pre-assigned +-1 spin values for the three particles.

An assignment fixes m_x and m_y for each particle.  Parity constraints are
stored as lists of variable names, so arbitrary constraint sets can be
checked against all 64 assignments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

VARIABLES = ("mx1", "mx2", "mx3", "my1", "my2", "my3")


@dataclass(frozen=True)
class Assignment:
    mx: tuple[int, int, int]
    my: tuple[int, int, int]

    def __post_init__(self):
        if len(self.mx) != 3 or len(self.my) != 3:
            raise ValueError("an assignment has three m_x and three m_y values")
        if any(v not in (1, -1) for v in self.mx + self.my):
            raise ValueError("assignment values must be +1 or -1")

    def value(self, name: str) -> int:
        axis, particle = name[1], int(name[2])
        return (self.mx if axis == "x" else self.my)[particle - 1]

    def as_dict(self) -> dict[str, int]:
        return {name: self.value(name) for name in VARIABLES}


@dataclass(frozen=True)
class ParityConstraint:
    name: str
    variables: tuple[str, ...]
    rhs: int

    def holds(self, a: Assignment) -> bool:
        return math.prod(a.value(v) for v in self.variables) == self.rhs


CONSTRAINTS: dict[str, ParityConstraint] = {
    "C14a": ParityConstraint("C14a", ("mx1", "my2", "my3"), 1),
    "C14b": ParityConstraint("C14b", ("my1", "mx2", "my3"), 1),
    "C14c": ParityConstraint("C14c", ("my1", "my2", "mx3"), 1),
    "C16b": ParityConstraint("C16b", ("mx1", "mx2", "mx3"), -1),
}

GHZ_LOCAL = ("C14a", "C14b", "C14c")


def constraint_set(names: Iterable[str | ParityConstraint]) -> tuple[ParityConstraint, ...]:
    out = []
    for n in names:
        if isinstance(n, ParityConstraint):
            out.append(n)
            continue
        try:
            out.append(CONSTRAINTS[n])
        except KeyError:
            raise ValueError(f"unknown constraint {n!r}; known: {', '.join(CONSTRAINTS)}") from None
    if not out:
        raise ValueError("constraint set must not be empty")
    return tuple(out)


def enumerate_assignments() -> list[Assignment]:
    """All 64 assignments, lexicographic over (mx1..mx3, my1..my3) with +1 before -1."""
    return [Assignment(v[:3], v[3:]) for v in itertools.product((1, -1), repeat=6)]


def check_constraints(a: Assignment, constraints: Sequence[str | ParityConstraint]) -> bool:
    return all(c.holds(a) for c in constraint_set(constraints))


def satisfying(constraints: Sequence[str | ParityConstraint]) -> list[Assignment]:
    cs = constraint_set(constraints)
    return [a for a in enumerate_assignments() if all(c.holds(a) for c in cs)]


def triple_product(a: Assignment) -> int:
    """(mx1 my2 my3)(my1 mx2 my3)(my1 my2 mx3), evaluated factor by factor."""
    return (
        (a.mx[0] * a.my[1] * a.my[2])
        * (a.my[0] * a.mx[1] * a.my[2])
        * (a.my[0] * a.my[1] * a.mx[2])
    )


def x_product(a: Assignment) -> int:
    return a.mx[0] * a.mx[1] * a.mx[2]


@dataclass
class ScanSummary:
    n_assignments: int
    n_local: int
    n_local_and_quantum: int
    local_all_x_product_plus: bool
    product_identity_holds: bool
    independent_counts: dict[int, int]

    @property
    def contradiction(self) -> bool:
        return self.n_local > 0 and self.n_local_and_quantum == 0


def scan_summary() -> ScanSummary:
    everything = enumerate_assignments()
    local = satisfying(GHZ_LOCAL)
    both = satisfying(GHZ_LOCAL + ("C16b",))
    identity = all(triple_product(a) == x_product(a) for a in everything)
    # first k of the three local constraints are independent parities
    counts = {k: len(satisfying(GHZ_LOCAL[:k])) for k in (1, 2, 3)}
    return ScanSummary(
        n_assignments=len(everything),
        n_local=len(local),
        n_local_and_quantum=len(both),
        local_all_x_product_plus=all(x_product(a) == 1 for a in local),
        product_identity_holds=identity,
        independent_counts=counts,
    )
