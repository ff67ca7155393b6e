"""GHZ state, the four three-particle observables and their identities."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import pauli as pa

LABELS = ("A1", "A2", "A3", "A4")

# Single-particle axes of each observable, particle 1 first.
CONSTITUENTS: dict[str, tuple[str, str, str]] = {
    "A1": ("x", "y", "y"),
    "A2": ("y", "x", "y"),
    "A3": ("y", "y", "x"),
    "A4": ("x", "x", "x"),
}

N_PARTICLES = 3
DIM = 2**N_PARTICLES


@dataclass(frozen=True)
class GhzState:
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.complex128)
        if v.shape != (DIM,):
            raise ValueError(f"GHZ state must have dimension {DIM}")
        if abs(np.linalg.norm(v) - 1.0) > pa.DEFAULT_TOL:
            raise ValueError("GHZ state must have unit norm")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)


@dataclass(frozen=True)
class GhzObservable:
    label: str
    matrix: np.ndarray = field(repr=False)

    @property
    def axes(self) -> tuple[str, str, str]:
        return CONSTITUENTS[self.label]


@dataclass(frozen=True)
class BasisKet:
    particle: int
    axis: str
    sign: int
    vector: np.ndarray = field(repr=False)


def ghz_state() -> GhzState:
    """(|alpha alpha alpha> - |beta beta beta>) / sqrt(2), with real amplitudes."""
    v = np.zeros(DIM, dtype=np.complex128)
    v[0] = 1 / math.sqrt(2)
    v[DIM - 1] = -1 / math.sqrt(2)
    return GhzState(v)


def observable_from_axes(axes: tuple[str, ...]) -> np.ndarray:
    """Product of single-particle Pauli operators, one per particle."""
    n = len(axes)
    return pa.product(*(pa.embed(pa.pauli(ax), k, n) for k, ax in enumerate(axes, start=1)))


def ghz_observable(label: str) -> GhzObservable:
    key = label.upper()
    if key not in CONSTITUENTS:
        raise ValueError(f"unknown observable {label!r}; expected one of {', '.join(LABELS)}")
    m = observable_from_axes(CONSTITUENTS[key])
    m.setflags(write=False)
    return GhzObservable(key, m)


def basis_ket(axis: str, sign: int, particle: int = 1) -> BasisKet:
    """Eigenket of sigma_axis with eigenvalue ``sign``.

    Built from the action of sigma_x and sigma_y on |alpha>, |beta>:
    |x,s> = (|alpha> + s|beta>)/sqrt(2) and |y,s> = (|alpha> + s*i|beta>)/sqrt(2).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if axis == "x":
        coeff = sign
    elif axis == "y":
        coeff = sign * 1j
    elif axis == "z":
        vec = pa.ALPHA if sign == 1 else pa.BETA
        return BasisKet(particle, axis, sign, np.array(vec))
    else:
        raise ValueError(f"unknown axis {axis!r}")
    vec = (pa.ALPHA + coeff * pa.BETA) / math.sqrt(2)
    return BasisKet(particle, axis, sign, vec)


@dataclass
class IdentityCheck:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


@dataclass
class IdentityReport:
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max(c.residual for c in self.checks)

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_operator_identities(tol: float = pa.DEFAULT_TOL) -> IdentityReport:
    """Pairwise commutators, A1A2A3 = -A4 and A1A2A3A4 = -I, with max residuals."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    ops = {lab: ghz_observable(lab).matrix for lab in LABELS}
    zero = np.zeros((DIM, DIM), dtype=np.complex128)
    checks = []
    for a, b in itertools.combinations(LABELS, 2):
        res = pa.max_abs_diff(pa.commutator(ops[a], ops[b]), zero)
        checks.append(IdentityCheck(f"[{a},{b}]=0", res, tol))
    a123 = pa.product(ops["A1"], ops["A2"], ops["A3"])
    checks.append(IdentityCheck("A1A2A3=-A4", pa.max_abs_diff(a123, -ops["A4"]), tol))
    checks.append(
        IdentityCheck(
            "A1A2A3A4=-I",
            pa.max_abs_diff(pa.compose(a123, ops["A4"]), -pa.identity(DIM)),
            tol,
        )
    )
    for lab in LABELS:
        m = ops[lab]
        checks.append(IdentityCheck(f"{lab} hermitian", pa.max_abs_diff(m, m.conj().T), tol))
        checks.append(IdentityCheck(f"{lab}^2=I", pa.max_abs_diff(m @ m, pa.identity(DIM)), tol))
    return IdentityReport(checks)


@dataclass
class EigenRelation:
    label: str
    eigenvalue: float
    residual: float


def eigen_relations(tol: float = pa.DEFAULT_TOL, state: GhzState | None = None) -> list[EigenRelation]:
    """Eigenvalue of each A_i on the GHZ state and the residual |A psi - lambda psi|."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    psi = (state or ghz_state()).vector
    out = []
    for lab in LABELS:
        w = pa.apply(ghz_observable(lab).matrix, psi)
        lam = complex(np.vdot(psi, w))
        # eigenvalues of these observables are +-1
        lam_r = float(round(lam.real))
        resid = float(np.linalg.norm(w - lam_r * psi))
        out.append(EigenRelation(lab, lam_r, resid))
    return out


def basis_expand(
    state: GhzState, axes: tuple[str, str, str]
) -> list[tuple[tuple[int, int, int], complex]]:
    """Amplitudes <s1 s2 s3|psi> in a product eigenbasis, signs ordered +1 first."""
    if len(axes) != N_PARTICLES or any(a not in ("x", "y") for a in axes):
        raise ValueError("axes must be a triple over {'x', 'y'}")
    out = []
    for signs in itertools.product((1, -1), repeat=N_PARTICLES):
        ket = pa.kron(*(basis_ket(ax, s, k + 1).vector for k, (ax, s) in enumerate(zip(axes, signs))))
        out.append((signs, complex(np.vdot(ket, state.vector))))
    return out


def weighted_parity(expansion: list[tuple[tuple[int, int, int], complex]]) -> float:
    """Sum over basis terms of s1*s2*s3*|amp|^2."""
    return float(sum(math.prod(s) * abs(a) ** 2 for s, a in expansion))
