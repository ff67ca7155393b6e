"""Small dense complex linear algebra for spin-1/2 systems.

Matrices and kets are plain ``numpy`` arrays of ``complex128``.  The single
qubit basis is the sigma_z eigenbasis with ``|alpha>`` (spin up, eigenvalue
+1) at index 0 and ``|beta>`` (spin down) at index 1.  Multi-qubit states use
the Kronecker ordering in which particle 1 is the most significant factor, so
the three-qubit index of ``|b1 b2 b3>`` is ``4*b1 + 2*b2 + b3``.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


IDENTITY2 = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])

ALPHA = _frozen([1, 0])
BETA = _frozen([0, 1])

_AXES = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def pauli(spec: str | float) -> np.ndarray:
    """Return a 2x2 spin observable.

    ``spec`` is either an axis name (``"x"``, ``"y"``, ``"z"``) or an
    in-plane angle in radians, giving ``cos(theta)*sigma_z + sin(theta)*sigma_x``
    (spin along a direction in the x-z plane, measured from z).
    """
    if isinstance(spec, str):
        try:
            return _AXES[spec.lower()]
        except KeyError:
            raise ValueError(f"unknown Pauli axis {spec!r}") from None
    theta = float(spec)
    if not math.isfinite(theta):
        raise ValueError("angle must be finite")
    return _frozen(math.cos(theta) * SIGMA_Z + math.sin(theta) * SIGMA_X)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def embed(op: np.ndarray, particle: int, n: int) -> np.ndarray:
    """Place a single-particle operator at position ``particle`` (1-based) of ``n``."""
    if n < 1:
        raise ValueError("qubit count must be positive")
    if not 1 <= particle <= n:
        raise ValueError(f"particle index {particle} out of range 1..{n}")
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != (2, 2):
        raise ValueError("embed expects a 2x2 operator")
    out = np.ones((1, 1), dtype=np.complex128)
    for k in range(1, n + 1):
        out = np.kron(out, op if k == particle else IDENTITY2)
    return out


def _check_square_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product ``a @ b``; acting on a ket, ``b`` is applied first."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_square_pair(a, b)
    return a @ b


def product(*ops: np.ndarray) -> np.ndarray:
    """Left-to-right product of operators, in written order."""
    if not ops:
        raise ValueError("product of no operators")
    out = np.asarray(ops[0], dtype=np.complex128)
    for op in ops[1:]:
        out = compose(out, op)
    return out


def commutator(a: np.ndarray, b: np.ndarray, anti: bool = False) -> np.ndarray:
    ab = compose(a, b)
    ba = compose(b, a)
    return ab + ba if anti else ab - ba


def apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or m.ndim != 2 or m.shape != (v.shape[0], v.shape[0]):
        raise ValueError(f"dimension mismatch: matrix {m.shape} vs vector {v.shape}")
    return m @ v


def kron(*factors: np.ndarray) -> np.ndarray:
    out = np.ones(1, dtype=np.complex128)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return out


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def approx_eq(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the largest elementwise absolute difference is at most ``tol``."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    return max_abs_diff(a, b) <= tol


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return approx_eq(m, m.conj().T, tol)


def expectation(m: np.ndarray, v: np.ndarray) -> float:
    """Real part of ``<v|m|v>``; callers pass Hermitian ``m``."""
    v = np.asarray(v, dtype=np.complex128)
    return float(np.vdot(v, apply(m, v)).real)
