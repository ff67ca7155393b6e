"""Pure-numpy kernels, vectorized across trials.

Same contracts as the compiled ``_ckernels`` module.
"""

import numpy as np

from .errors import DegenerateBranchError

PROB_FLOOR = 1e-15


def sample_sequence(state, ops, uniforms):
    """Projectively measure a sequence of +-1 observables on many copies of a state.

    ``ops`` has shape (m, d, d), each Hermitian with square identity; ``uniforms``
    has shape (n, m).  Returns int8 outcomes of shape (n, m).  Outcome +1 is
    selected iff its probability exceeds the floor and ``u < p(+1)``.
    """
    state = np.ascontiguousarray(state, dtype=np.complex128)
    ops = np.ascontiguousarray(ops, dtype=np.complex128)
    uniforms = np.ascontiguousarray(uniforms, dtype=np.float64)
    n, m = uniforms.shape
    d = state.shape[0]
    if ops.shape != (m, d, d):
        raise ValueError(f"ops shape {ops.shape} does not match ({m}, {d}, {d})")
    out = np.empty((n, m), dtype=np.int8)
    psi = np.broadcast_to(state, (n, d)).copy()
    for j in range(m):
        w = psi @ ops[j].T
        overlap = (psi.real * w.real + psi.imag * w.imag).sum(axis=1)
        p_plus = 0.5 * (1.0 + overlap)
        p_minus = 0.5 * (1.0 - overlap)
        v = np.where(uniforms[:, j] < p_plus, 1, -1)
        v = np.where(p_minus <= PROB_FLOOR, 1, v)
        v = np.where(p_plus <= PROB_FLOOR, -1, v)
        psi = 0.5 * (psi + v[:, None] * w)
        norm2 = (psi.real**2 + psi.imag**2).sum(axis=1)
        if np.any(norm2 < PROB_FLOOR):
            raise DegenerateBranchError("selected branch has zero probability")
        psi /= np.sqrt(norm2)[:, None]
        out[:, j] = v
    return out


def product_sums(data):
    """Gram matrix of integer per-index product sums for rows of +-1 data."""
    data = np.asarray(data, dtype=np.int64)
    return data @ data.T


def bell3_residual(a, b, c):
    """max_k |a_k b_k - a_k c_k - a_k b_k (1 - b_k c_k)| (zero for +-1 data)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a * b - a * c - a * b * (1 - b * c))))


def lhv_outcomes(angles, signs, lambdas):
    """sign * sgn(cos(angle - lambda)) with sgn(0) = +1; shape (len(angles), len(lambdas))."""
    angles = np.asarray(angles, dtype=np.float64)
    signs = np.asarray(signs, dtype=np.int8)
    lambdas = np.asarray(lambdas, dtype=np.float64)
    raw = np.where(np.cos(angles[:, None] - lambdas[None, :]) >= 0.0, 1, -1).astype(np.int8)
    return raw * signs[:, None]
