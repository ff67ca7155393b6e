"""Projective measurement of GHZ observables under two protocols.

A *product-revealing* measurement of A_i uses the projector pair (I +- A_i)/2
and exposes only the spin product.  A *spin-revealing* measurement measures
the three single-particle constituents of A_i one after another and records
each spin; it leaves the three particles in a product state.

Sampling rule, shared with the batch kernels: each sampling point consumes
one uniform ``u``; outcome +1 is chosen iff ``u < p(+1)``; a branch whose
probability is within 1e-15 of zero is never chosen.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import ghz, rng as rng_mod
from . import pauli as pa
from ._backend import BACKEND, kernels
from .errors import DegenerateBranchError

PROB_FLOOR = 1e-15


class Mode(str, enum.Enum):
    PRODUCT = "product"
    SPIN = "spin"


@dataclass(frozen=True)
class Protocol:
    mode: Mode = Mode.PRODUCT
    order: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        order = tuple(int(p) for p in self.order)
        if sorted(order) != [1, 2, 3]:
            raise ValueError(f"particle order must be a permutation of (1, 2, 3), got {order}")
        object.__setattr__(self, "order", order)


PRODUCT = Protocol(Mode.PRODUCT)
SPIN = Protocol(Mode.SPIN)

StepLike = Union[tuple[str, Union[Protocol, Mode, str]], str]


@dataclass(frozen=True)
class Step:
    label: str
    protocol: Protocol = PRODUCT

    @property
    def width(self) -> int:
        """Number of uniform draws this step consumes."""
        return 1 if self.protocol.mode is Mode.PRODUCT else 3


def as_step(item: StepLike | Step) -> Step:
    if isinstance(item, Step):
        return item
    if isinstance(item, str):
        label, proto = item, PRODUCT
    else:
        label, proto = item
    if not isinstance(proto, Protocol):
        proto = Protocol(Mode(proto))
    return Step(ghz.ghz_observable(label).label, proto)


@dataclass
class MeasurementRecord:
    label: str
    mode: Mode
    product: int
    spins: tuple[int, int, int] | None
    post_state: np.ndarray = field(repr=False)


def branch_probabilities(state: np.ndarray, op: np.ndarray) -> tuple[float, float]:
    """(p(+1), p(-1)) for a +-1 observable, with probabilities below the floor set to 0."""
    overlap = pa.expectation(op, state)
    p_plus = 0.5 * (1.0 + overlap)
    p_minus = 0.5 * (1.0 - overlap)
    if p_plus <= PROB_FLOOR:
        p_plus = 0.0
    if p_minus <= PROB_FLOOR:
        p_minus = 0.0
    return p_plus, p_minus


def project(state: np.ndarray, op: np.ndarray, value: int) -> tuple[np.ndarray, float]:
    """Normalized (I + value*op)/2 |state> and the branch probability."""
    raw = 0.5 * (state + value * pa.apply(op, state))
    norm2 = float(np.vdot(raw, raw).real)
    if norm2 < PROB_FLOOR:
        raise DegenerateBranchError(f"branch {value:+d} has zero probability")
    return raw / math.sqrt(norm2), norm2


def collapse(state: np.ndarray, op: np.ndarray, u: float) -> tuple[int, np.ndarray]:
    p_plus, p_minus = branch_probabilities(state, op)
    if p_plus == 0.0:
        value = -1
    elif p_minus == 0.0:
        value = 1
    else:
        value = 1 if u < p_plus else -1
    post, _ = project(state, op, value)
    return value, post


def _as_vector(state) -> np.ndarray:
    v = state.vector if isinstance(state, ghz.GhzState) else np.asarray(state, dtype=np.complex128)
    if abs(np.linalg.norm(v) - 1.0) > pa.DEFAULT_TOL:
        raise ValueError("state must have unit norm")
    return v


def measure_joint(state, observable, rng) -> MeasurementRecord:
    """Product-revealing measurement of one GHZ observable."""
    obs = observable if isinstance(observable, ghz.GhzObservable) else ghz.ghz_observable(observable)
    value, post = collapse(_as_vector(state), obs.matrix, rng.random())
    return MeasurementRecord(obs.label, Mode.PRODUCT, value, None, post)


def single_spin_operator(particle: int, axis: str) -> np.ndarray:
    return pa.embed(pa.pauli(axis), particle, ghz.N_PARTICLES)


def measure_spin(state, particle: int, axis: str, rng) -> tuple[int, np.ndarray]:
    return collapse(_as_vector(state), single_spin_operator(particle, axis), rng.random())


def measure_step(state, step: Step, rng) -> MeasurementRecord:
    if step.protocol.mode is Mode.PRODUCT:
        return measure_joint(state, step.label, rng)
    axes = ghz.CONSTITUENTS[step.label]
    spins = [0, 0, 0]
    vec = _as_vector(state)
    for particle in step.protocol.order:
        spins[particle - 1], vec = measure_spin(vec, particle, axes[particle - 1], rng)
    return MeasurementRecord(step.label, Mode.SPIN, math.prod(spins), tuple(spins), vec)


def run_protocol(state, steps: Sequence[StepLike | Step], rng) -> list[MeasurementRecord]:
    """Run steps left to right, each on the state left by the previous one."""
    records = []
    vec = _as_vector(state)
    for item in steps:
        rec = measure_step(vec, as_step(item), rng)
        records.append(rec)
        vec = rec.post_state
    return records


def compile_steps(steps: Sequence[StepLike | Step]) -> tuple[list[Step], np.ndarray]:
    """Flatten steps into the ordered stack of +-1 operators the kernels measure."""
    parsed = [as_step(s) for s in steps]
    ops = []
    for st in parsed:
        if st.protocol.mode is Mode.PRODUCT:
            ops.append(ghz.ghz_observable(st.label).matrix)
        else:
            axes = ghz.CONSTITUENTS[st.label]
            ops.extend(single_spin_operator(p, axes[p - 1]) for p in st.protocol.order)
    return parsed, np.stack(ops)


def sample_observable_sequence(state, ops: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Batch primitive: outcomes (trials, len(ops)) of measuring ``ops`` in order."""
    return kernels.sample_sequence(_as_vector(state), ops, uniforms)


def step_products(steps: list[Step], raw: np.ndarray) -> np.ndarray:
    """Collapse per-operator outcomes into per-step products, shape (trials, steps)."""
    out = np.empty((raw.shape[0], len(steps)), dtype=np.int8)
    col = 0
    for k, st in enumerate(steps):
        out[:, k] = raw[:, col : col + st.width].prod(axis=1)
        col += st.width
    return out


@dataclass
class OutcomeStatistics:
    steps: list[Step]
    trials: int
    seed: int
    counts: list[dict[int, int]]
    joint: dict[tuple[int, ...], int]
    backend: str = BACKEND

    def frequency(self, step: int, value: int) -> float:
        return self.counts[step].get(value, 0) / self.trials

    def joint_frequency(self, outcome: tuple[int, ...]) -> float:
        return self.joint.get(tuple(outcome), 0) / self.trials


def outcome_statistics(
    steps: Sequence[StepLike | Step], trials: int, seed: int = rng_mod.DEFAULT_SEED, state=None
) -> OutcomeStatistics:
    """Empirical product distribution per step; trial i draws from TrialSeed(seed, i)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    parsed, ops = compile_steps(steps)
    state = ghz.ghz_state() if state is None else state
    uniforms = rng_mod.uniform_block(seed, trials, ops.shape[0])
    products = step_products(parsed, sample_observable_sequence(state, ops, uniforms))
    counts = []
    for k in range(len(parsed)):
        col = products[:, k]
        counts.append({1: int(np.count_nonzero(col == 1)), -1: int(np.count_nonzero(col == -1))})
    joint = Counter(map(tuple, products.tolist()))
    return OutcomeStatistics(parsed, trials, rng_mod.check_seed(seed), counts, dict(sorted(joint.items(), reverse=True)))


def exact_distribution(steps: Sequence[StepLike | Step], state=None) -> dict[tuple[int, ...], float]:
    """Exact joint distribution of step products by enumerating every branch."""
    parsed, ops = compile_steps(steps)
    vec = _as_vector(ghz.ghz_state() if state is None else state)
    raw: dict[tuple[int, ...], float] = {}

    def walk(v, depth, prob, outcomes):
        if depth == len(ops):
            raw[tuple(outcomes)] = raw.get(tuple(outcomes), 0.0) + prob
            return
        for value, p in zip((1, -1), branch_probabilities(v, ops[depth])):
            if p == 0.0:
                continue
            post, _ = project(v, ops[depth], value)
            walk(post, depth + 1, prob * p, outcomes + [value])

    walk(vec, 0, 1.0, [])
    out: dict[tuple[int, ...], float] = {}
    for flat, p in raw.items():
        key, col = [], 0
        for st in parsed:
            key.append(math.prod(flat[col : col + st.width]))
            col += st.width
        out[tuple(key)] = out.get(tuple(key), 0.0) + p
    return dict(sorted(out.items(), reverse=True))


def marginal(dist: dict[tuple[int, ...], float], step: int, value: int) -> float:
    return sum(p for k, p in dist.items() if k[step] == value)


def all_joint_outcomes(n_steps: int):
    return list(itertools.product((1, -1), repeat=n_steps))
