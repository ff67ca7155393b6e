"""Cross-correlations of +-1 datasets and Bell-type inequalities.

Two kinds of input reach the inequalities:

* common-index datasets, where every index k carries one value per dataset.
  The three- and four-dataset inequalities then hold identically, whatever
  produced the data;
* correlations estimated from separate runs that share no index.  Nothing
  forces these to satisfy the inequalities, and singlet statistics do not.

Angles are degrees at every public interface.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import pauli as pa
from . import rng as rng_mod
from ._backend import kernels
from .measurement import sample_observable_sequence

INEQUALITY_TOL = 1e-12
BELL3_LABELS = ("a", "b", "c")
CHSH_LABELS = ("a", "a2", "b", "b2")


@dataclass(frozen=True)
class OutcomeDataset:
    label: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError(f"dataset {self.label!r} must be a non-empty 1-d sequence")
        if not np.all((vals == 1) | (vals == -1)):
            raise ValueError(f"dataset {self.label!r} contains values other than +1/-1")
        vals = vals.astype(np.int8)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)


def dataset(label: str, values) -> OutcomeDataset:
    return OutcomeDataset(label, np.asarray(values))


@dataclass(frozen=True)
class CorrelationEstimate:
    labels: tuple[str, str]
    value: float
    n: int
    total: int

    @property
    def stderr(self) -> float:
        return 1.0 / math.sqrt(self.n)


@dataclass
class InequalityReport:
    form: str
    lhs: float
    rhs: float
    satisfied: bool
    inputs: list[CorrelationEstimate]
    tolerance: float = INEQUALITY_TOL
    s_value: float | None = None
    identity_residual: int | None = None
    common_index: bool = True

    @property
    def margin(self) -> float:
        """lhs - rhs; positive means violated."""
        return self.lhs - self.rhs


def _common_length(*sets: OutcomeDataset) -> int:
    lengths = {len(s) for s in sets}
    if len(lengths) != 1:
        raise ValueError(
            "datasets must share a common index (equal lengths), got "
            + ", ".join(f"{s.label}={len(s)}" for s in sets)
        )
    return lengths.pop()


def cross_correlation(a: OutcomeDataset, b: OutcomeDataset) -> CorrelationEstimate:
    n = _common_length(a, b)
    total = int(kernels.product_sums(np.stack([a.values, b.values]))[0, 1])
    return CorrelationEstimate((a.label, b.label), total / n, n, total)


def _decide(lhs: float, rhs: float, tol: float) -> bool:
    return lhs <= rhs + tol


def bell3_from_correlations(
    ab: CorrelationEstimate, ac: CorrelationEstimate, bc: CorrelationEstimate,
    bc_value: float | None = None, tol: float = INEQUALITY_TOL, common_index: bool = False,
) -> InequalityReport:
    """|<ab> - <ac>| <= 1 - <bc>.

    ``bc_value`` overrides the value used for <bc> (the estimate is kept as an input).
    """
    bcv = bc.value if bc_value is None else bc_value
    lhs = abs(ab.value - ac.value)
    rhs = 1.0 - bcv
    return InequalityReport("bell3", lhs, rhs, _decide(lhs, rhs, tol), [ab, ac, bc], tol,
                            common_index=common_index)


def bell3_evaluate(a: OutcomeDataset, b: OutcomeDataset, c: OutcomeDataset,
                   tol: float = INEQUALITY_TOL) -> InequalityReport:
    n = _common_length(a, b, c)
    sums = kernels.product_sums(np.stack([a.values, b.values, c.values]))
    ab = CorrelationEstimate((a.label, b.label), int(sums[0, 1]) / n, n, int(sums[0, 1]))
    ac = CorrelationEstimate((a.label, c.label), int(sums[0, 2]) / n, n, int(sums[0, 2]))
    bc = CorrelationEstimate((b.label, c.label), int(sums[1, 2]) / n, n, int(sums[1, 2]))
    # compare on integer sums; division only for reporting
    lhs_int = abs(int(sums[0, 1]) - int(sums[0, 2]))
    rhs_int = n - int(sums[1, 2])
    report = InequalityReport(
        "bell3", lhs_int / n, rhs_int / n, lhs_int <= rhs_int, [ab, ac, bc], tol,
        identity_residual=kernels.bell3_residual(a.values, b.values, c.values),
    )
    return report


def chsh_from_correlations(
    ab: CorrelationEstimate, ab2: CorrelationEstimate, a2b: CorrelationEstimate,
    a2b2: CorrelationEstimate, tol: float = INEQUALITY_TOL, common_index: bool = False,
) -> InequalityReport:
    s = ab.value + ab2.value + a2b.value - a2b2.value
    return InequalityReport("chsh", abs(s), 2.0, _decide(abs(s), 2.0, tol), [ab, ab2, a2b, a2b2],
                            tol, s_value=s, common_index=common_index)


def chsh_evaluate(a: OutcomeDataset, a2: OutcomeDataset, b: OutcomeDataset, b2: OutcomeDataset,
                  tol: float = INEQUALITY_TOL) -> InequalityReport:
    n = _common_length(a, a2, b, b2)
    sums = kernels.product_sums(np.stack([a.values, a2.values, b.values, b2.values]))

    def est(i, j, x, y):
        return CorrelationEstimate((x.label, y.label), int(sums[i, j]) / n, n, int(sums[i, j]))

    s_int = int(sums[0, 2]) + int(sums[0, 3]) + int(sums[1, 2]) - int(sums[1, 3])
    # per index a(b + b2) + a2(b - b2) = +-2, so |S| <= 2 holds exactly on the sums
    residual = int(np.max(np.abs(
        np.abs(a.values.astype(np.int64) * (b.values + b2.values)
               + a2.values.astype(np.int64) * (b.values.astype(np.int64) - b2.values)) - 2
    )))
    return InequalityReport(
        "chsh", abs(s_int) / n, 2.0, abs(s_int) <= 2 * n,
        [est(0, 2, a, b), est(0, 3, a, b2), est(1, 2, a2, b), est(1, 3, a2, b2)],
        tol, s_value=s_int / n, identity_residual=residual,
    )


# ---------------------------------------------------------------- sampling

def reduce_delta(theta1_deg: float, theta2_deg: float) -> float:
    """Analyzer separation folded into [0, 180] degrees."""
    d = abs(float(theta1_deg) - float(theta2_deg)) % 360.0
    return 360.0 - d if d > 180.0 else d


def quantum_correlation(delta_deg: float) -> float:
    return -math.cos(math.radians(delta_deg))


def lhv_correlation(delta_deg: float) -> float:
    return reduce_delta(delta_deg, 0.0) / 90.0 - 1.0


def singlet_state() -> np.ndarray:
    """(|alpha beta> - |beta alpha>) / sqrt(2)."""
    v = np.zeros(4, dtype=np.complex128)
    v[1] = 1 / math.sqrt(2)
    v[2] = -1 / math.sqrt(2)
    return v


def singlet_sample(theta1: float, theta2: float, n: int, seed: int = rng_mod.DEFAULT_SEED,
                   run: int = 0, labels: tuple[str, str] = ("1", "2")) -> tuple[OutcomeDataset, OutcomeDataset]:
    """n singlet pairs, spin of particle 1 along theta1 and particle 2 along theta2 (degrees)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ops = np.stack([
        pa.embed(pa.pauli(math.radians(theta1)), 1, 2),
        pa.embed(pa.pauli(math.radians(theta2)), 2, 2),
    ])
    uniforms = rng_mod.uniform_block(seed, n, 2, run=run)
    out = sample_observable_sequence(singlet_state(), ops, uniforms)
    return OutcomeDataset(labels[0], out[:, 0].copy()), OutcomeDataset(labels[1], out[:, 1].copy())


@dataclass(frozen=True)
class AngleConfig:
    angles: tuple[float, ...]
    trials: int = 100_000
    seed: int = rng_mod.DEFAULT_SEED

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if len(angles) not in (3, 4):
            raise ValueError("give 3 angles (bell3) or 4 angles (chsh)")
        if not all(math.isfinite(a) for a in angles):
            raise ValueError("angles must be finite")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "seed", rng_mod.check_seed(self.seed))

    @property
    def form(self) -> str:
        return "bell3" if len(self.angles) == 3 else "chsh"

    @property
    def labels(self) -> tuple[str, ...]:
        return BELL3_LABELS if self.form == "bell3" else CHSH_LABELS

    def angle(self, label: str) -> float:
        return self.angles[self.labels.index(label)]

    def pairs(self) -> list[tuple[str, str]]:
        """Particle-1 / particle-2 analyzer pairs entering the inequality."""
        if self.form == "bell3":
            return [("a", "b"), ("a", "c"), ("b", "c")]
        return [("a", "b"), ("a", "b2"), ("a2", "b"), ("a2", "b2")]


@dataclass
class CorrelationRow:
    pair: str
    theta1: float
    theta2: float
    delta: float
    value: float
    n: int

    @property
    def stderr(self) -> float:
        return 1.0 / math.sqrt(self.n)


@dataclass
class ExperimentResult:
    report: InequalityReport
    table: list[CorrelationRow]
    datasets: list[OutcomeDataset]


def independent_runs_experiment(config: AngleConfig) -> ExperimentResult:
    """Each correlation comes from its own singlet run with its own sub-seed.

    Bell3 plugs the runs into |C(a,b) - C(a,c)| <= 1 - <bc>.  With b and c
    standing for the same side, <bc> is supplied as -C(b,c) via singlet
    anticorrelation, i.e. the bound reads 1 + C(b,c).
    """
    estimates = {}
    rows = []
    sets = []
    for run, (x, y) in enumerate(config.pairs(), start=1):
        t1, t2 = config.angle(x), config.angle(y)
        d1, d2 = singlet_sample(t1, t2, config.trials, config.seed, run=run,
                                labels=(f"{x}{y}.{x}", f"{x}{y}.{y}"))
        est = cross_correlation(d1, d2)
        estimates[(x, y)] = CorrelationEstimate((x, y), est.value, est.n, est.total)
        rows.append(CorrelationRow(f"{x}-{y}", t1, t2, reduce_delta(t1, t2), est.value, est.n))
        sets += [d1, d2]
    if config.form == "bell3":
        bc = estimates[("b", "c")]
        report = bell3_from_correlations(estimates[("a", "b")], estimates[("a", "c")], bc,
                                         bc_value=-bc.value)
    else:
        report = chsh_from_correlations(*(estimates[p] for p in config.pairs()))
    rows.sort(key=lambda r: r.pair)
    return ExperimentResult(report, rows, sets)


def lhv_outcomes(config: AngleConfig, run: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Particle-1 and particle-2 outcomes of the hidden-vector model at every config angle.

    Per trial a planar hidden angle lambda is uniform on [0, 2pi); particle 1
    gives sgn cos(theta - lambda) and particle 2 the negative.
    """
    lambdas = 2.0 * math.pi * rng_mod.uniform_block(config.seed, config.trials, 1, run=run)[:, 0]
    rad = np.radians(np.asarray(config.angles))
    k = len(rad)
    p1 = kernels.lhv_outcomes(rad, np.ones(k, dtype=np.int8), lambdas)
    p2 = kernels.lhv_outcomes(rad, -np.ones(k, dtype=np.int8), lambdas)
    return p1, p2


def lhv_common_run(config: AngleConfig) -> ExperimentResult:
    """One run; every index k carries outcomes at all analyzer angles for the same lambda_k.

    Bell3 uses a on particle 1 and b, c on particle 2; CHSH uses a, a2 on
    particle 1 and b, b2 on particle 2.  The correlation table lists
    <particle 1 at x * particle 2 at y> for every ordered pair x before y.
    """
    p1, p2 = lhv_outcomes(config)
    labels = config.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    if config.form == "bell3":
        sets = [OutcomeDataset("a", p1[0]), OutcomeDataset("b", p2[1]), OutcomeDataset("c", p2[2])]
        report = bell3_evaluate(*sets)
    else:
        sets = [OutcomeDataset("a", p1[0]), OutcomeDataset("a2", p1[1]),
                OutcomeDataset("b", p2[2]), OutcomeDataset("b2", p2[3])]
        report = chsh_evaluate(*sets)
    rows = []
    for x, y in itertools.combinations(labels, 2):
        est = cross_correlation(OutcomeDataset(x, p1[idx[x]]), OutcomeDataset(y, p2[idx[y]]))
        t1, t2 = config.angle(x), config.angle(y)
        rows.append(CorrelationRow(f"{x}-{y}", t1, t2, reduce_delta(t1, t2), est.value, est.n))
    rows.sort(key=lambda r: r.pair)
    return ExperimentResult(report, rows, sets)


def singlet_table(pairs: Sequence[tuple[float, float]], n: int, seed: int = rng_mod.DEFAULT_SEED) -> list[CorrelationRow]:
    rows = []
    for run, (t1, t2) in enumerate(pairs, start=1):
        d1, d2 = singlet_sample(t1, t2, n, seed, run=run)
        rows.append(CorrelationRow(f"{t1:g}-{t2:g}", t1, t2, reduce_delta(t1, t2),
                                   cross_correlation(d1, d2).value, n))
    return rows


@dataclass
class FormComparison:
    cosine_deviation: float
    linear_deviation: float
    deltas: tuple[float, ...]

    @property
    def closest(self) -> str:
        return "cosine" if self.cosine_deviation <= self.linear_deviation else "linear"


def form_compare(table: Sequence[CorrelationRow]) -> FormComparison:
    """Max deviation of a correlation table from -cos(delta) and from delta/90 - 1."""
    deltas = tuple(sorted({round(r.delta, 9) for r in table}))
    if len(deltas) < 3:
        raise ValueError(f"need at least 3 distinct angle separations, got {len(deltas)}")
    cos_dev = max(abs(r.value - quantum_correlation(r.delta)) for r in table)
    lin_dev = max(abs(r.value - lhv_correlation(r.delta)) for r in table)
    return FormComparison(cos_dev, lin_dev, deltas)
