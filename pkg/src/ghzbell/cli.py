"""Command-line front end.

Exit codes: 0 all expected checks pass, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import bell, counterfactual, demos, ghz, measurement
from . import pauli as pa
from .dataio import load_datasets, write_datasets
from .errors import DatasetError
from .report import Report, emit_report
from .rng import DEFAULT_SEED, check_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_MEASURE_TRIALS = 10_000
DEFAULT_CORRELATION_TRIALS = 100_000
# sigma multiplier for Monte Carlo checks in reports
SIGMAS = 4.0


class UsageError(Exception):
    pass


@dataclass
class Command:
    name: str
    args: dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    out: str | None = None


def _seed(text: str) -> int:
    try:
        return check_seed(int(text, 0))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("angles must be finite")
    return vals


def _str_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, trials=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help=f"master seed (default {DEFAULT_SEED})")
        p.add_argument("--out", default=None, help="write the report here instead of standard output")
        if trials is not None:
            p.add_argument("--trials", type=_positive_int, default=trials)
        return p

    p = add("verify-ghz", "operator identities, eigenrelations and basis expansions")
    p.add_argument("--tol", type=float, default=pa.DEFAULT_TOL)

    p = add("scan-counterfactuals", "enumerate all 64 local spin assignments")
    p.add_argument("--constraints", type=_str_list, default=None,
                   help=f"extra constraint set to audit, from {','.join(counterfactual.CONSTRAINTS)}")

    p = add("measure", "sample a measurement sequence on the GHZ state", DEFAULT_MEASURE_TRIALS)
    p.add_argument("--sequence", type=_str_list, required=True, help="e.g. A1,A2,A1")
    p.add_argument("--mode", type=_str_list, default=["product"],
                   help="product|spin, or one mode per step")
    p.add_argument("--order", type=_str_list, default=["1", "2", "3"],
                   help="particle order for spin-revealing steps")

    p = add("bell-audit", "evaluate an inequality on common-index +-1 columns")
    p.add_argument("--input", required=True)
    p.add_argument("--form", choices=("bell3", "chsh"), default="bell3")
    p.add_argument("--columns", type=_str_list, default=None,
                   help="columns to use (default: the first 3 or 4)")

    p = add("bell-sim", "singlet or hidden-variable correlation experiment", DEFAULT_CORRELATION_TRIALS)
    p.add_argument("--angles", type=_float_list, required=True, help="3 (bell3) or 4 (chsh) angles in degrees")
    p.add_argument("--mode", choices=("independent", "lhv-common"), default="independent")
    p.add_argument("--dump", default=None, help="also write the sampled datasets as CSV")

    p = add("demo", "classical non-commutation examples")
    p.add_argument("--which", choices=("rotations", "polarizers"), required=True)
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    ns = vars(build_parser().parse_args(list(argv)))
    name = ns.pop("command")
    seed = ns.pop("seed")
    out = ns.pop("out")
    return Command(name, ns, seed, out)


# ------------------------------------------------------------------ commands

def _verify_ghz(cmd: Command, rep: Report) -> None:
    tol = float(cmd.args.get("tol", pa.DEFAULT_TOL))
    if not tol > 0:
        raise UsageError("--tol must be positive")
    for c in ghz.verify_operator_identities(tol).checks:
        rep.check(f"identity {c.name}", c.residual, 0.0, tol)
    expected = {"A1": 1.0, "A2": 1.0, "A3": 1.0, "A4": -1.0}
    for e in ghz.eigen_relations(tol):
        rep.check(f"eigenvalue {e.label}", e.eigenvalue, expected[e.label], tol)
        rep.check(f"eigen residual {e.label}", e.residual, 0.0, tol)
    psi = ghz.ghz_state()
    tables = {}
    for axes in (("x", "y", "y"), ("x", "x", "x")):
        exp = ghz.basis_expand(psi, axes)
        key = "".join(axes)
        tables[f"expansion {key}"] = [
            {"signs": list(s), "amplitude": a, "magnitude": abs(a)} for s, a in exp
        ]
        rep.check(f"expansion {key} norm", sum(abs(a) ** 2 for _, a in exp), 1.0, tol)
        rep.check(f"expansion {key} weighted parity", ghz.weighted_parity(exp),
                  1.0 if key == "xyy" else -1.0, tol)
    xyy = ghz.basis_expand(psi, ("x", "y", "y"))
    nonzero = [(s, a) for s, a in xyy if abs(a) > tol]
    rep.check("expansion xyy nonzero terms", len(nonzero), 4)
    for s, a in nonzero:
        label = "".join("+" if v > 0 else "-" for v in s)
        rep.check(f"expansion xyy |amp({label})|", abs(a), 0.5, tol)
        rep.check(f"expansion xyy parity({label})", math.prod(s), 1)
    rep.check("<psi|A4|psi>", pa.expectation(ghz.ghz_observable("A4").matrix, psi.vector), -1.0, tol)
    rep.tables.update(tables)


def _assignment_row(a: counterfactual.Assignment) -> dict[str, int]:
    return a.as_dict()


def _scan(cmd: Command, rep: Report) -> None:
    s = counterfactual.scan_summary()
    rep.check("assignments enumerated", s.n_assignments, 64)
    rep.check("satisfy C14a,C14b,C14c", s.n_local, 8)
    local = counterfactual.satisfying(counterfactual.GHZ_LOCAL)
    rep.check("of those, mx1*mx2*mx3 = +1", sum(counterfactual.x_product(a) == 1 for a in local), s.n_local)
    rep.check("satisfy C14a,C14b,C14c,C16b", s.n_local_and_quantum, 0)
    everything = counterfactual.enumerate_assignments()
    rep.check("triple product equals mx1*mx2*mx3",
              sum(counterfactual.triple_product(a) == counterfactual.x_product(a) for a in everything), 64)
    for k, count in s.independent_counts.items():
        rep.check(f"satisfy first {k} local constraints", count, 64 // 2**k)
    rep.tables["local assignments"] = [_assignment_row(a) for a in local]
    rep.tables["constraints"] = {
        c.name: {"variables": list(c.variables), "rhs": c.rhs} for c in counterfactual.CONSTRAINTS.values()
    }
    extra = cmd.args.get("constraints")
    if extra:
        try:
            sat = counterfactual.satisfying(extra)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rep.tables["audit"] = {
            "constraints": list(extra),
            "count": len(sat),
            "assignments": [_assignment_row(a) for a in sat],
        }


def _measure(cmd: Command, rep: Report) -> None:
    labels = cmd.args["sequence"]
    modes = cmd.args.get("mode") or ["product"]
    if len(modes) == 1:
        modes = modes * len(labels)
    if len(modes) != len(labels):
        raise UsageError("--mode takes one value or one value per step")
    try:
        order = tuple(int(p) for p in cmd.args.get("order") or (1, 2, 3))
        steps = [measurement.Step(ghz.ghz_observable(lab).label, measurement.Protocol(m, order))
                 for lab, m in zip(labels, modes)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    trials = cmd.args["trials"]
    stats = measurement.outcome_statistics(steps, trials, cmd.seed)
    exact = measurement.exact_distribution(steps)
    names = [f"{k + 1}:{st.label}/{st.protocol.mode.value}" for k, st in enumerate(steps)]
    per_step = []
    for k, name in enumerate(names):
        p = measurement.marginal(exact, k, 1)
        f = stats.frequency(k, 1)
        rep.check(f"P(+1) step {name}", f, p, SIGMAS * math.sqrt(p * (1 - p) / trials))
        per_step.append({"step": name, "plus": stats.counts[k][1], "minus": stats.counts[k][-1],
                         "frequency_plus": f, "exact_plus": p})
    joint = []
    for outcome in measurement.all_joint_outcomes(len(steps)):
        p = exact.get(outcome, 0.0)
        f = stats.joint_frequency(outcome)
        key = ",".join(f"{v:+d}" for v in outcome)
        if p > 0 or f > 0:
            rep.check(f"P({key})", f, p, SIGMAS * math.sqrt(p * (1 - p) / trials))
        joint.append({"outcome": key, "count": stats.joint.get(outcome, 0), "frequency": f, "exact": p})
    rep.tables["steps"] = per_step
    rep.tables["joint"] = joint


def _correlation_rows(rows: list[bell.CorrelationRow]) -> list[dict[str, Any]]:
    return [
        {"pair": r.pair, "theta1": r.theta1, "theta2": r.theta2, "delta": r.delta,
         "correlation": r.value, "n": r.n, "stderr": r.stderr,
         "quantum": bell.quantum_correlation(r.delta), "lhv": bell.lhv_correlation(r.delta)}
        for r in sorted(rows, key=lambda r: r.pair)
    ]


def _inequality_json(r: bell.InequalityReport) -> dict[str, Any]:
    out = {"form": r.form, "lhs": r.lhs, "rhs": r.rhs, "satisfied": r.satisfied, "tolerance": r.tolerance,
           "common_index": r.common_index,
           "inputs": [{"pair": "-".join(e.labels), "value": e.value, "n": e.n} for e in r.inputs]}
    if r.s_value is not None:
        out["S"] = r.s_value
    if r.identity_residual is not None:
        out["identity_residual"] = r.identity_residual
    return out


def _bell_audit(cmd: Command, rep: Report) -> None:
    sets = load_datasets(cmd.args["input"])
    form = cmd.args.get("form", "bell3")
    need = 3 if form == "bell3" else 4
    cols = cmd.args.get("columns")
    by_label = {s.label: s for s in sets}
    if cols:
        missing = [c for c in cols if c not in by_label]
        if missing:
            raise UsageError(f"unknown column(s): {', '.join(missing)}")
        chosen = [by_label[c] for c in cols]
    else:
        chosen = sets[:need]
    if len(chosen) != need:
        raise UsageError(f"{form} needs {need} columns, got {len(chosen)}")
    r = bell.bell3_evaluate(*chosen) if form == "bell3" else bell.chsh_evaluate(*chosen)
    rep.check(f"{form} satisfied", r.lhs, r.rhs, r.tolerance, "le")
    rep.check(f"{form} per-index identity residual", r.identity_residual, 0)
    rep.tables["inequality"] = _inequality_json(r)
    table = []
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            e = bell.cross_correlation(sets[i], sets[j])
            table.append({"pair": f"{sets[i].label}-{sets[j].label}", "correlation": e.value, "n": e.n})
    rep.tables["correlations"] = sorted(table, key=lambda row: row["pair"])


def _bell_sim(cmd: Command, rep: Report) -> None:
    try:
        cfg = bell.AngleConfig(tuple(cmd.args["angles"]), cmd.args["trials"], cmd.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mode = cmd.args.get("mode", "independent")
    tol_corr = SIGMAS / math.sqrt(cfg.trials)
    if mode == "independent":
        res = bell.independent_runs_experiment(cfg)
        model = bell.quantum_correlation
        r = res.report
        rep.findings.append({
            "name": f"{r.form} from independent runs",
            "lhs": r.lhs, "rhs": r.rhs, "margin": r.margin,
            "violated": not r.satisfied, "expected": "violation possible; runs share no index",
        })
    else:
        res = bell.lhv_common_run(cfg)
        model = bell.lhv_correlation
        r = res.report
        rep.check(f"{r.form} satisfied (common index)", r.lhs, r.rhs, r.tolerance, "le")
        rep.check(f"{r.form} per-index identity residual", r.identity_residual, 0)
    for row in res.table:
        rep.check(f"correlation {row.pair}", row.value, model(row.delta), tol_corr)
    if len({round(row.delta, 9) for row in res.table}) >= 3:
        fc = bell.form_compare(res.table)
        want = "cosine" if mode == "independent" else "linear"
        closer, other = ((fc.cosine_deviation, fc.linear_deviation) if want == "cosine"
                         else (fc.linear_deviation, fc.cosine_deviation))
        rep.check(f"closest form is {want}", closer, other, 0.0, "le")
        rep.tables["form"] = {"cosine_deviation": fc.cosine_deviation, "linear_deviation": fc.linear_deviation,
                              "closest": fc.closest, "deltas": list(fc.deltas)}
    rep.tables["inequality"] = _inequality_json(r)
    rep.tables["correlations"] = _correlation_rows(res.table)
    if cmd.args.get("dump"):
        write_datasets(cmd.args["dump"], res.datasets)


def _demo(cmd: Command, rep: Report) -> None:
    which = cmd.args["which"]
    if which == "rotations":
        v = (0.0, 0.0, 1.0)
        xy = demos.rotate_sequence([demos.Rotation3("x", 90), demos.Rotation3("y", 90)], v)
        yx = demos.rotate_sequence([demos.Rotation3("y", 90), demos.Rotation3("x", 90)], v)
        for name, got, want in (("Rx(90) then Ry(90)", xy, (0, -1, 0)), ("Ry(90) then Rx(90)", yx, (1, 0, 0))):
            rep.check(f"{name} on (0,0,1)", pa.max_abs_diff(got, want), 0.0, pa.DEFAULT_TOL)
        rep.check("distance between the two orders", float(np.linalg.norm(xy - yx)), math.sqrt(2), pa.DEFAULT_TOL)
        rep.tables["rotations"] = [
            {"sequence": "Rx(90),Ry(90)", "input": list(v), "output": [float(x) for x in xy]},
            {"sequence": "Ry(90),Rx(90)", "input": list(v), "output": [float(x) for x in yx]},
        ]
    else:
        rows = []
        for stack, want in (((45.0, 90.0), 0.25), ((90.0, 45.0), 0.0)):
            frac = demos.polarizer_cascade(demos.PolarizerStack(0.0, stack))
            rep.check(f"polarizers {stack[0]:g},{stack[1]:g} from 0", frac, want)
            rows.append({"initial": 0.0, "polarizers": list(stack), "transmitted": frac})
        rep.tables["polarizers"] = rows


_DISPATCH = {
    "verify-ghz": _verify_ghz,
    "scan-counterfactuals": _scan,
    "measure": _measure,
    "bell-audit": _bell_audit,
    "bell-sim": _bell_sim,
    "demo": _demo,
}


def run_command(cmd: Command) -> Report:
    try:
        handler = _DISPATCH[cmd.name]
    except KeyError:
        raise UsageError(f"unknown subcommand {cmd.name!r}") from None
    rep = Report(cmd.name, dict(sorted(cmd.args.items())), check_seed(cmd.seed))
    handler(cmd, rep)
    return rep


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cmd = parse_command(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code or 0) and EXIT_USAGE
    try:
        rep = run_command(cmd)
        emit_report(rep, cmd.out)
    except (UsageError, DatasetError) as exc:
        print(f"ghzbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ghzbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
