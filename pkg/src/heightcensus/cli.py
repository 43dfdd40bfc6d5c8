"""Command-line front end.

Exit codes: 0 every certified check passed; 1 a verified bound failed (a
mathematical regression); 2 resource guard or infeasible parameters; 3
precision cap reached while certifying; 4 invalid input.

All rational inputs are exact ``p/q`` strings.  Output is deterministic for a
given configuration: plain text tables by default, ``--json`` or ``--csv``
on request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import census as cz
from . import faberforge as ff
from . import transmachine as tm
from .enclosures import DEFAULT_PRECISION_CAP, RealEnclosure, frac_str
from .errors import BudgetExceeded, CertificationError, DomainError, InfeasibleError
from .polynum import (
    AlgebraicNumber,
    NumberFieldElement,
    nf_reduce,
    parse_multivariate,
    parse_polynomial,
    parse_rational,
    RatPolynomial,
)

EXIT_OK, EXIT_BOUND_FAILED, EXIT_RESOURCE, EXIT_CERTIFICATION, EXIT_INPUT = 0, 1, 2, 3, 4
ENV_CACHE_DIR = "HEIGHTCENSUS_CACHE_DIR"
ENV_PRECISION_CAP = "HEIGHTCENSUS_PRECISION_CAP"


@dataclass
class RunConfig:
    command: str
    params: dict[str, str]
    budget: int = cz.DEFAULT_BUDGET
    precision_cap: int = DEFAULT_PRECISION_CAP
    cache_dir: str | None = None
    output: str = "text"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.budget <= 0:
            raise DomainError("budget must be positive")
        if self.precision_cap < 64:
            raise DomainError("precision cap must be at least 64 bits")


@dataclass
class Emitted:
    """Rows for text/CSV output plus a JSON document and the pass flag."""

    columns: list[str]
    rows: list[list[object]] = field(default_factory=list)
    document: object = None
    passed: bool = True


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, RealEnclosure):
        return frac_str(v.lower) if v.is_exact() else f"[{float(v.lower):.12g}, {float(v.upper):.12g}]"
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return "-"
    return str(v)


def render(out: Emitted, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.document, sort_keys=True, indent=2) + "\n"
    cells = [[_cell(v) for v in r] for r in out.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(out.columns)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(out.columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(out.columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing helpers


def _rat(text: str) -> Fraction:
    return parse_rational(text)


def _algebraic(value: str | None, minpoly: str | None, root_index: int | None) -> AlgebraicNumber:
    """A rational ``p/q`` or the ``root_index``-th root (canonical order) of ``minpoly``."""
    if minpoly:
        p = parse_polynomial(minpoly)
        roots = AlgebraicNumber.roots_of(p)
        idx = root_index or 0
        if not 0 <= idx < len(roots):
            raise DomainError(f"root index {idx} out of range for {p} ({len(roots)} roots)")
        return roots[idx]
    if value is None:
        raise DomainError("an algebraic point is required (--alpha p/q or --minpoly with --root-index)")
    return AlgebraicNumber.from_rational(_rat(value))


def _field_element(gen: AlgebraicNumber, text: str) -> NumberFieldElement:
    """A coordinate written as a rational polynomial in the generator ``a``."""
    t = text.strip()
    if "a" not in t:
        return NumberFieldElement.rational(gen, _rat(t))
    nvars, terms = parse_multivariate(t)
    if nvars != 1:
        raise DomainError(f"coordinate '{text}' must be a polynomial in a")
    deg = max(k[0] for k in terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for k, v in terms.items():
        coeffs[k[0]] = v
    return nf_reduce(gen, RatPolynomial.from_fractions(coeffs))


# ---------------------------------------------------------------------------
# census


def _table_rows(tables: Sequence[cz.CensusTable]) -> list[list[object]]:
    rows = []
    for t in tables:
        for c in t.checks:
            rows.append([t.kind, t.degree, t.param_str(), t.count, c.label, c.side,
                         float(c.bound.mid), "pass" if c.passed else "FAIL"])
    return rows


def cmd_census(args, cfg: RunConfig) -> Emitted:
    kind = args.kind
    cols = ["kind", "D", "param", "count", "bound", "side", "bound_approx", "verdict"]
    if kind in ("E", "E_exact", "half_disk"):
        if args.N is None:
            raise DomainError(f"--N is required for kind {kind}")
        N = _rat(args.N)
        if kind == "E":
            tables = [cz.verify_lemma1(args.D, N, cfg.budget, cfg.precision_cap, cfg.jobs, cfg.cache_dir)]
        elif kind == "E_exact":
            tables = [cz.verify_exact_degree_bounds(args.D, N, cfg.budget, cfg.precision_cap, cfg.jobs,
                                                    cfg.cache_dir)]
        else:
            rep = cz.verify_half_disk(args.D, N, cfg.budget, cfg.precision_cap, cfg.jobs, cfg.cache_dir)
            return Emitted(["D", "N", "inside", "total", "inversion_closed", "verdict"],
                           [[rep.D, rep.N, rep.inside, rep.total, rep.inversion_closed,
                             "pass" if rep.passed else "FAIL"]], rep.to_json(), rep.passed)
    else:
        if args.H is None:
            raise DomainError(f"--H is required for kind {kind}")
        H = int(args.H)
        if kind == "A":
            tables = [cz.count_A(args.D, H, cfg.budget, cfg.jobs, cfg.precision_cap)]
        else:
            tables = [cz.count_eisenstein(args.D, H, cfg.budget, cfg.precision_cap)]
    doc = [t.to_json() for t in tables]
    return Emitted(cols, _table_rows(tables), doc if len(doc) > 1 else doc[0], all(t.passed for t in tables))


# ---------------------------------------------------------------------------
# function


def _schedule(args, cfg: RunConfig) -> ff.Schedule:
    phi = ff.PhiSpec.parse(args.phi, _rat(args.x0))
    Ns = [_rat(x) for x in args.N_values.split(",")] if args.N_values else None
    return ff.build_schedule(phi, args.depth, args.mode, args.variant, Ns, cfg.budget,
                             cfg.precision_cap, cfg.jobs, cfg.cache_dir)


def _schedule_emit(sch: ff.Schedule) -> Emitted:
    rows = []
    for e in sch.entries:
        conds = ",".join(f"{k}:{'ok' if v else ('FAIL' if v is False else '?')}" for k, v in sorted(e.conditions))
        rows.append([e.index, e.N_delta, e.epsilon_delta, e.c_delta.bit_length(), e.dyadic_exponent, conds])
    return Emitted(["delta", "N", "epsilon", "c_bits", "dyadic_exp", "conditions"], rows, sch.to_json(),
                   sch.mode != ff.FAITHFUL or sch.all_conditions_hold)


def cmd_function(args, cfg: RunConfig) -> Emitted:
    sch = _schedule(args, cfg)
    if args.action == "build":
        out = _schedule_emit(sch)
        if args.out:
            Path(args.out).write_text(sch.dumps())
        return out
    fn = ff.SeriesFunction(sch, cfg.budget, cfg.precision_cap)
    if args.action == "eval":
        alpha = _algebraic(args.alpha, args.minpoly, args.root_index)
        val = ff.eval_exact_at_algebraic(fn, alpha, args.sigma)
        doc = val.to_json()
        rows = [["exact", args.sigma, val.k0, " ".join(frac_str(c) for c in val.value.coords),
                 val.witness_is_dyadic if val.witness is not None else None]]
        if args.ball_depth:
            z = alpha.ball(128, cfg.precision_cap)
            ball = ff.eval_truncated(fn, z, args.ball_depth)
            doc["ball"] = ball.to_json()
            doc["ball_depth"] = args.ball_depth
            rows.append(["ball", 0, args.ball_depth, f"{ball.to_complex():.15g} +/- {float(ball.rad):.3g}", None])
        return Emitted(["kind", "sigma", "k0/K", "value", "dyadic_witness"], rows, doc, True)
    # verify
    reports: list[tuple[str, bool, object]] = []
    if sch.mode == ff.FAITHFUL:
        reports.append(("schedule conditions (i)-(iii)", sch.all_conditions_hold, sch.violations))
    for k, ok in ff.tail_majorant_checks(fn, cfg.precision_cap):
        if sch.mode == ff.FAITHFUL or ok:
            reports.append((f"tail majorant level {k}", ok, None))
        else:
            # toy schedules break condition (i) on purpose; the majorant rests on it
            reports.append((f"tail majorant level {k}", None, "not implied by a toy schedule"))
    if sch.variant == "f":
        for d in range(1, fn.depth + 1):
            for D in range(1, d + 1):
                try:
                    rep = ff.verify_sigma_lower_bound(fn, D, d, cfg.budget, cfg.precision_cap)
                except BudgetExceeded as exc:
                    reports.append((f"sigma lower bound D={D} d={d}", None, f"skipped: {exc}"))
                    continue
                reports.append((f"sigma lower bound D={D} d={d}", rep.passed, rep.to_json()))
    if fn.depth >= 2:
        w = ff.check_transcendence_witness(fn, 1)
        reports.append(("transcendence witness K=1", w.passed, w.to_json()))
    if args.alpha is not None or args.minpoly:
        alpha = _algebraic(args.alpha, args.minpoly, args.root_index)
        val = ff.eval_exact_at_algebraic(fn, alpha, args.sigma)
        ok = val.value.generator.minpoly == alpha.minpoly
        if sch.variant == "g":
            ok = ok and val.witness_is_dyadic
        reports.append((f"exact value sigma={args.sigma}", ok, val.to_json()))
    rows = [[name, "pass" if ok else ("info" if ok is None else "FAIL"), _summary(d)] for name, ok, d in reports]
    doc = {"schedule": sch.to_json(),
           "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in reports]}
    return Emitted(["check", "verdict", "detail"], rows, doc, all(ok is not False for _, ok, _ in reports))


def _short(q: str, limit: int = 40) -> str:
    if len(q) <= limit:
        return q
    num, _, den = q.partition("/")
    return f"<{len(num.lstrip('-'))}-digit / {len(den)}-digit rational>"


def _summary(detail) -> str:
    """One-line digest of a verification detail for the text table."""
    if detail is None:
        return ""
    if isinstance(detail, (str, list)):
        return "; ".join(detail) if isinstance(detail, list) else detail
    if "coords" in detail:
        text = "value (" + ", ".join(_short(c) for c in detail["coords"]) + ")"
        if "witness_degree" in detail:
            text += (f"; witness degree {detail['witness_degree']}, denominators divide "
                     f"2^{detail['witness_max_denominator_exponent']}")
        return text
    if "candidates" in detail:
        return f"{detail['candidates']} candidates vs {detail['bound']['bound_approx']:.6g}"
    if "degrees" in detail:
        return "degrees " + ", ".join(map(str, detail["degrees"]))
    return ""


# ---------------------------------------------------------------------------
# machine


def _disk(args) -> tm.DiskPair:
    return tm.DiskPair.of(_rat(args.R), _rat(args.r))


def cmd_siegel(args, cfg: RunConfig) -> Emitted:
    if args.random:
        rng = random.Random(cfg.seed)
        insts = [tm.generate_instance(rng, args.t, args.D, _rat(args.N0), rng.randint(1, args.max_points),
                                      cfg.budget) for _ in range(args.random)]
    else:
        insts = [tm.demo_instance(args.demo)]
    rows, docs, ok = [], [], True
    for i, inst in enumerate(insts):
        sol = tm.siegel_solve(inst)
        ok = ok and sol.bound_ok and sol.vanishing_verified
        rows.append([i, inst.t, inst.T, len(inst.points), sum(inst.degrees), sol.kernel_dimension,
                     sol.max_coeff, sol.bound_ok, sol.to_text()])
        docs.append({"instance": inst.to_json(), "solution": sol.to_json()})
    return Emitted(["instance", "t", "T", "points", "sum_d", "kernel_dim", "max_coeff", "bound_ok", "P"],
                   rows, docs if len(docs) > 1 else docs[0], ok)


def cmd_schwarz(args, cfg: RunConfig) -> Emitted:
    F = parse_polynomial(args.poly)
    disk = _disk(args)
    zeros = [_algebraic(z, None, None) for z in args.zeros.split(",")] if args.zeros else []
    if args.zero_minpoly:
        zeros += [_algebraic(None, args.zero_minpoly, args.zero_root_index)]
    rep = tm.schwarz_check(F, disk, zeros, args.grid, cfg.precision_cap)
    row = [rep.zeros, float(rep.sup_r_upper), float(rep.sup_R_lower), rep.contraction, float(rep.rhs_lower),
           float(rep.margin), "pass" if rep.passed else "FAIL"]
    return Emitted(["s", "sup_r_upper", "sup_R_lower", "e^(-c0 s)", "rhs_lower", "margin", "verdict"],
                   [row], rep.to_json(), rep.passed)


def cmd_liouville(args, cfg: RunConfig) -> Emitted:
    if args.field:
        gen = _algebraic(None, args.field, args.root_index)
        coords = [_field_element(gen, x) for x in args.gamma.split(",")]
    else:
        qs = [_rat(x) for x in args.gamma.split(",")]
        gen = AlgebraicNumber.from_rational(qs[0])
        coords = [NumberFieldElement.rational(gen, q) for q in qs]
    res = tm.liouville_check(args.poly, coords, args.D, args.branch, cap=cfg.precision_cap)
    margin = None if res.margin is None else res.margin
    row = [res.kind, res.branch, res.D, res.length, res.value_abs, res.bound, margin]
    return Emitted(["result", "branch", "D", "L(P)", "|P(gamma)|", "bound", "margin"], [row], res.to_json(),
                   not res.violated)


def _oracle(spec: str, cfg: RunConfig, args) -> tm.Oracle:
    s = spec.strip()
    if s in ("id", "identity", "z"):
        return tm.identity_oracle()
    if s.startswith("poly:"):
        p = parse_polynomial(s[5:].replace("z", "X"))
        return tm.polynomial_oracle(list(p.coeffs))
    if s in ("f", "g"):
        phi = ff.PhiSpec.parse(args.phi, _rat(args.x0))
        sch = ff.build_schedule(phi, args.depth, args.mode, s, None, cfg.budget, cfg.precision_cap, cfg.jobs)
        return tm.series_oracle(ff.SeriesFunction(sch, cfg.budget, cfg.precision_cap))
    raise DomainError(f"unknown oracle {spec!r}: use id, poly:<polynomial in z>, f or g")


def cmd_sigma(args, cfg: RunConfig) -> Emitted:
    oracles = [_oracle(o, cfg, args) for o in (args.oracle or ["id"])]
    res = tm.sigma_count(oracles, args.D, _rat(args.N), _rat(args.r), cfg.budget, cfg.precision_cap, cfg.jobs)
    return Emitted(["D", "N", "r", "count", "candidates_in_disk", "uncaptured"],
                   [[res.D, res.N, res.r, res.count, res.candidates, res.uncaptured]], res.to_json(), True)


def cmd_thresholds(args, cfg: RunConfig) -> Emitted:
    disk = _disk(args)
    sups = [_rat(x) for x in args.sup.split(",")] if args.sup else []
    N0 = int(_rat(args.N0))
    rep = tm.threshold_report(args.D, N0, args.t, _rat(args.gamma), disk, sups, args.direction, args.scan_cap)
    rows = [[r.value, r.T, r.lhs, r.rhs, r.holds] for r in rep.rows]
    doc = rep.to_json()
    doc["gamma_t"] = tm.gamma_t_of(args.t, disk).to_json()
    name = "N0" if args.direction == tm.FIXED_D else "D"
    return Emitted([name, "T", "lhs", "rhs", "holds"], rows, doc, rep.found)


def cmd_constants(args, cfg: RunConfig) -> Emitted:
    disk = _disk(args)
    g = tm.gamma_t_of(args.t, disk)
    rows = [["c0", disk.c0], ["e^(-c0)", disk.contraction], ["gamma_t", g],
            ["a(t)", tm.a_exponent(args.t)], ["b(t)", tm.b_exponent(args.t)]]
    doc = {"disk": disk.to_json(), "t": args.t, "gamma_t": g.to_json(), "a": frac_str(tm.a_exponent(args.t)),
           "b": frac_str(tm.b_exponent(args.t))}
    if args.gamma and args.D and args.N0:
        gamma = _rat(args.gamma)
        T = tm.siegel_T(args.D, _rat(args.N0), gamma, disk, args.t)
        u1 = tm.siegel_u1(T, _rat(args.N0), args.t)
        sw = tm.sandwich_holds(T, args.D, _rat(args.N0), gamma, args.t)
        rows += [["T", T], ["u1", u1], ["sandwich", sw]]
        doc.update({"T": T, "u1": u1.to_json(), "sandwich": sw})
    return Emitted(["quantity", "value"], rows, doc, True)


MACHINE = {"siegel": cmd_siegel, "schwarz": cmd_schwarz, "liouville": cmd_liouville, "sigma": cmd_sigma,
           "thresholds": cmd_thresholds, "constants": cmd_constants}


def cmd_machine(args, cfg: RunConfig) -> Emitted:
    return MACHINE[args.tool](args, cfg)


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--budget", type=int, default=cz.DEFAULT_BUDGET, help="candidate cap for enumerations")
    g.add_argument("--precision-cap", type=int, default=None,
                   help=f"maximum working precision in bits (env {ENV_PRECISION_CAP})")
    g.add_argument("--cache-dir", default=None, help=f"census cache directory (env {ENV_CACHE_DIR})")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for enumerations")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json", default="text")
    fmt.add_argument("--csv", dest="output", action="store_const", const="csv")
    return p


def _schedule_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=["f", "g"], default="f")
    p.add_argument("--phi", default="x/2", help="growth function: x/c, sqrt or log1p")
    p.add_argument("--x0", default="2")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--mode", choices=[ff.FAITHFUL, ff.TOY], default=ff.FAITHFUL)
    p.add_argument("--N-values", default=None, help="comma-separated N_delta for toy mode")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="heightcensus", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", parents=[common], help="enumerate and verify counting bounds")
    c.add_argument("--kind", choices=["E", "E_exact", "half_disk", "A", "Eis"], required=True)
    c.add_argument("--D", type=int, required=True)
    c.add_argument("--N", default=None, help="height bound p/q (kinds E, E_exact, half_disk)")
    c.add_argument("--H", default=None, help="usual height bound (kinds A, Eis)")

    f = sub.add_parser("function", help="construct and evaluate the series f and g")
    fsub = f.add_subparsers(dest="action", required=True)
    for name in ("build", "eval", "verify"):
        fp = fsub.add_parser(name, parents=[common])
        _schedule_args(fp)
        if name == "build":
            fp.add_argument("--out", default=None, help="write the schedule JSON here")
        else:
            fp.add_argument("--alpha", default=None, help="rational point p/q")
            fp.add_argument("--minpoly", default=None, help="minimal polynomial of an algebraic point")
            fp.add_argument("--root-index", type=int, default=None)
            fp.add_argument("--sigma", type=int, default=0)
        if name == "eval":
            fp.add_argument("--ball-depth", type=int, default=0, help="also evaluate the truncation at K")

    m = sub.add_parser("machine", help="Siegel, Schwarz and Liouville machinery")
    msub = m.add_subparsers(dest="tool", required=True)
    s = msub.add_parser("siegel", parents=[common])
    s.add_argument("--demo", choices=["basic", "sqrt2", "infeasible"], default="basic")
    s.add_argument("--random", type=int, default=0, help="solve this many generated instances")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--D", type=int, default=1)
    s.add_argument("--N0", default="1")
    s.add_argument("--max-points", type=int, default=4)

    sw = msub.add_parser("schwarz", parents=[common])
    sw.add_argument("--poly", required=True, help="integer polynomial in X")
    sw.add_argument("--R", required=True)
    sw.add_argument("--r", required=True)
    sw.add_argument("--zeros", default="", help="comma-separated rational zeros (repeat for multiplicity)")
    sw.add_argument("--zero-minpoly", default=None)
    sw.add_argument("--zero-root-index", type=int, default=None)
    sw.add_argument("--grid", type=int, default=tm.DEFAULT_GRID)

    lv = msub.add_parser("liouville", parents=[common])
    lv.add_argument("--poly", required=True, help="integer polynomial in X1..Xt")
    lv.add_argument("--gamma", required=True, help="comma-separated coordinates (p/q or polynomials in a)")
    lv.add_argument("--field", default=None, help="minimal polynomial of the generator a")
    lv.add_argument("--root-index", type=int, default=None)
    lv.add_argument("--D", type=int, default=None)
    lv.add_argument("--branch", choices=[tm.FIXED_D, tm.FIXED_N], default=tm.FIXED_D)

    sg = msub.add_parser("sigma", parents=[common])
    sg.add_argument("--oracle", action="append", help="id, poly:<polynomial in z>, f or g (repeatable)")
    sg.add_argument("--D", type=int, required=True)
    sg.add_argument("--N", required=True)
    sg.add_argument("--r", default="1")
    _schedule_args(sg)

    th = msub.add_parser("thresholds", parents=[common])
    th.add_argument("--t", type=int, default=2)
    th.add_argument("--D", type=int, default=1)
    th.add_argument("--N0", default="2")
    th.add_argument("--R", required=True)
    th.add_argument("--r", required=True)
    th.add_argument("--gamma", required=True)
    th.add_argument("--sup", default="", help="comma-separated upper bounds of |f_i|_R")
    th.add_argument("--direction", choices=[tm.FIXED_D, tm.FIXED_N], default=tm.FIXED_D)
    th.add_argument("--scan-cap", type=int, default=200)

    co = msub.add_parser("constants", parents=[common])
    co.add_argument("--R", required=True)
    co.add_argument("--r", required=True)
    co.add_argument("--t", type=int, default=2)
    co.add_argument("--gamma", default=None)
    co.add_argument("--D", type=int, default=None)
    co.add_argument("--N0", default=None)
    return parser


def _config(args) -> RunConfig:
    cap = args.precision_cap
    if cap is None:
        cap = int(os.environ.get(ENV_PRECISION_CAP, DEFAULT_PRECISION_CAP))
    cache = args.cache_dir or os.environ.get(ENV_CACHE_DIR) or None
    params = {k: str(v) for k, v in sorted(vars(args).items()) if v is not None and k not in
              ("budget", "precision_cap", "cache_dir", "jobs", "seed", "output")}
    return RunConfig(args.command, params, args.budget, cap, cache, args.output, args.seed, max(1, args.jobs))


COMMANDS = {"census": cmd_census, "function": cmd_function, "machine": cmd_machine}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        out = COMMANDS[args.command](args, cfg)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        for u in exc.undecided[:20]:
            print(f"  undecided: {u}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render(out, cfg.output))
    return EXIT_OK if out.passed else EXIT_BOUND_FAILED


if __name__ == "__main__":
    sys.exit(main())
