"""Command-line entry point: ``divlab <subcommand> ...``.

Exit codes: 0 every check passed, 1 some check failed, 2 usage error,
3 invalid parameter or input, 4 memory/enumeration budget exceeded,
5 a build-time property failed, 6 unparseable .sfam file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import _parallel, bounds, projective, report, search
from .constructions import build_Fk, build_Pk, build_Qk
from .errors import DivlabError, FamilyError
from .report import PropertyReport, Timer
from .setfam import degree_profile, is_regular
from .sfam import read_sfam, write_sfam

CONSTRUCT_KINDS = ("fk", "qk", "pk", "ai", "a", "rk", "plane-lines")


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise FamilyError(f"construct {args.kind} requires {' '.join(missing)}")


def _emit(payload: dict, args) -> None:
    text = report.dumps(payload)
    if args.json:
        Path(args.json).write_text(text)
    sys.stdout.write(text)


def _build(args) -> PropertyReport:
    kind, budget = args.kind, args.budget_bytes
    if kind in ("fk", "qk", "pk"):
        _need(args, "k")
        k = args.k
        params = {"k": k}
        if kind == "fk":
            fam = build_Fk(k)
        elif kind == "qk":
            fam = build_Qk(k, budget)
        else:
            fam = build_Pk(k, budget)
        rep = PropertyReport(kind, params, fam).run_checks()
        rep.required = ["intersecting", "regular"]
        n = 2 * k + 1
        qk_deg = bounds.qk_degree_formula(k)
        div = rep.checks["diversity"]["value"]
        deg = rep.checks["regular"]["degree"]
        if kind == "fk":
            rep.cross_check("family_size", n, len(fam))
            rep.cross_check("min_member_size", k, int(fam.sizes().min()))
            rep.cross_check("max_member_size", k, int(fam.sizes().max()))
            rep.cross_check("degree", k, deg)
        elif kind == "qk":
            rep.required.append("upset")
            rep.cross_check("family_size", 1 << (2 * k), len(fam))
            rep.cross_check("degree", qk_deg, deg)
            rep.cross_check("diversity_vs_div_qk_formula", bounds.div_Qk_formula(k), div)
        else:
            rep.cross_check("family_size", 1 << (2 * k), len(fam))
            rep.cross_check("degree", k + qk_deg - (k + 1), deg)
            rep.cross_check(
                "diversity_vs_div_qk_formula_plus_1", bounds.div_Qk_formula(k) + 1, div
            )
        return rep

    _need(args, "q")
    q = args.q
    plane = projective.build_plane(q)
    n = plane.n
    if kind == "plane-lines":
        rep = PropertyReport(kind, {"q": q}, plane.lines).run_checks()
        rep.required = ["intersecting", "regular"]
        rep.cross_check("family_size", n, len(plane.lines))
        rep.cross_check("degree", q + 1, rep.checks["regular"]["degree"])
        return rep
    if kind == "ai":
        _need(args, "i")
        i = args.i
        fam = projective.enumerate_Ai(plane, i, args.enum_budget)
        rep = PropertyReport(kind, {"q": q, "i": i}, fam).run_checks()
        rep.required = ["intersecting", "regular"]
        if i == q + 1:
            rep.cross_check("family_size", n, len(fam))
        deg = rep.checks["regular"]["degree"]
        rep.cross_check(
            "degree_times_n_eq_size_times_i",
            len(fam) * i,
            int(deg) * n if deg is not None else "not regular",
        )
        b = bounds.bonferroni_lower(q, i)
        rep.cross_check("size_at_least_bonferroni_middle", True, len(fam) >= b.middle)
        return rep

    stats = projective.layer_stats(plane, args.enum_budget)
    if kind == "a":
        fam = projective.build_A(plane, args.enum_budget)
        rep = PropertyReport(kind, {"q": q}, fam).run_checks()
        rep.required = ["intersecting"]
        rep.cross_check("family_size", sum(s.size for s in stats), len(fam))
        return rep

    fam = projective.build_Rk(plane, budget, args.enum_budget)
    rep = PropertyReport(kind, {"q": q}, fam).run_checks()
    rep.required = ["intersecting", "regular", "upset"]
    k = plane.k
    rep.cross_check("family_size", 1 << (2 * k), len(fam))
    layers_regular = all(s.degree is not None for s in stats)
    rep.cross_check("layers_regular", True, layers_regular)
    if layers_regular:
        delta = bounds.ledger_delta(stats)
        sigma_a = sum(s.degree for s in stats)
        sigma_abar = sum(s.size - s.degree for s in stats)
        rep.cross_check(
            "degree_from_layers",
            sigma_a + bounds.qk_degree_formula(k) - sigma_abar,
            rep.checks["regular"]["degree"],
        )
        actual = int(rep.checks["diversity"]["value"]) - bounds.div_Qk_formula(k)
        rep.cross_check("diversity_gain_vs_layer_ledger", delta, actual)
        rhs = bounds.theorem22_rhs(q)
        rep.cross_check("diversity_gain_gt_theorem22_rhs", True, actual > rhs)
        rep.values = {
            "div_qk": bounds.div_Qk_formula(k),
            "diversity_gain": actual,
            "ledger_delta": delta,
            "theorem22_rhs": rhs,
        }
    return rep


def cmd_construct(args) -> int:
    with Timer() as t:
        rep = _build(args)
    rep.duration_s = t.elapsed
    params = "_".join(f"{k}{v}" for k, v in rep.params.items())
    out = args.out or f"{args.kind}_{params}.sfam"
    write_sfam(rep.family, out)
    _emit(rep.to_json(), args)
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = set(checks) - set(report.ALL_CHECKS)
    if unknown:
        raise FamilyError(f"unknown checks: {', '.join(sorted(unknown))}")
    with Timer() as t:
        fam = read_sfam(args.file)
        rep = PropertyReport("file", {"path": Path(args.file).name}, fam).run_checks(checks)
        rep.required = [c for c in checks if c != "diversity"]
    rep.duration_s = t.elapsed
    _emit(rep.to_json(), args)
    return 0 if rep.passed else 1


def cmd_bounds(args) -> int:
    if (args.k is None) == (args.q is None):
        raise FamilyError("bounds needs exactly one of --k or --q")
    if args.k is not None:
        k = args.k
        payload = {
            "k": str(k),
            "n": str(2 * k + 1),
            "div_qk": str(bounds.div_Qk_formula(k)),
            "qk_size": str(1 << (2 * k)),
            "qk_degree": str(bounds.qk_degree_formula(k)),
        }
    else:
        q = args.q
        rhs = bounds.theorem22_rhs(q)  # validates q
        n, k = bounds.plane_params(q)
        layers = []
        for i in range(q + 1, k + 1):
            b = bounds.bonferroni_lower(q, i)
            layers.append(
                {
                    "i": str(i),
                    "bonferroni_middle": str(b.middle),
                    "bonferroni_final": str(b.final),
                    "chain_holds": b.chain_holds,
                }
            )
        payload = {
            "q": str(q),
            "n": str(n),
            "k": str(k),
            "div_qk": str(bounds.div_Qk_formula(k)),
            "theorem22_rhs": str(rhs),
            "layers": layers,
        }
    _emit({"schema": "divlab.bounds/1", **payload}, args)
    return 0


def cmd_search(args) -> int:
    with Timer() as t:
        if args.method == "exhaustive":
            rep = search.exhaustive_max_diversity(args.n)
        else:
            start = read_sfam(args.start) if args.start else None
            blocks = ()
            if args.line_blocks is not None:
                plane = projective.build_plane(args.line_blocks)
                if plane.n != args.n:
                    raise FamilyError(f"--line-blocks {args.line_blocks} needs --n {plane.n}")
                blocks = [
                    projective.enumerate_Ai(plane, i, args.enum_budget)
                    for i in range(plane.q + 1, plane.k + 1)
                ]
            rep = search.hillclimb_diversity(
                args.n, start, rng_seed=args.seed, max_steps=args.steps, blocks=blocks
            )
    out = args.out or f"search_{args.method}_n{args.n}.sfam"
    write_sfam(rep.best_family, out)
    payload = {"schema": "divlab.search/1", **rep.to_json()}
    payload["volatile"] = {"duration_s": f"{t.elapsed:.6f}"}
    _emit(payload, args)
    return 0


def cmd_plane(args) -> int:
    with Timer() as t:
        plane = projective.build_plane(args.q)
        lines = plane.lines
        reg = is_regular(lines, degree_profile(lines))
    if args.emit_lines:
        write_sfam(lines, args.emit_lines)
    payload = {
        "schema": "divlab.plane/1",
        "q": str(plane.q),
        "n": str(plane.n),
        "axioms_verified": True,
        "line_size": str(plane.q + 1),
        "point_degree": str(reg.degree),
        "points": [{"index": str(i + 1), "coords": list(p)} for i, p in enumerate(plane.points)],
        "lines": [list(s.elements) for s in lines],
        "volatile": {"duration_s": f"{t.elapsed:.6f}"},
    }
    _emit(payload, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", help="also write the JSON report to this path")
    common.add_argument("--threads", type=int, default=1, help="worker threads for scans")
    common.add_argument(
        "--budget-bytes",
        type=int,
        default=None,
        help="memory cap for explicit Q_k (default $DIVLAB_BUDGET_BYTES or 2 GiB)",
    )
    common.add_argument(
        "--enum-budget",
        type=int,
        default=None,
        help="cap on candidate words when enumerating A_i",
    )

    parser = argparse.ArgumentParser(
        prog="divlab", description="Exact checks on intersecting set families."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a family and report on it")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--out", help="where to write the .sfam (default <kind>_<params>.sfam)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check properties of a .sfam file")
    p.add_argument("file")
    p.add_argument("--checks", default=",".join(report.ALL_CHECKS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="exact closed-form values")
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", parents=[common], help="maximum-diversity search")
    p.add_argument("method", choices=("exhaustive", "hillclimb"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--start", help="start family (.sfam); default Q_k")
    p.add_argument(
        "--line-blocks",
        type=int,
        metavar="Q",
        help="enable block moves swapping whole layers A_i of PG(2,Q)",
    )
    p.add_argument("--out", help="where to write the best family")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("plane", parents=[common], help="build PG(2,q) and check its axioms")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--emit-lines", metavar="PATH")
    p.set_defaults(func=cmd_plane)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _parallel.set_workers(args.threads)
        return args.func(args)
    except DivlabError as exc:
        print(f"divlab: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"divlab: error: {exc}", file=sys.stderr)
        return FamilyError.exit_code


if __name__ == "__main__":
    sys.exit(main())
