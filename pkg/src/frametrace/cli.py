"""Command-line front door: batch verification runs with JSON reports.

Exit codes: 0 all checks pass, 1 some check fails, 2 malformed input.
Sampling is seeded (numpy PCG64 via default_rng) so reports are reproducible;
identical inputs and seed give byte-identical report files.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io as ftio
from .commutant import (
    commutant_basis,
    is_tracial_pair,
    reduced_commutant,
    regular_commutant_basis,
)
from .errors import FrametraceError, NotAFrame, NotInRange, NotInvertible, UnsupportedGroup
from .frames import (
    InvariantProjection,
    admissible_vector_for_projection,
    coefficient_operator,
    canonical_dual,
    frame_operator,
    is_admissible_pair,
    natural_trace,
    projection_from_spanning,
    tighten,
    trace_functional,
    trace_of_projection,
)
from .gabor import (
    GaborSystem,
    frame_bounds_ratio,
    gabor_coefficient_map,
    gabor_canonical_dual,
    gabor_frame_operator,
    reference_window,
    wexler_raz_check,
    wh_bridge_check,
    wh_group_build,
)
from .groups import GroupVector, builtin_group, left_regular_rep, restrict_rep
from .plancherel import (
    builtin_irreps,
    fiber_admissibility_check,
    fiber_projections,
    parseval_residual,
    plancherel_transform,
    rank_measure,
)
from .reporting import CheckResult, RunReport, digest_bytes, digest_text, report_dumps, report_write

DEFAULT_TOL = 1e-9


class _CliInputError(Exception):
    pass


def _resolve_tol(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("FRAMETRACE_TOL")
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise _CliInputError(f"bad FRAMETRACE_TOL value {env!r}") from exc
    return DEFAULT_TOL


def _digest_file(report: RunReport, key: str, path) -> None:
    with open(path, "rb") as fh:
        report.inputs[key] = digest_bytes(fh.read())


def _load_group(args, report: RunReport):
    if getattr(args, "builtin", None):
        report.inputs["group"] = digest_text(args.builtin)
        return builtin_group(args.builtin)
    if getattr(args, "file", None):
        _digest_file(report, "group", args.file)
        return ftio.load_group(args.file)
    raise _CliInputError("one of --builtin or --file is required")


def _finish(report: RunReport, args) -> int:
    text = report_dumps(report)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.overall_pass else 1


# ---------------------------------------------------------------------------
# frametrace group


def cmd_group(args) -> int:
    tol = _resolve_tol(args)
    report = RunReport(seed=args.seed)
    group = _load_group(args, report)
    rng = np.random.default_rng(args.seed)
    report.metadata["group"] = group.label or "<file>"
    report.metadata["order"] = group.order

    lam = left_regular_rep(group)
    basis = regular_commutant_basis(group)
    report.add(
        CheckResult(
            name="commutant_dim_regular",
            residual=float(abs(len(basis) - group.order)),
            tol=0.0,
        )
    )
    report.metadata["commutant_dim"] = len(basis)

    # Trace identity sampling: tr(V_f^* V_g) = <f, g>.
    worst = 0.0
    for _ in range(20):
        f = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
        g = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
        vf = coefficient_operator(lam, f).matrix
        vg = coefficient_operator(lam, g).matrix
        lhs = natural_trace(vf.conj().T @ vg, group)
        rhs = np.vdot(g, f)  # <f, g>
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    report.add(CheckResult(name="trace_identity_sampled", residual=float(worst), tol=tol))

    table = None
    if args.irreps:
        _digest_file(report, "irreps", args.irreps)
        table = ftio.load_irreps(args.irreps, group)
    else:
        try:
            table = builtin_irreps(group)
        except UnsupportedGroup:
            report.metadata["irreps"] = "unavailable"
    if table is not None:
        report.metadata["irreps"] = len(table.irreps)
        report.metadata["irrep_dims"] = sorted(table.dims())
        report.add(
            CheckResult(
                name="irrep_completeness",
                residual=float(abs(sum(d * d for d in table.dims()) - group.order)),
                tol=0.0,
            )
        )
        worst = 0.0
        for _ in range(20):
            f = GroupVector(
                group, rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
            )
            worst = max(worst, parseval_residual(table, f) / (1.0 + f.norm() ** 2))
        report.add(CheckResult(name="parseval_sampled", residual=float(worst), tol=tol))
    return _finish(report, args)


# ---------------------------------------------------------------------------
# frametrace frame


def _frame_context(args, report: RunReport):
    """Resolve the group, the window vector and the analysis subspace."""
    obj_group = None
    if args.builtin:
        obj_group = builtin_group(args.builtin)
        report.inputs["group"] = digest_text(args.builtin)
    elif args.group_file:
        _digest_file(report, "group", args.group_file)
        obj_group = ftio.load_group(args.group_file)
    else:
        import json

        with open(args.window, "r", encoding="utf-8") as fh:
            label = json.load(fh).get("group", "")
        obj_group = builtin_group(label)
        report.inputs["group"] = digest_text(label)
    _digest_file(report, "window", args.window)
    window = ftio.load_vector(args.window, obj_group)
    lam = left_regular_rep(obj_group)
    if args.subspace:
        _digest_file(report, "subspace", args.subspace)
        vectors = ftio.load_vectors(args.subspace, obj_group)
        proj = projection_from_spanning(lam, [v.data for v in vectors])
    else:
        proj = InvariantProjection(obj_group, np.eye(obj_group.order, dtype=complex))
    return obj_group, lam, window, proj


def _compressed(lam, proj):
    q = proj.range_basis()
    rep = restrict_rep(lam, [q[:, j] for j in range(q.shape[1])])
    return q, rep


def cmd_frame(args) -> int:
    tol = _resolve_tol(args)
    report = RunReport(seed=args.seed)
    group, lam, window, proj = _frame_context(args, report)
    report.metadata["group"] = group.label
    report.metadata["subcommand"] = args.action
    q, rep = _compressed(lam, proj)
    w_c = q.conj().T @ window.data

    if args.action in ("dual", "tighten"):
        v = coefficient_operator(rep, w_c)
        try:
            out_c = canonical_dual(v) if args.action == "dual" else tighten(v)
        except NotInvertible:
            report.add(CheckResult(name=f"{args.action}_not_a_frame", residual=1.0, tol=0.0))
            return _finish(report, args)
        partner = out_c if args.action == "tighten" else w_c
        check = is_admissible_pair(rep, partner, out_c, tol=tol)
        report.add(check.renamed(f"{args.action}_reconstruction"))
        if args.out_vector:
            ftio.save_vector(GroupVector(group, q @ out_c), args.out_vector)
    elif args.action == "check":
        eta_path, psi_path = args.pair
        _digest_file(report, "eta", eta_path)
        _digest_file(report, "psi", psi_path)
        eta = ftio.load_vector(eta_path, group)
        psi = ftio.load_vector(psi_path, group)
        eta_c = q.conj().T @ eta.data
        psi_c = q.conj().T @ psi.data
        report.add(is_admissible_pair(rep, eta_c, psi_c, tol=tol))
        reduced = reduced_commutant(regular_commutant_basis(group), proj)
        report.add(is_tracial_pair(reduced, trace_functional(group), eta.data, psi.data, tol=tol))
        try:
            table = builtin_irreps(group)
            report.add(fiber_admissibility_check(table, proj, eta, psi, tol=tol))
        except UnsupportedGroup:
            report.metadata["fiber_check"] = "skipped: no irreps available"
        except NotInRange as exc:
            report.add(CheckResult(name="fiber_admissibility_in_range", residual=1.0, tol=0.0))
            report.metadata["fiber_check"] = str(exc)
    elif args.action == "decompose":
        table = builtin_irreps(group)
        field = fiber_projections(table, proj, tol=tol)
        nu = rank_measure(field)
        report.metadata["fiber_ranks"] = {
            s.label: r for s, r in zip(table.irreps, field.ranks())
        }
        report.metadata["rank_measure"] = nu
        report.add(
            CheckResult(
                name="rank_measure_vs_trace",
                residual=float(abs(nu - trace_of_projection(proj))),
                tol=tol,
            )
        )
    else:
        raise _CliInputError(f"unknown frame action {args.action!r}")
    return _finish(report, args)


# ---------------------------------------------------------------------------
# frametrace gabor


def cmd_gabor(args) -> int:
    tol = _resolve_tol(args)
    report = RunReport(seed=args.seed)
    length, a, b = args.L, args.a, args.b
    report.inputs["lattice"] = digest_text(f"L={length},a={a},b={b}")
    report.metadata["lattice"] = {"L": length, "a": a, "b": b}
    report.metadata["subcommand"] = args.action
    rng = np.random.default_rng(args.seed)

    def load_sys(path, key):
        _digest_file(report, key, path)
        sys_ = ftio.load_window(path)
        if (sys_.L, sys_.a, sys_.b) != (length, a, b):
            raise ftio.MalformedInput(f"{path}: lattice parameters disagree with flags")
        return sys_

    if args.action == "reference":
        g0 = reference_window(length, a, b)
        sys_ = GaborSystem(L=length, a=a, b=b, window=g0)
        residual = float(np.linalg.norm(gabor_frame_operator(sys_) - np.eye(length)))
        report.add(CheckResult(name="reference_window_tight", residual=residual, tol=tol))
        if args.out_window:
            ftio.save_window(sys_, args.out_window)
    elif args.action == "dual":
        sys_ = load_sys(args.window, "window")
        try:
            gamma = gabor_canonical_dual(sys_)
        except NotAFrame:
            report.add(CheckResult(name="dual_not_a_frame", residual=1.0, tol=0.0))
            report.metadata["frame_bounds_ratio"] = frame_bounds_ratio(sys_)
            return _finish(report, args)
        v_g = gabor_coefficient_map(sys_)
        v_gamma = gabor_coefficient_map(GaborSystem(length, a, b, gamma))
        residual = float(np.linalg.norm(v_gamma.conj().T @ v_g - np.eye(length)))
        report.add(CheckResult(name="dual_reconstruction", residual=residual, tol=tol))
        report.add(wexler_raz_check(sys_, gamma, tol=tol))
        if args.out_window:
            ftio.save_window(GaborSystem(length, a, b, gamma), args.out_window)
    elif args.action == "wexler-raz":
        sys_ = load_sys(args.window, "window")
        cand = load_sys(args.candidate, "candidate")
        report.add(wexler_raz_check(sys_, cand.window, tol=tol))
        v_g = gabor_coefficient_map(sys_)
        v_c = gabor_coefficient_map(cand)
        residual = float(np.linalg.norm(v_c.conj().T @ v_g - np.eye(length)))
        report.add(CheckResult(name="reconstruction_crosscheck", residual=residual, tol=tol))
        report.metadata["wexler_raz_constant"] = a * b / length
    elif args.action == "bridge":
        wh = wh_group_build(length, a, b)
        report.metadata["wh_order"] = wh.group.order
        report.metadata["wh_central_order"] = wh.q
        report.add(CheckResult(name="wh_group_axioms", residual=0.0, tol=0.0))
        if args.window:
            f = load_sys(args.window, "window").window
        else:
            f = rng.standard_normal(length) + 1j * rng.standard_normal(length)
        if args.candidate:
            g = load_sys(args.candidate, "candidate").window
        else:
            g = rng.standard_normal(length) + 1j * rng.standard_normal(length)
        report.add(wh_bridge_check(length, a, b, f, g, tol=tol))
    else:
        raise _CliInputError(f"unknown gabor action {args.action!r}")
    return _finish(report, args)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frametrace")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the JSON report here")

    g = sub.add_parser("group", help="validate a group and its spectral data")
    g.add_argument("action", choices=["analyze"])
    g.add_argument("--builtin", default=None)
    g.add_argument("--file", default=None)
    g.add_argument("--irreps", default=None)
    common(g)
    g.set_defaults(func=cmd_group)

    f = sub.add_parser("frame", help="dual windows, admissibility and decomposition")
    f.add_argument("action", choices=["dual", "check", "tighten", "decompose"])
    f.add_argument("--window", required=True)
    f.add_argument("--subspace", default=None)
    f.add_argument("--pair", nargs=2, metavar=("ETA", "PSI"), default=None)
    f.add_argument("--builtin", default=None)
    f.add_argument("--group-file", default=None)
    f.add_argument("--out-vector", default=None)
    common(f)
    f.set_defaults(func=cmd_frame)

    gb = sub.add_parser("gabor", help="finite Weyl-Heisenberg systems")
    gb.add_argument("action", choices=["dual", "wexler-raz", "reference", "bridge"])
    gb.add_argument("--L", type=int, required=True)
    gb.add_argument("--a", type=int, required=True)
    gb.add_argument("--b", type=int, required=True)
    gb.add_argument("--window", default=None)
    gb.add_argument("--candidate", default=None)
    gb.add_argument("--out-window", default=None)
    common(gb)
    gb.set_defaults(func=cmd_gabor)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "frame" and args.action == "check" and not args.pair:
        print("frame check requires --pair ETA PSI", file=sys.stderr)
        return 2
    if args.command == "gabor" and args.action in ("dual", "wexler-raz") and not args.window:
        print(f"gabor {args.action} requires --window", file=sys.stderr)
        return 2
    if args.command == "gabor" and args.action == "wexler-raz" and not args.candidate:
        print("gabor wexler-raz requires --candidate", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (_CliInputError, FrametraceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
