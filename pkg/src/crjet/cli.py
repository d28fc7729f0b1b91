"""Command-line front end.

Subcommands: analyze, lie, multiplier, map, weights.  Output is either
deterministic human-readable text or (--json) the structured report document.
Exit codes: 0 success, 1 input error, 2 order-budget / resource error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import CRJetError, GammaConstraintViolated, MissingFactoredForm, OrderBudgetExceeded
from .exprs import render_coeff, render_jet
from .frame import build_frame
from .lie import lie_power, multiplier_det, required_order
from .manifold import load_manifold, load_map
from .nondeg import (
    finite_order,
    map_finite_order,
    s_factor,
    search_multipliers,
    weak_check_first_codim,
    weak_check_hypersurface,
)
from . import report
from .weights import (
    WeightSequence,
    assoc_weight,
    check_regular,
    compare_sequences,
    log_grid,
    quasianalytic_diag,
    recover_mk,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the stable contract reserves 2 for
    # order-budget problems, so usage errors must exit 1 instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="crjet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[], help="finite and weak nondegeneracy at 0")
    p.add_argument("file")
    p.add_argument("--max-order", type=int, default=None,
                   help="search orders k <= this (default: min(4, order-2))")
    p.add_argument("--witness-budget", type=int, default=500,
                   help="max multiplier tuples enumerated when degenerate")
    _common_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lie", help="one iterated Lie-derivative coefficient row")
    p.add_argument("file")
    p.add_argument("--alpha", required=True, help="comma-separated multi-index, e.g. 1,0")
    p.add_argument("--mu", type=int, required=True, help="characteristic index (1-based)")
    _common_flags(p)
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("multiplier", help="one multiplier determinant D(alphas, r)")
    p.add_argument("file")
    p.add_argument("--alphas", required=True,
                   help="N multi-indices, rows ';'-separated, entries ','-separated")
    p.add_argument("--r", required=True, help="N characteristic indices, comma-separated")
    _common_flags(p)
    p.set_defaults(func=cmd_multiplier)

    p = sub.add_parser("map", help="nondegeneracy order of the [map] section")
    p.add_argument("file")
    p.add_argument("--max-order", type=int, default=None)
    _common_flags(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("weights", help="weight-sequence diagnostics")
    p.add_argument("--family", required=True, choices=["gevrey", "logpow", "const", "file"])
    p.add_argument("--param", type=float, default=None,
                   help="family parameter (gevrey s / logpow sigma)")
    p.add_argument("--terms", type=int, default=100, help="check range K")
    p.add_argument("--file", default=None,
                   help="explicit sequence: one log(m_k) per line (family=file)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weights)
    return parser


def _common_flags(p):
    p.add_argument("--display-order", type=int, default=6,
                   help="truncate printed jets to this degree (default 6)")
    p.add_argument("--json", action="store_true", help="structured report document")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrderBudgetExceeded as exc:
        need = f" (required input order: {exc.required_order})" if exc.required_order else ""
        print(f"crjet: order budget exceeded: {exc}{need}", file=sys.stderr)
        return 2
    except CRJetError as exc:
        print(f"crjet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


# ---------------------------------------------------------------------------


def _fmt_vec(vec):
    return "(" + ",".join(str(e) for e in vec) + ")"


def _default_order(spec, requested):
    if requested is not None:
        return requested
    return max(0, min(4, spec.work_order - required_order(0)))


def _print_witness(w, display_order, indent="  "):
    head = ",".join(_fmt_vec(a) for a in w.alphas)
    print(f"{indent}D({head}; r={_fmt_vec(w.r)}) = {render_jet(w.det, display_order)}")
    print(f"{indent}  value at 0: {render_coeff(w.value_at_0)}; "
          f"s-factor: {_fmt_vec(w.s_beta)}; "
          f"remainder at 0: {render_coeff(w.remainder_at_0)}")


def cmd_analyze(args):
    spec = load_manifold(args.file)
    k_max = _default_order(spec, args.max_order)
    frame = build_frame(spec)
    rep = finite_order(spec, k_max, frame=frame)

    weak = None
    weak_error = None
    if spec.gamma is not None:
        checker = weak_check_hypersurface if spec.d == 1 else weak_check_first_codim
        try:
            weak = checker(spec, max(k_max, 1))
        except (GammaConstraintViolated, MissingFactoredForm) as exc:
            weak_error = f"{type(exc).__name__}: {exc}"

    if rep.k0 is not None:
        witnesses = rep.witnesses
        verdict = f"k0 = {rep.k0}"
    else:
        witnesses = tuple(search_multipliers(spec, k_max, args.witness_budget, frame=frame))
        verdict = f"degenerate up to order {k_max}"

    if args.json:
        diagnostics = {
            "verdict": verdict,
            "space_dim": report.exact(rep.space_dim),
            "k_max": report.exact(rep.k_max),
        }
        if weak is not None:
            diagnostics["weak"] = report.weak_doc(weak)
        if weak_error is not None:
            diagnostics["weak_error"] = weak_error
        doc = report.document(report.manifold_echo(spec), rep.ranks, rep.k0,
                              witnesses, diagnostics)
        print(report.dumps(doc))
        return 0

    print(f"file: {spec.source}")
    print(f"manifold: n={spec.n} d={spec.d} (N={rep.space_dim}), work order {spec.work_order}")
    print("ranks of E_k(0): " + "; ".join(f"k={k}: {r}" for k, r in rep.ranks))
    print(verdict)
    if rep.k0 is not None:
        print("witness multiplier:")
        for w in witnesses:
            _print_witness(w, args.display_order)
    elif witnesses:
        shown = witnesses[:6]
        print(f"multiplier candidates with nonzero jet (s-factored, "
              f"budget {args.witness_budget} tuples):")
        for w in shown:
            _print_witness(w, args.display_order)
        if len(witnesses) > len(shown):
            print(f"  ... {len(witnesses) - len(shown)} more within budget (--json lists all)")
    else:
        print(f"no nonzero multiplier found within budget {args.witness_budget}")
    if weak is not None:
        kind = "hypersurface" if weak.kind == "hypersurface" else "first codimension"
        print(f"weak nondegeneracy ({kind}, gamma={','.join(_fmt_vec(g) for g in weak.gamma)}):")
        for e in weak.entries:
            vanish = "vanishing ok" if e.vanishing_ok else f"vanishing fails: {e.first_violation}"
            print(f"  k={e.k}: {vanish}; span rank {e.span_rank}/{weak.cr_dim}")
        if weak.k0 is not None:
            print(f"  weakly {weak.k0}-nondegenerate at 0")
        else:
            print(f"  not weakly nondegenerate up to order {weak.k_max}")
    if weak_error is not None:
        print(f"weak nondegeneracy check: {weak_error}")
    return 0


def _parse_multi_index(text, n):
    parts = [p.strip() for p in text.split(",")]
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise CRJetError(f"bad multi-index {text!r}") from None
    if len(vec) != n or any(e < 0 for e in vec):
        raise CRJetError(f"multi-index {text!r} must have {n} nonnegative entries")
    return vec


def cmd_lie(args):
    spec = load_manifold(args.file)
    frame = build_frame(spec)
    alpha = _parse_multi_index(args.alpha, spec.n)
    row = lie_power(frame, alpha, args.mu)
    if args.json:
        diagnostics = {
            "alpha": report.exponent_vector(alpha),
            "mu": report.exact(args.mu),
            "T": [render_jet(t) for t in row.theta],
            "A": [render_jet(a) for a in row.omega],
        }
        print(report.dumps(report.document(report.manifold_echo(spec),
                                           diagnostics=diagnostics)))
        return 0
    print(f"L^alpha theta^mu for alpha={_fmt_vec(alpha)}, mu={args.mu}:")
    for tau, t in enumerate(row.theta, start=1):
        print(f"  T_{tau} = {render_jet(t, args.display_order)}")
    for j, a in enumerate(row.omega, start=1):
        print(f"  A_{j} = {render_jet(a, args.display_order)}")
    return 0


def cmd_multiplier(args):
    spec = load_manifold(args.file)
    frame = build_frame(spec)
    alphas = [_parse_multi_index(part, spec.n) for part in args.alphas.split(";")]
    r = [int(p) for p in args.r.split(",")]
    det = multiplier_det(frame, alphas, r)
    value = det.eval0()
    sf = s_factor(det) if not det.is_stored_zero() else None
    if args.json:
        diagnostics = {
            "alphas": [report.exponent_vector(a) for a in alphas],
            "r": [report.exact(ri) for ri in r],
            "jet": render_jet(det),
            "value_at_0": report.exact_coeff(value),
            "s_factor": report.exponent_vector(sf.beta) if sf else None,
        }
        print(report.dumps(report.document(report.manifold_echo(spec),
                                           diagnostics=diagnostics)))
        return 0
    head = ",".join(_fmt_vec(a) for a in alphas)
    print(f"D({head}; r={_fmt_vec(r)}) = {render_jet(det, args.display_order)}")
    print(f"value at 0: {render_coeff(value)}")
    if sf is not None:
        print(f"s-factor: {_fmt_vec(sf.beta)} (certified to order {sf.certified_order:g}); "
              f"remainder at 0: {render_coeff(sf.remainder_at_0)}")
    else:
        print("s-factor: undefined (zero jet)")
    return 0


def cmd_map(args):
    map_spec = load_map(args.file)
    src = map_spec.source_manifold
    k_max = _default_order(src, args.max_order)
    rep = map_finite_order(map_spec, k_max)
    verdict = (f"k0 = {rep.k0}" if rep.k0 is not None
               else f"degenerate up to order {rep.k_max}")
    if args.json:
        diagnostics = {
            "verdict": verdict,
            "target_dim": report.exact(rep.target_dim),
            "k_max": report.exact(rep.k_max),
            "rho": list(map_spec.rho_text),
            "H": list(map_spec.components_text),
        }
        print(report.dumps(report.document(report.manifold_echo(src), rep.ranks,
                                           rep.k0, diagnostics=diagnostics)))
        return 0
    print(f"file: {src.source}")
    print(f"map into C^{rep.target_dim} with {map_spec.d_target} target defining functions")
    print("ranks of E_k(0): " + "; ".join(f"k={k}: {r}" for k, r in rep.ranks))
    print(verdict)
    return 0


def _weight_sequence(args):
    if args.family == "gevrey":
        if args.param is None:
            raise CRJetError("--param required for gevrey")
        return WeightSequence.gevrey(args.param)
    if args.family == "logpow":
        if args.param is None:
            raise CRJetError("--param required for logpow")
        return WeightSequence.log_pow(args.param)
    if args.family == "const":
        return WeightSequence.constant_one()
    if args.file is None:
        raise CRJetError("--file required for family=file")
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            values = [float(line.split("#")[0]) for line in fh
                      if line.split("#")[0].strip()]
    except OSError as exc:
        raise CRJetError(f"cannot read {args.file}: {exc}") from None
    except ValueError:
        raise CRJetError(f"{args.file}: expected one log(m_k) per line") from None
    return WeightSequence.explicit(values)


def cmd_weights(args):
    w = _weight_sequence(args)
    K = args.terms
    reg = check_regular(w, max(10, min(K, 200)))
    diag = quasianalytic_diag(w, max(100, K))
    h_grid = log_grid(1e-6, 1.0, 13)
    h_samples = [(t, assoc_weight(w, t)) for t in h_grid]
    recover_grid = log_grid(1e-6, 1.0, 2001)
    recovered = [(k, recover_mk(w, k, recover_grid)) for k in (0, 1, 2)]

    if args.json:
        diagnostics = {
            "family": w.label(),
            "regularity": {
                "checked_range": report.exact(reg.checked_range),
                "M1": reg.m1_ok,
                "M2_sup": report.approx(reg.m2_sup),
                "M2_sup_at": report.exact(reg.m2_sup_at),
                "M3": reg.m3_ok,
                "M3_first_violation": (report.exact(reg.m3_first_violation)
                                       if reg.m3_first_violation is not None else None),
                "M4_nondecreasing": reg.m4_nondecreasing,
                "M4_growing": reg.m4_growing,
                "M4_first": report.approx(reg.m4_first),
                "M4_last": report.approx(reg.m4_last),
            },
            "series": {
                "checked_range": report.exact(diag.checked_range),
                "partial_quarter": report.approx(diag.partial_quarter),
                "partial_half": report.approx(diag.partial_half),
                "partial_full": report.approx(diag.partial_full),
                "increment_ratio": report.approx(diag.increment_ratio),
                "tail_increment": report.approx(diag.tail_increment),
                "closed_form_quasianalytic": diag.closed_form_quasianalytic,
            },
            "associated_weight": [
                {"t": report.approx(t), "h": report.approx(h)} for t, h in h_samples
            ],
            "recovered_mk": [
                {"k": report.exact(k), "value": report.approx(v)} for k, v in recovered
            ],
        }
        print(report.dumps(report.document({"family": w.label(),
                                            "terms": report.exact(K)},
                                           diagnostics=diagnostics)))
        return 0

    print(f"weight sequence: {w.label()}")
    print(f"regularity over k <= {reg.checked_range}:")
    print(f"  M1 (m0 = m1 = 1): {'pass' if reg.m1_ok else 'FAIL'}")
    print(f"  M2 sup (m_k+1/m_k)^(1/k): {reg.m2_sup:.6g} at k={reg.m2_sup_at}")
    m3 = "pass" if reg.m3_ok else f"FAIL at k={reg.m3_first_violation}"
    print(f"  M3 log-convexity: {m3}")
    m4 = "growing" if reg.m4_growing else "NOT growing"
    print(f"  M4 m_k^(1/k) trend: {m4} "
          f"({reg.m4_first:.6g} -> {reg.m4_last:.6g}, "
          f"nondecreasing: {reg.m4_nondecreasing})")
    print(f"series sum m_k-1/(k m_k) over k <= {diag.checked_range}:")
    print(f"  S_K/4 = {diag.partial_quarter:.6f}  S_K/2 = {diag.partial_half:.6f}  "
          f"S_K = {diag.partial_full:.6f}")
    print(f"  increment ratio (S_K - S_K/2)/(S_K/2 - S_K/4) = {diag.increment_ratio:.6f}")
    print(f"  tail increment S_K - S_K/2 = {diag.tail_increment:.6g}")
    if diag.closed_form_quasianalytic is None:
        print("  classification: unknown (explicit sequence; trend only)")
    else:
        word = "quasianalytic" if diag.closed_form_quasianalytic else "non-quasianalytic"
        print(f"  classification (closed form): {word}")
    print("associated weight h(t):")
    for t, h in h_samples:
        print(f"  h({t:.3e}) = {h:.6e}")
    print("recovered m_k = sup h(t)/t^k over the grid:")
    for k, v in recovered:
        print(f"  m_{k} ~ {v:.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
