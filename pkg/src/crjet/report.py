"""Structured report documents.

Every command emits one JSON document with the fixed top-level fields

    {input, ranks, k0, witnesses, diagnostics}

and every numeric leaf is wrapped as {"provenance": "exact"|"float", "value": v}
so consumers can tell exact rational results from floating-point diagnostics.
Exact non-integer values are rendered as strings in the expression syntax.
"""

from __future__ import annotations

import json

from .exprs import render_coeff, render_jet


def exact(value):
    return {"provenance": "exact", "value": value}


def approx(value):
    return {"provenance": "float", "value": value}


def exact_coeff(c):
    return exact(render_coeff(c))


def exponent_vector(vec):
    return [exact(int(e)) for e in vec]


def manifold_echo(spec):
    doc = {
        "file": spec.source,
        "n": exact(spec.n),
        "d": exact(spec.d),
        "order": exact(spec.work_order),
        "phi": list(spec.phi_text),
    }
    if spec.gamma is not None:
        doc["gamma"] = [exponent_vector(g) for g in spec.gamma]
    return doc


def witness_doc(w):
    return {
        "alphas": [exponent_vector(a) for a in w.alphas],
        "r": [exact(int(ri)) for ri in w.r],
        "value_at_0": exact_coeff(w.value_at_0),
        "s_factor": exponent_vector(w.s_beta),
        "remainder_at_0": exact_coeff(w.remainder_at_0),
        "jet": render_jet(w.det),
    }


def ranks_doc(ranks):
    return [{"k": exact(k), "rank": exact(rank)} for k, rank in ranks]


def weak_doc(report):
    return {
        "kind": report.kind,
        "gamma": [exponent_vector(g) for g in report.gamma],
        "k0": exact(report.k0) if report.k0 is not None else None,
        "orders": [
            {
                "k": exact(e.k),
                "vanishing_ok": e.vanishing_ok,
                "first_violation": e.first_violation,
                "span_rank": exact(e.span_rank),
            }
            for e in report.entries
        ],
        "convention": report.convention,
    }


def document(input_echo, ranks=(), k0=None, witnesses=(), diagnostics=None):
    return {
        "input": input_echo,
        "ranks": ranks_doc(ranks),
        "k0": exact(k0) if k0 is not None else None,
        "witnesses": [witness_doc(w) for w in witnesses],
        "diagnostics": diagnostics if diagnostics is not None else {},
    }


def dumps(doc):
    return json.dumps(doc, indent=2)
