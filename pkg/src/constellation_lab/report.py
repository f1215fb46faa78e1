"""JSON-ready conversion of library objects; rationals become exact strings."""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg as la
from .approximation import LimitReport, WindowChoice
from .geometry import InvariantGenerators, QuotientPoint
from .git import GitParameters
from .groups import GroupSpec
from .hilbert import ConstantTail, GeometricTail, HilbertFunction, ThetaVector, ZeroTail
from .modules import EquivariantModule, GradedSubspace
from .problem import format_label, format_matrix
from .stability import StabilityVerdict


def rational(x) -> str:
    return la.fmt(Fraction(x))


def labels(g: GroupSpec, rhos) -> list:
    return [format_label(g, r) for r in sorted(rhos, key=g.sort_key)]


def tail(t) -> dict:
    if isinstance(t, ZeroTail):
        return {"kind": "zero"}
    if isinstance(t, GeometricTail):
        return {"kind": "geometric", "rays": {k: {"base": rational(b), "coeff": rational(c)} for k, (b, c) in t.rays().items()}}
    if isinstance(t, ConstantTail):
        return {"kind": "constant", "rays": {k: v for k, v in t.rays().items()}}
    raise TypeError(f"unknown tail {t!r}")


def hilbert(g: GroupSpec, h: HilbertFunction) -> dict:
    return {"window": {format_label(g, r): v for r, v in h.values}, "tail": tail(h.tail)}


def theta(g: GroupSpec, t: ThetaVector) -> dict:
    return {"window": {format_label(g, r): rational(v) for r, v in t.values}, "tail": tail(t.tail)}


def subspace(g: GroupSpec, s: GradedSubspace) -> dict:
    return {format_label(g, r): format_matrix(s.rows(r)) for r in s.labels()}


def module(m: EquivariantModule) -> dict:
    g = m.group
    return {
        "dims": {format_label(g, r): n for r, n in m.dims.items()},
        "arrows": [
            {"var": var, "from": format_label(g, src), "to": format_label(g, m.target(var, src)), "matrix": format_matrix(mat)}
            for (var, src), mat in m.arrows.items()
        ],
    }


def witness(g: GroupSpec, w):
    if w is None:
        return None
    if isinstance(w, HilbertFunction):
        return hilbert(g, w)
    if isinstance(w, GradedSubspace):
        return subspace(g, w)
    raise TypeError(f"unknown witness {w!r}")


def verdict(g: GroupSpec, v: StabilityVerdict) -> dict:
    return {
        "status": v.status,
        "witness": witness(g, v.witness),
        "value": None if v.value is None else rational(v.value),
        "exact": v.exact,
        "sample_size": v.sample_size,
    }


def params(p: GitParameters) -> dict:
    g = p.group
    return {
        "window": labels(g, p.window),
        "dminus": labels(g, p.dminus),
        "kappa": {format_label(g, r): rational(v) for r, v in sorted(p.kappa.items(), key=lambda kv: g.sort_key(kv[0]))},
        "chi": {format_label(g, r): rational(v) for r, v in sorted(p.chi.items(), key=lambda kv: g.sort_key(kv[0]))},
        "dim_a": p.dim_a,
        "kappa_f": rational(p.kappa_f),
        "s_d": rational(p.s_d),
        "d": p.d,
        "integer_scale": p.integer_scale,
    }


def limit(g: GroupSpec, r: LimitReport) -> dict:
    return {
        "rows": [
            {"window": labels(g, row.window), "error": rational(row.error), "majorant": rational(row.majorant)}
            for row in r.rows
        ],
        "bound": rational(r.bound),
        "passed": r.passed,
        "majorant_monotone": r.majorant_monotone,
    }


def window_choice(g: GroupSpec, c: WindowChoice) -> dict:
    return {
        "window": labels(g, c.window),
        "radius": c.radius,
        "majorant": rational(c.majorant),
        "threshold": None if c.threshold is None else rational(c.threshold),
        "certificate": [
            {"hprime": hilbert(g, hp), "theta": rational(v), "theta_tilde": rational(tt)} for hp, v, tt in c.certificate
        ],
        "params": params(c.params),
    }


def generators(gens: InvariantGenerators) -> dict:
    return {"monomials": gens.labels(), "degree_bound": gens.degree_bound}


def point(pt: QuotientPoint) -> dict:
    return {name: rational(v) for name, v in zip(pt.generators.labels(), pt.values)}


def dumps(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
