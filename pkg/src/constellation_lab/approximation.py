"""Finite windows ``D`` and how far the window function strays from theta.

Each error is computed twice: once from a closed formula summed over the
labels outside (or between) the windows, once as a plain difference of
the two stability functions. A disagreement raises
:class:`InternalCheckError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, WindowError, check
from .git import GitParameters, derive_parameters, theta_tilde
from .groups import Label
from .linalg import frac
from .hilbert import (
    HilbertFunction,
    ThetaVector,
    outside_sum,
    pairing,
    ray_position,
    ray_start,
)

MAX_RADIUS = 256


def _params(theta, h, D, kappa_minus=None) -> GitParameters:
    return derive_parameters(theta, h, D, kappa_minus)


def _ratio(hp: HilbertFunction, h: HilbertFunction, r: Label) -> Fraction:
    if h[r] == 0:
        raise WindowError(f"h vanishes at {r}; h'/h is undefined")
    return Fraction(hp[r], h[r])


def _average(params: GitParameters, h: HilbertFunction, hp: HilbertFunction) -> Fraction:
    """``(1/d) sum over D \\ D_- of h'(s)/h(s)``."""
    return sum((_ratio(hp, h, s) for s in params.positive_part), Fraction(0)) / params.d


def _check_sub(h: HilbertFunction, hp: HilbertFunction) -> None:
    if not hp <= h:
        raise InputError(f"{hp} is not dominated by {h}")


def theta_tilde_at(theta, h, hp, D, kappa_minus=None) -> Fraction:
    return theta_tilde(_params(theta, h, D, kappa_minus), h, hp)


def error_between_windows(
    theta: ThetaVector, h: HilbertFunction, hp: HilbertFunction, D: Iterable[Label], D_big: Iterable[Label]
) -> Fraction:
    """``theta~_{D~}(h') - theta~_D(h')`` by the closed formula over ``D~ \\ D``."""
    _check_sub(h, hp)
    D, D_big = set(D), set(D_big)
    if not D <= D_big:
        raise WindowError("the first window must be contained in the second")
    small = _params(theta, h, D)
    big = _params(theta, h, D_big)
    avg = _average(small, h, hp)
    total = Fraction(0)
    for t in D_big - D:
        total += (theta[t] * h[t] + big.s_d / big.d) * (_ratio(hp, h, t) - avg)
    direct = theta_tilde(big, h, hp) - theta_tilde(small, h, hp)
    check(total == direct, f"window-difference formula {total} != direct difference {direct}")
    return total


def error_to_theta(theta: ThetaVector, h: HilbertFunction, hp: HilbertFunction, D: Iterable[Label]) -> Fraction:
    """``theta(h') - theta~_D(h')`` summed term by term outside ``D``.

    Labels with ``h = 0`` contribute nothing (then ``h' = 0`` as well).
    """
    _check_sub(h, hp)
    g = theta.group
    D = set(D)
    params = _params(theta, h, D)
    avg = _average(params, h, hp)
    explicit = set(theta.window) | h.explicit_labels() | hp.explicit_labels() | D
    total = Fraction(0)
    for t in explicit - D:
        if h[t]:
            total += theta[t] * h[t] * (Fraction(hp[t], h[t]) - avg)
    h_rays, hp_rays = h.tail.rays(), hp.tail.rays()
    for key, (beta, coeff) in theta.tail.rays().items():
        k = h_rays.get(key, 0)
        if not k:
            continue
        series = beta ** ray_start(g) / (1 - beta)
        for t in explicit:
            pos = ray_position(g, t)
            if pos is not None and pos[0] == key:
                series -= beta ** pos[1]
        total += coeff * k * (Fraction(hp_rays.get(key, 0), k) - avg) * series
    direct = pairing(theta, hp) - theta_tilde(params, h, hp)
    check(total == direct, f"error formula {total} != theta - theta~ = {direct}")
    return total


def majorant(theta: ThetaVector, h: HilbertFunction, D: Iterable[Label]) -> Fraction:
    """``sum over tau not in D of |theta_tau| h(tau)``, which bounds ``|theta - theta~_D|``."""
    return outside_sum(theta, h, D, absolute=True)


# --- windows ----------------------------------------------------------------------


def canonical_window(theta: ThetaVector, h: HilbertFunction, radius: int) -> list:
    """``D_-`` plus the labels of the radius box lying in ``D_+`` with ``h > 0``."""
    g = theta.group
    part = theta.sign_partition()
    box = [r for r in g.box(radius) if part.in_dplus(g, r) and h[r] > 0]
    return sorted(set(part.dminus) | set(box), key=g.sort_key)


def check_window_sequence(theta: ThetaVector, windows: Sequence) -> list:
    if not windows:
        raise WindowError("window sequence is empty")
    out = [set(w) for w in windows]
    dminus = theta.dminus
    for i, w in enumerate(out):
        if not dminus <= w:
            raise WindowError(f"window {i} misses part of D_-")
        if i and not out[i - 1] < w:
            raise WindowError(f"window {i} does not strictly contain window {i - 1}")
    return out


@dataclass(frozen=True)
class LimitRow:
    window: tuple
    error: Fraction
    majorant: Fraction


@dataclass(frozen=True)
class LimitReport:
    rows: tuple
    bound: Fraction
    passed: bool
    majorant_monotone: bool


def verify_limit(
    theta: ThetaVector, h: HilbertFunction, hp: HilbertFunction, windows: Sequence, bound
) -> LimitReport:
    """Tabulate ``|theta(h') - theta~_{D_i}(h')|`` along an increasing sequence of windows."""
    bound = frac(bound)
    g = theta.group
    rows = []
    for w in check_window_sequence(theta, windows):
        err = abs(error_to_theta(theta, h, hp, w))
        maj = majorant(theta, h, w)
        check(err <= maj, f"error {err} exceeds the tail majorant {maj}")
        rows.append(LimitRow(tuple(sorted(w, key=g.sort_key)), err, maj))
    monotone = all(a.majorant >= b.majorant for a, b in zip(rows, rows[1:]))
    return LimitReport(tuple(rows), bound, rows[-1].error < bound and monotone, monotone)


@dataclass(frozen=True)
class WindowChoice:
    """A sufficient window and the values certifying it.

    ``certificate`` lists ``(h', theta(h'), theta~_D(h'))`` per candidate.
    Only the supplied candidates are covered.
    """

    window: tuple
    radius: int
    majorant: Fraction
    threshold: Fraction | None
    certificate: tuple
    params: GitParameters


def choose_window(
    theta: ThetaVector,
    h: HilbertFunction,
    candidates: Iterable[HilbertFunction],
    kappa_minus: Mapping | None = None,
    max_radius: int = MAX_RADIUS,
) -> WindowChoice:
    """Smallest canonical window whose tail majorant is below every ``theta(h')``.

    Then ``theta~_{D'}(h') > 0`` for every candidate and every larger window ``D'``.
    """
    cands = sorted(set(candidates), key=HilbertFunction.sort_key)
    values = []
    for hp in cands:
        _check_sub(h, hp)
        v = pairing(theta, hp)
        if v <= 0:
            raise InputError(f"candidate {hp} has theta value {v} <= 0")
        values.append(v)
    threshold = min(values) if values else None
    seen = None
    for radius in range(max_radius + 1):
        D = canonical_window(theta, h, radius)
        if D == seen:
            continue
        seen = D
        if len(D) == len(theta.dminus):
            continue
        maj = majorant(theta, h, D)
        if threshold is not None and not maj < threshold:
            continue
        params = _params(theta, h, D, kappa_minus)
        cert = []
        for hp, v in zip(cands, values):
            tt = theta_tilde(params, h, hp)
            check(tt > 0, f"window {D} gives theta~({hp}) = {tt} <= 0")
            cert.append((hp, v, tt))
        return WindowChoice(tuple(D), radius, maj, threshold, tuple(cert), params)
    raise WindowError(f"no canonical window up to radius {max_radius} is sufficient")
