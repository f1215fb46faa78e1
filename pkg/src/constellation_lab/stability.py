"""Theta-(semi)stability verdicts with witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError, PairingError
from .hilbert import HilbertFunction, ThetaVector, pairing
from .modules import EquivariantModule, enumerate_submodules, generated_in_dminus

STABLE = "STABLE"
STRICTLY_SEMISTABLE = "STRICTLY_SEMISTABLE"
UNSTABLE = "UNSTABLE"
NO_WITNESS_FOUND = "NO_WITNESS_FOUND"

__all__ = [
    "STABLE",
    "STRICTLY_SEMISTABLE",
    "UNSTABLE",
    "NO_WITNESS_FOUND",
    "StabilityVerdict",
    "theta_verdict",
    "module_theta_verdict",
    "generated_in_dminus",
    "hilbert_scheme_mode_check",
    "pick_witness",
]


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a stability test.

    ``witness`` is a sub-Hilbert function (theta tests) or a graded subspace
    (GIT tests) attaining the minimum ``value``. A sampled search never
    reports ``STABLE``; it reports ``NO_WITNESS_FOUND`` together with
    ``sample_size`` instead, and keeps a zero-valued witness if it met one.
    """

    status: str
    witness: object = None
    value: Fraction | None = None
    exact: bool = True
    sample_size: int | None = None

    @property
    def is_stable(self) -> bool:
        return self.status == STABLE

    @property
    def is_semistable(self) -> bool:
        return self.status in (STABLE, STRICTLY_SEMISTABLE)


def pick_witness(scored: Iterable, key) -> tuple:
    """Minimum of ``(value, key(candidate))`` over ``(candidate, value)`` pairs."""
    best = None
    for cand, value in scored:
        k = (value, key(cand))
        if best is None or k < best[0]:
            best = (k, cand, value)
    if best is None:
        return None, None
    return best[1], best[2]


def classify(scored: list, key, exact: bool, sample_size: int | None) -> StabilityVerdict:
    """Turn ``(candidate, value)`` pairs over proper non-zero candidates into a verdict."""
    witness, value = pick_witness(scored, key)
    if witness is None or value > 0:
        if exact:
            return StabilityVerdict(STABLE, None, None, True, sample_size)
        return StabilityVerdict(NO_WITNESS_FOUND, None, None, False, sample_size)
    if value < 0:
        return StabilityVerdict(UNSTABLE, witness, value, exact, sample_size)
    if exact:
        return StabilityVerdict(STRICTLY_SEMISTABLE, witness, value, True, sample_size)
    return StabilityVerdict(NO_WITNESS_FOUND, witness, value, False, sample_size)


def _lex_key(labels: list):
    return lambda hp: tuple(hp[rho] for rho in labels)


def theta_verdict(
    theta: ThetaVector,
    h: HilbertFunction,
    sub_hilberts: Iterable[HilbertFunction],
    exact: bool = True,
    sample_size: int | None = None,
) -> StabilityVerdict:
    """Stability of ``h`` against the given sub-Hilbert functions.

    Raises :class:`PairingError` carrying the exact value when ``<theta, h> != 0``.
    """
    total = pairing(theta, h)
    if total != 0:
        raise PairingError(total)
    subs = [hp for hp in set(sub_hilberts) if not hp.is_zero() and hp != h]
    for hp in subs:
        if not hp <= h:
            raise InputError(f"{hp} is not dominated by {h}")
    labels = sorted(set().union(h.explicit_labels(), *(hp.explicit_labels() for hp in subs)), key=theta.group.sort_key)
    scored = [(hp, pairing(theta, hp)) for hp in subs]
    return classify(scored, _lex_key(labels), exact, sample_size)


def module_theta_verdict(
    theta: ThetaVector,
    m: EquivariantModule,
    dminus_only: bool = False,
    samples: int | None = None,
    seed: int = 0,
) -> StabilityVerdict:
    """:func:`theta_verdict` over the enumerated submodules of ``m``.

    With ``dminus_only`` only submodules generated by their components in
    ``D_-`` and in ``D_0`` are tested. The ``D_0`` seeds matter: a submodule
    sitting inside ``D_0`` has theta value 0 but no ``D_-`` part.
    """
    kwargs = {} if samples is None else {"samples": samples}
    seeds = set(theta.dminus) | {r for r in m.labels() if theta[r] == 0}
    fam = enumerate_submodules(m, dminus_only, seeds, seed=seed, **kwargs)
    return theta_verdict(theta, m.hilbert, fam.hilbert_functions(m.group), fam.exact, fam.sample_size)


def hilbert_scheme_mode_check(theta: ThetaVector, h: HilbertFunction, m: EquivariantModule) -> dict:
    """Compare theta-stability with cyclicity from the invariant line.

    Requires ``h(rho_0) = 1``, ``D_- = {rho_0}`` for the trivial label
    ``rho_0`` and ``theta != 0`` on the rest of ``supp h`` (a sub living in
    ``D_0`` would otherwise make a cyclic module strictly semistable).
    Violations raise :class:`InputError`.
    """
    g = theta.group
    rho0 = g.trivial
    if h[rho0] != 1:
        raise InputError(f"needs h(trivial) = 1, got {h[rho0]}")
    if theta.dminus != {rho0}:
        raise InputError("needs D_- to be exactly the trivial label")
    zeros = [rho for rho in h.support() if rho != rho0 and theta[rho] == 0]
    if zeros:
        raise InputError(f"theta vanishes on {zeros} inside supp h")
    if m.hilbert != h:
        raise InputError("module Hilbert function differs from h")
    verdict = module_theta_verdict(theta, m)
    cyclic = generated_in_dminus(m, [rho0])
    return {
        "theta_status": verdict.status,
        "exact": verdict.exact,
        "stable": verdict.is_stable,
        "cyclic_from_invariant_line": cyclic,
        "agree": (verdict.is_stable == cyclic) if verdict.exact else None,
        "witness": verdict.witness,
        "value": verdict.value,
    }
