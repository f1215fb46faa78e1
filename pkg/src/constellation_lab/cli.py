"""``constellation-lab`` command line.

Every subcommand reads one problem file and prints one JSON document.
Exit codes: 0 on a finished computation (whatever the verdict), 2 on bad
input, 3 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import report as rp
from .approximation import (
    canonical_window,
    choose_window,
    error_between_windows,
    verify_limit,
)
from .constellations import DEFAULT_CAP, enumerate_monomial_constellations, record_basis_names, staircases_with_hilbert
from .errors import InputError, InternalCheckError, PairingError
from .geometry import hilbert_chow_point, invariant_monomial_generators
from .git import derive_parameters, git_verdict, graded_subspaces, mu_one_step, theta_tilde_verdict
from .hilbert import pairing
from .modules import QuotientPresentation, enumerate_submodules, generated_in_dminus
from .problem import ProblemFile, frames_for, parse_problem, parse_rational
from .stability import STABLE, module_theta_verdict, theta_verdict

SUBCOMMANDS = ("check", "git-check", "derive-params", "approx", "choose-window", "hilbert-chow", "enumerate", "selftest")
DEFAULT_SAMPLES = 64


def _need(p: ProblemFile, *names: str) -> None:
    missing = [n for n in names if getattr(p, n) is None]
    if missing:
        raise InputError("this task needs the section(s) " + ", ".join(f"[{n}]" for n in missing))


def _window(p: ProblemFile, args):
    """Window from ``--window N``, then ``[params] window``, else ``None`` (the default)."""
    radius = args.window if args.window is not None else p.window_box
    if radius is not None:
        if radius < 0:
            raise InputError("--window must be non-negative")
        return canonical_window(p.theta, p.hilbert_function(), radius)
    return p.window


def _samples(p: ProblemFile, args) -> int:
    return args.samples if args.samples is not None else p.task.get("samples", DEFAULT_SAMPLES)


def _seed(p: ProblemFile, args) -> int:
    return args.seed if args.seed is not None else p.task.get("seed", 0)


def run_check(p: ProblemFile, args) -> dict:
    _need(p, "theta")
    g = p.group
    if p.module is not None:
        m = p.module
        v = module_theta_verdict(p.theta, m, samples=_samples(p, args), seed=_seed(p, args))
        return {
            "hilbert": rp.hilbert(g, m.hilbert),
            "verdict": rp.verdict(g, v),
            "generated_in_dminus": generated_in_dminus(m, p.theta.dminus),
            "multiplicity_free": m.multiplicity_free,
        }
    h = p.hilbert_function()
    exact = bool(p.task.get("subs_exhaustive", False))
    v = theta_verdict(p.theta, h, p.subs, exact=exact, sample_size=None if exact else len(p.subs))
    return {"hilbert": rp.hilbert(g, h), "verdict": rp.verdict(g, v), "subs_given": len(p.subs)}


def run_derive_params(p: ProblemFile, args) -> dict:
    _need(p, "theta")
    h = p.hilbert_function()
    params = derive_parameters(p.theta, h, _window(p, args), p.kappa_minus)
    return {
        "hilbert": rp.hilbert(p.group, h),
        "params": rp.params(params),
        "tail_model": not (h.is_finite and p.theta.is_finite),
    }


def run_git_check(p: ProblemFile, args) -> dict:
    _need(p, "theta", "module")
    g, m = p.group, p.module
    params = derive_parameters(p.theta, m.hilbert, _window(p, args), p.kappa_minus)
    pres = QuotientPresentation(m, params.dminus, dict(frames_for(p, params.dminus)))
    samples, seed = _samples(p, args), _seed(p, args)
    gv = git_verdict(pres, params, samples, seed)
    fam = enumerate_submodules(m, seed=seed, samples=samples)
    tv = theta_tilde_verdict(params, fam.hilbert_functions(g), fam.exact, fam.sample_size)
    weights = []
    if gv.exact:
        subs, _, _ = graded_subspaces(pres, samples, seed)
        weights = [{"subspace": rp.subspace(g, s), "mu": rp.rational(mu_one_step(pres, params, s))} for s in subs]
    return {
        "params": rp.params(params),
        "weights": weights,
        "git": rp.verdict(g, gv),
        "theta_tilde": rp.verdict(g, tv),
        "agree": gv.status == tv.status,
    }


def run_approx(p: ProblemFile, args) -> dict:
    _need(p, "theta", "hprime")
    g, theta, h, hp = p.group, p.theta, p.hilbert_function(), p.hprime
    if args.window is not None:
        radii = list(range(1, args.window + 1))
    elif "windows" in p.task:
        lo, hi = p.task["windows"]
        radii = list(range(lo, hi + 1))
    else:
        raise InputError("approx needs --window N or [task] windows = box a..b")
    windows = []
    for r in radii:
        w = canonical_window(theta, h, r)
        if not windows or set(w) != set(windows[-1]):
            windows.append(w)
    bound = args.bound if args.bound is not None else p.task.get("bound", Fraction(1, 1000))
    limit = verify_limit(theta, h, hp, windows, bound)
    steps = [
        {"from": rp.labels(g, a), "to": rp.labels(g, b), "difference": rp.rational(error_between_windows(theta, h, hp, a, b))}
        for a, b in zip(windows, windows[1:])
    ]
    return {
        "theta_of_hprime": rp.rational(pairing(theta, hp)),
        "limit": rp.limit(g, limit),
        "window_steps": steps,
        "tail_model": True,
    }


def run_choose_window(p: ProblemFile, args) -> dict:
    _need(p, "theta")
    g, h = p.group, p.hilbert_function()
    cands = list(p.candidates)
    if not cands and p.module is not None:
        # all proper non-zero submodules; those are the ones stability cares about
        fam = enumerate_submodules(p.module, seed=_seed(p, args), samples=_samples(p, args))
        cands = [hp for hp in fam.hilbert_functions(g) if not hp.is_zero() and hp != h]
    choice = choose_window(p.theta, h, cands, p.kappa_minus)
    return {"choice": rp.window_choice(g, choice), "candidates": len(set(cands)), "tail_model": not h.is_finite}


def run_hilbert_chow(p: ProblemFile, args) -> dict:
    _need(p, "action", "module")
    bound = p.task.get("degree_bound")
    gens = invariant_monomial_generators(p.action, bound)
    pt = hilbert_chow_point(p.module, gens)
    return {"generators": rp.generators(gens), "point": rp.point(pt)}


def run_enumerate(p: ProblemFile, args) -> dict:
    _need(p, "action", "theta")
    g, h = p.group, p.hilbert_function()
    cap = args.cap if args.cap is not None else p.task.get("cap", DEFAULT_CAP)
    records = enumerate_monomial_constellations(p.action, h, p.theta, cap)
    rows = []
    for rec in records:
        rows.append(
            {
                "module": rp.module(rec.module),
                "theta": rp.verdict(g, rec.theta),
                "git": rp.verdict(g, rec.git) if rec.git is not None else "not generated in D_-",
                "basis": record_basis_names(p.action, rec.basis_monomials) if rec.basis_monomials else None,
            }
        )
    stable = sorted(
        (r["basis"] for r in rows if r["theta"]["status"] == STABLE and r["basis"] is not None),
    )
    oracle = staircases_with_hilbert(p.action, h)
    return {
        "hilbert": rp.hilbert(g, h),
        "patterns": len(rows),
        "constellations": rows,
        "stable_count": sum(r["theta"]["status"] == STABLE for r in rows),
        "stable_bases": stable,
        "monomial_ideal_count": len(oracle),
        "cap": cap,
    }


def run_selftest(p, args) -> dict:
    from .selftest import run_all

    return run_all(seed=args.seed or 0)


RUNNERS = {
    "check": run_check,
    "git-check": run_git_check,
    "derive-params": run_derive_params,
    "approx": run_approx,
    "choose-window": run_choose_window,
    "hilbert-chow": run_hilbert_chow,
    "enumerate": run_enumerate,
    "selftest": run_selftest,
}


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="constellation-lab", description="Exact stability checks for equivariant modules.")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--input", help="problem file (not needed for selftest)")
    ap.add_argument("--window", type=int, help="use the canonical window of this radius")
    ap.add_argument("--seed", type=int, help="seed for sampled searches (default 0)")
    ap.add_argument("--bound", type=_rational_arg, help="target error bound p/q for approx")
    ap.add_argument("--cap", type=int, help="pattern cap for enumerate")
    ap.add_argument("--samples", type=int, help="random subspaces per sampled search")
    ap.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-identical output)")
    return ap


def execute(args) -> dict:
    """Run one subcommand and return the finished report (raises on failure)."""
    start = time.perf_counter()
    problem = None
    if args.subcommand != "selftest":
        if not args.input:
            raise InputError(f"{args.subcommand} needs --input FILE")
        problem = parse_problem(args.input)
    body = RUNNERS[args.subcommand](problem, args)
    report = {
        "task": {
            "subcommand": args.subcommand,
            "input": args.input,
            "group": problem.group.describe() if problem else None,
            "seed": args.seed if args.seed is not None else 0,
            "window": args.window,
            "bound": None if args.bound is None else rp.rational(args.bound),
            "cap": args.cap,
        },
        "result": body,
    }
    if args.timing:
        report["timing_seconds"] = f"{time.perf_counter() - start:.6f}"
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = execute(args)
        text = rp.dumps(report)
    except PairingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"pairing value: {rp.rational(exc.value)}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # an unexpected failure is an internal error, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
