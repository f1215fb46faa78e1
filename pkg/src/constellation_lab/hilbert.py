"""Hilbert functions, stability vectors and their exact pairing.

Both kinds of data are a finite window of explicit values plus a tail model
for the labels outside the window. Tails live on *rays*: the rank-one torus
has the rays ``+`` (n >= 1) and ``-`` (n <= -1), SL2 has the single ray
``+`` (n >= 0). Along a ray a stability vector may decay geometrically
(``c * beta**|n|``) and a Hilbert function may be eventually constant, so
every series that appears is a finite sum plus geometric series, i.e. an
exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import TailError, WindowError
from .groups import GroupSpec, Label
from .linalg import frac

# --- rays ------------------------------------------------------------------


def ray_keys(g: GroupSpec) -> tuple:
    if g.kind == "sl2":
        return ("+",)
    if g.moduli == (0,):
        return ("+", "-")
    return ()


def ray_position(g: GroupSpec, rho: Label):
    """``(ray, distance)`` of a label, or ``None`` when it lies on no ray."""
    if g.kind == "sl2":
        return ("+", rho)
    if g.moduli == (0,):
        n = rho[0]
        if n > 0:
            return ("+", n)
        if n < 0:
            return ("-", -n)
    return None


def ray_start(g: GroupSpec) -> int:
    return 0 if g.kind == "sl2" else 1


def ray_label(g: GroupSpec, key: str, distance: int) -> Label:
    if g.kind == "sl2":
        return distance
    return (distance if key == "+" else -distance,)


def _geometric_series(beta: Fraction, start: int) -> Fraction:
    return beta**start / (1 - beta)


# --- tails -----------------------------------------------------------------


@dataclass(frozen=True)
class ZeroTail:
    def value(self, g: GroupSpec, rho: Label):
        return 0

    def rays(self) -> dict:
        return {}


@dataclass(frozen=True)
class GeometricTail:
    """``theta(n) = coeff * base**distance`` along each listed ray."""

    per_ray: tuple = ()

    def __post_init__(self):
        items = self.per_ray.items() if isinstance(self.per_ray, Mapping) else self.per_ray
        clean = []
        for key, (base, coeff) in sorted(items):
            base, coeff = frac(base), frac(coeff)
            if key not in ("+", "-"):
                raise TailError(f"unknown ray {key!r}")
            if not 0 < base < 1:
                raise TailError(f"geometric base must lie in (0, 1), got {base}")
            if coeff <= 0:
                raise TailError(f"geometric tail coefficients must be positive, got {coeff}")
            clean.append((key, (base, coeff)))
        object.__setattr__(self, "per_ray", tuple(clean))

    def rays(self) -> dict:
        return dict(self.per_ray)

    def value(self, g: GroupSpec, rho: Label) -> Fraction:
        pos = ray_position(g, rho)
        if pos is None or pos[0] not in self.rays():
            return Fraction(0)
        base, coeff = self.rays()[pos[0]]
        return coeff * base ** pos[1]


@dataclass(frozen=True)
class ConstantTail:
    """``h(n) = value`` for every label on the ray outside the window."""

    per_ray: tuple = ()

    def __post_init__(self):
        items = self.per_ray.items() if isinstance(self.per_ray, Mapping) else self.per_ray
        clean = []
        for key, value in sorted(items):
            if key not in ("+", "-"):
                raise TailError(f"unknown ray {key!r}")
            if int(value) != value or value < 0:
                raise TailError(f"constant tails take non-negative integers, got {value!r}")
            if value:
                clean.append((key, int(value)))
        object.__setattr__(self, "per_ray", tuple(clean))

    def rays(self) -> dict:
        return dict(self.per_ray)

    def value(self, g: GroupSpec, rho: Label) -> int:
        pos = ray_position(g, rho)
        if pos is None:
            return 0
        return self.rays().get(pos[0], 0)


def _check_rays(g: GroupSpec, tail) -> None:
    allowed = ray_keys(g)
    for key in tail.rays():
        if key not in allowed:
            raise TailError(f"{g.describe()} has no ray {key!r}; allowed rays: {allowed}")


# --- Hilbert functions -------------------------------------------------------


@dataclass(frozen=True)
class HilbertFunction:
    """Multiplicities ``h: Irr G -> N``.

    ``values`` keeps only the window entries that differ from the tail, so
    equal functions compare (and hash) equal regardless of how the window
    was written down.
    """

    group: GroupSpec
    values: tuple = ()
    tail: object = field(default_factory=ZeroTail)

    def __post_init__(self):
        if isinstance(self.tail, GeometricTail):
            raise TailError("Hilbert functions take a zero or constant tail, not a geometric one")
        if not isinstance(self.tail, (ZeroTail, ConstantTail)):
            raise TailError(f"unsupported tail {self.tail!r}")
        _check_rays(self.group, self.tail)
        items = self.values.items() if isinstance(self.values, Mapping) else self.values
        clean = {}
        for rho, v in items:
            rho = self.group.validate(rho)
            if int(v) != v or v < 0:
                raise WindowError(f"Hilbert function values are non-negative integers, got h({rho}) = {v}")
            if int(v) != self.tail.value(self.group, rho):
                clean[rho] = int(v)
        object.__setattr__(self, "values", tuple(sorted(clean.items(), key=lambda kv: self.group.sort_key(kv[0]))))

    @classmethod
    def from_values(cls, g: GroupSpec, values: Iterable[int]) -> "HilbertFunction":
        """Values listed in the canonical label order of a finite group."""
        values = list(values)
        labels = g.irreps()
        if len(values) != len(labels):
            raise WindowError(f"{g.describe()} has {len(labels)} irreps, got {len(values)} values")
        return cls(g, dict(zip(labels, values)))

    @classmethod
    def zero(cls, g: GroupSpec) -> "HilbertFunction":
        return cls(g, {})

    @property
    def window(self) -> dict:
        return dict(self.values)

    def __getitem__(self, rho: Label) -> int:
        rho = self.group.validate(rho)
        w = self.window
        return w[rho] if rho in w else self.tail.value(self.group, rho)

    @property
    def is_finite(self) -> bool:
        return not self.tail.rays()

    def support(self) -> list:
        if not self.is_finite:
            raise TailError("infinite support")
        return [rho for rho, v in self.values if v]

    def total(self) -> int:
        if not self.is_finite:
            raise TailError("infinite total dimension")
        return sum(v for _, v in self.values)

    def is_zero(self) -> bool:
        return not self.values and self.is_finite

    def explicit_labels(self) -> set:
        return set(self.window)

    def as_tuple(self, labels: Iterable[Label]) -> tuple:
        return tuple(self[rho] for rho in labels)

    def __le__(self, other: "HilbertFunction") -> bool:
        for key, k in self.tail.rays().items():
            if other.tail.rays().get(key, 0) < k:
                return False
        labels = self.explicit_labels() | other.explicit_labels()
        return all(self[rho] <= other[rho] for rho in labels)

    def __add__(self, other: "HilbertFunction") -> "HilbertFunction":
        rays = dict(self.tail.rays())
        for key, k in other.tail.rays().items():
            rays[key] = rays.get(key, 0) + k
        labels = self.explicit_labels() | other.explicit_labels()
        tail = ConstantTail(rays) if rays else ZeroTail()
        return HilbertFunction(self.group, {rho: self[rho] + other[rho] for rho in labels}, tail)

    def __sub__(self, other: "HilbertFunction") -> "HilbertFunction":
        rays = dict(self.tail.rays())
        for key, k in other.tail.rays().items():
            rays[key] = rays.get(key, 0) - k
            if rays[key] < 0:
                raise WindowError("difference of Hilbert functions is negative on a tail")
        labels = self.explicit_labels() | other.explicit_labels()
        diff = {rho: self[rho] - other[rho] for rho in labels}
        if any(v < 0 for v in diff.values()):
            raise WindowError("difference of Hilbert functions is negative")
        rays = {k: v for k, v in rays.items() if v}
        return HilbertFunction(self.group, diff, ConstantTail(rays) if rays else ZeroTail())

    def sort_key(self):
        """Lexicographic key in sorted label order (used for witness tie-breaks)."""
        return (self.values, tuple(sorted(self.tail.rays().items())))

    def __repr__(self):
        body = ", ".join(f"{rho}: {v}" for rho, v in self.values)
        tail = "" if self.is_finite else f", tail={dict(self.tail.rays())}"
        return f"HilbertFunction({{{body}}}{tail})"


# --- stability vectors ------------------------------------------------------


@dataclass(frozen=True)
class SignPartition:
    dminus: frozenset
    dzero: frozenset
    dplus_window: frozenset
    dplus_rays: tuple

    def in_dplus(self, g: GroupSpec, rho: Label) -> bool:
        if rho in self.dplus_window:
            return True
        if rho in self.dminus or rho in self.dzero:
            return False
        pos = ray_position(g, rho)
        return pos is not None and pos[0] in self.dplus_rays


@dataclass(frozen=True)
class ThetaVector:
    """Stability parameters ``theta: Irr G -> Q``.

    Unlike :class:`HilbertFunction` the window is kept verbatim: zero entries
    inside it are meaningful (they make up the explicit part of ``D_0``).
    Negative entries must sit inside the window.
    """

    group: GroupSpec
    values: tuple = ()
    tail: object = field(default_factory=ZeroTail)

    def __post_init__(self):
        if isinstance(self.tail, ConstantTail):
            raise TailError("constant tails are only allowed for Hilbert functions")
        if not isinstance(self.tail, (ZeroTail, GeometricTail)):
            raise TailError(f"unsupported tail {self.tail!r}")
        _check_rays(self.group, self.tail)
        items = self.values.items() if isinstance(self.values, Mapping) else self.values
        clean = {}
        for rho, v in items:
            rho = self.group.validate(rho)
            if rho in clean:
                raise WindowError(f"theta given twice at {rho}")
            clean[rho] = frac(v)
        object.__setattr__(self, "values", tuple(sorted(clean.items(), key=lambda kv: self.group.sort_key(kv[0]))))

    @classmethod
    def from_values(cls, g: GroupSpec, values: Iterable) -> "ThetaVector":
        values = list(values)
        labels = g.irreps()
        if len(values) != len(labels):
            raise WindowError(f"{g.describe()} has {len(labels)} irreps, got {len(values)} values")
        return cls(g, dict(zip(labels, values)))

    @property
    def window(self) -> dict:
        return dict(self.values)

    def __getitem__(self, rho: Label) -> Fraction:
        rho = self.group.validate(rho)
        w = self.window
        return w[rho] if rho in w else Fraction(self.tail.value(self.group, rho))

    @property
    def is_finite(self) -> bool:
        return not self.tail.rays()

    def support(self) -> list:
        if not self.is_finite:
            raise TailError("infinite support")
        return [rho for rho, v in self.values if v != 0]

    @property
    def dminus(self) -> frozenset:
        return frozenset(rho for rho, v in self.values if v < 0)

    def sign_partition(self) -> SignPartition:
        return sign_partition(self)


def sign_partition(theta: ThetaVector) -> SignPartition:
    w = theta.window
    return SignPartition(
        dminus=frozenset(r for r, v in w.items() if v < 0),
        dzero=frozenset(r for r, v in w.items() if v == 0),
        dplus_window=frozenset(r for r, v in w.items() if v > 0),
        dplus_rays=tuple(sorted(theta.tail.rays())),
    )


# --- pairing -----------------------------------------------------------------


def _require_pairable(theta, h) -> None:
    if not isinstance(theta, ThetaVector) or not isinstance(h, HilbertFunction):
        raise TailError("pairing takes a ThetaVector and a HilbertFunction (two constant tails diverge)")
    if theta.group != h.group:
        raise TailError("theta and h live on different groups")


def outside_sum(theta: ThetaVector, h: HilbertFunction, D: Iterable[Label] = (), absolute: bool = False) -> Fraction:
    """Exact ``sum over tau not in D of theta_tau * h(tau)`` (or with ``|theta_tau|``)."""
    _require_pairable(theta, h)
    g = theta.group
    D = {g.validate(r) for r in D}
    explicit = set(theta.window) | h.explicit_labels() | D
    total = Fraction(0)
    for rho in explicit - D:
        t = theta[rho]
        total += (abs(t) if absolute else t) * h[rho]
    geo = theta.tail.rays()
    const = h.tail.rays()
    start = ray_start(g)
    for key, (beta, coeff) in geo.items():
        k = const.get(key, 0)
        if not k:
            continue
        series = _geometric_series(beta, start)
        for rho in explicit:
            pos = ray_position(g, rho)
            if pos is not None and pos[0] == key:
                series -= beta ** pos[1]
        total += coeff * k * series
    return total


def pairing(theta: ThetaVector, h: HilbertFunction) -> Fraction:
    """``<theta, h> = sum_rho theta_rho h(rho)``, exactly."""
    return outside_sum(theta, h, ())


def restrict_pairing(theta: ThetaVector, h: HilbertFunction, D: Iterable[Label]) -> tuple:
    """Split ``<theta, h>`` into the part on ``D`` and the part outside ``D``."""
    g = theta.group
    D = {g.validate(r) for r in D}
    missing = theta.dminus - D
    if missing:
        raise WindowError(f"window misses labels of D_-: {sorted(missing, key=g.sort_key)}")
    inside = sum((theta[r] * h[r] for r in D), Fraction(0))
    return inside, outside_sum(theta, h, D)
