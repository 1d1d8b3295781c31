"""Bicomplex Fourier transform pair.

Forward: ``F(w) = integral exp(i1*w*t) f(t) dt`` for a real signal ``f``
bounded by ``c1*exp(-alpha*t)`` (t >= 0) and ``c2*exp(beta*t)`` (t <= 0).
In idempotent coordinates ``w = w1*e1 + w2*e2`` the transform splits into
two ordinary complex transforms, each converging for ``-alpha < Im < beta``.

Inverse: for a rational spectrum ``F = F1*e1 + F2*e2`` each component is
inverted by residues of ``exp(-i*w*t) * Fk(w)``, closing the contour in
the upper half-plane for t < 0 and the lower one for t > 0. The value at
t = 0 is fixed by continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import quadrature
from .bicomplex import Bicomplex, IdempotentPair, from_idempotent, to_idempotent
from .errors import DecayViolation, DiscontinuousAtZero, OutsideROC
from .rational import ComplexRational, PoleSet, find_poles, residue_sum_halfplane

__all__ = [
    "DecayEstimate",
    "TimeSignal",
    "RegionOfConvergence",
    "BicomplexRational",
    "ZeroLimit",
    "roc_contains_four",
    "roc_contains_idem",
    "forward_transform",
    "inverse_transform",
    "inverse_at_zero",
    "zero_limits",
    "roundtrip_error",
    "exp_abs",
    "damped_sin",
    "table_signal",
]

ZERO_STEPS = (1e-3, 1e-4, 1e-5)
CONTINUITY_TOL = 1e-6


@dataclass(frozen=True)
class DecayEstimate:
    """Exponential bounds on a signal; ``alpha`` or ``beta`` may be ``inf``
    for a signal that vanishes on that side of the origin."""

    c1: float
    alpha: float
    c2: float
    beta: float

    def __post_init__(self):
        for name in ("c1", "alpha", "c2", "beta"):
            v = float(getattr(self, name))
            if not v > 0:
                raise ValueError(f"decay constant {name} must be > 0, got {v}")
            object.__setattr__(self, name, v)

    def bound(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(invalid="ignore", over="ignore"):
            right = self.c1 * np.exp(-self.alpha * np.where(t > 0, t, 0.0))
            left = self.c2 * np.exp(self.beta * np.where(t < 0, t, 0.0))
        right = np.where(t == 0, self.c1, right)
        left = np.where(t == 0, self.c2, left)
        return np.where(t > 0, right, np.where(t < 0, left, np.minimum(self.c1, self.c2)))

    def roc(self) -> "RegionOfConvergence":
        return RegionOfConvergence(self.alpha, self.beta)


@dataclass(frozen=True)
class RegionOfConvergence:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must both be > 0")


@dataclass(frozen=True)
class TimeSignal:
    """A real continuous signal with its decay estimate.

    ``eval`` must accept numpy arrays. The bound is spot-checked on a
    sample grid at construction.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    decay: DecayEstimate
    name: str = "signal"

    def __post_init__(self):
        grid = _check_grid(self.decay)
        values = np.abs(np.asarray(self.eval(grid), dtype=float))
        bound = self.decay.bound(grid)
        bad = values > bound * (1 + 1e-12) + 1e-300
        if np.any(bad):
            k = int(np.argmax(bad))
            raise DecayViolation(
                f"{self.name}: |f({grid[k]:.6g})| = {values[k]:.6g} exceeds bound {bound[k]:.6g}")

    def __call__(self, t):
        return self.eval(t)


def _check_grid(decay: DecayEstimate) -> np.ndarray:
    right = 30.0 / decay.alpha if math.isfinite(decay.alpha) else 30.0
    left = 30.0 / decay.beta if math.isfinite(decay.beta) else 30.0
    return np.concatenate([np.linspace(-left, 0, 201), np.linspace(0, right, 201)[1:]])


# named signal family


def exp_abs(a: float = 1.0) -> TimeSignal:
    """``exp(-a|t|)``, whose transform is ``2a / (a**2 + w**2)``."""
    return TimeSignal(lambda t: np.exp(-a * np.abs(t)), DecayEstimate(1.0, a, 1.0, a),
                      name=f"exp_abs:{a}")


def damped_sin(T: float = 1.0, w0: float = 1.0) -> TimeSignal:
    """``exp(-t/T) sin(w0 t)`` for t > 0 and 0 otherwise."""

    def f(t):
        t = np.asarray(t, dtype=float)
        return np.where(t > 0, np.exp(-np.where(t > 0, t, 0.0) / T) * np.sin(w0 * t), 0.0)

    return TimeSignal(f, DecayEstimate(1.0, 1.0 / T, 1.0, math.inf), name=f"damped_sin:{T}:{w0}")


def table_signal(ts: Sequence[float], fs: Sequence[float], decay: DecayEstimate,
                 name: str = "table") -> TimeSignal:
    """Piecewise-linear interpolation of samples; zero outside the table."""
    ts = np.asarray(ts, dtype=float)
    fs = np.asarray(fs, dtype=float)
    order = np.argsort(ts)
    ts, fs = ts[order], fs[order]
    return TimeSignal(lambda t: np.interp(t, ts, fs, left=0.0, right=0.0), decay, name=name)


# region of convergence


def roc_contains_four(roc: RegionOfConvergence, w: Bicomplex) -> bool:
    """Membership in the convergence region written in four real components."""
    a1, a2 = w.a1, abs(w.a2)
    return (-roc.alpha + a2 < a1 < roc.beta - a2) and a2 < (roc.alpha + roc.beta) / 2


def roc_contains_idem(roc: RegionOfConvergence, w: Bicomplex) -> bool:
    """Membership via the two idempotent projections lying in the strip."""
    p = to_idempotent(w)
    return all(-roc.alpha < z.imag < roc.beta for z in p)


# forward transform


def _truncation(c: float, rate: float, tol: float) -> float:
    if math.isinf(rate):
        return 0.0
    return max(0.0, math.log(4 * c / (tol * rate)) / rate)


def _component_transform(f: TimeSignal, xi: complex, tol: float) -> complex:
    d = f.decay
    y = xi.imag
    right_rate = d.alpha + y
    left_rate = d.beta - y
    if not (right_rate > 0 and left_rate > 0):
        raise OutsideROC(f"Im {xi} is outside the strip ({-d.alpha}, {d.beta})")
    t_right = _truncation(d.c1, right_rate, tol)
    t_left = _truncation(d.c2, left_rate, tol)

    def integrand(t):
        return np.exp(1j * xi * t) * f.eval(t)

    return (quadrature.integrate(integrand, -t_left, 0.0, tol / 4)
            + quadrature.integrate(integrand, 0.0, t_right, tol / 4))


def forward_transform(f: TimeSignal, w, tol: float = 1e-10) -> Bicomplex:
    """``F(w)`` by quadrature, one complex integral per idempotent projection."""
    w = Bicomplex.coerce(w)
    if not roc_contains_idem(f.decay.roc(), w):
        raise OutsideROC(f"{w} is outside the region of convergence of {f.name}")
    p = to_idempotent(w)
    return from_idempotent(IdempotentPair(
        _component_transform(f, p.p1, tol),
        _component_transform(f, p.p2, tol),
    ))


# rational spectra and inversion


@dataclass(frozen=True)
class BicomplexRational:
    """``comp1(w1)*e1 + comp2(w2)*e2``."""

    comp1: ComplexRational
    comp2: ComplexRational

    @classmethod
    def from_real(cls, r: ComplexRational) -> "BicomplexRational":
        return cls(r, r)

    @classmethod
    def zero(cls) -> "BicomplexRational":
        return cls(ComplexRational.zero(), ComplexRational.zero())

    def __call__(self, w) -> Bicomplex:
        p = to_idempotent(Bicomplex.coerce(w))
        return from_idempotent(IdempotentPair(self.comp1(p.p1), self.comp2(p.p2)))

    def __iter__(self):
        yield self.comp1
        yield self.comp2

    def __add__(self, other: "BicomplexRational") -> "BicomplexRational":
        return BicomplexRational(self.comp1 + other.comp1, self.comp2 + other.comp2)

    def scale(self, c: complex) -> "BicomplexRational":
        k = ComplexRational.constant(c)
        return BicomplexRational(k * self.comp1, k * self.comp2)

    @property
    def is_proper(self) -> bool:
        return self.comp1.is_proper and self.comp2.is_proper

    def poles(self) -> tuple[PoleSet | None, PoleSet | None]:
        return tuple(find_poles(c) if c.den.degree >= 1 else None for c in self)

    def roc(self) -> RegionOfConvergence | None:
        """Widest strip free of poles in both planes, or None if it is empty."""
        lo, hi = -math.inf, math.inf
        for ps in self.poles():
            if ps is not None:
                lo = max(lo, ps.strip_clear[0])
                hi = min(hi, ps.strip_clear[1])
        if not (lo < 0 < hi):
            return None
        return RegionOfConvergence(-lo, hi)

    def to_json(self) -> dict:
        return {"comp1": self.comp1.to_json(), "comp2": self.comp2.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "BicomplexRational":
        return cls(ComplexRational.from_json(data["comp1"]),
                   ComplexRational.from_json(data["comp2"]))


def _one_sided(F: BicomplexRational, t: float) -> IdempotentPair:
    if t < 0:
        return IdempotentPair(*(1j * residue_sum_halfplane(c, "upper", t) for c in F))
    return IdempotentPair(*(-1j * residue_sum_halfplane(c, "lower", t) for c in F))


def inverse_transform(F: BicomplexRational, t: float) -> Bicomplex:
    """``f(t)`` from the residues of each idempotent component."""
    t = float(t)
    if t == 0:
        return inverse_at_zero(F)
    return from_idempotent(_one_sided(F, t))


@dataclass(frozen=True)
class ZeroLimit:
    """One-sided limits at t = 0 and whether they agree."""

    left: Bicomplex
    right: Bicomplex
    gap: float
    continuous: bool

    @property
    def value(self) -> Bicomplex:
        return from_idempotent(IdempotentPair(
            *((a + b) / 2 for a, b in zip(to_idempotent(self.left), to_idempotent(self.right)))))


def _extrapolate(hs: Sequence[float], values: Sequence[complex]) -> complex:
    # Neville's scheme evaluated at h = 0
    p = list(values)
    n = len(hs)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (hs[i + k] * p[i] - hs[i] * p[i + 1]) / (hs[i + k] - hs[i])
    return p[0]


def zero_limits(F: BicomplexRational, steps: Sequence[float] = ZERO_STEPS,
                tol: float = CONTINUITY_TOL) -> ZeroLimit:
    limits = []
    for sign in (-1.0, 1.0):
        samples = [_one_sided(F, sign * h) for h in steps]
        limits.append(from_idempotent(IdempotentPair(
            _extrapolate(steps, [s.p1 for s in samples]),
            _extrapolate(steps, [s.p2 for s in samples]),
        )))
    left, right = limits
    gap = max(abs(a - b) for a, b in zip(left.components(), right.components()))
    return ZeroLimit(left, right, gap, gap <= tol)


def inverse_at_zero(F: BicomplexRational) -> Bicomplex:
    """The value at t = 0 that makes the inverse continuous.

    Raises DiscontinuousAtZero when the one-sided limits disagree by more
    than ``CONTINUITY_TOL``.
    """
    lim = zero_limits(F)
    if not lim.continuous:
        raise DiscontinuousAtZero(
            f"one-sided limits at t = 0 differ by {lim.gap:.3e}", left=lim.left, right=lim.right)
    return lim.value


def roundtrip_error(f: TimeSignal, F: BicomplexRational, t_grid: Iterable[float],
                    w_grid: Iterable, tol: float = 1e-10) -> float:
    """Worst componentwise disagreement between ``f`` and ``F`` in both directions."""
    err = 0.0
    for t in t_grid:
        got = inverse_transform(F, t)
        want = float(f.eval(np.asarray(float(t))))
        diff = got - want
        err = max(err, *(abs(c) for c in diff.components()))
    for w in w_grid:
        got = to_idempotent(forward_transform(f, w, tol))
        want = to_idempotent(F(w))
        err = max(err, abs(got.p1 - want.p1), abs(got.p2 - want.p2))
    return err
