"""Complex polynomials, rational functions and exponential-kernel residues.

Coefficients are stored in ascending degree order. The inversion engine
needs, for a rational ``R = N/D``, the poles of ``R`` (roots of ``D`` not
cancelled by roots of ``N``) together with their multiplicities, and the
residues of ``exp(-i*w*t) * R(w)`` at those poles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateDenominator,
    ImproperRational,
    NoConvergence,
    NotAPole,
    PoleOnRealAxis,
    ZeroDenominator,
)

__all__ = [
    "ComplexPolynomial",
    "ComplexRational",
    "Pole",
    "PoleSet",
    "polyroots",
    "find_poles",
    "reduce_rational",
    "residue_exp_kernel",
    "residue_sum_halfplane",
    "DEFAULT_CLUSTER_REL",
    "REAL_AXIS_TOL",
]

DEFAULT_CLUSTER_REL = 1e-7
#: A pole with ``|Im p| <= REAL_AXIS_TOL * max(1, |p|)`` counts as on the real axis.
REAL_AXIS_TOL = 1e-10
#: Backward-error threshold a polished root must reach.
ROOT_RESIDUAL_TOL = 1e-13
#: Looser backward-error threshold used to recognise a caller-supplied pole.
POLE_MEMBERSHIP_TOL = 1e-8
#: Backward error each of ``p, p', ..., p^(m-1)`` must meet at an m-fold root.
MULTIPLE_ROOT_TOL = 1e-12
#: Only clusters closer than this (relative) are candidates for merging.
MERGE_SEARCH_REL = 1e-2
NEWTON_STEPS = 2


def _trim(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    c = [complex(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial with complex coefficients ``coeffs[k] * w**k``.

    Trailing exact zeros are dropped, so the zero polynomial has empty
    ``coeffs`` and degree -1.
    """

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, c: complex) -> "ComplexPolynomial":
        return cls((c,))

    @classmethod
    def identity(cls) -> "ComplexPolynomial":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1) -> "ComplexPolynomial":
        c = [complex(lead)]
        for r in roots:
            nxt = [0j] * (len(c) + 1)
            for k, ck in enumerate(c):
                nxt[k + 1] += ck
                nxt[k] -= r * ck
            c = nxt
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> complex:
        return self.coeffs[-1] if self.coeffs else 0j

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __call__(self, w):
        acc = 0j if np.isscalar(w) else np.zeros_like(np.asarray(w), dtype=complex)
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc

    def abs_scale(self, w: complex) -> float:
        """``sum |c_k| |w|**k``, the natural scale for the residual at ``w``."""
        r = abs(w)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + abs(c)
        return acc

    def derivative(self, order: int = 1) -> "ComplexPolynomial":
        c = list(self.coeffs)
        for _ in range(order):
            c = [k * c[k] for k in range(1, len(c))]
        return ComplexPolynomial(c)

    def taylor(self, p: complex) -> list[complex]:
        """Coefficients of ``P(p + s)`` in powers of ``s``."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] += p * c[k + 1]
        return c

    def deflate(self, r: complex) -> "ComplexPolynomial":
        """Quotient of division by ``(w - r)``; the remainder is discarded."""
        if self.degree < 1:
            return ComplexPolynomial()
        c = self.coeffs
        q = [0j] * (len(c) - 1)
        acc = 0j
        for k in range(len(c) - 1, 0, -1):
            acc = acc * r + c[k]
            q[k - 1] = acc
        return ComplexPolynomial(q)

    def scale(self, s: complex) -> "ComplexPolynomial":
        return ComplexPolynomial([s * c for c in self.coeffs])

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ComplexPolynomial(
            [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]
        )

    def __neg__(self) -> "ComplexPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return ComplexPolynomial()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(other.coeffs):
                out[i + k] += a * b
        return ComplexPolynomial(out)

    __rmul__ = __mul__

    def roots(self) -> np.ndarray:
        return polyroots(self)

    def to_json(self) -> list[list[float]]:
        return [[c.real, c.imag] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "ComplexPolynomial":
        out = []
        for item in data:
            if isinstance(item, (list, tuple)):
                re, im = item
                out.append(complex(re, im))
            else:
                out.append(complex(item))
        return cls(out)


def polyroots(p: ComplexPolynomial, newton_steps: int = NEWTON_STEPS) -> np.ndarray:
    """Roots from the eigenvalues of the monic companion matrix, Newton polished."""
    n = p.degree
    if n < 1:
        return np.zeros(0, dtype=complex)
    c = np.asarray(p.coeffs, dtype=complex)
    c = c / c[-1]
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1]
    try:
        roots = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"companion eigenvalue iteration failed: {exc}") from exc
    if not np.all(np.isfinite(roots)):
        raise NoConvergence("companion eigenvalues are not finite")
    dp = p.derivative()
    for _ in range(newton_steps):
        for k, r in enumerate(roots):
            d = dp(r)
            if d != 0:
                step = p(r) / d
                if np.isfinite(step):
                    roots[k] = r - step
    return roots


def _cluster(points: Sequence[complex], radius) -> list[list[int]]:
    """Single-linkage clusters; ``radius(a, b)`` gives the merge distance."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for k in range(i + 1, n):
            if abs(points[i] - points[k]) <= radius(points[i], points[k]):
                parent[find(i)] = find(k)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _radius_fn(cluster_radius: float | None):
    if cluster_radius is None:
        return lambda a, b: DEFAULT_CLUSTER_REL * max(1.0, abs(a), abs(b))
    return lambda a, b: cluster_radius


def _backward_error(p: ComplexPolynomial, w: complex) -> float:
    scale = p.abs_scale(w)
    return abs(p(w)) / scale if scale else 0.0


def _is_multiple_root(p: ComplexPolynomial, c: complex, m: int) -> bool:
    d = p
    for _ in range(m):
        if _backward_error(d, c) > MULTIPLE_ROOT_TOL:
            return False
        d = d.derivative()
    return True


def _merge_multiple_roots(p: ComplexPolynomial, roots: Sequence[complex],
                          groups: list[list[int]]) -> list[list[int]]:
    # An m-fold root comes out of the eigensolver as m roots spread by
    # about eps**(1/m). Grow each cluster with its nearest neighbours and
    # keep the largest union whose centroid annihilates p, p', ..., p^(m-1).
    cents = [sum(roots[i] for i in g) / len(g) for g in groups]
    free = set(range(len(groups)))
    out = []
    for a in range(len(groups)):
        if a not in free:
            continue
        free.discard(a)
        reach = MERGE_SEARCH_REL * max(1.0, abs(cents[a]))
        near = sorted((b for b in free if abs(cents[b] - cents[a]) <= reach),
                      key=lambda b: abs(cents[b] - cents[a]))
        best: list[int] = []
        for n in range(len(near), 0, -1):
            members = groups[a] + [i for b in near[:n] for i in groups[b]]
            c = sum(roots[i] for i in members) / len(members)
            if _is_multiple_root(p, c, len(members)):
                best = near[:n]
                break
        merged = list(groups[a])
        for b in best:
            merged += groups[b]
            free.discard(b)
        out.append(merged)
    return out


def _root_clusters(p: ComplexPolynomial,
                   cluster_radius: float | None) -> list[tuple[complex, int]]:
    """Distinct roots of ``p`` as ``(location, multiplicity)`` pairs."""
    raw = list(polyroots(p, newton_steps=0))
    groups = _cluster(raw, _radius_fn(cluster_radius))
    if cluster_radius is None:
        groups = _merge_multiple_roots(p, raw, groups)
    out = []
    for g in groups:
        centroid = sum(raw[i] for i in g) / len(g)
        out.append((_polish_cluster(p, centroid, len(g)), len(g)))
    return out


@dataclass(frozen=True)
class Pole:
    location: complex
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "location", complex(self.location))
        if int(self.multiplicity) < 1:
            raise ValueError("pole multiplicity must be >= 1")
        object.__setattr__(self, "multiplicity", int(self.multiplicity))

    def on_real_axis(self, tol: float = REAL_AXIS_TOL) -> bool:
        return abs(self.location.imag) <= tol * max(1.0, abs(self.location))

    def to_json(self) -> dict:
        return {
            "location": [self.location.real, self.location.imag],
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class PoleSet:
    """Poles of a rational plus the widest real-axis strip free of them.

    ``strip_clear = (-alpha, beta)`` with ``alpha = -max Im p`` over the
    lower half-plane poles and ``beta = min Im p`` over the upper ones
    (infinite when a half-plane holds no pole).
    """

    poles: tuple[Pole, ...]
    strip_clear: tuple[float, float] = field(default=(-math.inf, math.inf))

    @classmethod
    def from_poles(cls, poles: Iterable[Pole]) -> "PoleSet":
        poles = tuple(sorted(poles, key=lambda q: (q.location.real, q.location.imag)))
        lows = [q.location.imag for q in poles if q.location.imag < 0]
        highs = [q.location.imag for q in poles if q.location.imag > 0]
        lo = max(lows) if lows else -math.inf
        hi = min(highs) if highs else math.inf
        if any(q.location.imag == 0 for q in poles):
            lo = hi = 0.0
        return cls(poles, (lo, hi))

    @property
    def alpha(self) -> float:
        return -self.strip_clear[0]

    @property
    def beta(self) -> float:
        return self.strip_clear[1]

    def __iter__(self):
        return iter(self.poles)

    def __len__(self):
        return len(self.poles)

    def total_multiplicity(self) -> int:
        return sum(q.multiplicity for q in self.poles)

    def upper(self) -> list[Pole]:
        return [q for q in self.poles if q.location.imag > 0]

    def lower(self) -> list[Pole]:
        return [q for q in self.poles if q.location.imag < 0]

    def real_axis_poles(self, tol: float = REAL_AXIS_TOL) -> list[Pole]:
        return [q for q in self.poles if q.on_real_axis(tol)]

    def to_json(self) -> dict:
        lo, hi = self.strip_clear
        return {
            "poles": [q.to_json() for q in self.poles],
            "strip_clear": [_json_float(lo), _json_float(hi)],
        }


def _json_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass(frozen=True)
class ComplexRational:
    """``num/den`` with ``den`` normalised to be monic."""

    num: ComplexPolynomial
    den: ComplexPolynomial = ComplexPolynomial((1,))

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        lead = self.den.lead
        if lead != 1:
            object.__setattr__(self, "num", self.num.scale(1 / lead))
            object.__setattr__(self, "den", self.den.scale(1 / lead))
        if self.num.is_zero() and self.den.degree > 0:
            object.__setattr__(self, "den", ComplexPolynomial((1,)))

    @classmethod
    def from_coeffs(cls, num: Sequence[complex], den: Sequence[complex] = (1,)) -> "ComplexRational":
        return cls(ComplexPolynomial(num), ComplexPolynomial(den))

    @classmethod
    def constant(cls, c: complex) -> "ComplexRational":
        return cls(ComplexPolynomial((c,)))

    @classmethod
    def zero(cls) -> "ComplexRational":
        return cls(ComplexPolynomial())

    @property
    def is_proper(self) -> bool:
        """Strict properness: ``deg num < deg den`` (the zero function qualifies)."""
        return self.num.degree < self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __call__(self, w):
        return self.num(w) / self.den(w)

    # field arithmetic, with the zero/one shortcuts that keep untouched
    # operands bit-identical

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return ComplexRational(self.num + other.num, self.den)
        return ComplexRational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.num, self.den)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return self + (-other)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        if self.is_zero() or other.is_zero():
            return ComplexRational.zero()
        return ComplexRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "ComplexRational") -> "ComplexRational":
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        if self.is_zero():
            return ComplexRational.zero()
        return ComplexRational(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "ComplexRational":
        if n < 0:
            return ComplexRational.constant(1) / (self ** (-n))
        result = ComplexRational.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def reduced(self, cluster_radius: float | None = None) -> "ComplexRational":
        return reduce_rational(self, cluster_radius)[0]

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ComplexRational":
        return cls(ComplexPolynomial.from_json(data["num"]),
                   ComplexPolynomial.from_json(data.get("den", [[1.0, 0.0]])))


def _polish_cluster(den: ComplexPolynomial, centroid: complex, m: int) -> complex:
    # the (m-1)-th derivative has a simple root at an m-fold root
    target = den.derivative(m - 1)
    dt = target.derivative()
    z = centroid
    for _ in range(NEWTON_STEPS):
        d = dt(z)
        if d == 0:
            break
        step = target(z) / d
        if not cmath.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(z)):
            break
        z -= step
    return z


@lru_cache(maxsize=512)
def reduce_rational(r: ComplexRational,
                    cluster_radius: float | None = None) -> tuple[ComplexRational, PoleSet]:
    """Cancel common roots of numerator and denominator and collect the poles.

    Returns the rational in lowest floating terms and its PoleSet. When
    nothing cancels the input is returned unchanged.
    """
    if r.den.degree < 1:
        raise DegenerateDenominator("denominator is constant; there are no poles")
    radius = _radius_fn(cluster_radius)
    poles = []
    for z, m in _root_clusters(r.den, cluster_radius):
        be = _backward_error(r.den, z)
        if be > ROOT_RESIDUAL_TOL:
            raise NoConvergence(
                f"root {z} of the denominator has residual {be:.3e} > {ROOT_RESIDUAL_TOL:.0e}")
        poles.append([z, m])

    zeros = [list(zm) for zm in _root_clusters(r.num, cluster_radius)] if r.num.degree >= 1 else []
    cancelled: list[tuple[complex, complex, int]] = []
    for entry in poles:
        for zero in zeros:
            if zero[1] and entry[1] and abs(zero[0] - entry[0]) <= radius(zero[0], entry[0]):
                k = min(zero[1], entry[1])
                zero[1] -= k
                entry[1] -= k
                cancelled.append((entry[0], zero[0], k))

    if not cancelled:
        return r, PoleSet.from_poles(Pole(z, m) for z, m in poles)
    num, den = r.num, r.den
    for z, nz, k in cancelled:
        for _ in range(k):
            den = den.deflate(z)
            num = num.deflate(nz)
    reduced = ComplexRational(num, den)
    kept = [Pole(z, m) for z, m in poles if m > 0]
    return reduced, PoleSet.from_poles(kept)


def find_poles(r: ComplexRational, cluster_radius: float | None = None) -> PoleSet:
    """All poles of ``r`` with multiplicities, after pole/zero cancellation.

    Roots of the denominator closer than ``cluster_radius`` (default
    ``1e-7 * max(1, |root|)``) are merged into one pole at their centroid.
    """
    return reduce_rational(r, cluster_radius)[1]


def residue_exp_kernel(r: ComplexRational, pole: Pole, t: float,
                       cluster_radius: float | None = None) -> complex:
    """Residue of ``exp(-i*w*t) * r(w)`` at ``pole``."""
    rr = reduce_rational(r, cluster_radius)[0] if r.den.degree >= 1 else r
    p, m = pole.location, pole.multiplicity
    if rr.den.degree < m or _backward_error(rr.den, p) > POLE_MEMBERSHIP_TOL:
        raise NotAPole(f"{p} is not a root of the denominator")
    kernel = cmath.exp(-1j * p * t)
    if m == 1:
        return kernel * rr.num(p) / rr.den.derivative()(p)
    q = rr.den
    for _ in range(m):
        q = q.deflate(p)
    # Taylor coefficients of the analytic part g = num / q at p
    nt = rr.num.taylor(p) + [0j] * m
    qt = q.taylor(p) + [0j] * m
    g = []
    for k in range(m):
        acc = nt[k] - sum(qt[j] * g[k - j] for j in range(1, k + 1))
        g.append(acc / qt[0])
    # Leibniz: coefficient of s**(m-1) in exp(-i(p+s)t) * g(s)
    total = 0j
    for k in range(m):
        n = m - 1 - k
        total += g[k] * (-1j * t) ** n / math.factorial(n)
    return kernel * total


def residue_sum_halfplane(r: ComplexRational, half: str, t: float,
                          cluster_radius: float | None = None) -> complex:
    """Sum of kernel residues over the poles in the ``"upper"`` or ``"lower"`` half-plane."""
    if half not in ("upper", "lower"):
        raise ValueError(f"half must be 'upper' or 'lower', not {half!r}")
    if not r.is_proper:
        raise ImproperRational(
            f"numerator degree {r.num.degree} >= denominator degree {r.den.degree}")
    if r.is_zero():
        return 0j
    poleset = find_poles(r, cluster_radius)
    on_axis = poleset.real_axis_poles()
    if on_axis:
        raise PoleOnRealAxis(f"pole at {on_axis[0].location} lies on the real axis")
    chosen = poleset.upper() if half == "upper" else poleset.lower()
    return sum((residue_exp_kernel(r, q, t, cluster_radius) for q in chosen), 0j)
