"""Bicomplex numbers ``a0 + a1*i1 + a2*i2 + a3*i1*i2``.

Storage is always the four real Cartesian components. The idempotent
form ``p1*e1 + p2*e2`` (``p1 = z1 - i1*z2``, ``p2 = z1 + i1*z2`` with
``z1 = a0 + i1*a1`` and ``z2 = a2 + i1*a3``) is computed on demand.
Complex numbers of the ``i1`` plane are represented by Python ``complex``.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

from .errors import ZeroDivisor

__all__ = [
    "Bicomplex",
    "IdempotentPair",
    "to_idempotent",
    "from_idempotent",
    "mul",
    "inverse",
    "ONE",
    "ZERO",
    "I1",
    "I2",
    "J",
    "E1",
    "E2",
    "NULL_CONE_ATOL",
]

#: ``|p_k|`` at or below this is treated as zero when dividing.
NULL_CONE_ATOL = 1e-300


def _fmt_real(x: float) -> str:
    return repr(float(x))


def format_complex(z: complex) -> str:
    """Render ``z`` as ``"re + im*i1"`` (parseable by the DSL)."""
    re, im = float(z.real), float(z.imag)
    sign = "-" if im < 0 or (im == 0 and str(im).startswith("-")) else "+"
    return f"{_fmt_real(re)} {sign} {_fmt_real(abs(im))}*i1"


@dataclass(frozen=True, slots=True)
class IdempotentPair:
    """Coordinates ``(p1, p2)`` of ``p1*e1 + p2*e2``."""

    p1: complex
    p2: complex

    def __post_init__(self):
        object.__setattr__(self, "p1", complex(self.p1))
        object.__setattr__(self, "p2", complex(self.p2))

    def __iter__(self):
        yield self.p1
        yield self.p2

    def to_bicomplex(self) -> "Bicomplex":
        return from_idempotent(self)

    def __str__(self) -> str:
        return f"[{format_complex(self.p1)} | {format_complex(self.p2)}]"


@dataclass(frozen=True, slots=True)
class Bicomplex:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    # construction helpers

    @classmethod
    def coerce(cls, value) -> "Bicomplex":
        if isinstance(value, Bicomplex):
            return value
        if isinstance(value, IdempotentPair):
            return from_idempotent(value)
        if isinstance(value, Number):
            z = complex(value)
            return cls(z.real, z.imag, 0.0, 0.0)
        raise TypeError(f"cannot interpret {value!r} as a bicomplex number")

    @classmethod
    def from_complex_pair(cls, z1: complex, z2: complex) -> "Bicomplex":
        """Build ``z1 + i2*z2`` from two ``i1``-plane complex numbers."""
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_idempotent(cls, p1: complex, p2: complex) -> "Bicomplex":
        return from_idempotent(IdempotentPair(p1, p2))

    # views

    @property
    def z1(self) -> complex:
        return complex(self.a0, self.a1)

    @property
    def z2(self) -> complex:
        return complex(self.a2, self.a3)

    def components(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3)

    def to_idempotent(self) -> IdempotentPair:
        return to_idempotent(self)

    def is_zero_divisor(self, atol: float = NULL_CONE_ATOL) -> bool:
        p = to_idempotent(self)
        return abs(p.p1) <= atol or abs(p.p2) <= atol

    def is_real(self, atol: float = 0.0) -> bool:
        return max(abs(self.a1), abs(self.a2), abs(self.a3)) <= atol

    # arithmetic

    def __add__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2, self.a3 + o.a3)

    __radd__ = __add__

    def __neg__(self):
        return Bicomplex(-self.a0, -self.a1, -self.a2, -self.a3)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return Bicomplex(self.a0 - o.a0, self.a1 - o.a1, self.a2 - o.a2, self.a3 - o.a3)

    def __rsub__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(self, inverse(o))

    def __rtruediv__(self, other):
        try:
            o = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(o, inverse(self))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return inverse(self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    def __abs__(self):
        raise TypeError("bicomplex modulus is not defined in this package")

    def __str__(self) -> str:
        parts = [_fmt_real(self.a0)]
        for value, unit in ((self.a1, "i1"), (self.a2, "i2"), (self.a3, "j")):
            sign = "-" if value < 0 or (value == 0 and str(value).startswith("-")) else "+"
            parts.append(f"{sign} {_fmt_real(abs(value))}*{unit}")
        return " ".join(parts)

    def idempotent_str(self) -> str:
        return str(to_idempotent(self))


def to_idempotent(x: Bicomplex) -> IdempotentPair:
    return IdempotentPair(
        complex(x.a0 + x.a3, x.a1 - x.a2),
        complex(x.a0 - x.a3, x.a1 + x.a2),
    )


def from_idempotent(p: IdempotentPair) -> Bicomplex:
    r1, i1 = p.p1.real, p.p1.imag
    r2, i2 = p.p2.real, p.p2.imag
    return Bicomplex((r1 + r2) / 2, (i1 + i2) / 2, (i2 - i1) / 2, (r1 - r2) / 2)


def mul(x: Bicomplex, y: Bicomplex) -> Bicomplex:
    """Ring product, expanded in the Cartesian ``z1 + i2*z2`` form."""
    u1, u2 = x.z1, x.z2
    v1, v2 = y.z1, y.z2
    return Bicomplex.from_complex_pair(u1 * v1 - u2 * v2, u1 * v2 + u2 * v1)


def inverse(x: Bicomplex, atol: float = NULL_CONE_ATOL) -> Bicomplex:
    """Multiplicative inverse, via reciprocals of the idempotent components.

    Raises ZeroDivisor when either component has modulus ``<= atol``.
    """
    p = to_idempotent(x)
    if abs(p.p1) <= atol or abs(p.p2) <= atol:
        raise ZeroDivisor(f"{x} lies on the null cone (idempotent components {p})")
    return from_idempotent(IdempotentPair(1 / p.p1, 1 / p.p2))


ZERO = Bicomplex(0.0, 0.0, 0.0, 0.0)
ONE = Bicomplex(1.0, 0.0, 0.0, 0.0)
I1 = Bicomplex(0.0, 1.0, 0.0, 0.0)
I2 = Bicomplex(0.0, 0.0, 1.0, 0.0)
J = Bicomplex(0.0, 0.0, 0.0, 1.0)
E1 = Bicomplex(0.5, 0.0, 0.0, 0.5)
E2 = Bicomplex(0.5, 0.0, 0.0, -0.5)
