"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as their canonical residue modulo the cyclotomic
polynomial Phi_n: an integer numerator vector of length deg(Phi_n) over a
single positive denominator, reduced so that the overall gcd is one.  Two
scalars are equal exactly when these canonical forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

__all__ = [
    "IntPolynomial",
    "FieldContext",
    "Scalar",
    "ConductorMismatch",
    "cyclotomic_polynomial",
    "field_new",
    "root_of_unity",
    "order_of_unity",
    "scalar_from_json",
]

Number = Union[int, Fraction]


class ConductorMismatch(ArithmeticError):
    """Raised when scalars from different cyclotomic fields are combined."""


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def x_pow_minus_one(cls, n: int) -> "IntPolynomial":
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division by a polynomial whose leading coefficient is +-1."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quo = [0] * max(dq + 1, 0)
        for i in range(dq, -1, -1):
            t = rem[i + other.degree] * lead
            if t:
                quo[i] = t
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= t * b
        return IntPolynomial(tuple(quo)), IntPolynomial(tuple(rem))

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    p = IntPolynomial.x_pow_minus_one(n)
    for d in _divisors(n)[:-1]:
        p = p.exact_div(cyclotomic_polynomial(d))
    return p


@dataclass(frozen=True)
class FieldContext:
    n: int
    modulus: IntPolynomial
    degree: int

    def zero(self) -> "Scalar":
        return Scalar._raw(self.n, (0,) * self.degree, 1)

    def one(self) -> "Scalar":
        return self(1)

    def zeta(self, e: int = 1) -> "Scalar":
        return root_of_unity(self, e)

    def __call__(self, value) -> "Scalar":
        """Coerce an int, Fraction, "p/q" string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.n != self.n:
                raise ConductorMismatch(f"scalar lives in Q(zeta_{value.n}), not Q(zeta_{self.n})")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        return Scalar._from_rational(self.n, value)


@lru_cache(maxsize=None)
def field_new(n: int) -> FieldContext:
    if n < 1:
        raise ValueError("conductor must be positive")
    phi = cyclotomic_polynomial(n)
    return FieldContext(n, phi, phi.degree)


@lru_cache(maxsize=None)
def _reducer(n: int) -> tuple[int, tuple]:
    ctx = field_new(n)
    return ctx.degree, ctx.modulus.coeffs


def _reduce(prod: list, mod: tuple, d: int) -> list:
    # Phi_n is monic: x^d = -(mod[0] + ... + mod[d-1] x^{d-1})
    for i in range(len(prod) - 1, d - 1, -1):
        t = prod[i]
        if t:
            base = i - d
            for k in range(d):
                m = mod[k]
                if m:
                    prod[base + k] -= t * m
    return prod[:d]


class Scalar:
    """Element of Q(zeta_n) in canonical residue form."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, coeffs):
        d, _ = _reducer(n)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > d:
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            ints = [int(f * den) for f in fr]
            ints = _reduce(ints, _reducer(n)[1], d)
        else:
            fr += [Fraction(0)] * (d - len(fr))
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            ints = [int(f * den) for f in fr]
        s = Scalar._make(n, ints, den)
        self.n, self.num, self.den = s.n, s.num, s.den

    @classmethod
    def _raw(cls, n: int, num: tuple, den: int) -> "Scalar":
        obj = object.__new__(cls)
        obj.n = n
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def _make(cls, n: int, num, den: int) -> "Scalar":
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return cls._raw(n, tuple(num), den)

    @classmethod
    def _from_rational(cls, n: int, value: Number) -> "Scalar":
        d, _ = _reducer(n)
        if isinstance(value, int):
            return cls._raw(n, (value,) + (0,) * (d - 1), 1)
        value = Fraction(value)
        return cls._raw(n, (value.numerator,) + (0,) * (d - 1), value.denominator)

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.n != self.n:
                raise ConductorMismatch(
                    f"cannot combine Q(zeta_{self.n}) with Q(zeta_{other.n})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar._from_rational(self.n, other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return Scalar._make(self.n, [a + b for a, b in zip(self.num, o.num)], self.den)
        return Scalar._make(
            self.n,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.n, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d, mod = _reducer(self.n)
        if d == 1:
            return Scalar._make(self.n, [self.num[0] * o.num[0]], self.den * o.den)
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        prod[i + j] += a * b
        return Scalar._make(self.n, _reduce(prod, mod, d), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        d, mod = _reducer(self.n)
        if d == 1:
            return Scalar._make(self.n, [self.den], self.num[0])
        # extended Euclid in Q[x]: find u with u*a = 1 mod Phi_n
        a = [Fraction(c, self.den) for c in self.num]
        u = _poly_inverse_mod(a, [Fraction(c) for c in mod])
        return Scalar(self.n, u)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inverse() ** (-e)
        result = Scalar._from_rational(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.n == other.n and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return (
                self.num[0] * other.denominator == other.numerator * self.den
                and not any(self.num[1:])
            )
        return NotImplemented

    def __hash__(self) -> int:
        if not any(self.num[1:]):
            return hash(Fraction(self.num[0], self.den))
        return hash((self.n, self.num, self.den))

    # -- views --------------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_json(self) -> dict:
        return {
            "conductor": self.n,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    def __repr__(self) -> str:
        return f"Scalar({self.n}: {self})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        t = a[i + len(b) - 1] / lead
        if t:
            q[i] = t
            for j, c in enumerate(b):
                a[i + j] -= t * c
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


def _poly_inverse_mod(a: list, m: list) -> list:
    # invariant: s_i * a = r_i (mod m)
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        n = max(len(s0), len(prod))
        s_new = [
            (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
            for i in range(n)
        ]
        s0, s1 = s1, _poly_trim(s_new)
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


@lru_cache(maxsize=None)
def _zeta_power(n: int, e: int) -> Scalar:
    d, mod = _reducer(n)
    coeffs = [0] * max(e + 1, d)
    coeffs[e] = 1
    return Scalar._make(n, _reduce(coeffs, mod, d), 1)


def root_of_unity(ctx: FieldContext, e: int) -> Scalar:
    """zeta_n^e with the exponent reduced modulo n."""
    return _zeta_power(ctx.n, e % ctx.n)


def order_of_unity(a: Scalar):
    """Multiplicative order of ``a`` if it is a root of unity, else ``None``."""
    if not a:
        raise ZeroDivisionError("zero has no multiplicative order")
    # roots of unity in Q(zeta_n) have order dividing lcm(2, n)
    bound = a.n if a.n % 2 == 0 else 2 * a.n
    p = a
    for t in range(1, bound + 1):
        if p == 1:
            return t
        p = p * a
    return None


def scalar_from_json(obj, ctx: FieldContext | None = None) -> Scalar:
    """Inverse of :meth:`Scalar.to_json`; also accepts "p/q" strings and ints."""
    if isinstance(obj, dict) and "coeffs" in obj:
        n = int(obj["conductor"])
        s = Scalar(n, [Fraction(c) for c in obj["coeffs"]])
        return ctx(s) if ctx is not None else s
    if ctx is None:
        raise ValueError("a bare rational needs a field context")
    if isinstance(obj, dict) and "zeta_pow" in obj:
        mult = Fraction(str(obj.get("mult", 1)))
        return root_of_unity(ctx, int(obj["zeta_pow"])) * mult
    if isinstance(obj, (int, str)):
        return ctx(Fraction(obj) if isinstance(obj, str) else obj)
    raise ValueError(f"cannot read a scalar from {obj!r}")
