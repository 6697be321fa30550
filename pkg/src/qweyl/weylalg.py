"""Rank-two quantized Weyl algebras and their PBW normal forms.

Three flavors share one element type:

* ``A2``     x_i y_i - q_i y_i x_i = 1 + sum_{k<i} (q_k - 1) y_k x_k
* ``AltA2``  x_i y_i - q_i y_i x_i = 1
* ``Affine4`` a rank-four quantum affine space in (y1, x1, y2, x2)

with cross relations twisted by lambda.  Elements are finite maps from PBW
monomials ``y1^a1 x1^b1 y2^a2 x2^b2`` (stored as ``(a1, b1, a2, b2)``) to
cyclotomic scalars.  Products are computed by rewriting with the defining
relations only, one generator at a time, so the derived power identities can
be checked against the multiplication rather than baked into it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import gcd
from typing import Iterable

from .exactfield import FieldContext, Scalar, field_new, order_of_unity, root_of_unity, scalar_from_json

__all__ = [
    "AlgebraSpec",
    "AlgebraElement",
    "AssumptionError",
    "SpecMismatch",
    "FLAVORS",
    "GENERATORS",
    "generator",
    "multiply",
    "z_element",
    "commutes",
    "is_central",
    "verify_lemma_identities",
    "parse_element",
    "q_integer",
]

FLAVORS = ("A2", "AltA2", "Affine4")
GENERATORS = ("y1", "x1", "y2", "x2")  # PBW order
_GEN_INDEX = {g: i for i, g in enumerate(GENERATORS)}
_AFFINE_KINDS = ("weyl", "alt", "torsion")


class AssumptionError(ValueError):
    """Multiparameters outside the root-of-unity regime (assumption (*))."""


class SpecMismatch(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AlgebraSpec:
    """q1 = zeta_l^e1, q2 = zeta_l^e2, lambda = zeta_l^elam with l = lcm(l1, l2).

    Omitted exponents default to q_i = zeta_{l_i} and lambda = 1.  For the
    ``Affine4`` flavor, ``affine`` picks which commutation matrix to use.
    """

    flavor: str
    l1: int
    l2: int
    e1: int | None = None
    e2: int | None = None
    elam: int = 0
    affine: str = "weyl"
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}; expected one of {FLAVORS}")
        if self.affine not in _AFFINE_KINDS:
            raise ValueError(f"unknown affine kind {self.affine!r}")
        if self.l1 < 2 or self.l2 < 2:
            raise AssumptionError(
                "assumption (*) violated: q_i must be a primitive l_i-th root of unity "
                "different from 1, so l1, l2 >= 2"
            )
        l = _lcm(self.l1, self.l2)
        e1 = l // self.l1 if self.e1 is None else self.e1 % l
        e2 = l // self.l2 if self.e2 is None else self.e2 % l
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        object.__setattr__(self, "elam", self.elam % l)
        for name, e, li in (("q1", e1, self.l1), ("q2", e2, self.l2)):
            if l // gcd(e, l) != li:
                raise AssumptionError(
                    f"assumption (*) violated: {name} = zeta_{l}^{e} is not a primitive "
                    f"{li}-th root of unity"
                )
        if (self.elam * self.l1) % l:
            raise AssumptionError(
                f"assumption (*) violated: lambda = zeta_{l}^{self.elam} is not an "
                f"{self.l1}-th root of unity"
            )

    # -- parameters ---------------------------------------------------------
    @property
    def l(self) -> int:
        return _lcm(self.l1, self.l2)

    @property
    def field(self) -> FieldContext:
        return field_new(self.l)

    @cached_property
    def q1(self) -> Scalar:
        return root_of_unity(self.field, self.e1)

    @cached_property
    def q2(self) -> Scalar:
        return root_of_unity(self.field, self.e2)

    @cached_property
    def lam(self) -> Scalar:
        return root_of_unity(self.field, self.elam)

    def zeta(self, e: int) -> Scalar:
        return root_of_unity(self.field, e)

    @property
    def s1(self) -> int:
        return self.l // self.l1

    @property
    def s2(self) -> int:
        return self.l // self.l2

    @property
    def k1(self) -> int:
        return self.e1 // self.s1

    @property
    def k2(self) -> int:
        return self.e2 // self.s2

    @property
    def k(self) -> int:
        # lambda = q1^k; k1 is a unit modulo l1
        return (self.elam // self.s1) * pow(self.k1, -1, self.l1) % self.l1

    def ord_lambda(self) -> int:
        return order_of_unity(self.lam)

    def ord_q1_lambda(self) -> int:
        return order_of_unity(self.q1 * self.lam)

    def with_flavor(self, flavor: str, affine: str | None = None) -> "AlgebraSpec":
        return replace(self, flavor=flavor, affine=affine or self.affine, _cache={})

    def exponent_rows(self) -> list[list[int]]:
        a = self.s1 * self.k1
        b = self.s2 * self.k2
        c = self.s1 * self.k1 * self.k
        kind = {"A2": "weyl", "AltA2": "alt"}.get(self.flavor, self.affine)
        if kind == "weyl":
            upper = {(0, 1): -a, (0, 2): c, (0, 3): -a - c, (1, 2): -c, (1, 3): a + c, (2, 3): -b}
        elif kind == "alt":
            upper = {(0, 1): -a, (0, 2): c, (0, 3): -c, (1, 2): -c, (1, 3): c, (2, 3): -b}
        else:
            upper = {(0, 1): 0, (0, 2): c, (0, 3): -a - c, (1, 2): -c, (1, 3): a + c, (2, 3): -b}
        rows = [[0] * 4 for _ in range(4)]
        for (i, j), v in upper.items():
            rows[i][j] = v
            rows[j][i] = -v
        return rows

    @cached_property
    def affine_matrix(self) -> tuple:
        """Scalars Q with u_i u_j = Q[i][j] u_j u_i in the order (y1, x1, y2, x2)."""
        return tuple(tuple(self.zeta(e) for e in row) for row in self.exponent_rows())

    def to_json(self) -> dict:
        out = {
            "flavor": self.flavor,
            "l1": self.l1,
            "l2": self.l2,
            "e1": self.e1,
            "e2": self.e2,
            "elam": self.elam,
        }
        if self.flavor == "Affine4":
            out["affine"] = self.affine
        return out

    @classmethod
    def from_json(cls, obj: dict, flavor: str | None = None) -> "AlgebraSpec":
        return cls(
            flavor=flavor or obj.get("flavor", "A2"),
            l1=int(obj["l1"]),
            l2=int(obj["l2"]),
            e1=obj.get("e1"),
            e2=obj.get("e2"),
            elam=int(obj.get("elam", 0)),
            affine=obj.get("affine", "weyl"),
        )

    def label(self) -> str:
        return f"{self.flavor}(l1={self.l1}, l2={self.l2}, e1={self.e1}, e2={self.e2}, elam={self.elam})"


def q_integer(q: Scalar, n: int) -> Scalar:
    """1 + q + ... + q^(n-1)."""
    total, p = q * 0, q * 0 + 1
    for _ in range(n):
        total = total + p
        p = p * q
    return total


# ---------------------------------------------------------------------------
# rewriting


def _add_into(acc: dict, terms: dict, c) -> None:
    for m, v in terms.items():
        w = acc.get(m)
        w = v * c if w is None else w + v * c
        if w:
            acc[m] = w
        else:
            acc.pop(m, None)


def _times_gen_terms(spec: AlgebraSpec, terms: dict, g: str) -> dict:
    acc: dict = {}
    for m, c in terms.items():
        _add_into(acc, _mono_times_gen(spec, m, g), c)
    return acc


def _constants(spec: AlgebraSpec) -> dict:
    got = spec._cache.get("constants")
    if got is None:
        q1, q2, lam = spec.q1, spec.q2, spec.lam
        if spec.flavor == "A2":
            x2x1, x2y1 = (q1 * lam).inverse(), q1 * lam
        else:
            x2x1, x2y1 = lam.inverse(), lam
        got = {
            "x2x1": x2x1,  # x2 x1 = c x1 x2
            "y2x1": lam,  # y2 x1 = c x1 y2
            "x2y1": x2y1,  # x2 y1 = c y1 x2
            "y2y1": lam.inverse(),  # y2 y1 = c y1 y2
            "q1": q1,
            "q2": q2,
            "q1m1": q1 - 1,
        }
        spec._cache["constants"] = got
    return got


def _mono_times_gen(spec: AlgebraSpec, mono: tuple, g: str) -> dict:
    key = (mono, g)
    cache = spec._cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    if spec.flavor == "Affine4":
        out = _affine_times_gen(spec, mono, g)
    else:
        out = _weyl_times_gen(spec, mono, g)
    cache[key] = out
    return out


def _affine_times_gen(spec: AlgebraSpec, mono: tuple, g: str) -> dict:
    k = _GEN_INDEX[g]
    Q = spec.affine_matrix
    c = spec.field.one()
    for j in range(k + 1, 4):
        if mono[j]:
            c = c * Q[j][k] ** mono[j]
    new = list(mono)
    new[k] += 1
    return {tuple(new): c}


def _weyl_times_gen(spec: AlgebraSpec, mono: tuple, g: str) -> dict:
    a1, b1, a2, b2 = mono
    one = spec.field.one()
    K = _constants(spec)
    if g == "x2":
        return {(a1, b1, a2, b2 + 1): one}
    if g == "y2":
        if b2 == 0:
            return {(a1, b1, a2 + 1, 0): one}
        # m x2 y2 = q2 (m y2) x2 + m z1, with z1 = 1 (+ (q1-1) y1 x1 for A2)
        m = (a1, b1, a2, b2 - 1)
        acc: dict = {}
        _add_into(acc, _times_gen_terms(spec, _mono_times_gen(spec, m, "y2"), "x2"), K["q2"])
        _add_into(acc, {m: one}, one)
        if spec.flavor == "A2":
            y1x1 = _times_gen_terms(spec, _mono_times_gen(spec, m, "y1"), "x1")
            _add_into(acc, y1x1, K["q1m1"])
        return acc
    if g == "x1":
        if b2:
            m = (a1, b1, a2, b2 - 1)
            return _scaled(_times_gen_terms(spec, _mono_times_gen(spec, m, "x1"), "x2"), K["x2x1"])
        if a2:
            m = (a1, b1, a2 - 1, 0)
            return _scaled(_times_gen_terms(spec, _mono_times_gen(spec, m, "x1"), "y2"), K["y2x1"])
        return {(a1, b1 + 1, 0, 0): one}
    if g == "y1":
        if b2:
            m = (a1, b1, a2, b2 - 1)
            return _scaled(_times_gen_terms(spec, _mono_times_gen(spec, m, "y1"), "x2"), K["x2y1"])
        if a2:
            m = (a1, b1, a2 - 1, 0)
            return _scaled(_times_gen_terms(spec, _mono_times_gen(spec, m, "y1"), "y2"), K["y2y1"])
        if b1:
            # m x1 y1 = q1 (m y1) x1 + m
            m = (a1, b1 - 1, 0, 0)
            acc = {}
            _add_into(acc, _times_gen_terms(spec, _mono_times_gen(spec, m, "y1"), "x1"), K["q1"])
            _add_into(acc, {m: one}, one)
            return acc
        return {(a1 + 1, 0, 0, 0): one}
    raise KeyError(g)


def _scaled(terms: dict, c) -> dict:
    return {m: v * c for m, v in terms.items()}


def _word(mono: tuple) -> list[str]:
    return [g for g, e in zip(GENERATORS, mono) for _ in range(e)]


def _mono_times_mono(spec: AlgebraSpec, ma: tuple, mb: tuple) -> dict:
    key = ("mm", ma, mb)
    hit = spec._cache.get(key)
    if hit is not None:
        return hit
    terms = {ma: spec.field.one()}
    for g in _word(mb):
        terms = _times_gen_terms(spec, terms, g)
    spec._cache[key] = terms
    return terms


# ---------------------------------------------------------------------------
# elements


class AlgebraElement:
    """Finite linear combination of PBW monomials."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def scalar(cls, spec: AlgebraSpec, c) -> "AlgebraElement":
        return cls(spec, {(0, 0, 0, 0): spec.field(c)})

    def _check(self, other: "AlgebraElement") -> None:
        if other.spec is not self.spec and other.spec != self.spec:
            raise SpecMismatch(f"{self.spec.label()} vs {other.spec.label()}")

    def _lift(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return AlgebraElement.scalar(self.spec, other)

    def __add__(self, other) -> "AlgebraElement":
        other = self._lift(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, 1)
        return AlgebraElement(self.spec, acc)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "AlgebraElement":
        return self._lift(other) - self

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.spec.field(other)
        return AlgebraElement(self.spec, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other) -> "AlgebraElement":
        c = self.spec.field(other)
        return AlgebraElement(self.spec, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative powers are not defined in the algebra")
        out = AlgebraElement.scalar(self.spec, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.spec == other.spec and self.terms == other.terms
        try:
            return self == AlgebraElement.scalar(self.spec, other)
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono: tuple) -> Scalar:
        return self.terms.get(tuple(mono), self.spec.field.zero())

    def to_json(self) -> dict:
        return {
            "terms": [
                {"mono": list(m), "coeff": self.terms[m].to_json()}
                for m in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, spec: AlgebraSpec, obj: dict) -> "AlgebraElement":
        return cls(
            spec,
            {tuple(t["mono"]): scalar_from_json(t["coeff"], spec.field) for t in obj["terms"]},
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda t: (sum(t), t)):
            word = "*".join(
                g if e == 1 else f"{g}^{e}" for g, e in zip(GENERATORS, m) if e
            )
            c = self.terms[m]
            if not word:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(word)
            else:
                parts.append(f"({c})*{word}")
        return " + ".join(parts)


def generator(spec: AlgebraSpec, which: str) -> AlgebraElement:
    if which not in _GEN_INDEX:
        raise ValueError(f"unknown generator {which!r}")
    mono = [0, 0, 0, 0]
    mono[_GEN_INDEX[which]] = 1
    return AlgebraElement(spec, {tuple(mono): spec.field.one()})


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    spec = a.spec
    acc: dict = {}
    for mb, cb in b.terms.items():
        for ma, ca in a.terms.items():
            _add_into(acc, _mono_times_mono(spec, ma, mb), ca * cb)
    return AlgebraElement(spec, acc)


def z_element(spec: AlgebraSpec, i: int) -> AlgebraElement:
    """z_0 = 1 and z_i = x_i y_i - y_i x_i, computed by multiplication."""
    if i == 0:
        return AlgebraElement.scalar(spec, 1)
    x, y = generator(spec, f"x{i}"), generator(spec, f"y{i}")
    return x * y - y * x


def commutes(a: AlgebraElement, b: AlgebraElement) -> bool:
    return a * b == b * a


def is_central(a: AlgebraElement) -> bool:
    return all(commutes(a, generator(a.spec, g)) for g in GENERATORS)


# ---------------------------------------------------------------------------
# derived identities


@dataclass
class LemmaReport:
    spec: AlgebraSpec
    checks: list = field(default_factory=list)  # (identity, n or None, passed)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def failures(self) -> list:
        return [(name, n) for name, n, ok in self.checks if not ok]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "checks": [{"identity": name, "n": n, "passed": ok} for name, n, ok in self.checks],
            "all_passed": self.all_passed,
        }


def verify_lemma_identities(spec: AlgebraSpec, nmax: int) -> LemmaReport:
    """Check the commutation identities among x_i, y_i and z_i, and the
    power identities for x_i^n y_i and x_i y_i^n, for n = 1..nmax."""
    if spec.flavor == "Affine4":
        raise ValueError("the derived identities concern the Weyl flavors only")
    if nmax < 1:
        raise ValueError("nmax must be positive")
    g = {name: generator(spec, name) for name in GENERATORS}
    x = {1: g["x1"], 2: g["x2"]}
    y = {1: g["y1"], 2: g["y2"]}
    q = {1: spec.q1, 2: spec.q2}
    z = {i: z_element(spec, i) for i in (0, 1, 2)}
    one = AlgebraElement.scalar(spec, 1)
    rep = LemmaReport(spec)

    def check(name, ok, n=None):
        rep.checks.append((name, n, bool(ok)))

    if spec.flavor == "A2":
        y1x1, y2x2 = y[1] * x[1], y[2] * x[2]
        check("z1 = 1 + (q1-1) y1x1", z[1] == one + (q[1] - 1) * y1x1)
        check("z2 = 1 + (q1-1) y1x1 + (q2-1) y2x2", z[2] == one + (q[1] - 1) * y1x1 + (q[2] - 1) * y2x2)
        check("z2 = z1 + (q2-1) y2x2", z[2] == z[1] + (q[2] - 1) * y2x2)
        check("x2y2 - q2 y2x2 = z1", x[2] * y[2] - q[2] * (y[2] * x[2]) == z[1])
        for i, j in ((1, 1), (2, 1), (2, 2)):
            check(f"z{i}x{j} = q{j}^-1 x{j}z{i}", z[i] * x[j] == q[j].inverse() * (x[j] * z[i]))
            check(f"z{i}y{j} = q{j} y{j}z{i}", z[i] * y[j] == q[j] * (y[j] * z[i]))
        check("z1x2 = x2z1", commutes(z[1], x[2]))
        check("z1y2 = y2z1", commutes(z[1], y[2]))
        check("z1z2 = z2z1", commutes(z[1], z[2]))
        prev = {1: z[0], 2: z[1]}
    else:
        for i in (1, 2):
            check(f"z{i} = 1 + (q{i}-1) y{i}x{i}", z[i] == one + (q[i] - 1) * (y[i] * x[i]))
        check("z1z2 = z2z1", commutes(z[1], z[2]))
        for i in (1, 2):
            j = 3 - i
            check(f"z{i}x{i} = q{i}^-1 x{i}z{i}", z[i] * x[i] == q[i].inverse() * (x[i] * z[i]))
            check(f"z{i}y{i} = q{i} y{i}z{i}", z[i] * y[i] == q[i] * (y[i] * z[i]))
            check(f"z{i}x{j} = x{j}z{i}", commutes(z[i], x[j]))
            check(f"z{i}y{j} = y{j}z{i}", commutes(z[i], y[j]))
        prev = {1: one, 2: one}

    for i in (1, 2):
        xp, yp = one, one  # x_i^(n-1), y_i^(n-1)
        for n in range(1, nmax + 1):
            qn, qint = q[i] ** n, q_integer(q[i], n)
            xn, yn = xp * x[i], yp * y[i]
            check(
                f"x{i}^n y{i} = q{i}^n y{i}x{i}^n + [n] z{i-1} x{i}^(n-1)",
                xn * y[i] == qn * (y[i] * xn) + qint * (prev[i] * xp),
                n,
            )
            check(
                f"x{i} y{i}^n = q{i}^n y{i}^n x{i} + [n] z{i-1} y{i}^(n-1)",
                x[i] * yn == qn * (yn * x[i]) + qint * (prev[i] * yp),
                n,
            )
            xp, yp = xn, yn
    return rep


# ---------------------------------------------------------------------------
# expression micro-grammar: x1 y1 x2 y2 z1 z2, zeta^e, p/q, ^ * + - ( )

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-z]\w*)|(?P<op>[-+*^()]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at position {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_element(spec: AlgebraSpec, text: str) -> AlgebraElement:
    """Parse e.g. ``"x1*y1"``, ``"2/3*zeta^2*x2^3 - z1"`` into a normal form."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error near token {pos} in {text!r}")
        pos += 1
        return tok

    def integer():
        sign = -1 if peek() == ("op", "-") else 1
        if sign < 0:
            take()
        _, v = take("num")
        if "/" in v:
            raise ValueError("exponents must be integers")
        return sign * int(v)

    def atom():
        kind, v = peek()
        if (kind, v) == ("op", "("):
            take()
            e = expr()
            take("op", ")")
            return e
        if kind == "num":
            take()
            return AlgebraElement.scalar(spec, spec.field(v))
        if kind == "name":
            take()
            if v == "zeta":
                e = 1
                if peek() == ("op", "^"):
                    take()
                    e = integer()
                return AlgebraElement.scalar(spec, spec.zeta(e))
            if v in _GEN_INDEX:
                return generator(spec, v)
            if v in ("z1", "z2"):
                return z_element(spec, int(v[1]))
            raise ValueError(f"unknown identifier {v!r}")
        raise ValueError(f"parse error near token {pos} in {text!r}")

    def factor():
        if peek() == ("op", "-"):
            take()
            return -factor()
        base = atom()
        if peek() == ("op", "^"):
            take()
            return base ** integer()
        return base

    def term():
        out = factor()
        while peek() == ("op", "*"):
            take()
            out = out * factor()
        return out

    def expr():
        out = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            out = out + term() if op == "+" else out - term()
        return out

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result


def monomials_up_to(bounds: Iterable[int]) -> list[tuple]:
    b = list(bounds)
    return [
        (a1, b1, a2, b2)
        for a1 in range(b[0])
        for b1 in range(b[1])
        for a2 in range(b[2])
        for b2 in range(b[3])
    ]
