"""Finite-dimensional simple modules as explicit matrices.

Modules are right modules: a vector is a row, generator g acts by the matrix
``mats[g]`` on the right, and a product ``ab`` acts by ``mats[a] @ mats[b]``.

Six closed-form families cover the z1-torsionfree modules of the two-parameter
algebra; the remaining cases come from a brute-force cyclic-module oracle
(``build_cyclic``) that works inside the finite quotient of the algebra by a
central character.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .exactfield import Scalar, scalar_from_json
from .fieldmat import (
    EchelonSpace,
    SingularMatrix,
    identity,
    inverse,
    matmul,
    matsub,
)
from .weylalg import (
    GENERATORS,
    AlgebraElement,
    AlgebraSpec,
    _mono_times_gen,
    generator,
    z_element,
)

__all__ = [
    "Representation",
    "CyclicConstraint",
    "FamilyParams",
    "ZeroParameterError",
    "FlavorError",
    "InconsistentParameters",
    "DimensionMismatch",
    "OracleBudgetExceeded",
    "EmptyModule",
    "SingularZError",
    "FAMILIES",
    "build_M1",
    "build_M2",
    "build_M3",
    "build_M4",
    "build_M5",
    "build_M6",
    "build_cyclic",
    "build_torsion_affine",
    "build_alt_case",
    "build_family",
    "transport_theta",
    "expected_dim",
    "sample_params",
    "central_values",
    "oracle_setup",
    "build_from_oracle",
]

ORACLE_BUDGET = 2500
CENTRAL_KEYS = ("x1^l1", "y1^l1", "x2^l", "y2^l")


class ZeroParameterError(ValueError):
    pass


class FlavorError(ValueError):
    pass


class InconsistentParameters(ValueError):
    pass


class DimensionMismatch(AssertionError):
    pass


class OracleBudgetExceeded(ValueError):
    pass


class EmptyModule(ValueError):
    pass


class SingularZError(ValueError):
    pass


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Representation:
    spec: AlgebraSpec
    mats: dict  # generator name -> dim x dim matrix
    basis_labels: tuple
    family: str = "custom"
    params: dict = field(default_factory=dict)
    log: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @property
    def field(self):
        return self.spec.field

    def __getitem__(self, g: str):
        return self.mats[g]

    def action(self, elem: AlgebraElement):
        """Matrix of an algebra element (PBW order y1 x1 y2 x2, left to right)."""
        n = self.dim
        ctx = self.field
        total = tuple((ctx.zero(),) * n for _ in range(n))
        powers: dict = {}

        def power(g, e):
            key = (g, e)
            if key not in powers:
                powers[key] = identity(ctx, n) if e == 0 else matmul(power(g, e - 1), self.mats[g])
            return powers[key]

        for mono, c in elem.terms.items():
            m = identity(ctx, n)
            for g, e in zip(GENERATORS, mono):
                if e:
                    m = matmul(m, power(g, e))
            total = tuple(tuple(t + c * a for t, a in zip(r, s)) for r, s in zip(total, m))
        return total

    def z_matrix(self, i: int):
        x, y = self.mats[f"x{i}"], self.mats[f"y{i}"]
        return matsub(matmul(x, y), matmul(y, x))

    def with_mats(self, mats: dict, **changes) -> "Representation":
        data = dict(
            spec=self.spec,
            mats=mats,
            basis_labels=self.basis_labels,
            family=self.family,
            params=self.params,
            log=self.log,
        )
        data.update(changes)
        return Representation(**data)

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "family": self.family,
            "dim": self.dim,
            "basis": [list(b) if isinstance(b, tuple) else b for b in self.basis_labels],
            "params": {k: v.to_json() for k, v in sorted(self.params.items())},
            "log": _json_log(self.log),
        }
        for g in ("x1", "y1", "x2", "y2"):
            out[g] = [[a.to_json() for a in row] for row in self.mats[g]]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        spec = AlgebraSpec.from_json(obj["spec"])
        ctx = spec.field
        mats = {
            g: tuple(tuple(scalar_from_json(a, ctx) for a in row) for row in obj[g])
            for g in ("x1", "y1", "x2", "y2")
        }
        labels = tuple(tuple(b) if isinstance(b, list) else b for b in obj["basis"])
        params = {k: scalar_from_json(v, ctx) for k, v in obj.get("params", {}).items()}
        log = obj.get("log", {})
        if "derived_scalars" in log:
            log = dict(log)
            log["derived_scalars"] = {
                k: scalar_from_json(v, ctx) for k, v in log["derived_scalars"].items()
            }
        return cls(spec, mats, labels, obj.get("family", "custom"), params, log)


def _json_log(log: dict) -> dict:
    out = {}
    for k, v in sorted(log.items()):
        if isinstance(v, dict):
            out[k] = {kk: (vv.to_json() if isinstance(vv, Scalar) else vv) for kk, vv in sorted(v.items())}
        elif isinstance(v, Scalar):
            out[k] = v.to_json()
        else:
            out[k] = v
    return out


@dataclass(frozen=True)
class CyclicConstraint:
    """w . element = eigenvalue * w (``annihilates`` means eigenvalue zero)."""

    kind: str
    element: AlgebraElement
    eigenvalue: Scalar | None = None

    def __post_init__(self):
        if self.kind not in ("annihilates", "eigen"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "eigen":
            if self.eigenvalue is None:
                raise ValueError("eigen constraint needs an eigenvalue")
            if not self.eigenvalue:
                object.__setattr__(self, "kind", "annihilates")
                object.__setattr__(self, "eigenvalue", None)

    @classmethod
    def ann(cls, elem: AlgebraElement) -> "CyclicConstraint":
        return cls("annihilates", elem)

    @classmethod
    def eig(cls, elem: AlgebraElement, value) -> "CyclicConstraint":
        return cls("eigen", elem, elem.spec.field(value))

    def residual(self) -> AlgebraElement:
        if self.kind == "annihilates":
            return self.element
        return self.element - self.eigenvalue


FAMILIES = (
    "M1", "M2", "M3", "M4", "M5", "M6",
    "TorsionCase1", "TorsionCase2", "TorsionCase3", "TorsionCase4",
    "Alt51", "Alt52", "Alt53", "Alt54",
)  # fmt: skip

_FAMILY_SCALARS = {
    "M1": ("alpha1", "alpha2", "gamma1", "gamma2"),
    "M2": ("eta1", "xi2", "zeta2"),
    "M3": ("xi1", "eta2", "zeta1"),
    "M4": ("eta1", "eta2"),
    "M5": ("alpha", "xi", "gamma"),
    "M6": ("beta", "xi"),
    "TorsionCase1": ("zeta2", "xi2", "mu"),
    "TorsionCase2": ("t", "xi"),
    "TorsionCase3": ("t", "eta"),
    "TorsionCase4": ("t",),
    "Alt51": ("alpha1", "alpha2", "gamma1", "gamma2"),
    "Alt52": ("alpha", "xi", "gamma"),
    "Alt53": ("t", "xi", "zeta2"),
    "Alt54": ("mu", "xi"),
}
_OPTIONAL = {"M2": ("zeta1",), "M3": ("zeta2",), "M4": ("zeta1", "zeta2"), "M6": ("gamma",)}


@dataclass(frozen=True)
class FamilyParams:
    family: str
    scalars: dict

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def to_json(self) -> dict:
        return {"family": self.family, "scalars": {k: v.to_json() for k, v in sorted(self.scalars.items())}}


# ---------------------------------------------------------------------------
# helpers


def _require_flavor(spec: AlgebraSpec, flavor: str) -> None:
    if spec.flavor != flavor:
        raise FlavorError(f"this construction needs the {flavor} flavor, got {spec.flavor}")


def _nonzero(**named) -> None:
    for name, v in named.items():
        if not v:
            raise ZeroParameterError(f"parameter must be nonzero: {name}")


def _coerce(spec: AlgebraSpec, **named) -> dict:
    return {k: spec.field(v) for k, v in named.items()}


def _forced(spec: AlgebraSpec, name: str, supplied, value: Scalar, log: dict) -> Scalar:
    if supplied is not None and spec.field(supplied) != value:
        raise InconsistentParameters(
            f"{name} is determined by the other constraints: expected {value}, got {spec.field(supplied)}"
        )
    log.setdefault("derived_scalars", {})[name] = value
    return value


def _norm1(spec: AlgebraSpec, gamma: Scalar, n: int) -> Scalar:
    """Eigenvalue of y1^n x1^n on a z1-eigenvector with eigenvalue gamma."""
    q = spec.q1
    out = spec.field.one()
    for j in range(n):
        out = out * (q ** -j * gamma - 1) / (q - 1)
    return out


def _norm2(spec: AlgebraSpec, gamma1: Scalar, gamma2: Scalar, n: int) -> Scalar:
    """Eigenvalue of y2^n x2^n on a joint (z1, z2)-eigenvector."""
    q = spec.q2
    low = gamma1 if spec.flavor == "A2" else spec.field.one()
    out = spec.field.one()
    for j in range(n):
        out = out * (q ** -j * gamma2 - low) / (q - 1)
    return out


def _dense(ctx, n: int, entries: dict):
    z = ctx.zero()
    rows = [[z] * n for _ in range(n)]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return tuple(tuple(r) for r in rows)


def _grid(spec: AlgebraSpec):
    labels = tuple((a1, a2) for a1 in range(spec.l1) for a2 in range(spec.l2))
    return labels, {lab: i for i, lab in enumerate(labels)}


# ---------------------------------------------------------------------------
# closed-form families (basis lexicographic in (a1, a2))


def build_M1(spec: AlgebraSpec, alpha1, alpha2, gamma1, gamma2) -> Representation:
    """Basis e(a1, a2) = v x2^a2 x1^a1 where v x_i^{l_i} = alpha_i v, v z_i = gamma_i v."""
    _require_flavor(spec, "A2")
    p = _coerce(spec, alpha1=alpha1, alpha2=alpha2, gamma1=gamma1, gamma2=gamma2)
    _nonzero(**p)
    a_1, a_2, g1, g2 = p["alpha1"], p["alpha2"], p["gamma1"], p["gamma2"]
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    l1, l2 = spec.l1, spec.l2
    labels, ix = _grid(spec)
    x1, x2, y1, y2 = {}, {}, {}, {}
    for a1, a2 in labels:
        i = ix[a1, a2]
        x1[i, ix[(a1 + 1) % l1, a2]] = a_1 if a1 == l1 - 1 else spec.field.one()
        c = (q1 * lam) ** a1
        x2[i, ix[a1, (a2 + 1) % l2]] = a_2 * c if a2 == l2 - 1 else c
        if a1:
            y1[i, ix[a1 - 1, a2]] = (q1**a1 * g1 - 1) / (q1 - 1)
        else:
            y1[i, ix[l1 - 1, a2]] = (g1 - 1) / ((q1 - 1) * a_1)
        c = lam ** -a1
        if a2:
            y2[i, ix[a1, a2 - 1]] = c * (q2**a2 * g2 - g1) / (q2 - 1)
        else:
            y2[i, ix[a1, l2 - 1]] = c * (g2 - g1) / ((q2 - 1) * a_2)
    ctx, n = spec.field, len(labels)
    mats = {g: _dense(ctx, n, e) for g, e in (("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2))}
    return Representation(spec, mats, labels, "M1", p, {})


def build_M2(spec: AlgebraSpec, eta1, xi2, zeta2, zeta1=None) -> Representation:
    """Basis e(a1, a2) = w x2^a2 y1^a1 with w x1 = 0.

    w z1 = q1^{-1} w is forced by w x1 = 0, so ``zeta1`` is optional.
    """
    _require_flavor(spec, "A2")
    p = _coerce(spec, eta1=eta1, xi2=xi2, zeta2=zeta2)
    _nonzero(xi2=p["xi2"], zeta2=p["zeta2"])
    log: dict = {}
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    z1 = _forced(spec, "zeta1", zeta1, q1.inverse(), log)
    e1, x_2, z2 = p["eta1"], p["xi2"], p["zeta2"]
    l1, l2 = spec.l1, spec.l2
    labels, ix = _grid(spec)
    x1, x2, y1, y2 = {}, {}, {}, {}
    for a1, a2 in labels:
        i = ix[a1, a2]
        if a1:
            x1[i, ix[a1 - 1, a2]] = (q1 ** (1 - a1) * z1 - 1) / (q1 - 1)
        # both branches carry (q1 lambda)^(-a1): x2 y1 = q1 lambda y1 x2
        c = (q1 * lam) ** -a1
        x2[i, ix[a1, (a2 + 1) % l2]] = x_2 * c if a2 == l2 - 1 else c
        if a1 < l1 - 1:
            y1[i, ix[a1 + 1, a2]] = spec.field.one()
        elif e1:
            y1[i, ix[0, a2]] = e1
        c = lam**a1
        if a2:
            y2[i, ix[a1, a2 - 1]] = c * (q2**a2 * z2 - z1) / (q2 - 1)
        else:
            y2[i, ix[a1, l2 - 1]] = c * (z2 - z1) / ((q2 - 1) * x_2)
    ctx, n = spec.field, len(labels)
    mats = {g: _dense(ctx, n, e) for g, e in (("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2))}
    p["zeta1"] = z1
    return Representation(spec, mats, labels, "M2", p, log)


def build_M5(spec: AlgebraSpec, alpha, xi, gamma) -> Representation:
    """Basis v x1^r with v x2 = xi v, v z1 = gamma v, and z2 acting as zero."""
    _require_flavor(spec, "A2")
    p = _coerce(spec, alpha=alpha, xi=xi, gamma=gamma)
    _nonzero(**p)
    a, x, g = p["alpha"], p["xi"], p["gamma"]
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    l1 = spec.l1
    x1, x2, y1, y2 = {}, {}, {}, {}
    for r in range(l1):
        x1[r, (r + 1) % l1] = a if r == l1 - 1 else spec.field.one()
        if r:
            y1[r, r - 1] = (g * q1**r - 1) / (q1 - 1)
        else:
            # wraps to the last basis vector v x1^(l1-1)
            y1[0, l1 - 1] = (g - 1) / ((q1 - 1) * a)
        x2[r, r] = (q1 * lam) ** r * x
        y2[r, r] = g * lam ** -r / (x * (1 - q2))
    ctx = spec.field
    mats = {k: _dense(ctx, l1, e) for k, e in (("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2))}
    return Representation(spec, mats, tuple((r,) for r in range(l1)), "M5", p, {})


def build_M6(spec: AlgebraSpec, beta, xi, gamma=None) -> Representation:
    """Basis w y1^r with w x1 = 0, w x2 = xi w, and z2 acting as zero.

    The z1-eigenvalue of w is forced to q1^{-1}; it is logged as ``gamma``.
    """
    _require_flavor(spec, "A2")
    p = _coerce(spec, beta=beta, xi=xi)
    _nonzero(xi=p["xi"])
    log: dict = {}
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    g = _forced(spec, "gamma", gamma, q1.inverse(), log)
    b, x = p["beta"], p["xi"]
    l1 = spec.l1
    x1, x2, y1, y2 = {}, {}, {}, {}
    for r in range(l1):
        if r:
            x1[r, r - 1] = (q1**-r - 1) / (q1 - 1)
        if r < l1 - 1:
            y1[r, r + 1] = spec.field.one()
        elif b:
            y1[r, 0] = b
        # y1 x2 = (q1 lambda)^{-1} x2 y1 and y1 y2 = lambda y2 y1 fix the diagonals
        x2[r, r] = (q1 * lam) ** -r * x
        y2[r, r] = lam**r * g / (x * (1 - q2))
    ctx = spec.field
    mats = {k: _dense(ctx, l1, e) for k, e in (("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2))}
    p["gamma"] = g
    return Representation(spec, mats, tuple((r,) for r in range(l1)), "M6", p, log)


def build_M3(spec: AlgebraSpec, xi1, eta2, zeta1, zeta2=None) -> Representation:
    """Basis w y2^a2 x1^a1 with w x2 = 0; built by the cyclic oracle.

    w z2 = q2^{-1} zeta1 w is forced by w x2 = 0.
    """
    _require_flavor(spec, "A2")
    p = _coerce(spec, xi1=xi1, eta2=eta2, zeta1=zeta1)
    _nonzero(xi1=p["xi1"], zeta1=p["zeta1"])
    log: dict = {}
    z2 = _forced(spec, "zeta2", zeta2, p["zeta1"] / spec.q2, log)
    p["zeta2"] = z2
    cons, chi = oracle_setup(spec, FamilyParams("M3", p))
    labels, _ = _grid(spec)
    words = [("y2",) * a2 + ("x1",) * a1 for a1, a2 in labels]
    rep = build_cyclic(spec, cons, chi, basis_words=words, basis_labels=labels)
    _check_dim(rep, spec.l1 * spec.l2, "M3")
    return rep.with_mats(rep.mats, family="M3", params=p, log={**rep.log, **log})


def build_M4(spec: AlgebraSpec, eta1, eta2, zeta1=None, zeta2=None) -> Representation:
    """Basis w y2^a2 y1^a1 with w x1 = w x2 = 0; built by the cyclic oracle.

    Both z-eigenvalues of w are forced: q1^{-1} and q1^{-1} q2^{-1}.
    """
    _require_flavor(spec, "A2")
    p = _coerce(spec, eta1=eta1, eta2=eta2)
    log: dict = {}
    z1 = _forced(spec, "zeta1", zeta1, spec.q1.inverse(), log)
    z2 = _forced(spec, "zeta2", zeta2, (spec.q1 * spec.q2).inverse(), log)
    p.update(zeta1=z1, zeta2=z2)
    cons, chi = oracle_setup(spec, FamilyParams("M4", p))
    labels, _ = _grid(spec)
    words = [("y2",) * a2 + ("y1",) * a1 for a1, a2 in labels]
    rep = build_cyclic(spec, cons, chi, basis_words=words, basis_labels=labels)
    _check_dim(rep, spec.l1 * spec.l2, "M4")
    return rep.with_mats(rep.mats, family="M4", params=p, log={**rep.log, **log})


def _gens(spec: AlgebraSpec) -> dict:
    return {g: generator(spec, g) for g in GENERATORS}


def _check_dim(rep: Representation, expected: int, what: str) -> None:
    if rep.dim != expected:
        raise DimensionMismatch(f"{what}: expected dimension {expected}, oracle produced {rep.dim}")


# ---------------------------------------------------------------------------
# the cyclic-module oracle


def _bounds(spec: AlgebraSpec) -> tuple:
    return (spec.l1, spec.l1, spec.l, spec.l)


def _central_factors(spec: AlgebraSpec, chi: dict) -> tuple:
    missing = [k for k in CENTRAL_KEYS if k not in chi]
    if missing:
        raise ValueError(f"central character is missing {missing}")
    # PBW slots (y1, x1, y2, x2)
    return tuple(spec.field(chi[k]) for k in ("y1^l1", "x1^l1", "y2^l", "x2^l"))


def build_cyclic(
    spec: AlgebraSpec,
    constraints: list,
    central_character: dict,
    basis_words: list | None = None,
    basis_labels: list | None = None,
    budget: int = ORACLE_BUDGET,
) -> Representation:
    """The cyclic module A_chi / J generated by a vector w subject to constraints.

    A_chi is the algebra modulo x1^l1, y1^l1, x2^l, y2^l minus their scalars;
    it has the restricted PBW monomials as a basis.  J is the right ideal
    spanned by (c - value) * m over constraints c and monomials m, built as
    the smallest subspace containing the constraints and closed under right
    multiplication by the generators.  Monomials are ordered by total degree
    and then exponent tuple; the non-leading monomials give the quotient basis.
    """
    bounds = _bounds(spec)
    N = 1
    for b in bounds:
        N *= b
    if N > budget:
        raise OracleBudgetExceeded(f"ambient quotient has {N} basis elements, budget is {budget}")
    chi = _central_factors(spec, central_character)
    monos = sorted(product(*(range(b) for b in bounds)), key=lambda m: (sum(m), m))
    index = {m: i for i, m in enumerate(monos)}

    def to_vec(terms: dict) -> dict:
        v: dict = {}
        for m, c in terms.items():
            red = []
            for e, b, s in zip(m, bounds, chi):
                k, r = divmod(e, b)
                if k:
                    c = c * s**k
                red.append(r)
            if not c:
                continue
            i = index[tuple(red)]
            w = v.get(i)
            w = c if w is None else w + c
            if w:
                v[i] = w
            else:
                v.pop(i, None)
        return v

    right = {g: [to_vec(_mono_times_gen(spec, m, g)) for m in monos] for g in GENERATORS}

    def apply(v: dict, g: str) -> dict:
        out: dict = {}
        table = right[g]
        for i, c in v.items():
            for j, a in table[i].items():
                w = out.get(j)
                w = c * a if w is None else w + c * a
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
        return out

    ideal = EchelonSpace()
    queue = [to_vec(c.residual().terms) for c in constraints]
    while queue:
        row = ideal.add(queue.pop())
        if row is not None:
            queue.extend(apply(row, g) for g in GENERATORS)
    basis_idx = [i for i in range(N) if i not in ideal.rows]
    if not basis_idx:
        raise EmptyModule("the constraints are inconsistent: the cyclic module is zero")
    pos = {i: k for k, i in enumerate(basis_idx)}
    n = len(basis_idx)
    ctx = spec.field
    mats = {}
    for g in GENERATORS:
        rows = []
        for i in basis_idx:
            r = ideal.reduce(right[g][i])
            rows.append({pos[j]: c for j, c in r.items()})
        mats[g] = _dense(ctx, n, {(a, b): c for a, r in enumerate(rows) for b, c in r.items()})
    labels = tuple(monos[i] for i in basis_idx)
    log = {"oracle": {"ambient_dim": N, "ideal_dim": len(ideal), "quotient_dim": n}}
    rep = Representation(spec, mats, labels, "cyclic", {}, log)
    if basis_words is not None:
        rep = _rebase(rep, basis_words, basis_labels)
    return rep


def _rebase(rep: Representation, words: list, labels) -> Representation:
    """Change to the basis {w . word}; w is the class of the unit monomial."""
    ctx = rep.field
    n = rep.dim
    if len(words) != n:
        raise DimensionMismatch(f"{len(words)} basis words for a module of dimension {n}")
    start = rep.basis_labels.index((0, 0, 0, 0))
    w = tuple(ctx.one() if i == start else ctx.zero() for i in range(n))
    rows = []
    for word in words:
        v = (w,)
        for g in word:
            v = matmul(v, rep.mats[g])
        rows.append(v[0])
    P = tuple(rows)
    try:
        Pinv = inverse(P)
    except SingularMatrix:
        raise DimensionMismatch("the proposed basis words are linearly dependent") from None
    mats = {g: matmul(matmul(P, m), Pinv) for g, m in rep.mats.items()}
    return rep.with_mats(mats, basis_labels=tuple(labels or words))


# ---------------------------------------------------------------------------
# z1-torsion modules of the two-parameter algebra

TORSION_PATTERNS = ("torsionfree", "y2", "x2", "both")


def _torsion_c(spec: AlgebraSpec) -> Scalar:
    # z1 = 0 gives y1 x1 = -1/(q1 - 1)
    return -(spec.q1 - 1).inverse()


def expected_dim(spec: AlgebraSpec, family: str) -> int:
    l1, l2, l = spec.l1, spec.l2, spec.l
    table = {
        "M1": l1 * l2, "M2": l1 * l2, "M3": l1 * l2, "M4": l1 * l2,
        "M5": l1, "M6": l1,
        "TorsionCase1": l,
        "TorsionCase2": spec.ord_q1_lambda(),
        "TorsionCase3": spec.ord_lambda(),
        "TorsionCase4": 1,
        "Alt51": l1 * l2, "Alt52": l1,
        "Alt53": _lcm(spec.ord_lambda(), l2),
        "Alt54": spec.ord_lambda(),
    }  # fmt: skip
    return table[family]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _torsion_kernel_monomial(spec: AlgebraSpec) -> tuple:
    """(a0, b0) with a0 = l1/gcd(l1, l2) and q1^a0 q2^b0 = 1.

    x1^a0 x2^b0 commutes with z2 and x2^l2 once z1 acts as zero; its
    gcd(l1, l2)-th power is a scalar multiple of x1^l1 x2^(g b0).
    """
    g = gcd(spec.l1, spec.l2)
    a0 = spec.l1 // g
    b0 = next(b for b in range(spec.l2) if (spec.e1 * a0 + spec.e2 * b) % spec.l == 0)
    return a0, b0


def build_torsion_affine(spec: AlgebraSpec, pattern: str, scalars: dict) -> Representation:
    """z1 acts as zero; ``pattern`` names which of x2, y2 also act as zero.

    torsionfree: zeta2 (z2 on w), xi2 (x2^l2 on w), mu (x1^a0 x2^b0 on w)
    y2:          t (x1^o on w, o = ord(q1 lambda)), xi (x2 on w)
    x2:          t (x1^r on w, r = ord(lambda)), eta (y2 on w)
    both:        t (x1 on w)
    """
    _require_flavor(spec, "A2")
    if pattern not in TORSION_PATTERNS:
        raise ValueError(f"unknown torsion pattern {pattern!r}")
    s = {k: spec.field(v) for k, v in scalars.items()}
    g = _gens(spec)
    c1 = _torsion_c(spec)
    l, l1, l2 = spec.l, spec.l1, spec.l2
    zero = spec.field.zero()
    log: dict = {}
    cons = [CyclicConstraint.ann(z_element(spec, 1))]
    if pattern == "torsionfree":
        _nonzero(zeta2=s["zeta2"], xi2=s["xi2"], mu=s["mu"])
        a0, b0 = _torsion_kernel_monomial(spec)
        u = g["x1"] ** a0 * g["x2"] ** b0
        ug = u ** gcd(l1, l2)
        ((mono, eps),) = ug.terms.items()
        # mu^g = eps * alpha * xi2^(b/l2) with mono = x1^l1 x2^b
        alpha = s["mu"] ** gcd(l1, l2) / (eps * s["xi2"] ** (mono[3] // l2))
        cons += [
            CyclicConstraint.eig(z_element(spec, 2), s["zeta2"]),
            CyclicConstraint.eig(g["x2"] ** l2, s["xi2"]),
            CyclicConstraint.eig(u, s["mu"]),
        ]
        x2l = s["xi2"] ** (l // l2)
        y2l = _norm2(spec, zero, s["zeta2"], l) / x2l
        log["derived_scalars"] = {"alpha": alpha}
        log["kernel_monomial"] = [0, a0, 0, b0]
        family = "TorsionCase1"
    elif pattern == "y2":
        _nonzero(t=s["t"], xi=s["xi"])
        o = spec.ord_q1_lambda()
        alpha = s["t"] ** (l1 // o)
        cons += [
            CyclicConstraint.ann(g["y2"]),
            CyclicConstraint.eig(g["x2"], s["xi"]),
            CyclicConstraint.eig(g["x1"] ** o, s["t"]),
        ]
        x2l, y2l = s["xi"] ** l, zero
        family = "TorsionCase2"
    elif pattern == "x2":
        _nonzero(t=s["t"], eta=s["eta"])
        r = spec.ord_lambda()
        alpha = s["t"] ** (l1 // r)
        cons += [
            CyclicConstraint.ann(g["x2"]),
            CyclicConstraint.eig(g["y2"], s["eta"]),
            CyclicConstraint.eig(g["x1"] ** r, s["t"]),
        ]
        x2l, y2l = zero, s["eta"] ** l
        family = "TorsionCase3"
    else:
        _nonzero(t=s["t"])
        alpha = s["t"] ** l1
        cons += [
            CyclicConstraint.ann(g["x2"]),
            CyclicConstraint.ann(g["y2"]),
            CyclicConstraint.eig(g["x1"], s["t"]),
        ]
        x2l = y2l = zero
        family = "TorsionCase4"
    chi = {"x1^l1": alpha, "y1^l1": c1**l1 / alpha, "x2^l": x2l, "y2^l": y2l}
    rep = build_cyclic(spec, cons, chi)
    _check_dim(rep, expected_dim(spec, family), f"{family} ({pattern})")
    return rep.with_mats(rep.mats, family=family, params=s, log={**rep.log, **log})


# ---------------------------------------------------------------------------
# the alternative algebra

ALT_CASES = ("torsionfree-pair", "z2-torsion", "z1-torsion", "both-torsion")


def build_alt_case(spec: AlgebraSpec, case: str, scalars: dict) -> Representation:
    """Simple modules of the alternative algebra by z-torsion type.

    torsionfree-pair: alpha1, alpha2, gamma1, gamma2 (transported from M1)
    z2-torsion:       alpha (x1^l1), xi (x2 on w), gamma (z1 on w)
    z1-torsion:       t (x1 on w), xi (x2^m on w), zeta2 (z2 on w)
    both-torsion:     mu (y1 on w), xi (x2^r on w)
    """
    _require_flavor(spec, "AltA2")
    if case not in ALT_CASES:
        raise ValueError(f"unknown alternative case {case!r}")
    s = {k: spec.field(v) for k, v in scalars.items()}
    if case == "torsionfree-pair":
        m1 = build_M1(spec.with_flavor("A2"), s["alpha1"], s["alpha2"], s["gamma1"], s["gamma2"])
        rep = transport_theta(m1)
        return rep.with_mats(rep.mats, family="Alt51", params=m1.params)
    g = _gens(spec)
    l, l1, l2 = spec.l, spec.l1, spec.l2
    q1, q2 = spec.q1, spec.q2
    if case == "z2-torsion":
        _nonzero(alpha=s["alpha"], xi=s["xi"], gamma=s["gamma"])
        a, x, gm = s["alpha"], s["xi"], s["gamma"]
        cons = [
            CyclicConstraint.ann(z_element(spec, 2)),
            CyclicConstraint.eig(g["x2"], x),
            CyclicConstraint.eig(z_element(spec, 1), gm),
        ]
        # z2 = 0 makes y2 = x2^{-1} / (1 - q2)
        chi = {
            "x1^l1": a,
            "y1^l1": _norm1(spec, gm, l1) / a,
            "x2^l": x**l,
            "y2^l": (x * (1 - q2)) ** -l,
        }
        family = "Alt52"
    elif case == "z1-torsion":
        _nonzero(t=s["t"], xi=s["xi"], zeta2=s["zeta2"])
        t, x, z2 = s["t"], s["xi"], s["zeta2"]
        m = _lcm(spec.ord_lambda(), l2)
        eta = _norm2(spec, None, z2, m) / x
        cons = [
            CyclicConstraint.ann(z_element(spec, 1)),
            CyclicConstraint.eig(g["x1"], t),
            CyclicConstraint.eig(z_element(spec, 2), z2),
            CyclicConstraint.eig(g["x2"] ** m, x),
            CyclicConstraint.eig(g["y2"] ** m, eta),
        ]
        c1 = -(q1 - 1).inverse()
        chi = {"x1^l1": t**l1, "y1^l1": (c1 / t) ** l1, "x2^l": x ** (l // m), "y2^l": eta ** (l // m)}
        family = "Alt53"
    else:
        _nonzero(mu=s["mu"], xi=s["xi"])
        mu, x = s["mu"], s["xi"]
        r = spec.ord_lambda()
        c1, c2 = -(q1 - 1).inverse(), -(q2 - 1).inverse()
        cons = [
            CyclicConstraint.ann(z_element(spec, 1)),
            CyclicConstraint.ann(z_element(spec, 2)),
            CyclicConstraint.eig(g["y1"], mu),
            CyclicConstraint.eig(g["x2"] ** r, x),
        ]
        chi = {
            "x1^l1": (c1 / mu) ** l1,
            "y1^l1": mu**l1,
            "x2^l": x ** (l // r),
            "y2^l": (c2**r / x) ** (l // r),
        }
        family = "Alt54"
    rep = build_cyclic(spec, cons, chi)
    _check_dim(rep, expected_dim(spec, family), f"{family} ({case})")
    return rep.with_mats(rep.mats, family=family, params=s)


def transport_theta(rep: Representation) -> Representation:
    """Pull a z-torsionfree two-parameter module back to the alternative algebra.

    The alternative generators act by x1, z1^{-1} x2, y1, y2.
    """
    _require_flavor(rep.spec, "A2")
    try:
        z1inv = inverse(rep.z_matrix(1))
        inverse(rep.z_matrix(2))
    except SingularMatrix:
        raise SingularZError("transport needs z1 and z2 to act invertibly") from None
    mats = dict(rep.mats)
    mats["x2"] = matmul(z1inv, rep.mats["x2"])
    return rep.with_mats(mats, spec=rep.spec.with_flavor("AltA2"), family=f"theta({rep.family})")


# ---------------------------------------------------------------------------
# dispatch and sampling


def build_family(spec: AlgebraSpec, fp: FamilyParams) -> Representation:
    s = dict(fp.scalars)
    allowed = set(_FAMILY_SCALARS[fp.family]) | set(_OPTIONAL.get(fp.family, ()))
    unknown = set(s) - allowed
    if unknown:
        raise ValueError(f"unknown scalars for {fp.family}: {sorted(unknown)}")
    missing = set(_FAMILY_SCALARS[fp.family]) - set(s)
    if missing:
        raise ValueError(f"missing scalars for {fp.family}: {sorted(missing)}")
    f = fp.family
    if f == "M1":
        return build_M1(spec, **s)
    if f == "M2":
        return build_M2(spec, **s)
    if f == "M3":
        return build_M3(spec, **s)
    if f == "M4":
        return build_M4(spec, **s)
    if f == "M5":
        return build_M5(spec, **s)
    if f == "M6":
        return build_M6(spec, **s)
    if f.startswith("Torsion"):
        pattern = TORSION_PATTERNS[int(f[-1]) - 1]
        return build_torsion_affine(spec, pattern, s)
    case = ALT_CASES[int(f[-1]) - 1]
    return build_alt_case(spec, case, s)


def generic_scalar(spec: AlgebraSpec, rng: random.Random) -> Scalar:
    """zeta^k + n with |n| >= 3: never zero and never a root of unity."""
    return spec.zeta(rng.randrange(spec.l)) + rng.choice((3, 4, 5, 7, -3, -4))


def sample_params(spec: AlgebraSpec, family: str, rng: random.Random) -> FamilyParams:
    return FamilyParams(family, {k: generic_scalar(spec, rng) for k in _FAMILY_SCALARS[family]})


def central_values(spec: AlgebraSpec, fp: FamilyParams) -> dict:
    """Scalars expected for x1^l1, y1^l1, x2^l, y2^l on the family's module."""
    s = {k: spec.field(v) for k, v in fp.scalars.items()}
    l, l1, l2 = spec.l, spec.l1, spec.l2
    zero = spec.field.zero()
    f = fp.family
    if f in ("M1", "Alt51"):
        a2 = s["alpha2"] ** (l // l2)
        out = {
            "x1^l1": s["alpha1"],
            "y1^l1": _norm1(spec, s["gamma1"], l1) / s["alpha1"],
            "x2^l": a2,
            "y2^l": _norm2(spec.with_flavor("A2"), s["gamma1"], s["gamma2"], l) / a2,
        }
        if f == "Alt51":
            # x2 becomes z1^{-1} x2, and z1^l acts as gamma1^l
            out["x2^l"] = a2 / s["gamma1"] ** l
        return out
    if f == "M2":
        z1 = spec.q1.inverse()
        return {
            "x1^l1": zero,
            "y1^l1": s["eta1"],
            "x2^l": s["xi2"] ** (l // l2),
            "y2^l": (_norm2(spec, z1, s["zeta2"], l2) / s["xi2"]) ** (l // l2),
        }
    if f == "M3":
        return {
            "x1^l1": s["xi1"],
            "y1^l1": _norm1(spec, s["zeta1"], l1) / s["xi1"],
            "x2^l": zero,
            "y2^l": s["eta2"] ** (l // l2),
        }
    if f == "M4":
        return {"x1^l1": zero, "y1^l1": s["eta1"], "x2^l": zero, "y2^l": s["eta2"] ** (l // l2)}
    if f == "M5":
        y2 = s["gamma"] / ((1 - spec.q2) * s["xi"])
        return {
            "x1^l1": s["alpha"],
            "y1^l1": _norm1(spec, s["gamma"], l1) / s["alpha"],
            "x2^l": s["xi"] ** l,
            "y2^l": y2**l,
        }
    if f == "M6":
        y2 = spec.q1.inverse() / ((1 - spec.q2) * s["xi"])
        return {"x1^l1": zero, "y1^l1": s["beta"], "x2^l": s["xi"] ** l, "y2^l": y2**l}
    raise ValueError(f"no closed-form central character for {f}")


def oracle_setup(spec: AlgebraSpec, fp: FamilyParams) -> tuple:
    """Constraints on the generating vector and central character for M1..M6.

    Forced eigenvalues (zeta1 of M2 and M4, zeta2 of M3 and M4, gamma of M6)
    are filled in when absent.
    """
    _require_flavor(spec, "A2")
    s = {k: spec.field(v) for k, v in fp.scalars.items()}
    q1, q2 = spec.q1, spec.q2
    g = _gens(spec)
    z = {i: z_element(spec, i) for i in (1, 2)}
    l1, l2 = spec.l1, spec.l2
    f = fp.family
    E, A = CyclicConstraint.eig, CyclicConstraint.ann
    if f == "M1":
        cons = [
            E(g["x1"] ** l1, s["alpha1"]),
            E(g["x2"] ** l2, s["alpha2"]),
            E(z[1], s["gamma1"]),
            E(z[2], s["gamma2"]),
        ]
    elif f == "M2":
        s.setdefault("zeta1", q1.inverse())
        cons = [
            A(g["x1"]),
            E(g["x2"] ** l2, s["xi2"]),
            E(g["y1"] ** l1, s["eta1"]),
            E(z[1], s["zeta1"]),
            E(z[2], s["zeta2"]),
        ]
    elif f == "M3":
        s.setdefault("zeta2", s["zeta1"] / q2)
        cons = [
            A(g["x2"]),
            E(g["x1"] ** l1, s["xi1"]),
            E(g["y2"] ** l2, s["eta2"]),
            E(z[1], s["zeta1"]),
            E(z[2], s["zeta2"]),
        ]
    elif f == "M4":
        s.setdefault("zeta1", q1.inverse())
        s.setdefault("zeta2", (q1 * q2).inverse())
        cons = [
            A(g["x1"]),
            A(g["x2"]),
            E(g["y1"] ** l1, s["eta1"]),
            E(g["y2"] ** l2, s["eta2"]),
            E(z[1], s["zeta1"]),
            E(z[2], s["zeta2"]),
        ]
    elif f == "M5":
        cons = [A(z[2]), E(g["x2"], s["xi"]), E(z[1], s["gamma"]), E(g["x1"] ** l1, s["alpha"])]
    elif f == "M6":
        s.setdefault("gamma", q1.inverse())
        cons = [A(g["x1"]), E(g["x2"], s["xi"]), A(z[2]), E(z[1], s["gamma"]), E(g["y1"] ** l1, s["beta"])]
    else:
        raise ValueError(f"no oracle setup for {f}")
    return cons, central_values(spec, FamilyParams(f, s))


def build_from_oracle(spec: AlgebraSpec, fp: FamilyParams) -> Representation:
    cons, chi = oracle_setup(spec, fp)
    rep = build_cyclic(spec, cons, chi)
    return rep.with_mats(rep.mats, family=f"oracle({fp.family})", params=dict(fp.scalars))
