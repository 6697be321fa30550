"""Exact checks on matrix representations.

Relations, central characters, z-typology, Burnside simplicity, intertwiners,
isomorphism criteria for the closed-form families, and per-spec dimension
tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .exactfield import Scalar
from .fieldmat import (
    EchelonSpace,
    SingularMatrix,
    flatten,
    identity,
    inverse,
    is_zero,
    matmul,
    matpow,
    matsub,
    nullspace,
    scalar_value,
    scale,
)
from .intlinalg import pi_degree_weyl
from .repbuild import (
    CENTRAL_KEYS,
    FamilyParams,
    Representation,
    build_family,
    expected_dim,
    sample_params,
    _norm2,
)
from .weylalg import GENERATORS, AlgebraSpec

__all__ = [
    "NonScalarCentral",
    "VerifyReport",
    "ClassifyResult",
    "DimensionTable",
    "check_relations",
    "central_character",
    "z_typology",
    "burnside_dim",
    "find_intertwiner",
    "is_isomorphic",
    "verify",
    "stated_criterion",
    "empirical_criterion",
    "classify_pair",
    "sample_pairs",
    "dimension_table",
]


class NonScalarCentral(AssertionError):
    pass


def _relations(spec: AlgebraSpec):
    """(name, f(mats) -> residual matrix) for the spec's defining relations."""
    q1, q2, lam = spec.q1, spec.q2, spec.lam

    def comm(a, b, c):
        # a b - c b a
        return lambda m: matsub(matmul(m[a], m[b]), scale(c, matmul(m[b], m[a])))

    def weyl(i, extra):
        q = q1 if i == 1 else q2
        x, y = f"x{i}", f"y{i}"

        def f(m):
            n = len(m[x])
            r = matsub(matmul(m[x], m[y]), scale(q, matmul(m[y], m[x])))
            r = matsub(r, identity(spec.field, n))
            if extra:
                r = matsub(r, scale(q1 - 1, matmul(m["y1"], m["x1"])))
            return r

        return f

    if spec.flavor == "Affine4":
        Q = spec.affine_matrix
        return [
            (f"{GENERATORS[i]}{GENERATORS[j]} - Q{GENERATORS[j]}{GENERATORS[i]}", comm(GENERATORS[i], GENERATORS[j], Q[i][j]))
            for i in range(4)
            for j in range(i + 1, 4)
        ]
    if spec.flavor == "A2":
        cross = [
            ("x1x2 - q1*lam*x2x1", comm("x1", "x2", q1 * lam)),
            ("x1y2 - lam^-1*y2x1", comm("x1", "y2", lam.inverse())),
            ("y1y2 - lam*y2y1", comm("y1", "y2", lam)),
            ("y1x2 - (q1*lam)^-1*x2y1", comm("y1", "x2", (q1 * lam).inverse())),
        ]
        return cross + [
            ("x1y1 - q1*y1x1 - 1", weyl(1, False)),
            ("x2y2 - q2*y2x2 - 1 - (q1-1)*y1x1", weyl(2, True)),
        ]
    cross = [
        ("x1x2 - lam*x2x1", comm("x1", "x2", lam)),
        ("x1y2 - lam^-1*y2x1", comm("x1", "y2", lam.inverse())),
        ("y1y2 - lam*y2y1", comm("y1", "y2", lam)),
        ("y1x2 - lam^-1*x2y1", comm("y1", "x2", lam.inverse())),
    ]
    return cross + [("x1y1 - q1*y1x1 - 1", weyl(1, False)), ("x2y2 - q2*y2x2 - 1", weyl(2, False))]


def check_relations(rep: Representation) -> dict:
    """Relation name -> True when the relation holds exactly as a matrix identity."""
    return {name: is_zero(f(rep.mats)) for name, f in _relations(rep.spec)}


def central_character(rep: Representation) -> dict:
    spec = rep.spec
    powers = {"x1^l1": ("x1", spec.l1), "y1^l1": ("y1", spec.l1), "x2^l": ("x2", spec.l), "y2^l": ("y2", spec.l)}
    out = {}
    for key in CENTRAL_KEYS:
        g, e = powers[key]
        c = scalar_value(matpow(rep.mats[g], e))
        if c is None:
            raise NonScalarCentral(f"{key} does not act as a scalar")
        out[key] = c
    return out


def z_typology(rep: Representation) -> dict:
    out = {}
    for i in (1, 2):
        z = rep.z_matrix(i)
        if is_zero(z):
            out[f"z{i}"] = "zero"
            continue
        try:
            inverse(z)
            out[f"z{i}"] = "invertible"
        except SingularMatrix:
            out[f"z{i}"] = "neither"
    return out


def burnside_dim(rep: Representation) -> int:
    """Dimension of the matrix algebra generated by the four generator actions."""
    n = rep.dim
    target = n * n
    span = EchelonSpace()
    start = identity(rep.field, n)
    span.add(flatten(start))
    queue = [start]
    while queue and len(span) < target:
        m = queue.pop()
        for g in GENERATORS:
            p = matmul(m, rep.mats[g])
            if span.add(flatten(p)) is not None:
                queue.append(p)
    return len(span)


def _intertwiner_space(A: Representation, B: Representation) -> list:
    na, nb = A.dim, B.dim
    rows = []
    for g in GENERATORS:
        ma, mb = A.mats[g], B.mats[g]
        # (ma T - T mb)[i][j] = 0
        for i in range(na):
            for j in range(nb):
                r: dict = {}
                for k in range(na):
                    a = ma[i][k]
                    if a:
                        idx = k * nb + j
                        r[idx] = r.get(idx, 0) + a
                for k in range(nb):
                    b = mb[k][j]
                    if b:
                        idx = i * nb + k
                        r[idx] = r.get(idx, 0) - b
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)
    sols = nullspace(rows, na * nb, A.field)
    zero = A.field.zero()
    return [tuple(tuple(s.get(i * nb + j, zero) for j in range(nb)) for i in range(na)) for s in sols]


def find_intertwiner(A: Representation, B: Representation):
    """A nonzero T with rho_A(g) T = T rho_B(g) for all g, or None.

    An invertible solution is preferred when the solution space contains one
    among its basis vectors or their sum.
    """
    if A.spec != B.spec:
        raise ValueError("intertwiners need representations of the same algebra")
    sols = _intertwiner_space(A, B)
    if not sols:
        return None
    if A.dim == B.dim:
        candidates = list(sols)
        if len(sols) > 1:
            total = sols[0]
            for s in sols[1:]:
                total = tuple(tuple(a + b for a, b in zip(r, t)) for r, t in zip(total, s))
            candidates.append(total)
        for T in candidates:
            try:
                inverse(T)
                return T
            except SingularMatrix:
                continue
    return sols[0]


def is_isomorphic(A: Representation, B: Representation) -> bool:
    if A.dim != B.dim or A.spec != B.spec:
        return False
    T = find_intertwiner(A, B)
    if T is None:
        return False
    try:
        inverse(T)
        return True
    except SingularMatrix:
        return False


@dataclass
class VerifyReport:
    relation_residuals: dict
    central_character: dict | None
    z_typology: dict
    burnside_dim: int
    dim: int
    is_simple: bool
    pi_degree: int | None = None
    notes: list = field(default_factory=list)

    @property
    def relations_ok(self) -> bool:
        return all(self.relation_residuals.values())

    @property
    def ok(self) -> bool:
        return self.relations_ok and self.is_simple and self.central_character is not None

    def to_json(self) -> dict:
        cc = None
        if self.central_character is not None:
            cc = {k: v.to_json() for k, v in sorted(self.central_character.items())}
        return {
            "dim": self.dim,
            "relation_residuals": dict(sorted(self.relation_residuals.items())),
            "relations_ok": self.relations_ok,
            "central_character": cc,
            "z_typology": dict(sorted(self.z_typology.items())),
            "burnside_dim": self.burnside_dim,
            "is_simple": self.is_simple,
            "pi_degree": self.pi_degree,
            "notes": list(self.notes),
        }


def verify(rep: Representation) -> VerifyReport:
    rel = check_relations(rep)
    notes = []
    try:
        cc = central_character(rep)
    except NonScalarCentral as exc:
        cc = None
        notes.append(str(exc))
    bd = burnside_dim(rep)
    pi = None
    if rep.spec.flavor in ("A2", "AltA2"):
        pi = pi_degree_weyl(rep.spec).pi_degree
        if rep.dim > pi:
            notes.append(f"dimension {rep.dim} exceeds the PI degree {pi}")
    return VerifyReport(rel, cc, z_typology(rep), bd, rep.dim, bd == rep.dim**2, pi, notes)


# ---------------------------------------------------------------------------
# isomorphism criteria


def _exists(rng_a, rng_b, pred) -> bool:
    return any(pred(a, b) for a, b in product(rng_a, rng_b))


def stated_criterion(spec: AlgebraSpec, family: str, pa: dict, pb: dict, reading: str = "default") -> bool:
    """The stated isomorphism criterion for a family, on full parameter dicts.

    For M1 the second condition compares the y2^{l2}-eigenvalues of the
    generating vectors (reading ``beta2``, the default); reading ``alpha2``
    compares alpha2 instead.  "q" in the M5 and M6 criteria is read as q1.
    """
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    L1, L2 = range(spec.l1), range(spec.l2)
    if family == "M1":
        if reading == "alpha2":
            second = pa["alpha2"] == pb["alpha2"]
        else:
            second = _beta2(spec, pa) == _beta2(spec, pb)
        return (
            pa["alpha1"] == pb["alpha1"]
            and second
            and _exists(L1, L2, lambda a, b: pa["gamma1"] == q1**a * pb["gamma1"]
                        and pa["gamma2"] == q1**a * q2**b * pb["gamma2"])
        )  # fmt: skip
    if family == "M2":
        return (
            pa["eta1"] == pb["eta1"]
            and pa["xi2"] == pb["xi2"]
            and _exists(L1, L2, lambda a, b: pa["zeta1"] == q1**-a * pb["zeta1"]
                        and pa["zeta2"] == q1**-a * q2**b * pb["zeta2"])
        )  # fmt: skip
    if family == "M3":
        return (
            pa["xi1"] == pb["xi1"]
            and pa["eta2"] == pb["eta2"]
            and _exists(L1, L2, lambda a, b: pa["zeta1"] == q1**a * pb["zeta1"]
                        and pa["zeta2"] == q1**a * q2**-b * pb["zeta2"])
        )  # fmt: skip
    if family == "M4":
        return (
            pa["eta1"] == pb["eta1"]
            and pa["eta2"] == pb["eta2"]
            and _exists(L1, L2, lambda a, b: pa["zeta1"] == q1**-a * pb["zeta1"]
                        and pa["zeta2"] == q1**-a * q2**-b * pb["zeta2"])
        )  # fmt: skip
    if family == "M5":
        return pa["alpha"] == pb["alpha"] and any(
            pa["xi"] == (q1 * lam) ** r * pb["xi"] and pa["gamma"] == q1**r * pb["gamma"] for r in L1
        )
    if family == "M6":
        return pa["beta"] == pb["beta"] and any(
            pa["xi"] * pb["xi"] * (1 - q2) == lam**r * pb["gamma"] and pa["gamma"] == q1**-r * pb["gamma"]
            for r in L1
        )
    raise ValueError(f"no stated criterion for {family}")


def empirical_criterion(spec: AlgebraSpec, family: str, pa: dict, pb: dict) -> bool | None:
    """Criteria that replace a stated one found to disagree with intertwiners."""
    if family == "M6":
        return pa["beta"] == pb["beta"] and pa["xi"] == pb["xi"]
    return None


def _beta2(spec: AlgebraSpec, p: dict) -> Scalar:
    """Eigenvalue of y2^{l2} on the generating vector of an M1 module."""
    return _norm2(spec, p["gamma1"], p["gamma2"], spec.l2) / p["alpha2"]


@dataclass
class ClassifyResult:
    family: str
    stated_criterion: bool
    intertwiner_found: bool
    alternative_readings: dict = field(default_factory=dict)
    empirical_criterion: bool | None = None

    @property
    def agree(self) -> bool:
        return self.stated_criterion == self.intertwiner_found

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "stated_criterion": self.stated_criterion,
            "intertwiner_found": self.intertwiner_found,
            "agree": self.agree,
            "alternative_readings": dict(sorted(self.alternative_readings.items())),
            "empirical_criterion": self.empirical_criterion,
        }


def classify_pair(spec: AlgebraSpec, fa: FamilyParams, fb: FamilyParams) -> ClassifyResult:
    if fa.family != fb.family:
        raise ValueError("classify_pair compares two members of one family")
    ra, rb = build_family(spec, fa), build_family(spec, fb)
    fam = fa.family
    res = ClassifyResult(
        fam,
        stated_criterion(spec, fam, ra.params, rb.params),
        is_isomorphic(ra, rb),
    )
    if fam == "M1":
        res.alternative_readings["alpha2"] = stated_criterion(spec, fam, ra.params, rb.params, "alpha2")
    res.empirical_criterion = empirical_criterion(spec, fam, ra.params, rb.params)
    return res


def sample_pairs(spec: AlgebraSpec, family: str, count: int, rng: random.Random) -> list:
    """Pairs of parameter sets: identical, criterion-matched, and perturbed."""
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    out = []
    kinds = ("same", "matched", "perturbed")
    while len(out) < count:
        kind = kinds[len(out) % 3]
        fa = sample_params(spec, family, rng)
        s = dict(fa.scalars)
        if kind == "same":
            pass
        elif kind == "perturbed":
            key = rng.choice(sorted(s))
            s[key] = s[key] + rng.choice((1, 2, -1))
            if not s[key]:
                continue
        elif family == "M1":
            a, b = rng.randrange(spec.l1), rng.randrange(spec.l2)
            beta2 = _beta2(spec, s)
            s["gamma1"] = q1**-a * s["gamma1"]
            s["gamma2"] = q1**-a * q2**-b * s["gamma2"]
            n2 = _norm2(spec, s["gamma1"], s["gamma2"], spec.l2)
            if not n2 or not beta2:
                continue
            s["alpha2"] = n2 / beta2
        elif family == "M2":
            s["zeta2"] = q2 ** -rng.randrange(spec.l2) * s["zeta2"]
        elif family == "M3":
            s["zeta1"] = q1 ** -rng.randrange(spec.l1) * s["zeta1"]
        elif family == "M5":
            r = rng.randrange(spec.l1)
            s["xi"] = (q1 * lam) ** -r * s["xi"]
            s["gamma"] = q1**-r * s["gamma"]
        # M4 and M6 have no free orbit parameters: a matched pair is identical
        out.append((kind, fa, FamilyParams(family, s)))
    return out


# ---------------------------------------------------------------------------
# dimension tables

TABLE_FAMILIES = (
    ("A2", "M1"), ("A2", "M2"), ("A2", "M3"), ("A2", "M4"), ("A2", "M5"), ("A2", "M6"),
    ("A2", "TorsionCase1"), ("A2", "TorsionCase2"), ("A2", "TorsionCase3"), ("A2", "TorsionCase4"),
    ("AltA2", "Alt51"), ("AltA2", "Alt52"), ("AltA2", "Alt53"), ("AltA2", "Alt54"),
)  # fmt: skip


@dataclass
class DimensionTable:
    spec: AlgebraSpec
    seed: int
    rows: list
    pi_degree: int

    @property
    def max_dim(self) -> int:
        return max(r["dim"] for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.max_dim == self.pi_degree and all(
            r["dim"] == r["predicted_dim"] and r["simple"] and r["relations_ok"] for r in self.rows
        )

    def failures(self) -> list:
        bad = [
            r["family"]
            for r in self.rows
            if not (r["dim"] == r["predicted_dim"] and r["simple"] and r["relations_ok"])
        ]
        if self.max_dim != self.pi_degree:
            bad.append(f"max dim {self.max_dim} != PI degree {self.pi_degree}")
        return bad

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "seed": self.seed,
            "pi_degree": self.pi_degree,
            "max_dim": self.max_dim,
            "ok": self.ok,
            "rows": self.rows,
        }

    def to_text(self) -> str:
        head = ("family", "flavor", "dim", "predicted_dim", "simple", "relations", "z1", "z2")
        body = [
            (
                r["family"],
                r["flavor"],
                str(r["dim"]),
                str(r["predicted_dim"]),
                "yes" if r["simple"] else "no",
                "ok" if r["relations_ok"] else "FAIL",
                r["z1"],
                r["z2"],
            )
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in (head, *body)) for i in range(len(head))]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [
            f"spec: {self.spec.label()}  seed: {self.seed}",
            fmt.format(*head).rstrip(),
            fmt.format(*("-" * w for w in widths)).rstrip(),
        ]
        lines += [fmt.format(*row).rstrip() for row in body]
        lines.append(f"max dim {self.max_dim}, PI degree {self.pi_degree}: {'equal' if self.max_dim == self.pi_degree else 'DIFFERENT'}")
        return "\n".join(lines) + "\n"


def dimension_table(spec: AlgebraSpec, seed: int = 0) -> DimensionTable:
    """One sampled witness per family, verified, with its predicted dimension."""
    rng = random.Random(seed)
    base = spec.with_flavor("A2")
    alt = spec.with_flavor("AltA2")
    rows = []
    for flavor, fam in TABLE_FAMILIES:
        s = base if flavor == "A2" else alt
        rep = build_family(s, sample_params(s, fam, rng))
        rel = check_relations(rep)
        z = z_typology(rep)
        rows.append(
            {
                "family": fam,
                "flavor": flavor,
                "dim": rep.dim,
                "predicted_dim": expected_dim(s, fam),
                "simple": burnside_dim(rep) == rep.dim**2,
                "relations_ok": all(rel.values()),
                "z1": z["z1"],
                "z2": z["z2"],
            }
        )
    return DimensionTable(base, seed, rows, pi_degree_weyl(base).pi_degree)
