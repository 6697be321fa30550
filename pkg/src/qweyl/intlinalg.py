"""Exact integer linear algebra and PI degrees of quantum affine spaces.

The PI degree of a quantum affine space whose commutation scalars are
powers ``q^{B_ij}`` of a primitive l-th root of unity ``q`` depends only on
the invariant factors of the skew-symmetric integer matrix ``B``: they come
in equal pairs ``h_1, h_1, h_2, h_2, ...`` and the degree is the product of
``l / gcd(h_i, l)`` over the pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Sequence

__all__ = [
    "IntMatrix",
    "SNFResult",
    "PIDegreeReport",
    "MinorBudgetExceeded",
    "OddRankError",
    "smith_normal_form",
    "determinantal_divisors",
    "invariant_factors_from_divisors",
    "exponent_matrix",
    "pi_degree_affine",
    "pi_degree_weyl",
]

MINOR_BUDGET = 8


class MinorBudgetExceeded(ValueError):
    pass


class OddRankError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged integer matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def block_diag(cls, *blocks: Sequence[Sequence[int]]) -> "IntMatrix":
        n = sum(len(b) for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, r in enumerate(b):
                for j, x in enumerate(r):
                    out[off + i][off + j] = x
            off += len(b)
        return cls(out)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.entries))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.entries])

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        return cls([[int(x) for x in r] for r in obj["entries"]])


def _bareiss_det(m: list) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Unimodular U, V with U A V = D diagonal and d_1 | d_2 | ...

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block, ties broken row-major.
    """
    m, n = A.rows, A.cols
    a = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SNFResult(IntMatrix(U), IntMatrix(a), IntMatrix(V), tuple(d for d in diag if d))


def determinantal_divisors(A: IntMatrix, budget: int = MINOR_BUDGET) -> list[int]:
    """gcd of all k x k minors for k = 1 .. rank, by brute-force enumeration."""
    if max(A.rows, A.cols) > budget:
        raise MinorBudgetExceeded(
            f"{A.rows}x{A.cols} matrix exceeds the minor-enumeration budget of {budget}"
        )
    out = []
    for k in range(1, min(A.rows, A.cols) + 1):
        g = 0
        for rs in combinations(range(A.rows), k):
            for cs in combinations(range(A.cols), k):
                g = gcd(g, _bareiss_det([[A.entries[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_from_divisors(divisors: Sequence[int]) -> list[int]:
    prev, out = 1, []
    for d in divisors:
        out.append(d // prev)
        prev = d
    return out


def exponent_matrix(spec) -> IntMatrix:
    """Skew-symmetric exponents B with commutation scalars q^{B_ij}, q = zeta_l.

    Rows and columns follow the PBW order (y1, x1, y2, x2).
    """
    return IntMatrix(spec.exponent_rows())


@dataclass(frozen=True)
class PIDegreeReport:
    exponent_matrix: IntMatrix
    l: int
    invariant_factors: tuple
    pi_degree: int
    claims: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "exponent_matrix": self.exponent_matrix.to_json(),
            "l": self.l,
            "invariant_factors": [str(h) for h in self.invariant_factors],
            "claims": dict(self.claims),
            "pi_degree": self.pi_degree,
        }


def pi_degree_affine(B: IntMatrix, l: int) -> PIDegreeReport:
    h = smith_normal_form(B).invariant_factors
    if len(h) % 2:
        raise OddRankError(f"skew-symmetric matrix cannot have odd rank {len(h)}")
    deg = 1
    for i in range(0, len(h), 2):
        deg *= l // gcd(h[i], l)
    return PIDegreeReport(B, l, h, deg)


def pi_degree_weyl(spec) -> PIDegreeReport:
    """PI degree of the quantized Weyl algebra through its associated affine space.

    Also checks the two gcd facts used to collapse the formula to l1*l2:
    gcd(h1, l) = 1 and gcd(h2, l) = s1*s2.
    """
    B = exponent_matrix(spec)
    rep = pi_degree_affine(B, spec.l)
    h = rep.invariant_factors
    claims = {
        "gcd_h1_l_is_1": len(h) >= 1 and gcd(h[0], spec.l) == 1,
        "gcd_h2_l_is_s1s2": len(h) >= 3 and gcd(h[2], spec.l) == spec.s1 * spec.s2,
    }
    return PIDegreeReport(B, spec.l, h, rep.pi_degree, claims)
