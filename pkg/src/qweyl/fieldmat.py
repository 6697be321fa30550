"""Dense and sparse exact linear algebra over a cyclotomic field.

Dense matrices are tuples of row tuples of Scalars.  Sparse vectors are dicts
``index -> Scalar`` with no stored zeros; ``EchelonSpace`` keeps a row-echelon
basis of such vectors, pivoting on the largest index of each row.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exactfield import FieldContext, Scalar

__all__ = [
    "SingularMatrix",
    "EchelonSpace",
    "zeros",
    "identity",
    "matmul",
    "matadd",
    "matsub",
    "scale",
    "matpow",
    "is_zero",
    "scalar_value",
    "inverse",
    "nullspace",
    "flatten",
]


class SingularMatrix(ArithmeticError):
    pass


Matrix = tuple


def zeros(ctx: FieldContext, n: int, m: int | None = None) -> Matrix:
    z = ctx.zero()
    return tuple((z,) * (n if m is None else m) for _ in range(n))


def identity(ctx: FieldContext, n: int) -> Matrix:
    z, o = ctx.zero(), ctx.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def from_rows(rows: Iterable[Sequence[Scalar]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return ()
    zero = A[0][0] * 0
    # skip zero entries; the module matrices are very sparse
    out = []
    for row in A:
        acc = [zero] * len(B[0])
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(tuple(acc))
    return tuple(out)


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def scale(c, A: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in r) for r in A)


def matpow(A: Matrix, n: int) -> Matrix:
    ctx_one = A[0][0] * 0 + 1
    out = tuple(tuple(ctx_one if i == j else ctx_one * 0 for j in range(len(A))) for i in range(len(A)))
    base = A
    while n:
        if n & 1:
            out = matmul(out, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return out


def is_zero(A: Matrix) -> bool:
    return not any(any(r) for r in A)


def scalar_value(A: Matrix):
    """The scalar c if A = c*I, else None."""
    c = A[0][0]
    for i, r in enumerate(A):
        for j, a in enumerate(r):
            if (a != c) if i == j else bool(a):
                return None
    return c


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    one, zero = A[0][0] * 0 + 1, A[0][0] * 0
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise SingularMatrix("matrix is not invertible")
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def flatten(A: Matrix) -> dict:
    """Sparse vector of the entries of A in row-major order."""
    m = len(A[0]) if A else 0
    return {i * m + j: a for i, r in enumerate(A) for j, a in enumerate(r) if a}


class EchelonSpace:
    """Row-echelon basis of a subspace of K^N; pivot = largest index of a row."""

    def __init__(self):
        self.rows: dict[int, dict] = {}  # pivot -> row with that pivot normalised to 1

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set:
        return set(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        rows = self.rows
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            p = max(hits)
            c = v[p]
            for k, a in rows[p].items():
                w = v.get(k)
                w = -c * a if w is None else w - c * a
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)

    def add(self, v: dict) -> dict | None:
        """Insert v; return the new basis row, or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = max(r)
        inv = r[p].inverse()
        r = {k: a * inv for k, a in r.items()}
        self.rows[p] = r
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def nullspace(rows: Sequence[dict], ncols: int, ctx: FieldContext) -> list[dict]:
    """Basis of {x : r.x = 0 for every sparse row r} as sparse vectors."""
    ech: dict[int, dict] = {}  # pivot column -> row normalised at pivot, fully reduced
    for r in rows:
        v = dict(r)
        for p, row in ech.items():
            c = v.get(p)
            if c:
                for k, a in row.items():
                    w = v.get(k)
                    w = -c * a if w is None else w - c * a
                    if w:
                        v[k] = w
                    else:
                        v.pop(k, None)
        if not v:
            continue
        p = min(v)
        inv = v[p].inverse()
        v = {k: a * inv for k, a in v.items()}
        for q, row in ech.items():
            c = row.get(p)
            if c:
                for k, a in v.items():
                    w = row.get(k)
                    w = -c * a if w is None else w - c * a
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
        ech[p] = v
    basis = []
    for f in range(ncols):
        if f in ech:
            continue
        x = {f: ctx.one()}
        for p, row in ech.items():
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis
