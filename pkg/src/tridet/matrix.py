"""Dense exact matrices with Bareiss determinants and exact characteristic polynomials."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

from .exact import ExactError, QuadExt, as_fraction, rat_str

KINDS = ("integer", "rational", "quadext", "mod")


class MatrixError(ValueError):
    pass


def _infer_kind(entries) -> str:
    kind = "integer"
    for x in entries:
        if isinstance(x, QuadExt):
            return "quadext"
        if isinstance(x, bool):
            raise TypeError("bool entries are not allowed")
        if isinstance(x, Fraction):
            kind = "rational"
        elif not isinstance(x, int):
            raise TypeError(f"unsupported entry {x!r}")
    return kind


class RingMatrix:
    """Immutable dense matrix over one scalar kind.

    ``kind`` is one of ``integer`` (int entries), ``rational`` (Fraction),
    ``quadext`` (QuadExt sharing one ``d``) or ``mod`` (canonical residues
    modulo ``modulus``).
    """

    __slots__ = ("rows", "kind", "modulus", "d")

    def __init__(self, rows: Iterable[Sequence], kind: str | None = None, modulus: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise MatrixError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MatrixError("ragged rows")
        flat = [x for r in rows for x in r]
        if kind is None:
            kind = "mod" if modulus is not None else _infer_kind(flat)
        if kind not in KINDS:
            raise MatrixError(f"unknown kind {kind!r}")
        d = None
        if kind == "integer":
            if _infer_kind(flat) != "integer":
                raise MatrixError("integer matrix with non-integer entries")
        elif kind == "rational":
            rows = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        elif kind == "quadext":
            ds = {x.d for x in flat if isinstance(x, QuadExt)}
            if len(ds) != 1:
                raise MatrixError("quadext matrix needs exactly one d")
            d = ds.pop()
            rows = tuple(tuple(x if isinstance(x, QuadExt) else QuadExt.rational(x, d) for x in r) for r in rows)
        elif kind == "mod":
            if modulus is None or modulus < 2:
                raise MatrixError("mod kind needs modulus >= 2")
            rows = tuple(tuple(int(x) % modulus for x in r) for r in rows)
        self.rows = rows
        self.kind = kind
        self.modulus = modulus if kind == "mod" else None
        self.d = d

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        return [x for r in self.rows for x in r]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.rows == other.rows and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.rows, self.modulus))

    def __repr__(self):
        return f"RingMatrix({[list(r) for r in self.rows]!r}, kind={self.kind!r})"

    def _like(self, rows) -> "RingMatrix":
        if self.kind == "mod":
            return RingMatrix(rows, "mod", self.modulus)
        return RingMatrix(rows)

    def transpose(self) -> "RingMatrix":
        return self._like(zip(*self.rows))

    T = property(transpose)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return matmul(self, other)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.shape != other.shape:
            raise MatrixError("shape mismatch")
        return self._like(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        if self.shape != other.shape:
            raise MatrixError("shape mismatch")
        return self._like(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))

    def scale(self, c) -> "RingMatrix":
        return self._like(tuple(c * x for x in r) for r in self.rows)

    def trace(self):
        return sum(self.rows[i][i] for i in range(min(self.shape)))

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "RingMatrix":
        """Copy without the given (0-based) rows and columns."""
        rs, cs = set(rows), set(cols)
        return self._like(
            tuple(x for j, x in enumerate(r) if j not in cs) for i, r in enumerate(self.rows) if i not in rs
        )

    def reduce_mod(self, m: int) -> "RingMatrix":
        if self.kind not in ("integer", "mod"):
            raise MatrixError("only integer matrices reduce modulo m")
        return RingMatrix(self.rows, "mod", m)

    def to_json(self) -> dict:
        if self.kind == "quadext":
            ent = [[x.to_json() for x in r] for r in self.rows]
        elif self.kind == "rational":
            ent = [[rat_str(x) for x in r] for r in self.rows]
        else:
            ent = [[str(x) for x in r] for r in self.rows]
        out = {"rows": self.n_rows, "cols": self.n_cols, "kind": self.kind, "entries": ent}
        if self.kind == "mod":
            out["modulus"] = self.modulus
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "RingMatrix":
        kind = obj["kind"]
        if kind == "quadext":
            rows = [[QuadExt.from_json(x) for x in r] for r in obj["entries"]]
        elif kind == "rational":
            rows = [[Fraction(x) for x in r] for r in obj["entries"]]
        else:
            rows = [[int(x) for x in r] for r in obj["entries"]]
        m = cls(rows, kind, obj.get("modulus"))
        if m.shape != (obj["rows"], obj["cols"]):
            raise MatrixError("dimension fields disagree with entries")
        return m


def identity(n: int, kind: str = "integer") -> RingMatrix:
    one = Fraction(1) if kind == "rational" else 1
    zero = Fraction(0) if kind == "rational" else 0
    return RingMatrix([[one if i == j else zero for j in range(n)] for i in range(n)], kind)


def zeros(n_rows: int, n_cols: int | None = None) -> RingMatrix:
    return RingMatrix([[0] * (n_cols or n_rows) for _ in range(n_rows)])


def matmul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.n_cols != b.n_rows:
        raise MatrixError(f"cannot multiply {a.shape} by {b.shape}")
    if a.kind == "mod" or b.kind == "mod":
        if a.modulus != b.modulus:
            raise MatrixError("moduli differ")
    cols = list(zip(*b.rows))
    rows = [tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a.rows]
    return a._like(rows)


def matvec(m: RingMatrix, v: Sequence) -> list:
    """Exact ``m @ v`` for a plain sequence ``v``."""
    if len(v) != m.n_cols:
        raise MatrixError(f"vector of length {len(v)} against {m.n_cols} columns")
    if m.kind == "quadext":
        for x in v:
            if isinstance(x, QuadExt) and x.d != m.d:
                raise ExactError("vector lives in a different extension")
    out = [sum((x * y for x, y in zip(r, v)), start=0) for r in m.rows]
    if m.kind == "mod":
        out = [x % m.modulus for x in out]
    return out


# --- determinants -----------------------------------------------------------


def _integer_rows(m: RingMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; returns the integer rows and the product of scales."""
    if m.kind == "integer":
        return [list(r) for r in m.rows], 1
    if m.kind != "rational":
        raise MatrixError(f"{m.kind} matrices are not supported here")
    rows, scale = [], 1
    for r in m.rows:
        s = reduce(lcm, (x.denominator for x in r), 1)
        rows.append([int(x * s) for x in r])
        scale *= s
    return rows, scale


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                num = akk * ri[j] - aik * rk[j]
                q, r = divmod(num, prev)
                if r:
                    raise AssertionError(f"inexact Bareiss division at step {k}")
                ri[j] = q
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_bareiss(m: RingMatrix):
    """Exact determinant by fraction-free elimination.

    Rational matrices are scaled to integers row by row and the result is
    divided back, so the return type is ``int`` for integer input and
    ``Fraction`` for rational input.
    """
    if not m.is_square():
        raise MatrixError("determinant of a non-square matrix")
    rows, scale = _integer_rows(m)
    det = _bareiss(rows)
    if m.kind == "rational":
        return Fraction(det, scale)
    return det


def det_cofactor(m: RingMatrix, limit: int = 8):
    """Laplace expansion along the first row.  Any scalar kind; ``n <= limit``."""
    if not m.is_square():
        raise MatrixError("determinant of a non-square matrix")
    n = m.n_rows
    if n > limit:
        raise MatrixError(f"cofactor expansion refused for n={n} > {limit}")
    rows = m.rows

    def expand(r: int, cols: tuple[int, ...]):
        if len(cols) == 1:
            return rows[r][cols[0]]
        total = 0
        for idx, c in enumerate(cols):
            x = rows[r][c]
            if x == 0:
                continue
            minor = expand(r + 1, cols[:idx] + cols[idx + 1 :])
            total = total + x * minor if idx % 2 == 0 else total - x * minor
        return total

    out = expand(0, tuple(range(n)))
    if m.kind == "mod":
        out %= m.modulus
    return out


def rank(m: RingMatrix) -> int:
    """Rank over Q by fraction-free elimination."""
    a, _ = _integer_rows(m)
    n_rows, n_cols = len(a), len(a[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            f = a[i][c]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == n_rows:
            break
    return r


# --- characteristic polynomial -------------------------------------------------


class Poly:
    """Polynomial with rational coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [as_fraction(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c) if c else (Fraction(0),)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "Poly") -> "Poly":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: RingMatrix) -> RingMatrix:
        """Horner evaluation at a square matrix (used for Cayley-Hamilton checks)."""
        n = m.n_rows
        eye = identity(n, "rational")
        acc = eye.scale(Fraction(0))
        for c in reversed(self.coeffs):
            acc = matmul(acc, m) + eye.scale(c)
        return acc

    def __repr__(self):
        return f"Poly({[rat_str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            terms.append((sign, body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]


def charpoly(m: RingMatrix) -> Poly:
    """Monic ``det(xI - M)`` by the Faddeev-LeVerrier recurrence.

    Rational input ``M = N/s`` runs the recurrence on the integer matrix ``N``
    and rescales: the k-th coefficient of ``M`` is that of ``N`` over
    ``s**(n-k)``.  Every division in the integer recurrence is exact.
    """
    if not m.is_square():
        raise MatrixError("characteristic polynomial of a non-square matrix")
    if m.kind == "integer":
        a, s = [list(r) for r in m.rows], 1
    elif m.kind == "rational":
        s = reduce(lcm, (x.denominator for x in m.entries()), 1)
        a = [[int(x * s) for x in r] for r in m.rows]
    else:
        raise MatrixError(f"charpoly over {m.kind} is not supported")
    n = len(a)
    c = [0] * (n + 1)
    c[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I, then c_{n-k} = -tr(A M_k) / k
        if k > 1:
            mk_cols = list(zip(*mk))
            mk = [[sum(x * y for x, y in zip(r, col)) for col in mk_cols] for r in a]
        for i in range(n):
            mk[i][i] += c[n - k + 1]
        tr = sum(sum(x * y for x, y in zip(a[i], (mk[j][i] for j in range(n)))) for i in range(n))
        q, r = divmod(-tr, k)
        if r:
            raise AssertionError("inexact Faddeev-LeVerrier division")
        c[n - k] = q
    return Poly(Fraction(c[k], s ** (n - k)) for k in range(n + 1))
