"""Generators for the structured matrix families and the A025276 sequence.

Indices in entry formulas are 1-based (``j`` is the row, ``k`` the column)
to match how the families are usually written down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .matrix import RingMatrix

TAGS = ("A1", "A2", "B", "ABSDIFF", "T", "TTILDE", "HANKEL")

A025276_PREFIX = (1, 0, 0, 1, 2, 4, 8, 17, 38, 88)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyId:
    tag: str
    j0: int | None = None
    k0: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise FamilyError(f"unknown family {self.tag!r}")
        indexed = self.tag in ("T", "TTILDE")
        if indexed != (self.j0 is not None and self.k0 is not None):
            raise FamilyError(f"{self.tag} {'needs' if indexed else 'takes no'} (j0, k0) indices")

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        """Parse ``a1``, ``a2``, ``b``, ``absdiff``, ``hankel``, ``t:j0,k0``, ``ttilde:j0,k0``."""
        s = text.strip().lower()
        simple = {"a1": "A1", "a2": "A2", "b": "B", "absdiff": "ABSDIFF", "hankel": "HANKEL"}
        if s in simple:
            return cls(simple[s])
        m = re.fullmatch(r"(t|ttilde):(\d+),(\d+)", s)
        if m:
            return cls(m.group(1).upper(), int(m.group(2)), int(m.group(3)))
        raise FamilyError(f"cannot parse family {text!r}")

    def __str__(self):
        if self.j0 is not None:
            return f"{self.tag.lower()}:{self.j0},{self.k0}"
        return self.tag.lower()


def _delta(j: int, k: int) -> int:
    return 1 if j == k else 0


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise FamilyError(f"matrix size must be a positive integer, got {n!r}")


def a1(n: int) -> RingMatrix:
    """``[j - k + delta_jk]``."""
    _check_n(n)
    return RingMatrix([[j - k + _delta(j, k) for k in range(1, n + 1)] for j in range(1, n + 1)])


def a2(n: int) -> RingMatrix:
    """``[2**(j-k) - (-1)**delta_jk]``: 2 on the diagonal, ``2**(j-k) - 1`` elsewhere."""
    _check_n(n)
    rows = [
        [Fraction(2) ** (j - k) - (-1) ** _delta(j, k) for k in range(1, n + 1)]
        for j in range(1, n + 1)
    ]
    return RingMatrix(rows, "rational")


def b(n: int) -> RingMatrix:
    """``[|j - k| + delta_jk]``."""
    _check_n(n)
    return RingMatrix([[abs(j - k) + _delta(j, k) for k in range(1, n + 1)] for j in range(1, n + 1)])


def absdiff(n: int) -> RingMatrix:
    """``[|j - k|]``."""
    _check_n(n)
    return RingMatrix([[abs(j - k) for k in range(1, n + 1)] for j in range(1, n + 1)])


def skew_diff(n: int) -> RingMatrix:
    """``[j - k]``; singular for n >= 3."""
    _check_n(n)
    return RingMatrix([[j - k for k in range(1, n + 1)] for j in range(1, n + 1)])


def pow2_diff(n: int) -> RingMatrix:
    """``[2**(j-k) - 1]``; singular for n >= 3."""
    _check_n(n)
    return RingMatrix(
        [[Fraction(2) ** (j - k) - 1 for k in range(1, n + 1)] for j in range(1, n + 1)], "rational"
    )


def _check_pair(n: int, j0: int, k0: int) -> None:
    if not (1 <= j0 <= n and 1 <= k0 <= n) or j0 == k0:
        raise FamilyError(f"need distinct indices in 1..{n}, got ({j0}, {k0})")


def t(n: int, j0: int, k0: int) -> RingMatrix:
    """Identity with ``-1`` at (j0, k0)."""
    _check_n(n)
    _check_pair(n, j0, k0)
    return RingMatrix(
        [[1 if j == k else (-1 if (j, k) == (j0, k0) else 0) for k in range(1, n + 1)] for j in range(1, n + 1)]
    )


def ttilde(n: int, j0: int, k0: int) -> RingMatrix:
    """Identity with ``+1`` at (j0, k0)."""
    _check_n(n)
    _check_pair(n, j0, k0)
    return RingMatrix(
        [[1 if j == k or (j, k) == (j0, k0) else 0 for k in range(1, n + 1)] for j in range(1, n + 1)]
    )


def gen_a025276(m: int) -> list[int]:
    """First ``m`` terms: seeds 1, 0, 0, 1, then ``a_n = sum_{k<n} a_k a_{n-k}``."""
    if m < 1:
        raise FamilyError("need at least one term")
    a = [0, 1, 0, 0, 1]  # a[0] unused
    for n in range(5, m + 1):
        a.append(sum(a[k] * a[n - k] for k in range(1, n)))
    return a[1 : m + 1]


def gen_hankel(n: int) -> RingMatrix:
    """``[a_{j+k-1}]`` over the A025276 terms."""
    _check_n(n)
    seq = gen_a025276(2 * n - 1)
    return RingMatrix([[seq[j + k - 2] for k in range(1, n + 1)] for j in range(1, n + 1)])


def gen(fam: FamilyId | str, n: int) -> RingMatrix:
    if isinstance(fam, str):
        fam = FamilyId.parse(fam)
    if fam.tag == "A1":
        return a1(n)
    if fam.tag == "A2":
        return a2(n)
    if fam.tag == "B":
        return b(n)
    if fam.tag == "ABSDIFF":
        return absdiff(n)
    if fam.tag == "T":
        return t(n, fam.j0, fam.k0)
    if fam.tag == "TTILDE":
        return ttilde(n, fam.j0, fam.k0)
    return gen_hankel(n)
