"""Exact and modular permanents, and prime-by-prime congruence scans.

``per_ryser`` and ``per_ryser_mod`` walk the nonempty column subsets in
reflected Gray-code order, so consecutive subsets differ in one column and the
row sums are updated with one addition or subtraction per row.  The subset
index space ``[1, 2**n)`` is cut into a fixed number of contiguous chunks;
each chunk rebuilds its starting row sums from scratch, and the chunk sums are
added in chunk order.  The chunking never depends on the worker count, which
keeps results identical for any thread budget.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import permutations

import numba
import numpy as np

from . import families
from .matrix import MatrixError, RingMatrix

NAIVE_LIMIT = 10
RYSER_LIMIT = 30
DESK_PMAX = 23
# products of two residues must stay below 2**63 in the compiled kernel
_KERNEL_MODULUS_LIMIT = 2**31


class PermanentError(ValueError):
    pass


def _square(m: RingMatrix) -> int:
    if not m.is_square():
        raise MatrixError("permanent of a non-square matrix")
    return m.n_rows


def per_naive(m: RingMatrix, limit: int = NAIVE_LIMIT):
    """Sum over all permutations; the reference oracle."""
    n = _square(m)
    if n > limit:
        raise PermanentError(f"naive permanent refused for n={n} > {limit}")
    rows = m.rows
    total = 0
    for tau in permutations(range(n)):
        prod = 1
        for j in range(n):
            prod = prod * rows[j][tau[j]]
            if prod == 0:
                break
        total += prod
    if m.kind == "mod":
        total %= m.modulus
    return total


def _chunks(n: int, max_chunks: int = 64) -> list[tuple[int, int]]:
    """Split the Gray index range ``[1, 2**n)`` into contiguous pieces."""
    total = (1 << n) - 1
    count = max(1, min(max_chunks, total // 4096 or 1))
    step = -(-total // count)
    return [(lo, min(lo + step, 1 << n)) for lo in range(1, 1 << n, step)]


def _ryser_range_py(a: list[list[int]], start: int, stop: int, modulus: int | None) -> int:
    """Signed Ryser terms ``(-1)**|S| prod_j rowsum_j(S)`` for Gray indices in ``[start, stop)``."""
    n = len(a)
    mask = start ^ (start >> 1)
    rowsum = [sum(r[k] for k in range(n) if mask >> k & 1) for r in a]
    if modulus:
        rowsum = [x % modulus for x in rowsum]
    odd = bin(mask).count("1") & 1
    cols = list(zip(*a))
    total = 0
    g = start
    while True:
        prod = 1
        for x in rowsum:
            prod *= x
            if modulus:
                prod %= modulus
        total = total - prod if odd else total + prod
        if modulus:
            total %= modulus
        g += 1
        if g >= stop:
            break
        bit = (g & -g).bit_length() - 1
        mask ^= 1 << bit
        col = cols[bit]
        if mask >> bit & 1:
            rowsum = [x + y for x, y in zip(rowsum, col)]
        else:
            rowsum = [x - y for x, y in zip(rowsum, col)]
        if modulus:
            rowsum = [x % modulus for x in rowsum]
        odd ^= 1
    return total


@numba.njit(cache=True, nogil=True)
def _ryser_range_kernel(a, modulus, start, stop):  # pragma: no cover - compiled
    n = a.shape[0]
    mask = start ^ (start >> 1)
    rowsum = np.zeros(n, dtype=np.int64)
    odd = 0
    for k in range(n):
        if (mask >> k) & 1:
            odd ^= 1
            for j in range(n):
                rowsum[j] = (rowsum[j] + a[j, k]) % modulus
    total = 0
    g = start
    while True:
        prod = 1
        for j in range(n):
            prod = (prod * rowsum[j]) % modulus
        if odd:
            total = (total - prod + modulus) % modulus
        else:
            total = (total + prod) % modulus
        g += 1
        if g >= stop:
            break
        bit = 0
        while not (g >> bit) & 1:
            bit += 1
        mask ^= 1 << bit
        if (mask >> bit) & 1:
            for j in range(n):
                rowsum[j] = (rowsum[j] + a[j, bit]) % modulus
        else:
            for j in range(n):
                rowsum[j] = (rowsum[j] - a[j, bit] + modulus) % modulus
        odd ^= 1
    return total


def _run_chunks(fn, chunks, threads: int) -> list:
    if threads <= 1 or len(chunks) == 1:
        return [fn(lo, hi) for lo, hi in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: fn(*c), chunks))


def _integer_rows(m: RingMatrix) -> tuple[list[list[int]], int]:
    if m.kind == "integer":
        return [list(r) for r in m.rows], 1
    if m.kind == "rational":
        # the permanent is linear in each row: clear denominators row by row
        rows, scale = [], 1
        for r in m.rows:
            s = reduce(math.lcm, (x.denominator for x in r), 1)
            rows.append([int(x * s) for x in r])
            scale *= s
        return rows, scale
    raise PermanentError(f"permanent over {m.kind} entries is not supported")


def per_ryser(m: RingMatrix, threads: int = 1, limit: int = RYSER_LIMIT):
    """Exact permanent ``(-1)**n * sum_S (-1)**|S| prod_j sum_{k in S} a_jk``."""
    n = _square(m)
    if n > limit:
        raise PermanentError(
            f"exact Ryser refused for n={n} > {limit}; use per_ryser_mod / the modular scan instead"
        )
    a, scale = _integer_rows(m)
    parts = _run_chunks(lambda lo, hi: _ryser_range_py(a, lo, hi, None), _chunks(n), threads)
    total = sum(parts)
    if n % 2:
        total = -total
    if m.kind == "rational":
        return Fraction(total, scale)
    return total


def per_ryser_mod(m: RingMatrix, modulus: int, threads: int = 1) -> int:
    """Permanent of an integer matrix reduced modulo ``modulus``, as a canonical residue."""
    if modulus < 2:
        raise PermanentError("modulus must be at least 2")
    n = _square(m)
    if m.kind == "mod":
        if m.modulus != modulus:
            raise PermanentError("matrix is reduced modulo a different number")
    elif m.kind != "integer":
        raise PermanentError("modular permanent needs an integer matrix")
    a = [[x % modulus for x in r] for r in m.rows]
    chunks = _chunks(n)
    if modulus < _KERNEL_MODULUS_LIMIT:
        arr = np.array(a, dtype=np.int64)
        parts = _run_chunks(lambda lo, hi: int(_ryser_range_kernel(arr, modulus, lo, hi)), chunks, threads)
    else:
        parts = _run_chunks(lambda lo, hi: _ryser_range_py(a, lo, hi, modulus), chunks, threads)
    total = sum(parts) % modulus
    if n % 2:
        total = (-total) % modulus
    return total


# --- conjecture scans -----------------------------------------------------------


@dataclass(frozen=True)
class Conjecture:
    id: str
    family: str
    size_offset: int  # matrix size is p + size_offset
    square_modulus: bool
    odd_only: bool
    statement: str

    def modulus(self, p: int) -> int:
        return p * p if self.square_modulus else p

    def expected(self, p: int) -> int:
        if self.id == "C41i":
            return 3 % p
        if self.id == "C41ii":
            return (1 + 4 * p) % (p * p)
        half = pow(2, -1, p)
        if self.id == "C42":
            return half
        return (-half) % p


CONJECTURES = {
    "C41i": Conjecture("C41i", "A1", -1, False, False, "per[j-k+delta] (size p-1) = 3 mod p"),
    "C41ii": Conjecture("C41ii", "A1", 0, True, True, "per[j-k+delta] (size p) = 1+4p mod p^2"),
    "C42": Conjecture("C42", "B", 0, False, True, "per[|j-k|+delta] (size p) = 1/2 mod p"),
    "S1123": Conjecture("S1123", "ABSDIFF", 0, False, True, "per[|j-k|] (size p) = -1/2 mod p"),
}

_ALIASES = {
    "c41i": "C41i", "4.1i": "C41i", "4.1(i)": "C41i",
    "c41ii": "C41ii", "4.1ii": "C41ii", "4.1(ii)": "C41ii",
    "c42": "C42", "4.2": "C42",
    "s1123": "S1123", "11.23": "S1123", "absdiff": "S1123",
}


def parse_conjecture_id(text: str) -> str:
    key = _ALIASES.get(text.strip().lower())
    if key is None:
        raise PermanentError(f"unknown conjecture id {text!r}")
    return key


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


@dataclass
class ScanRow:
    p: int
    computed: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def to_json(self) -> dict:
        return {"p": self.p, "computed": str(self.computed), "expected": str(self.expected), "pass": self.passed}


@dataclass
class ConjectureReport:
    conjecture_id: str
    rows: list[ScanRow] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def jsonl_rows(self) -> list[dict]:
        return [r.to_json() for r in self.rows]


def scan_conjecture(conj_id: str, p_max: int, thread_budget: int = 1, allow_large: bool = False) -> ConjectureReport:
    """Check one conjectured congruence for every applicable prime ``p <= p_max``."""
    if p_max < 2:
        raise PermanentError("p_max must be at least 2")
    if p_max > DESK_PMAX and not allow_large:
        raise PermanentError(f"p_max > {DESK_PMAX} needs allow_large (runtime doubles per step)")
    conj = CONJECTURES[parse_conjecture_id(conj_id)]
    report = ConjectureReport(conj.id)
    t0 = time.perf_counter()
    for p in primes_upto(p_max):
        if conj.odd_only and p == 2:
            continue
        size = p + conj.size_offset
        mod = conj.modulus(p)
        residue = per_ryser_mod(families.gen(families.FamilyId(conj.family), size), mod, thread_budget)
        report.rows.append(ScanRow(p, residue, conj.expected(p)))
    report.runtime = time.perf_counter() - t0
    return report
