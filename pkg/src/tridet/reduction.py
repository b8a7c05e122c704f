"""Executable replay of the congruence-and-deletion evaluation of det[|j-k| + delta_jk].

Orientation of the elementary factors: the displayed products only reproduce
the displayed matrices when each factor written ``T_{j0,k0}`` carries its
``-1`` at position (k0, j0).  So the factor written as ``T_{j0,k0}`` on the
left of a matrix subtracts row j0 from row k0, and the one written as
``T_{k0,j0}`` on the right does the same to the columns.  Here the factors are
built with :func:`families.t` at the transposed position.  The
``T~`` factors are read the same way.

Deletions are not taken from an index formula.  After each conjugation the
row that was just modified must contain exactly one nonzero entry (a 1), and
its column must mirror it; the pair of lines to delete is read off from that.
The formula's prediction (original labels ``a`` and ``a - 3``) is recorded in
the trace for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import families
from .closedforms import det_b_closed
from .matrix import RingMatrix, det_bareiss, identity, matmul

SNAPSHOT_LIMIT = 12
STAGE_DET_LIMIT = 24


class ReductionError(AssertionError):
    """A structural fact the replay relies on does not hold."""

    def __init__(self, message: str, matrix: RingMatrix | None = None):
        super().__init__(message)
        self.matrix = matrix


def _row_op_matrix(size: int, target: int, source: int, coeff: int) -> RingMatrix:
    """Identity plus ``coeff`` at (target, source), 1-based; left-multiplying adds coeff*row source to row target."""
    if coeff == -1:
        return families.t(size, target, source)
    if coeff == 1:
        return families.ttilde(size, target, source)
    raise ValueError("coeff must be +1 or -1")


def chain_matrix(n: int) -> RingMatrix:
    """``P`` with ``C = P B P^T``: the product written ``T_{12} T_{23} ... T_{n-1,n}``.

    Built by applying the elementary row operations to the identity, which is
    the same product evaluated from the right.
    """
    rows = [list(r) for r in identity(n).rows]
    # innermost factor first: row n -= row n-1, then row n-1 -= row n-2, ...
    for j in range(n - 1, 0, -1):
        src, dst = rows[j - 1], rows[j]
        rows[j] = [x - y for x, y in zip(dst, src)]
    return RingMatrix(rows)


def c_pattern(n: int) -> RingMatrix:
    def c(j, k):
        if 1 in (j, k) and j * k != 2:
            return 1
        if abs(j - k) == 1 and j * k != 2:
            return -1
        return 0

    return RingMatrix([[c(j, k) for k in range(1, n + 1)] for j in range(1, n + 1)])


def build_c(n: int) -> RingMatrix:
    """Congruence-transform B and assert the result matches the c_jk pattern entrywise."""
    if n < 3:
        raise ValueError("the reduction needs n >= 3")
    p = chain_matrix(n)
    c = matmul(matmul(p, families.b(n)), p.transpose())
    expected = c_pattern(n)
    for j in range(n):
        for k in range(n):
            if c[j, k] != expected[j, k]:
                raise ReductionError(
                    f"C pattern mismatch at ({j + 1},{k + 1}): got {c[j, k]}, expected {expected[j, k]}", c
                )
    return c


def congruence(m: RingMatrix, target: int, source: int, coeff: int = -1) -> RingMatrix:
    """``E M E^T`` where ``E`` adds ``coeff`` times line ``source`` to line ``target`` (1-based)."""
    e = _row_op_matrix(m.n_rows, target, source, coeff)
    return matmul(matmul(e, m), e.transpose())


@dataclass
class Deletion:
    matrix: RingMatrix
    removed: tuple[int, int]  # 0-based positions (pivot line, partner line)
    sign: int


def delete_unique_pair(m: RingMatrix, pos: int) -> Deletion:
    """Remove line ``pos`` and its partner by a double Laplace expansion.

    Row ``pos`` must hold exactly one nonzero entry, equal to 1, at some
    column ``c != pos``; column ``pos`` must hold exactly one nonzero entry,
    equal to 1, at row ``c``.  Then ``det(m) = sign * det(minor)``.
    """
    row = m.rows[pos]
    nz = [k for k, x in enumerate(row) if x != 0]
    if len(nz) != 1 or row[nz[0]] != 1 or nz[0] == pos:
        raise ReductionError(f"row {pos + 1} is not a unique-1 row: {list(row)}", m)
    c = nz[0]
    col = m.col(pos)
    nzc = [k for k, x in enumerate(col) if x != 0]
    if nzc != [c] or col[c] != 1:
        raise ReductionError(f"column {pos + 1} is not a unique-1 column: {list(col)}", m)
    # expand along row pos at (pos, c), then the minor along the old column pos
    sign = (-1) ** (pos + c)
    c_in_minor = c - (1 if pos < c else 0)
    pos_in_minor = pos - (1 if c < pos else 0)
    sign *= (-1) ** (c_in_minor + pos_in_minor)
    return Deletion(m.delete(rows=(pos, c), cols=(pos, c)), (pos, c), sign)


def deletion_step(m: RingMatrix, k: int, n: int, labels: list[int] | None = None) -> tuple[Deletion, list[int]]:
    """Stage ``k``: subtract line ``n-4k-2`` from line ``n-4k`` (original labels), then delete.

    ``labels`` maps current positions to original 1-based indices; it is
    ``1..size`` when omitted.  Returns the deletion and the surviving labels.
    """
    if labels is None:
        labels = list(range(1, m.n_rows + 1))
    a = n - 4 * k
    b = a - 2
    try:
        pa, pb = labels.index(a), labels.index(b)
    except ValueError:
        raise ReductionError(f"stage {k}: line {a} or {b} was already deleted", m) from None
    conj = congruence(m, pa + 1, pb + 1, -1)
    step = delete_unique_pair(conj, pa)
    keep = [lab for i, lab in enumerate(labels) if i not in step.removed]
    return step, keep


def _pairing(size: int, first: int) -> dict[tuple[int, int], int]:
    """-1 entries pairing consecutive 0-based positions first, first+1; first+2, first+3; ..."""
    out = {}
    for i in range(first, size - 1, 2):
        out[(i, i + 1)] = out[(i + 1, i)] = -1
    return out


def _from_entries(size: int, entries: dict) -> RingMatrix:
    return RingMatrix([[entries.get((i, j), 0) for j in range(size)] for i in range(size)])


def terminal_form(n: int) -> RingMatrix:
    """The displayed shape of the last D matrix for each residue of n mod 4."""
    r = n % 4
    size = (n + r) // 2
    ent: dict = {}
    if r == 0:
        ent.update(_pairing(size, 0))
    elif r == 1:
        for i in range(size):
            ent[(0, i)] = ent[(i, 0)] = 1
        ent.update(_pairing(size, 1))
    else:
        for i in range(size):
            if i != 1:
                ent[(0, i)] = ent[(i, 0)] = 1
        if r == 2:
            ent.update(_pairing(size, 2))
        else:
            ent[(1, 2)] = ent[(2, 1)] = -1
            ent.update(_pairing(size, 3))
    return _from_entries(size, ent)


def m_form(n: int) -> RingMatrix:
    """Displayed result of clearing the first row (n = 1 mod 4) or first row and column (n = 3 mod 4)."""
    d = terminal_form(n)
    size = d.n_rows
    rows = [list(r) for r in d.rows]
    if n % 4 == 1:
        rows[0] = [(n + 1) // 2] + [0] * (size - 1)
    elif n % 4 == 3:
        rows[0] = [(n - 1) // 2, -1] + [0] * (size - 2)
        for i in range(1, size):
            rows[i][0] = -1 if i == 1 else 0
    else:
        raise ValueError("M form only exists for odd n")
    return RingMatrix(rows)


def clear_first_line(d: RingMatrix, both_sides: bool) -> RingMatrix:
    """Apply ``T~`` factors adding every other row (and column, if ``both_sides``) into the first."""
    out = d
    for j in range(2, d.n_rows + 1):
        e = _row_op_matrix(d.n_rows, 1, j, 1)
        out = matmul(e, out)
        if both_sides:
            out = matmul(out, e.transpose())
    return out


@dataclass
class Stage:
    description: str
    dims: int
    det: int | None
    sign: int
    labels: list[int]
    snapshot: RingMatrix | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "description": self.description,
            "dims": self.dims,
            "det": None if self.det is None else str(self.det),
            "sign": self.sign,
            "labels": self.labels,
        }
        if self.note:
            out["note"] = self.note
        if self.snapshot is not None:
            out["matrix"] = [[str(x) for x in r] for r in self.snapshot.rows]
        return out


CASE_NAMES = {0: "n≡0 mod 4", 2: "n≡2 mod 4", 1: "n≡1 mod 4", 3: "n≡3 mod 4"}


def case_value(n: int) -> int:
    """Per-case value of det(B): 1, 0, (n+1)/2, (1-n)/2."""
    return {0: 1, 2: 0, 1: (n + 1) // 2, 3: (1 - n) // 2}[n % 4]


@dataclass
class ReductionTrace:
    n: int
    steps: list[Stage] = field(default_factory=list)
    final_case: str = ""
    final_value: int | None = None
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None and self.final_value is not None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "final_case": self.final_case,
            "final_value": None if self.final_value is None else str(self.final_value),
            "failure": self.failure,
            "steps": [s.to_json() for s in self.steps],
        }


def reduce_and_evaluate(n: int, stage_dets: bool | None = None) -> ReductionTrace:
    """Replay the whole evaluation of det(B) at size n, checking every stage.

    Stage determinants are recomputed by Bareiss for n <= 24 (or when
    ``stage_dets`` is true); otherwise only the start and end are checked.
    """
    if n < 3:
        raise ValueError("the reduction needs n >= 3")
    if stage_dets is None:
        stage_dets = n <= STAGE_DET_LIMIT
    trace = ReductionTrace(n, final_case=CASE_NAMES[n % 4])
    snap = n <= SNAPSHOT_LIMIT
    b = families.b(n)
    det_b = det_bareiss(b)
    trace.steps.append(Stage("B", n, det_b, 1, list(range(1, n + 1)), b if snap else None))

    def check(cond: bool, message: str, matrix: RingMatrix | None = None):
        if not cond:
            raise ReductionError(message, matrix)

    try:
        check(det_bareiss(chain_matrix(n)) == 1, "chain matrix does not have determinant 1")
        for size in {n - 2 * k for k in range(n // 4)} | {(n + n % 4) // 2}:
            # one of each factor kind per size; all are unit triangular
            check(det_bareiss(families.t(size, size, size - 2 if size > 2 else 1)) == 1, "T factor det != 1")
            check(det_bareiss(families.ttilde(size, 1, size)) == 1, "T~ factor det != 1")
        c = build_c(n)
        det_c = det_bareiss(c) if stage_dets else None
        if det_c is not None:
            check(det_c == det_b, f"det(C)={det_c} differs from det(B)={det_b}", c)
        trace.steps.append(Stage("C = P B P^T", n, det_c, 1, list(range(1, n + 1)), c if snap else None))

        cur, labels, sign = c, list(range(1, n + 1)), 1
        for k in range(n // 4):
            a = n - 4 * k
            step, new_labels = deletion_step(cur, k, n, labels)
            deleted = sorted(labels[i] for i in step.removed)
            check(step.sign == -1, f"stage {k}: double expansion sign {step.sign}, expected -1", cur)
            sign *= step.sign
            cur, labels = step.matrix, new_labels
            det_d = det_bareiss(cur) if stage_dets else None
            if det_d is not None:
                check(sign * det_d == det_b, f"stage {k}: det(B) != {sign} * det(D_{cur.n_rows})", cur)
            note = "" if deleted == [a - 3, a] else f"deleted {deleted}, formula predicts {[a - 3, a]}"
            trace.steps.append(
                Stage(
                    f"subtract line {a - 2} from line {a}, delete lines {deleted[1]} and {deleted[0]}",
                    cur.n_rows,
                    det_d,
                    sign,
                    list(labels),
                    cur if snap else None,
                    note,
                )
            )

        check(sign == (-1) ** (n // 4), "sign accumulator disagrees with (-1)^floor(n/4)")
        check(cur.n_rows == (n + n % 4) // 2, f"terminal size {cur.n_rows} != (n + n mod 4)/2")
        check(cur == terminal_form(n), f"terminal matrix does not have the {CASE_NAMES[n % 4]} form", cur)

        r = n % 4
        if r == 2:
            check(all(x == 0 for x in cur.rows[1]), "second row of the terminal matrix is not zero", cur)
        if r in (1, 3):
            m = clear_first_line(cur, both_sides=(r == 3))
            check(m == m_form(n), "clearing the first line does not give the displayed M form", m)
            det_m = det_bareiss(m)
            trace.steps.append(
                Stage("M = T~ ... D" + (" ... T~" if r == 3 else ""), m.n_rows, det_m, sign, list(labels), m if snap else None)
            )
        det_terminal = det_bareiss(cur)
        if r in (1, 3):
            check(det_terminal == det_m, "det(M) differs from det(D)")
        trace.final_value = sign * det_terminal
        check(trace.final_value == case_value(n), f"final value {trace.final_value} != case value {case_value(n)}")
        check(trace.final_value == det_b_closed(n), "final value disagrees with the closed form")
        check(trace.final_value == det_b, "final value disagrees with det(B)")
    except ReductionError as exc:
        trace.failure = str(exc)
    return trace
