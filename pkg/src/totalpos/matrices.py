"""Exact matrices over the rationals.

Fraction-free (Bareiss) determinants over a common-denominator integer
lift, minor queries, total-nonnegativity/positivity scans, and the
maximal-minor scan engine that backs general-position certificates.

The scan engine reduces each maximal minor to a small complementary
minor: pick the lexicographically first invertible row basis B and write
every remaining row in B-coordinates (matrix C); then for a row subset I
using k non-basis rows, |det M[I]| = |det B| * |det C[K, Jc]| where Jc is
the complement of the basis positions I occupies.  This turns an
m x m determinant per subset into a k x k one with k <= rows - cols,
which is what makes exhaustive scans of millions of subsets feasible on
a single core.  The direct per-subset path is kept and cross-checked in
tests.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import ScanBudgetError
from .scalars import format_rational

__all__ = [
    "ExactMatrix",
    "MinorQuery",
    "MinorWitness",
    "ScanVerdict",
    "GeneralPositionReport",
    "determinant",
    "minor",
    "matmul",
    "identity",
    "diagonal",
    "is_totally_nonnegative",
    "is_totally_positive",
    "maximal_minor_scan",
]


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable rational matrix; entries[i][j] is the (i+1, j+1) entry."""

    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "ExactMatrix":
        out = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if out:
            width = len(out[0])
            if any(len(row) != width for row in out):
                raise ValueError("ragged rows")
        return cls(out)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        """Submatrix by 0-based index sequences."""
        return ExactMatrix(
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        )

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class MinorQuery:
    """Equal-length, strictly increasing, 1-based row and column index sets."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for name, idx in (("rows", self.rows), ("cols", self.cols)):
            if any(i < 1 for i in idx):
                raise ValueError(f"{name} must be 1-based positive indices")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if len(self.rows) != len(self.cols):
            raise ValueError("rows and cols must have equal length")


class MinorWitness(NamedTuple):
    query: MinorQuery
    value: Fraction


class ScanVerdict(NamedTuple):
    ok: bool
    witness: Optional[MinorWitness]


def _int_lift_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (row, scale)."""
    scale = math.lcm(*(x.denominator for x in row)) if row else 1
    return [x.numerator * (scale // x.denominator) for x in row], scale


def _bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free elimination; exact integer determinant."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * pkk - aik * ak[j]) // prev
        prev = pkk
    return sign * a[n - 1][n - 1]


def determinant(matrix: ExactMatrix) -> Fraction:
    if matrix.rows != matrix.cols:
        raise ValueError("determinant requires a square matrix")
    lifted = []
    denom = 1
    for row in matrix.entries:
        ints, scale = _int_lift_row(row)
        lifted.append(ints)
        denom *= scale
    return Fraction(_bareiss_det(lifted), denom)


def minor(matrix: ExactMatrix, query: MinorQuery) -> Fraction:
    if not query.rows:
        return Fraction(1)
    if query.rows[-1] > matrix.rows or query.cols[-1] > matrix.cols:
        raise ValueError("minor query indices out of range")
    sub = matrix.submatrix([i - 1 for i in query.rows], [j - 1 for j in query.cols])
    return determinant(sub)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise ValueError("inner dimensions must agree")
    bt = list(zip(*b.entries)) if b.entries else []
    return ExactMatrix(
        tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
            for row in a.entries
        )
    )


def identity(n: int) -> ExactMatrix:
    one, zero = Fraction(1), Fraction(0)
    return ExactMatrix(
        tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    )


def diagonal(values: Sequence) -> ExactMatrix:
    zero = Fraction(0)
    vals = [Fraction(v) for v in values]
    n = len(vals)
    return ExactMatrix(
        tuple(tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n))
    )


def _minor_count(rows: int, cols: int) -> int:
    # sum over k >= 1 of C(rows, k) * C(cols, k), by Vandermonde
    return math.comb(rows + cols, rows) - 1


def _total_scan(matrix: ExactMatrix, strict: bool, size_guard: int) -> ScanVerdict:
    r, c = matrix.rows, matrix.cols
    count = _minor_count(r, c)
    if count > size_guard:
        raise ScanBudgetError(
            f"total-minor scan needs {count} minors, over the guard {size_guard}"
        )
    from itertools import combinations

    for k in range(1, min(r, c) + 1):
        for rows_idx in combinations(range(r), k):
            for cols_idx in combinations(range(c), k):
                value = determinant(matrix.submatrix(rows_idx, cols_idx))
                bad = value <= 0 if strict else value < 0
                if bad:
                    query = MinorQuery(
                        tuple(i + 1 for i in rows_idx), tuple(j + 1 for j in cols_idx)
                    )
                    return ScanVerdict(False, MinorWitness(query, value))
    return ScanVerdict(True, None)


def is_totally_nonnegative(matrix: ExactMatrix, size_guard: int = 10**6) -> ScanVerdict:
    """All minors >= 0; witness is the first violation in (size, lex) order."""
    return _total_scan(matrix, strict=False, size_guard=size_guard)


def is_totally_positive(matrix: ExactMatrix, size_guard: int = 10**6) -> ScanVerdict:
    """All minors > 0; witness is the first violation in (size, lex) order."""
    return _total_scan(matrix, strict=True, size_guard=size_guard)


# ---------------------------------------------------------------------------
# maximal-minor scan engine


@dataclass(frozen=True)
class GeneralPositionReport:
    total_subsets: int
    checked_subsets: int
    mode: str  # "exhaustive" | "sampled"
    failures: tuple[tuple[int, ...], ...]  # 1-based row subsets with det 0
    min_abs_nonzero_det: Optional[Fraction]
    elapsed_ms: int
    seed: Optional[int] = None
    sample_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        out: dict = {
            "total_subsets": self.total_subsets,
            "checked_subsets": self.checked_subsets,
            "mode": self.mode,
        }
        if self.mode == "sampled":
            out["seed"] = self.seed
            out["sample_count"] = self.sample_count
        out["failures"] = [{"rows": list(rows), "det": "0"} for rows in self.failures]
        out["min_abs_nonzero_det"] = (
            format_rational(self.min_abs_nonzero_det)
            if self.min_abs_nonzero_det is not None
            else None
        )
        out["elapsed_ms"] = self.elapsed_ms
        return out


def _unrank_combination(rank: int, n: int, k: int) -> list[int]:
    """Lexicographic unrank of a k-subset of range(n)."""
    out = []
    c = 0
    r = rank
    for pos in range(k):
        while True:
            rem = math.comb(n - c - 1, k - pos - 1)
            if r < rem:
                out.append(c)
                c += 1
                break
            r -= rem
            c += 1
    return out

def _next_combination(comb: list[int], n: int) -> bool:
    """Advance to the lexicographic successor in place; False at the end."""
    k = len(comb)
    i = k - 1
    while i >= 0 and comb[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    comb[i] += 1
    for j in range(i + 1, k):
        comb[j] = comb[j - 1] + 1
    return True


@dataclass(frozen=True)
class _DirectContext:
    int_rows: tuple[tuple[int, ...], ...]
    row_scales: tuple[int, ...]
    n_rows: int
    n_cols: int

    def det_parts(self, subset: Sequence[int]) -> tuple[int, int]:
        """(integer determinant, denominator scale) for one row subset."""
        d = _bareiss_det([list(self.int_rows[i]) for i in subset])
        scale = 1
        for i in subset:
            scale *= self.row_scales[i]
        return d, scale


@dataclass(frozen=True)
class _BasisContext:
    """Complementary-minor reduction through an invertible row basis."""

    n_rows: int
    n_cols: int
    basis_pos: tuple[int, ...]  # row index -> basis position, -1 if non-basis
    coord_pos: tuple[int, ...]  # row index -> C row index, -1 if basis row
    coord_rows: tuple[tuple[int, ...], ...]  # C, integer-lifted per row
    coord_scales: tuple[int, ...]

    def det_parts(self, subset: Sequence[int]) -> tuple[int, int]:
        k_rows = []
        used = []
        for i in subset:
            p = self.basis_pos[i]
            if p >= 0:
                used.append(p)
            else:
                k_rows.append(self.coord_pos[i])
        if not k_rows:
            return 1, 1
        free = sorted(set(range(self.n_cols)) - set(used))
        sub = [[self.coord_rows[r][j] for j in free] for r in k_rows]
        scale = 1
        for r in k_rows:
            scale *= self.coord_scales[r]
        return _bareiss_det(sub), scale


def _scan_chunk(payload):
    ctx, part, stop_on_failure = payload
    failures: list[tuple[int, ...]] = []
    best: Optional[tuple[int, int]] = None  # (|det| numerator part, scale part)
    examined = 0
    if part[0] == "range":
        _, start, count = part
        comb = _unrank_combination(start, ctx.n_rows, ctx.n_cols)
        remaining = count
        while remaining > 0:
            d, scale = ctx.det_parts(comb)
            examined += 1
            if d == 0:
                failures.append(tuple(i + 1 for i in comb))
                if stop_on_failure:
                    break
            else:
                ad = -d if d < 0 else d
                if best is None or ad * best[1] < best[0] * scale:
                    best = (ad, scale)
            remaining -= 1
            if remaining and not _next_combination(comb, ctx.n_rows):
                raise AssertionError("rank range overran the combination space")
    else:
        _, ranks = part
        for rank in ranks:
            comb = _unrank_combination(rank, ctx.n_rows, ctx.n_cols)
            d, scale = ctx.det_parts(comb)
            examined += 1
            if d == 0:
                failures.append(tuple(i + 1 for i in comb))
                if stop_on_failure:
                    break
            else:
                ad = -d if d < 0 else d
                if best is None or ad * best[1] < best[0] * scale:
                    best = (ad, scale)
    return failures, best, examined


def resolve_threads(threads: Optional[int] = None) -> int:
    """--threads flag wins, then TOTALPOS_THREADS, then the CPU count."""
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("TOTALPOS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"TOTALPOS_THREADS is not an integer: {env!r}")
    return os.cpu_count() or 1


def _greedy_row_basis(matrix: ExactMatrix) -> list[int]:
    """Lexicographically first maximal independent row set.

    Maintains a fully reduced (Gauss-Jordan) pivot set so that reducing a
    candidate row against the pivots in any order is conclusive.
    """
    pivots: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen: list[int] = []
    for idx, row in enumerate(matrix.entries):
        work = list(row)
        for pc, prow in pivots:
            factor = work[pc]
            if factor:
                work = [x - factor * y for x, y in zip(work, prow)]
        pc = next((j for j, x in enumerate(work) if x), None)
        if pc is None:
            continue
        inv = 1 / work[pc]
        work = [x * inv for x in work]
        for i, (qc, qrow) in enumerate(pivots):
            factor = qrow[pc]
            if factor:
                pivots[i] = (qc, [x - factor * y for x, y in zip(qrow, work)])
        pivots.append((pc, work))
        chosen.append(idx)
        if len(chosen) == matrix.cols:
            break
    return chosen


def _invert(matrix: ExactMatrix) -> ExactMatrix:
    n = matrix.rows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return ExactMatrix(tuple(tuple(row[n:]) for row in aug))


def _build_context(matrix: ExactMatrix, force_direct: bool):
    """Returns (context, |det B| as a Fraction multiplier for min-abs)."""
    r, c = matrix.rows, matrix.cols
    if not force_direct and r > c:
        basis = _greedy_row_basis(matrix)
        if len(basis) == c:
            b = matrix.submatrix(basis, range(c))
            det_b = determinant(b)
            b_inv = _invert(b)
            basis_pos = [-1] * r
            for pos, i in enumerate(basis):
                basis_pos[i] = pos
            coord_pos = [-1] * r
            coord_rows = []
            coord_scales = []
            b_inv_cols = list(zip(*b_inv.entries))
            for i in range(r):
                if basis_pos[i] >= 0:
                    continue
                coord = [
                    sum(x * y for x, y in zip(matrix.entries[i], col))
                    for col in b_inv_cols
                ]
                ints, scale = _int_lift_row(coord)
                coord_pos[i] = len(coord_rows)
                coord_rows.append(tuple(ints))
                coord_scales.append(scale)
            ctx = _BasisContext(
                n_rows=r,
                n_cols=c,
                basis_pos=tuple(basis_pos),
                coord_pos=tuple(coord_pos),
                coord_rows=tuple(coord_rows),
                coord_scales=tuple(coord_scales),
            )
            return ctx, abs(det_b)
    int_rows = []
    scales = []
    for row in matrix.entries:
        ints, scale = _int_lift_row(row)
        int_rows.append(tuple(ints))
        scales.append(scale)
    ctx = _DirectContext(
        int_rows=tuple(int_rows), row_scales=tuple(scales), n_rows=r, n_cols=c
    )
    return ctx, Fraction(1)


def maximal_minor_scan(
    matrix: ExactMatrix,
    mode: str = "exhaustive",
    *,
    seed: Optional[int] = None,
    sample_count: Optional[int] = None,
    threads: Optional[int] = None,
    exhaustive_limit: int = 10**7,
    fail_fast: bool = False,
    _force_direct: bool = False,
) -> GeneralPositionReport:
    """Scan row subsets of size cols; record every zero-determinant subset.

    Exhaustive mode walks all C(rows, cols) subsets in lexicographic
    order; sampled mode draws sample_count distinct subsets with the
    given seed and walks them in rank order.  The report is identical
    for any thread count.

    With fail_fast the scan runs sequentially and stops at the first
    zero determinant; checked_subsets then counts only the subsets
    actually examined.
    """
    t0 = time.perf_counter()
    r, c = matrix.rows, matrix.cols
    if c < 1:
        raise ValueError("matrix must have at least one column")
    if r < c:
        raise ValueError("need at least as many rows as columns")
    total = math.comb(r, c)
    if mode == "exhaustive":
        if seed is not None or sample_count is not None:
            raise ValueError("seed/sample_count only apply to sampled mode")
        if total > exhaustive_limit:
            raise ScanBudgetError(
                f"exhaustive scan of {total} subsets exceeds the budget "
                f"{exhaustive_limit}; use sampled mode"
            )
        checked = total
        ranks = None
    elif mode == "sampled":
        if seed is None or sample_count is None:
            raise ValueError("sampled mode requires seed and sample_count")
        if sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if sample_count > total:
            raise ValueError(
                f"sample_count {sample_count} exceeds the {total} subsets available"
            )
        ranks = sorted(random.Random(seed).sample(range(total), sample_count))
        checked = sample_count
    else:
        raise ValueError(f"unknown mode: {mode!r}")

    ctx, abs_det_b = _build_context(matrix, _force_direct)

    n_threads = 1 if fail_fast else resolve_threads(threads)
    n_chunks = min(max(1, n_threads * 4), checked) if n_threads > 1 else 1
    bounds = [checked * i // n_chunks for i in range(n_chunks + 1)]
    if ranks is None:
        payloads = [
            (ctx, ("range", bounds[i], bounds[i + 1] - bounds[i]), fail_fast)
            for i in range(n_chunks)
            if bounds[i + 1] > bounds[i]
        ]
    else:
        payloads = [
            (ctx, ("ranks", tuple(ranks[bounds[i]: bounds[i + 1]])), fail_fast)
            for i in range(n_chunks)
            if bounds[i + 1] > bounds[i]
        ]

    if n_threads > 1 and len(payloads) > 1 and checked >= 4096:
        with multiprocessing.get_context("fork").Pool(n_threads) as pool:
            parts = pool.map(_scan_chunk, payloads)
    else:
        parts = []
        for p in payloads:
            part = _scan_chunk(p)
            parts.append(part)
            if fail_fast and part[0]:
                break

    failures: list[tuple[int, ...]] = []
    best: Optional[tuple[int, int]] = None
    examined_total = 0
    for part_failures, part_best, part_examined in parts:
        failures.extend(part_failures)
        examined_total += part_examined
        if part_best is not None:
            if best is None or part_best[0] * best[1] < best[0] * part_best[1]:
                best = part_best
    if fail_fast:
        checked = examined_total
    min_abs = Fraction(best[0], best[1]) * abs_det_b if best is not None else None

    elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
    return GeneralPositionReport(
        total_subsets=total,
        checked_subsets=checked,
        mode=mode,
        failures=tuple(failures),
        min_abs_nonzero_det=min_abs,
        elapsed_ms=elapsed_ms,
        seed=seed,
        sample_count=sample_count,
    )
