"""Exhaustive enumeration of circulant determinants over a box of coefficient vectors.

Vectors are ordered by a mixed-radix index ``sum digit(a_i) * w^i`` with
``w = hi - lo + 1``, so ``a_0`` varies fastest.  Each coordinate runs through
its range centre-out (``0, 1, -1, 2, -2, ...``), so small vectors come first.
The box is cut into blocks that fix the high-order coordinates; each block is
evaluated as one numpy batch through the closed-form norm expressions.  Blocks are independent, so they are
handed to worker processes in contiguous ranges and merged by global index,
which makes every report independent of the worker count.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .circulant import det_bareiss
from .errors import BudgetExceeded, InternalInvariantViolation, NotFoundInBox

SUPPORTED_ORDERS = (2, 4, 8, 16)
DEFAULT_MAX_WORK = 50_000_000
BLOCK_TARGET = 200_000
CROSS_CHECK_STRIDE = 100_000
_INT64_SAFE = 2**60


def max_work() -> int:
    return int(os.environ.get("CIRC16_MAX_WORK", DEFAULT_MAX_WORK))


@dataclass(frozen=True)
class SearchBox:
    n: int
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.n not in SUPPORTED_ORDERS:
            raise ValueError(f"order must be one of {SUPPORTED_ORDERS}, got {self.n}")
        if self.lo > self.hi:
            raise ValueError(f"empty box: lo={self.lo} > hi={self.hi}")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def size(self) -> int:
        return self.width**self.n

    @property
    def low_dims(self) -> int:
        """Number of fastest-varying coordinates evaluated together as one batch."""
        dims = 0
        while dims < self.n and self.width ** (dims + 1) <= max(BLOCK_TARGET, self.width):
            dims += 1
        return max(dims, 1)

    @property
    def n_blocks(self) -> int:
        return self.width ** (self.n - self.low_dims)

    @property
    def digits(self) -> tuple[int, ...]:
        """Entry values in the order a single coordinate runs through them."""
        return tuple(sorted(range(self.lo, self.hi + 1), key=lambda x: (abs(x), x < 0)))

    def vector_at(self, index: int) -> tuple[int, ...]:
        digits = self.digits
        out = []
        for _ in range(self.n):
            index, digit = divmod(index, self.width)
            out.append(digits[digit])
        return tuple(out)

    def index_of(self, vec: tuple[int, ...]) -> int:
        pos = {x: i for i, x in enumerate(self.digits)}
        return sum(pos[x] * self.width**i for i, x in enumerate(vec))

    def int64_safe(self) -> bool:
        # Parseval + AM-GM: any partial product of |f(zeta^l)| is at most (n M^2)^(n/2).
        m = max(abs(self.lo), abs(self.hi))
        return (self.n * m * m) ** (self.n // 2) < _INT64_SAFE and 8 * (2 * m) ** 4 < _INT64_SAFE


def check_box(box: SearchBox, allow_large: bool = False) -> None:
    if box.n == 16 and (box.lo < -2 or box.hi > 2) and not allow_large:
        raise BudgetExceeded(
            f"entries outside [-2, 2] for n = 16 need an explicit override (box [{box.lo}, {box.hi}])"
        )


def _check_budget(box: SearchBox, cap: int | None) -> None:
    cap = max_work() if cap is None else cap
    if box.size > cap:
        raise BudgetExceeded(f"box holds {box.size} vectors, budget is {cap}")


# --------------------------------------------------------------------------
# Batched determinants
# --------------------------------------------------------------------------


def batch_det(a: np.ndarray) -> np.ndarray:
    """Circulant determinants of the rows of ``a`` (shape ``(N, n)``), by norm formulas."""
    n = a.shape[1]
    col = [a[:, i] for i in range(n)]
    f1 = sum(col)
    fm1 = sum(col[i] if i % 2 == 0 else -col[i] for i in range(n))
    if n == 2:
        return f1 * fm1
    if n == 4:
        return f1 * fm1 * ((col[0] - col[2]) ** 2 + (col[1] - col[3]) ** 2)
    if n == 8:
        b = [col[k] + col[k + 4] for k in range(4)]
        c = [col[k] - col[k + 4] for k in range(4)]
        n4 = (b[0] - b[2]) ** 2 + (b[1] - b[3]) ** 2
        n2 = (c[0] ** 2 - c[2] ** 2 + 2 * c[1] * c[3]) ** 2 + (c[3] ** 2 - c[1] ** 2 + 2 * c[0] * c[2]) ** 2
        return f1 * fm1 * n4 * n2
    # n == 16
    s = [col[k] + col[k + 8] for k in range(8)]
    bb = [s[k] + s[k + 4] for k in range(4)]
    c = [s[k] - s[k + 4] for k in range(4)]
    e = [col[k] - col[k + 8] for k in range(8)]
    n4 = (bb[0] - bb[2]) ** 2 + (bb[1] - bb[3]) ** 2
    re2 = c[0] ** 2 - c[2] ** 2 + 2 * c[1] * c[3]
    im2 = c[3] ** 2 - c[1] ** 2 + 2 * c[0] * c[2]
    re1, im1 = _alpha1_arrays(e)
    return (re1 * re1 + im1 * im1) * (re2 * re2 + im2 * im2) * n4 * fm1 * f1


def _alpha1_arrays(e: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    e0, e1, e2, e3, e4, e5, e6, e7 = e
    q = [x * x for x in e]
    q0, q1, q2, q3, q4, q5, q6, q7 = q
    re = (
        q0 * q0 + q4 * q4 - q2 * q2 - q6 * q6 - 6 * q0 * q4 + 6 * q2 * q6
        - 2 * (q1 - q5) * (q3 - q7)
        + 4 * (e2 * e6 + e1 * e7 + e3 * e5) * (q0 - q4)
        - 4 * (e0 * e6 + e2 * e4 - e1 * e5) * (q1 - q5)
        + 4 * (e0 * e4 + e1 * e3 - e5 * e7) * (q2 - q6)
        - 4 * (e0 * e2 - e4 * e6 + e3 * e7) * (q3 - q7)
        + 8 * (
            -e0 * e2 * e1 * e5 + e0 * e4 * e1 * e3 - e0 * e4 * e5 * e7 + e0 * e6 * e3 * e7
            + e2 * e4 * e3 * e7 - e2 * e6 * e1 * e7 - e2 * e6 * e3 * e5 + e4 * e6 * e1 * e5
            + e1 * e3 * e5 * e7
        )
    )
    im = (
        q3 * q3 + q7 * q7 - q1 * q1 - q5 * q5 - 6 * q3 * q7 + 6 * q1 * q5
        - 2 * (q0 - q4) * (q2 - q6)
        + 4 * (e0 * e4 - e1 * e3 + e5 * e7) * (q0 - q4)
        + 4 * (e0 * e2 - e4 * e6 - e3 * e7) * (q1 - q5)
        - 4 * (e2 * e6 - e1 * e7 - e3 * e5) * (q2 - q6)
        - 4 * (e0 * e6 + e2 * e4 + e1 * e5) * (q3 - q7)
        + 8 * (
            e0 * e2 * e4 * e6 - e0 * e2 * e3 * e7 + e0 * e4 * e1 * e7 + e0 * e4 * e3 * e5
            - e0 * e6 * e1 * e5 - e2 * e4 * e1 * e5 + e2 * e6 * e1 * e3 - e2 * e6 * e5 * e7
            + e4 * e6 * e3 * e7
        )
    )
    return re, im


def _low_grid(box: SearchBox) -> np.ndarray:
    dtype = np.int64 if box.int64_safe() else object
    axis = np.array(box.digits, dtype=np.int64)
    # last meshgrid axis varies fastest; reverse so column 0 is the fastest
    grids = np.meshgrid(*([axis] * box.low_dims), indexing="ij")
    low = np.stack([g.ravel() for g in reversed(grids)], axis=1)
    return low.astype(dtype)


def block_vectors(box: SearchBox, block: int, low: np.ndarray | None = None) -> np.ndarray:
    if low is None:
        low = _low_grid(box)
    high = box.vector_at(block * box.width**box.low_dims)[box.low_dims:]
    out = np.empty((low.shape[0], box.n), dtype=low.dtype)
    out[:, : box.low_dims] = low
    out[:, box.low_dims:] = np.array(high, dtype=np.int64).astype(low.dtype)
    return out


def iter_blocks(box: SearchBox, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(first_global_index, vectors, dets)`` for blocks ``start..stop-1``."""
    low = _low_grid(box)
    per_block = low.shape[0]
    stop = box.n_blocks if stop is None else stop
    for blk in range(start, stop):
        vecs = block_vectors(box, blk, low)
        dets = batch_det(vecs)
        base = blk * per_block
        _cross_check(box, base, vecs, dets)
        yield base, vecs, dets


def _cross_check(box: SearchBox, base: int, vecs: np.ndarray, dets: np.ndarray) -> None:
    first = (-base) % CROSS_CHECK_STRIDE
    for off in range(first, len(vecs), CROSS_CHECK_STRIDE):
        vec = [int(x) for x in vecs[off]]
        if det_bareiss(vec) != int(dets[off]):
            raise InternalInvariantViolation(f"batched determinant disagrees with elimination at {vec}")


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------


def enumerate_box(
    box: SearchBox,
    visitor: Callable[[tuple[int, ...], int], None],
    cap: int | None = None,
    allow_large: bool = False,
) -> None:
    """Call ``visitor(vector, det)`` for every vector of the box, in index order."""
    check_box(box, allow_large)
    _check_budget(box, cap)
    for _, vecs, dets in iter_blocks(box):
        for vec, det in zip(vecs.tolist(), dets.tolist()):
            visitor(tuple(int(x) for x in vec), int(det))


@dataclass
class SpectrumReport:
    box: SearchBox
    values: set[int] = field(default_factory=set)
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    first_index: dict[int, int] = field(default_factory=dict)
    visited: int = 0

    def to_dict(self) -> dict:
        ordered = sorted(self.values)
        return {
            "box": {"n": str(self.box.n), "lo": str(self.box.lo), "hi": str(self.box.hi)},
            "visited": str(self.visited),
            "count": str(len(ordered)),
            "values": [str(v) for v in ordered],
            "witnesses": {str(v): [str(x) for x in self.witnesses[v]] for v in ordered},
        }


def _spectrum_range(box: SearchBox, start: int, stop: int) -> tuple[dict[int, int], int]:
    first: dict[int, int] = {}
    visited = 0
    for base, _, dets in iter_blocks(box, start, stop):
        visited += len(dets)
        if dets.dtype == object:
            for off, d in enumerate(dets.tolist()):
                first.setdefault(int(d), base + off)
        else:
            vals, idx = np.unique(dets, return_index=True)
            for v, i in zip(vals.tolist(), idx.tolist()):
                first.setdefault(int(v), base + i)
    return first, visited


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out


def _run_ranges(fn, box: SearchBox, jobs: int, chunks: int | None = None) -> list:
    ranges = _ranges(box.n_blocks, chunks or jobs)
    if jobs <= 1:
        return [fn(box, s, e) for s, e in ranges]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, itertools.repeat(box), *zip(*ranges)))


def spectrum(box: SearchBox, jobs: int = 1, cap: int | None = None, allow_large: bool = False) -> SpectrumReport:
    check_box(box, allow_large)
    _check_budget(box, cap)
    report = SpectrumReport(box)
    for first, visited in _run_ranges(_spectrum_range, box, jobs):
        report.visited += visited
        for v, i in first.items():
            if v not in report.first_index or i < report.first_index[v]:
                report.first_index[v] = i
    report.values = set(report.first_index)
    report.witnesses = {v: box.vector_at(i) for v, i in report.first_index.items()}
    return report


def _find_range(box: SearchBox, start: int, stop: int, target: int = 0) -> int | None:
    for base, _, dets in iter_blocks(box, start, stop):
        if dets.dtype == object:
            hits = [i for i, d in enumerate(dets.tolist()) if d == target]
        else:
            hits = np.flatnonzero(dets == target).tolist()
        if hits:
            return base + hits[0]
    return None


def find_value(
    target: int,
    box: SearchBox,
    jobs: int = 1,
    cap: int | None = None,
    allow_large: bool = False,
) -> tuple[int, ...]:
    """First vector in index order whose circulant determinant is ``target``.

    Scans blocks in order with early exit; the budget caps the number of
    vectors actually visited.  Raises ``NotFoundInBox`` after a full scan.
    """
    check_box(box, allow_large)
    cap = max_work() if cap is None else cap
    per_block = box.width**box.low_dims
    wave = max(1, jobs)
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        blk = 0
        while blk < box.n_blocks:
            end = min(box.n_blocks, blk + wave)
            if end * per_block > cap and blk * per_block < box.size:
                end = max(blk + 1, min(end, cap // per_block))
                if end * per_block > cap:
                    raise BudgetExceeded(
                        f"no vector with determinant {target} among the first "
                        f"{blk * per_block} vectors; budget is {cap}"
                    )
            spans = [(b, b + 1) for b in range(blk, end)]
            if pool is None:
                results = [_find_range(box, s, e, target) for s, e in spans]
            else:
                results = list(pool.map(_find_range, itertools.repeat(box), *zip(*spans),
                                        itertools.repeat(target)))
            hits = [r for r in results if r is not None]
            if hits:
                return box.vector_at(min(hits))
            blk = end
    finally:
        if pool is not None:
            pool.shutdown()
    raise NotFoundInBox(f"{target} is not attained in box n={box.n} [{box.lo}, {box.hi}]")
