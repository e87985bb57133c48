"""Recurrences and closed forms for the complexities of the Cantor sequence.

Summary of what is evaluated here (M is the maximal window sum):

* M(0) = 0, M(1) = M(2) = 1, M(3n) = 2M(n), M(3n+1) = M(3n+2) = M(n) + M(n+1)
* abelian complexity: P1(1) = P1(2) = 2, P1(3n) = 2P1(n) - 1,
  P1(3n+1) = P1(3n+2) = P1(n) + P1(n+1) - 1
* 2-abelian complexity: M(n-2) + 2M(n-1) + 1 + [n odd] for n >= 2
* k >= 3: a sum over cells (x, y) of length-(k-1) prefixes and suffixes,
  with closed forms valid from the threshold 2*3**(i+1) + 2k - 2 on.

Below that threshold the per-cell values come from brute-force enumeration;
every table entry records which method produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import brute
from . import factors as fe
from .errors import BelowThreshold, MethodDisagreement

METHODS = ("brute", "fast", "both")


@lru_cache(maxsize=None)
def max_sum(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    if n <= 2:
        return 1
    q, r = divmod(n, 3)
    if r == 0:
        return 2 * max_sum(q)
    return max_sum(q) + max_sum(q + 1)


@lru_cache(maxsize=None)
def abelian_complexity(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    if n <= 2:
        return 2
    q, r = divmod(n, 3)
    if r == 0:
        return 2 * abelian_complexity(q) - 1
    return abelian_complexity(q) + abelian_complexity(q + 1) - 1


def two_abelian(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    if n == 1:
        return 2
    return max_sum(n - 2) + 2 * max_sum(n - 1) + 1 + (n % 2)


def p2(n: int, x: str, y: str) -> int:
    """Number of 2-abelian classes of length-n factors starting with x, ending with y."""
    if x not in ("0", "1") or y not in ("0", "1"):
        raise ValueError("x and y must be single letters")
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return int(x == y)
    if x == y == "0":
        return max_sum(n - 2) + 1
    if x != y:
        return max_sum(n - 1)
    return n % 2


@lru_cache(maxsize=None)
def gap(j: int) -> int:
    """Number of 0s between the j-th and (j+1)-th 1 of c."""
    if j < 1:
        raise ValueError("j must be at least 1")
    if j % 2:
        return 1
    return 3 * gap(j // 2)


@lru_cache(maxsize=None)
def f_span(i: int, j: int) -> int:
    """j + d_i + ... + d_{i+j-1}, the span of j consecutive 1s from the i-th on
    (the last 1 excluded)."""
    if i < 1 or j < 0:
        raise ValueError("need i >= 1 and j >= 0")
    if j == 0:
        return 0
    hi, odd_i = divmod(i, 2)
    hj, odd_j = divmod(j, 2)
    if not odd_i:
        return 3 * f_span(hi, hj) if not odd_j else 3 * f_span(hi, hj + 1) - 2
    if not odd_j:
        return 3 * f_span(hi + 1, hj)
    return 3 * f_span(hi + 1, hj) + 2


@dataclass(frozen=True)
class KIndexing:
    """For k >= 3, the i with 3**i + 1 < k <= 3**(i+1) + 1 and derived sizes."""

    k: int
    i: int
    block: int
    threshold: int

    @classmethod
    def for_k(cls, k: int) -> "KIndexing":
        if k < 3:
            raise ValueError("indexing is defined for k >= 3")
        i = 0
        while not 3**i + 1 < k <= 3 ** (i + 1) + 1:
            i += 1
        block = 3 ** (i + 1)
        return cls(k, i, block, 2 * block + 2 * k - 2)


def _require_threshold(n: int, idx: KIndexing) -> None:
    if n < idx.threshold:
        raise BelowThreshold(n, idx.threshold)


def _last_one(v: str, idx: KIndexing) -> tuple[int, frozenset[int]]:
    if len(v) != idx.k - 1:
        raise ValueError(f"expected a word of length {idx.k - 1}, got {v!r}")
    if "1" not in v:
        raise ValueError("the all-zero word is handled by pk_zero_zero")
    return fe.last_one_types(v, idx.i)


def pk_zero_zero(n: int, idx: KIndexing) -> int:
    _require_threshold(n, idx)
    return max_sum((n - 2 * idx.k + 2) // idx.block) + 1


def pk_zero_y(n: int, idx: KIndexing, y: str) -> int:
    """Cell with prefix 0^(k-1) and a non-zero suffix y."""
    _require_threshold(n, idx)
    z, residues = _last_one(y, idx)
    return sum(max_sum((n - idx.k - o - z) // idx.block + 1) for o in residues)


def pk_x_zero(n: int, idx: KIndexing, x: str) -> int:
    # reversal maps the cell (x, 0^(k-1)) onto (0^(k-1), reverse(x))
    return pk_zero_y(n, idx, x[::-1])


def _xy_offsets(idx: KIndexing, x: str, y: str) -> frozenset[int]:
    zx, lx = _last_one(x, idx)
    zy, ly = _last_one(y, idx)
    return frozenset(idx.k - 1 - ox - zx + oy + zy for ox in lx for oy in ly)


def pk_x_y(n: int, idx: KIndexing, x: str, y: str) -> int:
    """1 if n = 2*3**(i+1)*j + offset for some j >= 1 and admissible offset."""
    _require_threshold(n, idx)
    period = 2 * idx.block
    return int(any(n - off >= period and (n - off) % period == 0
                   for off in _xy_offsets(idx, x, y)))


def pk_cell(n: int, idx: KIndexing, x: str, y: str) -> int:
    x_zero, y_zero = "1" not in x, "1" not in y
    if x_zero and y_zero:
        return pk_zero_zero(n, idx)
    if x_zero:
        return pk_zero_y(n, idx, y)
    if y_zero:
        return pk_x_zero(n, idx, x)
    return pk_x_y(n, idx, x, y)


def fast_cells(n: int, k: int) -> dict[tuple[str, str], int]:
    """Formula value of every cell (x, y) in F_c(k-1)^2, zeros included."""
    idx = KIndexing.for_k(k)
    words = fe.factors(k - 1).words
    return {(x, y): pk_cell(n, idx, x, y) for x in words for y in words}


def _brute_cells(n: int, k: int) -> dict[tuple[str, str], int]:
    counts = brute.cell_counts_bruteforce(n, k)
    words = fe.factors(k - 1).words
    return {(x, y): counts.get((x, y), 0) for x in words for y in words}


def _fast_value(n: int, k: int) -> tuple[int, str]:
    if n == 0:
        return 1, "fast"
    if k == 1:
        return abelian_complexity(n), "fast"
    if k == 2:
        return two_abelian(n), "fast"
    if n < KIndexing.for_k(k).threshold:
        return brute.complexity_bruteforce(n, k).class_count, "brute"
    return sum(fast_cells(n, k).values()), "fast"


def _check_agreement(n: int, k: int) -> int:
    brute_total = brute.complexity_bruteforce(n, k).class_count if n else 1
    fast_total, _ = _fast_value(n, k)
    if k == 2 and n >= 1:
        counts = brute.cell_counts_bruteforce(n, 2)
        for x in "01":
            for y in "01":
                got = p2(n, x, y)
                if got != counts.get((x, y), 0):
                    raise MethodDisagreement(n, k, got, counts.get((x, y), 0), (x, y))
    if k >= 3 and n >= KIndexing.for_k(k).threshold:
        expected = _brute_cells(n, k)
        for cell, got in fast_cells(n, k).items():
            if got != expected[cell]:
                raise MethodDisagreement(n, k, got, expected[cell], cell)
    if fast_total != brute_total:
        raise MethodDisagreement(n, k, fast_total, brute_total)
    return fast_total


def k_abelian_complexity(n: int, k: int, method: str = "fast") -> int:
    """P^(k)(n).  ``both`` checks the formulas against enumeration, cell by cell."""
    value, _ = evaluate(n, k, method)
    return value


def evaluate(n: int, k: int, method: str = "fast") -> tuple[int, str]:
    """Return (value, method actually used) for P^(k)(n)."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if method == "brute":
        return (brute.complexity_bruteforce(n, k).class_count if n else 1), "brute"
    if method == "fast":
        return _fast_value(n, k)
    if method == "both":
        return _check_agreement(n, k), "both"
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass
class ComplexityTable:
    k: int
    entries: dict[int, tuple[int, str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def rows(self):
        return [(n, v, m) for n, (v, m) in sorted(self.entries.items())]


def complexity_table(k: int, ns, method: str = "fast") -> ComplexityTable:
    table = ComplexityTable(k)
    for n in ns:
        table.entries[n] = evaluate(n, k, method)
    if method == "fast" and k >= 3:
        table.notes.append(
            f"n < {KIndexing.for_k(k).threshold} evaluated by enumeration"
        )
    return table


# -- vectorised tables -------------------------------------------------------

def max_sum_table(stop: int) -> np.ndarray:
    """M(0), ..., M(stop-1) filled level by level from the ternary recurrences."""
    size = max(stop, 3)
    out = np.zeros(3 * size + 3, dtype=np.int64)
    out[1] = out[2] = 1
    known, lo = 3, 1
    while known < size:
        hi = known - 1
        m = np.arange(lo, hi)
        out[3 * m] = 2 * out[m]
        out[3 * m + 1] = out[m] + out[m + 1]
        out[3 * m + 2] = out[m] + out[m + 1]
        known, lo = 3 * hi, hi
    return out[:stop].copy()


def abelian_table(stop: int) -> np.ndarray:
    size = max(stop, 3)
    out = np.zeros(3 * size + 3, dtype=np.int64)
    out[0], out[1], out[2] = 1, 2, 2
    known, lo = 3, 1
    while known < size:
        hi = known - 1
        m = np.arange(lo, hi)
        out[3 * m] = 2 * out[m] - 1
        out[3 * m + 1] = out[m] + out[m + 1] - 1
        out[3 * m + 2] = out[m] + out[m + 1] - 1
        known, lo = 3 * hi, hi
    return out[:stop].copy()


def two_abelian_table(stop: int) -> np.ndarray:
    mt = max_sum_table(max(stop, 2))
    n = np.arange(stop)
    out = np.ones(stop, dtype=np.int64)
    big = n >= 2
    out[big] = mt[n[big] - 2] + 2 * mt[n[big] - 1] + 1 + n[big] % 2
    if stop > 1:
        out[1] = 2
    return out


@lru_cache(maxsize=32)
def _cell_plan(k: int):
    idx = KIndexing.for_k(k)
    words = fe.factors(k - 1).words
    zero_y, offsets = [], []
    for x in words:
        for y in words:
            x_zero, y_zero = "1" not in x, "1" not in y
            if x_zero and y_zero:
                continue
            if x_zero or y_zero:
                v = y if x_zero else x[::-1]
                z, residues = _last_one(v, idx)
                zero_y.extend(o + z for o in residues)
            else:
                offsets.append(_xy_offsets(idx, x, y))
    return idx, tuple(zero_y), tuple(offsets)


def k_abelian_table(k: int, stop: int) -> np.ndarray:
    """P^(k)(0), ..., P^(k)(stop-1): formulas from the threshold on,
    enumeration below it."""
    if k == 1:
        return abelian_table(stop)
    if k == 2:
        return two_abelian_table(stop)
    idx, zero_y, offsets = _cell_plan(k)
    mt = max_sum_table(stop // idx.block + 3)
    out = np.zeros(stop, dtype=np.int64)
    low = min(stop, idx.threshold)
    for n in range(low):
        out[n] = 1 if n == 0 else brute.complexity_bruteforce(n, k).class_count
    if stop <= idx.threshold:
        return out
    n = np.arange(idx.threshold, stop)
    total = mt[(n - 2 * k + 2) // idx.block] + 1
    for shift in zero_y:
        total += mt[(n - k - shift) // idx.block + 1]
    period = 2 * idx.block
    for offs in offsets:
        hit = np.zeros(len(n), dtype=bool)
        for off in offs:
            hit |= ((n - off) % period == 0) & (n - off >= period)
        total += hit
    out[idx.threshold:] = total
    return out
