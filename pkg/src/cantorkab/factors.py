"""Factors of the Cantor sequence, special factors and occurrence types.

Every factor of length n <= 3**K lies inside sigma^K(ab) for a length-2 factor
ab in {00, 01, 10}: c is a concatenation of blocks sigma^K(c_m), each of length
3**K, so a short window straddles at most two consecutive blocks.  Scanning
those three words is the complete enumeration used throughout, and the same
argument gives exact occurrence types, since the block boundaries sit at
multiples of 3**K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import sequence
from .errors import EnumerationCapExceeded, NotAFactorError

DEFAULT_ENUMERATION_CAP = 3**7

_enumeration_cap = DEFAULT_ENUMERATION_CAP

# first occurrence of each length-2 factor in c = 101000101...
_PAIR_POSITIONS = {"10": 0, "01": 1, "00": 3}


def set_enumeration_cap(cap: int) -> None:
    global _enumeration_cap
    if cap < 1:
        raise ValueError("enumeration cap must be positive")
    _enumeration_cap = cap


def enumeration_cap() -> int:
    return _enumeration_cap


def _check_cap(n: int) -> None:
    if n > _enumeration_cap:
        raise EnumerationCapExceeded(n, _enumeration_cap)


def level_for_length(n: int) -> int:
    """Smallest K with 3**K >= n."""
    k = 0
    while 3**k < n:
        k += 1
    return k


@lru_cache(maxsize=64)
def block_pair(ab: str, level: int) -> str:
    """sigma^level(ab) for a length-2 factor ab."""
    one = sequence.prefix(3**level)
    zero = "0" * 3**level
    return "".join(one if ch == "1" else zero for ch in ab)


@dataclass(frozen=True)
class FactorSet:
    """All length-``length`` factors of c, lexicographically sorted.

    ``witnesses`` maps each word to a position of c where it occurs.
    """

    length: int
    words: tuple[str, ...]
    witnesses: dict[str, int] = field(compare=False, repr=False)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w):
        return w in self.witnesses


def factors(n: int) -> FactorSet:
    if n < 1:
        raise ValueError("factor length must be at least 1")
    _check_cap(n)
    return _factors(n)


@lru_cache(maxsize=512)
def _factors(n: int) -> FactorSet:
    level = level_for_length(n)
    block = 3**level
    seen: dict[str, int] = {}
    for ab, pos in sorted(_PAIR_POSITIONS.items(), key=lambda kv: kv[1]):
        w = block_pair(ab, level)
        base = pos * block
        for t in range(len(w) - n + 1):
            seen.setdefault(w[t:t + n], base + t)
    words = tuple(sorted(seen))
    return FactorSet(n, words, {u: seen[u] for u in words})


def factor_array(n: int) -> np.ndarray:
    """Factors of length n as rows of a read-only uint8 matrix (sorted)."""
    factors(n)
    return _factor_array(n)


@lru_cache(maxsize=512)
def _factor_array(n: int) -> np.ndarray:
    fs = _factors(n)
    raw = np.frombuffer("".join(fs.words).encode(), dtype=np.uint8)
    arr = (raw - ord("0")).reshape(len(fs), n)
    arr.setflags(write=False)
    return arr


def is_factor(u: str) -> bool:
    sequence.check_word(u)
    if not u:
        return True
    if len(u) <= _enumeration_cap:
        return u in factors(len(u))
    level = level_for_length(len(u))
    return any(u in block_pair(ab, level) for ab in _PAIR_POSITIONS)


def require_factor(u: str) -> str:
    if not is_factor(u):
        raise NotAFactorError(u)
    return u


def right_special(n: int) -> frozenset[str]:
    """Length-n factors w with both w0 and w1 occurring in c."""
    longer = factors(n + 1)
    return frozenset(w for w in factors(n) if w + "0" in longer and w + "1" in longer)


def left_special(n: int) -> frozenset[str]:
    longer = factors(n + 1)
    return frozenset(w for w in factors(n) if "0" + w in longer and "1" + w in longer)


def special_factors(n: int, side: str) -> frozenset[str]:
    if side == "right":
        return right_special(n)
    if side == "left":
        return left_special(n)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def predicted_special_factors(n: int, side: str) -> frozenset[str]:
    """The closed-form special sets {0^n, suff_n / pref_n of sigma^i(010)}.

    Valid for n >= 2 with i chosen so that 3**i < n <= 3**(i+1).
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if n < 2:
        raise ValueError("closed form only covers n >= 2")
    w = sequence.sigma_power("010", level_for_length(n) - 1)
    other = w[-n:] if side == "right" else w[:n]
    return frozenset({"0" * n, other})


def occurrences(u: str, limit: int) -> list[int]:
    """Start positions p < limit with c[p:p+|u|] == u, ascending."""
    sequence.check_word(u)
    if not u:
        return list(range(limit))
    text = sequence.prefix_bytes(limit + len(u) - 1)
    needle = u.encode()
    out = []
    p = text.find(needle)
    while 0 <= p < limit:
        out.append(p)
        p = text.find(needle, p + 1)
    return out


def _block_offsets(u: str, level: int) -> set[int]:
    """Offsets (< 3**level) of u inside the windows sigma^level(ab)."""
    block = 3**level
    found = set()
    for ab in _PAIR_POSITIONS:
        w = block_pair(ab, level)
        p = w.find(u)
        while 0 <= p < block:
            found.add(p)
            p = w.find(u, p + 1)
    return found


@dataclass(frozen=True)
class TypeSet:
    """Residues mod 3**level of the start positions of a factor."""

    level: int
    residues: frozenset[int]

    def __len__(self):
        return len(self.residues)


def type_set(level: int, u: str) -> TypeSet:
    """All j < 3**level such that u starts at some position 3**level * n + j."""
    if level < 1:
        raise ValueError("level must be at least 1")
    require_factor(u)
    big = max(level, level_for_length(len(u)))
    modulus = 3**level
    return TypeSet(level, frozenset(p % modulus for p in _block_offsets(u, big)))


def default_last_one_level(length: int) -> int:
    """The i with 3**i < length <= 3**(i+1); 0 for length 1."""
    return max(level_for_length(length) - 1, 0)


def last_one_types(v: str, i: int | None = None) -> tuple[int, frozenset[int]]:
    """Trailing-zero count of v and the residues mod 3**(i+1) of its last 1.

    The residues range over every occurrence of v in c.  ``i`` defaults to
    the exponent with 3**i < |v| <= 3**(i+1).
    """
    require_factor(v)
    last = v.rfind("1")
    if last < 0:
        raise ValueError("the all-zero word has no last 1")
    if i is None:
        i = default_last_one_level(len(v))
    modulus = 3 ** (i + 1)
    starts = type_set(i + 1, v).residues
    return len(v) - 1 - last, frozenset((j + last) % modulus for j in starts)
