"""The Cantor sequence c = 101000101000000000101000101... and its morphism.

c is the fixed point of 0 -> 000, 1 -> 101 starting with 1; equivalently
c_0 = 1, c_{3n} = c_{3n+2} = c_n and c_{3n+1} = 0.

Words are plain ``str`` objects over the characters ``"0"`` and ``"1"``.
A prefix table is grown lazily (by applying the morphism) up to a configurable
cap; anything beyond the cap is synthesized letter by letter.
"""

from __future__ import annotations

import threading
from functools import lru_cache

import numpy as np

DEFAULT_PREFIX_CAP = 3**16

_lock = threading.Lock()
_prefix_cap = DEFAULT_PREFIX_CAP
_letters = np.array([1], dtype=np.uint8)
_text = b"1"
_sums = None  # prefix sums of _letters, built on first digit_sum call


def check_word(w: str) -> str:
    """Return ``w`` unchanged, raising ``ValueError`` if it is not binary."""
    if not isinstance(w, str) or w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def set_prefix_cap(cap: int) -> None:
    """Set the number of letters the shared prefix table may hold."""
    global _prefix_cap
    if cap < 1:
        raise ValueError("prefix cap must be positive")
    with _lock:
        _prefix_cap = cap


def prefix_cap() -> int:
    return _prefix_cap


def cantor_letter(n: int) -> int:
    """Return c_n, i.e. 1 iff the ternary expansion of n has no digit 1."""
    if n < 0:
        raise ValueError("index must be non-negative")
    while n:
        n, r = divmod(n, 3)
        if r == 1:
            return 0
    return 1


def cantor_letter_recursive(n: int) -> int:
    """c_n straight from the defining recurrence (slow; used as an oracle)."""
    if n < 0:
        raise ValueError("index must be non-negative")
    if n == 0:
        return 1
    q, r = divmod(n, 3)
    if r == 1:
        return 0
    return cantor_letter_recursive(q)


def sigma_image(w: str) -> str:
    """Apply the morphism 0 -> 000, 1 -> 101 letterwise."""
    check_word(w)
    return "".join("101" if ch == "1" else "000" for ch in w)


def sigma_power(w: str, times: int) -> str:
    for _ in range(times):
        w = sigma_image(w)
    return w


def _ensure(length: int) -> None:
    """Grow the shared table to at least ``length`` letters (caller checks cap)."""
    global _letters, _text, _sums
    if len(_letters) >= length:
        return
    with _lock:
        letters = _letters
        while len(letters) < length:
            grown = np.zeros(3 * len(letters), dtype=np.uint8)
            grown[0::3] = letters
            grown[2::3] = letters
            letters = grown
        if len(letters) > _prefix_cap:
            letters = letters[:_prefix_cap]
        _letters = letters
        _text = (letters + ord("0")).tobytes()
        _sums = None


def letters_array(start: int, length: int) -> np.ndarray:
    """Letters c_start .. c_{start+length-1} as a uint8 array."""
    if start < 0 or length < 0:
        raise ValueError("start and length must be non-negative")
    stop = start + length
    if stop <= _prefix_cap:
        _ensure(stop)
        return _letters[start:stop].copy()
    pos = np.arange(start, stop, dtype=np.int64)
    out = np.ones(length, dtype=np.uint8)
    while pos.any():
        out[pos % 3 == 1] = 0
        pos //= 3
    return out


def window(start: int, length: int) -> str:
    """The factor of c of the given length starting at ``start``."""
    return (letters_array(start, length) + ord("0")).tobytes().decode()


def prefix(n: int) -> str:
    """The first ``n`` letters of c."""
    return window(0, n)


def prefix_bytes(n: int) -> bytes:
    """The first ``n`` letters as ASCII bytes, sharing the cached table."""
    if n <= _prefix_cap:
        _ensure(n)
        return _text[:n]
    return window(0, n).encode()


def digit_sum(i: int, n: int) -> int:
    """Sum of c_i .. c_{i+n-1}."""
    global _sums
    if i < 0 or n < 0:
        raise ValueError("arguments must be non-negative")
    if i + n <= _prefix_cap:
        _ensure(i + n)
        sums = _sums
        if sums is None or len(sums) <= i + n:
            with _lock:
                sums = np.zeros(len(_letters) + 1, dtype=np.int64)
                np.cumsum(_letters, out=sums[1:])
                _sums = sums
        return int(sums[i + n] - sums[i])
    return digit_sum_recursive(i, n)


@lru_cache(maxsize=None)
def digit_sum_recursive(i: int, n: int) -> int:
    """Window sum computed from the nine ternary splitting identities."""
    if n <= 2:
        return sum(cantor_letter(j) for j in range(i, i + n))
    q, a = divmod(i, 3)
    m, b = divmod(n, 3)
    s = digit_sum_recursive
    if a == 0:
        if b == 0:
            return 2 * s(q, m)
        return s(q, m) + s(q, m + 1)
    if a == 1:
        if b == 2:
            return s(q, m + 1) + s(q + 1, m)
        return s(q, m) + s(q + 1, m)
    if b == 0:
        return s(q, m) + s(q + 1, m)
    if b == 1:
        return s(q, m + 1) + s(q + 1, m)
    return s(q, m + 1) + s(q + 1, m + 1)
