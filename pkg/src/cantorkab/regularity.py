"""Guessing and checking base-b linear representations of integer sequences.

A sequence s is b-regular when the module spanned by its kernel sequences
n -> s(b**e * n + c) is finitely generated.  ``guess_representation`` walks the
kernel breadth first, keeps the independent kernel sequences (truncated to a
training window) in an exact echelon basis, and stops once the three children
of every basis element are linear combinations of the basis.  Writing
V(n) for the column of basis values at n, the closure gives V(b*n + d) = A_d V(n),
hence

    s(n) = lambda . M_{d_m} ... M_{d_1} . gamma,    M_d = A_d^T,

where d_1 is the least significant digit of n (it is applied first, next to
gamma), lambda = V(0)^T and gamma = e_0.  Leading zero digits are harmless
because lambda . M_0 = lambda.

Dependencies are exact over the rationals.  This certifies closure of a
Q-vector space on the training window, which is what the verification step
then tests far beyond it; integrality of the coefficients is not enforced.
"""

from __future__ import annotations

import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import formulas

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelSpec:
    """The kernel sequence n -> s(base**e * n + c)."""

    e: int
    c: int
    base: int = 3

    def __post_init__(self):
        if self.e < 0 or not 0 <= self.c < self.base**self.e:
            raise ValueError(f"need 0 <= c < base**e, got e={self.e}, c={self.c}")

    def child(self, digit: int) -> "KernelSpec":
        return KernelSpec(self.e + 1, self.c + digit * self.base**self.e, self.base)

    def index(self, n: int) -> int:
        return self.base**self.e * n + self.c


class SequenceOracle:
    """An integer sequence with memoised values.

    ``table(stop)`` (optional) returns the first ``stop`` values in one go and
    is used in preference to calling ``fn`` point by point.
    """

    def __init__(self, fn: Callable[[int], int], table: Callable[[int], list] | None = None,
                 name: str = ""):
        self.fn = fn
        self._table_fn = table
        self.name = name
        self._values: list[int] = []

    def __call__(self, n: int) -> int:
        if n < len(self._values):
            return self._values[n]
        return int(self.fn(n))

    def values(self, stop: int) -> list[int]:
        if len(self._values) < stop:
            if self._table_fn is not None:
                self._values = [int(v) for v in self._table_fn(max(stop, 2 * len(self._values)))]
            else:
                self._values.extend(int(self.fn(n)) for n in range(len(self._values), stop))
        return self._values


def as_oracle(oracle) -> SequenceOracle:
    return oracle if isinstance(oracle, SequenceOracle) else SequenceOracle(oracle)


def kernel_sequence(oracle, spec: KernelSpec, length: int) -> list[int]:
    if length < 1:
        raise ValueError("length must be at least 1")
    seq = as_oracle(oracle)
    vals = seq.values(spec.index(length - 1) + 1)
    step = spec.base**spec.e
    return vals[spec.c:spec.c + step * length:step]


def _frac_str(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class LinearRepresentation:
    """(lambda, {M_d}, gamma) with the least significant digit applied first.

    ``basis`` names the kernel sequences behind the coordinates; row j of
    M_d^T (i.e. column j of M_d) holds the recorded dependency of the
    d-th child of basis element j.  ``offset`` means the represented
    sequence is n -> oracle(n + offset).
    """

    base: int
    lam: list[Fraction]
    matrices: dict[int, list[list[Fraction]]]
    gamma: list[Fraction]
    offset: int = 0
    basis: list[KernelSpec] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.lam)

    def evaluate(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be non-negative")
        digits = []
        while n:
            n, d = divmod(n, self.base)
            digits.append(d)
        vec = list(self.gamma)
        for d in digits:
            m = self.matrices[d]
            vec = [sum(row[j] * vec[j] for j in range(self.rank)) for row in m]
        return sum(a * b for a, b in zip(self.lam, vec))

    def evaluate_range(self, stop: int) -> list[Fraction]:
        """Values at 0..stop-1 via R(n) = R(n // base) M_{n % base}, R(0) = lambda."""
        r = self.rank
        if stop <= 0:
            return []
        if r == 0:
            return [Fraction(0)] * stop
        denom = 1
        for m in self.matrices.values():
            for row in m:
                for x in row:
                    denom = math.lcm(denom, Fraction(x).denominator)
        lam_den = 1
        for x in self.lam:
            lam_den = math.lcm(lam_den, Fraction(x).denominator)
        scaled = {
            d: np.array([[int(Fraction(x) * denom) for x in row] for row in m], dtype=object)
            for d, m in self.matrices.items()
        }
        rows = np.empty((stop, r), dtype=object)
        rows[0] = [int(Fraction(x) * lam_den) for x in self.lam]
        depth = np.zeros(stop, dtype=np.int64)
        lo = 1
        while lo < stop:
            hi = min(lo * self.base, stop)
            idx = np.arange(lo, hi)
            for d in range(self.base):
                sel = idx[idx % self.base == d]
                if len(sel):
                    rows[sel] = rows[sel // self.base].dot(scaled[d])
                    depth[sel] = depth[sel // self.base] + 1
            lo = hi
        gamma = [Fraction(x) for x in self.gamma]
        out = []
        for n in range(stop):
            acc = sum(Fraction(v) * g for v, g in zip(rows[n], gamma) if g)
            out.append(acc / (lam_den * denom ** int(depth[n])))
        return out

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "rank": self.rank,
            "lambda": [_frac_str(Fraction(x)) for x in self.lam],
            "matrices": {str(d): [[_frac_str(Fraction(x)) for x in row] for row in m]
                         for d, m in sorted(self.matrices.items())},
            "gamma": [_frac_str(Fraction(x)) for x in self.gamma],
            "digit_order": "lsd_first",
            "offset": self.offset,
            "basis": [[s.e, s.c] for s in self.basis],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "LinearRepresentation":
        if data.get("digit_order", "lsd_first") != "lsd_first":
            raise ValueError(f"unsupported digit order {data['digit_order']!r}")
        base = int(data["base"])
        rep = cls(
            base=base,
            lam=[Fraction(x) for x in data["lambda"]],
            matrices={int(d): [[Fraction(x) for x in row] for row in m]
                      for d, m in data["matrices"].items()},
            gamma=[Fraction(x) for x in data["gamma"]],
            offset=int(data.get("offset", 0)),
            basis=[KernelSpec(e, c, base) for e, c in data.get("basis", [])],
        )
        if sorted(rep.matrices) != list(range(base)):
            raise ValueError("need one matrix per digit")
        if "rank" in data and int(data["rank"]) != rep.rank:
            raise ValueError("rank does not match lambda")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "LinearRepresentation":
        return cls.from_dict(json.loads(text))


class _EchelonBasis:
    """Incremental fraction-free row echelon form over integer vectors.

    Each echelon row remembers its expression in terms of the inserted
    vectors, so a dependent vector can be written in the original basis.
    """

    def __init__(self):
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self.exprs: list[list[Fraction]] = []
        self.size = 0

    def reduce(self, vec) -> tuple[np.ndarray, Fraction, list[Fraction]]:
        v = np.array([int(x) for x in vec], dtype=object)
        scale = Fraction(1)
        comb = [Fraction(0)] * self.size
        for row, piv, expr in zip(self.rows, self.pivots, self.exprs):
            if v[piv] == 0:
                continue
            a, b = row[piv], v[piv]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            v = a * v - b * row
            scale *= a
            comb = [a * c - b * e for c, e in zip(comb, expr + [Fraction(0)] * (self.size - len(expr)))]
            # v == scale * original + sum(comb_i * basis_i)
            g = math.gcd(*v)
            if g > 1:
                v = v // g
                scale /= g
                comb = [c / g for c in comb]
        return v, scale, comb

    def express(self, vec) -> list[Fraction] | None:
        """Coefficients over the inserted vectors, or None if independent."""
        v, scale, comb = self.reduce(vec)
        if any(v):
            return None
        return [-c / scale for c in comb]

    def insert(self, vec) -> None:
        v, scale, comb = self.reduce(vec)
        nz = np.flatnonzero(v != 0)
        if not len(nz):
            raise ValueError("vector is dependent")
        expr = comb + [scale]
        self.rows.append(v)
        self.pivots.append(int(nz[0]))
        self.exprs = [e + [Fraction(0)] * (self.size + 1 - len(e)) for e in self.exprs]
        self.exprs.append(expr)
        self.size += 1


def guess_representation(oracle, max_rank: int = 20, train_length: int = 2000,
                         base: int = 3, offset: int = 0) -> LinearRepresentation | None:
    """Search for a linear representation of rank <= max_rank.

    Returns None if the kernel basis outgrows ``max_rank`` before closing,
    which means either "not regular at this rank" or a training window too
    short to expose the dependencies.
    """
    if train_length < 8 * max_rank:
        raise ValueError("train_length must be at least 8 * max_rank")
    seq = as_oracle(oracle)
    if offset:
        inner = seq
        seq = SequenceOracle(lambda n: inner(n + offset),
                             lambda stop: inner.values(stop + offset)[offset:stop + offset])

    def vector(spec: KernelSpec) -> list[int]:
        return kernel_sequence(seq, spec, train_length)

    root = KernelSpec(0, 0, base)
    basis_specs: list[KernelSpec] = []
    echelon = _EchelonBasis()
    first = vector(root)
    if not any(first):
        log.debug("sequence vanishes on the training window")
        zero = [[Fraction(0)]]
        return LinearRepresentation(base, [Fraction(0)], {d: zero for d in range(base)},
                                    [Fraction(1)], offset, [root])
    echelon.insert(first)
    basis_specs.append(root)
    # children[j][d] = coefficients of child d of basis element j
    children: list[dict[int, list[Fraction]]] = [{}]
    queue = deque([0])
    while queue:
        j = queue.popleft()
        for d in range(base):
            spec = basis_specs[j].child(d)
            vec = vector(spec)
            coeffs = echelon.express(vec)
            if coeffs is None:
                if len(basis_specs) >= max_rank:
                    log.debug("rank bound %d exceeded at %s", max_rank, spec)
                    return None
                echelon.insert(vec)
                basis_specs.append(spec)
                children.append({})
                coeffs = [Fraction(0)] * (len(basis_specs) - 1) + [Fraction(1)]
                queue.append(len(basis_specs) - 1)
            children[j][d] = coeffs
    r = len(basis_specs)
    log.debug("closed with rank %d, deepest kernel level %d", r, max(s.e for s in basis_specs))
    matrices = {}
    for d in range(base):
        a_d = [children[j][d] + [Fraction(0)] * (r - len(children[j][d])) for j in range(r)]
        matrices[d] = [[a_d[j][i] for j in range(r)] for i in range(r)]
    lam = [Fraction(seq(s.c)) for s in basis_specs]
    gamma = [Fraction(1)] + [Fraction(0)] * (r - 1)
    return LinearRepresentation(base, lam, matrices, gamma, offset, basis_specs)


@dataclass
class Verification:
    ok: bool
    checked: int
    first_mismatch: tuple[int, int, Fraction] | None = None


def verify_representation(rep: LinearRepresentation, oracle, test_range: range) -> Verification:
    """Compare rep against oracle(n + rep.offset) for every n in test_range."""
    seq = as_oracle(oracle)
    stop = test_range.stop if len(test_range) else 0
    predicted = rep.evaluate_range(stop)
    truth = seq.values(stop + rep.offset)
    checked = 0
    for n in test_range:
        expected = truth[n + rep.offset]
        checked += 1
        if predicted[n] != expected:
            return Verification(False, checked, (n, expected, predicted[n]))
    return Verification(True, checked)


TARGETS = ("mc", "p1", "p2")


def cantor_oracle(target: str) -> SequenceOracle:
    """Oracle for ``mc``, ``p1``, ``p2`` or ``pk:K``, defined from n = 0.

    M(0) = 0 and P^(k)(0) = 1 (the empty word).  P^(k) uses the formulas where
    they are proven and enumeration below the threshold.
    """
    if target == "mc":
        return SequenceOracle(formulas.max_sum, formulas.max_sum_table, "mc")
    if target == "p1":
        return SequenceOracle(formulas.abelian_complexity, formulas.abelian_table, "p1")
    if target == "p2":
        return SequenceOracle(formulas.two_abelian, formulas.two_abelian_table, "p2")
    if target.startswith("pk:"):
        k = int(target[3:])
        if k < 1:
            raise ValueError("k must be at least 1")
        return SequenceOracle(lambda n: formulas.k_abelian_complexity(n, k),
                              lambda stop: formulas.k_abelian_table(k, stop), target)
    raise ValueError(f"unknown target {target!r}; expected mc, p1, p2 or pk:K")
