"""Partition arithmetic and the tail decomposition.

A partition is stored as a weakly decreasing tuple of positive integers;
the empty partition is (). The tail decomposition splits a partition
uniquely as (2*two_e, 2*two_o, oo^2, zero): even parts are halved and
routed by the parity of the half, equal odd parts are paired greedily
from the largest, and the leftover distinct odd parts form zero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import DegreeMismatchError

Partition = tuple[int, ...]


def as_partition(parts) -> Partition:
    """Canonicalize an iterable of positive integers to a sorted-descending tuple."""
    t = tuple(sorted(parts, reverse=True))
    if any(not isinstance(p, int) or p < 1 for p in t):
        raise ValueError(f"partition parts must be positive integers, got {t!r}")
    return t


def size(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


def parse_partition(text: str) -> Partition:
    """Parse the bracketed comma syntax, e.g. "[7,6,4,5,5,3,1,1]"; "[]" is empty."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition must be bracketed like [3,1,1], got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    return as_partition(int(p) for p in body.split(","))


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


def extend_with_ones(lam: Partition, m: int) -> Partition:
    """Append m parts equal to 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return lam + (1,) * m


def branch_count(g: int, lam: Partition, mu: Partition) -> int:
    """Number of simple branch points r = l(lam) + l(mu) + 2g - 2.

    May be <= 0 for degenerate inputs; callers decide what to do with that.
    """
    if sum(lam) != sum(mu):
        raise DegreeMismatchError(f"|lambda|={sum(lam)} != |mu|={sum(mu)}")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return len(lam) + len(mu) + 2 * g - 2


@dataclass(frozen=True)
class TailDecomposition:
    """The unique split lam = (2*two_e, 2*two_o, oo^2, zero)."""

    two_e: Partition  # halves of even parts whose half is even
    two_o: Partition  # halves of even parts whose half is odd
    oo: Partition     # paired equal odd parts, one entry per pair
    zero: Partition   # leftover odd parts, pairwise distinct

    @property
    def ones_in_oo(self) -> int:
        return sum(1 for p in self.oo if p == 1)

    def reassemble(self) -> Partition:
        parts = [2 * p for p in self.two_e]
        parts += [2 * p for p in self.two_o]
        for p in self.oo:
            parts += [p, p]
        parts += list(self.zero)
        return as_partition(parts)

    @property
    def tail(self) -> Partition:
        """The multiset (two_e, two_o, oo); doubled entries are tail attachment weights."""
        return as_partition(list(self.two_e) + list(self.two_o) + list(self.oo))


def tail_decompose(lam: Partition) -> TailDecomposition:
    """Tail-decompose lam; total on every partition including ()."""
    two_e, two_o, oo, zero = [], [], [], []
    odd_mult = Counter()
    for p in lam:
        if p % 2 == 0:
            half = p // 2
            (two_o if half % 2 else two_e).append(half)
        else:
            odd_mult[p] += 1
    for v in sorted(odd_mult, reverse=True):
        m = odd_mult[v]
        oo.extend([v] * (m // 2))
        if m % 2:
            zero.append(v)
    return TailDecomposition(
        two_e=as_partition(two_e),
        two_o=as_partition(two_o),
        oo=as_partition(oo),
        zero=as_partition(zero),
    )
