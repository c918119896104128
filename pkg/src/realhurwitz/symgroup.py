"""Ground-truth oracle: exact counts of (real) double Hurwitz numbers by
pruned exhaustive enumeration of factorizations in the symmetric group.

Permutations are stored in word notation: p is the tuple
(p(0), ..., p(d-1)) on points 0..d-1. Products compose right-to-left,
mul(a, b) applies b first. A factorization of type (g, lam, mu) is a tuple
(sigma1, tau_1..tau_r, sigma2) with sigma2 * tau_r * ... * tau_1 * sigma1 = id,
prescribed cycle types (each tau_i a transposition), and transitive joint
action; r = l(lam) + l(mu) + 2g - 2. The real variant adds an involution
gamma conjugating the prefix products tau_i..tau_1 sigma1 (i <= s) and
tau_j..tau_{s+1} (j > s) to their inverses.

Counting strategy: for the complex count sigma1 is fixed to one class
representative and the result multiplied by the class size (all remaining
constraints are conjugation-equivariant); the real count enumerates the
full class because the gamma conditions are not. The tau search is a DFS
pruned by cycle-count distance to mu, by orbit deficit of the generated
subgroup, and by their combination.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .budget import Budget, ensure_budget
from .errors import SplitRangeError
from .partitions import Partition, as_partition, branch_count

# -- permutation utilities ---------------------------------------------------


def identity(d: int) -> tuple:
    return tuple(range(d))


def mul(a: tuple, b: tuple) -> tuple:
    """Compose permutations, applying b first: (a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_type(p: tuple) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lengths.append(n)
    return as_partition(lengths)


def cycle_count(p: tuple) -> int:
    return len(cycle_type(p))


def transpositions(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d) for b in range(a + 1, d)]


def involutions(d: int):
    """All p in S_d with p*p = id, the identity included."""

    def rec(points):
        if not points:
            yield []
            return
        x = points[0]
        rest = points[1:]
        for pairing in rec(rest):
            yield pairing
        for i, y in enumerate(rest):
            for pairing in rec(rest[:i] + rest[i + 1 :]):
                yield [(x, y)] + pairing

    for pairing in rec(list(range(d))):
        word = list(range(d))
        for a, b in pairing:
            word[a], word[b] = b, a
        yield tuple(word)


@lru_cache(maxsize=None)
def permutations_of_type(d: int, lam: Partition) -> tuple:
    """The full conjugacy class of cycle type lam in S_d (small d only)."""
    return tuple(p for p in itertools.permutations(range(d)) if cycle_type(p) == lam)


def class_representative(d: int, lam: Partition) -> tuple:
    """Canonical permutation with cycles (0..lam_1-1)(lam_1..)..."""
    word = list(range(d))
    start = 0
    for part in lam:
        for k in range(part):
            word[start + k] = start + (k + 1) % part
        start += part
    return tuple(word)


def class_size(d: int, lam: Partition) -> int:
    z = 1
    for v in set(lam):
        m = lam.count(v)
        z *= v**m * factorial(m)
    return factorial(d) // z


# -- pruned DFS over transposition sequences ---------------------------------


class _State:
    """Mutable product/orbit state with O(d) undo per move."""

    __slots__ = ("d", "p", "pinv", "cycles", "parent", "orbits", "trail")

    def __init__(self, sigma1: tuple):
        d = len(sigma1)
        self.d = d
        self.p = list(sigma1)
        self.pinv = list(inverse(sigma1))
        self.cycles = cycle_count(sigma1)
        self.parent = list(range(d))
        for i, x in enumerate(sigma1):
            self._union(i, x)
        self.orbits = len({self._find(i) for i in range(d)})
        self.trail = []

    def _find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra != rb

    def _same_cycle(self, a, b):
        x = self.p[a]
        while x != a:
            if x == b:
                return True
            x = self.p[x]
        return False

    def apply(self, a, b):
        """Left-multiply the running product by the transposition (a b)."""
        split = self._same_cycle(a, b)
        self.cycles += 1 if split else -1
        pa, pb = self.pinv[a], self.pinv[b]
        self.p[pa], self.p[pb] = b, a
        self.pinv[a], self.pinv[b] = pb, pa
        ra, rb = self._find(a), self._find(b)
        merged = ra != rb
        if merged:
            self.parent[rb] = ra
            self.orbits -= 1
        self.trail.append((a, b, split, rb if merged else -1))

    def undo(self):
        a, b, split, merged_root = self.trail.pop()
        if merged_root >= 0:
            self.parent[merged_root] = merged_root
            self.orbits += 1
        pa, pb = self.pinv[a], self.pinv[b]
        self.p[pa], self.p[pb] = b, a
        self.pinv[a], self.pinv[b] = pb, pa
        self.cycles += -1 if split else 1

    def conjugates_to_inverse(self, gamma: tuple) -> bool:
        """gamma * p * gamma == p^-1, checked pointwise."""
        p, pinv = self.p, self.pinv
        return all(gamma[p[gamma[x]]] == pinv[x] for x in range(self.d))


def _feasible(state: _State, rem: int, target_len: int) -> bool:
    diff = state.cycles - target_len
    if abs(diff) > rem or (rem - diff) % 2:
        return False
    # orbit merges are cycle-decreasing moves, so both needs share the budget
    decreasing = (rem + diff) // 2
    return state.orbits - 1 <= decreasing


def _dfs_count(sigma1, r, mu, taus, budget, s=None, gamma=None) -> int:
    """Count tau sequences completing sigma1 to a factorization of type mu.

    With gamma given, also enforce the real-factorization conjugation
    conditions: prefixes tau_i..tau_1 sigma1 for i <= s, and suffix-start
    products tau_j..tau_{s+1} for j > s.
    """
    d = len(sigma1)
    state = _State(sigma1)
    qstate = _State(identity(d)) if gamma is not None else None
    mu_len = len(mu)
    total = 0

    def rec(level):
        nonlocal total
        budget.tick()
        rem = r - level
        if rem == 0:
            if state.orbits == 1 and cycle_type(tuple(state.p)) == mu:
                total += 1
            return
        if not _feasible(state, rem, mu_len):
            return
        for a, b in taus:
            state.apply(a, b)
            ok = True
            if gamma is not None:
                if level + 1 <= s:
                    ok = state.conjugates_to_inverse(gamma)
                else:
                    qstate.apply(a, b)
                    ok = qstate.conjugates_to_inverse(gamma)
            if ok:
                rec(level + 1)
            if gamma is not None and level + 1 > s:
                qstate.undo()
            state.undo()

    rec(0)
    return total


# -- public counting operations ----------------------------------------------


def count_factorizations(g: int, lam: Partition, mu: Partition,
                         budget: Budget | None = None, tau_order: str = "lex") -> int:
    """|F(g, lam, mu)|, the exact number of factorizations of that type."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    d = sum(lam)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if r < 0:
        raise ValueError(f"branch count r={r} is negative")
    budget = ensure_budget(budget)
    taus = transpositions(d)
    if tau_order == "reverse":
        taus = taus[::-1]
    rep = class_representative(d, lam)
    per_rep = _dfs_count(rep, r, mu, taus, budget)
    return per_rep * class_size(d, lam)


def complex_hurwitz(g: int, lam: Partition, mu: Partition,
                    budget: Budget | None = None) -> Fraction:
    """H^C_g(lam, mu) = |F(g, lam, mu)| / d! as an exact rational."""
    d = sum(lam)
    return Fraction(count_factorizations(g, lam, mu, budget), factorial(d))


def count_real_factorizations(g: int, lam: Partition, mu: Partition, s: int,
                              budget: Budget | None = None, tau_order: str = "lex") -> int:
    """|F^R(g, lam, mu; s)|: pairs (gamma, tuple) satisfying all five conditions."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    d = sum(lam)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if r < 0:
        raise ValueError(f"branch count r={r} is negative")
    if not 0 <= s <= r:
        raise SplitRangeError(f"s={s} outside [0, {r}]")
    budget = ensure_budget(budget)
    taus = transpositions(d)
    if tau_order == "reverse":
        taus = taus[::-1]
    total = 0
    for gamma in involutions(d):
        for sigma1 in permutations_of_type(d, lam):
            if mul(gamma, mul(sigma1, gamma)) != inverse(sigma1):
                continue
            total += _dfs_count(sigma1, r, mu, taus, budget, s=s, gamma=gamma)
    return total


def real_hurwitz(g: int, lam: Partition, mu: Partition, s: int,
                 budget: Budget | None = None) -> Fraction:
    """H^R_g(lam, mu; s) = |F^R(g, lam, mu; s)| / d! as an exact rational."""
    d = sum(lam)
    return Fraction(count_real_factorizations(g, lam, mu, s, budget), factorial(d))


# -- explicit enumeration (small instances; used by tests) --------------------


def enumerate_factorizations(g, lam, mu, budget: Budget | None = None):
    """Yield every (sigma1, taus, sigma2) of type (g, lam, mu). Small d only."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    d = sum(lam)
    budget = ensure_budget(budget)
    taus_pool = transpositions(d)
    for sigma1 in permutations_of_type(d, lam):
        yield from _enumerate_taus(sigma1, r, mu, taus_pool, budget)


def _enumerate_taus(sigma1, r, mu, taus_pool, budget, s=None, gamma=None):
    d = len(sigma1)
    state = _State(sigma1)
    qstate = _State(identity(d)) if gamma is not None else None
    chosen = []

    def rec(level):
        budget.tick()
        if level == r:
            if state.orbits == 1 and cycle_type(tuple(state.p)) == mu:
                sigma2 = inverse(tuple(state.p))
                yield tuple(chosen), sigma2
            return
        if not _feasible(state, r - level, len(mu)):
            return
        for a, b in taus_pool:
            state.apply(a, b)
            ok = True
            if gamma is not None:
                if level + 1 <= s:
                    ok = state.conjugates_to_inverse(gamma)
                else:
                    qstate.apply(a, b)
                    ok = qstate.conjugates_to_inverse(gamma)
            if ok:
                chosen.append((a, b))
                yield from rec(level + 1)
                chosen.pop()
            if gamma is not None and level + 1 > s:
                qstate.undo()
            state.undo()

    for taus, sigma2 in rec(0):
        word_taus = []
        for a, b in taus:
            w = list(range(d))
            w[a], w[b] = b, a
            word_taus.append(tuple(w))
        yield sigma1, tuple(word_taus), sigma2


def enumerate_real_factorizations(g, lam, mu, s, budget: Budget | None = None):
    """Yield every (gamma, sigma1, taus, sigma2) of type (g, lam, mu; s)."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    d = sum(lam)
    if not 0 <= s <= r:
        raise SplitRangeError(f"s={s} outside [0, {r}]")
    budget = ensure_budget(budget)
    taus_pool = transpositions(d)
    for gamma in involutions(d):
        for sigma1 in permutations_of_type(d, lam):
            if mul(gamma, mul(sigma1, gamma)) != inverse(sigma1):
                continue
            for res in _enumerate_taus(sigma1, r, mu, taus_pool, budget, s=s, gamma=gamma):
                sig1, taus, sigma2 = res
                yield gamma, sig1, taus, sigma2
