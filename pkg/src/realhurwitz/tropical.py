"""Tropical covers of the line: enumeration, multiplicities, DOT output.

A cover of type (g, lam, mu, x_1 < ... < x_r) is stored combinatorially.
Vertices are the positions 1..r, marker 0 is the -infinity leaf side and
r+1 the +infinity side, and each edge is a triple (src, dst, weight) with
src < dst. Leaf identities are dropped on purpose: since every isomorphism
fixes the ordered vertices, two covers are isomorphic exactly when their
edge multisets agree, so the sorted triple tuple is a canonical form, and
duplicate triples are precisely the symmetric cycles and forks that
generate the automorphisms.

Enumeration sweeps left to right. The state at a cut is the multiset of
crossing edges; the event at x_i either joins two crossing edges (weights
a, b -> a+b; closing a cycle if they already share a connected component,
else merging two components) or splits one (a -> b, a-b). Crossing edges
with equal (birth vertex, weight) are interchangeable, so events are
generated per such class: this produces every isomorphism class exactly
once. Three prunes are exact: the number of remaining joins is determined
by the crossing count, and it must equal (components - 1) plus the genus
still to be created; the leftover multiset must be reachable from mu.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .budget import Budget, ensure_budget
from .errors import HurwitzError
from .partitions import Partition, as_partition, branch_count

LEFT = 0  # src marker of a lambda-end; the mu marker is branch_points + 1

Edge = tuple[int, int, int]  # (src, dst, weight)


@dataclass(frozen=True)
class SymElement:
    """A symmetric pair: two identical edge triples at positions (i, i+1)."""

    kind: str  # 'cycle' | 'fork'
    indices: tuple[int, int]
    weight: int

    @property
    def odd(self) -> bool:
        return self.weight % 2 == 1


@dataclass(frozen=True)
class TropicalCover:
    branch_points: int
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, branch_points: int, edges) -> "TropicalCover":
        cover = cls(branch_points, tuple(sorted(tuple(e) for e in edges)))
        cover.validate()
        return cover

    # -- structure ------------------------------------------------------------

    @property
    def right_marker(self) -> int:
        return self.branch_points + 1

    def edges_at(self, v: int) -> list[int]:
        return [i for i, (s, d, _) in enumerate(self.edges) if s == v or d == v]

    def in_edges(self, v: int) -> list[int]:
        return [i for i, (s, d, _) in enumerate(self.edges) if d == v]

    def out_edges(self, v: int) -> list[int]:
        return [i for i, (s, d, _) in enumerate(self.edges) if s == v]

    def is_end(self, i: int) -> bool:
        s, d, _ = self.edges[i]
        return s == LEFT or d == self.right_marker

    @cached_property
    def inner_edge_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.edges)) if not self.is_end(i))

    @cached_property
    def lam(self) -> Partition:
        return as_partition(w for s, d, w in self.edges if s == LEFT)

    @cached_property
    def mu(self) -> Partition:
        return as_partition(w for s, d, w in self.edges if d == self.right_marker)

    @property
    def degree(self) -> int:
        return sum(self.lam)

    @property
    def genus(self) -> int:
        # first Betti number: inner edges - inner vertices + 1 for a connected graph
        return len(self.inner_edge_indices) - self.branch_points + 1

    @cached_property
    def sym_registry(self) -> tuple[SymElement, ...]:
        """All symmetric cycles and forks (both parities), by edge index pair."""
        out = []
        i = 0
        while i < len(self.edges) - 1:
            if self.edges[i] == self.edges[i + 1]:
                kind = "fork" if self.is_end(i) else "cycle"
                out.append(SymElement(kind, (i, i + 1), self.edges[i][2]))
                i += 2
            else:
                i += 1
        return tuple(out)

    @cached_property
    def sym(self) -> tuple[SymElement, ...]:
        """Sym(phi): symmetric cycles plus odd symmetric forks."""
        return tuple(e for e in self.sym_registry if e.kind == "cycle" or e.odd)

    @cached_property
    def sym_pair_edge_indices(self) -> frozenset[int]:
        return frozenset(i for e in self.sym for i in e.indices)

    def validate(self):
        r = self.branch_points
        if r < 1:
            raise HurwitzError("a tropical cover needs at least one branch point")
        parent = list(range(r + 1))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for s, d, w in self.edges:
            if w < 1:
                raise HurwitzError(f"edge weight must be positive, got {w}")
            if not (LEFT <= s < d <= self.right_marker):
                raise HurwitzError(f"bad edge endpoints ({s}, {d})")
            if s == LEFT and d == self.right_marker:
                raise HurwitzError("edge without inner vertices")
            if s != LEFT and d != self.right_marker:
                parent[find(s)] = find(d)
        for v in range(1, r + 1):
            ins = self.in_edges(v)
            outs = self.out_edges(v)
            if len(ins) + len(outs) != 3 or not ins or not outs:
                raise HurwitzError(f"vertex {v} is not 3-valent with both sides used")
            if sum(self.edges[i][2] for i in ins) != sum(self.edges[i][2] for i in outs):
                raise HurwitzError(f"balancing fails at vertex {v}")
        if len({find(v) for v in range(1, r + 1)}) != 1:
            raise HurwitzError("cover is not connected")
        if self.genus < 0:
            raise HurwitzError("negative genus")
        counts = Counter(self.edges)
        if any(c > 2 for c in counts.values()):
            raise HurwitzError("more than two parallel equal edges")


def automorphism_count(cover: TropicalCover) -> int:
    """2^(number of symmetric cycles and forks, even and odd alike)."""
    return 2 ** len(cover.sym_registry)


def mult_complex(cover: TropicalCover) -> Fraction:
    """Product of inner edge weights over the automorphism count."""
    prod = 1
    for i in cover.inner_edge_indices:
        prod *= cover.edges[i][2]
    return Fraction(prod, automorphism_count(cover))


# -- enumeration ---------------------------------------------------------------


def enumerate_covers(g: int, lam: Partition, mu: Partition,
                     budget: Budget | None = None,
                     event_order: str = "default") -> list[TropicalCover]:
    """All isomorphism classes of covers of type (g, lam, mu, x), sorted canonically."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    if sum(lam) < 1:
        raise ValueError("degree must be >= 1")
    if r < 1:
        raise ValueError(f"tropical enumeration needs r >= 1, got r={r}")
    budget = ensure_budget(budget)
    mu_counter = Counter(mu)
    lmu = len(mu)
    reverse = event_order == "reversed"
    results: list[TropicalCover] = []
    log: list[Edge] = []

    def feasible(crossing, genus_now, done):
        rem = r - done
        k = len(crossing)
        j2 = rem + k - lmu
        if j2 < 0 or j2 % 2:
            return False
        joins = j2 // 2
        closes = g - genus_now
        if closes < 0:
            return False
        comps = len({c for _, _, c in crossing})
        if joins != (comps - 1) + closes:
            return False
        weights = Counter(w for _, w, _ in crossing)
        extra = weights - mu_counter
        missing = mu_counter - weights
        splits = rem - joins
        return (sum(extra.values()) <= 2 * joins + splits
                and sum(missing.values()) <= joins + 2 * splits)

    def rec(pos, crossing, genus_now):
        budget.tick()
        if pos > r:
            if (Counter(w for _, w, _ in crossing) == mu_counter
                    and len({c for _, _, c in crossing}) == 1
                    and genus_now == g):
                final = log + [(s, r + 1, w) for s, w, _ in crossing]
                results.append(TropicalCover(r, tuple(sorted(final))))
            return
        if not feasible(crossing, genus_now, pos - 1):
            return
        group_first: dict[tuple[int, int], int] = {}
        group_second: dict[tuple[int, int], int] = {}
        for idx, (s, w, _) in enumerate(crossing):
            key = (s, w)
            if key not in group_first:
                group_first[key] = idx
            elif key not in group_second:
                group_second[key] = idx
        keys = sorted(group_first)
        if reverse:
            keys = keys[::-1]

        events = []
        for a_pos, key_a in enumerate(keys):
            ia = group_first[key_a]
            # split events
            w = key_a[1]
            for b in range(1, w // 2 + 1):
                events.append(("split", ia, b))
            # join within the class
            if key_a in group_second:
                events.append(("join", ia, group_second[key_a]))
            # join across classes
            for key_b in keys[a_pos + 1:]:
                events.append(("join", ia, group_first[key_b]))
        if reverse:
            events = events[::-1]

        for kind, i1, arg in events:
            s1, w1, c1 = crossing[i1]
            if kind == "split":
                b = arg
                log.append((s1, pos, w1))
                nxt = [e for j, e in enumerate(crossing) if j != i1]
                nxt += [(pos, b, c1), (pos, w1 - b, c1)]
                rec(pos + 1, tuple(sorted(nxt)), genus_now)
                log.pop()
            else:
                i2 = arg
                s2, w2, c2 = crossing[i2]
                log.append((s1, pos, w1))
                log.append((s2, pos, w2))
                if c1 == c2:
                    new_genus = genus_now + 1
                    nxt = [e for j, e in enumerate(crossing) if j not in (i1, i2)]
                    nxt.append((pos, w1 + w2, c1))
                else:
                    new_genus = genus_now
                    nxt = [
                        (s, w, c1 if c == c2 else c)
                        for j, (s, w, c) in enumerate(crossing)
                        if j not in (i1, i2)
                    ]
                    nxt.append((pos, w1 + w2, c1))
                if new_genus <= g:
                    rec(pos + 1, tuple(sorted(nxt)), new_genus)
                log.pop()
                log.pop()

    crossing0 = tuple(sorted((LEFT, w, i) for i, w in enumerate(lam)))
    rec(1, crossing0, 0)
    results.sort(key=lambda c: c.edges)
    if len({c.edges for c in results}) != len(results):
        raise HurwitzError("enumeration produced duplicate isomorphism classes")
    for c in results:
        c.validate()
    return results


def tropical_complex_hurwitz(g: int, lam: Partition, mu: Partition,
                             budget: Budget | None = None) -> Fraction:
    """Sum of mult_complex over all isomorphism classes of covers."""
    return sum(
        (mult_complex(c) for c in enumerate_covers(g, lam, mu, budget)),
        Fraction(0),
    )


# -- DOT output ----------------------------------------------------------------


def cover_to_dot(cover: TropicalCover, edge_styles: dict[int, str] | None = None,
                 name: str = "cover") -> str:
    """Graphviz source for a cover; edge_styles maps edge index -> attribute text."""
    edge_styles = edge_styles or {}
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    for v in range(1, cover.branch_points + 1):
        lines.append(f'  v{v} [label="x{v}"];')
    leaf = 0
    for i, (s, d, w) in enumerate(cover.edges):
        if s == LEFT:
            leaf += 1
            src, annot = f"in{leaf}", " (lambda)"
            lines.append(f"  {src} [shape=point];")
        else:
            src, annot = f"v{s}", ""
        if d == cover.right_marker:
            leaf += 1
            dst = f"out{leaf}"
            annot = " (mu)"
            lines.append(f"  {dst} [shape=point];")
        else:
            dst = f"v{d}"
        style = edge_styles.get(i, "")
        extra = f", {style}" if style else ""
        lines.append(f'  {src} -> {dst} [label="{w}{annot}"{extra}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
