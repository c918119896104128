"""Colourings of tropical covers, vertex signs, and real multiplicities.

A colouring picks a subset T of Sym(phi) (symmetric cycles and odd
symmetric forks) and paints every connected component of the even-edge
subgraph of C minus the interiors of T red or blue. Even ends carry
colour; E(T) counts even *inner* edges only. The real multiplicity is

    2^(|E(T)| - |Sym(phi)|) * prod of omega(c) over symmetric cycles c in T,

an integer away from the degenerate family {lam, mu} subset {(2k), (k,k)};
there it can be a half-integer, which mult_real refuses while the
correspondence sums still work out exactly in rational arithmetic.

Each 3-valent vertex has a lone edge e0 on one side and a pair on the
other. The sign rule table, closed under left-right reflection:

    pair in T (dotted)                 -> positive iff colour(e0) is blue
    e0 odd  (pair is {odd, even})      -> positive iff the even pair edge is blue
    e0 even, pair both odd             -> positive iff colour(e0) is red
    all three even (same component)    -> positive iff that colour is blue

The negative rows are the red/blue swaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .budget import Budget, ensure_budget
from .errors import (
    NonIntegralMultiplicityError,
    SplitRangeError,
    UnclassifiableVertexError,
)
from .partitions import Partition, as_partition, branch_count
from .tropical import LEFT, SymElement, TropicalCover, cover_to_dot, enumerate_covers

POSITIVE = "positive"
NEGATIVE = "negative"
RED = "red"
BLUE = "blue"

Splitting = frozenset  # of positive vertex positions, 1-based


@dataclass(frozen=True)
class Colouring:
    """Subset of Sym(phi) plus a colour per even component of C minus T-interiors."""

    t_rho: tuple[SymElement, ...]
    components: tuple[tuple[int, ...], ...]  # even-edge indices, grouped
    colours: tuple[str, ...]                 # one per component

    def colour_of(self, edge_index: int) -> str:
        for comp, col in zip(self.components, self.colours):
            if edge_index in comp:
                return col
        raise KeyError(f"edge {edge_index} carries no colour")

    @property
    def t_pair_index_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e.indices) for e in self.t_rho)


def even_components(cover: TropicalCover, t_rho) -> tuple[tuple[int, ...], ...]:
    """Components of the even-edge subgraph after removing T-interior edges.

    Removing interiors keeps all vertices, so connectivity is through shared
    inner vertices of the surviving even edges (ends never share a leaf).
    """
    removed = {i for e in t_rho for i in e.indices if not e.odd}
    evens = [i for i, (s, d, w) in enumerate(cover.edges)
             if w % 2 == 0 and i not in removed]
    parent = {i: i for i in evens}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    by_vertex: dict[int, int] = {}
    for i in evens:
        s, d, _ = cover.edges[i]
        for v in (s, d):
            if not 1 <= v <= cover.branch_points:
                continue
            if v in by_vertex:
                parent[find(by_vertex[v])] = find(i)
            else:
                by_vertex[v] = i
    groups: dict[int, list[int]] = {}
    for i in evens:
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


def enumerate_colourings(cover: TropicalCover) -> list[Colouring]:
    """Every (T, colour) pair exactly once."""
    sym = cover.sym
    out = []
    for mask in range(1 << len(sym)):
        t_rho = tuple(e for k, e in enumerate(sym) if mask >> k & 1)
        comps = even_components(cover, t_rho)
        for cols in product((RED, BLUE), repeat=len(comps)):
            out.append(Colouring(t_rho, comps, cols))
    return out


def vertex_sign(cover: TropicalCover, colouring: Colouring, v: int) -> str:
    """Classify inner vertex v as positive or negative under the rule table."""
    ins = cover.in_edges(v)
    outs = cover.out_edges(v)
    if len(ins) == 1:
        e0, pair = ins[0], outs
    else:
        e0, pair = outs[0], ins
    w0 = cover.edges[e0][2]
    pw = [cover.edges[i][2] for i in pair]

    if frozenset(pair) in colouring.t_pair_index_sets:
        # dotted pair; the lone edge is even (twice the pair weight)
        return POSITIVE if colouring.colour_of(e0) == BLUE else NEGATIVE
    if w0 % 2 == 1:
        evens = [i for i in pair if cover.edges[i][2] % 2 == 0]
        if len(evens) != 1:
            raise UnclassifiableVertexError(f"vertex {v}: odd lone edge, pair parities {pw}")
        return POSITIVE if colouring.colour_of(evens[0]) == BLUE else NEGATIVE
    if all(w % 2 == 1 for w in pw):
        return POSITIVE if colouring.colour_of(e0) == RED else NEGATIVE
    if all(w % 2 == 0 for w in pw):
        # all three even and incident to v, hence one component, one colour
        return POSITIVE if colouring.colour_of(e0) == BLUE else NEGATIVE
    raise UnclassifiableVertexError(f"vertex {v}: parities ({w0}, {pw}) match no row")


def induced_splitting(cover: TropicalCover, colouring: Colouring) -> Splitting:
    return frozenset(
        v for v in range(1, cover.branch_points + 1)
        if vertex_sign(cover, colouring, v) == POSITIVE
    )


def mult_real_fraction(cover: TropicalCover, colouring: Colouring) -> Fraction:
    """2^(|E(T)| - |Sym|) times the weights of symmetric cycles in T, exactly."""
    removed = {i for e in colouring.t_rho for i in e.indices if not e.odd}
    e_count = sum(
        1 for i in cover.inner_edge_indices
        if cover.edges[i][2] % 2 == 0 and i not in removed
    )
    value = Fraction(2) ** (e_count - len(cover.sym))
    for e in colouring.t_rho:
        if e.kind == "cycle":
            value *= e.weight
    return value


def mult_real(cover: TropicalCover, colouring: Colouring) -> int:
    value = mult_real_fraction(cover, colouring)
    if value.denominator != 1:
        raise NonIntegralMultiplicityError(
            f"real multiplicity {value} is not an integer (degenerate family)"
        )
    return int(value)


def splitting_table(covers) -> dict[Splitting, Fraction]:
    """Map splitting -> sum of real multiplicities over all covers and colourings."""
    table: dict[Splitting, Fraction] = {}
    for cover in covers:
        for colouring in enumerate_colourings(cover):
            split = induced_splitting(cover, colouring)
            table[split] = table.get(split, Fraction(0)) + mult_real_fraction(cover, colouring)
    return table


def real_tropical_hurwitz(g: int, lam: Partition, mu: Partition, splitting,
                          budget: Budget | None = None) -> Fraction:
    """Weighted count of real tropical covers inducing the given splitting."""
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    if r < 1:
        raise ValueError(f"real tropical count needs r >= 1, got r={r}")
    splitting = frozenset(splitting)
    if not splitting <= set(range(1, r + 1)):
        raise SplitRangeError(f"splitting {sorted(splitting)} not inside 1..{r}")
    covers = enumerate_covers(g, lam, mu, budget)
    return splitting_table(covers).get(splitting, Fraction(0))


def real_cover_to_dot(cover: TropicalCover, colouring: Colouring,
                      name: str = "cover") -> str:
    """DOT output following the figure conventions: red/blue even edges, dotted T-pairs."""
    styles: dict[int, str] = {}
    for e in colouring.t_rho:
        for i in e.indices:
            styles[i] = "style=dotted"
    for comp, col in zip(colouring.components, colouring.colours):
        for i in comp:
            styles[i] = f"color={col}"
    return cover_to_dot(cover, edge_styles=styles, name=name)
