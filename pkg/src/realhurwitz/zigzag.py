"""Classification of tropical covers and the bound-and-parity report.

Odd edges decompose a cover uniquely: at any vertex the incident parities
are {odd, odd, even} or all even, so a maximal connected set of odd edges
is a leaf-to-leaf path or a closed cycle. These components are the only
candidate strings; the ones that are symmetric pairs (odd cycles, odd
forks) belong to Sym(phi) and are disqualified.

A zigzag witness is a single inner vertex or one string S avoiding
Sym(phi) such that everything hanging off S is a tail: an even end,
or an odd symmetric fork, reached through a chain of even edges threaded
through odd symmetric cycles. An effective non-zigzag witness is an
ordered sequence of n > 1 strings where consecutive strings are joined by
exactly one connector (an even bridge, possibly through even symmetric
cycles), every other component is a tail on some string, and every vertex
of every connector sits at position <= ceil(r/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budget import Budget, ensure_budget
from .errors import (
    ColouringNotFoundError,
    ColouringNotUniqueError,
    HypothesisViolationError,
)
from .partitions import Partition, as_partition, branch_count
from .realtrop import (
    Colouring,
    enumerate_colourings,
    induced_splitting,
    splitting_table,
)
from .symgroup import complex_hurwitz, real_hurwitz
from .tropical import TropicalCover, enumerate_covers, mult_complex

ZIGZAG = "zigzag"
EFFECTIVE_NONZIGZAG = "effective_nonzigzag"
OTHER = "other"


@dataclass(frozen=True)
class CoverClass:
    kind: str
    s_vertex: int | None = None
    s_edges: tuple[int, ...] | None = None
    strings: tuple[tuple[int, ...], ...] | None = None
    connectors: tuple[tuple[int, ...], ...] | None = None


# -- odd strings and leftover decomposition -----------------------------------


def odd_string_components(cover: TropicalCover) -> list[frozenset[int]]:
    """Maximal connected sets of odd edges (paths between leaves, or cycles)."""
    odd = [i for i, (_, _, w) in enumerate(cover.edges) if w % 2]
    parent = {i: i for i in odd}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    seen_at: dict[int, int] = {}
    for i in odd:
        s, d, _ = cover.edges[i]
        for v in (s, d):
            if not 1 <= v <= cover.branch_points:
                continue
            if v in seen_at:
                parent[find(seen_at[v])] = find(i)
            else:
                seen_at[v] = i
    groups: dict[int, set[int]] = {}
    for i in odd:
        groups.setdefault(find(i), set()).add(i)
    return [frozenset(g) for g in groups.values()]


def candidate_strings(cover: TropicalCover) -> list[frozenset[int]]:
    """Odd components usable as strings: those disjoint from Sym(phi) pairs."""
    bad = cover.sym_pair_edge_indices
    return sorted(
        (c for c in odd_string_components(cover) if not c & bad),
        key=lambda c: sorted(c),
    )


def _inner_vertices_of(cover, edge_set):
    verts = set()
    for i in edge_set:
        s, d, _ = cover.edges[i]
        for v in (s, d):
            if 1 <= v <= cover.branch_points:
                verts.add(v)
    return verts


def _leftover_components(cover, skeleton_edges, skeleton_vertices):
    """Components of the remaining edges, connected through non-skeleton vertices.

    Returns (component edge set, attachments) pairs where attachments lists
    (skeleton vertex, edge) incidences in deterministic order.
    """
    rest = [i for i in range(len(cover.edges)) if i not in skeleton_edges]
    parent = {i: i for i in rest}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    seen_at: dict[int, int] = {}
    for i in rest:
        s, d, _ = cover.edges[i]
        for v in (s, d):
            if not 1 <= v <= cover.branch_points or v in skeleton_vertices:
                continue
            if v in seen_at:
                parent[find(seen_at[v])] = find(i)
            else:
                seen_at[v] = i
    groups: dict[int, set[int]] = {}
    for i in rest:
        groups.setdefault(find(i), set()).add(i)
    out = []
    for comp in groups.values():
        attach = []
        for i in sorted(comp):
            s, d, _ = cover.edges[i]
            for v in (s, d):
                if v in skeleton_vertices:
                    attach.append((v, i))
        out.append((frozenset(comp), tuple(attach)))
    out.sort(key=lambda p: sorted(p[0]))
    return out


def _edges_at_within(cover, v, allowed):
    return [i for i in allowed if v in cover.edges[i][:2]]


def _other_endpoint(cover, i, v):
    s, d, _ = cover.edges[i]
    return d if s == v else s


def _walk_tail(cover, remaining, from_v, e) -> bool:
    """Chain grammar: even edge, then either a leaf, an odd fork, or an odd
    symmetric cycle continuing with a further even edge."""
    while True:
        if cover.edges[e][2] % 2:
            return False
        remaining = remaining - {e}
        u = _other_endpoint(cover, e, from_v)
        if not 1 <= u <= cover.branch_points:  # leaf: bare even end
            return not remaining
        rest = _edges_at_within(cover, u, remaining)
        if len(rest) != 2:
            return False
        a, b = rest
        if cover.edges[a] != cover.edges[b] or cover.edges[a][2] % 2 == 0:
            return False
        if cover.is_end(a):  # odd symmetric fork terminal
            return remaining == {a, b}
        far = _other_endpoint(cover, a, u)
        remaining = remaining - {a, b}
        nxt = _edges_at_within(cover, far, remaining)
        if len(nxt) != 1:
            return False
        from_v, e = far, nxt[0]


def _tail_shape(cover, comp, attach) -> bool:
    if len(attach) == 1:
        (v, e), = attach
        return _walk_tail(cover, comp, v, e)
    if len(attach) == 2:
        (v1, e1), (v2, e2) = attach
        # odd symmetric cycle pair hanging directly off a single-vertex S
        if v1 != v2 or e1 == e2:
            return False
        if cover.edges[e1] != cover.edges[e2] or cover.edges[e1][2] % 2 == 0:
            return False
        if cover.is_end(e1):
            return False
        far = _other_endpoint(cover, e1, v1)
        remaining = comp - {e1, e2}
        nxt = _edges_at_within(cover, far, remaining)
        if not remaining:
            return False
        if len(nxt) != 1:
            return False
        return _walk_tail(cover, remaining, far, nxt[0])
    return False


def _components_are_tails(cover, comps) -> bool:
    """Check every leftover component is a tail; bare odd ends must pair into forks."""
    bare_odd: dict[tuple, list] = {}
    for comp, attach in comps:
        if len(comp) == 1:
            (i,) = comp
            if cover.is_end(i) and cover.edges[i][2] % 2 == 1:
                if len(attach) != 1:
                    return False
                bare_odd.setdefault(cover.edges[i], []).append(comp)
                continue
        if not attach:
            return False
        if not _tail_shape(cover, comp, attach):
            return False
    return all(len(v) == 2 for v in bare_odd.values())


# -- connectors ----------------------------------------------------------------


def _connector_shape(cover, comp, attach, skeleton_vertices) -> bool:
    """Even bridge between two skeleton vertices, through even symmetric cycles."""
    if len(attach) != 2:
        return False
    (v1, e1), (v2, e2) = attach
    remaining = set(comp)
    from_v, e = v1, e1
    while True:
        if cover.edges[e][2] % 2:
            return False
        if e not in remaining:
            return False
        remaining.discard(e)
        u = _other_endpoint(cover, e, from_v)
        if u == v2 and e == e2:
            return not remaining
        if u in skeleton_vertices or not 1 <= u <= cover.branch_points:
            return False
        rest = _edges_at_within(cover, u, remaining)
        if len(rest) != 2:
            return False
        a, b = rest
        if cover.edges[a] != cover.edges[b] or cover.edges[a][2] % 2 == 1:
            return False
        if cover.is_end(a):
            return False
        far = _other_endpoint(cover, a, u)
        remaining -= {a, b}
        nxt = _edges_at_within(cover, far, remaining)
        if len(nxt) != 1:
            return False
        from_v, e = far, nxt[0]


def _connector_vertices(cover, comp, attach):
    verts = {v for v, _ in attach}
    verts |= _inner_vertices_of(cover, comp)
    return verts


def _attachment_style(cover, string_edges, v):
    """'through' when the string passes v (one edge each side), 'bend' when
    both its edges sit on the same side."""
    ins = sum(1 for i in string_edges if cover.edges[i][1] == v)
    outs = sum(1 for i in string_edges if cover.edges[i][0] == v)
    if ins == 1 and outs == 1:
        return "through"
    if (ins, outs) in ((2, 0), (0, 2)):
        return "bend"
    raise ValueError(f"vertex {v} does not lie on the string")


# -- classification ------------------------------------------------------------


def classify_cover(cover: TropicalCover) -> CoverClass:
    strings = candidate_strings(cover)

    # zigzag: a single string witness
    for s_edges in strings:
        skeleton_vertices = _inner_vertices_of(cover, s_edges)
        comps = _leftover_components(cover, set(s_edges), skeleton_vertices)
        if _components_are_tails(cover, comps):
            return CoverClass(ZIGZAG, s_edges=tuple(sorted(s_edges)))
    # zigzag: a single inner vertex witness
    for v in range(1, cover.branch_points + 1):
        comps = _leftover_components(cover, set(), {v})
        if _components_are_tails(cover, comps):
            return CoverClass(ZIGZAG, s_vertex=v)

    if len(strings) >= 2:
        witness = _classify_effective_nonzigzag(cover, strings)
        if witness is not None:
            return witness
    return CoverClass(OTHER)


def _classify_effective_nonzigzag(cover, strings):
    skeleton_edges = set().union(*strings)
    skeleton_vertices = _inner_vertices_of(cover, skeleton_edges)
    string_of = {}
    for k, s_edges in enumerate(strings):
        for v in _inner_vertices_of(cover, s_edges):
            string_of[v] = k

    connectors = []  # (string a, string b, component)
    tails = []
    for comp, attach in _leftover_components(cover, skeleton_edges, skeleton_vertices):
        touched = {string_of[v] for v, _ in attach}
        if len(touched) == 1:
            tails.append((comp, attach))
        elif len(touched) == 2 and _connector_shape(cover, comp, attach, skeleton_vertices):
            # the two depicted connector types: the strings pass through both
            # attachment vertices (cycles allowed), or bend at both (straight
            # bridge only); a mixed or cycled-bend connector supports no
            # colouring making both attachment vertices positive
            styles = {
                _attachment_style(cover, strings[string_of[v]], v) for v, _ in attach
            }
            if len(styles) != 1:
                return None
            if styles == {"bend"} and len(comp) != 1:
                return None
            limit = (cover.branch_points + 1) // 2
            if any(v > limit for v in _connector_vertices(cover, comp, attach)):
                return None
            a, b = sorted(touched)
            connectors.append((a, b, comp))
        else:
            return None
    if not _components_are_tails(cover, tails):
        return None

    # the connector graph must be a simple path through all strings
    n = len(strings)
    if len(connectors) != n - 1:
        return None
    deg = [0] * n
    seen_pairs = set()
    adj = {k: [] for k in range(n)}
    for a, b, comp in connectors:
        if (a, b) in seen_pairs:
            return None
        seen_pairs.add((a, b))
        deg[a] += 1
        deg[b] += 1
        adj[a].append((b, comp))
        adj[b].append((a, comp))
    if sorted(deg) != [1, 1] + [2] * (n - 2):
        return None
    start = min(k for k in range(n) if deg[k] == 1)
    order, conn_order, prev = [start], [], None
    while len(order) < n:
        cur = order[-1]
        nxts = [(b, c) for b, c in adj[cur] if b != prev]
        if len(nxts) != 1:
            return None
        prev = cur
        order.append(nxts[0][0])
        conn_order.append(nxts[0][1])
    return CoverClass(
        EFFECTIVE_NONZIGZAG,
        strings=tuple(tuple(sorted(strings[k])) for k in order),
        connectors=tuple(tuple(sorted(c)) for c in conn_order),
    )


# -- counts and the bound report ------------------------------------------------


def zigzag_number(g, lam, mu, budget: Budget | None = None, covers=None) -> int:
    if covers is None:
        covers = enumerate_covers(g, lam, mu, budget)
    return sum(1 for c in covers if classify_cover(c).kind == ZIGZAG)


def effective_nonzigzag_number(g, lam, mu, budget: Budget | None = None, covers=None) -> int:
    """Twice the number of effective non-zigzag covers."""
    if covers is None:
        covers = enumerate_covers(g, lam, mu, budget)
    return 2 * sum(1 for c in covers if classify_cover(c).kind == EFFECTIVE_NONZIGZAG)


def effective_number(g, lam, mu, budget: Budget | None = None, covers=None) -> int:
    if covers is None:
        covers = enumerate_covers(g, lam, mu, budget)
    return zigzag_number(g, lam, mu, covers=covers) + effective_nonzigzag_number(
        g, lam, mu, covers=covers
    )


def unique_matching_colouring(cover: TropicalCover, splitting) -> Colouring:
    """The single colouring of an effective non-zigzag cover inducing the splitting."""
    if classify_cover(cover).kind != EFFECTIVE_NONZIGZAG:
        raise ValueError("cover is not effective non-zigzag")
    splitting = frozenset(splitting)
    half = (cover.branch_points + 1) // 2
    if not set(range(1, half + 1)) <= splitting:
        raise ValueError(f"splitting must contain the first ceil(r/2)={half} positions")
    matches = [
        c for c in enumerate_colourings(cover)
        if induced_splitting(cover, c) == splitting
    ]
    if not matches:
        raise ColouringNotFoundError(f"no colouring induces {sorted(splitting)}")
    if len(matches) > 1:
        raise ColouringNotUniqueError(
            f"{len(matches)} colourings induce {sorted(splitting)}"
        )
    return matches[0]


def in_excluded_family(lam: Partition, mu: Partition) -> bool:
    """{lam, mu} subset {(2k), (k, k)}: both partitions of the degenerate shape."""
    lam, mu = as_partition(lam), as_partition(mu)
    d = sum(lam)
    if d % 2 or d != sum(mu) or d == 0:
        return False
    family = {(d,), (d // 2, d // 2)}
    return lam in family and mu in family


def cover_parity(cover: TropicalCover) -> int | None:
    """Parity of the real multiplicity (colouring-independent); None if non-integral."""
    even_inner = sum(1 for i in cover.inner_edge_indices if cover.edges[i][2] % 2 == 0)
    deficit = even_inner - len(cover.sym)
    if deficit < 0:
        return None
    return 1 if deficit == 0 else 0


@dataclass(frozen=True)
class BoundReport:
    g: int
    lam: Partition
    mu: Partition
    zigzag: int
    effective_nonzigzag: int
    effective: int
    h_real: dict
    h_complex: Fraction
    chain_ok: bool
    parity_ok: bool
    route: str

    def to_json_dict(self):
        return {
            "g": self.g,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "Z": self.zigzag,
            "Zprime": self.effective_nonzigzag,
            "E": self.effective,
            "H_real": {str(s): _fmt(v) for s, v in sorted(self.h_real.items())},
            "H_complex": _fmt(self.h_complex),
            "chain_ok": self.chain_ok,
            "parity_ok": self.parity_ok,
            "route": self.route,
        }


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def verify_bounds(g, lam, mu, route: str = "group",
                  budget: Budget | None = None) -> BoundReport:
    """Check Z <= E <= H^R(s) <= H^C and the shared parity, every quantity exact.

    route 'group' evaluates the Hurwitz numbers through the factorization
    oracle (fully independent of the tropical side); 'tropical' uses the
    cover/colouring sums, which is much faster at larger degree.
    """
    lam, mu = as_partition(lam), as_partition(mu)
    r = branch_count(g, lam, mu)
    if r <= 0:
        raise HypothesisViolationError(f"bound theorem needs r > 0, got r={r}")
    if in_excluded_family(lam, mu):
        raise HypothesisViolationError(
            f"{lam} / {mu} lie in the excluded family {{(2k), (k,k)}}"
        )
    budget = ensure_budget(budget)
    covers = enumerate_covers(g, lam, mu, budget)
    z = zigzag_number(g, lam, mu, covers=covers)
    zp = effective_nonzigzag_number(g, lam, mu, covers=covers)
    e = z + zp
    if route == "group":
        hc = complex_hurwitz(g, lam, mu, budget)
        hr = {s: real_hurwitz(g, lam, mu, s, budget) for s in range(r + 1)}
    elif route == "tropical":
        hc = sum((mult_complex(c) for c in covers), Fraction(0))
        table = splitting_table(covers)
        hr = {s: table.get(frozenset(range(1, s + 1)), Fraction(0)) for s in range(r + 1)}
    else:
        raise ValueError(f"unknown route {route!r}")
    chain_ok = all(e <= v for v in hr.values()) and all(v <= hc for v in hr.values())
    vals = [z, zp, e, hc, *hr.values()]
    parity_ok = (
        all(Fraction(v).denominator == 1 for v in vals)
        and len({int(v) % 2 for v in [z, e, hc, *hr.values()]}) == 1
    )
    return BoundReport(g, lam, mu, z, zp, e, hr, hc, chain_ok, parity_ok, route)
