from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realhurwitz.errors import HurwitzError
from realhurwitz.partitions import as_partition, branch_count
from realhurwitz.symgroup import complex_hurwitz
from realhurwitz.tropical import (
    TropicalCover,
    automorphism_count,
    cover_to_dot,
    enumerate_covers,
    mult_complex,
    tropical_complex_hurwitz,
)


def small_instances(dmax=4, rmax=5):
    """All (g, lam, mu) with degree <= dmax, 1 <= r <= rmax."""
    from itertools import product

    def partitions_of(n):
        def rec(n, maxpart):
            if n == 0:
                yield ()
                return
            for first in range(min(n, maxpart), 0, -1):
                for rest in rec(n - first, first):
                    yield (first,) + rest

        return list(rec(n, n))

    out = []
    for d in range(1, dmax + 1):
        parts = partitions_of(d)
        for lam, mu in product(parts, parts):
            for g in range(0, (rmax + 2) // 2 + 1):
                r = len(lam) + len(mu) + 2 * g - 2
                if 1 <= r <= rmax:
                    out.append((g, lam, mu))
    return out


def test_single_vertex_cover():
    covers = enumerate_covers(0, (2,), (1, 1))
    assert len(covers) == 1
    c = covers[0]
    assert c.edges == ((0, 1, 2), (1, 2, 1), (1, 2, 1))
    assert len(c.sym_registry) == 1
    assert c.sym_registry[0].kind == "fork"
    assert automorphism_count(c) == 2
    assert mult_complex(c) == Fraction(1, 2)
    assert c.lam == (2,) and c.mu == (1, 1)
    assert c.genus == 0


def test_r_zero_is_an_error():
    with pytest.raises(ValueError):
        enumerate_covers(0, (1,), (1,))


def test_two_covers_for_2_1():
    covers = enumerate_covers(0, (2, 1), (1, 1, 1))
    assert len(covers) == 2
    assert sum((mult_complex(c) for c in covers), Fraction(0)) == 4


def test_mult_trivial_aut():
    # trivial automorphism group, inner weights {2, 3}: multiplicity 6
    c = TropicalCover.build(
        3,
        [(0, 1, 3), (1, 4, 1), (1, 2, 2), (0, 2, 1), (2, 3, 3), (3, 4, 1), (3, 4, 2)],
    )
    assert automorphism_count(c) == 1
    assert mult_complex(c) == 6


def test_tropical_equals_oracle_spot():
    assert tropical_complex_hurwitz(0, (2,), (1, 1)) == Fraction(1, 2)
    assert tropical_complex_hurwitz(0, (3,), (1, 1, 1)) == 1
    assert tropical_complex_hurwitz(0, (2, 1), (1, 1, 1)) == 4


def test_genus_counting():
    covers = enumerate_covers(1, (2,), (2,))
    assert len(covers) == 1
    c = covers[0]
    assert c.genus == 1
    assert len(c.sym_registry) == 1
    assert c.sym_registry[0].kind == "cycle"
    assert mult_complex(c) == Fraction(1, 2)


def test_covers_are_valid_and_distinct():
    for g, lam, mu in [(0, (3, 1), (2, 2)), (1, (2, 1), (1, 1, 1)), (0, (2, 2), (1, 1, 1, 1))]:
        covers = enumerate_covers(g, lam, mu)
        assert len({c.edges for c in covers}) == len(covers)
        for c in covers:
            c.validate()
            assert c.lam == as_partition(lam)
            assert c.mu == as_partition(mu)
            assert c.genus == g


def test_event_order_independence():
    for g, lam, mu in [(0, (2, 1), (1, 1, 1)), (1, (2, 2), (2, 1, 1))]:
        a = enumerate_covers(g, lam, mu, event_order="default")
        b = enumerate_covers(g, lam, mu, event_order="reversed")
        assert [c.edges for c in a] == [c.edges for c in b]


@settings(deadline=None, max_examples=25)
@given(st.sampled_from(small_instances(dmax=4, rmax=4)))
def test_oracle_equivalence_sampled(instance):
    g, lam, mu = instance
    assert tropical_complex_hurwitz(g, lam, mu) == complex_hurwitz(g, lam, mu)


def test_degree_constant_across_cuts():
    for c in enumerate_covers(0, (3, 1), (2, 1, 1)):
        d = c.degree
        for cut in range(1, c.branch_points + 2):
            crossing = sum(
                w for s, dd, w in c.edges if s < cut <= dd
            )
            assert crossing == d


def test_dot_output_shape():
    c = enumerate_covers(0, (2,), (1, 1))[0]
    dot = cover_to_dot(c)
    assert dot.startswith("digraph")
    assert dot.count("{") == dot.count("}") == 1
    assert dot.count("->") == len(c.edges)
    assert 'label="2 (lambda)"' in dot


def test_build_rejects_garbage():
    with pytest.raises(HurwitzError):
        TropicalCover.build(1, [(0, 1, 2), (1, 2, 1)])  # unbalanced
    with pytest.raises(HurwitzError):
        TropicalCover.build(2, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)])  # 2-valent
