import math

import pytest

from ekrmatch.constructions import (
    KLEIN_GROUP,
    ak_family,
    diagonal_matching,
    fixed_point_family,
    frame_family,
    is_upward_closed,
    katona_family,
    klein_family,
    non_uniform_star,
    semi_star,
    t_set_star,
    t_star,
)
from ekrmatch.counts import (
    ak_family_size,
    fixed_point_family_size,
    katona_sizes,
    semi_star_size,
    t_set_star_size,
    t_star_size,
)
from ekrmatch.matchings import enumerate_union_universe, enumerate_universe
from ekrmatch.predicates import Predicate, classify_star, family_satisfies


def test_t_star_sizes_and_membership():
    u = enumerate_universe((3, 3), 2)
    star = t_star(u, ((1, 1),))
    assert len(star) == 4 == t_star_size((3, 3), 2, 1)
    assert all(((1, 1)) in m for m in star.members())

    u3 = enumerate_universe((3, 3, 3), 2)
    star3 = t_star(u3, ((1, 1, 1),))
    assert len(star3) == 8 == t_star_size((3, 3, 3), 2, 1)

    full_centre = t_star(u, ((1, 1), (2, 2)))
    assert len(full_centre) == 1  # centre of size r


def test_t_star_rejects_bad_centres():
    u = enumerate_universe((3, 3), 2)
    with pytest.raises(ValueError):
        t_star(u, ((1, 1), (1, 2)))  # overlapping coordinates
    with pytest.raises(ValueError):
        t_star(u, ((1, 4),))  # out of range
    with pytest.raises(ValueError):
        t_star(u, ((1, 1), (2, 2), (3, 3)))  # larger than r


def test_t_star_is_intersecting():
    for parts, r, t in [((3, 3), 2, 1), ((4, 4), 3, 2), ((3, 3, 3), 2, 1)]:
        u = enumerate_universe(parts, r)
        star = t_star(u, diagonal_matching(parts, t))
        assert family_satisfies(star, Predicate("intersecting", t))


def test_t_set_star_sizes():
    u = enumerate_universe((4, 4), 4)
    fam = t_set_star(u, ((1, 2), (1, 2)))
    assert len(fam) == 4 == t_set_star_size((4, 4), 4, 2)
    assert family_satisfies(fam, Predicate("set-intersecting", 2))

    u3 = enumerate_universe((4, 4, 4), 4)
    fam3 = t_set_star(u3, ((1, 2), (1, 2), (1, 2)))
    assert len(fam3) == 16 == t_set_star_size((4, 4, 4), 4, 2)
    assert family_satisfies(fam3, Predicate("set-intersecting", 2))


def test_t_set_star_full_box():
    # t = r with the box covering a full shadow: all matchings inside the box
    u = enumerate_universe((3, 3), 3)
    fam = t_set_star(u, ((1, 2, 3), (1, 2, 3)))
    assert len(fam) == 6 == t_set_star_size((3, 3), 3, 3)


def test_t_set_star_rejects_malformed_boxes():
    u = enumerate_universe((4, 4), 4)
    with pytest.raises(ValueError):
        t_set_star(u, ((1, 2),))  # wrong arity
    with pytest.raises(ValueError):
        t_set_star(u, ((1, 2), (1, 2, 3)))  # ragged sides
    with pytest.raises(ValueError):
        t_set_star(u, ((1, 5), (1, 2)))  # out of range


def test_semi_star_aligned_is_a_star():
    u = enumerate_universe((3, 3, 3), 2)
    fam = semi_star(u, [((1, 2),), ((1, 3),)])  # both shadows are {1} on part 3
    star = t_star(u, ((2, 3, 1),))
    assert fam.bits == star.bits
    assert any(a.startswith("semi-star:u=1") for a in fam.annotations)


def test_semi_star_misaligned_sizes():
    u = enumerate_universe((3, 3, 3), 2)
    fam = semi_star(u, [((1, 1),), ((2, 1),)])
    assert len(fam) == 4 == semi_star_size((3, 3, 3), 2, 1, 2)
    assert classify_star(fam, 1).kind == "none"
    assert any(a.startswith("semi-star:u=2") for a in fam.annotations)


def test_semi_star_set_variant():
    u = enumerate_universe((4, 4, 4), 3)
    aligned = semi_star(u, [((1, 2), (1, 2)), ((1, 2), (1, 2))], set_variant=True)
    assert len(aligned) == semi_star_size((4, 4, 4), 3, 2, 2, set_variant=True)
    box_star = t_set_star(u, ((1, 2), (1, 2), (1, 2)))
    assert aligned.bits == box_star.bits

    misaligned = semi_star(u, [((1, 2), (1, 2)), ((1, 3), (1, 2))], set_variant=True)
    assert len(misaligned) == semi_star_size((4, 4, 4), 3, 2, 3, set_variant=True)
    assert classify_star(misaligned, 2).kind == "none"


def test_semi_star_validates_centres():
    u = enumerate_universe((3, 3, 3), 2)
    with pytest.raises(ValueError):
        semi_star(u, [((1, 1),)])  # one centre missing
    with pytest.raises(ValueError):
        semi_star(u, [((1, 1),), ((1, 1), (2, 2))])  # mixed sizes


def test_ak_family():
    u = enumerate_universe((5,), 3)
    fam = ak_family(u, 2, 1)
    assert len(fam) == 4 == ak_family_size(5, 3, 2, 1)
    assert family_satisfies(fam, Predicate("intersecting", 2))
    star = ak_family(u, 2, 0)
    assert star.bits == t_star(u, ((1,), (2,))).bits
    u6 = enumerate_universe((6,), 3)
    assert len(ak_family(u6, 2, 1)) == ak_family_size(6, 3, 2, 1)


def test_fixed_point_family():
    u8 = enumerate_universe((8, 8), 8, cap=50_000)
    fam = fixed_point_family(u8, 4, 1)
    assert len(fam) == 26 == fixed_point_family_size(8, 4, 1)

    star = fixed_point_family(u8, 4, 0)
    assert len(star) == math.factorial(4)
    assert star.bits == t_star(u8, tuple((x, x) for x in range(1, 5))).bits

    u4 = enumerate_universe((4, 4), 4)
    small = fixed_point_family(u4, 2, 1)
    assert len(small) == 1
    assert family_satisfies(small, Predicate("intersecting", 2))
    u5 = enumerate_universe((5, 5), 5)
    assert family_satisfies(fixed_point_family(u5, 2, 1), Predicate("intersecting", 2))


def test_fixed_point_family_needs_permutation_universe():
    with pytest.raises(ValueError):
        fixed_point_family(enumerate_universe((4, 4), 3), 2, 1)


def test_frame_family():
    u = enumerate_universe((3, 3), 2)
    fam = frame_family(u, 1, 1)
    diag = diagonal_matching((3, 3))
    expected = {tuple(sorted((diag[a], diag[b]))) for a in range(3) for b in range(a + 1, 3)}
    assert set(fam.members()) == expected
    assert len(fam) == 3

    star = frame_family(u, 1, 0)
    assert star.bits == t_star(u, (diag[0],)).bits

    u43 = enumerate_universe((4, 4), 3)
    fam43 = frame_family(u43, 1, 1)
    brute = sum(1 for m in u43.items
                if len(set(m) & set(diagonal_matching((4, 4))[:3])) >= 2)
    assert len(fam43) == brute
    assert family_satisfies(fam43, Predicate("intersecting", 1))


def test_frame_family_respects_base_order():
    u = enumerate_universe((3, 3), 2)
    base = ((3, 3), (1, 1), (2, 2))  # frame prefix differs from sorted order
    fam = frame_family(u, 1, 0, base=base)
    assert fam.bits == t_star(u, ((3, 3),)).bits
    with pytest.raises(ValueError):
        frame_family(u, 1, 2)  # window exceeds the base


def test_katona_family():
    u = enumerate_union_universe((5,), range(0, 6))
    plain, punctured = katona_sizes(5, 3)
    fam = katona_family(u, 3)
    assert len(fam) == plain == 16
    assert family_satisfies(fam, Predicate("intersecting", 1))  # n+t=2l at t=1
    sizes = {len(katona_family(u, 3, x)) for x in range(1, 6)}
    assert sizes == {punctured}

    all_of_them = katona_family(u, 0)
    assert len(all_of_them) == 32


def test_katona_family_is_t_intersecting_in_even_case():
    u = enumerate_union_universe((6,), range(1, 7))
    fam = katona_family(u, 4)  # n+t=2l with t=2
    assert family_satisfies(fam, Predicate("intersecting", 2))


def test_klein_family_k2_members():
    u = enumerate_universe((4, 4), 4)
    fam = klein_family(u)
    perms = {tuple((x, s[x - 1]) for x in range(1, 5)) for s in KLEIN_GROUP}
    assert set(fam.members()) == perms


def test_klein_family_k3_witnesses():
    u = enumerate_universe((4, 4, 4), 4)
    fam = klein_family(u)
    assert len(fam) == 16
    assert fam.contains(tuple((x, x, x) for x in range(1, 5)))
    assert fam.contains(((1, 2, 3), (2, 1, 4), (3, 4, 1), (4, 3, 2)))
    assert family_satisfies(fam, Predicate("weakly-set-intersecting", 2))
    assert not family_satisfies(fam, Predicate("set-intersecting", 2))


def test_non_uniform_star():
    fam = non_uniform_star((3, 3), (1, 2), ((1, 1),))
    assert len(fam) == 5
    fam3 = non_uniform_star((3, 3, 3), (1, 2), ((1, 1, 1),))
    assert len(fam3) == 1 + 8
    assert is_upward_closed(fam)
    assert is_upward_closed(fam3)


def test_upward_closure_detects_gaps():
    u = enumerate_union_universe((3, 3), (1, 2))
    fam = non_uniform_star((3, 3), (1, 2), ((1, 1),))
    from ekrmatch.matchings import Family

    # dropping a 2-edge member leaves the 1-edge centre with a missing extension
    gappy = Family.from_indices(u, fam.indices()[:-1])
    assert not is_upward_closed(gappy)
