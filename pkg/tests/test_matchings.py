import random

import pytest

from ekrmatch.counts import count_matchings
from ekrmatch.matchings import (
    Family,
    UniverseTooLargeError,
    canonical_matching,
    check_same_universe,
    drop_part,
    enumerate_union_universe,
    enumerate_universe,
    project_all,
    project_pair,
    reduce_projection,
    reduction_classes,
    restrict_family,
    validate_matching,
    vertex_shadow,
)
from ekrmatch.storage import load_family, load_universe, save_family, save_universe
from helpers import brute_matchings, random_subfamily

PAPER_P = ((1, 1, 1), (2, 2, 2), (3, 3, 3))
PAPER_Q = ((1, 1, 4), (2, 4, 2), (4, 3, 3))


@pytest.mark.parametrize("parts,r", [((2, 2), 2), ((3, 3), 2), ((3, 4), 2),
                                     ((3, 3, 3), 2), ((4,), 2), ((4, 4), 3)])
def test_enumeration_matches_brute_force(parts, r):
    u = enumerate_universe(parts, r)
    assert list(u.items) == sorted(brute_matchings(parts, r))
    assert len(u) == count_matchings(parts, r)


def test_enumeration_is_canonical_and_lexicographic():
    u = enumerate_universe((3, 3, 3), 2)
    assert list(u.items) == sorted(u.items)
    for m in u.items:
        assert canonical_matching(m) == m
    assert len(set(u.items)) == len(u)


def test_index_round_trip():
    u = enumerate_universe((3, 3), 2)
    for i, m in enumerate(u.items):
        assert u.matching_index(m) == i
    with pytest.raises(KeyError):
        u.matching_index((((1, 1), (1, 2))))  # repeated part-1 coordinate


def test_universe_cap():
    with pytest.raises(UniverseTooLargeError) as err:
        enumerate_universe((3, 3), 2, cap=10)
    assert err.value.predicted == 18


def test_enumerate_range_errors():
    with pytest.raises(ValueError):
        enumerate_universe((3, 3), 0)
    with pytest.raises(ValueError):
        enumerate_universe((3, 3), 4)


def test_union_universe_levels():
    u = enumerate_union_universe((3, 3), (1, 2))
    assert len(u) == 9 + 18
    assert u.sizes == (1, 2)
    assert u.level_offsets == {1: 0, 2: 9}
    assert all(len(m) == 1 for m in u.items[:9])
    assert all(len(m) == 2 for m in u.items[9:])
    with pytest.raises(ValueError):
        u.r  # no single edge count


def test_validate_matching():
    assert validate_matching((3, 3), [(2, 2), (1, 1)]) == ((1, 1), (2, 2))
    with pytest.raises(ValueError):
        validate_matching((3, 3), [(1, 1), (1, 2)])  # repeated coordinate
    with pytest.raises(ValueError):
        validate_matching((3, 3), [(1, 4)])  # out of range
    with pytest.raises(ValueError):
        validate_matching((3, 3), [(1, 1, 1)])  # wrong arity


def test_project_pair_examples():
    assert project_pair(PAPER_P, 1, 3) == ((1, 1), (2, 2), (3, 3))
    assert project_pair(PAPER_Q, 1, 2) == ((1, 1), (2, 4), (4, 3))
    assert project_pair(((1, 2),), 2, 1) == ((2, 1),)
    with pytest.raises(ValueError):
        project_pair(PAPER_P, 2, 2)


def test_drop_part_examples():
    assert drop_part(PAPER_P, 2) == ((1, 1), (2, 2), (3, 3))
    assert drop_part(((1, 2), (2, 1)), 2) == ((1,), (2,))
    with pytest.raises(ValueError):
        drop_part(((1,), (2,)), 1)


def test_drop_and_project_commute():
    # dropping part j then projecting equals projecting then removing entry j
    for m in enumerate_universe((3, 3, 3), 2).items[:40]:
        direct = reduce_projection(m, 1, 2)  # (P^1_3,)
        via_drop = project_all(drop_part(m, 2), 1, k=2)
        assert direct == via_drop
    direct = reduce_projection(PAPER_Q, 1, 2)
    assert direct == (project_pair(PAPER_Q, 1, 3),)


def test_vertex_shadow():
    assert vertex_shadow(PAPER_P, 2) == frozenset({1, 2, 3})
    assert vertex_shadow(PAPER_Q, 3) == frozenset({4, 2, 3})
    assert vertex_shadow(((3, 1),), 1) == frozenset({3})
    # the shadow survives projection
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                assert vertex_shadow(project_pair(PAPER_Q, i, j), 1) == vertex_shadow(PAPER_Q, i)


def test_projection_is_injective_on_random_families():
    rng = random.Random(11)
    u = enumerate_universe((3, 3, 3), 2)
    for _ in range(30):
        fam = random_subfamily(u, rng, max_size=15)
        members = fam.members()
        for i in (1, 2, 3):
            assert len({project_all(m, i) for m in members}) == len(members)


def test_restriction_partitions_the_family():
    u = enumerate_universe((3, 3, 3), 2)
    full = Family.full(u)
    for i, j in [(1, 2), (2, 1), (1, 3), (3, 2)]:
        classes = reduction_classes(full, i, j)
        assert sum(len(ps) for ps in classes.values()) == 108
    rng = random.Random(3)
    for _ in range(20):
        fam = random_subfamily(u, rng)
        classes = reduction_classes(fam, 1, 3)
        assert sum(len(ps) for ps in classes.values()) == len(fam)


def test_restrict_family_single_member():
    u = enumerate_universe((3, 3, 3), 2)
    fam = Family.from_indices(u, [17])
    m = u.items[17]
    x = reduce_projection(m, 1, 2)
    assert restrict_family(fam, 1, 2, x) == [project_pair(m, 1, 2)]
    assert restrict_family(fam, 1, 2, ((9, 9),) * 2) == []


def test_restriction_stays_over_the_class_shadow():
    u = enumerate_universe((3, 3, 3), 2)
    fam = Family.from_indices(u, range(0, 108, 7))
    for x, projs in reduction_classes(fam, 2, 3).items():
        shadow = vertex_shadow(x[0], 1)
        for p in projs:
            assert vertex_shadow(p, 1) == shadow


def test_family_basics():
    u = enumerate_universe((3, 3), 2)
    fam = Family.from_matchings(u, [(((1, 1), (2, 2))), (((1, 1), (3, 3)))])
    assert len(fam) == 2
    assert fam.contains(((2, 2), (1, 1)))
    assert not fam.contains(((1, 2), (2, 1)))
    assert fam.members() == [((1, 1), (2, 2)), ((1, 1), (3, 3))]
    assert Family.full(u).bits == (1 << 18) - 1
    assert len(Family.empty(u)) == 0


def test_family_universe_mismatch():
    u1 = enumerate_universe((3, 3), 2)
    u2 = enumerate_universe((3, 3, 3), 2)
    with pytest.raises(ValueError):
        check_same_universe(Family.full(u1), Family.full(u2))
    with pytest.raises(ValueError):
        Family(u1, 1 << 20)  # bits beyond the universe
    with pytest.raises(KeyError):
        Family.from_matchings(u1, [((1, 1, 1), (2, 2, 2))])


def test_universe_storage_round_trip(tmp_path):
    u = enumerate_union_universe((3, 3), (1, 2))
    path = tmp_path / "universe.jsonl"
    save_universe(u, str(path))
    loaded = load_universe(str(path))
    assert loaded.items == u.items and loaded.key == u.key


def test_universe_storage_rejects_tampering(tmp_path):
    u = enumerate_universe((2, 2), 2)
    path = tmp_path / "universe.jsonl"
    save_universe(u, str(path))
    lines = path.read_text().splitlines()
    lines[1], lines[2] = lines[2], lines[1]
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError):
        load_universe(str(path))


@pytest.mark.parametrize("form", ["indices", "matchings"])
def test_family_storage_round_trip(tmp_path, form):
    u = enumerate_union_universe((3, 3), (1, 2))
    fam = Family.from_indices(u, [0, 5, 20], annotations=("demo",))
    path = tmp_path / "family.json"
    save_family(fam, str(path), form=form)
    loaded = load_family(str(path))
    assert loaded == fam
    assert loaded.annotations == ("demo",)
