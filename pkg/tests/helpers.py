"""Independent brute-force oracles for the test suite.

These deliberately use different algorithms from the package (filtered
Cartesian products, explicit box enumeration) so that agreement is evidence,
not tautology.
"""

from itertools import combinations, product


def brute_matchings(parts, r):
    """All r-edge matchings by filtering subsets of the full edge list."""
    k = len(parts)
    edges = [tuple(e) for e in product(*(range(1, n + 1) for n in parts))]
    out = []
    for sub in combinations(edges, r):
        if all(len({e[i] for e in sub}) == r for i in range(k)):
            out.append(tuple(sorted(sub)))
    return out


def oracle_set_intersects(p, q, t, parts):
    """Box-counting definition: some per-part t-box holds exactly t edges of each."""
    sides = [combinations(range(1, n + 1), t) for n in parts]
    for box in product(*(list(s) for s in sides)):
        box_sets = [set(side) for side in box]
        pc = sum(all(e[i] in box_sets[i] for i in range(len(parts))) for e in p)
        qc = sum(all(e[i] in box_sets[i] for i in range(len(parts))) for e in q)
        if pc == t and qc == t:
            return True
    return False


def brute_subsets_with_window(n, r, window, need):
    """r-subsets of [n] meeting [window] in at least `need` elements."""
    return sum(
        1
        for sub in combinations(range(1, n + 1), r)
        if sum(1 for x in sub if x <= window) >= need
    )


def brute_window_fixed_permutations(n, window, need):
    """Permutations of [n] with at least `need` fixed points inside [window]."""
    from itertools import permutations

    count = 0
    for sigma in permutations(range(1, n + 1)):
        if sum(1 for x in range(1, window + 1) if sigma[x - 1] == x) >= need:
            count += 1
    return count


def random_subfamily(universe, rng, max_size=10):
    """A uniform random subset of universe indices (no predicate constraint)."""
    size = rng.randint(1, max_size)
    idx = rng.sample(range(len(universe)), min(size, len(universe)))
    from ekrmatch.matchings import Family

    return Family.from_indices(universe, idx)
