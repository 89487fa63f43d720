"""Matching universes of complete k-partite k-graphs and their projection operators.

A matching is stored canonically as a tuple of k-tuples (edges) sorted
lexicographically; vertices of part i are the integers 1..n_i.  A Universe is
the full, deterministically ordered list of matchings for a part structure and
one or more edge counts; a Family is a bit-vector over one Universe.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .counts import count_matchings, validate_parts

DEFAULT_UNIVERSE_CAP = 10**6

Edge = tuple
Matching = tuple


class UniverseTooLargeError(ValueError):
    """Raised before enumerating a universe whose predicted size exceeds the cap."""

    def __init__(self, predicted: int, cap: int):
        super().__init__(f"universe too large: predicted {predicted} matchings exceeds cap {cap}")
        self.predicted = predicted
        self.cap = cap

    def __reduce__(self):  # keep picklable across worker processes
        return (self.__class__, (self.predicted, self.cap))


def canonical_matching(edges) -> Matching:
    return tuple(sorted(tuple(int(x) for x in e) for e in edges))


def validate_matching(parts, m, r: int | None = None) -> Matching:
    """Check arity, coordinate ranges and per-part distinctness; return canonical form."""
    parts = validate_parts(parts)
    k = len(parts)
    m = canonical_matching(m)
    if r is not None and len(m) != r:
        raise ValueError(f"expected {r} edges, got {len(m)}")
    for e in m:
        if len(e) != k:
            raise ValueError(f"edge {e} has arity {len(e)}, expected {k}")
        for i, x in enumerate(e):
            if not 1 <= x <= parts[i]:
                raise ValueError(f"coordinate {x} of edge {e} outside part {i + 1} of size {parts[i]}")
    for i in range(k):
        coords = [e[i] for e in m]
        if len(set(coords)) != len(coords):
            raise ValueError(f"repeated coordinate in part {i + 1}: not a matching")
    return m


def _enumerate_level(parts, r):
    """Yield all r-edge matchings, built part by part (no invalid tuples materialised)."""
    if r == 0:
        yield ()
        return
    k = len(parts)
    first = combinations(range(1, parts[0] + 1), r)
    if k == 1:
        for base in first:
            yield tuple((x,) for x in base)
        return
    rest_pools = [list(permutations(range(1, n + 1), r)) for n in parts[1:]]
    for base in first:
        for cols in product(*rest_pools):
            yield tuple((base[i],) + tuple(col[i] for col in cols) for i in range(r))


class Universe:
    """All matchings for a part structure at one or more edge counts.

    Items are ordered by edge count, then lexicographically on the canonical
    edge list, so indices are stable across runs.  Instances are immutable
    after construction.
    """

    __slots__ = ("parts", "sizes", "items", "index", "level_offsets")

    def __init__(self, parts, sizes, items):
        self.parts = validate_parts(parts)
        self.sizes = tuple(sizes)
        self.items = tuple(items)
        self.index = {m: i for i, m in enumerate(self.items)}
        offsets = {}
        for i, m in enumerate(self.items):
            offsets.setdefault(len(m), i)
        self.level_offsets = offsets

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def r(self) -> int:
        if len(self.sizes) != 1:
            raise ValueError(f"universe has several edge counts {self.sizes}; no single r")
        return self.sizes[0]

    def __len__(self) -> int:
        return len(self.items)

    @property
    def key(self):
        return (self.parts, self.sizes)

    def matching_index(self, m) -> int:
        try:
            return self.index[canonical_matching(m)]
        except KeyError:
            raise KeyError(f"matching {m} is not in universe {self.key}") from None

    def __repr__(self):
        return f"Universe(parts={self.parts}, sizes={self.sizes}, count={len(self.items)})"


def enumerate_union_universe(parts, sizes, cap: int = DEFAULT_UNIVERSE_CAP) -> Universe:
    """Enumerate the union universe over the given edge counts (ascending)."""
    parts = validate_parts(parts)
    sizes = tuple(sorted(set(int(r) for r in sizes)))
    if not sizes:
        raise ValueError("need at least one edge count")
    if sizes[0] < 0 or sizes[-1] > min(parts):
        raise ValueError(f"edge counts {sizes} out of range for parts {parts}")
    predicted = sum(count_matchings(parts, r) for r in sizes)
    if predicted > cap:
        raise UniverseTooLargeError(predicted, cap)
    items = []
    for r in sizes:
        level = sorted(_enumerate_level(parts, r))
        if len(level) != count_matchings(parts, r):
            raise AssertionError(
                f"enumeration bug: got {len(level)} matchings at r={r}, "
                f"expected {count_matchings(parts, r)}"
            )
        items.extend(level)
    return Universe(parts, sizes, items)


def enumerate_universe(parts, r: int, cap: int = DEFAULT_UNIVERSE_CAP) -> Universe:
    parts = validate_parts(parts)
    if r < 1:
        raise ValueError(f"r must be at least 1, got {r}")
    return enumerate_union_universe(parts, (r,), cap)


# ---------------------------------------------------------------------------
# projection / restriction operators (part indices are 1-based)


def _check_part_index(k: int, i: int):
    if not 1 <= i <= k:
        raise ValueError(f"part index {i} out of range 1..{k}")


def project_pair(m, i: int, j: int) -> Matching:
    """The pair projection onto parts (i, j): the set of (x_i, x_j) over the edges."""
    if i == j:
        raise ValueError("projection needs two distinct parts")
    k = len(m[0]) if m else max(i, j)
    _check_part_index(k, i)
    _check_part_index(k, j)
    return tuple(sorted((e[i - 1], e[j - 1]) for e in m))


def project_all(m, i: int, k: int | None = None) -> tuple:
    """All pair projections from part i, in increasing order of the other part."""
    if k is None:
        if not m:
            raise ValueError("cannot infer arity of an empty matching; pass k")
        k = len(m[0])
    _check_part_index(k, i)
    return tuple(project_pair(m, i, j) for j in range(1, k + 1) if j != i)


def drop_part(m, j: int) -> Matching:
    """Remove coordinate j from every edge, giving a matching of arity k-1."""
    if m and len(m[0]) == 1:
        raise ValueError("cannot drop the only part")
    if m:
        _check_part_index(len(m[0]), j)
    return tuple(sorted(e[: j - 1] + e[j:] for e in m))


def vertex_shadow(m, i: int) -> frozenset:
    """The set of part-i vertices incident to an edge of the matching."""
    if m:
        _check_part_index(len(m[0]), i)
    return frozenset(e[i - 1] for e in m)


def reduce_projection(m, i: int, j: int) -> tuple:
    """The tuple of pair projections from part i onto every part other than i and j."""
    if i == j:
        raise ValueError("reduction needs two distinct parts")
    if not m:
        return ()
    k = len(m[0])
    _check_part_index(k, i)
    _check_part_index(k, j)
    return tuple(project_pair(m, i, l) for l in range(1, k + 1) if l != i and l != j)


def drop_parts_sizes(parts, j: int) -> tuple:
    parts = validate_parts(parts)
    _check_part_index(len(parts), j)
    return parts[: j - 1] + parts[j:]


# ---------------------------------------------------------------------------
# families


class Family:
    """A subset of one universe, stored as a bit-vector (Python int bitmask)."""

    __slots__ = ("universe", "bits", "annotations")

    def __init__(self, universe: Universe, bits: int, annotations: tuple = ()):
        if bits < 0 or bits >> len(universe):
            raise ValueError("bit-vector does not fit the universe")
        self.universe = universe
        self.bits = bits
        self.annotations = tuple(annotations)

    @classmethod
    def empty(cls, universe: Universe) -> "Family":
        return cls(universe, 0)

    @classmethod
    def full(cls, universe: Universe) -> "Family":
        return cls(universe, (1 << len(universe)) - 1)

    @classmethod
    def from_indices(cls, universe: Universe, indices, annotations: tuple = ()) -> "Family":
        bits = 0
        for i in indices:
            if not 0 <= i < len(universe):
                raise ValueError(f"index {i} out of range for universe of size {len(universe)}")
            bits |= 1 << i
        return cls(universe, bits, annotations)

    @classmethod
    def from_matchings(cls, universe: Universe, ms, annotations: tuple = ()) -> "Family":
        return cls.from_indices(universe, (universe.matching_index(m) for m in ms), annotations)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> list:
        bits, out = self.bits, []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def members(self) -> list:
        items = self.universe.items
        return [items[i] for i in self.indices()]

    def contains(self, m) -> bool:
        idx = self.universe.index.get(canonical_matching(m))
        return idx is not None and bool(self.bits >> idx & 1)

    def same_universe(self, other: "Family") -> bool:
        return self.universe is other.universe or self.universe.key == other.universe.key

    def with_annotations(self, *notes: str) -> "Family":
        return Family(self.universe, self.bits, self.annotations + tuple(notes))

    def __eq__(self, other):
        return (
            isinstance(other, Family)
            and self.universe.key == other.universe.key
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.universe.key, self.bits))

    def __repr__(self):
        return f"Family(size={len(self)}, universe={self.universe.key})"


def check_same_universe(a: Family, b: Family):
    if not a.same_universe(b):
        raise ValueError(f"families live in different universes: {a.universe.key} vs {b.universe.key}")


def restrict_family(fam: Family, i: int, j: int, x) -> list:
    """Pair projections onto (i, j) of the members whose reduced projection equals x.

    The reduced projection keeps the pair projections from part i onto every
    part except i and j; the returned list is sorted and duplicate-free.
    """
    out = {
        project_pair(m, i, j)
        for m in fam.members()
        if reduce_projection(m, i, j) == tuple(x)
    }
    return sorted(out)


def reduction_classes(fam: Family, i: int, j: int) -> dict:
    """Group the members' pair projections onto (i, j) by their reduced projection."""
    classes: dict = {}
    for m in fam.members():
        classes.setdefault(reduce_projection(m, i, j), set()).add(project_pair(m, i, j))
    return {x: sorted(ps) for x, ps in classes.items()}
