"""Pairwise and family-level intersection predicates, and star recognition.

Four pairwise notions are supported, each with a strength parameter t:

* intersecting        -- the matchings share at least t edges;
* weakly-intersecting -- every 2-part pair projection shares at least t pairs;
* set-intersecting    -- some box of per-part t-sets contains exactly t edges
                         of each matching;
* weakly-set-intersecting -- every pair projection 2-part t-set-intersects
                         (projection-level reading; the notion is only used
                         at the projection level, so reports label it
                         "inferred").

For k = 1 the weak kinds coincide with their plain kinds; for k = 2 they
coincide as well, which the test suite checks by comparing whole adjacency
rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .counts import t_set_star_size, t_star_size
from .matchings import Family, project_pair

PREDICATE_KINDS = (
    "intersecting",
    "weakly-intersecting",
    "set-intersecting",
    "weakly-set-intersecting",
)


@dataclass(frozen=True)
class Predicate:
    kind: str
    t: int

    def __post_init__(self):
        if self.kind not in PREDICATE_KINDS:
            raise ValueError(f"unknown predicate kind {self.kind!r}; expected one of {PREDICATE_KINDS}")
        if self.t < 1:
            raise ValueError(f"predicate strength t must be positive, got {self.t}")

    @classmethod
    def parse(cls, spec: str) -> "Predicate":
        kind, sep, t = spec.partition(":")
        if not sep:
            raise ValueError(f"predicate spec {spec!r} must look like 'kind:t'")
        return cls(kind, int(t))

    @property
    def is_weak(self) -> bool:
        return self.kind.startswith("weakly-")

    @property
    def is_set(self) -> bool:
        return "set" in self.kind

    def plain(self) -> "Predicate":
        return Predicate(self.kind.removeprefix("weakly-"), self.t)

    def __str__(self):
        return f"{self.kind}:{self.t}"


# ---------------------------------------------------------------------------
# pairwise predicates


def intersects_t(p, q, t: int) -> bool:
    return len(set(p) & set(q)) >= t


def weakly_intersects_t(p, q, t: int) -> bool:
    k = len(p[0]) if p else 0
    if k < 2:
        raise ValueError("weak intersection needs at least 2 parts")
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if len(set(project_pair(p, i, j)) & set(project_pair(q, i, j))) < t:
                return False
    return True


@lru_cache(maxsize=None)
def box_signatures(m, t: int) -> frozenset:
    """Per-part shadow tuples of the t-edge subsets of a matching.

    Two matchings t-set-intersect exactly when they have a common signature:
    equal shadows pin down a box containing exactly t edges of each (the
    per-part distinctness of coordinates makes 'exactly t' automatic).
    """
    if t > len(m):
        return frozenset()
    k = len(m[0]) if m else 0
    return frozenset(
        tuple(frozenset(e[i] for e in sub) for i in range(k))
        for sub in combinations(m, t)
    )


def set_intersects_t(p, q, t: int) -> bool:
    if t > len(p) or t > len(q):
        raise ValueError(f"t={t} exceeds a matching size ({len(p)}, {len(q)})")
    return not box_signatures(p, t).isdisjoint(box_signatures(q, t))


def weakly_set_intersects_t(p, q, t: int) -> bool:
    k = len(p[0]) if p else 0
    if k < 2:
        raise ValueError("weak set intersection needs at least 2 parts")
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if not set_intersects_t(project_pair(p, i, j), project_pair(q, i, j), t):
                return False
    return True


def pair_checker(pred: Predicate, k: int):
    """The pairwise test for a predicate over arity-k matchings (weak = plain at k = 1)."""
    effective = pred.plain() if (pred.is_weak and k == 1) else pred
    t = effective.t
    if effective.kind == "intersecting":
        return lambda p, q: intersects_t(p, q, t)
    if effective.kind == "weakly-intersecting":
        return lambda p, q: weakly_intersects_t(p, q, t)
    if effective.kind == "set-intersecting":
        return lambda p, q: set_intersects_t(p, q, t)
    return lambda p, q: weakly_set_intersects_t(p, q, t)


def family_satisfies(fam: Family, pred: Predicate) -> bool:
    """Whether every two members satisfy the pairwise predicate (quadratic loop)."""
    members = fam.members()
    check = pair_checker(pred, fam.universe.k)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            if not check(members[a], members[b]):
                return False
    return True


def cross_set_intersecting(g: Family, h: Family, t: int) -> bool:
    """Whether every member of one family t-set-intersects every member of the other."""
    if g.universe.sizes != h.universe.sizes or g.universe.k != h.universe.k:
        raise ValueError(
            f"cross check needs matching edge counts and arity: "
            f"{g.universe.key} vs {h.universe.key}"
        )
    gs = [box_signatures(m, t) for m in g.members()]
    hs = [box_signatures(m, t) for m in h.members()]
    return all(not a.isdisjoint(b) for a in gs for b in hs)


# ---------------------------------------------------------------------------
# star recognition


@dataclass
class StarClassification:
    kind: str  # "t-star" | "t-set-star" | "weak-t-star" | "weak-t-set-star" | "none"
    t: int
    centres: tuple = ()
    projections_are_box_stars: bool | None = None
    annotations: tuple = ()

    def summary(self) -> str:
        extra = ""
        if self.kind == "weak-t-set-star" and self.projections_are_box_stars is False:
            extra = "[projections star-sized, not box stars]"
        return f"{self.kind}{extra}"


def degenerate_star_params(parts, r: int, t: int) -> bool:
    """Parameter sets where a t-star centre is not unique (single-member stars)."""
    return r == t or (r == t + 1 and all(n == t + 1 for n in parts))


def ambiguous_box_params(parts, r: int, t: int) -> bool:
    """Parameter sets where a t-set-star has both a box and its complement as centre."""
    return r == 2 * t and all(n == 2 * t for n in parts)


def edges_in_box(m, box) -> int:
    return sum(all(e[i] in box[i] for i in range(len(e))) for e in m)


def full_star_bits(universe, centre) -> int:
    centre = set(centre)
    bits = 0
    for idx, m in enumerate(universe.items):
        if centre <= set(m):
            bits |= 1 << idx
    return bits


def full_set_star_bits(universe, box, t: int) -> int:
    bits = 0
    for idx, m in enumerate(universe.items):
        if edges_in_box(m, box) == t:
            bits |= 1 << idx
    return bits


def _star_centres(fam: Family, t: int) -> tuple:
    """All t-edge centres whose full star in the universe equals the family."""
    members = fam.members()
    common = set(members[0])
    for m in members[1:]:
        common &= set(m)
        if len(common) < t:
            return ()
    found = []
    for centre in combinations(sorted(common), t):
        if full_star_bits(fam.universe, centre) == fam.bits:
            found.append(centre)
    return tuple(found)


def _set_star_boxes(fam: Family, t: int) -> tuple:
    """All t-boxes whose full set-star in the universe equals the family."""
    members = fam.members()
    k = fam.universe.k
    seen, found = set(), []
    for sub in combinations(members[0], t):
        box = tuple(tuple(sorted(e[i] for e in sub)) for i in range(k))
        if box in seen:
            continue
        seen.add(box)
        if full_set_star_bits(fam.universe, [set(b) for b in box], t) == fam.bits:
            found.append(box)
    return tuple(found)


def projection_family(members, i: int, j: int) -> list:
    return sorted({project_pair(m, i, j) for m in members})


def is_full_pair_star(proj, ni: int, nj: int, r: int, t: int) -> bool:
    """Whether a set of 2-part matchings is the full t-star of its pair universe."""
    if len(proj) != t_star_size((ni, nj), r, t):
        return False
    common = set(proj[0])
    for m in proj[1:]:
        common &= set(m)
    # t common pairs + full star cardinality forces equality with the star
    return len(common) >= t


def is_full_pair_set_star(proj, ni: int, nj: int, r: int, t: int) -> bool:
    """Whether a set of 2-part matchings is the full t-set-star of its pair universe."""
    if len(proj) != t_set_star_size((ni, nj), r, t):
        return False
    first = proj[0]
    for sub in combinations(first, t):
        box = (frozenset(e[0] for e in sub), frozenset(e[1] for e in sub))
        if all(edges_in_box(m, box) == t for m in proj):
            return True
    return False


def is_max_size_pair_set_intersecting(proj, ni: int, nj: int, r: int, t: int) -> bool:
    if len(proj) != t_set_star_size((ni, nj), r, t):
        return False
    sigs = [box_signatures(m, t) for m in proj]
    return all(not sigs[a].isdisjoint(sigs[b]) for a in range(len(sigs)) for b in range(a + 1, len(sigs)))


def classify_star(fam: Family, t: int) -> StarClassification:
    """Identify whether a family is exactly a full (set-)star or a weak one.

    Precedence: t-star, then t-set-star, then the weak variants.  All valid
    centres are reported, which covers both degenerate regimes (single-member
    stars, and box/complement-box ambiguity at r = 2t with all parts of size
    2t).  The weak-set classification accepts projections that are maximum
    star-sized t-set-intersecting families and records separately whether
    they are genuine box stars.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    u = fam.universe
    notes = []
    if len(fam) == 0:
        return StarClassification("none", t, annotations=("empty",))
    if len(u.sizes) == 1:
        if degenerate_star_params(u.parts, u.r, t):
            notes.append("degenerate-star-centre")
        if ambiguous_box_params(u.parts, u.r, t):
            notes.append("ambiguous-box-centre")

    centres = _star_centres(fam, t)
    if centres:
        return StarClassification("t-star", t, centres, annotations=tuple(notes))

    if u.k >= 2:
        boxes = _set_star_boxes(fam, t)
        if boxes:
            return StarClassification("t-set-star", t, boxes, annotations=tuple(notes))

    if u.k >= 3 and len(u.sizes) == 1 and t <= u.r:
        members = fam.members()
        r, parts = u.r, u.parts
        pairs = [(i, j) for i in range(1, u.k + 1) for j in range(i + 1, u.k + 1)]
        projs = {(i, j): projection_family(members, i, j) for i, j in pairs}
        if all(is_full_pair_star(projs[(i, j)], parts[i - 1], parts[j - 1], r, t) for i, j in pairs):
            return StarClassification("weak-t-star", t, annotations=tuple(notes))
        if all(
            is_max_size_pair_set_intersecting(projs[(i, j)], parts[i - 1], parts[j - 1], r, t)
            for i, j in pairs
        ):
            genuine = all(
                is_full_pair_set_star(projs[(i, j)], parts[i - 1], parts[j - 1], r, t)
                for i, j in pairs
            )
            return StarClassification(
                "weak-t-set-star", t, projections_are_box_stars=genuine, annotations=tuple(notes)
            )

    return StarClassification("none", t, annotations=tuple(notes))
