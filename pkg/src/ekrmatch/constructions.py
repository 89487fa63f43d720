"""Concrete extremal families over enumerated universes.

Permutation families are represented through their 2-part matching encoding
{(x, sigma(x))}, so the fixed-point and Klein-group families run through the
same machinery as every other family.
"""

from __future__ import annotations

from itertools import product

from .counts import validate_parts
from .matchings import (
    DEFAULT_UNIVERSE_CAP,
    Family,
    Universe,
    canonical_matching,
    enumerate_union_universe,
    project_pair,
    validate_matching,
)
from .predicates import ambiguous_box_params, degenerate_star_params, edges_in_box


def _param_notes(universe: Universe, t: int) -> tuple:
    if len(universe.sizes) != 1:
        return ()
    notes = []
    if degenerate_star_params(universe.parts, universe.r, t):
        notes.append("degenerate-star-centre")
    if ambiguous_box_params(universe.parts, universe.r, t):
        notes.append("ambiguous-box-centre")
    return tuple(notes)


def t_star(universe: Universe, centre) -> Family:
    """All matchings of the universe containing every centre edge."""
    centre = validate_matching(universe.parts, centre)
    t = len(centre)
    if t < 1 or t > max(universe.sizes):
        raise ValueError(f"centre of {t} edges cannot sit inside matchings of sizes {universe.sizes}")
    cset = set(centre)
    bits = 0
    for idx, m in enumerate(universe.items):
        if cset <= set(m):
            bits |= 1 << idx
    return Family(universe, bits, _param_notes(universe, t))


def t_set_star(universe: Universe, box) -> Family:
    """All matchings with exactly t edges inside the box of per-part t-sets."""
    parts = universe.parts
    box = tuple(frozenset(int(x) for x in side) for side in box)
    if len(box) != universe.k:
        raise ValueError(f"box has {len(box)} sides, expected {universe.k}")
    sizes = {len(side) for side in box}
    if len(sizes) != 1:
        raise ValueError("box sides must all have the same size")
    t = sizes.pop()
    if t < 1 or t > max(universe.sizes):
        raise ValueError(f"box side size {t} out of range for matching sizes {universe.sizes}")
    for i, side in enumerate(box):
        if not side <= set(range(1, parts[i] + 1)):
            raise ValueError(f"box side {sorted(side)} not inside part {i + 1} of size {parts[i]}")
    bits = 0
    for idx, m in enumerate(universe.items):
        if edges_in_box(m, box) == t:
            bits |= 1 << idx
    return Family(universe, bits, _param_notes(universe, t))


def semi_star(universe: Universe, centres, set_variant: bool = False) -> Family:
    """Maximal family pinned by one centre per projection of the last part.

    For each part j < k a centre constrains the pair projection between the
    last part and part j: either t fixed pairs that must appear, or (set
    variant) a t-box that must be met in exactly t pairs.  When the last-part
    shadows of the centres coincide this is a (set-)star; when they do not,
    the family is strictly smaller than a star.
    """
    parts = universe.parts
    k = universe.k
    if k < 2:
        raise ValueError("semi-star needs at least 2 parts")
    centres = list(centres)
    if len(centres) != k - 1:
        raise ValueError(f"need one centre per part 1..{k - 1}, got {len(centres)}")

    last_shadow = set()
    tests = []
    t = None
    for j, centre in enumerate(centres, start=1):
        pin_parts = (parts[-1], parts[j - 1])
        if set_variant:
            a, b = centre
            a, b = frozenset(int(x) for x in a), frozenset(int(x) for x in b)
            if len(a) != len(b):
                raise ValueError(f"box sides for part {j} have different sizes")
            if not a <= set(range(1, pin_parts[0] + 1)) or not b <= set(range(1, pin_parts[1] + 1)):
                raise ValueError(f"box for part {j} outside its parts")
            tj = len(a)
            last_shadow |= a
            tests.append((j, ("box", (a, b), tj)))
        else:
            pins = validate_matching(pin_parts, centre)
            tj = len(pins)
            last_shadow |= {e[0] for e in pins}
            tests.append((j, ("pairs", set(pins), tj)))
        if t is None:
            t = tj
        elif t != tj:
            raise ValueError(f"centres have mixed sizes {t} and {tj}")

    u = len(last_shadow)
    bits = 0
    for idx, m in enumerate(universe.items):
        ok = True
        for j, (mode, payload, tj) in tests:
            proj = set(project_pair(m, k, j))
            if mode == "pairs":
                if not payload <= proj:
                    ok = False
                    break
            else:
                a, b = payload
                if sum(1 for (x, y) in proj if x in a and y in b) != tj:
                    ok = False
                    break
        if ok:
            bits |= 1 << idx
    return Family(universe, bits, (f"semi-star:u={u}",) + _param_notes(universe, t))


def ak_family(universe: Universe, t: int, i: int) -> Family:
    """r-subsets of [n] with at least t+i elements inside the window [t+2i] (k = 1)."""
    if universe.k != 1:
        raise ValueError("frame families over subsets need a 1-part universe")
    w = t + 2 * i
    if t < 1 or i < 0 or w > universe.parts[0]:
        raise ValueError(f"bad frame parameters t={t}, i={i} for n={universe.parts[0]}")
    bits = 0
    for idx, m in enumerate(universe.items):
        if sum(1 for e in m if e[0] <= w) >= t + i:
            bits |= 1 << idx
    return Family(universe, bits)


def fixed_point_family(universe: Universe, t: int, i: int) -> Family:
    """Permutations with at least t+i fixed points inside the window [t+2i]."""
    n = universe.parts[0]
    if universe.k != 2 or universe.parts != (n, n) or universe.sizes != (n,):
        raise ValueError(f"need the permutation universe over two equal parts, got {universe.key}")
    w = t + 2 * i
    if t < 1 or i < 0 or w > n:
        raise ValueError(f"bad window parameters t={t}, i={i} for n={n}")
    bits = 0
    for idx, m in enumerate(universe.items):
        if sum(1 for (x, y) in m if x == y and x <= w) >= t + i:
            bits |= 1 << idx
    return Family(universe, bits)


def diagonal_matching(parts, m: int | None = None) -> tuple:
    parts = validate_parts(parts)
    if m is None:
        m = min(parts)
    if not 1 <= m <= min(parts):
        raise ValueError(f"diagonal of length {m} does not fit parts {parts}")
    return tuple((x,) * len(parts) for x in range(1, m + 1))


def frame_family(universe: Universe, t: int, i: int, base=None) -> Family:
    """Matchings sharing at least t+i edges with the first t+2i edges of a base matching.

    The base defaults to the diagonal perfect matching; its edge order is
    respected, not canonicalised, since the frame is a prefix.
    """
    parts = universe.parts
    if base is None:
        base = diagonal_matching(parts)
    else:
        base = tuple(tuple(int(x) for x in e) for e in base)
        validate_matching(parts, base, min(parts))
    w = t + 2 * i
    if t < 1 or i < 0 or w > len(base):
        raise ValueError(f"frame window t+2i={w} exceeds base matching of size {len(base)}")
    frame = set(base[:w])
    bits = 0
    for idx, m in enumerate(universe.items):
        if len(frame & set(m)) >= t + i:
            bits |= 1 << idx
    return Family(universe, bits)


def katona_family(universe: Universe, l: int, x: int | None = None) -> Family:
    """Subsets of [n] of size at least l, optionally not counting a marked element."""
    if universe.k != 1:
        raise ValueError("threshold families need a 1-part universe")
    n = universe.parts[0]
    if not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= n; got l={l}, n={n}")
    if x is not None and not 1 <= x <= n:
        raise ValueError(f"marked element {x} outside [n]")
    bits = 0
    for idx, m in enumerate(universe.items):
        sz = len(m) - (1 if x is not None and (x,) in m else 0)
        if sz >= l:
            bits |= 1 << idx
    return Family(universe, bits)


KLEIN_GROUP = (
    (1, 2, 3, 4),  # identity
    (2, 1, 4, 3),  # the three fixed-point-free involutions of [4]
    (3, 4, 1, 2),
    (4, 3, 2, 1),
)


def klein_family(universe: Universe) -> Family:
    """Matchings whose every projection from part 1 lies in the Klein four-group.

    Over k parts of size 4 at r = 4 this gives 4^(k-1) members; each member is
    {(y, s2(y), ..., sk(y))} for group elements s2..sk.
    """
    if universe.k < 2 or universe.sizes != (4,) or any(n != 4 for n in universe.parts):
        raise ValueError(f"Klein family needs all parts of size 4 at r=4, got {universe.key}")
    k = universe.k
    ms = []
    for sigmas in product(KLEIN_GROUP, repeat=k - 1):
        edges = tuple((y,) + tuple(s[y - 1] for s in sigmas) for y in range(1, 5))
        ms.append(canonical_matching(edges))
    return Family.from_matchings(universe, ms)


def non_uniform_star(parts, sizes, centre, cap: int = DEFAULT_UNIVERSE_CAP) -> Family:
    """The union over the given edge counts of the stars with a common centre."""
    universe = enumerate_union_universe(parts, sizes, cap)
    return t_star(universe, centre)


def is_upward_closed(fam: Family) -> bool:
    """Whether every universe matching extending a member is itself a member."""
    u = fam.universe
    member_sets = [set(m) for m in fam.members()]
    for idx, q in enumerate(u.items):
        if fam.bits >> idx & 1:
            continue
        qset = set(q)
        if any(ms < qset for ms in member_sets):
            return False
    return True
