"""Exact maximum-family search via maximum cliques of compatibility graphs.

A compatibility graph has one vertex per universe matching and an edge where
the pairwise predicate holds, so maximum predicate-satisfying families are
exactly maximum cliques.  The solver is branch-and-bound over bit-rows
(Python ints) with a greedy-colouring bound and degeneracy root ordering.
All tie-breaking is by lowest vertex index, so results are deterministic; the
reported witness is the first maximum clique in the fixed depth-first order,
which is also independent of the worker count.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from multiprocessing import get_context

from .counts import t_set_star_size, t_star_size
from .matchings import DEFAULT_UNIVERSE_CAP, Family, Universe, enumerate_union_universe, project_pair
from .predicates import Predicate, box_signatures, classify_star

DEFAULT_GRAPH_CAP = 20_000
DEFAULT_NODE_BUDGET = 10**9
DEFAULT_MAXIMA_CAP = 10**5


class GraphTooLargeError(ValueError):
    def __init__(self, n: int, cap: int):
        super().__init__(
            f"compatibility graph on {n} vertices exceeds cap {cap} "
            f"(about {n * n // 8} bytes of adjacency)"
        )
        self.vertices = n
        self.cap = cap

    def __reduce__(self):  # keep picklable across worker processes
        return (self.__class__, (self.vertices, self.cap))


class NodeBudgetExceeded(RuntimeError):
    """The branch-and-bound node budget ran out; no answer is reported."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"clique search exceeded node budget: {nodes} > {budget}")
        self.nodes = nodes
        self.budget = budget

    def __reduce__(self):
        return (self.__class__, (self.nodes, self.budget))


class MaximaOverflowError(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} maximum cliques; raise the cap to enumerate them")
        self.cap = cap

    def __reduce__(self):
        return (self.__class__, (self.cap,))


class InternalCheckError(RuntimeError):
    """An invariant that can only fail through an engine bug was violated."""


class CompatGraph:
    __slots__ = ("universe", "pred", "rows")

    def __init__(self, universe: Universe, pred: Predicate, rows):
        self.universe = universe
        self.pred = pred
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def degree(self, v: int) -> int:
        return (self.rows[v] & ~(1 << v)).bit_count()


# ---------------------------------------------------------------------------
# graph construction


def _vertex_features(items, pred: Predicate, k: int):
    eff = pred.plain() if (pred.is_weak and k == 1) else pred
    t = eff.t
    if eff.kind == "intersecting":
        return eff, [frozenset(m) for m in items]
    if eff.kind == "set-intersecting":
        return eff, [box_signatures(m, t) for m in items]
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    if eff.kind == "weakly-intersecting":
        return eff, [tuple(frozenset(project_pair(m, i, j)) for i, j in pairs) for m in items]
    return eff, [tuple(box_signatures(project_pair(m, i, j), t) for i, j in pairs) for m in items]


def _feature_checker(eff: Predicate):
    t = eff.t
    if eff.kind == "intersecting":
        if t == 1:
            return lambda a, b: not a.isdisjoint(b)
        return lambda a, b: len(a & b) >= t
    if eff.kind == "set-intersecting":
        return lambda a, b: not a.isdisjoint(b)
    if eff.kind == "weakly-intersecting":
        if t == 1:
            return lambda a, b: all(not x.isdisjoint(y) for x, y in zip(a, b))
        return lambda a, b: all(len(x & y) >= t for x, y in zip(a, b))
    return lambda a, b: all(not x.isdisjoint(y) for x, y in zip(a, b))


_BUILD_CTX = None


def _init_build(eff, features):
    global _BUILD_CTX
    _BUILD_CTX = (_feature_checker(eff), features)


def _build_row_block(block):
    check, features = _BUILD_CTX
    lo, hi = block
    out = []
    for u in range(lo, hi):
        fu = features[u]
        row = 0
        for v in range(u):
            if check(fu, features[v]):
                row |= 1 << v
        out.append(row)
    return lo, out


def build_compat_graph(
    universe: Universe,
    pred: Predicate,
    cap: int = DEFAULT_GRAPH_CAP,
    workers: int = 1,
) -> CompatGraph:
    """Adjacency bit-rows under the pairwise predicate; diagonal bits are set."""
    n = len(universe)
    if n > cap:
        raise GraphTooLargeError(n, cap)
    eff, features = _vertex_features(universe.items, pred, universe.k)
    lower = [0] * n
    if workers > 1 and n >= 64:
        blocks = _split_blocks(n, workers * 4)
        ctx = get_context("fork")
        with ctx.Pool(workers, initializer=_init_build, initargs=(eff, features)) as pool:
            for lo, rows in pool.map(_build_row_block, blocks):
                lower[lo : lo + len(rows)] = rows
    else:
        check = _feature_checker(eff)
        for u in range(n):
            fu = features[u]
            row = 0
            for v in range(u):
                if check(fu, features[v]):
                    row |= 1 << v
            lower[u] = row
    rows = [lower[u] | (1 << u) for u in range(n)]
    for u in range(n):
        r = lower[u]
        while r:
            low = r & -r
            rows[low.bit_length() - 1] |= 1 << u
            r ^= low
    return CompatGraph(universe, pred, rows)


def _split_blocks(n: int, parts: int):
    # lower-triangle work grows with the row index, so balance by area
    bounds = [0]
    for b in range(1, parts):
        bounds.append(round(n * (b / parts) ** 0.5))
    bounds.append(n)
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


# ---------------------------------------------------------------------------
# maximum clique


@dataclass
class _SearchState:
    budget: int
    best: int = 0
    witness: int = 0
    nodes: int = 0


def _colour_order(pmask: int, nadj):
    """Greedy colouring of the candidate set; returns vertices with ascending colours."""
    order, colours = [], []
    colour = 0
    while pmask:
        colour += 1
        avail = pmask
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            colours.append(colour)
            pmask ^= low
            avail = (avail ^ low) & ~nadj[v]
    return order, colours


def _expand(nadj, pmask: int, rbits: int, rsize: int, state: _SearchState):
    state.nodes += 1
    if state.nodes > state.budget:
        raise NodeBudgetExceeded(state.nodes, state.budget)
    order, colours = _colour_order(pmask, nadj)
    for idx in range(len(order) - 1, -1, -1):
        if rsize + colours[idx] <= state.best:
            return
        v = order[idx]
        vbit = 1 << v
        newp = pmask & nadj[v] & ~vbit
        if newp:
            _expand(nadj, newp, rbits | vbit, rsize + 1, state)
        elif rsize + 1 > state.best:
            state.best = rsize + 1
            state.witness = rbits | vbit
        pmask ^= vbit


def _degeneracy_order(nadj, n: int):
    """Repeatedly remove a minimum-degree vertex, lowest index first on ties."""
    import heapq

    alive = (1 << n) - 1
    heap = [((nadj[v] & alive).bit_count(), v) for v in range(n)]
    heapq.heapify(heap)
    removed = 0
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed >> v & 1:
            continue
        cur = (nadj[v] & ~removed).bit_count()
        if cur != d:
            heapq.heappush(heap, (cur, v))
            continue
        order.append(v)
        removed |= 1 << v
    return order


def _root_subproblems(nadj, n: int):
    order = _degeneracy_order(nadj, n)
    later = 0
    laters = [0] * n
    for pos in range(n - 1, -1, -1):
        laters[pos] = later
        later |= 1 << order[pos]
    return [(order[pos], nadj[order[pos]] & laters[pos]) for pos in range(n)]


def _solve_root(nadj, v: int, pmask: int, initial_best: int, budget: int):
    """Exact best clique through v within pmask; witness is the first maximum in DFS order."""
    state = _SearchState(budget=budget, best=initial_best)
    if pmask == 0:
        if 1 > initial_best:
            return 1, 1 << v, 1
        return initial_best, 0, 1
    _expand(nadj, pmask, 1 << v, 1, state)
    return state.best, state.witness, state.nodes


_CLIQUE_CTX = None


def _init_clique(nadj, initial_best, budget):
    global _CLIQUE_CTX
    _CLIQUE_CTX = (nadj, initial_best, budget)


def _solve_root_chunk(chunk):
    nadj, initial_best, budget = _CLIQUE_CTX
    return [(pos,) + _solve_root(nadj, v, pmask, initial_best, budget) for pos, v, pmask in chunk]


def max_clique(
    graph: CompatGraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
    seed: Family | None = None,
):
    """Exact maximum clique size and a deterministic witness family.

    An optional seed family (known clique, e.g. a star) only raises the
    initial lower bound; when nothing larger exists the seed itself is the
    witness.  Exceeding the node budget raises, never degrades to a wrong
    answer.
    """
    n = graph.n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 512))
    nadj = [graph.rows[v] & ~(1 << v) for v in range(n)]
    seed_size, seed_bits = 0, 0
    if seed is not None:
        if seed.universe.key != graph.universe.key:
            raise ValueError("seed family lives in a different universe")
        seed_size, seed_bits = len(seed), seed.bits
    roots = _root_subproblems(nadj, n)
    best_size, best_bits = seed_size, seed_bits
    total_nodes = 0
    if workers <= 1:
        state = _SearchState(budget=node_budget, best=best_size, witness=best_bits)
        for v, pmask in roots:
            if pmask == 0:
                if 1 > state.best:
                    state.best, state.witness = 1, 1 << v
                continue
            _expand(nadj, pmask, 1 << v, 1, state)
        best_size, best_bits, total_nodes = state.best, state.witness, state.nodes
        if best_size == seed_size and seed is not None:
            best_bits = seed_bits
    else:
        # strided chunks balance load (early roots carry the larger subtrees);
        # each result carries its root position so the combine runs in root order
        tagged = [(pos, v, pmask) for pos, (v, pmask) in enumerate(roots)]
        chunks = [c for c in (tagged[i::workers] for i in range(workers)) if c]
        ctx = get_context("fork")
        with ctx.Pool(len(chunks), initializer=_init_clique, initargs=(nadj, seed_size, node_budget)) as pool:
            chunk_results = pool.map(_solve_root_chunk, chunks)
        per_root = [None] * n
        for chunk in chunk_results:
            for pos, size, bits, nodes in chunk:
                per_root[pos] = (size, bits, nodes)
        for res in per_root:
            size, bits, nodes = res
            total_nodes += nodes
            if size > best_size:
                best_size, best_bits = size, bits
        if best_size == seed_size and seed is not None:
            best_bits = seed_bits
    witness = Family(graph.universe, best_bits)
    return best_size, witness, total_nodes


def max_clique_naive(graph: CompatGraph):
    """Plain include/exclude enumeration; the independent oracle for the solver."""
    n = graph.n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 512))
    nadj = [graph.rows[v] & ~(1 << v) for v in range(n)]
    best = [0, 0]

    def rec(rbits, rsize, pmask):
        if pmask == 0:
            if rsize > best[0]:
                best[0], best[1] = rsize, rbits
            return
        if rsize + pmask.bit_count() <= best[0]:
            return
        low = pmask & -pmask
        v = low.bit_length() - 1
        rec(rbits | low, rsize + 1, (pmask ^ low) & nadj[v])
        rec(rbits, rsize, pmask ^ low)

    rec(0, 0, (1 << n) - 1)
    return best[0], Family(graph.universe, best[1])


def all_max_cliques(graph: CompatGraph, size: int, cap: int = DEFAULT_MAXIMA_CAP):
    """Every clique of exactly the given (maximum) size, in index-lexicographic order."""
    if size < 1:
        raise ValueError("clique size must be positive")
    n = graph.n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 512))
    nadj = [graph.rows[v] & ~(1 << v) for v in range(n)]
    found = []

    def extend(rbits, rsize, pmask):
        if rsize == size:
            found.append(rbits)
            if len(found) > cap:
                raise MaximaOverflowError(cap)
            return
        need = size - rsize
        if pmask.bit_count() < need:
            return
        _, colours = _colour_order(pmask, nadj)
        if colours[-1] < need:
            return
        while pmask:
            if pmask.bit_count() < need:
                return
            low = pmask & -pmask
            v = low.bit_length() - 1
            pmask ^= low
            extend(rbits | low, rsize + 1, pmask & nadj[v])

    extend(0, 0, (1 << n) - 1)
    return [Family(graph.universe, bits) for bits in found]


# ---------------------------------------------------------------------------
# end-to-end driver


STATUS_MATCHES = "MATCHES_STAR_BOUND"
STATUS_EXCEEDS = "EXCEEDS_STAR_BOUND"


def star_formula_value(parts, sizes, pred: Predicate) -> int:
    """The predicate-appropriate full-star size (summed over edge counts)."""
    size_fn = t_set_star_size if pred.is_set else t_star_size
    return sum(size_fn(parts, r, pred.t) for r in sizes if r >= pred.t)


@dataclass
class ExtremalReport:
    parts: tuple
    sizes: tuple
    predicate: str
    universe_size: int
    formula_value: int
    max_size: int
    status: str
    witness_indices: list
    witness: Family
    maxima_count: object = None  # int, or "overflow", or None when not requested
    maxima_kinds: dict | None = None
    classifications: list | None = None
    annotations: tuple = ()
    nodes: int = 0
    elapsed: float = 0.0

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "parts": list(self.parts),
            "sizes": list(self.sizes),
            "predicate": self.predicate,
            "universe_size": self.universe_size,
            "formula_value": self.formula_value,
            "max_size": self.max_size,
            "status": self.status,
            "witness_indices": list(self.witness_indices),
            "witness_matchings": [[list(e) for e in m] for m in self.witness.members()],
            "maxima_count": self.maxima_count,
            "maxima_kinds": self.maxima_kinds,
            "annotations": list(self.annotations),
        }
        if include_timings:
            out["nodes"] = self.nodes
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def extremal(
    parts,
    sizes,
    pred: Predicate,
    universe_cap: int = DEFAULT_UNIVERSE_CAP,
    graph_cap: int = DEFAULT_GRAPH_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    all_maxima: bool = False,
    maxima_cap: int = DEFAULT_MAXIMA_CAP,
    workers: int = 1,
    seed_star: bool = False,
    universe: Universe | None = None,
) -> ExtremalReport:
    """Enumerate, build the graph, solve, optionally enumerate and classify all maxima."""
    from .constructions import diagonal_matching, t_set_star, t_star

    start = time.perf_counter()
    if isinstance(sizes, int):
        sizes = (sizes,)
    if universe is None:
        universe = enumerate_union_universe(parts, sizes, universe_cap)
    parts = universe.parts
    sizes = universe.sizes
    graph = build_compat_graph(universe, pred, graph_cap, workers)

    seed = None
    annotations = []
    if seed_star and pred.t <= max(sizes) and pred.t <= min(parts):
        if pred.is_set:
            box = tuple(tuple(range(1, pred.t + 1)) for _ in parts)
            seed = t_set_star(universe, box)
        else:
            seed = t_star(universe, diagonal_matching(parts, pred.t))
        annotations.append("seeded-with-star")

    max_size, witness, nodes = max_clique(graph, node_budget, workers, seed)
    formula = star_formula_value(parts, sizes, pred)
    if max_size < formula:
        raise InternalCheckError(
            f"clique max {max_size} below star bound {formula} at parts={parts}, "
            f"sizes={sizes}, pred={pred}: stars are always feasible cliques"
        )
    status = STATUS_MATCHES if max_size == formula else STATUS_EXCEEDS

    maxima_count = None
    maxima_kinds = None
    classifications = None
    if all_maxima:
        try:
            maxima = all_max_cliques(graph, max_size, maxima_cap)
            maxima_count = len(maxima)
            classifications = [classify_star(f, pred.t) for f in maxima]
            maxima_kinds = {}
            for c in classifications:
                maxima_kinds[c.kind] = maxima_kinds.get(c.kind, 0) + 1
        except MaximaOverflowError:
            maxima_count = "overflow"
            annotations.append(f"maxima-overflow:cap={maxima_cap}")

    return ExtremalReport(
        parts=parts,
        sizes=sizes,
        predicate=str(pred),
        universe_size=len(universe),
        formula_value=formula,
        max_size=max_size,
        status=status,
        witness_indices=witness.indices(),
        witness=witness,
        maxima_count=maxima_count,
        maxima_kinds=maxima_kinds,
        classifications=classifications,
        annotations=tuple(annotations),
        nodes=nodes,
        elapsed=time.perf_counter() - start,
    )
