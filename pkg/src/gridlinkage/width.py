"""Exact treewidth and pathwidth for small graphs.

Treewidth is found by iterative deepening over elimination orders: a
width-w order exists iff vertices can be removed one at a time so that
nobody has more than w neighbours at the moment of removal, where two
survivors count as neighbours whenever the original graph joins them
through already-removed vertices.  That closure view means the residual
graph depends only on the *set* removed, never the order, so failed
subsets memoize soundly and connected components split off.  Pathwidth
runs the same deepening over vertex layouts scored by boundary size
(vertex separation).  Certificates are plain vertex orders; independent
re-checkers recompute their width from scratch.

Budgets cap search nodes and wall time.  A blown budget degrades the
result to a greedy upper bound flagged exact=False, it never guesses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import Graph
from .solver import Instance

DEFAULT_WIDTH_NODE_BUDGET = 20_000_000
DEFAULT_WIDTH_TIME_BUDGET = 300.0

KIND_TREEWIDTH = "treewidth"
KIND_PATHWIDTH = "pathwidth"


class _WidthBudget(Exception):
    pass


@dataclass(frozen=True)
class WidthResult:
    """Width value plus the order that certifies it.

    certificate is an elimination order for treewidth, a left-to-right
    layout for pathwidth, always covering every vertex.  exact=False
    means the budget ran out and value is only the best upper bound
    found; the certificate still evaluates to value.
    """

    kind: str
    value: int
    certificate: tuple[int, ...]
    exact: bool
    nodes_explored: int


def _adj_masks(graph: Graph) -> list[int]:
    masks = [0] * graph.vertex_count
    for a, b in graph.edges:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    return masks


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(adj: list[int], mask: int) -> list[int]:
    comps: list[int] = []
    rest = mask
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= adj[v]
            frontier = grow & mask & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def _closure_neighbors(adj: list[int], remaining: int, v: int) -> int:
    # Survivors adjacent to v once everything outside `remaining` is
    # eliminated: walk through eliminated vertices, stop at survivors.
    seen = 1 << v
    out = 0
    frontier = adj[v] & ~seen
    while frontier:
        seen |= frontier
        out |= frontier & remaining
        grow = 0
        for u in _bits(frontier & ~remaining):
            grow |= adj[u]
        frontier = grow & ~seen
    return out


def width_of_elimination_order(graph: Graph, order: Iterable[int]) -> int:
    """Recompute the width an elimination order achieves.

    Independent certificate checker: simulates the elimination from the
    original edges alone and returns the largest neighbour count seen at
    any removal.  Raises ValueError unless order is a permutation of the
    vertices.
    """
    seq = tuple(order)
    n = graph.vertex_count
    if sorted(seq) != list(range(n)):
        raise ValueError("order must be a permutation of all vertices")
    if n == 0:
        return -1
    adj = _adj_masks(graph)
    remaining = (1 << n) - 1
    worst = 0
    for v in seq:
        remaining &= ~(1 << v)
        worst = max(worst, _closure_neighbors(adj, remaining, v).bit_count())
    return worst


def width_of_layout(graph: Graph, order: Iterable[int]) -> int:
    """Recompute the vertex-separation width of a layout.

    For each prefix of the order, counts placed vertices that still have
    an unplaced neighbour; returns the largest such count.  Raises
    ValueError unless order is a permutation of the vertices.
    """
    seq = tuple(order)
    n = graph.vertex_count
    if sorted(seq) != list(range(n)):
        raise ValueError("order must be a permutation of all vertices")
    if n == 0:
        return -1
    adj = _adj_masks(graph)
    placed = 0
    worst = 0
    for v in seq:
        placed |= 1 << v
        boundary = sum(1 for u in _bits(placed) if adj[u] & ~placed)
        worst = max(worst, boundary)
    return worst


def _degeneracy(adj: list[int], comp: int) -> int:
    rest = comp
    best = 0
    while rest:
        v = min(_bits(rest), key=lambda u: ((adj[u] & rest).bit_count(), u))
        best = max(best, (adj[v] & rest).bit_count())
        rest &= ~(1 << v)
    return best


def _max_clique(adj: list[int], comp: int) -> int:
    best = 0

    def grow(current: int, allowed: int) -> None:
        nonlocal best
        if not allowed:
            best = max(best, current.bit_count())
            return
        if current.bit_count() + allowed.bit_count() <= best:
            return
        pivot = max(_bits(allowed), key=lambda u: (adj[u] & allowed).bit_count())
        for v in _bits(allowed & ~adj[pivot]):
            grow(current | (1 << v), allowed & adj[v])
            allowed &= ~(1 << v)

    grow(0, comp)
    return best


def _min_fill_order(adj: list[int], comp: int) -> tuple[int, list[int]]:
    # Greedy upper bound: repeatedly eliminate the vertex whose residual
    # neighbours miss the fewest edges amongst themselves.
    remaining = comp
    order: list[int] = []
    width = 0
    while remaining:
        nbrs = {v: _closure_neighbors(adj, remaining, v) for v in _bits(remaining)}

        def fill_needed(v: int) -> int:
            missing = 0
            for u in _bits(nbrs[v]):
                missing += (nbrs[v] & ~(1 << u) & ~nbrs[u]).bit_count()
            return missing // 2

        best = min(
            _bits(remaining),
            key=lambda v: (fill_needed(v), nbrs[v].bit_count(), v),
        )
        width = max(width, nbrs[best].bit_count())
        remaining &= ~(1 << best)
        order.append(best)
    return width, order


def _layout_width(adj: list[int], comp: int, order: Iterable[int]) -> int:
    placed = 0
    worst = 0
    for v in order:
        placed |= 1 << v
        worst = max(
            worst, sum(1 for u in _bits(placed) if adj[u] & comp & ~placed)
        )
    return worst


def _greedy_layout(adj: list[int], comp: int) -> tuple[int, list[int]]:
    # Pathwidth upper bound: greedy sweep from every start vertex,
    # always placing next whatever keeps the boundary smallest.
    best_order = sorted(_bits(comp))
    best_width = _layout_width(adj, comp, best_order)
    for start in _bits(comp):
        placed = 1 << start
        order = [start]
        width = _layout_width(adj, comp, order)
        while placed != comp and width < best_width:
            def grown(u: int) -> int:
                nxt = placed | (1 << u)
                return sum(1 for x in _bits(nxt) if adj[x] & comp & ~nxt)

            v = min(_bits(comp & ~placed), key=lambda u: (grown(u), u))
            width = max(width, grown(v))
            placed |= 1 << v
            order.append(v)
        if placed == comp and width < best_width:
            best_width = width
            best_order = order
    return best_width, best_order


class _Budget:
    def __init__(self, max_nodes: int, max_seconds: float) -> None:
        self.max_nodes = max_nodes
        self.deadline = time.monotonic() + max_seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _WidthBudget
        if self.nodes % 2048 == 0 and time.monotonic() > self.deadline:
            raise _WidthBudget


def _tw_decide(
    adj: list[int],
    comp: int,
    w: int,
    budget: _Budget,
    failed: set[int],
) -> list[int] | None:
    budget.tick()
    if comp.bit_count() <= w + 1:
        return sorted(_bits(comp))
    if comp in failed:
        return None

    nbrs = {v: _closure_neighbors(adj, comp, v) for v in _bits(comp)}
    pieces = _components(
        [nbrs.get(v, 0) for v in range(len(adj))], comp
    )
    if len(pieces) > 1:
        order: list[int] = []
        for piece in pieces:
            sub = _tw_decide(adj, piece, w, budget, failed)
            if sub is None:
                failed.add(comp)
                return None
            order.extend(sub)
        return order

    # A vertex whose residual neighbours already form a clique pins the
    # state down: eliminate it first without branching, or refute the
    # whole state when that clique is too big for the target width.
    candidates = []
    for v in _bits(comp):
        deg = nbrs[v].bit_count()
        simplicial = all(
            nbrs[v] & ~(1 << u) & ~nbrs[u] == 0 for u in _bits(nbrs[v])
        )
        if simplicial and deg > w:
            failed.add(comp)
            return None
        if simplicial:
            rest = _tw_decide(adj, comp & ~(1 << v), w, budget, failed)
            if rest is None:
                failed.add(comp)
                return None
            return [v] + rest
        if deg <= w:
            candidates.append((deg, v))

    for _, v in sorted(candidates):
        rest = _tw_decide(adj, comp & ~(1 << v), w, budget, failed)
        if rest is not None:
            return [v] + rest
    failed.add(comp)
    return None


def treewidth_exact(
    graph: Graph,
    max_nodes: int = DEFAULT_WIDTH_NODE_BUDGET,
    max_seconds: float = DEFAULT_WIDTH_TIME_BUDGET,
) -> WidthResult:
    """Exact treewidth with an optimal elimination order as certificate.

    Iterative deepening between a degeneracy/clique lower bound and a
    greedy min-fill upper bound, splitting on connected components and
    memoizing refuted subsets per width.  Budget exhaustion returns the
    best upper bound found, flagged exact=False.
    """
    n = graph.vertex_count
    if n == 0:
        raise ValueError("width of the empty graph is not defined here")
    adj = _adj_masks(graph)
    budget = _Budget(max_nodes, max_seconds)

    comps = _components(adj, (1 << n) - 1)
    per_comp: list[tuple[int, list[int]]] = [
        _min_fill_order(adj, comp) for comp in comps
    ]
    exact = True
    try:
        for i, comp in enumerate(comps):
            ub, _ = per_comp[i]
            lb = max(_degeneracy(adj, comp), _max_clique(adj, comp) - 1)
            for w in range(lb, ub):
                order = _tw_decide(adj, comp, w, budget, set())
                if order is not None:
                    per_comp[i] = (w, order)
                    break
    except _WidthBudget:
        exact = False

    value = max(width for width, _ in per_comp)
    certificate = tuple(v for _, order in per_comp for v in order)
    return WidthResult(KIND_TREEWIDTH, value, certificate, exact, budget.nodes)


def _pw_decide(
    adj: list[int],
    comp: int,
    w: int,
    budget: _Budget,
    failed: set[int],
) -> list[int] | None:

    def boundary_size(placed: int) -> int:
        return sum(1 for u in _bits(placed) if adj[u] & comp & ~placed)

    def search(placed: int, order: list[int]) -> list[int] | None:
        budget.tick()
        # Absorb vertices with nothing left outside; they never widen
        # the boundary and any layout can be rearranged to take them now.
        absorbed = 0
        todo = comp & ~placed
        changed = True
        while changed:
            changed = False
            for v in _bits(todo):
                if adj[v] & comp & ~(placed | (1 << v)) == 0:
                    placed |= 1 << v
                    absorbed += 1
                    order.append(v)
                    todo &= ~(1 << v)
                    changed = True
        if placed == comp:
            return list(order)
        if placed in failed:
            del order[len(order) - absorbed:]
            return None

        moves = []
        for v in _bits(comp & ~placed):
            nxt = placed | (1 << v)
            size = boundary_size(nxt)
            if size <= w:
                moves.append((size, v))
        for _, v in sorted(moves):
            order.append(v)
            result = search(placed | (1 << v), order)
            if result is not None:
                return result
            order.pop()
        failed.add(placed)
        del order[len(order) - absorbed:]
        return None

    return search(0, [])


def pathwidth_exact(
    graph: Graph,
    max_nodes: int = DEFAULT_WIDTH_NODE_BUDGET,
    max_seconds: float = DEFAULT_WIDTH_TIME_BUDGET,
) -> WidthResult:
    """Exact pathwidth with an optimal layout as certificate.

    Vertex-separation search: deepen the allowed boundary size until
    some left-to-right layout keeps every prefix within it.  Refuted
    placed-sets memoize per width; components split.  Budget exhaustion
    returns the best upper bound found, flagged exact=False.
    """
    n = graph.vertex_count
    if n == 0:
        raise ValueError("width of the empty graph is not defined here")
    adj = _adj_masks(graph)
    budget = _Budget(max_nodes, max_seconds)

    comps = _components(adj, (1 << n) - 1)
    per_comp: list[tuple[int, list[int]]] = [
        _greedy_layout(adj, comp) for comp in comps
    ]
    exact = True
    try:
        for i, comp in enumerate(comps):
            ub, _ = per_comp[i]
            lb = max(_degeneracy(adj, comp), _max_clique(adj, comp) - 1)
            for w in range(lb, ub):
                order = _pw_decide(adj, comp, w, budget, set())
                if order is not None:
                    per_comp[i] = (w, order)
                    break
    except _WidthBudget:
        exact = False

    value = max(width for width, _ in per_comp)
    certificate = tuple(v for _, order in per_comp for v in order)
    return WidthResult(KIND_PATHWIDTH, value, certificate, exact, budget.nodes)


@dataclass(frozen=True)
class WidthBoundReport:
    """Exact widths of a constructed instance against its grid bound.

    satisfied is None when either computation blew its budget, in which
    case the values are upper bounds and prove nothing.
    """

    k: int
    bound: int
    treewidth: WidthResult
    pathwidth: WidthResult
    linkage_components: int
    satisfied: bool | None


def verify_width_lower_bound(
    instance: Instance,
    max_nodes: int = DEFAULT_WIDTH_NODE_BUDGET,
    max_seconds: float = DEFAULT_WIDTH_TIME_BUDGET,
) -> WidthBoundReport:
    """Check a built instance's graph is as wide as its grid demands.

    Computes exact treewidth and pathwidth and compares both against
    2^k + 1, the width of the underlying (2^k+1) x (2^k+1) grid; the
    report also carries the solution's path count k + 1, the pair of
    numbers the construction is designed to exhibit together.
    """
    meta = instance.meta_map
    if "k" not in meta:
        raise ValueError("instance carries no construction parameter k")
    k = int(meta["k"])
    bound = 2 ** k + 1
    tw = treewidth_exact(instance.graph, max_nodes, max_seconds)
    pw = pathwidth_exact(instance.graph, max_nodes, max_seconds)
    if not (tw.exact and pw.exact):
        satisfied = None
    else:
        satisfied = tw.value >= bound and pw.value >= bound
    return WidthBoundReport(k, bound, tw, pw, k + 1, satisfied)
