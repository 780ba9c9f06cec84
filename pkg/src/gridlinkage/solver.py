"""Exact solving of vertex-disjoint path problems at desk scale.

An instance is a graph plus an ordered list of terminal pairs; a solution
links every pair by a path, pairwise vertex-disjoint.  solve() runs a
canonical backtracking search (pairs in input order, neighbors in
ascending id order) whose pruning never removes solutions, so decision,
capped counting and full enumeration are all exact.  brute_force_oracle()
re-derives the same answers by unpruned recursion and exists to keep the
search honest in tests.

Budgets bound the search; an exhausted budget surfaces as status
"aborted" and is never coerced into an answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graphs import Graph, GridLayout, ROLE_BORDER, ROLE_EXTERIOR, validate_path

DEFAULT_NODE_BUDGET = 100_000_000
DEFAULT_TIME_BUDGET = 600.0

STATUS_SOLVABLE = "solvable"
STATUS_UNSOLVABLE = "unsolvable"
STATUS_ABORTED = "aborted"


class SearchAborted(RuntimeError):
    """Raised where an exhausted search budget leaves a predicate unknown."""


@dataclass(frozen=True)
class Instance:
    """A disjoint-paths problem: host graph and ordered terminal pairs."""

    graph: Graph
    pairs: tuple[tuple[int, int], ...]
    layout: GridLayout | None = None
    meta: tuple[tuple[str, object], ...] = ()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for s, t in self.pairs:
            for v in (s, t):
                if not 0 <= v < self.graph.vertex_count:
                    raise ValueError(f"terminal {v} out of range")
                if v in seen:
                    raise ValueError(f"terminal {v} appears twice")
                seen.add(v)
        if self.layout is not None:
            roles = self.layout.roles
            for v in seen:
                if roles.get(v) not in (ROLE_BORDER, ROLE_EXTERIOR):
                    raise ValueError(
                        f"terminal {v} must sit on the grid border or outside the grid"
                    )

    @property
    def meta_map(self) -> dict[str, object]:
        return dict(self.meta)

    @classmethod
    def make(
        cls,
        graph: Graph,
        pairs: Iterable[tuple[int, int]],
        layout: GridLayout | None = None,
        meta: Mapping[str, object] | None = None,
    ) -> "Instance":
        return cls(graph, tuple((s, t) for s, t in pairs), layout,
                   tuple(sorted((meta or {}).items())))


@dataclass(frozen=True)
class Linkage:
    """Vertex-disjoint paths in a host graph, one per terminal pair.

    Paths are stored oriented from s_i to t_i; a path and its reversal
    are the same path.
    """

    paths: tuple[tuple[int, ...], ...]
    host: Graph = field(compare=False)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    def canonical_key(self) -> tuple[tuple[int, ...], ...]:
        """Order-free form: each path min-endpoint first, paths sorted."""
        oriented = [p if p[0] <= p[-1] else tuple(reversed(p)) for p in self.paths]
        return tuple(sorted(oriented))


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    solutions: tuple[Linkage, ...]
    nodes_explored: int
    wall_time: float = field(compare=False)


class _CapHit(Exception):
    pass


class _BudgetExhausted(Exception):
    pass


def check_linkage(
    instance: Instance, paths: Iterable[tuple[int, ...]], require_spanning: bool = False
) -> None:
    """Independent validity check; raises ValueError on any violation."""
    paths = tuple(tuple(p) for p in paths)
    if len(paths) != len(instance.pairs):
        raise ValueError("one path per terminal pair required")
    used: set[int] = set()
    for path, (s, t) in zip(paths, instance.pairs):
        validate_path(instance.graph, path)
        if path[0] != s or path[-1] != t:
            raise ValueError(f"path endpoints {path[0]},{path[-1]} differ from pair {s},{t}")
        overlap = used.intersection(path)
        if overlap:
            raise ValueError(f"paths share vertices {sorted(overlap)}")
        used.update(path)
    if require_spanning and len(used) != instance.graph.vertex_count:
        raise ValueError("linkage does not span all vertices")


def _adjacency_masks(graph: Graph) -> list[int]:
    masks = [0] * graph.vertex_count
    for u, v in graph.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _neighbors_of_set(adj: list[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def _reaches(adj: list[int], src: int, dst_bit: int, allowed: int) -> bool:
    reach = 1 << src
    if reach & dst_bit:
        return True
    frontier = reach
    while frontier:
        frontier = _neighbors_of_set(adj, frontier) & allowed & ~reach
        if frontier & dst_bit:
            return True
        reach |= frontier
    return False


ORDER_ASCENDING = "ascending"
ORDER_MIN_DEGREE = "min-degree"
PAIR_ORDER_INPUT = "input"
PAIR_ORDER_AUTO = "auto"


def solve(
    instance: Instance,
    mode: str = "decide",
    cap: int | None = None,
    require_spanning: bool = False,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    max_seconds: float = DEFAULT_TIME_BUDGET,
    pruning: bool = True,
    blocked: Iterable[int] = (),
    order: str = ORDER_ASCENDING,
    pair_order: str = PAIR_ORDER_INPUT,
) -> SolveOutcome:
    """Solve a disjoint-paths instance exactly.

    mode is one of "decide" (stop at the first solution), "count_up_to"
    (stop once cap solutions are found) and "enumerate_all".  Vertices in
    blocked are removed from play, which is equivalent to deleting them;
    terminals cannot be blocked.  Pruning is sound, so all modes return
    exactly what the unpruned search would; pruning=False disables it for
    cross-checking.  Solutions come back in canonical order.

    order picks the neighbor exploration order: "ascending" (canonical
    default) or "min-degree", a most-constrained-first heuristic that can
    reach a first solution much sooner on large structured instances.
    pair_order picks which pair is routed first: "input" (canonical
    default) or "auto", which routes pairs whose tighter endpoint has the
    fewest open neighbors first; ties keep input order.  Reported paths
    always follow the input pair order.  All four combinations are
    deterministic and none changes the solution set.
    """
    if mode == "decide":
        cap = 1
    elif mode == "count_up_to":
        if cap is None or cap < 1:
            raise ValueError("count_up_to requires cap >= 1")
    elif mode == "enumerate_all":
        cap = None
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if order not in (ORDER_ASCENDING, ORDER_MIN_DEGREE):
        raise ValueError(f"unknown order {order!r}")
    if pair_order not in (PAIR_ORDER_INPUT, PAIR_ORDER_AUTO):
        raise ValueError(f"unknown pair_order {pair_order!r}")

    graph, pairs = instance.graph, instance.pairs
    n = graph.vertex_count
    blocked_mask = 0
    for v in blocked:
        if not 0 <= v < n:
            raise ValueError(f"blocked vertex {v} out of range")
        blocked_mask |= 1 << v
    terminal_mask = 0
    for s, t in pairs:
        terminal_mask |= (1 << s) | (1 << t)
    if terminal_mask & blocked_mask:
        raise ValueError("terminals cannot be blocked")

    adj = _adjacency_masks(graph)
    all_mask = (1 << n) - 1 if n else 0
    free0 = all_mask & ~terminal_mask & ~blocked_mask
    if pair_order == PAIR_ORDER_AUTO:
        def tightness(i: int) -> tuple[int, int]:
            s, t = pairs[i]
            return (
                min((adj[s] & free0).bit_count(), (adj[t] & free0).bit_count()),
                i,
            )
        proc = tuple(sorted(range(len(pairs)), key=tightness))
    else:
        proc = tuple(range(len(pairs)))
    search_pairs = tuple(pairs[i] for i in proc)
    pending_terms = [0] * (len(search_pairs) + 1)
    for idx in range(len(search_pairs) - 1, -1, -1):
        s, t = search_pairs[idx]
        pending_terms[idx] = pending_terms[idx + 1] | (1 << s) | (1 << t)

    deadline = time.monotonic() + max_seconds
    start = time.monotonic()
    nodes = 0
    found: list[tuple[tuple[int, ...], ...]] = []
    done_paths: list[tuple[int, ...]] = []

    def tick() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise _BudgetExhausted
        if nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _BudgetExhausted

    def feasible(idx: int, head: int, free: int) -> bool:
        s_cur, t_cur = search_pairs[idx]
        if not _reaches(adj, head, 1 << t_cur, free | (1 << t_cur)):
            return False
        for j in range(idx + 1, len(search_pairs)):
            s, t = search_pairs[j]
            if not _reaches(adj, s, 1 << t, free | (1 << s) | (1 << t)):
                return False
        if require_spanning and free:
            entries = adj[head] | adj[t_cur]
            for j in range(idx + 1, len(search_pairs)):
                s, t = search_pairs[j]
                entries |= adj[s] | adj[t]
            reach = entries & free
            frontier = reach
            while frontier:
                frontier = _neighbors_of_set(adj, frontier) & free & ~reach
                reach |= frontier
            if reach != free:
                return False
            attach_base = free | (1 << head) | pending_terms[idx + 1] | (1 << t_cur)
            m = free
            while m:
                low = m & -m
                v = low.bit_length() - 1
                if (adj[v] & attach_base & ~low).bit_count() < 2:
                    return False
                m ^= low
        return True

    def complete(free: int) -> None:
        if require_spanning and free:
            return
        by_input: list[tuple[int, ...]] = [()] * len(pairs)
        for j, p in enumerate(done_paths):
            by_input[proc[j]] = p
        paths = tuple(by_input)
        check_linkage(instance, paths, require_spanning)
        found.append(paths)
        if cap is not None and len(found) >= cap:
            raise _CapHit

    def start_pair(idx: int, free: int) -> None:
        if idx == len(search_pairs):
            complete(free)
            return
        extend(idx, search_pairs[idx][0], free, [search_pairs[idx][0]])

    min_degree = order == ORDER_MIN_DEGREE

    def extend(idx: int, head: int, free: int, path: list[int]) -> None:
        tick()
        if pruning and not feasible(idx, head, free):
            return
        t = search_pairs[idx][1]
        t_bit = 1 << t
        candidates = adj[head] & (free | t_bit)
        if min_degree:
            ordered = sorted(
                _iter_bits(candidates),
                key=lambda v: ((adj[v] & free).bit_count(), v),
            )
        else:
            ordered = _iter_bits(candidates)
        for v in ordered:
            if v == t:
                done_paths.append(tuple(path) + (t,))
                start_pair(idx + 1, free)
                done_paths.pop()
            else:
                path.append(v)
                extend(idx, v, free & ~(1 << v), path)
                path.pop()

    aborted = False
    try:
        start_pair(0, free0)
    except _CapHit:
        pass
    except _BudgetExhausted:
        aborted = True

    solutions = tuple(
        Linkage(paths, graph) for paths in sorted(found)
    )
    wall = time.monotonic() - start
    if aborted:
        status = STATUS_ABORTED
    elif solutions:
        status = STATUS_SOLVABLE
    else:
        status = STATUS_UNSOLVABLE
    return SolveOutcome(status, solutions, nodes, wall)


def brute_force_oracle(instance: Instance, require_spanning: bool = False) -> SolveOutcome:
    """Enumerate all solutions with no pruning whatsoever.

    Textbook nested path enumeration over adjacency lists and Python
    sets; exponential and intended only for small test instances.  The
    solution list and its order match solve() exactly.
    """
    graph, pairs = instance.graph, instance.pairs
    adjacency = graph.adjacency
    terminals = {v for pair in pairs for v in pair}
    start = time.monotonic()
    nodes = 0
    found: list[tuple[tuple[int, ...], ...]] = []

    def all_paths(s: int, t: int, banned: set[int]) -> list[tuple[int, ...]]:
        collected: list[tuple[int, ...]] = []
        def walk(v: int, trail: list[int]) -> None:
            nonlocal nodes
            nodes += 1
            for w in adjacency[v]:
                if w == t:
                    collected.append(tuple(trail) + (t,))
                elif w not in banned and w not in trail_set and w not in terminals:
                    trail.append(w)
                    trail_set.add(w)
                    walk(w, trail)
                    trail.pop()
                    trail_set.remove(w)
        trail_set = {s}
        walk(s, [s])
        return collected

    def recurse(idx: int, used: set[int], chosen: list[tuple[int, ...]]) -> None:
        if idx == len(pairs):
            covered = set().union(*chosen) if chosen else set()
            if require_spanning and len(covered) != graph.vertex_count:
                return
            found.append(tuple(chosen))
            return
        s, t = pairs[idx]
        for path in all_paths(s, t, used):
            recurse(idx + 1, used | set(path), chosen + [path])

    recurse(0, set(), [])
    found.sort()
    solutions = tuple(Linkage(paths, graph) for paths in found)
    status = STATUS_SOLVABLE if solutions else STATUS_UNSOLVABLE
    return SolveOutcome(status, solutions, nodes, time.monotonic() - start)


def is_unique_solution(
    instance: Instance,
    require_spanning: bool = False,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    max_seconds: float = DEFAULT_TIME_BUDGET,
) -> bool:
    """True iff exactly one solution exists; raises SearchAborted on budget."""
    outcome = solve(
        instance,
        mode="count_up_to",
        cap=2,
        require_spanning=require_spanning,
        max_nodes=max_nodes,
        max_seconds=max_seconds,
    )
    if outcome.status == STATUS_ABORTED:
        raise SearchAborted("uniqueness undetermined within budget")
    return len(outcome.solutions) == 1


def spans_all_vertices(linkage: Linkage) -> bool:
    return len(linkage.vertices()) == linkage.host.vertex_count


def pattern_of(linkage: Linkage) -> frozenset[int]:
    """Endpoint set of the linkage; every component needs >= 2 vertices."""
    endpoints: set[int] = set()
    for path in linkage.paths:
        if len(path) < 2:
            raise ValueError("linkage components must have at least two vertices")
        endpoints.add(path[0])
        endpoints.add(path[-1])
    return frozenset(endpoints)


def pairing_of(linkage: Linkage) -> frozenset[tuple[int, int]]:
    """Component endpoints as unordered pairs; components need >= 2 vertices."""
    pairs: set[tuple[int, int]] = set()
    for path in linkage.paths:
        if len(path) < 2:
            raise ValueError("linkage components must have at least two vertices")
        pairs.add((path[0], path[-1]) if path[0] < path[-1] else (path[-1], path[0]))
    return frozenset(pairs)


@dataclass(frozen=True)
class IrrelevantReport:
    """Per-vertex deletion outcomes against the baseline solvability."""

    baseline_status: str
    irrelevant: frozenset[int]
    relevant: frozenset[int]
    indeterminate: frozenset[int]


def irrelevant_vertices(
    instance: Instance,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    max_seconds: float = DEFAULT_TIME_BUDGET,
) -> IrrelevantReport:
    """Classify each non-terminal vertex by whether deleting it changes
    solvability.  Budget exhaustion is flagged per vertex, never guessed.
    """
    baseline = solve(instance, mode="decide", max_nodes=max_nodes, max_seconds=max_seconds)
    terminals = {v for pair in instance.pairs for v in pair}
    candidates = [v for v in range(instance.graph.vertex_count) if v not in terminals]
    if baseline.status == STATUS_ABORTED:
        return IrrelevantReport(
            STATUS_ABORTED, frozenset(), frozenset(), frozenset(candidates)
        )
    irrelevant: set[int] = set()
    relevant: set[int] = set()
    indeterminate: set[int] = set()
    for v in candidates:
        outcome = solve(
            instance, mode="decide", max_nodes=max_nodes, max_seconds=max_seconds,
            blocked=(v,),
        )
        if outcome.status == STATUS_ABORTED:
            indeterminate.add(v)
        elif outcome.status == baseline.status:
            irrelevant.add(v)
        else:
            relevant.add(v)
    return IrrelevantReport(
        baseline.status, frozenset(irrelevant), frozenset(relevant), frozenset(indeterminate)
    )


def _perfect_matchings(vertices: tuple[int, ...]):
    if not vertices:
        yield ()
        return
    first, rest = vertices[0], vertices[1:]
    for i, partner in enumerate(rest):
        head = (first, partner)
        remainder = rest[:i] + rest[i + 1 :]
        for tail in _perfect_matchings(remainder):
            yield (head,) + tail


PATTERN_PAIRING = "pairing"
PATTERN_ENDPOINT_SET = "endpoint-set"


def is_vital_linkage(
    graph: Graph,
    linkage: Linkage,
    match: str = PATTERN_PAIRING,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    max_seconds: float = DEFAULT_TIME_BUDGET,
) -> bool:
    """Decide whether a spanning linkage is the only one with its pattern.

    Same-pattern spanning linkages are enumerated exhaustively as
    spanning disjoint-paths instances.  Two pattern notions are
    supported.  "pairing" (the default) matches linkages whose
    components join the same endpoint pairs; this is the notion under
    which a unique spanning solution is vital, and the one the width
    bounds rest on.  "endpoint-set" matches on the bare set of degree-1
    vertices and therefore enumerates every perfect matching of it; it
    is strictly harder to satisfy, and the grid instances here admit
    re-pairings, so their solutions are not vital in that sense.

    Raises SearchAborted if any enumeration blows its budget, and
    ValueError if linkage is not a spanning linkage of graph.
    """
    check_linkage(
        Instance(graph, tuple((p[0], p[-1]) for p in linkage.paths)),
        linkage.paths,
        require_spanning=True,
    )
    if match == PATTERN_PAIRING:
        matchings = [tuple(sorted(pairing_of(linkage)))]
    elif match == PATTERN_ENDPOINT_SET:
        matchings = list(_perfect_matchings(tuple(sorted(pattern_of(linkage)))))
    else:
        raise ValueError(f"unknown pattern notion {match!r}")
    own_key = linkage.canonical_key()
    seen_self = False
    for matching in matchings:
        candidate = Instance(graph, tuple(matching))
        outcome = solve(
            candidate,
            mode="enumerate_all",
            require_spanning=True,
            max_nodes=max_nodes,
            max_seconds=max_seconds,
        )
        if outcome.status == STATUS_ABORTED:
            raise SearchAborted("same-pattern enumeration exceeded budget")
        for other in outcome.solutions:
            if other.canonical_key() == own_key:
                seen_self = True
            else:
                return False
    if not seen_self:
        raise AssertionError("input linkage not rediscovered by enumeration")
    return True
