"""Simple undirected graphs, degeneracy orderings, and peeling certificates.

Vertices are dense integer ids 0..n-1.  Graphs are immutable after
construction; every operation here is a pure function, safe to call
concurrently.

An ``Ordering`` is the certificate currency of the package: degeneracy,
(k,A)-degeneracy and collectability claims are all witnessed by one, and
each kind can be re-verified by direct back-degree counting (see
``verify_kA_ordering`` / ``verify_collect_order``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import GraphError


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with sorted neighbor lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    _adj_sets: tuple[frozenset[int], ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "_adj_sets", tuple(frozenset(a) for a in self.adj))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class Ordering:
    """A total order on ``scope``; ``sequence`` is a permutation of it."""

    sequence: tuple[int, ...]
    scope: frozenset[int]

    def __post_init__(self) -> None:
        if frozenset(self.sequence) != self.scope or len(self.sequence) != len(self.scope):
            raise GraphError("ordering sequence is not a permutation of its scope")

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.sequence)}


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, rejecting out-of-range ids, loops and duplicates."""
    if n < 0:
        raise GraphError(f"vertex count must be >= 0, got {n}")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``, relabeled to 0..|s|-1.

    Returns (subgraph, old_ids) where old_ids[i] is the host id of the new
    vertex i; old_ids is sorted, so the map is reproducible.
    """
    old_ids = tuple(sorted(set(s)))
    for v in old_ids:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    new_id = {v: i for i, v in enumerate(old_ids)}
    edges = [
        (new_id[u], new_id[v])
        for u in old_ids
        for v in g.adj[u]
        if u < v and v in new_id
    ]
    return build_graph(len(old_ids), edges), old_ids


def degeneracy(g: Graph) -> tuple[int, Ordering]:
    """Degeneracy and a witnessing ordering via repeated min-degree removal.

    The ordering is emitted back-to-front: every vertex has at most
    ``value`` neighbors earlier in the sequence.  The null graph has
    degeneracy 0 by convention.  Ties break on lowest vertex id.
    """
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    peel: list[int] = []
    value = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        value = max(value, deg[v])
        peel.append(v)
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return value, Ordering(tuple(reversed(peel)), frozenset(g.vertices()))


def is_d_degenerate(g: Graph, d: int) -> bool:
    if d < 0:
        raise GraphError(f"d must be >= 0, got {d}")
    return degeneracy(g)[0] <= d


def kA_degenerate_ordering(g: Graph, a: Iterable[int], k: int) -> Optional[Ordering]:
    """An ordering with all of ``a`` first and later back-degrees <= k, or None.

    Greedy peeling of any non-``a`` vertex of current degree <= k is
    complete: removal only lowers degrees, so no choice can block a
    solution.  Ties break on lowest id for reproducible certificates.
    """
    if k < 0:
        raise GraphError(f"k must be >= 0, got {k}")
    a_set = frozenset(a)
    for v in a_set:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    peel: list[int] = []
    candidates = sorted(v for v in alive if v not in a_set and deg[v] <= k)
    pending = set(candidates)
    while candidates:
        v = candidates.pop(0)
        pending.discard(v)
        peel.append(v)
        alive.remove(v)
        newly = []
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == k and w not in a_set and w not in pending:
                    newly.append(w)
                    pending.add(w)
        if newly:
            candidates = sorted(candidates + newly)
    if alive != set(a_set):
        return None
    sequence = tuple(sorted(a_set)) + tuple(reversed(peel))
    return Ordering(sequence, frozenset(g.vertices()))


def is_A_good(g: Graph, a: Iterable[int], y: Iterable[int]) -> Optional[Ordering]:
    """Certificate that G[y] is (3, a∩y)-degenerate, or None.

    The returned ordering is over ``y`` in host ids, with a∩y first.
    """
    return kA_subset_ordering(g, a, y, 3)


def kA_subset_ordering(
    g: Graph, a: Iterable[int], y: Iterable[int], k: int
) -> Optional[Ordering]:
    """Like ``is_A_good`` but with k a parameter (k=3 is the A-good case)."""
    y_set = frozenset(y)
    sub, old_ids = induced_subgraph(g, y_set)
    a_sub = [i for i, v in enumerate(old_ids) if v in frozenset(a)]
    inner = kA_degenerate_ordering(sub, a_sub, k)
    if inner is None:
        return None
    return Ordering(tuple(old_ids[i] for i in inner.sequence), y_set)


def collect_order(
    g: Graph, a: Iterable[int], y: Iterable[int], k: int = 3
) -> Optional[Ordering]:
    """An order removing ``y`` from ``g`` one vertex at a time, or None.

    A vertex may be removed when it is outside ``a`` and has degree <= k in
    what remains of ``g``, or unconditionally once everything remaining in
    ``g`` lies inside ``a``.  Greedy removal of any eligible vertex is
    complete (removal only lowers degrees); ties break on lowest id.
    """
    a_set = frozenset(a)
    y_set = frozenset(y)
    for v in y_set:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    remaining = set(y_set)
    order: list[int] = []
    while remaining:
        if alive <= a_set:
            order.extend(sorted(remaining))
            remaining.clear()
            break
        eligible = sorted(v for v in remaining if v not in a_set and deg[v] <= k)
        if not eligible:
            return None
        v = eligible[0]
        order.append(v)
        remaining.remove(v)
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return Ordering(tuple(order), y_set)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, smallest vertex first."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for s in g.vertices():
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        comp = [s]
        while queue:
            u = queue.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
                    comp.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def has_path_avoiding(g: Graph, s: int, t: int, forbidden: int) -> bool:
    """Whether g - forbidden still connects s to t."""
    if s == forbidden or t == forbidden:
        raise GraphError("endpoint equals the forbidden vertex")
    if s == t:
        return True
    seen = {s, forbidden}
    queue = [s]
    while queue:
        u = queue.pop()
        for w in g.adj[u]:
            if w == t:
                return True
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def verify_kA_ordering(g: Graph, a: Iterable[int], ordering: Ordering, k: int) -> bool:
    """Re-check a (k,A)-degeneracy certificate by direct back-degree counting.

    The ordering's scope may be any vertex subset Y; back-degrees are
    counted inside G[Y], a is intersected with Y, and all of a∩Y must come
    first.  Returns False on any malformed input rather than raising.
    """
    try:
        seq = ordering.sequence
        scope = ordering.scope
    except AttributeError:
        return False
    if frozenset(seq) != scope:
        return False
    if not all(0 <= v < g.n for v in scope):
        return False
    a_in = frozenset(a) & scope
    pos = {v: i for i, v in enumerate(seq)}
    if a_in and max(pos[v] for v in a_in) >= len(a_in):
        return False
    for v in seq:
        if v in a_in:
            continue
        back = sum(1 for w in g.adj[v] if w in scope and pos[w] < pos[v])
        if back > k:
            return False
    return True


def verify_collect_order(
    g: Graph, a: Iterable[int], ordering: Ordering, k: int = 3
) -> bool:
    """Re-check a collectability certificate against the raw definition."""
    a_set = frozenset(a)
    seq = ordering.sequence
    if frozenset(seq) != ordering.scope or not all(0 <= v < g.n for v in seq):
        return False
    removed: set[int] = set()
    for v in seq:
        rest = set(g.vertices()) - removed
        if not rest <= a_set:
            if v in a_set:
                return False
            if sum(1 for w in g.adj[v] if w not in removed) > k:
                return False
        removed.add(v)
    return True
