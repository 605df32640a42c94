"""Combinatorial plane embeddings given by rotation systems.

A ``PlaneGraph`` is a connected simple graph plus a cyclic neighbor order
at every vertex and a designated outer face.  Faces are traced purely
combinatorially: the dart u->v is followed by v->w where w is the
successor of u in the rotation at v.  No coordinates exist anywhere.

Interiors and exteriors of cycles are computed by classifying faces in
the dual: cutting the dual along the cycle's edges leaves exactly two
components, and the one holding the outer face is the exterior.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import EmbeddingError, GraphError, InvariantViolation
from .graph import Graph, build_graph, has_path_avoiding, is_connected

Face = tuple[int, ...]


def _face_darts(face: Face) -> list[tuple[int, int]]:
    k = len(face)
    return [(face[i], face[(i + 1) % k]) for i in range(k)]


def _cyclic_eq(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    doubled = list(b) + list(b)
    a = list(a)
    return any(doubled[i : i + len(a)] == a for i in range(len(b)))


def trace_faces(
    graph: Graph, rotation: Sequence[Sequence[int]]
) -> tuple[Face, ...]:
    """Trace all facial walks of the rotation system.

    Raises EmbeddingError if a rotation list is not a permutation of the
    adjacency list.  Every dart lands in exactly one face by construction.
    """
    if len(rotation) != graph.n:
        raise EmbeddingError("rotation table size differs from vertex count")
    succ: list[dict[int, int]] = []
    for v in graph.vertices():
        rot = tuple(rotation[v])
        if sorted(rot) != list(graph.adj[v]):
            raise EmbeddingError(
                f"rotation at vertex {v} is not a permutation of its neighbors"
            )
        d = len(rot)
        succ.append({rot[i]: rot[(i + 1) % d] for i in range(d)})
    if graph.n == 1:
        return ((0,),)
    unused: set[tuple[int, int]] = {
        (u, v) for u in graph.vertices() for v in graph.adj[u]
    }
    faces: list[Face] = []
    while unused:
        start = min(unused)
        walk = [start[0]]
        dart = start
        while True:
            unused.discard(dart)
            u, v = dart
            nxt = (v, succ[v][u])
            if nxt == start:
                break
            walk.append(v)
            dart = nxt
        faces.append(tuple(walk))
    return tuple(faces)


class PlaneGraph:
    """A validated embedding; immutable after construction.

    Attributes:
        graph: the underlying Graph.
        rotation: cyclic neighbor order per vertex.
        faces: all traced facial walks.
        outer_index: index of the outer face in ``faces``.
    """

    __slots__ = ("graph", "rotation", "faces", "outer_index", "_dart_face")

    def __init__(
        self,
        graph: Graph,
        rotation: Sequence[Sequence[int]],
        outer_face: Sequence[int],
    ):
        if graph.n == 0:
            raise EmbeddingError("empty plane graph")
        if not is_connected(graph):
            raise EmbeddingError("plane graph must be connected")
        self.graph = graph
        self.rotation = tuple(tuple(r) for r in rotation)
        self.faces = trace_faces(graph, self.rotation)
        if graph.n - graph.m + len(self.faces) != 2:
            raise EmbeddingError(
                "Euler formula violated: embedding is not spherical "
                f"(V={graph.n}, E={graph.m}, F={len(self.faces)})"
            )
        self.outer_index = self._locate_outer(tuple(outer_face))
        self._dart_face: dict[tuple[int, int], int] = {}
        for i, f in enumerate(self.faces):
            if len(f) == 1:
                continue
            for dart in _face_darts(f):
                self._dart_face[dart] = i

    def _locate_outer(self, walk: Face) -> int:
        want = _face_darts(walk) if len(walk) > 1 else []
        for i, f in enumerate(self.faces):
            if len(walk) == 1 and f == walk:
                return i
            if _cyclic_eq(want, _face_darts(f)):
                return i
        rev = tuple(reversed(walk))
        want = _face_darts(rev)
        for i, f in enumerate(self.faces):
            if _cyclic_eq(want, _face_darts(f)):
                return i
        raise EmbeddingError("outer_face walk does not match any traced face")

    @property
    def outer_face(self) -> Face:
        return self.faces[self.outer_index]

    @property
    def n(self) -> int:
        return self.graph.n

    def face_of_dart(self, u: int, v: int) -> int:
        return self._dart_face[(u, v)]


def validate_embedding(p: PlaneGraph) -> tuple[Face, ...]:
    """Re-run all embedding checks; returns the facial walks."""
    faces = trace_faces(p.graph, p.rotation)
    if p.graph.n - p.graph.m + len(faces) != 2:
        raise EmbeddingError("Euler formula violated")
    if sum(len(f) for f in faces) != 2 * p.graph.m and p.graph.n > 1:
        raise EmbeddingError("face lengths do not cover every dart exactly once")
    return faces


def orient_faces(faces: Sequence[Sequence[int]]) -> list[Face]:
    """Flip faces of a sphere embedding so each dart is used exactly once.

    Input faces may be listed with arbitrary orientation; the output is a
    consistent orientation (one of the two mirror images).  Raises
    EmbeddingError if no consistent orientation exists.
    """
    faces = [tuple(f) for f in faces]
    occ: dict[tuple[int, int], list[tuple[int, tuple[int, int]]]] = {}
    for i, f in enumerate(faces):
        for u, v in _face_darts(f):
            if u == v:
                raise EmbeddingError("face walk contains a loop dart")
            occ.setdefault((min(u, v), max(u, v)), []).append((i, (u, v)))
    adj: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(len(faces))}
    for key, uses in occ.items():
        if len(uses) != 2:
            raise EmbeddingError(
                f"edge {key} appears {len(uses)} times across faces, expected 2"
            )
        (i, d1), (j, d2) = uses
        if i == j:
            if d1 == d2:
                raise EmbeddingError(f"edge {key} traversed twice in the same direction")
            continue
        # opposite darts as listed -> same flip state, else opposite
        adj[i].append((j, d1 != (d2[1], d2[0])))
        adj[j].append((i, d1 != (d2[1], d2[0])))
    flip: dict[int, bool] = {}
    for root in range(len(faces)):
        if root in flip:
            continue
        flip[root] = False
        stack = [root]
        while stack:
            i = stack.pop()
            for j, differs in adj[i]:
                want = flip[i] ^ differs
                if j in flip:
                    if flip[j] != want:
                        raise EmbeddingError("faces admit no consistent orientation")
                else:
                    flip[j] = want
                    stack.append(j)
    oriented = [
        tuple(reversed(f)) if flip[i] else f for i, f in enumerate(faces)
    ]
    darts = [d for f in oriented for d in _face_darts(f)]
    if len(darts) != len(set(darts)):
        raise EmbeddingError("oriented faces reuse a dart")
    return oriented


def plane_from_faces(
    n: int, faces: Sequence[Sequence[int]], outer: Sequence[int]
) -> PlaneGraph:
    """Build a PlaneGraph from its face list.

    ``outer`` must equal one of the faces up to rotation/reversal.  The
    rotation system is derived from face corners, so tracing the result
    reproduces the input faces.
    """
    oriented = orient_faces(faces)
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    edges: set[tuple[int, int]] = set()
    for f in oriented:
        k = len(f)
        for i in range(k):
            u, v, w = f[i], f[(i + 1) % k], f[(i + 2) % k]
            if not (0 <= v < n):
                raise EmbeddingError(f"face vertex {v} out of range")
            if u in succ[v]:
                raise EmbeddingError(f"conflicting corners at vertex {v}")
            succ[v][u] = w
            edges.add((min(u, v), max(u, v)))
    rotation: list[tuple[int, ...]] = []
    for v in range(n):
        if not succ[v]:
            raise EmbeddingError(f"vertex {v} appears in no face")
        start = min(succ[v])
        rot = [start]
        cur = succ[v][start]
        while cur != start:
            rot.append(cur)
            cur = succ[v][cur]
            if len(rot) > len(succ[v]):
                raise EmbeddingError(f"rotation at vertex {v} is not a single cycle")
        if len(rot) != len(succ[v]):
            raise EmbeddingError(f"rotation at vertex {v} is not a single cycle")
        rotation.append(tuple(rot))
    graph = build_graph(n, sorted(edges))
    outer_t = tuple(outer)
    for f in oriented:
        if _cyclic_eq(f, outer_t) or _cyclic_eq(f, tuple(reversed(outer_t))):
            return PlaneGraph(graph, rotation, f)
    raise EmbeddingError("outer walk is not among the given faces")


@dataclass(frozen=True)
class BoundaryInfo:
    """The outer facial walk and derived facts about B(G)."""

    walk: Face
    vertices: frozenset[int]
    is_cycle: bool
    has_chord: bool


def boundary(p: PlaneGraph) -> BoundaryInfo:
    walk = p.outer_face
    verts = frozenset(walk)
    is_cycle = len(verts) == len(walk) and len(walk) >= 3
    walk_edges = {(min(u, v), max(u, v)) for u, v in _face_darts(walk)} if len(walk) > 1 else set()
    chord = any(
        (min(u, v), max(u, v)) not in walk_edges
        for u in verts
        for v in p.graph.adj[u]
        if v in verts and u < v
    )
    return BoundaryInfo(walk, verts, is_cycle, chord)


@dataclass(frozen=True)
class CycleRef:
    """A cycle given as a vertex walk; the walk direction fixes which side
    counts as the interior (the side the forward darts' faces lie on)."""

    walk: tuple[int, ...]

    def reversed(self) -> "CycleRef":
        return CycleRef(tuple(reversed(self.walk)))


def as_cycle(p: PlaneGraph, walk: Sequence[int]) -> CycleRef:
    w = tuple(walk)
    if len(w) < 3 or len(set(w)) != len(w):
        raise GraphError(f"not a cycle walk: {w}")
    for u, v in _face_darts(w):
        if not p.graph.has_edge(u, v):
            raise GraphError(f"walk uses non-edge ({u}, {v})")
    return CycleRef(w)


@dataclass(frozen=True)
class CycleSplit:
    """Partition of a plane graph by a cycle C.

    V = interior ⊎ V(C) ⊎ exterior.  ``inn_closed`` keeps V(C) plus the
    interior, with exterior chords of C dropped; ``inn_ids`` maps its new
    ids back to host ids (likewise ``ext_*``).
    """

    cycle: tuple[int, ...]
    interior: frozenset[int]
    exterior: frozenset[int]
    interior_faces: tuple[Face, ...]
    exterior_faces: tuple[Face, ...]
    interior_edges: frozenset[tuple[int, int]]
    exterior_edges: frozenset[tuple[int, int]]
    inn_closed: Graph
    inn_ids: tuple[int, ...]
    ext_closed: Graph
    ext_ids: tuple[int, ...]


def _closed_side(
    p: PlaneGraph, cyc: set[int], side_edges: frozenset[tuple[int, int]]
) -> tuple[Graph, tuple[int, ...]]:
    verts = sorted(cyc | {v for e in side_edges for v in e})
    new_id = {v: i for i, v in enumerate(verts)}
    cedges = {(min(u, v), max(u, v)) for u, v in zip(sorted(cyc), [])}
    del cedges
    edges = set(side_edges)
    walk = sorted(cyc)
    del walk
    return build_graph(
        len(verts), sorted((new_id[u], new_id[v]) for u, v in edges)
    ), tuple(verts)


def cycle_split(p: PlaneGraph, c: CycleRef) -> CycleSplit:
    """Split the embedding along cycle ``c``.

    Faces are classified by cutting the dual graph along the cycle's
    edges; exactly two components must remain.  The component holding the
    face of the first forward dart is the interior for this orientation.
    """
    walk = c.walk
    darts = _face_darts(walk)
    cedges = {(min(u, v), max(u, v)) for u, v in darts}
    for u, v in darts:
        if not p.graph.has_edge(u, v):
            raise GraphError(f"walk uses non-edge ({u}, {v})")
    if len(set(walk)) != len(walk) or len(walk) < 3:
        raise GraphError("walk is not a cycle")
    nfaces = len(p.faces)
    side = [-1] * nfaces
    comp_count = 0
    for root in range(nfaces):
        if side[root] != -1:
            continue
        if comp_count >= 2:
            raise InvariantViolation("cycle cut left more than two dual components")
        side[root] = comp_count
        stack = [root]
        while stack:
            i = stack.pop()
            for u, v in _face_darts(p.faces[i]):
                if (min(u, v), max(u, v)) in cedges:
                    continue
                j = p.face_of_dart(v, u)
                if side[j] == -1:
                    side[j] = comp_count
                    stack.append(j)
        comp_count += 1
    if comp_count != 2:
        raise InvariantViolation("cycle cut did not produce two dual components")
    first = side[p.face_of_dart(*darts[0])]
    for u, v in darts:
        if side[p.face_of_dart(u, v)] != first or side[p.face_of_dart(v, u)] == first:
            raise InvariantViolation("cycle darts straddle dual components")
    cyc = set(walk)
    in_faces = tuple(f for i, f in enumerate(p.faces) if side[i] == first)
    out_faces = tuple(f for i, f in enumerate(p.faces) if side[i] != first)
    interior = frozenset(v for f in in_faces for v in f) - cyc
    exterior = frozenset(v for f in out_faces for v in f) - cyc
    in_edges: set[tuple[int, int]] = set()
    out_edges: set[tuple[int, int]] = set()
    for u in p.graph.vertices():
        for v in p.graph.adj[u]:
            if u >= v:
                continue
            e = (u, v)
            if e in cedges:
                continue
            s = side[p.face_of_dart(u, v)]
            if s != side[p.face_of_dart(v, u)]:
                raise InvariantViolation(f"edge {e} straddles dual components")
            (in_edges if s == first else out_edges).add(e)
    inn_vertices = sorted(cyc | interior)
    ext_vertices = sorted(cyc | exterior)
    inn_map = {v: i for i, v in enumerate(inn_vertices)}
    ext_map = {v: i for i, v in enumerate(ext_vertices)}
    inn_closed = build_graph(
        len(inn_vertices),
        sorted((inn_map[u], inn_map[v]) for u, v in (cedges | in_edges)),
    )
    ext_closed = build_graph(
        len(ext_vertices),
        sorted((ext_map[u], ext_map[v]) for u, v in (cedges | out_edges)),
    )
    return CycleSplit(
        cycle=walk,
        interior=interior,
        exterior=exterior,
        interior_faces=in_faces,
        exterior_faces=out_faces,
        interior_edges=frozenset(in_edges),
        exterior_edges=frozenset(out_edges),
        inn_closed=inn_closed,
        inn_ids=tuple(inn_vertices),
        ext_closed=ext_closed,
        ext_ids=tuple(ext_vertices),
    )


def inner_split(p: PlaneGraph, walk: Sequence[int]) -> CycleSplit:
    """Split with the interior on the side away from the outer face.

    The returned split's ``cycle`` is the input walk, possibly reversed,
    oriented so its forward darts face the interior.
    """
    c = as_cycle(p, walk)
    s = cycle_split(p, c)
    if p.outer_face in s.interior_faces:
        s = cycle_split(p, c.reversed())
        if p.outer_face in s.interior_faces:
            raise InvariantViolation("outer face on both sides of a cycle")
    return s


def is_separating(p: PlaneGraph, c: CycleRef | Sequence[int]) -> bool:
    """Whether both sides of the cycle contain at least one vertex."""
    ref = c if isinstance(c, CycleRef) else as_cycle(p, c)
    s = cycle_split(p, ref)
    return bool(s.interior) and bool(s.exterior)


def is_near_triangulation(p: PlaneGraph) -> bool:
    """True iff every face other than the outer one is a triangle."""
    return all(
        len(f) == 3 for i, f in enumerate(p.faces) if i != p.outer_index
    )


def is_admissible_path(p: PlaneGraph, path: Sequence[int]) -> bool:
    """Whether ``path`` is a boundary path whose internal vertices each
    separate their two path-neighbors in the whole graph."""
    path = list(path)
    if len(path) == 0 or len(set(path)) != len(path):
        return False
    info = boundary(p)
    if any(v not in info.vertices for v in path):
        return False
    walk_edges = {
        (min(u, v), max(u, v)) for u, v in _face_darts(info.walk)
    } if len(info.walk) > 1 else set()
    for u, v in zip(path, path[1:]):
        if (min(u, v), max(u, v)) not in walk_edges:
            return False
    for i in range(1, len(path) - 1):
        if has_path_avoiding(p.graph, path[i - 1], path[i + 1], path[i]):
            return False
    return True


def is_usable(p: PlaneGraph, a: Iterable[int]) -> bool:
    """Whether ``a`` is empty or orderable as an admissible boundary path.

    On success this also asserts that no vertex has more than two
    neighbors inside ``a`` (raising InvariantViolation otherwise, since
    the theory guarantees it for usable sets).
    """
    a_set = frozenset(a)
    for v in a_set:
        if not 0 <= v < p.graph.n:
            raise GraphError(f"vertex {v} out of range for n={p.graph.n}")
    if not a_set:
        return True
    info = boundary(p)
    if not a_set <= info.vertices:
        return False
    walk_edges = {(min(u, v), max(u, v)) for u, v in _face_darts(info.walk)}
    nbrs = {
        v: sorted(
            w for w in p.graph.adj[v] if w in a_set and (min(v, w), max(v, w)) in walk_edges
        )
        for v in a_set
    }

    found: Optional[list[int]] = None

    def extend(pathv: list[int], used: set[int]) -> bool:
        if len(pathv) == len(a_set):
            return is_admissible_path(p, pathv)
        for w in nbrs[pathv[-1]]:
            if w not in used:
                used.add(w)
                pathv.append(w)
                if extend(pathv, used):
                    return True
                pathv.pop()
                used.remove(w)
        return False

    ok = False
    for start in sorted(a_set):
        pathv = [start]
        if extend(pathv, {start}):
            found = pathv
            ok = True
            break
    if not ok:
        return False
    assert found is not None
    for v in p.graph.vertices():
        if len(a_set & p.graph._adj_sets[v]) > 2:
            raise InvariantViolation(
                f"usable set has a vertex ({v}) with more than two neighbors in it"
            )
    return True


def delete_vertex(p: PlaneGraph, v: int) -> tuple[PlaneGraph, tuple[int, ...]]:
    """Remove a vertex and re-identify the outer face.

    The new outer face is the traced face containing a surviving dart of
    the old outer walk.  Raises EmbeddingError if the deletion disconnects
    the graph or wipes out the whole outer walk.
    """
    if not 0 <= v < p.graph.n:
        raise GraphError(f"vertex {v} out of range")
    old_ids = tuple(u for u in p.graph.vertices() if u != v)
    new_id = {u: i for i, u in enumerate(old_ids)}
    rotation = [
        tuple(new_id[w] for w in p.rotation[u] if w != v) for u in old_ids
    ]
    edges = [
        (new_id[a], new_id[b])
        for a, b in p.graph.edges()
        if a != v and b != v
    ]
    g = build_graph(len(old_ids), edges)
    if not is_connected(g):
        raise EmbeddingError(f"deleting vertex {v} disconnects the graph")
    faces = trace_faces(g, rotation)
    outer_walk = p.outer_face
    survivor: Optional[tuple[int, int]] = None
    for a, b in _face_darts(outer_walk):
        if a != v and b != v:
            survivor = (new_id[a], new_id[b])
            break
    if survivor is None:
        raise EmbeddingError("old outer walk vanished; outer face undetermined")
    for f in faces:
        if survivor in _face_darts(f):
            return PlaneGraph(g, rotation, f), old_ids
    raise InvariantViolation("surviving outer dart not found in any face")
