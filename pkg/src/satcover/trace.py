"""From a binary raster to one digital path per connected component.

Pixels are classified by branching index (foreground neighbours): end
points (1), regular points (2) and branching points (>= 3); maximal
connected sets of branching pixels are junctions.  Removing the junctions
leaves simple open curves, which become the edges of a multigraph on
end points and junctions.  An Euler tour of that graph (after Chinese
Postman edge duplication when needed) is flattened back to a pixel path;
the first time a tour crosses a junction it takes a covering walk over
every junction pixel, so the output path visits all foreground pixels.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .paths import Adjacency, DigitalPath, Point, is_adjacent, neighbours
from .pbm import BinaryImage


class TraceError(ValueError):
    pass


class OddVerticesError(TraceError):
    """Chinese Postman matching refused: too many odd-degree vertices."""


class EmitError(TraceError):
    """A seam could not be made adjacent while flattening a tour."""


def branching_index(img: BinaryImage, p: Point, adjacency: Adjacency) -> int:
    """Number of foreground neighbours of a foreground pixel."""
    if p not in img.foreground:
        raise ValueError(f"pixel {p} is not foreground")
    return sum(1 for q in neighbours(p, adjacency) if q in img.foreground)


def pixel_kind(index: int) -> str:
    """'isolated' (0), 'end' (1), 'regular' (2) or 'branching' (>= 3)."""
    if index == 0:
        return "isolated"
    if index == 1:
        return "end"
    if index == 2:
        return "regular"
    return "branching"


def components(img: BinaryImage, adjacency: Adjacency) -> list[frozenset[Point]]:
    """Connected components of the foreground, sorted by their smallest pixel."""
    todo = set(img.foreground)
    comps = []
    while todo:
        seed = min(todo)
        comp = {seed}
        queue = deque([seed])
        todo.remove(seed)
        while queue:
            p = queue.popleft()
            for q in neighbours(p, adjacency):
                if q in todo:
                    todo.remove(q)
                    comp.add(q)
                    queue.append(q)
        comps.append(frozenset(comp))
    return sorted(comps, key=min)


@dataclass(frozen=True)
class Junction:
    """Maximal connected set of branching pixels; its branching index is the
    number of regular pixels adjacent to it."""

    pixels: frozenset[Point]
    branching_index: int


def find_junctions(img: BinaryImage, adjacency: Adjacency) -> list[Junction]:
    bidx = {p: branching_index(img, p, adjacency) for p in img.foreground}
    branching = {p for p, k in bidx.items() if k >= 3}
    out = []
    todo = set(branching)
    while todo:
        seed = min(todo)
        comp = {seed}
        queue = deque([seed])
        todo.remove(seed)
        while queue:
            p = queue.popleft()
            for q in neighbours(p, adjacency):
                if q in todo:
                    todo.remove(q)
                    comp.add(q)
                    queue.append(q)
        # attachment count: adjacent foreground outside the junction (all of
        # it is end/regular, since adjacent branching pixels would have been
        # merged into the component)
        ring = set()
        for p in comp:
            for q in neighbours(p, adjacency):
                if q in img.foreground and q not in comp:
                    ring.add(q)
        out.append(Junction(frozenset(comp), len(ring)))
    return sorted(out, key=lambda j: min(j.pixels))


# ---------------------------------------------------------------------------
# Curve graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    kind: str  # "end" | "junction" | "cycle"
    pixels: tuple[Point, ...]  # end: its pixel; junction: sorted pixels; cycle: ()


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    pixels: tuple[Point, ...]  # interior pixels only, ordered from the u side
    duplicate_of: Optional[int] = None  # set on Chinese-Postman copies

    @property
    def weight(self) -> int:
        return len(self.pixels) + 2


@dataclass(frozen=True)
class CurveGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    adjacency: Adjacency

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def odd_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d % 2 == 1]

    def is_connected(self) -> bool:
        n = len(self.vertices)
        if n <= 1:
            return True
        adj = [[] for _ in range(n)]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == n

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"kind": v.kind, "pixels": [[x, y] for x, y in v.pixels]} for v in self.vertices
            ],
            "edges": [
                {"u": e.u, "v": e.v, "pixels": [[x, y] for x, y in e.pixels]} for e in self.edges
            ],
        }


def _order_chain(comp: frozenset[Point], adjacency: Adjacency) -> tuple[list[Point], bool]:
    """Order a simplified-image component; returns (pixels, is_cycle)."""
    nbrs = {p: sorted(q for q in neighbours(p, adjacency) if q in comp) for p in comp}
    for p, qs in nbrs.items():
        if len(qs) > 2:
            raise AssertionError(f"simplified image is not thin at {p}")
    ends = sorted(p for p, qs in nbrs.items() if len(qs) <= 1)
    if ends:
        start = ends[0]
        cycle = False
    else:
        start = min(comp)
        cycle = True
    chain = [start]
    prev = None
    cur = start
    while True:
        nxt = [q for q in nbrs[cur] if q != prev]
        if not nxt:
            break
        step = nxt[0]
        if cycle and step == start:
            break
        chain.append(step)
        prev, cur = cur, step
        if cycle and len(chain) == len(comp):
            break
    if len(chain) != len(comp):
        raise AssertionError("component walk did not cover the component")
    return chain, cycle


def build_curve_graph(img: BinaryImage, adjacency: Adjacency) -> CurveGraph:
    """Graph of one connected raster component.

    End pixels and junction pixels live on the vertices; edge pixel lists
    hold everything in between, so vertex pixels and edge pixels partition
    the foreground.
    """
    comps = components(img, adjacency)
    if len(comps) != 1:
        raise TraceError(f"expected a single connected component, found {len(comps)}")

    bidx = {p: branching_index(img, p, adjacency) for p in img.foreground}
    junctions = find_junctions(img, adjacency)
    junction_of: dict[Point, int] = {}

    vertices: list[Vertex] = []
    for j in junctions:
        vertices.append(Vertex("junction", tuple(sorted(j.pixels))))
    for jid, j in enumerate(junctions):
        for p in j.pixels:
            junction_of[p] = jid
    end_vertex: dict[Point, int] = {}
    for p in sorted(q for q, k in bidx.items() if k == 1):
        end_vertex[p] = len(vertices)
        vertices.append(Vertex("end", (p,)))

    junction_pixels = set(junction_of)
    simplified = frozenset(img.foreground - junction_pixels)
    edges: list[Edge] = []

    chain_comps = []
    if simplified:
        sub = BinaryImage(img.width, img.height, simplified)
        chain_comps = components(sub, adjacency)

    for comp in chain_comps:
        chain, cycle = _order_chain(comp, adjacency)
        if cycle:
            if junctions:
                raise AssertionError("cycle component in an image with junctions")
            vid = len(vertices)
            vertices.append(Vertex("cycle", ()))
            edges.append(Edge(vid, vid, tuple(chain)))
            continue

        def port(pixel: Point, inner: Optional[Point]) -> tuple[int, bool]:
            # -> (vertex id, strip pixel from the edge list?)
            if bidx[pixel] == 1:
                return end_vertex[pixel], True
            outward = [q for q in neighbours(pixel, adjacency)
                       if q in junction_pixels and q != inner]
            if not outward:
                raise AssertionError(f"chain port {pixel} attaches to nothing")
            return junction_of[outward[0]], False

        if len(chain) == 1:
            p = chain[0]
            if bidx[p] == 1:
                u = end_vertex[p]
                out = sorted(q for q in neighbours(p, adjacency) if q in junction_pixels)
                if not out:
                    raise AssertionError(f"stranded end pixel {p}")
                edges.append(Edge(u, junction_of[out[0]], ()))
            else:
                out = sorted(q for q in neighbours(p, adjacency) if q in junction_pixels)
                if len(out) < 2:
                    raise AssertionError(f"one-pixel chain {p} lacks two attachments")
                edges.append(Edge(junction_of[out[0]], junction_of[out[1]], (p,)))
            continue

        u, strip_u = port(chain[0], chain[1])
        v, strip_v = port(chain[-1], chain[-2])
        pixels = chain[1 if strip_u else 0: len(chain) - (1 if strip_v else 0)]
        edges.append(Edge(u, v, tuple(pixels)))

    return CurveGraph(tuple(vertices), tuple(edges), adjacency)


# ---------------------------------------------------------------------------
# Chinese Postman and Euler tours
# ---------------------------------------------------------------------------


def _vertex_dijkstra(g: CurveGraph, source: int):
    """Shortest paths over the multigraph; returns (dist, predecessor edge)."""
    n = len(g.vertices)
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]  # (weight, other, edge id)
    for ei, e in enumerate(g.edges):
        adj[e.u].append((e.weight, e.v, ei))
        adj[e.v].append((e.weight, e.u, ei))
    dist = [None] * n
    pred: list[Optional[tuple[int, int]]] = [None] * n  # (prev vertex, edge id)
    heap = [(0, source)]
    dist[source] = 0
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for w, v, ei in adj[u]:
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = (u, ei)
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _min_weight_matching(odd: list[int], dist: dict[int, list]) -> list[tuple[int, int]]:
    n = len(odd)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == full:
            return 0
        i = next(k for k in range(n) if not mask & (1 << k))
        out = None
        for j in range(i + 1, n):
            if mask & (1 << j):
                continue
            c = dist[odd[i]][odd[j]] + best(mask | (1 << i) | (1 << j))
            if out is None or c < out:
                out = c
        return out

    pairs = []
    mask = 0
    while mask != full:
        i = next(k for k in range(n) if not mask & (1 << k))
        target = best(mask)
        for j in range(i + 1, n):
            if mask & (1 << j):
                continue
            nm = mask | (1 << i) | (1 << j)
            if dist[odd[i]][odd[j]] + best(nm) == target:
                pairs.append((odd[i], odd[j]))
                mask = nm
                break
    best.cache_clear()
    return pairs


def eulerize(g: CurveGraph, max_odd: int = 20) -> CurveGraph:
    """Duplicate edges along minimum-weight shortest paths pairing up the
    odd-degree vertices (edge weight = pixel count + 2), so that every
    vertex ends up with even degree.  The copies mark back-and-forth use."""
    if not g.is_connected():
        raise TraceError("cannot eulerize a disconnected graph")
    odd = g.odd_vertices()
    if not odd:
        return g
    if len(odd) > max_odd:
        raise OddVerticesError(
            f"{len(odd)} odd vertices exceed the exact matching cap of {max_odd}")
    dist = {}
    pred = {}
    for s in odd:
        dist[s], pred[s] = _vertex_dijkstra(g, s)
    pairs = _min_weight_matching(odd, dist)
    new_edges = list(g.edges)
    for a, b in pairs:
        cur = b
        while cur != a:
            prev, ei = pred[a][cur]
            base = g.edges[ei]
            new_edges.append(Edge(base.u, base.v, base.pixels, duplicate_of=ei))
            cur = prev
    return CurveGraph(g.vertices, tuple(new_edges), g.adjacency)


Traversal = tuple[int, int, int]  # (edge id, from vertex, to vertex)


def _hierholzer(g: CurveGraph, start: int) -> list[Traversal]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(g.vertices))}
    for ei, e in enumerate(g.edges):
        adj[e.u].append((ei, e.v))
        if e.v != e.u:
            adj[e.v].append((ei, e.u))
        else:
            adj[e.u].append((ei, e.u))  # self-loop occupies two slots
    used = [False] * len(g.edges)
    ptr = {v: 0 for v in adj}
    stack: list[tuple[int, Optional[int], Optional[int]]] = [(start, None, None)]
    out: list[Traversal] = []
    while stack:
        v, eid, frm = stack[-1]
        lst = adj[v]
        i = ptr[v]
        while i < len(lst) and used[lst[i][0]]:
            i += 1
        ptr[v] = i
        if i < len(lst):
            nei, nv = lst[i]
            used[nei] = True
            stack.append((nv, nei, v))
        else:
            stack.pop()
            if eid is not None:
                out.append((eid, frm, v))
    out.reverse()
    if len(out) != len(g.edges):
        raise TraceError("no Euler route: graph is disconnected")
    return out


def euler_tour(g: CurveGraph, start: int = 0) -> list[Traversal]:
    """Closed tour using every edge exactly once; requires all degrees even."""
    odd = g.odd_vertices()
    if odd:
        raise TraceError(f"graph has odd-degree vertices {odd}; eulerize first")
    if not g.is_connected():
        raise TraceError("graph is disconnected")
    if not g.edges:
        return []
    return _hierholzer(g, start)


def euler_open_trail(g: CurveGraph) -> list[Traversal]:
    """Open trail between the two odd vertices (which must be exactly two)."""
    odd = g.odd_vertices()
    if len(odd) != 2:
        raise TraceError(f"an open trail needs exactly 2 odd vertices, found {len(odd)}")
    if not g.is_connected():
        raise TraceError("graph is disconnected")
    return _hierholzer(g, min(odd))


# ---------------------------------------------------------------------------
# Flattening a tour back to pixels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Run:
    """Where one edge traversal landed in the emitted path."""

    edge: int
    offset: int
    length: int
    forward: bool


@dataclass(frozen=True)
class EmitResult:
    path: DigitalPath
    runs: tuple[Run, ...]


def _junction_tree_walk(pixels: frozenset[Point], entry: Point, exit_: Point,
                        adjacency: Adjacency) -> list[Point]:
    """Walk visiting every junction pixel, starting at entry, ending at exit_:
    a spanning-tree traversal that descends the entry-to-exit spine last and
    does not climb back out of it (at most 2*|pixels| points)."""
    parent = {entry: None}
    order = deque([entry])
    while order:
        u = order.popleft()
        for q in sorted(neighbours(u, adjacency)):
            if q in pixels and q not in parent:
                parent[q] = u
                order.append(q)
    if exit_ not in parent:
        raise EmitError(f"junction pixels are not connected between {entry} and {exit_}")
    children: dict[Point, list[Point]] = {p: [] for p in parent}
    for q, u in parent.items():
        if u is not None:
            children[u].append(q)
    spine_next: dict[Point, Point] = {}
    cur = exit_
    while parent[cur] is not None:
        spine_next[parent[cur]] = cur
        cur = parent[cur]

    out: list[Point] = []

    def visit(u: Point) -> None:
        out.append(u)
        spine = spine_next.get(u)
        for c in sorted(children[u]):
            if c == spine:
                continue
            visit(c)
            out.append(u)
        if spine is not None:
            visit(spine)

    visit(entry)
    return out


def _junction_shortest(pixels: frozenset[Point], entry: Point, exit_: Point,
                       adjacency: Adjacency) -> list[Point]:
    if entry == exit_:
        return [entry]
    parent = {entry: None}
    queue = deque([entry])
    while queue:
        u = queue.popleft()
        if u == exit_:
            break
        for q in sorted(neighbours(u, adjacency)):
            if q in pixels and q not in parent:
                parent[q] = u
                queue.append(q)
    if exit_ not in parent:
        raise EmitError(f"junction pixels are not connected between {entry} and {exit_}")
    route = [exit_]
    while parent[route[-1]] is not None:
        route.append(parent[route[-1]])
    route.reverse()
    return route


def emit_path(g: CurveGraph, tour: list[Traversal]) -> EmitResult:
    """Concatenate the tour's edge pixels, routing through junction pixels at
    the seams.  The first crossing of each junction covers all its pixels, so
    the emitted path visits every foreground pixel of the component."""
    if not tour:
        raise TraceError("cannot emit an empty tour")
    closed = tour[0][1] == tour[-1][2]
    adjacency = g.adjacency
    stream: list[Point] = []
    runs: list[Run] = []
    seen: set[int] = set()

    def append(p: Point) -> None:
        if stream and not is_adjacent(stream[-1], p, adjacency):
            raise EmitError(f"seam break: {stream[-1]} to {p} not adjacent")
        stream.append(p)

    def oriented(k: int) -> tuple[tuple[Point, ...], bool]:
        eid, u, _ = tour[k]
        e = g.edges[eid]
        fwd = u == e.u
        return (e.pixels if fwd else tuple(reversed(e.pixels))), fwd

    def lookahead(k: int) -> Point:
        pix, _ = oriented(k)
        if pix:
            return pix[0]
        vert = g.vertices[tour[k][2]]
        if vert.kind != "end":
            raise AssertionError("empty edge must end at an end vertex")
        return vert.pixels[0]

    def emit_vertex(vid: int, prev: Optional[Point], nxt_thunk) -> None:
        vert = g.vertices[vid]
        if vert.kind == "cycle":
            return
        if vert.kind == "end":
            p = vert.pixels[0]
            if not stream or stream[-1] != p:
                append(p)
            return
        nxt = nxt_thunk() if nxt_thunk is not None else None
        pixels = frozenset(vert.pixels)
        entry = _attach(pixels, prev) if prev is not None else None
        exit_ = _attach(pixels, nxt) if nxt is not None else None
        first = vid not in seen
        seen.add(vid)
        if first:
            if entry is None:
                entry = exit_ if exit_ is not None else min(pixels)
            if exit_ is None:
                exit_ = entry
            route = _junction_tree_walk(pixels, entry, exit_, adjacency)
        else:
            if entry is None or exit_ is None:
                return
            route = _junction_shortest(pixels, entry, exit_, adjacency)
        for p in route:
            append(p)

    def _attach(pixels: frozenset[Point], outside: Point) -> Point:
        cand = sorted(q for q in neighbours(outside, adjacency) if q in pixels)
        if not cand:
            raise EmitError(f"pixel {outside} does not touch the junction it should")
        return cand[0]

    if not closed:
        emit_vertex(tour[0][1], None, lambda: lookahead(0))
    for k, (eid, u, v) in enumerate(tour):
        pix, fwd = oriented(k)
        runs.append(Run(eid, len(stream), len(pix), fwd))
        for p in pix:
            append(p)
        if k + 1 < len(tour):
            nxt = k + 1
            emit_vertex(v, stream[-1] if stream else None, lambda k=nxt: lookahead(k))
        elif closed:
            emit_vertex(v, stream[-1] if stream else None, lambda: stream[0] if stream else None)
        else:
            emit_vertex(v, stream[-1] if stream else None, None)

    path = DigitalPath(tuple(stream), closed=closed, adjacency=adjacency)
    return EmitResult(path, tuple(runs))


# ---------------------------------------------------------------------------
# Whole-image pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentTrace:
    path: DigitalPath
    graph: Optional[CurveGraph]  # eulerized when duplication was needed
    tour: tuple[Traversal, ...]
    runs: tuple[Run, ...]


def trace_component(img: BinaryImage, adjacency: Adjacency) -> ComponentTrace:
    """Trace one connected component (img must contain exactly one)."""
    fg = img.foreground
    if len(fg) == 1:
        p = next(iter(fg))
        return ComponentTrace(DigitalPath((p,), closed=False, adjacency=adjacency), None, (), ())
    g = build_curve_graph(img, adjacency)
    if not g.edges:
        # every pixel is branching: one junction blob, covered by a tree walk
        pixels = frozenset(g.vertices[0].pixels)
        start = min(pixels)
        walk = _junction_tree_walk(pixels, start, start, adjacency)
        return ComponentTrace(DigitalPath(tuple(walk), closed=False, adjacency=adjacency),
                              g, (), ())
    odd = g.odd_vertices()
    if len(odd) == 2:
        tour = euler_open_trail(g)
    else:
        if odd:
            g = eulerize(g)
        tour = euler_tour(g, 0)
    emitted = emit_path(g, tour)
    return ComponentTrace(emitted.path, g, tuple(tour), emitted.runs)


def trace_image(img: BinaryImage, adjacency: Adjacency, jobs: int = 1) -> list[ComponentTrace]:
    """One path per connected component, components ordered by smallest pixel.

    Components are independent; with jobs > 1 they are traced in a process
    pool (the result order stays deterministic).
    """
    subs = [BinaryImage(img.width, img.height, comp) for comp in components(img, adjacency)]
    if jobs > 1 and len(subs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(trace_component, subs, [adjacency] * len(subs)))
    return [trace_component(sub, adjacency) for sub in subs]
