"""Ordered graded graphs (Bratteli diagrams with adic structure).

A graph is a stack of levels; level 0 has a single vertex.  Every vertex at
level n >= 1 carries an ordered list of incoming edges, each naming a source
vertex at level n-1.  Parallel edges are repeated sources; the rank of an
edge is its position in the list.

Finite paths from the root are ordered by the rank at the highest level where
they differ (given identical tails above).  Under this order the dyadic graph
— one vertex per level, two parallel edges — is the binary adding machine,
and the successor map is the usual Vershik map: bump the lowest non-maximal
edge, reset everything below it to the minimal path into the new source.

All values are immutable; every operation returns new objects plus explicit
correspondences, so conjugacy checks downstream stay mechanical.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import ClosureViolation


class _Extreme:
    """Sentinel for the result of stepping past an end of the adic order."""

    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


MAXIMAL = _Extreme("MAXIMAL")
MINIMAL = _Extreme("MINIMAL")


@dataclass(frozen=True)
class PathEdge:
    source: int
    target: int
    rank: int


@dataclass(frozen=True)
class FinitePath:
    """Edges from the root; entry n connects level n to level n+1."""

    edges: tuple[PathEdge, ...]

    @property
    def depth(self) -> int:
        return len(self.edges)

    @property
    def terminal(self) -> int:
        return self.edges[-1].target if self.edges else 0

    def ranks(self) -> tuple[int, ...]:
        return tuple(e.rank for e in self.edges)

    def __repr__(self):
        return "Path(" + ",".join(str(r) for r in self.ranks()) + ")"


class OrderedGradedGraph:
    """Immutable leveled graph with ordered incoming edges and optional colors."""

    __slots__ = ("levels", "incoming", "colors")

    def __init__(self, levels, incoming, colors=None):
        levels = tuple(int(s) for s in levels)
        incoming = tuple(
            tuple(tuple(int(s) for s in srcs) for srcs in lvl) for lvl in incoming
        )
        if len(incoming) != max(len(levels) - 1, 0):
            raise ValueError("need one incoming-edge table per level >= 1")
        for n, lvl in enumerate(incoming, start=1):
            if len(lvl) != levels[n]:
                raise ValueError(f"level {n}: {levels[n]} vertices but {len(lvl)} edge lists")
            for v, srcs in enumerate(lvl):
                for s in srcs:
                    if not 0 <= s < levels[n - 1]:
                        raise ValueError(f"level {n} vertex {v}: source {s} out of range")
        if colors is not None:
            colors = tuple(tuple(lvl) for lvl in colors)
            if len(colors) != len(levels):
                raise ValueError("need one color row per level")
            for n, row in enumerate(colors):
                if len(row) != levels[n]:
                    raise ValueError(f"color row {n} has wrong length")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "incoming", incoming)
        object.__setattr__(self, "colors", colors)

    def __setattr__(self, *a):
        raise AttributeError("OrderedGradedGraph is immutable")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level_size(self, n: int) -> int:
        return self.levels[n]

    def in_edges(self, level: int, v: int) -> tuple[int, ...]:
        """Ordered source vertices of v at level >= 1."""
        return self.incoming[level - 1][v]

    def in_degree(self, level: int, v: int) -> int:
        return len(self.in_edges(level, v))

    def color(self, level: int, v: int):
        return None if self.colors is None else self.colors[level][v]

    def without_colors(self) -> "OrderedGradedGraph":
        return OrderedGradedGraph(self.levels, self.incoming)

    def truncate(self, depth: int) -> "OrderedGradedGraph":
        if not 0 <= depth <= self.depth:
            raise ValueError(f"depth {depth} outside built range")
        colors = None if self.colors is None else self.colors[: depth + 1]
        return OrderedGradedGraph(self.levels[: depth + 1], self.incoming[:depth], colors)

    def __eq__(self, other):
        return (
            isinstance(other, OrderedGradedGraph)
            and self.levels == other.levels
            and self.incoming == other.incoming
            and self.colors == other.colors
        )

    def __hash__(self):
        return hash((self.levels, self.incoming, self.colors))

    def __repr__(self):
        return f"OrderedGradedGraph(levels={list(self.levels)})"


def dyadic_graph(depth: int, arity: int = 2) -> OrderedGradedGraph:
    """One vertex per level with `arity` parallel edges; arity=2 is the adding machine."""
    return OrderedGradedGraph(
        [1] * (depth + 1), [[tuple([0] * arity)] for _ in range(depth)]
    )


@dataclass(frozen=True)
class Violation:
    kind: str
    level: int
    vertex: int

    def __str__(self):
        return f"{self.kind}: level {self.level}, vertex {self.vertex}"


def validate(graph: OrderedGradedGraph) -> list[Violation]:
    """Diagnostics for the type invariants; empty list means well-formed."""
    out = []
    if graph.levels[0] != 1:
        out.append(Violation("root level must have exactly one vertex", 0, 0))
    for n in range(1, graph.depth + 1):
        used = set()
        for v in range(graph.level_size(n)):
            srcs = graph.in_edges(n, v)
            if not srcs:
                out.append(Violation("orphan vertex", n, v))
            used.update(srcs)
        if n <= graph.depth:
            for u in range(graph.level_size(n - 1)):
                if u not in used:
                    out.append(Violation("dead end", n - 1, u))
    return out


def path_ok(graph: OrderedGradedGraph, path: FinitePath) -> bool:
    if path.depth > graph.depth:
        return False
    at = 0
    for n, e in enumerate(path.edges, start=1):
        srcs = graph.in_edges(n, e.target) if e.target < graph.level_size(n) else None
        if (
            srcs is None
            or e.source != at
            or not 0 <= e.rank < len(srcs)
            or srcs[e.rank] != e.source
        ):
            return False
        at = e.target
    return True


def _check_path(graph, path):
    if not path_ok(graph, path):
        raise ValueError(f"path {path} is not a valid path of the graph")


def extreme_path(graph: OrderedGradedGraph, level: int, vertex: int, which: str) -> FinitePath:
    """All-minimal or all-maximal path from the root to (level, vertex)."""
    if which not in ("min", "max"):
        raise ValueError("which must be 'min' or 'max'")
    if not (0 <= level <= graph.depth and 0 <= vertex < graph.level_size(level)):
        raise ValueError(f"no vertex {vertex} at level {level}")
    edges = []
    v = vertex
    for n in range(level, 0, -1):
        srcs = graph.in_edges(n, v)
        if not srcs:
            raise ValueError(f"vertex {v} at level {n} has no incoming edges")
        rank = 0 if which == "min" else len(srcs) - 1
        edges.append(PathEdge(srcs[rank], v, rank))
        v = srcs[rank]
    return FinitePath(tuple(reversed(edges)))


def adic_successor(graph: OrderedGradedGraph, path: FinitePath):
    """Immediate successor in the adic order, or MAXIMAL."""
    _check_path(graph, path)
    for n, e in enumerate(path.edges, start=1):
        srcs = graph.in_edges(n, e.target)
        if e.rank + 1 < len(srcs):
            new_src = srcs[e.rank + 1]
            prefix = extreme_path(graph, n - 1, new_src, "min")
            bumped = PathEdge(new_src, e.target, e.rank + 1)
            return FinitePath(prefix.edges + (bumped,) + path.edges[n:])
    return MAXIMAL


def adic_predecessor(graph: OrderedGradedGraph, path: FinitePath):
    """Exact inverse of adic_successor, or MINIMAL on the all-rank-0 path."""
    _check_path(graph, path)
    for n, e in enumerate(path.edges, start=1):
        if e.rank > 0:
            srcs = graph.in_edges(n, e.target)
            new_src = srcs[e.rank - 1]
            prefix = extreme_path(graph, n - 1, new_src, "max")
            dropped = PathEdge(new_src, e.target, e.rank - 1)
            return FinitePath(prefix.edges + (dropped,) + path.edges[n:])
    return MINIMAL


def paths_into(graph: OrderedGradedGraph, level: int, vertex: int):
    """All paths from the root to (level, vertex), in adic order."""
    if level == 0:
        yield FinitePath(())
        return
    srcs = graph.in_edges(level, vertex)
    # Rank at the top level dominates the order, so iterate it outermost.
    for rank, src in enumerate(srcs):
        for below in paths_into(graph, level - 1, src):
            yield FinitePath(below.edges + (PathEdge(src, vertex, rank),))


def all_paths(graph: OrderedGradedGraph, depth: int):
    """All depth-`depth` paths, grouped by terminal vertex in adic order."""
    for v in range(graph.level_size(depth)):
        yield from paths_into(graph, depth, v)


def _segments_into(graph, hi_level, vertex, lo_level):
    """Edge segments from level lo_level up to (hi_level, vertex), in adic order."""
    if hi_level == lo_level:
        yield ()
        return
    for rank, src in enumerate(graph.in_edges(hi_level, vertex)):
        for below in _segments_into(graph, hi_level - 1, src, lo_level):
            yield below + (PathEdge(src, vertex, rank),)


class TelescopeMap:
    """Bijection between paths of a graph and paths of its telescoping."""

    def __init__(self, cut_levels, segments):
        self.cut_levels = tuple(cut_levels)
        # segments[n][v] = ordered list of input edge segments feeding output
        # edge ranks of vertex v at output level n.
        self._segments = segments
        self._rank_of = [
            None if lvl is None else [{seg: r for r, seg in enumerate(per_v)} for per_v in lvl]
            for lvl in segments
        ]

    def to_output(self, path: FinitePath) -> FinitePath:
        if path.depth != self.cut_levels[-1]:
            raise ValueError(f"expected a depth-{self.cut_levels[-1]} input path")
        edges = []
        for n in range(1, len(self.cut_levels)):
            lo, hi = self.cut_levels[n - 1], self.cut_levels[n]
            seg = path.edges[lo:hi]
            target = seg[-1].target
            rank = self._rank_of[n][target][seg]
            edges.append(PathEdge(seg[0].source, target, rank))
        return FinitePath(tuple(edges))

    def to_input(self, path: FinitePath) -> FinitePath:
        if path.depth != len(self.cut_levels) - 1:
            raise ValueError(f"expected a depth-{len(self.cut_levels) - 1} output path")
        edges = []
        for n, e in enumerate(path.edges, start=1):
            edges.extend(self._segments[n][e.target][e.rank])
        return FinitePath(tuple(edges))


def telescope(graph: OrderedGradedGraph, cut_levels) -> tuple[OrderedGradedGraph, TelescopeMap]:
    """Collapse the graph along cut_levels; parallel edges enumerate connecting paths.

    Edge order between consecutive cuts is the adic order of the path segments,
    so the correspondence commutes with the successor map.
    """
    cuts = list(cut_levels)
    if not cuts or cuts[0] != 0:
        raise ValueError("cut_levels must start at 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut_levels must be strictly increasing")
    if cuts[-1] > graph.depth:
        raise ValueError("cut_levels exceed the built depth")
    levels = [graph.level_size(k) for k in cuts]
    incoming = []
    segments = [None]
    for n in range(1, len(cuts)):
        lo, hi = cuts[n - 1], cuts[n]
        per_vertex_edges = []
        per_vertex_segs = []
        for v in range(graph.level_size(hi)):
            segs = sorted(
                _segments_into(graph, hi, v, lo),
                key=lambda seg: tuple(e.rank for e in reversed(seg)),
            )
            per_vertex_segs.append(segs)
            per_vertex_edges.append(tuple(seg[0].source for seg in segs))
        incoming.append(per_vertex_edges)
        segments.append(per_vertex_segs)
    colors = None
    if graph.colors is not None:
        colors = [graph.colors[k] for k in cuts]
    out = OrderedGradedGraph(levels, incoming, colors)
    return out, TelescopeMap(cuts, segments)


class SubgraphMap:
    """Index translation between an induced subgraph and its ambient graph."""

    def __init__(self, to_ambient):
        self.to_ambient = [tuple(row) for row in to_ambient]
        self.to_sub = [
            {amb: i for i, amb in enumerate(row)} for row in self.to_ambient
        ]

    def path_to_ambient(self, path: FinitePath) -> FinitePath:
        edges = []
        for n, e in enumerate(path.edges, start=1):
            edges.append(
                PathEdge(self.to_ambient[n - 1][e.source], self.to_ambient[n][e.target], e.rank)
            )
        return FinitePath(tuple(edges))

    def path_to_sub(self, path: FinitePath) -> FinitePath:
        edges = []
        for n, e in enumerate(path.edges, start=1):
            edges.append(
                PathEdge(self.to_sub[n - 1][e.source], self.to_sub[n][e.target], e.rank)
            )
        return FinitePath(tuple(edges))


def induced_subgraph(graph: OrderedGradedGraph, selected) -> tuple[OrderedGradedGraph, SubgraphMap]:
    """Subgraph on the selected vertices, keeping all incoming edges of each.

    Raises ClosureViolation unless the selection is downward closed.  Edge
    ranks are inherited, so the subgraph's path space sits inside the ambient
    one invariantly under the successor where it stays selected.
    """
    sel = [sorted(set(s)) for s in selected]
    if len(sel) != graph.depth + 1:
        raise ValueError("need one selection per level")
    if sel[0] != [0]:
        raise ValueError("the level-0 vertex must be selected")
    for n, row in enumerate(sel):
        for v in row:
            if not 0 <= v < graph.level_size(n):
                raise ValueError(f"no vertex {v} at level {n}")
    chosen = [set(row) for row in sel]
    for n in range(1, graph.depth + 1):
        for v in sel[n]:
            for s in graph.in_edges(n, v):
                if s not in chosen[n - 1]:
                    raise ClosureViolation(n, v, s)
    mapping = SubgraphMap(sel)
    levels = [len(row) for row in sel]
    incoming = []
    for n in range(1, graph.depth + 1):
        incoming.append(
            [
                tuple(mapping.to_sub[n - 1][s] for s in graph.in_edges(n, v))
                for v in sel[n]
            ]
        )
    colors = None
    if graph.colors is not None:
        colors = [
            tuple(graph.colors[n][v] for v in sel[n]) for n in range(graph.depth + 1)
        ]
    return OrderedGradedGraph(levels, incoming, colors), mapping


def ordered_iso(a: OrderedGradedGraph, b: OrderedGradedGraph):
    """Level-wise bijection preserving ordered sources and colors, or None.

    Deterministic: vertices are matched by their (color, mapped ordered
    sources) signature; genuinely interchangeable clones are resolved by
    backtracking over index-ordered assignments, so a graph maps to itself by
    the identity.
    """
    if a.levels != b.levels:
        return None
    depth = a.depth

    def signature(g, n, v, phi_prev):
        srcs = g.in_edges(n, v)
        mapped = tuple(phi_prev[s] for s in srcs) if phi_prev is not None else tuple(srcs)
        return (g.color(n, v), mapped)

    def extend(n, phi):
        # phi: list of per-level tuples built so far (levels 0..n-1)
        if n > depth:
            return phi
        groups_b = {}
        for v in range(b.level_size(n)):
            groups_b.setdefault((b.color(n, v), b.in_edges(n, v)), []).append(v)
        groups_a = {}
        for v in range(a.level_size(n)):
            sig = signature(a, n, v, phi[n - 1])
            groups_a.setdefault(sig, []).append(v)
        if set(groups_a) != set(groups_b):
            return None
        if any(len(groups_a[s]) != len(groups_b[s]) for s in groups_a):
            return None
        sigs = sorted(groups_a, key=repr)
        fixed = [s for s in sigs if len(groups_a[s]) == 1]
        free = [s for s in sigs if len(groups_a[s]) > 1]
        base = {}
        for s in fixed:
            base[groups_a[s][0]] = groups_b[s][0]

        def assign(i):
            if i == len(free):
                row = tuple(base[v] for v in range(a.level_size(n)))
                return extend(n + 1, phi + [row])
            s = free[i]
            for perm in itertools.permutations(groups_b[s]):
                for va, vb in zip(groups_a[s], perm):
                    base[va] = vb
                result = assign(i + 1)
                if result is not None:
                    return result
            for va in groups_a[s]:
                base.pop(va, None)
            return None

        return assign(0)

    if a.color(0, 0) != b.color(0, 0):
        return None
    return extend(1, [(0,)])


# -- serialization -----------------------------------------------------------

GRAPH_SCHEMA = "graded-graph/1"


def graph_to_json_dict(graph: OrderedGradedGraph) -> dict:
    doc = {
        "schema": GRAPH_SCHEMA,
        "levels": list(graph.levels),
        "edges": [[list(srcs) for srcs in lvl] for lvl in graph.incoming],
    }
    if graph.colors is not None:
        doc["colors"] = [list(row) for row in graph.colors]
    return doc


def graph_from_json_dict(doc: dict) -> OrderedGradedGraph:
    if doc.get("schema") not in (None, GRAPH_SCHEMA):
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return OrderedGradedGraph(doc["levels"], doc["edges"], doc.get("colors"))


def graph_to_json(graph: OrderedGradedGraph) -> str:
    return json.dumps(graph_to_json_dict(graph), sort_keys=True, separators=(",", ":"))


def graph_from_json(text: str) -> OrderedGradedGraph:
    return graph_from_json_dict(json.loads(text))


def graph_to_dot(graph: OrderedGradedGraph, name: str = "G") -> str:
    """Deterministic DOT rendering with rank labels and per-level ranking."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for n in range(graph.depth + 1):
        ids = " ".join(f'"L{n}_{v}"' for v in range(graph.level_size(n)))
        lines.append(f"  {{ rank=same; {ids} }}")
        for v in range(graph.level_size(n)):
            color = graph.color(n, v)
            label = f"{n}:{v}" if color is None else f"{n}:{v}\\n{color}"
            lines.append(f'  "L{n}_{v}" [label="{label}"];')
    for n in range(1, graph.depth + 1):
        for v in range(graph.level_size(n)):
            for rank, s in enumerate(graph.in_edges(n, v)):
                lines.append(f'  "L{n - 1}_{s}" -> "L{n}_{v}" [label="{rank}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
