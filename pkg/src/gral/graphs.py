"""Finite directed graphs: path enumeration, vertex classification, the
relative-Cohn cover construction and morphisms between (graph, X) pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import GralError, XNotRegular

PRIME_SUFFIX = "'"


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """A length-0 path is a vertex (src == dst, no edges)."""

    src: str
    dst: str
    edges: tuple = ()

    def __len__(self):
        return len(self.edges)

    def sort_key(self):
        return (len(self.edges), self.edges, self.src)


class Graph:
    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(*e) if not isinstance(e, Edge) else e for e in edges)
        names = list(self.vertices) + [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise GralError("vertex and edge names must be globally unique")
        vset = set(self.vertices)
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise GralError(f"edge {e.name} references unknown vertex")
        self._edge_by_name = {e.name: e for e in self.edges}
        self._out = {v: tuple(sorted((e for e in self.edges if e.src == v),
                                     key=lambda e: e.name))
                     for v in self.vertices}

    def edge(self, name: str) -> Edge:
        return self._edge_by_name[name]

    def out_edges(self, v: str):
        return self._out[v]

    @property
    def sinks(self):
        return tuple(v for v in self.vertices if not self._out[v])

    @property
    def regular(self):
        # finite graphs have no infinite emitters, so regular = non-sink
        return tuple(v for v in self.vertices if self._out[v])

    def is_null(self) -> bool:
        return not self.vertices

    # -- paths -------------------------------------------------------------

    def vertex_path(self, v: str) -> Path:
        if v not in self._out:
            raise GralError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def make_path(self, edge_names) -> Path:
        edge_names = tuple(edge_names)
        if not edge_names:
            raise GralError("use vertex_path for length-0 paths")
        es = [self.edge(n) for n in edge_names]
        for a, b in zip(es, es[1:]):
            if a.dst != b.src:
                raise GralError(f"edges {a.name},{b.name} do not compose")
        return Path(es[0].src, es[-1].dst, edge_names)

    def extend(self, p: Path, e: Edge) -> Path:
        if p.dst != e.src:
            raise GralError(f"path into {p.dst} cannot continue along {e.name}")
        return Path(p.src, e.dst, p.edges + (e.name,))

    def paths(self, n: int, target: Optional[str] = None):
        """P(n, v): length-n paths, optionally with range v, lex-ordered."""
        if n < 0:
            raise ValueError("path length must be nonnegative")
        level = [Path(v, v, ()) for v in sorted(self.vertices)]
        for _ in range(n):
            nxt = []
            for p in level:
                for e in self._out[p.dst]:
                    nxt.append(Path(p.src, e.dst, p.edges + (e.name,)))
            level = nxt
        if target is not None:
            level = [p for p in level if p.dst == target]
        return sorted(level, key=Path.sort_key)

    def paths_up_to(self, n: int):
        out = []
        for k in range(n + 1):
            out.extend(self.paths(k))
        return out

    def longest_path_length(self) -> Optional[int]:
        """Max path length for acyclic graphs, None if the graph has a cycle."""
        if not is_acyclic(self):
            return None
        n = 0
        while self.paths(n + 1):
            n += 1
        return n

    def __eq__(self, other):
        return (isinstance(other, Graph) and other.vertices == self.vertices
                and other.edges == self.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({list(self.vertices)}, {[(e.name, e.src, e.dst) for e in self.edges]})"


def vertex_classify(graph: Graph):
    """(sinks, regular vertices)."""
    return graph.sinks, graph.regular


def is_acyclic(graph: Graph) -> bool:
    color = {v: 0 for v in graph.vertices}  # 0 new, 1 active, 2 done
    for start in graph.vertices:
        if color[start]:
            continue
        stack = [(start, iter(graph.out_edges(start)))]
        color[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                w = e.dst
                if color[w] == 1:
                    return False
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(graph.out_edges(w))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return True


def cohn_cover(graph: Graph, x) -> Graph:
    """E(X): duplicate the regular vertices outside X.

    Adds v' for each v in Y = Reg(E) \\ X and an edge e' : s(e) -> r(e)' for
    each edge e with r(e) in Y.  Primed names are original + "'"; a collision
    with an existing name is an error.
    """
    x = frozenset(x)
    reg = set(graph.regular)
    if not x <= reg:
        raise XNotRegular(f"X contains non-regular vertices: {sorted(x - reg)}")
    y = sorted(reg - x)
    taken = set(graph.vertices) | {e.name for e in graph.edges}
    new_vertices = []
    for v in y:
        pv = v + PRIME_SUFFIX
        if pv in taken:
            raise GralError(f"primed name {pv!r} collides with an existing name")
        taken.add(pv)
        new_vertices.append(pv)
    new_edges = []
    for e in graph.edges:
        if e.dst in y:
            pe = e.name + PRIME_SUFFIX
            if pe in taken:
                raise GralError(f"primed name {pe!r} collides with an existing name")
            taken.add(pe)
            new_edges.append(Edge(pe, e.src, e.dst + PRIME_SUFFIX))
    return Graph(graph.vertices + tuple(new_vertices), graph.edges + tuple(new_edges))


# ---------------------------------------------------------------------------
# Category of (graph, X) pairs


@dataclass(frozen=True)
class CohnPair:
    """Object (E, X) with X a subset of the regular vertices of E."""

    graph: Graph
    x: frozenset = field(default=None)

    def __post_init__(self):
        x = self.x
        if x is None:
            x = frozenset(self.graph.regular)
        else:
            x = frozenset(x)
        reg = set(self.graph.regular)
        if not x <= reg:
            raise XNotRegular(f"X contains non-regular vertices: {sorted(x - reg)}")
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class GraphMorphism:
    """Morphism (F, Y) -> (E, X): vertex and edge maps."""

    source: CohnPair
    target: CohnPair
    vmap: tuple  # ((v, image), ...) sorted
    emap: tuple

    @staticmethod
    def make(source: CohnPair, target: CohnPair, vmap: dict, emap: dict):
        f, e = source.graph, target.graph
        if set(vmap) != set(f.vertices) or set(emap) != {x.name for x in f.edges}:
            raise GralError("morphism maps must be total on the source graph")
        for v in vmap.values():
            if v not in set(e.vertices):
                raise GralError(f"vertex image {v!r} not in target graph")
        for name in emap.values():
            if name not in {x.name for x in e.edges}:
                raise GralError(f"edge image {name!r} not in target graph")
        return GraphMorphism(source, target,
                             tuple(sorted(vmap.items())), tuple(sorted(emap.items())))

    def vertex_image(self, v):
        return dict(self.vmap)[v]

    def edge_image(self, name):
        return dict(self.emap)[name]


@dataclass(frozen=True)
class MorphismVerdict:
    valid: bool
    failed_condition: Optional[str] = None  # "a" | "b" | "c"
    detail: str = ""


def morphism_validate(m: GraphMorphism) -> MorphismVerdict:
    """Check the three morphism conditions, reporting the first failure."""
    f, e = m.source.graph, m.target.graph
    vmap, emap = dict(m.vmap), dict(m.emap)
    # (a) injective graph homomorphism
    if len(set(vmap.values())) != len(vmap):
        return MorphismVerdict(False, "a", "vertex map not injective")
    if len(set(emap.values())) != len(emap):
        return MorphismVerdict(False, "a", "edge map not injective")
    for edge in f.edges:
        img = e.edge(emap[edge.name])
        if img.src != vmap[edge.src]:
            return MorphismVerdict(False, "a", f"source of {edge.name} not preserved")
        if img.dst != vmap[edge.dst]:
            return MorphismVerdict(False, "a", f"range of {edge.name} not preserved")
    # (b) psi0(Y) <= X
    for v in sorted(m.source.x):
        if vmap[v] not in m.target.x:
            return MorphismVerdict(False, "b", f"{v} in Y but image outside X")
    # (c) bijection on outgoing edges at Y-vertices
    for v in sorted(m.source.x):
        images = sorted(emap[edge.name] for edge in f.out_edges(v))
        targets = sorted(edge.name for edge in e.out_edges(vmap[v]))
        if images != targets:
            return MorphismVerdict(False, "c", f"s^-1({v}) not mapped bijectively")
    return MorphismVerdict(True)


def compose_morphisms(second: GraphMorphism, first: GraphMorphism) -> GraphMorphism:
    """second after first."""
    if first.target != second.source:
        raise GralError("morphisms do not compose")
    v2, e2 = dict(second.vmap), dict(second.emap)
    vmap = {v: v2[w] for v, w in first.vmap}
    emap = {n: e2[m_] for n, m_ in first.emap}
    return GraphMorphism.make(first.source, second.target, vmap, emap)


# ---------------------------------------------------------------------------
# JSON interface


def graph_from_dict(obj) -> CohnPair:
    """{"vertices": [...], "edges": [{"name","src","dst"}], "x": [...]?}

    Omitted "x" means X = Reg(E), i.e. the Leavitt case.
    """
    g = Graph(obj.get("vertices", []),
              [(e["name"], e["src"], e["dst"]) for e in obj.get("edges", [])])
    x = obj.get("x")
    return CohnPair(g, None if x is None else frozenset(x))


def graph_to_dict(pair: CohnPair):
    g = pair.graph
    out = {
        "vertices": list(g.vertices),
        "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in g.edges],
    }
    if set(pair.x) != set(g.regular):
        out["x"] = sorted(pair.x)
    return out


def morphism_from_dict(obj, source: CohnPair, target: CohnPair) -> GraphMorphism:
    """{"vmap": {...}, "emap": {...}, "sourceX": [...]?, "targetX": [...]?}

    Explicit X fields override the pairs' own subsets.
    """
    if "sourceX" in obj:
        source = CohnPair(source.graph, frozenset(obj["sourceX"]))
    if "targetX" in obj:
        target = CohnPair(target.graph, frozenset(obj["targetX"]))
    return GraphMorphism.make(source, target, dict(obj["vmap"]), dict(obj["emap"]))
