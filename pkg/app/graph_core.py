# app/graph_core.py
from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from app.errors import DomainError

logger = logging.getLogger(__name__)

MAX_HYPERCUBE_DIMENSION = 16


# ============================================================
#   VERTEX LABELS
# ============================================================

@total_ordering
@dataclass(frozen=True, eq=True)
class VertexLabel:
    """A fixed-width bit string naming a hypercube vertex."""

    bits: str

    def __post_init__(self) -> None:
        if not isinstance(self.bits, str) or not self.bits:
            raise DomainError(f"vertex label must be a non-empty bit string, got {self.bits!r}")
        if self.bits.strip("01"):
            raise DomainError(f"vertex label {self.bits!r} contains non-binary digits")

    @classmethod
    def from_int(cls, value: int, width: int) -> "VertexLabel":
        if width <= 0 or value < 0 or value >= (1 << width):
            raise DomainError(f"cannot encode {value} in {width} bits")
        return cls(format(value, f"0{width}b"))

    @property
    def width(self) -> int:
        return len(self.bits)

    def to_int(self) -> int:
        return int(self.bits, 2)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, VertexLabel):
            return NotImplemented
        if self.width != other.width:
            raise DomainError(f"cannot compare labels of width {self.width} and {other.width}")
        return self.bits < other.bits

    def __str__(self) -> str:
        return self.bits

    def xor(self, mask: "VertexLabel") -> "VertexLabel":
        if mask.width != self.width:
            raise DomainError(f"mask width {mask.width} != label width {self.width}")
        return VertexLabel.from_int(self.to_int() ^ mask.to_int(), self.width)

    def complement(self) -> "VertexLabel":
        return VertexLabel(self.bits.translate(_FLIP))

    def concat(self, other: "VertexLabel") -> "VertexLabel":
        return VertexLabel(self.bits + other.bits)


_FLIP = str.maketrans("01", "10")

Edge = Tuple[VertexLabel, VertexLabel]


def make_edge(u: VertexLabel, v: VertexLabel) -> Edge:
    """Canonical undirected edge: smaller label first."""
    if u == v:
        raise DomainError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


def format_edge(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


# ============================================================
#   GRAPHS
# ============================================================

@dataclass(frozen=True)
class Graph:
    vertices: FrozenSet[VertexLabel]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        widths = {v.width for v in self.vertices}
        if len(widths) > 1:
            raise DomainError(f"mixed label widths {sorted(widths)}")
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not u < v:
                raise DomainError(f"edge ({u}, {v}) is not in canonical order")
            if u not in self.vertices or v not in self.vertices:
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[VertexLabel, VertexLabel]],
        vertices: Iterable[VertexLabel] = (),
    ) -> "Graph":
        canonical = {make_edge(u, v) for u, v in edges}
        vs = set(vertices)
        for u, v in canonical:
            vs.add(u)
            vs.add(v)
        return cls(frozenset(vs), frozenset(canonical))

    @property
    def width(self) -> int:
        for v in self.vertices:
            return v.width
        return 0

    @cached_property
    def adjacency(self) -> Dict[VertexLabel, FrozenSet[VertexLabel]]:
        nbrs: Dict[VertexLabel, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(n) for v, n in nbrs.items()}

    def degree(self, v: VertexLabel) -> int:
        return len(self.adjacency[v])

    def degree_sequence(self) -> List[int]:
        return sorted(len(n) for n in self.adjacency.values())

    def sorted_vertices(self) -> List[VertexLabel]:
        return sorted(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: VertexLabel, v: VertexLabel) -> bool:
        return v in self.adjacency.get(u, ())

    def induced_subgraph(self, vs: Iterable[VertexLabel]) -> "Graph":
        keep = frozenset(vs)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def without_edge(self, e: Edge) -> "Graph":
        return Graph(self.vertices, self.edges - {e})


@dataclass(frozen=True)
class VertexMap:
    """An injective relabeling of a fixed vertex set."""

    mapping: Mapping[VertexLabel, VertexLabel] = field(default_factory=dict)

    def __post_init__(self) -> None:
        frozen = dict(self.mapping)
        if len(set(frozen.values())) != len(frozen):
            raise DomainError("vertex map is not injective")
        object.__setattr__(self, "mapping", frozen)

    def __call__(self, v: VertexLabel) -> VertexLabel:
        try:
            return self.mapping[v]
        except KeyError:
            raise DomainError(f"vertex map undefined at {v}") from None

    def __len__(self) -> int:
        return len(self.mapping)

    @property
    def domain(self) -> FrozenSet[VertexLabel]:
        return frozenset(self.mapping)

    @property
    def image(self) -> FrozenSet[VertexLabel]:
        return frozenset(self.mapping.values())

    def is_permutation(self) -> bool:
        return self.domain == self.image

    def inverse(self) -> "VertexMap":
        return VertexMap({v: k for k, v in self.mapping.items()})

    def then(self, other: "VertexMap") -> "VertexMap":
        """Composition: first self, then other."""
        return VertexMap({k: other(v) for k, v in self.mapping.items()})

    @classmethod
    def identity(cls, vertices: Iterable[VertexLabel]) -> "VertexMap":
        return cls({v: v for v in vertices})

    @classmethod
    def from_function(cls, vertices: Iterable[VertexLabel], fn) -> "VertexMap":
        return cls({v: fn(v) for v in vertices})

    def edge_image(self, e: Edge) -> Edge:
        return make_edge(self(e[0]), self(e[1]))


# ============================================================
#   OPERATIONS
# ============================================================

def hypercube(d: int) -> Graph:
    if not 1 <= d <= MAX_HYPERCUBE_DIMENSION:
        raise DomainError(f"hypercube dimension must be in 1..{MAX_HYPERCUBE_DIMENSION}, got {d}")
    labels = [VertexLabel.from_int(i, d) for i in range(1 << d)]
    edges = []
    for i in range(1 << d):
        for bit in range(d):
            j = i ^ (1 << bit)
            if i < j:
                edges.append((labels[i], labels[j]))
    return Graph(frozenset(labels), frozenset(edges))


def hamming_distance(u: VertexLabel, v: VertexLabel) -> int:
    if u.width != v.width:
        raise DomainError(f"hamming distance needs equal widths, got {u.width} and {v.width}")
    return sum(a != b for a, b in zip(u.bits, v.bits))


def connected_components(g: Graph) -> List[Graph]:
    seen: set = set()
    components: List[Graph] = []
    for start in g.sorted_vertices():
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        members = [start]
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    members.append(w)
                    queue.append(w)
        components.append(g.induced_subgraph(members))
    # starts are visited in sorted order, so components come out sorted by smallest label
    return components


def apply_vertex_map(g: Graph, m: VertexMap) -> Graph:
    missing = [v for v in g.vertices if v not in m.mapping]
    if missing:
        raise DomainError(f"vertex map is not total on the graph; first missing vertex {min(missing)}")
    return Graph(
        frozenset(m(v) for v in g.vertices),
        frozenset(m.edge_image(e) for e in g.edges),
    )


def verify_isomorphism(g: Graph, h: Graph, m: VertexMap) -> bool:
    """Check every edge and non-edge: m must be a bijection V(g) -> V(h) with m(E(g)) = E(h)."""
    if m.domain != g.vertices or m.image != h.vertices:
        return False
    if len(g.edges) != len(h.edges):
        return False
    return all(m.edge_image(e) in h.edges for e in g.edges)


# ---------- Isomorphism search ----------

def _distance_profile(g: Graph, start: VertexLabel) -> Tuple[int, ...]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    counts = Counter(dist.values())
    return tuple(counts[i] for i in range(max(counts) + 1))


def _signatures(g: Graph) -> Dict[VertexLabel, tuple]:
    adj = g.adjacency
    return {
        v: (len(adj[v]), tuple(sorted(len(adj[w]) for w in adj[v])), _distance_profile(g, v))
        for v in g.vertices
    }


def _search_order(
    g: Graph, sig: Dict[VertexLabel, tuple], pool_size: Dict[tuple, int]
) -> List[Tuple[VertexLabel, Optional[VertexLabel]]]:
    """BFS order per component, each vertex paired with an already-placed neighbour."""
    order: List[Tuple[VertexLabel, Optional[VertexLabel]]] = []
    placed: set = set()
    remaining = sorted(g.vertices, key=lambda v: (pool_size[sig[v]], v))
    for root in remaining:
        if root in placed:
            continue
        placed.add(root)
        order.append((root, None))
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u], key=lambda x: (pool_size[sig[x]], x)):
                if w not in placed:
                    placed.add(w)
                    order.append((w, u))
                    queue.append(w)
    return order


def are_isomorphic(g: Graph, h: Graph) -> Optional[VertexMap]:
    """Backtracking isomorphism search with degree and distance-profile pruning.

    Returns the first witness found (independently re-verified) or None.
    """
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if g.degree_sequence() != h.degree_sequence():
        return None
    if not g.vertices:
        return VertexMap({})

    sig_g = _signatures(g)
    sig_h = _signatures(h)
    if Counter(sig_g.values()) != Counter(sig_h.values()):
        return None

    pools: Dict[tuple, List[VertexLabel]] = {}
    for v in h.sorted_vertices():
        pools.setdefault(sig_h[v], []).append(v)
    pool_size = {s: len(p) for s, p in pools.items()}
    order = _search_order(g, sig_g, pool_size)

    adj_g, adj_h = g.adjacency, h.adjacency
    mapping: Dict[VertexLabel, VertexLabel] = {}
    used: set = set()

    def consistent(u: VertexLabel, v: VertexLabel) -> bool:
        mapped_nbrs = 0
        for w in adj_g[u]:
            if w in mapping:
                if mapping[w] not in adj_h[v]:
                    return False
                mapped_nbrs += 1
        # non-edges: v must have no extra neighbours among the images
        return mapped_nbrs == sum(1 for x in adj_h[v] if x in used)

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        u, anchor = order[i]
        if anchor is None:
            candidates = pools[sig_g[u]]
        else:
            candidates = sorted(adj_h[mapping[anchor]])
        for v in candidates:
            if v in used or sig_h[v] != sig_g[u] or not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if extend(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    if not extend(0):
        return None
    witness = VertexMap(dict(mapping))
    if not verify_isomorphism(g, h, witness):
        raise RuntimeError("isomorphism witness failed independent verification")
    logger.debug("isomorphism found on %d vertices", len(g.vertices))
    return witness


# ---------- Common vertex maps ----------

def xor_map(vertices: Iterable[VertexLabel], mask: VertexLabel) -> VertexMap:
    return VertexMap.from_function(vertices, lambda v: v.xor(mask))


def complement_map(vertices: Iterable[VertexLabel]) -> VertexMap:
    return VertexMap.from_function(vertices, VertexLabel.complement)
