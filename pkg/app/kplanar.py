# app/kplanar.py
"""k-planar partitions: structural symmetry checks and upper-bound estimates.

Every number produced here is an upper bound witnessed by a certificate;
nothing in this module claims an exact k-planar crossing number.
"""
from __future__ import annotations

import functools
import hashlib
import logging
import math
import random
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from app.certificates import CrossingCertificate, certify_biplanar, certify_plane
from app.construction import EdgePartition
from app.errors import DomainError, SearchError
from app.geometry import Drawing, Point, count_crossings
from app.graph_core import (
    Edge,
    Graph,
    VertexLabel,
    VertexMap,
    are_isomorphic,
    format_edge,
    make_edge,
    verify_isomorphism,
)
from app.layout_search import derive_seed, search_best
from app.models import SearchParams
from app.utils.bands import band_rows

logger = logging.getLogger(__name__)

EXHAUSTIVE_EDGE_LIMIT = 16
DEFAULT_RANDOM_SAMPLES = 64
PLANAR_SPLIT_NODE_BUDGET = 200_000
PART_CACHE_SIZE = 4096


@dataclass(frozen=True)
class SymmetryReport:
    is_symmetric: bool
    witnesses: List[VertexMap] = field(default_factory=list)
    failing_pair: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class CrKEstimate:
    graph: Graph
    k: int
    best_partition: EdgePartition
    best_total: int
    symmetric_only: bool
    certificate: CrossingCertificate
    candidates_evaluated: int = 0


@dataclass(frozen=True)
class ExplorationRow:
    partition_id: int
    symmetric: bool
    part_totals: Tuple[int, ...]
    grand_total: int
    partition: EdgePartition


# ============================================================
#   SYMMETRY
# ============================================================

def is_structurally_symmetric(p: EdgePartition, hints: Sequence[VertexMap] = ()) -> SymmetryReport:
    """Check G_1 ~ G_i for i = 2..k on the full vertex set.

    `hints` are candidate witnesses tried before the backtracking search
    (e.g. sigma for the Q8 partition). Any witness returned has been
    checked edge by edge.
    """
    if p.k < 2:
        return SymmetryReport(True)
    first = p.part_graph(0)
    witnesses: List[VertexMap] = []
    for i in range(1, p.k):
        other = p.part_graph(i)
        if len(p.parts[i]) != len(p.parts[0]):
            return SymmetryReport(False, witnesses, (1, i + 1))
        witness = next((h for h in hints if verify_isomorphism(first, other, h)), None)
        if witness is None:
            witness = are_isomorphic(first, other)
        if witness is None or not verify_isomorphism(first, other, witness):
            return SymmetryReport(False, witnesses, (1, i + 1))
        witnesses.append(witness)
    return SymmetryReport(True, witnesses)


def kss_feasible(g: Graph, k: int) -> bool:
    """Necessary condition only: |E| must be a multiple of k."""
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    return len(g.edges) % k == 0


# ---------- Candidate streams ----------

def _equal_size_partitions(g: Graph, k: int) -> Iterator[EdgePartition]:
    """Every split of E into k equal parts, each unordered split exactly once."""
    edges = g.sorted_edges()
    size = len(edges) // k
    parts: List[List[Edge]] = [[] for _ in range(k)]

    def assign(i: int, opened: int) -> Iterator[EdgePartition]:
        if i == len(edges):
            yield EdgePartition(g, tuple(frozenset(p) for p in parts))
            return
        # restricted growth: edge i may open at most one new part
        for j in range(min(opened + 1, k)):
            if len(parts[j]) < size:
                parts[j].append(edges[i])
                yield from assign(i + 1, max(opened, j + 1))
                parts[j].pop()

    yield from assign(0, 0)


def _random_equal_partitions(g: Graph, k: int, samples: int, seed: int) -> Iterator[EdgePartition]:
    rng = random.Random(seed)
    edges = g.sorted_edges()
    size = len(edges) // k
    for _ in range(samples):
        rng.shuffle(edges)
        yield EdgePartition(g, tuple(frozenset(edges[j * size:(j + 1) * size]) for j in range(k)))


def _random_partitions(g: Graph, k: int, samples: int, seed: int) -> Iterator[EdgePartition]:
    rng = random.Random(seed)
    edges = g.sorted_edges()
    for _ in range(samples):
        parts: List[List[Edge]] = [[] for _ in range(k)]
        for e in edges:
            parts[rng.randrange(k)].append(e)
        yield EdgePartition(g, tuple(frozenset(p) for p in parts))


def _candidates(g: Graph, k: int, limit: Optional[int], seed: int) -> Iterator[EdgePartition]:
    if len(g.edges) <= EXHAUSTIVE_EDGE_LIMIT:
        return _equal_size_partitions(g, k)
    return _random_equal_partitions(g, k, limit or DEFAULT_RANDOM_SAMPLES, seed)


def enumerate_symmetric_partitions(
    g: Graph, k: int, limit: Optional[int] = None, seed: int = 0
) -> Iterator[EdgePartition]:
    """Yield k-structurally-symmetric partitions of E(g), deduplicated up to part order.

    Graphs with at most EXHAUSTIVE_EDGE_LIMIT edges are enumerated exhaustively
    in a fixed order and `limit` caps the number yielded. Larger graphs are
    sampled at random and `limit` is the sample budget.
    """
    if not kss_feasible(g, k):
        return
    exhaustive = len(g.edges) <= EXHAUSTIVE_EDGE_LIMIT
    seen: set = set()
    yielded = 0
    for p in _candidates(g, k, limit, seed):
        key = p.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        if not is_structurally_symmetric(p).is_symmetric:
            continue
        yield p
        yielded += 1
        if exhaustive and limit is not None and yielded >= limit:
            return


# ============================================================
#   PART EVALUATION
# ============================================================

def _content_index(vertices: FrozenSet[VertexLabel], edges: FrozenSet[Edge]) -> int:
    text = " ".join(str(v) for v in sorted(vertices)) + "|" + " ".join(format_edge(e) for e in sorted(edges))
    return int.from_bytes(hashlib.sha256(text.encode("ascii")).digest()[:8], "big")


def _edgeless_drawing(graph: Graph) -> Drawing:
    per_row = max(1, math.isqrt(len(graph.vertices) - 1) + 1) if graph.vertices else 1
    slots = band_rows(len(graph.vertices), per_row)
    return Drawing(graph, {v: Point(col, row) for v, (row, col) in zip(graph.sorted_vertices(), slots)})


def _planar_drawing(graph: Graph) -> Optional[Drawing]:
    """Straight-line integer grid drawing of a planar graph, or None."""
    nxg = nx.Graph()
    nxg.add_nodes_from(graph.sorted_vertices())
    nxg.add_edges_from(graph.sorted_edges())
    is_planar, embedding = nx.check_planarity(nxg)
    if not is_planar:
        return None
    pos = nx.combinatorial_embedding_to_pos(embedding)
    try:
        drawing = Drawing(graph, {v: Point(int(x), int(y)) for v, (x, y) in pos.items()})
        if count_crossings(drawing).total == 0:
            return drawing
    except DomainError as exc:
        logger.debug("planar embedding rejected: %s", exc)
    return None


@functools.lru_cache(maxsize=PART_CACHE_SIZE)
def _evaluate_part(
    vertices: FrozenSet[VertexLabel], edges: FrozenSet[Edge], params: SearchParams
) -> Tuple[int, Drawing]:
    graph = Graph(vertices, edges)
    if not edges:
        return 0, _edgeless_drawing(graph)
    drawing = _planar_drawing(graph)
    if drawing is not None:
        return 0, drawing
    seed = derive_seed(params.seed, _content_index(vertices, edges))
    outcome = search_best(graph, params.model_copy(update={"seed": seed, "target": 0}))
    logger.debug("non-planar part with %d edges: %d crossings", len(edges), outcome.total)
    return outcome.total, outcome.drawing


def _evaluate(p: EdgePartition, params: SearchParams) -> List[Tuple[int, Drawing]]:
    return [_evaluate_part(p.host.vertices, part, params) for part in p.parts]


# ============================================================
#   ESTIMATES
# ============================================================

def _planar_split(g: Graph, k: int) -> Optional[EdgePartition]:
    """Depth-first assignment of edges to parts 1..k keeping every part planar."""
    edges = g.sorted_edges()
    parts = [nx.Graph() for _ in range(k)]
    visited = 0

    def place(i: int) -> bool:
        nonlocal visited
        if i == len(edges):
            return True
        for j in range(k):
            visited += 1
            if visited > PLANAR_SPLIT_NODE_BUDGET:
                return False
            # empty parts are interchangeable
            if j > 0 and parts[j].number_of_edges() == 0 and parts[j - 1].number_of_edges() == 0:
                break
            parts[j].add_edge(*edges[i])
            if nx.check_planarity(parts[j], counterexample=False)[0] and place(i + 1):
                return True
            parts[j].remove_edge(*edges[i])
        return False

    if not place(0):
        logger.debug("no planar %d-split found after %d placements", k, visited)
        return None
    return EdgePartition(g, tuple(frozenset(make_edge(u, v) for u, v in p.edges()) for p in parts))


def estimate_cr_k(
    g: Graph,
    k: int,
    params: Optional[SearchParams] = None,
    symmetric_only: bool = False,
    limit: Optional[int] = None,
) -> CrKEstimate:
    """Best certified upper bound on cr_k(g), or cr_kss(g) with `symmetric_only`.

    The unrestricted search evaluates every symmetric candidate the restricted
    one would (same seeds, cached part results), so its bound is never worse.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    params = params or SearchParams()
    if k == 1:
        symmetric: Iterator[EdgePartition] = iter([EdgePartition(g, (g.edges,))])
    else:
        symmetric = enumerate_symmetric_partitions(g, k, limit, params.seed)

    if symmetric_only:
        streams = [symmetric]
    else:
        split = _planar_split(g, k)
        streams = [
            iter([split] if split is not None else []),
            symmetric,
            _random_partitions(g, k, limit or DEFAULT_RANDOM_SAMPLES, params.seed),
        ]

    best: Optional[Tuple[int, EdgePartition, List[Tuple[int, Drawing]]]] = None
    evaluated = 0
    for stream in streams:
        for p in stream:
            results = _evaluate(p, params)
            evaluated += 1
            total = sum(t for t, _ in results)
            if best is None or total < best[0]:
                best = (total, p, results)
            if best[0] == 0:
                break
        if best is not None and best[0] == 0:
            break
    if best is None:
        raise SearchError(f"no {k}-structurally-symmetric partition found")

    total, partition, results = best
    planes = [certify_plane(partition.parts[i], [d], i + 1) for i, (_, d) in enumerate(results)]
    certificate = certify_biplanar(partition, planes)
    logger.info(
        "cr_%d upper bound %d after %d candidates%s",
        k, certificate.grand_total, evaluated, " (symmetric only)" if symmetric_only else "",
    )
    return CrKEstimate(g, k, partition, certificate.grand_total, symmetric_only, certificate, evaluated)


# ============================================================
#   EXPLORATION
# ============================================================

def explore(
    g: Graph,
    k: int,
    symmetric_only: bool = False,
    limit: Optional[int] = None,
    seed: int = 0,
    params: Optional[SearchParams] = None,
) -> List[ExplorationRow]:
    """Evaluate equal-size k-partitions of E(g); rows sorted by (grand total, id).

    Infeasible (|E| not a multiple of k) gives an empty table.
    """
    if not kss_feasible(g, k):
        logger.info("|E| = %d is not a multiple of %d: nothing to explore", len(g.edges), k)
        return []
    params = params or SearchParams(seed=seed)
    rows: List[ExplorationRow] = []
    seen: set = set()
    for pid, p in enumerate(_candidates(g, k, limit, seed), start=1):
        if limit is not None and len(rows) >= limit:
            break
        key = p.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        symmetric = is_structurally_symmetric(p).is_symmetric
        if symmetric_only and not symmetric:
            continue
        totals = tuple(t for t, _ in _evaluate(p, params))
        rows.append(ExplorationRow(pid, symmetric, totals, sum(totals), p))
    rows.sort(key=lambda r: (r.grand_total, r.partition_id))
    return rows


def render_exploration(rows: Sequence[ExplorationRow]) -> str:
    out = [f"{'id':>6}  {'symmetric':<9}  {'part_totals':<20}  grand_total"]
    for r in rows:
        totals = ",".join(str(t) for t in r.part_totals)
        out.append(f"{r.partition_id:>6}  {'yes' if r.symmetric else 'no':<9}  {totals:<20}  {r.grand_total}")
    return "\n".join(out) + "\n"
