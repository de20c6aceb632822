# app/layout_search.py
"""Seeded simulated annealing for low-crossing polyline drawings.

Every restart owns a private random.Random seeded from sha256(seed, index),
so results do not depend on how restarts are scheduled onto threads.
"""
from __future__ import annotations

import asyncio
import hashlib
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.errors import DomainError, SearchError
from app.geometry import (
    Drawing,
    Point,
    count_crossings,
    crossing_point,
    orient_arrays,
    validate_general_position,
)
from app.graph_core import Graph
from app.models import SearchParams, SearchProgress

logger = logging.getLogger(__name__)

MAX_LAYOUT_RETRIES = 64
MAX_SEARCH_COORD = 1 << 20       # keeps every local predicate inside int64
FREE_CELL_TRIES = 8
RELOCATE_SHARE = 0.5
ADD_BEND_SHARE = 0.2
MOVE_BEND_SHARE = 0.2            # the remainder removes bends

Box = Tuple[int, int, int, int]
Poly = List[Tuple[int, int]]


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


# ============================================================
#   RANDOM LAYOUTS
# ============================================================

def random_layout(g: Graph, seed: int, grid_extent: int) -> Drawing:
    """Distinct random grid cells, straight edges, resampled until in general position."""
    n = len(g.vertices)
    if grid_extent <= 0:
        raise DomainError(f"grid_extent must be positive, got {grid_extent}")
    if n > grid_extent * grid_extent:
        raise SearchError(f"{n} vertices do not fit on a {grid_extent}x{grid_extent} grid")
    rng = random.Random(seed)
    vertices = g.sorted_vertices()
    for attempt in range(MAX_LAYOUT_RETRIES):
        cells = rng.sample(range(grid_extent * grid_extent), n)
        position = {v: Point(c % grid_extent, c // grid_extent) for v, c in zip(vertices, cells)}
        drawing = Drawing(g, position, {})
        if validate_general_position(drawing).overall:
            if attempt:
                logger.debug("random layout accepted after %d resamples", attempt)
            return drawing
    raise SearchError(
        f"no general-position layout of {n} vertices on a {grid_extent}x{grid_extent} grid "
        f"after {MAX_LAYOUT_RETRIES} attempts"
    )


# ============================================================
#   ANNEALING STATE
# ============================================================

def _ints(xs) -> np.ndarray:
    return np.array(xs, dtype=np.int64)


def _segments(polys: Sequence[Poly], owners: Sequence[int]):
    ax, ay, bx, by, own = [], [], [], [], []
    for poly, o in zip(polys, owners):
        for (x0, y0), (x1, y1) in zip(poly, poly[1:]):
            ax.append(x0)
            ay.append(y0)
            bx.append(x1)
            by.append(y1)
            own.append(o)
    return _ints(ax), _ints(ay), _ints(bx), _ints(by), _ints(own)


def _pair_tests(s, t, upper: bool = False):
    """Orientation tests of every segment of s against every segment of t.

    Returns boolean (len(s), len(t)) matrices (crossing, collinear overlap).
    """
    ax, ay, bx, by = (v[:, None] for v in s[:4])
    cx, cy, dx, dy = (v[None, :] for v in t[:4])
    o1 = orient_arrays(ax, ay, bx, by, cx, cy)
    o2 = orient_arrays(ax, ay, bx, by, dx, dy)
    o3 = orient_arrays(cx, cy, dx, dy, ax, ay)
    o4 = orient_arrays(cx, cy, dx, dy, bx, by)
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    ox = np.minimum(np.maximum(ax, bx), np.maximum(cx, dx)) - np.maximum(np.minimum(ax, bx), np.minimum(cx, dx))
    oy = np.minimum(np.maximum(ay, by), np.maximum(cy, dy)) - np.maximum(np.minimum(ay, by), np.minimum(cy, dy))
    overlap = (o1 == 0) & (o2 == 0) & ((ox > 0) | (oy > 0))
    if upper:
        keep = np.triu(np.ones(crossing.shape, dtype=bool), k=1)
        crossing &= keep
        overlap &= keep
    return crossing, overlap


def _points_inside(px: np.ndarray, py: np.ndarray, segs) -> bool:
    """True if any point lies in the interior of any segment."""
    if px.size == 0 or segs[0].size == 0:
        return False
    ax, ay, bx, by = (v[None, :] for v in segs[:4])
    x, y = px[:, None], py[:, None]
    on_line = orient_arrays(ax, ay, bx, by, x, y) == 0
    inside = (x >= np.minimum(ax, bx)) & (x <= np.maximum(ax, bx)) & (y >= np.minimum(ay, by)) & (y <= np.maximum(ay, by))
    endpoint = ((x == ax) & (y == ay)) | ((x == bx) & (y == by))
    return bool(np.any(on_line & inside & ~endpoint))


def _hit_point(s, a: int, t, b: int):
    return crossing_point(
        (int(s[0][a]), int(s[1][a])), (int(s[2][a]), int(s[3][a])),
        (int(t[0][b]), int(t[1][b])), (int(t[2][b]), int(t[3][b])),
    )


Hit = Tuple[Tuple[Fraction, Fraction], int, int]


class _LayoutState:
    """Mutable integer-index view of a drawing with per-edge-pair crossing counts.

    Every crossing point is also tracked so a move that routes a segment
    through an existing crossing is rejected before it is scored.
    """

    def __init__(self, drawing: Drawing) -> None:
        self.vertices = drawing.graph.sorted_vertices()
        index = {v: i for i, v in enumerate(self.vertices)}
        self.pos: List[Tuple[int, int]] = [tuple(drawing.position[v]) for v in self.vertices]
        edges = drawing.graph.sorted_edges()
        self.edges: List[Tuple[int, int]] = [(index[u], index[v]) for u, v in edges]
        self.bends: List[List[Tuple[int, int]]] = [[tuple(b) for b in drawing.route.get(e, ())] for e in edges]
        self.incident: List[List[int]] = [[] for _ in self.vertices]
        for i, (u, v) in enumerate(self.edges):
            self.incident[u].append(i)
            self.incident[v].append(i)
        self.occupied: Counter = Counter(self.pos)
        for bends in self.bends:
            self.occupied.update(bends)

        m = len(self.edges)
        self.pair_cross = np.zeros((m, m), dtype=np.int64)
        self.crossings: Counter = Counter()
        self.edge_crossings: List[List[Tuple[Tuple[Fraction, Fraction], int]]] = [[] for _ in edges]
        self._flat = None
        self._points = None
        if m:
            flat = self.flat()
            crossing, _ = _pair_tests(flat, flat, upper=True)
            i, j = np.nonzero(crossing)
            ei, ej = flat[4][i], flat[4][j]
            keep = ei != ej
            np.add.at(self.pair_cross, (ei[keep], ej[keep]), 1)
            np.add.at(self.pair_cross, (ej[keep], ei[keep]), 1)
            for a, b in zip(i.tolist(), j.tolist()):
                self._add_crossing((_hit_point(flat, a, flat, b), int(flat[4][a]), int(flat[4][b])))
        self.total = int(self.pair_cross.sum() // 2)

    def _add_crossing(self, hit: Hit) -> None:
        x, e, f = hit
        self.crossings[x] += 1
        self.edge_crossings[e].append((x, f))
        if f != e:
            self.edge_crossings[f].append((x, e))

    def _crossings_of(self, aff: Sequence[int]) -> set:
        return {(x, min(e, f), max(e, f)) for e in aff for x, f in self.edge_crossings[e]}

    def polyline(self, i: int) -> Poly:
        u, v = self.edges[i]
        return [self.pos[u]] + self.bends[i] + [self.pos[v]]

    def flat(self):
        if self._flat is None:
            ids = range(len(self.edges))
            self._flat = _segments([self.polyline(i) for i in ids], ids)
        return self._flat

    def points(self) -> Tuple[np.ndarray, np.ndarray]:
        if self._points is None:
            pts = list(self.occupied)
            self._points = (
                np.array([p[0] for p in pts], dtype=np.int64),
                np.array([p[1] for p in pts], dtype=np.int64),
            )
        return self._points

    def evaluate(
        self,
        affected: Sequence[int],
        polys: Dict[int, Poly],
        added: Sequence[Tuple[int, int]],
        removed: Sequence[Tuple[int, int]],
    ) -> Optional[Tuple[int, np.ndarray, Callable[[], Optional[List[Hit]]]]]:
        """Crossing delta of replacing the polylines of `affected`, or None if degenerate.

        The returned resolver computes exact crossing points and returns None
        when one coincides with another crossing; it is only called for moves
        that would be accepted.
        """
        for p in added:
            if self.occupied.get(p, 0) > 0:
                return None
        m = len(self.edges)
        aff = list(affected)
        new = _segments([polys[i] for i in aff], aff)
        flat = self.flat()
        others_mask = ~np.isin(flat[4], aff)
        others = tuple(v[others_mask] for v in flat)

        gone = set(removed)
        pts = [p for p in self.occupied if p not in gone] if gone else None
        if pts is None:
            px, py = self.points()
        else:
            px = np.array([p[0] for p in pts], dtype=np.int64)
            py = np.array([p[1] for p in pts], dtype=np.int64)
        if added:
            px = np.concatenate([px, np.array([p[0] for p in added], dtype=np.int64)])
            py = np.concatenate([py, np.array([p[1] for p in added], dtype=np.int64)])
        if _points_inside(px, py, new):
            return None
        if added and _points_inside(
            np.array([p[0] for p in added], dtype=np.int64),
            np.array([p[1] for p in added], dtype=np.int64),
            others,
        ):
            return None

        cross_o, over_o = _pair_tests(new, others)
        cross_a, over_a = _pair_tests(new, new, upper=True)
        if over_o.any() or over_a.any():
            return None

        def resolve() -> Optional[List[Hit]]:
            hits: List[Hit] = []
            si, sj = np.nonzero(cross_o)
            for a, b in zip(si.tolist(), sj.tolist()):
                hits.append((_hit_point(new, a, others, b), int(new[4][a]), int(others[4][b])))
            si, sj = np.nonzero(cross_a)
            for a, b in zip(si.tolist(), sj.tolist()):
                hits.append((_hit_point(new, a, new, b), int(new[4][a]), int(new[4][b])))
            if hits:
                retired = Counter(x for x, _, _ in self._crossings_of(aff))
                seen = set()
                for x, _, _ in hits:
                    if x in seen or self.crossings.get(x, 0) - retired.get(x, 0) > 0:
                        return None
                    seen.add(x)
            return hits

        row_of = {e: r for r, e in enumerate(aff)}
        rows = np.zeros((len(aff), m), dtype=np.int64)
        si, sj = np.nonzero(cross_o)
        if si.size:
            np.add.at(rows, ([row_of[e] for e in new[4][si].tolist()], others[4][sj]), 1)
        si, sj = np.nonzero(cross_a)
        for a, b in zip(new[4][si].tolist(), new[4][sj].tolist()):
            if a != b:
                rows[row_of[a], b] += 1
                rows[row_of[b], a] += 1

        old = self.pair_cross[aff, :]
        in_aff = np.zeros(m, dtype=bool)
        in_aff[aff] = True
        delta = int(rows[:, ~in_aff].sum() - old[:, ~in_aff].sum())
        delta += int(rows[:, in_aff].sum() - old[:, in_aff].sum()) // 2
        return delta, rows, resolve

    def commit(self, affected: Sequence[int], rows: np.ndarray, delta: int, hits: Sequence[Hit]) -> None:
        aff = list(affected)
        self.pair_cross[aff, :] = rows
        self.pair_cross[:, aff] = rows.T
        self.total += delta

        aff_set = set(aff)
        for x, _, _ in self._crossings_of(aff):
            self.crossings[x] -= 1
            if self.crossings[x] <= 0:
                del self.crossings[x]
        touched = {f for e in aff for _, f in self.edge_crossings[e]} - aff_set
        for f in touched:
            self.edge_crossings[f] = [(x, o) for x, o in self.edge_crossings[f] if o not in aff_set]
        for e in aff:
            self.edge_crossings[e] = []
        for hit in hits:
            self._add_crossing(hit)
        self._flat = None
        self._points = None

    def snapshot(self) -> Tuple[List[Tuple[int, int]], List[List[Tuple[int, int]]]]:
        return list(self.pos), [list(b) for b in self.bends]

    def to_drawing(self, graph: Graph, snap=None) -> Drawing:
        pos, bends = snap if snap is not None else self.snapshot()
        position = {v: Point(*pos[i]) for i, v in enumerate(self.vertices)}
        route = {}
        for i, (u, v) in enumerate(self.edges):
            route[(self.vertices[u], self.vertices[v])] = tuple(Point(*b) for b in bends[i])
        return Drawing(graph, position, route)


# ============================================================
#   ANNEALING
# ============================================================

def _search_box(init: Drawing, grid_extent: int) -> Box:
    x0, y0, x1, y1 = init.bounding_box()
    box = (min(x0, 0), min(y0, 0), max(x1, grid_extent - 1), max(y1, grid_extent - 1))
    if max(abs(c) for c in box) > MAX_SEARCH_COORD:
        raise SearchError(f"search box {box} exceeds +/-{MAX_SEARCH_COORD}")
    return box


def _clip(p: Tuple[int, int], box: Box) -> Tuple[int, int]:
    return (min(max(p[0], box[0]), box[2]), min(max(p[1], box[1]), box[3]))


def anneal(g: Graph, init: Drawing, params: SearchParams) -> Drawing:
    """Best drawing seen while annealing from `init`; never worse than `init`."""
    if init.graph.vertices != g.vertices or init.graph.edges != g.edges:
        raise DomainError("initial drawing is not a drawing of the given graph")
    if not validate_general_position(init).overall:
        raise SearchError("initial drawing is not in general position")

    state = _LayoutState(init)
    rng = random.Random(params.seed)
    box = _search_box(init, params.grid_extent)
    jitter = max(2, (box[2] - box[0]) // 8)
    best_total, best = state.total, state.snapshot()
    floor = params.target if params.target is not None else 0
    temperature = params.initial_temperature
    n, m = len(state.vertices), len(state.edges)

    for _ in range(params.moves_per_restart):
        if best_total <= floor or n == 0 or m == 0:
            break
        proposal = _propose(state, rng, box, jitter, params.max_bends)
        if proposal is not None:
            affected, polys, added, removed, apply = proposal
            result = state.evaluate(affected, polys, added, removed)
            if result is not None:
                delta, rows, resolve = result
                if delta <= 0 or (temperature > 0 and rng.random() < math.exp(-delta / temperature)):
                    hits = resolve()
                    if hits is not None:
                        apply()
                        for p in removed:
                            state.occupied[p] -= 1
                            if state.occupied[p] <= 0:
                                del state.occupied[p]
                        state.occupied.update(added)
                        state.commit(affected, rows, delta, hits)
                        if state.total < best_total:
                            best_total, best = state.total, state.snapshot()
        temperature *= params.cooling_factor

    drawing = state.to_drawing(g, best)
    recount = count_crossings(drawing).total
    if recount != best_total:
        raise SearchError(f"incremental total {best_total} disagrees with recount {recount}")
    return drawing


def _propose(state: _LayoutState, rng: random.Random, box: Box, jitter: int, max_bends: int):
    """(affected edges, new polylines, added points, removed points, apply) or None."""
    r = rng.random() if max_bends > 0 else 0.0
    if r < RELOCATE_SHARE:
        v = rng.randrange(len(state.vertices))
        for _ in range(FREE_CELL_TRIES):
            cell = (rng.randint(box[0], box[2]), rng.randint(box[1], box[3]))
            if cell not in state.occupied:
                break
        else:
            return None
        old = state.pos[v]
        affected = state.incident[v]

        def poly(i: int) -> Poly:
            u, w = state.edges[i]
            return [cell if u == v else state.pos[u]] + state.bends[i] + [cell if w == v else state.pos[w]]

        def apply() -> None:
            state.pos[v] = cell

        return list(affected), {i: poly(i) for i in affected}, [cell], [old], apply

    if r < RELOCATE_SHARE + ADD_BEND_SHARE:
        e = rng.randrange(len(state.edges))
        if len(state.bends[e]) >= max_bends:
            return None
        line = state.polyline(e)
        s = rng.randrange(len(line) - 1)
        (x0, y0), (x1, y1) = line[s], line[s + 1]
        bend = _clip(((x0 + x1) // 2 + rng.randint(-jitter, jitter), (y0 + y1) // 2 + rng.randint(-jitter, jitter)), box)
        bends = state.bends[e][:s] + [bend] + state.bends[e][s:]

        def apply() -> None:
            state.bends[e] = bends

        u, w = state.edges[e]
        return [e], {e: [state.pos[u]] + bends + [state.pos[w]]}, [bend], [], apply

    bent = [i for i, b in enumerate(state.bends) if b]
    if not bent:
        return None
    e = rng.choice(bent)
    k = rng.randrange(len(state.bends[e]))
    old = state.bends[e][k]
    u, w = state.edges[e]
    if r < RELOCATE_SHARE + ADD_BEND_SHARE + MOVE_BEND_SHARE:
        bend = _clip((old[0] + rng.randint(-jitter, jitter), old[1] + rng.randint(-jitter, jitter)), box)
        if bend == old:
            return None
        bends = state.bends[e][:k] + [bend] + state.bends[e][k + 1:]
        added = [bend]
    else:
        bends = state.bends[e][:k] + state.bends[e][k + 1:]
        added = []

    def apply() -> None:
        state.bends[e] = bends

    return [e], {e: [state.pos[u]] + bends + [state.pos[w]]}, added, [old], apply


# ============================================================
#   RESTARTS
# ============================================================

@dataclass
class SearchOutcome:
    drawing: Drawing
    total: int
    target_met: bool
    restarts_run: int
    history: List[int] = field(default_factory=list)


def _restart(g: Graph, params: SearchParams, index: int, init: Optional[Drawing]) -> Tuple[int, int, Drawing]:
    seed = derive_seed(params.seed, index)
    start = init if init is not None else random_layout(g, seed, params.grid_extent)
    drawing = anneal(g, start, params.model_copy(update={"seed": seed}))
    total = count_crossings(drawing).total
    return total, index, drawing


async def _run_restarts(
    g: Graph,
    params: SearchParams,
    init: Optional[Drawing],
    on_restart: Optional[Callable[[SearchProgress], None]],
) -> SearchOutcome:
    best: Optional[Tuple[int, int, Drawing]] = None
    history: List[int] = []
    done = 0
    progress = SearchProgress(restarts_total=params.restarts, target=params.target)
    semaphore = asyncio.Semaphore(params.workers)

    async def one(index: int) -> Tuple[int, int, Drawing]:
        async with semaphore:
            return await asyncio.to_thread(_restart, g, params, index, init)

    for start in range(0, params.restarts, params.workers):
        batch = range(start, min(start + params.workers, params.restarts))
        results = await asyncio.gather(*(one(i) for i in batch))
        stop = False
        # results past the first stopping restart are dropped, as a single worker never runs them
        for total, index, drawing in sorted(results, key=lambda r: r[1]):
            done += 1
            if best is None or (total, index) < best[:2]:
                best = (total, index, drawing)
            history.append(best[0])
            logger.info("restart %d/%d: total %d (best %d)", index + 1, params.restarts, total, best[0])
            stop = best[0] == 0 or (params.target is not None and best[0] <= params.target)
            if stop:
                break
        progress.restarts_done = done
        progress.best_total = best[0]
        if on_restart is not None:
            on_restart(progress)
        if stop:
            break

    total, _, drawing = best
    return SearchOutcome(
        drawing=drawing,
        total=total,
        target_met=params.target is None or total <= params.target,
        restarts_run=done,
        history=history,
    )


def search_best(
    g: Graph,
    params: SearchParams,
    init: Optional[Drawing] = None,
    on_restart: Optional[Callable[[SearchProgress], None]] = None,
) -> SearchOutcome:
    """Independent annealing restarts; the best is chosen by (total, restart index)."""
    outcome = asyncio.run(_run_restarts(g, params, init, on_restart))
    logger.info(
        "search finished after %d restarts: best %d%s",
        outcome.restarts_run,
        outcome.total,
        "" if params.target is None else f" (target {params.target} {'met' if outcome.target_met else 'missed'})",
    )
    return outcome
