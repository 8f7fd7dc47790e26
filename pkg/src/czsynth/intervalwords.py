"""Double occurrence words and the graph classes they define (interval,
interval containment, circle), plus the word-driven synthesizers: the
ancilla-sweep interval algorithm, Eulerian rerouting on tour graphs for
circle graphs, and the copy-merge construction for containment graphs.
"""

from __future__ import annotations

import time
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .graphcore import DEL, EC1, EC2, LC, Graph, GraphOp, OpTrace, ParseError, replay
from .rankwidth import _witnessed
from .synthesis import Bounds, SynthResult, SynthesisError, bound_upper_generic, grow_vertex


class WordError(ValueError):
    pass


class DOWord:
    """A word in which every letter appears exactly twice.

    Letters are vertex names (strings).  Vertex indices used by the derived
    graphs follow sorted name order, which is stable under letter deletion.
    """

    __slots__ = ("letters", "names", "first", "second")

    def __init__(self, letters: Sequence[str]):
        letters = [str(x) for x in letters]
        first: Dict[str, int] = {}
        second: Dict[str, int] = {}
        for pos, name in enumerate(letters):
            if name not in first:
                first[name] = pos
            elif name not in second:
                second[name] = pos
            else:
                raise WordError(f"letter {name!r} appears more than twice")
        missing = [name for name in first if name not in second]
        if missing:
            raise WordError(f"letters appearing only once: {sorted(missing)}")
        self.letters = tuple(letters)
        self.names = tuple(sorted(first))
        self.first = first
        self.second = second

    @property
    def n(self) -> int:
        return len(self.names)

    def positions(self, name: str) -> Tuple[int, int]:
        """0-based (first, second) occurrence positions of the name."""
        if name not in self.first:
            raise WordError(f"unknown letter {name!r}")
        return self.first[name], self.second[name]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def without(self, name: str) -> "DOWord":
        if name not in self.first:
            raise WordError(f"unknown letter {name!r}")
        return DOWord([x for x in self.letters if x != name])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DOWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"DOWord({' '.join(self.letters)})"


def parse_word(text: str) -> DOWord:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty word input")
    if lines[0].startswith("WORD"):
        header = lines[0].split()
        if len(header) != 2 or not header[1].startswith("n="):
            raise ParseError(f"line 1: malformed word header {lines[0]!r}")
        declared = int(header[1][2:])
        lines = lines[1:]
    else:
        declared = None
    letters = " ".join(lines).split()
    try:
        word = DOWord(letters)
    except WordError as exc:
        raise ParseError(str(exc)) from None
    if declared is not None and word.n != declared:
        raise ParseError(f"header says n={declared}, word has {word.n} names")
    return word


def serialize_word(word: DOWord) -> str:
    return f"WORD n={word.n}\n{' '.join(word.letters)}\n"


def _pair_pattern(word: DOWord, a: str, b: str) -> str:
    """'cross' (abab), 'contain' (abba) or 'disjoint' for an unordered pair."""
    a1, a2 = word.positions(a)
    b1, b2 = word.positions(b)
    if a1 > b1:
        a1, a2, b1, b2 = b1, b2, a1, a2
    if b1 < a2 < b2:
        return "cross"
    if b2 < a2:
        return "contain"
    return "disjoint"


def _graph_from_patterns(word: DOWord, wanted: Set[str]) -> Graph:
    n = word.n
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if _pair_pattern(word, word.names[i], word.names[j]) in wanted:
                edges.append((i, j))
    return Graph.from_edges(n, edges, labels=word.names)


def interval_graph(word: DOWord) -> Graph:
    """Edges where the two intervals overlap (patterns abba or abab)."""
    return _graph_from_patterns(word, {"cross", "contain"})


def containment_graph(word: DOWord) -> Graph:
    """Edges where one interval contains the other (pattern abba)."""
    return _graph_from_patterns(word, {"contain"})


def circle_graph(word: DOWord) -> Graph:
    """Edges where the chords cross (pattern abab)."""
    return _graph_from_patterns(word, {"cross"})


def moore_degree_cap(n: int) -> int:
    """2*floor(log3(n+1)): girth control on 4-regular tour graphs bounds the
    degree reachable by rerouting."""
    if n < 1:
        raise WordError("need at least one name")
    e = 0
    p = 3
    while p <= n + 1:
        e += 1
        p *= 3
    return 2 * e


# ---------------------------------------------------------------------------
# Interval graphs: the ancilla sweep


def synth_interval(word: DOWord) -> SynthResult:
    """Generate the interval graph of the word with exactly 2n-2 unit-cost
    operations, using one ancilla that tracks the currently-open intervals.

    At a first occurrence the new vertex is joined, via a locally-conjugated
    edge toggle on the ancilla, to the ancilla and everything currently open;
    at a second occurrence a plain toggle detaches the closing vertex.  The
    final two word positions are redundant and skipped.
    """
    start = time.perf_counter()
    n = word.n
    z = n  # ancilla index
    ops: List[GraphOp] = []
    for t in range(2 * n - 2):
        name = word.letters[t]
        u = word.index(name)
        if word.first[name] == t:
            ops.extend((LC(z), EC1(u, z), LC(z)))
        else:
            ops.append(EC1(u, z))
    ops.append(DEL(z))
    trace = OpTrace(n, 1, tuple(ops))
    target = interval_graph(word)
    got = replay(trace)
    if got != target:
        raise SynthesisError("interval trace does not replay to the interval graph")
    cost = trace.cost
    expected = max(0, 2 * n - 2)
    if cost != expected:
        raise SynthesisError(f"interval cost {cost} != 2n-2 = {expected}")
    bounds = Bounds(lower=None, upper_generic=bound_upper_generic(n),
                    upper_rankwidth=None)
    return SynthResult(trace=trace, cost=cost, per_vertex_costs=(),
                       bounds=bounds, strategy="interval-word",
                       wall_time=time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Tour graphs and Eulerian rerouting


class TourGraph:
    """Connected 4-regular multigraph (loops and parallel edges allowed) whose
    Eulerian cycles spell double occurrence words.  Edges carry stable ids."""

    __slots__ = ("vertices", "edge_list", "incidence")

    def __init__(self, vertices: Sequence[str], edge_list: Sequence[Tuple[str, str]]):
        self.vertices = tuple(sorted(set(vertices)))
        self.edge_list = tuple((a, b) if a <= b else (b, a) for a, b in edge_list)
        inc: Dict[str, List[int]] = {v: [] for v in self.vertices}
        for eid, (a, b) in enumerate(self.edge_list):
            inc[a].append(eid)
            if b != a:
                inc[b].append(eid)
        self.incidence = inc
        for v in self.vertices:
            if self.degree(v) != 4:
                raise WordError(f"tour graph vertex {v!r} has degree {self.degree(v)}, not 4")

    def degree(self, v: str) -> int:
        d = 0
        for eid in self.incidence[v]:
            a, b = self.edge_list[eid]
            d += 2 if a == b else 1
        return d

    def other_end(self, eid: int, v: str) -> str:
        a, b = self.edge_list[eid]
        return b if v == a else a

    def edge_multiset(self) -> Tuple[Tuple[str, str], ...]:
        return tuple(sorted(self.edge_list))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TourGraph)
                and self.vertices == other.vertices
                and self.edge_multiset() == other.edge_multiset())


def tour_graph(word: DOWord) -> TourGraph:
    """Multigraph with an edge between cyclically consecutive letters; the
    word itself is one of its Eulerian cycles."""
    letters = word.letters
    m = len(letters)
    edges = [(letters[i], letters[(i + 1) % m]) for i in range(m)]
    return TourGraph(word.names, edges)


def _euler_cycle_ids(t: TourGraph, start: str,
                     forbidden: Set[int]) -> Tuple[List[str], Set[int]]:
    """Hierholzer walk over the non-forbidden edges reachable from start,
    lowest edge id first.  Returns the visited-vertex sequence (one entry per
    edge, closing back at start) and the set of edge ids it consumed."""
    reachable = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for eid in t.incidence[v]:
            if eid in forbidden:
                continue
            w = t.other_end(eid, v)
            if w not in reachable:
                reachable.add(w)
                frontier.append(w)
    for v in reachable:
        deg = 0
        for eid in t.incidence[v]:
            if eid in forbidden:
                continue
            a, b = t.edge_list[eid]
            deg += 2 if a == b else 1
        if deg % 2:
            raise WordError(f"vertex {v!r} has odd available degree {deg}")
    unused: Dict[str, List[int]] = {
        v: sorted((eid for eid in t.incidence[v] if eid not in forbidden),
                  reverse=True)
        for v in reachable
    }
    used: Set[int] = set()
    path: List[str] = []
    stack: List[str] = [start]
    while stack:
        v = stack[-1]
        avail = None
        while unused[v]:
            eid = unused[v][-1]
            if eid in used:
                unused[v].pop()
                continue
            avail = eid
            break
        if avail is None:
            path.append(stack.pop())
        else:
            used.add(avail)
            stack.append(t.other_end(avail, v))
    path.reverse()
    if len(path) < 2:
        return [], used
    if path[0] != start or path[-1] != start:
        raise WordError("no closed Eulerian walk from start")
    return path[:-1], used


def euler_cycle(t: TourGraph, start: str, forbidden: Optional[Set[int]] = None) -> List[str]:
    """Eulerian cycle of the non-forbidden edges reachable from start, as the
    visited-vertex sequence (the cycle closes back at start)."""
    walk, _ = _euler_cycle_ids(t, start, set() if forbidden is None else set(forbidden))
    return walk


def _smallest_cycle(t: TourGraph) -> Tuple[List[int], str]:
    """A minimum-length cycle of the multigraph (loop = 1, parallel pair = 2)
    as an edge-id list, plus the lowest vertex name on it."""
    loops = [eid for eid, (a, b) in enumerate(t.edge_list) if a == b]
    if loops:
        eid = min(loops, key=lambda e: (t.edge_list[e][0], e))
        return [eid], t.edge_list[eid][0]
    by_pair: Dict[Tuple[str, str], List[int]] = {}
    for eid, pair in enumerate(t.edge_list):
        by_pair.setdefault(pair, []).append(eid)
    parallel = sorted(pair for pair, ids in by_pair.items() if len(ids) >= 2)
    if parallel:
        pair = parallel[0]
        ids = by_pair[pair][:2]
        return ids, min(pair)
    # simple graph now; find a shortest cycle through each edge:
    # remove the edge, BFS between its endpoints
    adj: Dict[str, List[Tuple[str, int]]] = {v: [] for v in t.vertices}
    for eid, (a, b) in enumerate(t.edge_list):
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    for v in t.vertices:
        adj[v].sort()
    best_len: Optional[int] = None
    best_cycle: Optional[List[int]] = None
    for eid, (a, b) in enumerate(t.edge_list):
        prev: Dict[str, Tuple[str, int]] = {a: (a, -1)}
        frontier = [a]
        found = False
        while frontier and not found:
            nxt = []
            for x in frontier:
                for y, fid in adj[x]:
                    if fid == eid or y in prev:
                        continue
                    prev[y] = (x, fid)
                    if y == b:
                        found = True
                        break
                    nxt.append(y)
                if found:
                    break
            frontier = nxt
        if not found:
            continue
        cycle = [eid]
        cur = b
        while cur != a:
            cur, fid = prev[cur]
            cycle.append(fid)
        if best_len is None or len(cycle) < best_len:
            best_len = len(cycle)
            best_cycle = cycle
    if best_cycle is None:
        raise WordError("tour graph has no cycle; it cannot be 4-regular")
    low = min(v for eid in best_cycle for v in t.edge_list[eid])
    return best_cycle, low


def reroute_word(word: DOWord) -> Tuple["DOWord", str]:
    """Choose a different Eulerian cycle of the word's tour graph so that some
    vertex v on a smallest cycle gets circle-graph degree at most |C| - 1,
    itself at most 2*floor(log3(n+1)) by the Moore bound.

    The tour graph is split into the component of v without the smallest
    cycle's edges and the remainder; concatenating Eulerian cycles of the two
    parts at v confines v's crossings to the smallest cycle's vertices.
    """
    t = tour_graph(word)
    cycle_edges, v = _smallest_cycle(t)
    first, used_first = _euler_cycle_ids(t, v, set(cycle_edges))
    second, _ = _euler_cycle_ids(t, v, used_first)
    letters = first + second
    new_word = DOWord(letters)
    if tour_graph(new_word).edge_multiset() != t.edge_multiset():
        raise SynthesisError("rerouting changed the tour graph")
    deg = circle_graph(new_word).degree(new_word.index(v))
    if deg > len(cycle_edges) - 1:
        raise SynthesisError("rerouted degree exceeds |C| - 1")
    if deg > moore_degree_cap(word.n):
        raise SynthesisError("rerouted degree exceeds the Moore-bound cap")
    return new_word, v


def synth_circle(word: DOWord) -> SynthResult:
    """Generate the circle graph of the word within the dependent-set
    framework: rerouting exposes a low-degree vertex v in an LC-equivalent
    circle graph, {v} + N(v) there is dependent for the current target by
    cut-rank LC-invariance, and the witness vertex is grown and removed."""
    start = time.perf_counter()
    target = circle_graph(word)
    n = word.n
    names = list(target.labels)
    work_word = word
    work = target
    layers: List[List[GraphOp]] = []
    per_vertex: List[Tuple[int, int]] = []
    cap = moore_degree_cap(n) if n >= 1 else 0
    while work.n > 2:
        rerouted, v_name = reroute_word(work_word)
        g_prime = circle_graph(rerouted)
        v_idx = rerouted.index(v_name)
        if g_prime.degree(v_idx) > cap:
            raise SynthesisError("rerouted degree violates the cap")
        s = sorted({v_idx} | set(g_prime.neighbors(v_idx)))
        # same index space: both graphs use sorted names of the same letters
        dep = _witnessed(work, s)
        u, ops, cost = grow_vertex(work, dep)
        if cost > cap:
            raise SynthesisError("grow cost exceeded the Moore-bound cap")
        cur_names = list(work_word.names)
        translated = [
            GraphOp(op.kind, names.index(cur_names[op.v]),
                    None if op.w is None else names.index(cur_names[op.w]))
            for op in ops
        ]
        layers.append(translated)
        per_vertex.append((names.index(cur_names[u]), cost))
        work_word = work_word.without(cur_names[u])
        work = circle_graph(work_word) if work_word.n else Graph.empty(0)
    base: List[GraphOp] = []
    if work.n == 2 and work.has_edge(0, 1):
        base.append(EC1(names.index(work_word.names[0]),
                        names.index(work_word.names[1])))
    ops_out = base
    for layer in reversed(layers):
        ops_out.extend(layer)
    trace = OpTrace(n, 0, tuple(ops_out))
    got = replay(trace)
    if got != target:
        raise SynthesisError("circle trace does not replay to the circle graph")
    cost = trace.cost
    if n >= 1 and cost > 2 * _log3_floor(n + 1) * max(n - 1, 0):
        raise SynthesisError("circle cost exceeds the logarithmic bound")
    bounds = Bounds(lower=None, upper_generic=bound_upper_generic(n),
                    upper_rankwidth=None)
    return SynthResult(trace=trace, cost=cost,
                       per_vertex_costs=tuple(reversed(per_vertex)),
                       bounds=bounds, strategy="circle-word",
                       wall_time=time.perf_counter() - start)


def _log3_floor(x: int) -> int:
    e = 0
    p = 3
    while p <= x:
        e += 1
        p *= 3
    return e


def synth_containment(word: DOWord) -> SynthResult:
    """Generate the containment graph as interval XOR circle: build both on
    disjoint index blocks, then for every vertex copy its circle-twin's
    neighborhood onto it (one unit-cost op each) and delete the twin."""
    start = time.perf_counter()
    n = word.n
    interval_res = synth_interval(word)
    circle_res = synth_circle(word)
    z = 2 * n  # the interval ancilla sits above both blocks
    ops: List[GraphOp] = []
    for op in interval_res.trace.ops:
        remap = lambda x: z if x == n else x
        ops.append(GraphOp(op.kind, remap(op.v),
                           None if op.w is None else remap(op.w)))
    for op in circle_res.trace.ops:
        ops.append(GraphOp(op.kind, op.v + n,
                           None if op.w is None else op.w + n))
    for i in range(n):
        ops.append(EC2(i, n + i))
        ops.append(DEL(n + i))
    trace = OpTrace(n, n + 1, tuple(ops))
    target = containment_graph(word)
    got = replay(trace)
    if got != target:
        raise SynthesisError("containment trace does not replay to the target")
    cost = trace.cost
    if cost != interval_res.cost + circle_res.cost + n:
        raise SynthesisError("containment cost bookkeeping is off")
    bounds = Bounds(lower=None, upper_generic=bound_upper_generic(n),
                    upper_rankwidth=None)
    return SynthResult(trace=trace, cost=cost, per_vertex_costs=(),
                       bounds=bounds, strategy="containment-word",
                       wall_time=time.perf_counter() - start)
