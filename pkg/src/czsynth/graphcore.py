"""Simple undirected graphs plus the transformation vocabulary used by the
synthesizers: local complementation, the three unit-cost edge complementations,
pivot, vertex deletion, operation traces, and LC-orbit enumeration.

Adjacency is a tuple of n bit masks (bit w of row v set iff {v,w} is an edge),
kept symmetric with zero diagonal.  Graphs are immutable values: every
operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .f2linalg import BitMatrix

GRAPH6_MAX = 62


class GraphError(ValueError):
    pass


class TraceError(ValueError):
    """Replay failure; carries the offending step index."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


class ParseError(ValueError):
    pass


class Graph:
    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, rows: Optional[Sequence[int]] = None,
                 labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        if rows is None:
            self.rows = (0,) * n
        else:
            if len(rows) != n:
                raise GraphError("adjacency size mismatch")
            mask = (1 << n) - 1
            self.rows = tuple(r & mask for r in rows)
        for v in range(n):
            if (self.rows[v] >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v in range(n):
            row = self.rows[v]
            while row:
                low = row & -row
                w = low.bit_length() - 1
                if not (self.rows[w] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency at ({v},{w})")
                row ^= low
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def _raw(cls, n: int, rows: Sequence[int],
             labels: Optional[Tuple[str, ...]] = None) -> "Graph":
        """Skip invariant validation; callers guarantee masked symmetric rows
        with zero diagonal.  Used by the operation kernels, where the scan
        would dominate the running time."""
        g = object.__new__(cls)
        g.n = n
        g.rows = tuple(rows)
        g.labels = labels
        return g

    def validate(self) -> None:
        Graph(self.n, self.rows, self.labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._raw(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool((self.rows[u] >> v) & 1)

    def neighbors_mask(self, v: int) -> int:
        self._check(v)
        return self.rows[v]

    def neighbors(self, v: int) -> List[int]:
        return _bits(self.neighbors_mask(v))

    def degree(self, v: int) -> int:
        return self.neighbors_mask(v).bit_count()

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.rows[v] >> (v + 1)
            while row:
                low = row & -row
                out.append((v, v + 1 + low.bit_length() - 1))
                row ^= low
        return out

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def adjacency(self) -> BitMatrix:
        return BitMatrix(self.n, self.n, list(self.rows))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            row = frontier
            while row:
                low = row & -row
                nxt |= self.rows[low.bit_length() - 1]
                row ^= low
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def delete_vertex(self, v: int) -> "Graph":
        """Remove v; vertices above v shift down by one."""
        self._check(v)
        low_mask = (1 << v) - 1
        rows = []
        for u in range(self.n):
            if u == v:
                continue
            r = self.rows[u]
            rows.append((r & low_mask) | ((r >> (v + 1)) << v))
        labels = None
        if self.labels is not None:
            labels = self.labels[:v] + self.labels[v + 1:]
        return Graph._raw(self.n - 1, rows, labels)

    def induced(self, keep: Sequence[int]) -> "Graph":
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for i, v in enumerate(keep):
            row = self.rows[v]
            for w, j in pos.items():
                if (row >> w) & 1:
                    rows[i] |= 1 << j
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in keep]
        return Graph(len(keep), rows, labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph where old vertex v becomes perm[v]."""
        rows = [0] * self.n
        for v in range(self.n):
            row = self.rows[v]
            nv = 0
            while row:
                low = row & -row
                nv |= 1 << perm[low.bit_length() - 1]
                row ^= low
            rows[perm[v]] = nv
        return Graph(self.n, rows)

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range (n={self.n})")

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.n, self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Graph operations


@dataclass(frozen=True)
class GraphOp:
    """One trace step: LC(v), EC1(v,w), EC2(v,w), EC3(v,w) or DEL(v).

    EC1/EC2/EC3 are the unit-cost operations; LC and DEL are free.
    """

    kind: str
    v: int
    w: Optional[int] = None

    KINDS = ("LC", "EC1", "EC2", "EC3", "DEL")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise GraphError(f"unknown op kind {self.kind!r}")
        needs_w = self.kind in ("EC1", "EC2", "EC3")
        if needs_w and (self.w is None or self.w == self.v):
            raise GraphError(f"{self.kind} needs two distinct vertices")
        if not needs_w and self.w is not None:
            raise GraphError(f"{self.kind} takes a single vertex")

    @property
    def cost(self) -> int:
        return 1 if self.kind in ("EC1", "EC2", "EC3") else 0

    def __str__(self) -> str:
        if self.w is None:
            return f"{self.kind} {self.v}"
        return f"{self.kind} {self.v} {self.w}"


def LC(v: int) -> GraphOp:
    return GraphOp("LC", v)


def EC1(v: int, w: int) -> GraphOp:
    return GraphOp("EC1", v, w)


def EC2(v: int, w: int) -> GraphOp:
    return GraphOp("EC2", v, w)


def EC3(v: int, w: int) -> GraphOp:
    return GraphOp("EC3", v, w)


def DEL(v: int) -> GraphOp:
    return GraphOp("DEL", v)


def local_complement(g: Graph, v: int) -> Graph:
    """Complement all edges inside the neighborhood of v."""
    nv = g.neighbors_mask(v)
    rows = list(g.rows)
    for u in _bits(nv):
        rows[u] ^= nv & ~(1 << u)
    return Graph._raw(g.n, rows, g.labels)


def toggle_edge(g: Graph, v: int, w: int) -> Graph:
    g._check(v)
    g._check(w)
    if v == w:
        raise GraphError("cannot toggle a self-loop")
    rows = list(g.rows)
    rows[v] ^= 1 << w
    rows[w] ^= 1 << v
    return Graph._raw(g.n, rows, g.labels)


def complement_vertex_neighborhood(g: Graph, v: int, w: int) -> Graph:
    """EC2: toggle {v,u} for every u in N(w) \\ {v}; N(w) read once up front."""
    g._check(v)
    g._check(w)
    if v == w:
        raise GraphError("EC2 needs distinct vertices")
    targets = g.neighbors_mask(w) & ~(1 << v)
    rows = list(g.rows)
    rows[v] ^= targets
    for u in _bits(targets):
        rows[u] ^= 1 << v
    return Graph._raw(g.n, rows, g.labels)


def complement_neighborhoods(g: Graph, v: int, w: int) -> Graph:
    """EC3 on a non-adjacent pair: toggle {x,y} for x in N(v), y in N(w),
    excluding pairs lying entirely inside N(v) & N(w)."""
    g._check(v)
    g._check(w)
    if v == w:
        raise GraphError("EC3 needs distinct vertices")
    if g.has_edge(v, w):
        raise GraphError(f"EC3 requires a non-adjacent pair, {{{v},{w}}} is an edge")
    nv = g.neighbors_mask(v)
    nw = g.neighbors_mask(w)
    both = nv & nw
    # unordered pairs {x,y} with x in N(v), y in N(w), x != y, except pairs
    # whose endpoints both lie in N(v) & N(w); each toggled exactly once
    pair_toggle: Set[Tuple[int, int]] = set()
    for x in _bits(nv):
        for y in _bits(nw):
            if x == y:
                continue
            if (both >> x) & 1 and (both >> y) & 1:
                continue
            pair_toggle.add((min(x, y), max(x, y)))
    rows = list(g.rows)
    for x, y in pair_toggle:
        rows[x] ^= 1 << y
        rows[y] ^= 1 << x
    return Graph._raw(g.n, rows, g.labels)


def pivot(g: Graph, v: int, w: int) -> Graph:
    """tau_v . tau_w . tau_v on an edge {v,w} (no label swap)."""
    if not g.has_edge(v, w):
        raise GraphError(f"pivot requires an edge, {{{v},{w}}} is not one")
    return local_complement(local_complement(local_complement(g, v), w), v)


def apply_op(g: Graph, op: GraphOp) -> Graph:
    if op.kind == "LC":
        return local_complement(g, op.v)
    if op.kind == "EC1":
        return toggle_edge(g, op.v, op.w)
    if op.kind == "EC2":
        return complement_vertex_neighborhood(g, op.v, op.w)
    if op.kind == "EC3":
        return complement_neighborhoods(g, op.v, op.w)
    if op.kind == "DEL":
        return g.delete_vertex(op.v)
    raise GraphError(f"unknown op {op.kind}")


# ---------------------------------------------------------------------------
# Operation traces


@dataclass(frozen=True)
class OpTrace:
    """Ordered operation list building an n-vertex graph from the empty graph
    on n + s vertices; the s ancillas must all be deleted along the way.

    Ops are recorded with the indices of the initial graph; the replayer keeps
    a live original->current index map across deletions.
    """

    n: int
    s: int
    ops: Tuple[GraphOp, ...]

    def __post_init__(self):
        if self.n < 0 or self.s < 0:
            raise GraphError("trace sizes must be non-negative")

    @property
    def cost(self) -> int:
        return sum(op.cost for op in self.ops)

    @property
    def initial_vertices(self) -> int:
        return self.n + self.s


def replay(trace: OpTrace) -> Graph:
    """Apply the trace from the empty graph; raises TraceError on the first
    precondition violation, reporting the step index."""
    g = Graph.empty(trace.initial_vertices)
    index: Dict[int, int] = {v: v for v in range(trace.initial_vertices)}
    for step, op in enumerate(trace.ops):
        try:
            cur_v = index[op.v]
        except KeyError:
            raise TraceError(step, f"vertex {op.v} already deleted") from None
        try:
            if op.kind == "DEL":
                g = g.delete_vertex(cur_v)
                del index[op.v]
                for k in index:
                    if index[k] > cur_v:
                        index[k] -= 1
            elif op.w is None:
                g = apply_op(g, GraphOp(op.kind, cur_v))
            else:
                try:
                    cur_w = index[op.w]
                except KeyError:
                    raise TraceError(step, f"vertex {op.w} already deleted") from None
                g = apply_op(g, GraphOp(op.kind, cur_v, cur_w))
        except GraphError as exc:
            raise TraceError(step, str(exc)) from None
    if g.n != trace.n:
        raise TraceError(len(trace.ops),
                         f"trace ends with {g.n} vertices, header says {trace.n}")
    return g


def lc_orbit(g: Graph, max_n: int = 12) -> Set[Graph]:
    """All labeled graphs reachable from g by local complementations."""
    if g.n > max_n:
        raise GraphError(f"orbit enumeration guarded at n<={max_n}, got n={g.n}")
    seen = {g}
    stack = [g]
    while stack:
        cur = stack.pop()
        for v in range(cur.n):
            nxt = local_complement(cur, v)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


# ---------------------------------------------------------------------------
# Text formats


def serialize_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"line 1: expected vertex count, got {lines[0]!r}") from None
    if n < 0:
        raise ParseError(f"line 1: negative vertex count {n}")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {i}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {i}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"line {i}: invalid edge ({u},{v}) for n={n}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def serialize_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX:
        raise GraphError(f"graph6 writer limited to {GRAPH6_MAX} vertices")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + g.n)]
    for i in range(0, len(bits), 6):
        word = 0
        for b in bits[i:i + 6]:
            word = (word << 1) | b
        chars.append(chr(63 + word))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise ParseError("empty graph6 input")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    codes = [ord(c) - 63 for c in s]
    if any(c < 0 or c > 63 for c in codes):
        raise ParseError("graph6: character out of range (offset 0)")
    n = codes[0]
    if n > GRAPH6_MAX:
        raise ParseError("graph6: multi-byte sizes not supported (n > 62)")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(codes) - 1 != need:
        raise ParseError(f"graph6: expected {need} payload chars for n={n}, "
                         f"got {len(codes) - 1}")
    bits = []
    for c in codes[1:]:
        for k in range(5, -1, -1):
            bits.append((c >> k) & 1)
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph, fmt: str = "edge-list") -> str:
    if fmt == "edge-list":
        return serialize_edge_list(g)
    if fmt == "graph6":
        return serialize_graph6(g) + "\n"
    raise ParseError(f"unknown graph format {fmt!r}")


def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "auto":
        stripped = text.strip()
        first = stripped.splitlines()[0].strip() if stripped else ""
        if first.isdigit():
            return parse_edge_list(text)
        return parse_graph6(text)
    raise ParseError(f"unknown graph format {fmt!r}")


def serialize_trace(trace: OpTrace) -> str:
    lines = [f"TRACE n={trace.n} s={trace.s}"]
    lines.extend(str(op) for op in trace.ops)
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> OpTrace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty trace input")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "TRACE":
        raise ParseError(f"line 1: expected 'TRACE n=<count> s=<ancillas>', got {lines[0]!r}")
    try:
        n = int(header[1].removeprefix("n="))
        s = int(header[2].removeprefix("s="))
    except ValueError:
        raise ParseError(f"line 1: malformed trace header {lines[0]!r}") from None
    if n < 0 or s < 0:
        raise ParseError(f"line 1: negative sizes in trace header {lines[0]!r}")
    ops = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        kind = parts[0]
        try:
            if kind in ("LC", "DEL"):
                if len(parts) != 2:
                    raise ParseError(f"line {i}: {kind} takes one vertex")
                ops.append(GraphOp(kind, int(parts[1])))
            elif kind in ("EC1", "EC2", "EC3"):
                if len(parts) != 3:
                    raise ParseError(f"line {i}: {kind} takes two vertices")
                ops.append(GraphOp(kind, int(parts[1]), int(parts[2])))
            else:
                raise ParseError(f"line {i}: unknown op {kind!r}")
        except (ValueError, GraphError) as exc:
            raise ParseError(f"line {i}: {exc}") from None
    return OpTrace(n, s, tuple(ops))
