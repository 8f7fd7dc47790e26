"""Cut-rank, rank-decompositions, exact small-n rank-width via subset DP,
a greedy caterpillar heuristic, and the dependent-set discovery pipeline
feeding the synthesizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .f2linalg import BitMatrix, find_dependent_row, rank
from .graphcore import Graph, GraphError

EXACT_RANKWIDTH_MAX_N = 13


class GuardError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cut-rank


def bipartite_matrix(g: Graph, s: Sequence[int]) -> Tuple[BitMatrix, List[int], List[int]]:
    """A_{S, V\\S} with rows ordered by sorted(s) and columns by sorted(V\\S).

    Returns the matrix together with the row and column vertex orders.
    """
    s_sorted = sorted(set(s))
    for v in s_sorted:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range (n={g.n})")
    inside = 0
    for v in s_sorted:
        inside |= 1 << v
    cols = [v for v in range(g.n) if not (inside >> v) & 1]
    data = []
    for v in s_sorted:
        row = g.rows[v]
        word = 0
        for j, c in enumerate(cols):
            if (row >> c) & 1:
                word |= 1 << j
        data.append(word)
    return BitMatrix(len(s_sorted), len(cols), data), s_sorted, cols


def cutrank(g: Graph, s: Sequence[int]) -> int:
    """GF(2) rank of the bipartite adjacency matrix across the cut (S, V\\S)."""
    m, _, _ = bipartite_matrix(g, s)
    return rank(m)


def _cutrank_mask(rows: Sequence[int], n: int, mask: int) -> int:
    """cutrank for S given as a bit mask; rows are adjacency masks."""
    out_mask = ((1 << n) - 1) & ~mask
    basis = {}  # lowest set bit -> reduced row
    m = mask
    while m:
        low = m & -m
        m ^= low
        row = rows[low.bit_length() - 1] & out_mask
        while row:
            pivot = row & -row
            if pivot not in basis:
                basis[pivot] = row
                break
            row ^= basis[pivot]
    return len(basis)


# ---------------------------------------------------------------------------
# Rank decompositions


@dataclass
class RankDecomposition:
    """Unrooted tree with max degree <= 3 whose leaves carry the graph
    vertices via leaf_map (graph vertex -> tree node)."""

    adj: Dict[int, Set[int]]
    leaf_map: Dict[int, int]

    def nodes(self) -> List[int]:
        return sorted(self.adj)

    def tree_edges(self) -> List[Tuple[int, int]]:
        out = []
        for a in sorted(self.adj):
            for b in sorted(self.adj[a]):
                if a < b:
                    out.append((a, b))
        return out

    def leaves(self) -> Set[int]:
        return {node for node, nbrs in self.adj.items() if len(nbrs) <= 1}

    def validate(self, g: Graph) -> None:
        nodes = set(self.adj)
        for a, nbrs in self.adj.items():
            if len(nbrs) > 3:
                raise GraphError(f"tree node {a} has degree {len(nbrs)} > 3")
            for b in nbrs:
                if b not in nodes or a not in self.adj[b]:
                    raise GraphError("tree adjacency is inconsistent")
        # connected and acyclic
        if nodes:
            seen = set()
            stack = [next(iter(sorted(nodes)))]
            while stack:
                a = stack.pop()
                if a in seen:
                    continue
                seen.add(a)
                stack.extend(self.adj[a] - seen)
            if seen != nodes:
                raise GraphError("decomposition tree is disconnected")
            if sum(len(n) for n in self.adj.values()) // 2 != len(nodes) - 1:
                raise GraphError("decomposition tree has a cycle")
        leaves = self.leaves()
        mapped = set(self.leaf_map.values())
        if set(self.leaf_map) != set(range(g.n)) or mapped != leaves or len(mapped) != g.n:
            raise GraphError("leaf_map is not a bijection onto the tree leaves")

    def side_vertices(self, edge: Tuple[int, int]) -> Set[int]:
        """Graph vertices whose leaves fall on the edge[0] side of the edge."""
        a, b = edge
        seen = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y == b and x == a:
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        node_to_vertex = {node: v for v, node in self.leaf_map.items()}
        return {node_to_vertex[x] for x in seen if x in node_to_vertex}

    def serialize(self) -> str:
        """Parenthesized Newick-style rendering with vertex indices at leaves."""
        node_to_vertex = {node: v for v, node in self.leaf_map.items()}
        if not self.adj:
            return ";"
        if len(self.adj) == 1:
            only = next(iter(self.adj))
            return f"{node_to_vertex.get(only, only)};"
        root = self.nodes()[0]

        def render(node: int, parent: Optional[int]) -> str:
            kids = [x for x in sorted(self.adj[node]) if x != parent]
            if not kids:
                return str(node_to_vertex[node])
            return "(" + ",".join(render(k, node) for k in kids) + ")"

        return render(root, None) + ";"


def width(g: Graph, d: RankDecomposition) -> int:
    """Maximum cut-rank over the leaf bipartitions induced by the tree edges."""
    d.validate(g)
    best = 0
    for edge in d.tree_edges():
        side = d.side_vertices(edge)
        best = max(best, cutrank(g, sorted(side)))
    return best


def _caterpillar(order: Sequence[int]) -> RankDecomposition:
    """Caterpillar tree whose spine hangs the leaves in the given order."""
    n = len(order)
    if n < 2:
        raise GuardError("decompositions need at least two vertices")
    adj: Dict[int, Set[int]] = {}
    leaf_map: Dict[int, int] = {}

    def add_edge(a: int, b: int) -> None:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    leaf_nodes = {v: i for i, v in enumerate(order)}
    for v, node in leaf_nodes.items():
        leaf_map[v] = node
        adj.setdefault(node, set())
    if n == 2:
        add_edge(leaf_nodes[order[0]], leaf_nodes[order[1]])
        return RankDecomposition(adj, leaf_map)
    spine = [n + i for i in range(n - 2)]
    add_edge(leaf_nodes[order[0]], spine[0])
    add_edge(leaf_nodes[order[1]], spine[0])
    for i in range(1, n - 2):
        add_edge(spine[i - 1], spine[i])
        add_edge(leaf_nodes[order[i + 1]], spine[i])
    add_edge(leaf_nodes[order[-1]], spine[-1])
    return RankDecomposition(adj, leaf_map)


def greedy_decomposition(g: Graph) -> RankDecomposition:
    """Caterpillar decomposition grown by appending the vertex that keeps the
    prefix cut-rank smallest; its width upper-bounds the rank-width."""
    if g.n < 2:
        raise GuardError("decompositions need at least two vertices")
    order = [0]
    prefix_mask = 1
    remaining = set(range(1, g.n))
    while remaining:
        best_v = None
        best_rank = None
        for v in sorted(remaining):
            r = _cutrank_mask(g.rows, g.n, prefix_mask | (1 << v))
            if best_rank is None or r < best_rank:
                best_rank, best_v = r, v
        order.append(best_v)
        prefix_mask |= 1 << best_v
        remaining.discard(best_v)
    return _caterpillar(order)


def exact_rankwidth(g: Graph, max_n: int = EXACT_RANKWIDTH_MAX_N) -> Tuple[int, Optional[RankDecomposition]]:
    """Optimal rank-width with a witness decomposition, by subset DP.

    W(S) for |S|>=2 is max(cutrank(S), min over proper splits A|B of S of
    max(W(A), W(B))); the answer is the best top split of V.  O(3^n) over
    subset pairs, guarded at n <= max_n.
    """
    n = g.n
    if n <= 1:
        return 0, None
    if n > max_n:
        raise GuardError(f"exact rank-width guarded at n<={max_n}, got n={n}")
    full = (1 << n) - 1
    ranks = [0] * (full + 1)
    for mask in range(1, full + 1):
        comp = full & ~mask
        if comp < mask:
            ranks[mask] = ranks[comp]
        else:
            ranks[mask] = _cutrank_mask(g.rows, n, mask)
    w = [0] * (full + 1)
    choice = [0] * (full + 1)
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            w[mask] = ranks[mask]
            continue
        low = mask & -mask
        rest = mask ^ low
        best = None
        best_split = None
        sub = rest
        while True:
            a = sub | low
            if a != mask:
                b = mask ^ a
                cand = w[a] if w[a] >= w[b] else w[b]
                if best is None or cand < best:
                    best, best_split = cand, a
                    if best <= ranks[mask]:
                        break
            if sub == 0:
                break
            sub = (sub - 1) & rest
        w[mask] = best if best > ranks[mask] else ranks[mask]
        choice[mask] = best_split
    best = None
    best_top = None
    rest = full ^ 1
    sub = rest
    while True:
        a = sub | 1
        if a != full:
            b = full ^ a
            cand = w[a] if w[a] >= w[b] else w[b]
            if best is None or cand < best:
                best, best_top = cand, a
        if sub == 0:
            break
        sub = (sub - 1) & rest
    # rebuild the witness tree from the recorded splits
    adj: Dict[int, Set[int]] = {}
    leaf_map: Dict[int, int] = {}
    counter = [0]

    def new_node() -> int:
        counter[0] += 1
        return counter[0] - 1

    def add_edge(a: int, b: int) -> None:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    def build(mask: int) -> int:
        if mask & (mask - 1) == 0:
            node = new_node()
            adj.setdefault(node, set())
            leaf_map[mask.bit_length() - 1] = node
            return node
        a = choice[mask]
        node = new_node()
        adj.setdefault(node, set())
        add_edge(node, build(a))
        add_edge(node, build(mask ^ a))
        return node

    left = build(best_top)
    right = build(full ^ best_top)
    add_edge(left, right)
    deco = RankDecomposition(adj, leaf_map)
    deco.validate(g)
    return best, deco


@lru_cache(maxsize=4096)
def _rankwidth_value_cached(key: Tuple[int, Tuple[int, ...]], max_n: int) -> int:
    n, rows = key
    value, _ = exact_rankwidth(Graph(n, rows), max_n)
    return value


def exact_rankwidth_value(g: Graph, max_n: int = EXACT_RANKWIDTH_MAX_N) -> int:
    """exact_rankwidth without the witness; memoized since synthesis and
    certification both ask for the same graphs."""
    return _rankwidth_value_cached(g.key(), max_n)


# ---------------------------------------------------------------------------
# Dependent sets


@dataclass(frozen=True)
class DependentSet:
    """Vertex set S with cutrank(S) < |S| plus the row-dependence witness:
    row `vertex` of A_{S, V\\S} equals the GF(2) sum of the rows in `support`."""

    vertices: FrozenSet[int]
    cutrank_value: int
    vertex: int
    support: FrozenSet[int]

    def validate(self, g: Graph) -> None:
        s_sorted = sorted(self.vertices)
        m, row_order, _ = bipartite_matrix(g, s_sorted)
        if rank(m) != self.cutrank_value:
            raise GraphError("dependent set: recorded cut-rank is wrong")
        if self.cutrank_value >= len(self.vertices):
            raise GraphError("dependent set: cutrank(S) >= |S|")
        if self.vertex in self.support or self.vertex not in self.vertices:
            raise GraphError("dependent set: malformed witness")
        idx = {v: i for i, v in enumerate(row_order)}
        acc = 0
        for t in self.support:
            acc ^= m.data[idx[t]]
        if acc != m.data[idx[self.vertex]]:
            raise GraphError("dependent set: witness rows do not sum to row v")


def _witnessed(g: Graph, s: Sequence[int]) -> DependentSet:
    m, row_order, _ = bipartite_matrix(g, s)
    found = find_dependent_row(m)
    if found is None:
        raise GraphError(f"set {sorted(s)} is not dependent")
    v_idx, t_idx = found
    dep = DependentSet(
        vertices=frozenset(row_order),
        cutrank_value=rank(m),
        vertex=row_order[v_idx],
        support=frozenset(row_order[i] for i in t_idx),
    )
    dep.validate(g)
    return dep


def find_balanced_edge(d: RankDecomposition, r: int) -> Tuple[Tuple[int, int], Set[int]]:
    """An edge of the decomposition tree one of whose sides holds between
    r+1 and 2r leaves, found by descending into the leaf-heaviest subtree.

    Returns the edge and the graph-vertex set of a side of that size.
    """
    if r < 1:
        raise GuardError("balanced edge search needs r >= 1")
    leaves = d.leaves()
    n = len(leaves)
    if n < 3 * r:
        raise GuardError(f"need at least 3r={3 * r} leaves, tree has {n}")
    node_to_vertex = {node: v for v, node in d.leaf_map.items()}

    def leaf_count_side(a: int, b: int) -> Tuple[int, Set[int]]:
        """Leaves in the component of b after removing edge {a,b}."""
        seen = {b}
        stack = [b]
        while stack:
            x = stack.pop()
            for y in d.adj[x]:
                if x == b and y == a:
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        vs = {node_to_vertex[x] for x in seen if x in node_to_vertex}
        return len(vs), vs

    internal = [x for x in d.nodes() if len(d.adj[x]) > 1]
    a = internal[0]
    prev = None
    while True:
        best_b = None
        best_count = -1
        best_side: Set[int] = set()
        for b in sorted(d.adj[a]):
            if b == prev:
                continue
            cnt, side = leaf_count_side(a, b)
            if cnt > best_count:
                best_count, best_b, best_side = cnt, b, side
        if best_count <= 2 * r:
            edge = (a, best_b)
            if r + 1 <= best_count <= 2 * r:
                return edge, best_side
            other = {node_to_vertex[x] for x in node_to_vertex} - best_side
            cnt = len(other)
            if r + 1 <= cnt <= 2 * r:
                return edge, other
            raise GraphError("balanced-edge descent failed; malformed tree?")
        prev, a = a, best_b


def shrink_dependent(g: Graph, s: Sequence[int]) -> DependentSet:
    """Shrink a dependent set by dropping vertices while |S| - cutrank(S) > 2,
    each time removing the vertex that minimizes the new cut-rank (lowest
    index on ties).  The result stays dependent and has size at most
    ceil((cutrank(S) + |S| + 1) / 2)."""
    current = sorted(set(s))
    k = cutrank(g, current)
    if k >= len(current):
        raise GraphError(f"set {current} is not dependent")
    while len(current) - k > 2:
        best_v = None
        best_rank = None
        for v in current:
            trial = [u for u in current if u != v]
            r = cutrank(g, trial)
            if best_rank is None or r < best_rank:
                best_rank, best_v = r, v
        current = [u for u in current if u != best_v]
        k = best_rank
    return _witnessed(g, current)


def _grow_cost(g: Graph, dep: DependentSet) -> int:
    """Unit-cost operations the grow step would spend on this dependent set."""
    v = dep.vertex
    t = dep.support
    a_v = g.rows[v]
    a_t = 0
    for wv in t:
        a_t ^= g.rows[wv]
    cost = len(t)
    for u in dep.vertices:
        if u == v or u in t:
            continue
        if ((a_v >> u) ^ (a_t >> u)) & 1:
            cost += 1
    return cost


def _min_degree_candidate(g: Graph) -> DependentSet:
    """S = {v} + N(v) for a minimum-degree v; always dependent since row v of
    A_{S,V\\S} is zero."""
    v = min(range(g.n), key=lambda u: (g.degree(u), u))
    s = [v] + g.neighbors(v)
    return _witnessed(g, s)


def _rankwidth_guided(g: Graph, max_n_exact: int) -> DependentSet:
    candidates = [_min_degree_candidate(g)]
    try:
        if g.n <= max_n_exact:
            r, deco = exact_rankwidth(g, max_n_exact)
        else:
            deco = greedy_decomposition(g)
            r = width(g, deco)
        r = max(r, 1)
        if deco is not None and g.n >= 3 * r:
            _, side = find_balanced_edge(deco, r)
            candidates.append(shrink_dependent(g, sorted(side)))
    except GuardError:
        pass
    return min(candidates,
               key=lambda dep: (_grow_cost(g, dep), len(dep.vertices), sorted(dep.vertices)))


def _trivial_half(g: Graph) -> DependentSet:
    s = list(range(g.n // 2 + 1))
    return _witnessed(g, s)


CODE_STRATEGY_MAX_N = 20


def find_dependent_set(g: Graph, strategy: str = "auto",
                       max_n_exact: int = EXACT_RANKWIDTH_MAX_N) -> DependentSet:
    """A validated dependent set of g under the requested strategy.

    auto: code-guided while the 2^n codeword sweep is cheap (n <= 20), then
    rank-width guided, with trivial-half as the last resort.
    """
    if g.n < 2:
        raise GuardError("dependent sets need n >= 2")
    if strategy == "auto":
        if g.n <= CODE_STRATEGY_MAX_N:
            strategy = "code"
        else:
            strategy = "rankwidth"
    if strategy in ("code", "code-guided"):
        from .codesf4 import dependent_set_from_code

        return dependent_set_from_code(g)
    if strategy in ("rankwidth", "rankwidth-guided"):
        try:
            return _rankwidth_guided(g, max_n_exact)
        except GuardError:
            return _trivial_half(g)
    if strategy in ("trivial", "trivial-half"):
        return _trivial_half(g)
    raise ValueError(f"unknown strategy {strategy!r}")
