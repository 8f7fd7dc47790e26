"""Exact minimum unit-cost operation counts for all labeled graphs on few
vertices, by breadth-first search from the empty graph: local complementations
are free moves (closed over inside each level), every EC1/EC2/EC3 application
advances one level.

Graphs are encoded as upper-triangle bit masks so each state is one int and
every operation is a precomputed mask XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .graphcore import Graph, GraphError, lc_orbit

ORACLE_MAX_N = 6


class OracleGuardError(ValueError):
    pass


def _pair_bits(n: int) -> Dict[Tuple[int, int], int]:
    idx = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            idx[(i, j)] = k
            k += 1
    return idx


def encode_graph(g: Graph) -> int:
    idx = _pair_bits(g.n)
    mask = 0
    for (i, j), k in idx.items():
        if g.has_edge(i, j):
            mask |= 1 << k
    return mask


def decode_graph(mask: int, n: int) -> Graph:
    idx = _pair_bits(n)
    edges = [(i, j) for (i, j), k in idx.items() if (mask >> k) & 1]
    return Graph.from_edges(n, edges)


class _OpTables:
    """Mask-level operation tables for a fixed n.

    rows[state][v] is N(v) as an n-bit mask; tri[s] flips all pairs inside the
    vertex set s; star[v][s] flips all pairs {v,u} for u in s; cross[s][t]
    flips all pairs {x,y} with x in s, y in t, x != y.
    """

    def __init__(self, n: int):
        self.n = n
        idx = _pair_bits(n)
        self.idx = idx
        self.bits = n * (n - 1) // 2
        size = 1 << n
        tri = [0] * size
        for s in range(size):
            mask = 0
            for (i, j), k in idx.items():
                if (s >> i) & 1 and (s >> j) & 1:
                    mask |= 1 << k
            tri[s] = mask
        self.tri = tri
        star = [[0] * size for _ in range(n)]
        for v in range(n):
            for s in range(size):
                mask = 0
                for u in range(n):
                    if u != v and (s >> u) & 1:
                        a, b = min(u, v), max(u, v)
                        mask |= 1 << idx[(a, b)]
                star[v][s] = mask
        self.star = star
        cross = [[0] * size for _ in range(size)]
        for s in range(size):
            for t in range(s, size):
                mask = 0
                for (i, j), k in idx.items():
                    si, sj = (s >> i) & 1, (s >> j) & 1
                    ti, tj = (t >> i) & 1, (t >> j) & 1
                    if (si and tj) or (sj and ti):
                        mask |= 1 << k
                cross[s][t] = mask
                cross[t][s] = mask
        self.cross = cross
        # decode table: state -> tuple of adjacency masks
        rows_tbl = [None] * (1 << self.bits)
        pair_list = sorted(idx.items(), key=lambda kv: kv[1])
        for state in range(1 << self.bits):
            rows = [0] * n
            st = state
            while st:
                low = st & -st
                i, j = pair_list[low.bit_length() - 1][0]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
                st ^= low
            rows_tbl[state] = tuple(rows)
        self.rows_tbl = rows_tbl


@dataclass
class EcTable:
    """dist[state] = minimum number of unit-cost operations building the
    state's graph from the empty graph (no ancillas)."""

    n: int
    dist: List[int]

    def lookup(self, g: Graph) -> int:
        if g.n != self.n:
            raise OracleGuardError(f"table is for n={self.n}, graph has n={g.n}")
        return self.dist[encode_graph(g)]

    def max_cost(self) -> int:
        return max(self.dist)

    def histogram(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for d in self.dist:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


def exact_ec_all(n: int, guard: int = ORACLE_MAX_N) -> EcTable:
    """BFS levels over all 2^(n(n-1)/2) labeled graphs.

    Level t is the LC-closure of everything reachable with at most t unit-cost
    operations; expansion applies EC1 and (ordered) EC2 on every pair and EC3
    on every non-adjacent pair.
    """
    if n < 1:
        raise OracleGuardError("need n >= 1")
    if n > guard:
        raise OracleGuardError(f"oracle guarded at n<={guard}, got n={n}")
    tables = _OpTables(n)
    total = 1 << tables.bits
    dist = [-1] * total
    dist[0] = 0
    frontier = [0]
    _close_level(frontier, dist, 0, tables)
    level = 0
    reached = len([d for d in dist if d >= 0])
    while reached < total:
        nxt = _expand(frontier, dist, level + 1, tables)
        if not nxt:
            raise GraphError("operation set failed to reach every graph")
        level += 1
        _close_level(nxt, dist, level, tables)
        frontier = nxt
        reached += len(nxt)
    return EcTable(n, dist)


def _close_level(frontier: List[int], dist: List[int], level: int,
                 tables: _OpTables) -> None:
    """Saturate the frontier under free local complementations."""
    n = tables.n
    tri = tables.tri
    rows_tbl = tables.rows_tbl
    queue = list(frontier)
    while queue:
        state = queue.pop()
        rows = rows_tbl[state]
        for v in range(n):
            nxt = state ^ tri[rows[v]]
            if dist[nxt] < 0:
                dist[nxt] = level
                frontier.append(nxt)
                queue.append(nxt)


def _expand(frontier: Sequence[int], dist: List[int], level: int,
            tables: _OpTables) -> List[int]:
    """All states one unit-cost operation away from the frontier."""
    n = tables.n
    idx = tables.idx
    tri = tables.tri
    star = tables.star
    cross = tables.cross
    rows_tbl = tables.rows_tbl
    out = []
    for state in frontier:
        rows = rows_tbl[state]
        for (i, j), k in idx.items():
            candidates = [state ^ (1 << k)]  # EC1
            candidates.append(state ^ star[i][rows[j] & ~(1 << i)])  # EC2(i,j)
            candidates.append(state ^ star[j][rows[i] & ~(1 << j)])  # EC2(j,i)
            if not (state >> k) & 1:  # EC3 on a non-adjacent pair
                candidates.append(
                    state ^ (cross[rows[i]][rows[j]] ^ tri[rows[i] & rows[j]]))
            for nxt in candidates:
                if dist[nxt] < 0:
                    dist[nxt] = level
                    out.append(nxt)
    return out


_TABLE_CACHE: Dict[int, EcTable] = {}


def get_table(n: int, guard: int = ORACLE_MAX_N) -> EcTable:
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = exact_ec_all(n, guard)
    return _TABLE_CACHE[n]


def exact_ec(g: Graph, guard: int = ORACLE_MAX_N) -> int:
    """Exact minimum unit-cost count for one graph (table lookup)."""
    return get_table(g.n, guard).lookup(g)


def exact_ec_one_ancilla(g: Graph, guard: int = ORACLE_MAX_N) -> int:
    """Cross-check value allowing one extra vertex that is deleted at the
    end: min over graphs h on n+1 vertices and v with h - v LC-equivalent to
    g of the exact cost of h.  Requires n + 1 within the guard."""
    n = g.n
    if n + 1 > guard:
        raise OracleGuardError(f"ancilla cross-check needs n+1 <= {guard}")
    big = get_table(n + 1, guard)
    best_small: Dict[int, int] = {}
    for state in range(len(big.dist)):
        d = big.dist[state]
        h = decode_graph(state, n + 1)
        for v in range(n + 1):
            small = encode_graph(h.delete_vertex(v))
            if small not in best_small or d < best_small[small]:
                best_small[small] = d
    best = None
    for member in lc_orbit(g):
        cand = best_small.get(encode_graph(member))
        if cand is not None and (best is None or cand < best):
            best = cand
    return best


def ancilla_cross_check(n: int, guard: int = ORACLE_MAX_N) -> Dict[str, int]:
    """Compare C(n) with and without one ancilla; any gap is reported, not
    reconciled."""
    table = get_table(n, guard)
    worst_plain = table.max_cost()
    worst_anc = 0
    for state in range(len(table.dist)):
        g = decode_graph(state, n)
        worst_anc = max(worst_anc, exact_ec_one_ancilla(g, guard))
    return {
        "n": n,
        "max_cost": worst_plain,
        "max_cost_one_ancilla": worst_anc,
        "agrees": int(worst_plain == worst_anc),
    }
