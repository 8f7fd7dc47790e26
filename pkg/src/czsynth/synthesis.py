"""Recursive graph synthesis: peel a witness vertex out of a dependent set,
recurse on the smaller graph, and replay the per-vertex insertion gadgets in
reverse.  Emits operation traces together with lower/upper bound certificates.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .graphcore import EC1, EC2, LC, Graph, GraphOp, OpTrace, replay
from .rankwidth import (
    EXACT_RANKWIDTH_MAX_N,
    DependentSet,
    exact_rankwidth_value,
    find_dependent_set,
    greedy_decomposition,
    width,
)


class SynthesisError(RuntimeError):
    """Internal failure: the produced trace contradicts a guarantee that
    holds by construction (replay mismatch or lower-bound violation)."""


@dataclass(frozen=True)
class Bounds:
    lower: Optional[int]
    upper_generic: Fraction
    upper_rankwidth: Optional[Fraction]
    rankwidth_used: Optional[int] = None
    rankwidth_exact: bool = False


@dataclass(frozen=True)
class SynthResult:
    trace: OpTrace
    cost: int
    per_vertex_costs: Tuple[Tuple[int, int], ...]
    bounds: Bounds
    strategy: str
    wall_time: float


def bound_upper_generic(n: int) -> Fraction:
    """(n-1)(n+4)/6, the distance-driven bound valid for every graph."""
    return Fraction((n - 1) * (n + 4), 6)


def bound_upper_rankwidth(n: int, r: int) -> Optional[Fraction]:
    """Closed-form cost bound for graphs of rank-width at most r, by parity
    of r; None when n is below the bound's validity threshold."""
    if r < 1:
        raise ValueError("rank-width parameter must be >= 1")
    if r % 2 == 1:
        threshold = Fraction(13 * r * r - 6 * r - 3, 4 * r)
        if n < threshold:
            return None
        return (Fraction(5 * r * r - 1, 4 * r) * n
                - Fraction(221 * r**4 - 180 * r**3 + 10 * r**2 + 36 * r + 9, 96 * r * r))
    threshold = Fraction(13 * r - 6, 4)
    if n < threshold:
        return None
    return Fraction(5 * r, 4) * n - Fraction(221 * r * r - 180 * r + 100, 96)


def grow_vertex(g: Graph, dep: DependentSet) -> Tuple[int, List[GraphOp], int]:
    """Operations that rebuild g from g with dep.vertex isolated.

    Row v of A_{S,V\\S} equals the sum of the rows in T = dep.support, so v's
    outside-S neighborhood is the parity of the T neighborhoods.  For each
    w in T we copy N(w)\\{v} onto v (one unit-cost op); where the parity needs
    the extra {v,w} edge we use the locally-conjugated variant that toggles
    {v,w} as well.  All effects touch only edges at v, hence commute, and the
    remainder of S is patched with direct edge toggles.
    """
    dep.validate(g)
    v = dep.vertex
    t = sorted(dep.support)
    a_v = g.rows[v]
    a_t = 0
    for w in t:
        a_t ^= g.rows[w]
    diff = a_v ^ a_t
    ops: List[GraphOp] = []
    cost = 0
    for w in t:
        if (diff >> w) & 1:
            # toggles {v,w} and v <-> N(w)\{v}
            ops.extend((LC(w), EC1(v, w), LC(w)))
        else:
            ops.append(EC2(v, w))
        cost += 1
    for u in sorted(dep.vertices - dep.support - {v}):
        if (diff >> u) & 1:
            ops.append(EC1(v, u))
            cost += 1
    if cost > len(dep.vertices) - 1:
        raise SynthesisError(
            f"grow cost {cost} exceeds |S|-1 = {len(dep.vertices) - 1}")
    return v, ops, cost


def _base_ops(g: Graph, names: Sequence[int]) -> List[GraphOp]:
    """Directly generate a graph on at most two vertices."""
    if g.n == 2 and g.has_edge(0, 1):
        return [EC1(names[0], names[1])]
    return []


def synth(g: Graph, strategy: str = "auto",
          max_n_exact: int = EXACT_RANKWIDTH_MAX_N) -> SynthResult:
    """Build a trace generating g from the empty graph on g.n vertices.

    While more than two vertices remain, find a dependent set, plan the grow
    gadget for its witness vertex, and recurse on the graph without it; the
    final trace replays the gadgets in reverse removal order.
    """
    start = time.perf_counter()
    names = list(range(g.n))  # current index -> original index
    work = g
    layers: List[List[GraphOp]] = []
    per_vertex: List[Tuple[int, int]] = []
    while work.n > 2:
        dep = find_dependent_set(work, strategy, max_n_exact=max_n_exact)
        v, ops, cost = grow_vertex(work, dep)
        translated = [
            GraphOp(op.kind, names[op.v], None if op.w is None else names[op.w])
            for op in ops
        ]
        layers.append(translated)
        per_vertex.append((names[v], cost))
        work = work.delete_vertex(v)
        del names[v]
    ops_out: List[GraphOp] = _base_ops(work, names)
    for layer in reversed(layers):
        ops_out.extend(layer)
    trace = OpTrace(g.n, 0, tuple(ops_out))
    result_graph = replay(trace)
    if result_graph != g:
        raise SynthesisError("replayed trace does not reproduce the target graph")
    cost = trace.cost
    bounds = _compute_bounds(g, max_n_exact)
    if bounds.lower is not None and cost < bounds.lower:
        raise SynthesisError(
            f"cost {cost} beats the n+rw-2 lower bound {bounds.lower}; "
            "which should be impossible for a valid trace")
    return SynthResult(
        trace=trace,
        cost=cost,
        per_vertex_costs=tuple(reversed(per_vertex)),
        bounds=bounds,
        strategy=strategy,
        wall_time=time.perf_counter() - start,
    )


def _compute_bounds(g: Graph, max_n_exact: int) -> Bounds:
    lower = None
    rw_used = None
    rw_exact = False
    if g.n <= max_n_exact:
        rw_used = exact_rankwidth_value(g, max_n_exact)
        rw_exact = True
        if g.is_connected() and g.n >= 2:
            lower = g.n + rw_used - 2
    elif g.n >= 2:
        rw_used = width(g, greedy_decomposition(g))
    upper_rw = None
    if rw_used is not None and rw_used >= 1:
        upper_rw = bound_upper_rankwidth(g.n, rw_used)
    return Bounds(
        lower=lower,
        upper_generic=bound_upper_generic(g.n) if g.n >= 1 else Fraction(0),
        upper_rankwidth=upper_rw,
        rankwidth_used=rw_used,
        rankwidth_exact=rw_exact,
    )


@dataclass(frozen=True)
class Certificate:
    ok: bool
    replay_matches: bool
    lower_bound: Optional[int]
    lower_bound_ok: Optional[bool]
    cost: int
    upper_generic: Fraction
    upper_generic_ok: bool
    upper_rankwidth: Optional[Fraction]
    upper_rankwidth_ok: Optional[bool]
    notes: Tuple[str, ...]

    def lines(self) -> List[str]:
        out = [f"cost={self.cost}",
               f"replay={'ok' if self.replay_matches else 'MISMATCH'}"]
        if self.lower_bound is None:
            out.append("lower_bound=skipped")
        else:
            out.append(f"lower_bound={self.lower_bound} "
                       f"{'ok' if self.lower_bound_ok else 'VIOLATED'}")
        out.append(f"upper_generic={float(self.upper_generic):.3f} "
                   f"{'ok' if self.upper_generic_ok else 'exceeded'}")
        if self.upper_rankwidth is not None:
            out.append(f"upper_rankwidth={float(self.upper_rankwidth):.3f} "
                       f"{'ok' if self.upper_rankwidth_ok else 'exceeded'}")
        out.extend(self.notes)
        return out


def certify(g: Graph, res: SynthResult,
            max_n_exact: int = EXACT_RANKWIDTH_MAX_N) -> Certificate:
    """Re-derive the guarantees for a synthesis result: replay equality, the
    connectivity/rank-width lower bound when computable, and how the cost
    compares with the closed-form upper bounds."""
    replay_ok = replay(res.trace) == g
    if not replay_ok:
        raise SynthesisError("certificate failure: trace does not replay to target")
    notes: List[str] = []
    lower = None
    lower_ok = None
    if g.is_connected() and 2 <= g.n <= max_n_exact:
        rw = exact_rankwidth_value(g, max_n_exact)
        lower = g.n + rw - 2
        lower_ok = res.cost >= lower
        if not lower_ok:
            raise SynthesisError(
                f"certificate failure: cost {res.cost} < lower bound {lower}")
    elif not g.is_connected():
        notes.append("lower-bound check skipped: graph disconnected")
    else:
        notes.append(f"lower-bound check skipped: n > {max_n_exact}")
    upper_generic = bound_upper_generic(g.n) if g.n >= 1 else Fraction(0)
    upper_rw = res.bounds.upper_rankwidth
    return Certificate(
        ok=True,
        replay_matches=True,
        lower_bound=lower,
        lower_bound_ok=lower_ok,
        cost=res.cost,
        upper_generic=upper_generic,
        upper_generic_ok=res.cost <= upper_generic,
        upper_rankwidth=upper_rw,
        upper_rankwidth_ok=None if upper_rw is None else res.cost <= upper_rw,
        notes=tuple(notes),
    )


def serialize_stats(res: SynthResult, include_time: bool = False) -> str:
    """Line-oriented key=value stats block."""
    b = res.bounds
    lines = [
        f"n={res.trace.n}",
        f"s={res.trace.s}",
        f"cost={res.cost}",
        f"strategy={res.strategy}",
        f"lower_bound={'-' if b.lower is None else b.lower}",
        f"upper_generic={float(b.upper_generic):.6g}",
        f"upper_rankwidth={'-' if b.upper_rankwidth is None else float(b.upper_rankwidth):.6g}",
        f"rankwidth_used={'-' if b.rankwidth_used is None else b.rankwidth_used}",
        f"rankwidth_exact={int(b.rankwidth_exact)}",
    ]
    if include_time:
        lines.append(f"wall_ms={res.wall_time * 1e3:.3f}")
    return "\n".join(lines) + "\n"
