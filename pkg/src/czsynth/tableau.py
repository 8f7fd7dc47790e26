"""Stabilizer tableaux over the binary symplectic representation, circuit
compilation of operation traces, graph-state verification, and the
classification / decomposition of two-qubit Clifford operators.

A tableau holds n stabilizer rows; row i is an (x_mask, z_mask) pair of n-bit
ints plus a sign bit (phase (-1)^sign).  Phases are tracked with the usual
i-power bookkeeping for Pauli products so deterministic measurement outcomes
come out exact; state comparisons are defined up to a Pauli correction, which
is recovered by a linear solve when needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .f2linalg import BitMatrix, rank, solve
from .graphcore import Graph, GraphOp, OpTrace, apply_op

SINGLE_QUBIT_GATES = ("H", "S", "SDG", "X", "Y", "Z")
TWO_QUBIT_GATES = ("CZ", "SWAP")


class TableauError(ValueError):
    pass


@dataclass(frozen=True)
class Circuit:
    """Gate list over H/S/SDG/X/Y/Z/CZ/SWAP/MEASZ with fixed qubit lines.

    meas_corrections maps a gate index (of a MEASZ) to the qubits that take a
    conditional Z when that measurement returns 1; vertex deletion compiles to
    a measurement plus such corrections, making the result outcome-independent.
    """

    n: int
    gates: Tuple[Tuple, ...]
    meas_corrections: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    def cz_count(self) -> int:
        return sum(1 for gate in self.gates if gate[0] == "CZ")

    def validate(self) -> None:
        for gate in self.gates:
            name = gate[0]
            if name in SINGLE_QUBIT_GATES or name == "MEASZ":
                if len(gate) != 2 or not (0 <= gate[1] < self.n):
                    raise TableauError(f"bad gate {gate}")
            elif name in TWO_QUBIT_GATES:
                if len(gate) != 3 or gate[1] == gate[2]:
                    raise TableauError(f"bad gate {gate}")
                if not (0 <= gate[1] < self.n and 0 <= gate[2] < self.n):
                    raise TableauError(f"bad gate {gate}")
            else:
                raise TableauError(f"unknown gate {name!r}")

    def serialize(self) -> str:
        lines = [f"CIRCUIT n={self.n}"]
        lines.extend(" ".join(str(x) for x in gate) for gate in self.gates)
        return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("CIRCUIT"):
        raise TableauError("missing CIRCUIT header")
    header = lines[0].split()
    if len(header) != 2 or not header[1].startswith("n="):
        raise TableauError(f"malformed circuit header {lines[0]!r}")
    n = int(header[1][2:])
    gates = []
    for ln in lines[1:]:
        parts = ln.split()
        gates.append((parts[0], *(int(x) for x in parts[1:])))
    c = Circuit(n, tuple(gates))
    c.validate()
    return c


class Tableau:
    __slots__ = ("n", "xs", "zs", "signs")

    def __init__(self, n: int, xs: Sequence[int], zs: Sequence[int],
                 signs: Sequence[int]):
        self.n = n
        self.xs = list(xs)
        self.zs = list(zs)
        self.signs = [s & 1 for s in signs]
        if not (len(self.xs) == len(self.zs) == len(self.signs) == n):
            raise TableauError("tableau needs exactly n rows")

    def copy(self) -> "Tableau":
        return Tableau(self.n, self.xs, self.zs, self.signs)

    def generating_matrix(self) -> BitMatrix:
        """n x 2n matrix [X | Z]."""
        data = [self.xs[i] | (self.zs[i] << self.n) for i in range(self.n)]
        return BitMatrix(self.n, 2 * self.n, data)

    def validate(self) -> None:
        """Isotropy (all rows commute) and row independence."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if _symp(self.xs[i], self.zs[i], self.xs[j], self.zs[j]):
                    raise TableauError(f"rows {i} and {j} anticommute")
        if rank(self.generating_matrix()) != self.n:
            raise TableauError("stabilizer rows are linearly dependent")

    def row_pauli(self, i: int) -> Tuple[int, int, int]:
        return self.xs[i], self.zs[i], self.signs[i]


def _symp(x1: int, z1: int, x2: int, z2: int) -> int:
    return ((x1 & z2) ^ (z1 & x2)).bit_count() & 1


def _phase_exponent(x1: int, z1: int, x2: int, z2: int, n: int) -> int:
    """Power of i in sigma_{x1,z1} * sigma_{x2,z2}, summed over qubits."""
    total = 0
    for q in range(n):
        a, b = (x1 >> q) & 1, (z1 >> q) & 1
        c, d = (x2 >> q) & 1, (z2 >> q) & 1
        if a == 0 and b == 0:
            continue
        if a == 1 and b == 1:
            total += d - c
        elif a == 1:
            total += d * (2 * c - 1)
        else:
            total += c * (1 - 2 * d)
    return total % 4


def _row_mult(t: Tableau, h: int, i: int) -> None:
    """row h <- row h * row i (in-place), with exact sign tracking."""
    phase = (2 * t.signs[h] + 2 * t.signs[i]
             + _phase_exponent(t.xs[h], t.zs[h], t.xs[i], t.zs[i], t.n)) % 4
    if phase % 2:
        raise TableauError("product of commuting stabilizer rows has an i phase")
    t.xs[h] ^= t.xs[i]
    t.zs[h] ^= t.zs[i]
    t.signs[h] = phase // 2


def plus_state(n: int) -> Tableau:
    """|+>^n: generating matrix [I | O]."""
    return Tableau(n, [1 << i for i in range(n)], [0] * n, [0] * n)


def zero_state(n: int) -> Tableau:
    """|0>^n: generating matrix [O | I]."""
    return Tableau(n, [0] * n, [1 << i for i in range(n)], [0] * n)


def graph_state(g: Graph) -> Tableau:
    """|G>: generating matrix [I | A], all signs +."""
    return Tableau(g.n, [1 << i for i in range(g.n)], list(g.rows), [0] * g.n)


def _apply_gate_inplace(t: Tableau, gate: Tuple) -> None:
    name = gate[0]
    n = t.n
    if name == "H":
        q = gate[1]
        bit = 1 << q
        for i in range(n):
            x, z = t.xs[i] & bit, t.zs[i] & bit
            if x and z:
                t.signs[i] ^= 1
            if bool(x) != bool(z):
                t.xs[i] ^= bit
                t.zs[i] ^= bit
    elif name == "S":
        q = gate[1]
        bit = 1 << q
        for i in range(n):
            if t.xs[i] & bit:
                if t.zs[i] & bit:
                    t.signs[i] ^= 1
                t.zs[i] ^= bit
    elif name == "SDG":
        for _ in range(3):
            _apply_gate_inplace(t, ("S", gate[1]))
    elif name == "X":
        bit = 1 << gate[1]
        for i in range(n):
            if t.zs[i] & bit:
                t.signs[i] ^= 1
    elif name == "Z":
        bit = 1 << gate[1]
        for i in range(n):
            if t.xs[i] & bit:
                t.signs[i] ^= 1
    elif name == "Y":
        bit = 1 << gate[1]
        for i in range(n):
            if bool(t.xs[i] & bit) != bool(t.zs[i] & bit):
                t.signs[i] ^= 1
    elif name == "CNOT":
        c, tq = gate[1], gate[2]
        cb, tb = 1 << c, 1 << tq
        for i in range(n):
            xc, zc = t.xs[i] & cb, t.zs[i] & cb
            xt, zt = t.xs[i] & tb, t.zs[i] & tb
            if xc and zt and (bool(xt) == bool(zc)):
                t.signs[i] ^= 1
            if xc:
                t.xs[i] ^= tb
            if zt:
                t.zs[i] ^= cb
    elif name == "CZ":
        a, b = gate[1], gate[2]
        _apply_gate_inplace(t, ("H", b))
        _apply_gate_inplace(t, ("CNOT", a, b))
        _apply_gate_inplace(t, ("H", b))
    elif name == "SWAP":
        a, b = gate[1], gate[2]
        ab, bb = 1 << a, 1 << b
        for i in range(n):
            for vec in (t.xs, t.zs):
                va, vb = vec[i] & ab, vec[i] & bb
                if bool(va) != bool(vb):
                    vec[i] ^= ab | bb
    else:
        raise TableauError(f"unknown gate {name!r}")


def apply_gate(t: Tableau, gate: Tuple) -> Tableau:
    """Pure gate application; the input tableau is unchanged."""
    out = t.copy()
    _apply_gate_inplace(out, gate)
    return out


def measure_z(t: Tableau, q: int, policy: str = "forced-0",
              rng: Optional[random.Random] = None) -> Tuple[Tableau, int, bool]:
    """Computational-basis measurement of qubit q followed by discarding it.

    policy: 'forced-0' / 'forced-1' select the post-selected branch when the
    outcome is random; 'random' draws from rng.  Returns (reduced tableau,
    outcome, was_deterministic).
    """
    if not (0 <= q < t.n):
        raise TableauError(f"qubit {q} out of range")
    work = t.copy()
    bit = 1 << q
    anti = [i for i in range(work.n) if work.xs[i] & bit]
    if anti:
        p = anti[0]
        for i in anti[1:]:
            _row_mult(work, i, p)
        if policy == "forced-0":
            outcome = 0
        elif policy == "forced-1":
            outcome = 1
        elif policy == "random":
            outcome = (rng or random).randrange(2)
        else:
            raise TableauError(f"unknown outcome policy {policy!r}")
        work.xs[p] = 0
        work.zs[p] = bit
        work.signs[p] = outcome
        deterministic = False
    else:
        # Z_q is in the stabilizer group: find the combination hitting it
        target = bit << work.n
        gen = work.generating_matrix().transpose()
        combo = solve(gen, target)
        if combo is None:
            raise TableauError("deterministic measurement: Z_q not in the group")
        rows = [i for i in range(work.n) if (combo >> i) & 1]
        if not rows:
            raise TableauError("deterministic measurement: empty combination")
        p = rows[0]
        for i in rows[1:]:
            _row_mult(work, p, i)
        if (work.xs[p], work.zs[p]) != (0, bit):
            raise TableauError("deterministic measurement: combination is not Z_q")
        outcome = work.signs[p]
        deterministic = True
    # clear q's z column elsewhere, then drop row p and column q
    for i in range(work.n):
        if i != p and (work.zs[i] & bit):
            _row_mult(work, i, p)
    low = bit - 1
    xs, zs, signs = [], [], []
    for i in range(work.n):
        if i == p:
            continue
        xs.append((work.xs[i] & low) | ((work.xs[i] >> (q + 1)) << q))
        zs.append((work.zs[i] & low) | ((work.zs[i] >> (q + 1)) << q))
        signs.append(work.signs[i])
    reduced = Tableau(work.n - 1, xs, zs, signs)
    return reduced, outcome, deterministic


# ---------------------------------------------------------------------------
# Trace compilation and graph-state verification


def trace_to_circuit(trace: OpTrace) -> Circuit:
    """Compile an operation trace to a Clifford circuit on n+s qubit lines.

    The empty graph state is prepared by a Hadamard on every line; unit-cost
    operations become a CZ under the appropriate Hadamard conjugations; a
    local complementation becomes sqrt(X)-class on its vertex and S on each
    current neighbor; a deletion becomes a Z measurement whose former
    neighbors take a conditional Z on outcome 1.
    """
    total = trace.initial_vertices
    g = Graph.empty(total)
    index: Dict[int, int] = {v: v for v in range(total)}
    gates: List[Tuple] = [("H", q) for q in range(total)]
    corrections: List[Tuple[int, Tuple[int, ...]]] = []
    cur_to_orig = {v: v for v in range(total)}
    for op in trace.ops:
        v = index[op.v]
        if op.kind == "EC1":
            w = index[op.w]
            gates.append(("CZ", op.v, op.w))
            g = apply_op(g, GraphOp("EC1", v, w))
        elif op.kind == "EC2":
            w = index[op.w]
            gates.extend((("H", op.w), ("CZ", op.v, op.w), ("H", op.w)))
            g = apply_op(g, GraphOp("EC2", v, w))
        elif op.kind == "EC3":
            w = index[op.w]
            gates.extend((("H", op.v), ("H", op.w), ("CZ", op.v, op.w),
                          ("H", op.v), ("H", op.w)))
            g = apply_op(g, GraphOp("EC3", v, w))
        elif op.kind == "LC":
            neighbors = [cur_to_orig[u] for u in g.neighbors(v)]
            gates.extend((("H", op.v), ("S", op.v), ("H", op.v)))
            gates.extend(("S", u) for u in sorted(neighbors))
            g = apply_op(g, GraphOp("LC", v))
        elif op.kind == "DEL":
            neighbors = sorted(cur_to_orig[u] for u in g.neighbors(v))
            gates.append(("MEASZ", op.v))
            corrections.append((len(gates) - 1, tuple(neighbors)))
            g = g.delete_vertex(v)
            del index[op.v]
            for k in index:
                if index[k] > v:
                    index[k] -= 1
            cur_to_orig = {cur: orig for orig, cur in index.items()}
        else:
            raise TableauError(f"cannot compile op {op.kind}")
        if op.kind != "DEL":
            cur_to_orig = {cur: orig for orig, cur in index.items()}
    circuit = Circuit(total, tuple(gates), tuple(corrections))
    circuit.validate()
    return circuit


def simulate_circuit(c: Circuit, policy: str = "forced-0",
                     rng: Optional[random.Random] = None) -> Tuple[Tableau, List[int]]:
    """Run the circuit from |0...0>; measured qubits are discarded, with the
    recorded conditional-Z corrections applied on outcome 1.  Qubit lines keep
    their original names via an internal live-index map."""
    c.validate()
    t = zero_state(c.n)
    index: Dict[int, int] = {q: q for q in range(c.n)}
    corrections = dict(c.meas_corrections)
    outcomes: List[int] = []
    for pos, gate in enumerate(c.gates):
        name = gate[0]
        if name == "MEASZ":
            q = index[gate[1]]
            t, outcome, _ = measure_z(t, q, policy=policy, rng=rng)
            outcomes.append(outcome)
            del index[gate[1]]
            for k in index:
                if index[k] > q:
                    index[k] -= 1
            if outcome == 1:
                for orig in corrections.get(pos, ()):
                    _apply_gate_inplace(t, ("Z", index[orig]))
        elif name in TWO_QUBIT_GATES:
            _apply_gate_inplace(t, (name, index[gate[1]], index[gate[2]]))
        else:
            _apply_gate_inplace(t, (name, index[gate[1]]))
    return t, outcomes


@dataclass(frozen=True)
class GraphStateReport:
    status: str  # "match" | "match-up-to-pauli" | "mismatch"
    pauli_x: Optional[int] = None
    pauli_z: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status in ("match", "match-up-to-pauli")


def canonical_form(t: Tableau) -> Tableau:
    """Reduced row echelon form of the generating matrix (column order: all X
    then all Z), with signs carried through the row operations."""
    work = t.copy()
    n, width = work.n, 2 * work.n

    def col_bit(i: int, col: int) -> int:
        if col < n:
            return (work.xs[i] >> col) & 1
        return (work.zs[i] >> (col - n)) & 1

    r = 0
    for col in range(width):
        pivot = None
        for i in range(r, n):
            if col_bit(i, col):
                pivot = i
                break
        if pivot is None:
            continue
        for vec in (work.xs, work.zs, work.signs):
            vec[r], vec[pivot] = vec[pivot], vec[r]
        for i in range(n):
            if i != r and col_bit(i, col):
                _row_mult(work, i, r)
        r += 1
        if r == n:
            break
    return work


def check_graph_state(t: Tableau, g: Graph) -> GraphStateReport:
    """Compare the tableau with |G>.  Row spaces are compared in canonical
    form; when they agree but signs differ, the correcting Pauli is obtained
    by solving the sign-fixing linear system and reported."""
    if t.n != g.n:
        raise TableauError(f"tableau has {t.n} qubits, graph has {g.n}")
    canon = canonical_form(t)
    target = graph_state(g)
    if canon.xs != target.xs or canon.zs != target.zs:
        return GraphStateReport("mismatch")
    v = 0
    for i, s in enumerate(canon.signs):
        if s:
            v |= 1 << i
    if v == 0:
        return GraphStateReport("match", 0, 0)
    # G [[O,I],[I,O]] a^T = v with G = [I | A] reduces to [A | I] a^T = v
    n = g.n
    m = BitMatrix(n, 2 * n, [g.rows[i] | (1 << (n + i)) for i in range(n)])
    a = solve(m, v)
    if a is None:
        raise TableauError("sign-fixing system is inconsistent")
    return GraphStateReport("match-up-to-pauli",
                            a & ((1 << n) - 1), a >> n)


def apply_pauli(t: Tableau, x_mask: int, z_mask: int) -> Tableau:
    """Apply the Pauli with the given X/Z support: each stabilizer row flips
    sign iff it anticommutes with it."""
    out = t.copy()
    for i in range(out.n):
        if _symp(out.xs[i], out.zs[i], x_mask, z_mask):
            out.signs[i] ^= 1
    return out


# ---------------------------------------------------------------------------
# Two-qubit Clifford classification (4x4 symplectic matrices)

# Row-vector convention: coordinates (x1, x2, z1, z2); a matrix is a tuple of
# four 4-bit rows, row k being the image of basis vector k.

L_CZ4 = (0b1001, 0b0110, 0b0100, 0b1000)
L_SWAP4 = (0b0010, 0b0001, 0b1000, 0b0100)
IDENT4 = (1, 2, 4, 8)


def mat_mul(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    """Row-vector composition: apply a, then b."""
    out = []
    for row in a:
        acc = 0
        rr = row
        while rr:
            low = rr & -rr
            acc ^= b[low.bit_length() - 1]
            rr ^= low
        out.append(acc)
    return tuple(out)


def is_symplectic4(m: Tuple[int, ...]) -> bool:
    def form(a: int, b: int) -> int:
        return (((a & (b >> 2)) & 3).bit_count() + ((b & (a >> 2)) & 3).bit_count()) & 1

    for i in range(4):
        for j in range(4):
            want = 1 if abs(i - j) == 2 else 0
            if form(m[i], m[j]) != want:
                return False
    return True


def _embed_1q(l2: Tuple[Tuple[int, int], Tuple[int, int]], qubit: int) -> Tuple[int, ...]:
    rows = list(IDENT4)
    x_pos, z_pos = qubit, qubit + 2
    rows[x_pos] = (l2[0][0] << x_pos) | (l2[0][1] << z_pos)
    rows[z_pos] = (l2[1][0] << x_pos) | (l2[1][1] << z_pos)
    return tuple(rows)


@lru_cache(maxsize=1)
def _single_qubit_classes() -> List[Tuple[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[str, ...]]]:
    """The six invertible 2x2 matrices with a shortest H/S gate realization."""
    l_h = ((0, 1), (1, 0))
    l_s = ((1, 1), (0, 1))

    def mul2(a, b):  # apply a then b
        out = []
        for row in a:
            acc = [0, 0]
            for k, bit in enumerate(row):
                if bit:
                    acc[0] ^= b[k][0]
                    acc[1] ^= b[k][1]
            out.append(tuple(acc))
        return tuple(out)

    ident = ((1, 0), (0, 1))
    found = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for name, gm in (("H", l_h), ("S", l_s)):
                prod = mul2(m, gm)
                if prod not in found:
                    found[prod] = found[m] + (name,)
                    nxt.append(prod)
        frontier = nxt
    assert len(found) == 6
    return sorted(found.items(), key=lambda kv: (len(kv[1]), kv[1]))


@lru_cache(maxsize=1)
def _classification_table() -> Dict[Tuple[int, ...], Tuple[str, Tuple[Tuple, ...]]]:
    """matrix -> (class letter, gate tuple realizing it on qubits (0, 1))."""
    singles = _single_qubit_classes()
    # C, D options: representatives of the S-cosets {I, H, HS}
    cd_reps = []
    for l2, gates in singles:
        if gates in ((), ("H",), ("S", "H")):
            cd_reps.append((l2, gates))
    assert len(cd_reps) == 3
    table: Dict[Tuple[int, ...], Tuple[str, Tuple[Tuple, ...]]] = {}

    def add(matrix, cls, gates):
        if matrix in table:
            raise TableauError("two-qubit classification produced a collision")
        table[matrix] = (cls, tuple(gates))

    ab_forms = []
    for la, ga in singles:
        for lb, gb in singles:
            m = mat_mul(_embed_1q(la, 0), _embed_1q(lb, 1))
            gates = [(g, 0) for g in ga] + [(g, 1) for g in gb]
            ab_forms.append((m, gates))
    for m, gates in ab_forms:
        add(m, "a", gates)
    for lc, gc in cd_reps:
        for ld, gd in cd_reps:
            pre = mat_mul(_embed_1q(lc, 0), _embed_1q(ld, 1))
            pre_gates = [(g, 0) for g in gc] + [(g, 1) for g in gd]
            head = mat_mul(pre, L_CZ4)
            for m_ab, g_ab in ab_forms:
                add(mat_mul(head, m_ab), "b",
                    pre_gates + [("CZ", 0, 1)] + g_ab)
    for lc, gc in cd_reps:
        for ld, gd in cd_reps:
            pre = mat_mul(_embed_1q(lc, 0), _embed_1q(ld, 1))
            pre_gates = [(g, 0) for g in gc] + [(g, 1) for g in gd]
            head = mat_mul(mat_mul(L_SWAP4, pre), L_CZ4)
            for m_ab, g_ab in ab_forms:
                add(mat_mul(head, m_ab), "c",
                    [("SWAP", 0, 1)] + pre_gates + [("CZ", 0, 1)] + g_ab)
    for m_ab, g_ab in ab_forms:
        add(mat_mul(L_SWAP4, m_ab), "d", [("SWAP", 0, 1)] + g_ab)
    return table


def enumerate_two_qubit_classes() -> Dict[str, int]:
    """Class sizes of the two-qubit Clifford group modulo Pauli, keyed by the
    minimal-CZ normal forms (a: no CZ, b: one CZ, c: SWAP+CZ, d: SWAP only),
    cross-checked against a brute-force symplectic enumeration."""
    table = _classification_table()
    brute = 0
    for r0 in range(16):
        for r1 in range(16):
            for r2 in range(16):
                for r3 in range(16):
                    m = (r0, r1, r2, r3)
                    if is_symplectic4(m):
                        brute += 1
                        if m not in table:
                            raise TableauError(
                                f"symplectic matrix {m} missing from the classification")
    if brute != len(table):
        raise TableauError("classification table does not cover the symplectic group")
    counts: Dict[str, int] = {"a": 0, "b": 0, "c": 0, "d": 0}
    for cls, _ in table.values():
        counts[cls] += 1
    counts["total"] = len(table)
    return counts


def decompose_two_qubit(m: Tuple[int, ...]) -> Circuit:
    """Circuit with single-qubit gates, at most one CZ and at most one SWAP
    whose symplectic action equals m (signs free per the Pauli quotient)."""
    m = tuple(m)
    if len(m) != 4 or not is_symplectic4(m):
        raise TableauError(f"not a 4x4 symplectic matrix: {m}")
    _, gates = _classification_table()[m]
    c = Circuit(2, tuple(gates))
    c.validate()
    return c


def matrix_of_gate(gate: Tuple, n: int) -> List[int]:
    """2n x 2n symplectic action of one gate (row-vector convention),
    as a list of 2n row masks."""
    rows = [1 << i for i in range(2 * n)]
    name = gate[0]
    if name in ("H", "S", "SDG", "X", "Y", "Z"):
        q = gate[1]
        l2 = {
            "H": ((0, 1), (1, 0)),
            "S": ((1, 1), (0, 1)),
            "SDG": ((1, 1), (0, 1)),
            "X": ((1, 0), (0, 1)),
            "Y": ((1, 0), (0, 1)),
            "Z": ((1, 0), (0, 1)),
        }[name]
        rows[q] = (l2[0][0] << q) | (l2[0][1] << (n + q))
        rows[n + q] = (l2[1][0] << q) | (l2[1][1] << (n + q))
    elif name == "CZ":
        a, b = gate[1], gate[2]
        rows[a] = (1 << a) | (1 << (n + b))
        rows[b] = (1 << b) | (1 << (n + a))
    elif name == "SWAP":
        a, b = gate[1], gate[2]
        rows[a], rows[b] = 1 << b, 1 << a
        rows[n + a], rows[n + b] = 1 << (n + b), 1 << (n + a)
    else:
        raise TableauError(f"no symplectic action for gate {name!r}")
    return rows


def compose_gates(gates: Sequence[Tuple], n: int) -> List[int]:
    """Symplectic action of a gate sequence (applied left to right)."""
    acc = [1 << i for i in range(2 * n)]
    for gate in gates:
        gm = matrix_of_gate(gate, n)
        acc = [_vec_mat(row, gm) for row in acc]
    return acc


def _vec_mat(vec: int, mat: List[int]) -> int:
    out = 0
    while vec:
        low = vec & -vec
        out ^= mat[low.bit_length() - 1]
        vec ^= low
    return out


def rewrite_circuit(placements: Sequence[Tuple], n: int) -> Tuple[Tuple[int, ...], Circuit]:
    """Rewrite a circuit whose two-qubit pieces may be arbitrary symplectic
    placements into an initial qubit permutation followed by single-qubit
    gates and CZs only; the CZ count never exceeds the two-qubit gate count.

    placements: ("gate", name, q) / ("gate", name, a, b) for named gates, or
    ("sym2", matrix4, (a, b)) for a raw two-qubit symplectic action.
    Returns (perm, circuit) where perm[i] is where qubit i moves first.
    """
    flat: List[Tuple] = []
    for item in placements:
        if item[0] == "gate":
            name = item[1]
            if name in SINGLE_QUBIT_GATES:
                flat.append((name, item[2]))
            elif name == "CZ":
                flat.append(("CZ", item[2], item[3]))
            elif name == "SWAP":
                flat.append(("SWAP", item[2], item[3]))
            else:
                raise TableauError(f"unknown named gate {name!r}")
        elif item[0] == "sym2":
            matrix, (a, b) = item[1], item[2]
            local = decompose_two_qubit(matrix)
            wires = {0: a, 1: b}
            for gate in local.gates:
                if gate[0] in SINGLE_QUBIT_GATES:
                    flat.append((gate[0], wires[gate[1]]))
                else:
                    flat.append((gate[0], wires[gate[1]], wires[gate[2]]))
        else:
            raise TableauError(f"unknown placement {item[0]!r}")
    perm = list(range(n))  # perm[i] = wire qubit i is routed to before the gates
    emitted: List[Tuple] = []
    for gate in flat:
        if gate[0] == "SWAP":
            a, b = gate[1], gate[2]
            # push the swap to the front: relabel everything already emitted
            swap = {a: b, b: a}
            emitted = [
                (g[0], *(swap.get(q, q) for q in g[1:]))
                for g in emitted
            ]
            perm = [swap.get(p, p) for p in perm]
        else:
            emitted.append(gate)
    circuit = Circuit(n, tuple(emitted))
    circuit.validate()
    return tuple(perm), circuit


def permutation_matrix(perm: Sequence[int], n: int) -> List[int]:
    rows = [0] * (2 * n)
    for i, p in enumerate(perm):
        rows[i] = 1 << p
        rows[n + i] = 1 << (n + p)
    return rows
