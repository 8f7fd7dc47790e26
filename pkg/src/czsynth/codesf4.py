"""Self-dual additive GF(4) codes attached to graphs: generator ωI + A in the
binary (x,z) encoding, brute-force minimum distance over the 2^n codeword
sweep, and dependent sets read off minimum-weight codeword supports.

GF(4) symbols are never materialized: entry 0,1,ω,ω² <-> (x,z) bit pairs
(0,0),(0,1),(1,0),(1,1), and the Hermitian trace inner product becomes the
binary symplectic product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .graphcore import Graph, GraphError
from .rankwidth import DependentSet, GuardError, _witnessed

MIN_DISTANCE_MAX_N = 22


@dataclass(frozen=True)
class AdditiveCode:
    """Length-n additive code given by n generators, each an (x_mask, z_mask)
    pair of n-bit vectors."""

    n: int
    generators: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if len(self.generators) != self.n:
            raise GraphError("self-dual graph codes have n generators")

    def is_self_dual(self) -> bool:
        """All generator pairs orthogonal under the trace inner product."""
        for i, (xi, zi) in enumerate(self.generators):
            for xj, zj in self.generators[i:]:
                if ((xi & zj) ^ (zi & xj)).bit_count() & 1:
                    return False
        return True

    def codeword(self, combo: int) -> Tuple[int, int]:
        """GF(2) combination of generators selected by the bits of combo."""
        x = z = 0
        c = combo
        while c:
            low = c & -c
            gx, gz = self.generators[low.bit_length() - 1]
            x ^= gx
            z ^= gz
            c ^= low
        return x, z


def symbol_weight(x: int, z: int) -> int:
    """Number of coordinates whose GF(4) entry is nonzero."""
    return (x | z).bit_count()


def code_from_graph(g: Graph) -> AdditiveCode:
    """The graph code with generator matrix ωI + A."""
    gens = tuple((1 << i, g.rows[i]) for i in range(g.n))
    code = AdditiveCode(g.n, gens)
    if not code.is_self_dual():
        raise GraphError("graph code failed self-duality (adjacency not symmetric?)")
    return code


def _min_weight_sweep(c: AdditiveCode) -> Tuple[int, int]:
    """(minimum weight, support mask of the first minimum-weight codeword in
    Gray-code order).  Each Gray step XORs a single generator pair."""
    if c.n > MIN_DISTANCE_MAX_N:
        raise GuardError(
            f"minimum distance sweep guarded at n<={MIN_DISTANCE_MAX_N}, got n={c.n}")
    if c.n == 0:
        raise GuardError("empty code has no nonzero codeword")
    x = z = 0
    best_weight: Optional[int] = None
    best_support = 0
    for i in range(1, 1 << c.n):
        j = (i & -i).bit_length() - 1
        gx, gz = c.generators[j]
        x ^= gx
        z ^= gz
        w = (x | z).bit_count()
        if best_weight is None or w < best_weight:
            best_weight = w
            best_support = x | z
    return best_weight, best_support


def min_distance(c: AdditiveCode) -> int:
    """Minimum symbol weight over the 2^n - 1 nonzero codewords."""
    return _min_weight_sweep(c)[0]


def min_weight_support(c: AdditiveCode) -> List[int]:
    """Support of the first minimum-weight codeword in Gray order."""
    _, support = _min_weight_sweep(c)
    out = []
    while support:
        low = support & -support
        out.append(low.bit_length() - 1)
        support ^= low
    return out


def dependent_set_from_code(g: Graph) -> DependentSet:
    """Dependent set from a minimum-weight codeword support: a codeword
    supported inside S certifies cutrank(S) < |S|."""
    support = min_weight_support(code_from_graph(g))
    return _witnessed(g, support)


def mind_bound(n: int) -> int:
    """Proven ceiling on the minimum distance of any length-n self-dual
    additive GF(4) code: 2*floor(n/6) + 2, or +3 when n = 5 mod 6."""
    if n < 1:
        raise ValueError("code length must be positive")
    extra = 3 if n % 6 == 5 else 2
    return 2 * (n // 6) + extra
