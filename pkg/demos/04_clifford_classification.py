"""Every two-qubit Clifford operator (modulo Pauli factors) is one of 720
symplectic actions, each realizable with at most one CZ and one SWAP; the
classes count 36 / 324 / 324 / 36 by how the CZ and SWAP appear.
"""

from czsynth import decompose_two_qubit, enumerate_two_qubit_classes
from czsynth.tableau import L_CZ4, L_SWAP4, compose_gates, mat_mul

counts = enumerate_two_qubit_classes()
print("two-qubit Clifford classes (mod Pauli):")
for cls in "abcd":
    print(f"  class {cls}: {counts[cls]}")
print(f"  total:   {counts['total']}")

print("\ndecomposing the bare CZ action:")
for gate in decompose_two_qubit(L_CZ4).gates:
    print(f"  {' '.join(str(x) for x in gate)}")

print("\ndecomposing SWAP * CZ:")
combo = mat_mul(L_SWAP4, L_CZ4)  # apply SWAP, then CZ
circuit = decompose_two_qubit(combo)
for gate in circuit.gates:
    print(f"  {' '.join(str(x) for x in gate)}")
assert tuple(compose_gates(circuit.gates, 2)) == combo
print("round trip verified")
