"""Local unitary stabilizer subalgebras.

Every pure state has a Lie algebra of local generators (per-qubit su(2)
elements plus a global phase) whose action leaves its density matrix
fixed.  Its dimension is a local-unitary invariant, and for n = 3 and
n >= 5 it characterizes the GHZ class: undetermined states are exactly the
non-product states with dimension n - 1.
"""

import numpy as np

import qmarginal as qm

print("dimension across state families:")
rows = [
    ("balanced two-term", lambda n: qm.ghz_state(n)),
    ("unbalanced two-term", lambda n: qm.ghz_state(n, 0.6, 0.8)),
    ("all-zero product", lambda n: qm.basis_ket(n, 0)),
    ("generic (Haar)", lambda n: qm.haar_random_ket(n, 123 + n)),
]
ns = (3, 4, 5, 6)
header = "  ".join(f"n={n}" for n in ns)
print(f"  {'state':24s} {header}")
for name, make in rows:
    dims = [qm.stabilizer_subalgebra(make(n)).dimension for n in ns]
    print(f"  {name:24s} " + "  ".join(f"{d:3d}" for d in dims))

print()
print("basis of the n=4 two-term algebra (z-coordinates per qubit, phase):")
basis = qm.stabilizer_subalgebra(qm.ghz_state(4))
for element in basis.elements:
    z = np.round(element.coords[:, 2], 6)
    print(f"  z = {z}   sum = {z.sum():+.1e}   phase = {element.phase:+.1e}")
# traceless diagonal form: x = y = 0, z-coordinates summing to zero

print()
print("the dimension is blind to local rotations:")
orbit = qm.random_lu_orbit(qm.ghz_state(5), seed=17)
print(f"  rotated balanced five-qubit state -> dim {qm.stabilizer_subalgebra(orbit).dimension}")

print()
print("dimension-based verdicts (definitive for n = 3 and n >= 5):")
for name, psi in [
    ("balanced two-term n=3", qm.ghz_state(3)),
    ("generic n=5", qm.haar_random_ket(5, 9)),
    ("|0> x balanced four-qubit (dim 4 but product)", qm.Ket(5, np.kron([1, 0], qm.ghz_state(4).amplitudes))),
    ("any n=4 state", qm.chi_state()),
]:
    print(f"  {name:46s} -> {qm.undetermined_by_dimension(psi)}")

print()
print("conjugating the basis tracks the state through local rotations:")
psi = qm.ghz_state(3, 0.6, 0.8)
rng = np.random.default_rng(4)
from qmarginal.oracle import random_unitary_2x2

unitaries = [qm.SingleQubitUnitary(random_unitary_2x2(rng), j) for j in (1, 2, 3)]
rotated = qm.apply_locals(unitaries, psi)
moved = [qm.conjugate_element(e, unitaries) for e in qm.stabilizer_subalgebra(psi).elements]
worst = max(
    np.max(np.abs(qm.element_action(e, rotated) - 1j * e.phase * rotated.amplitudes))
    for e in moved
)
print(f"  worst action residual after conjugation: {worst:.2e}")
assert worst < 1e-8
