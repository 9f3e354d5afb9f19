"""Dense complex linear algebra on qubit-indexed tensors.

Conventions used throughout the package:

* An n-qubit pure state is a vector of 2**n complex amplitudes indexed by
  the bit string (i_1 ... i_n).  Qubit 1 is the most significant bit of the
  linear index, so the amplitude of |i_1 i_2 ... i_n> sits at position
  sum_j i_j * 2**(n-j) and basis labels read left to right in dumps.
* Qubit labels are 1-based.
* All values are immutable after construction; the operations below are
  pure functions and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
HERM_TOL = 1e-10
UNITARY_TOL = 1e-10
DEGENERACY_TOL = 1e-8
PHASE_FIX_FLOOR = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Ket:
    """Normalized n-qubit pure state (qubit 1 = most significant bit)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        if amps.size != 2**self.n:
            raise ValueError(
                f"expected {2**self.n} amplitudes for n={self.n}, got {amps.size}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"ket is not normalized (norm={norm!r})")
        if abs(norm - 1.0) > NORM_TOL:
            amps = _frozen(amps / norm)
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of length 2 per qubit."""
        return self.amplitudes.reshape((2,) * self.n)

    def overlap(self, other: "Ket") -> complex:
        if other.n != self.n:
            raise ValueError("qubit counts differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(
            tuple(range(1, self.n + 1)),
            np.outer(self.amplitudes, self.amplitudes.conj()),
        )


def ket(amplitudes, n: int | None = None) -> Ket:
    """Build a Ket from any amplitude sequence, normalizing it."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if n is None:
        n = int(round(np.log2(amps.size)))
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return Ket(n, amps / norm)


def basis_ket(n: int, index: int) -> Ket:
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return Ket(n, amps)


@dataclass(frozen=True)
class MultiIndex:
    """Bit string (i_1 ... i_n) labeling a computational basis state."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits}")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))

    @classmethod
    def from_linear(cls, index: int, n: int) -> "MultiIndex":
        return cls(tuple((index >> (n - 1 - j)) & 1 for j in range(n)))

    def to_linear(self) -> int:
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    def complement(self) -> "MultiIndex":
        return MultiIndex(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class DensityMatrix:
    """State of a labeled subset of qubits: Hermitian, PSD, unit trace."""

    qubit_labels: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        labels = tuple(int(x) for x in self.qubit_labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        object.__setattr__(self, "qubit_labels", labels)
        mat = _frozen(np.asarray(self.entries))
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise ValueError("matrix is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > HERM_TOL:
            raise ValueError(f"trace is {np.trace(mat)!r}, expected 1")
        if np.linalg.eigvalsh(mat)[0] < -HERM_TOL:
            raise ValueError("matrix has a significantly negative eigenvalue")
        object.__setattr__(self, "entries", mat)

    @property
    def k(self) -> int:
        return len(self.qubit_labels)


@dataclass(frozen=True)
class SingleQubitUnitary:
    """2x2 unitary acting on one labeled qubit of a register."""

    entries: np.ndarray
    target: int

    def __post_init__(self):
        mat = _frozen(np.asarray(self.entries))
        if mat.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got {mat.shape}")
        if np.max(np.abs(mat @ mat.conj().T - np.eye(2))) > UNITARY_TOL:
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "entries", mat)

    def dagger(self) -> "SingleQubitUnitary":
        return SingleQubitUnitary(self.entries.conj().T, self.target)


@dataclass(frozen=True)
class SchmidtSplit:
    """Schmidt decomposition of a ket across one qubit vs the rest.

    ``degenerate`` is set when the two weights agree within 1e-8; the
    returned bases are then one arbitrary orthonormal choice among many.
    """

    pivot: int
    weights: tuple[float, float]
    one_qubit_vectors: np.ndarray  # shape (2, 2), column i = |i>
    rest_vectors: np.ndarray  # shape (2, 2**(n-1)), row i = |i;(pivot)>
    degenerate: bool = False

    def reassemble(self) -> Ket:
        n = int(round(np.log2(self.rest_vectors.shape[1]))) + 1
        amps = np.zeros(2**n, dtype=complex)
        for i in range(2):
            amps += np.sqrt(self.weights[i]) * tensor_insert(
                self.one_qubit_vectors[:, i], self.rest_vectors[i], self.pivot
            )
        return Ket(n, amps)


# ---------------------------------------------------------------------------
# operations


def tensor_insert(one_qubit, rest, j: int) -> np.ndarray:
    """Splice a one-qubit vector in as qubit j of a larger register.

    Returns the raw (unnormalized) amplitude vector of the n-qubit state
    whose amplitude at the multi-index obtained by inserting bit i_j at
    position j is one_qubit[i_j] * rest[remaining bits].
    """
    one_qubit = np.asarray(one_qubit, dtype=complex).reshape(2)
    rest = np.asarray(rest, dtype=complex).reshape(-1)
    n = int(round(np.log2(rest.size))) + 1
    if rest.size != 2 ** (n - 1):
        raise ValueError(f"rest vector length {rest.size} is not a power of 2")
    if not 1 <= j <= n:
        raise ValueError(f"qubit label {j} out of range 1..{n}")
    out = np.multiply.outer(one_qubit, rest.reshape((2,) * (n - 1)))
    return np.moveaxis(out, 0, j - 1).reshape(-1)


def _axis_first(amplitudes: np.ndarray, n: int, j: int) -> np.ndarray:
    """Reshape a 2**n amplitude vector to (2, 2**(n-1)) with qubit j first."""
    return np.moveaxis(
        amplitudes.reshape((2,) * n), j - 1, 0
    ).reshape(2, 2 ** (n - 1))


def partial_trace(rho: DensityMatrix, traced) -> DensityMatrix:
    """Trace out the given qubit labels of a density matrix."""
    traced = set(int(t) for t in traced)
    missing = traced - set(rho.qubit_labels)
    if missing:
        raise ValueError(f"labels {sorted(missing)} not in {rho.qubit_labels}")
    keep = [q for q in rho.qubit_labels if q not in traced]
    k = rho.k
    tensor = rho.entries.reshape((2,) * (2 * k))
    positions = sorted(
        (rho.qubit_labels.index(t) for t in traced), reverse=True
    )
    for pos in positions:
        tensor = np.trace(tensor, axis1=pos, axis2=pos + tensor.ndim // 2)
    dim = 2 ** len(keep)
    return DensityMatrix(tuple(keep), tensor.reshape(dim, dim))


def reduced_one_qubit(psi: Ket, j: int) -> np.ndarray:
    """2x2 reduced density matrix of qubit j of a pure state (raw array)."""
    a = _axis_first(psi.amplitudes, psi.n, j)
    return a @ a.conj().T


def fix_global_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate the first amplitude above 1e-9 in magnitude to be real > 0."""
    amps = np.asarray(amplitudes, dtype=complex)
    for c in amps.reshape(-1):
        if abs(c) > PHASE_FIX_FLOOR:
            return amps * (abs(c) / c)
    return amps.copy()


def _phase_fix_column(v: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of a vector real positive."""
    idx = int(np.argmax(np.abs(v)))
    c = v[idx]
    if abs(c) == 0.0:
        return v.copy()
    return v * (abs(c) / c)


def schmidt_split(psi: Ket, j: int) -> SchmidtSplit:
    """Schmidt decomposition of psi across qubit j vs all other qubits.

    The weights are the eigenvalues of the one-qubit reduced density matrix
    of qubit j, sorted descending.  Vector phases are fixed so the
    dominant component of each one-qubit vector is real positive.
    """
    if not 1 <= j <= psi.n:
        raise ValueError(f"qubit label {j} out of range 1..{psi.n}")
    a = _axis_first(psi.amplitudes, psi.n, j)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    one_qubit = np.zeros((2, 2), dtype=complex)
    rest = np.zeros((2, 2 ** (psi.n - 1)), dtype=complex)
    for i in range(2):
        col = _phase_fix_column(u[:, i])
        phase = np.vdot(col, u[:, i])  # unit modulus
        one_qubit[:, i] = col
        rest[i] = vh[i] * phase
    weights = (float(s[0] ** 2), float(s[1] ** 2))
    degenerate = abs(weights[0] - weights[1]) < DEGENERACY_TOL
    # undo the axis move so rest vectors are indexed by the remaining qubits
    # in their natural order (qubit j removed)
    return SchmidtSplit(j, weights, one_qubit, rest, degenerate)


def spectral_decompose(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - h.conj().T)) > HERM_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    evals, evecs = np.linalg.eigh(h)
    order = np.argsort(evals)[::-1]
    evecs = evecs[:, order]
    for i in range(evecs.shape[1]):
        evecs[:, i] = _phase_fix_column(evecs[:, i])
    return evals[order], evecs


def apply_local(u: SingleQubitUnitary, psi: Ket) -> Ket:
    """Apply a single-qubit unitary to its target qubit of a ket."""
    j = u.target
    if not 1 <= j <= psi.n:
        raise ValueError(f"qubit label {j} out of range 1..{psi.n}")
    a = _axis_first(psi.amplitudes, psi.n, j)
    b = (u.entries @ a).reshape((2,) * psi.n)
    return Ket(psi.n, np.moveaxis(b, 0, j - 1).reshape(-1))


def apply_locals(unitaries, psi: Ket) -> Ket:
    for u in unitaries:
        psi = apply_local(u, psi)
    return psi


def equal_up_to_phase(a: Ket, b: Ket, tol: float = 1e-9) -> bool:
    """True when a and b differ by at most a global phase."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    return abs(a.overlap(b)) >= 1.0 - tol


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
