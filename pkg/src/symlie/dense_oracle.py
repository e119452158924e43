"""Independent numerical verification by plain linear algebra.

The combinatorial dimension formulas are cross-checked here without any
cycle-index machinery: the commutant of a set of matrices is computed as the
nullspace of the linear map c -> [B, sum_j c_j * i*P_j] over the Pauli
coefficient basis, so skew-Hermiticity and tracelessness are built into the
parametrization instead of being extra constraints.  Commuting with a
group's generators suffices: the commutant of a generating set equals the
commutant of the whole group.

Ranks come from singular values with a relative threshold plus a mandatory
gap check, so a borderline spectrum raises instead of silently producing a
wrong dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .combinatorics import group_order
from .errors import IndeterminateRank, MatrixSizeCapExceeded, OrderCapExceeded
from .pauli_orbits import pauli_matrix
from .permutation_rep import (
    DEFAULT_ORDER_CAP,
    AnySpec,
    enumerate_elements,
    group_generators,
    qubit_permutation_matrix,
)

__all__ = [
    "CommutantReport",
    "commutant_dimension",
    "commutant_nullspace",
    "group_constraint_matrices",
    "energy_hamiltonian",
    "block_profile",
    "weight_sort_permutation",
    "is_block_diagonal",
    "exp_membership_check",
]

MAX_ORACLE_QUBITS = 6  # 64x64 matrices over a 4095-element basis; >5 is slow


@dataclass(frozen=True)
class CommutantReport:
    """Outcome of a commutant-dimension computation."""

    n_qubits: int
    constraint_count: int
    rank: int
    dimension: int
    tolerance: float
    singular_value_gap: float

    def to_json(self) -> dict:
        # an unbounded gap (nothing rejected) serializes as null: bare
        # Infinity is not valid JSON
        gap = self.singular_value_gap
        return {
            "n_qubits": self.n_qubits,
            "constraint_count": self.constraint_count,
            "rank": self.rank,
            "dimension": self.dimension,
            "tolerance": self.tolerance,
            "singular_value_gap": None if math.isinf(gap) else gap,
        }


def _classify_singular_values(svals: np.ndarray, rtol: float,
                              gap_factor: float) -> Tuple[int, float, float]:
    """Split singular values into accepted/rejected; returns (rank, tol, gap).

    The gap is the ratio between the smallest accepted and largest rejected
    value (inf when either side is empty); a gap below `gap_factor` means
    the rank is not trustworthy.
    """
    if svals.size == 0 or svals[0] == 0.0:
        return 0, 0.0, math.inf
    tol = rtol * float(svals[0])
    rank = int(np.count_nonzero(svals > tol))
    if rank == 0 or rank == svals.size:
        return rank, tol, math.inf
    largest_rejected = float(svals[rank])
    if largest_rejected == 0.0:
        return rank, tol, math.inf
    return rank, tol, float(svals[rank - 1]) / largest_rejected


def _constraint_matrix(generators: Sequence[np.ndarray], n_qubits: int) -> np.ndarray:
    """Real matrix of the map from Pauli coefficients to stacked commutators."""
    dim = 1 << n_qubits
    n_basis = 4**n_qubits - 1
    for b in generators:
        if b.shape != (dim, dim):
            raise ValueError(f"generator shape {b.shape} does not match {dim}x{dim}")
    rows = 2 * dim * dim * len(generators)
    matrix = np.empty((rows, n_basis))
    strings = _all_pauli_strings(n_qubits)
    for j, s in enumerate(strings):
        basis_element = 1j * pauli_matrix(s)
        offset = 0
        for b in generators:
            comm = b @ basis_element - basis_element @ b
            matrix[offset:offset + dim * dim, j] = comm.real.ravel()
            matrix[offset + dim * dim:offset + 2 * dim * dim, j] = comm.imag.ravel()
            offset += 2 * dim * dim
    return matrix


def _all_pauli_strings(n: int) -> List[Tuple[int, ...]]:
    out = []
    for index in range(1, 4**n):
        digits = []
        for j in range(n - 1, -1, -1):
            digits.append((index >> (2 * j)) & 3)
        out.append(tuple(digits))
    return out


def _report_from_svals(svals: np.ndarray, n_qubits: int, constraint_count: int,
                       rtol: float, gap_factor: float) -> CommutantReport:
    rank, tol, gap = _classify_singular_values(svals, rtol, gap_factor)
    report = CommutantReport(
        n_qubits=n_qubits,
        constraint_count=constraint_count,
        rank=rank,
        dimension=4**n_qubits - 1 - rank,
        tolerance=tol,
        singular_value_gap=gap,
    )
    if gap < gap_factor:
        raise IndeterminateRank(
            f"singular-value gap {gap:.3g} below required factor {gap_factor}: {report}")
    return report


def commutant_dimension(generators: Sequence[np.ndarray], n_qubits: int,
                        rtol: float = 1e-8, gap_factor: float = 10.0) -> CommutantReport:
    """Dimension of {a in su(2^N) : [B, a] = 0 for every generator B}."""
    if n_qubits > MAX_ORACLE_QUBITS:
        raise MatrixSizeCapExceeded(1 << n_qubits, 1 << MAX_ORACLE_QUBITS)
    if not generators:
        return CommutantReport(n_qubits, 0, 0, 4**n_qubits - 1, 0.0, math.inf)
    matrix = _constraint_matrix(generators, n_qubits)
    svals = np.linalg.svd(matrix, compute_uv=False)
    return _report_from_svals(svals, n_qubits, matrix.shape[0], rtol, gap_factor)


def commutant_nullspace(generators: Sequence[np.ndarray], n_qubits: int,
                        rtol: float = 1e-8, gap_factor: float = 10.0
                        ) -> Tuple[CommutantReport, np.ndarray]:
    """Report plus an orthonormal Pauli-coefficient basis of the commutant.

    Row k of the returned array holds the coefficients c with
    a = sum_j c_j * i*P_j a commutant element.
    """
    if n_qubits > MAX_ORACLE_QUBITS:
        raise MatrixSizeCapExceeded(1 << n_qubits, 1 << MAX_ORACLE_QUBITS)
    n_basis = 4**n_qubits - 1
    if not generators:
        report = CommutantReport(n_qubits, 0, 0, n_basis, 0.0, math.inf)
        return report, np.eye(n_basis)
    matrix = _constraint_matrix(generators, n_qubits)
    _, svals, vh = np.linalg.svd(matrix, full_matrices=False)
    report = _report_from_svals(svals, n_qubits, matrix.shape[0], rtol, gap_factor)
    return report, vh[report.rank:]


def coefficients_to_operator(coefficients: np.ndarray, n_qubits: int) -> np.ndarray:
    """Assemble sum_j c_j * i*P_j from a Pauli coefficient vector."""
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    for j, s in enumerate(_all_pauli_strings(n_qubits)):
        c = coefficients[j]
        if c != 0.0:
            out += c * 1j * pauli_matrix(s)
    return out


def group_constraint_matrices(spec: AnySpec, full_group: bool = False,
                              order_cap: int = DEFAULT_ORDER_CAP) -> List[np.ndarray]:
    """Representation matrices to constrain against: the generators' U_alpha
    by default, every element's in the (debug) full-group mode.

    Either way the order cap is enforced, since the commutant only makes
    sense for groups that could in principle be enumerated.
    """
    order = group_order(spec)
    if order > order_cap:
        raise OrderCapExceeded(order, order_cap)
    if full_group:
        perms = enumerate_elements(spec, order_cap).elements
    else:
        perms = group_generators(spec)
    return [qubit_permutation_matrix(p) for p in perms]


def energy_hamiltonian(n: int, matrix_cap: int = 1 << 12) -> np.ndarray:
    """Diagonal matrix whose entry at basis state b is the Hamming weight of b."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    dim = 1 << n
    if dim > matrix_cap:
        raise MatrixSizeCapExceeded(dim, matrix_cap)
    idx = np.arange(dim)
    weight = np.zeros(dim, dtype=np.int64)
    while idx.any():
        weight += idx & 1
        idx = idx >> 1
    return np.diag(weight.astype(np.complex128))


def block_profile(n: int) -> List[int]:
    """Eigenspace sizes of the weight Hamiltonian: [C(N,0), ..., C(N,N)]."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return [math.comb(n, i) for i in range(n + 1)]


def weight_sort_permutation(n: int) -> np.ndarray:
    """Index order sorting basis states by Hamming weight (stable), i.e. the
    basis change that brings weight-commuting operators to block form."""
    dim = 1 << n
    weights = [bin(i).count("1") for i in range(dim)]
    return np.argsort(weights, kind="stable")


def is_block_diagonal(a: np.ndarray, profile: Sequence[int], tol: float) -> bool:
    """True when all entries outside the given diagonal blocks are <= tol."""
    total = sum(profile)
    if a.shape != (total, total):
        raise ValueError(f"profile sums to {total} but matrix is {a.shape}")
    mask = np.ones_like(a, dtype=bool)
    start = 0
    for size in profile:
        mask[start:start + size, start:start + size] = False
        start += size
    if not mask.any():
        return True
    return float(np.max(np.abs(a[mask]))) <= tol


def _expm_skew_hermitian(a: np.ndarray) -> np.ndarray:
    # a = iH with H Hermitian, so exponentiate by unitary eigendecomposition.
    h = -1j * a
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def exp_membership_check(a: np.ndarray, generators: Sequence[np.ndarray],
                         tol: float = 1e-9) -> bool:
    """Check that exp maps an invariant-algebra element into the invariant
    unitary group: exp(a) must be unitary, have determinant one, and commute
    with every generator.

    Preconditions (violations raise): a is skew-Hermitian, traceless, and
    commutes with the generators to `tol` relative to the operand norms.
    """
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.linalg.norm(a + a.conj().T) > tol * scale:
        raise ValueError("input is not skew-Hermitian")
    if abs(np.trace(a)) > tol * scale:
        raise ValueError("input is not traceless")
    for b in generators:
        bound = tol * max(1.0, float(np.linalg.norm(a)) * float(np.linalg.norm(b)))
        if np.linalg.norm(a @ b - b @ a) > bound:
            raise ValueError("input does not commute with the generators")

    u = _expm_skew_hermitian(a)
    dim = a.shape[0]
    if np.linalg.norm(u @ u.conj().T - np.eye(dim)) > tol * dim:
        return False
    if abs(np.linalg.det(u) - 1.0) > tol * dim:
        return False
    for b in generators:
        bound = tol * max(1.0, float(np.linalg.norm(u)) * float(np.linalg.norm(b)))
        if np.linalg.norm(u @ b - b @ u) > bound:
            return False
    return True
