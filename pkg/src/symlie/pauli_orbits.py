"""Pauli strings, their dense matrices, and symmetrized orbit bases.

A Pauli string is a length-N word over {0, 1, 2, 3} indexing the matrix
sigma_{d1} (x) ... (x) sigma_{dN} under the Kronecker convention (qubit 0 is
the leftmost factor / most significant bit).  The invariant subalgebra for a
permutation group has one basis element per orbit of strings: the sum of the
orbit's matrices, multiplied by i to make it skew-Hermitian.  Orbits are
stored as plain digit tuples so that dimension counting never needs 2^N
memory; dense matrices are built on demand and capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .combinatorics import group_order
from .errors import MatrixSizeCapExceeded, OrderCapExceeded
from .permutation_rep import (
    DEFAULT_MATRIX_CAP,
    DEFAULT_ORDER_CAP,
    DEFAULT_SPACE_CAP,
    AnySpec,
    orbit_canonical_labels,
)

__all__ = [
    "SIGMA",
    "PauliString",
    "OrbitBasisElement",
    "pauli_string_from_str",
    "pauli_string_to_str",
    "pauli_matrix",
    "enumerate_invariant_basis",
    "symmetrized_generator",
    "orbit_to_json",
    "orbit_from_json",
]

PauliString = Tuple[int, ...]

SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _validate(s: PauliString) -> None:
    if len(s) < 1 or any(d not in (0, 1, 2, 3) for d in s):
        raise ValueError(f"not a Pauli string: {s!r}")


def pauli_string_from_str(text: str) -> PauliString:
    """Decode the external digit-string format, e.g. "0312"."""
    s = tuple(int(c) for c in text)
    _validate(s)
    return s


def pauli_string_to_str(s: PauliString) -> str:
    return "".join(str(d) for d in s)


def pauli_action(s: PauliString) -> Tuple[np.ndarray, np.ndarray]:
    """Column form of the string's matrix: column c has its single nonzero
    entry at row ``rows[c]`` with value ``vals[c]``.

    sigma_1/sigma_2 flip their bit; sigma_2 contributes a phase i*(-1)^bit
    and sigma_3 a phase (-1)^bit.
    """
    _validate(s)
    n = len(s)
    xmask = sum(1 << (n - 1 - j) for j, d in enumerate(s) if d in (1, 2))
    phasemask = sum(1 << (n - 1 - j) for j, d in enumerate(s) if d in (2, 3))
    n_y = sum(1 for d in s if d == 2)
    cols = np.arange(1 << n, dtype=np.int64)
    rows = cols ^ xmask
    parity = np.zeros(1 << n, dtype=np.int64)
    masked = cols & phasemask
    while np.any(masked):
        parity ^= masked & 1
        masked >>= 1
    vals = (1j**n_y) * np.where(parity, -1.0, 1.0)
    return rows, vals.astype(np.complex128)


def pauli_matrix(s: PauliString, matrix_cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Dense 2^N x 2^N matrix of the string (without the i prefactor)."""
    _validate(s)
    dim = 1 << len(s)
    if dim > matrix_cap:
        raise MatrixSizeCapExceeded(dim, matrix_cap)
    rows, vals = pauli_action(s)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[rows, np.arange(dim)] = vals
    return m


@dataclass(frozen=True)
class OrbitBasisElement:
    """One orbit of Pauli strings: the formal basis element of the invariant
    subalgebra it generates."""

    representative: PauliString
    members: Tuple[PauliString, ...]

    def __post_init__(self):
        if self.representative != min(self.members):
            raise ValueError("representative must be the lexicographic minimum")
        if len(set(self.members)) != len(self.members):
            raise ValueError("orbit members must be distinct")

    @property
    def weight(self) -> int:
        return len(self.members)


def _index_to_string(index: int, n: int) -> PauliString:
    digits = []
    for j in range(n - 1, -1, -1):
        digits.append((index >> (2 * j)) & 3)
    return tuple(digits)


def enumerate_invariant_basis(spec: AnySpec,
                              space_cap: int = DEFAULT_SPACE_CAP,
                              order_cap: int = DEFAULT_ORDER_CAP) -> List[OrbitBasisElement]:
    """All orbits of nonzero Pauli strings, sorted by representative.

    The orbits partition {0..3}^N minus the all-identity word, so the list
    length is exactly the invariant-subalgebra dimension.
    """
    order = group_order(spec)
    if order > order_cap:
        raise OrderCapExceeded(order, order_cap)
    n = spec.degree
    labels = orbit_canonical_labels(spec, 4, space_cap)
    grouped: Dict[int, List[int]] = {}
    for index, label in enumerate(labels):
        grouped.setdefault(int(label), []).append(index)
    basis = []
    for rep in sorted(grouped):
        if rep == 0:
            continue  # the all-identity word is not an algebra element
        members = tuple(_index_to_string(i, n) for i in grouped[rep])
        basis.append(OrbitBasisElement(_index_to_string(rep, n), members))
    return basis


def symmetrized_generator(element: OrbitBasisElement,
                          matrix_cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """i times the unnormalized sum of the orbit's matrices: skew-Hermitian,
    traceless, and commuting with every group representation matrix.

    Coefficients are 1 per member; rescaling would not change the span.
    """
    total = pauli_matrix(element.members[0], matrix_cap)
    for s in element.members[1:]:
        total += pauli_matrix(s, matrix_cap)
    return 1j * total


def orbit_to_json(element: OrbitBasisElement) -> dict:
    return {
        "representative": pauli_string_to_str(element.representative),
        "weight": element.weight,
        "members": [pauli_string_to_str(m) for m in element.members],
    }


def orbit_from_json(data: dict) -> OrbitBasisElement:
    return OrbitBasisElement(
        representative=pauli_string_from_str(data["representative"]),
        members=tuple(pauli_string_from_str(m) for m in data["members"]),
    )
