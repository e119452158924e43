"""Permutation groups as explicit element sets and their action on qubits.

A permutation is a tuple of images: ``p[i]`` is where symbol ``i`` goes.
Products compose left to right, ``compose(p, q)`` means "apply p, then q";
with this convention the qubit-space representation is a homomorphism,
``U_{pq} = U_p U_q``.

The action on index tuples is ``apply_to_tuple(p, t)[j] = t[p[j]]``; on the
2^N-dimensional state space the same permutation acts as a 0/1 matrix that
permutes bit strings, with qubit 0 mapped to the most significant bit (the
usual Kronecker-product ordering).  Conjugating a Pauli word's matrix by
U_p gives the matrix of the permuted word, which is the property tying the
two actions together (and the property the tests pin down).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .combinatorics import Family, GroupSpec, ProductGroupSpec, group_order
from .errors import MatrixSizeCapExceeded, OrderCapExceeded, StateSpaceCapExceeded

__all__ = [
    "Permutation",
    "GroupElements",
    "identity",
    "compose",
    "inverse",
    "apply_to_tuple",
    "enumerate_elements",
    "group_generators",
    "orbit_canonical_labels",
    "count_orbits_bruteforce",
    "qubit_index_permutation",
    "qubit_permutation_matrix",
]

Permutation = Tuple[int, ...]
AnySpec = Union[GroupSpec, ProductGroupSpec]

DEFAULT_ORDER_CAP = 10**6
DEFAULT_SPACE_CAP = 4**12
DEFAULT_MATRIX_CAP = 2**12


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: apply p first, then q."""
    return tuple(q[p[j]] for j in range(len(p)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, img in enumerate(p):
        inv[img] = i
    return tuple(inv)


def sign(p: Permutation) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def apply_to_tuple(p: Permutation, t: Tuple[int, ...]) -> Tuple[int, ...]:
    """Permute an index tuple: output position j holds t[p[j]]."""
    if len(p) != len(t):
        raise ValueError(f"permutation degree {len(p)} != tuple length {len(t)}")
    return tuple(t[p[j]] for j in range(len(p)))


def _cycle(n: int, points: Sequence[int]) -> Permutation:
    p = list(range(n))
    for a, b in zip(points, points[1:]):
        p[a] = b
    p[points[-1]] = points[0]
    return tuple(p)


def _rotation(n: int) -> Permutation:
    return tuple((i + 1) % n for i in range(n))


def _reversal(n: int) -> Permutation:
    return tuple(n - 1 - i for i in range(n))


def _embed(p: Permutation, offset: int, total: int) -> Permutation:
    out = list(range(total))
    for i, img in enumerate(p):
        out[offset + i] = offset + img
    return tuple(out)


def group_generators(spec: AnySpec) -> List[Permutation]:
    """A small generating set for the group (empty for trivial groups).

    Alternating groups use a chain of overlapping 3-cycles: (0 1 2),
    (2 3 4), ... plus a final (N-3 N-2 N-1) when N is even, so that the
    supports cover all points.  For N = 4 and 5 this is exactly two
    3-cycles.
    """
    if isinstance(spec, ProductGroupSpec):
        total = spec.degree
        gens: List[Permutation] = []
        offset = 0
        for part in spec.parts:
            gens.extend(_embed(g, offset, total) for g in group_generators(part))
            offset += part.size
        return gens

    n = spec.size
    if spec.family is Family.SYMMETRIC:
        if n == 1:
            return []
        if n == 2:
            return [(1, 0)]
        return [_cycle(n, (0, 1)), _rotation(n)]
    if spec.family is Family.ALTERNATING:
        if n <= 2:
            return []
        if n == 3:
            return [_cycle(3, (0, 1, 2))]
        gens = [_cycle(n, (i, i + 1, i + 2)) for i in range(0, n - 2, 2)]
        if n % 2 == 0:
            gens.append(_cycle(n, (n - 3, n - 2, n - 1)))
        return gens
    if spec.family is Family.DIHEDRAL:
        if n == 1:
            return []
        if n == 2:
            return [(1, 0)]
        return [_rotation(n), _reversal(n)]
    if spec.family is Family.CYCLIC:
        return [] if n == 1 else [_rotation(n)]
    return []


@dataclass(frozen=True)
class GroupElements:
    """A fully enumerated permutation group."""

    spec: AnySpec
    elements: Tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def enumerate_elements(spec: AnySpec, order_cap: int = DEFAULT_ORDER_CAP) -> GroupElements:
    """List every group element, refusing groups larger than `order_cap`."""
    order = group_order(spec)
    if order > order_cap:
        raise OrderCapExceeded(order, order_cap)

    if isinstance(spec, ProductGroupSpec):
        total = spec.degree
        factors = []
        offset = 0
        for part in spec.parts:
            part_elems = enumerate_elements(part, order_cap).elements
            factors.append([_embed(p, offset, total) for p in part_elems])
            offset += part.size
        elements = []
        for combo in itertools.product(*factors):
            p = combo[0]
            for q in combo[1:]:
                p = compose(p, q)
            elements.append(p)
        return GroupElements(spec, tuple(sorted(elements)))

    n = spec.size
    if spec.family is Family.SYMMETRIC:
        elems: Iterable[Permutation] = itertools.permutations(range(n))
    elif spec.family is Family.ALTERNATING:
        elems = (p for p in itertools.permutations(range(n)) if sign(p) == 1)
    elif spec.family is Family.DIHEDRAL:
        rotations = {tuple((i + k) % n for i in range(n)) for k in range(n)}
        reflections = {tuple((k - i) % n for i in range(n)) for k in range(n)}
        elems = rotations | reflections
    elif spec.family is Family.CYCLIC:
        elems = (tuple((i + k) % n for i in range(n)) for k in range(n))
    else:
        elems = [identity(n)]
    result = GroupElements(spec, tuple(sorted(elems)))
    assert result.order == order
    return result


def _index_action(p: Permutation, k: int) -> np.ndarray:
    """The action of apply_to_tuple on base-k encoded tuples.

    Tuples are encoded most-significant-digit first, so integer order on
    indices is lexicographic order on tuples.
    """
    n = len(p)
    idx = np.arange(k**n, dtype=np.int64)
    out = np.zeros_like(idx)
    for j in range(n):
        digit = (idx // k ** (n - 1 - p[j])) % k
        out += digit * k ** (n - 1 - j)
    return out


def orbit_canonical_labels(spec: AnySpec, alphabet: int = 4,
                           space_cap: int = DEFAULT_SPACE_CAP) -> np.ndarray:
    """Scan all alphabet^N tuples and label each with its orbit's lexicographic
    minimum.

    Labels are propagated along generator edges until a fixed point, which
    avoids enumerating group elements; a tuple is an orbit representative
    exactly when its label equals its own index.
    """
    n = spec.degree
    size = alphabet**n
    if size > space_cap:
        raise StateSpaceCapExceeded(size, space_cap)
    maps = []
    seen = set()
    for g in group_generators(spec):
        for q in (g, inverse(g)):
            if q not in seen and q != identity(n):
                seen.add(q)
                maps.append(_index_action(q, alphabet))
    labels = np.arange(size, dtype=np.int64)
    if not maps:
        return labels
    while True:
        before = labels.copy()
        for m in maps:
            np.minimum(labels, labels[m], out=labels)
        if np.array_equal(labels, before):
            return labels


def count_orbits_bruteforce(spec: AnySpec, alphabet: int = 4,
                            space_cap: int = DEFAULT_SPACE_CAP) -> int:
    """Number of orbits of {0..k-1}^N under the group, by exhaustive scan.

    Independent of the cycle-index route: only the generators' action on
    tuples is used, never Burnside averaging.
    """
    labels = orbit_canonical_labels(spec, alphabet, space_cap)
    return int(np.count_nonzero(labels == np.arange(labels.size, dtype=np.int64)))


def qubit_index_permutation(p: Permutation) -> np.ndarray:
    """The bit-string permutation realized on basis states: U_p e_c = e_{out[c]}.

    Bit j of out[c] is bit p[j] of c, with qubit 0 the most significant bit.
    """
    n = len(p)
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(idx)
    for j in range(n):
        bit = (idx >> (n - 1 - p[j])) & 1
        out |= bit << (n - 1 - j)
    return out


def qubit_permutation_matrix(p: Permutation, matrix_cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """The unique 0/1 unitary permuting qubits: built as a bit permutation on
    row indices, never by assembling Kronecker factors."""
    dim = 1 << len(p)
    if dim > matrix_cap:
        raise MatrixSizeCapExceeded(dim, matrix_cap)
    rows = qubit_index_permutation(p)
    u = np.zeros((dim, dim), dtype=np.complex128)
    u[rows, np.arange(dim)] = 1.0
    return u
