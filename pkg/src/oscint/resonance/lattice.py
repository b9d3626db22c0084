"""Integer lattices (Z-modules) spanned by resonant combination vectors."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ValidationError
from .combinations import IntVector


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form with exact integer arithmetic.

    Rows are in echelon form, every pivot is positive and the entries
    above a pivot lie in [0, pivot). Zero rows are dropped.
    """
    A = [[int(v) for v in row] for row in rows]
    if not A:
        return []
    n_cols = len(A[0])
    if any(len(row) != n_cols for row in A):
        raise ValidationError("Generator vectors must all have the same length")

    r = 0
    for c in range(n_cols):
        if r == len(A):
            break
        while True:
            nonzero = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: abs(A[i][c]))
            A[r], A[pivot] = A[pivot], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r] if any(row)]


@dataclass(frozen=True)
class ResonanceModule:
    """Z-module with a Hermite-normal-form basis."""
    basis: Tuple[IntVector, ...]
    ell: int
    generators: Tuple[IntVector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return not self.basis

    def matrix(self) -> np.ndarray:
        """Basis as a (rank x ell) float matrix."""
        if not self.basis:
            return np.zeros((0, self.ell))
        return np.asarray(self.basis, dtype=np.float64)

    def __contains__(self, k: Sequence[int]) -> bool:
        return in_module(k, self)


def module_basis(generators: Sequence[Sequence[int]], ell: Optional[int] = None) -> ResonanceModule:
    """Hermite-normal-form basis of the lattice spanned by ``generators``.

    Args:
        generators: Integer vectors (possibly none)
        ell: Vector length; required when ``generators`` is empty

    Returns:
        ResonanceModule whose basis rows generate the same lattice
    """
    gens = tuple(tuple(int(v) for v in g) for g in generators)
    if ell is None:
        if not gens:
            raise ValidationError("ell is required for an empty generator set")
        ell = len(gens[0])
    if any(len(g) != ell for g in gens):
        raise ValidationError(f"Generators must have length {ell}")
    basis = tuple(tuple(row) for row in hermite_normal_form(gens))
    return ResonanceModule(basis=basis, ell=ell, generators=gens)


def in_module(k: Sequence[int], module: ResonanceModule) -> bool:
    """True iff k is an integer combination of the basis rows."""
    v = [int(x) for x in k]
    if len(v) != module.ell:
        raise ValidationError(f"Vector of length {len(v)} does not match module of length {module.ell}")
    for row in module.basis:
        c = next(i for i, a in enumerate(row) if a != 0)
        if any(v[:c]):
            return False
        if v[c] % row[c] != 0:
            return False
        q = v[c] // row[c]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)
