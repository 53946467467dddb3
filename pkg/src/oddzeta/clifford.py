"""Dense real Clifford algebra Cl(d+1) for the spin-cover computations.

Sign convention, fixed and load-bearing: every frame vector squares to +1
(positive-definite metric).  This is the unique choice under which the
closed-form spinor transport (x+x')/rho - (r/rho) X R projects onto the
stated SO(d+1) transport matrix via pi(u)v = u v u^(-1); the spin-cover
test pins it observationally.  With e_i^2 = -1 the same formula projects
onto the inverse rotation.

Blades are indexed by bitmask over the orthonormal frame {X, e_1, ..., e_d}
(bit 0 is X).  Dense storage, fine for d <= 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import NotInvertible

_MAX_DIM = 7


def _reorder_sign(mask_a: int, mask_b: int) -> float:
    """Sign from sorting the concatenated blade into canonical order."""
    a = mask_a >> 1
    swaps = 0
    while a:
        swaps += bin(a & mask_b).count("1")
        a >>= 1
    return -1.0 if swaps & 1 else 1.0


@dataclass(frozen=True)
class CliffordElement:
    """Coefficient vector over the 2^dim blade basis of Cl(dim)."""

    dim: int
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        if not 1 <= self.dim <= _MAX_DIM:
            raise ValueError(f"dim {self.dim} outside 1..{_MAX_DIM}")
        if len(self.coeffs) != 1 << self.dim:
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    # ---- constructors -----------------------------------------------------

    @staticmethod
    def scalar(dim: int, value: float) -> "CliffordElement":
        coeffs = [0.0] * (1 << dim)
        coeffs[0] = value
        return CliffordElement(dim, tuple(coeffs))

    @staticmethod
    def from_vector(components: Sequence[float]) -> "CliffordElement":
        dim = len(components)
        coeffs = [0.0] * (1 << dim)
        for i, v in enumerate(components):
            coeffs[1 << i] = float(v)
        return CliffordElement(dim, tuple(coeffs))

    @staticmethod
    def basis_vector(dim: int, i: int) -> "CliffordElement":
        coeffs = [0.0] * (1 << dim)
        coeffs[1 << i] = 1.0
        return CliffordElement(dim, tuple(coeffs))

    # ---- algebra ----------------------------------------------------------

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        return CliffordElement(
            self.dim, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return CliffordElement(
            self.dim, tuple(x - y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other) -> "CliffordElement":
        if isinstance(other, (int, float)):
            return CliffordElement(self.dim, tuple(c * other for c in self.coeffs))
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = [0.0] * (1 << self.dim)
        for ma, ca in enumerate(self.coeffs):
            if ca == 0.0:
                continue
            for mb, cb in enumerate(other.coeffs):
                if cb == 0.0:
                    continue
                out[ma ^ mb] += _reorder_sign(ma, mb) * ca * cb
        return CliffordElement(self.dim, tuple(out))

    def __rmul__(self, other) -> "CliffordElement":
        return self.__mul__(other)

    def reverse(self) -> "CliffordElement":
        out = list(self.coeffs)
        for mask in range(len(out)):
            k = bin(mask).count("1")
            if (k * (k - 1) // 2) & 1:
                out[mask] = -out[mask]
        return CliffordElement(self.dim, tuple(out))

    def grade(self, k: int) -> "CliffordElement":
        out = [
            c if bin(mask).count("1") == k else 0.0
            for mask, c in enumerate(self.coeffs)
        ]
        return CliffordElement(self.dim, tuple(out))

    def scalar_part(self) -> float:
        return self.coeffs[0]

    def vector_part(self) -> Tuple[float, ...]:
        return tuple(self.coeffs[1 << i] for i in range(self.dim))

    def norm(self) -> float:
        """Euclidean coefficient norm; equals the versor norm in Cl(n, 0)."""
        return math.sqrt(sum(c * c for c in self.coeffs))

    def off_grade_norm(self, k: int) -> float:
        return math.sqrt(sum(
            c * c for mask, c in enumerate(self.coeffs)
            if bin(mask).count("1") != k
        ))

    def inverse(self, tol: float = 1e-10) -> "CliffordElement":
        """Inverse of a versor: reverse / squared norm.

        Raises NotInvertible when self * reverse(self) is not a nonzero
        scalar, i.e. when self is not (numerically) a versor.
        """
        rev = self.reverse()
        prod = self * rev
        n2 = prod.scalar_part()
        if abs(n2) < tol or prod.off_grade_norm(0) > tol * max(1.0, abs(n2)):
            raise NotInvertible("element is not an invertible versor")
        return rev * (1.0 / n2)
