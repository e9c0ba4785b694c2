"""Generating sequences and snake-shaped Givens factorizations.

A generating sequence is a bit string s_1 .. s_m with partial sums
p_n = s_1 + ... + s_n; it fixes the order in which the monomials z^j are
orthogonalized (s_n = 1 means the nth monomial has a negative exponent).
The multiplication-by-z operator in the resulting orthonormal Laurent basis
is an ordered product of Givens factors G_{0,1} G_{1,2} ...: factor 0 starts
the right-hand product, and each subsequent factor k is multiplied onto the
running product from the right when s_k = 0 and from the left when s_k = 1.
The all-zeros sequence gives the unitary Hessenberg factorization, the
alternating sequence the five-diagonal (CMV) one.

A snake is stored as the pair (Schur sequence, generating sequence) plus the
derived multiplication order; canonical Givens blocks are regenerated on
demand so the parameters and the blocks can never drift apart.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ShapeError
from .schur import SchurSequence

__all__ = [
    "GeneratingSequence",
    "GivensFactor",
    "SnakeFactorization",
    "hessenberg_shape",
    "cmv_shape",
    "shape_from_monomials",
    "materialize_window",
]


class GeneratingSequence:
    """Order bits s_1 .. s_m plus the prefix counts p_0 .. p_m.

    p_0 = 0 and p_n - p_{n-1} = s_n, so 0 <= p_n <= n and both p_n and
    n - p_n are non-decreasing by construction.
    """

    def __init__(self, bits):
        bits = tuple(int(b) for b in bits)
        for n, b in enumerate(bits, start=1):
            if b not in (0, 1):
                raise ShapeError(f"shape bit s_{n} = {b}; bits must be 0 or 1")
        self.bits = bits
        self.p = tuple(itertools.accumulate(bits, initial=0))

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratingSequence) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"GeneratingSequence({list(self.bits)!r})"

    def s(self, n: int) -> int:
        """Bit s_n for 1 <= n <= m."""
        if not 1 <= n <= len(self.bits):
            raise IndexError(f"s_{n} undefined; stored bits cover 1..{len(self.bits)}")
        return self.bits[n - 1]


def hessenberg_shape(m: int) -> GeneratingSequence:
    """All monomials of positive power: the unitary Hessenberg ordering."""
    if m < 1:
        raise ShapeError("shape length must be at least 1")
    return GeneratingSequence((0,) * m)


def cmv_shape(m: int) -> GeneratingSequence:
    """Alternating positive and negative powers: the five-diagonal ordering."""
    if m < 1:
        raise ShapeError("shape length must be at least 1")
    return GeneratingSequence(tuple((k + 1) % 2 for k in range(1, m + 1)))


def shape_from_monomials(exponents) -> GeneratingSequence:
    """Generating sequence for an explicit monomial order z^{r_0}, z^{r_1}, ...

    The order must start at r_0 = 0 and every prefix {r_0, ..., r_n} must be
    a contiguous integer range, i.e. each new exponent extends the covered
    range by exactly one on either end.  s_n = 1 exactly when r_n < 0.
    """
    exps = [int(r) for r in exponents]
    if not exps:
        raise ShapeError("empty monomial order")
    if exps[0] != 0:
        raise ShapeError(f"monomial order must start with exponent 0, got {exps[0]}")
    lo = hi = 0
    bits = []
    for n, r in enumerate(exps[1:], start=1):
        if r == lo - 1:
            lo = r
            bits.append(1)
        elif r == hi + 1:
            hi = r
            bits.append(0)
        else:
            seen = "{" + ",".join(str(e) for e in exps[: n + 1]) + "}"
            raise ShapeError(
                f"prefix {seen} is not a contiguous range "
                f"(exponent {r} at index {n} does not extend [{lo},{hi}] by one)"
            )
    return GeneratingSequence(bits)


class GivensFactor:
    """Unitary transformation acting only on rows/columns (k, k+1).

    The canonical block built from a Schur parameter is
    [[conj(alpha_k), rho_k], [rho_k, -alpha_k]] with real positive
    off-diagonal entries and determinant -1.  Blocks that deviate from this
    form (phase-absorbed blocks used by truncations) carry canonical=False.
    """

    def __init__(self, k: int, block, canonical: bool = False):
        if k < 0:
            raise ValueError("factor index must be nonnegative")
        block = np.asarray(block, dtype=complex)
        if block.shape != (2, 2):
            raise ValueError("a Givens block is a 2x2 matrix")
        defect = np.max(np.abs(block @ block.conj().T - np.eye(2)))
        if defect > 1e-14:
            raise ValueError(f"block is not unitary (defect {defect:.3e})")
        self.k = k
        self.block = block
        self.canonical = canonical

    @classmethod
    def from_schur(cls, k: int, alpha: complex) -> "GivensFactor":
        alpha = complex(alpha)
        rho = np.sqrt(1.0 - abs(alpha) ** 2)
        block = np.array([[np.conj(alpha), rho], [rho, -alpha]], dtype=complex)
        return cls(k, block, canonical=True)

    def __repr__(self) -> str:
        tag = "canonical" if self.canonical else "modified"
        return f"GivensFactor(k={self.k}, {tag})"


def _apply_left(matrix: np.ndarray, k: int, block: np.ndarray) -> None:
    """matrix <- G_{k,k+1} @ matrix, updating rows k and k+1 in place."""
    matrix[k : k + 2, :] = block @ matrix[k : k + 2, :]


def _apply_right(matrix: np.ndarray, k: int, block: np.ndarray) -> None:
    """matrix <- matrix @ G_{k,k+1}, updating columns k and k+1 in place."""
    matrix[:, k : k + 2] = matrix[:, k : k + 2] @ block


class SnakeFactorization:
    """Ordered product of canonical Givens factors G_{0,1} .. G_{m,m+1}.

    The generating sequence supplies bits s_1 .. s_m and the Schur sequence
    must supply exactly the m + 1 parameters alpha_0 .. alpha_m; length
    mismatches are rejected rather than padded.  ``left_order`` and
    ``right_order`` list the factor indices of the two half-products in
    multiplication order (leftmost factor first), with factor 0 starting the
    right-hand product.
    """

    def __init__(self, schur: SchurSequence, gen: GeneratingSequence):
        if len(schur) != len(gen) + 1:
            raise ShapeError(
                f"need exactly m + 1 Schur parameters for m shape bits; "
                f"got {len(schur)} parameters for m = {len(gen)}"
            )
        self.schur = schur
        self.gen = gen
        left: list[int] = []
        right = [0]
        for k in range(1, len(gen) + 1):
            if gen.s(k) == 1:
                left.insert(0, k)
            else:
                right.append(k)
        self.left_order = tuple(left)
        self.right_order = tuple(right)

    @property
    def num_factors(self) -> int:
        return len(self.gen) + 1

    def factor(self, k: int) -> GivensFactor:
        """Canonical factor G_{k,k+1}, regenerated from alpha_k."""
        if not 0 <= k < self.num_factors:
            raise IndexError(f"factor {k} outside 0..{self.num_factors - 1}")
        return GivensFactor.from_schur(k, self.schur.alpha(k))

    def __repr__(self) -> str:
        return (
            f"SnakeFactorization(m={len(self.gen)}, "
            f"left={list(self.left_order)}, right={list(self.right_order)})"
        )


def materialize_window(snake: SnakeFactorization, m: int) -> np.ndarray:
    """Dense (m+2) x (m+2) product of the factors G_{0,1} .. G_{m,m+1}.

    Factors beyond index m act on rows and columns that a window entry (i, j)
    with max(i, j) <= m - 1 never touches, so on that index range the window
    agrees with the doubly infinite product.  Entries on the remaining border
    are truncation artifacts.
    """
    if m >= snake.num_factors:
        raise ShapeError(
            f"window needs factors 0..{m} but only 0..{snake.num_factors - 1} exist"
        )
    size = m + 2
    window = np.eye(size, dtype=complex)
    for k in snake.right_order:
        if k <= m:
            _apply_right(window, k, snake.factor(k).block)
    for k in reversed(snake.left_order):
        if k <= m:
            _apply_left(window, k, snake.factor(k).block)
    return window
