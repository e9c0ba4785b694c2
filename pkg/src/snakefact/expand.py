"""Closed-form entries of a snake-shaped factorization via the path rule.

Drawing the snake as a chain of line segments (segment k for factor
G_{k,k+1}, placed bottom-right of segment k-1 when s_k = 0 and bottom-left
when s_k = 1), the (i, j) entry of the product is read off a path that
enters from the left at height i and leaves to the right at height j.  If
the path fails to move monotonically from left to right the entry is zero.
Otherwise only the two outermost segments, with indices r and t, contribute
one of their block entries each, and every segment strictly between them
contributes its rho; the entry is x_r * (prod of inner rhos) * y_t.  The
computation is O(|i - j| + 1) and allocates nothing proportional to the
path length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .snake import GeneratingSequence, SnakeFactorization

__all__ = ["PathDescriptor", "path", "entry", "bandwidths", "expand_dense"]


@dataclass(frozen=True)
class PathDescriptor:
    """Geometry of the path that determines entry (i, j).

    ``r`` and ``t`` are the indices of the outermost segments on the row and
    column side, ``K`` the (possibly empty) index range of the segments
    strictly between them, and ``b`` the orientation bit: 0 when the path
    climbs from right to left (r > t), 1 when it descends (r < t), None for
    a single-segment path (r = t).
    """

    i: int
    j: int
    r: int
    t: int
    K: range
    b: int | None
    monotone: bool


def path(gen: GeneratingSequence, i: int, j: int) -> PathDescriptor:
    """Path descriptor for entry (i, j) of a snake with the given shape."""
    m = len(gen)
    if not (0 <= i <= m and 0 <= j <= m):
        raise IndexError(f"entry ({i},{j}) outside the range covered by {m} shape bits")
    # The arrow at height i hits segment i first only if that segment sits to
    # the left of segment i-1 (s_i = 1); symmetrically for the column side.
    r = i if (i == 0 or gen.s(i) == 1) else i - 1
    t = j if (j == 0 or gen.s(j) == 0) else j - 1
    if i == j:
        monotone = True
    elif i < j:
        monotone = all(gen.s(k) == 0 for k in range(i + 1, j))
    else:
        monotone = all(gen.s(k) == 1 for k in range(j + 1, i))
    if r > t:
        inner = range(t + 1, r)
        b = 0
    elif r < t:
        inner = range(r + 1, t)
        b = 1
    else:
        inner = range(0)
        b = None
    return PathDescriptor(i=i, j=j, r=r, t=t, K=inner, b=b, monotone=monotone)


def _block_entry(schur, k: int, row: int, col: int) -> complex:
    """Entry (row, col) of the canonical block of factor k."""
    alpha = schur.alpha(k)
    if row == 0:
        return np.conj(alpha) if col == 0 else complex(schur.rho(k))
    return complex(schur.rho(k)) if col == 0 else -alpha


def entry(snake: SnakeFactorization, i: int, j: int) -> complex:
    """Entry (i, j) of the snake product, in closed form."""
    d = path(snake.gen, i, j)
    if not d.monotone:
        return 0j
    schur = snake.schur
    if d.r == d.t:
        return _block_entry(schur, d.r, i - d.r, j - d.t)
    value = _block_entry(schur, d.r, i - d.r, d.b)
    value *= _block_entry(schur, d.t, 1 - d.b, j - d.t)
    for k in d.K:
        value *= schur.rho(k)
    return complex(value)


def _longest_run(bits, value: int) -> int:
    best = cur = 0
    for b in bits:
        cur = cur + 1 if b == value else 0
        best = max(best, cur)
    return best


def bandwidths(gen: GeneratingSequence) -> tuple[int, int]:
    """Structural (lower, upper) bandwidths of the factorization.

    The upper bandwidth is one more than the longest run of consecutive
    zeros among the stored bits and the lower bandwidth one more than the
    longest run of ones.  These count structural nonzeros: an entry within
    the band can still vanish for particular parameter values (alpha_k = 0).
    """
    return 1 + _longest_run(gen.bits, 1), 1 + _longest_run(gen.bits, 0)


def expand_dense(snake: SnakeFactorization, n: int) -> np.ndarray:
    """Dense n x n matrix of closed-form entries."""
    if n - 1 > len(snake.gen):
        raise IndexError(
            f"size {n} needs indices up to {n - 1}; shape covers 0..{len(snake.gen)}"
        )
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = entry(snake, i, j)
    return out
