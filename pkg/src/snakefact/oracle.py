"""Moment-based ground truth, independent of the Givens factorization.

Everything here is computed from trigonometric moments of a probability
measure on the unit circle: inner products of Laurent polynomials, explicit
Gram-Schmidt orthogonalization of an ordered monomial sequence, recovery of
the Schur parameters, and entries of the multiplication operator as plain
inner products.  None of it touches Givens factors or the closed-form entry
rule, which is what makes it usable as an oracle for them.

Moment convention
-----------------
mu_j := <z^j, 1> = integral of conj(e^{i j theta}) d mu(theta), for
j in [-jmax, jmax].  Consequently the integral of z^j against the measure is
mu_{-j} = conj(mu_j), and the inner product of Laurent polynomials
f = sum_a f_a z^a and g = sum_b g_b z^b is

    <f, g> = sum_{a,b} conj(f_a) g_b mu_{a-b},

conjugate-linear in the first argument.  Laurent polynomials are passed
around as plain mappings {exponent: coefficient}.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import toeplitz

from .errors import ConvergenceError, MomentError, NumericalError
from .schur import SchurSequence, evaluate_phi
from .snake import GeneratingSequence, hessenberg_shape

__all__ = [
    "Lebesgue",
    "BernsteinSzego",
    "Geronimus",
    "GridMeasure",
    "MomentTable",
    "moments",
    "inner_product",
    "gram_schmidt_laurent",
    "schur_from_moments",
    "matrix_entry_oracle",
    "multiplication_matrix",
]

# Non-decaying Schur prefixes push polynomial zeros within ~1e-5 of the
# circle, so the density can need a few million points before the trapezoid
# rule certifies; the doubling ladder makes the wasted coarse grids cheap.
_GRID_START = 4096
_GRID_MAX = 1 << 22
_GRID_TOL = 1e-11


class Lebesgue:
    """Normalized arc length d theta / (2 pi); all Schur parameters vanish."""

    def __repr__(self) -> str:
        return "Lebesgue()"


class BernsteinSzego:
    """Measure with density 1 / (2 pi |phi_m(e^{i theta})|^2).

    phi_m is the orthonormal Szego polynomial of the prefix, so the Schur
    parameters of the measure are the prefix followed by zeros.  The density
    integrates to one exactly.
    """

    def __init__(self, prefix):
        self.prefix = prefix if isinstance(prefix, SchurSequence) else SchurSequence(prefix)

    def density(self, thetas: np.ndarray) -> np.ndarray:
        z = np.exp(1j * np.asarray(thetas, dtype=float))
        phi, _ = evaluate_phi(self.prefix, len(self.prefix), z)
        return 1.0 / (2.0 * np.pi * np.abs(phi) ** 2)

    def __repr__(self) -> str:
        return f"BernsteinSzego({list(self.prefix.alphas)!r})"


class Geronimus:
    """Measure whose Schur parameters are the constant sequence a, |a| < 1.

    Realized through long Bernstein-Szego prefixes [a, a, ...] at moment
    construction time: a prefix of length jmax + 1 pins every parameter a
    moment table of range jmax can resolve, which is all this desk-scale
    oracle needs.
    """

    def __init__(self, a: complex):
        a = complex(a)
        if abs(a) >= 1.0:
            raise ValueError(f"|a| = {abs(a):.6g} must be < 1")
        self.a = a

    def __repr__(self) -> str:
        return f"Geronimus({self.a!r})"


class GridMeasure:
    """Discrete measure sum_i w_i delta(theta - theta_i) on the circle."""

    def __init__(self, thetas, weights):
        thetas = np.asarray(thetas, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if thetas.shape != weights.shape or thetas.ndim != 1:
            raise ValueError("thetas and weights must be 1-d arrays of equal length")
        if np.any(weights <= 0.0):
            raise ValueError("grid weights must be strictly positive")
        if np.any(thetas < -np.pi) or np.any(thetas >= np.pi):
            raise ValueError("grid angles must lie in [-pi, pi)")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"grid mass {weights.sum()!r} != 1; normalize the weights")
        self.thetas = thetas
        self.weights = weights

    def __repr__(self) -> str:
        return f"GridMeasure({len(self.thetas)} points)"


class MomentTable:
    """Moments mu_j for |j| <= jmax of a probability measure on the circle.

    Constructed from the values for j >= 0; negative indices are filled by
    conjugation, so conjugate symmetry holds exactly and mu_0 is pinned to 1.
    Construction verifies positive definiteness of the Toeplitz matrix
    (mu_{i-j}) by attempting a Cholesky factorization.
    """

    def __init__(self, nonnegative_values):
        vals = np.asarray(nonnegative_values, dtype=complex)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("need moments for j = 0..jmax as a 1-d array")
        if abs(vals[0] - 1.0) > 1e-12:
            raise MomentError(f"mu_0 = {vals[0]!r} but the measure must have mass 1")
        self.jmax = vals.size - 1
        vals = vals.copy()
        vals[0] = 1.0
        self._mu = np.concatenate((np.conj(vals[:0:-1]), vals))
        gram = toeplitz(vals, np.conj(vals))  # gram[i, j] = mu_{i-j}
        try:
            np.linalg.cholesky(gram)
        except np.linalg.LinAlgError as exc:
            raise MomentError(
                "moment Toeplitz matrix is not positive definite; "
                "the values do not come from a positive measure at this range"
            ) from exc

    def mu(self, j: int) -> complex:
        if abs(j) > self.jmax:
            raise MomentError(f"moment {j} outside the stored range +-{self.jmax}")
        return complex(self._mu[self.jmax + j])

    def __repr__(self) -> str:
        return f"MomentTable(jmax={self.jmax})"


def _grid_moments(density, jmax: int, npoints: int) -> np.ndarray:
    # Uniform trapezoid rule over a full period; for these smooth periodic
    # densities it converges geometrically in npoints.
    thetas = 2.0 * np.pi * np.arange(npoints) / npoints
    w = density(thetas)
    return (2.0 * np.pi / npoints) * np.fft.rfft(w)[: jmax + 1]


def _refined_moments(density, jmax: int) -> np.ndarray:
    npoints = _GRID_START
    prev = _grid_moments(density, jmax, npoints)
    while npoints <= _GRID_MAX:
        npoints *= 2
        cur = _grid_moments(density, jmax, npoints)
        if np.max(np.abs(cur - prev)) <= _GRID_TOL:
            mass = cur[0].real
            if abs(mass - 1.0) > 1e-8:
                raise NumericalError(f"density integrates to {mass!r}, not 1")
            return cur / mass
        prev = cur
    raise ConvergenceError(
        f"moment integration did not stabilize to {_GRID_TOL:g} "
        f"within {_GRID_MAX} grid points"
    )


def moments(measure, jmax: int) -> MomentTable:
    """Trigonometric moments mu_0 .. mu_jmax of a measure, as a MomentTable.

    Lebesgue and grid measures are summed exactly; the analytic families are
    integrated on uniform theta grids of at least 4096 points, doubling until
    two successive refinements agree to 1e-11.
    """
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    if isinstance(measure, Lebesgue):
        vals = np.zeros(jmax + 1, dtype=complex)
        vals[0] = 1.0
    elif isinstance(measure, GridMeasure):
        js = np.arange(jmax + 1)
        vals = np.exp(-1j * np.outer(js, measure.thetas)) @ measure.weights
    elif isinstance(measure, Geronimus):
        prefix = SchurSequence([measure.a] * (jmax + 1))
        vals = _refined_moments(BernsteinSzego(prefix).density, jmax)
    elif isinstance(measure, BernsteinSzego):
        vals = _refined_moments(measure.density, jmax)
    else:
        raise TypeError(f"unsupported measure {measure!r}")
    return MomentTable(vals)


def inner_product(table: MomentTable, f, g) -> complex:
    """<f, g> = sum conj(f_a) g_b mu_{a-b} for Laurent coefficient mappings."""
    if not f or not g:
        return 0j
    span = max(max(f) - min(g), max(g) - min(f))
    if span > table.jmax:
        raise MomentError(
            f"inner product needs moments up to |j| = {span}, table has {table.jmax}"
        )
    acc = 0j
    for a, fa in f.items():
        ca = np.conj(fa)
        for b, gb in g.items():
            acc += ca * gb * table.mu(a - b)
    return complex(acc)


def _shift(f, k: int):
    """Coefficients of z^k * f."""
    return {e + k: c for e, c in f.items()}


def _ordered_exponent(gen: GeneratingSequence, n: int) -> int:
    """Exponent of the monomial that enters the ordering at position n."""
    if n == 0:
        return 0
    return -gen.p[n] if gen.s(n) == 1 else n - gen.p[n]


def _gram_schmidt(table: MomentTable, gen: GeneratingSequence, n: int):
    # Classical Gram-Schmidt with one reorthogonalization pass; a single
    # pass loses orthogonality at the conditioning these measures reach.
    basis: list[dict] = []
    for k in range(n + 1):
        exp_k = _ordered_exponent(gen, k)
        v = {exp_k: 1.0 + 0.0j}
        for _ in range(2):
            for psi in basis:
                c = inner_product(table, psi, v)
                for e, ce in psi.items():
                    v[e] = v.get(e, 0j) - c * ce
        norm_sq = inner_product(table, v, v).real
        if norm_sq <= 1e-24:
            raise NumericalError(
                f"Gram matrix numerically singular at step {k}; "
                "the measure or grid is too ill-conditioned for this degree"
            )
        scale = 1.0 / math.sqrt(norm_sq)
        lead = v[exp_k] * scale
        phase = np.conj(lead) / abs(lead)
        v = {e: c * scale * phase for e, c in v.items()}
        basis.append(v)
    return basis


def gram_schmidt_laurent(table: MomentTable, gen: GeneratingSequence, n: int):
    """Orthonormal Laurent polynomials psi_0 .. psi_n for the given ordering.

    Each psi_k is returned as a coefficient mapping, normalized so that the
    coefficient of the monomial that is new at position k is real positive.
    Requires the conservative moment range jmax >= 2 max(p_n, n - p_n) + 2.
    """
    if n > len(gen):
        raise ValueError(f"index {n} exceeds the {len(gen)} stored shape bits")
    needed = 2 * max(gen.p[n], n - gen.p[n]) + 2
    if table.jmax < needed:
        raise MomentError(f"need jmax >= {needed} for degree {n}, table has {table.jmax}")
    return _gram_schmidt(table, gen, n)


def schur_from_moments(table: MomentTable, n: int) -> SchurSequence:
    """Recover alpha_0 .. alpha_{n-1} from moments alone.

    Runs Gram-Schmidt on 1, z, z^2, ... and reads each parameter off the
    constant and leading coefficients of the resulting Szego polynomials:
    with kappa_k the (real positive) leading coefficient, the recursion
    forces conj(alpha_k) = -rho_k phi_{k+1}(0) / kappa_k, and eliminating
    rho_k = kappa_k / kappa_{k+1} gives alpha_k = -conj(phi_{k+1}(0)) / kappa_{k+1}.
    """
    if n < 1:
        raise ValueError("need n >= 1 to recover at least one parameter")
    if table.jmax < n + 1:
        raise MomentError(f"need jmax >= {n + 1}, table has {table.jmax}")
    basis = _gram_schmidt(table, hessenberg_shape(n), n)
    alphas = []
    for k in range(n):
        phi_next = basis[k + 1]
        kappa = phi_next[k + 1].real
        alphas.append(-np.conj(phi_next.get(0, 0j)) / kappa)
    return SchurSequence(alphas)


def matrix_entry_oracle(table: MomentTable, gen: GeneratingSequence, i: int, j: int) -> complex:
    """Entry <psi_i, z psi_j> of the multiplication operator, from moments only."""
    deg = max(i, j)
    if table.jmax < deg + 1:
        raise MomentError(f"need jmax >= {deg + 1}, table has {table.jmax}")
    basis = _gram_schmidt(table, gen, deg)
    return inner_product(table, basis[i], _shift(basis[j], 1))


def multiplication_matrix(table: MomentTable, gen: GeneratingSequence, n: int) -> np.ndarray:
    """Dense n x n matrix of <psi_i, z psi_j>, sharing one Gram-Schmidt run."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    if table.jmax < n:
        raise MomentError(f"need jmax >= {n}, table has {table.jmax}")
    basis = _gram_schmidt(table, gen, n - 1)
    shifted = [_shift(psi, 1) for psi in basis]
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = inner_product(table, basis[i], shifted[j])
    return out
