"""Schur parameters and Szego polynomials on the unit circle.

A probability measure on the unit circle is encoded by its Schur parameters
(also called Verblunsky coefficients): complex numbers alpha_0, alpha_1, ...
strictly inside the open unit disk, with complementary parameters
rho_k = sqrt(1 - |alpha_k|^2) in (0, 1].  The orthonormal Szego polynomials
phi_n and their duals phi_n* obey the coupled recursion

    phi_{n+1}(z)  = (z phi_n(z) - conj(alpha_n) phi_n*(z)) / rho_n,
    phi_{n+1}*(z) = (phi_n*(z) - alpha_n z phi_n(z)) / rho_n,

starting from phi_0 = phi_0* = 1.  The dual of a degree-n polynomial p is
p*(z) = z^n conj(p(1/conj(z))), i.e. the reversed, conjugated coefficient
vector.  Orthonormal Laurent polynomials for a mixed ordering of positive and
negative monomials are power-shifted copies of phi_n or phi_n*; see
``laurent_basis``.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share between threads.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidSchurParameter

__all__ = [
    "SchurSequence",
    "PolynomialPair",
    "dual",
    "szego_step",
    "polynomial_pair",
    "evaluate_phi",
    "laurent_basis",
]


def _rho(alpha: complex) -> float:
    return math.sqrt(1.0 - (alpha.real * alpha.real + alpha.imag * alpha.imag))


class SchurSequence:
    """Validated finite sequence of Schur parameters alpha_0 .. alpha_{m-1}.

    Every parameter must satisfy |alpha_k| < 1 strictly; offending inputs are
    rejected with the index of the first bad entry.  The complementary
    parameters rho_k are always recomputed from the alphas, never stored.
    """

    def __init__(self, alphas):
        alphas = tuple(complex(a) for a in alphas)
        if not alphas:
            raise ValueError("a Schur sequence needs at least one parameter")
        for k, a in enumerate(alphas):
            if abs(a) >= 1.0:
                raise InvalidSchurParameter(k, a)
        self.alphas = alphas

    def __len__(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def __repr__(self) -> str:
        return f"SchurSequence({list(self.alphas)!r})"

    def alpha(self, k: int) -> complex:
        return self.alphas[k]

    def rho(self, k: int) -> float:
        return _rho(self.alphas[k])

    @property
    def rhos(self) -> np.ndarray:
        a = np.asarray(self.alphas)
        return np.sqrt(1.0 - np.abs(a) ** 2)


def dual(coeffs) -> np.ndarray:
    """Dual polynomial coefficients: p*(z) = z^n conj(p(1/conj(z))).

    ``coeffs`` holds ascending-power coefficients of a degree-n polynomial;
    the dual is the conjugated reversal, so coefficient j of the result is
    the conjugate of coefficient n - j of the input.
    """
    c = np.asarray(coeffs, dtype=complex)
    return np.conj(c[::-1])


class PolynomialPair:
    """A Szego polynomial and its dual at one degree, ascending coefficients.

    Invariants checked at construction: both coefficient vectors have length
    degree + 1, ``phi_star`` is the dual of ``phi``, and the leading
    coefficient of ``phi`` is real and strictly positive (the orthonormal
    normalization, which the recursion preserves).
    """

    def __init__(self, phi, phi_star):
        phi = np.asarray(phi, dtype=complex)
        phi_star = np.asarray(phi_star, dtype=complex)
        if phi.ndim != 1 or phi.shape != phi_star.shape or phi.size == 0:
            raise ValueError("phi and phi_star must be 1-d arrays of equal length")
        scale = max(np.max(np.abs(phi)), 1.0)
        if np.max(np.abs(phi_star - dual(phi))) > 1e-9 * scale:
            raise ValueError("phi_star is not the dual of phi")
        lead = phi[-1]
        if lead.real <= 0.0 or abs(lead.imag) > 1e-9 * lead.real:
            raise ValueError("leading coefficient of phi must be real positive")
        self.phi = phi
        self.phi_star = phi_star

    @property
    def degree(self) -> int:
        return self.phi.size - 1

    @classmethod
    def initial(cls) -> "PolynomialPair":
        """Degree-zero pair phi_0 = phi_0* = 1."""
        return cls([1.0 + 0.0j], [1.0 + 0.0j])

    def __repr__(self) -> str:
        return f"PolynomialPair(degree={self.degree})"


def szego_step(pair: PolynomialPair, alpha_k: complex) -> PolynomialPair:
    """Advance (phi_k, phi_k*) one degree for the next Schur parameter."""
    alpha_k = complex(alpha_k)
    if abs(alpha_k) >= 1.0:
        raise InvalidSchurParameter(None, alpha_k)
    rho_k = _rho(alpha_k)
    z_phi = np.concatenate(([0.0j], pair.phi))
    star = np.concatenate((pair.phi_star, [0.0j]))
    phi_next = (z_phi - np.conj(alpha_k) * star) / rho_k
    star_next = (star - alpha_k * z_phi) / rho_k
    return PolynomialPair(phi_next, star_next)


def polynomial_pair(schur: SchurSequence, n: int) -> PolynomialPair:
    """Coefficients of (phi_n, phi_n*) for the given Schur parameters."""
    if n > len(schur):
        raise ValueError(f"degree {n} needs {n} Schur parameters, have {len(schur)}")
    pair = PolynomialPair.initial()
    for k in range(n):
        pair = szego_step(pair, schur.alpha(k))
    return pair


def evaluate_phi(schur: SchurSequence, n: int, z):
    """Evaluate (phi_n(z), phi_n*(z)) by the two-term value recursion.

    Running the recursion on values instead of coefficients costs O(n) per
    point and avoids the cancellation that coefficient expansion can suffer.
    ``z`` may be a scalar or an ndarray; the recursion is applied elementwise.
    """
    if n > len(schur):
        raise ValueError(f"degree {n} needs {n} Schur parameters, have {len(schur)}")
    zz = np.asarray(z, dtype=complex)
    phi = np.ones_like(zz)
    star = np.ones_like(zz)
    for k in range(n):
        a = schur.alpha(k)
        r = schur.rho(k)
        z_phi = zz * phi
        phi, star = (z_phi - np.conj(a) * star) / r, (star - a * z_phi) / r
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(phi), complex(star)
    return phi, star


def laurent_basis(schur: SchurSequence, gen, n: int, z):
    """Value of the nth orthonormal Laurent polynomial at z.

    For the ordering fixed by the generating sequence ``gen`` the nth basis
    element is z^{-p_n} phi_n(z) when the nth monomial has a positive power
    (s_n = 0) and z^{-p_n} phi_n*(z) when it is negative (s_n = 1).  The
    index 0 element is the constant 1 either way.
    """
    if n > len(gen):
        raise ValueError(f"index {n} exceeds the {len(gen)} stored shape bits")
    zz = np.asarray(z, dtype=complex)
    if np.any(zz == 0):
        raise ValueError("z = 0 is outside the domain of a Laurent polynomial")
    phi, star = evaluate_phi(schur, n, zz)
    s_n = gen.s(n) if n >= 1 else 0
    p_n = gen.p[n]
    value = zz ** (-p_n) * (star if s_n == 1 else phi)
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(value)
    return value
