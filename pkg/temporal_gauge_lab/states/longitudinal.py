"""
Longitudinal Mode Module
========================

One longitudinal mode of the indefinite state is a free particle: the
canonical pair q = div A(f_n), p = div E(f_n) evolves as q(t) = q + t p,
p(t) = p, with [q, p] = i and equal-time kernel

    <q q> = <p p> = 0,   <q p> = i/2,   <p q> = -i/2.

The Gram matrix of the monomial vectors q^a p^b Psi_0 is built in exact
arithmetic with sympy, once by Wick pairing and once by reordering with the
commutation relation, so the two can be compared entry by entry.
"""

import math

import numpy as np
import sympy as sp

from ..exceptions import DegreeUnsupported


SUPPORTED_DEGREES = (1, 2, 3)


def longitudinal_kernel(t=0):
    """
    Two-point kernel <x y(t)> of the single longitudinal mode.

    Args:
        t (number or sympy expression): Time of the right factor

    Returns:
        dict: Keys 'qq', 'qp', 'pq', 'pp' with exact values
    """
    half_i = sp.I / 2
    return {
        "qq": half_i * t,
        "qp": half_i,
        "pq": -half_i,
        "pp": sp.Integer(0),
    }


def monomial_basis(maxdeg):
    """
    Exponents (a, b) of q^a p^b with a + b <= maxdeg, by degree and then
    by decreasing power of q: 1, q, p, q^2, qp, p^2, ...
    """
    return [(d - b, b) for d in range(maxdeg + 1) for b in range(d + 1)]


def _word(a, b, adjoint=False):
    letters = ["q"] * a + ["p"] * b
    return letters[::-1] if adjoint else letters


def wick_expectation(word, kernel=None):
    """
    Quasi-free expectation of a product of q's and p's by Wick pairing.

    Args:
        word (list): Letters 'q' and 'p' in operator order
        kernel (dict): Two-point kernel (default: equal-time kernel)

    Returns:
        sympy.Expr: Exact value
    """
    kernel = longitudinal_kernel(0) if kernel is None else kernel
    if len(word) % 2:
        return sp.Integer(0)
    return sp.expand(_wick(tuple(word), kernel))


def _wick(word, kernel):
    if not word:
        return sp.Integer(1)
    first, rest = word[0], word[1:]
    total = sp.Integer(0)
    for pos, partner in enumerate(rest):
        value = kernel[first + partner]
        if value != 0:
            total += value * _wick(rest[:pos] + rest[pos + 1:], kernel)
    return total


def normal_order(word):
    """
    Rewrite a word as a sum of q^a p^b using p q = q p - i.

    Args:
        word (list): Letters 'q' and 'p'

    Returns:
        dict: (a, b) -> exact coefficient
    """
    poly = {(0, 0): sp.Integer(1)}
    for letter in word:
        updated = {}
        for (a, b), coeff in poly.items():
            if letter == "p":
                updated[a, b + 1] = updated.get((a, b + 1), 0) + coeff
            else:
                # q^a p^b q = q^(a+1) p^b - i b q^a p^(b-1)
                updated[a + 1, b] = updated.get((a + 1, b), 0) + coeff
                if b:
                    updated[a, b - 1] = updated.get((a, b - 1), 0) - sp.I * b * coeff
        poly = {key: sp.expand(value) for key, value in updated.items() if sp.expand(value) != 0}
    return poly


def ordered_expectation(a, b):
    """Omega(q^a p^b) = delta_ab a! (i/2)^a"""
    if a != b:
        return sp.Integer(0)
    return sp.Integer(math.factorial(a)) * (sp.I / 2) ** a


def ccr_expectation(word):
    """Expectation of a word via normal ordering and ordered_expectation"""
    return sp.expand(sum((coeff * ordered_expectation(a, b) for (a, b), coeff in normal_order(word).items()),
                         sp.Integer(0)))


def gram_longitudinal_mode(maxdeg, method="wick"):
    """
    Gram matrix G_ij = <v_i, v_j> = Omega((q^a p^b)* q^c p^d) of the monomial basis.

    Args:
        maxdeg (int): Highest total degree, 1 to 3
        method (str): 'wick' or 'ccr'

    Returns:
        sympy.Matrix: Exact Hermitian matrix

    Raises:
        DegreeUnsupported: For degrees outside 1..3
    """
    if maxdeg not in SUPPORTED_DEGREES:
        raise DegreeUnsupported(f"Gram matrices are built for maxdeg in {SUPPORTED_DEGREES}, got {maxdeg}")
    if method not in ("wick", "ccr"):
        raise ValueError(f"Unknown Gram method {method!r}")
    evaluate = wick_expectation if method == "wick" else ccr_expectation
    basis = monomial_basis(maxdeg)
    size = len(basis)
    entries = [[evaluate(_word(*basis[i], adjoint=True) + _word(*basis[j])) for j in range(size)]
               for i in range(size)]
    return sp.Matrix(entries)


def gram_spectrum(gram):
    """
    Numerical eigenvalues of an exact Hermitian Gram matrix

    Args:
        gram (sympy.Matrix): Exact matrix

    Returns:
        np.ndarray: Ascending real eigenvalues
    """
    numeric = np.array(gram.evalf(), dtype=complex)
    return np.linalg.eigvalsh(numeric)


def gram_summary(maxdeg):
    """
    Wick/CCR agreement, determinant and signature of the degree-maxdeg Gram matrix

    Returns:
        dict: Summary numbers
    """
    wick = gram_longitudinal_mode(maxdeg, "wick")
    ccr = gram_longitudinal_mode(maxdeg, "ccr")
    eigenvalues = gram_spectrum(wick)
    determinant = sp.nsimplify(wick.det())
    return {
        "maxdeg": maxdeg,
        "size": wick.shape[0],
        "methods_agree": bool(sp.simplify(wick - ccr) == sp.zeros(*wick.shape)),
        "hermitian": bool(sp.simplify(wick - wick.H) == sp.zeros(*wick.shape)),
        "determinant": complex(determinant),
        "negative_eigenvalues": int(np.sum(eigenvalues < 0)),
        "positive_eigenvalues": int(np.sum(eigenvalues > 0)),
        "min_eigenvalue": float(eigenvalues[0]),
        "max_eigenvalue": float(eigenvalues[-1]),
    }


def free_particle_flow(q, p, t):
    """Longitudinal free evolution (q, p) -> (q + t p, p)"""
    return q + t * p, p
