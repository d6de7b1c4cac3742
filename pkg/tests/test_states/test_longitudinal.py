"""
Tests for longitudinal mode module
"""

import pytest
import sympy as sp
from temporal_gauge_lab.exceptions import DegreeUnsupported
from temporal_gauge_lab.states.longitudinal import (
    longitudinal_kernel, monomial_basis, wick_expectation, normal_order, ccr_expectation,
    gram_longitudinal_mode, gram_summary, free_particle_flow
)


def test_monomial_basis_order():
    """Test ordering 1, q, p, q^2, qp, p^2"""
    assert monomial_basis(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(3)) == 10


def test_kernel_values():
    """Test the equal-time kernel"""
    kernel = longitudinal_kernel()
    assert kernel["qq"] == 0
    assert kernel["pp"] == 0
    assert kernel["qp"] == sp.I / 2
    assert kernel["pq"] == -sp.I / 2


def test_time_kernel_matches_flow():
    """Test <q q(t)> = <q (q + t p)> = i t / 2"""
    t = sp.Symbol("t", real=True)
    kernel = longitudinal_kernel(t)
    moved_q, _ = free_particle_flow(sp.Integer(0), sp.Integer(1), t)
    assert sp.simplify(kernel["qq"] - moved_q * longitudinal_kernel()["qp"]) == 0


def test_commutator():
    """Test <q p> - <p q> = i"""
    assert sp.simplify(wick_expectation(["q", "p"]) - wick_expectation(["p", "q"])) == sp.I


def test_odd_words_vanish():
    """Test that odd words have zero expectation"""
    assert wick_expectation(["q", "p", "q"]) == 0
    assert ccr_expectation(["q", "p", "q"]) == 0


def test_normal_order():
    """Test p q = q p - i"""
    assert normal_order(["p", "q"]) == {(1, 1): 1, (0, 0): -sp.I}


def test_wick_matches_ccr_on_words():
    """Test both evaluation routes agree on all words up to length 4"""
    words = [[]]
    for _ in range(4):
        words = [w + [x] for w in words for x in "qp"]
        for word in words:
            assert sp.simplify(wick_expectation(word) - ccr_expectation(word)) == 0


def test_degree_one_gram():
    """Test G = [[1,0,0],[0,0,i/2],[0,-i/2,0]] with det -1/4"""
    gram = gram_longitudinal_mode(1)
    expected = sp.Matrix([[1, 0, 0], [0, 0, sp.I / 2], [0, -sp.I / 2, 0]])
    assert sp.simplify(gram - expected) == sp.zeros(3, 3)
    assert sp.simplify(gram.det()) == sp.Rational(-1, 4)


@pytest.mark.parametrize("maxdeg", [1, 2, 3])
def test_gram_indefinite(maxdeg):
    """Test Hermitian, nondegenerate, indefinite Gram matrices"""
    summary = gram_summary(maxdeg)
    assert summary["methods_agree"]
    assert summary["hermitian"]
    assert abs(summary["determinant"]) > 0
    assert summary["negative_eigenvalues"] >= 1
    assert summary["positive_eigenvalues"] >= 1
    assert summary["negative_eigenvalues"] + summary["positive_eigenvalues"] == summary["size"]


def test_unsupported_degree():
    """Test degree limits"""
    with pytest.raises(DegreeUnsupported):
        gram_longitudinal_mode(4)
    with pytest.raises(DegreeUnsupported):
        gram_longitudinal_mode(0)
    with pytest.raises(ValueError):
        gram_longitudinal_mode(1, method="lanczos")
