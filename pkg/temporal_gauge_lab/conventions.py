"""
Convention Ledger
=================

Every sign and normalization choice used by the evaluators, in one place.
Outputs embed ``ledger_hash()`` so a result can always be traced back to the
conventions it was computed under. Human-readable notes live in
docs/conventions.md.
"""

import hashlib
import json


LEDGER_VERSION = "1.0"

LEDGER = {
    "version": LEDGER_VERSION,
    "ccr": "[A(f), E(g)] = i (f, g)",
    "weyl_product": "W(f1,g1) W(f2,g2) = exp(-i sigma/2) W(f1+f2, g1+g2), sigma = (f1,g2) - (g1,f2)",
    "adjoint": "(c W(f,g))* = conj(c) W(-f,-g)",
    "fourier": "f(x) = sum_k fhat(k) exp(i k.x) + m; (f,g) = L^3 sum conj(fhat).ghat + L^3 m_f.m_g",
    "small_gauge": "gamma^Lambda W(f,g) = exp(-i (Lambda, div f)) W(f,g)",
    "large_gauge": "gamma^alpha W(f,g) = exp(+i L^3 alpha.m_f) W(f,g)",
    "theta": "beta^theta W(f,g) = exp(+i L^3 theta.m_g) W(f,g)",
    "time_transverse": "(f,g) -> (f cos wt - w g sin wt, f sin(wt)/w + g cos wt)",
    "time_longitudinal": "(f,g) -> (f, g + t f) on longitudinal and mean sectors",
    "longitudinal_dictionary": "W_l(h,k) = W(grad h, -grad k); free flow W_l(h,k) -> W_l(h, k - t h)",
    "gauss_operator": "exp(i G(g)) = W(0, -grad g)",
    "gauge_implementer": "V(Lambda) = W(0, grad Lambda)",
    "quasi_free": "Omega(W) = phase * exp(-<Phi^2>/2)",
    "wightman_transverse": "<A(f,tX) A(g,tY)> contains exp(+i w (tY-tX)) / (2w)",
    "wightman_longitudinal": "+(i/2) (tY-tX) L^3 sum conj(fhat).k k.ghat [Z + sum_a w_a/(k^2+m_a^2)]",
    "positive_energy": "c exp(+i w t) with w >= 0 is positive energy; DFT of exp(+i w t) peaks at +w",
    "schwinger_longitudinal": "-L^3 sum conj(div fhat)(div ghat) |dtau| / (2 k^2)",
    "continuation": "dtau = -i (tY - tX) on the dtau >= 0 branch",
    "admissible_measure": "sum_a w_a = 1 and Z = 0",
    "z_reality": "zbar_{-k} = conj(z_k), z = z1 + i z2, zbar = z1 - i z2",
}


def ledger_hash(ledger=None):
    """
    Hash of the convention ledger

    Args:
        ledger (dict): Ledger to hash (default: LEDGER)

    Returns:
        str: Hex sha256 of the canonical JSON dump
    """
    payload = json.dumps(LEDGER if ledger is None else ledger, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
