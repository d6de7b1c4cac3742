"""
Monte Carlo Module
==================

Ensemble averages over Euclidean field samples. Sample i always draws from
its own counter-based Philox substream of the master seed, batches are
reduced in a fixed order, so estimates are bitwise reproducible for any
number of worker threads.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..exceptions import MeanModeUnsupported
from .sampler import draw_sample, smearing_weights
from .schwinger import schwinger_two_point


logger = logging.getLogger(__name__)

MAX_MOMENT_ORDER = 8


def sample_rng(seed, index):
    """Generator for sample `index`: Philox keyed by SeedSequence(seed, spawn_key=(index,))"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def sample_ensemble(config, start=0, stop=None):
    """
    Stream of FieldSample objects for samples start..stop-1

    Args:
        config (EuclideanConfig): Ensemble configuration
        start (int): First sample index
        stop (int): One past the last index (default: config.samples)

    Yields:
        FieldSample: One configuration per index
    """
    stop = config.samples if stop is None else stop
    for i in range(start, stop):
        yield draw_sample(config.grid, config.taus, sample_rng(config.seed, i))


def batch_ranges(samples, batches):
    """Contiguous (start, stop) index ranges, empty ones dropped"""
    edges = np.linspace(0, samples, batches + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def run_batches(config, integrand, threads=None):
    """
    Ensemble mean of integrand(sample) with a batch-means error bar.

    Args:
        config (EuclideanConfig): Ensemble configuration
        integrand (callable): FieldSample -> complex, or a complex array for
            several estimators sharing one ensemble
        threads (int): Worker threads (default: config.threads)

    Returns:
        tuple: (estimate, stderr) with stderr combining real and imaginary
        parts; arrays when the integrand returns arrays
    """
    threads = config.threads if threads is None else threads
    ranges = batch_ranges(config.samples, config.batches)

    def run_range(bounds):
        total = 0j
        for sample in sample_ensemble(config, *bounds):
            total += integrand(sample)
        return total

    logger.info("Sampling %d configurations in %d batches on %d thread(s)", config.samples, len(ranges), threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sums = list(pool.map(run_range, ranges))
    else:
        sums = [run_range(bounds) for bounds in ranges]

    sums = np.array(sums, dtype=complex)
    sizes = np.array([b - a for a, b in ranges], dtype=float).reshape((-1,) + (1,) * (sums.ndim - 1))
    estimate = np.sum(sums, axis=0) / np.sum(sizes)
    means = sums / sizes
    if len(means) < 2:
        stderr = np.full(np.shape(estimate), np.nan)
    else:
        stderr = np.sqrt(np.sum(np.abs(means - estimate) ** 2, axis=0) / (len(means) * (len(means) - 1)))
    if sums.ndim == 1:
        return complex(estimate), float(stderr)
    return estimate, stderr


def _prepared_labels(config, labels):
    prepared = []
    for f, tau in labels:
        if f.has_mean():
            raise MeanModeUnsupported(f"Monte Carlo smearings must have zero mean, got mean {f.mean.tolist()}")
        weights_a, weights_phi = smearing_weights(f)
        prepared.append((weights_a, weights_phi, config.tau_index(tau)))
    return prepared


def mc_moment(config, labels, threads=None):
    """
    Ensemble estimate of <A(f_1, tau_1) ... A(f_n, tau_n)> for the composite field.

    Args:
        config (EuclideanConfig): Ensemble configuration
        labels (list): (f, tau) pairs with tau among config.taus
        threads (int): Worker threads

    Returns:
        tuple: (estimate, stderr)
    """
    if len(labels) > MAX_MOMENT_ORDER:
        raise ValueError(f"Moments are estimated up to order {MAX_MOMENT_ORDER}")
    prepared = _prepared_labels(config, labels)

    def integrand(sample):
        value = 1.0 + 0j
        for weights_a, weights_phi, j in prepared:
            value *= np.sum(weights_a * sample.a_tr[j]) + np.sum(weights_phi * sample.phi(j))
        return value

    return run_batches(config, integrand, threads)


def mc_moments(config, label_sets, threads=None):
    """
    Several moments estimated on one shared ensemble

    Args:
        config (EuclideanConfig): Ensemble configuration
        label_sets (list): Each entry a list of (f, tau) pairs
        threads (int): Worker threads

    Returns:
        tuple: (estimates, stderrs) as arrays aligned with label_sets
    """
    if any(len(labels) > MAX_MOMENT_ORDER for labels in label_sets):
        raise ValueError(f"Moments are estimated up to order {MAX_MOMENT_ORDER}")
    prepared = [_prepared_labels(config, labels) for labels in label_sets]

    def integrand(sample):
        values = np.ones(len(prepared), dtype=complex)
        for i, labels in enumerate(prepared):
            for weights_a, weights_phi, j in labels:
                values[i] *= np.sum(weights_a * sample.a_tr[j]) + np.sum(weights_phi * sample.phi(j))
        return values

    return run_batches(config, integrand, threads)


def mc_exponential(config, factors, threads=None):
    """
    Ensemble estimate of <prod_j exp i[A_tr(f_j, tau_j) + xi(-div f_j, tau_j)]>.

    The z sector is left out: this is the positive-case measure before the
    ergodic mean is applied.
    """
    prepared = _prepared_labels(config, factors)

    def integrand(sample):
        phase = 0j
        for weights_a, weights_phi, j in prepared:
            phase += np.sum(weights_a * sample.a_tr[j]) + np.sum(weights_phi * sample.xi[j])
        return np.exp(1j * phase)

    return run_batches(config, integrand, threads)


def mc_exponentials(config, factor_sets, threads=None):
    """mc_exponential for several factor lists on one shared ensemble"""
    prepared = [_prepared_labels(config, factors) for factors in factor_sets]

    def integrand(sample):
        phases = np.zeros(len(prepared), dtype=complex)
        for i, factors in enumerate(prepared):
            for weights_a, weights_phi, j in factors:
                phases[i] += np.sum(weights_a * sample.a_tr[j]) + np.sum(weights_phi * sample.xi[j])
        return np.exp(1j * phases)

    return run_batches(config, integrand, threads)


def schwinger_wick(labels):
    """
    Gaussian (Wick) value of an n-point Schwinger function

    Args:
        labels (list): (f, tau) pairs

    Returns:
        complex: Sum over pairings of products of schwinger_two_point
    """
    labels = list(labels)
    if len(labels) % 2:
        return 0j
    if not labels:
        return 1.0 + 0j
    first, rest = labels[0], labels[1:]
    total = 0j
    for pos, partner in enumerate(rest):
        pair = schwinger_two_point(first[0], first[1], partner[0], partner[1])
        total += pair * schwinger_wick(rest[:pos] + rest[pos + 1:])
    return complex(total)


def sigmas(estimate, stderr, analytic):
    """Deviation of an estimate from its analytic value in standard errors"""
    if not stderr > 0:
        return 0.0 if estimate == analytic else float("inf")
    return float(abs(complex(estimate) - complex(analytic)) / stderr)
