"""Stochastic neighbor embedding with a Student-t low-dimensional kernel.

Exact quadratic-time affinities, no tree approximations: at a few thousand
samples the dense computation takes seconds and is bit-reproducible. The
high-dimensional affinities use per-point Gaussian bandwidths found by
binary search so each conditional distribution hits the target perplexity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, TrainingError
from .rng import SeededRng

PERPLEXITY_LOG_TOL = 1e-5
MAX_SEARCH_ITERATIONS = 64
EXAGGERATION_PHASE = 250
INITIAL_COORD_SCALE = 1e-4


@dataclass(frozen=True)
class TsneSpec:
    output_dims: int = 2
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    early_exaggeration: float = 12.0
    momentum_early: float = 0.5
    momentum_late: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if self.output_dims not in (2, 3):
            raise DataError(f"output_dims must be 2 or 3, got {self.output_dims}")
        if self.perplexity <= 0:
            raise DataError("perplexity must be positive")
        if self.iterations < 1:
            raise DataError("iterations must be >= 1")


@dataclass(frozen=True)
class Embedding:
    coordinates: np.ndarray
    kl_divergence: float
    sample_ids: tuple[str, ...]


def perplexity_search(squared_distances: np.ndarray, target: float) -> float:
    """Gaussian bandwidth sigma whose conditional distribution has the target perplexity.

    Input is one point's squared distances to all other points. Bisects on
    precision beta = 1/(2 sigma^2) until |log2 perplexity - log2 target|
    < 1e-5, in at most 64 evaluations.
    """
    d = np.asarray(squared_distances, dtype=np.float64)
    if d.ndim != 1 or d.size < 1:
        raise DataError("need a 1-D vector of distances to the other points")
    if target <= 0 or target > d.size:
        raise DataError(f"target perplexity {target} out of range (0, {d.size}]")
    log2_target = np.log2(target)

    beta = 1.0
    beta_min, beta_max = 0.0, np.inf
    for _ in range(MAX_SEARCH_ITERATIONS):
        entropy_bits = _conditional_entropy_bits(d, beta)
        residual = entropy_bits - log2_target
        if abs(residual) < PERPLEXITY_LOG_TOL:
            return float(np.sqrt(0.5 / beta))
        if residual > 0:  # distribution too spread: sharpen
            beta_min = beta
            beta = beta * 2.0 if beta_max == np.inf else 0.5 * (beta + beta_max)
        else:
            beta_max = beta
            beta = 0.5 * (beta + beta_min)
    raise TrainingError(
        f"perplexity search did not converge; last residual {residual:.3e} bits"
    )


def _conditional_entropy_bits(d: np.ndarray, beta: float) -> float:
    shifted = d - d.min()  # exp shift keeps the largest weight at exactly 1
    w = np.exp(-beta * shifted)
    total = w.sum()
    # H = ln(total) + beta * <shifted distance>, in nats
    h_nats = np.log(total) + beta * float((shifted * w).sum()) / total
    return h_nats / np.log(2.0)


def _conditional_row(d: np.ndarray, beta: float) -> np.ndarray:
    w = np.exp(-beta * (d - d.min()))
    return w / w.sum()


def joint_affinities(x: np.ndarray, perplexity: float) -> np.ndarray:
    """Symmetrized affinity matrix P; non-negative, zero diagonal, sums to 1."""
    n = x.shape[0]
    if n < 2:
        raise DataError("need at least 2 samples")
    sq = np.sum(x * x, axis=1)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (x @ x.T), 0.0)
    cond = np.zeros((n, n))
    others = np.arange(n)
    for i in range(n):
        mask = others != i
        sigma = perplexity_search(d2[i, mask], perplexity)
        beta = 0.5 / sigma**2
        cond[i, mask] = _conditional_row(d2[i, mask], beta)
    p = (cond + cond.T) / (2.0 * n)
    return p


def _student_t_weights(y: np.ndarray) -> np.ndarray:
    sq = np.sum(y * y, axis=1)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (y @ y.T), 0.0)
    w = 1.0 / (1.0 + d2)           # Student-t kernel, one degree of freedom
    np.fill_diagonal(w, 0.0)
    return w


def _gradient(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    w = _student_t_weights(y)
    q = w / w.sum()
    coeff = 4.0 * (p - q) * w
    return coeff.sum(axis=1)[:, None] * y - coeff @ y


def kl_and_gradient(p: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """KL(P || Q(Y)) and its gradient with respect to the embedding Y."""
    w = _student_t_weights(y)
    q = w / w.sum()
    mask = p > 0.0
    kl = float(np.sum(p[mask] * np.log(p[mask] / np.maximum(q[mask], 1e-300))))
    coeff = 4.0 * (p - q) * w
    grad = coeff.sum(axis=1)[:, None] * y - coeff @ y
    return kl, grad


def tsne(features: np.ndarray, spec: TsneSpec, sample_ids=None) -> Embedding:
    """Embed feature rows; identical spec and seed reproduce coordinates bitwise."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2:
        raise DataError("features must be a 2-D array")
    n = x.shape[0]
    if spec.perplexity >= n:
        raise DataError(f"perplexity {spec.perplexity} must be below n_samples {n}")
    if sample_ids is None:
        sample_ids = tuple(f"s{i}" for i in range(n))
    sample_ids = tuple(sample_ids)
    if len(sample_ids) != n:
        raise DataError(f"{len(sample_ids)} sample ids for {n} rows")

    p = joint_affinities(x, spec.perplexity)
    rng = SeededRng(spec.seed)
    y = INITIAL_COORD_SCALE * rng.normals((n, spec.output_dims))
    velocity = np.zeros_like(y)
    # Per-coordinate gains, as in the reference descent scheme: a fixed
    # global step oscillates instead of converging, so coordinates whose
    # gradient keeps its sign speed up and sign flips damp down.
    gains = np.ones_like(y)

    exaggerated = p * spec.early_exaggeration
    for iteration in range(spec.iterations):
        early = iteration < EXAGGERATION_PHASE
        p_eff = exaggerated if early else p
        momentum = spec.momentum_early if early else spec.momentum_late
        grad = _gradient(p_eff, y)
        if not np.isfinite(grad).all():
            raise TrainingError(f"non-finite gradient at iteration {iteration}")
        same_direction = np.sign(grad) == np.sign(velocity)
        gains = np.maximum(np.where(same_direction, gains * 0.8, gains + 0.2), 0.01)
        velocity = momentum * velocity - spec.learning_rate * gains * grad
        y = y + velocity
        y = y - y.mean(axis=0)  # fix translation drift

    kl, _ = kl_and_gradient(p, y)
    if not np.isfinite(y).all():
        raise TrainingError("embedding contains non-finite coordinates")
    return Embedding(y, kl, sample_ids)
