"""Kernel SVMs trained by sequential minimal optimization.

The binary solver performs coordinate ascent on the dual, always updating the
maximal-violating pair. Multiclass goes through one-vs-one machines whose
votes plus a squashed decision-sum give continuous per-class scores. Features
are standardized with training statistics before any kernel is evaluated;
raw deep-feature activations vary by orders of magnitude between networks,
which would make a fixed kernel scale meaningless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import DataError, TrainingError

KERNEL_QUADRATIC = "quadratic"
KERNEL_GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class SvmSpec:
    kernel: str = KERNEL_GAUSSIAN
    kernel_scale: float | None = None  # default 32 gaussian, 1 quadratic
    box_constraint: float = 1.0
    tolerance: float = 1e-3
    max_passes: int = 500_000

    def __post_init__(self):
        if self.kernel not in (KERNEL_QUADRATIC, KERNEL_GAUSSIAN):
            raise DataError(f"unknown kernel {self.kernel!r}")
        if self.scale <= 0:
            raise DataError(f"kernel scale must be positive, got {self.scale}")
        if self.box_constraint <= 0:
            raise DataError(f"box constraint must be positive, got {self.box_constraint}")

    @property
    def scale(self) -> float:
        if self.kernel_scale is not None:
            return self.kernel_scale
        return 32.0 if self.kernel == KERNEL_GAUSSIAN else 1.0

    def fit(self, data: LabeledDataset) -> "OvoSvmModel":
        return fit_ovo_svm(data, self)


def kernel(spec: SvmSpec, x: np.ndarray, z: np.ndarray) -> float:
    """Kernel value between two vectors."""
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if x.shape != z.shape:
        raise DataError(f"kernel operands differ in shape: {x.shape} vs {z.shape}")
    s2 = spec.scale**2
    if spec.kernel == KERNEL_QUADRATIC:
        return float((1.0 + x @ z / s2) ** 2)
    diff = x - z
    return float(np.exp(-(diff @ diff) / s2))


def kernel_matrix(spec: SvmSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kernel values between all rows of a and all rows of b."""
    s2 = spec.scale**2
    if spec.kernel == KERNEL_QUADRATIC:
        return (1.0 + (a @ b.T) / s2) ** 2
    sq_a = np.sum(a * a, axis=1)[:, None]
    sq_b = np.sum(b * b, axis=1)[None, :]
    d2 = np.maximum(sq_a + sq_b - 2.0 * (a @ b.T), 0.0)
    return np.exp(-d2 / s2)


@dataclass(frozen=True)
class BinarySvm:
    """One trained machine: sign(f(x)) separates positive from negative."""

    support_vectors: np.ndarray   # (S, D)
    dual_coef: np.ndarray         # (S,) alpha_i * y_i
    bias: float
    spec: SvmSpec
    # full training-time state, kept for invariant checks
    alpha: np.ndarray
    labels: np.ndarray            # +1 / -1 per training row
    n_iterations: int

    def decision_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if self.support_vectors.shape[0] == 0:
            return np.full(x.shape[0], self.bias)
        k = kernel_matrix(self.spec, x, self.support_vectors)
        return k @ self.dual_coef + self.bias

    def decision(self, x: np.ndarray) -> float:
        return float(self.decision_matrix(np.asarray(x)[None, :])[0])


def fit_binary_svm(x_pos: np.ndarray, x_neg: np.ndarray, spec: SvmSpec) -> BinarySvm:
    """Train one machine on positive vs negative sample blocks."""
    x_pos = np.atleast_2d(np.asarray(x_pos, dtype=np.float64))
    x_neg = np.atleast_2d(np.asarray(x_neg, dtype=np.float64))
    if x_pos.shape[0] == 0 or x_neg.shape[0] == 0:
        raise TrainingError("both classes must be non-empty")
    x = np.vstack([x_pos, x_neg])
    y = np.concatenate([np.ones(x_pos.shape[0]), -np.ones(x_neg.shape[0])])
    return _smo(x, y, spec)


def _smo(x: np.ndarray, y: np.ndarray, spec: SvmSpec) -> BinarySvm:
    """Dual coordinate ascent, maximal-violating-pair selection.

    Minimizes 0.5 a'Qa - sum(a) subject to 0 <= a <= C and y'a = 0,
    where Q_ij = y_i y_j K_ij. Stops when the duality-gap proxy
    max_{i in Iup} v_i - min_{j in Ilow} v_j drops below the tolerance,
    with v_i = -y_i * gradient_i.
    """
    n = x.shape[0]
    c = spec.box_constraint
    k = kernel_matrix(spec, x, x)
    q = (y[:, None] * y[None, :]) * k

    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of the dual objective at alpha = 0

    iterations = 0
    while True:
        v = -y * grad
        up = ((y > 0) & (alpha < c)) | ((y < 0) & (alpha > 0))
        low = ((y < 0) & (alpha < c)) | ((y > 0) & (alpha > 0))
        i = np.flatnonzero(up)[np.argmax(v[up])]
        j = np.flatnonzero(low)[np.argmin(v[low])]
        violation = v[i] - v[j]
        if violation < spec.tolerance:
            bias = 0.5 * (v[i] + v[j])
            break
        if iterations >= spec.max_passes:
            raise TrainingError(
                f"SMO did not converge in {spec.max_passes} updates; "
                f"worst KKT violation {violation:.3e}"
            )
        old_i, old_j = alpha[i], alpha[j]
        if y[i] != y[j]:
            # moving both alphas together keeps y'a = 0; a_i - a_j stays fixed
            quad = max(q[i, i] + q[j, j] + 2.0 * q[i, j], 1e-12)
            step = (-grad[i] - grad[j]) / quad
            diff = old_i - old_j
            lo, hi = max(0.0, -diff), min(c, c - diff)
            new_j = min(max(old_j + step, lo), hi)
            alpha[j] = new_j
            alpha[i] = diff + new_j
        else:
            # same label: a_i + a_j stays fixed
            quad = max(q[i, i] + q[j, j] - 2.0 * q[i, j], 1e-12)
            step = (grad[i] - grad[j]) / quad
            total = old_i + old_j
            lo, hi = max(0.0, total - c), min(c, total)
            new_j = min(max(old_j + step, lo), hi)
            alpha[j] = new_j
            alpha[i] = total - new_j
        grad += q[:, i] * (alpha[i] - old_i) + q[:, j] * (alpha[j] - old_j)
        iterations += 1

    support = alpha > 0.0
    return BinarySvm(
        support_vectors=x[support].copy(),
        dual_coef=(alpha * y)[support].copy(),
        bias=float(bias),
        spec=spec,
        alpha=alpha,
        labels=y.copy(),
        n_iterations=iterations,
    )


def dual_objective(machine: BinarySvm, x: np.ndarray) -> float:
    """Value of the maximized dual at the trained alphas."""
    k = kernel_matrix(machine.spec, x, x)
    a = machine.alpha
    y = machine.labels
    return float(a.sum() - 0.5 * (a * y) @ k @ (a * y))


def kkt_violation(machine: BinarySvm, x_train: np.ndarray) -> float:
    """Worst complementary-slackness violation over the training set.

    Zero-alpha points must sit outside the margin, box-saturated points inside
    or on it, and free points exactly on it; the return value is the largest
    margin excess in any of the three groups.
    """
    x_train = np.atleast_2d(np.asarray(x_train, dtype=np.float64))
    margins = machine.labels * machine.decision_matrix(x_train)
    alpha = machine.alpha
    c = machine.spec.box_constraint
    at_zero = alpha <= 0.0
    at_box = alpha >= c
    free = ~at_zero & ~at_box
    worst = 0.0
    if at_zero.any():
        worst = max(worst, float(np.max(1.0 - margins[at_zero], initial=0.0)))
    if at_box.any():
        worst = max(worst, float(np.max(margins[at_box] - 1.0, initial=0.0)))
    if free.any():
        worst = max(worst, float(np.max(np.abs(margins[free] - 1.0))))
    return worst


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        mean = x.mean(axis=0)
        std = x.std(axis=0)
        # constant columns carry no information; leave them unscaled
        std = np.where(std > 0.0, std, 1.0)
        return cls(mean, std)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.std


@dataclass(frozen=True)
class OvoSvmModel:
    machines: tuple[tuple[int, int, BinarySvm], ...]  # (class_i, class_j, machine)
    class_names: tuple[str, ...]
    standardizer: Standardizer
    spec: SvmSpec

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def n_features(self) -> int:
        return self.standardizer.mean.shape[0]

    def scores_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.n_features:
            raise DataError(f"expected {self.n_features} features, got {x.shape[1]}")
        z = self.standardizer.apply(x)
        k = self.n_classes
        votes = np.zeros((x.shape[0], k))
        decision_sum = np.zeros((x.shape[0], k))
        for ci, cj, machine in self.machines:
            f = machine.decision_matrix(z)
            wins_i = f > 0.0
            votes[wins_i, ci] += 1.0
            votes[~wins_i, cj] += 1.0
            decision_sum[:, ci] += f
            decision_sum[:, cj] -= f
        # The squashed decision-sum breaks vote ties but, being below
        # 1/(K+1) < 1, can never overturn a vote-count ordering.
        return votes + _logistic(decision_sum) / (k + 1)

    def predict_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.argmax(self.scores_matrix(x), axis=1)


def _logistic(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    expv = np.exp(v[~pos])
    out[~pos] = expv / (1.0 + expv)
    return out


def fit_ovo_svm(data: LabeledDataset, spec: SvmSpec) -> OvoSvmModel:
    """Train K(K-1)/2 machines, one per class pair, on standardized features."""
    k = data.n_classes
    if k < 2:
        raise TrainingError("one-vs-one needs at least 2 classes")
    standardizer = Standardizer.fit(data.features.values)
    z = standardizer.apply(data.features.values)
    machines = []
    for ci in range(k):
        for cj in range(ci + 1, k):
            x_pos = z[data.labels == ci]
            x_neg = z[data.labels == cj]
            machines.append((ci, cj, fit_binary_svm(x_pos, x_neg, spec)))
    return OvoSvmModel(tuple(machines), data.class_names, standardizer, spec)


def ovo_scores(model: OvoSvmModel, x: np.ndarray) -> tuple[np.ndarray, int]:
    """Per-class scores and the predicted class for one vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DataError("ovo_scores expects a single vector")
    scores = model.scores_matrix(x[None, :])[0]
    return scores, int(np.argmax(scores))
