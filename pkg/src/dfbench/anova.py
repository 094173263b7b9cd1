"""Two-factor analysis of variance over a benchmark accuracy grid.

The grid is (factor A levels) x (factor B levels) x (folds). Fold values are
collapsed to cell means first; the two-factor additive model without
interaction is then fit on the cell means, with the interaction cell as the
error term. Post-hoc pairwise comparisons across factor B use paired t-tests
with a Bonferroni multiplier equal to the number of pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DataError


@dataclass(frozen=True)
class PairwiseTest:
    level_a: int
    level_b: int
    t_statistic: float
    p_raw: float
    p_adjusted: float


@dataclass(frozen=True)
class AnovaResult:
    f_factor_a: float
    p_factor_a: float
    df_factor_a: tuple[int, int]
    f_factor_b: float
    p_factor_b: float
    df_factor_b: tuple[int, int]
    pairwise_b: tuple[PairwiseTest, ...]


def two_factor_anova(accuracy_table) -> AnovaResult:
    """ANOVA on an (a, b, k) per-fold accuracy table.

    Degenerate tables (zero residual variance) report boundary p-values:
    a factor with zero sum of squares gets F=0, p=1; a factor with signal on
    top of zero residual gets F=inf, p=0.
    """
    table = np.asarray(accuracy_table, dtype=np.float64)
    if table.ndim == 2:
        table = table[:, :, None]
    if table.ndim != 3:
        raise DataError(f"accuracy table must be (a, b, k), got shape {table.shape}")
    a, b, _ = table.shape
    if a < 2 or b < 2:
        raise DataError("both factors need at least 2 levels")
    if not np.isfinite(table).all():
        raise DataError("accuracy table has non-finite cells")

    cell = table.mean(axis=2)            # (a, b) cell means
    grand = cell.mean()
    row_means = cell.mean(axis=1)
    col_means = cell.mean(axis=0)

    ss_a = b * float(np.sum((row_means - grand) ** 2))
    ss_b = a * float(np.sum((col_means - grand) ** 2))
    residual = cell - row_means[:, None] - col_means[None, :] + grand
    ss_e = float(np.sum(residual**2))

    # Sums of squares at rounding-noise level are exact zeros in intent;
    # without the snap an all-equal table would report F as a noise ratio.
    noise_floor = 1e-20 * max(1.0, grand * grand) * cell.size
    ss_a = 0.0 if ss_a < noise_floor else ss_a
    ss_b = 0.0 if ss_b < noise_floor else ss_b
    ss_e = 0.0 if ss_e < noise_floor else ss_e

    df_a = a - 1
    df_b = b - 1
    df_e = (a - 1) * (b - 1)

    f_a, p_a = _f_test(ss_a, df_a, ss_e, df_e)
    f_b, p_b = _f_test(ss_b, df_b, ss_e, df_e)

    n_pairs = b * (b - 1) // 2
    pairwise = []
    for i in range(b):
        for j in range(i + 1, b):
            t_stat, p_raw = _paired_t(cell[:, i], cell[:, j])
            pairwise.append(
                PairwiseTest(i, j, t_stat, p_raw, min(1.0, p_raw * n_pairs))
            )
    return AnovaResult(
        f_a, p_a, (df_a, df_e), f_b, p_b, (df_b, df_e), tuple(pairwise)
    )


def _f_test(ss_factor: float, df_factor: int, ss_error: float, df_error: int):
    if ss_factor <= 0.0:
        return 0.0, 1.0
    if ss_error <= 0.0:
        return float("inf"), 0.0
    f = (ss_factor / df_factor) / (ss_error / df_error)
    return float(f), float(stats.f.sf(f, df_factor, df_error))


def _paired_t(x: np.ndarray, y: np.ndarray):
    diff = x - y
    n = diff.shape[0]
    mean = diff.mean()
    sd = diff.std(ddof=1)
    if sd == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return float("inf") if mean > 0 else float("-inf"), 0.0
    t_stat = mean / (sd / np.sqrt(n))
    p = 2.0 * float(stats.t.sf(abs(t_stat), df=n - 1))
    return float(t_stat), min(1.0, p)
