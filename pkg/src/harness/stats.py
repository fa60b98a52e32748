"""
Статистики по выборкам прогонов
"""
from typing import Sequence

import numpy as np


def percentile(samples: Sequence[float], q: float) -> float:
    """
    Перцентиль с линейной интерполяцией по рангу q/100 * (N - 1)

    Args:
        samples: Непустая выборка
        q: Уровень в [0, 100]

    Returns:
        float: Значение перцентиля
    """
    if len(samples) == 0:
        raise ValueError("percentile of an empty sample is undefined")
    if not 0.0 <= q <= 100.0:
        raise ValueError(f"q must be in [0, 100], got {q}")
    return float(np.percentile(np.asarray(samples, dtype=float), q, method="linear"))


def mean(samples: Sequence[float]) -> float:
    if len(samples) == 0:
        raise ValueError("mean of an empty sample is undefined")
    return float(np.mean(np.asarray(samples, dtype=float)))
