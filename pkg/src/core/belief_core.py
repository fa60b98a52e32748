"""
Алгебра трёхзначных убеждений: слияние, выбор предложения, свидетельства и средняя ошибка
"""
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt


class TruthValue(IntEnum):
    """Истинностное значение; код хранится в int8, числовое значение равно коду / 2"""
    FALSE = 0
    UNKNOWN = 1
    TRUE = 2

    @property
    def numeric(self) -> float:
        return self.value / 2


Belief = npt.NDArray[np.int8]
WorldState = npt.NDArray[np.int8]

F, U, T = TruthValue.FALSE, TruthValue.UNKNOWN, TruthValue.TRUE

# Таблица слияния: строка - первый аргумент, столбец - второй
FUSION_TABLE = np.array([
    [F, F, U],
    [F, U, T],
    [U, T, T],
], dtype=np.int8)
FUSION_TABLE.flags.writeable = False


@dataclass(frozen=True)
class Evidence:
    """Разреженная запись свидетельства: одно определённое значение по индексу"""
    proposition_index: int
    asserted_value: TruthValue

    def __post_init__(self):
        if self.asserted_value == TruthValue.UNKNOWN:
            raise ValueError("Evidence cannot assert Unknown")


def make_belief(values: Sequence[int]) -> Belief:
    """
    Создание убеждения из последовательности значений

    Args:
        values: Коды TruthValue (0, 1, 2) или сами TruthValue

    Returns:
        Belief: Массив int8 длины n
    """
    belief = np.asarray([TruthValue(v) for v in values], dtype=np.int8)
    return belief


def ignorant_belief(n: int) -> Belief:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.full(n, TruthValue.UNKNOWN, dtype=np.int8)


def make_world(truths: Sequence[bool]) -> WorldState:
    """Состояние мира из булевых значений; Unknown в нём не бывает"""
    return np.asarray([T if t else F for t in truths], dtype=np.int8)


def all_true_world(n: int) -> WorldState:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.full(n, TruthValue.TRUE, dtype=np.int8)


def fuse_value(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(int(FUSION_TABLE[a, b]))


def fuse_beliefs(b1: Belief, b2: Belief) -> Belief:
    """
    Поэлементное слияние двух убеждений

    Args:
        b1: Первое убеждение
        b2: Второе убеждение

    Returns:
        Belief: Новое убеждение той же длины
    """
    if b1.shape != b2.shape:
        raise ValueError(f"Belief length mismatch: {b1.shape[0]} != {b2.shape[0]}")
    return FUSION_TABLE[b1, b2]


def select_investigation(b: Belief, rng: np.random.Generator) -> Optional[int]:
    """
    Выбор случайного неопределённого предложения для исследования

    Args:
        b: Убеждение агента
        rng: Генератор случайных чисел прогона

    Returns:
        Optional[int]: Индекс предложения или None, если агенту больше нечего искать
    """
    uncertain = np.flatnonzero(b == TruthValue.UNKNOWN)
    if uncertain.size == 0:
        return None
    return int(uncertain[rng.integers(uncertain.size)])


def draw_evidence(world: WorldState, i: int, epsilon: float, rng: np.random.Generator) -> Evidence:
    """
    Получение (возможно зашумлённого) свидетельства о предложении i

    Args:
        world: Истинное состояние мира
        i: Индекс предложения
        epsilon: Вероятность ошибочного свидетельства, [0, 0.5]
        rng: Генератор случайных чисел прогона

    Returns:
        Evidence: Свидетельство с определённым значением
    """
    if not 0.0 <= epsilon <= 0.5:
        raise ValueError(f"epsilon must be in [0, 0.5], got {epsilon}")
    if not 0 <= i < world.shape[0]:
        raise ValueError(f"Proposition index {i} out of range [0, {world.shape[0]})")

    truth = TruthValue(int(world[i]))
    if epsilon > 0.0 and rng.random() < epsilon:
        truth = TruthValue.FALSE if truth == TruthValue.TRUE else TruthValue.TRUE
    return Evidence(i, truth)


def apply_evidence(b: Belief, e: Evidence) -> Belief:
    """Обновление убеждения свидетельством; меняется не более одного индекса"""
    if not 0 <= e.proposition_index < b.shape[0]:
        raise ValueError(
            f"Evidence index {e.proposition_index} out of range [0, {b.shape[0]})"
        )
    updated = b.copy()
    updated[e.proposition_index] = FUSION_TABLE[b[e.proposition_index], e.asserted_value]
    return updated


def average_error(beliefs: Sequence[Belief], world: WorldState) -> float:
    """
    Средняя ошибка популяции относительно истинного состояния мира

    Args:
        beliefs: Убеждения всех m агентов (последовательность или матрица m x n)
        world: Истинное состояние мира длины n

    Returns:
        float: Значение в [0, 1]
    """
    matrix = np.asarray(beliefs, dtype=np.int8)
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise ValueError("average_error requires a non-empty population")
    if matrix.shape[1] != world.shape[0]:
        raise ValueError(
            f"Belief length {matrix.shape[1]} does not match world length {world.shape[0]}"
        )
    # Коды в два раза больше числовых значений, поэтому сумма целая и точная
    total = int(np.abs(matrix.astype(np.int64) - world.astype(np.int64)).sum())
    return total / (2 * matrix.shape[0] * matrix.shape[1])
