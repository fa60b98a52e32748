"""
Цикл одного прогона: инициализация, фаза свидетельств, слияние по ребру, детектор сходимости
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .belief_core import (
    TruthValue,
    all_true_world,
    apply_evidence,
    average_error,
    draw_evidence,
    fuse_beliefs,
    select_investigation,
)
from .smallworld import Network, NetworkParams, generate, random_edge

DEFAULT_AGENTS = 100
DEFAULT_PROPOSITIONS = 100
DEFAULT_MAX_STEPS = 10000
DEFAULT_CONVERGENCE_WINDOW = 100


@dataclass(frozen=True)
class SimulationConfig:
    network: NetworkParams
    evidence_rate: float
    epsilon: float
    num_agents: int = DEFAULT_AGENTS
    num_propositions: int = DEFAULT_PROPOSITIONS
    max_steps: int = DEFAULT_MAX_STEPS
    convergence_window: int = DEFAULT_CONVERGENCE_WINDOW
    seed: int = 0
    record_trajectory: bool = False

    def __post_init__(self):
        if self.num_agents < 2:
            raise ValueError(f"num_agents must be >= 2, got {self.num_agents}")
        if self.num_propositions < 1:
            raise ValueError(f"num_propositions must be >= 1, got {self.num_propositions}")
        if self.network.m != self.num_agents:
            raise ValueError(
                f"network.m ({self.network.m}) must equal num_agents ({self.num_agents})"
            )
        if not 0.0 < self.evidence_rate <= 1.0:
            raise ValueError(f"evidence_rate must be in (0, 1], got {self.evidence_rate}")
        if not 0.0 <= self.epsilon <= 0.5:
            raise ValueError(f"epsilon must be in [0, 0.5], got {self.epsilon}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.convergence_window < 1:
            raise ValueError(f"convergence_window must be >= 1, got {self.convergence_window}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def build(cls, num_agents: int = DEFAULT_AGENTS, k: int = 10, rho: float = 0.0,
              **kwargs) -> "SimulationConfig":
        """Конструктор с плоскими параметрами сети"""
        return cls(network=NetworkParams(num_agents, k, rho), num_agents=num_agents, **kwargs)


@dataclass
class RunState:
    """
    Изменяемое состояние прогона

    beliefs хранится матрицей m x n, строка j - убеждение агента j.
    """
    t: int
    beliefs: np.ndarray
    world: np.ndarray
    network: Network
    rng: np.random.Generator
    unchanged_interactions: int = 0
    interactions: int = 0


@dataclass(frozen=True)
class RunResult:
    converged: bool
    steps: int
    final_average_error: float
    seed: int = 0
    interactions: int = 0
    trajectory: Optional[Tuple[float, ...]] = None


def init_run(config: SimulationConfig) -> RunState:
    """
    Инициализация прогона: мир из одних истин, полностью невежественные агенты

    Args:
        config: Конфигурация прогона

    Returns:
        RunState: Состояние при t = 0
    """
    rng = np.random.default_rng(config.seed)
    network = generate(config.network, rng)
    beliefs = np.full(
        (config.num_agents, config.num_propositions), TruthValue.UNKNOWN, dtype=np.int8
    )
    return RunState(
        t=0,
        beliefs=beliefs,
        world=all_true_world(config.num_propositions),
        network=network,
        rng=rng,
    )


def _record(state: RunState, changed: bool) -> None:
    state.interactions += 1
    if changed:
        state.unchanged_interactions = 0
    else:
        state.unchanged_interactions += 1


def step(state: RunState, config: SimulationConfig, rng: np.random.Generator) -> RunState:
    """
    Один временной шаг

    Сначала фаза свидетельств: каждый агент с неопределёнными предложениями
    (по возрастанию индекса) с вероятностью r исследует одно из них.
    Затем одно случайное ребро, оба агента принимают слитое убеждение.

    Args:
        state: Текущее состояние, изменяется на месте
        config: Конфигурация прогона
        rng: Генератор случайных чисел прогона

    Returns:
        RunState: То же состояние после шага
    """
    if state.t >= config.max_steps:
        raise RuntimeError(f"Run already reached max_steps={config.max_steps}")

    beliefs = state.beliefs

    # Агенты без неопределённости перестают искать свидетельства и не тянут жребий
    seekers = np.flatnonzero((beliefs == TruthValue.UNKNOWN).any(axis=1))
    if seekers.size:
        learners = seekers[rng.random(seekers.size) < config.evidence_rate]
        for agent in learners:
            i = select_investigation(beliefs[agent], rng)
            evidence = draw_evidence(state.world, i, config.epsilon, rng)
            updated = apply_evidence(beliefs[agent], evidence)
            changed = not np.array_equal(updated, beliefs[agent])
            beliefs[agent] = updated
            _record(state, changed)

    u, v = random_edge(state.network, rng)
    changed = not np.array_equal(beliefs[u], beliefs[v])
    if changed:
        fused = fuse_beliefs(beliefs[u], beliefs[v])
        beliefs[u] = fused
        beliefs[v] = fused
    _record(state, changed)

    state.t += 1
    return state


def run(config: SimulationConfig) -> RunResult:
    """
    Полный прогон до сходимости или до max_steps

    Args:
        config: Конфигурация прогона

    Returns:
        RunResult: Итог прогона
    """
    state = init_run(config)
    trajectory: Optional[List[float]] = [] if config.record_trajectory else None
    converged = False

    while state.t < config.max_steps:
        step(state, config, state.rng)
        if trajectory is not None:
            trajectory.append(average_error(state.beliefs, state.world))
        if state.unchanged_interactions >= config.convergence_window:
            converged = True
            break

    error = average_error(state.beliefs, state.world)
    logging.debug(
        f"Run seed={config.seed} converged={converged} steps={state.t} error={error:.6f}"
    )
    return RunResult(
        converged=converged,
        steps=state.t,
        final_average_error=error,
        seed=config.seed,
        interactions=state.interactions,
        trajectory=tuple(trajectory) if trajectory is not None else None,
    )
