"""
Пакетный запуск: перебор параметров, повторные прогоны с детерминированными seed, агрегация
"""
import asyncio
import hashlib
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..core.engine import RunResult, SimulationConfig, run
from ..core.smallworld import NetworkParams
from ..logutils.logger import SimulationLogger
from ..utils.csv_utils import CSVUtils
from .stats import mean, percentile


class Cell(NamedTuple):
    """Ячейка сетки; порядок полей совпадает с порядком сортировки результатов"""
    epsilon: float
    r: float
    k: int
    rho: float

    def label(self) -> str:
        return f"eps={self.epsilon} r={self.r} k={self.k} rho={self.rho}"


@dataclass(frozen=True)
class SweepSpec:
    """
    Описание пакетного эксперимента

    Параметры сети, r, epsilon и seed в base перекрываются значениями ячейки.
    """
    base: SimulationConfig
    k_values: Tuple[int, ...]
    rho_values: Tuple[float, ...]
    r_values: Tuple[float, ...]
    epsilon_values: Tuple[float, ...]
    runs_per_cell: int = 100
    base_seed: int = 0

    def __post_init__(self):
        for name in ("k_values", "rho_values", "r_values", "epsilon_values"):
            values = getattr(self, name)
            if not values:
                raise ValueError(f"{name} must not be empty")
            if len(set(values)) != len(values):
                raise ValueError(f"{name} contains duplicates: {list(values)}")
            # В CSV значения пишутся с 6 знаками; ячейки должны различаться и после округления
            formatted = [CSVUtils.format_float(v) for v in values]
            if len(set(formatted)) != len(values) or any(
                v != 0 and f.strip("-") == CSVUtils.format_float(0.0) for v, f in zip(values, formatted)
            ):
                raise ValueError(f"{name} must be distinct and non-zero at 6 decimals, got {list(values)}")
        if self.runs_per_cell < 1:
            raise ValueError(f"runs_per_cell must be >= 1, got {self.runs_per_cell}")
        if not 0 <= self.base_seed < 2 ** 64:
            raise ValueError(f"base_seed must be a 64-bit unsigned integer, got {self.base_seed}")

    def cells(self) -> Iterator[Cell]:
        for epsilon, r, k, rho in itertools.product(
            self.epsilon_values, self.r_values, self.k_values, self.rho_values
        ):
            yield Cell(epsilon, r, k, rho)

    def cell_config(self, cell: Cell, run_index: int) -> SimulationConfig:
        """
        Конфигурация прогона для ячейки

        Args:
            cell: Ячейка сетки
            run_index: Номер прогона в ячейке

        Returns:
            SimulationConfig: Конфигурация с производным seed
        """
        try:
            return replace(
                self.base,
                network=NetworkParams(self.base.num_agents, cell.k, cell.rho),
                evidence_rate=cell.r,
                epsilon=cell.epsilon,
                seed=derive_seed(self.base_seed, cell.k, cell.rho, cell.r, cell.epsilon, run_index),
            )
        except ValueError as e:
            raise ValueError(f"Invalid sweep cell ({cell.label()}): {e}") from e


@dataclass(frozen=True)
class RunRecord:
    cell: Cell
    run_index: int
    result: RunResult


@dataclass(frozen=True)
class CellSummary:
    epsilon: float
    r: float
    k: int
    rho: float
    runs: int
    mean_error: float
    p10_error: float
    p90_error: float
    mean_steps: float
    p10_steps: float
    p90_steps: float
    fraction_converged: float

    @property
    def cell(self) -> Cell:
        return Cell(self.epsilon, self.r, self.k, self.rho)


def derive_seed(base_seed: int, k: int, rho: float, r: float, epsilon: float, run_index: int) -> int:
    """Стабильный 64-битный seed прогона (hash() в Python рандомизирован, поэтому sha256)"""
    key = f"{base_seed}|{k}|{float(rho)!r}|{float(r)!r}|{float(epsilon)!r}|{run_index}"
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "big")


def summarize(cell: Cell, records: Sequence[RunRecord]) -> CellSummary:
    """
    Агрегация прогонов ячейки; результат не зависит от порядка records

    Args:
        cell: Ячейка сетки
        records: Прогоны ячейки

    Returns:
        CellSummary: Средние и 10/90 перцентили ошибки и числа шагов
    """
    if not records:
        raise ValueError(f"No runs to summarize for cell ({cell.label()})")
    ordered = sorted(records, key=lambda rec: rec.run_index)
    errors = [rec.result.final_average_error for rec in ordered]
    steps = [float(rec.result.steps) for rec in ordered]
    return CellSummary(
        epsilon=cell.epsilon,
        r=cell.r,
        k=cell.k,
        rho=cell.rho,
        runs=len(ordered),
        mean_error=mean(errors),
        p10_error=percentile(errors, 10),
        p90_error=percentile(errors, 90),
        mean_steps=mean(steps),
        p10_steps=percentile(steps, 10),
        p90_steps=percentile(steps, 90),
        fraction_converged=sum(rec.result.converged for rec in ordered) / len(ordered),
    )


class SweepRunner:
    def __init__(self, spec: SweepSpec, logger: Optional[SimulationLogger] = None, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.spec = spec
        self.logger = logger
        self.workers = workers

    def _jobs(self) -> List[Tuple[Cell, int, SimulationConfig]]:
        """Все прогоны; некорректная ячейка прерывает пакет до первого запуска"""
        return [
            (cell, run_index, self.spec.cell_config(cell, run_index))
            for cell in self.spec.cells()
            for run_index in range(self.spec.runs_per_cell)
        ]

    def _log_run(self, cell: Cell, run_index: int, result: RunResult, started: float) -> None:
        if self.logger is None:
            return
        self.logger.log_event(
            'debug', f"{result.seed:016x}"[:8],
            cell=f"{cell.label()} #{run_index}",
            seed=result.seed,
            converged=result.converged,
            steps=result.steps,
            error=result.final_average_error,
            duration=round((time.time() - started) * 1000),
        )

    async def _run_one(self, loop: asyncio.AbstractEventLoop, pool: ProcessPoolExecutor,
                       cell: Cell, run_index: int, config: SimulationConfig) -> RunRecord:
        started = time.time()
        result = await loop.run_in_executor(pool, run, config)
        self._log_run(cell, run_index, result, started)
        return RunRecord(cell, run_index, result)

    async def start(self) -> List[RunRecord]:
        """Параллельное выполнение прогонов в пуле процессов"""
        jobs = self._jobs()
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return await asyncio.gather(*(
                self._run_one(loop, pool, cell, run_index, config)
                for cell, run_index, config in jobs
            ))

    def _run_inline(self) -> List[RunRecord]:
        records = []
        for cell, run_index, config in self._jobs():
            started = time.time()
            result = run(config)
            self._log_run(cell, run_index, result, started)
            records.append(RunRecord(cell, run_index, result))
        return records

    def run(self) -> List[Tuple[CellSummary, List[RunRecord]]]:
        """
        Запуск пакета и агрегация по ячейкам

        Returns:
            List[Tuple[CellSummary, List[RunRecord]]]: В порядке декартова произведения списков
        """
        started = time.time()
        cells = list(self.spec.cells())
        logging.info(
            f"🚀 Sweep started: {len(cells)} cells x {self.spec.runs_per_cell} runs, "
            f"workers={self.workers}"
        )

        records = self._run_inline() if self.workers == 1 else asyncio.run(self.start())

        by_cell = {cell: [] for cell in cells}
        for record in records:
            by_cell[record.cell].append(record)

        results = []
        for cell in cells:
            cell_records = sorted(by_cell[cell], key=lambda rec: rec.run_index)
            summary = summarize(cell, cell_records)
            results.append((summary, cell_records))
            if self.logger is not None:
                self.logger.log_event(
                    'info', "sweep", cell=cell.label(),
                    converged=summary.fraction_converged == 1.0,
                    steps=round(summary.mean_steps),
                    error=summary.mean_error,
                )

        logging.info(f"🏁 Sweep finished in {round(time.time() - started, 1)}s")
        return results


def run_sweep(spec: SweepSpec, workers: int = 1,
              logger: Optional[SimulationLogger] = None) -> List[Tuple[CellSummary, List[RunRecord]]]:
    return SweepRunner(spec, logger, workers).run()
