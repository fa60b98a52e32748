"""
Запись результатов пакета в CSV
"""
import csv
import logging
from pathlib import Path
from typing import Iterable, List, Sequence

from ..core.engine import RunResult
from ..utils.csv_utils import CSVUtils, RAW_HEADER, SUMMARY_HEADER, TRAJECTORY_HEADER
from .sweep import CellSummary, RunRecord

RAW_FILENAME = "raw_results.csv"
SUMMARY_FILENAME = "summary.csv"

SUMMARY_METRICS = (
    "mean_error", "p10_error", "p90_error",
    "mean_steps", "p10_steps", "p90_steps", "fraction_converged",
)


def _write_csv(path: Path, header: List[str], rows: Iterable[List[str]]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise OSError(f"Failed to write {path}: {e.strerror or e}") from e
    logging.info(f"Wrote {path}")


def write_results(summaries: Sequence[CellSummary], raw_results: Sequence[RunRecord],
                  output_path: str) -> None:
    """
    Запись сырого и сводного CSV в каталог output_path

    Args:
        summaries: Сводки ячеек
        raw_results: Все прогоны
        output_path: Каталог назначения
    """
    directory = Path(output_path)

    raw_sorted = sorted(raw_results, key=lambda rec: (*rec.cell, rec.run_index))
    _write_csv(
        directory / RAW_FILENAME,
        RAW_HEADER,
        (CSVUtils.raw_row(*rec.cell, rec.run_index, rec.result) for rec in raw_sorted),
    )

    summary_sorted = sorted(summaries, key=lambda s: s.cell)
    _write_csv(
        directory / SUMMARY_FILENAME,
        SUMMARY_HEADER,
        (CSVUtils.summary_row(s) for s in summary_sorted),
    )


def write_heatmap(summaries: Sequence[CellSummary], path: str, epsilon: float, rho: float,
                  metric: str = "mean_error") -> None:
    """
    Сводная таблица r x k одной метрики при фиксированных epsilon и rho

    Args:
        summaries: Сводки ячеек
        path: Файл назначения
        epsilon: Уровень шума
        rho: Вероятность перестановки
        metric: Поле CellSummary
    """
    if metric not in SUMMARY_METRICS:
        raise ValueError(f"Unknown heatmap metric {metric!r}, expected one of {SUMMARY_METRICS}")

    selected = [s for s in summaries if s.epsilon == epsilon and s.rho == rho]
    k_values = sorted({s.k for s in selected})
    r_values = sorted({s.r for s in selected})
    grid = {(s.r, s.k): getattr(s, metric) for s in selected}

    rows = (
        [CSVUtils.format_float(r)] + [
            CSVUtils.format_float(grid[(r, k)]) if (r, k) in grid else ""
            for k in k_values
        ]
        for r in r_values
    )
    _write_csv(Path(path), ["r"] + [f"k={k}" for k in k_values], rows)


def write_trajectory(result: RunResult, path: str) -> None:
    if result.trajectory is None:
        raise ValueError("Run was executed without trajectory recording")
    rows = (
        [str(t), CSVUtils.format_float(error)]
        for t, error in enumerate(result.trajectory, start=1)
    )
    _write_csv(Path(path), TRAJECTORY_HEADER, rows)
