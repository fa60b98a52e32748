from typing import Any, List

RAW_HEADER = ["epsilon", "r", "k", "rho", "run_index", "seed", "converged", "steps", "final_avg_error"]
SUMMARY_HEADER = [
    "epsilon", "r", "k", "rho", "runs", "fraction_converged",
    "mean_error", "p10_error", "p90_error", "mean_steps", "p10_steps", "p90_steps",
]
TRAJECTORY_HEADER = ["step", "avg_error"]


class CSVUtils:
    @staticmethod
    def format_float(value: float) -> str:
        """Вещественные числа всегда с 6 знаками после запятой"""
        return f"{value:.6f}"

    @staticmethod
    def format_bool(value: bool) -> str:
        return "true" if value else "false"

    @staticmethod
    def raw_row(epsilon: float, r: float, k: int, rho: float, run_index: int, result: Any) -> List[str]:
        """
        Строка сырого CSV для одного прогона

        Args:
            epsilon, r, k, rho: Параметры ячейки
            run_index: Номер прогона в ячейке
            result: RunResult прогона

        Returns:
            List[str]: Поля в порядке RAW_HEADER
        """
        return [
            CSVUtils.format_float(epsilon),
            CSVUtils.format_float(r),
            str(k),
            CSVUtils.format_float(rho),
            str(run_index),
            str(result.seed),
            CSVUtils.format_bool(result.converged),
            str(result.steps),
            CSVUtils.format_float(result.final_average_error),
        ]

    @staticmethod
    def summary_row(summary: Any) -> List[str]:
        """
        Строка сводного CSV для ячейки

        Args:
            summary: CellSummary

        Returns:
            List[str]: Поля в порядке SUMMARY_HEADER
        """
        f = CSVUtils.format_float
        return [
            f(summary.epsilon), f(summary.r), str(summary.k), f(summary.rho),
            str(summary.runs), f(summary.fraction_converged),
            f(summary.mean_error), f(summary.p10_error), f(summary.p90_error),
            f(summary.mean_steps), f(summary.p10_steps), f(summary.p90_steps),
        ]
