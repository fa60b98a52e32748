from pathlib import Path
import yaml
from typing import Dict, Any, List, Optional

from ..core.engine import SimulationConfig
from ..harness.sweep import SweepSpec

TOP_LEVEL_KEYS = {"base", "k_values", "rho_values", "r_values", "epsilon_values", "runs_per_cell", "base_seed"}
BASE_KEYS = {"agents", "propositions", "max_steps", "convergence_window", "record_trajectory"}


class SweepSpecLoader:
    def __init__(self, spec_path: str, defaults: Optional[Dict[str, Any]] = None):
        self.spec_path = spec_path
        # defaults - секция simulation из config.yaml
        self.defaults = defaults or {}
        self.raw = self._load_file()

    def _load_file(self) -> Dict[str, Any]:
        """Загрузка YAML-файла описания пакета"""
        spec_file = Path(self.spec_path)
        try:
            with open(spec_file, encoding='utf-8') as f:
                raw = yaml.safe_load(f) or {}
        except OSError as e:
            raise OSError(f"Cannot read sweep spec {spec_file}: {e.strerror or e}") from e
        except yaml.YAMLError as e:
            raise ValueError(f"Malformed sweep spec {spec_file}: {e}") from e

        if not isinstance(raw, dict):
            raise ValueError(f"{spec_file}: sweep spec must be a mapping")
        unknown = set(raw) - TOP_LEVEL_KEYS
        if unknown:
            raise ValueError(f"{spec_file}: unknown keys {sorted(unknown)}")
        unknown = set(raw.get("base") or {}) - BASE_KEYS
        if unknown:
            raise ValueError(f"{spec_file}: unknown base keys {sorted(unknown)}")
        return raw

    def _values(self, key: str, cast) -> List[Any]:
        """
        Чтение списочного параметра

        Args:
            key: Имя ключа
            cast: Приведение типа элемента (int или float)

        Returns:
            List[Any]: Значения списка
        """
        values = self.raw.get(key)
        if values is None:
            raise ValueError(f"{self.spec_path}: missing required key {key!r}")
        if not isinstance(values, list):
            values = [values]
        try:
            return [cast(v) for v in values]
        except (TypeError, ValueError) as e:
            raise ValueError(f"{self.spec_path}: bad value in {key!r}: {e}") from e

    def get_base_config(self) -> SimulationConfig:
        """Базовая конфигурация; сеть, r и epsilon - заглушки, перекрываемые ячейками"""
        base = {**self.defaults, **(self.raw.get("base") or {})}
        agents = int(base.get("agents", 100))
        return SimulationConfig.build(
            num_agents=agents,
            k=agents - 1,
            rho=0.0,
            evidence_rate=1.0,
            epsilon=0.0,
            num_propositions=int(base.get("propositions", 100)),
            max_steps=int(base.get("max_steps", 10000)),
            convergence_window=int(base.get("convergence_window", 100)),
            record_trajectory=bool(base.get("record_trajectory", False)),
        )

    def load(self, runs_per_cell: Optional[int] = None, base_seed: Optional[int] = None,
             default_runs: int = 100) -> SweepSpec:
        """
        Построение SweepSpec; аргументы перекрывают значения из файла

        Args:
            runs_per_cell: Число прогонов в ячейке
            base_seed: Базовый seed
            default_runs: Число прогонов, если его нет ни в аргументах, ни в файле

        Returns:
            SweepSpec: Описание пакета
        """
        return SweepSpec(
            base=self.get_base_config(),
            k_values=tuple(self._values("k_values", int)),
            rho_values=tuple(self._values("rho_values", float)),
            r_values=tuple(self._values("r_values", float)),
            epsilon_values=tuple(self._values("epsilon_values", float)),
            runs_per_cell=runs_per_cell if runs_per_cell is not None else int(self.raw.get("runs_per_cell", default_runs)),
            base_seed=base_seed if base_seed is not None else int(self.raw.get("base_seed", 0)),
        )
