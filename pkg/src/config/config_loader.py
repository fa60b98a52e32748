import os
from pathlib import Path
import yaml
from typing import Dict, Any

OUTPUT_DIR_ENV = "NETLEARN_OUTPUT_DIR"


class ConfigLoader:
    def __init__(self, config_path: str = "config.yaml"):
        self.config_path = config_path
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Загрузка конфигурации из файла"""
        config_file = Path(self.config_path)
        if not config_file.exists():
            return {}

        with open(config_file, encoding='utf-8') as f:
            try:
                config = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ValueError(f"Malformed config {config_file}: {e}") from e
        if not isinstance(config, dict):
            raise ValueError(f"{config_file}: top-level YAML value must be a mapping")
        return config

    def get_simulation_config(self) -> Dict[str, Any]:
        """Получение значений по умолчанию для одиночного прогона"""
        defaults = {
            "agents": 100,
            "propositions": 100,
            "max_steps": 10000,
            "convergence_window": 100,
            "evidence_rate": 0.05,
            "noise": 0.0,
            "k": 10,
            "rho": 0.0,
            "seed": 1,
        }
        return {**defaults, **self.config.get("simulation", {})}

    def get_harness_config(self) -> Dict[str, Any]:
        """Получение настроек пакетного запуска"""
        harness = {
            "runs_per_cell": 100,
            "workers": 0,
            "output_dir": "./results",
            **self.config.get("harness", {}),
        }
        # Переменная окружения важнее файла
        if os.environ.get(OUTPUT_DIR_ENV):
            harness["output_dir"] = os.environ[OUTPUT_DIR_ENV]
        return harness

    def get_logging_config(self) -> Dict[str, Any]:
        """Получение настроек логирования"""
        return self.config.get("logging", {
            "path": "./logs/netlearn.log",
            "level": "INFO",
            "rotate_size_mb": 5,
            "rotate_backups": 3
        })

    def get_log_fields(self) -> Dict[str, bool]:
        """Получение настроек полей логирования"""
        return self.config.get("log_fields", {
            "cell": True,
            "seed": True,
            "converged": True,
            "steps": True,
            "error": True,
            "duration_ms": True
        })
