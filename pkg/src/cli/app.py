import argparse
import csv
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..config.config_loader import ConfigLoader
from ..config.sweep_loader import SweepSpecLoader
from ..core import engine, smallworld
from ..harness.results import write_heatmap, write_results, write_trajectory
from ..harness.sweep import SweepRunner
from ..logutils.logger import SimulationLogger
from ..utils.csv_utils import CSVUtils, RAW_HEADER

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

# Имя параметра в сообщении об ошибке -> флаг командной строки
FLAG_NAMES = {
    "num_agents": "--agents",
    "m": "--agents",
    "num_propositions": "--props",
    "n": "--props",
    "k": "--k",
    "rho": "--rho",
    "evidence_rate": "--evidence-rate",
    "epsilon": "--noise",
    "max_steps": "--max-steps",
    "convergence_window": "--window",
    "seed": "--seed",
    "workers": "--threads",
    "runs_per_cell": "--runs",
    "base_seed": "--seed",
}


class UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Ошибки разбора превращаются в исключение вместо sys.exit(2)"""

    def error(self, message: str):
        raise UsageError(message)


def _with_flag(error: ValueError) -> str:
    message = str(error)
    flag = FLAG_NAMES.get(message.split(" ", 1)[0])
    return f"{flag}: {message}" if flag else message


class NetLearnApp:
    def __init__(self, config_path: str = "config.yaml"):
        self.config_loader = ConfigLoader(config_path)
        self.logger = SimulationLogger(self.config_loader)
        self.sim_defaults = self.config_loader.get_simulation_config()
        self.harness_config = self.config_loader.get_harness_config()

    def build_parser(self) -> argparse.ArgumentParser:
        """Парсер с подкомандами; значения по умолчанию берутся из config.yaml"""
        d = self.sim_defaults
        parser = _ArgumentParser(prog="netlearn", description="Collective learning on small-world networks",
                                 allow_abbrev=False)
        parser.add_argument("--config", default="config.yaml", help="application config (YAML)")
        sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

        def add_network_flags(p: argparse.ArgumentParser) -> None:
            p.add_argument("--agents", type=int, default=d["agents"], help="number of agents m")
            p.add_argument("--k", type=int, default=d["k"], help="nearest neighbours k")
            p.add_argument("--rho", type=float, default=d["rho"], help="rewiring probability rho")
            p.add_argument("--seed", type=int, default=d["seed"], help="random seed")

        simulate = sub.add_parser("simulate", help="run one seeded simulation", allow_abbrev=False)
        add_network_flags(simulate)
        simulate.add_argument("--props", type=int, default=d["propositions"], help="number of propositions n")
        simulate.add_argument("--evidence-rate", type=float, default=d["evidence_rate"], help="evidence rate r")
        simulate.add_argument("--noise", type=float, default=d["noise"], help="evidence noise epsilon")
        simulate.add_argument("--max-steps", type=int, default=d["max_steps"])
        simulate.add_argument("--window", type=int, default=d["convergence_window"],
                              help="convergence window in interactions")
        simulate.add_argument("--trajectory", help="write per-step average error to this CSV")

        sweep = sub.add_parser("sweep", help="run a parameter sweep from a YAML spec", allow_abbrev=False)
        sweep.add_argument("--spec", required=True, help="sweep spec file")
        sweep.add_argument("--output", default=self.harness_config["output_dir"], help="output directory")
        sweep.add_argument("--threads", type=int, default=self.harness_config["workers"],
                           help="worker processes (0 = all cores)")
        sweep.add_argument("--runs", type=int, help="override runs_per_cell")
        sweep.add_argument("--seed", type=int, help="override base_seed")
        sweep.add_argument("--heatmap", action="store_true", help="also write r x k heatmaps per (epsilon, rho)")

        gen = sub.add_parser("gen-network", help="export a generated network as an edge list",
                             allow_abbrev=False)
        add_network_flags(gen)
        gen.add_argument("--output", help="edge list file")
        gen.add_argument("--stats", action="store_true", help="print structural statistics")

        # --config допустим и после подкоманды; файл уже прочитан в parse_and_dispatch
        for p in (simulate, sweep, gen):
            p.add_argument("--config", default=argparse.SUPPRESS, help="application config (YAML)")

        return parser

    def simulate(self, args: argparse.Namespace) -> int:
        config = engine.SimulationConfig.build(
            num_agents=args.agents,
            k=args.k,
            rho=args.rho,
            evidence_rate=args.evidence_rate,
            epsilon=args.noise,
            num_propositions=args.props,
            max_steps=args.max_steps,
            convergence_window=args.window,
            seed=args.seed,
            record_trajectory=args.trajectory is not None,
        )
        result = engine.run(config)
        self.logger.log_event('info', f"{config.seed:016x}"[:8],
                              seed=result.seed, converged=result.converged,
                              steps=result.steps, error=result.final_average_error)

        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(RAW_HEADER)
        writer.writerow(CSVUtils.raw_row(args.noise, args.evidence_rate, args.k, args.rho, 0, result))

        if args.trajectory:
            write_trajectory(result, args.trajectory)
        return EXIT_OK

    def sweep(self, args: argparse.Namespace) -> int:
        spec = SweepSpecLoader(args.spec, self.sim_defaults).load(
            args.runs, args.seed, self.harness_config["runs_per_cell"]
        )
        workers = args.threads or os.cpu_count() or 1

        results = SweepRunner(spec, self.logger, workers).run()
        summaries = [summary for summary, _ in results]
        records = [record for _, cell_records in results for record in cell_records]
        write_results(summaries, records, args.output)

        if args.heatmap:
            for epsilon in spec.epsilon_values:
                for rho in spec.rho_values:
                    path = Path(args.output) / f"heatmap_eps{epsilon:g}_rho{rho:g}.csv"
                    write_heatmap(summaries, str(path), epsilon, rho)

        print(f"{len(summaries)} cells, {len(records)} runs written to {args.output}")
        return EXIT_OK

    def gen_network(self, args: argparse.Namespace) -> int:
        params = smallworld.NetworkParams(args.agents, args.k, args.rho)
        net = smallworld.generate(params, np.random.default_rng(args.seed))
        output = args.output or str(
            Path(self.harness_config["output_dir"])
            / f"network_m{args.agents}_k{args.k}_rho{args.rho:g}_seed{args.seed}.txt"
        )
        smallworld.write_edgelist(net, output)
        print(f"{len(net.edges)} edges written to {output}")

        if args.stats:
            stats = smallworld.describe(net)
            for name, value in vars(stats).items():
                print(f"{name}: {'' if value is None else value}")
        return EXIT_OK

    def run(self, argv: List[str]) -> int:
        """Разбор аргументов и выполнение подкоманды"""
        args = self.build_parser().parse_args(argv)
        handler = {
            "simulate": self.simulate,
            "sweep": self.sweep,
            "gen-network": self.gen_network,
        }[args.command]
        return handler(args)


def parse_and_dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа командной строки

    Args:
        argv: Аргументы без имени программы; по умолчанию sys.argv[1:]

    Returns:
        int: 0 - успех, 1 - ошибка валидации, 2 - ошибка ввода-вывода
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pre = _ArgumentParser(add_help=False, allow_abbrev=False)
        pre.add_argument("--config", default="config.yaml")
        known, _ = pre.parse_known_args(argv)
        return NetLearnApp(known.config).run(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as e:
        message = _with_flag(e)
        logging.error(message)
        print(f"error: {message}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        logging.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        logging.info("🛑 Interrupted")
        return 130
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
