import argparse
import json
import logging
import sys
from pathlib import Path

from src.config.consts import DEFAULT_PLB_BETAS, DEFAULT_PLB_TS, EXIT_OK
from src.config.settings import settings
from src.errors import PlbEaError, StorageError, UsageError
from src.models import ExperimentConfig, GenSpec, Problem
from src.services.experiment_service import ExperimentService
from src.services.graph_service import GraphService
from src.services.oracle_service import METHODS, OracleService
from src.services.plb_service import PlbService
from src.services.statistics_service import StatisticsService
from src.utils.report_pdf import ReportPdf
from src.utils.tools import format_table

logger = logging.getLogger(__name__)


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de números inválida: '{text}'")


class HarnessApp:
    """CLI de experimentos: gen, check-plb, run, oracle, drift y report."""

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.graph_service = GraphService()
        self.plb_service = PlbService()
        self.oracle_service = OracleService()
        self.stats_service = StatisticsService()

        self.parser = argparse.ArgumentParser(prog="plbea", description="Algoritmos evolutivos sobre grafos PLB-U")
        self.parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING o ERROR")
        subparsers = self.parser.add_subparsers(dest="command", required=True)
        self._setup_gen_parser(subparsers)
        self._setup_check_plb_parser(subparsers)
        self._setup_run_parser(subparsers)
        self._setup_oracle_parser(subparsers)
        self._setup_drift_parser(subparsers)
        self._setup_report_parser(subparsers)

    # --- Utilidades ---
    def _emit(self, text: str):
        self.out.write(text if text.endswith("\n") else text + "\n")

    def _emit_json(self, data):
        self._emit(json.dumps(data, sort_keys=True, indent=2))

    @staticmethod
    def _add_gen_flags(parser, required_model: bool = False):
        parser.add_argument("--model", choices=GenSpec.MODELS, required=required_model)
        parser.add_argument("--n", type=int, default=0)
        parser.add_argument("--attach-m", type=int, default=1)
        parser.add_argument("--beta-target", type=float, default=2.5)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--path", default=None, help="archivo de aristas (modelo edge-list)")

    @staticmethod
    def _gen_spec(args, seed: int | None = None) -> GenSpec:
        return GenSpec(
            model=args.model,
            n=args.n,
            attach_m=args.attach_m,
            beta_target=args.beta_target,
            seed=args.seed if seed is None else seed,
            path=args.path,
        )

    def _load_graph(self, args):
        """--graph tiene prioridad; si no, se genera con los flags del modelo."""
        if getattr(args, "graph", None):
            success, result = self.graph_service.load_graph(args.graph)
        elif getattr(args, "model", None):
            success, result = self.graph_service.generate_graph(self._gen_spec(args))
            if success:
                result = result[0]
        else:
            raise UsageError("Indique --graph o un modelo generador (--model).")
        if not success:
            raise result
        return result

    # --- gen ---
    def _setup_gen_parser(self, subparsers):
        parser = subparsers.add_parser("gen", help="genera un grafo y lo escribe en JSON o como lista de aristas")
        self._add_gen_flags(parser, required_model=True)
        parser.add_argument("--out", default=None, help="ruta de salida: .json o lista de aristas (stdout en JSON si se omite)")
        parser.set_defaults(action=self._gen_action)

    def _gen_action(self, args) -> int:
        success, result = self.graph_service.generate_graph(self._gen_spec(args), args.out)
        if not success:
            raise result
        graph, text = result
        if args.out:
            self._emit(f"Grafo escrito en {args.out} (n={graph.n}, m={graph.m})")
        else:
            self._emit(text)
        return EXIT_OK

    # --- check-plb ---
    def _setup_check_plb_parser(self, subparsers):
        parser = subparsers.add_parser("check-plb", help="certifica PLB-U y calcula las constantes")
        parser.add_argument("--graph", required=True)
        parser.add_argument("--beta", type=float, default=2.5)
        parser.add_argument("--t", type=float, default=0.0)
        parser.add_argument("--c1", type=float, default=None, help="c1 a verificar (por defecto el ajustado)")
        parser.add_argument("--grid", action="store_true", help="reporta toda la grilla (beta, t)")
        parser.add_argument("--betas", type=_float_list, default=DEFAULT_PLB_BETAS)
        parser.add_argument("--ts", type=_float_list, default=DEFAULT_PLB_TS)
        parser.set_defaults(action=self._check_plb_action)

    def _check_plb_action(self, args) -> int:
        graph = self._load_graph(args)
        if args.grid:
            success, result = self.plb_service.check_grid(graph, args.betas, args.ts)
        else:
            success, result = self.plb_service.check_graph(graph, args.beta, args.t, args.c1)
        if not success:
            raise result
        self._emit_json(result)
        return EXIT_OK

    # --- run ---
    def _setup_run_parser(self, subparsers):
        parser = subparsers.add_parser("run", help="corre un experimento y escribe el CSV de resultados")
        parser.add_argument("--config", default=None, help="ExperimentConfig en JSON")
        parser.add_argument("--graph", default=None)
        self._add_gen_flags(parser)
        parser.add_argument("--problem", default=None)
        parser.add_argument("--algo", default=None)
        parser.add_argument("--trials", type=int, default=1)
        parser.add_argument("--budget", type=int, default=None, help="máximo de evaluaciones por corrida")
        parser.add_argument("--betas", type=_float_list, default=DEFAULT_PLB_BETAS)
        parser.add_argument("--ts", type=_float_list, default=DEFAULT_PLB_TS)
        parser.add_argument("--mvc-literal", action="store_true")
        parser.add_argument("--out", default="results.csv")
        parser.add_argument("--workers", type=int, default=None)
        parser.add_argument("--exact-limit", type=int, default=None)
        parser.set_defaults(action=self._run_action)

    def _config_from_args(self, args) -> ExperimentConfig:
        if args.config:
            try:
                data = json.loads(Path(args.config).read_text(encoding="utf-8"))
            except OSError as e:
                raise StorageError(f"No se pudo leer la configuración: {e}")
            except json.JSONDecodeError as e:
                raise UsageError(f"Configuración JSON inválida: {e.msg}")
            return ExperimentConfig.from_dict(data)
        if not args.problem or not args.algo:
            raise UsageError("run requiere --problem y --algo (o --config).")
        return ExperimentConfig(
            problem=args.problem,
            algorithm=args.algo,
            trials=args.trials,
            base_seed=args.seed,
            gen=None if args.graph or not args.model else self._gen_spec(args),
            graph_path=args.graph,
            max_evaluations=args.budget,
            betas=args.betas,
            ts=args.ts,
            output=args.out,
            mvc_literal=args.mvc_literal,
        )

    def _run_action(self, args) -> int:
        config = self._config_from_args(args)
        service = ExperimentService(exact_limit=args.exact_limit, workers=args.workers)
        success, result = service.run(config)
        if not success:
            raise result
        columns = ["trial", "seed", "evals_to_feasible", "best_size", "reference", "ratio", "theo_bound"]
        self._emit(format_table(result["rows"], columns))
        self._emit(f"{len(result['rows'])} corridas escritas en {result['output']}")
        return EXIT_OK

    # --- oracle ---
    def _setup_oracle_parser(self, subparsers):
        parser = subparsers.add_parser("oracle", help="óptimo exacto, construcción golosa o cotas")
        parser.add_argument("--graph", required=True)
        parser.add_argument("--problem", required=True)
        parser.add_argument("--method", choices=METHODS, default="exact")
        parser.add_argument("--limit", type=int, default=None, help="límite de vértices del solver exacto")
        parser.set_defaults(action=self._oracle_action)

    def _oracle_action(self, args) -> int:
        graph = self._load_graph(args)
        success, result = self.oracle_service.solve(graph, Problem.parse(args.problem), args.method, args.limit)
        if not success:
            raise result
        self._emit_json(result)
        return EXIT_OK

    # --- drift ---
    def _setup_drift_parser(self, subparsers):
        parser = subparsers.add_parser("drift", help="mide la deriva del EA en la fase no factible")
        parser.add_argument("--graph", default=None)
        self._add_gen_flags(parser)
        parser.add_argument("--problem", default="MDS")
        parser.add_argument("--mvc-literal", action="store_true")
        parser.add_argument("--trials", type=int, default=200)
        parser.add_argument("--budget", type=int, default=None)
        parser.add_argument("--workers", type=int, default=None)
        parser.add_argument("--json", dest="json_out", default=None, help="escribe el reporte completo en JSON")
        parser.set_defaults(action=self._drift_action)

    def _drift_action(self, args) -> int:
        graph = self._load_graph(args)
        problem = Problem.parse(args.problem, args.mvc_literal)
        service = ExperimentService(workers=args.workers)
        success, report = service.drift(graph, problem, args.trials, args.seed, args.budget)
        if not success:
            raise report
        data = report.to_dict()
        if args.json_out:
            self._write_text(args.json_out, json.dumps(data, sort_keys=True, indent=2) + "\n")
        columns = ["potential", "samples", "mean_decrease", "expected", "ratio", "below"]
        self._emit(format_table(data["bins"], columns))
        self._emit(f"Bins bajo s/(e n) con >= {report.min_samples} muestras: {report.flagged or 'ninguno'}")
        return EXIT_OK

    # --- report ---
    def _setup_report_parser(self, subparsers):
        parser = subparsers.add_parser("report", help="agrega un CSV de resultados")
        parser.add_argument("results", nargs="+", help="uno o varios CSV de resultados")
        parser.add_argument("--json", dest="json_out", default=None, help="ruta del SummaryReport en JSON")
        parser.add_argument("--pdf", default=None, help="exporta la tabla a PDF")
        parser.set_defaults(action=self._report_action)

    def _report_action(self, args) -> int:
        success, summary = self.stats_service.report(args.results)
        if not success:
            raise summary
        text = json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n"
        if args.json_out:
            self._write_text(args.json_out, text)
        else:
            self._emit(text)
        self._emit(format_table(summary.rows, list(summary.rows[0]) if summary.rows else []))
        for study in summary.scaling:
            self._emit(format_table(
                [dict(step, problem=study["problem"], algo=study["algo"]) for step in study["doubling"]],
                ["problem", "algo", "n", "next_n", "ratio", "expected"],
            ))
        if args.pdf:
            ReportPdf(summary, args.pdf).generate_pdf()
            self._emit(f"PDF generado en {args.pdf}")
        return EXIT_OK

    @staticmethod
    def _write_text(path: str, text: str):
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise StorageError(f"No se pudo escribir '{path}': {e}")

    def run(self, argv=None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)

        settings.configure_logging(getattr(logging, args.log_level.upper(), None) if args.log_level else None)
        try:
            return args.action(args)
        except PlbEaError as e:
            print(f"Error: {e}", file=sys.stderr)
            return e.exit_code
        except OSError as e:
            print(f"Error de archivo: {e}", file=sys.stderr)
            return StorageError.exit_code
