#!/usr/bin/env python3
"""
Verifier CLI - Riga di comando del verificatore

Sottocomandi: params, verify, lpbound, recover-graph10, export.
Lo standard output contiene solo il report JSON canonico; barre di
avanzamento e diagnostica vanno su standard error.

Codici di uscita: 0 nessuna violazione, 1 violazione o ricerca fallita,
2 argomenti, I/O o ammissibilità.
"""

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from tqdm import tqdm

from cli import __version__
from core.artifact_manager import ArtifactManager
from core.dense_engine import DyadicComplex, kl_check
from core.errors import ConstructionError, DimensionError, NotAdmissibleError, RecoveryError
from core.gottesman_family import generators, hamming_identity, verify_pure_distance3
from core.lp_bound import (hamming_bound, lp_feasible, restricted_constraints,
                           theorem_replay)
from core.pasting_engine import (assemble, code_dimension, dimension_exponent,
                                 optimal_stabilizer_parameters, params, verify_distance3_pure)
from core.pauli_algebra import count_errors, enumerate_errors
from core.graph_model import Graph, edge_orbits
from core.small_codes import (G1_FILENAME, V1_LABELS, build_code9, build_code10,
                              codeword_subsets, load_graph10, pi_map, recover_graph10,
                              tau_map)
from utils.session_logger import SessionLogger

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

# flag che non cambiano i valori riportati
_RUNTIME_FLAGS = {"handler", "threads", "json", "data_dir", "no_progress"}


@dataclass
class RunReport:
    """Report di una esecuzione (un solo report per esecuzione)"""

    command: str
    inputs: Dict[str, Any]
    outcome: str = "pass"
    counters: Dict[str, int] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0
    exit_code: int = EXIT_OK

    def fail_if(self, violated: bool):
        if violated:
            self.outcome = "fail"
            self.exit_code = EXIT_VIOLATION

    def to_dict(self) -> Dict[str, Any]:
        # elapsed_ms va solo nel file di sessione
        return ArtifactManager.with_schema("run_report", {
            "command": self.command,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "counters": self.counters,
            "details": self.details,
            "tool_version": __version__,
        })


def _progress(args: argparse.Namespace, total: int, desc: str, unit: str = "err") -> tqdm:
    return tqdm(total=total, desc=desc, file=sys.stderr, disable=args.no_progress,
                leave=False, unit=unit)


def _is_integer(value: DyadicComplex, expected: int) -> bool:
    return value.imag == 0 and value.real == expected


def _small_code(args: argparse.Namespace, artifacts: ArtifactManager, a: int):
    if a == 0:
        return build_code9()
    graph = load_graph10(artifacts, from_scratch=getattr(args, "from_scratch", False),
                         threads=args.threads)
    return build_code10(graph)


def _graph10_for(args: argparse.Namespace, artifacts: ArtifactManager, a: int) -> Optional[Graph]:
    if a != 1:
        return None
    return load_graph10(artifacts, from_scratch=getattr(args, "from_scratch", False),
                        threads=args.threads)


# --- comandi ---

def cmd_params(args: argparse.Namespace, artifacts: ArtifactManager,
               logger: SessionLogger, report: RunReport):
    """N, K = 3·2^e, k dello stabilizzatore ottimo e bound di Hamming"""
    n, k_dim, k_opt = params(args.m, args.a)
    report.details = {
        "N": n,
        "K": f"3*2^{dimension_exponent(args.m, args.a)}",
        "K_value": str(k_dim),
        "stabilizer_k": k_opt,
        "hamming_s": hamming_bound(n),
        "theorem_s": 2 * args.m + 6,
        "comparison": optimal_stabilizer_parameters(args.m, args.a),
    }
    if args.m == 0:
        report.details["small_code"] = f"(({n},{k_dim},3))"
    logger.log_step("params")


def _verify_small(args, artifacts, logger, report, a: int):
    code = _small_code(args, artifacts, a)
    trace = code.projector.trace()
    logger.log_step("construction")

    if a == 0:
        named_tag, named_op, named_expected = "A0", code.named["A0"], 2 ** 8
    else:
        named_tag, named_op, named_expected = "B0", code.observables["B0"], 2 ** 9
    named_trace = named_op.trace()

    errors = enumerate_errors(code.num_qubits, args.max_weight)
    kl = kl_check(code.projector, errors, threads=args.threads)
    logger.log_step("knill_laflamme", errors_checked=kl.errors_checked,
                    violations=len(kl.violations))

    report.details = {
        "code": code.to_json(),
        "dimension": str(trace),
        f"trace_{named_tag}": str(named_trace),
        "knill_laflamme": kl.to_dict(),
    }
    if a == 1:
        report.details["codeword_subsets"] = len(codeword_subsets())
    report.counters = {"errors_checked": kl.errors_checked,
                       "violations": len(kl.violations)}
    report.fail_if(not (kl.pure and _is_integer(trace, code.declared_dimension)
                        and _is_integer(named_trace, named_expected)))


def _verify_gottesman(args, artifacts, logger, report):
    code = generators(args.r)
    independent = code.is_independent()
    logger.log_step("generators")
    purity = verify_pure_distance3(code, max_weight=args.max_weight, threads=args.threads)
    logger.log_step("syndrome_sweep", errors_checked=purity.errors_checked,
                    violations=len(purity.violations), elapsed_ms=purity.elapsed_ms)
    report.details = {
        "parameters": code.parameters(),
        "generators": code.num_generators,
        "independent": independent,
        "hamming_identity": hamming_identity(args.r),
        "purity": purity.to_dict(),
    }
    report.counters = {"errors_checked": purity.errors_checked,
                       "violations": len(purity.violations)}
    report.fail_if(not (independent and purity.passed))


def _verify_pasted(args, artifacts, logger, report):
    code = assemble(args.m, args.a, _graph10_for(args, artifacts, args.a))
    logger.log_step("assemble")
    dimension = code_dimension(code)
    logger.log_step("dimension")

    with _progress(args, count_errors(code.num_qubits, args.max_weight), "sweep") as bar:
        purity = verify_distance3_pure(code, max_weight=args.max_weight, threads=args.threads,
                                       progress=bar.update)
    logger.log_step("pepe_sweep", errors_checked=purity.errors_checked,
                    violations=len(purity.violations), elapsed_ms=purity.elapsed_ms)
    report.details = {
        "N": code.num_qubits,
        "K": f"3*2^{dimension_exponent(args.m, args.a)}",
        "dimension": str(dimension),
        "observables": len(code.observables),
        "purity": purity.to_dict(),
    }
    report.counters = {"errors_checked": purity.errors_checked,
                       "violations": len(purity.violations)}
    report.fail_if(not purity.passed)


def cmd_verify(args: argparse.Namespace, artifacts: ArtifactManager,
               logger: SessionLogger, report: RunReport):
    """Validazione completa del bersaglio"""
    if args.target == "small9":
        _verify_small(args, artifacts, logger, report, 0)
    elif args.target == "small10":
        _verify_small(args, artifacts, logger, report, 1)
    elif args.target == "gottesman":
        _verify_gottesman(args, artifacts, logger, report)
    else:
        _verify_pasted(args, artifacts, logger, report)


def cmd_lpbound(args: argparse.Namespace, artifacts: ArtifactManager,
                logger: SessionLogger, report: RunReport):
    """Replay del teorema o fattibilità esatta del LP ristretto"""
    if args.mode == "theorem":
        replay = theorem_replay(args.n)
        for description, holds in replay.transcript:
            print(f"  {'✓' if holds else '✗'} {description}", file=sys.stderr)
        report.details = {**replay.to_dict(), "hamming_s": hamming_bound(args.n)}
        logger.log_step("theorem", errors_checked=len(replay.transcript))
        return

    s = args.s if args.s is not None else hamming_bound(args.n)
    result = lp_feasible(restricted_constraints(args.n, s))
    logger.log_step("simplex")
    report.details = {**result.to_dict(), "hamming_s": hamming_bound(args.n)}
    # un certificato non verificato è un errore del risolutore
    report.fail_if(not result.verified)


def cmd_recover_graph10(args: argparse.Namespace, artifacts: ArtifactManager,
                        logger: SessionLogger, report: RunReport):
    """Oracolo di ricerca di G_1 e scrittura del grafo"""
    frozen = artifacts.read_json(args.out or G1_FILENAME)
    total = 1 << len(edge_orbits(V1_LABELS, [pi_map(), tau_map()]))
    with _progress(args, total, "candidati", unit="grafo") as bar:
        result = recover_graph10(threads=args.threads, find_all=args.all, progress=bar.update)
    code = build_code10(result.graph)
    logger.log_step("recovery", errors_checked=result.candidates, elapsed_ms=result.elapsed_ms)

    target = artifacts.write_json(args.out or G1_FILENAME, result.graph.to_json())
    report.details = {
        **result.to_dict(),
        "dimension": str(code.projector.trace()),
        "matches_frozen": None if frozen is None else frozen == result.graph.to_json(),
        "written": target.name,
    }
    if args.all:
        report.details["solution_graphs"] = [g.to_json() for g in result.solution_graphs()]
    report.counters = {"candidates": result.candidates, "solutions": len(result.solutions)}


def cmd_export(args: argparse.Namespace, artifacts: ArtifactManager,
               logger: SessionLogger, report: RunReport):
    """Export JSON del codice o dei generatori"""
    if args.target == "small9":
        payload = build_code9().to_json()
    elif args.target == "small10":
        payload = _small_code(args, artifacts, 1).to_json()
        payload["codeword_subsets"] = codeword_subsets().to_json()
    elif args.target == "gottesman":
        code = generators(args.r)
        payload = {**code.to_json(), "parameters": code.parameters()}
    else:
        payload = assemble(args.m, args.a, _graph10_for(args, artifacts, args.a)).to_json()
    payload = ArtifactManager.with_schema(f"export_{args.target}", payload)
    logger.log_step("export")

    report.details = {"export": payload}
    if args.out:
        target = artifacts.write_json(args.out, payload)
        report.details = {"written": str(target)}


# --- parser ---

class _DistanceAction(argparse.Action):
    """--distance d: codice puro a distanza d, cioè errori di peso <= d - 1"""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, "max_weight", values - 1)


def _add_target_args(parser: argparse.ArgumentParser):
    parser.add_argument("target", choices=["small9", "small10", "gottesman", "pasted"],
                        help="Codice da trattare")
    parser.add_argument("--r", type=int, default=1, help="Indice r della famiglia di Gottesman")
    parser.add_argument("--m", type=int, default=1, help="Indice m del codice incollato")
    parser.add_argument("--a", type=int, choices=[0, 1], default=0, help="Seme a (0: 9 qubit, 1: 10 qubit)")
    parser.add_argument("--from-scratch", action="store_true",
                        help="Ricalcola G_1 invece di leggere il file congelato")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="Worker paralleli")
    common.add_argument("--json", metavar="OUT", help="Scrive anche il report in OUT")
    common.add_argument("--data-dir", help="Cartella dei dati congelati (default: ./data)")
    common.add_argument("--no-progress", action="store_true", help="Nessuna barra di avanzamento")

    parser = argparse.ArgumentParser(
        prog="nonadditive-verifier",
        description="Verifica esatta dei codici nonadditivi ((N, 3·2^e, 3)) e dei bound LP",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="Parametri di D_(m,a)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, choices=[0, 1], required=True)
    p.set_defaults(handler=cmd_params)

    p = sub.add_parser("verify", parents=[common], help="Validazione completa")
    _add_target_args(p)
    weight = p.add_mutually_exclusive_group()
    weight.add_argument("--max-weight", type=int, choices=[1, 2], default=2,
                        help="Peso massimo degli errori nella sweep (c_E = 0 per ogni errore "
                             "di peso <= W: purezza a distanza W + 1)")
    weight.add_argument("--distance", type=int, choices=[2, 3], action=_DistanceAction,
                        default=argparse.SUPPRESS,
                        help="Distanza pura da verificare, equivale a --max-weight d-1")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("lpbound", parents=[common], help="Bound dal LP ristretto")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["theorem", "lp"], default="theorem")
    p.add_argument("--s", type=int, help="s = n - k da testare (default: bound di Hamming)")
    p.set_defaults(handler=cmd_lpbound)

    p = sub.add_parser("recover-graph10", parents=[common], help="Ricerca del grafo G_1")
    p.add_argument("--all", action="store_true", help="Enumera tutte le soluzioni")
    p.add_argument("--out", help=f"File del grafo (default: {G1_FILENAME} nella cartella dati)")
    p.set_defaults(handler=cmd_recover_graph10)

    p = sub.add_parser("export", parents=[common], help="Export JSON")
    _add_target_args(p)
    p.add_argument("--out", help="File di destinazione (default: standard output)")
    p.set_defaults(handler=cmd_export)
    return parser


def run(argv=None) -> int:
    """Esegue un comando e restituisce il codice di uscita"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in _RUNTIME_FLAGS}
    report = RunReport(command=args.command, inputs=inputs)
    logger = SessionLogger(args.command)
    artifacts = ArtifactManager(args.data_dir)
    if args.json:
        logger.set_report_path(artifacts.path(args.json))
    logger.log_run_start(inputs)

    handler: Callable[..., None] = args.handler
    start = time.perf_counter()
    try:
        handler(args, artifacts, logger, report)
    except (ConstructionError, RecoveryError) as e:
        _record_error(report, logger, e, EXIT_VIOLATION)
    except (DimensionError, NotAdmissibleError, OSError, ValueError) as e:
        _record_error(report, logger, e, EXIT_USAGE)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)

    text = ArtifactManager.canonical_dumps(report.to_dict())
    sys.stdout.write(text)
    if args.json:
        try:
            artifacts.write_json(args.json, report.to_dict())
        except OSError as e:
            print(f"Errore scrittura report: {e}", file=sys.stderr)
            report.exit_code = EXIT_USAGE
    logger.log_step("report", elapsed_ms=report.elapsed_ms)
    logger.end_session(report.exit_code)
    return report.exit_code


def _record_error(report: RunReport, logger: SessionLogger, error: Exception, code: int):
    print(f"❌ {type(error).__name__}: {error}", file=sys.stderr)
    logger.log_error(type(error).__name__, str(error))
    report.outcome = "error"
    report.exit_code = code
    report.details = {"error": type(error).__name__, "message": str(error)}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
