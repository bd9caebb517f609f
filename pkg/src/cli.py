"""
Interface de Linha de Comando do QConn Lab
Subcomandos gen, run, bench, adversary e verify sobre os serviços do laboratório.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.core.config import Config, get_config
from src.core.errors import PromiseViolation, QConnLabError
from src.core.graphs import Graph, MatrixGraph, require_valid, validate_graph
from src.core.grover import make_rng
from src.core.log import get_logger
from src.services.adversary_service import (
    AdversaryParams,
    adversary_bound,
    cycle_relation_params,
    gadget_relation_params,
    parity_relation,
)
from src.services.connectivity_service import q_connected_learning
from src.services.harness_service import (
    ALGORITHMS,
    FAMILIES,
    SweepConfig,
    emit_csv,
    emit_report,
    fit_exponent,
    run_sweep,
    summarize,
)
from src.services.instance_service import (
    CycleSpec,
    GadgetSpec,
    ParitySpec,
    gen_cycle_instance,
    gen_origin_gadget,
    gen_parity_graph,
    gen_random_list,
    gen_random_matrix,
    gen_random_matrix_edges,
    undirected_list_view,
)
from src.utils.audit_logger import get_audit_logger
from src.utils.graph_io import read_graph, write_graph
from src.utils.validator import InvariantValidator

logger = get_logger(__name__)

SUITES = ("grover-crosscheck", "known-count", "min-finding", "lemma", "generators", "adversary", "all")


def print_header(text: str):
    """Imprime cabeçalho formatado"""
    print(f"\n{'='*60}")
    print(f"  {text}")
    print(f"{'='*60}\n")


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "abort"
    return "true" if value else "false"


# ============================================================================
# gen
# ============================================================================

def _parse_lengths(text: Optional[str]):
    if not text:
        return None
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 2:
        raise PromiseViolation(f"--lengths espera dois valores a,b (recebido {text!r})")
    return parts[0], parts[1]


def _random_bits(n: int, seed: int) -> str:
    if n < 2 or n % 2:
        raise PromiseViolation(f"sem --bits, n deve ser 2p par (recebido {n})")
    rng = make_rng(seed)
    return "".join(str(int(b)) for b in rng.integers(0, 2, size=n // 2))


def generate_graph(args: argparse.Namespace) -> Graph:
    """Instância da família pedida com os parâmetros da linha de comando"""
    family = args.family

    if family in ("one-cycle", "two-cycle"):
        g = gen_cycle_instance(CycleSpec(n=args.n, variant=family, lengths=_parse_lengths(args.lengths), seed=args.seed))
        return undirected_list_view(g) if args.model == "list" else g

    if family == "gnp":
        return gen_random_matrix(args.n, args.edge_prob, directed=args.directed, seed=args.seed)

    if family == "gnm":
        return gen_random_matrix_edges(args.n, args.k, directed=args.directed, seed=args.seed)

    if family == "random-list":
        return gen_random_list(args.n, args.k, seed=args.seed)

    bits = args.bits or _random_bits(args.n, args.seed)
    if family == "parity":
        return gen_parity_graph(ParitySpec(bits))
    return gen_origin_gadget(GadgetSpec(bits, args.k, seed=args.seed))


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate_graph(args)
    result = validate_graph(g)
    if not result.is_valid:
        # instâncias degeneradas (p = 1 com bit par) existem só em memória
        raise PromiseViolation(f"{args.family} gerou um grafo que o arquivo não aceita: {result.message}")
    path = write_graph(g, args.out)
    model = "matrix" if isinstance(g, MatrixGraph) else "list"
    print(f"✅ {args.family}: n={g.n} modelo={model} → {path}")
    return 0


# ============================================================================
# run
# ============================================================================

def _check_model(algo: str, g: Graph):
    entry = ALGORITHMS[algo]
    model = "matrix" if isinstance(g, MatrixGraph) else "list"
    if entry.model not in ("any", model):
        raise PromiseViolation(f"{algo} usa o modelo {entry.model}; o arquivo traz um grafo {model}")
    if entry.kind == "connectivity":
        if g.directed:
            raise PromiseViolation(f"{algo} exige grafo não direcionado (#directed=0)")
        require_valid(validate_graph(g, undirected=True))
    else:
        require_valid(validate_graph(g))


def cmd_run(args: argparse.Namespace, config: Config) -> int:
    g = read_graph(args.graph)
    _check_model(args.algo, g)

    grover = config.grover
    seed = grover.rng_seed if args.seed is None else args.seed
    rng = make_rng(seed)

    if args.algo == "q_connected_learning":
        m = g.edge_cell_count if args.m is None else args.m
        report = q_connected_learning(g, m, grover, rng)
    else:
        report = ALGORITHMS[args.algo].run(g, grover, rng)

    print(f"answer={_flag(report.answer)} queries={report.queries}")
    get_audit_logger().log_run(args.algo, str(args.graph), report.answer, report.queries, seed)
    return 0


# ============================================================================
# bench
# ============================================================================

def cmd_bench(args: argparse.Namespace, config: Config) -> int:
    sweep = SweepConfig.from_file(args.config)
    if args.workers:
        sweep = sweep.model_copy(update={"workers": args.workers})

    output = Path(args.output or sweep.output or config.paths.output_dir / f"{sweep.algorithm}_{sweep.family}.csv")
    report = args.report or sweep.report

    print_header(f"Varredura {sweep.algorithm} × {sweep.family}")
    print(f"   Pontos: {len(sweep.points())}  Tentativas/ponto: {sweep.trials}  Modelo: {sweep.model}")

    records = run_sweep(sweep, config.grover, config.harness)
    emit_csv(records, output)
    print(f"\n✅ {len(records)} registros → {output}")

    table = summarize(records)
    print("\n📊 Resumo por ponto:")
    print(table.to_string(index=False))

    if report:
        fit = fit_exponent(records, sweep.fit_x)
        emit_report(fit, report)
        print(f"\n📈 Inclinação log-log ({sweep.fit_x}): {fit.slope:.4f}  resíduo={fit.residual:.4f} → {report}")

    correct_rate = sum(r.correct for r in records) / len(records) if records else 0.0
    get_audit_logger().log_sweep(
        sweep.algorithm, sweep.family, len(sweep.points()), len(records), correct_rate, str(output),
        metadata={"base_seed": sweep.base_seed, "trials": sweep.trials},
    )
    return 0


# ============================================================================
# adversary
# ============================================================================

def _print_table(key_names: Sequence[str], rows: List[tuple]):
    header = list(key_names) + ["m", "m_prime", "l_max", "bound"]
    print("  ".join(f"{h:>8}" for h in header))
    for keys, params in rows:
        values = [str(v) for v in keys] + [str(params.m), str(params.m_prime), str(params.l_max), f"{params.bound:.4f}"]
        print("  ".join(f"{v:>8}" for v in values))


def cmd_adversary(args: argparse.Namespace) -> int:
    rows: List[tuple] = []
    if args.relation == "parity":
        for n in args.n:
            rows.append(((n,), adversary_bound(parity_relation(n))))
        _print_table(["n"], rows)
    elif args.relation == "cycle":
        for n in args.n:
            rows.append(((n,), cycle_relation_params(n, relabel_samples=args.samples, seed=args.seed)))
        _print_table(["n"], rows)
    else:
        for p in args.p:
            for k in args.k:
                params: AdversaryParams = gadget_relation_params(p, k, samples=args.samples, seed=args.seed)
                rows.append(((p, k), params))
        _print_table(["p", "k"], rows)
    return 0


# ============================================================================
# verify
# ============================================================================

def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    if args.trials:
        verify = config.verify.model_copy(update={"monte_carlo_trials": args.trials})
        config = config.model_copy(update={"verify": verify})

    validator = InvariantValidator(config, seed=args.seed)
    audit = get_audit_logger()
    failed = 0

    print_header(f"Verificação: {args.suite}")
    for result in validator.run(args.suite):
        audit.log_verify(result.suite, result.passed, result.checks, result.failures)
        icon = "✅" if result.passed else "❌"
        print(f"{icon} {result.suite}: {result.checks} verificações em {result.elapsed:.1f}s")
        for failure in result.failures[:10]:
            print(f"      {failure}")
        if len(result.failures) > 10:
            print(f"      ... e mais {len(result.failures) - 10} falha(s)")
        failed += int(not result.passed)

    if failed:
        print(f"\n⚠️  {failed} suíte(s) com falha")
        return 1
    print("\n🎉 Todas as suítes passaram")
    return 0


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qconn_lab",
        description="Laboratório de conectividade no modelo de consultas (simulação de Grover)",
    )
    sub = parser.add_subparsers(dest="command", metavar="{gen,run,bench,adversary,verify}")
    sub.required = True

    gen = sub.add_parser("gen", help="Gera um arquivo de instância")
    gen.add_argument("--family", required=True, choices=sorted(FAMILIES))
    gen.add_argument("--n", type=int, required=True, help="Vértices (2p para parity/origin-gadget)")
    gen.add_argument("--k", type=int, default=3, help="Grau de saída, ou células de aresta m para gnm")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--model", choices=("matrix", "list"), default="matrix", help="Modelo das famílias de ciclo")
    gen.add_argument("--lengths", help="Comprimentos a,b para two-cycle")
    gen.add_argument("--bits", help="Cadeia x para parity/origin-gadget (ex.: 0110)")
    gen.add_argument("--edge-prob", type=float, default=0.5)
    gen.add_argument("--directed", action="store_true")
    gen.add_argument("--out", required=True, type=Path)

    run = sub.add_parser("run", help="Executa um algoritmo sobre um arquivo de grafo")
    run.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    run.add_argument("--graph", required=True, type=Path)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--m", type=int, default=None, help="Células de aresta para q_connected_learning")

    bench = sub.add_parser("bench", help="Executa uma varredura descrita em arquivo")
    bench.add_argument("--config", required=True, type=Path)
    bench.add_argument("--output", type=Path, default=None)
    bench.add_argument("--report", type=Path, default=None)
    bench.add_argument("--workers", type=int, default=None)

    adversary = sub.add_parser("adversary", help="Tabela de parâmetros do limite de adversário")
    adversary.add_argument("--relation", choices=("parity", "cycle", "gadget"), default="cycle")
    adversary.add_argument("--n", type=int, nargs="+", default=[9, 12, 15, 18])
    adversary.add_argument("--p", type=int, nargs="+", default=[2, 3, 4])
    adversary.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    adversary.add_argument("--samples", type=int, default=2)
    adversary.add_argument("--seed", type=int, default=0)

    verify = sub.add_parser("verify", help="Executa as suítes de invariantes")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=None, help="Tentativas Monte Carlo (≥ 100)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Ponto de entrada; devolve o código de saída"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = get_config()
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "run":
            return cmd_run(args, config)
        if args.command == "bench":
            return cmd_bench(args, config)
        if args.command == "adversary":
            return cmd_adversary(args)
        return cmd_verify(args, config)

    except (QConnLabError, ValueError, OSError) as e:
        print(f"\n❌ {type(e).__name__}: {e}", file=sys.stderr)
        logger.error("command_failed", command=args.command, error=str(e))
        try:
            get_audit_logger().log_error(type(e).__name__, str(e), {"command": args.command})
        except OSError:
            pass
        return 1


if __name__ == "__main__":
    sys.exit(main())
