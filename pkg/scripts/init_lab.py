#!/usr/bin/env python3
"""
Script de Inicialização do QConn Lab
Valida configuração, prepara diretórios de saída e executa uma checagem rápida dos simuladores
"""

import sys
from pathlib import Path

# Adiciona raiz do projeto ao PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core import QueryLedger, SearchSpace, get_config
from src.core.graphs import MatrixGraph
from src.core.grover import grover_known_count, make_rng, statevector_success_prob, success_prob_known_t
from src.services.connectivity_service import q_connected
from src.utils import get_audit_logger


def print_header(text: str):
    """Imprime cabeçalho formatado"""
    print(f"\n{'='*60}")
    print(f"  {text}")
    print(f"{'='*60}\n")


def validate_config():
    """Valida configuração do laboratório"""
    print_header("Validando Configuração")

    try:
        config = get_config()
        print(f"✅ Configuração carregada")
        print(f"   Ambiente: {config.environment}")
        print(f"   Saída: {config.paths.output_dir}")
        print(f"   Boosting: {config.grover.boost_policy} (c0={config.grover.bbht_cutoff_factor})")

        config.validate_environment()
        print(f"✅ Ambiente validado")

        config.paths.ensure_directories()
        print(f"✅ Diretórios criados/verificados")

        return True

    except Exception as e:
        print(f"❌ Erro na configuração: {e}")
        return False


def check_simulator():
    """Confere a fórmula fechada contra o vetor de estado e uma busca de contagem conhecida"""
    print_header("Verificando Simulador de Grover")

    gap = abs(success_prob_known_t(64, 1, 6) - statevector_success_prob(64, [17], 6))
    if gap > 1e-9:
        print(f"❌ Fórmula fechada diverge do vetor de estado: {gap:.3e}")
        return False
    print(f"✅ Fórmula fechada = vetor de estado (N=64, j=6)")

    outcome = grover_known_count(SearchSpace.from_marked(4, [2], QueryLedger()), 1, make_rng(0))
    if not (outcome.found and outcome.queries == 2):
        print(f"❌ Busca N=4, t=1 deveria achar com 2 consultas: {outcome}")
        return False
    print(f"✅ Busca N=4, t=1: 2 consultas")
    return True


def check_connectivity():
    """Executa q_connected em um caminho pequeno"""
    print_header("Verificando Conectividade")

    config = get_config()
    path = MatrixGraph.from_edges(8, [(i, i + 1) for i in range(7)])
    report = q_connected(path, config.grover, make_rng(config.grover.rng_seed))
    print(f"   Caminho P8: answer={report.answer} queries={report.queries}")
    if report.queries <= 0:
        print("❌ Nenhuma consulta registrada")
        return False
    print(f"✅ Ledger de consultas ativo")
    return True


def check_audit():
    """Verifica diretório de auditoria"""
    print_header("Verificando Auditoria")

    try:
        stats = get_audit_logger().get_stats()
        print(f"✅ Auditoria em {stats['log_directory']}")
        print(f"   Arquivos ativos: {stats['active_log_files']}  compactados: {stats['compressed_log_files']}")
        return True
    except OSError as e:
        print(f"❌ Erro na auditoria: {e}")
        return False


def main():
    """Função principal"""
    print_header("QConn Lab - Inicialização")

    steps = [
        ("Configuração", validate_config),
        ("Simulador", check_simulator),
        ("Conectividade", check_connectivity),
        ("Auditoria", check_audit),
    ]

    results = []

    for step_name, step_func in steps:
        success = step_func()
        results.append((step_name, success))
        if not success:
            print(f"\n❌ Falha na etapa: {step_name}")
            break

    print_header("Resumo da Inicialização")

    for step_name, success in results:
        status = "✅" if success else "❌"
        print(f"{status} {step_name}")

    if all(success for _, success in results):
        print("\n🎉 Laboratório pronto!")
        print("\nPróximos passos:")
        print("  1. python scripts/qconn_lab.py verify --suite all")
        print("  2. python scripts/qconn_lab.py gen --family one-cycle --n 12 --out results/c12.txt")
        print("  3. python scripts/qconn_lab.py bench --config sweeps/q_connected_cycles.cfg")
        return 0

    print("\n❌ Inicialização falhou. Corrija os erros acima e tente novamente.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
