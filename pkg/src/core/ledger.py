"""
Contador de Consultas ao Oráculo
"""

from dataclasses import dataclass


@dataclass
class QueryLedger:
    """
    Contador monótono de consultas ao oráculo (células da matriz, slots da lista,
    iterações de Grover). Um ledger por tentativa; nunca compartilhado entre tentativas
    concorrentes.
    """
    count: int = 0

    def charge(self, units: int = 1) -> int:
        """Cobra `units` consultas e devolve o total acumulado"""
        if units < 0:
            raise ValueError(f"cobrança negativa não permitida: {units}")
        self.count += units
        return self.count

    def reset(self):
        """Zera o contador (somente no início de uma tentativa)"""
        self.count = 0

    def since(self, mark: int) -> int:
        """Consultas cobradas desde a marca `mark`"""
        return self.count - mark
