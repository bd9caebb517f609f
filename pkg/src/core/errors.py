"""
Exceções do QConn Lab
"""


class QConnLabError(Exception):
    """Erro base do laboratório"""


class PromiseViolation(QConnLabError, ValueError):
    """Grafo ou especificação de instância viola a promessa exigida"""


class SearchError(QConnLabError, ValueError):
    """Pré-condição de busca inválida (t = 0, contagem divergente, N acima do limite)"""


class RetryCapExceeded(QConnLabError, RuntimeError):
    """Limite de tentativas (ou de orçamento) da aprendizagem da matriz excedido"""

    def __init__(self, message: str, queries: int = 0):
        super().__init__(message)
        self.queries = queries


class SweepConfigError(QConnLabError, ValueError):
    """Configuração de varredura inválida"""


class RelationError(QConnLabError, ValueError):
    """Relação de adversário inválida ou fora da escala de enumeração"""
