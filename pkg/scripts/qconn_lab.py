#!/usr/bin/env python3
"""
Script de Entrada do QConn Lab
Executa a CLI do laboratório a partir da raiz do projeto
"""

import sys
from pathlib import Path

# Adiciona raiz do projeto ao PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
