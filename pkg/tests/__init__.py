"""
Testes do QConn Lab
"""
