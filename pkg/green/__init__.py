"""
Green language toolchain: lexer, parser, structural type checker and
tree-walking interpreter.
"""

__version__ = "0.1.0"
