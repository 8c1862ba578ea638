"""
Tree-walking interpreter for checked Green programs.

``green.runtime.interpreter.run_program`` is the entry point; the other
modules hold the value model, array and catch-stack machinery, the native
method registry, reflection mirrors and shell handling.
"""
