"""
Fixed-width arithmetic for the basic classes.

``integer`` is 32-bit two's complement, ``long`` 64-bit, ``byte`` unsigned
8-bit and ``char`` an 8-bit code. ``real`` is IEEE binary32 through
``numpy.float32``; ``double`` is a Python float.
"""

from __future__ import annotations

import math
from typing import Any, Optional

import numpy as np

INTEGRAL = ("char", "byte", "integer", "long")
NUMERIC = ("byte", "integer", "long", "real", "double")
FLOATING = ("real", "double")

LIMITS = {
    "char": (0, 255),
    "byte": (0, 255),
    "integer": (-2**31, 2**31 - 1),
    "long": (-2**63, 2**63 - 1),
}
WIDTH = {"char": 8, "byte": 8, "integer": 32, "long": 64}

REAL_MAX = float(np.finfo(np.float32).max)
REAL_MIN = float(np.finfo(np.float32).tiny)
DOUBLE_MAX = float(np.finfo(np.float64).max)
DOUBLE_MIN = float(np.finfo(np.float64).tiny)

# Highest code getMaxIntegerChar reports for char conversions.
CHAR_INTEGER_MAX = 127


class ArithmeticFault(Exception):
    """An operation the language turns into an exception object."""

    def __init__(self, exception_class: str):
        self.exception_class = exception_class
        super().__init__(exception_class)


def to_real(value: Any) -> np.float32:
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        return np.float32(value)


def wrap(kind: str, value: int) -> int:
    """Reduce ``value`` to the range of an integral kind."""
    bits = WIDTH[kind]
    value &= (1 << bits) - 1
    if kind in ("integer", "long") and value >= 1 << (bits - 1):
        value -= 1 << bits
    return value


def zero(kind: str) -> Any:
    if kind == "boolean":
        return False
    if kind == "char":
        return "\0"
    if kind == "real":
        return np.float32(0.0)
    if kind == "double":
        return 0.0
    return 0


def format_real(value: Any) -> str:
    number = float(value)
    if math.isnan(number):
        return "NaN"
    if math.isinf(number):
        return "Inf" if number > 0 else "-Inf"
    return f"{number:.6E}"


def format_value(kind: str, value: Any) -> str:
    if kind == "boolean":
        return "true" if value else "false"
    if kind == "char":
        return value
    if kind in FLOATING:
        return format_real(value)
    return str(value)


def _float_result(kind: str, result: float, a: float, b: float, op: str) -> Any:
    if math.isinf(result) and not (math.isinf(a) or math.isinf(b)):
        raise ArithmeticFault("RealOverflowException")
    if result == 0 and op in ("*", "/") and a != 0 and b != 0 and not math.isinf(a) \
            and not math.isinf(b):
        raise ArithmeticFault("RealUnderflowException")
    return to_real(result) if kind == "real" else float(result)


def binary(op: str, kind: str, a: Any, b: Any) -> Any:
    """Apply an arithmetic or bitwise operator to two values of one kind."""
    if kind in FLOATING:
        if op in ("/",) and b == 0:
            raise ArithmeticFault("DivisionByZeroException")
        if kind == "real":
            with np.errstate(all="ignore"):
                x, y = np.float32(a), np.float32(b)
                result = {"+": x + y, "-": x - y, "*": x * y, "/": x / y}[op]
            return _float_result(kind, float(result), float(a), float(b), op)
        x, y = float(a), float(b)
        try:
            result = {"+": lambda: x + y, "-": lambda: x - y, "*": lambda: x * y,
                      "/": lambda: x / y}[op]()
        except OverflowError:
            raise ArithmeticFault("RealOverflowException")
        return _float_result(kind, result, x, y, op)
    if op in ("/", "%"):
        if b == 0:
            raise ArithmeticFault("DivisionByZeroException")
        quotient = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            quotient = -quotient
        if op == "/":
            return wrap(kind, quotient)
        return wrap(kind, a - quotient * b)
    if op == "+":
        return wrap(kind, a + b)
    if op == "-":
        return wrap(kind, a - b)
    if op == "*":
        return wrap(kind, a * b)
    if op == "&":
        return wrap(kind, a & b)
    if op == "|":
        return wrap(kind, a | b)
    if op == "^":
        return wrap(kind, a ^ b)
    count = b & (WIDTH[kind] - 1)
    if op == "<<":
        return wrap(kind, a << count)
    if op == ">>":
        if kind == "byte":
            return (a & 0xFF) >> count
        return wrap(kind, a >> count)
    raise ValueError(f"unknown operator {op}")


def unary(op: str, kind: str, value: Any) -> Any:
    if op == "+":
        return value
    if op == "-":
        if kind == "real":
            return to_real(-float(value))
        if kind == "double":
            return -value
        return wrap(kind, -value)
    if op == "~":
        return wrap(kind, ~value)
    raise ValueError(f"unknown operator {op}")


def step(kind: str, value: Any, delta: int) -> Any:
    """``++`` and ``--``."""
    if kind == "char":
        return chr(wrap("char", ord(value) + delta))
    return wrap(kind, value + delta)


def compare(op: str, a: Any, b: Any) -> bool:
    if isinstance(a, str) and isinstance(b, str):
        a, b = ord(a), ord(b)
    if op == "==":
        return a == b
    if op == "<>":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


# -- conversions ------------------------------------------------------------

def as_number(kind: str, value: Any) -> Any:
    if kind == "char":
        return ord(value)
    if kind == "boolean":
        return 1 if value else 0
    return value


def convertible(target: str, source: str, value: Any) -> bool:
    """True when ``value`` of kind ``source`` fits ``target`` without loss of range."""
    number = as_number(source, value)
    if target == "boolean":
        return source in ("integer", "byte", "boolean")
    if target == "char":
        if source in ("byte", "integer"):
            return 0 <= number <= CHAR_INTEGER_MAX
        return source == "char"
    if target in LIMITS:
        low, high = LIMITS[target]
        if source in FLOATING:
            if math.isnan(float(number)) or math.isinf(float(number)):
                return False
            number = math.trunc(float(number))
        return low <= number <= high
    if target == "real":
        if source in FLOATING:
            magnitude = abs(float(number))
            return math.isnan(magnitude) or math.isinf(magnitude) or magnitude <= REAL_MAX
        return True
    return True


def convert(target: str, source: str, value: Any) -> Any:
    """Convert a value already known to be ``convertible``."""
    number = as_number(source, value)
    if target == "boolean":
        return number != 0
    if target == "char":
        return chr(number)
    if target in LIMITS:
        if source in FLOATING:
            number = math.trunc(float(number))
        return wrap(target, int(number))
    if target == "real":
        return to_real(float(number))
    return float(number)


def parse(kind: str, text: str) -> Optional[Any]:
    """Parse the textual form of a basic value, or None."""
    text = text.strip()
    if kind == "boolean":
        return {"true": True, "false": False}.get(text)
    if kind == "char":
        return text if len(text) == 1 else None
    if kind in LIMITS:
        try:
            number = int(text, 10)
        except ValueError:
            return None
        low, high = LIMITS[kind]
        return number if low <= number <= high else None
    try:
        number = float(text)
    except ValueError:
        return None
    if kind == "real":
        if abs(number) > REAL_MAX and not math.isinf(number):
            return None
        return to_real(number)
    return number
