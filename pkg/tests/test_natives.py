"""Native method bodies and fixed-width arithmetic."""

import numpy as np
import pytest

import green.runtime.interpreter  # noqa: F401  registers every native body
from green.runtime import numeric
from green.runtime.natives import NATIVES, ascii_lower, ascii_upper, compare_text, hash_text

from conftest import check_text, main_program


def test_every_native_method_has_a_body() -> None:
    program = check_text(main_program("Out.writeln(1);"))
    missing = sorted(
        method.native
        for symbol in program.model.symbols()
        for method in symbol.inits + symbol.methods
        if method.native is not None and method.native not in NATIVES
    )
    assert missing == []


def test_integer_kinds_wrap() -> None:
    assert numeric.wrap("integer", 2**31) == -2**31
    assert numeric.wrap("long", 2**63) == -2**63
    assert numeric.wrap("byte", -1) == 255
    assert numeric.step("char", "a", 1) == "b"


@pytest.mark.parametrize("op, a, b, expected", [
    ("/", -7, 2, -3),
    ("%", -7, 2, -1),
    ("/", 7, -2, -3),
    ("<<", 1, 33, 2),
    (">>", -8, 1, -4),
    ("^", 6, 3, 5),
])
def test_integer_operators(op: str, a: int, b: int, expected: int) -> None:
    assert numeric.binary(op, "integer", a, b) == expected


@pytest.mark.parametrize("kind, a, b, op, exception", [
    ("integer", 1, 0, "/", "DivisionByZeroException"),
    ("long", 1, 0, "%", "DivisionByZeroException"),
    ("real", np.float32(3.0e38), np.float32(10.0), "*", "RealOverflowException"),
    ("double", 1e-200, 1e-200, "*", "RealUnderflowException"),
])
def test_arithmetic_faults(kind, a, b, op: str, exception: str) -> None:
    with pytest.raises(numeric.ArithmeticFault) as info:
        numeric.binary(op, kind, a, b)
    assert info.value.exception_class == exception


def test_real_arithmetic_is_single_precision() -> None:
    result = numeric.binary("+", "real", np.float32(0.1), np.float32(0.2))
    assert isinstance(result, np.float32)
    assert result == np.float32(0.1) + np.float32(0.2)


def test_real_formatting() -> None:
    assert numeric.format_real(np.float32(3.0)) == "3.000000E+00"
    assert numeric.format_real(-0.5) == "-5.000000E-01"
    assert numeric.format_real(float("inf")) == "Inf"
    assert numeric.format_value("boolean", False) == "false"


def test_parsing_basic_values() -> None:
    assert numeric.parse("integer", " 12 ") == 12
    assert numeric.parse("integer", "2147483648") is None
    assert numeric.parse("boolean", "true") is True
    assert numeric.parse("real", "1e39") is None
    assert numeric.parse("char", "ab") is None


def test_conversions() -> None:
    assert not numeric.convertible("char", "integer", 200)
    assert numeric.convertible("byte", "integer", 255)
    assert numeric.convert("integer", "double", -3.9) == -3
    assert numeric.convert("char", "integer", 65) == "A"
    assert numeric.convert("boolean", "integer", 2) is True


def test_text_helpers() -> None:
    assert ascii_upper("aBz1é") == "ABZ1é"
    assert ascii_lower("AbZ") == "abz"
    assert compare_text("a", "b") == -1
    assert compare_text("b", "b") == 0
    assert hash_text("ab") == 31 * 97 + 98


def test_casts_between_basic_types(run_main) -> None:
    body = ('Out.writeln(integer.cast("42") + 1, " ", integer.cast(3.7), " ", char.cast(65), " ", '
            'integer.getMaxValue());')
    assert run_main(body).stdout == "43 3 A 2147483647\n"


def test_failed_cast_throws(run_main) -> None:
    result = run_main("Out.writeln(byte.cast(300));")
    assert result.status == 1
    assert result.stderr == "Exception AssertionCastByteException not caught\n"


def test_value_equality_and_strings(run_main) -> None:
    body = 's = "abc";\n      Out.writeln(s.equals("abc"), " ", s.equals("abd"), " ", s.hashCode());'
    result = run_main(body, "var s : String;")
    assert result.stdout == f"true false {hash_text('abc')}\n"


def test_cast_ok_checks_the_range(run_main) -> None:
    body = ('Out.writeln(byte.castOk(255), " ", byte.castOk(256), " ", byte.castOk(-1), " ", '
            'char.castOk(127), " ", char.castOk(128));')
    assert run_main(body).stdout == "true false false true false\n"


QUIET = """
class Quiet subclassOf CatchUncheckedException
    proc init()
      begin
      super.init();
      end
  public:
    proc throw( exc : DivisionByZeroException )
      begin
      Out.writeln("quiet handler");
      Runtime.exit(4);
      end
end
"""


def test_replacing_the_default_catch_object(run_main) -> None:
    body = "Runtime.setCatchUnchecked(Quiet.new());\n      Out.writeln(1 / zero);"
    result = run_main(body, "var zero : integer;", extra=QUIET)
    assert result.status == 4
    assert result.stdout == "quiet handler\n"
    assert result.stderr == ""


def test_both_string_constructors(run_main) -> None:
    body = 'Out.writeln(String.new("abc"), "|", String.new("n=", 3, true));'
    assert run_main(body).stdout == "abc|n=3true\n"


NODES = """
class Node
    proc init( value : integer )
      begin
      self.value = value;
      end
  public:
    proc setNext( next : Node )
      begin
      self.next = next;
      end
    proc getNext() : Node
      begin
      return next;
      end
    proc setValue( value : integer )
      begin
      self.value = value;
      end
  private:
    var value : integer;
        next : Node;
end

class Tagged subclassOf Node
    proc init()
      begin
      super.init(0);
      end
end
"""

NODE_LOCALS = "var a, b, c : Node;\n          t : Tagged;"


def test_deep_clone_copies_a_cycle_once(run_main) -> None:
    body = ("a = Node.new(1);\n      b = Node.new(2);\n      a.setNext(b);\n      b.setNext(a);\n"
            "      c = Node.cast(a.deepClone());\n"
            "      Out.writeln(a.deepEqual(c), \" \", c == a, \" \", c.getNext().getNext() == c, \" \", "
            "c.getNext() == b);\n"
            "      c.getNext().setValue(5);\n"
            "      Out.writeln(a.deepEqual(c), \" \", a.shallowEqual(a.shallowClone()));")
    result = run_main(body, NODE_LOCALS, extra=NODES)
    assert result.status == 0
    assert result.stdout == "true false true false\nfalse true\n"


def test_shallow_copy_needs_the_same_class(run_main) -> None:
    body = ("a = Node.new(1);\n      t = Tagged.new();\n"
            "      Out.writeln(a.shallowCopy(t), \" \", t.shallowCopy(a), \" \", a.shallowCopy(Node.new(9)), "
            "\" \", a.deepEqual(Node.new(9)));")
    assert run_main(body, NODE_LOCALS, extra=NODES).stdout == "false false true true\n"


def test_is_object_of_follows_subclassing(run_main) -> None:
    body = ("a = Node.new(1);\n      t = Tagged.new();\n"
            "      Out.writeln(t.isObjectOf(Node), \" \", t.isObjectOf(Tagged), \" \", a.isObjectOf(Tagged), "
            "\" \", a.isObjectOf(Any));")
    assert run_main(body, NODE_LOCALS, extra=NODES).stdout == "true true false true\n"
