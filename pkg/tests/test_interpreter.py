"""Running Green programs: statements, objects, exceptions and assertions."""

import pytest

SHAPES = """
abstract class Shape
  public:
    abstract proc area() : integer;
    proc describe() : String
      begin
      return "shape";
      end
end

class Square subclassOf Shape
    proc init( side : integer )
      begin
      self.side = side;
      end
  public:
    proc area() : integer
      begin
      return side * side;
      end
    proc describe() : String
      begin
      return "square";
      end
  private:
    var side : integer;
end

class Rect subclassOf Shape
    proc init( w, h : integer )
      begin
      self.w = w;
      self.h = h;
      end
  public:
    proc area() : integer
      begin
      return w * h;
      end
  private:
    var w, h : integer;
end
"""

OOPS = """
class Oops subclassOf Exception
    proc init()
      begin
      end
end
"""


def test_hello(run_main) -> None:
    result = run_main('Out.writeln("Hello, world");')
    assert result.status == 0
    assert result.stdout == "Hello, world\n"
    assert result.stderr == ""


def test_integer_division_truncates(run_main) -> None:
    result = run_main('Out.writeln(7 / 2, " ", -7 / 2, " ", -7 % 2, " ", 7 % -2);')
    assert result.stdout == "3 -3 -1 1\n"


def test_integer_arithmetic_wraps(run_main) -> None:
    result = run_main("i = 2147483647;\n      ++i;\n      Out.writeln(i);", "var i : integer;")
    assert result.stdout == "-2147483648\n"


def test_value_formatting(run_main) -> None:
    result = run_main("Out.writeln(1.5, \" \", 2.5d, \" \", 3 > 2, \" \", true and false, \" \", 'a', "
                      "\" \", 9223372036854775807L);")
    assert result.stdout == "1.500000E+00 2.500000E+00 true false a 9223372036854775807\n"


def test_while_loop(run_main) -> None:
    body = ("i = 1;\n      while i <= 10 do\n        begin\n        sum = sum + i;\n        ++i;\n"
            "        end\n      Out.writeln(sum);")
    assert run_main(body, "var i : integer;\n          sum : integer;").stdout == "55\n"


def test_for_repeat_and_loop(run_main) -> None:
    body = ("for k : integer = 1 to 5 do\n        Out.write(k);\n      Out.writeln();\n"
            "      repeat\n        ++i;\n      until i >= 3;\n      Out.writeln(i);\n"
            "      loop\n        ++i;\n        if i == 7\n        then\n          break;\n        endif\n"
            "      end\n      Out.writeln(i);")
    assert run_main(body, "var i : integer;").stdout == "12345\n3\n7\n"


def test_for_loop_over_chars(run_main) -> None:
    body = "for c : char = 'a' to 'e' do\n        Out.write(c);\n      Out.writeln();"
    assert run_main(body).stdout == "abcde\n"


@pytest.mark.parametrize("value, expected", [(1, "low"), (3, "three"), (7, "high")])
def test_case_statement(run_main, value: int, expected: str) -> None:
    body = (f"i = {value};\n      case i of\n        1, 2 : Out.writeln(\"low\");\n"
            "        3 : Out.writeln(\"three\");\n        otherwise\n          Out.writeln(\"high\");\n"
            "      end")
    assert run_main(body, "var i : integer;").stdout == expected + "\n"


def test_strings(run_main) -> None:
    body = ('s = "Green";\n      Out.writeln(s.getSize(), " ", s.get(0), " ", s.newToUpperCase(), " ", '
            's + "!", " ", s.search("ee"), " ", s.getSubset(1, 3), " ", s.cmp("Zz") < 0);')
    assert run_main(body, "var s : String;").stdout == "5 G GREEN Green! 2 ree true\n"


def test_dynamic_strings(run_main) -> None:
    body = ('d = DynString.new("ab");\n      d.add(\'c\');\n      d.toUpperCase();\n'
            '      Out.writeln(d.toString(), " ", d.getSize());')
    assert run_main(body, "var d : DynString;").stdout == "ABC 3\n"


def test_arrays(run_main) -> None:
    body = ("v = array(integer)[].new(3);\n      while i < 3 do\n        begin\n        v[i] = i * i;\n"
            "        ++i;\n        end\n      Out.writeln(v[2], \" \", v.getSize());")
    assert run_main(body, "var v : array(integer)[];\n          i : integer;").stdout == "4 3\n"


def test_array_init_statement(run_main) -> None:
    body = "v#init(4);\n      v[3] = 'z';\n      Out.writeln(v.getSize(), v[3]);"
    assert run_main(body, "var v : array(char)[];").stdout == "4z\n"


def test_array_index_out_of_range(run_main) -> None:
    result = run_main("v = array(integer)[].new(2);\n      v[5] = 1;", "var v : array(integer)[];")
    assert result.status == 1
    assert result.stderr == "Exception IllegalArrayIndexException not caught\n"


def test_dynamic_dispatch_and_inheritance(run_main) -> None:
    body = ('s = Square.new(3);\n      Out.writeln(s.describe(), " ", s.area());\n'
            '      s = Rect.new(2, 5);\n      Out.writeln(s.describe(), " ", s.area());')
    result = run_main(body, "var s : Shape;", extra=SHAPES)
    assert result.stdout == "square 9\nshape 10\n"


def test_case_on_object_class(run_main) -> None:
    body = ("s = Rect.new(1, 1);\n      case s of\n        Square : Out.writeln(\"square\");\n"
            "        Rect : Out.writeln(\"rect\");\n      end")
    assert run_main(body, "var s : Shape;", extra=SHAPES).stdout == "rect\n"


def test_recursion(run_main) -> None:
    members = ("    proc fact( n : integer ) : integer\n      begin\n      if n <= 1\n      then\n"
               "        return 1;\n      endif\n      return n * fact(n - 1);\n      end\n")
    assert run_main("Out.writeln(fact(10));", members=members).stdout == "3628800\n"


def test_constants_of_class_objects(run_main) -> None:
    assert run_main("Out.writeln(Max * 2);", members="    const Max = 10;\n").stdout == "20\n"


def test_wrappers_box_and_unbox(run_main) -> None:
    body = "w = 5;\n      i = w;\n      Out.writeln(w.get() + 1, \" \", i, \" \", w);"
    assert run_main(body, "var w : Integer;\n          i : integer;").stdout == "6 5 5\n"


def test_division_by_zero_is_reported(run_main) -> None:
    result = run_main('Out.writeln("before");\n      Out.writeln(1 / zero);', "var zero : integer;")
    assert result.status == 1
    assert result.stdout == "before\n"
    assert result.stderr == "Exception DivisionByZeroException not caught\n"


def test_try_catches_unchecked_exception(run_main) -> None:
    body = ("c = CatchDivisionByZeroException.new();\n      try(c)\n        Out.writeln(1 / zero);\n"
            "        Out.writeln(\"unreached\");\n      end\n      if c.wasThrown()\n      then\n"
            "        Out.writeln(\"caught\");\n      endif")
    result = run_main(body, "var c : CatchDivisionByZeroException;\n          zero : integer;")
    assert result.status == 0
    assert result.stdout == "caught\n"


def test_try_catches_checked_exception_from_callee(run_main) -> None:
    members = ("    proc fail() ( exception : CatchOops )\n      begin\n      exception.throw(Oops.new());\n"
               "      Out.writeln(\"unreached\");\n      end\n")
    body = ("c = CatchOops.new();\n      try(c)\n        fail();\n        Out.writeln(\"no\");\n      end\n"
            "      Out.writeln(c.wasThrown());")
    result = run_main(body, "var c : CatchOops;", members=members, extra=OOPS)
    assert result.stdout == "true\n"


def test_nested_try_uses_innermost_handler(run_main) -> None:
    body = ("outer = CatchDivisionByZeroException.new();\n      inner = CatchDivisionByZeroException.new();\n"
            "      try(outer)\n        try(inner)\n          Out.writeln(1 / zero);\n        end\n"
            "        Out.writeln(\"after inner\");\n      end\n"
            "      Out.writeln(inner.wasThrown(), \" \", outer.wasThrown());")
    locals_ = ("var outer : CatchDivisionByZeroException;\n          inner : CatchDivisionByZeroException;\n"
               "          zero : integer;")
    assert run_main(body, locals_).stdout == "after inner\ntrue false\n"


def test_message_to_nil(run_main) -> None:
    result = run_main("Out.writeln(s.area());", "var s : Shape;", extra=SHAPES)
    assert result.status == 1
    assert result.stderr == "Exception MessageSendToNilException not caught\n"


def test_runtime_exit(run_main) -> None:
    result = run_main('Out.writeln("a");\n      Runtime.exit(3);\n      Out.writeln("b");')
    assert result.status == 3
    assert result.stdout == "a\n"


def test_reading_input(run_main) -> None:
    body = "Out.writeln(In.readInteger() + 1);\n      Out.writeln(In.readLine());\n      Out.writeln(In.readLine());"
    assert run_main(body, stdin="41 rest\nnext line\n").stdout == "42\nrest\nnext line\n"


HALF = ("    proc half( x : integer ) : integer\n      assert\n        before x > 0;\n"
        "        after result < x;\n      end\n      begin\n      return x / 2;\n      end\n")


def test_precondition_failure(run_main) -> None:
    result = run_main("Out.writeln(half(-4));", members=HALF)
    assert result.status == 1
    assert result.stderr == "Exception AssertionBeforeException not caught\n"


def test_assertions_can_be_disabled(run_main) -> None:
    result = run_main("Out.writeln(half(-4));", members=HALF, assertions=False)
    assert result.status == 0
    assert result.stdout == "-2\n"


def test_postcondition_failure(run_main) -> None:
    members = ("    proc grow( x : integer ) : integer\n      assert\n        after result > x;\n      end\n"
               "      begin\n      return x;\n      end\n")
    result = run_main("Out.writeln(grow(1));", members=members)
    assert result.stderr == "Exception AssertionAfterException not caught\n"


def test_stack_overflow(run_main) -> None:
    members = ("    proc down( n : integer ) : integer\n      begin\n      return down(n + 1);\n"
               "      end\n")
    result = run_main("Out.writeln(down(0));", members=members, max_call_depth=50)
    assert result.status == 1
    assert result.stderr == "Exception StackOverflowException not caught\n"


def test_program_arguments(run_green) -> None:
    source = ("object Echo\n  public:\n    proc run( args : array(String)[] )\n"
              "      var i : integer;\n      begin\n      while i < args.getSize() do\n"
              "        begin\n        Out.write(args[i], \";\");\n        ++i;\n        end\n"
              "      Out.writeln();\n      end\nend\n")
    result = run_green(source, entry="Echo", args=["a", "b c"])
    assert result.stdout == "a;b c;\n"


GAUGE = """
class Gauge
    proc init()
      begin
      end
  public:
    proc take( n : integer ) : integer
      assert
        before n > 0;
        after result >= 0;
      end
      begin
      return n - 5;
      end
    proc correctAssertionBefore( mi : MethodInfo )
      begin
      Out.writeln("before ", mi.getName());
      end
    proc correctAssertionAfter( mi : MethodInfo )
      begin
      Out.writeln("after ", mi.getName());
      end
end
"""


def test_failed_assertions_call_the_correcting_methods(run_main) -> None:
    body = "g = Gauge.new();\n      Out.writeln(g.take(-1));\n      Out.writeln(g.take(9));"
    result = run_main(body, "var g : Gauge;", extra=GAUGE)
    assert result.status == 0
    assert result.stdout == "before take\nafter take\n-6\n4\n"


RELAY = """
class Relay subclassOf CatchUncheckedException
    proc init()
      begin
      super.init();
      end
  public:
    proc throw( exc : DivisionByZeroException ) ( exception : CatchUncheckedException )
      begin
      Out.writeln("relaying");
      exception.throw(exc);
      end
end
"""


def test_handler_throwing_again_reaches_the_outer_try(run_main) -> None:
    body = ("outer = CatchDivisionByZeroException.new();\n      inner = Relay.new();\n"
            "      try(outer)\n        try(inner)\n          Out.writeln(1 / zero);\n        end\n"
            "        Out.writeln(\"unreached\");\n      end\n"
            "      Out.writeln(inner.wasThrown(), \" \", outer.wasThrown());")
    locals_ = "var outer : CatchDivisionByZeroException;\n          inner : Relay;\n          zero : integer;"
    result = run_main(body, locals_, extra=RELAY)
    assert result.status == 0
    assert result.stdout == "relaying\ntrue true\n"
