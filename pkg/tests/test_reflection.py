"""Class, method and call-stack reflection."""

SQUARE = """
abstract class Shape
  public:
    abstract proc area() : integer;
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
  private:
    var side : integer;
end
"""

LOCALS = """var s : Square;
          info : ClassInfo;
          m : ClassMethodInfo;
          it : DS.Iter(ClassMethodInfo);
          x : Any;"""


def test_class_information(run_main) -> None:
    body = ('s = Square.new(3);\n      info = s.getClassInfo();\n'
            '      Out.writeln(info.getName(), " ", info.getSuperclass().getName(), " ", info.isAbstract());\n'
            '      Out.writeln(info.isClassOf(s), " ", s.isObjectOf(Square), " ", '
            'info.getSuperclass().isSuperclassOf(info));')
    result = run_main(body, LOCALS, extra=SQUARE)
    assert result.stdout == "Square Shape false\ntrue true true\n"


def test_listing_and_invoking_methods(run_main) -> None:
    body = ('s = Square.new(4);\n      info = Square.getAssociateClassInfo();\n'
            '      it = info.getThisClassPublicMethods();\n      while it.more() do\n'
            '        Out.writeln(it.next().getName());\n'
            '      m = info.getMethod_v("area");\n      x = m.invoke_v(s);\n      Out.writeln(x);')
    result = run_main(body, LOCALS, extra=SQUARE)
    assert result.status == 0
    assert result.stdout == "area\n16\n"


def test_invoke_with_wrong_arguments_throws(run_main) -> None:
    body = ('s = Square.new(4);\n      m = s.getClassInfo().getMethod_v("area");\n'
            '      x = m.invoke_v(s, 1);')
    result = run_main(body, LOCALS, extra=SQUARE)
    assert result.status == 1
    assert result.stderr == "Exception WrongParametersException not caught\n"


def test_searching_classes_by_name(run_main) -> None:
    body = ('Out.writeln(Runtime.searchForClass("Shape").getName(), " ", '
            'Runtime.searchForClass("Missing") == nil);')
    assert run_main(body, extra=SQUARE).stdout == "Shape true\n"


def test_class_reflection_can_be_turned_off(run_main) -> None:
    result = run_main('Out.writeln(Runtime.searchForClass("Shape") == nil);', extra=SQUARE,
                      reflect_classes=False)
    assert result.status == 1
    assert result.stderr == "Exception NoReflectiveClassInfoException not caught\n"


def test_call_stack_needs_call_reflection(run_main) -> None:
    members = ("    proc depth() : integer\n      begin\n"
               "      return Runtime.getMethodCallStack().getSize();\n      end\n")
    result = run_main("Out.writeln(depth());", members=members, reflect_calls=True)
    assert result.stdout == "2\n"
    result = run_main("Out.writeln(depth());", members=members)
    assert result.stderr == "Exception NoReflectiveCallInfoException not caught\n"


def test_supertypes_are_structural(run_main) -> None:
    body = ('info = Square.getAssociateClassInfo();\n'
            '      Out.writeln(Runtime.searchForClass("Any").isSupertypeOf(info), " ", '
            'info.isSupertypeOf(Runtime.searchForClass("Any")), " ", '
            'info.isSupertypeOf(Runtime.searchForClass("Shape")));')
    assert run_main(body, LOCALS, extra=SQUARE).stdout == "true false true\n"


def test_catch_object_stack_follows_try(run_main) -> None:
    body = ("c = CatchDivisionByZeroException.new();\n"
            "      Out.writeln(Runtime.getCatchObjectStack().getSize());\n"
            "      try(c)\n        Out.writeln(Runtime.getCatchObjectStack().getSize());\n      end\n"
            "      Out.writeln(Runtime.getCatchObjectStack().getSize());")
    result = run_main(body, "var c : CatchDivisionByZeroException;")
    assert result.stdout == "1\n2\n1\n"


def test_class_information_is_described_by_class_info(run_main) -> None:
    body = ('info = Square.getAssociateClassInfo();\n'
            '      Out.writeln(info.getClassInfo().getName(), " ", info.getName());')
    assert run_main(body, LOCALS, extra=SQUARE).stdout == "ClassInfo Square\n"


def test_basic_receivers_keep_their_static_kind(run_main) -> None:
    body = ('b = 7b;\n      l = 7L;\n      i = 7;\n'
            '      Out.writeln(b.getClassInfo().getName(), " ", l.getClassInfo().getName(), " ", '
            'i.getClassInfo().getName());')
    locals_ = "var b : byte;\n          l : long;\n          i : integer;"
    assert run_main(body, locals_).stdout == "byte long integer\n"


METER = """
class Meter
    proc init( n : integer )
      begin
      self.n = n;
      end
  public:
    proc ratio() : integer
      begin
      return 10 / n;
      end
  private:
    var n : integer;
end
"""


def test_exception_inside_invoke_is_packed(run_main) -> None:
    body = ('c = CatchInvokeException.new();\n      m = Meter.getAssociateClassInfo().getMethod_v("ratio");\n'
            '      try(c)\n        x = m.invoke_v(Meter.new(0));\n        Out.writeln("unreached");\n      end\n'
            '      Out.writeln(c.wasThrown(), " ", c.getException().toString());\n'
            '      Out.writeln(m.invoke_v(Meter.new(5)));')
    locals_ = "var c : CatchInvokeException;\n          m : ClassMethodInfo;\n          x : Any;"
    result = run_main(body, locals_, extra=METER)
    assert result.status == 0
    assert result.stdout == "true packed exception: division by zero\n2\n"


def test_public_methods_leave_out_overridden_versions(run_main) -> None:
    body = ('n = 0;\n      it = Square.getAssociateClassInfo().getPublicMethods();\n'
            '      while it.more() do\n        if it.next().getName().equals("area")\n        then\n'
            '          ++n;\n        endif\n      Out.writeln(n);')
    result = run_main(body, LOCALS + "\n          n : integer;", extra=SQUARE)
    assert result.status == 0
    assert result.stdout == "1\n"
