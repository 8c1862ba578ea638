"""Shells, extensions and allowed-set manifests."""

import pytest

from green.diagnostics import CheckError, ManifestError
from green.manifest import parse_manifest

from conftest import check_text, main_program

CLASSES = """
class Square
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

class Big subclassOf Square
    proc init()
      begin
      super.init(10);
      end
end

shell class Plus(Square)
  public:
    proc area() : integer
      begin
      return super.area() + 1;
      end
end

shell class Counted(Square)
    proc init()
      begin
      calls = 0;
      end
  public:
    proc area() : integer
      begin
      ++calls;
      Out.write("#", calls, " ");
      return super.area();
      end
  private:
    var calls : integer;
end
"""

LOCALS = "var s : Square;\n          t : Square;"


def test_shell_intercepts_messages(run_main) -> None:
    body = ("s = Square.new(3);\n      Out.writeln(s.area());\n      Meta.attachShell(s, Plus.new());\n"
            "      Out.writeln(s.area());\n      Meta.removeShell(s);\n      Out.writeln(s.area());")
    result = run_main(body, LOCALS, extra=CLASSES)
    assert result.status == 0
    assert result.stdout == "9\n10\n9\n"


def test_last_shell_attached_runs_first(run_main) -> None:
    body = ("s = Square.new(2);\n      Meta.attachShell(s, Plus.new());\n"
            "      Meta.attachShell(s, Counted.new());\n      Out.writeln(s.area());\n"
            "      Out.writeln(s.area());")
    assert run_main(body, LOCALS, extra=CLASSES).stdout == "#1 5\n#2 5\n"


def test_shell_affects_only_its_object(run_main) -> None:
    body = ("s = Square.new(2);\n      t = Square.new(2);\n      Meta.attachShell(s, Plus.new());\n"
            "      Out.writeln(s.area(), \" \", t.area());")
    assert run_main(body, LOCALS, extra=CLASSES).stdout == "5 4\n"


def test_removing_a_missing_shell_throws(run_main) -> None:
    result = run_main("s = Square.new(2);\n      Meta.removeShell(s);", LOCALS, extra=CLASSES)
    assert result.status == 1
    assert result.stderr == "Exception NoShellException not caught\n"


def test_shell_outside_its_allowed_set(run_main) -> None:
    body = "s = Big.new();\n      Meta.attachShell(s, Plus.new());\n      Out.writeln(s.area());"
    result = run_main(body, LOCALS, extra=CLASSES)
    assert result.status == 1
    assert result.stderr == "Exception ClassNotInAllowedSetException not caught\n"


def test_manifest_widens_the_allowed_set(run_main) -> None:
    body = "s = Big.new();\n      Meta.attachShell(s, Plus.new());\n      Out.writeln(s.area());"
    manifest = parse_manifest("allow shell Plus on Square, Big\n")
    assert run_main(body, LOCALS, extra=CLASSES, manifest=manifest).stdout == "101\n"


def test_extension_applies_to_every_object_of_the_class(run_main) -> None:
    body = ("s = Square.new(2);\n      t = Big.new();\n      Meta.attachExtension(Square, Plus);\n"
            "      Out.writeln(s.area(), \" \", Square.new(3).area(), \" \", t.area());\n"
            "      Meta.removeExtension(Square);\n      Out.writeln(s.area());")
    assert run_main(body, LOCALS, extra=CLASSES).stdout == "5 10 100\n4\n"


def test_extension_variables_are_per_object(run_main) -> None:
    body = ("s = Square.new(1);\n      t = Square.new(1);\n      Meta.attachExtension(Square, Counted);\n"
            "      Out.writeln(s.area());\n      Out.writeln(s.area());\n      Out.writeln(t.area());")
    assert run_main(body, LOCALS, extra=CLASSES).stdout == "#1 1\n#2 1\n#1 1\n"


def test_extension_allowed_set_is_checked_statically() -> None:
    source = main_program("Meta.attachExtension(Big, Plus);") + CLASSES
    with pytest.raises(CheckError) as info:
        check_text(source)
    assert "allowed-set" in [d.code for d in info.value.errors]
    manifest = parse_manifest("allow extension Plus on Big\n")
    check_text(source, manifest=manifest)


def test_shell_methods_must_belong_to_the_base_type() -> None:
    source = main_program("Out.writeln(1);") + CLASSES + (
        "shell class Odd(Square)\n  public:\n    proc perimeter() : integer\n      begin\n"
        "      return 0;\n      end\nend\n")
    with pytest.raises(CheckError) as info:
        check_text(source)
    assert "shell-method" in [d.code for d in info.value.errors]


def test_manifest_rules_accumulate() -> None:
    manifest = parse_manifest("# rules\n\nallow shell Plus on Square\nallow shell Plus on Big, Square\n"
                              "allow extension Plus on Big  # trailing\n")
    assert manifest.shells == {"Plus": ["Square", "Big"]}
    assert manifest.extensions == {"Plus": ["Big"]}


@pytest.mark.parametrize("text, line", [
    ("allow shell Plus\n", 1),
    ("\nallow shell Plus on 3D\n", 2),
    ("deny shell Plus on Square\n", 1),
])
def test_malformed_manifests(text: str, line: int) -> None:
    with pytest.raises(ManifestError) as info:
        parse_manifest(text)
    assert info.value.line == line


def test_manifest_naming_an_unknown_shell() -> None:
    with pytest.raises(CheckError) as info:
        check_text(main_program("Out.writeln(1);") + CLASSES,
                   manifest=parse_manifest("allow shell Ghost on Square\n"))
    assert [d.code for d in info.value.errors] == ["manifest"]


ECHO = """
shell class Echo(Square)
  public:
    proc interceptAll( mi : ObjectMethodInfo; vetArg : array(Any)[] ) : Any
      begin
      Out.write(mi.getName(), " ");
      return mi.invoke(vetArg);
      end
end
"""


def test_intercept_all_passes_messages_to_the_layer_below(run_main) -> None:
    body = ("s = Square.new(3);\n      Meta.attachShell(s, Plus.new());\n"
            "      Meta.attachShell(s, Echo.new());\n      Out.writeln(s.area());\n"
            "      Meta.removeShell(s);\n      Out.writeln(s.area());")
    result = run_main(body, LOCALS, extra=CLASSES + ECHO)
    assert result.status == 0
    assert result.stdout == "area 10\n10\n"


def test_removing_an_extension_twice_throws(run_main) -> None:
    body = ("Meta.attachExtension(Square, Plus);\n      Meta.removeExtension(Square);\n"
            "      Out.writeln(\"removed\");\n      Meta.removeExtension(Square);")
    result = run_main(body, LOCALS, extra=CLASSES)
    assert result.status == 1
    assert result.stdout == "removed\n"
    assert result.stderr == "Exception NoExtensionException not caught\n"
