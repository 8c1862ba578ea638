"""Seeded randomized checks: arithmetic, types, handlers, generated programs, loops, casts and shells."""

import itertools
import random
from typing import Dict, List, Optional, Sequence, Set, Tuple

import pytest

from green.diagnostics import CheckError
from green.typesys import Kind, Signature, TypeDescriptor, TypeTable

from conftest import check_text, main_program

SEEDS = [3, 17, 2024]

INT_MIN, INT_MAX = -2**31, 2**31 - 1


def _wrap32(value: int) -> int:
    return (value - INT_MIN) % 2**32 + INT_MIN


def _expected(op: str, a: int, b: int) -> int:
    if op == "+":
        return _wrap32(a + b)
    if op == "-":
        return _wrap32(a - b)
    if op == "*":
        return _wrap32(a * b)
    quotient = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        quotient = -quotient
    if op == "/":
        return _wrap32(quotient)
    return a - b * quotient


@pytest.mark.parametrize("seed", SEEDS)
def test_integer_arithmetic_matches_32_bit_semantics(run_main, seed: int) -> None:
    rng = random.Random(seed)
    lines, expected = [], []
    for _ in range(25):
        op = rng.choice("+-*/%")
        a = rng.randint(INT_MIN + 1, INT_MAX)
        b = rng.choice([rng.randint(-9, 9), rng.randint(INT_MIN + 1, INT_MAX)]) or 1
        lines.append(f"x = {a};\n      y = {b};\n      Out.writeln(x {op} y);")
        expected.append(f"{_expected(op, a, b)}\n")
    result = run_main("\n      ".join(lines), "var x, y : integer;")
    assert result.status == 0
    assert result.stdout == "".join(expected)


def _pool(table: TypeTable) -> List[Signature]:
    basics = [table[name] for name in ("integer", "boolean", "char", "real")]
    pool = []
    for index in range(8):
        params = [basics[(index + k) % len(basics)] for k in range(index % 3)]
        result = basics[index % len(basics)] if index % 2 else None
        pool.append(Signature(f"m{index}", params, None, result, False))
    return pool


@pytest.mark.parametrize("seed", SEEDS)
def test_subtyping_is_signature_set_inclusion(seed: int) -> None:
    rng = random.Random(seed)
    table = TypeTable()
    pool = _pool(table)
    types = []
    for index in range(10):
        chosen = sorted(rng.sample(range(len(pool)), rng.randint(0, len(pool))))
        descriptor = table.add(TypeDescriptor(f"T{index}", Kind.CLASS))
        descriptor.set_signatures([pool[i] for i in chosen])
        types.append((descriptor, set(chosen)))
    for a, methods_a in types:
        for b, methods_b in types:
            assert table.is_subtype(a, b) == (methods_b <= methods_a)
            assert table.type_equal(a, b) == (methods_a == methods_b)


SHELLS = """
class Base
    proc init()
      begin
      end
  public:
    proc value() : integer
      begin
      return 100;
      end
end

shell class Digit(Base)
    proc init( digit : integer )
      begin
      self.digit = digit;
      end
  public:
    proc value() : integer
      begin
      return super.value() * 10 + digit;
      end
  private:
    var digit : integer;
end
"""


@pytest.mark.parametrize("seed", SEEDS)
def test_shells_stack_last_attached_outermost(run_main, seed: int) -> None:
    rng = random.Random(seed)
    stack: List[int] = []
    lines = ["b = Base.new();"]
    expected = []
    for _ in range(15):
        if stack and (len(stack) == 5 or rng.random() < 0.4):
            stack.pop()
            lines.append("Meta.removeShell(b);")
        else:
            digit = rng.randint(1, 9)
            stack.append(digit)
            lines.append(f"Meta.attachShell(b, Digit.new({digit}));")
        lines.append("Out.writeln(b.value());")
        value = 100
        for digit in stack:
            value = value * 10 + digit
        expected.append(f"{value}\n")
    result = run_main("\n      ".join(lines), "var b : Base;", extra=SHELLS)
    assert result.status == 0
    assert result.stdout == "".join(expected)


# -- recursive type tables -----------------------------------------------

KEYS = [("get", 0), ("put", 1), ("peer", 1), ("swap", 2)]

# ``{(name, arity): (param indices, result index or None)}`` per type; indices
# past the generated types name the basic types at the end of the pool.
Shape = Dict[Tuple[str, int], Tuple[List[int], Optional[int]]]


def _twin(index: int, size: int) -> int:
    return index ^ 1 if index < size else index


def _random_shapes(rng: random.Random, size: int) -> List[Shape]:
    """Types in pairs; the second of a pair mirrors the first, sometimes with one change."""
    pool = size + 2
    shapes: List[Shape] = []
    for index in range(0, size, 2):
        shape: Shape = {}
        for name, arity in rng.sample(KEYS, rng.randint(1, len(KEYS))):
            params = [rng.randrange(pool) for _ in range(arity)]
            shape[(name, arity)] = (params, rng.choice([None, rng.randrange(pool)]))
        twin = {key: ([_twin(p, size) for p in params], None if result is None else _twin(result, size))
                for key, (params, result) in shape.items()}
        if rng.random() < 0.4:
            key = rng.choice(sorted(twin))
            if len(twin) > 1 and rng.random() < 0.5:
                del twin[key]
            else:
                twin[key] = (twin[key][0], rng.randrange(pool))
        shapes.extend([shape, twin])
    return shapes


def _build(table: TypeTable, shapes: List[Shape]) -> List[TypeDescriptor]:
    types = [table.add(TypeDescriptor(f"T{index}", Kind.CLASS)) for index in range(len(shapes))]
    pool = types + [table["integer"], table["boolean"]]
    for descriptor, shape in zip(types, shapes):
        descriptor.set_signatures([
            Signature(name, [pool[p] for p in params], None, None if result is None else pool[result], False)
            for (name, _), (params, result) in shape.items()
        ])
    return types


def _agree(x: Optional[int], y: Optional[int], related: Set[Tuple[int, int]], size: int) -> bool:
    if x is None or y is None:
        return x is None and y is None
    if x >= size or y >= size:
        return x == y
    return (x, y) in related


def _same_signature(a, b, related: Set[Tuple[int, int]], size: int) -> bool:
    (params_a, result_a), (params_b, result_b) = a, b
    return (all(_agree(x, y, related, size) for x, y in zip(params_a, params_b))
            and _agree(result_a, result_b, related, size))


def _unrolled_equality(shapes: List[Shape]) -> Set[Tuple[int, int]]:
    """Pairs that survive every depth of unrolling: start from all pairs, drop until stable."""
    size = len(shapes)
    related = {(a, b) for a in range(size) for b in range(size) if shapes[a].keys() == shapes[b].keys()}
    while True:
        kept = {(a, b) for a, b in related
                if all(_same_signature(shapes[a][key], shapes[b][key], related, size) for key in shapes[a])}
        if kept == related:
            return related
        related = kept


@pytest.mark.parametrize("seed", SEEDS)
def test_recursive_types_agree_with_unrolling(seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(20):
        shapes = _random_shapes(rng, 8)
        size = len(shapes)
        table = TypeTable()
        types = _build(table, shapes)
        equal = _unrolled_equality(shapes)
        for a in range(size):
            for b in range(size):
                subtype = all(key in shapes[a] and _same_signature(shapes[a][key], shapes[b][key], equal, size)
                              for key in shapes[b])
                assert table.type_equal(types[a], types[b]) == ((a, b) in equal)
                assert table.is_subtype(types[a], types[b]) == subtype
        assert table.steps < 10**6


@pytest.mark.parametrize("seed", SEEDS)
def test_equality_is_an_equivalence_and_subtyping_a_preorder(seed: int) -> None:
    rng = random.Random(seed)
    table = TypeTable()
    types = _build(table, _random_shapes(rng, 8))
    extended = []
    for descriptor in types:
        child = table.add(TypeDescriptor(f"Sub{descriptor.name}", Kind.CLASS))
        child.set_signatures(descriptor.signatures + [Signature("extra", [], None, table["integer"], False)])
        extended.append(child)
    for parent, child in zip(types, extended):
        assert table.is_subtype(child, parent)
        assert not table.is_subtype(parent, child)
    everything = types + extended
    for a in everything:
        assert table.type_equal(a, a) and table.is_subtype(a, a)
        for b in everything:
            equal = table.type_equal(a, b)
            assert equal == table.type_equal(b, a)
            assert equal == (table.is_subtype(a, b) and table.is_subtype(b, a))
            for c in everything:
                if table.is_subtype(a, b) and table.is_subtype(b, c):
                    assert table.is_subtype(a, c)
                if equal and table.type_equal(b, c):
                    assert table.type_equal(a, c)


# -- handler order -----------------------------------------------------------

FAULTS = """
class Fault subclassOf Exception
    proc init()
      begin
      end
  public:
    proc fault() : integer
      begin
      return 1;
      end
end

class MinorFault subclassOf Fault
    proc init()
      begin
      super.init();
      end
  public:
    proc minor() : integer
      begin
      return 2;
      end
end

class TinyFault subclassOf MinorFault
    proc init()
      begin
      super.init();
      end
  public:
    proc tiny() : integer
      begin
      return 3;
      end
end
"""

FIRE = """    proc fire( n : integer ) ( exception : Pick )
      begin
      if n == 0
      then
        exception.throw(Fault.new());
      endif
      if n == 1
      then
        exception.throw(MinorFault.new());
      endif
      exception.throw(TinyFault.new());
      end
"""

FAULT_CHAINS = [["Fault"], ["MinorFault", "Fault"], ["TinyFault", "MinorFault", "Fault"]]


def _pick(order: Sequence[str]) -> str:
    methods = "".join(f"    proc throw( exc : {name} )\n      begin\n      Out.writeln(\"{name}\");\n      end\n"
                      for name in order)
    return ("class Pick subclassOf CatchUncheckedException\n    proc init()\n      begin\n"
            "      super.init();\n      end\n  public:\n" + methods + "end\n")


@pytest.mark.parametrize("order", list(itertools.permutations(["Fault", "MinorFault", "TinyFault"])))
def test_first_throw_method_in_text_order_handles(run_main, order: Tuple[str, ...]) -> None:
    body = "p = Pick.new();\n      " + "\n      ".join(
        f"try(p)\n        fire({n});\n      end" for n in range(3))
    result = run_main(body, "var p : Pick;", members=FIRE, extra=FAULTS + _pick(order))
    expected = [next(name for name in order if name in chain) for chain in FAULT_CHAINS]
    assert result.status == 0
    assert result.stdout == "".join(f"{name}\n" for name in expected)


# -- generated programs ------------------------------------------------------

OOPS = """
class Oops subclassOf Exception
    proc init()
      begin
      end
end
"""


def _levels(depth: int) -> str:
    """``Level0`` to ``Level<depth-1>``, each a subclass adding ``f<k>`` and redefining ``who``."""
    parts = []
    for k in range(depth):
        head = f"class Level{k}" + (f" subclassOf Level{k - 1}" if k else "")
        init = "      super.init();\n" if k else ""
        parts.append(f"{head}\n    proc init()\n      begin\n{init}      end\n  public:\n"
                     f"    proc who() : integer\n      begin\n      return {k};\n      end\n"
                     f"    proc f{k}() : integer\n      begin\n      return {k};\n      end\nend\n")
    return "\n".join(parts)


def _level_locals(depth: int) -> str:
    names = [f"v{k} : Level{k}" for k in range(depth)] + [f"r{k} : array(Level{k})[]" for k in range(depth)]
    return "var " + ";\n          ".join(names) + ";"


def _level_program(rng: random.Random, depth: int) -> Tuple[List[str], List[str]]:
    """Well-typed statements over the levels and the lines they print."""
    state = list(range(depth))
    lines = [f"v{k} = Level{k}.new();" for k in range(depth)]
    printed = []
    for _ in range(20):
        i = rng.randrange(depth)
        j = rng.randint(i, depth - 1)
        choice = rng.random()
        if choice < 0.3:
            lines.append(f"v{i} = Level{j}.new();")
            state[i] = j
        elif choice < 0.6:
            lines.append(f"v{i} = v{j};")
            state[i] = state[j]
        else:
            m = rng.randint(0, i)
            lines.append(f"Out.writeln(v{i}.who(), \" \", v{i}.f{m}());")
            printed.append(f"{state[i]} {m}\n")
    return lines, printed


@pytest.mark.parametrize("seed", SEEDS)
def test_generated_programs_check_and_run(run_main, seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(3):
        depth = rng.randint(3, 5)
        lines, printed = _level_program(rng, depth)
        result = run_main("\n      ".join(lines), _level_locals(depth), extra=_levels(depth) + OOPS)
        assert result.status == 0
        assert result.stderr == ""
        assert result.stdout == "".join(printed)


def _mutations(rng: random.Random, depth: int) -> List[Tuple[str, str]]:
    i = rng.randrange(depth - 1)
    j = rng.randint(i + 1, depth - 1)
    return [
        (f"v{j} = v{i};", "type-mismatch"),
        (f"Out.writeln(v{i}.f{j}());", "no-method"),
        (f"r{i} = r{j};", "type-mismatch"),
        ("exception.throw(Oops.new());", "throw"),
    ]


@pytest.mark.parametrize("seed", SEEDS)
def test_mutated_programs_are_rejected(seed: int) -> None:
    rng = random.Random(seed)
    depth = rng.randint(3, 5)
    lines, _ = _level_program(rng, depth)
    for statement, code in _mutations(rng, depth):
        mutated = list(lines)
        mutated.insert(rng.randint(depth, len(mutated)), statement)
        source = main_program("\n      ".join(mutated), _level_locals(depth)) + _levels(depth) + OOPS
        with pytest.raises(CheckError) as info:
            check_text(source)
        assert [d.code for d in info.value.errors] == [code], statement


# -- loops and their while forms ---------------------------------------------

LOOP_LOCALS = "var i, sum : integer;\n          done : boolean;"


def _loop_cases(rng: random.Random) -> List[Tuple[int, int, int]]:
    cases = []
    for _ in range(8):
        start = rng.randint(-20, 20)
        cases.append((start, rng.randint(1, 7), start + rng.randint(-5, 60)))
    return cases


def _repeat(start: int, step: int, limit: int) -> str:
    return (f"i = {start};\n      sum = 0;\n      repeat\n        sum = sum + i;\n        i = i + {step};\n"
            f"      until i >= {limit};\n      Out.writeln(sum, \" \", i);")


def _repeat_as_while(start: int, step: int, limit: int) -> str:
    return (f"i = {start};\n      sum = 0;\n      sum = sum + i;\n      i = i + {step};\n"
            f"      while not (i >= {limit}) do\n        begin\n        sum = sum + i;\n"
            f"        i = i + {step};\n        end\n      Out.writeln(sum, \" \", i);")


def _loop(start: int, step: int, limit: int) -> str:
    return (f"i = {start};\n      sum = 0;\n      loop\n        sum = sum + i;\n        if i >= {limit}\n"
            f"        then\n          break;\n        endif\n        i = i + {step};\n      end\n"
            f"      Out.writeln(sum, \" \", i);")


def _loop_as_while(start: int, step: int, limit: int) -> str:
    return (f"i = {start};\n      sum = 0;\n      done = false;\n      while not done do\n        begin\n"
            f"        sum = sum + i;\n        if i >= {limit}\n        then\n          done = true;\n"
            f"        else\n          i = i + {step};\n        endif\n        end\n"
            f"      Out.writeln(sum, \" \", i);")


def _repeat_result(start: int, step: int, limit: int) -> str:
    i, total = start, 0
    while True:
        total += i
        i += step
        if i >= limit:
            return f"{total} {i}\n"


def _loop_result(start: int, step: int, limit: int) -> str:
    i, total = start, 0
    while True:
        total += i
        if i >= limit:
            return f"{total} {i}\n"
        i += step


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("statement, as_while, oracle", [
    (_repeat, _repeat_as_while, _repeat_result),
    (_loop, _loop_as_while, _loop_result),
])
def test_loops_match_their_while_forms(run_main, seed: int, statement, as_while, oracle) -> None:
    cases = _loop_cases(random.Random(seed))
    direct = run_main("\n      ".join(statement(*case) for case in cases), LOOP_LOCALS)
    rewritten = run_main("\n      ".join(as_while(*case) for case in cases), LOOP_LOCALS)
    assert direct.status == rewritten.status == 0
    assert direct.stdout == rewritten.stdout == "".join(oracle(*case) for case in cases)


# -- casts of basic values ---------------------------------------------------

@pytest.mark.parametrize("kind, low, high", [("byte", 0, 255), ("char", 0, 127)])
def test_cast_ok_predicts_cast(run_main, kind: str, low: int, high: int) -> None:
    catch = f"CatchAssertionCast{kind.capitalize()}Exception"
    body = (f"for i : integer = {low - 4} to {high + 4} do\n        begin\n        c = {catch}.new();\n"
            f"        try(c)\n          v = {kind}.cast(i);\n        end\n"
            f"        Out.write({kind}.castOk(i), \"/\", c.wasThrown(), \" \");\n        end\n"
            f"      Out.writeln();")
    result = run_main(body, f"var v : {kind};\n          c : {catch};")
    assert result.status == 0
    pairs = result.stdout.split()
    assert len(pairs) == high - low + 9
    for value, pair in zip(range(low - 4, high + 5), pairs):
        fits = low <= value <= high
        assert pair == ("true/false" if fits else "false/true"), value


# -- shells that change nothing ----------------------------------------------

CELL = """
class Cell
    proc init( n : integer )
      begin
      self.n = n;
      end
  public:
    proc get() : integer
      begin
      return n;
      end
    proc add( k : integer )
      begin
      n = n + k;
      end
  private:
    var n : integer;
end

shell class Blank(Cell)
end

shell class Pass(Cell)
  public:
    proc interceptAll( mi : ObjectMethodInfo; vetArg : array(Any)[] ) : Any
      begin
      return mi.invoke(vetArg);
      end
end
"""


@pytest.mark.parametrize("seed", SEEDS)
def test_blank_and_passing_shells_are_transparent(run_main, seed: int) -> None:
    rng = random.Random(seed)
    initial = rng.randint(-50, 50)
    value = initial
    ops, expected = [], []
    for _ in range(15):
        if rng.random() < 0.5:
            k = rng.randint(-9, 9)
            ops.append(f"x.add({k});")
            value += k
        else:
            ops.append("Out.writeln(x.get());")
            expected.append(f"{value}\n")
    start = f"x = Cell.new({initial});"
    for shells in ([], ["Blank"], ["Pass"], ["Blank", "Pass"], ["Pass", "Blank"]):
        attach = [f"Meta.attachShell(x, {name}.new());" for name in shells]
        result = run_main("\n      ".join([start] + attach + ops), "var x : Cell;", extra=CELL)
        assert result.status == 0, shells
        assert result.stdout == "".join(expected), shells


@pytest.mark.parametrize("seed", SEEDS)
def test_removing_more_than_was_attached_throws(run_main, seed: int) -> None:
    rng = random.Random(seed)
    shells = [rng.choice(["Blank", "Pass"]) for _ in range(rng.randint(1, 4))]
    extensions = rng.randint(1, 3)
    body = "\n      ".join(
        ["x = Cell.new(5);"]
        + [f"Meta.attachShell(x, {name}.new());" for name in shells]
        + ["Meta.attachExtension(Cell, Blank);"] * extensions
        + ["Out.writeln(x.get());", "s = CatchNoShellException.new();", "try(s)"]
        + ["  Meta.removeShell(x);"] * len(shells)
        + ["end", "Out.write(s.wasThrown(), \" \");", "s = CatchNoShellException.new();",
           "try(s)\n        Meta.removeShell(x);\n      end", "Out.writeln(s.wasThrown(), \" \", x.get());",
           "e = CatchNoExtensionException.new();", "try(e)"]
        + ["  Meta.removeExtension(Cell);"] * extensions
        + ["end", "Out.write(e.wasThrown(), \" \");", "e = CatchNoExtensionException.new();",
           "try(e)\n        Meta.removeExtension(Cell);\n      end", "Out.writeln(e.wasThrown(), \" \", x.get());"])
    locals_ = "var x : Cell;\n          s : CatchNoShellException;\n          e : CatchNoExtensionException;"
    result = run_main(body, locals_, extra=CELL)
    assert result.status == 0
    assert result.stdout == "5\nfalse true 5\nfalse true 5\n"
