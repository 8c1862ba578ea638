"""Tests for structural type equality and subtyping."""

from green.typesys import Kind, Signature, TypeDescriptor, TypeTable


def _class(table: TypeTable, name: str, final: bool = False) -> TypeDescriptor:
    return table.add(TypeDescriptor(name, Kind.CLASS, final=final))


def _sig(name: str, *params: TypeDescriptor, result: TypeDescriptor = None,
         variadic: bool = False, exception: TypeDescriptor = None) -> Signature:
    return Signature(name, list(params), exception, result, variadic)


def test_more_methods_make_a_subtype() -> None:
    table = TypeTable()
    integer = table["integer"]
    small = _class(table, "Small")
    big = _class(table, "Big")
    small.set_signatures([_sig("get", result=integer)])
    big.set_signatures([_sig("get", result=integer), _sig("put", integer)])
    assert table.is_subtype(big, small)
    assert not table.is_subtype(small, big)
    assert not table.type_equal(small, big)


def test_signatures_must_match_exactly() -> None:
    table = TypeTable()
    a = _class(table, "A")
    b = _class(table, "B")
    a.set_signatures([_sig("get", result=table["integer"])])
    b.set_signatures([_sig("get", result=table["long"])])
    assert not table.is_subtype(a, b)
    assert not table.is_subtype(b, a)


def test_self_referential_types_are_equal() -> None:
    table = TypeTable()
    integer = table["integer"]
    node = _class(table, "Node")
    link = _class(table, "Link")
    node.set_signatures([_sig("next", result=node), _sig("get", result=integer)])
    link.set_signatures([_sig("next", result=link), _sig("get", result=integer)])
    assert table.type_equal(node, link)
    assert table.is_subtype(node, link)
    assert table.is_subtype(link, node)


def test_mutually_recursive_types_terminate() -> None:
    table = TypeTable()
    a = _class(table, "A")
    b = _class(table, "B")
    c = _class(table, "C")
    a.set_signatures([_sig("peer", result=b)])
    b.set_signatures([_sig("peer", result=a)])
    c.set_signatures([_sig("peer", result=c)])
    assert table.type_equal(a, c)
    assert table.type_equal(b, c)
    assert table.steps > 0


def test_basic_types_relate_only_to_themselves() -> None:
    table = TypeTable()
    assert table.is_subtype(table["integer"], table["integer"])
    assert not table.is_subtype(table["integer"], table["long"])
    assert not table.type_equal(table["byte"], table["integer"])


def test_nil_is_a_subtype_of_every_reference_type() -> None:
    table = TypeTable()
    anything = _class(table, "Thing")
    assert table.is_subtype(table.nil, anything)
    assert table.is_subtype(table.nil, table.array_of(anything, 1))
    assert not table.is_subtype(table.nil, table["integer"])


def test_final_types_have_no_structural_subtypes() -> None:
    table = TypeTable()
    text = _class(table, "Text", final=True)
    copy = _class(table, "Copy")
    signature = [_sig("size", result=table["integer"])]
    text.set_signatures(list(signature))
    copy.set_signatures(list(signature))
    assert not table.is_subtype(copy, text)
    assert table.is_subtype(text, copy)


def test_arrays_are_invariant_in_their_element() -> None:
    table = TypeTable()
    integer = table["integer"]
    small = _class(table, "Small")
    big = _class(table, "Big")
    twin = _class(table, "Twin")
    small.set_signatures([_sig("get", result=integer)])
    twin.set_signatures([_sig("get", result=integer)])
    big.set_signatures([_sig("get", result=integer), _sig("put", integer)])
    assert table.is_subtype(table.array_of(twin, 1), table.array_of(small, 1))
    assert not table.is_subtype(table.array_of(big, 1), table.array_of(small, 1))
    assert not table.is_subtype(table.array_of(small, 2), table.array_of(small, 1))


def test_arrays_are_subtypes_of_the_array_root() -> None:
    table = TypeTable()
    root = _class(table, "AnyArray")
    root.set_signatures([_sig("getSize", result=table["integer"])])
    assert table.array_base(table.array_of(table["integer"], 1)) is root
    assert table.is_subtype(table.array_of(table["integer"], 1), root)


def test_array_and_generic_types_are_interned() -> None:
    table = TypeTable()
    integer = table["integer"]
    assert table.array_of(integer, 2) is table.array_of(integer, 2)
    assert table.array_of(integer, 2).name == "array(integer)[][]"
    first = table.generic("DS", "Iter", [table["char"]])
    assert first is table.generic("DS", "Iter", [table["char"]])
    assert first.name == "DS.Iter(char)"


def test_variadic_signatures_differ_from_fixed_ones() -> None:
    table = TypeTable()
    strings = table.array_of(table["integer"], 1)
    assert not table.signature_equal(_sig("f", strings), _sig("f", strings, variadic=True))
    assert table.signature_equal(_sig("f", strings, variadic=True), _sig("f", strings, variadic=True))


def test_missing_exception_means_the_default_one() -> None:
    table = TypeTable()
    default = _class(table, "CatchUncheckedException")
    other = _class(table, "CatchOther")
    other.set_signatures([_sig("throw", table["integer"])])
    table.default_exception = default
    assert table.signature_equal(_sig("f"), _sig("f", exception=default))
    assert not table.signature_equal(_sig("f"), _sig("f", exception=other))


def test_signature_text() -> None:
    table = TypeTable()
    anything = _class(table, "Any")
    sig = _sig("write", table["integer"], table.array_of(anything, 1), result=table["boolean"],
               variadic=True)
    assert str(sig) == "write(integer, ...array(Any)[]) : boolean"


def test_answers_are_stable_after_freezing() -> None:
    table = TypeTable()
    a = _class(table, "A")
    b = _class(table, "B")
    a.set_signatures([_sig("get", result=table["integer"])])
    b.set_signatures([_sig("get", result=table["integer"])])
    table.freeze()
    assert table.is_subtype(a, b) and table.is_subtype(a, b)
    assert table.type_equal(b, a) and table.type_equal(b, a)


def test_a_larger_self_referential_type_is_not_a_subtype() -> None:
    table = TypeTable()
    integer = table["integer"]
    bigger = _class(table, "Bigger")
    smaller = _class(table, "Smaller")
    bigger.set_signatures([_sig("next", result=bigger), _sig("put", integer)])
    smaller.set_signatures([_sig("next", result=smaller)])
    assert not table.is_subtype(bigger, smaller)
    assert not table.is_subtype(smaller, bigger)
    assert not table.type_equal(bigger, smaller)
