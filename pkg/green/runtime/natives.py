"""
Bodies of the library methods declared ``native``.

Each implementation is registered under the method's native key, such as
``String.get(integer)`` or ``object Out.writeln(...array(Any)[])``, and is
called as ``fn(rt, this, args)`` with the interpreter, the receiver and the
argument values.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, TextIO

import numpy as np

from ..symbols import ClassKind
from ..typesys import UNWRAPPED
from . import numeric
from .arrays import ArrayFault, ArrayValue, element_type, walk_indices
from .values import ClassObj, GreenExit, IterValue, Obj, StackValue, same

if TYPE_CHECKING:
    from .interpreter import Interpreter

logger = logging.getLogger(__name__)

NativeFn = Callable[["Interpreter", Any, List[Any]], Any]

NATIVES: Dict[str, NativeFn] = {}


def native(*keys: str) -> Callable[[NativeFn], NativeFn]:
    """Register ``fn`` as the body of the native methods named by ``keys``."""
    def register(fn: NativeFn) -> NativeFn:
        for key in keys:
            if key in NATIVES:
                raise ValueError(f"native {key} registered twice")
            NATIVES[key] = fn
        return fn
    return register


def violated(rt: "Interpreter") -> None:
    """The running native was called outside its precondition."""
    rt.throw_new("AssertionBeforeException", rt.mirrors.method_info(rt.calls[-1].method))


_UPPER = {code: code + 32 for code in range(ord("A"), ord("Z") + 1)}
_LOWER = {code: code - 32 for code in range(ord("a"), ord("z") + 1)}


def ascii_lower(text: str) -> str:
    return text.translate(_UPPER)


def ascii_upper(text: str) -> str:
    return text.translate(_LOWER)


def compare_text(a: str, b: str) -> int:
    return (a > b) - (a < b)


def hash_text(text: str) -> int:
    h = 0
    for ch in text:
        h = numeric.wrap("integer", 31 * h + ord(ch))
    return h


# -- Any -----------------------------------------------------------------

@native("Any.toString()")
def _any_to_string(rt, this, args):
    return ""


@native("Any.equals(Any)")
def _any_equals(rt, this, args):
    return same(this, args[0])


@native("Any.isObjectOf(AnyClassObject)")
def _any_is_object_of(rt, this, args):
    target = args[0]
    if target is None:
        rt.throw_new("MessageSendToNilException")
    cls = rt.class_of(this)
    associate = target.cls.associate
    return cls is not None and associate is not None and cls.is_subclass_of(associate)


@native("Any.getInfo()")
def _any_get_info(rt, this, args):
    return rt.mirrors.object_info(this)


def shallow_clone(rt: "Interpreter", value: Any) -> Any:
    if isinstance(value, ClassObj):
        return value
    if isinstance(value, Obj):
        payload = list(value.payload) if isinstance(value.payload, list) else value.payload
        return Obj(value.cls, list(value.fields), payload)
    if isinstance(value, ArrayValue):
        return ArrayValue(value.descriptor, list(value.items))
    return value


def deep_clone(rt: "Interpreter", value: Any, copies: Optional[Dict[int, Any]] = None) -> Any:
    """Copy ``value`` and everything it refers to; an object reached twice is copied once."""
    copies = {} if copies is None else copies
    if not isinstance(value, (Obj, ArrayValue)) or isinstance(value, ClassObj):
        return value
    if id(value) in copies:
        return copies[id(value)]
    if isinstance(value, ArrayValue):
        copy = ArrayValue(value.descriptor, [])
        copies[id(value)] = copy
        copy.items = [deep_clone(rt, item, copies) for item in value.items]
        return copy
    payload = list(value.payload) if isinstance(value.payload, list) else value.payload
    copy = Obj(value.cls, [], payload)
    copies[id(value)] = copy
    copy.fields = [deep_clone(rt, item, copies) for item in value.fields]
    return copy


def deep_equal(a: Any, b: Any, seen: Optional[set] = None) -> bool:
    seen = set() if seen is None else seen
    if isinstance(a, ClassObj) or isinstance(b, ClassObj):
        return a is b
    if isinstance(a, Obj) and isinstance(b, Obj):
        if a.cls is not b.cls:
            return False
        if (id(a), id(b)) in seen:
            return True
        seen.add((id(a), id(b)))
        return a.payload == b.payload and all(deep_equal(x, y, seen) for x, y in zip(a.fields, b.fields))
    if isinstance(a, ArrayValue) and isinstance(b, ArrayValue):
        if a.descriptor is not b.descriptor or len(a.items) != len(b.items):
            return False
        if (id(a), id(b)) in seen:
            return True
        seen.add((id(a), id(b)))
        return all(deep_equal(x, y, seen) for x, y in zip(a.items, b.items))
    if isinstance(a, (Obj, ArrayValue)) or isinstance(b, (Obj, ArrayValue)):
        return False
    return bool(a == b) if a is not None and b is not None else a is b


def shallow_copy(this: Any, other: Any) -> bool:
    if not isinstance(this, Obj) or not isinstance(other, Obj) or isinstance(this, ClassObj):
        return False
    if this.cls is not other.cls:
        return False
    this.fields[:] = other.fields
    if isinstance(other.payload, list):
        this.payload = list(other.payload)
    return True


def shallow_equal(this: Any, other: Any) -> bool:
    if isinstance(this, Obj) and isinstance(other, Obj):
        return this.cls is other.cls and this.payload == other.payload \
            and all(same(x, y) if isinstance(x, (Obj, ArrayValue)) else x == y
                    for x, y in zip(this.fields, other.fields))
    if isinstance(this, ArrayValue) and isinstance(other, ArrayValue):
        return this.descriptor is other.descriptor and len(this.items) == len(other.items) \
            and all(same(x, y) for x, y in zip(this.items, other.items))
    return same(this, other)


@native("Any.shallowClone()")
def _any_shallow_clone(rt, this, args):
    return shallow_clone(rt, this)


@native("Any.deepClone()")
def _any_deep_clone(rt, this, args):
    return deep_clone(rt, this)


@native("Any.shallowCopy(Any)")
def _any_shallow_copy(rt, this, args):
    return shallow_copy(this, args[0])


@native("Any.shallowEqual(Any)")
def _any_shallow_equal(rt, this, args):
    return shallow_equal(this, args[0])


@native("Any.deepEqual(Any)")
def _any_deep_equal(rt, this, args):
    return deep_equal(this, args[0])


def _forward(name: str) -> NativeFn:
    """``Any.m(p, ...)`` sends ``m`` to ``p``."""
    def forward(rt, this, args):
        return rt.send(args[0], name, list(args[1:]))
    return forward


for _name, _params in (("toString", "Any"), ("equals", "Any,Any"), ("isObjectOf", "Any,AnyClassObject"),
                       ("getInfo", "Any"), ("shallowClone", "Any"), ("deepClone", "Any"),
                       ("shallowCopy", "Any,Any"), ("shallowEqual", "Any,Any"), ("deepEqual", "Any,Any")):
    native(f"object Any.{_name}({_params})")(_forward(_name))


@native("object Any.basicNew(AnyClassObject)")
def _any_basic_new(rt, this, args):
    target = args[0]
    if target is None:
        rt.throw_new("MessageSendToNilException")
    cls = target.cls.associate
    if cls is None or cls.is_abstract or cls.kind is not ClassKind.CLASS:
        rt.throw_new("CreationException")
    if cls.name == "String":
        return ""
    return rt.allocate(cls)


@native("AnyClass.getClassInfo()")
def _any_class_info(rt, this, args):
    return rt.mirrors.class_info_of(this)


@native("AnyClass.getClassObject()")
def _any_class_object(rt, this, args):
    if isinstance(this, ClassObj):
        return this
    if rt.mirrors.is_class_info(this):
        return rt.objects.get("ClassInfo")
    return rt.class_object(rt.class_of(this).descriptor)


@native("AnyClassObject.getAssociateClassInfo()")
def _class_object_associate_info(rt, this, args):
    rt.mirrors.require_classes()
    associate = this.cls.associate
    return rt.mirrors.class_info(associate) if associate is not None else None


@native("AnyClassObject.getInitMethod()")
def _class_object_init_method(rt, this, args):
    return rt.mirrors.object_init_method(this)


# -- basic values --------------------------------------------------------

@native("AnyValue.toString()")
def _value_to_string(rt, this, args):
    return numeric.format_value(rt.receiver_kind(this), this)


@native("AnyValue.getInfo()")
def _value_info(rt, this, args):
    return rt.mirrors.object_info(this)


@native("AnyValue.getClassInfo()")
def _value_class_info(rt, this, args):
    rt.mirrors.require_classes()
    return rt.mirrors.class_info(rt.model.classes[rt.receiver_kind(this)])


@native("AnyValue.getClassObject()")
def _value_class_object(rt, this, args):
    return rt.objects[rt.receiver_kind(this)]


@native("object Nil.new()")
def _nil_new(rt, this, args):
    return None


for _kind in ("char", "boolean", "byte", "integer", "long", "real", "double"):
    native(f"{_kind}.equals({_kind})")(lambda rt, this, args: bool(this == args[0]))


_SIZES = {"char": 1, "boolean": 1, "byte": 1, "integer": 4, "long": 8, "real": 4, "double": 8}
_BOUNDS = {
    "char": (chr(0), chr(255)),
    "boolean": (False, True),
    "byte": numeric.LIMITS["byte"],
    "integer": numeric.LIMITS["integer"],
    "long": numeric.LIMITS["long"],
    "real": (np.float32(numeric.REAL_MIN), np.float32(numeric.REAL_MAX)),
    "double": (numeric.DOUBLE_MIN, numeric.DOUBLE_MAX),
}
_FLOAT_INFO = {
    "real": (np.finfo(np.float32), np.float32, 6),
    "double": (np.finfo(np.float64), float, 15),
}


def _constant(value: Any) -> NativeFn:
    return lambda rt, this, args: value


def _cast_failure(rt: "Interpreter", target: str, source: str, value: Any) -> None:
    exception = f"AssertionCast{target.capitalize()}Exception"
    boxed = value if source == "String" else rt.box(value, source)
    rt.throw_new(exception, rt.objects[source], boxed)


def _cast(target: str, source: str) -> NativeFn:
    def cast(rt, this, args):
        value = args[0]
        if source == "String":
            if value is None:
                rt.throw_new("MessageSendToNilException")
            parsed = numeric.parse(target, value)
            if parsed is None:
                _cast_failure(rt, target, source, value)
            return parsed
        if source == "AnyClass":
            kind = UNWRAPPED.get(value.cls.name) if isinstance(value, Obj) else None
            if kind is None or not numeric.convertible(target, kind, value.fields[0]):
                rt.throw_new("TypeErrorException")
            return numeric.convert(target, kind, value.fields[0])
        if not numeric.convertible(target, source, value):
            _cast_failure(rt, target, source, value)
        return numeric.convert(target, source, value)
    return cast


def _cast_ok(target: str, source: str) -> NativeFn:
    def cast_ok(rt, this, args):
        value = args[0]
        if source == "AnyClass":
            kind = UNWRAPPED.get(value.cls.name) if isinstance(value, Obj) else None
            return kind is not None and numeric.convertible(target, kind, value.fields[0])
        return numeric.convertible(target, source, value)
    return cast_ok


def _register_basic_class_objects() -> None:
    sources = ("String", "AnyClass", "char", "boolean", "byte", "integer", "long", "real", "double")
    for kind, size in _SIZES.items():
        prefix = f"object {kind}."
        native(prefix + "getSizeInBits()")(_constant(8 * size))
        native(prefix + "getSize()")(_constant(size))
        low, high = _BOUNDS[kind]
        native(prefix + "getMinValue()")(_constant(low))
        native(prefix + "getMaxValue()")(_constant(high))
        if kind in _FLOAT_INFO:
            info, make, digits = _FLOAT_INFO[kind]
            native(prefix + "getEpsilon()")(_constant(make(info.eps)))
            native(prefix + "getRadix()")(_constant(2))
            native(prefix + "getPrecision()")(_constant(digits))
            native(prefix + "getMantDig()")(_constant(info.nmant + 1))
        for source in sources:
            if source == kind:
                continue
            native(f"{prefix}cast({source})")(_cast(kind, source))
            if source != "String":
                native(f"{prefix}castOk({source})")(_cast_ok(kind, source))
        native(f"object String.cast({kind})")(
            (lambda k: lambda rt, this, args: numeric.format_value(k, args[0]))(kind))
    native("object char.getMinIntegerChar()")(_constant(0))
    native("object char.getMaxIntegerChar()")(_constant(numeric.CHAR_INTEGER_MAX))


_register_basic_class_objects()


# -- String --------------------------------------------------------------

@native("String.init(String)")
def _string_init(rt, this, args):
    if args[0] is None:
        rt.throw_new("MessageSendToNilException")
    return args[0]


@native("String.init(...array(Any)[])")
def _string_init_values(rt, this, args):
    return "".join(rt.to_string(value) for value in args[0].items)


@native("String.toString()")
def _string_to_string(rt, this, args):
    return this


@native("String.equals(Any)")
def _string_equals(rt, this, args):
    return isinstance(args[0], str) and this == args[0]


@native("String.get(integer)")
def _string_get(rt, this, args):
    index = args[0]
    if not 0 <= index < len(this):
        violated(rt)
    return this[index]


@native("String.getIter()")
def _string_iter(rt, this, args):
    return IterValue(rt.table.generic("DS", "Iter", [rt.table["char"]]), list(this))


@native("String.cmp(String)")
def _string_cmp(rt, this, args):
    if args[0] is None:
        violated(rt)
    return compare_text(this, args[0])


@native("String.cmpIgnoreCase(String)")
def _string_cmp_ignore_case(rt, this, args):
    if args[0] is None:
        violated(rt)
    return compare_text(ascii_lower(this), ascii_lower(args[0]))


@native("String.newConcat(String)")
def _string_concat(rt, this, args):
    if args[0] is None:
        violated(rt)
    return this + args[0]


@native("String.tocharArray(array(char)[])")
def _string_to_chars(rt, this, args):
    target = args[0]
    if target is None or len(target.items) < len(this):
        violated(rt)
    target.items[:len(this)] = list(this)


@native("String.getSize()")
def _string_size(rt, this, args):
    return len(this)


@native("String.newToLowerCase()")
def _string_lower(rt, this, args):
    return ascii_lower(this)


@native("String.newToUpperCase()")
def _string_upper(rt, this, args):
    return ascii_upper(this)


def _check_subset(rt, size: int, start: int, stop: int) -> None:
    if not (0 <= start <= stop + 1 and stop < size):
        violated(rt)


@native("String.getSubset(integer,integer)")
def _string_subset(rt, this, args):
    start, stop = args
    _check_subset(rt, len(this), start, stop)
    return this[start:stop + 1]


@native("String.search(String)")
def _string_search(rt, this, args):
    if args[0] is None:
        violated(rt)
    return this.find(args[0])


@native("String.hashCode()")
def _string_hash(rt, this, args):
    return hash_text(this)


def _string_converter(kind: str, checked: bool) -> NativeFn:
    def convert(rt, this, args):
        value = numeric.parse(kind, this)
        if not checked:
            return value is not None
        if value is None:
            violated(rt)
        return value
    return convert


for _kind in ("byte", "integer", "long", "real", "double"):
    native(f"String.to{_kind}Ok()")(_string_converter(_kind, False))
    native(f"String.to{_kind}()")(_string_converter(_kind, True))


@native("String.toDynString()")
def _string_to_dyn(rt, this, args):
    return Obj(rt.model.classes["DynString"], [], list(this))


# -- DynString -----------------------------------------------------------

def _chars(rt, value: Any) -> List[str]:
    if value is None:
        violated(rt)
    return value.payload


@native("DynString.init(String)")
def _dyn_init(rt, this, args):
    if args[0] is None:
        violated(rt)
    this.payload = list(args[0])


@native("DynString.init(DynString)")
def _dyn_init_copy(rt, this, args):
    this.payload = list(_chars(rt, args[0]))


@native("DynString.get(integer)")
def _dyn_get(rt, this, args):
    if not 0 <= args[0] < len(this.payload):
        violated(rt)
    return this.payload[args[0]]


@native("DynString.cmp(DynString)")
def _dyn_cmp(rt, this, args):
    return compare_text("".join(this.payload), "".join(_chars(rt, args[0])))


@native("DynString.cmpIgnoreCase(DynString)")
def _dyn_cmp_ignore_case(rt, this, args):
    return compare_text(ascii_lower("".join(this.payload)), ascii_lower("".join(_chars(rt, args[0]))))


@native("DynString.concat(String)")
def _dyn_concat(rt, this, args):
    if args[0] is None:
        violated(rt)
    this.payload.extend(args[0])


@native("DynString.getSize()")
def _dyn_size(rt, this, args):
    return len(this.payload)


@native("DynString.toLowerCase()")
def _dyn_lower(rt, this, args):
    this.payload[:] = ascii_lower("".join(this.payload))


@native("DynString.toUpperCase()")
def _dyn_upper(rt, this, args):
    this.payload[:] = ascii_upper("".join(this.payload))


@native("DynString.getSubset(integer,integer)")
def _dyn_subset(rt, this, args):
    start, stop = args
    _check_subset(rt, len(this.payload), start, stop)
    return Obj(this.cls, [], this.payload[start:stop + 1])


@native("DynString.search(DynString)")
def _dyn_search(rt, this, args):
    return "".join(this.payload).find("".join(_chars(rt, args[0])))


@native("DynString.hashCode()")
def _dyn_hash(rt, this, args):
    return hash_text("".join(this.payload))


@native("DynString.removeSpaceBegin()")
def _dyn_strip_begin(rt, this, args):
    this.payload[:] = "".join(this.payload).lstrip(" \t\r\n")


@native("DynString.removeSpaceEnd()")
def _dyn_strip_end(rt, this, args):
    this.payload[:] = "".join(this.payload).rstrip(" \t\r\n")


@native("DynString.toString()")
def _dyn_to_string(rt, this, args):
    return "".join(this.payload)


@native("DynString.prepend(DynString)")
def _dyn_prepend(rt, this, args):
    this.payload[:0] = _chars(rt, args[0])


@native("DynString.removeAllCh(char)")
def _dyn_remove_all(rt, this, args):
    kept = [ch for ch in this.payload if ch != args[0]]
    removed = len(kept) != len(this.payload)
    this.payload[:] = kept
    return removed


@native("DynString.remove(integer)")
def _dyn_remove(rt, this, args):
    if not 0 <= args[0] < len(this.payload):
        violated(rt)
    del this.payload[args[0]]


@native("DynString.insert(integer,char)")
def _dyn_insert(rt, this, args):
    index, ch = args
    if not 0 <= index < len(this.payload):
        violated(rt)
    this.payload.insert(index, ch)


@native("DynString.add(integer,char)")
def _dyn_add_after(rt, this, args):
    index, ch = args
    if not 0 <= index < len(this.payload):
        violated(rt)
    this.payload.insert(index + 1, ch)


@native("DynString.add(char)")
def _dyn_add(rt, this, args):
    this.payload.append(args[0])


# -- arrays --------------------------------------------------------------

def _indices(args: List[Any]) -> List[int]:
    if len(args) == 4:
        return list(args[:3]) + list(args[3].items)
    return list(args)


def _element_slot(rt: "Interpreter", array: ArrayValue, indices: List[int]):
    if len(indices) > array.dims:
        rt.throw_new("TooManyDimensionsException", len(indices), array.dims)
    try:
        row = walk_indices(array, indices)
    except ArrayFault as fault:
        rt.throw_new("IllegalArrayIndexException", fault.index, fault.array)
    return row, indices[-1], element_type(rt.table, row.descriptor)


@native("AnyArray.getSize()")
def _array_size(rt, this, args):
    return len(this.items)


@native("AnyArray.set(Any,integer)", "AnyArray.set(Any,integer,integer)",
        "AnyArray.set(Any,integer,integer,integer,...array(integer)[])")
def _array_set(rt, this, args):
    row, index, element = _element_slot(rt, this, _indices(args[1:]))
    value = args[0]
    if not rt.is_instance(value, element):
        rt.throw_new("TypeErrorException")
    try:
        row.set(index, rt.unbox_for(value, element))
    except ArrayFault as fault:
        rt.throw_new("IllegalArrayIndexException", fault.index, fault.array)


@native("AnyArray.get(integer)", "AnyArray.get(integer,integer)",
        "AnyArray.get(integer,integer,integer,...array(integer)[])")
def _array_get(rt, this, args):
    row, index, element = _element_slot(rt, this, _indices(args))
    try:
        return rt.box_for(row.get(index), element)
    except ArrayFault as fault:
        rt.throw_new("IllegalArrayIndexException", fault.index, fault.array)


@native("AnyArray.toString()")
def _array_to_string(rt, this, args):
    return this.descriptor.name


# -- In, Out, OutError ---------------------------------------------------

class InputReader:
    """Characters, tokens and lines from a text stream."""

    def __init__(self, stream: TextIO):
        self.stream = stream
        self._pending = ""

    def read_char(self) -> str:
        if self._pending:
            ch, self._pending = self._pending[0], self._pending[1:]
            return ch
        return self.stream.read(1)

    def read_token(self) -> str:
        ch = self.read_char()
        while ch and ch.isspace():
            ch = self.read_char()
        token = []
        while ch and not ch.isspace():
            token.append(ch)
            ch = self.read_char()
        return "".join(token)

    def read_line(self) -> str:
        line = self._pending + self.stream.readline()
        self._pending = ""
        return line[:-1] if line.endswith("\n") else line


@native("object In.readCh()")
def _read_char(rt, this, args):
    return rt.input.read_char() or "\0"


def _reader(kind: str) -> NativeFn:
    def read(rt, this, args):
        token = rt.input.read_token()
        value = numeric.parse(kind, token)
        if value is None:
            _cast_failure(rt, kind, "String", token)
        return value
    return read


for _method, _kind in (("readByte", "byte"), ("readInteger", "integer"), ("readLong", "long"),
                       ("readReal", "real"), ("readDouble", "double")):
    native(f"object In.{_method}()")(_reader(_kind))


@native("object In.readString()")
def _read_string(rt, this, args):
    return rt.input.read_token()


@native("object In.readLine()")
def _read_line(rt, this, args):
    return rt.input.read_line()


def _writer(stream: str, newline: bool) -> NativeFn:
    def write(rt, this, args):
        text = "".join(rt.to_string(value) for value in args[0].items)
        getattr(rt, stream).write(text + "\n" if newline else text)
    return write


native("object Out.write(...array(Any)[])")(_writer("stdout", False))
native("object Out.writeln(...array(Any)[])")(_writer("stdout", True))
native("object OutError.write(...array(Any)[])")(_writer("stderr", False))
native("object OutError.writeln(...array(Any)[])")(_writer("stderr", True))


# -- Memory, Runtime -----------------------------------------------------

MEMORY_SIZE = 2 ** 31

native("object Memory.sizeLargestBlock()", "object Memory.sizeFreeMemory()")(_constant(MEMORY_SIZE))
native("object Memory.doGarbageCollection()", "object Memory.collectionOn()",
       "object Memory.collectionOff()")(_constant(None))


@native("object Runtime.exit(integer)")
def _runtime_exit(rt, this, args):
    logger.debug("Runtime.exit(%d)", args[0])
    raise GreenExit(args[0])


@native("object Runtime.putAtEndList(Function)")
def _runtime_end_list(rt, this, args):
    if args[0] is None:
        rt.throw_new("MessageSendToNilException")
    rt.end_list.append(args[0])


@native("object Runtime.getClasses()")
def _runtime_classes(rt, this, args):
    return rt.mirrors.all_classes()


@native("object Runtime.searchForClass(String)")
def _runtime_search_class(rt, this, args):
    return rt.mirrors.search_class(args[0])


@native("object Runtime.getCatchObjectStack()")
def _runtime_catch_stack(rt, this, args):
    return StackValue(rt.table.generic("DS", "Stack", [rt.table["Catch"]]), rt.catches.snapshot())


@native("object Runtime.getMethodCallStack()")
def _runtime_call_stack(rt, this, args):
    return rt.mirrors.call_stack()


@native("object Runtime.setCatchUnchecked(CatchUncheckedException)")
def _runtime_set_catch(rt, this, args):
    if args[0] is None:
        rt.throw_new("MessageSendToNilException")
    rt.catches.replace_bottom(args[0])


@native("object Runtime.getCatchUnchecked()")
def _runtime_get_catch(rt, this, args):
    bottom = rt.catches.bottom
    return bottom.catch if bottom is not None else None


@native("object HCatchAll.throw(Exception)")
def _catch_all_report(rt, this, args):
    rt.stderr.write(f"Exception {args[0].cls.name} not caught\n")
    raise GreenExit(1)
