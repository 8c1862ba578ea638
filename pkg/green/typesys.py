"""
Type descriptors and the structural relations between them.

A type is a named set of method signatures. Equality and subtyping are
structural and coinductive: a pair of types met again while it is being
compared is assumed to be related, which makes both relations terminate on
mutually recursive types.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

BASIC_NAMES = ("char", "boolean", "byte", "integer", "long", "real", "double")

WRAPPERS = {
    "char": "Char", "boolean": "Boolean", "byte": "Byte", "integer": "Integer",
    "long": "Long", "real": "Real", "double": "Double",
}
UNWRAPPED = {wrapper: basic for basic, wrapper in WRAPPERS.items()}

DEFAULT_EXCEPTION = "CatchUncheckedException"

# Pairs of descriptor ids assumed related while a comparison is under way.
Pairs = Set[Tuple[Any, ...]]


class Kind(str, Enum):
    BASIC = "basic"
    CLASS = "class"
    CLASS_OBJECT = "classObjectType"
    ARRAY = "arrayType"
    NIL = "nilType"
    GENERIC = "synthesizedType"


@dataclass(eq=False)
class Signature:
    """A method interface. Parameter names are not part of it."""
    name: str
    params: List["TypeDescriptor"]
    exception: Optional["TypeDescriptor"] = None
    result: Optional["TypeDescriptor"] = None
    variadic: bool = False
    # The method symbol this signature was taken from, if any.
    method: Any = field(default=None, repr=False)

    @property
    def arity(self) -> int:
        return len(self.params)

    def __str__(self) -> str:
        params = ", ".join(p.name for p in self.params)
        if self.variadic and self.params:
            head, _, last = params.rpartition(", ")
            params = (head + ", " if head else "") + "..." + last
        text = f"{self.name}({params})"
        if self.exception is not None:
            text += f"(exception : {self.exception.name})"
        if self.result is not None:
            text += f" : {self.result.name}"
        return text


class TypeDescriptor:
    """One type of the table: its kind and its signatures.

    Signatures may be supplied later through ``provide``; they are computed
    on first use, so descriptors can refer to each other in any order.
    """

    def __init__(self, name: str, kind: Kind, *, symbol: Any = None,
                 element: Optional["TypeDescriptor"] = None, dims: int = 0,
                 final: bool = False, args: Sequence["TypeDescriptor"] = ()):
        self.name = name
        self.kind = kind
        self.symbol = symbol
        self.element = element
        self.dims = dims
        self.final = final
        self.args = tuple(args)
        self._signatures: Optional[List[Signature]] = None
        self._by_key: Optional[Dict[Tuple[str, int], List[Signature]]] = None
        self._provider: Optional[Callable[[], List[Signature]]] = None

    def __repr__(self) -> str:
        return f"<type {self.name}>"

    def provide(self, provider: Callable[[], List[Signature]]) -> None:
        self._provider = provider
        self._signatures = None
        self._by_key = None

    def set_signatures(self, signatures: List[Signature]) -> None:
        self._provider = None
        self._signatures = list(signatures)
        self._by_key = None

    @property
    def signatures(self) -> List[Signature]:
        if self._signatures is None:
            self._signatures = list(self._provider()) if self._provider else []
        return self._signatures

    def _index(self) -> Dict[Tuple[str, int], List[Signature]]:
        if self._by_key is None:
            index: Dict[Tuple[str, int], List[Signature]] = {}
            for sig in self.signatures:
                index.setdefault((sig.name, sig.arity), []).append(sig)
            self._by_key = index
        return self._by_key

    def lookup(self, name: str, arity: int) -> List[Signature]:
        return self._index().get((name, arity), [])

    def named(self, name: str) -> List[Signature]:
        return [s for s in self.signatures if s.name == name]

    @property
    def is_basic(self) -> bool:
        return self.kind is Kind.BASIC

    @property
    def is_reference(self) -> bool:
        return self.kind is not Kind.BASIC

    @property
    def is_array(self) -> bool:
        return self.kind is Kind.ARRAY


class TypeTable:
    """Every type of one program, indexed by name."""

    def __init__(self) -> None:
        self._types: Dict[str, TypeDescriptor] = {}
        self.nil = self.add(TypeDescriptor("Nil", Kind.NIL, final=True))
        for name in BASIC_NAMES:
            self.add(TypeDescriptor(name, Kind.BASIC, final=True))
        self.default_exception: Optional[TypeDescriptor] = None
        # Installs array signatures: ``provider(descriptor) -> signatures``.
        self.array_provider: Optional[Callable[[TypeDescriptor], List[Signature]]] = None
        self.generic_provider: Optional[Callable[[TypeDescriptor], List[Signature]]] = None
        self.steps = 0
        self._frozen = False
        self._subtype_cache: Dict[Tuple[int, int], bool] = {}
        self._equal_cache: Dict[Tuple[int, int], bool] = {}

    def add(self, descriptor: TypeDescriptor) -> TypeDescriptor:
        if descriptor.name in self._types:
            raise ValueError(f"type {descriptor.name} already defined")
        self._types[descriptor.name] = descriptor
        return descriptor

    def get(self, name: str) -> Optional[TypeDescriptor]:
        return self._types.get(name)

    def __getitem__(self, name: str) -> TypeDescriptor:
        return self._types[name]

    def __contains__(self, name: str) -> bool:
        return name in self._types

    def __iter__(self) -> Iterator[TypeDescriptor]:
        return iter(list(self._types.values()))

    def __len__(self) -> int:
        return len(self._types)

    def basic(self, name: str) -> TypeDescriptor:
        return self._types[name]

    def array_of(self, element: TypeDescriptor, dims: int) -> TypeDescriptor:
        """The interned descriptor of ``array(element)[]...`` with ``dims`` brackets."""
        name = f"array({element.name})" + "[]" * dims
        found = self._types.get(name)
        if found is not None:
            return found
        descriptor = self.add(TypeDescriptor(name, Kind.ARRAY, element=element, dims=dims))
        if self.array_provider is not None:
            provider = self.array_provider
            descriptor.provide(lambda: provider(descriptor))
        return descriptor

    def generic(self, module: str, name: str, args: Sequence[TypeDescriptor]) -> TypeDescriptor:
        """Built-in parameterized types such as ``DS.Iter(T)``."""
        full = f"{module}.{name}({', '.join(a.name for a in args)})"
        found = self._types.get(full)
        if found is not None:
            return found
        descriptor = self.add(TypeDescriptor(full, Kind.GENERIC, args=args))
        if self.generic_provider is not None:
            provider = self.generic_provider
            descriptor.provide(lambda: provider(descriptor))
        return descriptor

    def type_of_class_object(self, name: str) -> Optional[TypeDescriptor]:
        return self._types.get("Type$" + name)

    def reset_signatures(self) -> None:
        """Drop computed signature lists; members were added after first use."""
        for descriptor in self._types.values():
            if descriptor._provider is not None:
                descriptor.provide(descriptor._provider)
        self._subtype_cache.clear()
        self._equal_cache.clear()

    def freeze(self) -> None:
        """Declarations are complete: top-level answers may now be cached."""
        self._frozen = True
        self._subtype_cache.clear()
        self._equal_cache.clear()

    def exception_of(self, sig: Signature) -> Optional[TypeDescriptor]:
        return sig.exception if sig.exception is not None else self.default_exception

    # -- relations ------------------------------------------------------

    def type_equal(self, s: TypeDescriptor, t: TypeDescriptor) -> bool:
        if s is t:
            return True
        key = (id(s), id(t))
        if self._frozen and key in self._equal_cache:
            return self._equal_cache[key]
        answer = self._equal(s, t, set())
        if self._frozen:
            self._equal_cache[key] = answer
        return answer

    def signature_equal(self, a: Signature, b: Signature) -> bool:
        return self._sig_equal(a, b, set())

    def is_subtype(self, s: TypeDescriptor, t: TypeDescriptor) -> bool:
        """True when ``s`` may be used where ``t`` is expected."""
        if s is t:
            return True
        key = (id(s), id(t))
        if self._frozen and key in self._subtype_cache:
            return self._subtype_cache[key]
        answer = self._subtype(s, t, set())
        if self._frozen:
            self._subtype_cache[key] = answer
        return answer

    def _equal(self, s: TypeDescriptor, t: TypeDescriptor, assumed: Pairs) -> bool:
        self.steps += 1
        if s is t:
            return True
        pair = (id(s), id(t))
        if pair in assumed or (pair[1], pair[0]) in assumed:
            return True
        if s.kind in (Kind.BASIC, Kind.NIL) or t.kind in (Kind.BASIC, Kind.NIL):
            return False
        if s.final or t.final:
            return False
        if s.kind is Kind.ARRAY or t.kind is Kind.ARRAY:
            if s.kind is not t.kind or s.dims != t.dims:
                return False
            return self._equal(s.element, t.element, assumed)
        if len(s.signatures) != len(t.signatures):
            return False
        assumed.add(pair)
        return (self._covers(s, t, assumed, self._sig_equal)
                and self._covers(t, s, assumed, self._sig_equal))

    def _covers(self, s: TypeDescriptor, t: TypeDescriptor, assumed: Pairs,
                compare: Callable[[Signature, Signature, Pairs], bool]) -> bool:
        """Every signature of ``t`` has an equal one in ``s``."""
        for wanted in t.signatures:
            found = False
            for candidate in s.lookup(wanted.name, wanted.arity):
                trial = set(assumed)
                if compare(candidate, wanted, trial):
                    assumed |= trial
                    found = True
                    break
            if not found:
                return False
        return True

    def _sig_equal(self, a: Signature, b: Signature, assumed: Pairs) -> bool:
        self.steps += 1
        if a.name != b.name or a.arity != b.arity or a.variadic != b.variadic:
            return False
        for p, q in zip(a.params, b.params):
            if not self._equal(p, q, assumed):
                return False
        if (a.result is None) != (b.result is None):
            return False
        if a.result is not None and not self._equal(a.result, b.result, assumed):
            return False
        ea, eb = self.exception_of(a), self.exception_of(b)
        if ea is None or eb is None:
            return ea is eb
        return self._equal(ea, eb, assumed)

    def _subtype(self, s: TypeDescriptor, t: TypeDescriptor, assumed: Pairs) -> bool:
        self.steps += 1
        if s is t:
            return True
        if s.kind is Kind.NIL:
            return t.kind is not Kind.BASIC
        if s.kind is Kind.BASIC or t.kind in (Kind.BASIC, Kind.NIL):
            return False
        if t.final:
            return False
        if s.kind is Kind.ARRAY:
            if t.kind is Kind.ARRAY:
                return self._equal(s, t, assumed)
            base = self.array_base(s)
            return base is not None and (base is t or self._subtype(base, t, assumed))
        if t.kind is Kind.ARRAY:
            return False
        if _nominal_subclass(s, t):
            return True
        # kept apart from the equality pairs: s <: t says nothing about s = t
        pair = ("<", id(s), id(t))
        if pair in assumed:
            return True
        assumed.add(pair)
        return self._covers(s, t, assumed, self._sig_equal)

    def array_base(self, array: TypeDescriptor) -> Optional[TypeDescriptor]:
        element = array.element
        if array.dims == 1 and element is not None and element.kind in (Kind.CLASS, Kind.CLASS_OBJECT):
            return self._types.get("AnyClassArray") or self._types.get("AnyArray")
        return self._types.get("AnyArray")


def _nominal_subclass(s: TypeDescriptor, t: TypeDescriptor) -> bool:
    sub, sup = s.symbol, t.symbol
    if sub is None or sup is None or not hasattr(sub, "is_subclass_of"):
        return False
    return sub.is_subclass_of(sup)


def wrapper_name(basic: str) -> Optional[str]:
    return WRAPPERS.get(basic)


def describe(descriptor: TypeDescriptor) -> List[str]:
    """Sorted signature listing, for ``dump-types``."""
    return sorted(str(sig) for sig in descriptor.signatures)
