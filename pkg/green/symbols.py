"""
Declared entities of a program: classes, class objects, shell classes,
methods, variables and constants.

Class objects and shell classes are modelled as ClassSymbol with their own
kind, so method lookup and field layout work the same way for all three.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .syntax import AssertClause, MethodDecl, Node
from .typesys import Signature, TypeDescriptor


class Visibility(str, Enum):
    INIT = "init"
    PUBLIC = "public"
    SUBCLASS = "subclass"
    PRIVATE = "private"


# Integer codes returned by MethodInfo.getVisibility.
VISIBILITY_CODES = {Visibility.PUBLIC: 0, Visibility.SUBCLASS: 1, Visibility.PRIVATE: 2,
                    Visibility.INIT: 3}


class ClassKind(str, Enum):
    CLASS = "class"
    BASIC = "basic"
    NIL = "nil"
    OBJECT = "object"
    SHELL = "shell"


@dataclass(eq=False)
class VarSymbol:
    name: str
    type: TypeDescriptor
    owner: "ClassSymbol"
    expanded: bool = False
    decl: Optional[Node] = None
    init: Any = None               # initializer expression (class objects only)
    array_sizes: List[int] = field(default_factory=list)
    # position in the object layout, superclass fields first
    slot: int = -1


@dataclass(eq=False)
class ConstSymbol:
    name: str
    type: TypeDescriptor
    value: Any
    public: bool
    owner: "ClassSymbol"
    is_enum: bool = False
    decl: Optional[Node] = None


@dataclass(eq=False)
class MethodSymbol:
    name: str
    owner: "ClassSymbol"
    visibility: Visibility
    params: List[TypeDescriptor]
    param_names: List[str]
    exception: Optional[TypeDescriptor] = None
    result: Optional[TypeDescriptor] = None
    decl: Optional[MethodDecl] = None
    is_abstract: bool = False
    variadic: bool = False
    native: Optional[str] = None
    # "new", "cast", "castObject", ... for members the toolchain adds.
    synthesized: Optional[str] = None
    # The init a synthesized ``new`` runs.
    init: Optional["MethodSymbol"] = None
    assertion: Optional[AssertClause] = None
    # Method whose assert clause this one inherited, for parameter renaming.
    assertion_source: Optional["MethodSymbol"] = None
    _signature: Optional[Signature] = field(default=None, repr=False)

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def signature(self) -> Signature:
        if self._signature is None:
            self._signature = Signature(self.name, list(self.params), self.exception,
                                        self.result, self.variadic, self)
        return self._signature

    @property
    def qualified(self) -> str:
        return f"{self.owner.name}::{self.name}"

    def native_key(self) -> str:
        """Registry key of a native body, such as ``String.get(integer)``.

        Class object methods are prefixed with ``object``.
        """
        names = ",".join(("..." if self.variadic and i == len(self.params) - 1 else "") + p.name
                         for i, p in enumerate(self.params))
        prefix = "object " if self.owner.is_object else ""
        return f"{prefix}{self.owner.name}.{self.name}({names})"

    def __repr__(self) -> str:
        return f"<method {self.qualified}/{self.arity}>"


class ClassSymbol:
    """A class, a class object, a shell class or a basic class."""

    def __init__(self, name: str, kind: ClassKind, decl: Any = None):
        self.name = name
        self.kind = kind
        self.decl = decl
        self.superclass: Optional[ClassSymbol] = None
        self.is_abstract = False
        self.is_final = False
        self.is_reflective = False
        self.descriptor: Optional[TypeDescriptor] = None
        # class <-> class object links
        self.class_object: Optional[ClassSymbol] = None
        self.associate: Optional[ClassSymbol] = None
        self.inits: List[MethodSymbol] = []
        self.methods: List[MethodSymbol] = []
        self.fields: List[VarSymbol] = []
        self.consts: Dict[str, ConstSymbol] = {}
        # enum declarations of class objects: (public, constants)
        self.enums: List[Tuple[bool, List[ConstSymbol]]] = []
        # shell classes: the type they attach to
        self.base: Optional[TypeDescriptor] = None
        self.allowed: List[str] = []
        self.extension_allowed: List[str] = []
        self.prelude = False
        self.file = "<input>"
        self._vtable: Optional[Dict[Tuple[str, int], List[MethodSymbol]]] = None
        self._public: Optional[List[MethodSymbol]] = None

    def __repr__(self) -> str:
        return f"<{self.kind.value} {self.name}>"

    @property
    def display_name(self) -> str:
        return self.name

    @property
    def is_object(self) -> bool:
        return self.kind is ClassKind.OBJECT

    @property
    def is_shell(self) -> bool:
        return self.kind is ClassKind.SHELL

    def ancestors(self):
        """This class and its superclasses, nearest first."""
        cls: Optional[ClassSymbol] = self
        while cls is not None:
            yield cls
            cls = cls.superclass

    def is_subclass_of(self, other: "ClassSymbol") -> bool:
        return any(c is other for c in self.ancestors())

    def all_fields(self) -> List[VarSymbol]:
        """Instance variables, superclass first."""
        chain = list(self.ancestors())
        out: List[VarSymbol] = []
        for cls in reversed(chain):
            out.extend(cls.fields)
        return out

    def field(self, name: str) -> Optional[VarSymbol]:
        for var in self.fields:
            if var.name == name:
                return var
        return None

    def own_methods(self, name: str, arity: Optional[int] = None) -> List[MethodSymbol]:
        return [m for m in self.methods
                if m.name == name and (arity is None or m.arity == arity)]

    def find(self, name: str, visible=(Visibility.PUBLIC, Visibility.SUBCLASS, Visibility.PRIVATE),
             inherited_private: bool = False) -> List[MethodSymbol]:
        """Methods named ``name`` seen from inside this class, nearest first.

        Overridden superclass versions are left out. Private methods of
        superclasses are only included when ``inherited_private`` is set.
        """
        found: List[MethodSymbol] = []
        for depth, cls in enumerate(self.ancestors()):
            for method in cls.methods:
                if method.name != name or method.visibility not in visible:
                    continue
                if depth and method.visibility is Visibility.PRIVATE and not inherited_private:
                    continue
                if any(_same_params(method, other) for other in found):
                    continue
                found.append(method)
        return found

    def vtable(self) -> Dict[Tuple[str, int], List[MethodSymbol]]:
        """Public and subclass methods reachable by dynamic look-up."""
        if self._vtable is None:
            table: Dict[Tuple[str, int], List[MethodSymbol]] = {}
            for cls in reversed(list(self.ancestors())):
                for method in cls.methods:
                    if method.visibility is Visibility.PRIVATE:
                        continue
                    slot = table.setdefault((method.name, method.arity), [])
                    slot[:] = [m for m in slot if not _same_params(m, method)]
                    slot.append(method)
            self._vtable = table
        return self._vtable

    def public_methods(self) -> List[MethodSymbol]:
        """The public interface closed under inheritance, in declaration order."""
        if self._public is None:
            out: List[MethodSymbol] = []
            for cls in reversed(list(self.ancestors())):
                for method in cls.methods:
                    if method.visibility is not Visibility.PUBLIC:
                        continue
                    out = [m for m in out if not (m.name == method.name and _same_params(m, method))]
                    out.append(method)
            self._public = out
        return self._public

    def throw_methods(self) -> List[MethodSymbol]:
        """One-parameter ``throw`` methods: own ones in text order, then inherited."""
        out: List[MethodSymbol] = []
        for cls in self.ancestors():
            for method in cls.methods:
                if method.name == "throw" and method.arity == 1 \
                        and method.visibility is Visibility.PUBLIC:
                    out.append(method)
        return out

    def invalidate(self) -> None:
        self._vtable = None
        self._public = None


def _same_params(a: MethodSymbol, b: MethodSymbol) -> bool:
    if a.arity != b.arity or a.variadic != b.variadic:
        return False
    return all(p is q for p, q in zip(a.params, b.params))


def same_params(a: MethodSymbol, b: MethodSymbol) -> bool:
    return _same_params(a, b)
