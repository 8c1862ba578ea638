"""
Declaration pass.

Builds the symbol model of a program from its parsed source files: one
ClassSymbol per class, class object and shell class, their members, the
methods the toolchain adds to class objects, and a type descriptor for every
class and class object. Rules that only need declarations (init methods,
redefinitions, abstract completeness, overload collisions, expansion cycles,
shell signatures) are checked here; method bodies are left to the checker.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

from .diagnostics import Category, Diagnostic, Span, error, warning
from .runtime import numeric
from .symbols import ClassKind, ClassSymbol, ConstSymbol, MethodSymbol, VarSymbol, Visibility, same_params
from .syntax import (
    ArrayType, Binary, ClassDecl, ClassObjectType, ConstDecl, EnumDecl, GenericType, Literal,
    MethodDecl, Name, NamedType, ObjectDecl, Paren, Program, Send, ShellDecl, SuperExpr, Unary,
    VarDecl, walk,
)
from .typesys import BASIC_NAMES, DEFAULT_EXCEPTION, WRAPPERS, Kind, Signature, TypeDescriptor, TypeTable

logger = logging.getLogger(__name__)

FINAL_CLASSES = frozenset(WRAPPERS.values()) | {"String"}
ROOT_CLASSES = ("Any", "AnyValue", "Nil")
GENERICS = {("DS", "Iter"), ("DS", "Stack")}
FOLDED_OPERATORS = ("+", "-", "*", "/", "%", "&", "|", "^", "<<", ">>")


@dataclass
class SourceUnit:
    filename: str
    program: Program
    prelude: bool = False


class Model:
    """Every declared entity of one program plus its type table."""

    def __init__(self) -> None:
        self.table = TypeTable()
        self.classes: Dict[str, ClassSymbol] = {}
        self.objects: Dict[str, ClassSymbol] = {}
        self.shells: Dict[str, ClassSymbol] = {}
        self.diagnostics: List[Diagnostic] = []
        self.units: List[SourceUnit] = []

    # -- diagnostics ----------------------------------------------------

    def error(self, code: str, message: str, node: Any = None, file: str = "<input>") -> None:
        span = getattr(node, "span", None) or Span()
        self.diagnostics.append(error(code, message, span, Category.TYPE, file))

    def warn(self, code: str, message: str, node: Any = None, file: str = "<input>") -> None:
        span = getattr(node, "span", None) or Span()
        self.diagnostics.append(warning(code, message, span, Category.TYPE, file))

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    # -- lookup ---------------------------------------------------------

    def cls(self, name: str) -> ClassSymbol:
        return self.classes[name]

    def descriptor(self, name: str) -> TypeDescriptor:
        return self.table[name]

    def symbols(self) -> Iterator[ClassSymbol]:
        yield from self.classes.values()
        yield from self.objects.values()
        yield from self.shells.values()

    def class_of(self, descriptor: Optional[TypeDescriptor]) -> Optional[ClassSymbol]:
        symbol = getattr(descriptor, "symbol", None)
        return symbol if isinstance(symbol, ClassSymbol) else None

    def is_exception(self, descriptor: Optional[TypeDescriptor]) -> bool:
        symbol = self.class_of(descriptor)
        root = self.classes.get("Exception")
        return symbol is not None and root is not None and symbol.is_subclass_of(root)

    def exception_match(self, thrown: TypeDescriptor, handled: TypeDescriptor) -> bool:
        """Can a ``throw(exc : handled)`` method receive ``thrown``?

        Exception classes are frequently identical in structure, so between
        two exception classes the relation is the subclass one.
        """
        if self.is_exception(thrown) and self.is_exception(handled):
            return self.class_of(thrown).is_subclass_of(self.class_of(handled))
        return self.table.is_subtype(thrown, handled)

    def throw_params(self, catch_type: TypeDescriptor) -> List[TypeDescriptor]:
        """Parameter types of the one-parameter throw methods of a catch type."""
        return [sig.params[0] for sig in catch_type.lookup("throw", 1)]

    # -- types ----------------------------------------------------------

    def resolve_type(self, node: Any, file: str = "<input>") -> TypeDescriptor:
        """The descriptor a type node denotes; reports unknown names."""
        table = self.table
        if isinstance(node, NamedType):
            if node.name in BASIC_NAMES or node.name == "Nil":
                return table[node.name]
            symbol = self.classes.get(node.name)
            if symbol is not None and symbol.descriptor is not None:
                return symbol.descriptor
            if node.name in self.shells:
                self.error("shell-type", f"shell class {node.name} cannot be used as a type", node, file)
            elif node.name in self.objects:
                self.error("unknown-type", f"{node.name} is a class object; write type({node.name})",
                           node, file)
            else:
                self.error("unknown-type", f"unknown type {node.name}", node, file)
            return table["Any"]
        if isinstance(node, ClassObjectType):
            symbol = self.objects.get(node.name)
            if symbol is None:
                self.error("unknown-type", f"unknown class object {node.name}", node, file)
                return table["AnyClassObject"]
            return symbol.descriptor
        if isinstance(node, ArrayType):
            return table.array_of(self.resolve_type(node.element, file), node.dims)
        if isinstance(node, GenericType):
            if (node.module, node.name) not in GENERICS or len(node.args) != 1:
                self.error("unknown-type", f"unknown type {node.module}.{node.name}", node, file)
                return table["Any"]
            return table.generic(node.module, node.name, [self.resolve_type(node.args[0], file)])
        raise TypeError(f"not a type node: {node!r}")

    def entry_method(self, name: str) -> Tuple[Optional[MethodSymbol], Optional[str]]:
        """The ``run`` method of class object ``name``, or an explanation."""
        obj = self.objects.get(name)
        if obj is None:
            return None, f"there is no class object {name}"
        runs = [m for m in obj.methods if m.name == "run" and m.visibility is Visibility.PUBLIC]
        strings = self.table.array_of(self.table["String"], 1)
        valid = [m for m in runs if m.arity == 0 or (m.arity == 1 and not m.variadic
                                                     and m.params[0] is strings)]
        if len(runs) != 1 or len(valid) != 1:
            return None, (f"class object {name} must define exactly one method run() or "
                          f"run( args : array(String)[] )")
        return valid[0], None


class Declarer:
    """Runs the declaration pass over a list of source units."""

    def __init__(self, units: List[SourceUnit]):
        self.units = units
        self.model = Model()
        self.model.units = list(units)
        self._pending_consts: Dict[str, Dict[str, Tuple[Any, bool, Any]]] = {}
        self._evaluating: Set[Tuple[str, str]] = set()

    @property
    def table(self) -> TypeTable:
        return self.model.table

    def run(self) -> Model:
        self._create_symbols()
        self._link_superclasses()
        self._install_providers()
        for symbol in list(self.model.symbols()):
            self._declare_members(symbol)
        self._evaluate_constants()
        self._resolve_array_sizes()
        for symbol in list(self.model.classes.values()):
            self._add_class_object_methods(symbol)
        for symbol in self.model.symbols():
            symbol.invalidate()
        self.table.reset_signatures()
        self._check_exception_types()
        for symbol in sorted(self.model.classes.values(), key=lambda s: len(list(s.ancestors()))):
            self._check_class(symbol)
        for symbol in self.model.objects.values():
            self._check_overloads(symbol, symbol.methods)
        for symbol in self.model.shells.values():
            self._check_shell(symbol)
        self._check_expansion_cycles()
        for symbol in self.model.symbols():
            symbol.invalidate()
        self.table.freeze()
        logger.debug("declared %d classes, %d class objects, %d shells",
                     len(self.model.classes), len(self.model.objects), len(self.model.shells))
        return self.model

    # -- symbols --------------------------------------------------------

    def _create_symbols(self) -> None:
        model, table = self.model, self.table
        object_decls: Dict[str, Tuple[ObjectDecl, SourceUnit]] = {}
        for unit in self.units:
            for decl in unit.program.decls:
                taken = decl.name in model.classes or decl.name in model.shells
                if isinstance(decl, ClassDecl):
                    if taken:
                        model.error("duplicate-class", f"class {decl.name} is declared twice",
                                    decl, unit.filename)
                        continue
                    model.classes[decl.name] = self._class_symbol(decl, unit)
                elif isinstance(decl, ShellDecl):
                    if taken or decl.name in object_decls:
                        model.error("duplicate-class", f"{decl.name} is declared twice",
                                    decl, unit.filename)
                        continue
                    symbol = ClassSymbol(decl.name, ClassKind.SHELL, decl)
                    symbol.prelude, symbol.file = unit.prelude, unit.filename
                    model.shells[decl.name] = symbol
                elif isinstance(decl, ObjectDecl):
                    if decl.name in object_decls:
                        model.error("duplicate-object", f"class object {decl.name} is declared twice",
                                    decl, unit.filename)
                        continue
                    object_decls[decl.name] = (decl, unit)
        for name, (decl, unit) in object_decls.items():
            if name in model.shells:
                model.error("shell-object", f"shell class {name} cannot have a class object",
                            decl, unit.filename)
        for cls in list(model.classes.values()):
            decl, unit = object_decls.pop(cls.name, (None, None))
            self._object_symbol(cls.name, decl, unit, cls)
        for name, (decl, unit) in object_decls.items():
            if name not in model.shells:
                self._object_symbol(name, decl, unit, None)
        table.default_exception = table.get(DEFAULT_EXCEPTION)

    def _class_symbol(self, decl: ClassDecl, unit: SourceUnit) -> ClassSymbol:
        table = self.table
        if decl.name in BASIC_NAMES:
            symbol = ClassSymbol(decl.name, ClassKind.BASIC, decl)
            symbol.descriptor = table[decl.name]
        elif decl.name == "Nil":
            symbol = ClassSymbol(decl.name, ClassKind.NIL, decl)
            symbol.descriptor = table.nil
        else:
            symbol = ClassSymbol(decl.name, ClassKind.CLASS, decl)
            symbol.descriptor = table.add(TypeDescriptor(decl.name, Kind.CLASS, symbol=symbol,
                                                         final=decl.name in FINAL_CLASSES))
        symbol.descriptor.symbol = symbol
        symbol.is_abstract = decl.is_abstract
        symbol.is_reflective = decl.is_reflective
        symbol.is_final = decl.name in FINAL_CLASSES
        symbol.prelude, symbol.file = unit.prelude, unit.filename
        return symbol

    def _object_symbol(self, name: str, decl: Optional[ObjectDecl], unit: Optional[SourceUnit],
                       cls: Optional[ClassSymbol]) -> ClassSymbol:
        symbol = ClassSymbol(name, ClassKind.OBJECT, decl)
        symbol.associate = cls
        source = unit if unit is not None else None
        if cls is not None:
            cls.class_object = symbol
            symbol.prelude, symbol.file = cls.prelude, cls.file
        if source is not None:
            symbol.prelude, symbol.file = source.prelude, source.filename
        symbol.descriptor = self.table.add(TypeDescriptor("Type$" + name, Kind.CLASS_OBJECT,
                                                          symbol=symbol))
        self.model.objects[name] = symbol
        return symbol

    def _link_superclasses(self) -> None:
        model = self.model
        any_class = model.classes.get("AnyClass")
        class_object_root = model.classes.get("AnyClassObject")
        for cls in model.classes.values():
            decl: ClassDecl = cls.decl
            if decl.superclass is None:
                if cls.name not in ROOT_CLASSES and cls is not any_class:
                    cls.superclass = any_class
                continue
            parent = model.classes.get(decl.superclass)
            if parent is None:
                model.error("unknown-class", f"unknown superclass {decl.superclass}", decl, cls.file)
                cls.superclass = any_class
            elif parent.is_final or parent.kind is ClassKind.NIL:
                model.error("final-class", f"class {parent.name} cannot be subclassed", decl, cls.file)
                cls.superclass = any_class
            else:
                cls.superclass = parent
        for obj in model.objects.values():
            obj.superclass = class_object_root
        for shell in model.shells.values():
            decl = shell.decl
            if decl.superclass is None:
                continue
            parent = model.shells.get(decl.superclass)
            if parent is None:
                model.error("shell-superclass", f"a shell class can only inherit from a shell class, "
                                                f"not {decl.superclass}", decl, shell.file)
            else:
                shell.superclass = parent
        for symbol in list(model.classes.values()) + list(model.shells.values()):
            seen: List[ClassSymbol] = []
            current: Optional[ClassSymbol] = symbol
            while current is not None:
                if current in seen:
                    model.error("inheritance-cycle", f"class {symbol.name} inherits from itself",
                                symbol.decl, symbol.file)
                    symbol.superclass = any_class if symbol.kind is not ClassKind.SHELL else None
                    break
                seen.append(current)
                current = current.superclass

    # -- descriptors ----------------------------------------------------

    def _install_providers(self) -> None:
        model, table = self.model, self.table
        for symbol in model.symbols():
            if symbol.descriptor is None or symbol.kind is ClassKind.NIL:
                continue
            symbol.descriptor.provide(_public_signatures(symbol))
        table.array_provider = self._array_signatures
        table.generic_provider = self._generic_signatures

    def _array_signatures(self, array: TypeDescriptor) -> List[Signature]:
        table = self.table
        element = array.element if array.dims == 1 else table.array_of(array.element, array.dims - 1)
        base = table.array_base(array)
        signatures = list(base.signatures) if base is not None else []
        boolean = table["boolean"]
        signatures += [
            Signature("fill", [element]),
            Signature("reset", [boolean]),
            Signature("reset", []),
            Signature("more", [], result=boolean),
            Signature("next", [], result=element),
            Signature("getIter", [], result=table.generic("DS", "Iter", [element])),
        ]
        return signatures

    def _generic_signatures(self, generic: TypeDescriptor) -> List[Signature]:
        table = self.table
        item = generic.args[0]
        boolean, integer = table["boolean"], table["integer"]
        signatures = list(table["Any"].signatures)
        if generic.name.startswith("DS.Iter("):
            signatures += [
                Signature("more", [], result=boolean),
                Signature("next", [], result=item),
                Signature("reset", []),
                Signature("toArray", [], result=table.array_of(item, 1)),
            ]
        else:
            signatures += [
                Signature("getSize", [], result=integer),
                Signature("empty", [], result=boolean),
                Signature("top", [], result=item),
                Signature("get", [integer], result=item),
                Signature("getIter", [], result=table.generic("DS", "Iter", [item])),
                Signature("toArray", [], result=table.array_of(item, 1)),
            ]
        return signatures

    # -- members --------------------------------------------------------

    def _method(self, decl: MethodDecl, owner: ClassSymbol, visibility: Visibility) -> MethodSymbol:
        resolve = self.model.resolve_type
        params = [resolve(p.type, owner.file) for p in decl.params]
        method = MethodSymbol(
            name=decl.name, owner=owner, visibility=visibility, params=params,
            param_names=[p.name for p in decl.params],
            exception=resolve(decl.exception_type, owner.file) if decl.exception_type else None,
            result=resolve(decl.return_type, owner.file) if decl.return_type else None,
            decl=decl, is_abstract=decl.is_abstract, variadic=decl.is_variadic,
            assertion=decl.assertion,
        )
        if decl.is_native:
            method.native = method.native_key()
        if decl.is_abstract and owner.kind is ClassKind.OBJECT:
            self.model.error("abstract-object", "class objects cannot have abstract methods",
                             decl, owner.file)
        return method

    def _fields(self, owner: ClassSymbol, decl: VarDecl) -> List[VarSymbol]:
        type_ = self.model.resolve_type(decl.type, owner.file)
        sizes = list(getattr(decl.type, "sizes", []) or [])
        out = []
        for name in decl.names:
            if owner.field(name) is not None or any(v.name == name for v in out):
                self.model.error("duplicate-var", f"variable {name} is declared twice", decl, owner.file)
                continue
            out.append(VarSymbol(name, type_, owner, decl.type.expanded, decl, decl.init, sizes))
        return out

    def _declare_members(self, symbol: ClassSymbol) -> None:
        decl = symbol.decl
        if decl is None:
            return
        if isinstance(decl, (ClassDecl, ShellDecl)):
            for method in decl.inits:
                init = self._method(method, symbol, Visibility.INIT)
                symbol.inits.append(init)
            for visibility, members in ((Visibility.PUBLIC, decl.public),
                                        (Visibility.SUBCLASS, decl.subclass),
                                        (Visibility.PRIVATE, decl.private)):
                for member in members:
                    if isinstance(member, MethodDecl):
                        symbol.methods.append(self._method(member, symbol, visibility))
                    else:
                        symbol.fields.extend(self._fields(symbol, member))
            if isinstance(decl, ShellDecl):
                symbol.base = self.model.resolve_type(decl.base, symbol.file)
            return
        if decl.init is not None:
            symbol.inits.append(self._method(decl.init, symbol, Visibility.INIT))
        pending = self._pending_consts.setdefault(symbol.name, {})
        for public, members in ((True, decl.public), (False, decl.private)):
            for member in members:
                if isinstance(member, MethodDecl):
                    visibility = Visibility.PUBLIC if public else Visibility.PRIVATE
                    symbol.methods.append(self._method(member, symbol, visibility))
                elif isinstance(member, VarDecl):
                    symbol.fields.extend(self._fields(symbol, member))
                elif isinstance(member, ConstDecl):
                    for item in member.items:
                        if item.name in pending:
                            self.model.error("duplicate-const", f"constant {item.name} is declared twice",
                                             item, symbol.file)
                            continue
                        pending[item.name] = (item, public, None)
                elif isinstance(member, EnumDecl):
                    group: List[str] = []
                    previous: Optional[str] = None
                    for item in member.items:
                        if item.name in pending:
                            self.model.error("duplicate-enum",
                                             f"enumerated constant {item.name} is declared twice",
                                             item, symbol.file)
                            continue
                        pending[item.name] = (item, public, ("enum", previous))
                        group.append(item.name)
                        previous = item.name
                    symbol.enums.append((public, group))  # names until constants are evaluated

    # -- constants ------------------------------------------------------

    def _evaluate_constants(self) -> None:
        for name, items in self._pending_consts.items():
            obj = self.model.objects[name]
            for const_name in items:
                self._constant(obj, const_name)
            obj.enums = [(public, [obj.consts[n] for n in group if n in obj.consts])
                         for public, group in obj.enums]

    def _constant(self, obj: ClassSymbol, name: str) -> Optional[ConstSymbol]:
        if name in obj.consts:
            return obj.consts[name]
        entry = self._pending_consts.get(obj.name, {}).get(name)
        if entry is None:
            return None
        key = (obj.name, name)
        if key in self._evaluating:
            self.model.error("const-cycle", f"constant {name} depends on itself", entry[0], obj.file)
            return None
        self._evaluating.add(key)
        try:
            item, public, enum = entry
            if enum is not None:
                if item.value is not None:
                    value, kind = self._fold(item.value, obj)
                    if kind != "integer":
                        self.model.error("const-type", "enumerated constants must be integers",
                                         item, obj.file)
                        value = 0
                elif enum[1] is None:
                    value = 0
                else:
                    previous = self._constant(obj, enum[1])
                    value = numeric.wrap("integer", previous.value + 1) if previous else 0
                const = ConstSymbol(name, self.table["integer"], value, public, obj, True, item)
            else:
                value, kind = self._fold(item.value, obj)
                type_ = self._kind_type(kind)
                if item.type is not None:
                    declared = self.model.resolve_type(item.type, obj.file)
                    value, type_ = self._coerce_const(value, kind, declared, item, obj)
                const = ConstSymbol(name, type_, value, public, obj, False, item)
            obj.consts[name] = const
            return const
        finally:
            self._evaluating.discard(key)

    def _kind_type(self, kind: str) -> TypeDescriptor:
        return self.table["String"] if kind == "string" else self.table[kind]

    def _coerce_const(self, value: Any, kind: str, declared: TypeDescriptor, item: Any,
                      obj: ClassSymbol) -> Tuple[Any, TypeDescriptor]:
        if declared is self._kind_type(kind):
            return value, declared
        if declared.is_basic and kind in numeric.NUMERIC and declared.name in numeric.NUMERIC \
                and kind not in numeric.FLOATING and numeric.convertible(declared.name, kind, value):
            return numeric.convert(declared.name, kind, value), declared
        self.model.error("const-type", f"constant {item.name} is not of type {declared.name}", item, obj.file)
        return value, self._kind_type(kind)

    def _fold(self, expr: Any, obj: ClassSymbol) -> Tuple[Any, str]:
        """Evaluate a constant expression to (value, kind)."""
        bad = (0, "integer")
        if isinstance(expr, Literal):
            return expr.value, expr.kind
        if isinstance(expr, Paren):
            return self._fold(expr.inner, obj)
        if isinstance(expr, Name):
            const = self._constant(obj, expr.name)
            if const is None:
                self.model.error("const-expr", f"{expr.name} is not a constant", expr, obj.file)
                return bad
            return const.value, const.type.name if const.type.is_basic else "string"
        if isinstance(expr, Send) and expr.args is None and isinstance(expr.receiver, Name):
            other = self.model.objects.get(expr.receiver.name)
            const = self._constant(other, expr.name) if other is not None else None
            if const is None or (not const.public and other is not obj):
                self.model.error("const-expr", f"{expr.receiver.name}.{expr.name} is not a public constant",
                                 expr, obj.file)
                return bad
            return const.value, const.type.name if const.type.is_basic else "string"
        if isinstance(expr, Unary):
            value, kind = self._fold(expr.operand, obj)
            if expr.op == "not" and kind == "boolean":
                return not value, kind
            if expr.op in ("+", "-") and kind in numeric.NUMERIC:
                return numeric.unary(expr.op, kind, value), kind
            if expr.op == "~" and kind in ("byte", "integer", "long"):
                return numeric.unary("~", kind, value), kind
        if isinstance(expr, Binary):
            left, lkind = self._fold(expr.left, obj)
            right, rkind = self._fold(expr.right, obj)
            if lkind == rkind == "string" and expr.op == "+":
                return left + right, "string"
            if lkind == rkind == "boolean" and expr.op in ("and", "or", "xor"):
                return {"and": left and right, "or": left or right, "xor": left != right}[expr.op], lkind
            if lkind == rkind and lkind in numeric.NUMERIC and expr.op in FOLDED_OPERATORS:
                try:
                    return numeric.binary(expr.op, lkind, left, right), lkind
                except numeric.ArithmeticFault as fault:
                    self.model.error("const-expr", f"constant expression raises {fault.exception_class}",
                                     expr, obj.file)
                    return bad
        self.model.error("const-expr", "not a constant expression", expr, obj.file)
        return bad

    def _resolve_array_sizes(self) -> None:
        """Replace constant names in expanded array sizes by their values."""
        for symbol in self.model.symbols():
            holder = symbol if symbol.is_object else symbol.class_object
            for var in symbol.fields:
                sizes: List[int] = []
                for size in var.array_sizes:
                    if isinstance(size, str):
                        const = self._constant(holder, size) if holder is not None else None
                        if const is None or not isinstance(const.value, int) or isinstance(const.value, bool):
                            self.model.error("array-size", f"{size} is not an integer constant",
                                             var.decl, symbol.file)
                            size = 0
                        else:
                            size = const.value
                    sizes.append(size or 0)
                var.array_sizes = sizes

    def _check_exception_types(self) -> None:
        default = self.table.default_exception
        if default is None:
            return
        for symbol in self.model.symbols():
            for method in symbol.inits + symbol.methods:
                if method.exception is None or method.synthesized:
                    continue
                if not self.table.is_subtype(method.exception, default):
                    self.model.error("exception-type", f"the exception type of {method.qualified} must "
                                                       f"be a subtype of {DEFAULT_EXCEPTION}",
                                     method.decl, symbol.file)

    # -- class objects --------------------------------------------------

    def _add_class_object_methods(self, cls: ClassSymbol) -> None:
        obj = cls.class_object
        if obj is None or cls.kind is not ClassKind.CLASS:
            return
        table = self.table
        declared = {m.name for m in obj.methods}
        any_type = table["Any"]
        type_error = table.get("CatchTypeErrorException")
        if not cls.is_abstract and "new" not in declared:
            for init in cls.inits:
                obj.methods.append(MethodSymbol(
                    "new", obj, Visibility.PUBLIC, list(init.params), list(init.param_names),
                    init.exception, cls.descriptor, variadic=init.variadic, synthesized="new",
                    init=init))
        if "cast" not in declared or not any(m.name == "cast" and m.arity == 1 and m.params[0] is any_type
                                             for m in obj.methods):
            obj.methods.append(MethodSymbol("cast", obj, Visibility.PUBLIC, [any_type], ["x"],
                                            type_error, cls.descriptor, synthesized="cast"))
        if "castObject" not in declared:
            obj.methods.append(MethodSymbol("castObject", obj, Visibility.PUBLIC, [any_type], ["any"],
                                            type_error, obj.descriptor, synthesized="castObject"))

    # -- rules ----------------------------------------------------------

    def _check_class(self, cls: ClassSymbol) -> None:
        model = self.model
        if cls.kind is not ClassKind.CLASS:
            return
        decl = cls.decl
        obj = cls.class_object
        if not cls.is_abstract and not cls.inits and not cls.prelude:
            user_new = obj is not None and any(m.name == "new" and not m.synthesized for m in obj.methods)
            if not user_new:
                model.error("no-init", f"class {cls.name} has no init method: no object of this class "
                                       f"can be created", decl, cls.file)
        self._check_overloads(cls, cls.inits)
        self._check_overloads(cls, cls.methods)
        for method in cls.methods:
            self._check_redefinition(cls, method)
        if not cls.is_abstract:
            for slot in cls.vtable().values():
                for method in slot:
                    if method.is_abstract:
                        model.error("abstract-method",
                                    f"class {cls.name} must be declared abstract: method "
                                    f"{method.qualified} is not implemented", decl, cls.file)
        if not cls.prelude:
            self._check_super_init(cls)

    def _check_redefinition(self, cls: ClassSymbol, method: MethodSymbol) -> None:
        parent = cls.superclass
        if parent is None:
            return
        for inherited in parent.find(method.name, inherited_private=False):
            if not same_params(inherited, method) or inherited.visibility is Visibility.PRIVATE:
                continue
            if method.visibility is Visibility.PRIVATE:
                self.model.error("redefinition", f"{method.qualified} redefines a "
                                                 f"{inherited.visibility.value} method as private",
                                 method.decl, cls.file)
            elif method.visibility is not inherited.visibility:
                self.model.error("redefinition", f"{method.qualified} must keep the "
                                                 f"{inherited.visibility.value} visibility of "
                                                 f"{inherited.qualified}", method.decl, cls.file)
            elif not self.table.signature_equal(method.signature, inherited.signature):
                self.model.error("redefinition", f"{method.qualified} must keep the signature "
                                                 f"{inherited.signature}", method.decl, cls.file)
            if method.assertion is None and inherited.assertion is not None:
                method.assertion = inherited.assertion
                method.assertion_source = inherited.assertion_source or inherited
            return

    def _check_overloads(self, owner: ClassSymbol, methods: List[MethodSymbol]) -> None:
        for index, first in enumerate(methods):
            for second in methods[index + 1:]:
                if first.name != second.name:
                    continue
                where = second.decl if second.decl is not None else owner.decl
                if same_params(first, second):
                    if first.synthesized or second.synthesized:
                        continue
                    self.model.error("duplicate-method",
                                     f"method {second.qualified}({_param_names(second)}) is declared twice",
                                     where, owner.file)
                elif first.arity == second.arity and first.variadic == second.variadic \
                        and _wrapped(first) == _wrapped(second):
                    self.model.error("wrapper-overload",
                                     f"methods {first.name}({_param_names(first)}) and "
                                     f"{second.name}({_param_names(second)}) are ambiguous when basic "
                                     f"types are replaced by their wrapper classes", where, owner.file)
                elif first.variadic != second.variadic:
                    fixed, variadic = (second, first) if first.variadic else (first, second)
                    if variadic.arity == fixed.arity + 1 and all(
                            p is q for p, q in zip(fixed.params, variadic.params)):
                        self.model.error("variadic-overload",
                                         f"methods {first.name} differ only in the last parameter",
                                         where, owner.file)

    def _check_super_init(self, cls: ClassSymbol) -> None:
        parent = cls.superclass
        if parent is None or not parent.inits or parent.prelude:
            return
        for init in cls.inits:
            body = init.decl.body if init.decl is not None else None
            calls = [n for n in walk(body or []) if isinstance(n, Send) and n.name == "init"
                     and isinstance(n.receiver, SuperExpr)]
            if not calls:
                self.model.warn("init-super", f"{cls.name}::init does not call the init of "
                                              f"superclass {parent.name}", init.decl, cls.file)

    def _check_shell(self, shell: ClassSymbol) -> None:
        base = shell.base
        if base is None:
            return
        if base.kind not in (Kind.CLASS, Kind.CLASS_OBJECT):
            self.model.error("shell-base", f"shell class {shell.name} must be attached to a class "
                                           f"or class object type", shell.decl, shell.file)
            return
        self._check_overloads(shell, shell.methods)
        for method in shell.methods:
            if method.visibility is not Visibility.PUBLIC or method.name == "interceptAll":
                continue
            if not any(self.table.signature_equal(method.signature, sig)
                       for sig in base.lookup(method.name, method.arity)):
                self.model.error("shell-method", f"public method {method.name} of shell class "
                                                 f"{shell.name} is not in the type {base.name}",
                                 method.decl, shell.file)

    def _check_expansion_cycles(self) -> None:
        state: Dict[str, int] = {}

        def expanded_classes(cls: ClassSymbol) -> Iterator[ClassSymbol]:
            for var in cls.all_fields():
                if not var.expanded:
                    continue
                target = var.type.element if var.type.is_array else var.type
                symbol = self.model.class_of(target)
                if symbol is not None and symbol.kind is ClassKind.CLASS:
                    yield symbol

        def visit(cls: ClassSymbol) -> bool:
            state[cls.name] = 1
            for target in expanded_classes(cls):
                mark = state.get(target.name, 0)
                if mark == 1 or (mark == 0 and visit(target)):
                    self.model.error("expansion-cycle", f"expanded variables of class {cls.name} "
                                                        f"form a cycle through {target.name}",
                                     cls.decl, cls.file)
                    state[cls.name] = 2
                    return True
            state[cls.name] = 2
            return False

        for cls in self.model.classes.values():
            if state.get(cls.name, 0) == 0:
                visit(cls)


def _public_signatures(symbol: ClassSymbol):
    return lambda: [m.signature for m in symbol.public_methods()]


def _param_names(method: MethodSymbol) -> str:
    return ", ".join(p.name for p in method.params)


def _wrapped(method: MethodSymbol) -> Tuple[str, ...]:
    return tuple(WRAPPERS.get(p.name, p.name) for p in method.params)


def declare(units: List[SourceUnit]) -> Model:
    return Declarer(units).run()
