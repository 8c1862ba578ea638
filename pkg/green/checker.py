"""
Static checking of method bodies.

The declaration pass builds the symbol model; this module walks every body
and assert clause, gives each expression a type, resolves every message
send to a method or signature and records what the interpreter needs on the
nodes themselves:

- ``expr.ty``: the static type of an expression (``VOID`` for sends that
  return nothing)
- ``expr.convert``: ``"box:Wrapper"`` or ``"unbox"`` when a basic value and
  its wrapper object meet
- ``Name.ref``: ``("local", name)``, ``("field", var)``, ``("object", sym)``,
  ``("shell", sym)`` or ``("const", const)``
- ``Send.call``: a ``Call`` naming the kind of send and its target

``check_sources`` runs the whole front end: prelude, user files, synthesized
catch classes, declarations and bodies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import GreenSettings, get_settings
from .declare import Model, SourceUnit, declare
from .diagnostics import CheckError, Diagnostic, GreenError, sort_diagnostics
from .lexer import Token, case_warnings, tokenize
from .parser import parse_program
from .prelude.synth import SYNTH_FILE, synthesize
from .runtime import numeric
from .symbols import ClassKind, ClassSymbol, ConstSymbol, MethodSymbol, Visibility
from .syntax import (
    ArrayInit, ArrayType, AssertClause, Assign, Binary, Block, BreakStmt, CaseStmt,
    EmptyStmt, ExceptionExpr, ExprStmt, ForStmt, IfStmt, Index, InitStmt, Literal, LoopStmt,
    MethodDecl, Name, NamedType, NilLit, Paren, RepeatStmt, ResultExpr, ReturnStmt,
    SelfExpr, Send, SuperExpr, TryStmt, TypeExpr, Unary, VarStmt, WhileStmt,
)
from .typesys import UNWRAPPED, WRAPPERS, Kind, Signature, TypeDescriptor

logger = logging.getLogger(__name__)

PRELUDE_FILES = ("core.green", "exceptions.green", "reflect.green")

# Type of message sends that return nothing.
VOID = TypeDescriptor("(no value)", Kind.GENERIC)

ARITHMETIC = ("+", "-", "*", "/", "%")
BITWISE = ("&", "|", "^")
ORDERING = ("<", "<=", ">", ">=")
LOOP_VAR_KINDS = ("char", "byte", "integer", "long")
CASE_KINDS = ("char", "boolean", "byte", "integer", "long")


@dataclass(eq=False)
class Call:
    """How the interpreter performs one message send.

    kind is one of ``method``, ``init``, ``field``, ``object-field``, ``const``,
    ``throw``, ``array-new``, ``shell-new`` and ``shell-super``.
    """
    kind: str
    method: Optional[MethodSymbol] = None
    signature: Optional[Signature] = None
    virtual: bool = False
    target: Any = None
    # first argument packed into the variadic array, and that array's type
    pack: Optional[int] = None
    pack_type: Optional[TypeDescriptor] = None


@dataclass(eq=False)
class Local:
    name: str
    type: TypeDescriptor
    node: Any = None
    kind: str = "local"


@dataclass(eq=False)
class Scope:
    """What a method body can see."""
    owner: ClassSymbol
    method: Optional[MethodSymbol]
    locals: Dict[str, Local] = field(default_factory=dict)
    loops: List[str] = field(default_factory=list)
    catches: List[TypeDescriptor] = field(default_factory=list)
    in_after: bool = False
    loop_vars: List[str] = field(default_factory=list)

    @property
    def in_init(self) -> bool:
        return self.method is not None and self.method.visibility is Visibility.INIT


class Checker:
    """Checks the bodies of every method of a declared model."""

    def __init__(self, model: Model, settings: Optional[GreenSettings] = None):
        self.model = model
        self.table = model.table
        self.settings = settings or get_settings()
        self.symbol: Optional[ClassSymbol] = None
        self.file = "<input>"

    # -- reporting ------------------------------------------------------

    def error(self, code: str, message: str, node: Any = None) -> None:
        self.model.error(code, message, node, self.file)

    def warn(self, code: str, message: str, node: Any = None) -> None:
        if self.symbol is not None and self.symbol.prelude:
            return
        self.model.warn(code, message, node, self.file)

    # -- driver ---------------------------------------------------------

    def run(self) -> None:
        for symbol in self.model.symbols():
            for index, var in enumerate(symbol.all_fields()):
                var.slot = index
        for symbol in self.model.symbols():
            self.symbol, self.file = symbol, symbol.file
            if symbol.is_object:
                self._check_object_vars(symbol)
            for method in symbol.inits + symbol.methods:
                if method.decl is not None:
                    self._check_method(symbol, method)
        self.symbol = None

    def _check_object_vars(self, obj: ClassSymbol) -> None:
        scope = Scope(obj, None)
        for var in obj.fields:
            if var.init is not None:
                self._assign_value(var.init, var.type, scope, "initialize")
                if var.expanded:
                    self.error("expanded-assign", f"expanded variable {var.name} cannot be initialized "
                                                  f"with a value", var.decl)

    def _method_scope(self, owner: ClassSymbol, method: MethodSymbol) -> Scope:
        scope = Scope(owner, method)
        decl = method.decl
        for name, type_, param in zip(method.param_names, method.params, decl.params):
            if name in scope.locals:
                self.error("duplicate-var", f"parameter {name} is declared twice", param)
            scope.locals[name] = Local(name, type_, param.type, "param")
        return scope

    def _check_method(self, owner: ClassSymbol, method: MethodSymbol) -> None:
        decl: MethodDecl = method.decl
        scope = self._method_scope(owner, method)
        if decl.assertion is not None and method.assertion_source is None:
            self._check_assertion(decl.assertion, scope, method)
        if decl.body is None:
            return
        for group in decl.locals:
            type_ = self.model.resolve_type(group.type, self.file)
            for name in group.names:
                if name in scope.locals:
                    self.error("duplicate-var", f"variable {name} is declared twice", group)
                    continue
                scope.locals[name] = Local(name, type_, group.type)
        self._statements(decl.body, scope)
        decl.frame_locals = list(scope.locals.values())

    def _check_assertion(self, clause: AssertClause, scope: Scope, method: MethodSymbol) -> None:
        if clause.before is not None:
            self._condition(clause.before, scope, "a precondition")
        for var in clause.vars:
            self._var_stmt(var, scope, kind="assert")
        if clause.after is not None:
            scope.in_after = True
            self._condition(clause.after, scope, "a postcondition")
            scope.in_after = False
        for var in clause.vars:
            scope.locals.pop(var.name, None)

    # -- statements -----------------------------------------------------

    def _statements(self, stmts: Sequence[Any], scope: Scope) -> None:
        for stmt in stmts:
            self._statement(stmt, scope)

    def _statement(self, stmt: Any, scope: Scope) -> None:
        handler = getattr(self, "_stmt_" + type(stmt).__name__, None)
        if handler is None:
            raise GreenError(f"unexpected statement {type(stmt).__name__}")
        handler(stmt, scope)

    def _stmt_Block(self, stmt: Block, scope: Scope) -> None:
        self._statements(stmt.stmts, scope)

    def _stmt_EmptyStmt(self, stmt: EmptyStmt, scope: Scope) -> None:
        return

    def _stmt_ExprStmt(self, stmt: ExprStmt, scope: Scope) -> None:
        expr = stmt.expr
        if isinstance(expr, Assign):
            self._assign(expr, scope)
            return
        if isinstance(expr, Unary) and expr.op in ("++", "--"):
            self._expr(expr, scope)
            return
        if not isinstance(expr, Send):
            self.error("not-statement", "this expression cannot be used as a statement", expr)
            self._expr(expr, scope)
            return
        type_ = self._expr(expr, scope)
        call = getattr(expr, "call", None)
        if type_ is not None and type_ is not VOID and call is not None and call.kind == "method":
            self.warn("unused-result", f"the value returned by {expr.name} is not used", expr)

    def _stmt_InitStmt(self, stmt: InitStmt, scope: Scope) -> None:
        target = stmt.target
        if not isinstance(target, (Name, Index, Send)) or (isinstance(target, Send) and target.args is not None):
            self.error("init-target", "'#init' needs a variable on its left", stmt)
            return
        type_ = self._expr(target, scope, as_target=True)
        if type_ is None:
            self._values(stmt.args, scope)
            return
        stmt.expanded = self._is_expanded(target, scope)
        if type_.is_array:
            stmt.kind = "array"
            self._values(stmt.args, scope)
            self._array_dims(stmt.args, type_, stmt)
            stmt.element_expanded = self._element_expanded(target, scope)
            return
        cls = self.model.class_of(type_)
        if cls is None or cls.kind is not ClassKind.CLASS or type_.kind is not Kind.CLASS:
            self.error("init-target", f"objects of type {type_.name} cannot be created with '#init'", stmt)
            self._values(stmt.args, scope)
            return
        if cls.is_abstract and not stmt.expanded:
            self.error("abstract-new", f"class {cls.name} is abstract: no objects of it can be created", stmt)
            self._values(stmt.args, scope)
            return
        chosen = self._select([m.signature for m in cls.inits], stmt.args, stmt, f"{cls.name}::init", scope)
        if chosen is None:
            return
        stmt.kind = "object"
        stmt.init = chosen[0].method
        stmt.cls = cls
        stmt.pack, stmt.pack_type = chosen[1], chosen[2]

    def _stmt_ReturnStmt(self, stmt: ReturnStmt, scope: Scope) -> None:
        method = scope.method
        result = method.result if method is not None else None
        if stmt.value is None:
            if result is not None:
                self.error("return-value", f"{method.qualified} must return a value of type {result.name}", stmt)
            return
        if result is None:
            self.error("return-value", "this method does not return a value", stmt)
            self._expr(stmt.value, scope)
            return
        self._assign_value(stmt.value, result, scope, "return")

    def _stmt_IfStmt(self, stmt: IfStmt, scope: Scope) -> None:
        self._condition(stmt.cond, scope, "an if condition")
        self._statements(stmt.then_body, scope)
        if stmt.else_body is not None:
            self._statements(stmt.else_body, scope)

    def _stmt_WhileStmt(self, stmt: WhileStmt, scope: Scope) -> None:
        self._condition(stmt.cond, scope, "a while condition")
        scope.loops.append("while")
        self._statement(stmt.body, scope)
        scope.loops.pop()

    def _stmt_RepeatStmt(self, stmt: RepeatStmt, scope: Scope) -> None:
        scope.loops.append("repeat")
        self._statements(stmt.body, scope)
        scope.loops.pop()
        self._condition(stmt.cond, scope, "an until condition")

    def _stmt_LoopStmt(self, stmt: LoopStmt, scope: Scope) -> None:
        scope.loops.append("loop")
        self._statements(stmt.body, scope)
        scope.loops.pop()

    def _stmt_BreakStmt(self, stmt: BreakStmt, scope: Scope) -> None:
        if not scope.loops:
            self.error("break", "'break' must be inside a loop statement", stmt)
        elif scope.loops[-1] != "loop":
            self.error("break", f"'break' cannot be inside a {scope.loops[-1]} statement", stmt)

    def _stmt_ForStmt(self, stmt: ForStmt, scope: Scope) -> None:
        inline = stmt.var_type is not None
        if inline:
            if stmt.var in scope.locals:
                self.error("duplicate-var", f"variable {stmt.var} is already declared", stmt)
            local = Local(stmt.var, self.model.resolve_type(stmt.var_type, self.file), stmt.var_type, "for")
        else:
            local = scope.locals.get(stmt.var)
            if local is None or local.kind not in ("local", "for"):
                self.error("for-var", f"the control variable {stmt.var} must be a local variable", stmt)
                local = None
        if local is not None and local.type.name not in LOOP_VAR_KINDS:
            self.error("for-var", f"the control variable {stmt.var} must be of type char, byte, "
                                  f"integer or long", stmt)
            local = None
        if stmt.var in scope.loop_vars:
            self.error("for-var", f"{stmt.var} is already the control variable of an enclosing for", stmt)
        kind = local.type if local is not None else None
        for bound in (stmt.start, stmt.stop):
            if kind is None:
                self._value(bound, scope)
            else:
                self._assign_value(bound, kind, scope, "use as a bound of")
        stmt.kind = kind.name if kind is not None else "integer"
        if inline and local is not None:
            scope.locals[stmt.var] = local
        scope.loops.append("for")
        scope.loop_vars.append(stmt.var)
        self._statement(stmt.body, scope)
        scope.loop_vars.pop()
        scope.loops.pop()
        if inline and local is not None:
            scope.locals.pop(stmt.var, None)

    def _stmt_CaseStmt(self, stmt: CaseStmt, scope: Scope) -> None:
        subject = self._value(stmt.subject, scope)
        if subject is not None and subject.is_basic and subject.name in CASE_KINDS:
            stmt.mode = "value"
            seen: List[Any] = []
            for arm in stmt.arms:
                arm.values = []
                for label in arm.labels:
                    value = self._case_constant(label, subject, scope)
                    if value is None:
                        continue
                    if value in seen:
                        self.error("case-label", "duplicate case label", label)
                    seen.append(value)
                    arm.values.append(value)
        elif subject is not None and subject.is_reference:
            stmt.mode = "class"
            for arm in stmt.arms:
                arm.classes = []
                for label in arm.labels:
                    target = self._case_class(label, stmt.subject)
                    if target is not None:
                        arm.classes.append(target)
        elif subject is not None:
            self.error("case-type", f"case expression of type {subject.name} is not allowed", stmt.subject)
        for arm in stmt.arms:
            self._statement(arm.body, scope)
        if stmt.otherwise is not None:
            self._statement(stmt.otherwise, scope)

    def _case_constant(self, label: Any, subject: TypeDescriptor, scope: Scope) -> Any:
        type_ = self._value(label, scope)
        if type_ is None:
            return None
        if type_ is not subject:
            self.error("case-label", f"case label of type {type_.name} does not match the case expression "
                                     f"of type {subject.name}", label)
            return None
        value = self._constant_value(label)
        if value is None:
            self.error("case-label", "case labels must be constants", label)
        return value

    def _constant_value(self, node: Any) -> Any:
        if isinstance(node, Literal):
            return node.value
        if isinstance(node, Paren):
            return self._constant_value(node.inner)
        if isinstance(node, Unary) and node.op in ("-", "+", "~"):
            inner = self._constant_value(node.operand)
            if inner is None or not node.operand.ty.is_basic:
                return None
            return numeric.unary(node.op, node.operand.ty.name, inner)
        if isinstance(node, Name) and getattr(node, "ref", (None,))[0] == "const":
            return node.ref[1].value
        call = getattr(node, "call", None)
        if isinstance(node, Send) and call is not None and call.kind == "const":
            return call.target.value
        return None

    def _case_class(self, label: Any, subject: Any) -> Optional[ClassSymbol]:
        name = label.name if isinstance(label, Name) else None
        obj = self.model.objects.get(name) if name else None
        if obj is None or obj.associate is None:
            self.error("case-label", "labels of a case on an object must be class names", label)
            return None
        label.ref = ("object", obj)
        label.ty = obj.descriptor
        associate = obj.associate
        if self._is_catch_idiom(subject) and not self.model.is_exception(associate.descriptor):
            self.warn("case-label", f"{associate.name} is not an exception class", label)
        return associate

    def _is_catch_idiom(self, subject: Any) -> bool:
        return isinstance(subject, Send) and subject.name == "getClassException" and not subject.args

    def _stmt_VarStmt(self, stmt: VarStmt, scope: Scope) -> None:
        self._var_stmt(stmt, scope)

    def _var_stmt(self, stmt: VarStmt, scope: Scope, kind: str = "local") -> None:
        type_ = self.model.resolve_type(stmt.type, self.file)
        if stmt.name in scope.locals:
            self.error("duplicate-var", f"variable {stmt.name} is already declared", stmt)
        if stmt.init is not None:
            if stmt.type.expanded:
                self.error("expanded-assign", f"expanded variable {stmt.name} cannot be initialized "
                                              f"with a value", stmt)
            self._assign_value(stmt.init, type_, scope, "initialize")
        elif kind == "assert":
            self.error("assert-var", f"assert variable {stmt.name} must be initialized", stmt)
        stmt.local_type = type_
        scope.locals[stmt.name] = Local(stmt.name, type_, stmt.type, kind)

    def _stmt_TryStmt(self, stmt: TryStmt, scope: Scope) -> None:
        catch = self._value(stmt.catch, scope)
        default = self.table.default_exception
        if catch is not None and default is not None and not self.table.is_subtype(catch, default):
            self.error("try-type", f"the catch object of a try must be of a subtype of "
                                   f"{default.name}, not {catch.name}", stmt.catch)
            catch = None
        scope.catches.append(catch or default)
        self._statements(stmt.body, scope)
        scope.catches.pop()

    # -- assignment -----------------------------------------------------

    def _assign(self, node: Assign, scope: Scope) -> None:
        target = node.target
        node.ty = VOID
        if isinstance(target, (SelfExpr, ResultExpr)):
            self.error("assign-target", f"'{'self' if isinstance(target, SelfExpr) else 'result'}' "
                                        f"cannot be assigned", target)
            self._expr(node.value, scope)
            return
        if isinstance(target, Name) and target.name in scope.loop_vars:
            self.error("for-var", f"the control variable {target.name} cannot be assigned in the loop",
                       target)
        type_ = self._expr(target, scope, as_target=True)
        if type_ is None:
            self._expr(node.value, scope)
            return
        if self._is_expanded(target, scope):
            self.error("expanded-assign", "an expanded variable cannot be the target of an assignment", target)
        self._assign_value(node.value, type_, scope, "assign")

    def _assign_value(self, value: Any, target: TypeDescriptor, scope: Scope, what: str) -> bool:
        if isinstance(value, ArrayInit):
            return self._array_init(value, target, scope)
        source = self._value(value, scope)
        if source is None:
            return False
        return self._coerce(value, source, target, what)

    def _coerce(self, node: Any, source: TypeDescriptor, target: TypeDescriptor, what: str) -> bool:
        conversion = self._conversion(source, target)
        if conversion is None:
            hint = ""
            if source.is_reference and target.is_reference and self.table.is_subtype(target, source):
                hint = f"; use {target.name}.cast"
            self.error("type-mismatch", f"cannot {what} a value of type {source.name} to type "
                                        f"{target.name}{hint}", node)
            return False
        if conversion:
            node.convert = conversion
        return True

    def _conversion(self, source: TypeDescriptor, target: TypeDescriptor) -> Optional[str]:
        """"" for plain subtyping, "box:W" or "unbox", None when incompatible."""
        if source is VOID or target is VOID:
            return None
        if self.table.is_subtype(source, target):
            return ""
        if source.is_basic:
            wrapper = self.table.get(WRAPPERS[source.name])
            if wrapper is not None and self.table.is_subtype(wrapper, target):
                return "box:" + wrapper.name
        if target.is_basic and source.kind is Kind.CLASS and UNWRAPPED.get(source.name) == target.name:
            return "unbox"
        return None

    def _array_init(self, node: ArrayInit, target: TypeDescriptor, scope: Scope) -> bool:
        node.ty = target
        if not target.is_array:
            self.error("array-init", f"'#( ... )' needs an array type, not {target.name}", node)
            for item in node.items:
                self._value(item, scope)
            return False
        element = target.element if target.dims == 1 else self.table.array_of(target.element, target.dims - 1)
        ok = True
        for item in node.items:
            ok = self._assign_value(item, element, scope, "store") and ok
        return ok

    def _is_expanded(self, node: Any, scope: Scope) -> bool:
        if isinstance(node, Name):
            ref = getattr(node, "ref", None)
            if ref is None:
                return False
            if ref[0] == "local":
                local = scope.locals.get(node.name)
                return local is not None and getattr(local.node, "expanded", False)
            if ref[0] == "field":
                return ref[1].expanded
            return False
        if isinstance(node, Send) and node.args is None:
            call = getattr(node, "call", None)
            return call is not None and call.kind == "field" and call.target.expanded
        if isinstance(node, Index):
            return self._element_expanded(node.target, scope)
        return False

    def _declared_type_node(self, node: Any, scope: Scope) -> Any:
        if isinstance(node, Name):
            ref = getattr(node, "ref", None)
            if ref and ref[0] == "local":
                local = scope.locals.get(node.name)
                return local.node if local else None
            if ref and ref[0] == "field":
                return ref[1].decl.type if ref[1].decl is not None else None
        if isinstance(node, Send) and node.args is None:
            call = getattr(node, "call", None)
            if call is not None and call.kind == "field" and call.target.decl is not None:
                return call.target.decl.type
        if isinstance(node, Index):
            outer = self._declared_type_node(node.target, scope)
            if isinstance(outer, ArrayType) and outer.dims > 1:
                return ArrayType(outer.element, outer.dims - 1)
            return outer.element if isinstance(outer, ArrayType) else None
        return None

    def _element_expanded(self, node: Any, scope: Scope) -> bool:
        declared = self._declared_type_node(node, scope)
        return isinstance(declared, ArrayType) and declared.element.expanded

    # -- expressions ----------------------------------------------------

    def _value(self, node: Any, scope: Scope) -> Optional[TypeDescriptor]:
        """Type of an expression that must produce a value."""
        type_ = self._expr(node, scope)
        if type_ is VOID:
            self.error("no-value", "this expression does not produce a value", node)
            return None
        return type_

    def _condition(self, node: Any, scope: Scope, what: str) -> None:
        type_ = self._value(node, scope)
        if type_ is None:
            return
        if type_.name == "Boolean" and type_.kind is Kind.CLASS:
            node.convert = "unbox"
            return
        if type_ is not self.table["boolean"]:
            self.error("type-mismatch", f"{what} must be of type boolean, not {type_.name}", node)

    def _expr(self, node: Any, scope: Scope, as_target: bool = False) -> Optional[TypeDescriptor]:
        handler = getattr(self, "_expr_" + type(node).__name__, None)
        if handler is None:
            raise GreenError(f"unexpected expression {type(node).__name__}")
        type_ = handler(node, scope, as_target) if as_target else handler(node, scope)
        node.ty = type_
        return type_

    def _expr_Literal(self, node: Literal, scope: Scope) -> TypeDescriptor:
        return self.table["String"] if node.kind == "string" else self.table[node.kind]

    def _expr_NilLit(self, node: NilLit, scope: Scope) -> TypeDescriptor:
        return self.table.nil

    def _self_type(self, scope: Scope) -> TypeDescriptor:
        owner = scope.owner
        if owner.is_shell:
            return owner.base or self.table["Any"]
        return owner.descriptor

    def _expr_SelfExpr(self, node: SelfExpr, scope: Scope, as_target: bool = False) -> TypeDescriptor:
        return self._self_type(scope)

    def _expr_SuperExpr(self, node: SuperExpr, scope: Scope) -> Optional[TypeDescriptor]:
        self.error("super", "'super' can only be used as the receiver of a message", node)
        return None

    def _expr_ResultExpr(self, node: ResultExpr, scope: Scope, as_target: bool = False) -> Optional[TypeDescriptor]:
        if not scope.in_after or scope.method is None or scope.method.result is None:
            self.error("result", "'result' can only be used in the after clause of a method that "
                                 "returns a value", node)
            return None
        return scope.method.result

    def _expr_ExceptionExpr(self, node: ExceptionExpr, scope: Scope) -> Optional[TypeDescriptor]:
        self.error("exception-use", "'exception' can only be used as the receiver of a message", node)
        return None

    def _exception_type(self, scope: Scope) -> Optional[TypeDescriptor]:
        if scope.catches:
            return scope.catches[-1]
        method = scope.method
        if method is not None and method.exception is not None:
            return method.exception
        return self.table.default_exception

    def _expr_Name(self, node: Name, scope: Scope, as_target: bool = False) -> Optional[TypeDescriptor]:
        local = scope.locals.get(node.name)
        if local is not None:
            node.ref = ("local", node.name)
            return local.type
        owner = scope.owner
        var = owner.field(node.name)
        if var is not None:
            if scope.method is None and owner.is_object and not as_target:
                self.error("object-var", f"class object variable {node.name} cannot be used in an "
                                         f"initializer", node)
            node.ref = ("field", var)
            return var.type
        holder = owner if owner.is_object else owner.class_object
        if holder is not None and node.name in holder.consts:
            const = holder.consts[node.name]
            node.ref = ("const", const)
            if as_target:
                self.error("assign-target", f"constant {node.name} cannot be assigned", node)
            return const.type
        obj = self.model.objects.get(node.name)
        if obj is not None:
            node.ref = ("object", obj)
            if as_target:
                self.error("assign-target", f"class object {node.name} cannot be assigned", node)
            return obj.descriptor
        shell = self.model.shells.get(node.name)
        if shell is not None:
            node.ref = ("shell", shell)
            return self.table["Any"]
        self.error("unknown-name", f"unknown identifier {node.name}", node)
        return None

    def _expr_TypeExpr(self, node: TypeExpr, scope: Scope) -> Optional[TypeDescriptor]:
        type_node = node.type
        if isinstance(type_node, NamedType):
            obj = self.model.objects.get(type_node.name)
            if obj is not None:
                node.ref = ("object", obj)
                return obj.descriptor
        self.error("type-value", "a type cannot be used as a value", node)
        return None

    def _expr_Paren(self, node: Paren, scope: Scope) -> Optional[TypeDescriptor]:
        return self._value(node.inner, scope)

    def _basic_operand(self, node: Any, scope: Scope) -> Optional[TypeDescriptor]:
        """Type of an operator operand; wrapper objects are unboxed."""
        type_ = self._value(node, scope)
        if type_ is not None and type_.kind is Kind.CLASS and type_.name in UNWRAPPED:
            node.convert = "unbox"
            return self.table[UNWRAPPED[type_.name]]
        return type_

    def _expr_Unary(self, node: Unary, scope: Scope) -> Optional[TypeDescriptor]:
        op = node.op
        if op in ("++", "--"):
            return self._increment(node, scope)
        type_ = self._basic_operand(node.operand, scope)
        if type_ is None:
            return None
        name = type_.name if type_.is_basic else None
        if op == "not" and name == "boolean":
            return type_
        if op in ("+", "-") and name in numeric.NUMERIC:
            return type_
        if op == "~" and name in ("byte", "integer", "long"):
            return type_
        self.error("operator", f"operator '{op}' cannot be applied to {type_.name}", node)
        return None

    def _increment(self, node: Unary, scope: Scope) -> Optional[TypeDescriptor]:
        target = node.operand
        if not isinstance(target, (Name, Index, Send)) or (isinstance(target, Send) and target.args is not None):
            self.error("operator", f"'{node.op}' needs a variable", node)
            return VOID
        type_ = self._expr(target, scope, as_target=True)
        if type_ is None:
            return VOID
        if isinstance(target, Name) and target.name in scope.loop_vars:
            self.error("for-var", f"the control variable {target.name} cannot be changed in the loop", target)
        if type_.is_basic and type_.name in numeric.INTEGRAL:
            node.kind = type_.name
        elif type_.kind is Kind.CLASS and UNWRAPPED.get(type_.name) in numeric.INTEGRAL:
            node.kind = "box:" + type_.name
            if self._is_expanded(target, scope):
                self.error("expanded-assign", "an expanded variable cannot be changed", target)
        else:
            self.error("operator", f"'{node.op}' cannot be applied to {type_.name}", node)
        return VOID

    def _expr_Binary(self, node: Binary, scope: Scope) -> Optional[TypeDescriptor]:
        op = node.op
        boolean = self.table["boolean"]
        if op in ("and", "or", "xor"):
            self._condition(node.left, scope, f"an operand of '{op}'")
            self._condition(node.right, scope, f"an operand of '{op}'")
            return boolean
        if op in ("==", "<>"):
            return self._equality(node, scope)
        left = self._basic_operand(node.left, scope)
        right = self._basic_operand(node.right, scope)
        if left is None or right is None:
            return boolean if op in ORDERING else None
        string = self.table.get("String")
        if op == "+" and left is string and right is string:
            node.kind = "string"
            return string
        if left is not right or not left.is_basic:
            self.error("operator", f"operator '{op}' cannot be applied to {left.name} and {right.name}", node)
            return boolean if op in ORDERING else None
        kind = left.name
        node.kind = kind
        if op in ORDERING and kind in numeric.NUMERIC + ("char",):
            return boolean
        if op in ARITHMETIC and kind in numeric.NUMERIC:
            return left
        if op in BITWISE + ("<<", ">>") and kind in ("byte", "integer", "long"):
            return left
        self.error("operator", f"operator '{op}' cannot be applied to {kind}", node)
        return boolean if op in ORDERING else None

    def _equality(self, node: Binary, scope: Scope) -> TypeDescriptor:
        boolean = self.table["boolean"]
        left = self._value(node.left, scope)
        right = self._value(node.right, scope)
        if left is None or right is None:
            return boolean
        if left.is_basic or right.is_basic:
            if left.kind is Kind.CLASS and UNWRAPPED.get(left.name) == right.name:
                node.left.convert, left = "unbox", right
            elif right.kind is Kind.CLASS and UNWRAPPED.get(right.name) == left.name:
                node.right.convert, right = "unbox", left
            if left is not right:
                self.error("operator", f"values of types {left.name} and {right.name} cannot be compared",
                           node)
            node.kind = left.name
            return boolean
        node.kind = "reference"
        return boolean

    def _expr_Assign(self, node: Assign, scope: Scope) -> TypeDescriptor:
        self.error("assign", "an assignment is not an expression", node)
        self._assign(node, scope)
        return VOID

    def _expr_ArrayInit(self, node: ArrayInit, scope: Scope) -> Optional[TypeDescriptor]:
        self.error("array-init", "'#( ... )' can only initialize a variable or parameter of array type", node)
        for item in node.items:
            self._value(item, scope)
        return None

    def _expr_Index(self, node: Index, scope: Scope, as_target: bool = False) -> Optional[TypeDescriptor]:
        target = self._value(node.target, scope)
        index = self._basic_operand(node.index, scope)
        if index is not None and index is not self.table["integer"]:
            self.error("type-mismatch", f"an array index must be an integer, not {index.name}", node.index)
        if target is None:
            return None
        if not target.is_array:
            self.error("index", f"a value of type {target.name} cannot be indexed", node)
            return None
        if target.dims == 1:
            return target.element
        return self.table.array_of(target.element, target.dims - 1)

    def _array_dims(self, args: List[Any], array: TypeDescriptor, node: Any) -> None:
        integer = self.table["integer"]
        if not 1 <= len(args) <= array.dims:
            self.error("array-new", f"{array.name} takes from 1 to {array.dims} dimensions", node)
        for arg in args:
            if arg.ty is not None and arg.ty is not integer:
                self._coerce(arg, arg.ty, integer, "use as an array dimension")

    # -- message sends --------------------------------------------------

    def _expr_Send(self, node: Send, scope: Scope, as_target: bool = False) -> Optional[TypeDescriptor]:
        receiver = node.receiver
        if node.args is None:
            return self._member(node, scope, as_target)
        if as_target:
            self.error("assign-target", "a message send cannot be assigned", node)
        if receiver is None or isinstance(receiver, SelfExpr):
            if receiver is not None:
                receiver.ty = self._self_type(scope)
            return self._self_send(node, scope)
        if isinstance(receiver, SuperExpr):
            return self._super_send(node, scope)
        if isinstance(receiver, ExceptionExpr):
            return self._exception_send(node, scope)
        if isinstance(receiver, TypeExpr) and isinstance(receiver.type, ArrayType):
            return self._array_new(node, scope)
        if isinstance(receiver, Name) and receiver.name in self.model.shells \
                and receiver.name not in scope.locals:
            return self._shell_new(node, scope)
        if node.name == "init":
            return self._init_send(node, scope)
        type_ = self._value(receiver, scope)
        if type_ is None:
            self._values(node.args, scope)
            return None
        if type_.kind is Kind.NIL:
            type_ = self.table["Any"]
        chosen = self._select(type_.named(node.name), node.args, node, f"{type_.name}.{node.name}", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        node.call = Call("method", sig.method, sig, True, pack=pack, pack_type=pack_type)
        self._meta_rules(node, sig)
        return sig.result or VOID

    def _values(self, args: Iterable[Any], scope: Scope) -> None:
        for arg in args:
            if isinstance(arg, ArrayInit):
                for item in arg.items:
                    self._value(item, scope)
            else:
                self._value(arg, scope)

    def _member(self, node: Send, scope: Scope, as_target: bool) -> Optional[TypeDescriptor]:
        """``recv.x`` without parentheses: an instance variable of self or a constant."""
        receiver = node.receiver
        if isinstance(receiver, SelfExpr):
            receiver.ty = self._self_type(scope)
            owner = scope.owner
            var = owner.field(node.name)
            if var is not None:
                node.call = Call("field", target=var)
                return var.type
            if owner.is_object and node.name in owner.consts:
                return self._const(node, owner.consts[node.name], as_target)
            self.error("unknown-name", f"{owner.name} has no instance variable {node.name}", node)
            return None
        obj = None
        if isinstance(receiver, Name) and receiver.name not in scope.locals:
            obj = self.model.objects.get(receiver.name)
        elif isinstance(receiver, TypeExpr) and isinstance(receiver.type, NamedType):
            obj = self.model.objects.get(receiver.type.name)
        if obj is not None:
            self._expr(receiver, scope)
            const = obj.consts.get(node.name)
            own = scope.owner is obj or scope.owner.class_object is obj
            if const is not None and (const.public or own):
                return self._const(node, const, as_target)
            # class A reaches the private variables of class object A
            var = obj.field(node.name) if own else None
            if var is not None:
                node.call = Call("object-field", target=(obj, var))
                return var.type
            self.error("unknown-name", f"{obj.name} has no public constant {node.name}", node)
            return None
        self._expr(receiver, scope)
        self.error("field-access", f"instance variable {node.name} of another object cannot be accessed; "
                                   f"only self.{node.name} is allowed", node)
        return None

    def _const(self, node: Send, const: ConstSymbol, as_target: bool) -> TypeDescriptor:
        if as_target:
            self.error("assign-target", f"constant {const.name} cannot be assigned", node)
        node.call = Call("const", target=const)
        return const.type

    def _self_send(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        owner = scope.owner
        if node.name == "init":
            chosen = self._select([m.signature for m in owner.inits], node.args, node,
                                  f"{owner.name}::init", scope)
            if chosen is None:
                return None
            sig, pack, pack_type = chosen
            node.call = Call("init", sig.method, sig, pack=pack, pack_type=pack_type)
            return VOID
        candidates = [m.signature for m in owner.find(node.name)]
        if owner.is_shell and owner.base is not None:
            candidates += [sig for sig in owner.base.named(node.name)
                           if not any(c.arity == sig.arity and c.variadic == sig.variadic
                                      and all(p is q for p, q in zip(c.params, sig.params)) for c in candidates)]
        chosen = self._select(candidates, node.args, node, node.name, scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        method = sig.method
        if isinstance(method, MethodSymbol) and method.visibility is Visibility.PRIVATE:
            node.call = Call("method", method, sig, False, pack=pack, pack_type=pack_type)
        else:
            node.call = Call("method", method, sig, True, pack=pack, pack_type=pack_type)
        if scope.in_init:
            self.warn("init-self-send", f"message {node.name} sent to self inside an init method", node)
        return sig.result or VOID

    def _super_send(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        owner = scope.owner
        node.receiver.ty = self._self_type(scope)
        parent = owner.superclass
        if owner.is_shell:
            return self._shell_super(node, scope)
        if parent is None:
            self.error("super", f"{owner.name} has no superclass", node)
            self._values(node.args, scope)
            return None
        if node.name == "init":
            chosen = self._select([m.signature for m in parent.inits], node.args, node,
                                  f"{parent.name}::init", scope)
            if chosen is None:
                return None
            sig, pack, pack_type = chosen
            node.call = Call("init", sig.method, sig, pack=pack, pack_type=pack_type)
            return VOID
        methods = parent.find(node.name, visible=(Visibility.PUBLIC, Visibility.SUBCLASS))
        chosen = self._select([m.signature for m in methods], node.args, node,
                              f"super.{node.name}", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        if sig.method.is_abstract:
            self.error("super", f"{sig.method.qualified} is abstract and cannot be called through super",
                       node)
        node.call = Call("method", sig.method, sig, False, pack=pack, pack_type=pack_type)
        if scope.in_init:
            self.warn("init-self-send", f"message {node.name} sent to super inside an init method", node)
        return sig.result or VOID

    def _shell_super(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        owner = scope.owner
        parent = owner.superclass
        if node.name == "init":
            inits = [m.signature for m in parent.inits] if parent is not None else []
            chosen = self._select(inits, node.args, node, "super.init", scope)
            if chosen is None:
                return None
            sig, pack, pack_type = chosen
            node.call = Call("init", sig.method, sig, pack=pack, pack_type=pack_type)
            return VOID
        if parent is not None:
            methods = parent.find(node.name, visible=(Visibility.PUBLIC, Visibility.SUBCLASS))
            if methods:
                chosen = self._select([m.signature for m in methods], node.args, node,
                                      f"super.{node.name}", scope)
                if chosen is None:
                    return None
                sig, pack, pack_type = chosen
                node.call = Call("method", sig.method, sig, False, pack=pack, pack_type=pack_type)
                return sig.result or VOID
        base = owner.base or self.table["Any"]
        chosen = self._select(base.named(node.name), node.args, node, f"super.{node.name}", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        node.call = Call("shell-super", sig.method, sig, True, pack=pack, pack_type=pack_type)
        return sig.result or VOID

    def _exception_send(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        catch = self._exception_type(scope)
        node.receiver.ty = catch
        if catch is None:
            self._values(node.args, scope)
            return None
        if node.name == "throw" and len(node.args) == 1:
            thrown = self._value(node.args[0], scope)
            if thrown is None:
                return VOID
            if not self.model.is_exception(thrown):
                self.error("throw", f"only exception objects can be thrown, not {thrown.name}", node.args[0])
                return VOID
            node.call = Call("throw")
            if not self._covered(thrown, scope):
                where = scope.method.qualified if scope.method is not None else scope.owner.name
                self.error("throw", f"exception {thrown.name} is not handled by the exception type of "
                                    f"{where} nor by an enclosing try", node)
            return VOID
        chosen = self._select(catch.named(node.name), node.args, node, f"exception.{node.name}", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        node.call = Call("method", sig.method, sig, True, pack=pack, pack_type=pack_type)
        return sig.result or VOID

    def _covered(self, thrown: TypeDescriptor, scope: Scope) -> bool:
        unchecked = self.model.classes.get("UncheckedException")
        symbol = self.model.class_of(thrown)
        if unchecked is not None and symbol is not None and symbol.is_subclass_of(unchecked):
            return True
        method = scope.method
        handlers = [method.exception if method is not None and method.exception is not None
                    else self.table.default_exception] + list(scope.catches)
        for catch in handlers:
            if catch is None:
                continue
            if any(self.model.exception_match(thrown, handled) for handled in self.model.throw_params(catch)):
                return True
        return False

    def _init_send(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        receiver = node.receiver
        type_ = self._value(receiver, scope)
        if type_ is None:
            self._values(node.args, scope)
            return None
        if not self._is_expanded(receiver, scope):
            self.error("init-send", "init messages can only be sent to self, super or expanded variables",
                       node)
            self._values(node.args, scope)
            return None
        cls = self.model.class_of(type_)
        inits = [m.signature for m in cls.inits] if cls is not None else []
        chosen = self._select(inits, node.args, node, f"{type_.name}::init", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        node.call = Call("init", sig.method, sig, True, pack=pack, pack_type=pack_type)
        return VOID

    def _array_new(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        receiver: TypeExpr = node.receiver
        array = self.model.resolve_type(receiver.type, self.file)
        receiver.ty = array
        self._values(node.args, scope)
        if node.name != "new":
            self.error("array-new", f"array classes only understand new, not {node.name}", node)
            return None
        self._array_dims(node.args, array, node)
        node.call = Call("array-new", target=(array, receiver.type.element.expanded))
        return array

    def _shell_new(self, node: Send, scope: Scope) -> Optional[TypeDescriptor]:
        shell = self.model.shells[node.receiver.name]
        node.receiver.ref = ("shell", shell)
        node.receiver.ty = self.table["Any"]
        if node.name != "new":
            self.error("shell-new", f"shell class {shell.name} only understands new", node)
            self._values(node.args, scope)
            return None
        inits = [m.signature for m in shell.inits]
        if not inits and not node.args:
            node.call = Call("shell-new", target=shell)
            return self.table["Any"]
        chosen = self._select(inits, node.args, node, f"{shell.name}.new", scope)
        if chosen is None:
            return None
        sig, pack, pack_type = chosen
        node.call = Call("shell-new", sig.method, sig, target=shell, pack=pack, pack_type=pack_type)
        return self.table["Any"]

    def _meta_rules(self, node: Send, sig: Signature) -> None:
        """Allowed-set check for extensions known at compile time."""
        method = sig.method
        if not isinstance(method, MethodSymbol) or method.qualified != "Meta::attachExtension":
            return
        target, extension = node.args
        obj = getattr(target, "ref", (None, None))
        shell = getattr(extension, "ref", (None, None))
        if obj[0] != "object" or shell[0] != "shell":
            return
        cls, ext = obj[1].associate, shell[1]
        name = cls.name if cls is not None else obj[1].name
        if name not in ext.extension_allowed:
            self.error("allowed-set", f"class {name} is not in the allowed set of extension {ext.name}", node)
            return
        if ext.inits and not any(m.arity == 0 for m in ext.inits):
            self.error("extension-init", f"extension {ext.name} needs an init method without parameters",
                       node)
        if cls is None:
            return
        for method in ext.methods:
            replaced = [m for m in cls.vtable().get((method.name, method.arity), []) if m.is_abstract]
            if replaced:
                self.warn("extension-abstract", f"extension {ext.name} replaces abstract method "
                                                f"{replaced[0].qualified}, which is never called", node)

    # -- overload resolution --------------------------------------------

    def _select(self, candidates: List[Signature], args: List[Any], node: Any, what: str,
                scope: Scope) -> Optional[Tuple[Signature, Optional[int], Optional[TypeDescriptor]]]:
        """Pick the signature a send resolves to and record argument conversions.

        With one candidate of a name and arity any compatible argument list
        is accepted. Overloaded methods need parameter types equal to the
        argument types; subtypes and boxing are not enough.
        """
        types = [None if isinstance(a, ArrayInit) else self._value(a, scope) for a in args]
        if any(t is None and not isinstance(a, ArrayInit) for t, a in zip(types, args)):
            return None
        if not candidates:
            self.error("no-method", f"there is no method {what}", node)
            return None
        fixed = [(s, p) for s in candidates if not s.variadic
                 for p in [self._param_list(s, len(args))] if p is not None]
        variadic = [(s, p) for s in candidates if s.variadic
                    for p in [self._param_list(s, len(args))] if p is not None]
        for tier in (fixed, variadic):
            compatible = [(s, p) for s, p in tier if self._fits(types, p, self._compatible)]
            if not compatible:
                continue
            if len(tier) == 1:
                return self._apply(compatible[0], args, types, scope)
            for exact in (self._identical, self._equal):
                matches = [(s, p) for s, p in tier if self._fits(types, p, exact)]
                if len(matches) == 1:
                    return self._apply(matches[0], args, types, scope)
                if len(matches) > 1:
                    self.error("ambiguous", f"ambiguous message {what}({_arg_names(types)})", node)
                    return None
            if len(compatible) > 1:
                self.error("ambiguous", f"ambiguous message {what}({_arg_names(types)}); insert a cast",
                           node)
            else:
                self.error("no-exact-overload", f"no method {what} with parameters exactly "
                                                f"({_arg_names(types)}); insert a cast", node)
            return None
        self.error("no-method", f"there is no method {what}({_arg_names(types)})", node)
        return None

    def _param_list(self, sig: Signature, count: int) -> Optional[List[TypeDescriptor]]:
        if not sig.variadic:
            return list(sig.params) if sig.arity == count else None
        if count < sig.arity - 1:
            return None
        last = sig.params[-1]
        element = last.element if last.dims == 1 else self.table.array_of(last.element, last.dims - 1)
        return list(sig.params[:-1]) + [element] * (count - sig.arity + 1)

    @staticmethod
    def _fits(types: List[Optional[TypeDescriptor]], params: List[TypeDescriptor], test) -> bool:
        return all(param.is_array if type_ is None else test(type_, param)
                   for type_, param in zip(types, params))

    def _compatible(self, source: TypeDescriptor, target: TypeDescriptor) -> bool:
        return self._conversion(source, target) is not None

    def _identical(self, source: TypeDescriptor, target: TypeDescriptor) -> bool:
        return source is target or (source.kind is Kind.NIL and target.is_reference)

    def _equal(self, source: TypeDescriptor, target: TypeDescriptor) -> bool:
        return self._identical(source, target) or self.table.type_equal(source, target)

    def _apply(self, chosen: Tuple[Signature, List[TypeDescriptor]], args: List[Any],
               types: List[Optional[TypeDescriptor]], scope: Scope):
        sig, params = chosen
        for arg, type_, param in zip(args, types, params):
            if type_ is None:
                self._array_init(arg, param, scope)
                continue
            conversion = self._conversion(type_, param)
            if conversion:
                arg.convert = conversion
        if sig.variadic:
            return sig, sig.arity - 1, sig.params[-1]
        return sig, None, None


def _arg_names(types: Sequence[Optional[TypeDescriptor]]) -> str:
    return ", ".join(t.name if t is not None else "#( ... )" for t in types)


# -- pipeline -------------------------------------------------------------

@dataclass
class CheckedProgram:
    """A program that passed static checking, ready to run."""
    model: Model
    diagnostics: List[Diagnostic]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    def entry(self, name: str) -> Tuple[Optional[MethodSymbol], Optional[str]]:
        return self.model.entry_method(name)

    def dump_types(self, user_only: bool = True) -> str:
        """Every class and class object type with its sorted signatures."""
        lines: List[str] = []
        for symbol in self.model.symbols():
            if (user_only and symbol.prelude) or symbol.descriptor is None or symbol.is_shell:
                continue
            lines.append(f"{symbol.descriptor.name}")
            lines.extend("    " + text for text in sorted(str(s) for s in symbol.descriptor.signatures))
        return "\n".join(lines) + ("\n" if lines else "")


@lru_cache(maxsize=4)
def _prelude_tokens(prelude_dir: str) -> Tuple[Tuple[str, Tuple[Token, ...]], ...]:
    out = []
    for name in PRELUDE_FILES:
        path = Path(prelude_dir) / name
        out.append((str(path), tuple(tokenize(path.read_text(encoding="utf-8"), str(path)))))
    logger.debug("loaded %d prelude files from %s", len(out), prelude_dir)
    return tuple(out)


def prelude_units(settings: Optional[GreenSettings] = None) -> List[SourceUnit]:
    settings = settings or get_settings()
    return [SourceUnit(filename, parse_program(list(tokens), filename, prelude=True), prelude=True)
            for filename, tokens in _prelude_tokens(str(settings.prelude_dir))]


def check_sources(sources: Sequence[Tuple[str, str]], settings: Optional[GreenSettings] = None,
                  manifest: Any = None) -> CheckedProgram:
    """Check ``(filename, text)`` pairs together with the library.

    Raises LexError or ParseError on malformed input and CheckError when
    static checking reports errors.
    """
    settings = settings or get_settings()
    units = prelude_units(settings)
    lex_warnings: List[Diagnostic] = []
    for filename, text in sources:
        tokens = tokenize(text, filename)
        lex_warnings.extend(case_warnings(text, filename))
        units.append(SourceUnit(filename, parse_program(tokens, filename)))
    synthesized = synthesize([unit.program for unit in units])
    if synthesized:
        units.append(SourceUnit(SYNTH_FILE, parse_program(tokenize(synthesized, SYNTH_FILE), SYNTH_FILE,
                                                          prelude=True), prelude=True))
    model = declare(units)
    apply_allowed_sets(model, manifest)
    Checker(model, settings).run()
    diagnostics = sort_diagnostics(model.diagnostics + lex_warnings)
    if any(d.is_error for d in diagnostics):
        raise CheckError(diagnostics)
    logger.debug("checked %d source files: %d warnings", len(sources), len(diagnostics))
    return CheckedProgram(model, diagnostics)


def apply_allowed_sets(model: Model, manifest: Any) -> None:
    """Shells and extensions may attach to their base class unless a manifest says otherwise."""
    for shell in model.shells.values():
        base = model.class_of(shell.base)
        default = [base.name] if base is not None else []
        shell.allowed = list(default)
        shell.extension_allowed = list(default)
        if manifest is None:
            continue
        if shell.name in manifest.shells:
            shell.allowed = list(manifest.shells[shell.name])
        if shell.name in manifest.extensions:
            shell.extension_allowed = list(manifest.extensions[shell.name])
    if manifest is not None:
        for name in list(manifest.shells) + list(manifest.extensions):
            if name not in model.shells:
                model.error("manifest", f"the manifest names {name}, which is not a shell class")
