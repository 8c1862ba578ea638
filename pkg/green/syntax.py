"""
Abstract syntax tree for Green programs.

Nodes are dataclasses. Spans never take part in equality, so a program and
the re-parse of its pretty-printed form compare equal. The checker hangs its
results (types, resolved methods) on nodes as plain attributes; those are not
dataclass fields either.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional, Union

from .diagnostics import NO_SPAN, Span


def _span() -> Any:
    return field(default=NO_SPAN, compare=False, repr=False)


class Node:
    span: Span = NO_SPAN


# -- types ----------------------------------------------------------------

@dataclass(eq=True)
class NamedType(Node):
    """A basic type keyword or a class name."""
    name: str
    expanded: bool = False
    span: Span = _span()


@dataclass(eq=True)
class ClassObjectType(Node):
    """``type(X)``: the type of class object X."""
    name: str
    expanded: bool = False
    span: Span = _span()


@dataclass(eq=True)
class ArrayType(Node):
    """``array(T)[]...``; ``sizes`` holds constant dimensions of expanded arrays."""
    element: "TypeNode"
    dims: int
    sizes: List[Optional[Union[int, str]]] = field(default_factory=list)
    expanded: bool = False
    span: Span = _span()


@dataclass(eq=True)
class GenericType(Node):
    """``DS.Iter(T)`` and friends."""
    module: str
    name: str
    args: List["TypeNode"]
    expanded: bool = False
    span: Span = _span()


TypeNode = Union[NamedType, ClassObjectType, ArrayType, GenericType]


# -- expressions ----------------------------------------------------------

@dataclass(eq=True)
class Literal(Node):
    kind: str          # char boolean byte integer long real double string
    value: Any
    hashed: bool = False   # written as #'A'
    span: Span = _span()


@dataclass(eq=True)
class NilLit(Node):
    span: Span = _span()


@dataclass(eq=True)
class SelfExpr(Node):
    span: Span = _span()


@dataclass(eq=True)
class SuperExpr(Node):
    span: Span = _span()


@dataclass(eq=True)
class ResultExpr(Node):
    span: Span = _span()


@dataclass(eq=True)
class ExceptionExpr(Node):
    """The implicit ``exception`` parameter."""
    span: Span = _span()


@dataclass(eq=True)
class Name(Node):
    name: str
    span: Span = _span()


@dataclass(eq=True)
class TypeExpr(Node):
    """A type written where a receiver is expected: ``integer.cast(x)``."""
    type: TypeNode
    span: Span = _span()


@dataclass(eq=True)
class Paren(Node):
    inner: "Expr"
    span: Span = _span()


@dataclass(eq=True)
class Unary(Node):
    op: str
    operand: "Expr"
    span: Span = _span()


@dataclass(eq=True)
class Binary(Node):
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = _span()


@dataclass(eq=True)
class Assign(Node):
    target: "Expr"
    value: "Expr"
    span: Span = _span()


@dataclass(eq=True)
class ArrayInit(Node):
    items: List["Expr"]
    span: Span = _span()


@dataclass(eq=True)
class Index(Node):
    target: "Expr"
    index: "Expr"
    span: Span = _span()


@dataclass(eq=True)
class Send(Node):
    """``recv.name(args)``; ``receiver`` is None for ``name(args)``.

    ``args`` is None for the parenthesis-free member form ``recv.name``.
    """
    receiver: Optional["Expr"]
    name: str
    args: Optional[List["Expr"]]
    span: Span = _span()


Expr = Union[Literal, NilLit, SelfExpr, SuperExpr, ResultExpr, ExceptionExpr, Name,
             TypeExpr, Paren, Unary, Binary, Assign, ArrayInit, Index, Send]


# -- statements -----------------------------------------------------------

@dataclass(eq=True)
class Block(Node):
    """A statement list; ``braced`` when written as ``begin ... end``."""
    stmts: List["Stmt"]
    braced: bool = True
    span: Span = _span()


@dataclass(eq=True)
class ExprStmt(Node):
    expr: Expr
    span: Span = _span()


@dataclass(eq=True)
class EmptyStmt(Node):
    span: Span = _span()


@dataclass(eq=True)
class InitStmt(Node):
    """``target#init(args)``."""
    target: Expr
    args: List[Expr]
    span: Span = _span()


@dataclass(eq=True)
class ReturnStmt(Node):
    value: Optional[Expr]
    span: Span = _span()


@dataclass(eq=True)
class IfStmt(Node):
    cond: Expr
    then_body: List["Stmt"]
    else_body: Optional[List["Stmt"]]
    span: Span = _span()


@dataclass(eq=True)
class WhileStmt(Node):
    cond: Expr
    body: Block
    span: Span = _span()


@dataclass(eq=True)
class CaseArm(Node):
    labels: List[Expr]
    body: Block
    span: Span = _span()


@dataclass(eq=True)
class CaseStmt(Node):
    subject: Expr
    arms: List[CaseArm]
    otherwise: Optional[Block]
    span: Span = _span()


@dataclass(eq=True)
class ForStmt(Node):
    var: str
    var_type: Optional[TypeNode]
    start: Expr
    stop: Expr
    body: Block
    span: Span = _span()


@dataclass(eq=True)
class RepeatStmt(Node):
    body: List["Stmt"]
    cond: Expr
    span: Span = _span()


@dataclass(eq=True)
class LoopStmt(Node):
    body: List["Stmt"]
    span: Span = _span()


@dataclass(eq=True)
class BreakStmt(Node):
    span: Span = _span()


@dataclass(eq=True)
class VarStmt(Node):
    """``var x : T [= e]`` inside a body or an assert clause."""
    name: str
    type: TypeNode
    init: Optional[Expr]
    span: Span = _span()


@dataclass(eq=True)
class TryStmt(Node):
    catch: Expr
    body: List["Stmt"]
    span: Span = _span()


Stmt = Union[Block, ExprStmt, EmptyStmt, InitStmt, ReturnStmt, IfStmt, WhileStmt, CaseStmt,
             ForStmt, RepeatStmt, LoopStmt, BreakStmt, VarStmt, TryStmt]


# -- declarations ---------------------------------------------------------

@dataclass(eq=True)
class Param(Node):
    name: str
    type: TypeNode
    variadic: bool = False
    span: Span = _span()


@dataclass(eq=True)
class AssertClause(Node):
    before: Optional[Expr]
    vars: List[VarStmt]
    after: Optional[Expr]
    span: Span = _span()


@dataclass(eq=True)
class VarDecl(Node):
    """Instance, class-object or local variables sharing one type."""
    names: List[str]
    type: TypeNode
    init: Optional[Expr] = None
    span: Span = _span()


@dataclass(eq=True)
class ConstItem(Node):
    name: str
    type: Optional[TypeNode]
    value: Expr
    span: Span = _span()


@dataclass(eq=True)
class ConstDecl(Node):
    items: List[ConstItem]
    span: Span = _span()


@dataclass(eq=True)
class EnumItem(Node):
    name: str
    value: Optional[Expr]
    span: Span = _span()


@dataclass(eq=True)
class EnumDecl(Node):
    items: List[EnumItem]
    span: Span = _span()


@dataclass(eq=True)
class MethodDecl(Node):
    name: str
    params: List[Param]
    exception_type: Optional[TypeNode] = None
    return_type: Optional[TypeNode] = None
    assertion: Optional[AssertClause] = None
    locals: List[VarDecl] = field(default_factory=list)
    body: Optional[List[Stmt]] = None
    is_abstract: bool = False
    is_native: bool = False
    span: Span = _span()

    @property
    def is_variadic(self) -> bool:
        return bool(self.params) and self.params[-1].variadic


@dataclass(eq=True)
class ClassDecl(Node):
    name: str
    superclass: Optional[str] = None
    is_abstract: bool = False
    is_reflective: bool = False
    inits: List[MethodDecl] = field(default_factory=list)
    public: List[MethodDecl] = field(default_factory=list)
    subclass: List[MethodDecl] = field(default_factory=list)
    private: List[Union[MethodDecl, VarDecl]] = field(default_factory=list)
    span: Span = _span()

    @property
    def private_methods(self) -> List[MethodDecl]:
        return [m for m in self.private if isinstance(m, MethodDecl)]

    @property
    def private_vars(self) -> List[VarDecl]:
        return [v for v in self.private if isinstance(v, VarDecl)]


ObjectMember = Union[MethodDecl, ConstDecl, EnumDecl, VarDecl]


@dataclass(eq=True)
class ObjectDecl(Node):
    """``object X ... end``: the class object of X."""
    name: str
    init: Optional[MethodDecl] = None
    public: List[ObjectMember] = field(default_factory=list)
    private: List[ObjectMember] = field(default_factory=list)
    span: Span = _span()

    def members(self, kind: type) -> List[Any]:
        return [m for m in self.public + self.private if isinstance(m, kind)]


@dataclass(eq=True)
class ShellDecl(Node):
    """``shell class S(T) [subclassOf S2] ... end``."""
    name: str
    base: TypeNode
    superclass: Optional[str] = None
    inits: List[MethodDecl] = field(default_factory=list)
    public: List[MethodDecl] = field(default_factory=list)
    subclass: List[MethodDecl] = field(default_factory=list)
    private: List[Union[MethodDecl, VarDecl]] = field(default_factory=list)
    span: Span = _span()

    @property
    def private_methods(self) -> List[MethodDecl]:
        return [m for m in self.private if isinstance(m, MethodDecl)]

    @property
    def private_vars(self) -> List[VarDecl]:
        return [v for v in self.private if isinstance(v, VarDecl)]


Decl = Union[ClassDecl, ObjectDecl, ShellDecl]


@dataclass(eq=True)
class Program(Node):
    decls: List[Decl] = field(default_factory=list)
    span: Span = _span()

    def classes(self) -> List[ClassDecl]:
        return [d for d in self.decls if isinstance(d, ClassDecl)]

    def objects(self) -> List[ObjectDecl]:
        return [d for d in self.decls if isinstance(d, ObjectDecl)]

    def shells(self) -> List[ShellDecl]:
        return [d for d in self.decls if isinstance(d, ShellDecl)]


def walk(node: Any):
    """Yield ``node`` and every node below it, depth first."""
    if isinstance(node, list):
        for item in node:
            yield from walk(item)
        return
    if not isinstance(node, Node):
        return
    yield node
    for name in getattr(node, "__dataclass_fields__", {}):
        if name == "span":
            continue
        yield from walk(getattr(node, name))
