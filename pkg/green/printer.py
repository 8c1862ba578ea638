"""
Canonical source printer for the AST.

The output re-parses to an equal tree; comments are not kept.
"""

from __future__ import annotations

from typing import List

from .syntax import (
    ArrayInit, ArrayType, AssertClause, Assign, Binary, Block, BreakStmt, CaseStmt, ClassDecl,
    ClassObjectType, ConstDecl, EmptyStmt, EnumDecl, ExceptionExpr, ExprStmt, ForStmt, GenericType,
    IfStmt, Index, InitStmt, Literal, LoopStmt, MethodDecl, Name, NamedType, NilLit, ObjectDecl,
    Paren, Program, RepeatStmt, ResultExpr, ReturnStmt, SelfExpr, Send, ShellDecl, SuperExpr,
    TryStmt, TypeExpr, Unary, VarDecl, VarStmt, WhileStmt,
)

INDENT = "  "

_ESCAPES = {"\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0", "\\": "\\\\"}


def _escape(text: str, quote: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ch == quote:
            out.append("\\" + ch)
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\x{ord(ch):02X}")
        else:
            out.append(ch)
    return "".join(out)


def format_literal(node: Literal) -> str:
    kind, value = node.kind, node.value
    if kind == "char":
        text = "'" + _escape(value, "'") + "'"
        return "#" + text if node.hashed else text
    if kind == "string":
        return '"' + _escape(value, '"') + '"'
    if kind == "boolean":
        return "true" if value else "false"
    if kind == "byte":
        return f"{value}b"
    if kind == "long":
        return f"{value}L"
    if kind in ("real", "double"):
        text = repr(float(value))
        if "e" not in text and "." not in text:
            text += ".0"
        return text + ("d" if kind == "double" else "")
    return str(value)


def format_type(node) -> str:
    prefix = "@" if node.expanded else ""
    if isinstance(node, NamedType):
        return prefix + node.name
    if isinstance(node, ClassObjectType):
        return f"{prefix}type({node.name})"
    if isinstance(node, GenericType):
        args = ", ".join(format_type(a) for a in node.args)
        return f"{prefix}{node.module}.{node.name}({args})"
    if isinstance(node, ArrayType):
        if node.sizes:
            dims = "".join(f"[{s}]" for s in node.sizes)
        else:
            dims = "[]" * node.dims
        return f"{prefix}array({format_type(node.element)}){dims}"
    raise TypeError(f"not a type node: {node!r}")


def format_expr(node) -> str:
    if isinstance(node, Literal):
        return format_literal(node)
    if isinstance(node, NilLit):
        return "nil"
    if isinstance(node, SelfExpr):
        return "self"
    if isinstance(node, SuperExpr):
        return "super"
    if isinstance(node, ResultExpr):
        return "result"
    if isinstance(node, ExceptionExpr):
        return "exception"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, TypeExpr):
        return format_type(node.type)
    if isinstance(node, Paren):
        return f"({format_expr(node.inner)})"
    if isinstance(node, Unary):
        sep = " " if node.op == "not" else ""
        operand = format_expr(node.operand)
        # keep "- -x" from fusing into "--x"
        if sep == "" and operand[:1] in "+-~" and node.op in ("+", "-"):
            sep = " "
        return f"{node.op}{sep}{operand}"
    if isinstance(node, Binary):
        return f"{format_expr(node.left)} {node.op} {format_expr(node.right)}"
    if isinstance(node, Assign):
        return f"{format_expr(node.target)} = {format_expr(node.value)}"
    if isinstance(node, ArrayInit):
        return "#(" + ", ".join(format_expr(i) for i in node.items) + ")"
    if isinstance(node, Index):
        return f"{format_expr(node.target)}[{format_expr(node.index)}]"
    if isinstance(node, Send):
        head = "" if node.receiver is None else format_expr(node.receiver) + "."
        if node.args is None:
            return head + node.name
        return f"{head}{node.name}({', '.join(format_expr(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


class Printer:
    """Accumulates indented lines."""

    def __init__(self):
        self.lines: List[str] = []
        self.depth = 0

    def line(self, text: str) -> None:
        self.lines.append(INDENT * self.depth + text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    # -- declarations ---------------------------------------------------

    def program(self, node: Program) -> None:
        for index, decl in enumerate(node.decls):
            if index:
                self.lines.append("")
            if isinstance(decl, ClassDecl):
                self.class_decl(decl)
            elif isinstance(decl, ObjectDecl):
                self.object_decl(decl)
            else:
                self.shell_decl(decl)

    def class_decl(self, node: ClassDecl) -> None:
        head = ""
        if node.is_abstract:
            head += "abstract "
        if node.is_reflective:
            head += "reflective "
        head += f"class {node.name}"
        if node.superclass:
            head += f" subclassOf {node.superclass}"
        self.line(head)
        self._sections(node)
        self.line("end")

    def shell_decl(self, node: ShellDecl) -> None:
        head = f"shell class {node.name}({format_type(node.base)})"
        if node.superclass:
            head += f" subclassOf {node.superclass}"
        self.line(head)
        self._sections(node)
        self.line("end")

    def _sections(self, node) -> None:
        self.depth += 1
        for method in node.inits:
            self.method(method)
        for label, members in (("public", node.public), ("subclass", node.subclass),
                               ("private", node.private)):
            if not members:
                continue
            self.depth -= 1
            self.line(f"  {label}:")
            self.depth += 1
            for member in members:
                self.member(member)
        self.depth -= 1

    def object_decl(self, node: ObjectDecl) -> None:
        self.line(f"object {node.name}")
        self.depth += 1
        if node.init is not None:
            self.method(node.init)
        for label, members in (("public", node.public), ("private", node.private)):
            if not members:
                continue
            self.line(f"{label}:")
            for member in members:
                self.member(member)
        self.depth -= 1
        self.line("end")

    def member(self, node) -> None:
        if isinstance(node, MethodDecl):
            self.method(node)
        elif isinstance(node, VarDecl):
            self.var_decl(node)
        elif isinstance(node, ConstDecl):
            items = []
            for item in node.items:
                typed = f" : {format_type(item.type)}" if item.type else ""
                items.append(f"{item.name}{typed} = {format_expr(item.value)}")
            self.line("const " + ", ".join(items) + ";")
        elif isinstance(node, EnumDecl):
            items = [i.name if i.value is None else f"{i.name} = {format_expr(i.value)}"
                     for i in node.items]
            self.line("enum(" + ", ".join(items) + ");")

    def var_decl(self, node: VarDecl) -> None:
        init = f" = {format_expr(node.init)}" if node.init is not None else ""
        self.line(f"var {', '.join(node.names)} : {format_type(node.type)}{init};")

    def method(self, node: MethodDecl) -> None:
        params = []
        for param in node.params:
            dots = "... " if param.variadic else ""
            params.append(f"{param.name} : {dots}{format_type(param.type)}")
        head = ("abstract " if node.is_abstract else "") + f"proc {node.name}({'; '.join(params)})"
        if node.exception_type is not None:
            head += f" (exception : {format_type(node.exception_type)})"
        if node.return_type is not None:
            head += f" : {format_type(node.return_type)}"
        self.line(head)
        self.depth += 1
        if node.assertion is not None:
            self.assert_clause(node.assertion)
        if node.is_native:
            self.line("native;")
        for local in node.locals:
            self.var_decl(local)
        if node.body is not None:
            self.line("begin")
            self.depth += 1
            self.statements(node.body)
            self.depth -= 1
            self.line("end")
        self.depth -= 1

    def assert_clause(self, node: AssertClause) -> None:
        self.line("assert")
        self.depth += 1
        if node.before is not None:
            self.line(f"before {format_expr(node.before)};")
        for var in node.vars:
            self.statement(var)
        if node.after is not None:
            self.line(f"after {format_expr(node.after)};")
        self.depth -= 1
        self.line("end")

    # -- statements -----------------------------------------------------

    def statements(self, stmts) -> None:
        for stmt in stmts:
            self.statement(stmt)

    def block(self, node: Block, head: str) -> None:
        if node.braced:
            self.line(head)
            self.line("begin")
            self.depth += 1
            self.statements(node.stmts)
            self.depth -= 1
            self.line("end")
        else:
            self.line(head)
            self.depth += 1
            self.statements(node.stmts)
            self.depth -= 1

    def statement(self, node) -> None:
        if isinstance(node, Block):
            self.line("begin")
            self.depth += 1
            self.statements(node.stmts)
            self.depth -= 1
            self.line("end")
        elif isinstance(node, ExprStmt):
            self.line(format_expr(node.expr) + ";")
        elif isinstance(node, EmptyStmt):
            self.line(";")
        elif isinstance(node, InitStmt):
            args = ", ".join(format_expr(a) for a in node.args)
            self.line(f"{format_expr(node.target)}#init({args});")
        elif isinstance(node, ReturnStmt):
            self.line("return;" if node.value is None else f"return {format_expr(node.value)};")
        elif isinstance(node, IfStmt):
            self.line(f"if {format_expr(node.cond)}")
            self.line("then")
            self.depth += 1
            self.statements(node.then_body)
            self.depth -= 1
            if node.else_body is not None:
                self.line("else")
                self.depth += 1
                self.statements(node.else_body)
                self.depth -= 1
            self.line("endif")
        elif isinstance(node, WhileStmt):
            self.block(node.body, f"while {format_expr(node.cond)} do")
        elif isinstance(node, ForStmt):
            typed = f" : {format_type(node.var_type)}" if node.var_type is not None else ""
            self.block(node.body, f"for {node.var}{typed} = {format_expr(node.start)} to "
                                  f"{format_expr(node.stop)} do")
        elif isinstance(node, CaseStmt):
            self.line(f"case {format_expr(node.subject)} of")
            self.depth += 1
            for arm in node.arms:
                self.block(arm.body, ", ".join(format_expr(l) for l in arm.labels) + " :")
            if node.otherwise is not None:
                self.block(node.otherwise, "otherwise")
            self.depth -= 1
            self.line("end")
        elif isinstance(node, RepeatStmt):
            self.line("repeat")
            self.depth += 1
            self.statements(node.body)
            self.depth -= 1
            self.line(f"until {format_expr(node.cond)};")
        elif isinstance(node, LoopStmt):
            self.line("loop")
            self.depth += 1
            self.statements(node.body)
            self.depth -= 1
            self.line("end")
        elif isinstance(node, BreakStmt):
            self.line("break;")
        elif isinstance(node, VarStmt):
            init = f" = {format_expr(node.init)}" if node.init is not None else ""
            self.line(f"var {node.name} : {format_type(node.type)}{init};")
        elif isinstance(node, TryStmt):
            self.line(f"try({format_expr(node.catch)})")
            self.depth += 1
            self.statements(node.body)
            self.depth -= 1
            self.line("end")
        else:
            raise TypeError(f"not a statement node: {node!r}")


def pretty(node) -> str:
    """Render a program, declaration, statement or expression as source."""
    printer = Printer()
    if isinstance(node, Program):
        printer.program(node)
    elif isinstance(node, ClassDecl):
        printer.class_decl(node)
    elif isinstance(node, ObjectDecl):
        printer.object_decl(node)
    elif isinstance(node, ShellDecl):
        printer.shell_decl(node)
    elif isinstance(node, MethodDecl):
        printer.method(node)
    elif isinstance(node, (ExprStmt, Block, IfStmt, WhileStmt, ForStmt, CaseStmt, RepeatStmt,
                           LoopStmt, TryStmt, ReturnStmt, VarStmt, InitStmt, BreakStmt, EmptyStmt)):
        printer.statement(node)
    else:
        return format_expr(node)
    return printer.text()
