"""
Recursive-descent parser for Green.

One method per grammar rule. Expressions climb the operator table from
assignment (lowest) to postfix (highest); shifts and comparisons do not
chain. Errors are collected and the parser resynchronizes at statement,
member and declaration boundaries, so one run reports many problems.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .diagnostics import Category, Diagnostic, ParseError, Span, error
from .lexer import LITERAL_KINDS, Token, TokenKind, tokenize
from .syntax import (
    ArrayInit, ArrayType, AssertClause, Assign, Binary, Block, BreakStmt, CaseArm, CaseStmt,
    ClassDecl, ClassObjectType, ConstDecl, ConstItem, EmptyStmt, EnumDecl, EnumItem, ExceptionExpr,
    Expr, ExprStmt, ForStmt, GenericType, IfStmt, Index, InitStmt, Literal, LoopStmt, MethodDecl,
    Name, NamedType, NilLit, ObjectDecl, Param, Paren, Program, RepeatStmt, ResultExpr, ReturnStmt,
    SelfExpr, Send, ShellDecl, Stmt, SuperExpr, TryStmt, TypeExpr, TypeNode, Unary, VarDecl,
    VarStmt, WhileStmt,
)

logger = logging.getLogger(__name__)

BASIC_TYPES = frozenset({"boolean", "byte", "char", "double", "integer", "long", "real"})

RELATIONS = ("==", "<>", "<", "<=", ">", ">=")
SHIFTS = ("<<", ">>")
UNARY_OPS = ("~", "+", "-", "++", "--")

# Tokens that end a statement list.
BLOCK_END = frozenset({"end", "endif", "else", "until", "otherwise"})
STATEMENT_START = frozenset({
    "if", "while", "for", "case", "repeat", "loop", "break", "return", "var", "try", "begin",
})
MEMBER_START = frozenset({"proc", "abstract", "public", "private", "subclass", "var", "const",
                          "enum", "end"})
DECL_START = frozenset({"class", "object", "shell", "abstract", "reflective"})


class _Failure(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _describe(token: Token) -> str:
    if token.kind is TokenKind.EOF:
        return "end of input"
    return f"'{token.lexeme}'"


class Parser:
    """Parses one token stream. ``prelude`` enables library-only forms."""

    def __init__(self, tokens: Sequence[Token], filename: str = "<input>", prelude: bool = False):
        if not tokens or tokens[-1].kind is not TokenKind.EOF:
            end = tokens[-1].span if tokens else Span()
            tokens = list(tokens) + [Token(TokenKind.EOF, "", Span(end.end(), 0, end.line, end.column))]
        self.tokens = list(tokens)
        self.filename = filename
        self.prelude = prelude
        self.pos = 0
        self.errors: List[Diagnostic] = []

    # -- token helpers --------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        index = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind is not TokenKind.EOF:
            self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        return self.tok.is_op(*ops)

    def at_kw(self, *words: str) -> bool:
        return self.tok.is_kw(*words)

    def at_eof(self) -> bool:
        return self.tok.kind is TokenKind.EOF

    def fail(self, message: str, token: Optional[Token] = None, code: str = "syntax") -> _Failure:
        token = token or self.tok
        return _Failure(error(f"parse-{code}", message, token.span, Category.PARSE, self.filename))

    def report(self, message: str, token: Optional[Token] = None, code: str = "syntax") -> None:
        self.errors.append(self.fail(message, token, code).diagnostic)

    def expected(self, *what: str) -> _Failure:
        wanted = ", ".join(what)
        return self.fail(f"expected {wanted}; found {_describe(self.tok)}")

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.expected(f"'{op}'")
        return self.advance()

    def expect_kw(self, word: str) -> Token:
        if not self.at_kw(word):
            raise self.expected(f"'{word}'")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.tok.kind is not TokenKind.IDENT:
            raise self.expected(what)
        return self.advance()

    def span_from(self, start: Token) -> Span:
        last = self.tokens[self.pos - 1] if self.pos > 0 else start
        if last.span.offset < start.span.offset:
            return start.span
        return start.span.cover(last.span)

    # -- recovery -------------------------------------------------------

    def _sync(self, stop: Callable[[Token], bool], consume_semicolon: bool = True) -> None:
        start = self.pos
        while not self.at_eof():
            if consume_semicolon and self.at_op(";"):
                self.advance()
                return
            if stop(self.tok) and self.pos > start:
                return
            self.advance()

    def _recover(self, failure: _Failure, stop: Callable[[Token], bool],
                 consume_semicolon: bool = True) -> None:
        self.errors.append(failure.diagnostic)
        self._sync(stop, consume_semicolon)

    # -- program --------------------------------------------------------

    def parse_program(self) -> Program:
        start = self.tok
        decls = []
        while not self.at_eof():
            try:
                decls.append(self.parse_declaration())
            except _Failure as failure:
                self._recover(failure, lambda t: t.kind is TokenKind.KEYWORD and t.text in DECL_START,
                              consume_semicolon=False)
        if not decls and not self.errors:
            self.report("a program needs at least one declaration", code="empty")
        return Program(decls, span=self.span_from(start))

    def parse_declaration(self) -> Union[ClassDecl, ObjectDecl, ShellDecl]:
        if self.at_kw("object"):
            return self.parse_object()
        if self.at_kw("shell"):
            return self.parse_shell()
        if self.at_kw("abstract", "reflective", "class"):
            return self.parse_class()
        raise self.expected("'class'", "'object'", "'shell class'")

    def parse_class(self) -> ClassDecl:
        start = self.tok
        is_abstract = is_reflective = False
        if self.at_kw("abstract"):
            self.advance()
            is_abstract = True
        if self.at_kw("reflective"):
            self.advance()
            is_reflective = True
        self.expect_kw("class")
        name = self._class_name()
        if self.at_op("("):
            raise self.fail("parameterized classes are not supported", code="unsupported")
        superclass = None
        if self.at_kw("subclassOf"):
            self.advance()
            superclass = self._class_name()
        decl = ClassDecl(name, superclass, is_abstract, is_reflective)
        self._class_body(decl)
        self.expect_kw("end")
        decl.span = self.span_from(start)
        return decl

    def _class_name(self) -> str:
        if self.prelude and self.tok.kind is TokenKind.KEYWORD and self.tok.text in BASIC_TYPES:
            return self.advance().text
        return self.expect_ident("class name").lexeme

    def _class_body(self, decl: Union[ClassDecl, ShellDecl]) -> None:
        """Init methods, then public:, subclass: and private: sections."""
        order = {"public": 1, "subclass": 2, "private": 3}
        seen: List[str] = []
        section = "init"
        while not self.at_kw("end") and not self.at_eof():
            try:
                if self.at_kw(*order) and self.peek().is_op(":"):
                    word = self.advance()
                    self.advance()
                    if word.text in seen:
                        self.report(f"duplicate '{word.text}:' section", word, "section")
                    elif seen and order[seen[-1]] > order[word.text]:
                        self.report("sections must appear in the order init, public, subclass, private",
                                    word, "section")
                    seen.append(word.text)
                    section = word.text
                    continue
                if self.at_kw("var"):
                    if section != "private":
                        self.report("instance variables may only be declared in the private section",
                                    code="section")
                    decl.private.extend(self.parse_var_section(allow_init=False))
                    continue
                if self.at_kw("const", "enum"):
                    raise self.fail("constants can only be declared in class objects", code="const")
                if not self.at_kw("proc", "abstract"):
                    raise self.expected("'proc'", "a section label", "'end'")
                method = self.parse_method()
                if method.name == "init":
                    if section != "init":
                        self.report("init methods must come before the public section",
                                    code="section")
                    decl.inits.append(method)
                elif section in ("init", "public"):
                    if section == "init":
                        self.report("methods other than init must be inside a section", code="section")
                    decl.public.append(method)
                elif section == "subclass":
                    decl.subclass.append(method)
                else:
                    decl.private.append(method)
            except _Failure as failure:
                self._recover(failure, lambda t: t.kind is TokenKind.KEYWORD and t.text in MEMBER_START)

    def parse_object(self) -> ObjectDecl:
        start = self.expect_kw("object")
        decl = ObjectDecl(self._class_name())
        if self.at_op("("):
            raise self.fail("parameterized class objects are not supported", code="unsupported")
        section = "init"
        while not self.at_kw("end") and not self.at_eof():
            try:
                if self.at_kw("public", "private") and self.peek().is_op(":"):
                    word = self.advance()
                    self.advance()
                    if section == word.text or (section == "private" and word.text == "public"):
                        self.report("class object sections must be init, public, private",
                                    word, "section")
                    section = word.text
                    continue
                if self.at_kw("subclass") and self.peek().is_op(":"):
                    raise self.fail("class objects have no subclass section", code="section")
                target = decl.private if section == "private" else decl.public
                if self.at_kw("var"):
                    if section != "private":
                        self.report("class object variables must be private", code="section")
                    target.extend(self.parse_var_section(allow_init=True))
                elif self.at_kw("const"):
                    target.append(self.parse_const())
                elif self.at_kw("enum"):
                    target.append(self.parse_enum())
                elif self.at_kw("proc", "abstract"):
                    method = self.parse_method()
                    if method.name == "init" and section == "init" and decl.init is None:
                        if method.params:
                            self.report("the init method of a class object takes no parameters",
                                        code="init")
                        decl.init = method
                    elif method.name == "init":
                        self.report("a class object has at most one init, before public:",
                                    code="init")
                    else:
                        if section == "init":
                            self.report("methods other than init must be inside a section",
                                        code="section")
                        target.append(method)
                else:
                    raise self.expected("'proc'", "'var'", "'const'", "'enum'", "'end'")
            except _Failure as failure:
                self._recover(failure, lambda t: t.kind is TokenKind.KEYWORD and t.text in MEMBER_START)
        self.expect_kw("end")
        decl.span = self.span_from(start)
        return decl

    def parse_shell(self) -> ShellDecl:
        start = self.expect_kw("shell")
        self.expect_kw("class")
        name = self.expect_ident("shell class name").lexeme
        self.expect_op("(")
        base = self.parse_type()
        self.expect_op(")")
        superclass = None
        if self.at_kw("subclassOf"):
            self.advance()
            superclass = self.expect_ident("shell class name").lexeme
        decl = ShellDecl(name, base, superclass)
        self._class_body(decl)
        self.expect_kw("end")
        decl.span = self.span_from(start)
        return decl

    # -- members --------------------------------------------------------

    def parse_var_section(self, allow_init: bool) -> List[VarDecl]:
        """``var`` followed by one or more ``a, b : T [= e];`` groups."""
        self.expect_kw("var")
        groups = [self._var_group(allow_init)]
        while self.tok.kind is TokenKind.IDENT and self.peek().is_op(",", ":"):
            groups.append(self._var_group(allow_init))
        return groups

    def _var_group(self, allow_init: bool) -> VarDecl:
        start = self.tok
        names = [self.expect_ident("variable name").lexeme]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_ident("variable name").lexeme)
        self.expect_op(":")
        type_ = self.parse_type()
        init = None
        if self.at_op("="):
            if not allow_init:
                raise self.fail("variables declared here cannot be initialized", code="var-init")
            self.advance()
            init = self.parse_init_value()
        self.expect_op(";")
        return VarDecl(names, type_, init, span=self.span_from(start))

    def parse_const(self) -> ConstDecl:
        start = self.expect_kw("const")
        items = [self._const_item()]
        while self.at_op(","):
            self.advance()
            items.append(self._const_item())
        self.expect_op(";")
        return ConstDecl(items, span=self.span_from(start))

    def _const_item(self) -> ConstItem:
        start = self.tok
        name = self.expect_ident("constant name").lexeme
        type_ = None
        if self.at_op(":"):
            self.advance()
            type_ = self.parse_type()
        self.expect_op("=")
        value = self.parse_or()
        return ConstItem(name, type_, value, span=self.span_from(start))

    def parse_enum(self) -> EnumDecl:
        start = self.expect_kw("enum")
        self.expect_op("(")
        items = []
        while True:
            item_start = self.tok
            name = self.expect_ident("enum constant").lexeme
            value = None
            if self.at_op("="):
                self.advance()
                value = self.parse_or()
            items.append(EnumItem(name, value, span=self.span_from(item_start)))
            if not self.at_op(","):
                break
            self.advance()
        self.expect_op(")")
        if self.at_op(";"):
            self.advance()
        return EnumDecl(items, span=self.span_from(start))

    def parse_method(self) -> MethodDecl:
        start = self.tok
        is_abstract = False
        if self.at_kw("abstract"):
            self.advance()
            is_abstract = True
        self.expect_kw("proc")
        if self.at_kw("init"):
            name = self.advance().text
        else:
            name = self.expect_ident("method name").lexeme
        self.expect_op("(")
        params: List[Param] = []
        if not self.at_op(")"):
            params.extend(self._param_group())
            while self.at_op(";"):
                self.advance()
                params.extend(self._param_group())
        self.expect_op(")")
        for param in params[:-1]:
            if param.variadic:
                self.report("a '...' parameter must be the last one", code="variadic")
        exception_type = None
        if self.at_op("(") and self.peek().is_kw("exception"):
            self.advance()
            self.advance()
            self.expect_op(":")
            exception_type = self.parse_type()
            self.expect_op(")")
        return_type = None
        if self.at_op(":"):
            self.advance()
            return_type = self.parse_type()
        method = MethodDecl(name, params, exception_type, return_type, is_abstract=is_abstract)
        if self.at_kw("assert"):
            method.assertion = self.parse_assert()
        if is_abstract:
            if name == "init":
                self.report("init methods cannot be abstract", start, "abstract")
            if self.at_op(";"):
                self.advance()
        elif self.prelude and self.tok.kind is TokenKind.IDENT and self.tok.lexeme == "native":
            self.advance()
            self.expect_op(";")
            method.is_native = True
        else:
            while self.at_kw("var"):
                method.locals.extend(self.parse_var_section(allow_init=False))
            self.expect_kw("begin")
            method.body = self.parse_statements()
            self.expect_kw("end")
        method.span = self.span_from(start)
        return method

    def _param_group(self) -> List[Param]:
        names = [self.expect_ident("parameter name")]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_ident("parameter name"))
        self.expect_op(":")
        variadic = False
        if self.at_op("..."):
            self.advance()
            variadic = True
        type_ = self.parse_type()
        if variadic and not isinstance(type_, ArrayType):
            self.report("a '...' parameter must have an array type", code="variadic")
        if variadic and len(names) > 1:
            self.report("only one parameter may be declared with '...'", code="variadic")
        return [Param(n.lexeme, type_, variadic, span=n.span) for n in names]

    def parse_assert(self) -> AssertClause:
        start = self.expect_kw("assert")
        before = after = None
        variables: List[VarStmt] = []
        if self.at_kw("before"):
            self.advance()
            before = self.parse_or()
            self.expect_op(";")
        while self.at_kw("var"):
            var_start = self.advance()
            name = self.expect_ident("variable name").lexeme
            self.expect_op(":")
            type_ = self.parse_type()
            self.expect_op("=")
            init = self.parse_init_value()
            self.expect_op(";")
            variables.append(VarStmt(name, type_, init, span=self.span_from(var_start)))
        if self.at_kw("after"):
            self.advance()
            after = self.parse_or()
            self.expect_op(";")
        self.expect_kw("end")
        return AssertClause(before, variables, after, span=self.span_from(start))

    # -- types ----------------------------------------------------------

    def parse_type(self) -> TypeNode:
        start = self.tok
        expanded = False
        if self.at_op("@"):
            self.advance()
            expanded = True
        token = self.tok
        if token.kind is TokenKind.KEYWORD and token.text in BASIC_TYPES:
            self.advance()
            type_: TypeNode = NamedType(token.text)
        elif token.is_kw("type"):
            self.advance()
            self.expect_op("(")
            name = self.expect_ident("class object name").lexeme
            self.expect_op(")")
            type_ = ClassObjectType(name)
        elif token.is_kw("array"):
            self.advance()
            self.expect_op("(")
            element = self.parse_type()
            self.expect_op(")")
            dims = 0
            sizes: List[Optional[Union[int, str]]] = []
            while self.at_op("["):
                self.advance()
                size: Optional[Union[int, str]] = None
                if self.tok.kind is TokenKind.INTEGER:
                    size = self.advance().value
                elif self.tok.kind is TokenKind.IDENT:
                    size = self.advance().lexeme
                self.expect_op("]")
                dims += 1
                sizes.append(size)
            if dims == 0:
                raise self.expected("'['")
            if all(s is None for s in sizes):
                sizes = []
            elif any(s is None for s in sizes):
                raise self.fail("either every dimension or none must be given", code="array-dims")
            type_ = ArrayType(element, dims, sizes)
        elif token.kind is TokenKind.IDENT:
            self.advance()
            if self.at_op(".") and self.peek().kind is TokenKind.IDENT and self.peek(2).is_op("("):
                self.advance()
                name = self.advance().lexeme
                self.expect_op("(")
                args = [self.parse_type()]
                while self.at_op(","):
                    self.advance()
                    args.append(self.parse_type())
                self.expect_op(")")
                type_ = GenericType(token.lexeme, name, args)
            elif self.at_op("("):
                raise self.fail("parameterized classes are not supported", code="unsupported")
            else:
                type_ = NamedType(token.lexeme)
        else:
            raise self.expected("a type")
        type_.expanded = expanded
        type_.span = self.span_from(start)
        return type_

    # -- statements -----------------------------------------------------

    def parse_statements(self) -> List[Stmt]:
        stmts: List[Stmt] = []
        while not self.at_eof() and not (self.tok.kind is TokenKind.KEYWORD and self.tok.text in BLOCK_END):
            try:
                stmts.append(self.parse_statement())
            except _Failure as failure:
                self._recover(failure, lambda t: t.kind is TokenKind.KEYWORD
                              and (t.text in STATEMENT_START or t.text in BLOCK_END))
        return stmts

    def parse_unstat_block(self) -> Block:
        start = self.tok
        if self.at_kw("begin"):
            self.advance()
            stmts = self.parse_statements()
            self.expect_kw("end")
            return Block(stmts, True, span=self.span_from(start))
        return Block([self.parse_statement()], False, span=self.span_from(start))

    def parse_statement(self) -> Stmt:
        start = self.tok
        if self.at_op(";"):
            self.advance()
            return EmptyStmt(span=start.span)
        if self.at_kw("begin"):
            return self.parse_unstat_block()
        if self.at_kw("if"):
            return self.parse_if()
        if self.at_kw("while"):
            self.advance()
            cond = self.parse_expr()
            self.expect_kw("do")
            body = self.parse_unstat_block()
            return WhileStmt(cond, body, span=self.span_from(start))
        if self.at_kw("for"):
            return self.parse_for()
        if self.at_kw("case"):
            return self.parse_case()
        if self.at_kw("repeat"):
            self.advance()
            body = self.parse_statements()
            self.expect_kw("until")
            cond = self.parse_expr()
            self.expect_op(";")
            return RepeatStmt(body, cond, span=self.span_from(start))
        if self.at_kw("loop"):
            self.advance()
            body = self.parse_statements()
            self.expect_kw("end")
            return LoopStmt(body, span=self.span_from(start))
        if self.at_kw("break"):
            self.advance()
            self.expect_op(";")
            return BreakStmt(span=self.span_from(start))
        if self.at_kw("return"):
            self.advance()
            value = None if self.at_op(";") else self.parse_expr()
            self.expect_op(";")
            return ReturnStmt(value, span=self.span_from(start))
        if self.at_kw("var"):
            return self.parse_var_stmt()
        if self.at_kw("try"):
            self.advance()
            self.expect_op("(")
            catch = self.parse_expr()
            self.expect_op(")")
            body = self.parse_statements()
            self.expect_kw("end")
            return TryStmt(catch, body, span=self.span_from(start))
        expr = self.parse_expr()
        if self.at_op("#"):
            self.advance()
            self.expect_kw("init")
            args = self.parse_args()
            self.expect_op(";")
            return InitStmt(expr, args, span=self.span_from(start))
        self.expect_op(";")
        return ExprStmt(expr, span=self.span_from(start))

    def parse_if(self) -> IfStmt:
        start = self.expect_kw("if")
        cond = self.parse_or()
        self.expect_kw("then")
        then_body = self.parse_statements()
        else_body = None
        if self.at_kw("else"):
            self.advance()
            else_body = self.parse_statements()
        self.expect_kw("endif")
        return IfStmt(cond, then_body, else_body, span=self.span_from(start))

    def parse_for(self) -> ForStmt:
        start = self.expect_kw("for")
        var = self.expect_ident("loop variable").lexeme
        var_type = None
        if self.at_op(":"):
            self.advance()
            var_type = self.parse_type()
        self.expect_op("=")
        first = self.parse_or()
        self.expect_kw("to")
        last = self.parse_or()
        self.expect_kw("do")
        body = self.parse_unstat_block()
        return ForStmt(var, var_type, first, last, body, span=self.span_from(start))

    def parse_case(self) -> CaseStmt:
        start = self.expect_kw("case")
        subject = self.parse_expr()
        self.expect_kw("of")
        arms: List[CaseArm] = []
        otherwise = None
        while not self.at_kw("end", "otherwise") and not self.at_eof():
            arm_start = self.tok
            labels = [self.parse_unary()]
            while self.at_op(","):
                self.advance()
                labels.append(self.parse_unary())
            self.expect_op(":")
            body = self.parse_unstat_block()
            arms.append(CaseArm(labels, body, span=self.span_from(arm_start)))
        if not arms:
            raise self.expected("a case label")
        if self.at_kw("otherwise"):
            self.advance()
            otherwise = self.parse_unstat_block()
        self.expect_kw("end")
        return CaseStmt(subject, arms, otherwise, span=self.span_from(start))

    def parse_var_stmt(self) -> VarStmt:
        start = self.expect_kw("var")
        name = self.expect_ident("variable name").lexeme
        self.expect_op(":")
        type_ = self.parse_type()
        init = None
        if self.at_op("="):
            self.advance()
            init = self.parse_init_value()
        if self.at_op(","):
            raise self.fail("'var' in a statement declares a single variable", code="var-single")
        self.expect_op(";")
        return VarStmt(name, type_, init, span=self.span_from(start))

    # -- expressions ----------------------------------------------------

    def parse_init_value(self) -> Expr:
        if self.at_op("#") and self.peek().is_op("("):
            return self.parse_array_init()
        return self.parse_expr()

    def parse_array_init(self) -> ArrayInit:
        start = self.expect_op("#")
        self.expect_op("(")
        items = [self.parse_or()]
        while self.at_op(","):
            self.advance()
            items.append(self.parse_or())
        self.expect_op(")")
        return ArrayInit(items, span=self.span_from(start))

    def parse_expr(self) -> Expr:
        start = self.tok
        left = self.parse_or()
        if self.at_op("="):
            eq = self.advance()
            if not isinstance(left, (Name, Index, Send, SelfExpr, ResultExpr)) or (
                    isinstance(left, Send) and left.args is not None):
                raise self.fail("the left side of '=' must be a variable", eq, "assign-target")
            value = self.parse_init_value()
            return Assign(left, value, span=self.span_from(start))
        return left

    def _left_assoc(self, ops: Tuple[str, ...], operand: Callable[[], Expr],
                    keyword: bool = False) -> Expr:
        start = self.tok
        left = operand()
        while (self.at_kw(*ops) if keyword else self.at_op(*ops)):
            op = self.advance().text
            right = operand()
            left = Binary(op, left, right, span=self.span_from(start))
        return left

    def _non_assoc(self, ops: Tuple[str, ...], operand: Callable[[], Expr]) -> Expr:
        start = self.tok
        left = operand()
        if self.at_op(*ops):
            op = self.advance().text
            right = operand()
            left = Binary(op, left, right, span=self.span_from(start))
            if self.at_op(*ops):
                raise self.fail(f"non-associative operator chained: '{op}' followed by "
                                f"'{self.tok.text}'", code="non-assoc")
        return left

    def parse_or(self) -> Expr:
        return self._left_assoc(("or",), self.parse_xor, keyword=True)

    def parse_xor(self) -> Expr:
        return self._left_assoc(("xor",), self.parse_and, keyword=True)

    def parse_and(self) -> Expr:
        return self._left_assoc(("and",), self.parse_rel, keyword=True)

    def parse_rel(self) -> Expr:
        return self._non_assoc(RELATIONS, self.parse_add)

    def parse_add(self) -> Expr:
        return self._left_assoc(("+", "-"), self.parse_mult)

    def parse_mult(self) -> Expr:
        return self._left_assoc(("*", "/", "%"), self.parse_bitor)

    def parse_bitor(self) -> Expr:
        return self._left_assoc(("|",), self.parse_bitxor)

    def parse_bitxor(self) -> Expr:
        return self._left_assoc(("^",), self.parse_bitand)

    def parse_bitand(self) -> Expr:
        return self._left_assoc(("&",), self.parse_shift)

    def parse_shift(self) -> Expr:
        return self._non_assoc(SHIFTS, self.parse_unary)

    def parse_unary(self) -> Expr:
        start = self.tok
        if self.at_op(*UNARY_OPS) or self.at_kw("not"):
            op = self.advance().text
            operand = self.parse_unary()
            return Unary(op, operand, span=self.span_from(start))
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        start = self.tok
        expr = self.parse_primary()
        while True:
            if self.at_op("["):
                self.advance()
                index = self.parse_expr()
                self.expect_op("]")
                expr = Index(expr, index, span=self.span_from(start))
            elif self.at_op("."):
                self.advance()
                if self.at_kw("init"):
                    name = self.advance().text
                else:
                    name = self.expect_ident("method name").lexeme
                args = self.parse_args() if self.at_op("(") else None
                expr = Send(expr, name, args, span=self.span_from(start))
            else:
                return expr

    def parse_args(self) -> List[Expr]:
        self.expect_op("(")
        args: List[Expr] = []
        if not self.at_op(")"):
            args.append(self.parse_init_value())
            while self.at_op(","):
                self.advance()
                args.append(self.parse_init_value())
        self.expect_op(")")
        return args

    def parse_primary(self) -> Expr:
        token = self.tok
        if token.kind in LITERAL_KINDS:
            self.advance()
            return Literal(token.kind.value, token.value, span=token.span)
        if token.is_op("#"):
            if self.peek().kind is TokenKind.CHAR:
                self.advance()
                char = self.advance()
                return Literal("char", char.value, True, span=self.span_from(token))
            if self.peek().is_op("("):
                return self.parse_array_init()
            raise self.fail("'#' must be followed by a character constant or '('")
        if token.kind is TokenKind.IDENT:
            self.advance()
            if self.at_op("("):
                args = self.parse_args()
                return Send(None, token.lexeme, args, span=self.span_from(token))
            return Name(token.lexeme, span=token.span)
        if token.kind is TokenKind.KEYWORD:
            word = token.text
            if word == "self":
                self.advance()
                return SelfExpr(span=token.span)
            if word == "super":
                self.advance()
                return SuperExpr(span=token.span)
            if word == "result":
                self.advance()
                return ResultExpr(span=token.span)
            if word == "nil":
                self.advance()
                return NilLit(span=token.span)
            if word == "exception":
                self.advance()
                return ExceptionExpr(span=token.span)
            if word == "init" and self.peek().is_op("("):
                self.advance()
                args = self.parse_args()
                return Send(None, "init", args, span=self.span_from(token))
            if word in BASIC_TYPES or word in ("array", "type"):
                type_ = self.parse_type()
                return TypeExpr(type_, span=type_.span)
        if token.is_op("("):
            self.advance()
            inner = self.parse_expr()
            self.expect_op(")")
            return Paren(inner, span=self.span_from(token))
        raise self.expected("an expression")


def _finish(parser: Parser, result):
    if parser.errors:
        raise ParseError(parser.errors)
    return result


def parse_program(tokens: Sequence[Token], filename: str = "<input>", prelude: bool = False) -> Program:
    """Parse a whole program. Raises ParseError listing every syntax error."""
    parser = Parser(tokens, filename, prelude)
    program = parser.parse_program()
    logger.debug("%s: %d declarations", filename, len(program.decls))
    return _finish(parser, program)


def parse_expression(tokens: Sequence[Token], filename: str = "<input>") -> Expr:
    parser = Parser(tokens, filename)
    try:
        expr = parser.parse_expr()
        if not parser.at_eof():
            raise parser.expected("end of expression")
    except _Failure as failure:
        parser.errors.append(failure.diagnostic)
        raise ParseError(parser.errors)
    return _finish(parser, expr)


def parse_source(source: str, filename: str = "<input>", prelude: bool = False) -> Program:
    return parse_program(tokenize(source, filename), filename, prelude)


def parse_expression_source(source: str) -> Expr:
    return parse_expression(tokenize(source))


def diagnostics_for(tokens: Iterable[Token], filename: str = "<input>") -> List[Diagnostic]:
    """Parse and return diagnostics instead of raising; never throws on bad input."""
    parser = Parser(list(tokens), filename)
    try:
        parser.parse_program()
    except _Failure as failure:
        parser.errors.append(failure.diagnostic)
    return parser.errors
