"""
The tree-walking interpreter.

``run_program`` creates the class objects, runs their ``init`` methods,
pushes the default catch object and sends ``run`` to the entry class object.
Method sends are dispatched through the shells of the receiver, then the
extensions of its class, then the class itself.
"""

from __future__ import annotations

import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from ..checker import Call, CheckedProgram
from ..config import GreenSettings, get_settings
from ..diagnostics import InternalError, UsageError
from ..symbols import ClassKind, ClassSymbol, MethodSymbol, VarSymbol
from ..syntax import (
    ArrayInit, ArrayType, Assign, Binary, Block, BreakStmt, CaseStmt, EmptyStmt, ExceptionExpr,
    ExprStmt, ForStmt, IfStmt, Index, InitStmt, Literal, LoopStmt, Name, NilLit, Paren,
    RepeatStmt, ResultExpr, ReturnStmt, SelfExpr, Send, SuperExpr, TryStmt, TypeExpr, Unary, VarStmt,
    WhileStmt,
)
from ..typesys import UNWRAPPED, WRAPPERS, Kind, Signature, TypeDescriptor
from . import numeric
from .arrays import ArrayFault, ArrayValue, element_type, new_array
from .catching import CatchStack, find_handler
from .meta import MetaState
from .natives import NATIVES, InputReader
from .reflection import Mirrors
from .values import (
    POISONED, BreakSignal, ClassObj, Frame, GreenExit, GreenUnwind, IterValue, Obj, ReturnSignal,
    ShellInstance, ShellPrototype, StackValue, same,
)

logger = logging.getLogger(__name__)

PYTHON_FRAMES_PER_CALL = 30


class Interpreter:
    """Runs one checked program. Not reusable across runs."""

    def __init__(self, program: CheckedProgram, settings: Optional[GreenSettings] = None,
                 stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None,
                 stderr: Optional[TextIO] = None):
        self.program = program
        self.model = program.model
        self.table = self.model.table
        self.settings = settings or get_settings()
        self.stdin = stdin if stdin is not None else sys.stdin
        self.stdout = stdout if stdout is not None else sys.stdout
        self.stderr = stderr if stderr is not None else sys.stderr
        self.input = InputReader(self.stdin)
        self.objects: Dict[str, ClassObj] = {}
        self.catches = CatchStack()
        self.calls: List[Frame] = []
        self.end_list: List[Any] = []
        self.meta = MetaState(self)
        self.mirrors = Mirrors(self)
        # static type of the basic receiver of the native being run
        self._lookups: Dict[Tuple[int, int], MethodSymbol] = {}
        self._string = self.model.classes["String"]
        self._eval: Dict[type, Callable[[Any, Frame], Any]] = {
            Literal: self._e_literal, NilLit: self._e_nil, SelfExpr: self._e_self,
            SuperExpr: self._e_self, ResultExpr: self._e_result, ExceptionExpr: self._e_exception,
            Name: self._e_name, TypeExpr: self._e_type, Paren: self._e_paren, Unary: self._e_unary,
            Binary: self._e_binary, Index: self._e_index, ArrayInit: self._e_array_init,
            Send: self._e_send,
        }
        self._exec: Dict[type, Callable[[Any, Frame], None]] = {
            Block: self._x_block, ExprStmt: self._x_expr, EmptyStmt: self._x_empty,
            InitStmt: self._x_init, ReturnStmt: self._x_return, IfStmt: self._x_if,
            WhileStmt: self._x_while, RepeatStmt: self._x_repeat, LoopStmt: self._x_loop,
            BreakStmt: self._x_break, ForStmt: self._x_for, CaseStmt: self._x_case,
            VarStmt: self._x_var, TryStmt: self._x_try,
        }

    # -- program --------------------------------------------------------

    def run(self, entry: str, args: Sequence[str] = ()) -> int:
        """Run ``entry``'s ``run`` method; returns the exit status."""
        method, problem = self.program.entry(entry)
        if method is None:
            raise UsageError(problem)
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, PYTHON_FRAMES_PER_CALL * self.settings.max_call_depth + 2000))
        logger.debug("running %s::run", entry)
        try:
            status = self._guarded(lambda: self._start(method, args))
            finish = self._guarded(self._run_end_list)
            if finish is not None:
                status = finish
        finally:
            sys.setrecursionlimit(limit)
            self.stdout.flush()
            self.stderr.flush()
        status = 0 if status is None else status
        logger.debug("program ended with status %d", status)
        return status

    def _start(self, method: MethodSymbol, args: Sequence[str]) -> None:
        self._create_class_objects()
        default = self.model.classes.get("HCatchUncheckedException")
        if default is not None:
            self.catches.push(self.new_object(default.name), 0)
        for obj in list(self.objects.values()):
            for init in obj.cls.inits:
                if init.arity == 0:
                    self.invoke(init, obj, [])
        this = self.objects[method.owner.name]
        params: List[Any] = []
        if method.arity == 1:
            params.append(ArrayValue(method.params[0], list(args)))
        self.invoke(method, this, params)

    def _run_end_list(self) -> None:
        while self.end_list:
            function = self.end_list.pop(0)
            self.send(function, "exec", [])

    def _guarded(self, action: Callable[[], None]) -> Optional[int]:
        try:
            action()
            return None
        except GreenExit as finished:
            return finished.status
        except GreenUnwind as unwind:
            return self._bottom_handler(unwind)
        except RecursionError:
            return self._uncaught("StackOverflowException")
        except MemoryError:
            return self._uncaught("OutOfMemoryException")

    def _bottom_handler(self, unwind: GreenUnwind) -> int:
        """The default catch object handles what no try statement did."""
        self.calls.clear()
        self.catches.truncate(0)
        try:
            self._handle(unwind)
        except GreenExit as finished:
            return finished.status
        except RecursionError:
            return self._uncaught("StackOverflowException")
        return 1

    def _uncaught(self, name: str) -> int:
        self.stderr.write(f"Exception {name} not caught\n")
        return 1

    def _create_class_objects(self) -> None:
        for name, symbol in self.model.objects.items():
            self.objects[name] = ClassObj(symbol, [])
        for obj in self.objects.values():
            obj.fields = [self.initial_field(var) for var in obj.cls.all_fields()]
        for obj in self.objects.values():
            frame = Frame(None, obj)
            for var in obj.cls.fields:
                if var.init is not None:
                    obj.fields[var.slot] = self.eval(var.init, frame)

    # -- values ---------------------------------------------------------

    def class_of(self, value: Any) -> Optional[ClassSymbol]:
        if isinstance(value, Obj):
            return value.cls
        if isinstance(value, str):
            return self._string
        if isinstance(value, ArrayValue):
            return self.model.class_of(self.table.array_base(value.descriptor))
        if isinstance(value, (IterValue, StackValue, ShellPrototype)):
            return self.model.classes["Any"]
        if value is None:
            return None
        return self.model.classes.get(self.basic_kind(value))

    def basic_kind(self, value: Any, kind: Optional[str] = None) -> str:
        """Kind of a plain value; ``kind`` tells byte, integer and long apart."""
        if isinstance(value, (bool, np.bool_)):
            return "boolean"
        if isinstance(value, str):
            return "char"
        if isinstance(value, np.float32):
            return "real"
        if isinstance(value, float):
            return "double"
        return kind if kind in ("byte", "integer", "long") else "integer"

    def receiver_kind(self, this: Any) -> str:
        """Kind of the receiver of the running native method."""
        frame = self.calls[-1] if self.calls else None
        return self.basic_kind(this, frame.kind if frame is not None else None)

    def descriptor_of(self, value: Any) -> TypeDescriptor:
        if value is None:
            return self.table.nil
        if isinstance(value, (ArrayValue, IterValue, StackValue)):
            return value.descriptor
        if isinstance(value, ShellPrototype):
            return self.table["Any"]
        if isinstance(value, (Obj, str)):
            return self.class_of(value).descriptor
        return self.table[self.basic_kind(value)]

    def zero(self, descriptor: TypeDescriptor) -> Any:
        return numeric.zero(descriptor.name) if descriptor.is_basic else None

    def allocate(self, cls: ClassSymbol) -> Obj:
        """A new object with zero fields and allocated expanded variables; no init runs."""
        if cls.name == "DynString":
            return Obj(cls, [], [])
        return Obj(cls, [self.initial_field(var) for var in cls.all_fields()])

    def initial_field(self, var: VarSymbol) -> Any:
        if not var.expanded:
            return self.zero(var.type)
        return self.expanded_value(var.type, var.decl.type if var.decl is not None else None,
                                   var.array_sizes, var.owner)

    def expanded_value(self, descriptor: TypeDescriptor, node: Any, sizes: Sequence[Any],
                       owner: ClassSymbol) -> Any:
        if descriptor.is_basic:
            return self.zero(descriptor)
        if descriptor.is_array:
            if not sizes:
                return None
            counts = [self._size(size, owner) for size in sizes if size is not None]
            if not counts:
                return None
            element = element_type(self.table, descriptor)
            inner = node.element if isinstance(node, ArrayType) else None
            if inner is not None and inner.expanded and descriptor.dims == len(counts):
                return self.new_array(descriptor, counts, True)
            return new_array(self.table, descriptor, counts, lambda: self.zero(element))
        cls = self.model.class_of(descriptor)
        if cls is None or cls.kind is not ClassKind.CLASS:
            return None
        return self.allocate(cls)

    def _size(self, size: Any, owner: ClassSymbol) -> int:
        if isinstance(size, int):
            return size
        holder = owner if owner.is_object else owner.class_object
        const = holder.consts.get(size) if holder is not None else None
        return const.value if const is not None else 0

    def new_array(self, descriptor: TypeDescriptor, sizes: Sequence[int], expanded: bool) -> ArrayValue:
        leaf = descriptor.element
        if expanded and leaf.kind is Kind.CLASS and len(sizes) == descriptor.dims:
            cls = self.model.class_of(leaf)
            make = lambda: self.allocate(cls)
        else:
            make = lambda: self.zero(leaf)
        try:
            return new_array(self.table, descriptor, sizes, make)
        except ArrayFault as fault:
            self.throw_new("IllegalArrayIndexException", fault.index, fault.array)

    def box(self, value: Any, kind: Optional[str] = None) -> Obj:
        wrapper = WRAPPERS[kind or self.basic_kind(value)]
        return Obj(self.model.classes[wrapper], [value])

    def unbox(self, value: Any) -> Any:
        if value is None:
            self.throw_new("MessageSendToNilException")
        return value.fields[0]

    def box_for(self, value: Any, descriptor: TypeDescriptor) -> Any:
        """``value`` as an Any: basic values are wrapped."""
        return self.box(value, descriptor.name) if descriptor.is_basic else value

    def unbox_for(self, value: Any, descriptor: TypeDescriptor) -> Any:
        if descriptor.is_basic:
            if isinstance(value, Obj) and value.cls.name == WRAPPERS[descriptor.name]:
                return value.fields[0]
            return self.zero(descriptor)
        return value

    def is_instance(self, value: Any, descriptor: TypeDescriptor) -> bool:
        """Can ``value`` be stored where ``descriptor`` is expected?"""
        if descriptor.is_basic:
            return isinstance(value, Obj) and value.cls.name == WRAPPERS[descriptor.name]
        if value is None:
            return True
        return self.table.is_subtype(self.descriptor_of(value), descriptor)

    def class_object(self, descriptor: TypeDescriptor) -> Optional[ClassObj]:
        symbol = self.model.class_of(descriptor)
        return self.objects.get(symbol.name) if symbol is not None else None

    def to_string(self, value: Any) -> str:
        if value is None:
            return "nil"
        if isinstance(value, str):
            return value
        if isinstance(value, (Obj, ArrayValue, IterValue, StackValue, ShellPrototype)):
            text = self.send(value, "toString", [])
            return text if isinstance(text, str) else ""
        return numeric.format_value(self.basic_kind(value), value)

    def new_object(self, class_name: str, *args: Any) -> Any:
        """Create an object with the init method taking ``len(args)`` parameters."""
        cls = self.model.classes[class_name]
        inits = [m for m in cls.inits if m.arity == len(args)]
        if not inits:
            if args:
                raise InternalError(f"{class_name} has no init with {len(args)} parameters")
            return self.allocate(cls)
        return self.instantiate(cls, inits[0], list(args))

    def instantiate(self, cls: ClassSymbol, init: MethodSymbol, args: List[Any]) -> Any:
        if cls.name == "String":
            return NATIVES[init.native](self, None, args)
        obj = self.allocate(cls)
        self.invoke(init, obj, args)
        return obj

    # -- exceptions -----------------------------------------------------

    def throw_new(self, class_name: str, *args: Any):
        self.throw(self.new_object(class_name, *args))

    def throw(self, exception: Any):
        if exception is None:
            self.throw_new("MessageSendToNilException")
        found = find_handler(self.catches, exception.cls.descriptor, self.class_of, self.model.exception_match)
        if found is None:
            raise GreenExit(self._uncaught(exception.cls.name))
        index, handler = found
        raise GreenUnwind(self.catches[index], exception, handler)

    def _handle(self, unwind: GreenUnwind) -> None:
        catch = unwind.entry.catch
        handled = self.class_object(unwind.handler.params[0])
        self.send(catch, "set", [unwind.exception, handled])
        self.invoke(unwind.handler, catch, [unwind.exception])

    # -- sends ----------------------------------------------------------

    def lookup(self, cls: ClassSymbol, sig: Signature) -> MethodSymbol:
        key = (id(cls), id(sig))
        method = self._lookups.get(key)
        if method is not None:
            return method
        slot = cls.vtable().get((sig.name, sig.arity), [])
        method = _matching(slot, sig, self.table)
        if method is None:
            raise InternalError(f"method {sig} not found in class {cls.name}")
        self._lookups[key] = method
        return method

    def send(self, this: Any, name: str, args: List[Any]) -> Any:
        """Send by name; for the run-time system's own messages."""
        if this is None:
            self.throw_new("MessageSendToNilException")
        cls = self.class_of(this)
        slot = cls.vtable().get((name, len(args))) if cls is not None else None
        if not slot:
            raise InternalError(f"{cls.name if cls else this!r} has no method {name}/{len(args)}")
        return self.send_virtual(this, slot[-1].signature, args)

    def send_virtual(self, this: Any, sig: Signature, args: List[Any],
                     static: Optional[TypeDescriptor] = None) -> Any:
        if this is None:
            self.throw_new("MessageSendToNilException")
        if isinstance(this, Obj):
            layers = self.meta.layers(this)
            if layers:
                return self.dispatch(this, sig, args, 0, layers)
            return self.invoke(self.lookup(this.cls, sig), this, args)
        if isinstance(this, str) and (static is None or not static.is_basic):
            return self.invoke(self.lookup(self._string, sig), this, args)
        if isinstance(this, (ArrayValue, IterValue, StackValue)) and sig.method is None:
            return self.builtin(this, sig.name, args)
        if static is not None and static.is_basic:
            return self.invoke(sig.method, this, args, kind=static.name)
        return self.invoke(sig.method, this, args)

    def dispatch(self, this: Obj, sig: Signature, args: List[Any], start: int,
                 layers: Optional[List[Any]] = None) -> Any:
        """Offer a message to the shell and extension layers from ``start`` down, then the class."""
        if layers is None:
            layers = self.meta.layers(this)
        for index in range(start, len(layers)):
            layer = layers[index]
            method = self.meta.shell_method(layer.shell, sig)
            if method is not None:
                return self.invoke(method, this, args, self.meta.holder(layer, this), index)
            intercept = self.meta.intercept(layer.shell)
            if intercept is not None:
                return self._intercept(intercept, this, sig, args, layer, index)
        return self.invoke(self.lookup(this.cls, sig), this, args)

    def _intercept(self, intercept: MethodSymbol, this: Obj, sig: Signature, args: List[Any],
                   layer: Any, index: int) -> Any:
        mi = self.mirrors.bound_method(this, sig, index + 1)
        packed = [self.box_for(value, param) for value, param in zip(args, sig.params)]
        vet = ArrayValue(self.table.array_of(self.table["Any"], 1), packed)
        result = self.invoke(intercept, this, [mi, vet], self.meta.holder(layer, this), index)
        if sig.result is None:
            return None
        if intercept.result is None:
            return self.zero(sig.result)
        return self.unbox_for(result, sig.result)

    def builtin(self, this: Any, name: str, args: List[Any]) -> Any:
        """Methods of arrays, iterators and stacks that have no Green declaration."""
        if isinstance(this, ArrayValue):
            if name == "fill":
                this.fill(args[0])
                return None
            if name == "reset":
                this.reset(bool(args[0]) if args else True)
                return None
            if name == "more":
                return this.more()
            if name == "next":
                try:
                    return this.next()
                except ArrayFault as fault:
                    self.throw_new("IllegalArrayIndexException", fault.index, fault.array)
            if name == "getIter":
                element = element_type(self.table, this.descriptor)
                return IterValue(self.table.generic("DS", "Iter", [element]), list(this.items))
        if isinstance(this, IterValue):
            if name == "more":
                return this.more()
            if name == "next":
                if not this.more():
                    self.throw_new("NotFoundException")
                return this.next()
            if name == "reset":
                this.reset()
                return None
            if name == "toArray":
                return ArrayValue(self.table.array_of(this.descriptor.args[0], 1), list(this.items))
        if isinstance(this, StackValue):
            items = this.items
            if name == "getSize":
                return len(items)
            if name == "empty":
                return not items
            if name == "top":
                if not items:
                    self.throw_new("NotFoundException")
                return items[-1]
            if name == "get":
                if not 0 <= args[0] < len(items):
                    self.throw_new("NotFoundException")
                return items[len(items) - 1 - args[0]]
            if name == "getIter":
                return IterValue(self.table.generic("DS", "Iter", list(this.descriptor.args)),
                                 list(reversed(items)))
            if name == "toArray":
                return ArrayValue(self.table.array_of(this.descriptor.args[0], 1), list(reversed(items)))
        raise InternalError(f"no built-in method {name} for {this!r}")

    def invoke(self, method: MethodSymbol, this: Any, args: List[Any],
               holder: Optional[ShellInstance] = None, layer: int = -1, kind: Optional[str] = None) -> Any:
        if method.synthesized:
            return self._synthesized(method, this, args)
        if method.is_abstract:
            raise InternalError(f"abstract method {method.qualified} was called")
        if len(self.calls) >= self.settings.max_call_depth:
            self.throw_new("StackOverflowException")
        checked = self.settings.assertions and method.assertion is not None
        contract = self._before(method, this, args, holder, layer) if checked else None
        frame = Frame(method, this, {}, holder, layer, kind=kind)
        self.calls.append(frame)
        try:
            if method.native is not None:
                implementation = NATIVES.get(method.native)
                if implementation is None:
                    raise InternalError(f"no native implementation of {method.native}")
                result = implementation(self, this, args)
            else:
                frame.locals = dict(zip(method.param_names, args))
                self._init_locals(method, frame)
                try:
                    self.exec_block(method.decl.body, frame)
                    result = None
                except ReturnSignal as returned:
                    result = returned.value
        finally:
            self.calls.pop()
        if contract is not None:
            self._after(method, contract, result)
        return result

    def _init_locals(self, method: MethodSymbol, frame: Frame) -> None:
        for local in getattr(method.decl, "frame_locals", ()):
            if local.kind == "local":
                frame.locals[local.name] = self._initial_local(local.type, local.node, method.owner)

    def _initial_local(self, descriptor: TypeDescriptor, node: Any, owner: ClassSymbol) -> Any:
        if node is not None and getattr(node, "expanded", False):
            return self.expanded_value(descriptor, node, getattr(node, "sizes", []), owner)
        return self.zero(descriptor)

    def _synthesized(self, method: MethodSymbol, this: Any, args: List[Any]) -> Any:
        kind = method.synthesized
        if kind == "new":
            return self.instantiate(method.init.owner, method.init, args)
        target = method.result
        if kind == "cast":
            value = args[0]
            if value is not None and not self.is_instance(value, target):
                self.throw_new("TypeErrorException")
            return value
        if kind == "castObject":
            value = args[0]
            if value is not None and not (isinstance(value, ClassObj)
                                          and self.table.is_subtype(value.cls.descriptor, target)):
                self.throw_new("TypeErrorException")
            return value
        raise InternalError(f"unknown synthesized method {kind}")

    # -- assertions -----------------------------------------------------

    def _before(self, method: MethodSymbol, this: Any, args: List[Any], holder: Any, layer: int) -> Frame:
        source = method.assertion_source or method
        frame = Frame(source, this, dict(zip(source.param_names, args)), holder, layer)
        clause = method.assertion
        if clause.before is not None and not self.eval(clause.before, frame):
            self._assertion_failed(method, this, "Before")
        for var in clause.vars:
            self._x_var(var, frame)
        return frame

    def _after(self, method: MethodSymbol, frame: Frame, result: Any) -> None:
        clause = method.assertion
        if clause.after is None:
            return
        frame.result = result
        if not self.eval(clause.after, frame):
            self._assertion_failed(method, frame.this, "After")

    def _assertion_failed(self, method: MethodSymbol, this: Any, phase: str) -> None:
        mi = self.mirrors.method_info(method)
        cls = self.class_of(this)
        correct = cls.vtable().get((f"correctAssertion{phase}", 1)) if cls is not None else None
        if correct:
            self.invoke(correct[-1], this, [mi])
            return
        self.throw_new(f"Assertion{phase}Exception", mi)

    # -- statements -----------------------------------------------------

    def exec_block(self, stmts: Sequence[Any], frame: Frame) -> None:
        run = self._exec
        for stmt in stmts:
            run[type(stmt)](stmt, frame)

    def _x_block(self, stmt: Block, frame: Frame) -> None:
        self.exec_block(stmt.stmts, frame)

    def _x_empty(self, stmt: EmptyStmt, frame: Frame) -> None:
        return None

    def _x_expr(self, stmt: ExprStmt, frame: Frame) -> None:
        expr = stmt.expr
        if isinstance(expr, Assign):
            self._assign(expr.target, expr.value, frame)
        else:
            self.eval(expr, frame)

    def _x_init(self, stmt: InitStmt, frame: Frame) -> None:
        if stmt.kind == "array":
            sizes = [self.eval(arg, frame) for arg in stmt.args]
            value = self.new_array(stmt.target.ty, sizes, stmt.element_expanded)
            self._store(stmt.target, value, frame)
            return
        args = self._arguments(stmt.args, stmt.pack, stmt.pack_type, frame)
        if stmt.expanded:
            self.invoke(stmt.init, self._load(stmt.target, frame), args)
            return
        self._store(stmt.target, self.instantiate(stmt.cls, stmt.init, args), frame)

    def _x_return(self, stmt: ReturnStmt, frame: Frame) -> None:
        raise ReturnSignal(self.eval(stmt.value, frame) if stmt.value is not None else None)

    def _x_if(self, stmt: IfStmt, frame: Frame) -> None:
        if self.eval(stmt.cond, frame):
            self.exec_block(stmt.then_body, frame)
        elif stmt.else_body is not None:
            self.exec_block(stmt.else_body, frame)

    def _x_while(self, stmt: WhileStmt, frame: Frame) -> None:
        body = self._exec[type(stmt.body)]
        while self.eval(stmt.cond, frame):
            body(stmt.body, frame)

    def _x_repeat(self, stmt: RepeatStmt, frame: Frame) -> None:
        while True:
            self.exec_block(stmt.body, frame)
            if self.eval(stmt.cond, frame):
                return

    def _x_loop(self, stmt: LoopStmt, frame: Frame) -> None:
        try:
            while True:
                self.exec_block(stmt.body, frame)
        except BreakSignal:
            return

    def _x_break(self, stmt: BreakStmt, frame: Frame) -> None:
        raise BreakSignal()

    def _x_for(self, stmt: ForStmt, frame: Frame) -> None:
        start = self.eval(stmt.start, frame)
        stop = self.eval(stmt.stop, frame)
        char = stmt.kind == "char"
        if char:
            start, stop = ord(start), ord(stop)
        body = self._exec[type(stmt.body)]
        for value in range(start, stop + 1):
            frame.locals[stmt.var] = chr(value) if char else value
            body(stmt.body, frame)
        if stmt.var_type is not None:
            frame.locals.pop(stmt.var, None)
        elif self.settings.strict_loop_var:
            frame.locals[stmt.var] = POISONED

    def _x_case(self, stmt: CaseStmt, frame: Frame) -> None:
        value = self.eval(stmt.subject, frame)
        for arm in stmt.arms:
            if self._case_matches(stmt, arm, value):
                self._exec[type(arm.body)](arm.body, frame)
                return
        if stmt.otherwise is not None:
            self._exec[type(stmt.otherwise)](stmt.otherwise, frame)

    def _case_matches(self, stmt: CaseStmt, arm: Any, value: Any) -> bool:
        if stmt.mode == "value":
            return any(value == label for label in arm.values)
        if not isinstance(value, Obj):
            return False
        for cls in arm.classes:
            if value.cls is cls or (isinstance(value, ClassObj) and value.cls is cls.class_object):
                return True
        return False

    def _x_var(self, stmt: VarStmt, frame: Frame) -> None:
        if stmt.init is not None:
            frame.locals[stmt.name] = self.eval(stmt.init, frame)
        else:
            owner = frame.method.owner if frame.method is not None else self.model.classes["Any"]
            frame.locals[stmt.name] = self._initial_local(stmt.local_type, stmt.type, owner)

    def _x_try(self, stmt: TryStmt, frame: Frame) -> None:
        catch = self.eval(stmt.catch, frame)
        if catch is None:
            self.throw_new("MessageSendToNilException")
        size = len(self.catches)
        entry = self.catches.push(catch, len(self.calls))
        unwound: Optional[GreenUnwind] = None
        try:
            self.exec_block(stmt.body, frame)
        except GreenUnwind as unwind:
            if unwind.entry is not entry:
                raise
            unwound = unwind
        finally:
            self.catches.truncate(size)
        if unwound is not None:
            self._handle(unwound)

    # -- assignment -----------------------------------------------------

    def _assign(self, target: Any, value_node: Any, frame: Frame) -> None:
        if isinstance(target, Index):
            array = self.eval(target.target, frame)
            index = self.eval(target.index, frame)
            self._set_element(array, index, self.eval(value_node, frame))
            return
        self._store(target, self.eval(value_node, frame), frame)

    def _set_element(self, array: Optional[ArrayValue], index: int, value: Any) -> None:
        if array is None:
            self.throw_new("MessageSendToNilException")
        try:
            array.set(index, value)
        except ArrayFault as fault:
            self.throw_new("IllegalArrayIndexException", fault.index, fault.array)

    def _store(self, target: Any, value: Any, frame: Frame) -> None:
        if isinstance(target, Name):
            kind, what = target.ref
            if kind == "local":
                frame.locals[what] = value
            else:
                self._field_set(what, value, frame)
        elif isinstance(target, Index):
            self._set_element(self.eval(target.target, frame), self.eval(target.index, frame), value)
        elif target.call.kind == "object-field":
            obj, var = target.call.target
            self.objects[obj.name].fields[var.slot] = value
        else:
            self._field_set(target.call.target, value, frame)

    def _load(self, target: Any, frame: Frame) -> Any:
        if isinstance(target, Index):
            return self._e_index(target, frame)
        return self.eval(target, frame)

    def _field_owner(self, var: VarSymbol, frame: Frame) -> Any:
        return frame.holder if var.owner.is_shell else frame.this

    def _field_get(self, var: VarSymbol, frame: Frame) -> Any:
        return self._field_owner(var, frame).fields[var.slot]

    def _field_set(self, var: VarSymbol, value: Any, frame: Frame) -> None:
        self._field_owner(var, frame).fields[var.slot] = value

    # -- expressions ----------------------------------------------------

    def eval(self, node: Any, frame: Frame) -> Any:
        value = self._eval[type(node)](node, frame)
        convert = getattr(node, "convert", None)
        if convert:
            if convert == "unbox":
                return self.unbox(value)
            return Obj(self.model.classes[convert[4:]], [value])
        return value

    def _e_literal(self, node: Literal, frame: Frame) -> Any:
        return node.value

    def _e_nil(self, node: NilLit, frame: Frame) -> Any:
        return None

    def _e_self(self, node: Any, frame: Frame) -> Any:
        return frame.this

    def _e_result(self, node: ResultExpr, frame: Frame) -> Any:
        return frame.result

    def _e_exception(self, node: ExceptionExpr, frame: Frame) -> Any:
        top = self.catches.top()
        return top.catch if top is not None else None

    def _e_name(self, node: Name, frame: Frame) -> Any:
        kind, what = node.ref
        if kind == "local":
            value = frame.locals[what]
            if value is POISONED:
                self.throw_new("InternalErrorException",
                               f"the value of {what} is undefined after the for statement")
            return value
        if kind == "field":
            return self._field_get(what, frame)
        if kind == "const":
            return what.value
        if kind == "object":
            return self.objects[what.name]
        return ShellPrototype(what)

    def _e_type(self, node: TypeExpr, frame: Frame) -> Any:
        return self.objects[node.ref[1].name]

    def _e_paren(self, node: Paren, frame: Frame) -> Any:
        return self.eval(node.inner, frame)

    def _e_unary(self, node: Unary, frame: Frame) -> Any:
        op = node.op
        if op in ("++", "--"):
            self._increment(node, frame)
            return None
        value = self.eval(node.operand, frame)
        if op == "not":
            return not value
        return numeric.unary(op, node.ty.name, value)

    def _increment(self, node: Unary, frame: Frame) -> None:
        target = node.operand
        delta = 1 if node.op == "++" else -1
        if isinstance(target, Index):
            array = self.eval(target.target, frame)
            index = self.eval(target.index, frame)
            if array is None:
                self.throw_new("MessageSendToNilException")
            try:
                current = array.get(index)
            except ArrayFault as fault:
                self.throw_new("IllegalArrayIndexException", fault.index, fault.array)
            self._set_element(array, index, self._stepped(node.kind, current, delta))
            return
        current = self.eval(target, frame)
        self._store(target, self._stepped(node.kind, current, delta), frame)

    def _stepped(self, kind: str, value: Any, delta: int) -> Any:
        if kind.startswith("box:"):
            wrapper = kind[4:]
            # a new wrapper object; wrappers never change
            return Obj(self.model.classes[wrapper], [numeric.step(UNWRAPPED[wrapper], self.unbox(value), delta)])
        return numeric.step(kind, value, delta)

    def _e_binary(self, node: Binary, frame: Frame) -> Any:
        op = node.op
        if op == "and":
            return bool(self.eval(node.left, frame)) and bool(self.eval(node.right, frame))
        if op == "or":
            return bool(self.eval(node.left, frame)) or bool(self.eval(node.right, frame))
        left = self.eval(node.left, frame)
        right = self.eval(node.right, frame)
        if op == "xor":
            return bool(left) != bool(right)
        kind = node.kind
        if op in ("==", "<>"):
            equal = same(left, right) if kind == "reference" else left == right
            return bool(equal) if op == "==" else not equal
        if kind == "string":
            if left is None or right is None:
                self.throw_new("MessageSendToNilException")
            return left + right
        if op in ("<", "<=", ">", ">="):
            return numeric.compare(op, left, right)
        try:
            return numeric.binary(op, kind, left, right)
        except numeric.ArithmeticFault as fault:
            self.throw_new(fault.exception_class)

    def _e_index(self, node: Index, frame: Frame) -> Any:
        array = self.eval(node.target, frame)
        index = self.eval(node.index, frame)
        if array is None:
            self.throw_new("MessageSendToNilException")
        try:
            return array.get(index)
        except ArrayFault as fault:
            self.throw_new("IllegalArrayIndexException", fault.index, fault.array)

    def _e_array_init(self, node: ArrayInit, frame: Frame) -> Any:
        return ArrayValue(node.ty, [self.eval(item, frame) for item in node.items])

    def _arguments(self, nodes: Sequence[Any], pack: Optional[int], pack_type: Optional[TypeDescriptor],
                   frame: Frame) -> List[Any]:
        values = [self.eval(arg, frame) for arg in nodes or ()]
        if pack is None:
            return values
        return values[:pack] + [ArrayValue(pack_type, values[pack:])]

    def _e_send(self, node: Send, frame: Frame) -> Any:
        call: Call = node.call
        kind = call.kind
        if kind == "field":
            return self._field_get(call.target, frame)
        if kind == "object-field":
            obj, var = call.target
            return self.objects[obj.name].fields[var.slot]
        if kind == "const":
            return call.target.value
        if kind == "throw":
            self.throw(self.eval(node.args[0], frame))
        if kind == "array-new":
            descriptor, expanded = call.target
            return self.new_array(descriptor, [self.eval(arg, frame) for arg in node.args], expanded)
        receiver = node.receiver
        if receiver is None or isinstance(receiver, (SelfExpr, SuperExpr)):
            this = frame.this
        elif kind == "shell-new":
            this = None
        else:
            this = self.eval(receiver, frame)
        args = self._arguments(node.args, call.pack, call.pack_type, frame)
        if kind == "shell-new":
            return ShellPrototype(call.target, call.method, args)
        if kind == "init":
            if this is None:
                self.throw_new("MessageSendToNilException")
            self.invoke(call.method, this, args, *self._shell_context(call.method, frame))
            return None
        if kind == "shell-super":
            return self.dispatch(this, call.signature, args, frame.layer + 1)
        if not call.virtual:
            return self.invoke(call.method, this, args, *self._shell_context(call.method, frame))
        static = receiver.ty if receiver is not None else None
        return self.send_virtual(this, call.signature, args, static)

    @staticmethod
    def _shell_context(method: MethodSymbol, frame: Frame) -> Tuple[Optional[ShellInstance], int]:
        if method.owner.is_shell:
            return frame.holder, frame.layer
        return None, -1


def _matching(slot: List[MethodSymbol], sig: Signature, table) -> Optional[MethodSymbol]:
    for method in slot:
        if method.variadic == sig.variadic and all(p is q for p, q in zip(method.params, sig.params)):
            return method
    for method in slot:
        if method.variadic == sig.variadic and all(table.type_equal(p, q)
                                                   for p, q in zip(method.params, sig.params)):
            return method
    return slot[0] if len(slot) == 1 else None


def run_program(program: CheckedProgram, entry: str, args: Sequence[str] = (),
                settings: Optional[GreenSettings] = None, stdin: Optional[TextIO] = None,
                stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Run a checked program and return its exit status."""
    interpreter = Interpreter(program, settings, stdin, stdout, stderr)
    return interpreter.run(entry, args)
