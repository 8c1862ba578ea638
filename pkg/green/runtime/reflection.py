"""
Run-time reflection.

Mirrors are ordinary objects of the classes declared in the reflection
library (``ClassInfo``, ``ObjectMethodInfo`` and so on) whose payload holds
what they describe. There is one ``ClassInfo`` per type per run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

from ..symbols import VISIBILITY_CODES, ClassKind, ClassSymbol, ConstSymbol, MethodSymbol, Visibility, VarSymbol
from ..typesys import Signature, TypeDescriptor
from .arrays import ArrayValue, element_type
from .natives import native
from .values import ClassObj, Frame, GreenUnwind, IterValue, Obj, StackValue

if TYPE_CHECKING:
    from .interpreter import Interpreter

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class MethodMirror:
    """What a MethodInfo describes; ``receiver`` is set for ObjectMethodInfo."""
    method: Optional[MethodSymbol]
    signature: Signature
    receiver: Any = None
    bound: bool = False
    # first dispatch layer tried by invoke; interceptAll continues below its shell
    layer: int = 0


@dataclass(eq=False)
class VariableMirror:
    name: str
    type: TypeDescriptor
    method: Optional[MethodSymbol] = None
    variadic: bool = False


@dataclass(eq=False)
class LiveVariable:
    frame: Frame
    variable: VariableMirror


class Mirrors:
    def __init__(self, rt: "Interpreter"):
        self.rt = rt
        self._class_infos: Dict[int, Obj] = {}

    def _make(self, class_name: str, payload: Any) -> Obj:
        return Obj(self.rt.model.classes[class_name], [], payload)

    def _iter(self, element: str, items: Sequence[Any]) -> IterValue:
        table = self.rt.table
        return IterValue(table.generic("DS", "Iter", [table[element]]), list(items))

    def require_classes(self) -> None:
        if not self.rt.settings.reflect_classes:
            self.rt.throw_new("NoReflectiveClassInfoException")

    # -- classes ---------------------------------------------------------

    def class_info(self, cls: Optional[ClassSymbol]) -> Optional[Obj]:
        if cls is None:
            return None
        return self.type_info(cls.descriptor)

    def type_info(self, descriptor: Optional[TypeDescriptor]) -> Optional[Obj]:
        if descriptor is None:
            return None
        found = self._class_infos.get(id(descriptor))
        if found is None:
            found = self._make(self._info_class(descriptor), descriptor)
            self._class_infos[id(descriptor)] = found
        return found

    def _info_class(self, descriptor: TypeDescriptor) -> str:
        if descriptor.is_array:
            return "ArrayClassInfo"
        if descriptor.is_basic:
            return "ValueClassInfo"
        cls = self.rt.model.class_of(descriptor)
        if cls is None or cls.is_abstract or cls.kind is not ClassKind.CLASS:
            return "AbstractClassInfo"
        return "NormalClassInfo"

    def class_info_of(self, value: Any) -> Optional[Obj]:
        self.require_classes()
        if self.is_class_info(value):
            return self.class_info(self.rt.model.classes["ClassInfo"])
        return self.type_info(self.rt.descriptor_of(value))

    def is_class_info(self, value: Any) -> bool:
        """Class-info mirrors present themselves as objects of ClassInfo."""
        return isinstance(value, Obj) and isinstance(value.payload, TypeDescriptor) \
            and value.cls.is_subclass_of(self.rt.model.classes["ClassInfo"])

    def all_classes(self) -> IterValue:
        self.require_classes()
        classes = [cls for cls in self.rt.model.classes.values() if cls.kind is not ClassKind.SHELL]
        return self._iter("ClassInfo", [self.class_info(cls) for cls in classes])

    def search_class(self, name: Optional[str]) -> Optional[Obj]:
        self.require_classes()
        cls = self.rt.model.classes.get(name) if name is not None else None
        return self.class_info(cls) if cls is not None and cls.kind is not ClassKind.SHELL else None

    def symbol(self, info: Obj) -> Optional[ClassSymbol]:
        return self.rt.model.class_of(info.payload)

    # -- methods ---------------------------------------------------------

    def method_info(self, method: MethodSymbol) -> Obj:
        return self._make("ClassMethodInfo", MethodMirror(method, method.signature))

    def bound_method(self, receiver: Any, sig: Signature, layer: int = 0) -> Obj:
        return self._make("ObjectMethodInfo", MethodMirror(sig.method, sig, receiver, True, layer))

    def object_init_method(self, class_object: ClassObj) -> Optional[Obj]:
        init = next((m for m in class_object.cls.inits if m.arity == 0), None)
        if init is None:
            return None
        return self._make("ObjectMethodInfo", MethodMirror(init, init.signature, class_object, True, -1))

    def methods_of(self, cls: ClassSymbol, own: bool = False) -> List[MethodSymbol]:
        """Methods of ``cls`` without the superclass versions it overrides."""
        chain = [cls] if own else list(reversed(list(cls.ancestors())))
        out: List[MethodSymbol] = []
        for owner in chain:
            for method in owner.methods:
                out = [m for m in out if not (m.name == method.name and m.visibility is not Visibility.PRIVATE
                                              and self.rt.table.signature_equal(m.signature, method.signature))]
                out.append(method)
        return out

    def invoke(self, mirror: MethodMirror, receiver: Any, values: Optional[ArrayValue]) -> Any:
        rt = self.rt
        sig = mirror.signature
        given = list(values.items) if values is not None else []
        if len(given) != sig.arity:
            rt.throw_new("WrongParametersException")
        args = []
        for value, param in zip(given, sig.params):
            if not rt.is_instance(value, param):
                rt.throw_new("WrongParametersException")
            args.append(rt.unbox_for(value, param))
        if not mirror.bound:
            receiver = self._receiver(mirror, receiver)
        result = self.packing(lambda: self._call(mirror, receiver, args))
        return rt.box_for(result, sig.result) if sig.result is not None else None

    def _receiver(self, mirror: MethodMirror, receiver: Any) -> Any:
        rt = self.rt
        if receiver is None:
            rt.throw_new("MessageSendToNilException")
        owner = mirror.method.owner
        cls = rt.class_of(receiver)
        if cls is None or cls.is_subclass_of(owner):
            return receiver
        slot = cls.vtable().get((mirror.signature.name, mirror.signature.arity), [])
        if not any(rt.table.signature_equal(m.signature, mirror.signature) for m in slot):
            rt.throw_new("TypeErrorException")
        return receiver

    def _call(self, mirror: MethodMirror, receiver: Any, args: List[Any]) -> Any:
        rt = self.rt
        method = mirror.method
        if method is not None and method.visibility in (Visibility.PRIVATE, Visibility.INIT):
            return rt.invoke(method, receiver, args)
        if isinstance(receiver, Obj) and mirror.layer > 0:
            return rt.dispatch(receiver, mirror.signature, args, mirror.layer)
        static = rt.table[rt.basic_kind(receiver)] if _is_basic(receiver) else None
        return rt.send_virtual(receiver, mirror.signature, args, static)

    def packing(self, action):
        """Run ``action``; an exception it throws is re-thrown inside a PackedException."""
        rt = self.rt
        catch_all = rt.objects.get("CatchAll")
        size = len(rt.catches)
        entry = rt.catches.push(catch_all, len(rt.calls))
        packed = None
        try:
            return action()
        except GreenUnwind as unwind:
            if unwind.entry is not entry:
                raise
            packed = unwind.exception
        finally:
            rt.catches.truncate(size)
        if packed is not None:
            rt.throw_new("PackedException", packed)

    def new_instance(self, class_object: ClassObj, values: Optional[ArrayValue]) -> Any:
        """``ClassObjectInfo.new``: the first ``new`` of the class object accepting ``values``."""
        rt = self.rt
        given = list(values.items) if values is not None else []
        for method in class_object.cls.own_methods("new", len(given)):
            if all(rt.is_instance(v, p) for v, p in zip(given, method.params)):
                args = [rt.unbox_for(v, p) for v, p in zip(given, method.params)]
                return self.packing(lambda: rt.invoke(method, class_object, args))
        rt.throw_new("WrongParametersException")

    # -- objects ---------------------------------------------------------

    def object_info(self, value: Any) -> Obj:
        self.require_classes()
        if value is None:
            self.rt.throw_new("MessageSendToNilException")
        return self._make("ClassObjectInfo" if isinstance(value, ClassObj) else "ObjectInfo", value)

    def object_methods(self, value: Any, public_only: bool = False, name: Optional[str] = None) -> List[Obj]:
        cls = self.rt.class_of(value)
        if cls is None:
            return []
        methods = cls.public_methods() if public_only else self.methods_of(cls)
        return [self._make("ObjectMethodInfo", MethodMirror(m, m.signature, value, True))
                for m in methods if name is None or m.name == name]

    def object_fields(self, value: Any) -> List[Obj]:
        if not isinstance(value, Obj):
            return []
        return [self._make("ObjectInstanceVariableInfo", (value, var)) for var in value.cls.all_fields()]

    # -- call stack ------------------------------------------------------

    def call_stack(self) -> StackValue:
        rt = self.rt
        if not rt.settings.reflect_calls:
            rt.throw_new("NoReflectiveCallInfoException")
        frames = [frame for frame in rt.calls[:-1] if frame.method is not None]
        items = [self._make("MethodCallInfo", frame) for frame in frames]
        return StackValue(rt.table.generic("DS", "Stack", [rt.table["MethodCallInfo"]]), items)

    def live_variables(self, frame: Frame, kinds: Sequence[str]) -> List[Obj]:
        method = frame.method
        locals_ = getattr(method.decl, "frame_locals", None) if method.decl is not None else None
        if locals_ is None:
            variables = [VariableMirror(name, type_, method) for name, type_ in zip(method.param_names, method.params)
                         if "param" in kinds]
        else:
            variables = [VariableMirror(local.name, local.type, method) for local in locals_ if local.kind in kinds]
        class_name = "LiveParameterInfo" if kinds == ("param",) else "LiveLocalVariableInfo"
        return [self._make(class_name, LiveVariable(frame, v)) for v in variables]


def _is_basic(value: Any) -> bool:
    return not isinstance(value, (Obj, str, ArrayValue, IterValue, StackValue)) and value is not None


def _field_holder(rt: "Interpreter", obj: Any, var: VarSymbol) -> Obj:
    if not isinstance(obj, Obj) or var not in obj.cls.all_fields():
        rt.throw_new("TypeErrorException")
    return obj


def _store_checked(rt: "Interpreter", holder: Obj, var: VarSymbol, value: Any) -> None:
    if not rt.is_instance(value, var.type):
        rt.throw_new("TypeErrorException")
    holder.fields[var.slot] = rt.unbox_for(value, var.type)


# -- ClassInfo --------------------------------------------------------------

@native("ClassInfo.getName()", "ClassInfo.toString()")
def _class_name(rt, this, args):
    return this.payload.name


@native("ClassInfo.isSupertypeOf(ClassInfo)")
def _class_is_supertype(rt, this, args):
    if args[0] is None:
        rt.throw_new("MessageSendToNilException")
    return rt.table.is_subtype(args[0].payload, this.payload)


@native("ClassInfo.isSuperclassOf(ClassInfo)")
def _class_is_superclass(rt, this, args):
    if args[0] is None:
        rt.throw_new("MessageSendToNilException")
    mine, theirs = rt.mirrors.symbol(this), rt.mirrors.symbol(args[0])
    if mine is None or theirs is None:
        return this.payload is args[0].payload
    return theirs.is_subclass_of(mine)


@native("ClassInfo.getSuperclass()")
def _class_superclass(rt, this, args):
    cls = rt.mirrors.symbol(this)
    return rt.mirrors.class_info(cls.superclass) if cls is not None else None


def _class_methods(rt, this, own: bool = False, public: bool = False, name: Optional[str] = None):
    cls = rt.mirrors.symbol(this)
    if cls is None:
        return rt.mirrors._iter("ClassMethodInfo", [])
    methods = rt.mirrors.methods_of(cls, own)
    if public:
        methods = [m for m in methods if m.visibility is Visibility.PUBLIC]
    if name is not None:
        methods = [m for m in methods if m.name == name]
    return rt.mirrors._iter("ClassMethodInfo", [rt.mirrors.method_info(m) for m in methods])


def _class_fields(rt, this, own: bool = False):
    cls = rt.mirrors.symbol(this)
    fields = [] if cls is None else (cls.fields if own else cls.all_fields())
    return rt.mirrors._iter("ClassInstanceVariableInfo",
                            [rt.mirrors._make("ClassInstanceVariableInfo", var) for var in fields])


native("ClassInfo.getInstanceVariables()")(lambda rt, this, args: _class_fields(rt, this))
native("ClassInfo.getThisClassInstanceVariables()")(lambda rt, this, args: _class_fields(rt, this, own=True))
native("ClassInfo.getMethods()")(lambda rt, this, args: _class_methods(rt, this))
native("ClassInfo.getPublicMethods()")(lambda rt, this, args: _class_methods(rt, this, public=True))
native("ClassInfo.getThisClassMethods()")(lambda rt, this, args: _class_methods(rt, this, own=True))
native("ClassInfo.getThisClassPublicMethods()")(
    lambda rt, this, args: _class_methods(rt, this, own=True, public=True))
native("ClassInfo.getPublicMethod(String)")(lambda rt, this, args: _class_methods(rt, this, public=True,
                                                                                 name=args[0]))


@native("ClassInfo.getInitMethods()")
def _class_inits(rt, this, args):
    cls = rt.mirrors.symbol(this)
    inits = cls.inits if cls is not None else []
    return rt.mirrors._iter("ClassMethodInfo", [rt.mirrors.method_info(m) for m in inits])


@native("ClassInfo.getInstanceVariable(String)")
def _class_field(rt, this, args):
    cls = rt.mirrors.symbol(this)
    var = next((v for v in cls.all_fields() if v.name == args[0]), None) if cls is not None else None
    return rt.mirrors._make("ClassInstanceVariableInfo", var) if var is not None else None


def _params_match(rt, method: MethodSymbol, types: List[TypeDescriptor]) -> bool:
    return method.arity == len(types) and all(rt.table.type_equal(p, t) for p, t in zip(method.params, types))


@native("ClassInfo.getMethod(String,array(ClassInfo)[])")
def _class_method(rt, this, args):
    name, infos = args
    types = [info.payload for info in infos.items] if infos is not None else []
    cls = rt.mirrors.symbol(this)
    methods = rt.mirrors.methods_of(cls) if cls is not None else []
    return rt.mirrors._iter("ClassMethodInfo", [rt.mirrors.method_info(m) for m in methods
                                                if m.name == name and _params_match(rt, m, types)])


@native("ClassInfo.getMethod_v(String,...array(AnyClassObject)[])")
def _class_method_v(rt, this, args):
    name, objects = args
    types = [obj.cls.associate.descriptor if obj.cls.associate is not None else obj.cls.descriptor
             for obj in objects.items]
    cls = rt.mirrors.symbol(this)
    for method in rt.mirrors.methods_of(cls) if cls is not None else []:
        if method.name == name and _params_match(rt, method, types):
            return rt.mirrors.method_info(method)
    return None


@native("ClassInfo.getAssociateClassObject()")
def _class_associate(rt, this, args):
    return rt.class_object(this.payload)


@native("ClassInfo.isClassOf(Any)")
def _class_is_class_of(rt, this, args):
    return args[0] is not None and rt.descriptor_of(args[0]) is this.payload


@native("ClassInfo.isAbstract()")
def _class_is_abstract(rt, this, args):
    cls = rt.mirrors.symbol(this)
    return cls is not None and cls.is_abstract


@native("ClassInfo.isReflective()")
def _class_is_reflective(rt, this, args):
    cls = rt.mirrors.symbol(this)
    return cls is not None and cls.is_reflective


@native("ArrayClassInfo.getArrayElementClass()")
def _array_element_class(rt, this, args):
    return rt.mirrors.type_info(element_type(rt.table, this.payload))


@native("ArrayClassInfo.getNumberOfDimensions()")
def _array_dimensions(rt, this, args):
    return this.payload.dims


# -- MethodInfo -------------------------------------------------------------

@native("MethodInfo.getName()")
def _method_name(rt, this, args):
    return this.payload.signature.name


@native("MethodInfo.toString()")
def _method_to_string(rt, this, args):
    mirror = this.payload
    sig = mirror.signature
    params = ", ".join(p.name for p in sig.params)
    owner = mirror.method.owner.name if mirror.method is not None else "?"
    return f"{owner}::{sig.name}({params})"


@native("MethodInfo.getBodyInfo()")
def _method_body(rt, this, args):
    rt.throw_new("NoReflectiveBodyInfoException")


@native("MethodInfo.getVisibility()")
def _method_visibility(rt, this, args):
    method = this.payload.method
    return VISIBILITY_CODES[method.visibility] if method is not None else 0


@native("MethodInfo.getParameterTypes()")
def _method_param_types(rt, this, args):
    return rt.mirrors._iter("ClassInfo", [rt.mirrors.type_info(p) for p in this.payload.signature.params])


@native("MethodInfo.getReturnType()")
def _method_return_type(rt, this, args):
    return rt.mirrors.type_info(this.payload.signature.result)


@native("MethodInfo.getParameters()")
def _method_params(rt, this, args):
    mirror = this.payload
    method = mirror.method
    names = method.param_names if method is not None else [f"p{i}" for i in range(mirror.signature.arity)]
    last = mirror.signature.arity - 1
    variables = [VariableMirror(name, type_, method, mirror.signature.variadic and i == last)
                 for i, (name, type_) in enumerate(zip(names, mirror.signature.params))]
    return rt.mirrors._iter("ParameterInfo", [rt.mirrors._make("ParameterInfo", v) for v in variables])


@native("MethodInfo.getExceptionClass()")
def _method_exception(rt, this, args):
    return rt.mirrors.type_info(this.payload.signature.exception)


@native("ClassMethodInfo.isAbstract()")
def _method_is_abstract(rt, this, args):
    method = this.payload.method
    return method is not None and method.is_abstract


@native("ClassMethodInfo.invoke(Any,array(Any)[])", "ClassMethodInfo.invoke_v(Any,...array(Any)[])")
def _class_method_invoke(rt, this, args):
    return rt.mirrors.invoke(this.payload, args[0], args[1])


@native("ObjectMethodInfo.invoke(array(Any)[])", "ObjectMethodInfo.invoke_v(...array(Any)[])")
def _object_method_invoke(rt, this, args):
    return rt.mirrors.invoke(this.payload, this.payload.receiver, args[0])


# -- variables --------------------------------------------------------------

@native("InstanceVariableInfo.getName()")
def _field_name(rt, this, args):
    var = this.payload[1] if isinstance(this.payload, tuple) else this.payload
    return var.name


@native("InstanceVariableInfo.getType()")
def _field_type(rt, this, args):
    var = this.payload[1] if isinstance(this.payload, tuple) else this.payload
    return rt.mirrors.type_info(var.type)


@native("InstanceVariableInfo.isExpanded()")
def _field_expanded(rt, this, args):
    var = this.payload[1] if isinstance(this.payload, tuple) else this.payload
    return var.expanded


@native("ClassInstanceVariableInfo.get(Any)")
def _class_field_get(rt, this, args):
    var = this.payload
    holder = _field_holder(rt, args[0], var)
    return rt.box_for(holder.fields[var.slot], var.type)


@native("ClassInstanceVariableInfo.set(Any,Any)")
def _class_field_set(rt, this, args):
    var = this.payload
    _store_checked(rt, _field_holder(rt, args[0], var), var, args[1])


@native("ObjectInstanceVariableInfo.get()")
def _object_field_get(rt, this, args):
    holder, var = this.payload
    return rt.box_for(holder.fields[var.slot], var.type)


@native("ObjectInstanceVariableInfo.set(Any)")
def _object_field_set(rt, this, args):
    holder, var = this.payload
    _store_checked(rt, holder, var, args[0])


@native("VariableInfo.getName()")
def _variable_name(rt, this, args):
    return this.payload.name


@native("VariableInfo.getType()")
def _variable_type(rt, this, args):
    return rt.mirrors.type_info(this.payload.type)


@native("VariableInfo.getDeclaringMethod()")
def _variable_method(rt, this, args):
    method = this.payload.method
    return rt.mirrors.method_info(method) if method is not None else None


@native("ParameterInfo.isVariableNumber()")
def _parameter_variadic(rt, this, args):
    return this.payload.variadic


# -- object infos -----------------------------------------------------------

@native("AnyObjectInfo.getObject()")
def _info_object(rt, this, args):
    return this.payload


@native("AnyObjectInfo.getInstanceVariables()")
def _info_fields(rt, this, args):
    return rt.mirrors._iter("ObjectInstanceVariableInfo", rt.mirrors.object_fields(this.payload))


@native("AnyObjectInfo.getMethods()")
def _info_methods(rt, this, args):
    return rt.mirrors._iter("ObjectMethodInfo", rt.mirrors.object_methods(this.payload))


@native("AnyObjectInfo.getPublicMethods()")
def _info_public_methods(rt, this, args):
    return rt.mirrors._iter("ObjectMethodInfo", rt.mirrors.object_methods(this.payload, public_only=True))


@native("AnyObjectInfo.getPublicMethod(String)")
def _info_public_method(rt, this, args):
    return rt.mirrors._iter("ObjectMethodInfo",
                            rt.mirrors.object_methods(this.payload, public_only=True, name=args[0]))


@native("AnyObjectInfo.getMethod(String,array(ClassInfo)[])")
def _info_method_typed(rt, this, args):
    name, infos = args
    types = [info.payload for info in infos.items] if infos is not None else []
    for mirror in rt.mirrors.object_methods(this.payload, name=name):
        if _params_match(rt, mirror.payload.method, types):
            return mirror
    return None


@native("AnyObjectInfo.getMethod(String)")
def _info_method(rt, this, args):
    found = rt.mirrors.object_methods(this.payload, name=args[0])
    return found[0] if found else None


@native("AnyObjectInfo.getInstanceVariable(String)")
def _info_field(rt, this, args):
    for info in rt.mirrors.object_fields(this.payload):
        if info.payload[1].name == args[0]:
            return info
    return None


@native("AnyObjectInfo.getTypeInfo()")
def _info_type(rt, this, args):
    return rt.mirrors.type_info(rt.descriptor_of(this.payload))


@native("ClassObjectInfo.getInitMethod()")
def _info_init(rt, this, args):
    return rt.mirrors.object_init_method(this.payload)


def _constants(rt, this, public_only: bool) -> IterValue:
    consts = [c for c in this.payload.cls.consts.values() if not c.is_enum and (c.public or not public_only)]
    return rt.mirrors._iter("ConstantInfo", [rt.mirrors._make("ConstantInfo", c) for c in consts])


def _enums(rt, this, public_only: bool) -> IterValue:
    enums = [(public, items) for public, items in this.payload.cls.enums if public or not public_only]
    return rt.mirrors._iter("EnumInfo", [rt.mirrors._make("EnumInfo", e) for e in enums])


native("ClassObjectInfo.getConstants()")(lambda rt, this, args: _constants(rt, this, False))
native("ClassObjectInfo.getPublicConstants()")(lambda rt, this, args: _constants(rt, this, True))
native("ClassObjectInfo.getEnumConstants()")(lambda rt, this, args: _enums(rt, this, False))
native("ClassObjectInfo.getPublicEnumConstants()")(lambda rt, this, args: _enums(rt, this, True))


@native("ClassObjectInfo.new(array(Any)[])", "ClassObjectInfo.new_v(...array(Any)[])")
def _info_new(rt, this, args):
    return rt.mirrors.new_instance(this.payload, args[0])


@native("ConstantInfo.getName()")
def _const_name(rt, this, args):
    return this.payload.name


@native("ConstantInfo.getType()")
def _const_type(rt, this, args):
    return rt.mirrors.type_info(this.payload.type)


@native("ConstantInfo.getVisibility()")
def _const_visibility(rt, this, args):
    return VISIBILITY_CODES[Visibility.PUBLIC if this.payload.public else Visibility.PRIVATE]


@native("ConstantInfo.getValue()")
def _const_value(rt, this, args):
    const: ConstSymbol = this.payload
    return rt.box_for(const.value, const.type)


@native("EnumInfo.getConstants()")
def _enum_constants(rt, this, args):
    return rt.mirrors._iter("ConstantInfo", [rt.mirrors._make("ConstantInfo", c) for c in this.payload[1]])


@native("EnumInfo.getVisibility()")
def _enum_visibility(rt, this, args):
    return VISIBILITY_CODES[Visibility.PUBLIC if this.payload[0] else Visibility.PRIVATE]


# -- method calls -----------------------------------------------------------

@native("MethodCallInfo.getMethodInfo()")
def _call_method(rt, this, args):
    return rt.mirrors.method_info(this.payload.method)


@native("MethodCallInfo.getLiveLocalVariables()")
def _call_locals(rt, this, args):
    return rt.mirrors._iter("LiveLocalVariableInfo", rt.mirrors.live_variables(this.payload, ("local",)))


@native("MethodCallInfo.getLiveParameters()")
def _call_params(rt, this, args):
    return rt.mirrors._iter("LiveParameterInfo", rt.mirrors.live_variables(this.payload, ("param",)))


@native("LiveLocalVariableInfo.getVariableInfo()")
def _live_variable(rt, this, args):
    live: LiveVariable = this.payload
    return rt.mirrors._make("VariableInfo", live.variable)


@native("LiveLocalVariableInfo.get()")
def _live_get(rt, this, args):
    live: LiveVariable = this.payload
    return rt.box_for(live.frame.locals.get(live.variable.name), live.variable.type)


@native("LiveLocalVariableInfo.set(Any)")
def _live_set(rt, this, args):
    rt.throw_new("NoReflectiveBodyInfoException")
