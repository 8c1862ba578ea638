"""
Shells and dynamic extensions.

A shell attached to an object receives the messages sent to that object
before the object does; the last shell attached is asked first. An
extension is attached to a class and acts as a shell on every object of
exactly that class, its own variables created the first time the object
receives a message.
"""

from __future__ import annotations

import logging
import weakref
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple, Union

from ..symbols import ClassSymbol, MethodSymbol, Visibility
from ..typesys import Signature
from .natives import native
from .values import ClassObj, Obj, ShellInstance, ShellPrototype

if TYPE_CHECKING:
    from .interpreter import Interpreter

logger = logging.getLogger(__name__)


class Extension:
    """An extension attached to one class; one instance per receiving object."""

    def __init__(self, shell: ClassSymbol):
        self.shell = shell
        self.instances: "weakref.WeakKeyDictionary[Obj, ShellInstance]" = weakref.WeakKeyDictionary()

    def __repr__(self) -> str:
        return f"<extension {self.shell.name}>"


Layer = Union[ShellInstance, Extension]


class MetaState:
    def __init__(self, rt: "Interpreter"):
        self.rt = rt
        # class name -> extensions, last attached last
        self.extensions: Dict[str, List[Extension]] = {}
        self._methods: Dict[Tuple[int, int], Optional[MethodSymbol]] = {}

    def layers(self, obj: Obj) -> List[Layer]:
        """Shells of ``obj`` then extensions of its class, the one asked first at index 0."""
        # a class object shares its name with its class but takes no extensions
        extensions = [] if isinstance(obj, ClassObj) else self.extensions.get(obj.cls.name, [])
        if not obj.shells and not extensions:
            return []
        out: List[Layer] = list(reversed(obj.shells))
        out.extend(reversed(extensions))
        return out

    def holder(self, layer: Layer, obj: Obj) -> ShellInstance:
        if isinstance(layer, ShellInstance):
            return layer
        instance = layer.instances.get(obj)
        if instance is None:
            instance = self._new_instance(layer.shell)
            layer.instances[obj] = instance
            init = next((m for m in layer.shell.inits if m.arity == 0), None)
            if init is not None:
                self.rt.invoke(init, obj, [], instance, -1)
        return instance

    def shell_method(self, shell: ClassSymbol, sig: Signature) -> Optional[MethodSymbol]:
        key = (id(shell), id(sig))
        if key in self._methods:
            return self._methods[key]
        found = None
        for method in shell.find(sig.name, (Visibility.PUBLIC,)):
            if method.arity == sig.arity and self.rt.table.signature_equal(method.signature, sig):
                found = method
                break
        self._methods[key] = found
        return found

    def intercept(self, shell: ClassSymbol) -> Optional[MethodSymbol]:
        return next((m for m in shell.find("interceptAll", (Visibility.PUBLIC,)) if m.arity == 2), None)

    def _new_instance(self, shell: ClassSymbol) -> ShellInstance:
        return ShellInstance(shell, [self.rt.initial_field(var) for var in shell.all_fields()])

    # -- Meta ------------------------------------------------------------

    def attach_shell(self, obj: Any, prototype: Any) -> None:
        rt = self.rt
        if obj is None:
            rt.throw_new("MessageSendToNilException")
        if not isinstance(prototype, ShellPrototype) or not isinstance(obj, Obj):
            rt.throw_new("TypeErrorException")
        shell = prototype.shell
        if obj.cls.name not in shell.allowed:
            logger.debug("%s is not in the allowed set of shell %s", obj.cls.name, shell.name)
            rt.throw_new("ClassNotInAllowedSetException", obj)
        instance = self._new_instance(shell)
        if prototype.init is not None:
            rt.invoke(prototype.init, obj, list(prototype.args), instance, -1)
        obj.shells.append(instance)
        logger.debug("shell %s attached to a %s", shell.name, obj.cls.name)

    def remove_shell(self, obj: Any) -> None:
        if obj is None:
            self.rt.throw_new("MessageSendToNilException")
        if not isinstance(obj, Obj) or not obj.shells:
            self.rt.throw_new("NoShellException", obj)
        obj.shells.pop()

    def attach_extension(self, class_object: ClassObj, prototype: Any) -> None:
        rt = self.rt
        if class_object is None:
            rt.throw_new("MessageSendToNilException")
        target = class_object.cls.associate
        if not isinstance(prototype, ShellPrototype) or target is None:
            rt.throw_new("TypeErrorException")
        shell = prototype.shell
        if target.name not in shell.extension_allowed:
            rt.throw_new("ClassNotInAllowedSetException", class_object)
        self.extensions.setdefault(target.name, []).append(Extension(shell))
        logger.debug("extension %s attached to class %s", shell.name, target.name)

    def remove_extension(self, class_object: ClassObj) -> None:
        if class_object is None:
            self.rt.throw_new("MessageSendToNilException")
        target = class_object.cls.associate
        attached = self.extensions.get(target.name) if target is not None else None
        if not attached:
            self.rt.throw_new("NoExtensionException", class_object)
        attached.pop()
        if not attached:
            del self.extensions[target.name]


@native("object Meta.attachShell(Any,Any)")
def _attach_shell(rt, this, args):
    rt.meta.attach_shell(args[0], args[1])


@native("object Meta.removeShell(Any)")
def _remove_shell(rt, this, args):
    rt.meta.remove_shell(args[0])


@native("object Meta.attachExtension(AnyClassObject,Any)")
def _attach_extension(rt, this, args):
    rt.meta.attach_extension(args[0], args[1])


@native("object Meta.removeExtension(AnyClassObject)")
def _remove_extension(rt, this, args):
    rt.meta.remove_extension(args[0])
