"""
Run-time values.

Basic values are plain Python values: ``bool``, ``int`` for byte, integer
and long, a one-character ``str`` for char, ``numpy.float32`` for real and
``float`` for double. Strings are Python ``str`` as well and ``nil`` is
``None``. Everything else is one of the classes below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..symbols import ClassSymbol, MethodSymbol
from ..typesys import TypeDescriptor


class Obj:
    """An object of a class: its fields by slot and its shell stack."""

    __slots__ = ("cls", "fields", "shells", "payload", "__weakref__")

    def __init__(self, cls: ClassSymbol, fields: List[Any], payload: Any = None):
        self.cls = cls
        self.fields = fields
        self.shells: List[ShellInstance] = []
        self.payload = payload

    def __repr__(self) -> str:
        return f"<{self.cls.name} object>"


class ClassObj(Obj):
    """The single instance of a class object."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"<class object {self.cls.name}>"


class ShellInstance:
    """Variables of one shell or extension attached to one object."""

    __slots__ = ("shell", "fields")

    def __init__(self, shell: ClassSymbol, fields: List[Any]):
        self.shell = shell
        self.fields = fields

    def __repr__(self) -> str:
        return f"<shell {self.shell.name}>"


@dataclass(eq=False)
class ShellPrototype:
    """``S.new(args)`` for a shell class S: what attachShell will install."""
    shell: ClassSymbol
    init: Optional[MethodSymbol] = None
    args: List[Any] = field(default_factory=list)


@dataclass(eq=False)
class IterValue:
    """``DS.Iter(T)``: a cursor over a snapshot."""
    descriptor: TypeDescriptor
    items: List[Any]
    position: int = 0

    def more(self) -> bool:
        return self.position < len(self.items)

    def next(self) -> Any:
        item = self.items[self.position]
        self.position += 1
        return item

    def reset(self) -> None:
        self.position = 0


@dataclass(eq=False)
class StackValue:
    """``DS.Stack(T)``: items from bottom to top."""
    descriptor: TypeDescriptor
    items: List[Any]


@dataclass(eq=False)
class Frame:
    """One method activation."""
    method: Optional[MethodSymbol]
    this: Any
    locals: Dict[str, Any] = field(default_factory=dict)
    # shell or extension instance whose method runs, and its dispatch layer
    holder: Optional[ShellInstance] = None
    layer: int = -1
    result: Any = None
    # basic kind of a numeric ``this``
    kind: Optional[str] = None


# -- control transfer -----------------------------------------------------

class ReturnSignal(Exception):
    def __init__(self, value: Any = None):
        self.value = value


class BreakSignal(Exception):
    pass


class GreenExit(Exception):
    """``Runtime.exit`` or a terminating handler."""

    def __init__(self, status: int):
        self.status = status
        super().__init__(status)


class GreenUnwind(Exception):
    """Unwinds the call stack to the try statement whose catch object handles ``exception``."""

    def __init__(self, entry: Any, exception: Obj, handler: MethodSymbol):
        self.entry = entry
        self.exception = exception
        self.handler = handler
        super().__init__(exception.cls.name)


POISONED = object()


def same(a: Any, b: Any) -> bool:
    """Reference comparison; strings compare by contents."""
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    return a is b
