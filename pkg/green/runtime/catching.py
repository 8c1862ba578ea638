"""
The stack of catch objects.

Every ``try(c)`` pushes ``c`` and pops it when the statement ends, however
it ends. The entry at the bottom holds the default catch object, a
``HCatchUncheckedException`` unless the program replaced it with
``Runtime.setCatchUnchecked``. A thrown exception is offered to the catch
objects from the top down; within one catch object the one-parameter
``throw`` methods are tried in the order they were written, those of the
object's own class before inherited ones.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterator, List, Optional, Tuple

from ..symbols import ClassSymbol, MethodSymbol
from ..typesys import TypeDescriptor

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class CatchEntry:
    catch: Any
    # number of method activations when the try started
    depth: int


class CatchStack:
    def __init__(self) -> None:
        self._entries: List[CatchEntry] = []

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[CatchEntry]:
        return iter(self._entries)

    def __getitem__(self, index: int) -> CatchEntry:
        return self._entries[index]

    def push(self, catch: Any, depth: int) -> CatchEntry:
        entry = CatchEntry(catch, depth)
        self._entries.append(entry)
        return entry

    def truncate(self, size: int) -> None:
        del self._entries[size:]

    def top(self) -> Optional[CatchEntry]:
        return self._entries[-1] if self._entries else None

    @property
    def bottom(self) -> Optional[CatchEntry]:
        return self._entries[0] if self._entries else None

    def replace_bottom(self, catch: Any) -> None:
        if self._entries:
            self._entries[0].catch = catch

    def snapshot(self) -> List[Any]:
        return [entry.catch for entry in self._entries]


def find_handler(stack: CatchStack, thrown: TypeDescriptor, class_of: Callable[[Any], Optional[ClassSymbol]],
                 matches: Callable[[TypeDescriptor, TypeDescriptor], bool]) -> Optional[Tuple[int, MethodSymbol]]:
    """Index of the catch entry and the throw method that receive ``thrown``."""
    for index in range(len(stack) - 1, -1, -1):
        catch = stack[index].catch
        symbol = class_of(catch)
        if symbol is None:
            continue
        for method in symbol.throw_methods():
            if matches(thrown, method.params[0]):
                logger.debug("%s handled by %s at catch level %d", thrown.name, method.qualified, index)
                return index, method
    return None
