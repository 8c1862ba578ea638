"""
Array objects.

An ``array(T)[]...[]`` value with n brackets stores its rows as arrays with
n - 1 brackets. Rows that were not given a size stay ``nil``, as in
``array(integer)[][].new(10)``.
"""

from __future__ import annotations

from typing import Any, Callable, List, Optional, Sequence

from ..typesys import TypeDescriptor


class ArrayFault(Exception):
    """An index outside the array bounds."""

    def __init__(self, index: int, array: "ArrayValue"):
        self.index = index
        self.array = array
        super().__init__(index)


class ArrayValue:
    __slots__ = ("descriptor", "items", "cursor", "step", "__weakref__")

    def __init__(self, descriptor: TypeDescriptor, items: List[Any]):
        self.descriptor = descriptor
        self.items = items
        self.cursor = 0
        self.step = 1

    def __repr__(self) -> str:
        return f"<{self.descriptor.name} of {len(self.items)}>"

    @property
    def dims(self) -> int:
        return self.descriptor.dims

    def get(self, index: int) -> Any:
        if not 0 <= index < len(self.items):
            raise ArrayFault(index, self)
        return self.items[index]

    def set(self, index: int, value: Any) -> None:
        if not 0 <= index < len(self.items):
            raise ArrayFault(index, self)
        self.items[index] = value

    def fill(self, value: Any) -> None:
        self.items[:] = [value] * len(self.items)

    # reset/more/next walk the array from 0 up, or from getSize() - 1 down

    def reset(self, ascending: bool = True) -> None:
        self.step = 1 if ascending else -1
        self.cursor = 0 if ascending else len(self.items) - 1

    def more(self) -> bool:
        return 0 <= self.cursor < len(self.items)

    def next(self) -> Any:
        item = self.get(self.cursor)
        self.cursor += self.step
        return item


def new_array(table, descriptor: TypeDescriptor, sizes: Sequence[int],
              element: Callable[[], Any]) -> ArrayValue:
    """Allocate an array with the given sizes for its leading dimensions.

    ``element`` makes the value stored in each slot of the innermost
    dimension.
    """
    size = sizes[0]
    if size < 0:
        raise ArrayFault(size, ArrayValue(descriptor, []))
    if descriptor.dims == 1:
        return ArrayValue(descriptor, [element() for _ in range(size)])
    row = table.array_of(descriptor.element, descriptor.dims - 1)
    if len(sizes) == 1:
        return ArrayValue(descriptor, [None] * size)
    return ArrayValue(descriptor, [new_array(table, row, sizes[1:], element) for _ in range(size)])


def element_type(table, descriptor: TypeDescriptor) -> TypeDescriptor:
    """Type of the values stored directly in an array of ``descriptor``."""
    if descriptor.dims == 1:
        return descriptor.element
    return table.array_of(descriptor.element, descriptor.dims - 1)


def walk_indices(array: ArrayValue, indices: Sequence[int]) -> ArrayValue:
    """The row reached by all but the last of ``indices``."""
    current: Optional[ArrayValue] = array
    for index in indices[:-1]:
        current = current.get(index)
        if current is None:
            raise ArrayFault(index, array)
    return current
