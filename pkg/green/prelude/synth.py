"""
Catch classes generated for the exception classes of a program.

For every exception class E the library offers ``CatchE``, whose handler
does nothing, and ``HCatchE``, whose handler reports the exception and ends
the program. ``CatchUncheckedException`` re-throws every unchecked exception
and ``HCatchUncheckedException`` is the handler installed at the bottom of the
catch stack. The classes are produced as Green source so they go through the
same parser and checker as everything else.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Set

from ..syntax import ClassDecl, Program

logger = logging.getLogger(__name__)

SYNTH_FILE = "<synthesized>"

_CATCH_STATE = """\
    proc initialize()
      begin
      exceptionObject = nil;
      classException = nil;
      wasFixed = false;
      end
    proc set( p_exceptionObject : Exception; p_classException : AnyClassObject )
      begin
      exceptionObject = p_exceptionObject;
      classException = p_classException;
      end
    proc getException() : Exception
      begin
      return exceptionObject;
      end
    proc getClassException() : AnyClassObject
      begin
      return classException;
      end
    proc wasThrown() : boolean
      begin
      return exceptionObject <> nil;
      end
    proc fixed() : boolean
      begin
      if wasThrown() and wasFixed
      then
        wasFixed = false;
        return true;
      else
        return false;
      endif
      end
    proc setFixed( p_wasFixed : boolean )
      begin
      wasFixed = p_wasFixed;
      end
    proc getClassInfo() : ClassInfo
      begin
      return nil;
      end
    proc getClassObject() : AnyClassObject
      begin
      return self;
      end
"""

_CATCH_VARS = """\
  private:
    var exceptionObject : Exception;
        classException : AnyClassObject;
        wasFixed : boolean;
"""


class ExceptionTree:
    """Superclass links of every declared class, by name."""

    def __init__(self, programs: Iterable[Program]):
        self.parents: Dict[str, Optional[str]] = {}
        self.declared: Set[str] = set()
        self.order: List[str] = []
        for program in programs:
            for decl in program.decls:
                self.declared.add(decl.name)
                if isinstance(decl, ClassDecl) and decl.name not in self.parents:
                    self.parents[decl.name] = decl.superclass
                    self.order.append(decl.name)

    def chain(self, name: str) -> List[str]:
        seen: List[str] = []
        current: Optional[str] = name
        while current is not None and current not in seen:
            seen.append(current)
            current = self.parents.get(current)
        return seen

    def is_exception(self, name: str) -> bool:
        return "Exception" in self.chain(name) and name in self.parents

    def is_unchecked(self, name: str) -> bool:
        return "UncheckedException" in self.chain(name)

    def depth(self, name: str) -> int:
        return len(self.chain(name))

    def exceptions(self) -> List[str]:
        return [n for n in self.order if self.is_exception(n)]

    def unchecked(self) -> List[str]:
        """Unchecked exception classes, most derived first."""
        names = [n for n in self.order if self.is_exception(n) and self.is_unchecked(n)]
        return sorted(names, key=lambda n: -self.depth(n))


def _rethrow(name: str) -> str:
    return (f"    proc throw( exc : {name} ) ( exception : CatchUncheckedException )\n"
            f"      begin\n      exception.throw(exc);\n      end\n")


def _report(name: str) -> str:
    return (f"    proc throw( exc : {name} )\n"
            f"      begin\n"
            f"      OutError.writeln(\"Exception {name} not caught\");\n"
            f"      Runtime.exit(1);\n"
            f"      end\n")


def synthesize(programs: List[Program]) -> str:
    """Green source of the generated catch classes that are not user-declared."""
    tree = ExceptionTree(programs)
    unchecked = tree.unchecked()
    parts: List[str] = []

    def emit(name: str, text: str) -> None:
        if name in tree.declared:
            logger.debug("keeping declared %s", name)
            return
        tree.declared.add(name)
        parts.append(text)

    emit("CatchUncheckedException",
         "class CatchUncheckedException subclassOf Catch\n"
         "    proc init()\n      begin\n      super.init();\n      end\n"
         "  public:\n" + "".join(_rethrow(n) for n in unchecked) + "end\n")
    emit("HCatchUncheckedException",
         "class HCatchUncheckedException subclassOf Catch\n"
         "    proc init()\n      begin\n      super.init();\n      end\n"
         "  public:\n" + "".join(_report(n) for n in unchecked) + "end\n")

    for name in tree.exceptions():
        emit(f"Catch{name}",
             f"class Catch{name} subclassOf CatchUncheckedException\n"
             f"    proc init()\n      begin\n      super.init();\n      end\n"
             f"  public:\n"
             f"    proc throw( exc : {name} )\n      begin\n      end\n"
             f"end\n")
        emit(f"HCatch{name}",
             f"class HCatch{name} subclassOf CatchUncheckedException\n"
             f"    proc init()\n      begin\n      super.init();\n      end\n"
             f"  public:\n" + _report(name) + "end\n")

    emit("CatchAll",
         "object CatchAll\n"
         "  public:\n" + _CATCH_STATE +
         "    proc throw( exc : Exception )\n      begin\n      end\n"
         + "".join(_rethrow(n) for n in unchecked) + _CATCH_VARS + "end\n")
    emit("HCatchAll",
         "object HCatchAll\n"
         "  public:\n" + _CATCH_STATE +
         "    proc throw( exc : Exception )\n      native;\n"
         + "".join(_rethrow(n) for n in unchecked) + _CATCH_VARS + "end\n")

    logger.debug("synthesized %d catch declarations for %d exception classes",
                 len(parts), len(tree.exceptions()))
    return "\n".join(parts)

