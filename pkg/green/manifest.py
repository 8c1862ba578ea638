"""
Allowed-set manifests.

A manifest lists which classes a shell may be attached to, one rule per
line::

    # comments and blank lines are ignored
    allow shell Border on Window, ColorWindow
    allow extension Border on Window

Rules for the same shell accumulate. A shell without a rule may only be
attached to objects of its base class.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Dict, List, Union

from pydantic import BaseModel, Field

from .diagnostics import ManifestError

logger = logging.getLogger(__name__)

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_RULE = re.compile(rf"^allow\s+(shell|extension)\s+({_IDENT})\s+on\s+(.+)$")
_CLASS = re.compile(rf"^{_IDENT}$")


class Manifest(BaseModel):
    """Allowed sets by shell class name."""

    shells: Dict[str, List[str]] = Field(default_factory=dict)
    extensions: Dict[str, List[str]] = Field(default_factory=dict)

    def allow(self, kind: str, shell: str, classes: List[str]) -> None:
        table = self.shells if kind == "shell" else self.extensions
        allowed = table.setdefault(shell, [])
        allowed.extend(name for name in classes if name not in allowed)


def parse_manifest(text: str) -> Manifest:
    manifest = Manifest()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _RULE.match(line)
        if match is None:
            raise ManifestError("expected 'allow shell S on C, ...' or 'allow extension S on C, ...'", number)
        kind, shell, rest = match.groups()
        classes = [name.strip() for name in rest.split(",")]
        for name in classes:
            if not _CLASS.match(name):
                raise ManifestError(f"{name!r} is not a class name", number)
        manifest.allow(kind, shell, classes)
    logger.debug("manifest: %d shell rules, %d extension rules", len(manifest.shells), len(manifest.extensions))
    return manifest


def load_manifest(path: Union[str, Path]) -> Manifest:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from exc
    return parse_manifest(text)
