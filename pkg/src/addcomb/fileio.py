"""File formats and run manifests.

Set files live in sets.py (one rational per line); this module adds the
group-function format, JSON/CSV emission helpers and the manifest recorded
next to every CLI run.  Reports that participate in byte-identical rerun
guarantees never embed wall-clock data; timing lives only in the manifest.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import InvalidInputError
from .groups import FiniteAbelianGroup, GroupFunction


def load_group_function(path) -> GroupFunction:
    """Read the text format: header 'group cyclic n' or 'group cube n',
    then one 're im' rational pair per element."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidInputError(f"{path}: empty group function file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "group" or head[1] not in ("cyclic", "cube"):
        raise InvalidInputError(f"{path}: bad header {lines[0]!r}")
    group = FiniteAbelianGroup(head[1], int(head[2]))
    if len(lines) - 1 != group.order:
        raise InvalidInputError(
            f"{path}: expected {group.order} value lines, found {len(lines) - 1}")
    re, im = [], []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidInputError(f"{path} line {lineno}: expected 're im'")
        re.append(Fraction(parts[0]))
        im.append(Fraction(parts[1]))
    return GroupFunction(group, re, im)


def save_group_function(f: GroupFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"group {f.group.kind} {f.group.n}\n")
        for r, i in zip(f.re, f.im):
            fh.write(f"{r} {i}\n")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Provenance record of one CLI invocation.

    Identical (command, inputs, seed, config, version) imply identical
    deterministic outputs; wall_clock_s is informational and excluded from
    that contract.
    """

    command: str
    inputs: dict = field(default_factory=dict)
    seed: int = 0
    config: dict = field(default_factory=dict)
    version: str = __version__
    wall_clock_s: Optional[float] = None

    @classmethod
    def for_run(cls, command: str, input_paths=(), seed: int = 0,
                config: Optional[dict] = None) -> "RunManifest":
        digests = {str(p): file_digest(p) for p in input_paths}
        return cls(command=command, inputs=digests, seed=seed,
                   config=config or {})

    def to_json(self) -> str:
        data = {"command": self.command, "inputs": self.inputs,
                "seed": self.seed, "config": self.config,
                "version": self.version, "wall_clock_s": self.wall_clock_s}
        return json.dumps(data, sort_keys=True, indent=1) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def write_json(path, data) -> None:
    write_text(path, json.dumps(data, sort_keys=True, indent=1) + "\n")
