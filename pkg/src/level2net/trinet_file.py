"""Trinet list files: one extended-Newick binet or trinet per line.

Blank lines and lines starting with ``#`` are ignored; a repeated line
adds to the multiplicity of its network.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .newick import NewickError, parse_enewick, write_enewick
from .restriction import TrinetCollection


class TrinetFileError(ValueError):
    pass


def read_trinets(lines: Iterable[str]) -> TrinetCollection:
    out = TrinetCollection()
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.add(parse_enewick(line))
        except NewickError as exc:
            raise TrinetFileError(f"line {lineno}: {exc}") from exc
    return out


def load_trinets(path) -> TrinetCollection:
    with open(path, encoding="utf-8") as fh:
        return read_trinets(fh)


def format_trinets(collection: TrinetCollection, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for net, mult in collection:
        text = write_enewick(net)
        lines.extend([text] * mult)
    return "\n".join(lines) + "\n"


def write_trinets(collection: TrinetCollection, fh: TextIO, header: str | None = None) -> None:
    fh.write(format_trinets(collection, header))
