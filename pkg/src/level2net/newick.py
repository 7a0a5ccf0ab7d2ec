"""Extended Newick reading and canonical writing.

Reticulations are tagged ``#H<k>``; the tag appears once on the occurrence
that carries the subtree and once more, bare, under the second parent.
"""

from __future__ import annotations

import re

from .network import Network, canonical_labeling

_NAME = re.compile(r"[A-Za-z0-9_.\-]+")
_TAG = re.compile(r"#([A-Za-z]*)(\d+)")
_LENGTH = re.compile(r":[0-9eE.+\-]*")


class NewickError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line, self.column = line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.arcs: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}
        self.next_id = 0
        self.tags: dict[str, int] = {}
        self.tag_seen: dict[str, int] = {}
        self.tag_body: set[str] = set()

    def error(self, message: str):
        raise NewickError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def new_vertex(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def parse(self) -> Network:
        root = self.subtree()
        if self.peek() != ";":
            self.error("expected ';'")
        self.pos += 1
        if self.peek():
            self.error("trailing characters after ';'")
        dangling = [t for t, c in self.tag_seen.items() if c < 2]
        if dangling:
            self.error(f"dangling reticulation tag #{dangling[0]}")
        return Network(self.arcs, self.labels, vertices=[root])

    def subtree(self) -> int:
        kids = []
        if self.peek() == "(":
            self.pos += 1
            kids.append(self.subtree())
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.subtree())
            if self.peek() != ")":
                self.error("expected ',' or ')'")
            self.pos += 1
        self.skip()
        m = _NAME.match(self.text, self.pos)
        name = None
        if m:
            name = m.group()
            self.pos = m.end()
        m = _TAG.match(self.text, self.pos)
        tag = None
        if m:
            tag = m.group(1) + m.group(2)
            self.pos = m.end()
        m = _LENGTH.match(self.text, self.pos)
        if m:
            self.pos = m.end()

        if tag is None:
            v = self.new_vertex()
            if not kids:
                if name is None:
                    self.error("leaf without a taxon name")
                if name in self.labels.values():
                    self.error(f"duplicate taxon {name!r}")
                self.labels[v] = name
        else:
            if tag not in self.tags:
                self.tags[tag] = self.new_vertex()
            v = self.tags[tag]
            self.tag_seen[tag] = self.tag_seen.get(tag, 0) + 1
            if self.tag_seen[tag] > 2:
                self.error(f"reticulation tag #{tag} used more than twice")
            if kids or name is not None:
                if tag in self.tag_body:
                    self.error(f"reticulation #{tag} defined twice")
                self.tag_body.add(tag)
                if not kids:
                    if name in self.labels.values():
                        self.error(f"duplicate taxon {name!r}")
                    self.labels[v] = name
        for k in kids:
            self.arcs.append((v, k))
        return v


def parse_enewick(text: str) -> Network:
    return _Parser(text.strip()).parse()


def write_enewick(net: Network) -> str:
    """Canonical extended Newick: children are ordered by their smallest
    descendant taxon, ties broken by canonical vertex position."""
    _, position = canonical_labeling(net)

    def key(v):
        return (min(net.descendant_taxa(v), default=""), position[v])

    tags: dict = {}
    out: list[str] = []

    def emit(v):
        if net.is_reticulation(v):
            if v in tags:
                out.append(f"#H{tags[v]}")
                return
            tags[v] = len(tags) + 1
        kids = sorted(net.children(v), key=key)
        if kids:
            out.append("(")
            for i, c in enumerate(kids):
                if i:
                    out.append(",")
                emit(c)
            out.append(")")
        else:
            out.append(net.labels[v])
        if v in tags:
            out.append(f"#H{tags[v]}")

    emit(net.root)
    return "".join(out) + ";"


def read_enewick(text: str) -> Network:
    """Parse a document holding one network; lines starting with ``#`` are
    comments and the remaining lines are joined."""
    body = "\n".join("" if line.lstrip().startswith("#") else line
                     for line in text.splitlines())
    return parse_enewick(body)


def load_enewick(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return read_enewick(fh.read())
