"""Bundled example networks, checked when loaded.

``level3_pair`` is a pair of distinct level-3 networks on {a, b, c, d} with
the same trinets, showing that trinets do not encode level-3 networks.
``cherry_2c`` is a level-2 network on generator G2c whose only minimal
cut-arc set is the cherry {c, d}; its trinets are shipped alongside.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .generators import CATALOG, Generator
from .network import Network, isomorphic
from .newick import read_enewick
from .restriction import TrinetCollection, trinets
from .trinet_file import read_trinets


class FixtureError(AssertionError):
    pass


def _text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise FixtureError(message)


@lru_cache(maxsize=None)
def level3_pair() -> tuple[Network, Network]:
    n1 = read_enewick(_text("level3_a.enwk"))
    n2 = read_enewick(_text("level3_b.enwk"))
    for n in (n1, n2):
        _check(not n.validate() and n.is_recoverable(), "level-3 fixture is not a valid network")
        _check(n.level() == 3, f"level-3 fixture has level {n.level()}")
    _check(not isomorphic(n1, n2), "level-3 fixtures are isomorphic")
    _check(set(trinets(n1).keys()) == set(trinets(n2).keys()),
           "level-3 fixtures have different trinets")
    return n1, n2


@lru_cache(maxsize=None)
def cherry_2c() -> Network:
    n = read_enewick(_text("cherry_2c.enwk"))
    _check(not n.validate() and n.is_recoverable() and n.level() == 2,
           "cherry_2c is not a recoverable level-2 network")
    _check(n.cut_arc_sets().minimal_sets == {frozenset("cd")},
           "cherry_2c must have {c, d} as its only minimal cut-arc set")
    return n


def cherry_2c_trinets() -> TrinetCollection:
    t = read_trinets(_text("cherry_2c.tnt").splitlines())
    _check(t == trinets(cherry_2c()), "cherry_2c.tnt differs from the network's trinets")
    return t


def generators() -> dict[str, Generator]:
    return dict(CATALOG)
