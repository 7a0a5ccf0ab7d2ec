"""Rooted binary level-2 phylogenetic networks rebuilt from their trinets."""

from .network import Network, NetworkError, isomorphic
from .newick import load_enewick, parse_enewick, write_enewick
from .reconstruct import ReconstructionReport, reconstruct
from .restriction import TrinetCollection, binets_and_trinets, restrict, trinets

__all__ = [
    "Network", "NetworkError", "ReconstructionReport", "TrinetCollection",
    "binets_and_trinets", "isomorphic", "load_enewick", "parse_enewick",
    "reconstruct", "restrict", "trinets", "write_enewick",
]
