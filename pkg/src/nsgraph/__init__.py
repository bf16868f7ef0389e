"""Nonstandard graphs of rank 0 and 1: distances, galaxies and their closeness order."""

from .catalog import builtin, builtin_names
from .filters import FRECHET, FilterVerdict, IndexSet, UltrafilterOracle
from .galaxies0 import (Answer, Closeness, GalaxyHandle, chain_thm42, closer_than, is_principal,
                        koenig_witness, limitedly_distant, partial_order_check, same_galaxy)
from .galaxies1 import (chain_thm112, classify_one_galaxies, classify_zero_galaxies, closer_than_1,
                        one_limitedly_distant, partial_order_check_1, thm103_witness)
from .graphone import OneGraphPresentation, walk_length, wdistance
from .graphzero import GraphPresentation, NodeRef, distance, load_graph, parse_node, sphere
from .ordinals import OMEGA, ZERO, Ordinal, natural_sum
from .sequences import DefinableSequence, lift
from .ultrapower import Hyperbranch, Hypernode, HyperOrdinal, hyperdistance

__version__ = "0.1.0"
