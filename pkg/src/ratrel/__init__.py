"""Infinitary rational relations as two-tape Buchi transducers.

Membership is decided for ultimately periodic word pairs; the package also
carries the coding of omega^2-words, the relations built on it and oracles
that cross-check each construction.
"""
from .words import LassoWord, parse_lasso
from .transducer import BuchiTransducer, accepts_pair, union
from .grid import GridSpec

__all__ = ["LassoWord", "parse_lasso", "BuchiTransducer", "accepts_pair", "union", "GridSpec"]
__version__ = "0.1.0"
