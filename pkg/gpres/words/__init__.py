from .abelian import AbelianVector, IntegerLattice, abelian_congruent, abelianize
from .alphabet import Alphabet, Letter
from .cyclic import (
    CyclicWord,
    cyclic_core,
    cyclic_reduce,
    is_conjugate_free,
    proper_power_root,
)
from .enumerate import ball, enumerate_reduced
from .syntax import WordSyntaxError, format_word, parse_word
from .word import Word, concat, invert, kill_generators, power, product, reduce

__all__ = [
    "AbelianVector",
    "Alphabet",
    "CyclicWord",
    "IntegerLattice",
    "Letter",
    "Word",
    "WordSyntaxError",
    "abelian_congruent",
    "abelianize",
    "ball",
    "concat",
    "cyclic_core",
    "cyclic_reduce",
    "enumerate_reduced",
    "format_word",
    "invert",
    "is_conjugate_free",
    "kill_generators",
    "parse_word",
    "power",
    "product",
    "proper_power_root",
    "reduce",
]
