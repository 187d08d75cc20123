"""Right-angled Artin groups acting on the line by exact PL homeomorphisms.

Left-greedy clique word decompositions, the separating homomorphism for a
nontrivial element, and re-checkable certificates of its nontriviality.
"""

from .decomp import CliqueDecomposition, is_left_greedy, left_greedy_form, slide_left
from .errors import DomainError, InputError, ParseError, VerificationError
from .graph import Graph, adjacent, is_clique
from .plmap import PLMap, compose, evaluate, inverse, power, rho0, support, translate_conjugate
from .witness import (
    Certificate,
    Witness,
    apply_word,
    build_witness,
    choose_spine,
    normalize_to_unit_interval,
    separate_set,
    verify_witness,
)
from .words import CliqueWord, Letter, as_clique_word, highest_power, is_trivial, reduce, word

__version__ = "0.1.0"
