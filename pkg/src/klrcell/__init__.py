"""Exact computations in finite type quiver Hecke (KLR) algebras:
normal-form arithmetic, q-characters, and degreewise verification of the
affine cell chain."""

from .cartan import (CartanDatum, ConvexOrder, Root, UnsupportedTypeError,
                     build_cartan, check_convexity, lyndon_order, lyndon_word,
                     positive_roots)
from .characters import (Character, FreeAlgebraElement, dimension_formula,
                         lusztig_pairing, shuffle_product)
from .klr import (Algebra, KlrElement, ParabolicEmbedding, algebra,
                  generator_e, generator_psi, generator_y,
                  graded_component_basis, iota, multiply, nilhecke_elements,
                  psi_w, tau)
from .laurent import LaurentSeries, l_pi, quantum_factorial, quantum_integer, word_factorial
from .modules import (CuspidalRealization, HomogeneousModule, RootPartition,
                      cuspidal_character, e8_theta_coefficient,
                      homogeneous_module, proper_standard_character,
                      root_partitions, standard_characters,
                      word_graph_components)
from .cellular import (CellChainReport, CellDatum, HypothesisReport,
                       block_elements, cell_datum, ideal_component,
                       pi_elements, verify_cell_chain, verify_hypothesis)

__version__ = "0.1.0"
