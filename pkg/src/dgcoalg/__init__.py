"""Exact computations with dg operads and their coalgebras over a field."""

from .chain_complex import ChainComplex, GradedVectorSpace, LinearMap, homology
from .coalgebra import (AInftyCoalgebra, CellCoalgebra, PCoalgebra, glue_cell_coalgebra,
                        lift_cell_structure, restrict_cells, verify_ainfty, verify_pcoalgebra)
from .dual_schur import cofree_coalgebra, dual_schur_apply
from .field import F2, QQ, Field
from .operad import Report, check_operad
from .symmetric_sequence import SymmetricSequence, compose_product
from .trees import FreeOperad, QuasiFreePresentation, ainfty_presentation, free_operad

__version__ = "0.1.0"
