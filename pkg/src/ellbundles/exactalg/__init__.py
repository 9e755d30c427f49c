from .rings import (GradedRing, GradedElement, RingMap, Integers, LocalizedAt, FiniteField, ZZ,
                    HomogeneityError, monomials_of_degree)
from .matrix import SparseIntMatrix
from .smith import SmithForm, smith_normal_form, matrix_rank
from .homology import (FGAbGroup, HomologyData, homology_at, homology_with_generators,
                       localize_at_p, p_part)

__all__ = [
    "GradedRing", "GradedElement", "RingMap", "Integers", "LocalizedAt", "FiniteField", "ZZ",
    "HomogeneityError", "monomials_of_degree", "SparseIntMatrix", "SmithForm",
    "smith_normal_form", "matrix_rank", "FGAbGroup", "HomologyData", "homology_at",
    "homology_with_generators", "localize_at_p", "p_part",
]
