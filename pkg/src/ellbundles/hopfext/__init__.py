from .algebroid import AxiomError, HopfAlgebroid, weierstrass, weierstrass_short
from .cobar import CobarComplex, ResourceLimitError, DEFAULT_BASIS_CAP, CAP_ENV
from .chart import (DeltaStabilization, ExtChart, ExtClass, OutOfRange, compare_models,
                    delta_stabilize, delta_torsion_flags, ext_chart, model_for_prime,
                    name_classes, unit_class, yoneda_product)


def build_algebroid() -> HopfAlgebroid:
    """The Weierstraß Hopf algebroid (A = Z[a1,a2,a3,a4,a6], A[r,s,t])."""
    return weierstrass()


def cobar(s_max: int, n_max: int, algebroid: HopfAlgebroid | None = None,
          cap: int | None = None) -> CobarComplex:
    from .cobar import default_cap
    return CobarComplex(algebroid or weierstrass(), s_max, n_max,
                        cap if cap is not None else default_cap())
