"""Numerical laboratory for two-region splicing of maps on cylinders."""

from .cutoff import (BaseCutoff, CutoffFamily, CutoffParams, GluingProfile,
                     feasibility_check, length_function)
from .grid import (CylinderGrid, DiscreteMap, DomainError, d_s, d_t,
                   make_grid, map_from_function, max_abs, multiply_profile,
                   resample, restrict, translate, zero_map)
from .spaces import (OperatorProbe, WeightSpec, jensen_gap, lp_norm,
                     make_probes, norm_weighted, op_norm_lower, pair_norm,
                     weight_eval)
from .splicing import (GluedPair, GluingParam, MapPair, complex_glue,
                       connection_omega, exponential_pair, random_pair,
                       splicing_matrix, total_glue, total_unglue)
from .filled import (covariant_dt, deriv_map, deriv_neck, deriv_twist,
                     deriv_xy, error_term, filled_conjugated, filled_direct)
from .harness import (CHECK_IDS, CheckResult, CheckSpec, fit_rate, run_all,
                      run_check)

__all__ = [name for name in dir() if not name.startswith("_")]
