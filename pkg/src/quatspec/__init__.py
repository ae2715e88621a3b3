"""quatspec: numerically verified quaternionic operator theory.

Quaternions and Cassini geometry (quatcore), quaternionic matrices over
their complex adjoint representation (hmat), pseudo-resolvents and left/
right S-resolvents with their two-point identities (sresolvent), the
S-spectrum with localization bounds (spectrum), spherical series
expansions with certified tails (series), slice/stem function tools
(sliceanalysis), a seeded identity suite (verify), and a CLI (cli).
"""

from .errors import (DegenerateConfiguration, InputError, NotInResolventSet,
                     OutsideConvergenceDomain, QuatspecError, SingularOperator)
from .hmat import (HVector, QMatrix, chi, from_chi, matvec, op_norm,
                   qmat_inverse, qmatrix_from_json_dict, qmatrix_to_json_dict,
                   random_qmatrix, smallest_singular)
from .quatcore import (QI, QJ, QK, CassiniBall, Quaternion, SpherePoint,
                       cassini_u, point_at_cassini_distance, qinv, qmul, qpow,
                       same_sphere, sphere_of, spherical_power,
                       spherical_power_sderiv, triangle)
from .series import (SeriesState, certified_real_point, converge_series_Q,
                     converge_series_S, eval_series_Q, eval_series_S,
                     remainder_exact, series_init, tail_bound_Q, tail_bound_S)
from .sliceanalysis import (SliceEvaluator, StemPair, cauchy_coeffs,
                            cr_residual, s_resolvent_map, sderiv_operator,
                            slice_point, stem_decompose, stem_reconstruct,
                            taylor_eval)
from .spectrum import (SpectrumResult, blowup_probe, boundary_polyline,
                       cassini_dist, cor1_check, in_resolvent,
                       s_spectrum, sample_cassini_ball)
from .sresolvent import (ResolventBundle, delta_op, resolvent_bundle,
                         residual_AS_identity, residual_mixed_eq,
                         residual_q_eq, residual_resolvent_eq)
from .verify import SuiteRow, run_identity_suite

__version__ = "0.1.0"

__all__ = [
    "CassiniBall", "DegenerateConfiguration", "HVector", "InputError",
    "NotInResolventSet", "OutsideConvergenceDomain", "QI", "QJ", "QK",
    "QMatrix", "Quaternion", "QuatspecError", "ResolventBundle",
    "SeriesState", "SingularOperator", "SliceEvaluator", "SpectrumResult",
    "SpherePoint", "StemPair", "SuiteRow", "blowup_probe",
    "boundary_polyline", "cassini_dist", "cassini_u", "cauchy_coeffs",
    "certified_real_point", "chi", "converge_series_Q", "converge_series_S",
    "cor1_check", "cr_residual", "delta_op", "eval_series_Q",
    "eval_series_S", "from_chi", "in_resolvent", "matvec", "op_norm",
    "point_at_cassini_distance", "qinv", "qmat_inverse",
    "qmatrix_from_json_dict", "qmatrix_to_json_dict", "qmul", "qpow",
    "random_qmatrix", "remainder_exact", "resolvent_bundle",
    "residual_AS_identity", "residual_mixed_eq", "residual_q_eq",
    "residual_resolvent_eq", "run_identity_suite", "s_resolvent_map",
    "s_spectrum", "same_sphere", "sample_cassini_ball", "sderiv_operator",
    "series_init", "slice_point", "smallest_singular",
    "sphere_of", "spherical_power", "spherical_power_sderiv",
    "stem_decompose", "stem_reconstruct", "tail_bound_Q", "tail_bound_S",
    "taylor_eval", "triangle",
]
