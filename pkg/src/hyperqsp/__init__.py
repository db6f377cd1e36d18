"""Signal processing with SU(1,1) boosts: protocols, polynomials, synthesis and mode maps."""

__version__ = "0.1.0"

from .algebra import (BOOST, CIRCULAR, HYPERBOLIC, ROTATION, SU2_TO_SU11, SU11_TO_SU2, Mat2, PhaseList, Signal,
                      eval_protocol, phased_boost, phased_iterate, pseudo_unitary_defect, rotation_decompose,
                      substitute_picture, unitary_defect)
from .approx import FitDomain, OrthoBasis, fit_target, generalized_coeffs, gram_schmidt_basis, inner_product, parseval_defect
from .errors import (DegenerateRotationError, DomainError, FactorizationError, HyperQSPError, InfeasibleError,
                     InvariantError, NotCompletableError, StrippingError)
from .modes import (BogoliubovMap, StagedInterferometer, commutator_defect, composite_mode_map,
                    controlled_squeeze_branches, low_gain_effective, staged_amplitude_exact)
from .polyring import ParityPoly, TransferPair, compose_pair, eval_poly, identity_defect, protocol_to_pair
from .protocols import (ConstantProtocol, StepSpec, asymptote, bound, constant_closed_form, constant_oracle,
                        gen_constant, gen_monotone_amplify, gen_trivial, min_length_estimate, weak_step_check)
from .synthesis import CompletionInput, SpectralFactor, build_F, complete_pair, factor_F, layer_strip, synthesize
