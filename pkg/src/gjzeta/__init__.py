"""Exact Godement-Jacquet zeta integrals and gamma factors on GL_n(Q_p),
with a numeric real-place companion and a batch verification CLI."""

from .archimedean import (QuadratureConfig, RealCharacter, RealSchwartzFn,
                          fourier_real, gamma_oracle, gamma_real, zeta_real)
from .distributions import (DIRECT, INVERSE, TwistedDistribution,
                            closed_form_inverse, cstar_gamma, det_twist,
                            gj_delta, spectral_action, tilde,
                            verify_bk_identity, verify_inverse_weak,
                            verify_relation)
from .errors import (AllDegenerate, BudgetExceeded, EngineError,
                     InfiniteLowerSupport, LevelUncertified,
                     NearZeroDenominator, NoRecurrence, NoStabilization,
                     Singular, ToleranceNotMet, ZeroArgument, ZeroDenominator)
from .integrate import IntegrationConfig, rationalize, schwartz_shell_integral
from .padic import PAdicContext, PAdicMatrix, psi_value, valuation
from .ratfun import LaurentPoly, RationalFunctionT, ratfun_equal
from .scalars import (CyclotomicNumber, QuadExt, as_scalar, embed_complex,
                      root_of_unity, sqrt_q, sqrt_q_power)
from .schwartz import SchwartzBruhatFn
from .zeta import (GammaResult, MultiplicativeCharacter, ZetaResult,
                   contragredient_twist, dual_gamma_factor, gamma_factor,
                   phi_independence_check, zeta_integral)

__version__ = "0.1.0"
