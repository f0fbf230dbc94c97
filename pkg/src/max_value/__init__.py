from .estimators import (LipschitzSpec, MaxEstimate, MaxMethod, m_hat_exact_noisy, m_hat_laplace,
                         m_hat_numeric, prior_anchor)
from .integrand import g_curve, g_integrand, log_max_cdf

__all__ = [
    'LipschitzSpec', 'MaxEstimate', 'MaxMethod', 'm_hat_exact_noisy', 'm_hat_laplace', 'm_hat_numeric',
    'prior_anchor', 'g_curve', 'g_integrand', 'log_max_cdf',
]
