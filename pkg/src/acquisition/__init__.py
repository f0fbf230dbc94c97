from .kinds import AcquisitionKind, AcquisitionName, Selection, ThetaRule
from .selectors import (ei_scores, ei_select, est_prob_exact, est_select, gamma, pi_probabilities, pi_select,
                        random_select, ucb_lambda, ucb_select, ucb_variant_select)
from .strategy import estimate_max, select

__all__ = [
    'AcquisitionKind', 'AcquisitionName', 'Selection', 'ThetaRule',
    'ei_scores', 'ei_select', 'est_prob_exact', 'est_select', 'gamma', 'pi_probabilities', 'pi_select',
    'random_select', 'ucb_lambda', 'ucb_select', 'ucb_variant_select', 'estimate_max', 'select',
]
