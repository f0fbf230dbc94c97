from .grid import CandidateGrid
from .kernels import KernelFamily, KernelSpec, kernel_eval
from .likelihood import log_marginal_likelihood, refit_hyperparameters
from .means import MeanKind, MeanSpec
from .model import GpModel, History
from .posterior import Posterior, fit_posterior, posterior_cov, predict
from .sampling import sample_function

__all__ = [
    'CandidateGrid', 'KernelFamily', 'KernelSpec', 'kernel_eval',
    'log_marginal_likelihood', 'refit_hyperparameters', 'MeanKind', 'MeanSpec',
    'GpModel', 'History', 'Posterior', 'fit_posterior', 'posterior_cov', 'predict',
    'sample_function',
]
