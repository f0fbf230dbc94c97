from .gp_objectives import (GridObjective, make_branin_objective, make_gp_objective, make_hartmann3_objective,
                            unit_grid)
from .suite import (AcquisitionStats, FunctionFamily, SuiteRun, SuiteSpec, SuiteStats, build_run, curve_summary,
                    minima_summary, run_suite)
from .standard_functions import branin, branin_batch, hartmann3, hartmann3_batch

__all__ = [
    'GridObjective', 'make_branin_objective', 'make_gp_objective', 'make_hartmann3_objective', 'unit_grid',
    'AcquisitionStats', 'FunctionFamily', 'SuiteRun', 'SuiteSpec', 'SuiteStats', 'build_run', 'curve_summary',
    'minima_summary', 'run_suite', 'branin', 'branin_batch', 'hartmann3', 'hartmann3_batch',
]
