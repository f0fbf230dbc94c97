from .bounds import BoundReport, ZetaSchedule, bound_report, information_gain, regret_constant, zeta_schedule
from .loop import RefitPolicy, RoundRecord, RunConfig, RunResult, choose, model_for_round, run

__all__ = [
    'BoundReport', 'ZetaSchedule', 'bound_report', 'information_gain', 'regret_constant', 'zeta_schedule',
    'RefitPolicy', 'RoundRecord', 'RunConfig', 'RunResult', 'choose', 'model_for_round', 'run',
]
