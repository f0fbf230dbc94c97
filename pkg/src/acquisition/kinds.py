from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Union

from config.settings import settings
from max_value import MaxEstimate
from utils.errors import ConfigError
from utils.validators import require_nonnegative, require_probability


class AcquisitionName(str, Enum):
    UCB = 'ucb'
    EI = 'ei'
    PI = 'pi'
    EST_NUMERIC = 'est_numeric'
    EST_LAPLACE = 'est_laplace'
    EST_EXACT = 'est_exact'
    RANDOM = 'random'


class ThetaRule(str, Enum):
    BEST_OBSERVED = 'best_observed'
    BEST_OBSERVED_PLUS_EPS = 'best_observed_plus_eps'


LABELS = {
    AcquisitionName.UCB: 'UCB',
    AcquisitionName.EI: 'EI',
    AcquisitionName.PI: 'PI',
    AcquisitionName.EST_NUMERIC: 'ESTn',
    AcquisitionName.EST_LAPLACE: 'ESTa',
    AcquisitionName.EST_EXACT: 'ESTe',
    AcquisitionName.RANDOM: 'Rand',
}

EST_NAMES = (AcquisitionName.EST_NUMERIC, AcquisitionName.EST_LAPLACE, AcquisitionName.EST_EXACT)

_FIELDS = {'name', 'delta', 'epsilon', 'theta_rule', 'seed'}


@dataclass(frozen=True)
class AcquisitionKind:
    name: AcquisitionName
    delta: float = settings.UCB_DELTA
    epsilon: float = 0.0
    theta_rule: ThetaRule = ThetaRule.BEST_OBSERVED
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'name', AcquisitionName(self.name))
        object.__setattr__(self, 'theta_rule', ThetaRule(self.theta_rule))
        require_probability(self.delta, "delta")
        require_nonnegative(self.epsilon, "epsilon")

    @classmethod
    def ucb(cls, delta: float = settings.UCB_DELTA) -> 'AcquisitionKind':
        return cls(AcquisitionName.UCB, delta=delta)

    @classmethod
    def ei(cls, theta_rule: ThetaRule = ThetaRule.BEST_OBSERVED, epsilon: float = 0.0) -> 'AcquisitionKind':
        return cls(AcquisitionName.EI, theta_rule=theta_rule, epsilon=epsilon)

    @classmethod
    def pi(cls, epsilon: float = settings.PI_EPSILON) -> 'AcquisitionKind':
        return cls(AcquisitionName.PI, epsilon=epsilon, theta_rule=ThetaRule.BEST_OBSERVED_PLUS_EPS)

    @classmethod
    def est_numeric(cls) -> 'AcquisitionKind':
        return cls(AcquisitionName.EST_NUMERIC)

    @classmethod
    def est_laplace(cls) -> 'AcquisitionKind':
        return cls(AcquisitionName.EST_LAPLACE)

    @classmethod
    def est_exact(cls) -> 'AcquisitionKind':
        return cls(AcquisitionName.EST_EXACT)

    @classmethod
    def random(cls, seed: int = 0) -> 'AcquisitionKind':
        return cls(AcquisitionName.RANDOM, seed=seed)

    @property
    def label(self) -> str:
        return LABELS[self.name]

    @property
    def is_est(self) -> bool:
        return self.name in EST_NAMES

    def threshold_offset(self) -> float:
        """Amount added to the best observation to form theta for EI/PI"""
        if self.name == AcquisitionName.PI or self.theta_rule == ThetaRule.BEST_OBSERVED_PLUS_EPS:
            return self.epsilon
        return 0.0

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name.value}
        if self.name == AcquisitionName.UCB:
            data['delta'] = self.delta
        elif self.name == AcquisitionName.EI:
            data['theta_rule'] = self.theta_rule.value
            data['epsilon'] = self.epsilon
        elif self.name == AcquisitionName.PI:
            data['epsilon'] = self.epsilon
        elif self.name == AcquisitionName.RANDOM:
            data['seed'] = self.seed
        return data

    @classmethod
    def from_dict(cls, data: Union[str, Dict[str, Any]], path: str = 'acquisition') -> 'AcquisitionKind':
        """Accepts a bare name or a mapping with name plus parameters"""
        if isinstance(data, str):
            data = {'name': data}
        if not isinstance(data, dict) or 'name' not in data:
            raise ConfigError(f"{path}: expected a name or an object with a 'name' key")
        unknown = sorted(set(data) - _FIELDS)
        if unknown:
            raise ConfigError(f"unknown key '{path}.{unknown[0]}'")
        try:
            name = AcquisitionName(data['name'])
        except ValueError:
            choices = ', '.join(n.value for n in AcquisitionName)
            raise ConfigError(f"{path}.name: unknown acquisition '{data['name']}' (choose from {choices})")
        try:
            if name == AcquisitionName.UCB:
                return cls.ucb(float(data.get('delta', settings.UCB_DELTA)))
            if name == AcquisitionName.EI:
                return cls.ei(ThetaRule(data.get('theta_rule', ThetaRule.BEST_OBSERVED.value)),
                              float(data.get('epsilon', 0.0)))
            if name == AcquisitionName.PI:
                return cls.pi(float(data.get('epsilon', settings.PI_EPSILON)))
            if name == AcquisitionName.RANDOM:
                return cls.random(int(data.get('seed', 0)))
            return cls(name)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{path}: {e}")


@dataclass(frozen=True)
class Selection:
    index: int
    score: float
    m_hat: Optional[float] = None
    nu_t: Optional[float] = None
    lambda_equiv: Optional[float] = None
    theta_equiv: Optional[float] = None
    estimate: Optional[MaxEstimate] = field(default=None, compare=False)

    def diagnostics(self, kind: AcquisitionKind) -> Dict[str, Any]:
        return {
            'acquisition': kind.label,
            'index': self.index,
            'score': self.score,
            'm_hat': self.m_hat,
            'nu_t': self.nu_t,
            'lambda_equiv': self.lambda_equiv,
            'theta_equiv': self.theta_equiv,
        }
