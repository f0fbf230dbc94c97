import os
import sys
from typing import Optional

from dotenv import load_dotenv

# Add the src directory to Python path
SRC_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src')
if SRC_DIR not in sys.path:
    sys.path.insert(0, SRC_DIR)

load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


class Settings:
    # Base directory setup
    BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    DATA_DIR = os.path.join(BASE_DIR, 'data')
    RESULTS_DIR = os.getenv('GPEST_RESULTS_DIR', os.path.join(DATA_DIR, 'results'))
    LOGS_DIR = os.getenv('GPEST_LOGS_DIR', os.path.join(BASE_DIR, 'logs'))

    # Logging
    LOG_LEVEL = os.getenv('GPEST_LOG_LEVEL', 'INFO').upper()
    LOG_TO_FILE = _env_bool('GPEST_LOG_TO_FILE', 'true')

    # GP inference
    JITTER_START = float(os.getenv('GPEST_JITTER_START', '1e-10'))  # relative to sigma_f^2
    JITTER_MAX = float(os.getenv('GPEST_JITTER_MAX', '1e-4'))
    JITTER_GROWTH = float(os.getenv('GPEST_JITTER_GROWTH', '10'))
    PIVOT_FLOOR = float(os.getenv('GPEST_PIVOT_FLOOR', '1e-12'))
    VAR_FLOOR = float(os.getenv('GPEST_VAR_FLOOR', '1e-12'))
    MATERN_NU = float(os.getenv('GPEST_MATERN_NU', '2.5'))

    # Max-value quadrature
    TAIL_EPS = float(os.getenv('GPEST_TAIL_EPS', '1e-10'))
    QUAD_MAX_POINTS = int(os.getenv('GPEST_QUAD_MAX_POINTS', '20000'))
    QUAD_TAIL_SIGMAS = float(os.getenv('GPEST_QUAD_TAIL_SIGMAS', '8'))
    QUAD_STEP_FRACTION = float(os.getenv('GPEST_QUAD_STEP_FRACTION', '0.03125'))  # of the median active std
    LAPLACE_PROBE_FLOOR = float(os.getenv('GPEST_LAPLACE_PROBE_FLOOR', '1e-6'))
    LAPLACE_G_EPS = float(os.getenv('GPEST_LAPLACE_G_EPS', '1e-12'))

    # Acquisition defaults
    UCB_DELTA = float(os.getenv('GPEST_UCB_DELTA', '0.01'))
    PI_EPSILON = float(os.getenv('GPEST_PI_EPSILON', '0.1'))
    ZETA_DELTA = float(os.getenv('GPEST_ZETA_DELTA', '0.01'))

    # Benchmark harness
    BENCH_NOISE_STD = float(os.getenv('GPEST_BENCH_NOISE_STD', '0.001'))

    # CSV output
    FLOAT_FORMAT = '%.17g'

    def seed_override(self) -> Optional[int]:
        """Seed from GPEST_SEED, read at call time so it wins over config files"""
        raw = os.getenv('GPEST_SEED')
        if raw is None or raw.strip() == '':
            return None
        try:
            return int(raw.strip())
        except ValueError:
            raise ValueError(f"GPEST_SEED must be an integer, got {raw!r}")

settings = Settings()
