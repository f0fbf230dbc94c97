from .settings import settings

class BenchmarkConfig:
    # Prior used to draw synthetic objectives: isotropic Matern, linear mean
    GP_PRIOR = {
        'kernel': 'matern',
        'nu': settings.MATERN_NU,
        'lengthscale': 0.1,
        'signal_std': 1.0,
        'intercept': 1.0,
        'slope_range': (-1.0, 1.0),
    }

    # Candidate grid points per dimension, keyed by input dimension
    GRID_RESOLUTION = {
        1: 600,
        2: 50,
        3: 15,
    }

    # Replication protocol: full-scale counts and the scaled-down defaults
    FULL_FUNCTION_COUNTS = {1: 200, 2: 100, 3: 1}
    DEFAULT_FUNCTION_COUNTS = {1: 30, 2: 10, 3: 1}
    MAX_ROUNDS = {1: 150, 2: 1000, 3: 150}

    # Fixed test functions live on the unit cube; Branin is mapped to its box
    BRANIN_BOX = ((-5.0, 10.0), (0.0, 15.0))
    TEST_FUNCTION_ROUNDS = 150

    NOISE_STD = settings.BENCH_NOISE_STD
    WARM_START_POINTS = 1

benchmark_config = BenchmarkConfig()
