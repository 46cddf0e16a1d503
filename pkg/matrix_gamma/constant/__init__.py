from datetime import datetime

TIMESTAMP = datetime.now().strftime("%Y%m%d_%H%M%S")

VERSION = "0.1.0"

DEFAULT_SEED = 20240607

# resource limits
MAX_AMBIENT_DIM = 6
MAX_TRUNCATION = 40
MAX_POLYTOPE_POINTS = 200
MAX_BLOCK_SIZE = 6

MONTE_CARLO_SAMPLES = 100_000
MONTE_CARLO_BATCH = 10_000

FLOAT_TOLERANCE = 1e-10

# finite-difference residuals of the hypergeometric system
RESIDUAL_TOLERANCE = 1e-6


from matrix_gamma.constant.command import *
