"""Constants for the covert symbiotic-radio simulator."""

import math

# Scenario geometry in meters
DEFAULT_SOURCE_POSITION = (0.0, 0.0)
DEFAULT_BACKSCATTER_POSITION = (20.0, 0.0)
DEFAULT_RECEIVER_POSITION = (40.0, 0.0)
DEFAULT_WARDEN_POSITION = (45.0, 0.0)
DEFAULT_IRS_POSITION = (20.0, 25.0)

# Path loss: intercept + slope * log10(d) - G_t - G_r  (dB)
PATH_LOSS_INTERCEPT_DB = 35.1
PATH_LOSS_SLOPE_DB = 36.7
DEFAULT_TX_GAIN_DBI = 10.0
DEFAULT_RX_GAIN_DBI = 10.0

# Link parameters
DEFAULT_NUM_ELEMENTS = 10
DEFAULT_RICIAN_FACTOR = 3.0
DEFAULT_NOISE_POWER_DBM = -80.0
DEFAULT_P_MAX_DBM = 25.0
DEFAULT_ETA = 10
DEFAULT_EPS_SIC = 2.0
DEFAULT_EPS_C = 0.5

# Numerical parameters
DEFAULT_QUADRATURE_ORDER = 5
DEFAULT_LIPSCHITZ = 2.5e-3
DEFAULT_TOLERANCE = 1e-3
DEFAULT_MAX_ITERATIONS = 50
DEFAULT_SOLVER_TOL = 1e-7
SROCR_INITIAL_STEP = 0.1
SROCR_MIN_STEP = 1e-3
RANK_ONE_TARGET = 0.999
SURROGATE_CHECK_SAMPLES = 100
MINORANT_CHECK_SAMPLES = 1000
LOW_REGIME_MARGIN = 1e-9
RATE_TOLERANCE = 1e-12

# Beyond this argument u*K0(u) and u*K1(u) are below 1e-24
BESSEL_TAIL_CUTOFF = 60.0

# Quadrature resolution check for the closed-form DEP
QUADRATURE_AGREEMENT_TOL = 1e-3
INTEGRAL_TOL = 1e-10

# Monte Carlo
DEFAULT_TRIALS = 100_000
DEFAULT_CHUNK_SIZE = 10_000
DEFAULT_BASELINE_DRAWS = 100

# Output
CSV_SIGNIFICANT_DIGITS = 9

TWO_PI = 2.0 * math.pi

# Logging constants
LOG_FORMAT_CONSOLE = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

LOG_FORMAT_FILE = (
    "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | "
    "{extra[name]}:{function}:{line} | {message}"
)
