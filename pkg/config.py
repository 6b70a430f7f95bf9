# config.py
from pathlib import Path
import logging

# Reproducibility
RANDOM_SEED = 0

# Paths
BASE_DIR = Path(__file__).resolve().parent
DATA_DIR = BASE_DIR / "data"
RESULTS_DIR = DATA_DIR / "results"
DB_PATH = DATA_DIR / "warehouse.db"
for p in [DATA_DIR, RESULTS_DIR]:
    p.mkdir(parents=True, exist_ok=True)

# Random rational sampling (inclusive ranges)
NUMERATOR_RANGE = (-9, 9)
DENOMINATOR_RANGE = (1, 9)
MAX_RESAMPLE = 200

# Float mode
GENERICITY_TOL = 1e-12
DRIFT_FLOOR = 1.0          # relative drift uses max(|G(0)|, DRIFT_FLOOR)
FD_STEP = 1e-5
FD_REL_TOL = 1e-7

# Verification suites
DEFAULT_TRIALS = 10
SEMIINV_TRIALS = 20
NINV_TRIALS = 20
PUKANSZKY_TRIALS = 5
KAPPA_TRIALS = 10

# Full Kostant-Toda flow
TODA_T = 10.0
TODA_DT = 1e-3
TODA_RECORD_EVERY = 10
TODA_DRIFT_TOL = 1e-8
TODA_MIN_ORDER_RATIO = 12.0
FLOAT_DIAG_RANGE = (-0.1, 0.1)       # random flow starts
FLOAT_SUBDIAG_RANGE = (0.02, 0.08)
FLOAT_LOWER_RANGE = (0.0005, 0.002)  # entries below the subdiagonal
FLOAT_MIN_GAP = 0.01                 # eigenvalues of a flow start: real, separated
FLOAT_MIN_LEADING = 1e-9             # |E_(0,r)| floor for a flow start
TODA_ORDER_T = 4.0                   # convergence-order runs: truncation error dominates
TODA_ORDER_DT = 0.2

# Heisenberg / Schrodinger demo
HEIS_GRID = 256
HEIS_L = 10.0
HEIS_LMAX = 8.0
HEIS_NLAMBDA = 160
HEIS_MIN_GRID = 64
HEIS_OVERSAMPLE = 4
HEIS_RATIO_TOL = 0.01

# Acceptance sweep sizes
SWEEP_SEMIINV_N = range(2, 8)
SWEEP_INVOLUTIVITY_N = range(2, 6)
SWEEP_CASIMIR_N = range(2, 6)
SWEEP_PUKANSZKY_N = range(2, 8)
SWEEP_DP_N = range(2, 17)

# Logging
LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def configure_logging(level: str = LOG_LEVEL):
    """Root handler with LOG_FORMAT; every module logs through getLogger(__name__)."""
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger().setLevel(getattr(logging, level.upper(), logging.INFO))
