# In this file, you can set the configurations of the app.
import os

from dotenv import load_dotenv

from src.utils.constants import INFO

load_dotenv()

#config related to logging must have prefix LOG_
LOG_LEVEL = os.getenv("ITGP_LOG_LEVEL", INFO)
LOG_TO_FILE = os.getenv("ITGP_LOG_TO_FILE", "false").lower() in ("1", "true", "yes")
LOG_TO_CONSOLE = True
LOG_FILE = "log/itgp.log"

# Trimming defaults (alpha1=0.75 is better when contamination is known to be < 25%)
ALPHA1 = 0.5
ALPHA2 = 0.95
N_SHRINK = 5
N_MAXITER = 10

# Hyperparameter optimizer
N_RESTARTS = 3
MAX_EVALS = 200
GRAD_TOL = 1e-6
STEP_TOL = 1e-9
SEED = 0
LOG_PARAM_BOUND = 15.0

KERNEL = "se"
METHOD = "itgp"
OUTLIER_THRESHOLD = 2.0

# Benchmark
REPLICATES = 50
WORKERS = 1
BENCHMARK_OUTPUT_DIR = "benchmark_results"
TEST_GRID_SIZE = 2000
NEAL_N_TRAIN = 100
NEAL_SIGMA_R = 0.1
NEAL_SKEWED_BIAS = 1.0
CLUSTER_N_TRAIN = 200
CLUSTER_OUTLIER_FRACTION = 0.3
MAX_FAILURE_FRACTION = 0.2

MODEL_FILE = "model.json"
