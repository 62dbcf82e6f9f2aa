# String constants used in the application
DEBUG = "DEBUG"
INFO = "INFO"
WARNING = "WARNING"
ERROR = "ERROR"
CRITICAL = "CRITICAL"

# Dataset CSV columns
X = "x"
Y = "y"
IS_OUTLIER = "is_outlier"
F_TRUE = "f_true"

# Prediction / outlier CSV columns
INDEX = "index"
MEAN = "mean"
SD_LATENT = "sd_latent"
SD_OBSERVED = "sd_observed"
SD_SCALED = "sd_scaled"
R_PRIME = "r_prime"

# Model JSON keys
FORMAT_VERSION = 1
METHOD = "method"
VERSION = "version"
FAMILY = "family"
LOG_PARAMS = "log_params"
LOG_SIGNAL_SD = "log_signal_sd"
LOG_LENGTHSCALE = "log_lengthscale"
LOG_NOISE_SD = "log_noise_sd"
MEAN_CONST = "mean_const"
TRAIN_X = "train_x"
TRAIN_Y = "train_y"
TRAIN_INDICES = "train_indices"
GP = "gp"
ITGP = "itgp"
CONSISTENCY = "c"
INLIERS = "inliers"
SCALED_RESIDUALS = "scaled_residuals"
N_ITERATIONS = "n_iterations"
CONVERGED = "converged"
REWEIGHTED = "reweighted"
WARNING_KEY = "warning"

# Benchmark record columns
SEED = "seed"
CASE = "case"
RMSE = "rmse"
MAE = "mae"
WALL_TIME = "wall_time"
STATUS = "status"
STATUS_OK = "ok"
STATUS_FAILED = "failed"
MEAN_RMSE = "mean_rmse"
MEDIAN_RMSE = "median_rmse"
MEAN_MAE = "mean_mae"
MEAN_TIME = "mean_time"
N_REPLICATES = "n_replicates"
N_FAILED = "n_failed"

REPORT_TXT = "report.txt"
REPORT_CSV = "report.csv"
RUNS_CSV = "runs.csv"
TIMINGS_CSV = "timings.csv"

# Exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3
