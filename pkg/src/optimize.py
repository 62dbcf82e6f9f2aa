"""
Box-constrained quasi-Newton minimizer used for hyperparameter fitting.

Dense BFGS on the inverse Hessian with a backtracking line search
(sufficient decrease), bounds handled by projection. Hyperparameter
problems here have three dimensions, so nothing fancier is needed.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.errors import InvalidArgumentError, NumericalFailureError

Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]

ARMIJO_C1 = 1e-4
BACKTRACK = 0.5


@dataclass(frozen=True)
class OptimizerConfig:
    n_restarts: int = 3
    max_evals: int = 200
    grad_tol: float = 1e-6
    step_tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.n_restarts < 1:
            raise InvalidArgumentError(f"n_restarts must be >= 1, got {self.n_restarts}")
        if self.max_evals < 1:
            raise InvalidArgumentError(f"max_evals must be >= 1, got {self.max_evals}")
        if self.grad_tol <= 0 or self.step_tol <= 0:
            raise InvalidArgumentError("grad_tol and step_tol must be positive")


class OptimizeStatus(Enum):
    GRADIENT = "gradient_tolerance"
    STEP = "step_tolerance"
    MAX_EVALS = "max_evals"
    ABANDONED = "abandoned"

    @property
    def succeeded(self) -> bool:
        return self != OptimizeStatus.ABANDONED


@dataclass(frozen=True)
class OptimizeResult:
    x: np.ndarray
    fun: float
    status: OptimizeStatus
    n_evals: int
    n_iterations: int


def _bounds_arrays(bounds, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if bounds is None:
        return np.full(n, -np.inf), np.full(n, np.inf)
    lower, upper = bounds
    lower = np.broadcast_to(np.asarray(lower, dtype=float), (n,)).copy()
    upper = np.broadcast_to(np.asarray(upper, dtype=float), (n,)).copy()
    if np.any(lower > upper):
        raise InvalidArgumentError("Lower bounds must not exceed upper bounds")
    return lower, upper


def _safe_eval(fun: Objective, x: np.ndarray) -> Tuple[float, Optional[np.ndarray]]:
    try:
        f, g = fun(x)
    except NumericalFailureError as e:
        logger.debug(f"Objective failed at {x}: {e}")
        return np.nan, None
    g = np.asarray(g, dtype=float)
    if not np.all(np.isfinite(g)):
        return np.nan, None
    return float(f), g


def minimize(
    fun: Objective,
    x0: Sequence[float],
    bounds=None,
    cfg: Optional[OptimizerConfig] = None,
) -> OptimizeResult:
    """
    Minimize a smooth objective returning (value, gradient).

    Terminates when the projected gradient norm drops below cfg.grad_tol,
    a step is shorter than cfg.step_tol, or cfg.max_evals is reached.
    A line search that only meets non-finite values abandons the run.

    Raises:
        InvalidArgumentError: If the objective is not finite at x0
    """
    cfg = cfg or OptimizerConfig()
    x = np.array(x0, dtype=float).ravel()
    n = x.size
    lower, upper = _bounds_arrays(bounds, n)
    x = np.clip(x, lower, upper)

    f, g = fun(x)
    f = float(f)
    g = np.asarray(g, dtype=float)
    if not np.isfinite(f) or not np.all(np.isfinite(g)):
        raise InvalidArgumentError(f"Objective is not finite at the starting point {x}")

    n_evals = 1
    identity = np.eye(n)
    H = identity.copy()
    status = OptimizeStatus.MAX_EVALS
    iteration = 0

    while True:
        projected_grad = x - np.clip(x - g, lower, upper)
        if np.linalg.norm(projected_grad, ord=np.inf) < cfg.grad_tol:
            status = OptimizeStatus.GRADIENT
            break
        if n_evals >= cfg.max_evals:
            status = OptimizeStatus.MAX_EVALS
            break

        # components pushing against an active bound stay fixed
        free = ~(((x <= lower) & (g > 0)) | ((x >= upper) & (g < 0)))
        p = -H @ g
        p[~free] = 0.0
        if g @ p >= 0:
            H = identity.copy()
            p = -g * free

        t = min(1.0, 1.0 / np.linalg.norm(p)) if iteration == 0 else 1.0
        accepted = False
        hit_nonfinite = False
        while n_evals < cfg.max_evals:
            x_new = np.clip(x + t * p, lower, upper)
            step = x_new - x
            if np.linalg.norm(step) < cfg.step_tol:
                break
            f_new, g_new = _safe_eval(fun, x_new)
            n_evals += 1
            if np.isfinite(f_new) and f_new <= f + ARMIJO_C1 * min(g @ step, 0.0):
                accepted = True
                break
            hit_nonfinite = not np.isfinite(f_new)
            t *= BACKTRACK

        if not accepted:
            if hit_nonfinite:
                status = OptimizeStatus.ABANDONED
            elif n_evals >= cfg.max_evals:
                status = OptimizeStatus.MAX_EVALS
            else:
                status = OptimizeStatus.STEP
            break

        y = g_new - g
        sy = float(step @ y)
        if sy > 1e-12 * np.linalg.norm(step) * np.linalg.norm(y):
            if iteration == 0:
                H = (sy / float(y @ y)) * identity
            rho = 1.0 / sy
            V = identity - rho * np.outer(step, y)
            H = V @ H @ V.T + rho * np.outer(step, step)

        x, f, g = x_new, f_new, g_new
        iteration += 1
        if np.linalg.norm(step) < cfg.step_tol:
            status = OptimizeStatus.STEP
            break

    return OptimizeResult(x=x, fun=f, status=status, n_evals=n_evals, n_iterations=iteration)


def minimize_multistart(
    fun: Objective,
    starts: Sequence[Sequence[float]],
    bounds=None,
    cfg: Optional[OptimizerConfig] = None,
) -> OptimizeResult:
    """
    Run minimize from every start and keep the lowest objective value
    (ties go to the earliest start). Abandoned or failing starts are skipped.

    Raises:
        NumericalFailureError: If every start fails
    """
    cfg = cfg or OptimizerConfig()
    best: Optional[OptimizeResult] = None
    failures = []

    for index, x0 in enumerate(starts):
        try:
            result = minimize(fun, x0, bounds=bounds, cfg=cfg)
        except (InvalidArgumentError, NumericalFailureError) as e:
            logger.warning(f"Restart {index} could not start: {e}")
            failures.append(str(e))
            continue

        logger.debug(
            f"Restart {index}: f={result.fun:.6g} status={result.status.value} "
            f"evals={result.n_evals} x={np.round(result.x, 4)}"
        )
        if not result.status.succeeded:
            logger.warning(f"Restart {index} abandoned after {result.n_evals} evaluations")
            failures.append(f"restart {index} abandoned")
            continue
        if best is None or result.fun < best.fun:
            best = result

    if best is None:
        raise NumericalFailureError(f"All {len(starts)} optimizer restarts failed: {'; '.join(failures)}")
    return best
