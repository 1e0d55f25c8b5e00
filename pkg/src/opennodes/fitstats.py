"""Nonlinear least squares and the inferential statistics around it.

fit() runs a damped Gauss-Newton descent with analytic Jacobians and
reports R^2, the model F statistic, and its p-value.  The F and t tail
probabilities both reduce to the regularized incomplete beta function,
implemented here with the standard continued-fraction expansion
(modified Lentz evaluation) so the package needs no scipy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateSample, DomainError, FitError

# ---------------------------------------------------------------------------
# Regularized incomplete beta and tail probabilities.
# ---------------------------------------------------------------------------

_FPMIN = 1e-300
_CF_EPS = 3e-16
_CF_MAXIT = 300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, Lentz's method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise DomainError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise DomainError("incomplete beta needs a > 0 and b > 0")
    if x < 0.0 or x > 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_p_value(f: float, df1: int, df2: int) -> float:
    """Upper-tail probability of the F(df1, df2) distribution."""
    if df1 < 1 or df2 < 1:
        raise DomainError("degrees of freedom must be >= 1")
    if f < 0:
        raise DomainError("F statistic must be non-negative")
    if math.isinf(f):
        return 0.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x)


def t_p_value_two_sided(t: float, df: int) -> float:
    """Two-sided tail probability of Student's t with df degrees."""
    if df < 1:
        raise DomainError("degrees of freedom must be >= 1")
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


class OneSampleTest(NamedTuple):
    t: float
    df: int
    p_two_sided: float


def one_sample_test(values: Sequence[float], mu0: float) -> OneSampleTest:
    """One-sample two-sided t-test of mean(values) against mu0."""
    n = len(values)
    if n < 2:
        raise DegenerateSample("need at least two values")
    mean = sum(values) / n
    ss = sum((v - mean) ** 2 for v in values)
    if ss == 0.0:
        raise DegenerateSample("zero variance sample")
    sd = math.sqrt(ss / (n - 1))
    t = (mean - mu0) / (sd / math.sqrt(n))
    return OneSampleTest(t, n - 1, t_p_value_two_sided(t, n - 1))


# ---------------------------------------------------------------------------
# Model families.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogModel:
    """y = a + b ln x; requires x > 0."""

    a0: float = 0.0
    b0: float = 1.0

    n_params = 2

    def initial(self):
        return np.array([self.a0, self.b0])

    def validate_x(self, x: np.ndarray) -> None:
        if np.any(x <= 0):
            raise DomainError("log model needs x > 0")

    def predict(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        return p[0] + p[1] * np.log(x)

    def jacobian(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.column_stack([np.ones_like(x), np.log(x)])


@dataclass(frozen=True)
class LogisticModel:
    """y = L / (1 + exp(-k (x - x0))); requires L > 0 initialization."""

    l0: float = 1.0
    k0: float = 1.0
    x00: float = 0.0

    n_params = 3

    def __post_init__(self):
        if not self.l0 > 0:
            raise DomainError("logistic model needs L > 0 initialization")

    @classmethod
    def from_data(cls, points) -> "LogisticModel":
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        top = max(ys)
        return cls(l0=top if top > 0 else 1.0, k0=1.0,
                   x00=sorted(xs)[len(xs) // 2])

    def initial(self):
        return np.array([self.l0, self.k0, self.x00])

    def validate_x(self, x: np.ndarray) -> None:
        pass

    def predict(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        L, k, x0 = p
        return L / (1.0 + np.exp(-k * (x - x0)))

    def jacobian(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        L, k, x0 = p
        e = np.exp(-k * (x - x0))
        denom = (1.0 + e) ** 2
        return np.column_stack([
            1.0 / (1.0 + e),
            L * (x - x0) * e / denom,
            -L * k * e / denom,
        ])


@dataclass(frozen=True)
class FitResult:
    params: tuple
    sse: float
    sst: float
    r_squared: float
    f_stat: float
    df_model: int
    df_error: int
    p_value: float
    converged: bool
    iterations: int

    def to_json_dict(self) -> dict:
        return {
            "params": list(self.params),
            "sse": self.sse,
            "sst": self.sst,
            "r_squared": self.r_squared,
            "f_stat": self.f_stat,
            "df_model": self.df_model,
            "df_error": self.df_error,
            "p_value": self.p_value,
            "converged": self.converged,
            "iterations": self.iterations,
        }


_MAX_HALVINGS = 30


def fit(points: Sequence[tuple], model, tol: float = 1e-10,
        max_iter: int = 200) -> FitResult:
    """Least-squares fit of model to (x, y) points by damped Gauss-Newton.

    Convergence is declared when the relative SSE change drops below
    tol.  On an SSE increase the step is halved, at most 30 times; if no
    shorter step helps, iteration stops with the best parameters so far
    and converged=False unless the tolerance was already met.
    """
    n = len(points)
    if n <= model.n_params:
        raise DomainError(f"need more than {model.n_params} points, got {n}")
    x = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points])
    model.validate_x(x)

    params = model.initial().astype(float)
    resid = y - model.predict(x, params)
    sse = float(resid @ resid)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        jac = model.jacobian(x, params)
        jtj = jac.T @ jac
        jtr = jac.T @ resid
        try:
            step = np.linalg.solve(jtj, jtr)
        except np.linalg.LinAlgError:
            raise FitError("singular normal equations",
                           rank=int(np.linalg.matrix_rank(jtj)))
        alpha = 1.0
        new_params = params + step
        new_resid = y - model.predict(x, new_params)
        new_sse = float(new_resid @ new_resid)
        halvings = 0
        while new_sse > sse and halvings < _MAX_HALVINGS:
            alpha *= 0.5
            halvings += 1
            new_params = params + alpha * step
            new_resid = y - model.predict(x, new_params)
            new_sse = float(new_resid @ new_resid)
        if new_sse > sse:
            break  # no descent direction left; keep best-so-far
        improved = sse - new_sse
        params, resid, sse = new_params, new_resid, new_sse
        if sse == 0.0 or improved <= tol * max(sse, 1e-300):
            converged = True
            break

    sst = float(np.sum((y - y.mean()) ** 2))
    df_model = model.n_params - 1
    df_error = n - model.n_params
    if sst > 0:
        r_squared = 1.0 - sse / sst
    else:
        r_squared = 1.0 if sse == 0.0 else 0.0
    if sse == 0.0:
        f_stat = math.inf
        p_value = 0.0
    else:
        f_stat = ((sst - sse) / df_model) / (sse / df_error)
        f_stat = max(f_stat, 0.0)
        p_value = f_p_value(f_stat, df_model, df_error)
    return FitResult(tuple(float(v) for v in params), sse, sst, r_squared,
                     f_stat, df_model, df_error, p_value, converged, iterations)
