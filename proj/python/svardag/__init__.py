"""Joint estimation of an instantaneous DAG and lag coefficients from
multivariate time series, with a trace-exponential baseline for comparison.

The heavy lifting lives in the compiled extension; this layer adds
keyword-argument conveniences.
"""

from svardag._core import (
    BaselineConfig,
    MetricsReport,
    OuterRecord,
    SolverConfig,
    SolverResult,
    SvarmSpec,
    evaluate_metrics,
    h_gradient,
    h_notears,
    h_notears_gradient,
    h_value,
    in_domain,
    is_dag,
    matrix_exponential,
    nfe,
    support_f1,
)
from svardag import _core

__all__ = [
    "BaselineConfig",
    "MetricsReport",
    "OuterRecord",
    "SolverConfig",
    "SolverResult",
    "SvarmSpec",
    "evaluate_metrics",
    "h_gradient",
    "h_notears",
    "h_notears_gradient",
    "h_value",
    "in_domain",
    "is_dag",
    "learn",
    "learn_baseline",
    "matrix_exponential",
    "nfe",
    "simulate",
    "support_f1",
]


def _fill(obj, kwargs):
    for key, value in kwargs.items():
        if not hasattr(obj, key):
            raise TypeError(f"unknown field {key!r} for {type(obj).__name__}")
        setattr(obj, key, value)
    return obj


def simulate(n=50, p=2, t=5000, seed=0, **kwargs):
    """Draw a ground-truth instance; returns (w_true, a_true_stacked, x, z)."""
    spec = _fill(SvarmSpec(), dict(n=n, p=p, t=t, seed=seed, **kwargs))
    return _core.simulate(spec)


def learn(x, p, **kwargs):
    """Run the non-negative log-det solver on an (n, t) series array."""
    return _core.learn(x, p, _fill(SolverConfig(), kwargs))


def learn_baseline(x, p, **kwargs):
    """Run the trace-exponential baseline on an (n, t) series array."""
    return _core.learn_baseline(x, p, _fill(BaselineConfig(), kwargs))
