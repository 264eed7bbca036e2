"""
Solver Metrics
==============
Prometheus counters and histograms for solves and verifier calls. The
``prometheus_client`` package is optional (``metrics`` extra); without it
every ``record_*`` helper is a no-op and ``export_metrics`` says so.
"""

import logging
import time
from functools import wraps

logger = logging.getLogger("rvc.metrics")

try:
    from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest
    PROMETHEUS_AVAILABLE = True
except ImportError:
    PROMETHEUS_AVAILABLE = False
    logger.debug("prometheus_client not installed; metrics disabled")

REGISTRY = None
RVC_SOLVES_TOTAL = None
RVC_COLOURINGS_TESTED = None
RVC_VERIFY_TOTAL = None
RVC_SOLVE_DURATION = None

if PROMETHEUS_AVAILABLE:
    REGISTRY = CollectorRegistry()

    RVC_SOLVES_TOTAL = Counter(
        "rvc_solves_total",
        "Exact solver runs",
        ["parameter", "outcome"],
        registry=REGISTRY,
    )

    RVC_COLOURINGS_TESTED = Counter(
        "rvc_colourings_tested_total",
        "Complete colourings reached by the exact search",
        ["parameter"],
        registry=REGISTRY,
    )

    RVC_VERIFY_TOTAL = Counter(
        "rvc_verify_total",
        "Colouring verifications",
        ["mode", "verdict"],
        registry=REGISTRY,
    )

    RVC_SOLVE_DURATION = Histogram(
        "rvc_solve_duration_seconds",
        "Wall time of exact solves",
        ["parameter"],
        registry=REGISTRY,
    )


def record_solve(parameter: str, outcome: str, colourings: int) -> None:
    if not PROMETHEUS_AVAILABLE:
        return
    RVC_SOLVES_TOTAL.labels(parameter=parameter, outcome=outcome).inc()
    RVC_COLOURINGS_TESTED.labels(parameter=parameter).inc(colourings)


def record_verify(mode: str, valid: bool) -> None:
    if not PROMETHEUS_AVAILABLE:
        return
    RVC_VERIFY_TOTAL.labels(mode=mode, verdict="valid" if valid else "invalid").inc()


def track_time(metric_name: str, **labels):
    """Decorator to track execution time in one of the module histograms."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.time()
            try:
                return func(*args, **kwargs)
            finally:
                metric = globals().get(metric_name)
                if PROMETHEUS_AVAILABLE and metric is not None:
                    metric.labels(**labels).observe(time.time() - start)
        return wrapper
    return decorator


def export_metrics() -> bytes:
    if not PROMETHEUS_AVAILABLE:
        return b"# prometheus_client not installed.\n"
    return generate_latest(REGISTRY)
