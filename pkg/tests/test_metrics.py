import unittest
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from rvc_engine.logic import metrics
from rvc_engine.logic.solver import compute_rvc
from rvc_engine.logic.verify import verify_colouring
from rvc_core.models import VertexColouring
from tests.conftest import HAS_PROMETHEUS, make_directed_cycle


class TestMetrics(unittest.TestCase):
    def test_export_returns_bytes(self):
        """export_metrics always returns bytes, installed or not."""
        output = metrics.export_metrics()
        self.assertIsInstance(output, bytes)
        print(f"✅ Metric Output: {len(output)} bytes")

    def test_record_helpers_never_raise(self):
        """record_* helpers are safe with or without prometheus_client."""
        try:
            metrics.record_solve("rvc", "exact", 3)
            metrics.record_verify("srvc", False)
        except Exception as e:
            self.fail(f"Metric recording failed: {e}")

    @unittest.skipUnless(HAS_PROMETHEUS, "prometheus_client not installed")
    def test_solve_is_counted(self):
        """A solve shows up in the counters and the duration histogram."""
        compute_rvc(make_directed_cycle(4))
        text = metrics.export_metrics().decode("utf-8")
        self.assertIn('rvc_solves_total{parameter="rvc",outcome="exact"}', text)
        self.assertIn("rvc_solve_duration_seconds_count", text)

    @unittest.skipUnless(HAS_PROMETHEUS, "prometheus_client not installed")
    def test_verify_is_counted(self):
        """Invalid verdicts are labelled as such."""
        verify_colouring(make_directed_cycle(5), VertexColouring.constant(5), "rvc")
        text = metrics.export_metrics().decode("utf-8")
        self.assertIn('rvc_verify_total{mode="rvc",verdict="invalid"}', text)

    def test_without_prometheus(self):
        """With the extra missing, export says so."""
        saved = metrics.PROMETHEUS_AVAILABLE
        metrics.PROMETHEUS_AVAILABLE = False
        try:
            self.assertIn(b"not installed", metrics.export_metrics())
            metrics.record_solve("rvc", "exact", 1)
        finally:
            metrics.PROMETHEUS_AVAILABLE = saved


if __name__ == '__main__':
    unittest.main()
