"""Performance tests for the identity fuzzing harness.

Runs the seeded checks at full acceptance scale and measures wall time.
Run with: ``pytest tests/test_performance.py --performance``.
"""
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.elim_engine import EliminationService
from backend.fuzz import FuzzService
from cyclogon.models import RunConfig


pytestmark = pytest.mark.performance


@pytest.fixture(scope='module')
def warm_tables():
    """
    Load or derive the degree-7 tables once for the whole module
    Table derivation time is measured separately so the budgets below cover
    only the fuzzing itself
    """
    print("\nPreparing degree-7 tables...")
    start_time = time.time()
    for target in ("diagonal", "robbins", "fourAR"):
        EliminationService.table(target)
    elapsed = time.time() - start_time
    print(f"Tables ready in {elapsed:.1f} seconds")
    return elapsed


def run_timed(identity, trials, workers=None):
    """Run one identity and return (report, elapsed seconds)"""
    start_time = time.time()
    report = FuzzService.run(identity, RunConfig(seed=42, trials=trials), workers=workers)
    elapsed = time.time() - start_time
    print(f"\n{identity}: {trials} trials, worst {report.max_relative_residual:.2e} in {elapsed:.2f} seconds")
    return report, elapsed


class TestGeometryAtScale:
    """Test the point-set identities on ten thousand configurations"""

    def test_gauss_budget(self):
        """Test the Gauss identity runs inside its time budget"""
        report, elapsed = run_timed("gauss", 10_000)
        assert report.failures == 0, report.failing_cases
        assert elapsed < 5.0, f"Gauss fuzzing took too long: {elapsed:.2f}s"

    @pytest.mark.parametrize("identity", ["monge", "prouhet", "theorem31", "gauss_roots", "border", "identity45"])
    def test_identity_holds(self, identity):
        """Test every trial stays inside the identity's tolerance"""
        report, _ = run_timed(identity, 10_000)
        assert report.failures == 0, report.failing_cases

    @pytest.mark.parametrize("identity", ["hexagon41", "border_pentagon", "ptolemy"])
    def test_hexagon_and_circle_identities(self, identity):
        """Test the hexagon and circumradius identities on a thousand configurations"""
        report, _ = run_timed(identity, 1_000)
        assert report.failures == 0, report.failing_cases


class TestCyclicAtScale:
    """Test the cyclic pentagon checks on a thousand random side sets"""

    @pytest.mark.parametrize("identity", ["lemma62", "oracle", "diagonal", "relations", "area_in_X"])
    def test_oracle_and_relations(self, identity):
        """Test the oracle closure and the low-degree relations"""
        report, _ = run_timed(identity, 1_000)
        assert report.failures == 0, report.failing_cases

    def test_table_polynomials_budget(self, warm_tables):
        """Test the degree-7 tables vanish at oracle values inside the time budget"""
        total = 0.0
        for identity in ("robbins", "fourAR"):
            report, elapsed = run_timed(identity, 1_000)
            total += elapsed
            assert report.failures == 0, report.failing_cases
        print(f"\nDegree-7 table checks took {total:.2f} seconds")
        assert total < 30.0, f"Table checks took too long: {total:.2f}s"

    def test_rational_area(self, warm_tables):
        """Test A = N/D against the oracle area"""
        report, elapsed = run_timed("area_rational", 1_000)
        assert report.failures == 0, report.failing_cases
        assert elapsed < 30.0, f"Rational area checks took too long: {elapsed:.2f}s"

    def test_worker_scaling(self):
        """Test more workers never change the report"""
        serial, serial_elapsed = run_timed("oracle", 1_000, workers=1)
        parallel, parallel_elapsed = run_timed("oracle", 1_000, workers=8)
        assert serial.to_json_dict() == parallel.to_json_dict()
        print(f"\n1 worker {serial_elapsed:.2f}s, 8 workers {parallel_elapsed:.2f}s")


@pytest.mark.symbolic
class TestSymbolicBudget:
    """Test the full symbolic derivations fit their budget"""

    def test_all_derivations(self):
        """Test every derivation succeeds in under fifteen minutes"""
        start_time = time.time()
        for target in ("diagonal", "fourAR", "circumradius", "robbins"):
            report = EliminationService.derive(target)
            print(f"\n{target}: {report.match_status} in {report.elapsed:.1f} seconds")
            assert report.ok, f"{target} derivation failed its checks"
        elapsed = time.time() - start_time
        assert elapsed < 15 * 60, f"Symbolic derivations took too long: {elapsed:.0f}s"
