from bifgraph.stats import SolverStats


def test_counters_and_summary():
    stats = SolverStats()
    stats.record_tgnga(3, True)
    stats.record_tgnga(4, False)
    stats.record_cgnga(5, True)
    stats.record_secant()
    stats.record_point()
    stats.record_branch("window exit")
    stats.record_branch("bifurcation")
    stats.record_branch("bifurcation")
    stats.record_audit("pass")
    stats.record_fold()
    stats.record_unresolved()
    stats.record_duplicate()
    summary = stats.as_dict()
    assert summary["tgnga_calls"] == 2
    assert summary["tgnga_iterations_per_call"] == 3.5
    assert summary["tgnga_failures"] == 1
    assert summary["cgnga_iterations_per_call"] == 5.0
    assert summary["terminations"] == {"bifurcation": 2, "window exit": 1}
    assert summary["audits"] == {"pass": 1}
    assert summary["folds"] == summary["unresolved_segments"] == summary["duplicate_branches"] == 1
    assert "started" not in summary


def test_snapshot_and_reset():
    stats = SolverStats()
    stats.record_audit("fail")
    text = stats.snapshot()
    assert text.startswith("Solver status after")
    assert "  - fail: 1" in text
    stats.reset()
    assert stats.audits == {}
    assert stats.as_dict()["cgnga_iterations_per_call"] == 0.0
