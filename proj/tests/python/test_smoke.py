from fractions import Fraction

import numpy as np
import pytest

import matchgames as mg


def test_classical_values():
    for n, expected in [(3, Fraction(7, 9)), (4, Fraction(3, 4)), (5, Fraction(4, 5))]:
        assert mg.classical_value(mg.bpm_game(mg.complete_bipartite(n, 2)))["value"] == expected


def test_nonsignaling_values():
    assert mg.ns_value(mg.bpm_game(mg.complete_bipartite(3, 2)))["value"] == 1
    assert mg.ns_value(mg.pm_game(mg.cycle_graph(5)))["value"] == 1
    assert mg.ns_value(mg.pm_game(mg.complete_graph(3)))["value"] == Fraction(2, 3)
    assert mg.ns_perfect(mg.pm_game(mg.cycle_graph(7)))
    assert not mg.ns_perfect(mg.pm_game(mg.complete_graph(3)))


def test_graph_routines():
    g = mg.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.num_edges == 4
    assert mg.has_perfect_matching(g)
    assert len(mg.maximum_matching(g)) == 2
    assert mg.independence_number(mg.line_graph(g)) == 2
    assert mg.triangle_avoiding_fpm(mg.complete_graph(3)) is None
    assert mg.fractional_pm(mg.cycle_graph(5)) == [Fraction(1, 2)] * 5
    star = mg.BipartiteGraph(2, 1, [(0, 0), (1, 0)])
    assert mg.sharp_reduction(star)["lonely_left"] == [1]
    assert isinstance(mg.parse_graph("graph 2\n0 1\n"), mg.Graph)


def test_odd_cycle_correlation():
    report = mg.verify_correlation(mg.pm_game(mg.cycle_graph(5)), mg.odd_cycle_correlation(5))
    assert report["valid"] and report["nonsignaling"] and report["synchronous"]
    assert report["winning_probability"] == 1


def test_sos_and_values():
    assert all(mg.verify_sync_sos(n) for n in range(2, 7))
    assert not mg.verify_k32_sos()
    assert mg.verify_k32_sos(corrected=True)
    assert mg.kn2_value_table(3)["quantum"] == Fraction(5, 6)


def test_quantum():
    assert abs(mg.k32_optimal_value() - 5 / 6) < 1e-9
    assert abs(mg.trivial_strategy_value(4) - 0.75) < 1e-12
    sweep = mg.seesaw_sweep(mg.bpm_game(mg.complete_bipartite(3, 2)), restarts=10, seed=3)
    assert sweep["best_value"] <= 5 / 6 + 1e-6
    assert sweep["seeds"] == list(range(3, 13))


def test_qpm_certificates():
    k4 = mg.complete_graph(4)
    fam = mg.qpm_search(k4, 2, seed=1)
    assert fam is not None
    assert mg.verify_qpm_certificate(k4, fam)["pass"]
    assert abs(mg.packing_value(fam) - 2) < 1e-9
    broken = [np.eye(2) - fam[0]] + fam[1:]
    assert not mg.verify_qpm_certificate(k4, broken)["pass"]
    assert mg.qpm_search(mg.cycle_graph(5), 1) is None


def test_errors():
    with pytest.raises(ValueError):
        mg.pm_game(mg.Graph(2, [(0, 5)]))
    with pytest.raises(ValueError):
        mg.parse_graph("nonsense")
