import numpy as np
import pytest

from pareto_forge.core import ControlParams, Solution, StructuralError, nsga2_params
from pareto_forge.dominance import dominates, nondominated_mask
from pareto_forge.engine import collection_site_merge, run_nsga2, run_sslpsa
from pareto_forge.problems import get_problem

SMALL = ControlParams(generations=8)


def _decisions(result):
    return [s.decision.tolist() for s in result.archive_members]


def assert_pairwise_nondominated(F):
    F = np.asarray(F)
    assert nondominated_mask(F).all()
    assert len({tuple(f) for f in F}) == len(F)


def test_zero_generations_returns_initial_population():
    r = run_sslpsa(get_problem("zdt1"), ControlParams(generations=0), seed=3)
    assert len(r.final_population) == 30
    assert r.trace == []
    F = np.array([s.objectives for s in r.final_population])
    expected = {tuple(f) for f in F[nondominated_mask(F)]}
    assert {tuple(s.objectives) for s in r.archive_members} == expected


def test_sslpsa_is_deterministic():
    a = run_sslpsa(get_problem("zdt1"), SMALL, seed=11)
    b = run_sslpsa(get_problem("zdt1"), SMALL, seed=11)
    assert _decisions(a) == _decisions(b)
    assert [s.decision.tolist() for s in a.final_population] == [s.decision.tolist() for s in b.final_population]
    assert [t.archive_size for t in a.trace] == [t.archive_size for t in b.trace]
    c = run_sslpsa(get_problem("zdt1"), SMALL, seed=12)
    assert _decisions(a) != _decisions(c)


def test_concurrent_phases_match_serial():
    a = run_sslpsa(get_problem("zdt2"), SMALL, seed=5)
    b = run_sslpsa(get_problem("zdt2"), SMALL, seed=5, concurrent=True)
    assert _decisions(a) == _decisions(b)
    assert [w.decision.tolist() for w in a.som_weights_tbga] == [w.decision.tolist() for w in b.som_weights_tbga]


def test_run_result_contents():
    r = run_sslpsa(get_problem("sch"), SMALL, seed=1)
    assert len(r.trace) == 8
    assert len(r.som_weights_qabc) == 10 and len(r.som_weights_tbga) == 10
    assert_pairwise_nondominated([s.objectives for s in r.archive_members])
    meta = r.metadata()
    assert meta["generations_run"] == 8 and meta["params"]["pop_size"] == 30


def test_population_size_and_split_every_generation():
    sizes = []

    def observer(gen, pop, archive):
        sizes.append(len(pop))

    r = run_sslpsa(get_problem("zdt1"), SMALL, seed=2, observer=observer)
    assert sizes == [30] * 8
    assert all((t.n_qabc, t.n_tbga) == (11, 19) for t in r.trace)


def test_archive_keeps_coverage_across_generations():
    snapshots = []
    run_sslpsa(get_problem("zdt1"), ControlParams(generations=15), seed=4,
               observer=lambda g, p, a: snapshots.append(a.objectives.copy()))
    for earlier, later in zip(snapshots, snapshots[1:]):
        for f in earlier:
            assert any(np.all(g <= f) for g in later)


@pytest.mark.parametrize("xi", [0.0, 1.0])
def test_single_operator_extremes_terminate(xi):
    r = run_sslpsa(get_problem("sch"), ControlParams(generations=5, xi=xi), seed=0)
    assert len(r.final_population) == 30
    assert_pairwise_nondominated([s.objectives for s in r.archive_members])


def test_uniform_xi_and_split_once_modes():
    r = run_sslpsa(get_problem("fon"), ControlParams(generations=6, xi_mode="uniform_per_generation"), seed=0)
    assert len({(t.n_qabc, t.n_tbga) for t in r.trace}) > 1
    assert all(t.n_qabc + t.n_tbga == 30 for t in r.trace)
    once = run_sslpsa(get_problem("fon"), ControlParams(generations=6, reshuffle_each_generation=False), seed=0)
    assert {(t.n_qabc, t.n_tbga) for t in once.trace} == {(11, 19)}


def test_archive_cap_respected():
    r = run_sslpsa(get_problem("sch"), ControlParams(generations=20, archive_cap=25), seed=0)
    assert len(r.archive_members) <= 25
    assert max(t.archive_size for t in r.trace) <= 25


def test_invalid_inputs_rejected():
    with pytest.raises(StructuralError):
        run_sslpsa("zdt1", SMALL)
    with pytest.raises(StructuralError):
        run_sslpsa(get_problem("zdt1"), {"generations": 3})
    with pytest.raises(StructuralError):
        run_nsga2(get_problem("zdt1"), ControlParams(pop_size=1))


def test_nsga2_deterministic_and_front_archive():
    params = nsga2_params(generations=5)
    a = run_nsga2(get_problem("zdt1"), params, seed=9)
    b = run_nsga2(get_problem("zdt1"), params, seed=9)
    assert _decisions(a) == _decisions(b)
    assert len(a.final_population) == 100
    assert_pairwise_nondominated([s.objectives for s in a.archive_members])
    rank0 = {tuple(s.objectives) for s in a.final_population if s.rank == 0}
    assert {tuple(s.objectives) for s in a.archive_members} == rank0


def _sol(f):
    return Solution(np.zeros(1), np.array(f, float))


def test_merge_examples():
    q = [_sol((i, 30 - i)) for i in range(11)]
    t = [_sol((i + 11, 19 - i)) for i in range(19)]
    merged = collection_site_merge(q, t, 30)
    assert len(merged) == 30
    assert merged[:11] == q and merged[11:] == t
    assert collection_site_merge(q, t, 30) == merged


def test_merge_with_empty_phase_pads_to_size():
    t = [_sol((i, 5 - i)) for i in range(6)]
    merged = collection_site_merge([], t, 10)
    assert len(merged) == 10
    assert {tuple(s.objectives) for s in merged} == {tuple(s.objectives) for s in t}
    trimmed = collection_site_merge(t, t[:2], 6)
    assert len(trimmed) == 6
