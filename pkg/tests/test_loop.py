import math
import time

import numpy as np
import pytest

from core.context import AnnealContext, Instance
from core.errors import ConfigError
from core.graph import CoverPair, EdgeSubset, build_multigraph
from core.loop import accept, anneal, cooling, energy
from core.session import check_tours, multistart, solve
from models import AnnealConfig, Mode, Outcome, TourType
from modules.instances import random_pair
from modules.oracle import find_complementary_exhaustive, validate_witness
from modules.tools import make_rng

from conftest import tours


def witness_holds(instance, verdict):
    z, w = EdgeSubset.of(verdict.z_edges), EdgeSubset.of(verdict.w_edges)
    return validate_witness(instance.x, instance.y, z, w, instance.graph)


class TestEnergy:
    def test_tour_and_triangles(self, tour_and_triangles):
        _, _, g, z, w = tour_and_triangles
        assert energy(CoverPair(z, w), g) == 3

    def test_two_tours(self, shared_edges):
        _, _, g, z, w = shared_edges
        assert energy(CoverPair(z, w), g) == 2

    def test_hexagon_triangles(self, hexagon):
        _, _, g = hexagon
        z1 = EdgeSubset.of([0, 7, 5, 2, 3, 10])
        assert energy(CoverPair(z1, z1.complement(g)), g) == 4


class TestSchedule:
    @pytest.mark.parametrize("k,expected", [(1, 100.0), (2, 50.0), (100, 1.0)])
    def test_cooling(self, k, expected):
        assert cooling(100.0, k) == expected

    def test_improvement_always_accepted(self):
        rng = make_rng(0)
        assert all(accept(4, 3, 1e-9, rng) for _ in range(100))

    def test_equal_energy_always_accepted(self):
        rng = make_rng(0)
        assert all(accept(4, 4, 0.01, rng) for _ in range(100))

    def test_worse_move_probability(self):
        rng = make_rng(42)
        hits = sum(accept(4, 6, 2.0, rng) for _ in range(20000))
        assert abs(hits / 20000 - math.exp(-1)) < 0.02


class TestAnneal:
    def test_shared_edges_is_not_adjacent(self, shared_edges):
        x, y, g, _, _ = shared_edges
        instance = Instance.from_tours(x, y)
        verdict = anneal(instance, AnnealConfig(seed=1))
        assert verdict.outcome == Outcome.NOT_ADJACENT
        assert witness_holds(instance, verdict)
        assert verdict.z not in (x, y) and verdict.w not in (x, y)
        assert verdict.final_energy == 2
        assert 1 <= verdict.iterations_used <= 8000

    def test_hexagon_is_not_adjacent(self, hexagon):
        x, y, _ = hexagon
        verdict = check_tours(x, y, AnnealConfig(seed=3))
        assert verdict.not_adjacent
        assert {str(verdict.z), str(verdict.w)} == {"1 2 3 5 4 6", "1 2 6 5 4 3"}

    def test_no_complementary_pair_on_four_vertices(self):
        x, y = tours((1, 2, 3, 4), (1, 2, 4, 3))
        verdict = anneal(Instance.from_tours(x, y), AnnealConfig(iter_n=200))
        assert verdict.outcome == Outcome.PROBABLY_ADJACENT
        assert verdict.iterations_used == 200
        assert verdict.z is None and verdict.z_edges == []

    def test_directed_triangle(self):
        x, y = tours((1, 2, 3), (1, 3, 2), directed=True)
        verdict = anneal(Instance.from_tours(x, y), AnnealConfig(iter_n=100))
        assert verdict.outcome == Outcome.PROBABLY_ADJACENT

    def test_raw_graph_accepts_any_two_tours(self, shared_edges):
        _, _, g, _, _ = shared_edges
        raw = build_multigraph(g.n, False, [(e.tail, e.head) for e in g.edges])
        instance = Instance.from_graph(raw)
        verdict = anneal(instance, AnnealConfig(seed=2))
        assert verdict.not_adjacent
        assert witness_holds(instance, verdict)

    def test_two_cover_digraph_never_succeeds(self, two_cover_digraph):
        verdict = anneal(Instance.from_graph(two_cover_digraph), AnnealConfig(iter_n=50))
        assert verdict.outcome == Outcome.PROBABLY_ADJACENT
        assert verdict.final_energy == 3

    def test_same_seed_same_verdict(self, shared_edges):
        x, y, _, _, _ = shared_edges
        instance = Instance.from_tours(x, y)
        a = anneal(instance, AnnealConfig(seed=7))
        b = anneal(instance, AnnealConfig(seed=7))
        drop = {"elapsed_ms"}
        assert a.model_dump(exclude=drop) == b.model_dump(exclude=drop)

    def test_random_directed_instances_give_sound_verdicts(self):
        rng = np.random.default_rng(11)
        for trial in range(20):
            n = int(rng.integers(5, 11))
            x, y = random_pair(n, bool(trial % 2), rng)
            instance = Instance.from_tours(x, y)
            verdict = anneal(instance, AnnealConfig(iter_n=400, seed=trial))
            if verdict.not_adjacent:
                assert witness_holds(instance, verdict)


class TestConfig:
    def test_instance_defaults(self):
        cfg = AnnealConfig().resolved(8)
        assert cfg.init_t == 8.0
        assert cfg.fix_edges_n == 2

    def test_fixed_queue_larger_than_the_graph(self, shared_edges):
        x, y, _, _, _ = shared_edges
        with pytest.raises(ConfigError):
            AnnealContext(Instance.from_tours(x, y), AnnealConfig(fix_edges_n=17), make_rng(0))


class TestMultistart:
    def test_single_run_matches_anneal(self, shared_edges):
        x, y, _, _, _ = shared_edges
        instance = Instance.from_tours(x, y)
        cfg = AnnealConfig(mode=Mode.RANDOM, iter_n=300, ans_n=1, seed=5)
        drop = {"elapsed_ms"}
        assert multistart(instance, cfg).model_dump(exclude=drop) == anneal(instance, cfg).model_dump(exclude=drop)

    def test_runs_add_up(self):
        x, y = tours((1, 2, 3, 4), (1, 2, 4, 3))
        cfg = AnnealConfig(mode=Mode.RANDOM, iter_n=20, ans_n=3)
        verdict = solve(Instance.from_tours(x, y), cfg)
        assert verdict.runs == 3
        assert verdict.iterations_used == 60

    def test_match_mode_is_rejected(self, shared_edges):
        x, y, _, _, _ = shared_edges
        with pytest.raises(ConfigError):
            multistart(Instance.from_tours(x, y), AnnealConfig(mode=Mode.MATCH))


@pytest.mark.slow
class TestOracleAgreement:
    def test_sound_verdicts_on_500_instances(self):
        rng = np.random.default_rng(500)
        sizes = [(n, False) for n in (6, 8, 12, 16)] + [(n, True) for n in range(5, 17)]
        for trial in range(500):
            n, directed = sizes[int(rng.integers(len(sizes)))]
            instance = Instance.from_tours(*random_pair(n, directed, rng))
            verdict = anneal(instance, AnnealConfig(iter_n=2000, seed=trial))
            if verdict.not_adjacent:
                assert witness_holds(instance, verdict)

    def test_never_not_adjacent_when_the_condition_fails(self):
        rng = np.random.default_rng(200)
        checked = 0
        for trial in range(5000):
            directed = bool(trial % 2)
            n = int(rng.integers(3 if directed else 4, 9))
            x, y = random_pair(n, directed, rng)
            if find_complementary_exhaustive(x, y) is not None:
                continue
            verdict = anneal(Instance.from_tours(x, y), AnnealConfig(iter_n=1000, seed=trial))
            assert verdict.outcome == Outcome.PROBABLY_ADJACENT
            checked += 1
            if checked == 200:
                break
        assert checked == 200

    def test_finds_oracle_confirmed_pairs(self):
        rng = np.random.default_rng(100)
        confirmed = found = 0
        while confirmed < 100:
            directed = bool(confirmed % 2)
            n = int(rng.integers(6, 13))
            x, y = random_pair(n, directed, rng)
            if find_complementary_exhaustive(x, y) is None:
                continue
            confirmed += 1
            verdict = anneal(Instance.from_tours(x, y), AnnealConfig(iter_n=8000, seed=confirmed))
            found += verdict.not_adjacent
        assert found >= 90


@pytest.mark.slow
def test_directed_64_runs_within_budget():
    x, y = random_pair(64, True, make_rng(64), TourType.PYRAMIDAL)
    start = time.perf_counter()
    verdict = check_tours(x, y, AnnealConfig(seed=64))
    assert time.perf_counter() - start < 5.0
    assert verdict.iterations_used <= 8000
