import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dlsmc.bench import (
    AlgorithmSummary,
    Dominance,
    InstanceResult,
    MEASURES,
    RecordError,
    RunRecord,
    aggregate_instrumentation,
    exponential_cdf,
    exponential_fit,
    ks_distance,
    pd_sweep,
    rank_algorithms,
    read_records,
    records_from_csv,
    records_from_jsonl,
    records_to_csv,
    records_to_jsonl,
    rtd_cdf,
    run_experiment,
    summarize,
    summary_from_csv,
    summary_from_records,
    write_cdf,
    write_records,
)
from dlsmc.bench.stats import median
from dlsmc.graph import random_graph
from dlsmc.oracle import max_clique_exact
from dlsmc.solver import PerturbationEvent, SolverConfig, solve

from conftest import complete, path3


def rec(steps=4, success=True, size=5, clique=(1, 2, 3, 4, 5), run=0, tcs=5, t=0.001,
        name="K5"):
    return RunRecord(instance=name, run=run, seed=run, pd=1, tcs=tcs, max_steps=1000,
                     success=success, steps=steps, time_s=t, clique_size=size,
                     clique=tuple(clique))


# --- campaigns ---------------------------------------------------------------

def test_run_experiment_k5():
    recs = run_experiment(complete(5), "K5", SolverConfig(tcs=5), 10)
    assert [r.run for r in recs] == list(range(10))
    assert all(r.success and r.steps == 4 and r.clique == (1, 2, 3, 4, 5) for r in recs)


def test_single_run_reproduces_solve():
    g = random_graph(40, 0.7, 9)
    cfg = SolverConfig(tcs=max_clique_exact(g)[0], pd=2, seed=77)
    [r] = run_experiment(g, "g", cfg, 1)
    res = solve(g, cfg)
    assert (r.success, r.steps, r.clique) == (res.found, res.steps,
                                              tuple(v + 1 for v in res.clique))


def test_experiment_deterministic_and_parallel():
    g = random_graph(40, 0.7, 9)
    cfg = SolverConfig(tcs=max_clique_exact(g)[0], pd=2, seed=5)
    a = run_experiment(g, "g", cfg, 6)
    b = run_experiment(g, "g", cfg, 6, workers=2)
    key = lambda rs: [(r.run, r.seed, r.success, r.steps, r.clique) for r in rs]
    assert key(a) == key(b)
    assert len({r.seed for r in a}) == 6


def test_run_experiment_validation():
    with pytest.raises(ValueError):
        run_experiment(complete(5), "K5", SolverConfig(tcs=5), 0)


def test_instrumented_campaign():
    g = random_graph(40, 0.5, 1)
    cfg = SolverConfig(tcs=max_clique_exact(g)[0] + 1, pd=2, max_steps=2000)
    recs = run_experiment(g, "g", cfg, 3, instrument=True)
    assert all(r.trace for r in recs)
    cdfs = aggregate_instrumentation([r.trace for r in recs])
    assert set(cdfs) == set(MEASURES)
    assert all(0 <= x <= 1 for x, _ in cdfs["relative_mobility"])
    assert all(0 <= x <= g.n for x, _ in cdfs["penalized_count"])


def test_pd_sweep_k5():
    rows = pd_sweep(complete(5), 5, [1, 2, 5], runs=5, max_steps=100)
    assert [r.pd for r in rows] == [1, 2, 5]
    assert all(r.success_rate == 1.0 and r.median_steps == 4 for r in rows)
    with pytest.raises(ValueError):
        pd_sweep(complete(5), 5, [], runs=1)


def test_pd_sweep_single_value_matches_experiment():
    g = random_graph(30, 0.8, 2)
    tcs = max_clique_exact(g)[0]
    [row] = pd_sweep(g, tcs, [2], runs=5, max_steps=10_000, seed=3)
    s = summarize(run_experiment(g, g.name, SolverConfig(tcs=tcs, pd=2, max_steps=10_000,
                                                         seed=3), 5))
    assert (row.success_rate, row.median_steps) == (s.success_rate, s.median_steps)


def test_pd_sweep_no_success_rows_are_undefined():
    [row] = pd_sweep(path3(), 3, [1], runs=2, max_steps=20)
    assert row.success_rate == 0 and row.median_steps is None and row.median_seconds is None


# --- summaries ---------------------------------------------------------------

def test_summarize_identical():
    s = summarize([rec(run=i) for i in range(10)])
    assert (s.mean_steps, s.sd_steps, s.cv_steps) == (4, 0, 0)
    assert s.distinct_solutions == 1 and s.clique_triple() == "5"


def test_summarize_two():
    s = summarize([rec(steps=2), rec(steps=6, run=1, clique=(2, 3, 4, 5, 6))])
    assert s.mean_steps == 4 and s.median_steps == 4
    assert s.distinct_solutions == 2


def test_summarize_partial_success():
    recs = [rec(run=i, steps=10 + i, t=1.0) for i in range(93)]
    recs += [rec(run=93 + i, steps=1000, success=False, size=4, clique=(1, 2, 3, 4), t=9.0)
             for i in range(7)]
    s = summarize(recs)
    assert s.success_rate == 0.93 and len(s.steps) == 93 and s.mean_seconds == 1.0
    assert s.clique_triple() == "5(4.93,4)"
    with pytest.raises(ValueError):
        summarize([])


def test_summarize_no_success():
    s = summarize([rec(success=False, size=4, clique=(1, 2, 3, 4))])
    assert s.success_rate == 0 and s.mean_steps is None and s.distinct_solutions == 0


def test_median_even_midpoint():
    assert median([2, 6]) == 4
    assert median([1, 3, 5, 7]) == 4
    assert median([5]) == 5


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 10**6), min_size=1, max_size=60))
def test_summary_properties(steps):
    s = summarize([rec(steps=x, run=i) for i, x in enumerate(steps)])
    assert s.cv_steps >= 0
    assert min(steps) <= s.median_steps <= max(steps)
    assert list(s.steps) == sorted(steps)


# --- RTDs and the exponential fit --------------------------------------------

def test_rtd_cdf():
    assert rtd_cdf([3, 1, 2]) == [(1, 1 / 3), (2, 2 / 3), (3, 1.0)]
    assert rtd_cdf([7]) == [(7, 1.0)]
    with pytest.raises(ValueError):
        rtd_cdf([])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.1, 1e6), min_size=1, max_size=50))
def test_rtd_cdf_monotone(xs):
    pts = rtd_cdf(xs)
    assert all(a[0] <= b[0] and a[1] < b[1] for a, b in zip(pts, pts[1:]))
    assert pts[-1][1] == 1.0


def test_exponential_cdf_median():
    for m in (0.5, 1, 158, 1e6):
        assert exponential_cdf(m, m) == 0.5


def test_exponential_fit_exact_quantiles():
    k, m = 100, 1000.0
    xs = [m * math.log2(k / (k - i)) for i in range(1, k)]
    assert exponential_fit(xs)[1] <= 1 / k + 1e-12
    mid = [m * math.log2(1 / (1 - (i - 0.5) / k)) for i in range(1, k + 1)]
    fit_m, ks = exponential_fit(mid)
    assert ks <= 1 / k and fit_m == pytest.approx(m, rel=0.02)


def test_exponential_fit_constant_samples():
    assert exponential_fit([42] * 10) == (42, 0.5)
    with pytest.raises(ValueError):
        exponential_fit([])
    with pytest.raises(ValueError):
        exponential_fit([3, 0])


def test_ks_distance_reference():
    xs = [0.1, 0.4, 0.7]
    uniform = lambda x: min(max(x, 0.0), 1.0)
    # by hand: max over i of i/3 - x_i and x_i - (i-1)/3
    assert ks_distance(xs, uniform) == pytest.approx(max(1 / 3 - 0.1, 0.1, 2 / 3 - 0.4,
                                                         0.4 - 1 / 3, 1 - 0.7, 0.7 - 2 / 3))


def test_exponential_fit_on_exponential_samples():
    rng = random.Random(8)
    xs = [rng.expovariate(1 / 500) for _ in range(2000)]
    m, ks = exponential_fit(xs)
    assert m == pytest.approx(500 * math.log(2), rel=0.1)
    assert ks < 0.05


def test_aggregate_instrumentation():
    ev = PerturbationEvent(3, 2, (1, 2), 4, 0.5)
    cdfs = aggregate_instrumentation([[ev, ev], [ev]])
    assert cdfs["improving_steps"] == [(3, 1 / 3), (3, 2 / 3), (3, 1.0)]
    assert cdfs["relative_mobility"][-1] == (0.5, 1.0)
    first = PerturbationEvent(1, 0, (1,), 0, None)
    assert len(aggregate_instrumentation([[first]])["relative_mobility"]) == 0
    with pytest.raises(ValueError):
        aggregate_instrumentation([[], []])


# --- exports -----------------------------------------------------------------

def test_csv_format():
    text = records_to_csv([rec(t=0.0123456789)])
    assert text.splitlines() == [
        "instance,run,seed,pd,tcs,max_steps,success,steps,time_s,clique_size,clique",
        'K5,0,0,1,5,1000,1,4,0.012346,5,"1 2 3 4 5"',
    ]


def test_csv_round_trip_byte_identical():
    recs = [rec(run=i, t=i / 7, name="odd, name" if i == 2 else "K5") for i in range(4)]
    recs.append(rec(run=9, success=False, size=0, clique=()))
    text = records_to_csv(recs)
    back = records_from_csv(text)
    assert records_to_csv(back) == text
    assert [r.instance for r in back][2] == "odd, name"


def test_jsonl_round_trip():
    recs = [rec(run=i, t=i / 3) for i in range(3)]
    text = records_to_jsonl(recs)
    assert records_to_jsonl(records_from_jsonl(text)) == text


def test_write_and_read(tmp_path):
    g = complete(5)
    recs = run_experiment(g, "K5", SolverConfig(tcs=5), 3)
    write_records(recs, tmp_path / "r.csv", graph=g)
    write_records(recs, tmp_path / "r.jsonl", graph=g)
    for name in ("r.csv", "r.jsonl"):
        back = read_records(tmp_path / name)
        assert [(r.run, r.steps, r.clique) for r in back] == [(r.run, r.steps, r.clique)
                                                              for r in recs]


def test_export_verifies_cliques(tmp_path):
    bad = rec(clique=(1, 3), size=2, tcs=2)
    with pytest.raises(RecordError):
        write_records([bad], tmp_path / "x.csv", graph=path3())
    with pytest.raises(RecordError):
        write_records([rec(steps=2000)], tmp_path / "x.csv", graph=complete(5))
    with pytest.raises(RecordError):
        records_from_csv("a,b\n")


def test_write_cdf(tmp_path):
    write_cdf([(1, 0.5), (2.5, 1.0)], tmp_path / "c.csv")
    assert (tmp_path / "c.csv").read_text().splitlines()[0] == "value,cum_prob"
    assert len((tmp_path / "c.csv").read_text().splitlines()) == 3


# --- ranking -----------------------------------------------------------------

def res(mx, avg=None, mn=None, rate=1.0, t=1.0):
    return InstanceResult(mx, mx if avg is None else avg, mx if mn is None else mn, rate, t)


def pair(ra, rb, inst="g"):
    return AlgorithmSummary("A", {inst: ra}), AlgorithmSummary("B", {inst: rb})


def test_rank_examples():
    assert rank_algorithms(*pair(res(10, t=0.5), res(10, t=1.0)), "g") is Dominance.A
    assert rank_algorithms(*pair(res(10, 9, 8, 0.5), res(9, 9, 9, 0.0)), "g",
                           best_known=10) is Dominance.A
    a, b = pair(res(10, 8.0, 7, 0.3, 1.0), res(9, 8.5, 8, 0.0, 1.0))
    assert rank_algorithms(a, b, "g", best_known=11) is Dominance.INCONCLUSIVE


def test_rank_order_of_criteria():
    # one hit beats a faster full-success competitor
    assert rank_algorithms(*pair(res(10, t=99), res(9, t=0.1)), "g") is Dominance.A
    # equal times with full success: no decision
    assert rank_algorithms(*pair(res(10), res(10)), "g") is Dominance.INCONCLUSIVE
    # only one at 100%
    assert rank_algorithms(*pair(res(10, 9.5, 9, 0.5, 0.1), res(10, t=5)), "g") is Dominance.B
    # neither at 100%: all three measures agree
    a, b = pair(res(10, 9.5, 9, 0.5, 1.0), res(10, 9.2, 8, 0.2, 2.0))
    assert rank_algorithms(a, b, "g") is Dominance.A
    # best known above both maxima: both miss, fall through to success rates
    assert rank_algorithms(*pair(res(9, t=3), res(9, t=2)), "g", best_known=10) is Dominance.B


def test_rank_missing_and_invalid():
    a, b = pair(res(10), res(10))
    with pytest.raises(ValueError):
        rank_algorithms(a, b, "other")
    with pytest.raises(ValueError):
        InstanceResult(5, 6.0, 4, 1.0, 1.0)
    with pytest.raises(ValueError):
        InstanceResult(5, 5.0, 5, 1.5, 1.0)


result_st = st.builds(
    lambda mx, d1, d2, rate, t: InstanceResult(mx, mx - d1 / 2, mx - d1 - d2, rate, t),
    st.integers(5, 12), st.integers(0, 3), st.integers(0, 3),
    st.sampled_from([0.0, 0.3, 1.0]), st.sampled_from([0.0, 0.5, 1.0, 3.0]))


@settings(max_examples=200, deadline=None)
@given(ra=result_st, rb=result_st, best=st.one_of(st.none(), st.integers(5, 13)))
def test_rank_antisymmetric(ra, rb, best):
    a, b = pair(ra, rb)
    forward = rank_algorithms(a, b, "g", best)
    backward = rank_algorithms(AlgorithmSummary("B", {"g": rb}),
                               AlgorithmSummary("A", {"g": ra}), "g", best)
    assert backward is forward.swapped()


def test_summary_from_records_and_csv():
    recs = [rec(run=0, t=1.0), rec(run=1, t=3.0),
            rec(run=2, success=False, size=4, clique=(1, 2, 3, 4), t=9.0)]
    s = summary_from_records("dls", recs).results["K5"]
    assert (s.max_size, s.min_size, s.avg_time) == (5, 4, 2.0)
    assert s.success_rate == pytest.approx(2 / 3)
    again = summary_from_csv(records_to_csv(recs), name="dls").results["K5"]
    assert again == s
    table = ("algorithm,instance,max_size,avg_size,min_size,success_rate,avg_time\n"
             "X,K5,5,4.5,4,0.5,2.0\n")
    parsed = summary_from_csv(table)
    assert parsed.name == "X" and parsed.results["K5"] == InstanceResult(5, 4.5, 4, 0.5, 2.0)
    with pytest.raises(ValueError):
        summary_from_csv("what,ever\n")
