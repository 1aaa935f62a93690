import random

import pytest

from tensorcat import laws
from tensorcat import twovect as tv
from tensorcat.laws import LawConfig


def test_config_validation():
    with pytest.raises(ValueError):
        LawConfig(cases_per_law=-1)
    with pytest.raises(ValueError):
        LawConfig(max_dim=0)
    assert LawConfig().seed == 42


def test_registry_has_unique_names_and_statements():
    names = [x.name for x in laws.laws()]
    assert len(names) == len(set(names)) >= 19
    assert all(x.statement for x in laws.laws())


def test_zero_cases_gives_empty_report():
    rep = laws.run_suite(LawConfig(cases_per_law=0))
    assert rep.laws == [] and rep.ok and rep.failures == 0


def test_unknown_names_are_rejected():
    with pytest.raises(ValueError):
        laws.run_suite(LawConfig(cases_per_law=1), mutate="bogus")
    with pytest.raises(ValueError):
        laws.run_suite(LawConfig(cases_per_law=1), only=["no-such-law"])


def test_same_seed_same_report():
    cfg = LawConfig(seed=7, cases_per_law=5)
    only = ["interchange", "distributor", "matk-addition"]
    a = laws.run_suite(cfg, only=only).to_json(timings=False)
    b = laws.run_suite(cfg, only=only).to_json(timings=False)
    assert a == b


def test_parallel_run_matches_serial():
    cfg = LawConfig(seed=3, cases_per_law=4)
    only = ["interchange", "decat-multiplicative", "local-biproduct"]
    serial = laws.run_suite(cfg, only=only).to_dict(timings=False)
    assert laws.run_suite(cfg, only=only, jobs=2).to_dict(timings=False) == serial


def test_same_seed_same_morphisms():
    cfg = LawConfig()
    draws = []
    for _ in range(2):
        rng = random.Random("k")
        f = laws.gen_one_mor(rng, cfg, 2, 3)
        draws.append((f, laws.gen_two_mor(rng, cfg, f, f)))
    assert draws[0] == draws[1]


def test_generators_respect_bounds():
    cfg = LawConfig(max_object=2, max_components=2, max_dim=2, scalar_bound=3)
    rng = random.Random(0)
    for _ in range(1000):
        assert 1 <= laws.gen_object(rng, cfg) <= 2
        d = laws.gen_decomp(rng, cfg)
        assert len(d) <= 2 and all(0 <= x <= 2 for x in d)
        s = laws.gen_scalar(rng, cfg)
        assert abs(s) <= 3


def test_tightest_bounds_keep_dimensions_small():
    cfg = LawConfig(max_object=1, max_components=1, max_dim=1, scalar_bound=1)
    rng = random.Random(1)
    for _ in range(200):
        f = laws.gen_one_mor(rng, cfg, 1, 1)
        assert tv.total(f[0, 0]) <= 1


def test_resplit_keeps_totals():
    rng = random.Random(2)
    f = laws.gen_one_mor(rng, LawConfig(), 2, 2)
    g = laws.gen_resplit(rng, f)
    assert f.totals() == g.totals()


def test_kron_flip_breaks_interchange_and_writes_counterexample():
    rep = laws.run_suite(LawConfig(cases_per_law=30), mutate="kron-flip", only=["interchange"])
    res = rep.law("interchange")
    assert not res.ok
    text = res.failures[0].counterexample
    assert text.startswith("# law interchange, case")
    assert "two a" in text or "two " in text


def test_small_default_run_is_clean():
    rep = laws.run_suite(LawConfig(cases_per_law=10))
    assert rep.ok, "\n".join(rep.lines())
    assert rep.lines()[-1].endswith("all laws hold")
