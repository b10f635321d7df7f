import random

import pytest

from vlcm.cse import Mode
from vlcm.errors import InfeasibleDelay
from vlcm.graph import evaluate, verify_design
from vlcm.numeric import min_adder_steps_set
from vlcm.partition import PartitionConfig, Strategy
from vlcm.pipeline import build_design

FIG2 = [0xFF13A6174C, 0x2EFFFF4CA617]


def test_worked_example_area():
    d = build_design(FIG2, PartitionConfig(8), mode=Mode.AREA)
    assert (d.stats.oper, d.stats.step) == (13, 7)
    assert d.stages == {"sequences": 2, "coefficients": 4, "cse": 1, "final": 6}
    assert [s.id for s in d.table] == ["exp_0"]


def test_worked_example_delay():
    d = build_design(FIG2, PartitionConfig(8), mode=Mode.DELAY)
    assert (d.stats.oper, d.stats.step) == (14, 5)
    assert d.stages["final"] == 6
    assert [s.id for s in d.table] == ["exp_0"]


@pytest.mark.parametrize("r,p", [(16, 8), (24, 8), (32, 16), (24, 24)])
def test_pure_sequence_costs_one(r, p):
    c = ((1 << r) - 1) << 48  # window aligned for every p used here
    d = build_design([c], PartitionConfig(p))
    assert d.stats.oper == 1
    assert evaluate(d, 3)["lc_0"] == 3 * c


def test_power_of_two_needs_no_adder():
    d = build_design([1 << 100], PartitionConfig(16))
    assert d.stats.oper == 0
    assert evaluate(d, 7)["lc_0"] == 7 << 100


@pytest.mark.parametrize("strategy", list(Strategy))
@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("solver", ["heuristic", "dbr-bin", "dbr-csd", "auto"])
def test_random_designs_verify(strategy, mode, solver):
    rng = random.Random(f"{strategy}{mode}{solver}")
    for _ in range(3):
        n = rng.choice([1, 3])
        w = rng.randint(100, 400)
        cs = [rng.getrandbits(w) | 1 | (1 << (w - 1)) for _ in range(n)]
        p = rng.choice([8, 12, 16])
        d = build_design(cs, PartitionConfig(p, strategy), solver, mode)
        ok, msg = verify_design(d, 200, seed=5)
        assert ok, msg
        assert d.stats.step >= min_adder_steps_set(cs)
        assert sum(d.stages.values()) == d.stats.oper


def test_delay_mode_never_deeper_than_area():
    rng = random.Random(9)
    for _ in range(5):
        cs = [rng.getrandbits(300) | (1 << 299) for _ in range(3)]
        a = build_design(cs, PartitionConfig(16), mode=Mode.AREA)
        d = build_design(cs, PartitionConfig(16), mode=Mode.DELAY)
        assert d.stats.step <= a.stats.step


def test_custom_names():
    d = build_design([43, 59], PartitionConfig(8), names=["a", "b"])
    assert evaluate(d, 1) == {"a": 43, "b": 59}


def test_infeasible_delay_is_reported():
    from vlcm.mcm import McmProblem, gb_delay_constrained

    with pytest.raises(InfeasibleDelay):
        gb_delay_constrained(McmProblem.of([0xFFFFFF & 0xAAAAAB]), 2)


def test_delay_mode_on_dense_coefficient_set():
    # many 16-bit coefficients; some 8-digit targets need a non-contiguous digit split
    from vlcm.driver import random_instance

    d = build_design(random_instance(900, 5, 0, 0), PartitionConfig(16), mode=Mode.DELAY)
    ok, msg = verify_design(d, 100, seed=1)
    assert ok, msg
