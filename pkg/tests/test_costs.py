import pytest

from watchscreen.costs import (
    DEFAULT_SCHEDULE,
    CostConfigError,
    CostMatrices,
    ThresholdSchedule,
)


def test_unlisted_and_boundary_pairs_cost_one():
    c = CostMatrices(insertion={("s", "s"): 0.2}, substitution={("o", "u"): 0.2})
    assert c.iuc("s", "s") == 0.2
    assert c.iuc(None, "s") == 1.0
    assert c.iuc("s", "ç") == 1.0
    assert c.suc("o", "u") == 0.2
    assert c.suc("u", "o") == 1.0
    assert c.duc("a", "b") == 1.0
    assert not c.is_uniform
    assert CostMatrices().is_uniform


def test_min_indel():
    assert CostMatrices().min_indel == 1.0
    assert CostMatrices(deletion={("a", "a"): 0.25}).min_indel == 0.25


def test_cost_bounds_and_alphabet_checked():
    with pytest.raises(CostConfigError):
        CostMatrices(substitution={("a", "b"): 1.5})
    with pytest.raises(CostConfigError):
        CostMatrices(insertion={("A", "b"): 0.5})


def test_parse_config_lines():
    c = CostMatrices.parse(["# comment", "", "S\to\tu\t0.2", "I\ts\ts\t0.2", "D\ta\th\t0.5"])
    assert (c.suc("o", "u"), c.iuc("s", "s"), c.duc("a", "h")) == (0.2, 0.2, 0.5)


@pytest.mark.parametrize("line", ["X\ta\tb\t0.1", "S\ta\tb", "S\ta\tb\tcheap"])
def test_parse_rejects_bad_lines(line):
    with pytest.raises(CostConfigError, match="line 1"):
        CostMatrices.parse([line])


def test_phonetic_sample_loads():
    c = CostMatrices.phonetic_sample()
    assert c.suc("o", "u") < 1 and c.suc("i", "e") < 1 and c.iuc("s", "s") < 1
    assert c.suc("a", "z") == 1.0


def test_default_schedule_bands():
    assert [DEFAULT_SCHEDULE(n) for n in (1, 3, 4, 6, 7, 10, 11, 40, 5000)] == [0, 0, 1, 1, 2, 2, 3, 3, 3]


def test_schedule_parse_round_trip():
    s = ThresholdSchedule.parse("3:0,6:1,10:2,999:3")
    assert s == DEFAULT_SCHEDULE
    assert str(s) == "3:0,6:1,10:2,999:3"


def test_for_query_uses_longer_length():
    thr = DEFAULT_SCHEDULE.for_query(7, 12)
    assert thr[3] == 2 and thr[7] == 2 and thr[11] == 3


@pytest.mark.parametrize("text", ["6:1,3:0", "3:2,6:1", "", "3-0", "0:0"])
def test_schedule_rejects_bad_bands(text):
    with pytest.raises(ValueError):
        ThresholdSchedule.parse(text)
