from fractions import Fraction
from pathlib import Path

import pytest

import tausq

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="module")
def example():
    return tausq.load_database(str(DATA / "table1.txt"), str(DATA / "table2.txt"))


def test_load(example):
    assert len(example) == 5
    assert example.num_items == 9
    assert example.labels[0] == 1


def test_mine_running_example(example):
    pats, stats = tausq.mine(example, "4 -1 5", "0.1")
    assert stats["u_dt"] == 333
    hit = [p for p in pats if p.pattern == "3 4 -1 5"]
    assert hit and hit[0].au == Fraction(45)
    assert all(p.au >= Fraction(333, 10) for p in pats)


def test_xi_forms_agree(example):
    a, _ = tausq.mine(example, "4 -1 5", 0.1)
    b, _ = tausq.mine(example, "4 -1 5", Fraction(1, 10))
    assert a == b


def test_modes_and_bounds_agree(example):
    base, _ = tausq.mine(example, "4 -1 5", "0.05")
    for kw in (
        {"mode": "post-filter"},
        {"bound": "vsrau"},
        {"bound": "vsrau", "length_mode": "rrs"},
        {"disabled_strategies": [1, 5, 6]},
    ):
        got, _ = tausq.mine(example, "4 -1 5", "0.05", **kw)
        assert got == base, kw


def test_verify_and_generate():
    db = tausq.generate(seed=3, sequences=20, items=6, plant="1 -1 2", plant_prob=0.6)
    assert len(db) == 20
    assert tausq.verify(db, "1 -1 2", "0.1", max_len=6) == []


def test_text_round_trip(example):
    db_text, ut_text = example.to_text()
    again = tausq.database_from_text(db_text, ut_text)
    assert tausq.mine(again, "4 -1 5", "0.1")[0] == tausq.mine(example, "4 -1 5", "0.1")[0]


def test_errors(example):
    with pytest.raises(ValueError):
        tausq.database_from_text("1[0] -2\n", "1:1\n")
    with pytest.raises(ValueError):
        tausq.mine(example, "42", "0.1")
    with pytest.raises(ValueError):
        tausq.mine(example, "4", "0.1", bound="other")


def test_run_cli():
    code, out, _ = tausq.run_cli(
        ["mine", "--db", DATA / "table1.txt", "--utils", DATA / "table2.txt", "--target", "4 -1 5", "--xi", "0.1"]
    )
    assert code == 0
    assert "3 4 -1 5\t135/3\t45" in out
