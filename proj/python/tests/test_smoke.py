import json
from fractions import Fraction

import pytest

import hypharm


def test_g_exact():
    assert hypharm.g_exact(1, 1) == Fraction(5, 4)
    assert hypharm.g_exact(1, 2, exponent=1) == Fraction(11, 6)
    total = sum(Fraction(1, (3 + i) ** 2) for i in range(20))
    assert hypharm.g_exact(3, 19) == total


def test_g_mod():
    assert hypharm.g_mod(1, 1, 101) == 77
    with pytest.raises(ValueError):
        hypharm.g_mod(1, 1, 100)


def test_search():
    report = hypharm.search(100)
    assert report["interval_count"] == 5050
    assert report["exact_collision_pairs"] == []
    forced = hypharm.search(120, moduli=1, modulus_bits=12)
    assert forced["screen_collision_pairs"]
    assert forced["exact_collision_pairs"] == []


def test_verify():
    assert "power-sums" in hypharm.lemma_ids()
    assert hypharm.verify("power-sums", r_max=100)["holds"]
    window = hypharm.verify("large-prime-window", k_max=2, window=20)
    assert not window["holds"]
    assert window["failures"][0]["parameters"] == {"k": 1, "n": 8}
    with pytest.raises(ValueError):
        hypharm.verify("bogus")
    with pytest.raises(TypeError):
        hypharm.verify("bertrand", colour=3)


def test_eta():
    out = hypharm.solve_eta(1, 1)
    assert out["solution"]["status"] == "certified"
    assert out["bands"]["bracket_upper"] == "refuted"


def test_decompose_and_reduce():
    d = hypharm.decompose(5, 1, 11, 25)
    assert d["identity_holds"] and d["e11"]
    assert hypharm.reduce_overlap(1, 1, 2, 1) == {"first": {"a": 1, "r": 0}, "second": {"a": 3, "r": 0}}
    sols = hypharm.e11_search(12, 25)
    assert {"first": {"a": 5, "r": 1}, "second": {"a": 11, "r": 25}} in sols


def test_run_cli():
    code, out, _ = hypharm.run_cli(["decompose", "--a1", "1", "--r", "0", "--a2", "2", "--s", "0"])
    assert code == 0
    assert json.loads(out)["results"][0]["difference"] == "3/4"
    code, _, err = hypharm.run_cli(["decompose", "--a1", "1", "--r", "1", "--a2", "2", "--s", "1"])
    assert code == 2 and "reduce" in err
