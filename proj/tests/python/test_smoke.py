import math
from fractions import Fraction

import pytest

import lstar


def test_zeta_two():
    e = lstar.eval_lstar([2], ["1"])
    assert e.contains(math.pi ** 2 / 6)
    assert e.width < 1e-8


def test_weights_accept_several_types():
    a = lstar.eval_lstar([1, 1], ["1/2", "1/2"])
    b = lstar.eval_lstar([1, 1], [Fraction(1, 2), 0.5])
    assert a.lo == b.lo and a.hi == b.hi


def test_validation_error():
    with pytest.raises(lstar.LStarError):
        lstar.eval_lstar([1], ["1"])


def test_compare_and_invert():
    assert lstar.compare_finite([2, 1], [2]) == "greater"
    index, value, exact = lstar.invert(1.7, "1/2", 1e-6)
    assert abs(value.mid - 1.7) <= 1e-6
    assert index == [1, 1, 3, 1, 4, 4, 1, 1, 3]
    assert not exact


def test_monte_carlo_is_reproducible():
    a = lstar.mc_cube_estimate([2], ["1"], 20000, 7)
    b = lstar.mc_cube_estimate([2], ["1"], 20000, 7)
    assert a == b


def test_cli_entry_point():
    code, out, err = lstar.cli(["compare", "--a", "2,1", "--b", "2"])
    assert code == 0
    assert "greater" in out
    code, _, err = lstar.cli(["eval", "--index", "1", "--weights", "1"])
    assert code == 2
    assert "DivergentArg" in err


def test_verify_identities():
    checks = lstar.run_verify("identities", 42)
    assert checks and all(c["passed"] for c in checks)


def test_float_weights_in_exponent_notation():
    e = lstar.eval_lstar([2], [1e-05])
    assert abs(e.mid - sum(1e-05 ** (m - 1) / m ** 2 for m in range(1, 5))) < 1e-15
