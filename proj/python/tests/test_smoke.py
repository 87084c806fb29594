import pytest

import fibprod


def test_sequences():
    assert [fibprod.fib(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert [fibprod.lucas(n) for n in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]
    assert fibprod.fib(300) == fibprod.fib(299) + fibprod.fib(298)


@pytest.mark.parametrize("equation", ["F=LL", "L=FF"])
def test_solution_sets(equation):
    found = fibprod.enumerate_solutions(equation)
    assert sorted(found) == sorted(fibprod.published_solution_set(equation))
    for k, m, n in found:
        if equation == "F=LL":
            assert fibprod.fib(k) == fibprod.lucas(m) * fibprod.lucas(n)
        else:
            assert fibprod.lucas(k) == fibprod.fib(m) * fibprod.fib(n)


def test_common_terms():
    assert fibprod.common_terms(160) == [1, 3]


def test_bounds():
    b = fibprod.baker_bounds("F=LL")
    assert b["constants"]["small_form.coefficient"] == pytest.approx(3.62e11, rel=0.01)
    assert b["n_bound"] + 1 == pytest.approx(2.18e27, rel=0.02)
    assert b["m_bound"] <= b["n_bound"]
    assert fibprod.reduced_bounds("F=LL") == (4, 16)
    assert fibprod.reduced_bounds("L=FF") == (4, 8)


def test_verify_report():
    r = fibprod.report("verify")
    assert r["checks"] and all(c["passed"] for c in r["checks"])
    assert fibprod.run("solve", "F=LL") == fibprod.run("solve", "F=LL")


def test_errors():
    with pytest.raises(fibprod.ConfigError):
        fibprod.enumerate_solutions("F=FF")
    with pytest.raises(ValueError):
        fibprod.run("solve", "both", precision=512, precision_cap=256)
    with pytest.raises(fibprod.PrecisionExhausted):
        fibprod.baker_bounds("F=LL", precision=8, precision_cap=8)
