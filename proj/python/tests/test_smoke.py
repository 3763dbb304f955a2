import json

import pytest

import clifq


def test_forms_and_discriminant():
    q = clifq.DiagonalForm([1, -2, 3])
    assert q.rank == 3
    assert str(q) == "<1, -2, 3>"
    assert clifq.signed_discriminant(clifq.DiagonalForm([1, 1])) == "-1"
    index, kernel = clifq.witt_decompose(clifq.DiagonalForm([1, -1, 2]))
    assert index == 1 and kernel.rank == 1
    assert json.loads(q.to_json())["base"] == "Q"


def test_clifford_dimensions():
    for n in range(1, 6):
        q = clifq.DiagonalForm(list(range(1, n + 1)), base="F_7")
        assert clifq.even_clifford(q).dim == 2 ** (n - 1)
        assert clifq.clifford_bimodule_dim(q) == 2 ** (n - 1)
    assert clifq.sum_isomorphism_check(clifq.DiagonalForm([1, 2]), clifq.DiagonalForm([3]))
    assert clifq.hyperbolic_model_check("Q", 2)
    assert clifq.metabolic_split_certificate(clifq.hyperbolic("Q", 2))


def test_brauer_and_invariants():
    assert clifq.class_of_quaternion("-1", "-1") == ["2", "inf"]
    assert clifq.hilbert_symbol("-1", "-1", "inf") == -1
    q = clifq.construct_preimage(["3", "inf"])
    assert clifq.e2(q) == ["3", "inf"]
    assert clifq.e0(q) == 0
    a, b = clifq.quaternion_from_class(["2", "5"])
    assert clifq.class_of_quaternion(a, b) == ["2", "5"]
    r = clifq.pfaffian_roundtrip(-1, -1, -1, 3)
    assert r["holds"] and r["albert_class"] == ["3", "inf"]


def test_function_field_reciprocity():
    q = clifq.DiagonalForm(["t", "-t+1", "3"], base="Q(t)")
    assert clifq.milnor_reciprocity(q)


def test_dedekind():
    reps = clifq.class_group_mod_squares(-5)
    assert [r[0] for r in reps] == ["O", "p2"]
    assert reps[1][1] == ("2", "1+sqrt(-5)")
    assert clifq.hyperbolic_order_check(-5) == (True, True)


def test_suites_and_errors():
    assert "dedekind" in clifq.suite_names()
    r = clifq.run_suite("norm-roundtrip", seed=3)
    assert r["passed"] and r["cases"] == 20
    assert clifq.run_suite("e2-additivity", 42, 1) == clifq.run_suite("e2-additivity", 42, 4)
    with pytest.raises(clifq.UsageError):
        clifq.run_suite("nonexistent")
    with pytest.raises(clifq.DomainError):
        clifq.DiagonalForm([0, 1])
    with pytest.raises(clifq.ParseError):
        clifq.form_from_json('{"base": "Q", "gram": [[1, 0], [0]]}')
