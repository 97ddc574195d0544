import json
from collections import Counter

import pytest

from shi_regions.errors import ValidationError
from shi_regions.identities import (
    QPolynomial,
    VerificationReport,
    brute_force_class_sizes,
    class_size,
    class_size_A,
    class_size_C,
    class_size_co,
    corollary_terms,
    gf_statistic,
    kreweras_count,
    multinomial,
    sequence_polynomial,
    sk_mk_counts,
    type_count,
    type_count_C,
    verify,
)
from shi_regions.model import partition_type, types


def test_kreweras_examples():
    assert kreweras_count((2, 1), 3) == 3
    for n in range(1, 8):
        assert kreweras_count((n,), n) == 1


def test_type_count_c_example():
    assert type_count_C((1,), 2) == 2


def test_invalid_types_are_rejected():
    with pytest.raises(ValidationError):
        kreweras_count((2, 2), 3)
    with pytest.raises(ValidationError):
        type_count_C((2, 2), 3)
    with pytest.raises(ValidationError):
        class_size_A((0, 3), 3)


def test_class_size_examples():
    assert class_size_A((2, 1), 3) == 3
    assert class_size_C((1,), 1) == 2
    assert class_size_C((), 2) == 1


@pytest.mark.parametrize("family,n", [("A", k) for k in range(1, 6)] + [("C", k) for k in range(1, 5)])
def test_class_sizes_match_window_census(family, n):
    for part, count in brute_force_class_sizes(family, n).items():
        assert count == class_size(family, partition_type(part), n)


def test_class_size_co_examples():
    assert class_size_co("A", (1,), (2,), 2) == 1
    assert class_size_co("A", (1, 2), (1, 1), 2) == 2
    assert class_size_co("C", (), (), 1) == 1
    with pytest.raises(ValidationError):
        class_size_co("A", (2,), (2,), 2)


def test_multinomial():
    assert multinomial(4, (2, 1, 1)) == 12
    with pytest.raises(ValidationError):
        multinomial(4, (2, 1))


def test_corollary_terms():
    assert corollary_terms("A", 3) == {(3,): 4, (2, 1): 36, (1, 1, 1): 24}
    assert corollary_terms("C", 2) == {(): 1, (1,): 8, (2,): 8, (1, 1): 8}


@pytest.mark.parametrize("n", range(1, 8))
def test_corollary_sums(n):
    assert sum(corollary_terms("A", n).values()) == (n + 1) ** n
    if n <= 6:
        assert sum(corollary_terms("C", n).values()) == (2 * n + 1) ** n
        total = sum(type_count("C", lam, n) * class_size("C", lam, n) for lam in types("C", n))
        assert total == (2 * n + 1) ** n


# -- S_k and M_k

def test_sk_mk_small():
    a2 = sk_mk_counts("A", 2)
    assert a2.S == {1: 1, 2: 2} and a2.M == {0: 2, 1: 1}
    c1 = sk_mk_counts("C", 1)
    assert c1.S == {0: 1, 1: 2} and c1.M == {0: 2, 1: 1}
    assert sum(sk_mk_counts("A", 3).S.values()) == 16


@pytest.mark.parametrize("family,n", [("A", k) for k in range(1, 6)] + [("C", k) for k in range(1, 4)])
def test_duality_and_refined_classes(family, n):
    t = sk_mk_counts(family, n)
    assert t.duality_holds()
    assert t.class_mismatches() == []


# -- q-polynomials

def test_qpolynomial_basics():
    p = QPolynomial.from_exponents([0, 0, 1])
    assert p.coefficients == (2, 1) and str(p) == "2 + q" and p(1) == 3
    assert str(p + QPolynomial((0, 0, 3))) == "2 + q + 3q^2"
    assert QPolynomial((4, 2)).scaled_down(2) == QPolynomial((2, 1))
    with pytest.raises(ValueError):
        QPolynomial((3, 2)).scaled_down(2)


@pytest.mark.parametrize("family,n,mode", [("A", 2, "combinatorial"), ("A", 2, "geometric"), ("C", 1, "combinatorial"), ("C", 1, "geometric")])
def test_two_plus_q(family, n, mode):
    assert str(gf_statistic(family, n, "ceilings", mode)) == "2 + q"
    assert str(gf_statistic(family, n, "floors", mode)) == "2 + q"


def test_sequence_statistic_n2():
    assert str(gf_statistic("A", 2, "sequence-distinct")) == "2 + q"
    assert sequence_polynomial("A", 2, "all").scaled_down(3) == QPolynomial((2, 1))


@pytest.mark.parametrize("n", range(1, 5))
def test_four_way_equality_type_a(n):
    ceil = gf_statistic("A", n, "ceilings")
    assert ceil == gf_statistic("A", n, "floors")
    assert ceil == sequence_polynomial("A", n, "all").scaled_down(n + 1)
    assert ceil == gf_statistic("A", n, "sequence-distinct")
    if n <= 3:
        assert ceil == gf_statistic("A", n, "ceilings", "geometric") == gf_statistic("A", n, "floors", "geometric")


@pytest.mark.parametrize("n", range(1, 4))
def test_equality_type_c(n):
    ceil = gf_statistic("C", n, "ceilings")
    assert ceil == gf_statistic("C", n, "floors") == gf_statistic("C", n, "sequence-distinct")
    if n <= 2:
        assert ceil == gf_statistic("C", n, "ceilings", "geometric")


def test_unknown_statistic_and_mode():
    with pytest.raises(ValidationError):
        gf_statistic("A", 2, "walls")
    with pytest.raises(ValidationError):
        gf_statistic("A", 2, "ceilings", "symbolic")
    with pytest.raises(ValidationError):
        gf_statistic("A", 2, "sequence-distinct", "geometric")


# -- reports

def test_identities_suite_terms():
    r = verify("identities", 3)
    assert r.ok
    details = [c.detail for c in r.checks if c.name.startswith("corollary sum")]
    assert "4+36+24=64" in details
    assert "1+8+8+8=25" in details


def test_report_serialization():
    r = verify("counts", 2)
    doc = json.loads(r.to_json())
    assert doc["schema"] == 1 and doc["ok"] is True
    assert r.table().endswith(f"{len(r.checks)}/{len(r.checks)} checks passed")


def test_failures_carry_counterexamples():
    r = VerificationReport("demo", 1)
    r.add("always fails", {"n": 1}, False, "expected 2", counterexample=(1, 2))
    assert not r.ok
    assert "counterexample: (1, 2)" in r.table()
    assert json.loads(r.to_json())["checks"][0]["counterexample"] == "(1, 2)"


def test_unknown_suite():
    with pytest.raises(ValidationError):
        verify("everything", 2)


@pytest.mark.parametrize("suite", ["counts", "theorem2", "theorem4", "bijectivity", "classes", "identities", "geometry-cross-check"])
def test_each_suite_passes_small(suite):
    r = verify(suite, 2)
    assert r.checks and r.ok, r.table()
