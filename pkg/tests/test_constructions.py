import math

import pytest

from flatspec import constructions as C
from flatspec.boolfunc import anf_to_function, degree, format_anf, graph_of_quadratic
from flatspec.constructions import Family, FormulaError, build, predicted_count
from flatspec.gf2 import TransformSet
from flatspec.transform import count_flat


def measured(fam, tset):
    p = build(fam)
    method = "rank" if degree(p) <= 2 else "spectral"
    return count_flat(anf_to_function(p), tset, method).flat_count


def test_build_shapes():
    assert format_anf(build(Family("line", 4))) == "01,12,23"
    assert format_anf(build(Family("clique", 3))) == "01,02,12"
    assert format_anf(build(Family("clc", 2, 2))) == "01,12,23"
    assert format_anf(build(Family("constant", 3))) == ""
    assert format_anf(build(Family("monomial", 3))) == "012"
    assert graph_of_quadratic(build(Family("clc", 3, 2))).edges() == [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]


def test_aliases_and_names():
    assert Family("path", 3) == Family("line", 3)
    assert Family("clique_line_clique", 2, 3).kind == "clc"
    assert str(Family("clc", 2, 3)) == "clc(2,3)"
    assert Family("clc", 2, 3).num_vars == 5
    with pytest.raises(ValueError):
        Family("star", 3)
    with pytest.raises(ValueError):
        Family("clc", 3)


def test_predicted_examples():
    assert predicted_count(Family("line", 3), "hn") == 5
    assert predicted_count(Family("line", 4), "ihn") == 44
    assert predicted_count(Family("clique", 4), "ihn") == 40
    assert predicted_count(Family("clique", 4), "ih") == 8
    assert predicted_count(Family("clc", 2, 2), "hn") == 11
    assert predicted_count(Family("clc", 2, 2), "ihn") == 44
    assert predicted_count(Family("monomial", 5), "ihn") == 6
    assert predicted_count(Family("constant", 3), "ihn") == 8


def test_unsupported_pairs():
    with pytest.raises(FormulaError):
        predicted_count(Family("monomial", 2), "ihn")
    with pytest.raises(FormulaError):
        predicted_count(Family("constant", 3), "hn")
    with pytest.raises(FormulaError):
        predicted_count(Family("line", 3), "h")


@pytest.mark.parametrize("kind,tset", [(k, s) for k, s in C.supported_pairs() if k in ("line", "clique")])
def test_single_parameter_families_match_oracle(kind, tset):
    for n in range(1, 9):
        fam = Family(kind, n)
        assert predicted_count(fam, tset) == measured(fam, tset), (fam, tset)


@pytest.mark.parametrize("tset", [TransformSet.HN, TransformSet.IH, TransformSet.IHN])
def test_clc_matches_oracle(tset):
    for n in range(1, 6):
        for m in range(1, 6):
            if tset is TransformSet.IH and n + m < 4:
                continue
            fam = Family("clc", n, m)
            assert predicted_count(fam, tset) == measured(fam, tset), (fam, tset)


def test_constant_and_monomial_match_oracle():
    for n in range(1, 7):
        assert predicted_count(Family("constant", n), "ihn") == measured(Family("constant", n), "ihn")
        if n != 2:
            assert predicted_count(Family("monomial", n), "ihn") == measured(Family("monomial", n), "ihn")


def test_closed_forms_agree_with_recurrences():
    for n in range(1, 21):
        assert C.line_hn(n) == C.line_hn_closed(n)
        assert C.clique_hn(n) == C.clique_hn_closed(n)
        assert C.clique_ihn(n) == C.clique_ihn_closed(n) == C.clique_ihn_binomial(n)
        assert C.line_ih(n) == C.line_ih_convolution(n)
        assert C.line_ihn(n) == C.line_ihn_convolution(n)


def test_line_ih_is_fibonacci_binet():
    # (phi^{n+1} - psi^{n+1}) / sqrt5 with phi,psi = (1 +- sqrt5)/2
    for n in range(0, 21):
        a, b = 1, 0
        for _ in range(n + 1):
            a, b = a + 5 * b, a + b
        assert 2 * b == C.line_ih(n) << (n + 1)


def test_line_ihn_binet():
    # K_n = ((1+sqrt3)^{n+1} - (1-sqrt3)^{n+1}) / (2 sqrt3)
    for n in range(0, 21):
        a, b = 1, 0
        for _ in range(n + 1):
            a, b = a + 3 * b, a + b
        assert b == C.line_ihn(n)


def test_clc_closed_forms_for_n_m_at_least_two():
    for n in range(2, 11):
        for m in range(2, 11):
            assert C.clc_ih(n, m) == C.clc_ih_closed(n, m)
            assert C.clc_ihn(n, m) == C.clc_ihn_closed(n, m)


def test_clc_closed_forms_break_on_single_vertex_cliques():
    # The compact closed forms are not valid once either clique is a single vertex.
    assert C.clc_ih(1, 3) != C.clc_ih_closed(1, 3)
    with pytest.raises(FormulaError):
        C.clc_ihn_closed(1, 1)
    assert C.clc_ihn(1, 1) == C.line_ihn(2)


def test_clc_hn_symmetric():
    for n in range(1, 10):
        for m in range(1, 10):
            assert C.clc_hn(n, m) == C.clc_hn(m, n)
            assert C.clc_ihn(n, m) == C.clc_ihn(m, n)


def test_hadamard_bentness_parity():
    for n in range(1, 10):
        for kind in ("line", "clique"):
            k = count_flat(anf_to_function(build(Family(kind, n))), "h").flat_count
            assert k == (1 if n % 2 == 0 else 0)


def test_clique_ihn_recurrence_step():
    # the doubling step adds 2^{n-1}, not 2^n
    for n in range(2, 12):
        assert C.clique_ihn(n) - 2 * C.clique_ihn(n - 1) == 2 ** (n - 1)
    assert measured(Family("clique", 3), "ihn") == 16 != 2 * 6 + 8


def test_clique_ihn_growth():
    for n in range(1, 15):
        assert C.clique_ihn(n) == (n + 1) * 2 ** (n - 1)
        assert math.comb(n, 0) * C.clique_hn(n) <= C.clique_ihn(n)
