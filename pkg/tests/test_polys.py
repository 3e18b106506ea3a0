import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symcurves import curves
from symcurves.errors import ExponentOverflow, InvalidParameters
from symcurves.ff import FieldElement, field
from symcurves.polys import (
    LinearizedPoly,
    SparsePoly,
    SubgroupV,
    coprime_degree,
    coprime_term_criterion,
    decompose_linearized,
    derivative,
    elementary_symmetric,
    evaluate,
    image_subgroup,
    is_permutation,
    linearized_from_subgroup,
    outer_linearized,
    roots_with_multiplicity,
    squarefree_decomposition,
    subgroups,
)

F2, F4, F8, F9 = field(2, 1), field(2, 2), field(2, 3), field(3, 2)


def s(n, q, i, level):
    return elementary_symmetric(n, q, i, level)


def polys(F, max_deg=12, max_terms=5):
    return st.dictionaries(st.integers(0, max_deg), st.integers(1, F.order - 1), max_size=max_terms).map(
        lambda d: SparsePoly(F, d)
    )


# -- elementary symmetric polynomials ------------------------------------------------------


def test_s32_over_f2_matches_the_printed_curve():
    assert s(3, 2, 2, F2).terms == {6: 1, 5: 1, 3: 1}


@pytest.mark.parametrize("q", [2, 3, 4])
def test_top_index_is_the_norm_monomial(q):
    assert s(5, q, 5, F2 if q != 3 else field(3, 1)).terms == {sum(q**j for j in range(5)): 1}


@pytest.mark.parametrize("n,q", [(3, 2), (4, 3), (5, 4), (2, 5)])
def test_first_index_is_the_trace(n, q):
    assert set(s(n, q, 1, F2).terms) == {q**j for j in range(n)}


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (5, 3), (6, 4)])
def test_term_count_is_binomial(n, q):
    for i in range(n + 1):
        f = s(n, q, i, F2)
        assert len(f.terms) == comb(n, i) and set(f.terms.values()) == {1}
    assert s(n, q, 0, F2).terms == {0: 1}


def test_exponent_overflow_and_index_checks():
    with pytest.raises(ExponentOverflow):
        s(70, 2, 70, F2)
    with pytest.raises(ExponentOverflow):
        SparsePoly.monomial(F2, 2**64)
    with pytest.raises(InvalidParameters):
        s(3, 2, 4, F2)


# -- ring arithmetic -----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(F9), polys(F9), polys(F9))
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero


@settings(max_examples=60, deadline=None)
@given(polys(F8), polys(F8))
def test_product_evaluates_pointwise(f, g):
    xs = F8.elements()
    assert np.array_equal((f * g).evaluate_all(xs), F8.vmul(f.evaluate_all(xs), g.evaluate_all(xs)))
    assert [(f * g)(int(x)) for x in xs] == (f * g).evaluate_all(xs).tolist()


@settings(max_examples=40, deadline=None)
@given(polys(F4, max_deg=6, max_terms=3), st.integers(0, 5))
def test_power_is_repeated_product(f, e):
    expected = SparsePoly.constant(F4, 1)
    for _ in range(e):
        expected = expected * f
    assert f**e == expected


# -- derivatives ---------------------------------------------------------------------------


def test_derivative_examples():
    assert derivative(SparsePoly.constant(F4, 3)).is_zero
    for n, q in [(3, 2), (4, 3), (3, 4)]:
        assert derivative(s(n, q, 1, F2 if q != 3 else field(3, 1))).terms == {0: 1}
    s21 = s(2, 2, 1, F2)  # x^2 + x
    assert derivative(s(3, 2, 2, F2)) == s21 * s21 == SparsePoly(F2, {4: 1, 2: 1})


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (4, 3), (3, 4), (5, 2)])
def test_derivative_is_frobenius_of_lower_symmetric(n, q):
    K = field(*{2: (2, 1), 3: (3, 1), 4: (2, 2)}[q])
    for i in range(1, n + 1):
        assert derivative(s(n, q, i, K)) == s(n - 1, q, i - 1, K).compose_power(q)


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_artin_schreier_identity(n, q):
    K = field(q, 1)
    t_qn_minus_t = SparsePoly(K, {q**n: 1, 1: K.neg(1)})
    for i in range(1, n + 1):
        f = s(n, q, i, K)
        assert f.compose_power(q) - f == t_qn_minus_t * s(n - 1, q, i - 1, K).compose_power(q)


# -- coprime terms -------------------------------------------------------------------------


@pytest.mark.parametrize("n,q", [(3, 2), (4, 3), (5, 4), (3, 5)])
def test_coprime_degree_of_symmetric(n, q):
    K = field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}[q])
    for i in range(2, n + 1):
        expected = sum(q ** (n - j) for j in range(1, i)) + 1
        assert coprime_degree(s(n, q, i, K)) == expected == curves.coprime_degree_formula(n, q, i)
        assert coprime_term_criterion(s(n, q, i, K))
    assert coprime_degree(s(3, q, 2, K)) == q * q + 1


def test_coprime_criterion_trivial_cases():
    F3 = field(3, 1)
    assert coprime_degree(SparsePoly.monomial(F3, 3)) is None
    assert not coprime_term_criterion(SparsePoly(F3, {1: 1, 3: 1}))
    assert coprime_term_criterion(SparsePoly(F3, {2: 1, 3: 1}))


# -- roots ---------------------------------------------------------------------------------


def test_roots_of_s32_over_f8():
    roots = roots_with_multiplicity(s(3, 2, 2, F8), F8)
    mult = {r.value: m for r, m in roots}
    assert mult.pop(0) == 3
    assert len(mult) == 3 and set(mult.values()) == {1}


@pytest.mark.parametrize("n,q", [(3, 2), (2, 3), (4, 2), (2, 4)])
def test_trace_roots_are_simple_and_trace_zero(n, q):
    p, e = {2: (2, 1), 3: (3, 1), 4: (2, 2)}[q]
    L = field(p, e * n)
    roots = roots_with_multiplicity(s(n, q, 1, L), L)
    assert len(roots) == q ** (n - 1) and all(m == 1 for _, m in roots)
    assert {r.value for r, _ in roots} == set(curves.trace_zero_group(n, q).elements)


def test_roots_edge_cases():
    assert roots_with_multiplicity(SparsePoly.constant(F4, 2), F4) == []
    with pytest.raises(InvalidParameters):
        roots_with_multiplicity(SparsePoly(F4), F4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=6))
def test_multiplicities_of_a_product_of_linear_factors(root_codes):
    F = F9
    f = SparsePoly.constant(F, 1)
    for r in root_codes:
        f = f * SparsePoly(F, {1: 1, 0: F.neg(r)})
    got = {r.value: m for r, m in roots_with_multiplicity(f, F)}
    expected = {r: root_codes.count(r) for r in set(root_codes)}
    assert got == expected


@settings(max_examples=40, deadline=None)
@given(polys(F4, max_deg=10, max_terms=4))
def test_squarefree_decomposition_reconstructs(f):
    if f.degree <= 0:
        return
    parts = squarefree_decomposition(f)
    prod = SparsePoly.constant(F4, 1)
    for g, m in parts:
        prod = prod * g**m
    lead = f.leading[1]
    assert prod.scale(lead) == f
    assert all(m >= 1 for _, m in parts)


# -- evaluation and permutation ------------------------------------------------------------


def test_evaluation_examples():
    for i in (1, 2, 3):
        assert evaluate(s(3, 2, i, F8), FieldElement(F8, 0)).value == 0
    assert all(v in (0, 1) for v in s(3, 2, 2, F8).evaluate_all(F8.elements()).tolist())
    omega = FieldElement(F4, 2)
    assert evaluate(s(2, 2, 1, F4), omega).value == 1


def test_evaluation_embeds_lower_levels():
    # an F_2 element evaluated in an F_4 polynomial
    assert evaluate(s(2, 2, 1, F4), FieldElement(F2, 1)).value == 0


def test_permutation_examples():
    assert is_permutation(s(3, 2, 1, F4), F4)
    assert not is_permutation(s(3, 2, 1, F8), F8)
    assert is_permutation(SparsePoly.monomial(F9, 1), F9)
    assert not is_permutation(SparsePoly.monomial(F9, 2), F9)


# -- subgroups and linearized polynomials --------------------------------------------------


def test_subgroup_enumeration_order():
    V = curves.trace_zero_group(3, 2)  # order 4 in F_8
    subs = subgroups(V)
    assert [W.dim for W in subs] == [1, 1, 1]
    assert subs == sorted(subs, key=SubgroupV.sort_key)
    assert len(subgroups(V, proper=False, nontrivial=False)) == 5


def test_subgroup_rejects_dependent_basis():
    with pytest.raises(InvalidParameters):
        SubgroupV(F4, [2, 2])


def test_linearized_examples():
    assert linearized_from_subgroup(SubgroupV(F8, [])).coeffs == (1,)
    assert linearized_from_subgroup(SubgroupV(F2, [1])).as_sparse().terms == {2: 1, 1: 1}
    V = curves.trace_zero_group(3, 2)
    L = linearized_from_subgroup(V)
    assert L.degree == 4
    xs = F8.elements()
    assert set(np.flatnonzero(L.evaluate_all(xs) == 0).tolist()) == set(V.elements)
    a, b = np.meshgrid(xs, xs)
    assert np.array_equal(L.evaluate_all(F8.vadd(a, b).ravel()), F8.vadd(L.evaluate_all(a.ravel()), L.evaluate_all(b.ravel())))


def test_linearized_rejects_non_additive_terms():
    with pytest.raises(InvalidParameters):
        LinearizedPoly.from_sparse(SparsePoly.monomial(F4, 3))


def test_image_subgroup_size():
    V = curves.trace_zero_group(3, 3)
    for W in subgroups(V):
        Wp = image_subgroup(linearized_from_subgroup(W), V)
        assert len(Wp) * len(W) == len(V)


# -- decomposition -------------------------------------------------------------------------


def test_decompose_zero_returns_first_subgroup():
    V = curves.trace_zero_group(3, 2)
    W, g = decompose_linearized(SparsePoly(V.field), V)
    assert W == subgroups(V)[0] and g.is_zero


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (3, 4)])
def test_decompose_round_trip(n, q):
    V = curves.trace_zero_group(n, q)
    K = V.field
    for W in subgroups(V)[:4]:
        g = SparsePoly(K, {3: 1, 1: 1})
        f = outer_linearized(W, V)(g)
        found = decompose_linearized(f, V)
        assert found is not None
        W2, g2 = found
        assert outer_linearized(W2, V)(g2) == f


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (3, 4), (5, 2)])
def test_symmetric_right_sides_do_not_decompose(n, q):
    V = curves.trace_zero_group(n, q)
    for i in range(2, n + 1):
        assert decompose_linearized(s(n, q, i, V.field), V) is None
