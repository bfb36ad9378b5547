from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bfc import zoo
from bfc.analytic import (Line, antipodal_derivative_check, antipodal_derivatives, derivative_weights,
                          eval_extension, line_restriction, line_restriction_derivative, mobius_extend,
                          random_interior_lines, shi_sandwich, sup_derivative_sample, t_grid, vertex_sweep)
from bfc.config import Limits
from bfc.core import BitVector, TruthTable
from bfc.errors import DomainError, LimitExceeded
from bfc.measures import bs_witness, sensitivity, sensitivity_at

from conftest import all_tables, tables

AND2 = TruthTable.from_hex("tt:2:8")
OR2 = TruthTable.from_hex("tt:2:E")
XOR2 = TruthTable.from_hex("tt:2:6")
H_CUBIC = [(1, 3, 4), (1, 2, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5),
           (1, 2, 6), (1, 3, 6), (2, 4, 6), (3, 5, 6), (4, 5, 6)]


def _vertex(n, w):
    return tuple((w >> i) & 1 for i in range(n))


def test_mobius_examples():
    assert mobius_extend(AND2).monomials() == {(1, 2): 1}
    assert mobius_extend(OR2).monomials() == {(1,): 1, (2,): 1, (1, 2): -1}
    expected = {(i,): 1 for i in range(1, 7)}
    expected.update({pair: -1 for pair in combinations(range(1, 7), 2)})
    expected.update({tri: 1 for tri in H_CUBIC})
    assert mobius_extend(zoo.kushilevitz_h()).monomials() == expected


def test_extension_limit():
    with pytest.raises(LimitExceeded):
        mobius_extend(zoo.parity(5), Limits(extension=4))


def test_eval_examples():
    half = (Fraction(1, 2), Fraction(1, 2))
    assert eval_extension(mobius_extend(AND2), half) == Fraction(1, 4)
    assert eval_extension(mobius_extend(OR2), half) == Fraction(3, 4)
    with pytest.raises(DomainError):
        eval_extension(mobius_extend(AND2), (Fraction(3, 2), 0))


@given(tables(max_n=8))
def test_extension_reproduces_table(f):
    p = mobius_extend(f)
    rng = np.random.default_rng(f.values.sum())
    for w in rng.integers(0, f.size, size=min(f.size, 40)):
        assert eval_extension(p, _vertex(f.n, int(w))) == f(int(w))


def test_extension_reproduces_table_n10():
    f = TruthTable.from_values(np.random.default_rng(3).integers(0, 2, 1024))
    p = mobius_extend(f)
    for w in range(0, 1024, 37):
        assert eval_extension(p, _vertex(10, w)) == f(w)


def test_derivative_examples():
    diag = Line((0, 0), (1, 1))
    assert line_restriction_derivative(mobius_extend(AND2), diag, 1) == 2
    assert line_restriction_derivative(mobius_extend(XOR2), diag, Fraction(1, 2)) == 0
    const = mobius_extend(TruthTable.constant(3, 1))
    line = Line((0, Fraction(1, 3), 1), (1, 0, Fraction(1, 2)))
    assert all(line_restriction_derivative(const, line, t) == 0 for t in t_grid(9))
    with pytest.raises(DomainError):
        line_restriction_derivative(mobius_extend(AND2), diag, 2)
    with pytest.raises(DomainError):
        Line((0, 2), (1, 1))


def test_antipodal_examples():
    assert antipodal_derivative_check(AND2, BitVector.from_string("11")) == 2
    assert all(antipodal_derivative_check(zoo.parity(3), a) == 3 for a in range(8))
    rub = zoo.rubinstein(3)
    x = bs_witness(rub)[1]
    assert antipodal_derivative_check(rub, x) == sensitivity_at(rub, x) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_antipodal_equals_sensitivity_exhaustive(n):
    for f in all_tables(n):
        for a in range(f.size):
            antipodal_derivative_check(f, a)


@given(tables(max_n=6))
def test_vectorized_antipodal_matches_polynomial_path(f):
    fast = antipodal_derivatives(f)
    for a in range(0, f.size, max(1, f.size // 8)):
        line = Line.between(BitVector(f.n, a), BitVector(f.n, a).complement())
        assert fast[a] == line_restriction_derivative(mobius_extend(f), line, 0)
        assert abs(fast[a]) == sensitivity_at(f, a)


@given(tables(min_n=1, max_n=4), st.integers(0, 10_000))
def test_derivative_weights_match_polynomial(f, seed):
    line = random_interior_lines(f.n, 1, seed=seed, den=6)[0]
    p = mobius_extend(f)
    for t in (Fraction(0), Fraction(2, 7), Fraction(1)):
        w, den = derivative_weights(f.n, line, t)
        assert Fraction(int(w @ f.values.astype(np.int64)), den) == line_restriction_derivative(p, line, t)


@given(tables(min_n=1, max_n=4), st.integers(0, 10_000))
def test_derivative_matches_finite_difference(f, seed):
    # f_l is a polynomial of degree <= n in t; a central difference with step h
    # is off by at most C h^2 where C bounds |f_l'''| / 6 <= n^3 2^n / 6 coarsely
    line = random_interior_lines(f.n, 1, seed=seed, den=8)[0]
    p = mobius_extend(f)
    t, h = Fraction(1, 2), Fraction(1, 1000)
    approx = (line_restriction(p, line, t + h) - line_restriction(p, line, t - h)) / (2 * h)
    bound = Fraction(f.n ** 3 * 2 ** f.n, 6) * h * h
    assert abs(approx - line_restriction_derivative(p, line, t)) <= bound


def test_sup_examples():
    assert sup_derivative_sample(XOR2) == 2
    assert sup_derivative_sample(TruthTable.constant(3, 0)) == 0
    assert sup_derivative_sample(AND2) == 2


@given(tables(max_n=4))
def test_sampled_lines_never_exceed_sensitivity(f):
    s = sensitivity(f)
    assert sup_derivative_sample(f, points=9, random_lines=3, seed=int(f.values.sum())) <= s


def test_vertex_sweep_sandwich_exhaustive_n3():
    for f in all_tables(3):
        sup, s = shi_sandwich(f)
        assert sup == s


@given(tables(min_n=4, max_n=6))
def test_vertex_sweep_attains_sensitivity(f):
    assert vertex_sweep(f) == sensitivity(f)
