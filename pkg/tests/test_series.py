from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ineqfact.errors import ArithmeticDomainError, DomainError
from ineqfact.perm import Signature
from ineqfact.series import QPoly, QSpec, Ring, XSeries, solve_phi, solve_w, phi_parts, w_parts, Q_of, Qprime_of

R1 = Ring(1)
R2 = Ring(2)
B = Signature.from_mapping


def uni(coeffs, N=8, ring=R1):
    return XSeries.from_terms(ring, N, [((d,), (), c) for d, c in enumerate(coeffs)])


def test_log_of_geometric_series():
    s = uni([1] * 9).log()
    assert [s.coeff((k,)).coefficient() for k in range(1, 9)] == [Fraction(1, k) for k in range(1, 9)]


def test_D_scales_by_total_degree():
    x1, x2 = XSeries.xvar(R2, 0, 6), XSeries.xvar(R2, 1, 6)
    m = x1 * x1 * x2
    assert m.D() == m.scale(3)


def test_preconditions():
    x = XSeries.xvar(R1, 0, 5)
    with pytest.raises(ArithmeticDomainError):
        x.inverse()
    with pytest.raises(ArithmeticDomainError):
        (x + 2).log()
    with pytest.raises(ArithmeticDomainError):
        (x + 1).exp()
    with pytest.raises(ArithmeticDomainError):
        (XSeries.xvar(R2, 0, 4) + 1).div_linear(0, 1)
    with pytest.raises(DomainError):
        x.coeff((6,))


small = st.integers(-5, 5)


@given(st.lists(small, min_size=7, max_size=7), st.lists(small, min_size=7, max_size=7))
def test_mul_div_round_trip(a, b):
    b[0] = b[0] or 1
    A, Bs = uni(a, 6), uni(b, 6)
    assert (A * Bs) / Bs == A


@given(st.lists(small, min_size=6, max_size=6))
def test_exp_log_inverse(a):
    a[0] = 0
    A = uni(a, 5)
    assert A.exp().log() == A


@given(st.lists(small, min_size=5, max_size=5))
def test_divided_difference_times_linear(a):
    f = uni(a, 6)
    dd = f.divided_difference(R2, 0, 1)
    lhs = dd * (XSeries.xvar(R2, 0) - XSeries.xvar(R2, 1))
    rhs = f.lift(R2, 0) - f.lift(R2, 1)
    assert lhs.agrees(rhs, 5)
    assert (rhs.truncate(5)).div_linear(0, 1).agrees(dd, 4)


def test_phi_expansion():
    phi = solve_phi(3, QSpec.symbolic(3))
    ring = phi.ring
    assert phi.coeff((1,)).coefficient(B({})) == 1
    assert phi.coeff((2,)).coefficient(B({2: 1})) == 2
    assert phi.coeff((3,)).coefficient(B({2: 2})) == 7
    assert phi.coeff((3,)).coefficient(B({3: 1})) == 2
    assert ring.qvars == (2, 3)


def test_phi_specializations():
    assert [solve_phi(4, QSpec.kcycles(2, 4)).coeff((k,)).coefficient() for k in (1, 2, 3, 4)] == [1, 2, 7, 30]
    assert [solve_phi(5, QSpec.monotone(5)).coeff((k,)).coefficient() for k in range(1, 6)] == [1, 2, 5, 14, 42]
    zero = QSpec(4, tuple((k, 0) for k in range(2, 5)), others_zero=True)
    assert solve_phi(4, zero) == XSeries.xvar(Ring(1), 0, 4)


def test_w_expansion():
    w = solve_w(3, QSpec.symbolic(3))
    assert w.coeff((2,)).coefficient(B({2: 1})) == 1
    assert w.coeff((3,)).coefficient(B({2: 2})) == Fraction(3, 2)
    assert w.coeff((3,)).coefficient(B({3: 1})) == 1
    tree = solve_w(6, QSpec.kcycles(2, 6))
    from math import factorial
    assert [tree.coeff((n,)).coefficient() for n in range(1, 7)] == [Fraction(n ** (n - 1), factorial(n)) for n in range(1, 7)]


@pytest.mark.parametrize("N", [4, 6])
def test_functional_equation_residuals(N):
    spec = QSpec.symbolic(N)
    phi = solve_phi(N, spec)
    assert phi.agrees(XSeries.xvar(phi.ring, 0) * ((1 - Q_of(phi, spec)) ** 2).inverse(), N)
    w = solve_w(N, spec)
    assert w.agrees(XSeries.xvar(w.ring, 0) * Q_of(w, spec).exp(), N)


def test_qpoly_access():
    p = QPoly.of((2, 3), {(1, 0): 2, (0, 1): Fraction(1, 2)})
    assert p.coefficient(B({2: 1})) == 2
    assert p.coefficient(B({4: 1})) == 0
    with pytest.raises(DomainError):
        p.coefficient()
    assert str(QPoly.of((2,), {})) == "0"
