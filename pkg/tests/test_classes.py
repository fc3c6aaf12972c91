from fractions import Fraction

import pytest

from qstrata import (
    BadSignature,
    InvalidIndex,
    QdInput,
    boundary_class,
    forget_pullback,
    lambda_class,
    logan_class,
    psi_class,
    pullback_attach,
    qd_case_classifier,
    qd_class,
    qg_class,
    weierstrass_check,
    weierstrass_class,
    weierstrass_pullback,
)


def test_logan_examples():
    d = logan_class(2, 2, (1, 1))
    assert d.lam == -1
    assert d.psi == (1, 1)
    assert d.delta0 == 0
    assert d.boundary_coeff(0, {1, 2}) == -3
    assert logan_class(2, 2, (2, 0)).psi == (3, 0)


def test_logan_validation():
    with pytest.raises(BadSignature):
        logan_class(2, 2, (1, 2))
    with pytest.raises(BadSignature):
        logan_class(2, 2, (-1, 3))


def test_logan_delta0_always_zero():
    for g, n, d in ((2, 2, (1, 1)), (3, 2, (2, 1)), (4, 3, (2, 2, 0))):
        assert logan_class(g, n, d).delta0 == 0


def test_qg_examples():
    q3 = qg_class(3)
    assert q3.boundary_coeff(1, {1}) == 8
    assert q3.boundary_coeff(2, ()) == -72
    assert qg_class(2).psi[0] == 6
    assert q3.lam == -64
    assert q3.delta0 == 4


def test_qd_specializes_to_qg():
    for g in (2, 3, 4, 5):
        q = qd_class(QdInput(g, 2 * g - 2, (1,) * (2 * g - 2)))
        assert q.equals(qg_class(g))
        assert q._coeffs() == qg_class(g)._coeffs()


def test_qd_negative_entry_psi():
    d = qd_class(QdInput(2, 2, (3, -1)))
    assert d.psi[1] == -2
    assert d.psi[0] == 30


def test_qd_even_case():
    d = qd_class(QdInput(2, 1, (2,)))
    assert d.lam == -15
    assert d.psi == (15,)
    assert d.delta0 == 1
    assert d.boundary_coeff(1, {1}) == -3


def test_qd_validation():
    with pytest.raises(BadSignature):
        QdInput(2, 2, (1, 2))
    with pytest.raises(BadSignature):
        QdInput(2, 3, (1, 1))


def test_qd_forgetful_pullback_consistency():
    # appending a zero weight agrees with the point-forgetting pullback
    # on the lambda, psi and delta_0 coefficients
    for g, d in ((2, (2, 0)), (3, (4, 0)), (3, (2, 2)), (4, (2, 2, 2))):
        base = qd_class(QdInput(g, len(d), d))
        pulled = forget_pullback(base)
        appended = qd_class(QdInput(g, len(d) + 1, d + (0,)))
        assert pulled.lam == appended.lam
        assert pulled.delta0 == appended.delta0
        assert pulled.psi[: len(d)] == appended.psi[: len(d)]


def test_case_classifier_examples():
    split = qd_case_classifier(QdInput(2, 2, (2, 0)), 1, {1})
    assert split.case == "A"
    assert split.d_prime == (0, 0)
    assert split.d_double_prime == (Fraction(1), Fraction(0))

    split = qd_case_classifier(QdInput(2, 2, (3, -1)), 1, {1})
    assert split.case == "C"
    assert split.d_double_prime[0] == Fraction(3, 2)

    with pytest.raises(InvalidIndex):
        qd_case_classifier(QdInput(2, 2, (3, -1)), 0, ())


def test_case_classifier_case_b():
    # odd entry present but the halved companion stays integral
    q = QdInput(3, 2, (3, 1))
    split = qd_case_classifier(q, 1, {1, 2})
    assert split.d_double_prime == (Fraction(2),)
    assert split.case == "B"


def test_weierstrass_class_values():
    w = weierstrass_class()
    assert w.psi == (3,)
    assert w.lam == -1
    assert w.delta0 == 0
    assert w.boundary_coeff(1, {1}) == -1


def test_pullback_attach_rules():
    # delta_{h:{1}} pulls back to -psi_1
    d = pullback_attach(boundary_class(5, 4, 2, {1}), 2)
    assert d.psi[0] == -1 and not d.boundary and d.lam == 0
    # lambda is untouched
    assert pullback_attach(lambda_class(5, 4), 2).lam == 1
    # 1 in S with i < h dies
    assert pullback_attach(boundary_class(5, 4, 1, {1, 2}), 2).is_zero()
    # otherwise the genus part drops by h
    d = pullback_attach(boundary_class(5, 4, 3, {1, 2}), 1)
    assert d.boundary_coeff(2, {1, 2}) == 1
    # psi_1 dies, other psi survive
    d = pullback_attach(psi_class(5, 4, 1).add(psi_class(5, 4, 3)), 2)
    assert d.psi == (0, 0, 1, 0)
    # classes written without label 1 route through the mirror first
    d = pullback_attach(boundary_class(5, 4, 2, {2, 3, 4}), 2)  # = (3, {1})
    assert d.boundary_coeff(1, {1}) == 1


def test_weierstrass_check():
    for g in (3, 4, 5):
        assert weierstrass_check(g)
        assert weierstrass_pullback(g).psi[0] == 18 * 4 ** (g - 2)


def test_qd_random_signatures_construct():
    import random

    rng = random.Random(1)
    for _ in range(200):
        g = rng.randint(2, 5)
        n = rng.randint(1, 5)
        d = [rng.randint(-3, 4) for _ in range(n - 1)]
        d.append(2 * g - 2 - sum(d))
        cls = qd_class(QdInput(g, n, tuple(d)))
        assert cls.delta0 == 4 ** (g - 2)
        # lambda distinguishes the all-even-nonnegative branch
        if all(x >= 0 and x % 2 == 0 for x in d):
            assert cls.lam == -(4**g - 1)
        else:
            assert cls.lam == -(4**g)
