import gmpy2
import pytest

from coxmask import PrecisionError
from coxmask.scalars import INFINITY, chord, is_exact_bond, scalars_equal, sign_of


def test_exact_chords():
    assert chord(2) == 0
    assert chord(3) == 1
    assert chord(INFINITY) == 2


def test_irrational_chords():
    assert scalars_equal(chord(4) ** 2, gmpy2.mpfr(2))
    assert scalars_equal(chord(6) ** 2, gmpy2.mpfr(3))
    # golden ratio: x^2 = x + 1
    phi = chord(5)
    assert scalars_equal(phi * phi, phi + 1)


def test_exact_bond_classification():
    assert is_exact_bond(2)
    assert is_exact_bond(3)
    assert is_exact_bond(INFINITY)
    assert not is_exact_bond(4)
    assert not is_exact_bond(5)


def test_sign_of_integers():
    assert sign_of(5) == 1
    assert sign_of(-2) == -1
    assert sign_of(0) == 0


def test_sign_of_mpfr():
    assert sign_of(gmpy2.mpfr("0.5")) == 1
    assert sign_of(gmpy2.mpfr("-0.5")) == -1
    assert sign_of(gmpy2.mpfr(0)) == 0


def test_ambiguous_sign_is_loud():
    with pytest.raises(PrecisionError):
        sign_of(gmpy2.mpfr("1e-14"))


def test_suspect_difference_is_loud():
    with pytest.raises(PrecisionError):
        scalars_equal(gmpy2.mpfr(1), gmpy2.mpfr("1.00000000001"))
