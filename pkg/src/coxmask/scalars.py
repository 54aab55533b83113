"""Scalar backend for the geometric representation.

Root coordinates live in the ring generated by the chords 2cos(pi/m)
taken over the finite bond orders m of the group, together with 2 for
infinite bonds.  Two tiers:

  * when every finite off-diagonal bond is 2 or 3 the chords are the
    integers 0 and 1, so all arithmetic is exact integer arithmetic;
  * otherwise values are mpfr floats with a 192-bit significand, and
    every sign or equality decision must clear a hard margin.  A value
    inside the ambiguous band raises PrecisionError rather than
    returning a possibly wrong answer.
"""

import math

import gmpy2

from .errors import PrecisionError

PRECISION_BITS = 192

gmpy2.get_context().precision = PRECISION_BITS

#: decisions must clear this margin (unless the value is a stored zero)
SIGN_MARGIN = gmpy2.mpfr("1e-12")
#: differences between the margin and this ceiling abort loudly
SUSPECT_CEILING = gmpy2.mpfr("1e-9")

INFINITY = math.inf


def is_exact_bond(m):
    """True when the bond order m contributes an integer chord."""
    return m == INFINITY or m in (1, 2, 3)


def chord(m):
    """The chord 2cos(pi/m) of a bond order; an infinite bond yields 2."""
    if m == INFINITY:
        return 2
    if m == 2:
        return 0
    if m == 3:
        return 1
    return 2 * gmpy2.cos(gmpy2.const_pi() / m)


def sign_of(v):
    """Sign in {-1, 0, +1}; raises PrecisionError if undecidable."""
    if isinstance(v, int):
        return (v > 0) - (v < 0)
    if v == 0:  # stored exact zero
        return 0
    if v > SIGN_MARGIN:
        return 1
    if v < -SIGN_MARGIN:
        return -1
    raise PrecisionError(f"sign of {v} is inside the decision margin")


def scalars_equal(a, b):
    """Equality up to the margin; loud failure in the suspect band."""
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    d = abs(a - b)
    if d < SIGN_MARGIN:
        return True
    if d < SUSPECT_CEILING:
        raise PrecisionError(f"difference {d} is inside the suspect band")
    return False
