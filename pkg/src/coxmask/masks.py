"""Binary masks on a fixed reduced word.

A mask picks a subexpression of a reduced word; a position is a defect
when its letter is a right descent of the preceding masked prefix.
Defect-free ("constant") masks are unique per element below the word and
are produced by the right-to-left greedy algorithm.
"""

from dataclasses import dataclass

from .core import ReducedExpression, element_key, format_element
from .errors import InputError, IntegrityError, NotBelowError


@dataclass(frozen=True)
class DefectProfile:
    """Defect positions of a mask, with their kind (mask value 0 or 1)."""

    positions: frozenset
    kinds: tuple  # sorted (position, mask_value) pairs

    def kind_of(self, j):
        return dict(self.kinds)[j]

    def __bool__(self):
        return bool(self.positions)


class Mask:
    """A 0/1 vector over the letters of a reduced expression."""

    __slots__ = ("expr", "bits", "_prefixes", "_defects")

    def __init__(self, expr, bits):
        bits = tuple(bits)
        if len(bits) != expr.p:
            raise InputError(f"mask length {len(bits)} != word length {expr.p}")
        if any(b not in (0, 1) for b in bits):
            raise InputError(f"mask bits must be 0/1, got {bits}")
        self.expr = expr
        self.bits = bits
        self._prefixes = None
        self._defects = None

    @property
    def p(self):
        return len(self.bits)

    @property
    def prefixes(self):
        """The p+1 partial products of the masked subexpression."""
        if self._prefixes is None:
            out = [self.expr.system.identity]
            for j, b in enumerate(self.bits, start=1):
                out.append(out[-1].mul_gen(self.expr.letters[j - 1]) if b else out[-1])
            self._prefixes = tuple(out)
        return self._prefixes

    def evaluate(self):
        return self.prefixes[-1]

    def defect_positions(self):
        if self._defects is None:
            letters = self.expr.letters
            prefixes = self.prefixes
            # position 1 is never a defect: the empty prefix is the identity
            self._defects = frozenset(
                j
                for j in range(2, self.p + 1)
                if letters[j - 1] in prefixes[j - 1].right_descents
            )
        return self._defects

    def is_constant(self):
        return not self.defect_positions()

    def ones_count(self):
        return sum(self.bits)

    def ones_positions(self):
        return tuple(j for j, b in enumerate(self.bits, start=1) if b)

    def render(self):
        return " ".join(str(b) for b in self.bits)

    def __eq__(self, other):
        return (
            isinstance(other, Mask)
            and other.expr == self.expr
            and other.bits == self.bits
        )

    def __hash__(self):
        return hash((self.expr.letters, self.bits))

    def __repr__(self):
        return f"Mask({self.render()} on {self.expr.render()})"


def evaluate_mask(mask):
    """The group element selected by the mask."""
    return mask.evaluate()


def defect_profile(mask):
    positions = mask.defect_positions()
    kinds = tuple(sorted((j, mask.bits[j - 1]) for j in positions))
    return DefectProfile(positions, kinds)


@dataclass(frozen=True)
class GreedyTrace:
    """Remainder elements r_{p+1}, ..., r_1 of the greedy mask algorithm."""

    remainders: tuple  # index 0 holds r_{p+1}, index p holds r_1

    def r(self, i):
        """The remainder r_i for 1 <= i <= p+1."""
        return self.remainders[len(self.remainders) - i]


def greedy_constant_mask(expr, x):
    """The unique defect-free mask on expr selecting x, with its trace.

    Scans right-to-left: a letter that is a right descent of the current
    remainder must be taken.  Raises NotBelowError (carrying the trace)
    exactly when x is not below the expression's element.
    """
    if expr.system is not x.system:
        raise InputError("expression and element belong to different systems")
    rem = x
    remainders = [x]
    rev_bits = []
    for i in range(expr.p, 0, -1):
        g = expr.letters[i - 1]
        if g in rem.right_descents:
            rev_bits.append(1)
            rem = rem.mul_gen(g)
        else:
            rev_bits.append(0)
        remainders.append(rem)
    trace = GreedyTrace(tuple(remainders))
    if not rem.is_identity():
        raise NotBelowError(
            f"{format_element(x)} is not below {expr.render()}: "
            f"greedy remainder {format_element(rem)}",
            trace=trace,
        )
    return Mask(expr, tuple(reversed(rev_bits))), trace


def mask_join(a, b):
    """Positionwise OR of two constant masks; the join is again constant."""
    if a.expr != b.expr:
        raise InputError("join requires masks on the same reduced expression")
    if not a.is_constant() or not b.is_constant():
        raise InputError("join requires constant masks")
    joined = Mask(a.expr, tuple(x | y for x, y in zip(a.bits, b.bits)))
    if not joined.is_constant():
        raise IntegrityError(
            f"join {joined.render()} of constant masks is not constant"
        )
    return joined


def all_reduced_expressions(w):
    """Every reduced word for w, sorted lexicographically."""
    system = w.system

    def rec(x):
        if x.is_identity():
            return [()]
        out = []
        for i in sorted(x.right_descents):
            out.extend(word + (i,) for word in rec(x.mul_gen(i)))
        return out

    return [ReducedExpression(system, word) for word in sorted(rec(w))]


def constant_masks_by_enumeration(expr):
    """All defect-free masks on expr, via full 2^p enumeration.

    Independent oracle for greedy_constant_mask: walks the complete
    binary tree of masks, discarding branches at defect positions (a
    defect position admits no defect-free completion regardless of bit).
    """
    system = expr.system
    letters = expr.letters
    p = expr.p
    out = []

    def rec(j, bits, prefix):
        if j > p:
            out.append(Mask(expr, tuple(bits)))
            return
        letter = letters[j - 1]
        if j > 1 and letter in prefix.right_descents:
            return  # both bit choices would be defects at j
        bits.append(0)
        rec(j + 1, bits, prefix)
        bits.pop()
        bits.append(1)
        rec(j + 1, bits, prefix.mul_gen(letter))
        bits.pop()

    rec(1, [], system.identity)
    return sorted(out, key=lambda m: (element_key(m.evaluate()), m.bits))
