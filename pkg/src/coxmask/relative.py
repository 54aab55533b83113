"""Relative masks: three-valued vectors encoding pairs y <= x <= w.

X entries mark the complement of the constant mask for the intermediate
element x; the remaining 0/1 entries encode y inside x.  Only X
positions can be defects.
"""

from .core import (
    bruhat_leq,
    element_key,
    enumerate_interval,
    format_element,
)
from .errors import InputError, IntegrityError, NotBelowError, OrderingError
from .masks import Mask, greedy_constant_mask

#: the X entry marker
X = "X"


class RelativeMask:
    """A {0, 1, X} vector over a fixed reduced expression for w."""

    __slots__ = (
        "expr",
        "entries",
        "_sigma_prefixes",
        "_tau_prefixes",
        "_defects",
        "_shifted",
    )

    def __init__(self, expr, entries):
        entries = tuple(entries)
        if len(entries) != expr.p:
            raise InputError(f"mask length {len(entries)} != word length {expr.p}")
        if any(e not in (0, 1, X) for e in entries):
            raise InputError(f"entries must be 0, 1 or X, got {entries}")
        self.expr = expr
        self.entries = entries
        self._sigma_prefixes = None
        self._tau_prefixes = None
        self._defects = None
        self._shifted = {}

    @property
    def p(self):
        return len(self.entries)

    def _prefix_chain(self, taken):
        out = [self.expr.system.identity]
        for j, take in enumerate(taken, start=1):
            out.append(out[-1].mul_gen(self.expr.letters[j - 1]) if take else out[-1])
        return tuple(out)

    def sigma_prefix(self, j):
        """The element selected by the 1 entries among the first j positions."""
        if self._sigma_prefixes is None:
            self._sigma_prefixes = self._prefix_chain(e == 1 for e in self.entries)
        return self._sigma_prefixes[j]

    def tau_prefix(self, j):
        """The element selected by the non-X entries among the first j positions."""
        if self._tau_prefixes is None:
            self._tau_prefixes = self._prefix_chain(e != X for e in self.entries)
        return self._tau_prefixes[j]

    def evaluate(self):
        """The encoded bottom element y."""
        return self.sigma_prefix(self.p)

    def intermediate(self):
        """The encoded intermediate element x."""
        return self.tau_prefix(self.p)

    def xmask(self):
        """The X-mask: 0 exactly at the X positions."""
        return Mask(self.expr, tuple(0 if e == X else 1 for e in self.entries))

    def x_positions(self):
        return frozenset(j for j, e in enumerate(self.entries, start=1) if e == X)

    def defect_positions(self):
        if self._defects is None:
            letters = self.expr.letters
            self._defects = frozenset(
                j
                for j in range(2, self.p + 1)
                if letters[j - 1] in self.sigma_prefix(j - 1).right_descents
            )
        return self._defects

    def is_shifted_descent(self, j):
        cached = self._shifted.get(j)
        if cached is None:
            cached = bruhat_leq(self.sigma_prefix(j), self.tau_prefix(j - 1))
            self._shifted[j] = cached
        return cached

    def shifted_descents(self):
        return frozenset(
            j for j in range(1, self.p + 1) if self.is_shifted_descent(j)
        )

    def is_all_ones(self):
        return all(e == 1 for e in self.entries)

    def validate(self):
        """Check the relative-mask invariants; raises IntegrityError."""
        tau = self.xmask()
        if not tau.is_constant():
            raise IntegrityError(f"X-mask of {self.render()} is not constant")
        restriction = Mask(
            self.expr.subword(sorted(tau.ones_positions())),
            tuple(e for e in self.entries if e != X),
        )
        if not restriction.is_constant():
            raise IntegrityError(
                f"0/1 restriction of {self.render()} is not constant"
            )
        stray = self.defect_positions() - self.x_positions()
        if stray:
            raise IntegrityError(
                f"non-X defect positions {sorted(stray)} in {self.render()}"
            )
        return self

    def render(self):
        """Entries as text, defect X positions shown as X^d."""
        defects = self.defect_positions()
        out = []
        for j, e in enumerate(self.entries, start=1):
            if e == X:
                out.append("X^d" if j in defects else "X")
            else:
                out.append(str(e))
        return " ".join(out)

    def __eq__(self, other):
        return (
            isinstance(other, RelativeMask)
            and other.expr == self.expr
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.expr.letters, self.entries))

    def __repr__(self):
        return f"RelativeMask({self.render()} on {self.expr.render()})"


def build_relative_mask(expr, x, y):
    """Encode y <= x <= w on the reduced expression for w."""
    try:
        tau, _ = greedy_constant_mask(expr, x)
    except NotBelowError as exc:
        raise OrderingError(
            f"{format_element(x)} is not below {expr.render()}"
        ) from exc
    positions = tau.ones_positions()
    try:
        nu, _ = greedy_constant_mask(expr.subword(positions), y)
    except NotBelowError as exc:
        raise OrderingError(
            f"{format_element(y)} is not below {format_element(x)}"
        ) from exc
    entries = [X] * expr.p
    for pos, bit in zip(positions, nu.bits):
        entries[pos - 1] = bit
    return RelativeMask(expr, tuple(entries))


def xmask_of(rm):
    """The X-mask (constant mask of the intermediate element)."""
    return rm.xmask()


def relative_defect_profile(rm):
    """Defect positions of a relative mask; always a subset of X positions."""
    return rm.defect_positions()


def shifted_descent_set(rm):
    """Positions j with prefix x-element at j-1 above the sigma prefix at j."""
    return rm.shifted_descents()


def interval_as_relative_masks(y, w_expr):
    """Map each x in [y, w] to its relative mask; bijective by uniqueness."""
    w = w_expr.element
    interval = enumerate_interval(y, w)  # raises OrderingError when y !<= w
    out = {}
    for x in sorted(interval.elements, key=element_key):
        out[x] = build_relative_mask(w_expr, x, y)
    return out
