"""The matching phi on relative masks and its interval-level consequences.

phi scans a relative mask right-to-left for the first position where one
of four rules applies, flips that position between X and 0/1, and (for
the two rules that move a letter in or out of the intermediate element)
rewrites the 0/1 entries to its left with a fresh greedy mask.  Pairing
each interval element with its image yields a complete matching of the
Hasse diagram; reversing the matched edges leaves an acyclic digraph.
"""

import enum
from dataclasses import dataclass

from .core import (
    element_key,
    enumerate_interval,
    format_element,
    product_of_word,
)
from .errors import IntegrityError, NoMoveError, ResourceError
from .masks import greedy_constant_mask
from .relative import X, RelativeMask, interval_as_relative_masks


class Rule(enum.Enum):
    """The four transformation rules of phi."""

    R1 = "X->0"
    R2 = "0->X"
    R3 = "Xd->1"  # with prefix rewrite
    R4 = "1->Xd"  # with prefix rewrite


@dataclass(frozen=True)
class Move:
    position: int
    rule: Rule


def find_move(rm):
    """The rightmost applicable move, or None on the all-ones mask.

    At a fixed position the entry value plus defect / shifted-descent
    status admit at most one rule, so the scan result is unique.  The
    shifted-descent test (the expensive part) only runs for 1 entries.
    """
    defects = None
    for j in range(rm.p, 0, -1):
        e = rm.entries[j - 1]
        if e == X:
            if defects is None:
                defects = rm.defect_positions()
            return Move(j, Rule.R3 if j in defects else Rule.R1)
        if e == 0:
            return Move(j, Rule.R2)
        if rm.is_shifted_descent(j):
            return Move(j, Rule.R4)
    return None


def _rewrite_left(rm, j, entries, target):
    """Assign the greedy mask for target on the non-X positions left of j."""
    positions = [k for k in range(1, j) if rm.entries[k - 1] != X]
    sub = rm.expr.subword(positions)
    mask, _ = greedy_constant_mask(sub, target)
    for pos, bit in zip(positions, mask.bits):
        entries[pos - 1] = bit


def apply_phi(rm, move=None):
    """Apply phi once; raises NoMoveError on the all-ones mask."""
    if move is None:
        move = find_move(rm)
        if move is None:
            raise NoMoveError(
                "phi has no move on the all-ones relative mask (y = w)"
            )
    j = move.position
    entries = list(rm.entries)
    if move.rule is Rule.R1:
        entries[j - 1] = 0
    elif move.rule is Rule.R2:
        entries[j - 1] = X
    elif move.rule is Rule.R3:
        # the intermediate element absorbs letter j; y is re-encoded left of j
        target = rm.sigma_prefix(j - 1).mul_gen(rm.expr.letters[j - 1])
        _rewrite_left(rm, j, entries, target)
        entries[j - 1] = 1
    else:  # R4
        target = rm.sigma_prefix(j)
        _rewrite_left(rm, j, entries, target)
        entries[j - 1] = X
    return RelativeMask(rm.expr, tuple(entries))


@dataclass(frozen=True)
class MatchedPair:
    """A matched Hasse edge: upper covers lower.

    position/down_rule describe the phi move seen from the upper element
    (phi-based matchings); label is the reflection labelling the edge
    (Rietsch-Williams matchings).
    """

    upper: object
    lower: object
    position: int = None
    down_rule: Rule = None
    label: object = None


@dataclass(frozen=True)
class Matching:
    pairs: tuple
    unmatched: frozenset

    def pair_sets(self):
        return frozenset(frozenset((p.upper, p.lower)) for p in self.pairs)

    def partner(self, x):
        for p in self.pairs:
            if p.upper == x:
                return p.lower
            if p.lower == x:
                return p.upper
        return None


def match_interval(y, w_expr):
    """The complete matching of [y, w] induced by phi."""
    rms = interval_as_relative_masks(y, w_expr)  # raises OrderingError
    images = {}
    unmatched = []
    for x, rm in rms.items():
        move = find_move(rm)
        if move is None:
            unmatched.append(x)
            continue
        partner = apply_phi(rm, move).intermediate()
        images[x] = (partner, move)
    pairs = []
    for x, (partner, move) in images.items():
        if partner not in images or images[partner][0] != x:
            raise IntegrityError(
                f"phi does not pair {format_element(x)} consistently with "
                f"{format_element(partner)}"
            )
        if x.length > partner.length:
            # the downward move from the upper element is R2 or R4
            pairs.append(
                MatchedPair(x, partner, position=move.position, down_rule=move.rule)
            )
    pairs.sort(key=lambda p: element_key(p.upper) + element_key(p.lower))
    return Matching(tuple(pairs), frozenset(unmatched))


class ReflectionOrder:
    """Total order on reflections from the inversion sequence of a
    reduced word for the longest element; index 0 is the largest."""

    __slots__ = ("base_word", "reflections", "_index")

    def __init__(self, base_word, reflections):
        self.base_word = base_word
        self.reflections = reflections
        self._index = {t: k for k, t in enumerate(reflections)}

    def index(self, t):
        """Position of a reflection; smaller index means larger label."""
        if t not in self._index:
            raise IntegrityError(
                f"{format_element(t)} is not in the reflection order"
            )
        return self._index[t]

    def __len__(self):
        return len(self.reflections)


def reflection_order(w_expr):
    """Reflection order built from a longest-element word that has the
    reverse of w_expr as a left factor.  Finite groups only: the
    completion aborts with ResourceError past the max_length guard."""
    system = w_expr.system
    letters = list(reversed(w_expr.letters))
    u = product_of_word(system, letters)
    while True:
        ascents = [
            i for i in range(1, system.rank + 1) if i not in u.right_descents
        ]
        if not ascents:
            break
        if len(letters) >= system.max_length:
            raise ResourceError(
                f"no longest element within max_length={system.max_length}; "
                "the group is presumably infinite"
            )
        i = min(ascents)  # any completion works; smallest index for determinism
        letters.append(i)
        u = u.mul_gen(i)
    prefix = system.identity
    reflections = []
    for g in letters:
        t = prefix * system.generator(g) * prefix.inverse()
        reflections.append(t)
        prefix = prefix.mul_gen(g)
    if len(set(reflections)) != len(reflections):
        raise IntegrityError("inversion sequence contains a repeated reflection")
    return ReflectionOrder(tuple(letters), tuple(reflections))


def rw_match(y, w_expr):
    """The Rietsch-Williams matching: ranks top-down, each unmatched
    element pairs with the lower cover whose reflection label is largest."""
    w = w_expr.element
    interval = enumerate_interval(y, w)  # raises OrderingError
    order = reflection_order(w_expr)
    lower_covers = {}
    for upper, lower in interval.cover_edges:
        lower_covers.setdefault(upper, []).append(lower)
    matched = set()
    pairs = []
    for rank, xs in interval.ranks().items():
        for x in xs:
            if x in matched:
                continue
            candidates = lower_covers.get(x, [])
            if not candidates:
                continue
            labelled = sorted(
                ((order.index(x.inverse() * c), c) for c in candidates),
                key=lambda ic: (ic[0], element_key(ic[1])),
            )
            if len(labelled) > 1 and labelled[0][0] == labelled[1][0]:
                raise IntegrityError(
                    f"tied largest labels below {format_element(x)}"
                )
            best = labelled[0][1]
            if best in matched:
                raise IntegrityError(
                    f"{format_element(x)} claims already-matched partner "
                    f"{format_element(best)}"
                )
            matched.add(x)
            matched.add(best)
            pairs.append(
                MatchedPair(x, best, label=x.inverse() * best)
            )
    pairs.sort(key=lambda p: element_key(p.upper) + element_key(p.lower))
    unmatched = frozenset(z for z in interval.elements if z not in matched)
    return Matching(tuple(pairs), unmatched)


def acyclicity_check(interval, matching):
    """None if reversing the matched edges leaves no directed cycle,
    otherwise a witness cycle as a list of elements."""
    cover = set(interval.cover_edges)
    matched_edges = set()
    for p in matching.pairs:
        if (p.upper, p.lower) not in cover:
            raise IntegrityError(
                f"matched pair ({format_element(p.upper)}, "
                f"{format_element(p.lower)}) is not a cover edge"
            )
        matched_edges.add((p.upper, p.lower))
    adjacency = {z: [] for z in interval.elements}
    for upper, lower in sorted(
        cover, key=lambda e: element_key(e[0]) + element_key(e[1])
    ):
        if (upper, lower) in matched_edges:
            adjacency[lower].append(upper)  # reversed matched edge
        else:
            adjacency[upper].append(lower)
    # iterative three-colour DFS with path reconstruction
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {z: WHITE for z in interval.elements}
    for root in sorted(interval.elements, key=element_key):
        if colour[root] != WHITE:
            continue
        path = []
        stack = [(root, iter(adjacency[root]))]
        colour[root] = GREY
        path.append(root)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if colour[nxt] == GREY:
                    return path[path.index(nxt):] + [nxt]
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    path.append(nxt)
                    stack.append((nxt, iter(adjacency[nxt])))
                    advanced = True
                    break
            if not advanced:
                colour[node] = BLACK
                path.pop()
                stack.pop()
    return None
