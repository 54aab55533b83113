"""Coxeter systems, group elements, reduced words and Bruhat order.

Elements act on the root space of the geometric representation: the
generator s_i sends a simple root a_j to a_j + 2cos(pi/m(i,j)) a_i for
j != i and negates a_i.  Every element is interned per system and keyed
by its canonical reduced word, so equality, hashing and repeated
multiplications are dictionary lookups after warm-up.
"""

import math
import os
import re

from . import scalars
from .errors import (
    InputError,
    NotReducedError,
    OrderingError,
    ResourceError,
)

INFINITY = math.inf

DEFAULT_MAX_LENGTH = 64

MAX_LENGTH_ENV = "COXMASK_MAX_LENGTH"


class CoxeterMatrix:
    """Symmetric matrix of bond orders m(i,j); math.inf marks an infinite bond."""

    def __init__(self, entries):
        rows = [tuple(row) for row in entries]
        n = len(rows)
        if n == 0:
            raise InputError("empty Coxeter matrix")
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise InputError(f"row {i} has {len(row)} entries, expected {n}")
            for j, m in enumerate(row, start=1):
                if not _valid_bond(m):
                    raise InputError(f"bad entry m({i},{j}) = {m!r}")
                if i == j and m != 1:
                    raise InputError(f"diagonal entry m({i},{i}) = {m!r} must be 1")
                if i != j and m != INFINITY and m < 2:
                    raise InputError(f"off-diagonal entry m({i},{j}) = {m!r} is < 2")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"asymmetric entries at ({i + 1},{j + 1})")
        self.entries = tuple(rows)
        self.rank = n

    def m(self, i, j):
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, CoxeterMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CoxeterMatrix(rank={self.rank})"


def _valid_bond(m):
    if m == INFINITY:
        return True
    return isinstance(m, int) and m >= 1


def _mat_mul(a, b, n):
    out = []
    for i in range(n):
        arow = a[i]
        out.append(
            tuple(
                sum(arow[k] * b[k][j] for k in range(n) if arow[k] != 0)
                for j in range(n)
            )
        )
    return tuple(out)


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class Element:
    """A group element, represented by its action on the simple roots.

    Instances are interned per system (one object per element, keyed by
    the canonical reduced word), so `==` and hashing are cheap and
    dictionaries of elements behave well in both scalar tiers.
    """

    __slots__ = ("system", "matrix", "word", "_rdes", "_inv")

    def __init__(self, system, matrix, word):
        self.system = system
        self.matrix = matrix
        self.word = word
        self._rdes = None
        self._inv = None

    @property
    def length(self):
        return len(self.word)

    def is_identity(self):
        return not self.word

    @property
    def right_descents(self):
        if self._rdes is None:
            self._rdes = self.system._descents_of_matrix(self.matrix)
        return self._rdes

    @property
    def left_descents(self):
        return self.inverse().right_descents

    def mul_gen(self, i):
        """Right multiplication by the generator s_i."""
        return self.system._mul_gen(self, i)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system:
            raise InputError("elements belong to different systems")
        out = self
        for i in other.word:
            out = out.mul_gen(i)
        return out

    def inverse(self):
        if self._inv is None:
            out = self.system.identity
            for i in reversed(self.word):
                out = out.mul_gen(i)
            self._inv = out
            out._inv = self
        return self._inv

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Element)
            and other.system is self.system
            and other.word == self.word
        )

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"<{format_element(self)}>"


def format_element(x):
    """Render an element by its canonical word, e.g. 's2 s1 s3 s2'."""
    if x.is_identity():
        return "e"
    return " ".join(f"s{i}" for i in x.word)


def element_key(x):
    """Deterministic sort key: rank first, then canonical word."""
    return (x.length, x.word)


class CoxeterSystem:
    """An immutable Coxeter system with memoised group arithmetic."""

    def __init__(self, matrix, max_length=None):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix(matrix)
        self.matrix = matrix
        self.rank = matrix.rank
        self.exact = all(
            scalars.is_exact_bond(matrix.m(i, j))
            for i in range(1, self.rank + 1)
            for j in range(1, self.rank + 1)
        )
        if max_length is None:
            max_length = int(os.environ.get(MAX_LENGTH_ENV, DEFAULT_MAX_LENGTH))
        if max_length < 1:
            raise InputError(f"max_length must be >= 1, got {max_length}")
        self.max_length = max_length
        self._gen_matrices = tuple(
            self._generator_matrix(i) for i in range(1, self.rank + 1)
        )
        self._intern = {}
        self._rmul = {}
        self._leq = {}
        self._coatoms = {}
        self._mobius = {}
        n = self.rank
        self.identity = self._intern_element((), _identity_matrix(n))
        self.generators = tuple(
            self._element_from_matrix(self._gen_matrices[i]) for i in range(n)
        )

    def _generator_matrix(self, i):
        n = self.rank
        rows = []
        for r in range(1, n + 1):
            if r != i:
                rows.append(tuple(1 if r == c else 0 for c in range(1, n + 1)))
            else:
                rows.append(
                    tuple(
                        -1 if c == i else scalars.chord(self.matrix.m(i, c))
                        for c in range(1, n + 1)
                    )
                )
        return tuple(rows)

    def generator(self, i):
        self._check_index(i)
        return self.generators[i - 1]

    def _check_index(self, i):
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise InputError(f"generator index {i!r} out of range 1..{self.rank}")

    def _descents_of_matrix(self, m):
        # s_i is a right descent iff the image of a_i is a negative root;
        # roots have coordinates of uniform sign, so the column sum decides.
        n = self.rank
        out = set()
        for j in range(n):
            if scalars.sign_of(sum(m[k][j] for k in range(n))) < 0:
                out.add(j + 1)
        return frozenset(out)

    def _element_from_matrix(self, m):
        # Strip the smallest right descent repeatedly; the letters read off
        # in reverse are the canonical reduced word.
        rev = []
        cur = m
        guard = 4 * self.max_length + 8
        while True:
            descents = self._descents_of_matrix(cur)
            if not descents:
                break
            i = min(descents)
            rev.append(i)
            cur = _mat_mul(cur, self._gen_matrices[i - 1], self.rank)
            if len(rev) > guard:
                raise ResourceError(
                    f"canonical word exceeds {guard} letters; raise max_length"
                )
        return self._intern_element(tuple(reversed(rev)), m)

    def _intern_element(self, word, matrix):
        el = self._intern.get(word)
        if el is None:
            el = Element(self, matrix, word)
            self._intern[word] = el
        return el

    def _mul_gen(self, x, i):
        self._check_index(i)
        key = (x.word, i)
        out = self._rmul.get(key)
        if out is None:
            out = self._element_from_matrix(
                _mat_mul(x.matrix, self._gen_matrices[i - 1], self.rank)
            )
            self._rmul[key] = out
        return out

    def __repr__(self):
        return f"CoxeterSystem(rank={self.rank}, exact={self.exact})"


def build_system(matrix, max_length=None):
    """Construct a CoxeterSystem from a CoxeterMatrix (or nested rows)."""
    return CoxeterSystem(matrix, max_length=max_length)


def product_of_word(system, word):
    """Multiply out a word of generator indices; the word may be unreduced."""
    out = system.identity
    for i in word:
        out = out.mul_gen(i)
    return out


def length_of(x):
    return x.length


def descent_set(x, side="right"):
    if side == "right":
        return x.right_descents
    if side == "left":
        return x.left_descents
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


class ReducedExpression:
    """A validated reduced word for a fixed element, with cached prefixes."""

    __slots__ = ("system", "letters", "prefix_elements")

    def __init__(self, system, letters):
        letters = tuple(letters)
        for i in letters:
            system._check_index(i)
        prefixes = [system.identity]
        for i in letters:
            prefixes.append(prefixes[-1].mul_gen(i))
        if prefixes[-1].length != len(letters):
            raise NotReducedError(f"word {letters} is not reduced")
        self.system = system
        self.letters = letters
        self.prefix_elements = tuple(prefixes)

    @property
    def p(self):
        return len(self.letters)

    @property
    def element(self):
        return self.prefix_elements[-1]

    def letter_element(self, j):
        """The generator at 1-based position j."""
        return self.system.generators[self.letters[j - 1] - 1]

    def subword(self, positions):
        """The subexpression at the given sorted 1-based positions."""
        return ReducedExpression(
            self.system, tuple(self.letters[j - 1] for j in positions)
        )

    def render(self):
        if not self.letters:
            return "e"
        return " ".join(f"s{i}" for i in self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, ReducedExpression)
            and other.system is self.system
            and other.letters == self.letters
        )

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"ReducedExpression({self.render()})"


def canonical_word(x):
    """The canonical reduced expression of an element.

    Built by repeatedly stripping the smallest-index right descent, with
    letters accumulating right-to-left; this is the interning key, so the
    construction is already cached.
    """
    return ReducedExpression(x.system, x.word)


def bruhat_leq(x, w):
    """Bruhat order test via the descent recursion (Lifting Lemma)."""
    if x.system is not w.system:
        raise InputError("elements belong to different systems")
    return _leq(x.system, x, w)


def _leq(system, x, w):
    if x.length == 0:
        return True
    if x.length > w.length:
        return False
    key = (x.word, w.word)
    cached = system._leq.get(key)
    if cached is not None:
        return cached
    s = min(w.right_descents)
    ws = w.mul_gen(s)
    if s in x.right_descents:
        res = _leq(system, x.mul_gen(s), ws)
    else:
        res = _leq(system, x, ws)
    system._leq[key] = res
    return res


def coatoms(w):
    """All elements covered by w, via single-letter deletions."""
    if w.length == 0:
        raise InputError("the identity has no coatoms")
    system = w.system
    cached = system._coatoms.get(w.word)
    if cached is not None:
        return cached
    letters = w.word
    p = len(letters)
    out = set()
    for j in range(p):
        z = product_of_word(system, letters[:j] + letters[j + 1 :])
        if z.length == p - 1:
            out.add(z)
    out = frozenset(out)
    system._coatoms[w.word] = out
    return out


class HasseInterval:
    """A Bruhat interval [y, w] with its internal cover edges."""

    __slots__ = ("bottom", "top", "elements", "cover_edges")

    def __init__(self, bottom, top, elements, cover_edges):
        self.bottom = bottom
        self.top = top
        self.elements = elements
        self.cover_edges = cover_edges

    @property
    def size(self):
        return len(self.elements)

    def sorted_elements(self):
        return sorted(self.elements, key=element_key)

    def ranks(self):
        """Elements grouped by length, longest rank first."""
        by_rank = {}
        for z in self.sorted_elements():
            by_rank.setdefault(z.length, []).append(z)
        return dict(sorted(by_rank.items(), reverse=True))

    def __repr__(self):
        return (
            f"HasseInterval([{format_element(self.bottom)}, "
            f"{format_element(self.top)}], {self.size} elements)"
        )


def enumerate_interval(y, w):
    """All z with y <= z <= w plus the cover edges among them."""
    if y.system is not w.system:
        raise InputError("elements belong to different systems")
    if not bruhat_leq(y, w):
        raise OrderingError(
            f"{format_element(y)} is not below {format_element(w)}: empty interval"
        )
    below = {w}
    stack = [w]
    floor = y.length
    while stack:
        z = stack.pop()
        if z.length == 0:
            continue
        for c in coatoms(z):
            if c.length >= floor and c not in below:
                below.add(c)
                stack.append(c)
    elements = frozenset(z for z in below if bruhat_leq(y, z))
    edges = frozenset(
        (z, c)
        for z in elements
        if z.length > 0
        for c in coatoms(z)
        if c in elements
    )
    return HasseInterval(y, w, elements, edges)


def ball(system, max_length):
    """All elements of length <= max_length, sorted by rank then word."""
    if max_length < 0:
        raise InputError("max_length must be >= 0")
    seen = {system.identity}
    frontier = [system.identity]
    for _ in range(max_length):
        nxt = []
        for x in frontier:
            for i in range(1, system.rank + 1):
                if i not in x.right_descents:
                    z = x.mul_gen(i)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return sorted(seen, key=element_key)


# ---------------------------------------------------------------------------
# preset groups

_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


def _matrix_from_edges(n, edges):
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, j, m in edges:
        rows[i - 1][j - 1] = m
        rows[j - 1][i - 1] = m
    return CoxeterMatrix(rows)


def _chain(n, labels):
    return _matrix_from_edges(n, [(i, i + 1, labels[i - 1]) for i in range(1, n)])


def preset_matrix(name):
    """Coxeter matrix for a named preset (A3, B2, H3, I2_7, tA2, ...)."""
    name = name.strip()
    m = re.fullmatch(r"A(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise InputError(f"bad preset rank in {name!r}")
        return _chain(n, [3] * (n - 1))
    m = re.fullmatch(r"B(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise InputError(f"preset {name!r} needs rank >= 2")
        return _chain(n, [3] * (n - 2) + [4])
    m = re.fullmatch(r"D(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 3:
            raise InputError(f"preset {name!r} needs rank >= 3")
        edges = [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 2, n, 3)]
        return _matrix_from_edges(n, edges)
    m = re.fullmatch(r"E([678])", name)
    if m:
        n = int(m.group(1))
        return _matrix_from_edges(n, [(i, j, 3) for i, j in _E_EDGES[n]])
    if name == "F4":
        return _chain(4, [3, 4, 3])
    if name == "G2":
        return _chain(2, [6])
    if name == "H3":
        return _chain(3, [5, 3])
    if name == "H4":
        return _chain(4, [5, 3, 3])
    m = re.fullmatch(r"I2[_(](\d+)\)?", name)
    if m:
        order = int(m.group(1))
        if order < 2:
            raise InputError(f"bad bond order in preset {name!r}")
        return _chain(2, [order])
    m = re.fullmatch(r"tA(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise InputError(f"bad preset rank in {name!r}")
        if n == 1:
            return CoxeterMatrix([[1, INFINITY], [INFINITY, 1]])
        edges = [(i, i + 1, 3) for i in range(1, n + 1)] + [(1, n + 1, 3)]
        return _matrix_from_edges(n + 1, edges)
    raise InputError(f"unknown group preset {name!r}")
