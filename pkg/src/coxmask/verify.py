"""Brute-force oracles and the exhaustive property-test driver.

The oracles here deliberately avoid the code paths they check:
Bruhat order is re-decided by subword enumeration, and the Moebius
function is recomputed with the classical recursion before being
compared against the sign formula delivered by the matching.
"""

import time
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    CoxeterSystem,
    ball,
    bruhat_leq,
    canonical_word,
    element_key,
    enumerate_interval,
    format_element,
)
from .errors import CoxmaskError, InputError, ResourceError
from .masks import constant_masks_by_enumeration, greedy_constant_mask, mask_join
from .matching import acyclicity_check, apply_phi, find_move, match_interval, rw_match
from .relative import interval_as_relative_masks

LEQ_ORACLE_GUARD = 20

#: masks-uniqueness enumeration is skipped (and recorded) past this length
MASK_ENUMERATION_GUARD = 12

ALL_CHECKS = (
    "leq",
    "lifting",
    "masks",
    "relative",
    "matching",
    "mobius",
    "acyclic",
    "rw",
)


def leq_oracle(w_expr, x):
    """Bruhat test by reduced-subword witness, independent of the
    descent recursion: some submask with l(x) ones must select x."""
    p = w_expr.p
    if p > LEQ_ORACLE_GUARD:
        raise ResourceError(
            f"leq_oracle guard: word length {p} > {LEQ_ORACLE_GUARD}"
        )
    k = x.length
    if k > p:
        return False
    system = w_expr.system
    letters = w_expr.letters
    for positions in combinations(range(p), k):
        z = system.identity
        for pos in positions:
            z = z.mul_gen(letters[pos])
        if z == x:
            return True
    return False


def mobius_oracle(interval):
    """mu(bottom, top) by the classical recursion over the interval.

    Sub-interval values are memoised on the system, keyed by canonical
    words, so repeated suite queries stay quadratic overall.
    """
    y, w = interval.bottom, interval.top
    system = y.system
    cache = system._mobius
    key = (y.word, w.word)
    if key in cache:
        return cache[key]
    for z in sorted(interval.elements, key=element_key):
        zkey = (y.word, z.word)
        if zkey in cache:
            continue
        if z == y:
            cache[zkey] = 1
            continue
        total = 0
        for v in interval.elements:
            if v.length < z.length and bruhat_leq(v, z):
                total += cache[(y.word, v.word)]
        # v == y contributes via the loop above except when y has equal
        # length to z, which cannot happen for y < z
        cache[zkey] = -total
    return cache[key]


def mobius_via_matching(y, w_expr):
    """Survivor sum of the sign-reversing involution, plus the closed
    form (-1)^(l(w)-l(y)) reported as the Moebius value."""
    matching = match_interval(y, w_expr)  # raises OrderingError
    w = w_expr.element
    survivor_sum = sum(
        (-1) ** (w.length - x.length) for x in matching.unmatched
    )
    return survivor_sum, (-1) ** (w.length - y.length)


@dataclass
class SuiteConfig:
    matrix: object
    name: str = "group"
    max_length: int = 6
    checks: tuple = ALL_CHECKS
    jobs: int = 1

    def __post_init__(self):
        if self.max_length < 1:
            raise InputError("max_length must be >= 1")
        bad = [c for c in self.checks if c not in ALL_CHECKS]
        if bad:
            raise InputError(f"unknown checks: {bad}")
        if self.jobs < 1:
            raise InputError("jobs must be >= 1")


@dataclass
class CheckResult:
    cases: int = 0
    failures: list = field(default_factory=list)


@dataclass
class SuiteReport:
    group: str
    results: dict
    wall_time: float = 0.0

    @property
    def total_cases(self):
        return sum(r.cases for r in self.results.values())

    @property
    def total_failures(self):
        return sum(len(r.failures) for r in self.results.values())

    @property
    def ok(self):
        return self.total_failures == 0

    def to_lines(self):
        lines = []
        for check in sorted(self.results):
            r = self.results[check]
            lines.append(f"check {check}: {r.cases} cases, {len(r.failures)} failures")
            for witness in r.failures:
                lines.append(f"  FAIL {witness}")
        verdict = "ok" if self.ok else "FAILED"
        lines.append(
            f"suite {self.group}: {self.total_cases} cases, "
            f"{self.total_failures} failures, "
            f"{self.wall_time:.2f}s [{verdict}]"
        )
        return lines

    def to_dict(self):
        return {
            "group": self.group,
            "ok": self.ok,
            "total_cases": self.total_cases,
            "total_failures": self.total_failures,
            "wall_time": self.wall_time,
            "checks": {
                check: {"cases": r.cases, "failures": list(r.failures)}
                for check, r in sorted(self.results.items())
            },
        }


def _witness(config, check, y=None, w=None, detail=""):
    parts = [f"group={config.name}", f"check={check}"]
    if y is not None:
        parts.append(f"y='{' '.join(map(str, y.word)) or 'e'}'")
    if w is not None:
        parts.append(f"w='{' '.join(map(str, w.word)) or 'e'}'")
    if detail:
        parts.append(detail)
    return " ".join(parts)


def _check_ordered_pair(config, results, x, w):
    """Checks quantified over arbitrary ordered pairs (x, w)."""
    if "leq" in config.checks:
        r = results["leq"]
        r.cases += 1
        try:
            expected = leq_oracle(canonical_word(w), x)
            if bruhat_leq(x, w) != expected:
                r.failures.append(
                    _witness(config, "leq", x, w, f"oracle says {expected}")
                )
        except ResourceError as exc:
            r.failures.append(_witness(config, "leq", x, w, f"resource: {exc}"))


def _check_lifting(config, results, x, w):
    if not (x.length < w.length and bruhat_leq(x, w)):
        return
    r = results["lifting"]
    for i in sorted(w.right_descents - x.right_descents):
        r.cases += 1
        if not (bruhat_leq(x.mul_gen(i), w) and bruhat_leq(x, w.mul_gen(i))):
            r.failures.append(
                _witness(config, "lifting", x, w, f"descent s{i}")
            )


def _check_masks(config, results, w):
    """Constant-mask uniqueness and join closure on the canonical word."""
    r = results["masks"]
    r.cases += 1
    expr = canonical_word(w)
    if expr.p > MASK_ENUMERATION_GUARD:
        r.failures.append(
            _witness(config, "masks", w=w, detail="resource: word too long")
        )
        return
    enumerated = constant_masks_by_enumeration(expr)
    by_element = {}
    for mask in enumerated:
        by_element.setdefault(mask.evaluate(), []).append(mask)
    system = w.system
    for x in ball(system, expr.p):
        below = bruhat_leq(x, w)
        found = by_element.get(x, [])
        if below != (len(found) == 1) or (not below and found):
            r.failures.append(
                _witness(config, "masks", x, w, f"{len(found)} constant masks")
            )
            continue
        if below:
            greedy, _ = greedy_constant_mask(expr, x)
            if greedy != found[0]:
                r.failures.append(
                    _witness(config, "masks", x, w, "greedy != enumeration")
                )
            if greedy.ones_count() != x.length:
                r.failures.append(
                    _witness(config, "masks", x, w, "ones count != length")
                )
    if expr.p <= 10:
        for a in enumerated:
            for b in enumerated:
                joined = mask_join(a, b)  # raises IntegrityError if not constant
                for operand in (a, b):
                    if not bruhat_leq(operand.evaluate(), joined.evaluate()):
                        r.failures.append(
                            _witness(config, "masks", w=w, detail="join not above")
                        )


def _check_interval_pair(config, results, y, w):
    """Checks quantified over comparable pairs y <= w."""
    checks = set(config.checks) & {"relative", "matching", "mobius", "acyclic", "rw"}
    if not checks:
        return
    w_expr = canonical_word(w)
    interval = enumerate_interval(y, w)
    rms = interval_as_relative_masks(y, w_expr)

    if "relative" in checks:
        r = results["relative"]
        r.cases += 1
        seen = set()
        for x, rm in rms.items():
            if rm.entries in seen:
                r.failures.append(_witness(config, "relative", y, w, "mask collision"))
            seen.add(rm.entries)
            if len(rm.x_positions()) != w.length - x.length:
                r.failures.append(
                    _witness(config, "relative", y, w, f"X count at x={x.word}")
                )
            if rm.evaluate() != y or rm.intermediate() != x:
                r.failures.append(
                    _witness(config, "relative", y, w, f"evaluation at x={x.word}")
                )
            if not rm.defect_positions() <= rm.x_positions():
                r.failures.append(
                    _witness(config, "relative", y, w, f"defect outside X at {x.word}")
                )
        if len(rms) != interval.size:
            r.failures.append(_witness(config, "relative", y, w, "not bijective"))

    matching = None
    if checks & {"matching", "mobius", "acyclic"}:
        matching = match_interval(y, w_expr)

    if "matching" in checks:
        r = results["matching"]
        r.cases += 1
        for x, rm in rms.items():
            move = find_move(rm)
            if move is None:
                if y != w:
                    r.failures.append(
                        _witness(config, "matching", y, w, f"no move at x={x.word}")
                    )
                continue
            image = apply_phi(rm, move)
            try:
                image.validate()
            except CoxmaskError as exc:
                r.failures.append(
                    _witness(config, "matching", y, w, f"invalid image: {exc}")
                )
                continue
            if apply_phi(image) != rm:
                r.failures.append(
                    _witness(config, "matching", y, w, f"not involutive at x={x.word}")
                )
            if image.evaluate() != y:
                r.failures.append(
                    _witness(config, "matching", y, w, f"phi moved y at x={x.word}")
                )
            # cover property: the X-mask flips at exactly one position
            flips = [
                j
                for j in range(1, rm.p + 1)
                if (rm.entries[j - 1] == "X") != (image.entries[j - 1] == "X")
            ]
            partner = image.intermediate()
            if (
                len(flips) != 1
                or abs(partner.length - x.length) != 1
                or not (
                    bruhat_leq(partner, x)
                    if partner.length < x.length
                    else bruhat_leq(x, partner)
                )
            ):
                r.failures.append(
                    _witness(config, "matching", y, w, f"not a cover at x={x.word}")
                )
        expected_unmatched = frozenset() if y != w else frozenset({w})
        if matching.unmatched != expected_unmatched:
            r.failures.append(
                _witness(config, "matching", y, w, "completeness violated")
            )
        for pair in matching.pairs:
            if (pair.upper, pair.lower) not in interval.cover_edges:
                r.failures.append(
                    _witness(config, "matching", y, w, "pair is not a cover edge")
                )

    if "mobius" in checks:
        r = results["mobius"]
        r.cases += 1
        expected = (-1) ** (w.length - y.length)
        if mobius_oracle(interval) != expected:
            r.failures.append(
                _witness(config, "mobius", y, w, "recursion != sign formula")
            )
        survivor = sum(
            (-1) ** (w.length - x.length) for x in matching.unmatched
        )
        if survivor != (1 if y == w else 0):
            r.failures.append(
                _witness(config, "mobius", y, w, f"survivor sum {survivor}")
            )

    if "acyclic" in checks:
        r = results["acyclic"]
        r.cases += 1
        cycle = acyclicity_check(interval, matching)
        if cycle is not None:
            r.failures.append(
                _witness(
                    config,
                    "acyclic",
                    y,
                    w,
                    "cycle " + " -> ".join(format_element(z) for z in cycle),
                )
            )

    if "rw" in checks:
        r = results["rw"]
        r.cases += 1
        try:
            rw = rw_match(y, w_expr)
            if matching is None:
                matching = match_interval(y, w_expr)
            if rw.pair_sets() != matching.pair_sets():
                r.failures.append(
                    _witness(config, "rw", y, w, "pair sets disagree")
                )
        except CoxmaskError as exc:
            r.failures.append(_witness(config, "rw", y, w, f"{exc}"))


def _run_chunk(config, pair_words):
    """Run all selected checks over a chunk of (y_word, w_word) pairs."""
    system = CoxeterSystem(
        config.matrix, max_length=max(config.max_length, DEFAULT_GUARD_FLOOR)
    )
    results = {check: CheckResult() for check in config.checks}
    from .core import product_of_word

    for y_word, w_word in pair_words:
        y = product_of_word(system, y_word)
        w = product_of_word(system, w_word)
        _check_ordered_pair(config, results, y, w)
        if "lifting" in config.checks:
            _check_lifting(config, results, y, w)
        if bruhat_leq(y, w):
            _check_interval_pair(config, results, y, w)
    return results


DEFAULT_GUARD_FLOOR = 24


def run_suite(config):
    """Enumerate the length ball and run every selected check.

    Resource limits inside individual cases are recorded as failures
    rather than aborting the suite.  The report is deterministic for a
    fixed config at any parallelism degree.
    """
    start = time.perf_counter()
    system = CoxeterSystem(
        config.matrix, max_length=max(config.max_length, DEFAULT_GUARD_FLOOR)
    )
    elements = ball(system, config.max_length)
    results = {check: CheckResult() for check in config.checks}

    if "masks" in config.checks:
        for w in elements:
            if w.length >= 1:
                _check_masks(config, results, w)

    pair_words = [
        (y.word, w.word) for y in elements for w in elements
    ]
    if config.jobs <= 1:
        chunk_results = [_run_pairs_inline(config, system, elements)]
    else:
        chunk_results = _run_pairs_parallel(config, pair_words)
    for chunk in chunk_results:
        for check, res in chunk.items():
            results[check].cases += res.cases
            results[check].failures.extend(res.failures)
    for res in results.values():
        res.failures.sort()
    report = SuiteReport(config.name, results, time.perf_counter() - start)
    return report


def _run_pairs_inline(config, system, elements):
    results = {check: CheckResult() for check in config.checks}
    for y in elements:
        for w in elements:
            _check_ordered_pair(config, results, y, w)
            if "lifting" in config.checks:
                _check_lifting(config, results, y, w)
            if bruhat_leq(y, w):
                _check_interval_pair(config, results, y, w)
    return results


def _run_pairs_parallel(config, pair_words):
    from concurrent.futures import ProcessPoolExecutor

    chunks = [pair_words[i :: config.jobs] for i in range(config.jobs)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(_run_chunk, [config] * len(chunks), chunks))
