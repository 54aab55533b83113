import pytest

from coxmask import (
    OrderingError,
    RelativeMask,
    X,
    ball,
    build_relative_mask,
    bruhat_leq,
    canonical_word,
    enumerate_interval,
    interval_as_relative_masks,
    relative_defect_profile,
    shifted_descent_set,
    xmask_of,
)

from conftest import expr, w

# the ten rows of the worked A3 interval [s2, s2 s1 s3 s2], keyed by the
# letters of the intermediate element's subexpression of (2, 1, 3, 2)
WORKED_TABLE = {
    (2, 1, 3, 2): ((0, 0, 0, 1), (1, 1, 1, 1)),
    (2, 1, 3): ((1, 0, 0, X), (1, 1, 1, 0)),
    (2, 1, 2): ((0, 0, X, 1), (1, 1, 0, 1)),
    (2, 3, 2): ((0, X, 0, 1), (1, 0, 1, 1)),
    (1, 3, 2): ((X, 0, 0, 1), (0, 1, 1, 1)),
    (2, 1): ((1, 0, X, X), (1, 1, 0, 0)),
    (2, 3): ((1, X, 0, X), (1, 0, 1, 0)),
    (1, 2): ((X, 0, X, 1), (0, 1, 0, 1)),
    (3, 2): ((X, X, 0, 1), (0, 0, 1, 1)),
    (2,): ((X, X, X, 1), (0, 0, 0, 1)),
}


class TestBuild:
    def test_top_is_all_ones(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        rm = build_relative_mask(e, e.element, e.element)
        assert rm.entries == (1, 1, 1, 1)
        assert not rm.x_positions()

    def test_worked_row_with_defect(self, a3):
        rm = build_relative_mask(expr(a3, 2, 1, 3, 2), w(a3, 2, 3), w(a3, 2))
        assert rm.entries == (1, X, 0, X)
        assert rm.defect_positions() == {4}
        assert rm.render() == "1 X 0 X^d"

    def test_worked_row_without_defect(self, a3):
        rm = build_relative_mask(expr(a3, 2, 1, 3, 2), w(a3, 1, 3, 2), w(a3, 2))
        assert rm.entries == (X, 0, 0, 1)
        assert not rm.defect_positions()

    def test_x_not_below_w(self, a3):
        with pytest.raises(OrderingError):
            build_relative_mask(expr(a3, 2, 1), w(a3, 3), w(a3, 3))

    def test_y_not_below_x(self, a3):
        with pytest.raises(OrderingError):
            build_relative_mask(expr(a3, 2, 1, 3, 2), w(a3, 1, 3), w(a3, 2))


class TestXMask:
    def test_all_ones(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        rm = build_relative_mask(e, e.element, e.element)
        assert xmask_of(rm).bits == (1, 1, 1, 1)

    def test_worked_rows(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        rm = RelativeMask(e, (1, X, 0, X))
        tau = xmask_of(rm)
        assert tau.bits == (1, 0, 1, 0)
        assert tau.evaluate() == w(a3, 2, 3)

        rm = RelativeMask(e, (X, X, X, 1))
        tau = xmask_of(rm)
        assert tau.bits == (0, 0, 0, 1)
        assert tau.evaluate() == w(a3, 2)


class TestDefects:
    def test_all_ones_has_none(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        assert not relative_defect_profile(RelativeMask(e, (1, 1, 1, 1)))

    def test_worked_examples(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        assert relative_defect_profile(RelativeMask(e, (1, 0, 0, X))) == {4}
        assert not relative_defect_profile(RelativeMask(e, (X, 0, 0, 1)))

    def test_defects_only_at_x_positions(self, a3):
        xs = ball(a3, 6)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                for rm in interval_as_relative_masks(y, e).values():
                    assert rm.defect_positions() <= rm.x_positions()


class TestShiftedDescents:
    def test_worked_positive_example(self, a3):
        # s2 s3 >= s2, so position 4 is a shifted descent
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (0, X, 0, 1))
        assert 4 in shifted_descent_set(rm)

    def test_worked_negative_example(self, a3):
        # s1 s3 is not >= s2
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (X, 0, 0, 1))
        assert 4 not in shifted_descent_set(rm)

    def test_all_ones_has_none(self, a3):
        # with every entry 1 the sigma prefix at j strictly exceeds the
        # tau prefix at j-1 in length, so no position ever qualifies
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (1, 1, 1, 1))
        assert shifted_descent_set(rm) == frozenset()


class TestIntervalEncoding:
    def test_worked_table_bit_exact(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        rms = interval_as_relative_masks(w(a3, 2), e)
        assert len(rms) == 10
        seen = {}
        for x, rm in rms.items():
            tau = xmask_of(rm)
            key = tuple(e.letters[j - 1] for j in tau.ones_positions())
            seen[key] = (rm.entries, tau.bits)
        assert seen == WORKED_TABLE

    def test_singleton(self, a3):
        v = w(a3, 2, 1)
        rms = interval_as_relative_masks(v, canonical_word(v))
        assert list(rms) == [v]
        assert rms[v].entries == (1, 1)

    def test_infinite_dihedral_interval(self, ta1):
        # [s1, s1 s2 s1] in the infinite dihedral group has the four
        # elements s1, s1 s2, s2 s1, s1 s2 s1
        e = expr(ta1, 1, 2, 1)
        rms = interval_as_relative_masks(w(ta1, 1), e)
        assert len(rms) == 4
        entries = {x.word: rm.entries for x, rm in rms.items()}
        assert entries == {
            (1,): (X, X, 1),
            (1, 2): (1, 0, X),
            (2, 1): (X, 0, 1),
            (1, 2, 1): (0, 0, 1),
        }
        xcounts = sorted(len(rm.x_positions()) for rm in rms.values())
        assert xcounts == [0, 1, 1, 2]

    def test_not_comparable(self, a3):
        with pytest.raises(OrderingError):
            interval_as_relative_masks(w(a3, 2), expr(a3, 1, 3))

    def test_invariants_exhaustive_a3(self, a3):
        xs = ball(a3, 6)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                interval = enumerate_interval(y, v)
                rms = interval_as_relative_masks(y, e)
                assert set(rms) == set(interval.elements)
                assert len({rm.entries for rm in rms.values()}) == interval.size
                for x, rm in rms.items():
                    assert len(rm.x_positions()) == v.length - x.length
                    assert rm.evaluate() == y
                    assert rm.intermediate() == x
                    rm.validate()
