import pytest

from coxmask import (
    IntegrityError,
    MatchedPair,
    Matching,
    Move,
    NoMoveError,
    RelativeMask,
    ResourceError,
    Rule,
    X,
    acyclicity_check,
    apply_phi,
    ball,
    bruhat_leq,
    canonical_word,
    enumerate_interval,
    find_move,
    interval_as_relative_masks,
    match_interval,
    reflection_order,
    rw_match,
)

from conftest import expr, w


class TestFindMove:
    def test_all_ones_has_none(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (1, 1, 1, 1))
        assert find_move(rm) is None

    def test_rightmost_zero(self, a3):
        # position 4 carries no shifted descent here, so the scan falls
        # through to the 0 at position 3
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (X, 0, 0, 1))
        assert find_move(rm) == Move(3, Rule.R2)

    def test_shifted_descent_beats_zero(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (0, 0, 0, 1))
        assert find_move(rm) == Move(4, Rule.R4)

    def test_x_without_defect(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (X, X, X, 1))
        assert find_move(rm) == Move(3, Rule.R1)

    def test_x_with_defect(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (1, 0, 0, X))
        assert find_move(rm) == Move(4, Rule.R3)

    def test_one_with_shifted_descent(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (0, X, 0, 1))
        assert find_move(rm) == Move(4, Rule.R4)


class TestApplyPhi:
    def test_no_move_is_loud(self, a3):
        rm = RelativeMask(expr(a3, 2, 1, 3, 2), (1, 1, 1, 1))
        with pytest.raises(NoMoveError):
            apply_phi(rm)

    def test_plain_flips(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        assert apply_phi(RelativeMask(e, (X, X, X, 1))).entries == (X, X, 0, 1)
        assert apply_phi(RelativeMask(e, (X, X, 0, 1))).entries == (X, X, X, 1)

    def test_r3_rewrites_prefix(self, a3):
        # letter 4 joins the intermediate element; entries left of it are
        # regenerated greedily so that y is still encoded
        e = expr(a3, 2, 1, 3, 2)
        out = apply_phi(RelativeMask(e, (1, 0, 0, X)))
        assert out.entries == (0, 0, 0, 1)
        assert out.evaluate() == w(a3, 2)

    def test_r4_rewrites_prefix(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        assert apply_phi(RelativeMask(e, (0, 0, 0, 1))).entries == (1, 0, 0, X)
        assert apply_phi(RelativeMask(e, (0, X, 0, 1))).entries == (1, X, 0, X)

    def test_involution_on_worked_interval(self, a3):
        rms = interval_as_relative_masks(w(a3, 2), expr(a3, 2, 1, 3, 2))
        for rm in rms.values():
            out = apply_phi(rm)
            back = apply_phi(out)
            assert back.entries == rm.entries
            assert out.evaluate() == rm.evaluate()
            assert abs(len(out.x_positions()) - len(rm.x_positions())) == 1

    def test_involution_exhaustive_a3(self, a3):
        xs = ball(a3, 6)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                for rm in interval_as_relative_masks(y, e).values():
                    if find_move(rm) is None:
                        assert rm.is_all_ones()
                        continue
                    assert apply_phi(apply_phi(rm)).entries == rm.entries


class TestMatchInterval:
    def test_worked_interval_five_pairs(self, a3):
        matching = match_interval(w(a3, 2), expr(a3, 2, 1, 3, 2))
        assert not matching.unmatched
        expected = {
            frozenset((w(a3, 2, 1, 3, 2), w(a3, 2, 1, 3))),
            frozenset((w(a3, 2, 3, 2), w(a3, 2, 3))),
            frozenset((w(a3, 2, 1, 2), w(a3, 2, 1))),
            frozenset((w(a3, 1, 3, 2), w(a3, 1, 2))),
            frozenset((w(a3, 3, 2), w(a3, 2))),
        }
        assert matching.pair_sets() == expected

    def test_full_interval_a2(self, a2):
        matching = match_interval(a2.identity, expr(a2, 1, 2, 1))
        assert not matching.unmatched
        got = sorted((p.upper.word, p.lower.word) for p in matching.pairs)
        assert got == [((1,), ()), ((1, 2, 1), (1, 2)), ((2, 1), (2,))]

    def test_singleton_leaves_top_unmatched(self, a3):
        v = w(a3, 2, 1)
        matching = match_interval(v, canonical_word(v))
        assert not matching.pairs
        assert matching.unmatched == {v}

    def test_pairs_are_cover_edges(self, a3):
        xs = ball(a3, 6)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                matching = match_interval(y, e)
                covers = set(enumerate_interval(y, v).cover_edges)
                seen = set()
                for p in matching.pairs:
                    assert (p.upper, p.lower) in covers
                    assert p.down_rule in (Rule.R2, Rule.R4)
                    assert not seen & {p.upper, p.lower}
                    seen |= {p.upper, p.lower}

    def test_partner_lookup(self, a3):
        matching = match_interval(w(a3, 2), expr(a3, 2, 1, 3, 2))
        assert matching.partner(w(a3, 3, 2)) == w(a3, 2)
        assert matching.partner(w(a3, 2)) == w(a3, 3, 2)
        assert matching.partner(w(a3, 1)) is None


class TestReflectionOrder:
    def test_worked_word(self, a3):
        order = reflection_order(expr(a3, 2, 1, 3, 2))
        assert order.base_word == (2, 3, 1, 2, 1, 3)
        assert len(order) == 6
        words = [t.word for t in order.reflections]
        assert words == [
            (2,), (2, 3, 2), (1, 2, 1), (1, 2, 3, 2, 1), (3,), (1,),
        ]
        # index 0 is the largest reflection
        assert order.index(w(a3, 2)) == 0
        assert order.index(w(a3, 1)) == 5

    def test_unknown_reflection_is_loud(self, a3):
        order = reflection_order(expr(a3, 2, 1, 3, 2))
        with pytest.raises(IntegrityError):
            order.index(w(a3, 1, 2))

    def test_infinite_group_aborts(self, ta1):
        with pytest.raises(ResourceError):
            reflection_order(expr(ta1, 1, 2, 1))


class TestRwMatch:
    def test_worked_interval_agrees_with_phi(self, a3):
        e = expr(a3, 2, 1, 3, 2)
        y = w(a3, 2)
        assert rw_match(y, e).pair_sets() == match_interval(y, e).pair_sets()

    def test_labels_are_cover_reflections(self, a3):
        matching = rw_match(w(a3, 2), expr(a3, 2, 1, 3, 2))
        for p in matching.pairs:
            assert p.upper * p.label == p.lower
            assert (p.label * p.label).is_identity()

    def test_exhaustive_agreement_b2(self):
        from coxmask import CoxeterSystem, preset_matrix

        b2 = CoxeterSystem(preset_matrix("B2"))
        xs = ball(b2, 4)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                a = match_interval(y, e)
                b = rw_match(y, e)
                assert a.pair_sets() == b.pair_sets()
                assert a.unmatched == b.unmatched


class TestAcyclicity:
    def test_worked_interval_is_acyclic(self, a3):
        y, e = w(a3, 2), expr(a3, 2, 1, 3, 2)
        interval = enumerate_interval(y, e.element)
        assert acyclicity_check(interval, match_interval(y, e)) is None

    def test_exhaustive_a3(self, a3):
        xs = ball(a3, 6)
        for v in xs:
            e = canonical_word(v)
            for y in xs:
                if not bruhat_leq(y, v):
                    continue
                interval = enumerate_interval(y, v)
                assert acyclicity_check(interval, match_interval(y, e)) is None

    def test_non_cover_pair_is_loud(self, a3):
        y, v = w(a3, 2), w(a3, 2, 1, 3, 2)
        interval = enumerate_interval(y, v)
        bogus = Matching((MatchedPair(v, y),), frozenset())
        with pytest.raises(IntegrityError):
            acyclicity_check(interval, bogus)

    def test_bad_matching_yields_cycle_witness(self, a2):
        # pairing s1 s2 with s1 and s2 s1 with s2 reverses two edges of
        # the hexagon and closes a directed square
        interval = enumerate_interval(a2.identity, w(a2, 1, 2, 1))
        bad = Matching(
            (
                MatchedPair(w(a2, 1, 2), w(a2, 1)),
                MatchedPair(w(a2, 2, 1), w(a2, 2)),
            ),
            frozenset((a2.identity, w(a2, 1, 2, 1))),
        )
        cycle = acyclicity_check(interval, bad)
        assert cycle is not None
        assert cycle[0] == cycle[-1]
        assert len(cycle) == 5
        assert set(cycle) == {
            w(a2, 1), w(a2, 2), w(a2, 1, 2), w(a2, 2, 1),
        }
