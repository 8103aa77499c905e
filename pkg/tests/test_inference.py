from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from core_terms import (
    UR, Binary, ClauseRef, Clause, Fn, Literal, ParaFrom, ParaInto, UnitDel, app, const, positions,
    replace_at, var,
)
from inference import UnitIndex, paramodulate, unit_conflict, unit_delete, ur_resolve
from saturation import ProverOptions
from strategies import ground_terms

x, y = var(0), var(1)
k, c, d = const("k"), const("c"), const("d")
KB = ProverOptions(knuth_bendix=True)
PLAIN = ProverOptions()


def p(*args, positive=True):
    return Literal.predicate("p", args, positive)


def q(*args, positive=True):
    return Literal.predicate("q", args, positive)


def unit(clause_id, *literals):
    return Clause(tuple(literals), id=clause_id)


class TestParamodulate:
    def test_k_rule_into_goal(self):
        k_rule = Clause((Literal.equality(app(k, x, y), x),), id=2, oriented=(True,))
        goal = Clause((Literal.equality(app(k, c, d), c, positive=False),), id=5, oriented=(False,))
        results = paramodulate(k_rule, goal, KB)
        literals = [r.literals for r in results]
        assert (Literal.equality(c, c, positive=False),) in literals
        first = results[literals.index((Literal.equality(c, c, positive=False),))]
        assert first.justification.primary == ParaFrom(ClauseRef(2, 1, (1,)), ClauseRef(5, 1, (1,)))
        assert first.justification.render() == "[para_from,2.1.1,5.1.1]"

    def test_oriented_equation_only_from_left(self):
        k_rule = Clause((Literal.equality(app(k, x, y), x),), id=2, oriented=(True,))
        goal = Clause((p(app(k, c, d)),), id=5)
        for r in paramodulate(k_rule, goal, KB):
            assert r.justification.primary.from_ref.path == (1,)

    def test_non_unit_into_left_side_only(self):
        eq = Clause((Literal.equality(c, d),), id=1, oriented=(True,))
        two = Clause((q(k), Literal.equality(app(k, c), app(c, k))), id=2)
        results = paramodulate(eq, two, KB)
        assert [r.justification.primary.into_ref.path for r in results] == [(1, 2)]

    def test_unorientable_unit_into_both_sides(self):
        eq = Clause((Literal.equality(c, d),), id=1, oriented=(True,))
        goal = Clause((Literal.equality(app(k, c), app(c, k), positive=False),), id=3)
        results = paramodulate(eq, goal, KB)
        assert [r.justification.primary.into_ref.path for r in results] == [(1, 2), (2, 1)]

    def test_non_unit_from_left_side_only(self):
        eq = Clause((q(d), Literal.equality(app(k, c), c)), id=4)
        target = Clause((p(c),), id=5)
        assert paramodulate(eq, target, KB) == []
        assert len(paramodulate(eq, target, PLAIN)) == 1

    def test_para_into_tag(self):
        k_rule = Clause((Literal.equality(app(k, x, y), x),), id=2, oriented=(True,))
        goal = Clause((p(app(k, c, d)),), id=5)
        results = paramodulate(k_rule, goal, KB, given_is_from=False)
        assert results[0].justification.primary == ParaInto(ClauseRef(5, 1, (1,)), ClauseRef(2, 1, (1,)))
        assert results[0].literals == (p(c),)

    def test_never_into_answer_literals(self):
        eq = Clause((Literal.equality(c, d),), id=1)
        goal = Clause((p(x, positive=False), Literal.predicate("$ans", (c,))), id=2)
        assert paramodulate(eq, goal, PLAIN) == []

    def test_never_into_variables(self):
        eq = Clause((Literal.equality(c, d),), id=1)
        assert paramodulate(eq, Clause((p(x),), id=2), PLAIN) == []

    def test_units_only_restrictions(self):
        eq = Clause((Literal.equality(c, d), q(c)), id=1)
        target = Clause((p(c),), id=2)
        assert paramodulate(eq, target, ProverOptions(para_from_units_only=True)) == []
        two = Clause((p(c), q(d)), id=3)
        assert paramodulate(Clause((Literal.equality(c, d),), id=4), two,
                            ProverOptions(para_into_units_only=True)) == []

    def test_remaining_from_literals_are_appended(self):
        eq = Clause((q(x), Literal.equality(app(k, x), x)), id=1)
        target = Clause((p(app(k, c)),), id=2)
        results = paramodulate(eq, target, PLAIN)
        assert (p(c), q(c)) in [r.literals for r in results]


def _brute_force(lhs, rhs, t):
    # 바닥 등식 양방향으로 모든 일치 위치를 대체
    found = Counter()
    for l, r in ((lhs, rhs), (rhs, lhs)):
        for path, sub in positions(t, (1,)):
            if sub == l:
                found[(p(replace_at(Fn("p", (t,)), path, r).args[0]),)] += 1
    return found


class TestParamodulantCompleteness:
    @settings(max_examples=1000, deadline=None)
    @given(ground_terms, ground_terms, ground_terms)
    def test_matches_subterm_replacement(self, lhs, rhs, t):
        eq = Clause((Literal.equality(lhs, rhs),), id=1)
        into = Clause((p(t),), id=2)
        results = Counter(r.literals for r in paramodulate(eq, into, PLAIN))
        assert results == _brute_force(lhs, rhs, t)


class TestUrResolve:
    def test_two_literal_nucleus(self):
        nucleus = Clause((p(x, positive=False), q(x)), id=3)
        units = UnitIndex([unit(1, p(c))])
        results = ur_resolve(nucleus, units)
        assert [r.literals for r in results] == [(q(c),)]
        assert results[0].justification.primary == UR(3, (1,))

    def test_must_use(self):
        nucleus = Clause((p(x, positive=False), q(y, positive=False), Literal.predicate("r", (x, y))), id=5)
        units = UnitIndex([unit(1, p(c)), unit(2, q(d)), unit(3, p(d))])
        results = ur_resolve(nucleus, units, must_use=unit(3, p(d)))
        assert [r.literals for r in results] == [(Literal.predicate("r", (d, d)),)]

    def test_keeps_answer_literals(self):
        nucleus = Clause((p(x, positive=False), q(x), Literal.predicate("$ans", (x,))), id=3)
        results = ur_resolve(nucleus, UnitIndex([unit(1, p(c))]))
        assert (q(c), Literal.predicate("$ans", (c,))) in [r.literals for r in results]

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(st.tuples(st.sampled_from(["p", "q", "r"]), st.booleans(), ground_terms),
                    min_size=1, max_size=5))
    def test_results_are_units(self, specs):
        nucleus = Clause((p(x, positive=False), q(y, positive=False), Literal.predicate("r", (x, y))), id=100)
        units = UnitIndex([
            unit(i, Literal.predicate(name, (t, t) if name == "r" else (t,), positive))
            for i, (name, positive, t) in enumerate(specs, start=1)
        ])
        for result in ur_resolve(nucleus, units):
            assert result.is_unit


class TestUnitConflict:
    def test_false_when_no_answers(self):
        units = UnitIndex([unit(1, p(c))])
        conflict = unit_conflict(unit(2, p(x, positive=False)), units)
        assert conflict.is_success
        assert conflict.literals[0].is_false
        assert conflict.justification.primary == Binary(ClauseRef(2, 1), ClauseRef(1, 1))

    def test_answer_instantiated(self):
        units = UnitIndex([unit(1, p(c))])
        new = unit(2, p(x, positive=False), Literal.predicate("$ans", (x,)))
        conflict = unit_conflict(new, units)
        assert conflict.literals == (Literal.predicate("$ans", (c,)),)

    def test_equality_either_direction(self):
        units = UnitIndex([unit(1, Literal.equality(x, x))])
        goal = unit(2, Literal.equality(app(k, c), app(k, c), positive=False))
        assert unit_conflict(goal, units) is not None

    def test_same_sign_ignored(self):
        assert unit_conflict(unit(2, p(c)), UnitIndex([unit(1, p(x))])) is None


class TestUnitDelete:
    def test_removes_instances(self):
        units = UnitIndex([unit(1, p(x, positive=False))])
        result = unit_delete(Clause((p(c), q(d)), id=5), units)
        assert result.literals == (q(d),)
        assert result.justification.annotations == (UnitDel((1,)),)

    def test_all_literals_deleted_gives_false(self):
        units = UnitIndex([unit(1, p(x, positive=False)), unit(2, q(x, positive=False))])
        result = unit_delete(Clause((p(c), q(d)), id=5), units)
        assert result.is_success
        assert result.literals[0].is_false
        assert result.justification.annotations == (UnitDel((1, 2)),)

    def test_unit_clauses_untouched(self):
        units = UnitIndex([unit(1, p(x, positive=False))])
        c1 = Clause((p(c), Literal.predicate("$ans", (c,))), id=5)
        assert unit_delete(c1, units) is c1

    def test_only_instances(self):
        units = UnitIndex([unit(1, p(c, positive=False))])
        c1 = Clause((p(x), q(d)), id=5)
        assert unit_delete(c1, units) is c1
