import pytest
from hypothesis import given, settings

from core_terms import app, const, var
from frontend import parse_term
from oracle import (
    PROPOSITIONS, TRC, TRC_STAR, CapExceeded, FreshConstants, NormalForm, Verdict, Verification,
    check_extensional, check_propositions, deep_check, normalize, ruleset, strategies_agree, verify_answer,
)
from strategies import combinator_terms, k_only_terms
from trc_corpus import load_problem

k, c1, c2 = const("k"), const("c1"), const("c2")


class TestNormalize:
    def test_diagonal_combinator(self):
        result = normalize(parse_term("abst abst k c1 c2"), TRC_STAR)
        assert isinstance(result, NormalForm)
        assert result.term == app(c1, c1)

    def test_k(self):
        assert normalize(app(k, c1, c2), TRC_STAR).term == c1

    def test_trc_unary_k(self):
        assert normalize(parse_term("k(k(id)) c1 c2 c3"), TRC).term == const("c3")
        assert normalize(parse_term("abst abst abst abst c1 c2 c3"), TRC).term == const("c3")

    def test_pairs(self):
        assert normalize(parse_term("p2 (pair(k,p1) c1)"), TRC_STAR).term == app(const("p1"), c1)
        assert normalize(parse_term("eq pair(c1,c1)"), TRC_STAR).term == const("p1")

    def test_cap(self):
        result = normalize(app(k, c1, c2), TRC_STAR, cap=0)
        assert isinstance(result, CapExceeded)
        assert result.last == app(k, c1, c2)

    def test_strategies(self):
        t = parse_term("k c1 (k c2 c1)")
        assert normalize(t, TRC_STAR, strategy="outermost").steps == 1
        assert normalize(t, TRC_STAR, strategy="innermost").steps == 2

    def test_rejects_variables(self):
        with pytest.raises(ValueError):
            normalize(app(k, var(0), c1), TRC_STAR)

    def test_unknown_system(self):
        with pytest.raises(ValueError):
            ruleset("ski")


class TestExtensional:
    def test_fresh_constants_avoid_input(self):
        fresh = FreshConstants({"c1", "c3"})
        assert [c.name for c in fresh.take(3)] == ["c2", "c4", "c5"]

    def test_equal(self):
        assert check_extensional(parse_term("abst abst k"), parse_term("abst abst k"), 2, TRC_STAR) is Verdict.EQUAL

    def test_distinct(self):
        assert check_extensional(const("p1"), const("p2"), 0, TRC_STAR) is Verdict.DISTINCT
        assert check_extensional(k, parse_term("abst abst k"), 2, TRC_STAR) is Verdict.DISTINCT

    def test_unknown_on_cap(self):
        assert check_extensional(parse_term("abst abst k"), k, 2, TRC_STAR, cap=1) is Verdict.UNKNOWN

    def test_deep_check_needs_an_extra_argument(self):
        # 둘 다 정규형이고, 새 상수 하나를 더 적용해야 같아짐
        lhs = parse_term("k c1")
        rhs = parse_term("abst (k (k c1)) k")
        assert deep_check(lhs, rhs, TRC_STAR) is Verdict.EQUAL


class TestPropositions:
    @pytest.mark.parametrize("proposition", PROPOSITIONS, ids=lambda p: p.name)
    def test_holds(self, proposition):
        assert proposition.check() is Verdict.EQUAL

    def test_suite(self):
        assert set(check_propositions().values()) == {Verdict.EQUAL}


class TestVerifyAnswer:
    def test_diagonal_answer(self):
        problem = load_problem("f_reduced")
        assert verify_answer(problem, parse_term("abst abst k")) is Verification.VERIFIED
        assert verify_answer(problem, k) is Verification.REFUTED

    @pytest.mark.parametrize("answer", [
        "abst (k eq) pair(F,k (k p2)) (abst (k eq) pair(F,k (k p2)))",
        "abst (abst (abst (k eq))) pair(F,k (k p2)) (abst (abst (abst (k eq))) pair(F,k (k p2)))",
    ])
    def test_self_reference_answers(self, answer):
        assert verify_answer(load_problem("s_reduced"), parse_term(answer)) is Verification.VERIFIED

    def test_problem_without_answer(self):
        with pytest.raises(ValueError):
            verify_answer(load_problem("contradiction"), k)


class TestRewritingProperties:
    @settings(max_examples=1000, deadline=None)
    @given(combinator_terms, combinator_terms)
    def test_k_erases_second_argument(self, t, u):
        alone = normalize(t, TRC_STAR, cap=40)
        erased = normalize(app(k, t, u), TRC_STAR, cap=41)
        if isinstance(alone, CapExceeded) or isinstance(erased, CapExceeded):
            return
        assert erased.term == alone.term
        assert erased.steps == alone.steps + 1

    @settings(max_examples=1000, deadline=None)
    @given(k_only_terms)
    def test_k_fragment_is_confluent(self, t):
        assert strategies_agree(t, TRC_STAR, cap=200) is True

    @settings(max_examples=1000, deadline=None)
    @given(combinator_terms)
    def test_normal_forms_are_fixed_points(self, t):
        result = normalize(t, TRC_STAR, cap=40)
        if isinstance(result, NormalForm):
            again = normalize(result.term, TRC_STAR)
            assert again == NormalForm(result.term, 0)
