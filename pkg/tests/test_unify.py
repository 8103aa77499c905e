from hypothesis import given, settings
from hypothesis import strategies as st

from core_terms import Fn, Substitution, const, var
from unify import match, may_unify, unify
from strategies import ground_terms, terms

x, y, z = var(0), var(1), var(2)
c, d = const("c"), const("d")


def f(a, b):
    return Fn("f", (a, b))


def g(a):
    return Fn("g", (a,))


class TestUnify:
    def test_binds_both_sides(self):
        s = unify(f(x, d), f(c, y))
        assert s.apply(f(x, d)) == s.apply(f(c, y)) == f(c, d)

    def test_symbol_clash(self):
        assert unify(f(x, c), f(x, d)) is None
        assert unify(g(x), f(x, x)) is None

    def test_occurs_check(self):
        assert unify(x, g(x)) is None
        assert unify(f(x, y), f(y, g(x))) is None

    def test_chained_bindings_are_resolved(self):
        s = unify(f(x, g(y)), f(g(z), g(c)))
        assert s.apply(x) == g(z)
        assert s.apply(y) == c

    def test_may_unify_is_a_prefilter(self):
        assert may_unify(x, g(c))
        assert not may_unify(g(c), f(c, c))


class TestMatch:
    def test_one_way(self):
        assert match(f(x, y), f(c, g(d))).apply(f(x, y)) == f(c, g(d))
        # 대상 항의 변수는 묶지 않음
        assert match(f(c, y), f(x, d)) is None

    def test_nonlinear_pattern(self):
        assert match(f(x, x), f(c, c)) is not None
        assert match(f(x, x), f(c, d)) is None


class TestUnifyProperties:
    @settings(max_examples=1000, deadline=None)
    @given(terms, terms)
    def test_unifier_is_sound_and_idempotent(self, t1, t2):
        s = unify(t1, t2)
        if s is None:
            return
        assert s.apply(t1) == s.apply(t2)
        assert s.apply(s.apply(t1)) == s.apply(t1)

    @settings(max_examples=1000, deadline=None)
    @given(terms, terms, st.tuples(ground_terms, ground_terms, ground_terms))
    def test_every_ground_unifier_is_an_instance(self, t1, t2, values):
        theta = Substitution(dict(enumerate(values)))
        if theta.apply(t1) != theta.apply(t2):
            return
        s = unify(t1, t2)
        assert s is not None
        # θ 가 최일반 단일자의 인스턴스
        assert match(s.apply(t1), theta.apply(t1)) is not None
        assert match(f(s.apply(x), f(s.apply(y), s.apply(z))),
                     f(theta.apply(x), f(theta.apply(y), theta.apply(z)))) is not None

    @settings(max_examples=1000, deadline=None)
    @given(terms, st.tuples(ground_terms, ground_terms, ground_terms))
    def test_match_finds_instances(self, pattern, values):
        theta = Substitution(dict(enumerate(values)))
        s = match(pattern, theta.apply(pattern))
        assert s is not None
        assert s.apply(pattern) == theta.apply(pattern)
