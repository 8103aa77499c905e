from hypothesis import given, settings
from hypothesis import strategies as st

from core_terms import Fn, Substitution, app, const, positions, replace_at, var
from term_order import Order, Orientation, Precedence, compare, lpo_greater, orient
from strategies import terms

x, y, z = var(0), var(1), var(2)
k, pair, abst = const("k"), "pair", const("abst")
PREC = Precedence.from_sequence(("f", "g", "d", "c"))


class TestPrecedence:
    def test_explicit_above_appearance(self):
        prec = Precedence(explicit=("pair", "a"), appearance=("k", "F"))
        assert prec.greater("pair", "a")
        assert prec.greater("a", "F")
        assert prec.greater("a", "k")

    def test_later_appearance_is_greater(self):
        prec = Precedence.from_appearance(["a", "k", "abst"])
        assert prec.greater("abst", "k")
        assert prec.greater("k", "a")
        assert not prec.greater("k", "k")


class TestOrientation:
    def test_k_axiom(self):
        prec = Precedence.from_sequence(("a", "k"))
        assert orient(app(k, x, y), x, prec) is Orientation.LEFT_TO_RIGHT

    def test_abst_axiom_is_unorientable(self):
        # 오른쪽 변수 z 가 두 번, 왼쪽의 abst 는 오른쪽에 없음
        prec = Precedence.from_sequence(("pair", "a", "k", "F"))
        lhs = app(abst, x, y, z)
        rhs = app(x, app(k, z), app(y, z))
        assert orient(lhs, rhs, prec) is Orientation.UNORIENTABLE

    def test_pair_distribution_right_to_left(self):
        prec = Precedence.from_sequence(("pair", "a", "k", "F"))
        lhs = app(Fn(pair, (x, y)), z)
        rhs = Fn(pair, (app(x, z), app(y, z)))
        assert orient(lhs, rhs, prec) is Orientation.RIGHT_TO_LEFT

    def test_k_diagonal(self):
        prec = Precedence.from_sequence(("pair", "a", "k", "F"))
        lhs = app(k, app(x, x))
        rhs = app(const("F"), x)
        assert compare(lhs, rhs, prec) is Order.GREATER

    def test_variable_cases(self):
        assert not lpo_greater(x, Fn("g", (x,)), PREC)
        assert lpo_greater(Fn("g", (x,)), x, PREC)
        assert compare(x, y, PREC) is Order.INCOMPARABLE


class TestLpoProperties:
    @settings(max_examples=1000, deadline=None)
    @given(terms)
    def test_irreflexive(self, t):
        assert not lpo_greater(t, t, PREC)

    @settings(max_examples=1000, deadline=None)
    @given(terms)
    def test_proper_subterms_are_smaller(self, t):
        for path, sub in positions(t):
            if path:
                assert lpo_greater(t, sub, PREC)

    @settings(max_examples=1000, deadline=None)
    @given(terms, terms, terms)
    def test_transitive(self, s, t, u):
        if lpo_greater(s, t, PREC) and lpo_greater(t, u, PREC):
            assert lpo_greater(s, u, PREC)

    @settings(max_examples=1000, deadline=None)
    @given(terms, terms)
    def test_asymmetric(self, s, t):
        assert not (lpo_greater(s, t, PREC) and lpo_greater(t, s, PREC))

    @settings(max_examples=1000, deadline=None)
    @given(terms, terms, st.tuples(terms, terms, terms))
    def test_stable_under_substitution(self, s, t, values):
        if not lpo_greater(s, t, PREC):
            return
        theta = Substitution(dict(enumerate(values)))
        assert lpo_greater(theta.apply(s), theta.apply(t), PREC)

    @settings(max_examples=1000, deadline=None)
    @given(terms, terms, terms, st.data())
    def test_monotone_in_one_hole_context(self, s, t, context, data):
        # 문맥의 한 위치에 s, t 를 각각 끼워 넣음
        if not lpo_greater(s, t, PREC):
            return
        paths = [path for path, _ in positions(context)] or [()]
        hole = data.draw(st.sampled_from(paths))
        assert lpo_greater(replace_at(context, hole, s), replace_at(context, hole, t), PREC)
