from dataclasses import replace

import pytest
from hypothesis import given, settings

from core_terms import UR, Demod, Fn, Input, Literal, const, var
from frontend import parse, parse_proof
from proof_check import Invalid, Valid, check_proof, clauses_equivalent
from saturation import ProofFound, saturate
from strategies import ground_terms
from trc_corpus import load_problem

x, y = var(0), var(1)
c, d = const("c"), const("d")

DIAGONAL_PROOF = r"""
---------------- PROOF ----------------

1 [] x=x.
3,2 [] k x y=x.
4 [] abst x y z=x (k z) (y z).
5 [] x b(x) c(x)!=b(x) b(x) |\$ans(x).
6 [] x (k y) (z y)=abst x z y.
11 [para\_from,4.1.1,5.1.1.1]
 x (k b(abst x y)) (y b(abst x y)) c(abst x y)!=b(abst x y) b(abst x y) |
 \$ans(abst x y).
26 [para\_into,6.1.1.2,2.1.1] abst x (k y) z=x (k z) y.
110 [para\_from,26.1.1,11.1.1,demod,3]
 b(abst abst k) b(abst abst k)!=b(abst abst k) b(abst abst k) |\$ans(abst abst k).
111 [binary,110.1,1.1] \$ans(abst abst k).

------------ end of proof -------------
""".replace("\\_", "_")

CONTRADICTION_PROOF = """
2 [] k x y=x.
14,13 [] eq pair(x,x)=p1.
15 [] x=y|eq pair(x,y) =p2.
17 [] p2!=p1.
21,20 [] k p2=cp2.
22 [demod,21] eq pair(k s,cp2)=s.
30,29 [para_from,20.1.1,2.1.1.1] cp2 x=p2.
35 [para_into,15.2.1,22.1.1] k s=cp2|s=p2.
74,73 [para_from,35.1.1,2.1.1.1,demod,30] s=p2.
82 [back_demod,22,demod,74,21,14,74] p2=p1.
84 [binary,82.1,17.1] $F.
"""

SELF_REFERENCE_PROOF = """
2 [] k x y=x.
7,6 [] p2 pair(x,y)=y.
10 [] pair(x y,z y)=pair(x,z) y.
13 [] x=y|x n(x,y) !=y n(x,y).
14 [] F x y=x x.
16 [] eq pair(k x,k p2)!=x|$ans(x).
19 [] x (k y) (z y)=abst x z y.
27 [para_into,10.1.1.2,14.1.1] pair(x y,z z)=pair(x,F z) y.
34,33 [para_into,10.1.1.2,2.1.1] pair(x y,z)=pair(x,k z) y.
44 [back_demod,27,demod,34] pair(x,k (y y)) z=pair(x,F y) z.
49 [back_demod,16,demod,34] eq (pair(k,k (k p2)) x)!=x|$ans(x).
158 [para_into,19.1.1.1,2.1.1] abst (k x) y z=x (y z).
1468 [ur,44,13] pair(x,k (y y))=pair(x,F y).
1540,1539 [para_from,1468.1.1,6.1.1.2,demod,7] k (x x)=F x.
1575 [para_into,1539.1.1.2,14.1.1,demod,1540] F (F x)=F x.
1577 [para_into,1539.1.1.2,2.1.1] F (k x)=k x.
1619,1618 [para_from,1575.1.1,33.1.1.1,demod,34]
 pair(F,k x) (F y)=pair(F,k x) y.
1627,1626 [para_from,1577.1.1,33.1.1.1,demod,34]
 pair(k,k x) y=pair(F,k x) (k y).
1661 [back_demod,49,demod,1627] eq (pair(F,k (k p2)) (k x))!=x|$ans(x).
4002 [para_into,1661.1.1.2.2,1539.1.1,demod,1619]
 x x!=eq (pair(F,k (k p2)) x) |$ans(x x).
4003 [binary,4002.1,158.1]
 $ans(abst (k eq) pair(F,k (k p2)) (abst (k eq) pair(F,k (k p2)))).
"""

UR_SEARCH = """
set(ur_res).
list(usable).
-p(x) | q(x).
end_of_list.
list(sos).
p(c).
-q(c).
end_of_list.
"""


def _own_proof():
    return saturate(parse(UR_SEARCH)).proof


def _ur_line(proof):
    return next(i for i, line in enumerate(proof) if isinstance(line.justification.primary, UR))


class TestPublishedProofs:
    def test_diagonal(self):
        proof = parse_proof(DIAGONAL_PROOF)
        assert [line.id for line in proof] == [1, 2, 4, 5, 6, 11, 26, 110, 111]
        assert proof[1].demod_id == 3
        assert check_proof(proof) == Valid()

    def test_contradiction(self):
        assert check_proof(parse_proof(CONTRADICTION_PROOF)) == Valid()

    def test_self_reference_with_satellite_first_ur_tag(self):
        assert check_proof(parse_proof(SELF_REFERENCE_PROOF)) == Valid()

    def test_wrong_conclusion(self):
        text = CONTRADICTION_PROOF.replace("82 [back_demod,22,demod,74,21,14,74] p2=p1.",
                                           "82 [back_demod,22,demod,74,21,14,74] p2=s.")
        result = check_proof(parse_proof(text))
        assert isinstance(result, Invalid)
        assert result.line == 82

    def test_wrong_demodulator_trace(self):
        text = CONTRADICTION_PROOF.replace("demod,74,21,14,74]", "demod,74,21,14]")
        result = check_proof(parse_proof(text))
        assert isinstance(result, Invalid)
        assert result.line == 82

    def test_forward_reference(self):
        text = CONTRADICTION_PROOF.replace("30,29 [para_from,20.1.1,2.1.1.1]", "30,29 [para_from,20.1.1,35.1.1.1]")
        result = check_proof(parse_proof(text))
        assert isinstance(result, Invalid)
        assert result.line == 29


class TestMutations:
    def test_own_proof_is_valid(self):
        assert check_proof(_own_proof())

    def test_missing_parent(self):
        proof = _own_proof()
        i = _ur_line(proof)
        assert not check_proof(proof[:i - 1] + proof[i:])

    def test_bogus_demod_annotation(self):
        proof = _own_proof()
        i = _ur_line(proof)
        mutated = replace(proof[i], justification=proof[i].justification.annotate(Demod((1,))))
        result = check_proof(proof[:i] + [mutated] + proof[i + 1:])
        assert isinstance(result, Invalid)
        assert result.line == proof[i].id

    @settings(max_examples=1000, deadline=None)
    @given(ground_terms)
    def test_altered_ur_conclusion_rejected(self, t):
        proof = _own_proof()
        i = _ur_line(proof)
        if t == c:
            return
        mutated = replace(proof[i], literals=(Literal.predicate("q", (t,)),))
        result = check_proof(proof[:i] + [mutated] + proof[i + 1:])
        assert isinstance(result, Invalid)
        assert result.line == proof[i].id


def _corpus_proofs():
    for name in ("f_reduced", "contradiction", "prop2b", "prop2c"):
        outcome = saturate(load_problem(name).parse())
        assert isinstance(outcome, ProofFound), name
        yield outcome.proof


def _single_clause_mutations(proof):
    # 유도된 줄 하나의 리터럴만 바꿈: 부호 반전 또는 다른 줄의 리터럴
    derived = [i for i, line in enumerate(proof) if not isinstance(line.justification.primary, Input)]
    for i in derived:
        line = proof[i]
        if not line.is_success:
            flipped = (line.literals[0].negated(),) + line.literals[1:]
            yield i, replace(line, literals=flipped)
        for other in proof:
            if not clauses_equivalent(other.literals, line.literals):
                yield i, replace(line, literals=other.literals)


@pytest.mark.slow
class TestCorpusProofMutations:
    def test_hundred_mutations_rejected(self):
        checked = 0
        for proof in _corpus_proofs():
            assert check_proof(proof)
            for i, mutated in _single_clause_mutations(proof):
                result = check_proof(proof[:i] + [mutated] + proof[i + 1:])
                assert isinstance(result, Invalid)
                assert result.line == mutated.id
                checked += 1
                if checked == 100:
                    return
        pytest.fail(f"변형 {checked} 개만 생성됨")


class TestClausesEquivalent:
    def test_renaming_and_symmetry(self):
        a = (Literal.equality(Fn("f", (x, y)), x), Literal.predicate("p", (y,)))
        b = (Literal.predicate("p", (x,)), Literal.equality(y, Fn("f", (y, x))))
        assert clauses_equivalent(a, b)

    def test_renaming_must_be_injective(self):
        a = (Literal.equality(Fn("f", (x, y)), c),)
        b = (Literal.equality(Fn("f", (x, x)), c),)
        assert not clauses_equivalent(a, b)

    def test_sign_matters(self):
        assert not clauses_equivalent((Literal.equality(c, d),), (Literal.equality(c, d, positive=False),))