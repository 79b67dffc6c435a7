from itertools import product

import pytest

from conftest import names
from multikit.core import MultikitError, QuotientError
from multikit.morphisms import find_isomorphism
from multikit.polynomials import (PolyError, division_holds, iter_polys, iter_polys_upto,
                                  parse_poly, poly, render_poly)
from multikit.quotients import (SATURATED, STRICT, class_inverse, class_name, class_product,
                                divisor_irreducible, factor_witness, first_irreducible,
                                inverse_scan, irreducibles, is_irreducible, make_quotient,
                                principal_membership, principal_witness, reduce,
                                sum_closed_witness)
from multikit.structures import builtin


def P(S, text):
    return parse_poly(text, S)


def oracle_reduce(F, h, p):
    # every r of degree < deg p with h in q*p + r for some q of bounded degree
    n = p.degree
    qs = list(iter_polys_upto(F, max(h.degree - n, 0)))
    return {r for r in iter_polys_upto(F, n - 1)
            if any(division_holds(F, h, p, q, r) for q in qs)}


def test_principal_membership(h3):
    assert render_poly(h3, principal_witness(h3, P(h3, "X^2+2*X+2"), P(h3, "X+1"))) == "X+2"
    assert principal_witness(h3, P(h3, "1"), P(h3, "X^2+2")) is None
    assert principal_membership(h3, P(h3, "0"), P(h3, "X^2+2"))


def test_sum_closed_ideal_contains_one(h3):
    p = P(h3, "X^2+2")
    w = sum_closed_witness(h3, P(h3, "1"), p)
    assert w is not None and len(w) == 2
    assert principal_membership(h3, P(h3, "1"), p, mode="sum")
    assert not principal_membership(h3, P(h3, "1"), p, mode="multiple")
    with pytest.raises(MultikitError):
        principal_membership(h3, P(h3, "1"), p, mode="bogus")


def test_irreducibility_examples(h3):
    r = is_irreducible(h3, P(h3, "X^2+2"))
    assert r and r.divisor_check is True
    r = is_irreducible(h3, P(h3, "X^2+2*X+2"))
    assert not r
    assert [render_poly(h3, f) for f in r.factors] == ["X+1", "X+2"]
    with pytest.raises(PolyError):
        is_irreducible(h3, P(h3, "2"))


@pytest.mark.parametrize("name", ["krasner", "q2", "h3", "f3", "h5"])
def test_irreducibility_criteria_agree(name):
    F = builtin(name)
    for d in (1, 2):
        for p in iter_polys(F, d, monic=True):
            assert divisor_irreducible(F, p) == (factor_witness(F, p) is None), render_poly(F, p)


def test_krasner_has_no_quadratic_irreducibles():
    K = builtin("krasner")
    assert irreducibles(K, 2) == [] and irreducibles(K, 3) == []
    F3 = builtin("f3")
    assert render_poly(F3, first_irreducible(F3, 2)) == "X^2+1"


def test_reduce_examples(h3):
    p = P(h3, "X^2+2")
    show = lambda h: sorted(render_poly(h3, r) for r in reduce(h3, P(h3, h), p))
    assert show("X^2") == ["2"]
    assert show("2*X^2") == ["1"]
    assert show("X^2+X+1") == ["X+1", "X+2"]


def test_reduce_matches_oracle(h3):
    p = P(h3, "X^2+2")
    for h in iter_polys_upto(h3, 3):
        assert reduce(h3, h, p) == oracle_reduce(h3, h, p), render_poly(h3, h)


def test_h3_quotient_shape(h3q):
    S = h3q.structure
    assert S.size == 9 and h3q.report.superfield and h3q.embedding_full
    assert S.names[:3] == ("[0]", "[1]", "[2]")
    assert h3q.parse_class("[X+1]") == h3q.parse_class("[1+X]")
    assert class_name(h3q.base, P(h3q.base, "2*X+1")) == "[1+2X]"
    with pytest.raises(QuotientError):
        h3q.parse_class("[X^2]")


def test_quotient_sum_is_coordinatewise(h3q):
    F, S = h3q.base, h3q.structure
    for i, j in product(range(S.size), repeat=2):
        a, b = h3q.classes[i], h3q.classes[j]
        sets = [F.names_of(F.sum_table[a.coeff(k, F.zero)][b.coeff(k, F.zero)]) for k in range(2)]
        expect = {poly(F, [F.index(x) for x in c]) for c in product(*sets)}
        got = {h3q.classes[t] for t in range(S.size) if (S.sum_table[i][j] >> t) & 1}
        assert got == expect


def test_roots_in_quotient(h3q):
    from multikit.polynomials import evaluate
    F, S = h3q.base, h3q.structure
    X = h3q.generator
    assert evaluate(F, P(F, "X^2+2"), X, K=S, embedding=h3q.embedding) & (1 << S.zero)
    u = h3q.parse_class("[1+X]")
    assert evaluate(F, P(F, "X^2+1"), u, K=S, embedding=h3q.embedding) & (1 << S.zero)


def test_unit_square_has_many_classes(h3q):
    S = h3q.structure
    u = h3q.parse_class("[1+X]")
    assert len(names(S, S.prod_table[u][u])) == 6
    F, p = h3q.base, h3q.modulus
    sat = class_product(F, p, h3q.classes[u], h3q.classes[u], SATURATED)
    assert len(sat) == 9


def test_no_zero_divisors(h3q):
    S = h3q.structure
    for a, b in product(range(S.size), repeat=2):
        if (S.prod_table[a][b] >> S.zero) & 1:
            assert a == S.zero or b == S.zero


def test_inverses_both_routes(h3q):
    S = h3q.structure
    for c in S.nonzero():
        res = class_inverse(h3q, c)
        assert res.scan and res.witness == res.scan[0]
        assert res.constructive is not None and res.agree
        assert (S.prod_table[c][res.witness] >> S.one) & 1
    res = class_inverse(h3q, h3q.parse_class("[X]"))
    assert h3q.name(res.witness) == "[2X]"
    with pytest.raises(QuotientError):
        class_inverse(h3q, S.zero)
    assert inverse_scan(h3q, S.one)[0] == S.one


def test_reducible_modulus_rejected(h3):
    with pytest.raises(QuotientError) as e:
        make_quotient(h3, P(h3, "X^2+2*X+2"))
    assert e.value.witness == ("X+1", "X+2")
    with pytest.raises(QuotientError):
        make_quotient(h3, P(h3, "2"))


def test_saturated_tables_are_not_a_superring(h3):
    with pytest.raises(QuotientError, match="saturated"):
        make_quotient(h3, P(h3, "X^2+2"), mode=SATURATED)


def test_strict_field_quotient_is_the_field_of_nine():
    F3 = builtin("f3")
    Q = make_quotient(F3, P(F3, "X^2+1"), mode=STRICT)
    assert Q.structure.is_strict()
    assert find_isomorphism(Q.structure, builtin("f9")) is not None


def test_degree_one_quotient_is_base():
    H3 = builtin("h3")
    Q = make_quotient(H3, P(H3, "X+1"))
    assert find_isomorphism(Q.structure, H3) is not None
    assert Q.embedding_full
