import json
import pytest

from multikit.extensions import (ExtensionError, closure_tower, eliminate_witness,
                                 extension_degree, generated_set, irr_poly, is_algebraic,
                                 is_alg_closed_up_to, is_almost_full, linear_dependence,
                                 linear_independent, power_sequence, roots_preserved,
                                 simple_extension, write_tower)
from multikit.morphisms import FULL, compose, from_mapping
from multikit.polynomials import evaluate, iter_polys_upto, parse_poly, render_poly
from multikit.quotients import make_quotient
from multikit.structures import builtin, parse_structure


def oracle_generated(F, K, gamma, emb, max_degree):
    out = 0
    for f in iter_polys_upto(F, max_degree):
        out |= evaluate(F, f, gamma, K, emb)
    return out


def test_irr_of_generator(h3q):
    F, K, emb = h3q.base, h3q.structure, h3q.embedding
    assert render_poly(F, irr_poly(F, K, h3q.generator, emb)) == "X^2+2"
    one = K.one
    # H3 has -1 = 1, so X+1 vanishes at 1
    assert render_poly(F, irr_poly(F, K, one, emb)) == "X+1"
    assert is_algebraic(F, K, h3q.generator, emb).degree == 2


def test_ambient_needs_embedding(h3q):
    with pytest.raises(ExtensionError):
        is_algebraic(h3q.base, h3q.structure, 0)


def test_generated_sets():
    H2, H3, H5 = builtin("h2"), builtin("h3"), builtin("h5")
    for S in (H3, H5):
        e = from_mapping(H2, S, {"0": "0", "1": "1"})
        assert generated_set(H2, S, S.index("2"), e) == S.carrier


def test_generated_set_matches_oracle(h3q):
    F, K, emb = h3q.base, h3q.structure, h3q.embedding
    for t in range(K.size):
        assert generated_set(F, K, t, emb) == oracle_generated(F, K, t, emb, 5)
    assert generated_set(F, K, h3q.generator, emb) == K.carrier


def test_simple_extension(h3q):
    F, K, emb = h3q.base, h3q.structure, h3q.embedding
    S, inc = simple_extension(F, K, h3q.generator, emb)
    assert S.size == 9 and inc.classification.kind == FULL
    T, inc0 = simple_extension(F, K, K.one, emb)
    assert T.size == 3


def test_power_sequence(h3q):
    K = h3q.structure
    seq, pre, per = power_sequence(K, h3q.generator)
    assert seq[0] == 1 << K.one and per >= 1
    assert len(seq) == pre + per


def test_almost_full(h3q):
    res = is_almost_full(h3q.structure, h3q.base, h3q.generator, h3q.embedding)
    assert res.passed and res.witness is None
    with pytest.raises(ExtensionError):
        is_almost_full(h3q.structure, h3q.base, h3q.structure.one, h3q.embedding)


def test_elimination_witnesses_every_element(h3q):
    F, K, emb = h3q.base, h3q.structure, h3q.embedding
    routes = {}
    for t in range(K.size):
        e = eliminate_witness(F, K, h3q.generator, t, emb)
        assert 1 <= e.witness.degree <= 8
        assert evaluate(F, e.witness, t, K, emb) & (1 << K.zero)
        routes[e.route] = routes.get(e.route, 0) + 1
    assert sum(routes.values()) == 9 and "search" not in routes


def test_linear_independence(h3q):
    F, K, emb = h3q.base, h3q.structure, h3q.embedding
    assert linear_independent(F, K, [K.one, h3q.generator], emb)
    assert not linear_independent(F, K, [K.one, K.index("[2]")], emb)
    assert linear_dependence(F, K, [1 << K.zero], emb) == (F.one,)


def test_literal_extension_degree_is_zero(h3q):
    # lambda = 0 makes {1, 0} dependent already at n = 1
    assert extension_degree(h3q.base, h3q.structure, h3q.embedding) == 0


def test_closure_checks():
    assert is_alg_closed_up_to(builtin("krasner"), 6) == (True, None)
    Q = builtin("q2")
    ok, f = is_alg_closed_up_to(Q, 2)
    assert not ok and render_poly(Q, f) == "X^2+1"
    H3 = builtin("h3")
    ok, f = is_alg_closed_up_to(H3, 2)
    assert not ok and render_poly(H3, f) == "X^2+2"


def test_tower(tmp_path):
    H3 = builtin("h3")
    t = closure_tower(H3, 2, 1)
    step = t.steps[0]
    assert t.top.size == 9
    assert step.embedding.classification.kind == FULL
    assert t.composites[0].classification.kind == FULL
    assert evaluate(H3, step.modulus, step.root, step.top, step.embedding) & (1 << step.top.zero)
    assert not t.closed and t.counterexample is not None
    assert t.qualified_name(1, step.root) == "step1:[X]"
    d = t.to_dict()
    assert d["top"]["size"] == 9 and d["steps"][0]["embedding_kind"] == FULL
    mpath = write_tower(t, tmp_path)
    manifest = json.loads(mpath.read_text())
    assert manifest["levels"] == ["step0.msr", "step1.msr"]
    top = parse_structure((tmp_path / "step1.msr").read_text())
    assert top.named_tables() == t.top.named_tables()


def test_roots_survive_a_further_step():
    H3 = builtin("h3")
    t = closure_tower(H3, 2, 1)
    step = t.steps[0]
    nxt = make_quotient(step.top, parse_poly("X+[1]", step.top))
    assert nxt.embedding.classification.kind == FULL
    assert roots_preserved(step, nxt.embedding)
    assert compose(step.embedding, nxt.embedding).classification.kind == FULL


def test_closed_base_needs_no_steps():
    t = closure_tower(builtin("krasner"), 3, 2)
    assert t.steps == [] and t.closed


def test_rootless_reducible_polynomial_in_tower_top():
    # the first rootless quadratic over the top factors into linear terms
    from multikit.polynomials import roots
    from multikit.quotients import factor_witness
    t = closure_tower(builtin("h3"), 2, 1)
    f = t.counterexample
    assert roots(t.top, f) == 0
    g, h = factor_witness(t.top, f)
    assert g.degree == h.degree == 1


@pytest.mark.parametrize("base,modulus", [("f3", "X^2+1"), ("q2", "X^2+1"), ("h3", "X^2+2")])
def test_quotients_are_almost_full_and_algebraic(base, modulus):
    F = builtin(base)
    Q = make_quotient(F, parse_poly(modulus, F))
    K, emb = Q.structure, Q.embedding
    assert is_almost_full(K, F, Q.generator, emb).passed
    assert all(is_algebraic(F, K, t, emb) is not None for t in range(K.size))


def test_l9_almost_full_relative_to_w():
    H3, L9 = builtin("h3"), builtin("l9")
    e = from_mapping(H3, L9, {"0": "0", "1": "1", "2": "2"})
    assert generated_set(H3, L9, L9.index("w"), e) == L9.carrier
    assert is_almost_full(L9, H3, L9.index("w"), e).passed


def test_towers_in_either_order_are_isomorphic():
    from multikit.morphisms import find_isomorphism
    H3 = builtin("h3")
    a = closure_tower(H3, 2, 1)
    b = closure_tower(H3, 2, 1, order="reverse")
    assert render_poly(H3, b.steps[0].modulus) == "2*X^2+1"
    assert find_isomorphism(a.top, b.top) is not None
