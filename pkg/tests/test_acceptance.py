"""Acceptance criteria 1-14.

Each check prints one line: criterion number, PASS/FAIL, elapsed time and
its time limit.  Run directly (``python3 tests/test_acceptance.py``) for
the table alone, or through pytest.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from l9_tables import printed_products, printed_sums  # noqa: E402
from morphism_facts import check_full_morphism_facts  # noqa: E402
from multikit.conformance import conformance_report  # noqa: E402
from multikit.core import characteristic, validate  # noqa: E402
from multikit.extensions import (closure_tower, eliminate_witness, is_alg_closed_up_to,  # noqa: E402
                                 irr_poly)
from multikit.morphisms import (FULL, MORPHISM, NOT_MORPHISM, classify_map,  # noqa: E402
                                find_isomorphism, from_mapping, inclusion)
from multikit.polynomials import (division_holds, euclid_divide, evaluate, iter_polys,  # noqa: E402
                                  parse_poly, poly, poly_neg, poly_prod, poly_sum,
                                  render_poly)
from multikit.quotients import (SATURATED, STRICT, class_inverse, class_product,  # noqa: E402
                                make_quotient, principal_membership, reduce)
from multikit.structures import L9_ALIASES, builtin, make_hp, product_h  # noqa: E402


def _h3q():
    H3 = builtin("h3")
    return make_quotient(H3, parse_poly("X^2+2", H3))


def c1():
    names = ["krasner", "q2", "h3", "h5", "h7", "x1", "f4"]
    reps = {n: validate(builtin(n)) for n in names}
    ok = all(reps[n].superfield for n in ["krasner", "q2", "h3", "h5", "h7", "x1"])
    ok &= reps["f4"].superfield and builtin("f4").is_strict()
    ok &= find_isomorphism(builtin("x1"), builtin("q2")) is not None
    x2 = validate(builtin("x2"))
    w = x2["hyperring"].witness
    ok &= x2.multiring and not x2.hyperring and set(w["lhs"]) == {"-2", "0", "2"}
    return ok, "K, Q2, H3, H5, H7, X1, F4 superfields; X1 = Q2; X2 witness {-2,0,2}"


def c2():
    S = product_h(builtin("h3"), builtin("h5"), aliases=L9_ALIASES)
    bad = 0
    for (a, b), cell in printed_sums().items():
        for x, y in ((a, b), (b, a)):
            bad += set(S.names_of(S.sum_table[S.index(x)][S.index(y)])) != cell
    for (a, b), cell in printed_products().items():
        bad += set(S.names_of(S.prod_table[S.index(a)][S.index(b)])) != cell
    one, two = S.index("1"), S.index("2")
    full = S.sum_table[one][one] == S.carrier == S.sum_table[two][two]
    n = len(printed_sums()) + len(printed_products())
    return bad == 0 and full, f"{n} printed cells, {bad} mismatches, 1+1 = 2+2 = L"


def c3():
    K = builtin("krasner")
    count = sum(1 for d in range(1, 7) for _ in iter_polys(K, d))
    ok, f = is_alg_closed_up_to(K, 6)
    return ok and count == 126, f"{count} non-constant polynomials, all with a root"


def c4():
    Q, H = builtin("q2"), builtin("h3")
    okq, fq = is_alg_closed_up_to(Q, 2)
    okh, fh = is_alg_closed_up_to(H, 2)
    got = (render_poly(Q, fq), render_poly(H, fh))
    return not okq and not okh and got == ("X^2+1", "X^2+2"), f"Q2 fails at {got[0]}, H3 at {got[1]}"


def c5():
    Q = _h3q()
    F, S = Q.base, Q.structure
    z = 1 << S.zero
    ok = S.size == 9
    ok &= bool(evaluate(F, parse_poly("X^2+2", F), Q.generator, S, Q.embedding) & z)
    u = Q.parse_class("[1+X]")
    ok &= bool(evaluate(F, parse_poly("X^2+1", F), u, S, Q.embedding) & z)
    sizes = {m: len(class_product(F, Q.modulus, Q.classes[u], Q.classes[u], m)) for m in (STRICT, SATURATED)}
    ok &= all(v >= 2 for v in sizes.values())
    ok &= all(class_inverse(Q, c).scan for c in S.nonzero())
    zd = sum(1 for a in range(9) for b in range(9)
             if S.prod_table[a][b] & z and a != S.zero and b != S.zero)
    return ok and zd == 0, f"9 classes, |[1+X]^2| = {sizes}, inverses for all, 81 pairs without zero divisors"


def _rand(S, rng, max_degree=4):
    d = rng.randint(0, max_degree)
    return poly(S, [rng.randrange(S.size) for _ in range(d)] + [rng.choice(S.nonzero())])


def c6():
    total = passed = 0
    routes = {}
    for n in ["krasner", "q2", "h3", "h5"]:
        S = builtin(n)
        rng = random.Random(f"euclid-{n}")
        for _ in range(1000):
            f = _rand(S, rng) if rng.random() > 0.05 else poly(S, [])
            g = _rand(S, rng)
            d = euclid_divide(S, f, g)
            total += 1
            passed += division_holds(S, f, g, d.q, d.r)
            routes[d.route] = routes.get(d.route, 0) + 1
    return passed == total, f"{passed}/{total} divisions verified, routes {routes}"


def _degree_samples():
    prods = sums = prod_ok = upper_ok = lower_ok = 0
    for n in ["krasner", "q2", "h3", "h5"]:
        S = builtin(n)
        rng = random.Random(f"degree-{n}")
        for _ in range(250):
            f, g = _rand(S, rng), _rand(S, rng)
            prods += 1
            prod_ok += poly_prod(S, f, g).degrees(S) == {f.degree + g.degree}
            if f == poly_neg(S, g):
                continue
            degs = poly_sum(S, f, g).degrees(S)
            sums += 1
            upper_ok += max(degs) <= max(f.degree, g.degree)
            lower_ok += min(degs) >= min(f.degree, g.degree)
    return prods, prod_ok, sums, upper_ok, lower_ok


def c7():
    prods, prod_ok, sums, upper_ok, _ = _degree_samples()
    ok = prod_ok == prods and upper_ok == sums
    return ok, f"products {prod_ok}/{prods} exact degree; sums {upper_ok}/{sums} within the max degree"


def c7_lower():
    _, _, sums, _, lower_ok = _degree_samples()
    return lower_ok == sums, f"sums {lower_ok}/{sums} at or above the min degree (cancellation breaks it)"


def c8():
    total, fails = 0, 0
    for base, mod in (("krasner", "X+1"), ("h3", "X^2+2")):
        F = builtin(base)
        f = make_quotient(F, parse_poly(mod, F)).embedding
        n, bad = check_full_morphism_facts(f, max_len=3)
        total += n
        fails += len(bad)
    return fails == 0, f"{total - fails}/{total} identity instances hold"


def c9():
    Q = _h3q()
    F, K, emb = Q.base, Q.structure, Q.embedding
    irr = irr_poly(F, K, Q.generator, emb)
    routes = {}
    ok = True
    for t in range(K.size):
        e = eliminate_witness(F, K, Q.generator, t, emb, irr)
        ok &= e.witness.degree <= 8 and bool(evaluate(F, e.witness, t, K, emb) & (1 << K.zero))
        routes[e.route] = routes.get(e.route, 0) + 1
    fallback = routes.get("search", 0)
    return ok and sum(routes.values()) == 9, \
        f"9/9 witnessed; constructive {9 - fallback}, fallback {fallback}; routes {routes}"


def c10():
    H3 = builtin("h3")
    t = closure_tower(H3, 2, 1)
    s = t.steps[0]
    ok = t.top.size == 9 and s.embedding.classification.kind == FULL
    ok &= all(c.classification.kind == FULL for c in t.composites)
    ok &= bool(evaluate(H3, s.modulus, s.root, s.top, s.embedding) & (1 << s.top.zero))
    return ok, f"top has {t.top.size} elements, adjoined root of {render_poly(H3, s.modulus)}"


def c11():
    a = find_isomorphism(builtin("h2"), builtin("krasner"))
    b = find_isomorphism(_h3q().structure, builtin("l9"))
    return a is not None and b is None, "H2 = K; H3(X^2+2) not isomorphic to L9"


def c12():
    H3, L9 = builtin("h3"), builtin("l9")
    i = from_mapping(H3, L9, {"0": "0", "1": "1", "2": "2"})
    k = classify_map(i).kind
    kq = classify_map(inclusion(builtin("krasner"), builtin("q2"))).kind
    chars = {n: characteristic(builtin(n)) for n in ("krasner", "h5", "q2", "f5")}
    ok = k == MORPHISM and kq == NOT_MORPHISM and chars == {"krasner": 2, "h5": 2, "q2": 0, "f5": 5}
    return ok, f"x -> (1,x^2): {k}; K -> Q2: {kq}; chars {chars}"


def c13():
    H3 = builtin("h3")
    p = parse_poly("X^2+2", H3)
    one_in = principal_membership(H3, parse_poly("1", H3), p, mode="sum")
    red = sorted(render_poly(H3, r) for r in reduce(H3, parse_poly("X^2+X+1", H3), p))
    return one_in and red == ["X+1", "X+2"], f"1 in sum-closed ideal: {one_in}; reduce -> {red}"


def c14():
    a, b = conformance_report(), conformance_report()
    stable = a.to_json() == b.to_json()
    wanted = ["quotient-unit-square", "hp-inclusion-morphism", "almost-full-binomial",
              "factor-sign-display"]
    verdicts = {c: a.by_id(c).verdict for c in wanted}
    modes = all(m in str(a.by_id(c).values) for c in ("quotient-unit-square", "almost-full-binomial")
                for m in (STRICT, SATURATED))
    return stable and modes, f"byte-stable {stable}; verdicts {verdicts}"


CRITERIA = [
    (1, "builtin classification", c1, 1),
    (2, "L9 reproduction", c2, 1),
    (3, "Krasner closure", c3, 1),
    (4, "negative closure witnesses", c4, 1),
    (5, "H3(X^2+2) structure", c5, 5),
    (6, "Euclid property suite", c6, 30),
    (7, "degree suite", c7, 30),
    (8, "full-morphism facts", c8, 30),
    (9, "witness elimination", c9, 30),
    (10, "tower and embeddings", c10, 5),
    (11, "isomorphism results", c11, 60),
    (12, "morphism claims", c12, 1),
    (13, "semantics anchors", c13, 1),
    (14, "conformance report", c14, 60),
]


def run_criterion(num, label, fn, limit):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    ok = ok and dt < limit
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {dt:6.2f}s (limit {limit}s)  {label}: {detail}"
    return ok, line


@pytest.mark.parametrize("num,label,fn,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, label, fn, limit, capsys):
    ok, line = run_criterion(num, label, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


@pytest.mark.xfail(strict=True, reason="lower sum-degree bound fails under cancellation; see ledger")
def test_criterion_7_lower_sum_bound(capsys):
    ok, line = _lower_line()
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def _lower_line():
    t = time.perf_counter()
    ok, detail = c7_lower()
    dt = time.perf_counter() - t
    return ok, f"criterion  7 (lower sum bound as stated) {'PASS' if ok else 'FAIL'}  {dt:6.2f}s (limit 30s)  {detail}"


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    lower_ok, lower_line = _lower_line()
    print(lower_line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
