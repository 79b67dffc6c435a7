"""Recomputes the worked examples and records whether each stated claim holds.

Every claim is a pure recomputation.  Claims whose outcome depends on the
quotient product semantics carry one computed value per mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Callable

from .core import characteristic, validate
from .extensions import (eliminate_witness, generated_set, irr_poly, is_alg_closed_up_to,
                         is_almost_full)
from .morphisms import classify_map, find_isomorphism, from_mapping, inclusion
from .polynomials import (effective_roots, iter_polys, iter_polys_upto, parse_poly, poly_neg,
                          poly_prod, poly_sum, render_poly, roots)
from .quotients import SATURATED, STRICT, QuotientError, class_product, make_quotient
from .structures import builtin, load_l9_file, make_hp, product_h

CONFIRMED = "confirmed"
CONTRADICTED = "contradicted"
MODE_DEPENDENT = "mode-dependent"


@dataclass
class Claim:
    id: str
    location: str
    statement: str
    values: dict
    verdict: str

    def to_dict(self) -> dict:
        return {"id": self.id, "location": self.location, "statement": self.statement,
                "values": self.values, "verdict": self.verdict}


@dataclass
class ConformanceReport:
    claims: list[Claim] = field(default_factory=list)

    def by_id(self, cid: str) -> Claim:
        for c in self.claims:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_dict(self) -> dict:
        counts = {CONFIRMED: 0, CONTRADICTED: 0, MODE_DEPENDENT: 0}
        for c in self.claims:
            counts[c.verdict] += 1
        return {"claims": [c.to_dict() for c in self.claims], "summary": counts}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            lines.append(f"[{c.verdict}] {c.id}: {c.statement}")
            lines.append(f"    where: {c.location}")
            for k, v in c.values.items():
                lines.append(f"    {k}: {json.dumps(v, sort_keys=True)}")
        s = self.to_dict()["summary"]
        lines.append(f"{s[CONFIRMED]} confirmed, {s[CONTRADICTED]} contradicted, "
                     f"{s[MODE_DEPENDENT]} mode-dependent")
        return "\n".join(lines) + "\n"


def _verdict(results: list[bool]) -> str:
    if all(results):
        return CONFIRMED
    if not any(results):
        return CONTRADICTED
    return MODE_DEPENDENT


def _universal(results: list[bool]) -> str:
    return CONFIRMED if all(results) else CONTRADICTED


_CLAIMS: list[Callable[[dict], Claim]] = []


def claim(fn):
    _CLAIMS.append(fn)
    return fn


def _h3_quotient(ctx: dict):
    if "Q" not in ctx:
        H3 = builtin("h3")
        ctx["Q"] = make_quotient(H3, parse_poly("X^2+2", H3))
    return ctx["Q"]


@claim
def _builtin_ladder(ctx) -> Claim:
    rep = {n: validate(builtin(n)) for n in ("krasner", "q2", "h3", "h5", "h7", "x1", "f4")}
    x2 = validate(builtin("x2"))
    vals = {n: r.superfield for n, r in rep.items()}
    vals["x2_multiring"] = x2.multiring
    vals["x2_hyperring"] = x2.hyperring
    vals["x2_witness"] = x2["hyperring"].witness
    ok = all(r.superfield for r in rep.values()) and x2.multiring and not x2.hyperring
    return Claim("builtin-classification", "examples of multirings and hyperfields",
                 "K, Q2, Hp, X1 and F4 are superfields; X2 is a multiring but not a hyperring",
                 vals, _universal([ok]))


@claim
def _small_isos(ctx) -> Claim:
    h2k = find_isomorphism(builtin("h2"), builtin("krasner"))
    x1q = find_isomorphism(builtin("x1"), builtin("q2"))
    return Claim("small-identifications", "examples of hyperfields",
                 "H2 is K and X1 is Q2 up to isomorphism",
                 {"h2_k": h2k.render() if h2k else None, "x1_q2": x1q.render() if x1q else None},
                 _universal([h2k is not None, x1q is not None]))


@claim
def _characteristics(ctx) -> Claim:
    vals = {n: characteristic(builtin(n)) for n in ("krasner", "h5", "q2", "f5")}
    return Claim("characteristics", "characteristic examples",
                 "char K = 2, char H5 = 2, char Q2 = 0, char F5 = 5",
                 vals, _universal([vals == {"krasner": 2, "h5": 2, "q2": 0, "f5": 5}]))


@claim
def _krasner_closed(ctx) -> Claim:
    ok, cx = is_alg_closed_up_to(builtin("krasner"), 6)
    return Claim("krasner-closed", "roots in hyperfields",
                 "K is algebraically closed (checked up to degree 6)",
                 {"closed_up_to_6": ok}, _universal([ok]))


@claim
def _nonclosed(ctx) -> Claim:
    vals, ok = {}, []
    for n, expect in (("q2", "X^2+1"), ("h3", "X^2+2")):
        S = builtin(n)
        closed, cx = is_alg_closed_up_to(S, 2)
        vals[n] = None if cx is None else render_poly(S, cx)
        ok.append(vals[n] == expect)
    return Claim("first-rootless-quadratics", "quadratic extensions of H3",
                 "Q2 has no root of X^2+1 and H3 has no root of X^2+2; these are the first rootless polynomials",
                 vals, _universal(ok))


@claim
def _l9(ctx) -> Claim:
    L = product_h(builtin("h3"), builtin("h5"))
    F = load_l9_file()
    one = L.index("(1,1)")
    rep = validate(L)
    vals = {"size": L.size, "one_plus_one_is_all": L.names_of(L.sum_table[one][one]) == list(L.names),
            "file_matches_construction": F.named_tables() == builtin("l9").named_tables(),
            "superfield": rep.superfield}
    return Claim("l9-construction", "quadratic extensions of H3",
                 "H3 x_h H5 has 9 elements and 1+1 is the whole structure",
                 vals, _universal([vals["size"] == 9, vals["one_plus_one_is_all"],
                                   vals["file_matches_construction"]]))


@claim
def _l9_morphism(ctx) -> Claim:
    H3, L = builtin("h3"), builtin("l9")
    i = from_mapping(H3, L, {"0": "0", "1": "1", "2": "2"})
    k = classify_map(i)
    kq = classify_map(inclusion(builtin("krasner"), builtin("q2")))
    return Claim("named-morphisms", "quadratic extensions of H3; examples of extensions",
                 "x -> (1, x^2) is a morphism H3 -> L9 and the inclusion K -> Q2 is not",
                 {"h3_to_l9": k.kind, "k_to_q2": kq.kind, "k_to_q2_witness": kq.witness},
                 _universal([k.is_morphism, not kq.is_morphism]))


@claim
def _hp_inclusions(ctx) -> Claim:
    vals, ok = {}, []
    for p, q in ((2, 3), (2, 5), (3, 5), (3, 7), (5, 7)):
        m = classify_map(inclusion(make_hp(p), make_hp(q)))
        vals[f"H{p}->H{q}"] = {"kind": m.kind, "witness": m.witness}
        ok.append(m.kind == "morphism")
    return Claim("hp-inclusion-morphism", "examples of extensions",
                 "for primes p < q the inclusion Hp -> Hq is a morphism that is not full",
                 vals, _universal(ok))


@claim
def _quotient_shape(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    S = Q.structure
    w = Q.generator
    H3 = Q.base
    X2p2 = evaluate_names(Q, "X^2+2", w)
    u = Q.parse_class("[1+X]")
    X2p1 = evaluate_names(Q, "X^2+1", u)
    vals = {"size": S.size, "superfield": Q.report.superfield,
            "embedding": Q.embedding.classification.kind,
            "X^2+2 at [X]": X2p2, "X^2+1 at [1+X]": X2p1}
    return Claim("h3-quotient", "quadratic extensions of H3",
                 "H3(X^2+2) has 9 classes, [X] is a root of X^2+2, [1+X] is a root of X^2+1 and the extension is full",
                 vals, _universal([S.size == 9, "[0]" in X2p2, "[0]" in X2p1,
                                   Q.embedding.classification.is_full]))


def evaluate_names(Q, text: str, point: int) -> list[str]:
    from .polynomials import evaluate
    f = parse_poly(text, Q.base)
    return Q.structure.names_of(evaluate(Q.base, f, point, Q.structure, Q.embedding))


@claim
def _unit_square(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    H3 = Q.base
    p = Q.modulus
    f = parse_poly("1+X", H3)
    nonzero = sorted(Q.structure.names[i] for i in range(1, Q.structure.size))
    vals, ok = {}, []
    for mode in (STRICT, SATURATED):
        got = sorted(class_product(H3, p, f, f, mode), key=lambda c: Q.class_of(c))
        names = [Q.name(Q.class_of(c)) for c in got]
        vals[mode] = {"classes": names, "count": len(names)}
        ok.append(sorted(names) == nonzero)
    try:
        make_quotient(H3, p, mode=SATURATED)
        vals["saturated_structure"] = "superring"
    except QuotientError as e:
        vals["saturated_structure"] = str(e)
    return Claim("quotient-unit-square", "quadratic extensions of H3",
                 "[1+X][1+X] is the set of all nonzero classes",
                 vals, _verdict(ok))


@claim
def _not_hyperfield(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    f = parse_poly("1+X", Q.base)
    sizes = {mode: len(class_product(Q.base, Q.modulus, f, f, mode)) for mode in (STRICT, SATURATED)}
    return Claim("quotient-not-hyperfield", "quadratic extensions of H3",
                 "H3(X^2+2) is not a hyperfield because [1+X][1+X] has several elements",
                 sizes, _universal([v >= 2 for v in sizes.values()]))


@claim
def _irr(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    H3 = Q.base
    irr = irr_poly(H3, Q.structure, Q.generator, Q.embedding)
    L = builtin("l9")
    i = from_mapping(H3, L, {"0": "0", "1": "1", "2": "2"})
    irr_l = irr_poly(H3, L, L.index("w"), i)
    vals = {"quotient": render_poly(H3, irr), "l9_omega": render_poly(H3, irr_l)}
    return Claim("irr-sqrt2", "quadratic extensions of H3",
                 "the minimal polynomial of the square root of 2 over H3 is X^2+2",
                 vals, _universal([vals["quotient"] == "X^2+2", irr_l.degree == 2]))


@claim
def _not_iso(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    m = find_isomorphism(Q.structure, builtin("l9"))
    return Claim("quotient-vs-l9", "quadratic extensions of H3",
                 "H3(X^2+2) is not isomorphic to H3 x_h H5",
                 {"isomorphism": None if m is None else m.render()}, _universal([m is None]))


@claim
def _generated(ctx) -> Claim:
    H2 = builtin("h2")
    vals, ok = {}, []
    for q in ("h3", "h5"):
        S = builtin(q)
        g = generated_set(H2, S, S.index("2"), inclusion(H2, S))
        vals[q] = S.names_of(g)
        ok.append(g == S.carrier)
    return Claim("generated-sets", "generated sets",
                 "H2[2, H3] = H3 and H2[2, H5] = H5",
                 vals, _universal(ok))


@claim
def _almost_full(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    r = is_almost_full(Q.structure, Q.base, Q.generator, Q.embedding)
    return Claim("quotient-almost-full", "quotients are almost full",
                 "H3(X^2+2) is almost full relative to [X]",
                 {"passed": r.passed, "witness": r.witness}, _universal([r.passed]))


@claim
def _elimination(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    S = Q.structure
    vals, ok = {}, []
    for t in range(S.size):
        e = eliminate_witness(Q.base, S, Q.generator, t, Q.embedding)
        vals[S.names[t]] = {"witness": render_poly(Q.base, e.witness), "route": e.route}
        ok.append(e.witness.degree <= 8)
    return Claim("algebraic-witnesses", "almost full extensions are algebraic",
                 "every element of H3(X^2+2) is algebraic over H3",
                 vals, _universal(ok))


def _binom_rhs(K, a: int, bg: int, n: int) -> int:
    terms = []
    for j in range(n + 1):
        t = K.prodset(K.power(1 << a, j), K.power(bg, n - j))
        terms.append(K.multiple(comb(n, j), t))
    return K.nary_sum(terms)


@claim
def _binomial(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    S, F, emb, g = Q.structure, Q.base, Q.embedding, Q.generator
    vals, eq_ok = {}, []
    counts = {"equal": 0, "left_in_right": 0, "right_in_left": 0, "cases": 0}
    first_strict = None
    for n in (2, 3):
        for a in range(F.size):
            for b in range(F.size):
                ia, ib = emb.images[a], emb.images[b]
                bg = S.prod_table[ib][g]
                lhs = S.power(S.sumset(1 << ia, bg), n)
                rhs = _binom_rhs(S, ia, bg, n)
                counts["cases"] += 1
                counts["equal"] += lhs == rhs
                counts["left_in_right"] += lhs & ~rhs == 0
                counts["right_in_left"] += rhs & ~lhs == 0
                if lhs != rhs and first_strict is None:
                    first_strict = {"a": F.names[a], "b": F.names[b], "n": n,
                                    "lhs": S.names_of(lhs), "rhs": S.names_of(rhs)}
    vals[STRICT] = {**counts, "first_inequality": first_strict}
    eq_ok.append(counts["equal"] == counts["cases"])
    try:
        make_quotient(F, Q.modulus, mode=SATURATED)
        vals[SATURATED] = "not evaluated"
    except QuotientError as e:
        vals[SATURATED] = f"no structure: {e}"
    return Claim("almost-full-binomial", "binomial formula in almost full extensions",
                 "(a + b g)^n equals the binomial sum as sets in H3(X^2+2), n = 2, 3",
                 vals, _verdict(eq_ok))


@claim
def _sign_display(ctx) -> Claim:
    vals, ok = {}, []
    for n in ("krasner", "q2", "h3", "h5"):
        S = builtin(n)
        bad = []
        for a in range(S.size):
            for b in range(S.size):
                shown = S.sum_table[a][S.neg[b]]
                conv = S.sum_table[S.neg[a]][S.neg[b]]
                if shown != conv:
                    bad.append([S.names[a], S.names[b]])
        vals[n] = {"mismatches": len(bad), "first": bad[0] if bad else None}
        ok.append(not bad)
    return Claim("factor-sign-display", "polynomial products of linear factors",
                 "the linear coefficient of (x-a)(x-b) is a-b",
                 vals, _universal(ok))


@claim
def _effective_vs_roots(ctx) -> Claim:
    vals, ok = {}, []
    for n in ("krasner", "q2", "h3", "h5"):
        S = builtin(n)
        checked = bad = 0
        for d in (1, 2):
            for f in iter_polys(S, d):
                eff = effective_roots(S, f)
                r = roots(S, f)
                checked += 1
                if any(not (r >> a) & 1 for a in eff):
                    bad += 1
        vals[n] = {"polynomials": checked, "effective_not_root": bad}
        ok.append(bad == 0)
    return Claim("effective-roots-are-roots", "roots and effective roots",
                 "every effective root is a root (degree <= 2)",
                 vals, _universal(ok))


@claim
def _linear_product(ctx) -> Claim:
    H3 = builtin("h3")
    E = poly_prod(H3, parse_poly("X+1", H3), parse_poly("X+2", H3))
    return Claim("h3-linear-product", "polynomial products",
                 "(X+1)(X+2) over H3 is {X^2+X+2, X^2+2X+2}",
                 {"envelope": E.render(H3)},
                 _universal([[render_poly(H3, p) for p in E.expand(H3)] == ["X^2+X+2", "X^2+2*X+2"]]))


@claim
def _sum_degrees(ctx) -> Claim:
    vals, ok = {}, []
    for n in ("krasner", "q2", "h3", "h5"):
        S = builtin(n)
        pairs = below = above = 0
        first = None
        for f in iter_polys_upto(S, 2, include_zero=False):
            for g in iter_polys_upto(S, 2, include_zero=False):
                if f == poly_neg(S, g):
                    continue
                pairs += 1
                lo, hi = min(f.degree, g.degree), max(f.degree, g.degree)
                degs = poly_sum(S, f, g).degrees(S)
                if max(degs) > hi:
                    above += 1
                if min(degs) < lo:
                    below += 1
                    if first is None:
                        first = {"f": render_poly(S, f), "g": render_poly(S, g),
                                 "member_degree": min(degs)}
        vals[n] = {"pairs": pairs, "above_max": above, "below_min": below, "first_below": first}
        ok.append(above == 0 and below == 0)
    return Claim("sum-degree-bounds", "degrees of sums and products",
                 "every member of f+g with f != -g has degree between min and max of the degrees",
                 vals, _universal(ok))


@claim
def _linear_multiplier(ctx) -> Claim:
    Q = _h3_quotient(ctx)
    K, img, g = Q.structure, Q.embedding.images, 1 << Q.generator

    def combo(cs) -> int:
        return K.nary_sum([K.prodset(1 << img[a], K.power(g, i)) for i, a in enumerate(cs)])

    cases = equal = contained = 0
    first = None
    F = Q.base
    for n in (1, 2, 3):
        for cs in product(range(F.size), repeat=n):
            A = combo(cs)
            for b, c in product(range(F.size), repeat=2):
                lhs = K.prodset(combo([b, c]), A)
                rhs = K.sumset(K.prodset(1 << img[b], A), K.prodset(K.prodset(1 << img[c], g), A))
                cases += 1
                equal += lhs == rhs
                contained += lhs & ~rhs == 0
                if lhs != rhs and first is None:
                    first = {"A": [F.names[a] for a in cs], "b": F.names[b], "c": F.names[c],
                             "lhs": K.names_of(lhs), "rhs": K.names_of(rhs)}
    return Claim("linear-multiplier", "quotient class products; almost full extensions",
                 "(b + c g) A = b A + c g A for A = a0 + a1 g + ... with g the class of X in H3(X^2+2)",
                 {"cases": cases, "equal": equal, "lhs_in_rhs": contained, "first_unequal": first},
                 _universal([equal == cases]))


def conformance_report() -> ConformanceReport:
    ctx: dict = {}
    return ConformanceReport([fn(ctx) for fn in _CLAIMS])
