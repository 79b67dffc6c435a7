"""Command line front end.  Every command is a thin adapter over the library."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .conformance import CONTRADICTED, conformance_report
from .core import (FiniteSuperring, MultikitError, characteristic, enumerate_ideals, validate)
from .extensions import (closure_tower, eliminate_witness, irr_poly, is_almost_full,
                         write_tower)
from .morphisms import MorphismError, find_isomorphism, parse_map
from .polynomials import (PolyError, division_holds, effective_roots, enumerate_divisions, euclid_divide,
                          evaluate, parse_poly, poly, poly_prod, poly_sum,
                          render_poly, roots)
from .quotients import SATURATED, STRICT, class_inverse, is_irreducible, make_quotient
from .structures import ParseError, builtin, parse_structure, serialize_structure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load(ref: str) -> FiniteSuperring:
    if ref.startswith("builtin:"):
        try:
            return builtin(ref[len("builtin:"):])
        except MultikitError as e:
            raise UsageError(str(e)) from None
    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"no such structure {ref!r} (use builtin:<name> or a .msr path)")
    try:
        return parse_structure(path.read_text(encoding="utf-8"))
    except ParseError as e:
        raise UsageError(f"{ref}: {e}") from None


def _poly(text: str, S: FiniteSuperring):
    try:
        return parse_poly(text, S)
    except (PolyError, MultikitError) as e:
        raise UsageError(f"bad polynomial {text!r}: {e}") from None


def _elem(name: str, S: FiniteSuperring) -> int:
    try:
        return S.index(name)
    except MultikitError:
        raise UsageError(f"unknown element {name!r} in {S.name}") from None


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code, text)


def cmd_validate(a):
    S = load(a.structure)
    rep = validate(S)
    lines = [f"{S.name} ({S.size} elements)"]
    for k, v in rep.verdicts.items():
        w = "" if v.passed or v.witness is None else f"  witness {json.dumps(v.witness, sort_keys=True)}"
        lines.append(f"  {k:22s} {'pass' if v.passed else 'fail'}{w}")
    return rep.to_dict(), EXIT_OK if rep.superring else EXIT_FAIL, "\n".join(lines)


def cmd_char(a):
    S = load(a.structure)
    c = characteristic(S)
    return {"structure": S.name, "characteristic": c}, EXIT_OK, f"char {S.name} = {c}"


def cmd_table(a):
    S = load(a.structure)
    payload = {"structure": S.name, "elements": list(S.names), "zero": S.names[S.zero],
               "one": S.names[S.one], "neg": {S.names[i]: S.names[S.neg[i]] for i in range(S.size)},
               "sum": [[S.names_of(x) for x in row] for row in S.sum_table],
               "prod": [[S.names_of(x) for x in row] for row in S.prod_table]}

    def grid(title, t):
        cells = [["{" + ",".join(S.names_of(x)) + "}" for x in row] for row in t]
        width = max(len(c) for row in cells for c in row + [list(S.names)])
        head = f"{title:>{width}} " + " ".join(f"{n:>{width}}" for n in S.names)
        return [head] + [f"{S.names[i]:>{width}} " + " ".join(f"{c:>{width}}" for c in row)
                         for i, row in enumerate(cells)]

    text = "\n".join(grid("+", S.sum_table) + [""] + grid("*", S.prod_table))
    return payload, EXIT_OK, text


def cmd_ideals(a):
    S = load(a.structure)
    ideals = enumerate_ideals(S)
    rows = [{"members": I.names(S), "prime": I.prime, "strongly_prime": I.strongly_prime,
             "maximal": I.maximal} for I in ideals]
    text = "\n".join("{" + ",".join(r["members"]) + "}" +
                     "".join(f" {k}" for k in ("prime", "strongly_prime", "maximal") if r[k])
                     for r in rows)
    return {"structure": S.name, "ideals": rows}, EXIT_OK, text


def cmd_morphism(a):
    A, B = load(a.domain), load(a.codomain)
    try:
        m = parse_map(a.map, A, B)
    except (MorphismError, MultikitError) as e:
        raise UsageError(f"bad map {a.map!r}: {e}") from None
    c = m.classification
    payload = {"domain": A.name, "codomain": B.name, "map": m.as_dict(), **c.to_dict()}
    text = f"{c.kind} (injective={c.injective}, surjective={c.surjective})"
    if c.witness:
        text += f"\n  witness {json.dumps(c.witness, sort_keys=True)}"
    return payload, EXIT_OK if c.is_morphism else EXIT_FAIL, text


def cmd_iso(a):
    A, B = load(a.left), load(a.right)
    m = find_isomorphism(A, B)
    payload = {"left": A.name, "right": B.name, "isomorphism": None if m is None else m.as_dict()}
    text = "no isomorphism" if m is None else m.render()
    return payload, EXIT_OK if m is not None else EXIT_FAIL, text


def cmd_poly(a):
    S = load(a.structure)
    f = _poly(a.f, S)
    show = lambda p: render_poly(S, p)
    if a.op == "eval":
        if a.arg is None:
            raise UsageError("poly eval needs a point")
        v = evaluate(S, f, _elem(a.arg, S))
        return ({"f": show(f), "point": a.arg, "value": S.names_of(v)}, EXIT_OK,
                "{" + ",".join(S.names_of(v)) + "}")
    if a.op in ("mul", "add"):
        if a.arg is None:
            raise UsageError(f"poly {a.op} needs a second polynomial")
        g = _poly(a.arg, S)
        E = poly_prod(S, f, g) if a.op == "mul" else poly_sum(S, f, g)
        payload = {"f": show(f), "g": show(g), "coefficients": E.render(S), "size": E.size}
        text = " ".join("{" + ",".join(c) + "}" for c in E.render(S)) + f"  ({E.size} members)"
        if E.size <= 64:
            members = [show(p) for p in E.expand(S)]
            payload["members"] = members
            text += "\n" + "\n".join(members)
        return payload, EXIT_OK, text
    if a.op == "div":
        if a.samples:
            return _div_samples(a, S)
        if a.arg is None:
            raise UsageError("poly div needs a divisor")
        g = _poly(a.arg, S)
        d = euclid_divide(S, f, g)
        payload = {"f": show(f), "g": show(g), "q": show(d.q), "r": show(d.r), "route": d.route}
        if a.all:
            payload["all"] = [[show(q), show(r)] for q, r in enumerate_divisions(S, f, g)]
        text = f"q = {show(d.q)}\nr = {show(d.r)}\nroute {d.route}"
        return payload, EXIT_OK, text
    if a.op == "roots":
        r = S.names_of(roots(S, f))
        payload = {"f": show(f), "roots": r}
        text = "roots {" + ",".join(r) + "}"
        if validate(S).superdomain:
            eff = effective_roots(S, f)
            payload["effective_roots"] = {S.names[k]: show(v) for k, v in eff.items()}
            text += "\neffective {" + ",".join(S.names[k] for k in eff) + "}"
        return payload, EXIT_OK, text
    raise UsageError(f"unknown poly operation {a.op!r}")


def _div_samples(a, S):
    rng = random.Random(a.seed)
    D = a.max_degree if a.max_degree is not None else 4
    ok = 0
    for _ in range(a.samples):
        f = poly(S, [rng.randrange(S.size) for _ in range(rng.randint(1, D + 1))])
        g = poly(S, [rng.randrange(S.size) for _ in range(rng.randint(1, D + 1))])
        if g.is_zero:
            g = poly(S, [S.one])
        d = euclid_divide(S, f, g)
        ok += division_holds(S, f, g, d.q, d.r)
    return ({"structure": S.name, "samples": a.samples, "seed": a.seed, "passed": ok},
            EXIT_OK if ok == a.samples else EXIT_FAIL, f"{ok}/{a.samples} divisions verified")


def cmd_irred(a):
    S = load(a.structure)
    p = _poly(a.p, S)
    r = is_irreducible(S, p)
    payload = {"p": render_poly(S, p), "irreducible": r.irreducible, "divisor_check": r.divisor_check,
               "factors": None if r.factors is None else [render_poly(S, x) for x in r.factors]}
    text = "irreducible" if r.irreducible else \
        f"reducible: ({render_poly(S, r.factors[0])})({render_poly(S, r.factors[1])})"
    return payload, EXIT_OK if r.irreducible else EXIT_FAIL, text


def _quotient(a):
    S = load(a.structure)
    p = _poly(a.p, S)
    return S, make_quotient(S, p, mode=a.mode, depth=a.depth)


def cmd_quotient(a):
    S, Q = _quotient(a)
    T = Q.structure
    if a.out:
        Path(a.out).write_text(serialize_structure(T), encoding="utf-8")
    payload = {"base": S.name, "modulus": render_poly(S, Q.modulus), "mode": Q.mode,
               "elements": list(T.names), "embedding": Q.embedding.classification.kind,
               "validation": Q.report.to_dict()}
    text = "\n".join([f"{T.name}: {T.size} classes ({Q.mode})", " ".join(T.names),
                      f"embedding {Q.embedding.classification.kind}",
                      f"superfield {Q.report.superfield}"])
    if a.out:
        text += f"\nwrote {a.out}"
    return payload, EXIT_OK if Q.report.superfield else EXIT_FAIL, text


def cmd_extend(a):
    S, Q = _quotient(a)
    T = Q.structure
    w = Q.generator
    af = is_almost_full(T, S, w, Q.embedding)
    irr = irr_poly(S, T, w, Q.embedding)
    elems = {}
    routes: dict[str, int] = {}
    for t in range(T.size):
        e = eliminate_witness(S, T, w, t, Q.embedding, irr)
        elems[T.names[t]] = {"witness": render_poly(S, e.witness), "route": e.route}
        routes[e.route] = routes.get(e.route, 0) + 1
    inverses = {T.names[c]: T.names[class_inverse(Q, c).witness] for c in range(1, T.size)}
    payload = {"base": S.name, "modulus": render_poly(S, Q.modulus), "size": T.size,
               "root": T.names[w], "irr": render_poly(S, irr),
               "embedding": Q.embedding.classification.kind,
               "almost_full": af.passed, "almost_full_witness": af.witness,
               "witnesses": elems, "routes": routes, "inverses": inverses}
    lines = [f"{T.name}: {T.size} elements, root {T.names[w]}, Irr = {render_poly(S, irr)}",
             f"embedding {Q.embedding.classification.kind}, almost full {af.passed}"]
    lines += [f"  {k}: {v['witness']}  ({v['route']})" for k, v in elems.items()]
    ok = af.passed and Q.embedding.classification.is_full
    return payload, EXIT_OK if ok else EXIT_FAIL, "\n".join(lines)


def cmd_closure(a):
    S = load(a.structure)
    D = 2 if a.max_degree is None else a.max_degree
    steps = 1 if a.max_steps is None else a.max_steps
    T = closure_tower(S, D, steps)
    if a.out:
        write_tower(T, a.out)
    top = T.top
    payload = T.to_dict()
    lines = [f"step {k + 1}: adjoin root of {render_poly(s.base, s.modulus)}, "
             f"{s.top.size} elements, embedding {s.embedding.classification.kind}"
             for k, s in enumerate(T.steps)]
    lines.append(f"top {top.name}: {top.size} elements")
    lines.append(" ".join(payload["top"]["elements"]))
    lines.append(f"closed up to degree {D}: {T.closed}" +
                 ("" if T.counterexample is None else f" (no root: {payload['counterexample']})"))
    return payload, EXIT_OK, "\n".join(lines)


def cmd_conformance(a):
    rep = conformance_report()
    if a.claim:
        try:
            c = rep.by_id(a.claim)
        except KeyError:
            raise UsageError(f"unknown claim {a.claim!r}") from None
        return c.to_dict(), EXIT_FAIL if c.verdict == CONTRADICTED else EXIT_OK, \
            f"[{c.verdict}] {c.id}: {c.statement}"
    return rep.to_dict(), EXIT_OK, rep.to_text().rstrip("\n")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--mode", choices=(STRICT, SATURATED), default=STRICT)
    common.add_argument("--depth", type=int, default=None,
                        help="representative degree bound for saturated mode")
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--max-steps", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="multikit", description="Finite superrings and their extensions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *args, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "structure", help="axiom and class verdicts")
    add("char", cmd_char, "structure", help="characteristic")
    add("table", cmd_table, "structure", help="sum and product tables")
    add("ideals", cmd_ideals, "structure", help="all ideals with primality flags")
    add("morphism", cmd_morphism, "domain", "codomain", "map", help="classify a map a:b,c:d,...")
    add("iso", cmd_iso, "left", "right", help="search for an isomorphism")
    sp = add("poly", cmd_poly, help="polynomial arithmetic")
    sp.add_argument("op", choices=("eval", "add", "mul", "div", "roots"))
    sp.add_argument("structure")
    sp.add_argument("f")
    sp.add_argument("arg", nargs="?")
    sp.add_argument("--all", action="store_true", help="div: list every (q, r)")
    sp.add_argument("--samples", type=int, default=0, help="div: check random divisions instead")
    add("irred", cmd_irred, "structure", "p", help="irreducibility with a factor witness")
    sp = add("quotient", cmd_quotient, "structure", "p", help="build F[X]/<p>")
    sp.add_argument("--out", help="write the quotient as .msr")
    add("extend", cmd_extend, "structure", "p", help="adjoin a root of p and analyse the extension")
    sp = add("closure", cmd_closure, "structure", help="bounded closure tower")
    sp.add_argument("--out", help="directory for the tower manifest")
    sp = add("conformance", cmd_conformance, help="recompute the worked examples")
    sp.add_argument("--claim", help="report one claim; exit 1 if it is contradicted")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code, text = args.fn(args)
    except UsageError as e:
        print(f"multikit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MultikitError as e:
        print(f"multikit: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
