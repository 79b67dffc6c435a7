"""Builtin structures, the H-product, and the ``.msr`` table file format."""

from __future__ import annotations

import re
from importlib import resources
from itertools import product as cartesian
from typing import Mapping

from .core import FiniteSuperring, MultikitError, StructureError, bits, mask_of, validate


class ParseError(MultikitError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _from_functions(name, names, add, mul, neg, zero=0, one=1) -> FiniteSuperring:
    """Build tables from index-level functions returning index iterables."""
    n = len(names)
    sums = [[mask_of(add(a, b)) for b in range(n)] for a in range(n)]
    prods = [[mask_of(mul(a, b)) for b in range(n)] for a in range(n)]
    return FiniteSuperring(name, names, sums, prods, [neg(a) for a in range(n)], zero, one)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def make_krasner() -> FiniteSuperring:
    """Krasner hyperfield ``{0, 1}`` with ``1 + 1 = {0, 1}``."""
    return make_hp(2).relabel(("0", "1"), "K")


def make_hp(p: int) -> FiniteSuperring:
    """``H_p``: product mod p, ``a + a`` is everything, ``a + b = {a, b}``."""
    if not _is_prime(p):
        raise MultikitError(f"H_p needs a prime, got {p}")

    def add(a, b):
        if a == 0:
            return [b]
        if b == 0:
            return [a]
        if a == b:
            return range(p)
        return [a, b]

    return _from_functions(f"H{p}", [str(i) for i in range(p)], add,
                           lambda a, b: [a * b % p], lambda a: a)


def make_kaleidoscope(n: int) -> FiniteSuperring:
    """The n-kaleidoscope on ``{-n..n}``, ordered ``0, 1, -1, 2, -2, ...``."""
    if n < 0:
        raise MultikitError("kaleidoscope order must be >= 0")
    values = [0]
    for k in range(1, n + 1):
        values += [k, -k]
    pos = {v: i for i, v in enumerate(values)}

    def add(i, j):
        a, b = values[i], values[j]
        if b == -a:
            return [pos[v] for v in range(-abs(a), abs(a) + 1)]
        if abs(b) <= abs(a):
            return [i]
        return [j]

    def mul(i, j):
        a, b = values[i], values[j]
        if a == 0 or b == 0:
            return [pos[0]]
        sign = 1 if a * b > 0 else -1
        return [pos[sign * max(abs(a), abs(b))]]

    one = pos[1] if n >= 1 else 0
    S = _from_functions(f"X{n}", [str(v) for v in values], add, mul,
                        lambda i: pos[-values[i]], 0, one)
    return S


def make_q2() -> FiniteSuperring:
    """Sign hyperfield ``{0, 1, -1}``."""
    return make_kaleidoscope(1).relabel(("0", "1", "-1"), "Q2")


# modulus polynomials (low degree first) with a primitive root for each field
_EXTENSION_FIELDS = {4: (2, (1, 1, 1), "w"), 8: (2, (1, 1, 0, 1), "w"), 9: (3, (2, 1, 1), "g")}


def make_strict(q: int) -> FiniteSuperring:
    """The finite field of order ``q`` as a singleton-valued superring."""
    if q in (2, 3, 5, 7):
        S = _from_functions(f"F{q}", [str(i) for i in range(q)],
                            lambda a, b: [(a + b) % q], lambda a, b: [a * b % q],
                            lambda a: -a % q)
        return S
    if q not in _EXTENSION_FIELDS:
        raise MultikitError(f"unsupported field order {q}")
    p, modulus, letter = _EXTENSION_FIELDS[q]
    deg = len(modulus) - 1

    def mulx(v):
        # multiply a coefficient vector by x and reduce by the monic modulus
        top = v[-1]
        shifted = (0,) + v[:-1]
        return tuple((shifted[i] - top * modulus[i]) % p for i in range(deg))

    powers = [(1,) + (0,) * (deg - 1)]
    while len(powers) < q - 1:
        powers.append(mulx(powers[-1]))
    vecs = [(0,) * deg] + powers
    if len(set(vecs)) != q:
        raise StructureError(f"modulus for F{q} is not primitive")
    pos = {v: i for i, v in enumerate(vecs)}
    names = ["0", "1"] + [letter if k == 1 else f"{letter}{k}" for k in range(1, q - 1)]

    def add(i, j):
        return [pos[tuple((x + y) % p for x, y in zip(vecs[i], vecs[j]))]]

    def mul(i, j):
        if i == 0 or j == 0:
            return [0]
        return [1 + ((i - 1) + (j - 1)) % (q - 1)]

    return _from_functions(f"F{q}", names, add, mul,
                           lambda i: pos[tuple(-x % p for x in vecs[i])])


L9_ALIASES = {
    "(1,1)": "1", "(2,1)": "a",
    "(1,2)": "w", "(2,2)": "b",
    "(1,3)": "2w", "(2,3)": "c",
    "(1,4)": "2", "(2,4)": "d",
}


def product_h(F: FiniteSuperring, G: FiniteSuperring,
              aliases: Mapping[str, str] | None = None,
              check: bool = True) -> FiniteSuperring:
    """H-product of two superfields on ``(F* x G*) + {0}``.

    Products are componentwise. For nonzero ``x, y`` the sum contains every
    nonzero pair ``(z1, z2)`` with ``z1 in x1+y1``, ``z2 in x2+y2``, and
    contains 0 exactly when both component sums contain 0.
    """
    if check:
        for S in (F, G):
            if not validate(S).superfield:
                raise MultikitError(f"{S.name} is not a superfield")
    fz = [a for a in range(F.size) if a != F.zero]
    gz = [b for b in range(G.size) if b != G.zero]
    pairs = [None] + list(cartesian(fz, gz))
    pos = {pq: i for i, pq in enumerate(pairs)}
    names = ["0"] + [f"({F.names[a]},{G.names[b]})" for a, b in pairs[1:]]
    if aliases:
        names = [aliases.get(nm, nm) for nm in names]

    def lift(m1, m2):
        return [pos[(a, b)] for a in bits(m1) if a != F.zero
                for b in bits(m2) if b != G.zero]

    def add(i, j):
        if i == 0:
            return [j]
        if j == 0:
            return [i]
        (a1, b1), (a2, b2) = pairs[i], pairs[j]
        s1, s2 = F.sum_table[a1][a2], G.sum_table[b1][b2]
        out = lift(s1, s2)
        if (s1 >> F.zero) & 1 and (s2 >> G.zero) & 1:
            out.append(0)
        return out

    def mul(i, j):
        if i == 0 or j == 0:
            return [0]
        (a1, b1), (a2, b2) = pairs[i], pairs[j]
        return lift(F.prod_table[a1][a2], G.prod_table[b1][b2])

    def neg(i):
        if i == 0:
            return 0
        a, b = pairs[i]
        return pos[(F.neg[a], G.neg[b])]

    return _from_functions(f"{F.name}xh{G.name}", names, add, mul, neg,
                           0, pos[(F.one, G.one)])


def make_l9() -> FiniteSuperring:
    """``H3 xh H5`` with the element names 0, 1, 2, w, 2w, a, b, c, d."""
    S = product_h(make_hp(3), make_hp(5), aliases=L9_ALIASES)
    return S.relabel(S.names, "L9")


def load_l9_file() -> FiniteSuperring:
    """Parse the shipped hand-transcribed table file for L9."""
    text = resources.files("multikit").joinpath("data/l9.msr").read_text(encoding="utf-8")
    return parse_structure(text)


BUILTINS = {
    "krasner": make_krasner,
    "k": make_krasner,
    "q2": make_q2,
    "h2": lambda: make_hp(2),
    "h3": lambda: make_hp(3),
    "h5": lambda: make_hp(5),
    "h7": lambda: make_hp(7),
    "x1": lambda: make_kaleidoscope(1),
    "x2": lambda: make_kaleidoscope(2),
    "x3": lambda: make_kaleidoscope(3),
    "f2": lambda: make_strict(2),
    "f3": lambda: make_strict(3),
    "f4": lambda: make_strict(4),
    "f5": lambda: make_strict(5),
    "f7": lambda: make_strict(7),
    "f8": lambda: make_strict(8),
    "f9": lambda: make_strict(9),
    "l9": make_l9,
}


def builtin(name: str) -> FiniteSuperring:
    try:
        return BUILTINS[name.lower()]()
    except KeyError:
        raise MultikitError(
            f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}") from None


# ---------------------------------------------------------------------------
# .msr text format

_TOKEN = re.compile(r"\S+")
_BAD_NAME = re.compile(r"[#:]")


def serialize_structure(S: FiniteSuperring) -> str:
    nm = S.names
    lines = [f"name {S.name}", "elements " + " ".join(nm), f"zero {nm[S.zero]}",
             f"one {nm[S.one]}"]
    if all(S.neg[a] == a for a in range(S.size)):
        lines.append("neg identity")
    else:
        lines += [f"neg {nm[a]} {nm[S.neg[a]]}" for a in range(S.size)]
    for label, table in (("sum", S.sum_table), ("prod", S.prod_table)):
        for a in range(S.size):
            for b in range(a, S.size):
                lines.append(f"{label} {nm[a]} {nm[b]} : " + " ".join(S.names_of(table[a][b])))
    return "\n".join(lines) + "\n"


def parse_structure(text: str) -> FiniteSuperring:
    """Parse ``.msr`` text. Unordered pairs are completed by commutativity."""
    name = None
    names: list[str] | None = None
    index: dict[str, int] = {}
    zero = one = None
    neg: dict[int, int] = {}
    neg_identity = False
    tables = {"sum": {}, "prod": {}}

    def elem(tok, ln, col):
        if names is None:
            raise ParseError("'elements' must come before use of element names", ln, col)
        if tok not in index:
            raise ParseError(f"undeclared element {tok!r}", ln, col)
        return index[tok]

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        kw, kcol = toks[0]
        args = toks[1:]
        if kw == "name":
            if len(args) != 1:
                raise ParseError("expected 'name <ident>'", ln, kcol)
            name = args[0][0]
        elif kw == "elements":
            if names is not None:
                raise ParseError("duplicate 'elements' line", ln, kcol)
            if not args:
                raise ParseError("empty element list", ln, kcol)
            names = []
            for tok, col in args:
                if _BAD_NAME.search(tok):
                    raise ParseError(f"invalid element name {tok!r}", ln, col)
                if tok in index:
                    raise ParseError(f"element {tok!r} declared twice", ln, col)
                index[tok] = len(names)
                names.append(tok)
        elif kw in ("zero", "one"):
            if len(args) != 1:
                raise ParseError(f"expected '{kw} <ident>'", ln, kcol)
            v = elem(args[0][0], ln, args[0][1])
            if kw == "zero":
                zero = v
            else:
                one = v
        elif kw == "neg":
            if len(args) == 1 and args[0][0] == "identity":
                neg_identity = True
            elif len(args) == 2:
                a = elem(args[0][0], ln, args[0][1])
                if a in neg:
                    raise ParseError(f"duplicate neg entry for {args[0][0]!r}", ln, kcol)
                neg[a] = elem(args[1][0], ln, args[1][1])
            else:
                raise ParseError("expected 'neg <a> <b>' or 'neg identity'", ln, kcol)
        elif kw in ("sum", "prod"):
            if len(args) < 4 or args[2][0] != ":":
                raise ParseError(f"expected '{kw} <a> <b> : <e1> ...'", ln, kcol)
            a = elem(args[0][0], ln, args[0][1])
            b = elem(args[1][0], ln, args[1][1])
            key = (min(a, b), max(a, b))
            if key in tables[kw]:
                raise ParseError(f"duplicate {kw} entry for {args[0][0]} {args[1][0]}", ln, kcol)
            members = [elem(t, ln, c) for t, c in args[3:]]
            tables[kw][key] = mask_of(members)
        else:
            raise ParseError(f"unknown keyword {kw!r}", ln, kcol)

    if names is None:
        raise ParseError("missing 'elements' line")
    if zero is None or one is None:
        raise ParseError("missing 'zero' or 'one' line")
    n = len(names)
    if neg_identity:
        if neg:
            raise ParseError("'neg identity' combined with explicit neg entries")
        negs = list(range(n))
    else:
        missing = [names[a] for a in range(n) if a not in neg]
        if missing:
            raise ParseError(f"missing neg entry for {missing[0]!r}")
        negs = [neg[a] for a in range(n)]
    full = {}
    for kw in ("sum", "prod"):
        t = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                if (a, b) not in tables[kw]:
                    raise ParseError(f"missing {kw} entry for pair {names[a]} {names[b]}")
                t[a][b] = t[b][a] = tables[kw][(a, b)]
        full[kw] = t
    try:
        return FiniteSuperring(name or "unnamed", names, full["sum"], full["prod"],
                               negs, zero, one)
    except StructureError as e:
        raise ParseError(str(e)) from None

