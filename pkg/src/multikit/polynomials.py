"""Polynomials over a finite superring.

A product or sum of polynomials is a set of polynomials.  It is kept in
compressed form as a :class:`CoeffEnvelope`: one coefficient set per
degree, with independent coordinatewise membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .core import (CarrierMismatch, ElemSet, FiniteSuperring, MultikitError, bits,
                   popcount, validate)
from .morphisms import MorphismTable

EXPAND_BOUND = 4096


class PolyError(MultikitError):
    pass


@dataclass(frozen=True)
class Poly:
    """Coefficient indices ``a0, a1, ...`` with trailing zeros removed.

    The zero polynomial has no coefficients and degree ``-1``.  Build
    instances with :func:`poly` so trimming uses the ring's zero.
    """

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int, zero: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else zero


def poly(R: FiniteSuperring, coeffs: Sequence[int]) -> Poly:
    c = list(coeffs)
    for a in c:
        if not 0 <= a < R.size:
            raise CarrierMismatch(f"coefficient {a} outside {R.name}")
    while c and c[-1] == R.zero:
        c.pop()
    return Poly(tuple(c))


def zero_poly() -> Poly:
    return Poly(())


def constant(R: FiniteSuperring, a: int) -> Poly:
    return poly(R, [a])


def monomial(R: FiniteSuperring, a: int, k: int) -> Poly:
    return poly(R, [R.zero] * k + [a])


def variable(R: FiniteSuperring) -> Poly:
    return monomial(R, R.one, 1)


def poly_neg(R: FiniteSuperring, f: Poly) -> Poly:
    return Poly(tuple(R.neg[a] for a in f.coeffs))


def map_poly(f: Poly, m: MorphismTable) -> Poly:
    return poly(m.codomain, [m.images[a] for a in f.coeffs])


def poly_key(f: Poly) -> tuple:
    """Canonical order: degree, then leading index, then lower coefficients with ``a0`` major."""
    if f.is_zero:
        return (-1, -1, ())
    return (f.degree, f.coeffs[-1], f.coeffs[:-1])


def iter_polys(R: FiniteSuperring, degree: int, monic: bool = False) -> Iterator[Poly]:
    """All polynomials of exactly ``degree`` in canonical order."""
    if degree < 0:
        yield zero_poly()
        return
    leads = [R.one] if monic else sorted(R.nonzero())
    for lead in leads:
        for lower in product(range(R.size), repeat=degree):
            yield Poly(tuple(lower) + (lead,))


def iter_polys_upto(R: FiniteSuperring, max_degree: int, include_zero: bool = True) -> Iterator[Poly]:
    if include_zero:
        yield zero_poly()
    for d in range(max_degree + 1):
        yield from iter_polys(R, d)


# ---------------------------------------------------------------------------
# envelopes


@dataclass(frozen=True)
class CoeffEnvelope:
    """Coordinatewise coefficient sets; coordinates past the end are ``{0}``."""

    sets: tuple[ElemSet, ...]

    @property
    def size(self) -> int:
        n = 1
        for s in self.sets:
            n *= popcount(s)
        return n

    def __len__(self):
        return len(self.sets)

    def coeff_set(self, i: int, R: FiniteSuperring) -> ElemSet:
        return self.sets[i] if 0 <= i < len(self.sets) else 1 << R.zero

    def degrees(self, R: FiniteSuperring) -> set[int]:
        """Degrees of the members, without expanding."""
        z = 1 << R.zero
        out = set()
        for i in range(len(self.sets) - 1, -1, -1):
            s = self.sets[i]
            if s & ~z:
                out.add(i)
            if not s & z:
                return out
        out.add(-1)
        return out

    def expand(self, R: FiniteSuperring, bound: int = EXPAND_BOUND) -> list[Poly]:
        if self.size > bound:
            raise PolyError(f"envelope has {self.size} members, above the bound {bound}")
        return [poly(R, c) for c in product(*(list(bits(s)) for s in self.sets))]

    def render(self, R: FiniteSuperring) -> list[list[str]]:
        return [R.names_of(s) for s in self.sets]


def envelope_of(f: Poly) -> CoeffEnvelope:
    return CoeffEnvelope(tuple(1 << a for a in f.coeffs))


def _pad(R: FiniteSuperring, f: Poly, n: int) -> list[int]:
    return list(f.coeffs) + [R.zero] * (n - len(f.coeffs))


def _check(R: FiniteSuperring, *fs: Poly) -> None:
    for f in fs:
        if any(not 0 <= a < R.size for a in f.coeffs):
            raise CarrierMismatch(f"polynomial coefficients outside {R.name}")


def poly_sum(R: FiniteSuperring, f: Poly, g: Poly) -> CoeffEnvelope:
    _check(R, f, g)
    n = max(len(f.coeffs), len(g.coeffs))
    a, b = _pad(R, f, n), _pad(R, g, n)
    return CoeffEnvelope(tuple(R.sum_table[a[i]][b[i]] for i in range(n)))


def envelope_sum(R: FiniteSuperring, E: CoeffEnvelope, F: CoeffEnvelope) -> CoeffEnvelope:
    n = max(len(E), len(F))
    return CoeffEnvelope(tuple(R.sumset(E.coeff_set(i, R), F.coeff_set(i, R)) for i in range(n)))


def envelope_prod(R: FiniteSuperring, E: CoeffEnvelope, F: CoeffEnvelope) -> CoeffEnvelope:
    """Coordinatewise union of the product sets over all member pairs."""
    if not len(E) or not len(F):
        return CoeffEnvelope(())
    n = len(E) + len(F) - 1
    out = []
    for k in range(n):
        out.append(R.nary_sum(R.prodset(E.coeff_set(i, R), F.coeff_set(k - i, R))
                              for i in range(k + 1)))
    return CoeffEnvelope(tuple(out))


def poly_prod(R: FiniteSuperring, f: Poly, g: Poly) -> CoeffEnvelope:
    """``c_n`` is the left-nested sum of ``a_i b_(n-i)`` for ``i = 0..n``."""
    _check(R, f, g)
    return envelope_prod(R, envelope_of(f), envelope_of(g))


def member(R: FiniteSuperring, h: Poly, E: CoeffEnvelope) -> bool:
    _check(R, h)
    n = max(len(h.coeffs), len(E))
    return all((E.coeff_set(i, R) >> h.coeff(i, R.zero)) & 1 for i in range(n))


# ---------------------------------------------------------------------------
# evaluation and roots


def _embedding_for(R: FiniteSuperring, K: FiniteSuperring, embedding: MorphismTable | None) -> MorphismTable | None:
    if embedding is None:
        if K == R:
            return None
        raise PolyError("an embedding is required when the ambient differs from the coefficient ring")
    if embedding.domain != R or embedding.codomain != K:
        raise CarrierMismatch("embedding does not match the coefficient ring and ambient")
    if not embedding.classification.is_morphism:
        raise PolyError("coefficient embedding is not a morphism")
    return embedding


def evaluate(R: FiniteSuperring, f: Poly, alpha: int, K: FiniteSuperring | None = None,
             embedding: MorphismTable | None = None) -> ElemSet:
    """All values of ``a0 + a1*alpha + ... + an*alpha^n`` inside the ambient ``K``."""
    K = R if K is None else K
    emb = _embedding_for(R, K, embedding)
    _check(R, f)
    if not 0 <= alpha < K.size:
        raise CarrierMismatch(f"point outside {K.name}")
    if f.is_zero:
        return 1 << K.zero
    terms = []
    pw = 1 << K.one
    a = 1 << alpha
    for i, c in enumerate(f.coeffs):
        if i:
            pw = K.prodset(pw, a)
        ci = c if emb is None else emb.images[c]
        terms.append(K.prodset(1 << ci, pw))
    return K.nary_sum(terms)


def roots(R: FiniteSuperring, f: Poly, K: FiniteSuperring | None = None,
          embedding: MorphismTable | None = None) -> ElemSet:
    if f.is_zero:
        raise PolyError("the zero polynomial has no root set")
    K = R if K is None else K
    z = 1 << K.zero
    out = 0
    for alpha in range(K.size):
        if evaluate(R, f, alpha, K, embedding) & z:
            out |= 1 << alpha
    return out


def _report(S: FiniteSuperring):
    rep = S._cache.get("report")
    if rep is None:
        rep = validate(S)
        S._cache["report"] = rep
    return rep


def effective_root_witness(K: FiniteSuperring, f: Poly, alpha: int) -> Poly | None:
    """First ``g`` of degree ``deg f - 1`` with ``f`` in ``(X - alpha) g``, or None."""
    n = f.degree
    if n < 1:
        return None
    lin = (K.neg[alpha], K.one)
    g = [K.zero] * n

    def coeff_set(k: int) -> ElemSet:
        terms = []
        for i in range(k + 1):
            a = lin[i] if i < 2 else K.zero
            b = g[k - i] if k - i < n else K.zero
            terms.append(K.prod_table[a][b])
        return K.nary_sum(terms)

    def search(k: int) -> bool:
        if k == n:
            return bool((coeff_set(n) >> f.coeffs[n]) & 1)
        cands = sorted(K.nonzero()) if k == n - 1 else range(K.size)
        for b in cands:
            g[k] = b
            if (coeff_set(k) >> f.coeffs[k]) & 1 and search(k + 1):
                return True
        g[k] = K.zero
        return False

    return poly(K, g) if search(0) else None


def effective_roots(K: FiniteSuperring, f: Poly) -> dict[int, Poly]:
    """Effective roots of ``f`` in ``K`` mapped to a witness cofactor."""
    if f.is_zero:
        raise PolyError("the zero polynomial has no root set")
    if not _report(K).superdomain:
        raise PolyError(f"{K.name} is not a superdomain; cofactor degree is not bounded")
    out = {}
    for alpha in range(K.size):
        w = effective_root_witness(K, f, alpha)
        if w is not None:
            out[alpha] = w
    return out


# ---------------------------------------------------------------------------
# division


@dataclass(frozen=True)
class Division:
    q: Poly
    r: Poly
    route: str


def division_holds(R: FiniteSuperring, f: Poly, g: Poly, q: Poly, r: Poly) -> bool:
    if not (r.is_zero or r.degree < g.degree):
        return False
    return member(R, f, envelope_sum(R, poly_prod(R, q, g), envelope_of(r)))


def _iter_members(R: FiniteSuperring, sets: Sequence[ElemSet]) -> Iterator[Poly]:
    for c in product(*(sorted(bits(s)) for s in sets)):
        yield poly(R, c)


def _constructive(R: FiniteSuperring, f: Poly, g: Poly) -> Iterator[tuple[Poly, Poly]]:
    n, m = f.degree, g.degree
    if f.is_zero:
        yield zero_poly(), zero_poly()
        return
    if n < m:
        yield zero_poly(), f
        return
    an = f.lead
    for binv in bits(R.inverses(g.lead)):
        for c in bits(R.prod_table[an][binv]):
            h = poly_prod(R, monomial(R, c, n - m), g)
            t_sets = [R.sumset(1 << f.coeff(i, R.zero), R.negset(h.coeff_set(i, R)))
                      for i in range(n + 1)]
            if not t_sets[n] & (1 << R.zero):
                continue
            t_sets[n] = 1 << R.zero
            for t in _iter_members(R, t_sets[:n]):
                for q1, r in _constructive(R, t, g):
                    # q1 has degree below n-m, so adding c X^(n-m) is single-valued
                    qc = _pad(R, q1, n - m + 1)
                    qc[n - m] = c
                    yield poly(R, qc), r


def enumerate_divisions(R: FiniteSuperring, f: Poly, g: Poly) -> Iterator[tuple[Poly, Poly]]:
    """All ``(q, r)`` with ``deg q <= deg f - deg g`` and ``deg r < deg g``."""
    if g.is_zero:
        raise PolyError("division by the zero polynomial")
    m = g.degree
    qmax = max(f.degree - m, -1)
    qs = list(iter_polys_upto(R, qmax)) if qmax >= 0 else [zero_poly()]
    rs = list(iter_polys_upto(R, m - 1)) if m >= 1 else [zero_poly()]
    for q in qs:
        for r in rs:
            if division_holds(R, f, g, q, r):
                yield q, r


def euclid_divide(R: FiniteSuperring, f: Poly, g: Poly, check_field: bool = True) -> Division:
    """A witness ``f in q g + r`` with ``r = 0`` or ``deg r < deg g``.

    Follows leading-coefficient elimination, trying choice points in
    index order and backtracking until the membership check passes.
    """
    if g.is_zero:
        raise PolyError("division by the zero polynomial")
    _check(R, f, g)
    if check_field and not _report(R).superfield:
        raise PolyError(f"{R.name} is not a superfield")
    for q, r in _constructive(R, f, g):
        if division_holds(R, f, g, q, r):
            return Division(q, r, "constructive")
    for q, r in enumerate_divisions(R, f, g):
        return Division(q, r, "enumeration")
    raise PolyError("no division witness exists")


# ---------------------------------------------------------------------------
# text form


def _split_top(text: str, sep: str = "+") -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _term(R: FiniteSuperring, tok: str) -> tuple[int, int]:
    if tok in R._index:
        return R.index(tok), 0
    coef, star, var = tok.rpartition("*")
    if not star:
        pos = tok.rfind("X")
        if pos < 0:
            raise PolyError(f"unknown coefficient {tok!r} in {R.name}")
        coef, var = tok[:pos], tok[pos:]
    if not var.startswith("X"):
        raise PolyError(f"bad term {tok!r}")
    rest = var[1:]
    if rest == "":
        k = 1
    elif rest.startswith("^") and rest[1:].isdigit():
        k = int(rest[1:])
    else:
        raise PolyError(f"bad exponent in {tok!r}")
    if coef == "":
        return R.one, k
    if coef not in R._index:
        raise PolyError(f"unknown coefficient {coef!r} in {R.name}")
    return R.index(coef), k


def parse_poly(text: str, R: FiniteSuperring) -> Poly:
    """Parse terms ``c*X^k``, ``X^k``, ``cX`` or ``c`` joined by ``+``."""
    compact = "".join(text.split())
    if not compact:
        raise PolyError("empty polynomial")
    coeffs: dict[int, int] = {}
    for tok in _split_top(compact):
        if not tok:
            raise PolyError(f"empty term in {text!r}")
        a, k = _term(R, tok)
        if k in coeffs:
            raise PolyError(f"degree {k} given twice in {text!r}")
        coeffs[k] = a
    top = max(coeffs)
    return poly(R, [coeffs.get(i, R.zero) for i in range(top + 1)])


def render_poly(R: FiniteSuperring, f: Poly, ascending: bool = False, star: bool = True) -> str:
    if f.is_zero:
        return R.names[R.zero]
    parts = []
    for k, a in enumerate(f.coeffs):
        if a == R.zero:
            continue
        c = R.names[a]
        if k == 0:
            parts.append(c)
            continue
        x = "X" if k == 1 else f"X^{k}"
        if a == R.one:
            parts.append(x)
        else:
            parts.append(f"{c}*{x}" if star else f"{c}{x}")
    if not ascending:
        parts.reverse()
    return "+".join(parts)
