"""Principal ideals of F[X], irreducibility, and the quotient F[X]/<p>."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .core import (ClassReport, ElemSet, FiniteSuperring, MultikitError, QuotientError,
                   StructureError,
                   bits, mask_of, validate)
from .morphisms import MorphismTable
from .polynomials import (CoeffEnvelope, Poly, PolyError, _report, envelope_of,
                          envelope_sum, euclid_divide, enumerate_divisions, iter_polys,
                          iter_polys_upto, member, parse_poly, poly, poly_prod, poly_sum,
                          render_poly, zero_poly)

STRICT = "strict"
SATURATED = "saturated"


# ---------------------------------------------------------------------------
# ideal membership


def principal_witness(F: FiniteSuperring, f: Poly, p: Poly) -> Poly | None:
    """First ``q`` (canonical order) with ``f`` in ``q p``."""
    if p.is_zero:
        raise PolyError("modulus must be nonzero")
    if f.is_zero:
        return zero_poly()
    d = f.degree - p.degree
    if d < 0:
        return None
    for q in iter_polys(F, d):
        if member(F, f, poly_prod(F, q, p)):
            return q
    return None


def sum_closed_witness(F: FiniteSuperring, f: Poly, p: Poly, summands: int = 2) -> tuple[Poly, ...] | None:
    """Multipliers ``q1..qk`` (k <= summands, deg qi <= deg f) with ``f`` in ``q1 p + ... + qk p``."""
    if p.is_zero:
        raise PolyError("modulus must be nonzero")
    if f.is_zero:
        return (zero_poly(),)
    qs = list(iter_polys_upto(F, f.degree))
    envs = {q: poly_prod(F, q, p) for q in qs}
    for k in range(1, summands + 1):
        for combo in product(qs, repeat=k):
            E = envs[combo[0]]
            for q in combo[1:]:
                E = envelope_sum(F, E, envs[q])
            if member(F, f, E):
                return combo
    return None


def principal_membership(F: FiniteSuperring, f: Poly, p: Poly, mode: str = "multiple",
                         summands: int = 2) -> bool:
    if mode == "multiple":
        return principal_witness(F, f, p) is not None
    if mode == "sum":
        return sum_closed_witness(F, f, p, summands) is not None
    raise MultikitError(f"unknown membership mode {mode!r}")


# ---------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class Irreducibility:
    irreducible: bool
    factors: tuple[Poly, Poly] | None
    divisor_check: bool | None

    def __bool__(self):
        return self.irreducible


def factor_witness(F: FiniteSuperring, p: Poly) -> tuple[Poly, Poly] | None:
    n = p.degree
    for d in range(1, n // 2 + 1):
        for g in iter_polys(F, d):
            for h in iter_polys(F, n - d):
                if member(F, p, poly_prod(F, g, h)):
                    return g, h
    return None


def _ideal_slice(F: FiniteSuperring, u: Poly, top: int) -> frozenset[Poly]:
    return frozenset(h for h in iter_polys_upto(F, top) if principal_witness(F, h, u) is not None)


def divisor_irreducible(F: FiniteSuperring, p: Poly) -> bool:
    """Every non-unit ``u`` with ``p`` in ``<u>`` generates the same ideal (compared up to ``deg p``)."""
    n = p.degree
    mine = _ideal_slice(F, p, n)
    for d in range(1, n + 1):
        for u in iter_polys(F, d):
            if principal_witness(F, p, u) is None:
                continue
            if _ideal_slice(F, u, n) != mine:
                return False
    return True


def is_irreducible(F: FiniteSuperring, p: Poly, secondary: bool | None = None) -> Irreducibility:
    """Factor search, optionally cross-checked by the divisor definition.

    ``secondary=None`` runs the divisor check only on small inputs.
    """
    if p.is_zero or p.degree < 1:
        raise PolyError("irreducibility needs degree at least 1")
    if not _report(F).superdomain:
        raise PolyError(f"{F.name} is not a superdomain")
    fw = factor_witness(F, p)
    if secondary is None:
        secondary = F.size <= 5 and p.degree <= 3
    div = divisor_irreducible(F, p) if secondary else None
    if div is not None and div != (fw is None):
        raise MultikitError("irreducibility criteria disagree")
    return Irreducibility(fw is None, fw, div)


def first_irreducible(F: FiniteSuperring, degree: int) -> Poly | None:
    for p in iter_polys(F, degree, monic=True):
        if is_irreducible(F, p, secondary=False):
            return p
    return None


def irreducibles(F: FiniteSuperring, degree: int, monic: bool = True) -> list[Poly]:
    return [p for p in iter_polys(F, degree, monic=monic)
            if is_irreducible(F, p, secondary=False)]


# ---------------------------------------------------------------------------
# reduction


def _reduce_env(F: FiniteSuperring, E: CoeffEnvelope, p: Poly) -> frozenset[tuple[int, ...]]:
    """All low-degree ``r`` with ``(z - r)`` meeting ``F[X] p`` for some ``z`` in ``E``.

    For each degree of ``q`` the coefficients are chosen top-down; the
    coordinate ``j + deg p`` only involves ``q_j .. q_top`` so it can be
    checked as soon as ``q_j`` is fixed.
    """
    n = p.degree
    z0 = 1 << F.zero
    L = len(E)
    pc = p.coeffs
    out: set[tuple[int, ...]] = set()

    def low_sets(qp_low: list[ElemSet]) -> None:
        admissible = []
        for i in range(n):
            Ei = E.coeff_set(i, F)
            ok = [r for r in range(F.size)
                  if F.sumset(Ei, 1 << F.neg[r]) & qp_low[i]]
            if not ok:
                return
            admissible.append(ok)
        out.update(product(*admissible))

    # q = 0: every coordinate of qp is {0}
    if all(E.coeff_set(i, F) & z0 for i in range(n, L)):
        low_sets([z0] * n)

    for d in range(0, L - n):
        if not all(E.coeff_set(i, F) & z0 for i in range(d + n + 1, L)):
            continue
        q = [F.zero] * (d + 1)

        def coord(k: int) -> ElemSet:
            terms = []
            for i in range(max(0, k - n), min(k, d) + 1):
                terms.append(F.prod_table[q[i]][pc[k - i]])
            return F.nary_sum(terms)

        def search(j: int) -> None:
            if j < 0:
                low_sets([coord(k) for k in range(n)])
                return
            cands = F.nonzero() if j == d else range(F.size)
            for a in cands:
                q[j] = a
                if coord(j + n) & E.coeff_set(j + n, F):
                    search(j - 1)
            q[j] = F.zero

        search(d)
    return frozenset(out)


def reduce_envelope(F: FiniteSuperring, E: CoeffEnvelope, p: Poly) -> frozenset[Poly]:
    key = ("reduce", E, p)
    hit = F._cache.get(key)
    if hit is None:
        hit = frozenset(poly(F, r) for r in _reduce_env(F, E, p))
        F._cache[key] = hit
    return hit


def reduce(F: FiniteSuperring, h: Poly, p: Poly) -> frozenset[Poly]:
    """Low-degree representatives of ``h`` modulo ``<p>``; may hold several."""
    if p.is_zero or p.degree < 1:
        raise PolyError("modulus must have degree at least 1")
    return reduce_envelope(F, envelope_of(h), p)


# ---------------------------------------------------------------------------
# quotient structure


def class_name(F: FiniteSuperring, f: Poly) -> str:
    return "[" + render_poly(F, f, ascending=True, star=False) + "]"


@dataclass
class QuotientField:
    base: FiniteSuperring
    modulus: Poly
    mode: str
    depth: int | None
    classes: list[Poly]
    structure: FiniteSuperring
    embedding: MorphismTable
    report: ClassReport
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {c: i for i, c in enumerate(self.classes)}

    def class_of(self, f: Poly) -> int:
        try:
            return self._index[f]
        except KeyError:
            raise QuotientError(f"{render_poly(self.base, f)} is not a reduced representative") from None

    def parse_class(self, text: str) -> int:
        t = text.strip()
        if t.startswith("[") and t.endswith("]"):
            t = t[1:-1]
        return self.class_of(parse_poly(t, self.base))

    def name(self, i: int) -> str:
        return self.structure.names[i]

    @property
    def generator(self) -> int:
        """The class of ``X``."""
        return self.class_of(poly(self.base, [self.base.zero, self.base.one]))

    @property
    def embedding_full(self) -> bool:
        return self.embedding.classification.is_full


def _class_order(F: FiniteSuperring, n: int) -> list[Poly]:
    polys = [p for p in iter_polys_upto(F, n - 1) if p.degree >= 1]
    polys.sort(key=lambda f: (f.degree, tuple(reversed(f.coeffs))))
    consts = [zero_poly(), poly(F, [F.one])] + [poly(F, [a]) for a in F.nonzero() if a != F.one]
    return consts + polys


def representatives(F: FiniteSuperring, p: Poly, depth: int) -> dict[Poly, list[Poly]]:
    """Every polynomial of degree ``<= depth`` listed under each class it reduces to."""
    reps: dict[Poly, list[Poly]] = {}
    for h in iter_polys_upto(F, depth):
        for r in reduce(F, h, p):
            reps.setdefault(r, []).append(h)
    return reps


def class_product(F: FiniteSuperring, p: Poly, f: Poly, g: Poly, mode: str = STRICT,
                  depth: int | None = None, reps: dict | None = None) -> frozenset[Poly]:
    """Classes in ``[f][g]``; ``f`` and ``g`` are reduced representatives."""
    if mode == STRICT:
        return reduce_envelope(F, poly_prod(F, f, g), p)
    if reps is None:
        reps = representatives(F, p, 2 * p.degree if depth is None else depth)
    total = F.size ** p.degree
    out: set[Poly] = set()
    for a in reps.get(f, [f]):
        for b in reps.get(g, [g]):
            out |= reduce_envelope(F, poly_prod(F, a, b), p)
            if len(out) == total:
                return frozenset(out)
    return frozenset(out)


def make_quotient(F: FiniteSuperring, p: Poly, mode: str = STRICT, depth: int | None = None,
                  check_irreducible: bool = True, name: str | None = None) -> QuotientField:
    """``F[X]/<p>`` on classes of polynomials of degree below ``deg p``.

    ``strict`` multiplies the two representatives only.  ``saturated``
    also multiplies every representative of degree ``<= depth``.
    """
    if mode not in (STRICT, SATURATED):
        raise MultikitError(f"unknown quotient mode {mode!r}")
    if p.is_zero or p.degree < 1:
        raise QuotientError("modulus must have degree at least 1")
    if not _report(F).superfield:
        raise QuotientError(f"{F.name} is not a superfield")
    if check_irreducible:
        fw = factor_witness(F, p)
        if fw is not None:
            g, h = fw
            raise QuotientError(f"modulus is reducible: {render_poly(F, g)} * {render_poly(F, h)}",
                                (render_poly(F, g), render_poly(F, h)))
    n = p.degree
    classes = _class_order(F, n)
    idx = {c: i for i, c in enumerate(classes)}
    m = len(classes)
    padded = [list(c.coeffs) + [F.zero] * (n - len(c.coeffs)) for c in classes]

    def cls_mask(polys) -> ElemSet:
        return mask_of(idx[r] for r in polys)

    sum_table = [[0] * m for _ in range(m)]
    prod_table = [[0] * m for _ in range(m)]
    reps = None
    if mode == SATURATED:
        depth = 2 * n if depth is None else depth
        reps = representatives(F, p, depth)
    for i in range(m):
        for j in range(i, m):
            sets = [F.sum_table[padded[i][k]][padded[j][k]] for k in range(n)]
            s = mask_of(idx[poly(F, c)] for c in product(*(list(bits(x)) for x in sets)))
            pr = cls_mask(class_product(F, p, classes[i], classes[j], mode, depth, reps))
            sum_table[i][j] = sum_table[j][i] = s
            prod_table[i][j] = prod_table[j][i] = pr
    neg = [idx[poly(F, [F.neg[a] for a in c.coeffs])] for c in classes]
    names = [class_name(F, c) for c in classes]
    label = name or f"{F.name}({render_poly(F, p)})"
    try:
        S = FiniteSuperring(label, names, sum_table, prod_table, neg, 0, 1)
    except StructureError as e:
        raise QuotientError(f"{mode} class tables do not form a superring: {e}") from e
    emb = MorphismTable(F, S, tuple(idx[poly(F, [a])] for a in range(F.size)))
    return QuotientField(F, p, mode, depth if mode == SATURATED else None, classes, S, emb, validate(S))


# ---------------------------------------------------------------------------
# inverses


@dataclass(frozen=True)
class InverseResult:
    witness: int
    constructive: int | None
    scan: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.constructive is not None and self.constructive in self.scan


def inverse_scan(Q: QuotientField, c: int) -> tuple[int, ...]:
    S = Q.structure
    one = 1 << S.one
    return tuple(g for g in range(S.size) if S.prod_table[c][g] & one)


def _constructive_inverses(Q: QuotientField, c: int, depth: int = 0) -> Iterator[int]:
    """Candidates from dividing the modulus by the class representative.

    With ``p in q f + r`` and ``deg r < deg f`` the inverse is sought in
    ``-[q][r]^-1``; recursion on ``r`` terminates at a constant.
    """
    F, S = Q.base, Q.structure
    f = Q.classes[c]
    if f.degree == 0:
        for b in bits(F.inverses(f.coeffs[0])):
            yield Q.class_of(poly(F, [b]))
        return
    divisions = [euclid_divide(F, Q.modulus, f)]
    seen = {(divisions[0].q, divisions[0].r)}
    tried_all = False
    k = 0
    while k < len(divisions):
        d = divisions[k]
        k += 1
        q, r = d.q, d.r
        if not r.is_zero:
            qi = Q.class_of(q)
            for ri in _constructive_inverses(Q, Q.class_of(r), depth + 1):
                cand = S.negset(S.prod_table[qi][ri])
                yield from bits(cand)
        if k == len(divisions) and not tried_all:
            tried_all = True
            for qq, rr in enumerate_divisions(F, Q.modulus, f):
                if (qq, rr) not in seen:
                    seen.add((qq, rr))
                    divisions.append(type(d)(qq, rr, "enumeration"))


def class_inverse(Q: QuotientField, c: int) -> InverseResult:
    if c == Q.structure.zero:
        raise QuotientError("the zero class has no inverse")
    scan = inverse_scan(Q, c)
    one = 1 << Q.structure.one
    constructive = None
    for g in _constructive_inverses(Q, c):
        if Q.structure.prod_table[c][g] & one:
            constructive = g
            break
    if not scan:
        raise QuotientError(f"class {Q.name(c)} has no inverse")
    return InverseResult(scan[0], constructive, scan)
