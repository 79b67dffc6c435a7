"""Algebraic elements, generated sets, simple extensions and bounded closure towers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Iterator

from .core import (CarrierTooLarge, ElemSet, FiniteSuperring, MultikitError, bits, mask_of,
                   popcount)
from .morphisms import MorphismTable, compose, identity
from .polynomials import (Poly, PolyError, _report, evaluate, iter_polys, map_poly, poly,
                          render_poly, roots)
from .quotients import QuotientField, is_irreducible, make_quotient


class ExtensionError(MultikitError):
    pass


def _embedding(F: FiniteSuperring, K: FiniteSuperring, emb: MorphismTable | None) -> MorphismTable:
    if emb is None:
        if F != K:
            raise ExtensionError("an embedding is required when the ambient differs from the base")
        return identity(F)
    if emb.domain != F or emb.codomain != K:
        raise ExtensionError("embedding does not match the base and ambient")
    if not emb.classification.is_morphism:
        raise ExtensionError("embedding is not a morphism")
    return emb


def _ev(F, K, emb, f: Poly, t: int) -> ElemSet:
    return evaluate(F, f, t, K, emb)


def _is_root(F, K, emb, f: Poly, t: int) -> bool:
    return bool(_ev(F, K, emb, f, t) & (1 << K.zero))


# ---------------------------------------------------------------------------
# algebraic elements


def is_algebraic(F: FiniteSuperring, K: FiniteSuperring, alpha: int, emb: MorphismTable | None = None,
                 degree_bound: int | None = None) -> Poly | None:
    """First nonconstant ``f`` over ``F`` (degree, then canonical order) vanishing at ``alpha``.

    ``None`` means nothing was found up to the bound, not transcendence.
    """
    emb = _embedding(F, K, emb)
    bound = K.size if degree_bound is None else degree_bound
    for d in range(1, bound + 1):
        for f in iter_polys(F, d):
            if _is_root(F, K, emb, f, alpha):
                return f
    return None


def irr_poly(F: FiniteSuperring, K: FiniteSuperring, alpha: int, emb: MorphismTable | None = None,
             degree_bound: int | None = None) -> Poly:
    """Minimal-degree irreducible witness, first in canonical order."""
    emb = _embedding(F, K, emb)
    bound = K.size if degree_bound is None else degree_bound
    for d in range(1, bound + 1):
        for f in iter_polys(F, d):
            if _is_root(F, K, emb, f, alpha) and is_irreducible(F, f, secondary=False):
                return f
    raise ExtensionError(f"no irreducible witness of degree <= {bound}")


def generated_set(F: FiniteSuperring, K: FiniteSuperring, gamma: int,
                  emb: MorphismTable | None = None) -> ElemSet:
    """All values of polynomials over ``F`` at ``gamma`` in ``K``.

    ``T`` grows by adding ``a * gamma^(d+1)`` terms; the pair of ``T`` and
    the current power set lives in a finite space, so a repeat ends it.
    """
    emb = _embedding(F, K, emb)
    g = 1 << gamma
    T = emb.image(F.carrier)
    P = g
    seen = set()
    while (T, P) not in seen:
        seen.add((T, P))
        nxt = T
        for a in range(F.size):
            nxt |= K.sumset(T, K.prodset(1 << emb.images[a], P))
        T, P = nxt, K.prodset(P, g)
    return T


def _closure(K: FiniteSuperring, start: ElemSet) -> ElemSet:
    S = start | (1 << K.zero) | (1 << K.one)
    while True:
        nxt = S | K.negset(S)
        for a in bits(S):
            nxt |= K.inverses(a) if a != K.zero else 0
            for b in bits(S):
                nxt |= K.sum_table[a][b] | K.prod_table[a][b]
        if nxt == S:
            return S
        S = nxt


def substructure(K: FiniteSuperring, members: ElemSet, name: str | None = None) -> tuple[FiniteSuperring, MorphismTable]:
    """Restriction of ``K`` to a subset closed under its tables, with the inclusion."""
    idx = list(bits(members))
    pos = {a: i for i, a in enumerate(idx)}

    def restrict(mask: ElemSet) -> ElemSet:
        if mask & ~members:
            raise ExtensionError("subset is not closed under the ambient tables")
        return mask_of(pos[c] for c in bits(mask))

    st = [[restrict(K.sum_table[a][b]) for b in idx] for a in idx]
    pt = [[restrict(K.prod_table[a][b]) for b in idx] for a in idx]
    S = FiniteSuperring(name or f"sub({K.name})", [K.names[a] for a in idx], st, pt,
                        [pos[K.neg[a]] for a in idx], pos[K.zero], pos[K.one])
    return S, MorphismTable(S, K, tuple(idx))


def simple_extension(F: FiniteSuperring, K: FiniteSuperring, alpha: int,
                     emb: MorphismTable | None = None) -> tuple[FiniteSuperring, MorphismTable]:
    """Smallest subset with the image of ``F`` and ``alpha`` closed under sum, product, negation and inverses."""
    emb = _embedding(F, K, emb)
    members = _closure(K, emb.image(F.carrier) | (1 << alpha))
    return substructure(K, members, f"{F.name}({K.names[alpha]})")


# ---------------------------------------------------------------------------
# almost fullness


def power_sequence(K: FiniteSuperring, gamma: int) -> tuple[list[ElemSet], int, int]:
    """Set powers ``gamma^0, gamma^1, ...`` up to the first repeat, with preperiod and period."""
    seq: list[ElemSet] = []
    where: dict[ElemSet, int] = {}
    P = 1 << K.one
    while P not in where:
        where[P] = len(seq)
        seq.append(P)
        P = K.prodset(P, 1 << gamma)
    start = where[P]
    return seq, start, len(seq) - start


@dataclass(frozen=True)
class AlmostFull:
    passed: bool
    witness: dict | None = None

    def __bool__(self):
        return self.passed


def is_almost_full(K: FiniteSuperring, F: FiniteSuperring, gamma: int, emb: MorphismTable | None = None,
                   n: int | None = None) -> AlmostFull:
    """Multiplying ``a g^p + b g^q + c g^r`` by ``g`` shifts every exponent, as sets.

    Exponents range up to ``max(n, preperiod + 3 * period)`` so every
    power set appears at least three times where it can.
    """
    emb = _embedding(F, K, emb)
    if generated_set(F, K, gamma, emb) != K.carrier:
        raise ExtensionError(f"{K.name} is not generated by powers of {K.names[gamma]}")
    seq, pre, per = power_sequence(K, gamma)

    def pw(i: int) -> ElemSet:
        return seq[i] if i < len(seq) else seq[pre + (i - pre) % per]

    top = max(n or 0, pre + 3 * per)
    g = 1 << gamma
    img = [1 << emb.images[a] for a in range(F.size)]
    for p, q, r in combinations(range(top + 1), 3):
        for a, b, c in product(range(F.size), repeat=3):
            lhs = K.prodset(K.nary_sum([K.prodset(img[a], pw(p)), K.prodset(img[b], pw(q)),
                                        K.prodset(img[c], pw(r))]), g)
            rhs = K.nary_sum([K.prodset(img[a], pw(p + 1)), K.prodset(img[b], pw(q + 1)),
                              K.prodset(img[c], pw(r + 1))])
            if lhs != rhs:
                return AlmostFull(False, {"a": F.names[a], "b": F.names[b], "c": F.names[c],
                                          "p": p, "q": q, "r": r,
                                          "lhs": K.names_of(lhs), "rhs": K.names_of(rhs)})
    return AlmostFull(True)


# ---------------------------------------------------------------------------
# witness elimination


@dataclass(frozen=True)
class Elimination:
    target: int
    witness: Poly
    route: str


def _inv(F: FiniteSuperring, a: int) -> int:
    inv = F.inverses(a)
    if not inv:
        raise ExtensionError(f"{F.names[a]} is not invertible")
    return min(bits(inv))


def _choices(sets: list[ElemSet], limit: int) -> Iterator[tuple[int, ...]]:
    n = 1
    for s in sets:
        n *= popcount(s)
    if n > limit:
        sets = [1 << min(bits(s)) for s in sets]
    yield from product(*(sorted(bits(s)) for s in sets))


def scaling_witness(F: FiniteSuperring, K: FiniteSuperring, emb: MorphismTable, irr: Poly,
                    a: int, target: int, limit: int = 4096) -> Poly | None:
    """If ``gamma`` is a root of ``sum d_i X^i`` then ``a gamma`` should vanish on ``z_i`` in ``d_i a^-i``."""
    ainv = _inv(F, a)
    sets = [F.prodset(1 << d, F.power(1 << ainv, i)) for i, d in enumerate(irr.coeffs)]
    for zs in _choices(sets, limit):
        g = poly(F, zs)
        if not g.is_zero and g.degree >= 1 and _is_root(F, K, emb, g, target):
            return g
    return None


def substitution_witness(F: FiniteSuperring, K: FiniteSuperring, emb: MorphismTable, irr: Poly,
                         a: int, b: int, target: int, limit: int = 4096) -> Poly | None:
    """Witness for ``a + b gamma`` from ``irr`` by substituting ``X -> (X - a) b^-1``.

    Works top-down: ``z_j`` in ``d_j b^-j`` then coefficient ``i`` collects
    ``C(j,i)`` copies of ``z_j (-a)^(j-i)``.  Choice points are tried in
    index order until the evaluation check passes.
    """
    binv = _inv(F, b)
    n = irr.degree
    na = 1 << F.neg[a]
    zsets = [F.prodset(1 << d, F.power(1 << binv, j)) for j, d in enumerate(irr.coeffs)]
    for zs in _choices(zsets, limit):
        csets = []
        for i in range(n + 1):
            terms = [F.multiple(comb(j, i), F.prodset(1 << zs[j], F.power(na, j - i)))
                     for j in range(i, n + 1)]
            csets.append(F.nary_sum(terms))
        for cs in _choices(csets, limit):
            g = poly(F, cs)
            if not g.is_zero and g.degree >= 1 and _is_root(F, K, emb, g, target):
                return g
    return None


def eliminate_witness(F: FiniteSuperring, K: FiniteSuperring, gamma: int, target: int,
                      emb: MorphismTable | None = None, irr: Poly | None = None,
                      degree_bound: int = 8) -> Elimination:
    """An algebraicity witness for ``target`` built from the minimal polynomial of ``gamma``.

    ``target`` is written as ``a``, ``a gamma`` or ``a + b gamma`` over
    ``F`` when possible; otherwise, or when the constructive step fails,
    a brute-force search is used.  The route taken is recorded.
    """
    emb = _embedding(F, K, emb)
    irr = irr_poly(F, K, gamma, emb, degree_bound) if irr is None else irr
    img = emb.images
    tbit = 1 << target
    pos = {v: a for a, v in enumerate(img)}
    if target in pos:
        a = pos[target]
        return Elimination(target, poly(F, [F.neg[a], F.one]), "base")
    if target == gamma:
        return Elimination(target, irr, "minimal")
    for a in F.nonzero():
        if K.prod_table[img[a]][gamma] & tbit:
            g = scaling_witness(F, K, emb, irr, a, target)
            if g is not None:
                return Elimination(target, g, "scaling")
    for b in F.nonzero():
        bg = K.prod_table[img[b]][gamma]
        for a in F.nonzero():
            if K.sumset(1 << img[a], bg) & tbit:
                g = substitution_witness(F, K, emb, irr, a, b, target)
                if g is not None:
                    return Elimination(target, g, "elimination")
    g = is_algebraic(F, K, target, emb, degree_bound)
    if g is None:
        raise ExtensionError(f"no witness for {K.names[target]} up to degree {degree_bound}")
    return Elimination(target, g, "search")


# ---------------------------------------------------------------------------
# independence and degree


def linear_dependence(F: FiniteSuperring, K: FiniteSuperring, elems: list[ElemSet],
                      emb: MorphismTable | None = None, max_size: int = 6) -> tuple[int, ...] | None:
    """First nonzero coefficient tuple with ``0`` in ``a1 l1 + ... + an ln``; elements may be sets."""
    emb = _embedding(F, K, emb)
    if len(elems) > max_size:
        raise CarrierTooLarge(f"independence checks limited to {max_size} elements")
    z = 1 << K.zero
    for coeffs in product(range(F.size), repeat=len(elems)):
        if all(c == F.zero for c in coeffs):
            continue
        s = K.nary_sum(K.prodset(1 << emb.images[c], e) for c, e in zip(coeffs, elems))
        if s & z:
            return coeffs
    return None


def linear_independent(F: FiniteSuperring, K: FiniteSuperring, elems: list[int],
                       emb: MorphismTable | None = None, max_size: int = 6) -> bool:
    return linear_dependence(F, K, [1 << e for e in elems], emb, max_size) is None


def extension_degree(F: FiniteSuperring, K: FiniteSuperring, emb: MorphismTable | None = None,
                     max_n: int = 5) -> int | None:
    """Largest ``n`` with ``{1, l, ..., l^n}`` independent for every ``l`` in ``K``.

    Powers are set powers.  Taken literally this is ``0`` as soon as
    ``l = 0`` is allowed.  ``None`` means the bound ``max_n`` was reached.
    """
    emb = _embedding(F, K, emb)
    best = -1
    for n in range(max_n + 1):
        for lam in range(K.size):
            pw = [K.power(1 << lam, i) for i in range(n + 1)]
            if linear_dependence(F, K, pw, emb, max_size=max_n + 1) is not None:
                return best
        best = n
    return None


# ---------------------------------------------------------------------------
# closure


def is_alg_closed_up_to(F: FiniteSuperring, D: int, order: str = "canonical") -> tuple[bool, Poly | None]:
    for f in _rootless(F, D, order):
        return False, f
    return True, None


def _ordered(F: FiniteSuperring, d: int, order: str) -> Iterator[Poly]:
    polys = iter_polys(F, d)
    if order == "canonical":
        return polys
    if order == "reverse":
        return reversed(list(polys))
    raise MultikitError(f"unknown polynomial order {order!r}")


def _rootless(F: FiniteSuperring, D: int, order: str = "canonical") -> Iterator[Poly]:
    for d in range(1, D + 1):
        for f in _ordered(F, d, order):
            if not roots(F, f):
                yield f


@dataclass
class ExtensionStep:
    base: FiniteSuperring
    top: FiniteSuperring
    embedding: MorphismTable
    modulus: Poly
    root: int
    quotient: QuotientField

    def to_dict(self) -> dict:
        return {
            "base": self.base.name,
            "top": self.top.name,
            "size": self.top.size,
            "modulus": render_poly(self.base, self.modulus),
            "root": self.top.names[self.root],
            "embedding": self.embedding.as_dict(),
            "embedding_kind": self.embedding.classification.kind,
        }


@dataclass
class Tower:
    base: FiniteSuperring
    degree: int
    steps: list[ExtensionStep] = field(default_factory=list)
    composites: list[MorphismTable] = field(default_factory=list)
    closed: bool = False
    counterexample: Poly | None = None

    @property
    def top(self) -> FiniteSuperring:
        return self.steps[-1].top if self.steps else self.base

    def qualified_name(self, k: int, i: int) -> str:
        """Element ``i`` of step ``k`` as ``step<k>:<name>``; step 0 is the base."""
        S = self.steps[k - 1].top if k else self.base
        return f"step{k}:{S.names[i]}"

    def to_dict(self) -> dict:
        top = self.top
        return {
            "base": self.base.name,
            "max_degree": self.degree,
            "steps": [s.to_dict() for s in self.steps],
            "composites_full": [c.classification.is_full for c in self.composites],
            "closed_up_to_degree": self.closed,
            "counterexample": None if self.counterexample is None
            else render_poly(top, self.counterexample),
            "top": {"name": top.name, "size": top.size,
                    "elements": [self.qualified_name(len(self.steps), i) for i in range(top.size)]},
        }


def closure_tower(F: FiniteSuperring, D: int, max_steps: int, order: str = "canonical",
                  max_carrier: int = 100) -> Tower:
    """Adjoin roots of rootless irreducibles of degree ``<= D`` until closed up to ``D``.

    Each step is a strict quotient; its embedding and the composite from
    ``F`` are checked to be full.
    """
    if not _report(F).superfield:
        raise ExtensionError(f"{F.name} is not a superfield")
    tower = Tower(F, D)
    top = F
    composite = identity(F)
    for k in range(1, max_steps + 1):
        p = None
        for f in _rootless(top, D, order):
            if is_irreducible(top, f, secondary=False):
                p = f
                break
        if p is None:
            break
        if top.size ** p.degree > max_carrier:
            raise CarrierTooLarge(f"step {k} would have {top.size ** p.degree} elements (bound {max_carrier})")
        Q = make_quotient(top, p, check_irreducible=False, name=f"step{k}")
        emb = Q.embedding
        if not emb.classification.is_full:
            raise ExtensionError(f"step {k} embedding is not full")
        root = Q.generator
        if not evaluate(top, p, root, Q.structure, emb) & (1 << Q.structure.zero):
            raise ExtensionError(f"step {k} modulus has no root in the new top")
        composite = compose(composite, emb)
        if not composite.classification.is_full:
            raise ExtensionError(f"composite embedding into step {k} is not full")
        tower.steps.append(ExtensionStep(top, Q.structure, emb, p, root, Q))
        tower.composites.append(composite)
        top = Q.structure
    tower.closed, tower.counterexample = is_alg_closed_up_to(top, D, order)
    return tower


def write_tower(tower: Tower, directory: str | Path) -> Path:
    """Write each level as ``.msr`` plus a JSON manifest with the embedding maps."""
    from .structures import serialize_structure

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    levels = [tower.base] + [s.top for s in tower.steps]
    files = []
    for k, S in enumerate(levels):
        path = out / f"step{k}.msr"
        path.write_text(serialize_structure(S))
        files.append(path.name)
    manifest = {
        "levels": files,
        "embeddings": [s.embedding.as_dict() for s in tower.steps],
        "moduli": [render_poly(s.base, s.modulus) for s in tower.steps],
        "max_degree": tower.degree,
        "closed_up_to_degree": tower.closed,
    }
    mpath = out / "manifest.json"
    mpath.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return mpath


def roots_preserved(step: ExtensionStep, later: MorphismTable) -> bool:
    """The adjoined root stays a root after pushing along ``later``."""
    K2 = later.codomain
    f2 = map_poly(step.modulus, compose(step.embedding, later))
    return bool(evaluate(K2, f2, later.images[step.root]) & (1 << K2.zero))
