"""Maps between finite superrings: classification, composition, isomorphisms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Mapping, Sequence

from .core import (CarrierTooLarge, ElemSet, FiniteSuperring, MultikitError, bits,
                   mask_of, popcount)

NOT_MORPHISM = "not-morphism"
MORPHISM = "morphism"
FULL = "full-morphism"


class MorphismError(MultikitError):
    pass


@dataclass(frozen=True, eq=False)
class MorphismTable:
    """A total map ``domain -> codomain`` given by codomain indices.

    The table is only a candidate; ``classify`` decides what it is.
    """

    domain: FiniteSuperring
    codomain: FiniteSuperring
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.size:
            raise MorphismError("map is not total on the domain")
        if any(not 0 <= i < self.codomain.size for i in self.images):
            raise MorphismError("map image outside codomain")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __eq__(self, other):
        if not isinstance(other, MorphismTable):
            return NotImplemented
        return (self.images == other.images and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self):
        return hash(self.images)

    def image(self, mask: ElemSet) -> ElemSet:
        return mask_of(self.images[a] for a in bits(mask))

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.size

    @cached_property
    def classification(self) -> "MapClass":
        return classify_map(self)

    def as_dict(self) -> dict[str, str]:
        d, c = self.domain, self.codomain
        return {d.names[a]: c.names[b] for a, b in enumerate(self.images)}

    def render(self) -> str:
        return ",".join(f"{k}:{v}" for k, v in self.as_dict().items())


@dataclass(frozen=True)
class MapClass:
    kind: str
    injective: bool
    surjective: bool
    witness: dict | None = None

    @property
    def is_morphism(self) -> bool:
        return self.kind != NOT_MORPHISM

    @property
    def is_full(self) -> bool:
        return self.kind == FULL

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "injective": self.injective, "surjective": self.surjective}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def from_mapping(A: FiniteSuperring, B: FiniteSuperring, mapping: Mapping[str, str]) -> MorphismTable:
    missing = [n for n in A.names if n not in mapping]
    if missing:
        raise MorphismError(f"map is not total: no image for {missing[0]!r}")
    unknown = [v for v in mapping.values() if v not in B.names]
    if unknown:
        raise MorphismError(f"unknown element {unknown[0]!r} in {B.name}")
    return MorphismTable(A, B, tuple(B.index(mapping[n]) for n in A.names))


def parse_map(text: str, A: FiniteSuperring, B: FiniteSuperring) -> MorphismTable:
    """Parse ``"a:b,c:d,..."``; whitespace is ignored."""
    mapping = {}
    compact = "".join(text.split())
    for item in filter(None, compact.split(",")):
        left, sep, right = item.rpartition(":")
        if not sep or not left:
            raise MorphismError(f"bad map entry {item!r}")
        if left in mapping:
            raise MorphismError(f"element {left!r} mapped twice")
        if left not in A.names:
            raise MorphismError(f"unknown element {left!r} in {A.name}")
        mapping[left] = right
    return from_mapping(A, B, mapping)


def identity(A: FiniteSuperring) -> MorphismTable:
    return MorphismTable(A, A, tuple(range(A.size)))


def inclusion(A: FiniteSuperring, B: FiniteSuperring) -> MorphismTable:
    """The map sending each element of ``A`` to the element of ``B`` with the same name."""
    return from_mapping(A, B, {n: n for n in A.names})


def classify_map(m: MorphismTable) -> MapClass:
    """Check the morphism conditions in order, then fullness."""
    A, B, f = m.domain, m.codomain, m.images
    nm = A.names

    def fail(cond, **w):
        return MapClass(NOT_MORPHISM, m.injective, m.surjective, {"condition": cond, **w})

    if f[A.zero] != B.zero:
        return fail("f(0)=0")
    if f[A.one] != B.one:
        return fail("f(1)=1")
    for a in range(A.size):
        if f[A.neg[a]] != B.neg[f[a]]:
            return fail("f(-a)=-f(a)", a=nm[a])
    for label, ta, tb in (("sum", A.sum_table, B.sum_table), ("prod", A.prod_table, B.prod_table)):
        for a in range(A.size):
            for b in range(A.size):
                target = tb[f[a]][f[b]]
                for c in bits(ta[a][b]):
                    if not (target >> f[c]) & 1:
                        return fail(f"{label} preserved", a=nm[a], b=nm[b], c=nm[c])
    for label, ta, tb in (("sum", A.sum_table, B.sum_table), ("prod", A.prod_table, B.prod_table)):
        for a in range(A.size):
            for b in range(A.size):
                img = m.image(ta[a][b])
                target = tb[f[a]][f[b]]
                if img != target:
                    return MapClass(MORPHISM, m.injective, m.surjective,
                                    {"not_full": label, "a": nm[a], "b": nm[b],
                                     "image": B.names_of(img), "target": B.names_of(target)})
    return MapClass(FULL, m.injective, m.surjective)


def extension_kind(sub: FiniteSuperring, sup: FiniteSuperring, embedding: MorphismTable) -> str:
    """``proto``, ``extension`` or ``full`` for an injective map."""
    if embedding.domain != sub or embedding.codomain != sup:
        raise MorphismError("embedding does not match the given structures")
    if not embedding.injective:
        raise MorphismError("embedding is not injective")
    kind = embedding.classification.kind
    return {NOT_MORPHISM: "proto", MORPHISM: "extension", FULL: "full"}[kind]


def compose(f: MorphismTable, g: MorphismTable) -> MorphismTable:
    """``g`` after ``f``."""
    if f.codomain != g.domain:
        raise MorphismError("codomain of the first map is not the domain of the second")
    return MorphismTable(f.domain, g.codomain, tuple(g.images[i] for i in f.images))


def inverse(f: MorphismTable) -> MorphismTable:
    if not (f.injective and f.surjective):
        raise MorphismError("map is not a bijection")
    inv = [0] * f.codomain.size
    for a, b in enumerate(f.images):
        inv[b] = a
    return MorphismTable(f.codomain, f.domain, tuple(inv))


# ---------------------------------------------------------------------------
# isomorphism search


def _signature(S: FiniteSuperring, a: int) -> tuple:
    return (
        tuple(sorted(Counter(popcount(S.sum_table[a][b]) for b in range(S.size)).items())),
        tuple(sorted(Counter(popcount(S.prod_table[a][b]) for b in range(S.size)).items())),
        S.neg[a] == a,
        popcount(S.inverses(a)),
    )


def is_isomorphism(f: MorphismTable) -> bool:
    if not (f.injective and f.surjective):
        return False
    return f.classification.is_full and inverse(f).classification.is_full


def find_isomorphism(A: FiniteSuperring, B: FiniteSuperring, max_size: int = 16) -> MorphismTable | None:
    """First (in index order) bijection that is a full morphism with full inverse."""
    if max(A.size, B.size) > max_size:
        raise CarrierTooLarge(f"isomorphism search limited to {max_size} elements")
    if A.size != B.size:
        return None
    n = A.size
    sa = [_signature(A, a) for a in range(n)]
    sb = [_signature(B, b) for b in range(n)]
    if sorted(sa) != sorted(sb):
        return None
    f = [-1] * n
    used = [False] * n
    fixed = {A.zero: B.zero, A.one: B.one}
    order = [A.zero] + ([A.one] if A.one != A.zero else []) + \
        [a for a in range(n) if a not in fixed]

    def consistent(a: int) -> bool:
        # every table cell among assigned elements must map exactly
        fa = f[a]
        if f[A.neg[a]] >= 0 and f[A.neg[a]] != B.neg[fa]:
            return False
        for b in range(n):
            fb = f[b]
            if fb < 0:
                continue
            for ta, tb in ((A.sum_table, B.sum_table), (A.prod_table, B.prod_table)):
                src, dst = ta[a][b], tb[fa][fb]
                if popcount(src) != popcount(dst):
                    return False
                for c in bits(src):
                    if f[c] >= 0 and not (dst >> f[c]) & 1:
                        return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        candidates = [fixed[a]] if a in fixed else range(n)
        for b in candidates:
            if used[b] or sa[a] != sb[b]:
                continue
            f[a] = b
            used[b] = True
            if consistent(a) and search(k + 1):
                return True
            f[a] = -1
            used[b] = False
        return False

    if A.zero == A.one and B.zero != B.one:
        return None
    if not search(0):
        return None
    m = MorphismTable(A, B, tuple(f))
    return m if is_isomorphism(m) else None


def brute_force_isomorphism(A: FiniteSuperring, B: FiniteSuperring) -> MorphismTable | None:
    """Reference search over all bijections (small carriers only)."""
    if A.size != B.size:
        return None
    for perm in permutations(range(B.size)):
        m = MorphismTable(A, B, perm)
        if is_isomorphism(m):
            return m
    return None


def all_maps(A: FiniteSuperring, B: FiniteSuperring):
    for images in product(range(B.size), repeat=A.size):
        yield MorphismTable(A, B, images)


def preimage_map(f: MorphismTable) -> Sequence[int | None]:
    pre: list[int | None] = [None] * f.codomain.size
    for a, b in enumerate(f.images):
        if pre[b] is None:
            pre[b] = a
    return pre
