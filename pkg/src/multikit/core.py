"""Finite superrings: carrier, set arithmetic, axiom ladder, ideals.

Subsets of a carrier are plain ``int`` bit masks (bit ``i`` set means element
``i`` is a member). Python integers are unbounded, so the same kernel serves
every carrier size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

ElemSet = int


class MultikitError(Exception):
    """Base class for all domain errors."""


class StructureError(MultikitError):
    """Tables violate a construction invariant."""


class CarrierMismatch(MultikitError):
    pass


class CarrierTooLarge(MultikitError):
    pass


class IdealError(MultikitError):
    pass


class QuotientError(MultikitError):
    """Raised when a quotient by an ideal is not well defined."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


def bits(mask: ElemSet) -> Iterator[int]:
    """Yield member indices of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> ElemSet:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: ElemSet) -> int:
    return bin(mask).count("1")


def first(mask: ElemSet) -> int:
    return (mask & -mask).bit_length() - 1


class FiniteSuperring:
    """A finite carrier with set-valued sum and product tables.

    ``sum_table[a][b]`` and ``prod_table[a][b]`` are bit masks over the carrier.
    Instances are immutable; construction enforces totality, commutativity,
    non-empty values, ``a+0 = {a}``, ``a*0 = {0}`` and that ``neg`` is an
    involution fixing zero.
    """

    __slots__ = ("name", "names", "sum_table", "prod_table", "neg", "zero", "one",
                 "_index", "_cache", "_hash")

    def __init__(self, name: str, names: Sequence[str], sum_table, prod_table,
                 neg: Sequence[int], zero: int, one: int):
        self.name = name
        self.names = tuple(names)
        self.sum_table = tuple(tuple(row) for row in sum_table)
        self.prod_table = tuple(tuple(row) for row in prod_table)
        self.neg = tuple(neg)
        self.zero = zero
        self.one = one
        self._index = {n: i for i, n in enumerate(self.names)}
        self._cache = {}
        self._hash = None
        self._check()

    def _check(self) -> None:
        n = len(self.names)
        if n == 0:
            raise StructureError("empty carrier")
        if len(self._index) != n:
            raise StructureError("element names are not unique")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise StructureError("zero/one outside carrier")
        full = (1 << n) - 1
        for label, table in (("sum", self.sum_table), ("prod", self.prod_table)):
            if len(table) != n or any(len(row) != n for row in table):
                raise StructureError(f"{label} table is not {n}x{n}")
            for a in range(n):
                for b in range(n):
                    v = table[a][b]
                    if v == 0:
                        raise StructureError(
                            f"{label} {self.names[a]} {self.names[b]} is empty")
                    if v & ~full:
                        raise StructureError(f"{label} entry outside carrier")
                    if v != table[b][a]:
                        raise StructureError(
                            f"{label} not commutative at {self.names[a]}, {self.names[b]}")
        z = self.zero
        for a in range(n):
            if self.sum_table[a][z] != 1 << a:
                raise StructureError(f"{self.names[a]} + 0 is not {{{self.names[a]}}}")
            if self.prod_table[a][z] != 1 << z:
                raise StructureError(f"{self.names[a]} * 0 is not {{0}}")
        if len(self.neg) != n or any(not 0 <= x < n for x in self.neg):
            raise StructureError("neg map is not total")
        if self.neg[z] != z:
            raise StructureError("neg(0) != 0")
        for a in range(n):
            if self.neg[self.neg[a]] != a:
                raise StructureError(f"neg is not an involution at {self.names[a]}")

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.names, self.sum_table, self.prod_table, self.neg, self.zero, self.one)

    def __eq__(self, other):
        if not isinstance(other, FiniteSuperring):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"FiniteSuperring({self.name!r}, size={self.size})"

    def __len__(self):
        return len(self.names)

    # -- elements -----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def carrier(self) -> ElemSet:
        return (1 << len(self.names)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MultikitError(f"unknown element {name!r} in {self.name}") from None

    def set_of(self, *names: str) -> ElemSet:
        return mask_of(self.index(n) for n in names)

    def names_of(self, mask: ElemSet) -> list[str]:
        return [self.names[i] for i in bits(mask)]

    def _own(self, mask: ElemSet) -> ElemSet:
        if mask < 0 or mask >> len(self.names):
            raise CarrierMismatch(f"set {mask:#x} is not a subset of {self.name}")
        return mask

    # -- set arithmetic -----------------------------------------------------

    def sumset(self, A: ElemSet, B: ElemSet) -> ElemSet:
        """Union of ``a+b`` over ``a in A``, ``b in B``."""
        key = ("+", A, B) if A <= B else ("+", B, A)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self._own(A)
        self._own(B)
        t = self.sum_table
        out = 0
        for a in bits(A):
            row = t[a]
            for b in bits(B):
                out |= row[b]
        self._cache[key] = out
        return out

    def prodset(self, A: ElemSet, B: ElemSet) -> ElemSet:
        key = ("*", A, B) if A <= B else ("*", B, A)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self._own(A)
        self._own(B)
        t = self.prod_table
        out = 0
        for a in bits(A):
            row = t[a]
            for b in bits(B):
                out |= row[b]
        self._cache[key] = out
        return out

    def negset(self, A: ElemSet) -> ElemSet:
        self._own(A)
        return mask_of(self.neg[a] for a in bits(A))

    def nary_sum(self, items: Iterable[ElemSet]) -> ElemSet:
        """Left-nested sum; the empty sum is ``{0}``."""
        acc = None
        for s in items:
            acc = s if acc is None else self.sumset(acc, s)
        return 1 << self.zero if acc is None else acc

    def nary_prod(self, items: Iterable[ElemSet]) -> ElemSet:
        acc = None
        for s in items:
            acc = s if acc is None else self.prodset(acc, s)
        return 1 << self.one if acc is None else acc

    def multiple(self, k: int, A: ElemSet) -> ElemSet:
        """``kA`` as the k-fold left-nested sum ``A + ... + A``."""
        return self.nary_sum([A] * k)

    def power(self, A: ElemSet, k: int) -> ElemSet:
        return self.nary_prod([A] * k)

    def elem(self, i: int) -> ElemSet:
        return 1 << i

    # -- misc ---------------------------------------------------------------

    def is_strict(self) -> bool:
        """Every sum and product entry is a singleton."""
        return all(popcount(v) == 1 for row in self.sum_table for v in row) and \
            all(popcount(v) == 1 for row in self.prod_table for v in row)

    def is_multiring_shaped(self) -> bool:
        return all(popcount(v) == 1 for row in self.prod_table for v in row)

    def nonzero(self) -> list[int]:
        return [i for i in range(self.size) if i != self.zero]

    def relabel(self, names: Sequence[str], name: str | None = None) -> "FiniteSuperring":
        return FiniteSuperring(name or self.name, names, self.sum_table, self.prod_table,
                               self.neg, self.zero, self.one)

    def named_tables(self) -> dict:
        """Order-free description used to compare structures by element names."""
        nm = self.names
        sums = {}
        prods = {}
        for a in range(self.size):
            for b in range(a, self.size):
                key = tuple(sorted((nm[a], nm[b])))
                sums[key] = frozenset(self.names_of(self.sum_table[a][b]))
                prods[key] = frozenset(self.names_of(self.prod_table[a][b]))
        return {
            "elements": frozenset(nm),
            "zero": nm[self.zero],
            "one": nm[self.one],
            "neg": {nm[a]: nm[self.neg[a]] for a in range(self.size)},
            "sum": sums,
            "prod": prods,
        }

    def inverses(self, a: int) -> ElemSet:
        """All ``b`` with ``1 in a*b``; empty when ``a`` is not invertible."""
        row = self.prod_table[a]
        one = 1 << self.one
        return mask_of(b for b in range(self.size) if row[b] & one)


# ---------------------------------------------------------------------------
# axiom ladder


@dataclass
class Verdict:
    passed: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"pass": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class ClassReport:
    """Per-axiom verdicts for one structure, plus the derived class flags."""

    structure: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Verdict:
        return self.verdicts[key]

    def __getattr__(self, key: str) -> bool:
        verdicts = self.__dict__.get("verdicts", {})
        if key in verdicts:
            return verdicts[key].passed
        raise AttributeError(key)

    def to_dict(self) -> dict:
        return {"structure": self.structure,
                "verdicts": {k: v.to_dict() for k, v in sorted(self.verdicts.items())}}


LADDER = ("multigroup", "multimonoid", "superring", "multiring", "hyperring", "full",
          "superdomain", "quasi_superfield", "superfield")

# verdict -> verdicts it must imply
IMPLICATIONS = {
    "superfield": ("superdomain", "quasi_superfield", "superring"),
    "superdomain": ("superring",),
    "quasi_superfield": ("superring",),
    "hyperring": ("multiring", "full"),
    "multiring": ("superring",),
    "full": ("superring",),
    "superring": ("multigroup", "multimonoid"),
    "multigroup": ("M1", "M2", "M3", "M4"),
}


def _nm(S: FiniteSuperring, *idx: int) -> list[str]:
    return [S.names[i] for i in idx]


def _first_failure(S, arity, predicate, labels):
    """Scan tuples in index order; return the first witness dict or None."""
    for tup in product(range(S.size), repeat=arity):
        extra = predicate(*tup)
        if extra is not None:
            w = dict(zip(labels, _nm(S, *tup)))
            w.update(extra)
            return w
    return None


def _check_m1(S: FiniteSuperring) -> Verdict:
    add, neg = S.sum_table, S.neg

    def pred(a, b):
        for c in bits(add[a][b]):
            if not (add[c][neg[b]] >> a) & 1:
                return {"c": S.names[c], "fails": "a in c-b"}
            if not (add[neg[a]][c] >> b) & 1:
                return {"c": S.names[c], "fails": "b in -a+c"}
        return None

    w = _first_failure(S, 2, pred, ("a", "b"))
    return Verdict(w is None, w)


def _check_unit(S: FiniteSuperring, table, unit: int, strict_iff: bool) -> Verdict:
    """``b in a.unit iff a=b`` (strict_iff) or merely ``a in a.unit``."""
    for a in range(S.size):
        v = table[a][unit]
        if strict_iff and v != 1 << a:
            return Verdict(False, {"a": S.names[a], "a_op_unit": S.names_of(v)})
        if not strict_iff and not (v >> a) & 1:
            return Verdict(False, {"a": S.names[a], "a_op_unit": S.names_of(v)})
    return Verdict(True)


def _check_assoc(S: FiniteSuperring, op) -> Verdict:
    """Reassociation: (a.b).c is contained in a.(b.c)."""

    def pred(a, b, c):
        lhs = op(op(1 << a, 1 << b), 1 << c)
        rhs = op(1 << a, op(1 << b, 1 << c))
        bad = lhs & ~rhs
        if bad:
            return {"t": S.names[first(bad)], "lhs": S.names_of(lhs), "rhs": S.names_of(rhs)}
        return None

    w = _first_failure(S, 3, pred, ("a", "b", "c"))
    return Verdict(w is None, w)


def _check_comm(S: FiniteSuperring, table) -> Verdict:
    for a in range(S.size):
        for b in range(a + 1, S.size):
            if table[a][b] != table[b][a]:
                return Verdict(False, {"a": S.names[a], "b": S.names[b]})
    return Verdict(True)


def _check_distributive(S: FiniteSuperring, equality: bool) -> Verdict:
    """``c(a+b)`` against ``ca+cb``: containment, or equality when ``equality``."""

    def pred(a, b, c):
        lhs = S.prodset(1 << c, S.sum_table[a][b])
        rhs = S.sumset(S.prod_table[c][a], S.prod_table[c][b])
        if lhs & ~rhs or (equality and rhs & ~lhs):
            return {"lhs": S.names_of(lhs), "rhs": S.names_of(rhs)}
        return None

    w = _first_failure(S, 3, pred, ("a", "b", "c"))
    return Verdict(w is None, w)


def _check_signs(S: FiniteSuperring) -> Verdict:
    neg, mul = S.neg, S.prod_table

    def pred(a, b):
        ab = S.negset(mul[a][b])
        if ab != mul[neg[a]][b] or ab != mul[a][neg[b]]:
            return {"neg_ab": S.names_of(ab), "nega_b": S.names_of(mul[neg[a]][b]),
                    "a_negb": S.names_of(mul[a][neg[b]])}
        return None

    w = _first_failure(S, 2, pred, ("a", "b"))
    return Verdict(w is None, w)


def _check_domain(S: FiniteSuperring) -> Verdict:
    if S.zero == S.one:
        return Verdict(False, {"reason": "trivial structure"})
    z = S.zero

    def pred(a, b):
        if a != z and b != z and (S.prod_table[a][b] >> z) & 1:
            return {"ab": S.names_of(S.prod_table[a][b])}
        return None

    w = _first_failure(S, 2, pred, ("a", "b"))
    return Verdict(w is None, w)


def _check_inverses(S: FiniteSuperring) -> Verdict:
    if S.zero == S.one:
        return Verdict(False, {"reason": "trivial structure"})
    for a in S.nonzero():
        if not S.inverses(a):
            return Verdict(False, {"a": S.names[a]})
    return Verdict(True)


def _check_mult_multigroup(S: FiniteSuperring) -> Verdict | None:
    """Multiplicative multigroup on nonzero elements, when inverses are unique.

    Informational only. Returns None when the inverse map is not a function.
    """
    inv = {}
    for a in S.nonzero():
        s = S.inverses(a)
        if popcount(s) != 1:
            return None
        inv[a] = first(s)
    nz = S.nonzero()
    for a in nz:
        for b in nz:
            for c in bits(S.prod_table[a][b]):
                if c == S.zero:
                    return Verdict(False, {"a": S.names[a], "b": S.names[b], "c": "0"})
                if not (S.prod_table[c][inv[b]] >> a) & 1 or not (S.prod_table[inv[a]][c] >> b) & 1:
                    return Verdict(False, _dict(S, a=a, b=b, c=c))
    return Verdict(True)


def _dict(S, **kw):
    return {k: S.names[v] for k, v in kw.items()}


def _all(*vs: Verdict) -> Verdict:
    for v in vs:
        if not v.passed:
            return Verdict(False, v.witness)
    return Verdict(True)


def validate(S: FiniteSuperring) -> ClassReport:
    """Check every axiom by exhaustive quantification over the carrier."""
    r = ClassReport(S.name)
    v = r.verdicts
    v["M1"] = _check_m1(S)
    v["M2"] = _check_unit(S, S.sum_table, S.zero, strict_iff=True)
    v["M3"] = _check_assoc(S, S.sumset)
    v["M4"] = _check_comm(S, S.sum_table)
    v["multigroup"] = _all(v["M1"], v["M2"], v["M3"], v["M4"])
    v["mult_assoc"] = _check_assoc(S, S.prodset)
    v["mult_comm"] = _check_comm(S, S.prod_table)
    v["mult_unit"] = _check_unit(S, S.prod_table, S.one, strict_iff=False)
    v["multimonoid"] = _all(v["mult_assoc"], v["mult_comm"], v["mult_unit"])
    mg = _check_mult_multigroup(S)
    if mg is not None:
        v["mult_multigroup"] = mg
    v["absorbing"] = Verdict(True)  # enforced at construction
    v["weak_distributive"] = _check_distributive(S, equality=False)
    v["sign_rule"] = _check_signs(S)
    v["superring"] = _all(v["multigroup"], v["multimonoid"], v["absorbing"],
                          v["weak_distributive"], v["sign_rule"])
    single = Verdict(True)
    for a in range(S.size):
        for b in range(S.size):
            if popcount(S.prod_table[a][b]) != 1 and single.passed:
                single = Verdict(False, {"a": S.names[a], "b": S.names[b],
                                         "ab": S.names_of(S.prod_table[a][b])})
    v["single_valued_product"] = single
    v["multiring"] = _all(v["superring"], single)
    v["distributive"] = _check_distributive(S, equality=True)
    v["full"] = _all(v["superring"], v["distributive"])
    v["hyperring"] = _all(v["multiring"], v["distributive"])
    v["no_zero_divisors"] = _check_domain(S)
    v["invertible"] = _check_inverses(S)
    v["superdomain"] = _all(v["superring"], v["no_zero_divisors"])
    v["quasi_superfield"] = _all(v["superring"], v["invertible"])
    v["superfield"] = _all(v["quasi_superfield"], v["superdomain"])
    for key, implied in IMPLICATIONS.items():
        if v[key].passed:
            for other in implied:
                assert v[other].passed, f"{key} holds but {other} fails for {S.name}"
    return r


# ---------------------------------------------------------------------------
# characteristic, ideals, quotients


def characteristic(S: FiniteSuperring) -> int:
    """Smallest ``n >= 1`` with ``0`` in ``1 + ... + 1`` (n terms), else 0.

    The partial-sum sets live in a finite powerset, so the sequence is
    eventually periodic; a repeated set means 0 never shows up.
    """
    one = 1 << S.one
    z = 1 << S.zero
    acc = one
    seen = set()
    n = 1
    while acc not in seen:
        if acc & z:
            return n
        seen.add(acc)
        acc = S.sumset(acc, one)
        n += 1
    return 0


def inverses(a: int, S: FiniteSuperring) -> ElemSet:
    return S.inverses(a)


@dataclass(frozen=True)
class IdealSet:
    members: ElemSet
    prime: bool
    strongly_prime: bool
    maximal: bool

    def names(self, S: FiniteSuperring) -> list[str]:
        return S.names_of(self.members)


def is_ideal(S: FiniteSuperring, I: ElemSet) -> bool:
    if not I:
        return False
    if S.sumset(I, I) & ~I:
        return False
    return not (S.prodset(S.carrier, I) & ~I)


def _is_prime(S: FiniteSuperring, I: ElemSet, strong: bool) -> bool:
    if (I >> S.one) & 1:
        return False
    for a in range(S.size):
        if (I >> a) & 1:
            continue
        for b in range(S.size):
            if (I >> b) & 1:
                continue
            ab = S.prod_table[a][b]
            hit = bool(ab & I) if strong else not (ab & ~I)
            if hit:
                return False
    return True


def enumerate_ideals(S: FiniteSuperring, max_carrier: int = 12) -> list[IdealSet]:
    """All ideals, in increasing mask order, flagged prime/strongly prime/maximal."""
    if S.size > max_carrier:
        raise CarrierTooLarge(f"{S.name} has {S.size} elements (limit {max_carrier})")
    z = 1 << S.zero
    others = [i for i in range(S.size) if i != S.zero]
    found = []
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            I = z | mask_of(combo)
            if is_ideal(S, I):
                found.append(I)
    found.sort()
    full = S.carrier
    out = []
    for I in found:
        sp = _is_prime(S, I, strong=True)
        pr = _is_prime(S, I, strong=False)
        assert not sp or pr, "strongly prime ideal that is not prime"
        maximal = I != full and not any(J != I and J != full and (J & I) == I for J in found)
        out.append(IdealSet(I, pr, sp, maximal))
    return out


def quotient_by_ideal(S: FiniteSuperring, ideal: IdealSet | ElemSet) -> FiniteSuperring:
    """``S/I`` under ``x ~ y`` iff ``(x - y)`` meets ``I``.

    Classes are named after their smallest-index member. Raises
    ``QuotientError`` when the relation is not an equivalence or when the
    induced operations depend on the choice of representatives.
    """
    I = ideal.members if isinstance(ideal, IdealSet) else ideal
    S._own(I)
    if not is_ideal(S, I):
        raise IdealError(f"{S.names_of(I)} is not an ideal of {S.name}")
    n = S.size
    rel = [[bool(S.sum_table[x][S.neg[y]] & I) for y in range(n)] for x in range(n)]
    for x in range(n):
        if not rel[x][x]:
            raise QuotientError("relation not reflexive", _nm(S, x))
        for y in range(n):
            if rel[x][y] != rel[y][x]:
                raise QuotientError("relation not symmetric", tuple(_nm(S, x, y)))
    for x, y, z in product(range(n), repeat=3):
        if rel[x][y] and rel[y][z] and not rel[x][z]:
            raise QuotientError("relation not transitive", tuple(_nm(S, x, y, z)))
    cls = [min(y for y in range(n) if rel[x][y]) for x in range(n)]
    reps = sorted(set(cls))
    pos = {r: i for i, r in enumerate(reps)}

    def image(mask):
        return mask_of(pos[cls[z]] for z in bits(mask))

    size = len(reps)
    sums = [[0] * size for _ in range(size)]
    prods = [[0] * size for _ in range(size)]
    members = {r: [x for x in range(n) if cls[x] == r] for r in reps}
    for i, r1 in enumerate(reps):
        for j, r2 in enumerate(reps):
            s_val = p_val = None
            for x in members[r1]:
                for y in members[r2]:
                    s = image(S.sum_table[x][y])
                    p = image(S.prod_table[x][y])
                    if s_val is None:
                        s_val, p_val = s, p
                    elif s != s_val or p != p_val:
                        raise QuotientError("operations depend on representatives",
                                            tuple(_nm(S, x, y)))
            sums[i][j] = s_val
            prods[i][j] = p_val
    neg = [pos[cls[S.neg[r]]] for r in reps]
    return FiniteSuperring(f"{S.name}/{{{','.join(S.names_of(I))}}}",
                           [S.names[r] for r in reps], sums, prods, neg,
                           pos[cls[S.zero]], pos[cls[S.one]])


def order_independent(S: FiniteSuperring, items: Sequence[ElemSet], op: str = "+") -> bool:
    """Whether the left-nested n-ary sum (or product) ignores entry order."""
    fold = S.nary_sum if op == "+" else S.nary_prod
    ref = fold(items)
    return all(fold(p) == ref for p in permutations(items))
