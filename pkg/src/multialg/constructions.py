"""Multiring-building constructions: products, quotients by ideals,
localizations, fraction multifields, Marshall quotients and the reduced
quotient at sums of unit squares.

Constructions that the theory assumes to be well defined (coset partitions,
transitivity of the Marshall relation, representative independence) are
verified on each instance; a violation raises StructuralAnomaly with the
offending elements instead of silently producing garbage.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    CARRIER_CAP,
    Carrier,
    FiniteMultiring,
    InputError,
    StructureMap,
    StructuralAnomaly,
    bits,
    classify,
    full_mask,
    mask_of,
)


@dataclass(frozen=True)
class Ideal:
    """Subset containing 0, closed under set-valued sums, absorbing products."""

    parent: FiniteMultiring
    members: int

    def __post_init__(self) -> None:
        a = self.parent
        m = self.members
        if not (m >> a.zero) & 1:
            raise InputError("ideal must contain 0")
        if m & ~full_mask(a.size):
            raise InputError("ideal members outside carrier")
        for x in bits(m):
            for y in bits(m):
                if a.add[x][y] & ~m:
                    raise InputError(
                        f"not sum-closed at ({a.names[x]},{a.names[y]})")
        for x in range(a.size):
            for y in bits(m):
                if not (m >> a.mul[x][y]) & 1:
                    raise InputError(
                        f"not absorbing at ({a.names[x]},{a.names[y]})")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.parent.carrier.labels(self.members)

    def is_proper(self) -> bool:
        return not (self.members >> self.parent.one) & 1


@dataclass(frozen=True)
class MultiplicativeSet:
    """Subset containing 1 and closed under multiplication."""

    parent: FiniteMultiring
    members: int

    def __post_init__(self) -> None:
        a = self.parent
        m = self.members
        if not (m >> a.one) & 1:
            raise InputError("multiplicative set must contain 1")
        if m & ~full_mask(a.size):
            raise InputError("members outside carrier")
        for x in bits(m):
            for y in bits(m):
                if not (m >> a.mul[x][y]) & 1:
                    raise InputError(
                        f"not multiplicatively closed at "
                        f"({a.names[x]},{a.names[y]})")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.parent.carrier.labels(self.members)


def multiplicative_set(a: FiniteMultiring, labels: Sequence[str]) -> MultiplicativeSet:
    return MultiplicativeSet(a, mask_of(a.carrier.index(l) for l in labels))


# ---------------------------------------------------------------------------
# products

def product(factors: Sequence[FiniteMultiring],
            sep: str = ",") -> FiniteMultiring:
    """Componentwise product; the empty product is the one-element 1=0 ring."""
    if not factors:
        carrier = Carrier(("0",))
        return FiniteMultiring(carrier, ((1,),), ((0,),), (0,), 0, 0)
    total = 1
    for f in factors:
        total *= f.size
    if total > CARRIER_CAP:
        raise InputError(f"product size {total} exceeds cap {CARRIER_CAP}")

    index_tuples = list(itertools.product(*(range(f.size) for f in factors)))
    pos = {t: i for i, t in enumerate(index_tuples)}
    names = tuple("(" + sep.join(f.names[i] for f, i in zip(factors, t)) + ")"
                  for t in index_tuples)

    def add_cell(s: tuple[int, ...], t: tuple[int, ...]) -> int:
        out = 0
        for combo in itertools.product(
                *(bits(f.add[x][y]) for f, x, y in zip(factors, s, t))):
            out |= 1 << pos[combo]
        return out

    add = tuple(tuple(add_cell(s, t) for t in index_tuples) for s in index_tuples)
    mul = tuple(tuple(pos[tuple(f.mul[x][y] for f, x, y in zip(factors, s, t))]
                      for t in index_tuples) for s in index_tuples)
    neg = tuple(pos[tuple(f.neg[x] for f, x in zip(factors, s))]
                for s in index_tuples)
    zero = pos[tuple(f.zero for f in factors)]
    one = pos[tuple(f.one for f in factors)]
    return FiniteMultiring(Carrier(names), add, mul, neg, zero, one)


# ---------------------------------------------------------------------------
# ideals

def ideal_generated(a: FiniteMultiring, labels: Sequence[str]) -> Ideal:
    """Least ideal containing the given elements, by closure iteration."""
    members = (1 << a.zero) | mask_of(a.carrier.index(l) for l in labels)
    while True:
        grown = members
        for x in range(a.size):
            for y in bits(members):
                grown |= 1 << a.mul[x][y]
        for x in bits(grown):
            for y in bits(grown):
                grown |= a.add[x][y]
        if grown == members:
            return Ideal(a, members)
        members = grown


# ---------------------------------------------------------------------------
# quotient by an ideal

def _class_setup(a: FiniteMultiring, class_of: list[int]) -> tuple[
        list[int], dict[int, int], tuple[str, ...]]:
    reps = sorted(set(class_of))
    rep_index = {r: i for i, r in enumerate(reps)}
    names = tuple(f"[{a.names[r]}]" for r in reps)
    return reps, rep_index, names


def quotient_by_ideal(a: FiniteMultiring,
                      ideal: Ideal) -> tuple[FiniteMultiring, StructureMap]:
    """Cosets x + I as elements; returns the quotient and the projection.

    The coset family is required to partition the carrier and the induced
    operations to be representative independent; both are verified.
    """
    if ideal.parent is not a and ideal.parent != a:
        raise InputError("ideal does not belong to this multiring")
    n = a.size
    cosets = [a.add_masks(1 << x, ideal.members) for x in range(n)]
    class_of = [-1] * n
    for x in range(n):
        if class_of[x] >= 0:
            continue
        for y in bits(cosets[x]):
            if cosets[y] != cosets[x]:
                raise StructuralAnomaly(
                    f"cosets of {a.names[x]} and {a.names[y]} overlap "
                    f"without being equal")
            class_of[y] = x
        class_of[x] = x
    reps, rep_index, names = _class_setup(a, class_of)

    def cls(x: int) -> int:
        return rep_index[class_of[x]]

    k = len(reps)
    add = [[0] * k for _ in range(k)]
    mul = [[0] * k for _ in range(k)]
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            add[i][j] = mask_of(cls(c) for c in bits(a.add[x][y]))
            mul[i][j] = cls(a.mul[x][y])
    # representative independence
    for x, y in itertools.product(range(n), repeat=2):
        i, j = cls(x), cls(y)
        if mask_of(cls(c) for c in bits(a.add[x][y])) != add[i][j]:
            raise StructuralAnomaly(
                f"quotient sum depends on representatives at "
                f"({a.names[x]},{a.names[y]})")
        if cls(a.mul[x][y]) != mul[i][j]:
            raise StructuralAnomaly(
                f"quotient product depends on representatives at "
                f"({a.names[x]},{a.names[y]})")
        if cls(a.neg[x]) != cls(a.neg[reps[i]]):
            raise StructuralAnomaly(
                f"quotient negation depends on representatives at {a.names[x]}")

    neg = tuple(cls(a.neg[x]) for x in reps)
    q = FiniteMultiring(Carrier(names), tuple(tuple(r) for r in add),
                        tuple(tuple(r) for r in mul), neg,
                        cls(a.zero), cls(a.one))
    proj = StructureMap(a, q, tuple(cls(x) for x in range(n)))
    return q, proj


# ---------------------------------------------------------------------------
# localization

def localization(a: FiniteMultiring,
                 s: MultiplicativeSet) -> tuple[FiniteMultiring, StructureMap]:
    """Classes of fractions x/s; sums via c/u in x/s + y/t iff
    c s t v lies in x t u v + y s u v for some v in S."""
    if s.parent is not a and s.parent != a:
        raise InputError("multiplicative set does not belong to this multiring")
    svals = list(bits(s.members))
    pairs = [(x, t) for x in range(a.size) for t in svals]

    def pair_eq(p: tuple[int, int], q: tuple[int, int]) -> bool:
        x, t = p
        y, w = q
        return any(a.mul[a.mul[x][w]][u] == a.mul[a.mul[y][t]][u] for u in svals)

    cls_of: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for p in pairs:
        for i, r in enumerate(reps):
            if pair_eq(p, r):
                cls_of[p] = i
                break
        else:
            cls_of[p] = len(reps)
            reps.append(p)
    # the pair relation must be an equivalence on this instance
    for p, q in itertools.combinations(pairs, 2):
        if (cls_of[p] == cls_of[q]) != pair_eq(p, q):
            raise StructuralAnomaly(
                f"fraction equality is not transitive at {p} ~ {q}")

    k = len(reps)
    names = tuple(f"{a.names[x]}/{a.names[t]}" for x, t in reps)

    def sum_contains(c_pair: tuple[int, int], p: tuple[int, int],
                     q: tuple[int, int]) -> bool:
        c, u = c_pair
        x, sx = p
        y, sy = q
        cst = a.mul[a.mul[c][sx]][sy]
        for v in svals:
            left = a.mul[cst][v]
            xt = a.mul[a.mul[a.mul[x][sy]][u]][v]
            ys = a.mul[a.mul[a.mul[y][sx]][u]][v]
            if (a.add[xt][ys] >> left) & 1:
                return True
        return False

    add = [[0] * k for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        add[i][j] = mask_of(c for c in range(k)
                            if sum_contains(reps[c], reps[i], reps[j]))
    mul = [[cls_of[(a.mul[reps[i][0]][reps[j][0]],
                    a.mul[reps[i][1]][reps[j][1]])]
            for j in range(k)] for i in range(k)]
    neg = tuple(cls_of[(a.neg[x], t)] for x, t in reps)
    # representative independence of the induced operations
    for p, q in itertools.product(pairs, repeat=2):
        i, j = cls_of[p], cls_of[q]
        if cls_of[(a.mul[p[0]][q[0]], a.mul[p[1]][q[1]])] != mul[i][j]:
            raise StructuralAnomaly(
                f"localized product depends on representatives at {p},{q}")
        got = mask_of(c for c in range(k) if sum_contains(reps[c], p, q))
        if got != add[i][j]:
            raise StructuralAnomaly(
                f"localized sum depends on representatives at {p},{q}")

    q_ring = FiniteMultiring(Carrier(names), tuple(tuple(r) for r in add),
                             tuple(tuple(r) for r in mul), neg,
                             cls_of[(a.zero, a.one)], cls_of[(a.one, a.one)])
    canonical = StructureMap(a, q_ring,
                             tuple(cls_of[(x, a.one)] for x in range(a.size)))
    return q_ring, canonical


def fraction_multifield(d: FiniteMultiring) -> tuple[FiniteMultiring, StructureMap]:
    """Localize a multidomain at all of its nonzero elements."""
    kind = classify(d)
    if not kind.multidomain:
        raise InputError("fraction multifield requires a multidomain")
    return localization(d, MultiplicativeSet(d, d.nonzero_mask()))


# ---------------------------------------------------------------------------
# Marshall quotient

def marshall_quotient(a: FiniteMultiring,
                      s: MultiplicativeSet) -> tuple[FiniteMultiring, StructureMap]:
    """Quotient by x ~ y iff xs = yt for some s,t in S.

    Transitivity of ~ is verified on the instance before quotienting.
    Sums are c-bar in x-bar + y-bar iff cv lies in xs + yt for some s,t,v.
    """
    if s.parent is not a and s.parent != a:
        raise InputError("multiplicative set does not belong to this multiring")
    n = a.size
    svals = list(bits(s.members))

    def related(x: int, y: int) -> bool:
        return any(a.mul[x][u] == a.mul[y][v] for u in svals for v in svals)

    class_of = [-1] * n
    reps_raw: list[int] = []
    for x in range(n):
        for r in reps_raw:
            if related(x, r):
                class_of[x] = r
                break
        else:
            class_of[x] = x
            reps_raw.append(x)
    for x, y in itertools.combinations(range(n), 2):
        if related(x, y) != (class_of[x] == class_of[y]):
            raise StructuralAnomaly(
                f"Marshall relation is not transitive at "
                f"({a.names[x]},{a.names[y]})")

    reps, rep_index, names = _class_setup(a, class_of)

    def cls(x: int) -> int:
        return rep_index[class_of[x]]

    k = len(reps)

    def sum_contains(c: int, x: int, y: int) -> bool:
        for u in svals:
            cv = a.mul[c][u]
            for sv in svals:
                xs = a.mul[x][sv]
                for tv in svals:
                    if (a.add[xs][a.mul[y][tv]] >> cv) & 1:
                        return True
        return False

    add = [[0] * k for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        add[i][j] = mask_of(cls(c) for c in range(n)
                            if sum_contains(c, reps[i], reps[j]))
    mul = tuple(tuple(cls(a.mul[x][y]) for y in reps) for x in reps)
    neg = tuple(cls(a.neg[x]) for x in reps)
    q = FiniteMultiring(Carrier(names), tuple(tuple(r) for r in add), mul, neg,
                        cls(a.zero), cls(a.one))
    proj = StructureMap(a, q, tuple(cls(x) for x in range(n)))
    return q, proj


# ---------------------------------------------------------------------------
# sums of nonzero squares and the reduced quotient

@dataclass(frozen=True)
class SquareClosure:
    """Closure of the unit squares under products and set-valued sums."""

    parent: FiniteMultiring
    members: int
    contains_zero: bool
    contains_minus_one: bool

    @property
    def proper(self) -> bool:
        return not (self.contains_zero or self.contains_minus_one)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.parent.carrier.labels(self.members)

    def as_multiplicative_set(self) -> MultiplicativeSet:
        return MultiplicativeSet(self.parent, self.members)


def units_mask(a: FiniteMultiring) -> int:
    return mask_of(x for x in range(a.size)
                   if any(a.mul[x][y] == a.one for y in range(a.size)))


def sum_of_squares_closure(a: FiniteMultiring) -> SquareClosure:
    members = mask_of(a.mul[x][x] for x in bits(units_mask(a)))
    while True:
        grown = members
        for x in bits(members):
            for y in bits(members):
                grown |= 1 << a.mul[x][y]
                grown |= a.add[x][y]
        if grown == members:
            break
        members = grown
    return SquareClosure(
        a, members,
        contains_zero=bool((members >> a.zero) & 1),
        contains_minus_one=bool((members >> a.neg[a.one]) & 1),
    )


def q_red(a: FiniteMultiring) -> tuple[FiniteMultiring, StructureMap]:
    """Marshall quotient at the closure of the unit squares."""
    closure = sum_of_squares_closure(a)
    if not closure.proper:
        bad = "-1" if closure.contains_minus_one else "0"
        raise InputError(
            f"not real: {bad} lies in the sums-of-squares closure")
    return marshall_quotient(a, closure.as_multiplicative_set())
