"""Exhaustive enumeration of small structures up to isomorphism.

Generation walks zero/one placement, negation, multiplication and then the
free addition cells in depth-first order, pruning with the axiom fragments
that are sound to apply early (forced identity rows, zero membership exactly
at opposite pairs, partial reversibility).  Candidates that survive the full
audit are canonicalized by the lexicographically least serialization over
all relabelings.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from .core import (
    Carrier,
    FiniteMultigroup,
    FiniteMultiring,
    InputError,
    bits,
    check_multigroup,
    check_multiring,
    classify,
    mask_of,
)

ENUMERABLE_KINDS = ("multigroup", "multiring", "multidomain", "multifield")


def _involutions_fixing(n: int, fixed: int) -> Iterator[tuple[int, ...]]:
    """All involutions of range(n) fixing the given element."""
    elems = [x for x in range(n) if x != fixed]

    def build(rest: list[int], acc: dict[int, int]) -> Iterator[dict[int, int]]:
        if not rest:
            yield dict(acc)
            return
        x = rest[0]
        yield from build(rest[1:], {**acc, x: x})
        for y in rest[1:]:
            yield from build([r for r in rest[1:] if r != y],
                             {**acc, x: y, y: x})

    for mapping in build(elems, {fixed: fixed}):
        yield tuple(mapping[i] for i in range(n))


def _monoid_tables(n: int, zero: int, one: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Commutative, associative tables with forced unit and absorbing zero."""
    free = [x for x in range(n) if x not in (zero, one)]
    cells = [(x, y) for i, x in enumerate(free) for y in free[i:]]

    def fill(idx: int, table: list[list[int]]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if idx == len(cells):
            for a, b, c in itertools.product(range(n), repeat=3):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    return
            yield tuple(tuple(r) for r in table)
            return
        x, y = cells[idx]
        for v in range(n):
            table[x][y] = v
            table[y][x] = v
            yield from fill(idx + 1, table)
        table[x][y] = table[y][x] = -1

    base = [[-1] * n for _ in range(n)]
    for a in range(n):
        base[zero][a] = base[a][zero] = zero
        base[one][a] = base[a][one] = a
    yield from fill(0, base)


def _addition_tables(n: int, zero: int,
                     neg: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Commutative set-valued tables with the zero row forced, zero membership
    exactly at opposite pairs, and partial reversibility pruning."""
    nonzero = [x for x in range(n) if x != zero]
    cells = [(x, y) for i, x in enumerate(nonzero) for y in nonzero[i:]]
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        table[zero][a] = 1 << a
        table[a][zero] = 1 << a

    def candidates(x: int, y: int) -> Iterator[int]:
        others = [e for e in nonzero]
        for sub in range(1 << len(others)):
            m = mask_of(others[i] for i in bits(sub))
            if y == neg[x]:
                yield m | (1 << zero)
            elif m:
                yield m

    def partial_ok(upto: int) -> bool:
        x, y = cells[upto]
        cell = table[x][y]
        for z in bits(cell):
            if z == zero:
                continue
            # reversibility: x in z + neg(y), y in neg(x) + z, when decided
            for (p, q, want) in ((z, neg[y], x), (neg[x], z, y)):
                if table[p][q] and not (table[p][q] >> want) & 1:
                    return False
        return True

    def fill(idx: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if idx == len(cells):
            yield tuple(tuple(r) for r in table)
            return
        x, y = cells[idx]
        for cell in candidates(x, y):
            table[x][y] = cell
            table[y][x] = cell
            if partial_ok(idx):
                yield from fill(idx + 1)
        table[x][y] = table[y][x] = 0

    yield from fill(0)


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(n))


def generate_multirings(n: int) -> Iterator[FiniteMultiring]:
    """All labeled multirings on n elements passing the full audit."""
    if n == 1:
        yield FiniteMultiring(Carrier(_labels(1)), ((1,),), ((0,),), (0,), 0, 0)
        return
    carrier = Carrier(_labels(n))
    for zero, one in itertools.permutations(range(n), 2):
        for neg in _involutions_fixing(n, zero):
            for mul in _monoid_tables(n, zero, one):
                for add in _addition_tables(n, zero, neg):
                    cand = FiniteMultiring(carrier, add, mul, neg, zero, one)
                    if check_multiring(cand).overall:
                        yield cand


def generate_multigroups(n: int) -> Iterator[FiniteMultigroup]:
    """All labeled commutative multigroups on n elements."""
    carrier = Carrier(_labels(n))
    for identity in range(n):
        for inv in _involutions_fixing(n, identity):
            for op in _addition_tables(n, identity, inv):
                cand = FiniteMultigroup(carrier, op, inv, identity)
                if check_multigroup(cand).overall:
                    yield cand


def multiring_canonical_key(r: FiniteMultiring) -> tuple:
    """Lexicographically least serialization over all relabelings."""
    n = r.size
    best: Optional[tuple] = None
    for perm in itertools.permutations(range(n)):
        add = tuple(tuple(mask_of(perm[c] for c in bits(r.add[x][y]))
                          for y in _inv_perm_order(perm, n))
                    for x in _inv_perm_order(perm, n))
        mul = tuple(tuple(perm[r.mul[x][y]] for y in _inv_perm_order(perm, n))
                    for x in _inv_perm_order(perm, n))
        neg = tuple(perm[r.neg[x]] for x in _inv_perm_order(perm, n))
        key = (n, perm[r.zero], perm[r.one], neg, mul, add)
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def _inv_perm_order(perm: Sequence[int], n: int) -> list[int]:
    """Old indices listed in order of their new names."""
    out = [0] * n
    for old, new in enumerate(perm):
        out[new] = old
    return out


def multigroup_canonical_key(m: FiniteMultigroup) -> tuple:
    n = m.size
    best: Optional[tuple] = None
    for perm in itertools.permutations(range(n)):
        order = _inv_perm_order(perm, n)
        op = tuple(tuple(mask_of(perm[c] for c in bits(m.op[x][y]))
                         for y in order) for x in order)
        inv = tuple(perm[m.inv[x]] for x in order)
        key = (n, perm[m.identity], inv, op)
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def multiring_from_key(key: tuple) -> FiniteMultiring:
    n, zero, one, neg, mul, add = key
    return FiniteMultiring(Carrier(_labels(n)), add, mul, neg, zero, one)


def multigroup_from_key(key: tuple) -> FiniteMultigroup:
    n, identity, inv, op = key
    return FiniteMultigroup(Carrier(_labels(n)), op, inv, identity)


def enumerate_structures(kind: str, order: int, up_to_iso: bool = True):
    """All structures of the given kind with 1..order elements.

    With up_to_iso one canonical representative per isomorphism class is
    returned; otherwise every labeled structure."""
    if kind not in ENUMERABLE_KINDS:
        raise InputError(f"cannot enumerate kind {kind!r}; "
                         f"supported: {', '.join(ENUMERABLE_KINDS)}")
    if order < 1:
        raise InputError("order must be positive")
    if order > 3:
        raise InputError(
            "enumeration is supported up to order 3 (the addition-table\n"
            "search space grows too fast beyond that)")
    out = []
    seen = set()
    for n in range(1, order + 1):
        if kind == "multigroup":
            for m in generate_multigroups(n):
                if not up_to_iso:
                    out.append(m)
                    continue
                key = multigroup_canonical_key(m)
                if key not in seen:
                    seen.add(key)
                    out.append(multigroup_from_key(key))
            continue
        for r in generate_multirings(n):
            flags = classify(r, verified=True)
            if kind == "multidomain" and not flags.multidomain:
                continue
            if kind == "multifield" and not flags.multifield:
                continue
            if not up_to_iso:
                out.append(r)
                continue
            key = multiring_canonical_key(r)
            if key not in seen:
                seen.add(key)
                out.append(multiring_from_key(key))
    return out
