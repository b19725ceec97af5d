"""Ideal and ordering spectra of finite multirings.

Prime/maximal enumeration, the patch-topology relations of the spectrum
embedding into {0,1}^A, orderings and their bijection with morphisms to the
sign multifield, preorderings, real and real-reduced characterizations, and
the componentwise evaluation embedding into a power of the sign multifield.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from .core import (
    CARRIER_CAP,
    CheckReport,
    FiniteMultiring,
    InputError,
    StructureMap,
    Verdict,
    bits,
    check_morphism,
    classify,
    enumerate_multiring_morphisms,
    full_mask,
    mask_of,
    q2,
)
from .constructions import (
    Ideal,
    MultiplicativeSet,
    marshall_quotient,
    product,
    q_red,
    quotient_by_ideal,
)


# ---------------------------------------------------------------------------
# ideal enumeration

def _ideal_closure(a: FiniteMultiring, members: int) -> int:
    members |= 1 << a.zero
    while True:
        grown = members
        for x in range(a.size):
            for y in bits(members):
                grown |= 1 << a.mul[x][y]
        for x in bits(grown):
            for y in bits(grown):
                grown |= a.add[x][y]
        if grown == members:
            return members
        members = grown


def enumerate_ideals(a: FiniteMultiring) -> list[Ideal]:
    """All ideals, by closing each reachable ideal under one more generator."""
    bottom = _ideal_closure(a, 0)
    seen = {bottom}
    queue = [bottom]
    while queue:
        current = queue.pop()
        for x in range(a.size):
            if (current >> x) & 1:
                continue
            grown = _ideal_closure(a, current | (1 << x))
            if grown not in seen:
                seen.add(grown)
                queue.append(grown)
    masks = sorted(seen, key=lambda m: (m.bit_count(), m))
    return [Ideal(a, m) for m in masks]


def is_prime_mask(a: FiniteMultiring, members: int) -> bool:
    if (members >> a.one) & 1:
        return False
    for x, y in itertools.product(range(a.size), repeat=2):
        if (members >> a.mul[x][y]) & 1:
            if not (members >> x) & 1 and not (members >> y) & 1:
                return False
    return True


def enumerate_primes(a: FiniteMultiring) -> list[Ideal]:
    return [i for i in enumerate_ideals(a) if is_prime_mask(a, i.members)]


def enumerate_maximals(a: FiniteMultiring) -> list[Ideal]:
    ideals = enumerate_ideals(a)
    proper = [i for i in ideals if i.is_proper()]
    out = []
    for i in proper:
        if not any(j.members != i.members and j.is_proper()
                   and (i.members & ~j.members) == 0 for j in proper):
            out.append(i)
    return out


def check_quotient_characterizations(a: FiniteMultiring) -> CheckReport:
    """prime iff quotient is a multidomain, maximal iff multifield, with the
    quotient additionally required to be nondegenerate (1 != 0)."""
    ideals = enumerate_ideals(a)
    primes = {i.members for i in enumerate_primes(a)}
    maximals = {i.members for i in enumerate_maximals(a)}
    w_prime = w_max = w_chain = None
    for ideal in ideals:
        q, _ = quotient_by_ideal(a, ideal)
        kind = classify(q)
        nondeg = q.one != q.zero
        if w_prime is None and ((ideal.members in primes)
                                != (kind.multidomain and nondeg)):
            w_prime = ideal.labels
        if w_max is None and ((ideal.members in maximals)
                              != (kind.multifield and nondeg)):
            w_max = ideal.labels
        if w_chain is None and ideal.members in maximals \
                and ideal.members not in primes:
            w_chain = ideal.labels
    return CheckReport(
        subject="quotient characterizations",
        verdicts=(
            Verdict("prime-iff-multidomain", w_prime is None, w_prime),
            Verdict("maximal-iff-multifield", w_max is None, w_max),
            Verdict("maximal-implies-prime", w_chain is None, w_chain),
        ),
    )


# ---------------------------------------------------------------------------
# patch topology of Spec

@dataclass(frozen=True)
class SpectrumReport:
    parent: FiniteMultiring
    primes: tuple[Ideal, ...]
    basic_opens: dict[str, tuple[int, ...]]
    report: CheckReport


def _satisfies_spec_relations(a: FiniteMultiring, vec: tuple[int, ...]) -> bool:
    """vec in {0,1}^A belongs to the closed image iff its zero set is a prime
    ideal: x_0=0, x_1=1, x_ab = x_a and x_b, and x_a=x_b=0 forces x_c=0 on
    every c in a+b."""
    if vec[a.zero] != 0 or vec[a.one] != 1:
        return False
    for x, y in itertools.product(range(a.size), repeat=2):
        if vec[a.mul[x][y]] != (vec[x] & vec[y]):
            return False
        if vec[x] == 0 and vec[y] == 0:
            for c in bits(a.add[x][y]):
                if vec[c] != 0:
                    return False
    return True


def _enumerate_relation_vectors(a: FiniteMultiring) -> list[tuple[int, ...]]:
    n = a.size
    out: list[tuple[int, ...]] = []
    vec = [-1] * n

    def consistent(i: int) -> bool:
        if i == a.zero and vec[i] != 0:
            return False
        if i == a.one and vec[i] != 1:
            return False
        for j in range(n):
            if vec[j] < 0:
                continue
            for x, y in ((i, j), (j, i)):
                p = a.mul[x][y]
                if vec[p] >= 0 and vec[p] != (vec[x] & vec[y]):
                    return False
                if vec[x] == 0 and vec[y] == 0:
                    for c in bits(a.add[x][y]):
                        if vec[c] == 0 or vec[c] < 0:
                            continue
                        return False
        return True

    def extend(i: int) -> None:
        if i == n:
            t = tuple(vec)
            if _satisfies_spec_relations(a, t):
                out.append(t)
            return
        for v in (0, 1):
            vec[i] = v
            if consistent(i):
                extend(i + 1)
        vec[i] = -1

    extend(0)
    return out


def spec_topology(a: FiniteMultiring) -> SpectrumReport:
    """Basic opens D(a) on the prime spectrum plus the finite-instance audit
    of the {0,1}^A embedding: every prime vector satisfies the relations and
    every relation vector comes from a prime; T0 separation."""
    primes = enumerate_primes(a)
    opens = {name: tuple(i for i, p in enumerate(primes)
                         if not (p.members >> idx) & 1)
             for idx, name in enumerate(a.names)}

    def vector(p: Ideal) -> tuple[int, ...]:
        return tuple(0 if (p.members >> i) & 1 else 1 for i in range(a.size))

    prime_vectors = [vector(p) for p in primes]
    w_fwd = None
    for p, v in zip(primes, prime_vectors):
        if not _satisfies_spec_relations(a, v):
            w_fwd = p.labels
            break
    relation_vectors = _enumerate_relation_vectors(a)
    w_bwd = None
    for v in relation_vectors:
        if v not in prime_vectors:
            w_bwd = v
            break
    w_t0 = None
    for (i, u), (j, v) in itertools.combinations(enumerate(prime_vectors), 2):
        if u == v:
            w_t0 = (primes[i].labels, primes[j].labels)
            break
    report = CheckReport(
        subject="spectrum topology",
        verdicts=(
            Verdict("prime-vectors-satisfy-relations", w_fwd is None, w_fwd),
            Verdict("relation-vectors-are-primes", w_bwd is None, w_bwd),
            Verdict("t0-separation", w_t0 is None, w_t0),
        ),
    )
    return SpectrumReport(a, tuple(primes), opens, report)


# ---------------------------------------------------------------------------
# orderings and morphisms to the sign multifield

@dataclass(frozen=True)
class Ordering:
    """Positive cone: sum- and product-closed, P or -P is everything, and the
    support P intersect -P is a prime ideal."""

    parent: FiniteMultiring
    positive: int

    def __post_init__(self) -> None:
        a = self.parent
        p = self.positive
        if p & ~full_mask(a.size):
            raise InputError("cone outside carrier")
        for x in bits(p):
            for y in bits(p):
                if a.add[x][y] & ~p:
                    raise InputError("cone not closed under sums")
                if not (p >> a.mul[x][y]) & 1:
                    raise InputError("cone not closed under products")
        if p | a.neg_mask(p) != full_mask(a.size):
            raise InputError("cone union its negative misses elements")
        supp = self.support
        Ideal(a, supp)
        if not is_prime_mask(a, supp):
            raise InputError("support is not a prime ideal")

    @property
    def support(self) -> int:
        return self.positive & self.parent.neg_mask(self.positive)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.parent.carrier.labels(self.positive)

    def sign_map(self) -> StructureMap:
        """The morphism to the sign multifield this cone corresponds to."""
        a = self.parent
        target = q2()
        zero_i, one_i, minus_i = (target.carrier.index(l) for l in ("0", "1", "-1"))
        supp = self.support
        mapping = tuple(zero_i if (supp >> x) & 1
                        else one_i if (self.positive >> x) & 1
                        else minus_i
                        for x in range(a.size))
        return StructureMap(a, target, mapping)


def hom_to_q2(a: FiniteMultiring) -> list[StructureMap]:
    """All multiring morphisms into the sign multifield, exhaustively."""
    return enumerate_multiring_morphisms(a, q2())


def ordering_of_sign_map(f: StructureMap) -> Ordering:
    a: FiniteMultiring = f.source  # type: ignore[assignment]
    t: FiniteMultiring = f.target  # type: ignore[assignment]
    keep = mask_of(i for i in (t.carrier.index("0"), t.carrier.index("1")))
    positive = mask_of(x for x in range(a.size) if (keep >> f.mapping[x]) & 1)
    return Ordering(a, positive)


def enumerate_orderings(a: FiniteMultiring) -> list[Ordering]:
    """Subset scan over positive cones, pruned pair-by-pair on {x,-x} orbits
    with incremental sum/product closure."""
    n = a.size
    neg = a.neg
    singles = mask_of(x for x in range(n) if neg[x] == x)
    pairs = sorted({(min(x, neg[x]), max(x, neg[x]))
                    for x in range(n) if neg[x] != x})
    found: list[int] = []

    def compatible(p: int, decided: int, new_elems: int) -> bool:
        for u in bits(new_elems):
            for v in bits(p):
                w = a.mul[u][v]
                if (decided >> w) & 1 and not (p >> w) & 1:
                    return False
                cell = a.add[u][v] | a.add[v][u]
                if cell & decided & ~p:
                    return False
        return True

    def closed(p: int) -> bool:
        # full re-verification: the incremental pruning sees a violation
        # only once both sides of a cell are decided
        for x in bits(p):
            for y in bits(p):
                if a.add[x][y] & ~p or not (p >> a.mul[x][y]) & 1:
                    return False
        return True

    def dfs(i: int, p: int, decided: int) -> None:
        if i == len(pairs):
            if not closed(p):
                return
            supp = p & a.neg_mask(p)
            try:
                Ideal(a, supp)
            except InputError:
                return
            if is_prime_mask(a, supp):
                found.append(p)
            return
        x, y = pairs[i]
        for extra in (1 << x, 1 << y, (1 << x) | (1 << y)):
            q = p | extra
            d = decided | (1 << x) | (1 << y)
            if compatible(q, d, extra):
                dfs(i + 1, q, d)

    if not compatible(singles, singles, singles):
        return []
    dfs(0, singles, singles)
    return [Ordering(a, p) for p in sorted(found)]


def ordering_hom_bijection_check(a: FiniteMultiring) -> CheckReport:
    """Orderings and morphisms to the sign multifield correspond bijectively
    via P = preimage of {0,1}; both directions are exercised."""
    orderings = enumerate_orderings(a)
    homs = hom_to_q2(a)
    hom_maps = sorted(f.mapping for f in homs)
    from_orderings = sorted(o.sign_map().mapping for o in orderings)
    w_count = None if len(orderings) == len(homs) else (len(orderings), len(homs))
    w_match = None if hom_maps == from_orderings else (hom_maps, from_orderings)
    w_inv = None
    for o in orderings:
        if ordering_of_sign_map(o.sign_map()).positive != o.positive:
            w_inv = o.labels
            break
    if w_inv is None:
        for f in homs:
            if ordering_of_sign_map(f).sign_map().mapping != f.mapping:
                w_inv = f.mapping
                break
    return CheckReport(
        subject="ordering/hom bijection",
        verdicts=(
            Verdict("counts-equal", w_count is None, w_count),
            Verdict("same-sign-maps", w_match is None, w_match),
            Verdict("mutually-inverse", w_inv is None, w_inv),
        ),
    )


# ---------------------------------------------------------------------------
# preorderings

@dataclass(frozen=True)
class Preordering:
    """Sum- and product-closed cone containing all squares."""

    parent: FiniteMultiring
    cone: int

    def __post_init__(self) -> None:
        a = self.parent
        t = self.cone
        if t & ~full_mask(a.size):
            raise InputError("cone outside carrier")
        for x in range(a.size):
            if not (t >> a.mul[x][x]) & 1:
                raise InputError("cone misses a square")
        for x in bits(t):
            for y in bits(t):
                if a.add[x][y] & ~t:
                    raise InputError("cone not closed under sums")
                if not (t >> a.mul[x][y]) & 1:
                    raise InputError("cone not closed under products")

    @property
    def proper(self) -> bool:
        a = self.parent
        return not (self.cone >> a.neg[a.one]) & 1

    @property
    def labels(self) -> tuple[str, ...]:
        return self.parent.carrier.labels(self.cone)


def enumerate_preorderings(a: FiniteMultiring) -> list[Preordering]:
    squares = mask_of(a.mul[x][x] for x in range(a.size))
    out = []
    n = a.size
    free = [x for x in range(n) if not (squares >> x) & 1]
    for extra in itertools.chain.from_iterable(
            itertools.combinations(free, k) for k in range(len(free) + 1)):
        t = squares | mask_of(extra)
        try:
            out.append(Preordering(a, t))
        except InputError:
            continue
    return out


def preordering_intersection_check(f: FiniteMultiring,
                                   t: Preordering) -> CheckReport:
    """A proper preordering equals the intersection of the orderings
    containing it."""
    if not t.proper:
        return CheckReport(
            subject="preordering intersection",
            verdicts=(Verdict("proper", True, None,
                              "improper cone: check skipped",
                              informational=True),),
        )
    containing = [o for o in enumerate_orderings(f)
                  if not (t.cone & ~o.positive)]
    if not containing:
        return CheckReport(
            subject="preordering intersection",
            verdicts=(Verdict("extends-to-ordering", False, t.labels,
                              "no ordering contains this proper cone"),),
        )
    meet = full_mask(f.size)
    for o in containing:
        meet &= o.positive
    ok = meet == t.cone
    witness = None if ok else (t.labels, f.carrier.labels(meet))
    return CheckReport(
        subject="preordering intersection",
        verdicts=(Verdict("equals-intersection", ok, witness),),
    )


# ---------------------------------------------------------------------------
# real and real reduced

def sums_of_squares_set(a: FiniteMultiring) -> int:
    """All elements reachable from squares by set-valued sums (0 included)."""
    members = mask_of(a.mul[x][x] for x in range(a.size))
    while True:
        grown = members
        for x in bits(members):
            for y in bits(members):
                grown |= a.add[x][y]
        if grown == members:
            return members
        members = grown


def is_real(a: FiniteMultiring) -> bool:
    return not (sums_of_squares_set(a) >> a.neg[a.one]) & 1


def is_real_reduced_mf(f: FiniteMultiring) -> CheckReport:
    """Multifield form: a^3 = a, and membership in 1+1 pins the element to 1."""
    if not classify(f).multifield:
        raise InputError("real reduced multifield check requires a multifield")
    names = f.names
    w_cube = None
    for x in range(f.size):
        if f.mul[f.mul[x][x]][x] != x:
            w_cube = (names[x],)
            break
    w_sum = None
    for c in bits(f.add[f.one][f.one]):
        if c != f.one:
            w_sum = (names[c],)
            break
    return CheckReport(
        subject="real reduced multifield",
        verdicts=(
            Verdict("cube-identity", w_cube is None, w_cube),
            Verdict("one-plus-one-rigid", w_sum is None, w_sum),
        ),
    )


def is_real_reduced_mr(a: FiniteMultiring) -> CheckReport:
    """Multiring form: 1 != 0, a^3 = a, a + a b^2 = {a}, and a^2 + b^2 is a
    singleton."""
    names = a.names
    w_nz = None if a.one != a.zero else (names[a.one],)
    w_cube = None
    for x in range(a.size):
        if a.mul[a.mul[x][x]][x] != x:
            w_cube = (names[x],)
            break
    w_rigid = None
    for x, y in itertools.product(range(a.size), repeat=2):
        cell = a.add[x][a.mul[x][a.mul[y][y]]]
        if cell != 1 << x:
            c = next(iter(bits(cell ^ (cell & (1 << x))))) if cell != 1 << x else x
            w_rigid = (names[x], names[y], names[c])
            break
    w_sq = None
    for x, y in itertools.product(range(a.size), repeat=2):
        cell = a.add[a.mul[x][x]][a.mul[y][y]]
        if cell.bit_count() != 1:
            w_sq = (names[x], names[y], a.carrier.labels(cell))
            break
    return CheckReport(
        subject="real reduced multiring",
        verdicts=(
            Verdict("one-nonzero", w_nz is None, w_nz),
            Verdict("cube-identity", w_cube is None, w_cube),
            Verdict("rigid-sums", w_rigid is None, w_rigid),
            Verdict("squares-sum-singleton", w_sq is None, w_sq),
        ),
    )


def reduced_characterizations_check(f: FiniteMultiring) -> CheckReport:
    """Three equivalent ways of saying a multifield is real reduced: the
    projection onto its reduced quotient is an isomorphism, the sums of
    squares are exactly {0,1}, and the elementwise conditions; evaluated
    independently and checked for agreement."""
    if not classify(f).multifield:
        raise InputError("reduced characterization check requires a multifield")
    proj_iso = False
    try:
        q, proj = q_red(f)
        if proj.is_injective() and proj.is_surjective():
            inverse = [0] * q.size
            for i, v in enumerate(proj.mapping):
                inverse[v] = i
            proj_iso = check_morphism(
                StructureMap(q, f, tuple(inverse))).overall
    except InputError:
        proj_iso = False
    sos = sums_of_squares_set(f)
    sos_small = sos == (1 << f.zero) | (1 << f.one)
    elementwise = is_real_reduced_mf(f).overall
    agree = proj_iso == sos_small == elementwise
    real = is_real(f)
    return CheckReport(
        subject="reduced characterizations",
        verdicts=(
            Verdict("projection-is-isomorphism", proj_iso, None,
                    "evaluated", informational=True),
            Verdict("sums-of-squares-are-0-1", sos_small,
                    None if sos_small else f.carrier.labels(sos),
                    "evaluated", informational=True),
            Verdict("elementwise-conditions", elementwise, None,
                    "evaluated", informational=True),
            # the equivalence is asserted for real multifields only
            Verdict("three-way-agreement", agree if real else True,
                    None if agree else (proj_iso, sos_small, elementwise),
                    "asserted" if real else
                    f"not real; observed agreement: {agree}"),
            Verdict("is-real", real, None, "informational",
                    informational=True),
        ),
    )


# ---------------------------------------------------------------------------
# local-global evaluation embedding

def sper_embedding_check(a: FiniteMultiring) -> CheckReport:
    """Evaluation a -> (sign of a at each ordering): injective, a morphism,
    and strong (componentwise sums reflect back), checked componentwise.
    When the full power structure fits under the carrier cap the embedding is
    cross-checked against it."""
    if not is_real_reduced_mr(a).overall:
        raise InputError("evaluation embedding requires a real reduced input")
    orderings = enumerate_orderings(a)
    sigmas = [o.sign_map().mapping for o in orderings]
    names = a.names
    if not sigmas:
        return CheckReport(
            subject="evaluation embedding",
            verdicts=(Verdict("sper-nonempty", False, None,
                              "no orderings: evaluation undefined"),),
        )
    vectors = [tuple(s[x] for s in sigmas) for x in range(a.size)]

    w_inj = None
    seen: dict[tuple[int, ...], int] = {}
    for x, v in enumerate(vectors):
        if v in seen:
            w_inj = (names[seen[v]], names[x])
            break
        seen[v] = x

    target = q2()
    w_mor = None
    for x, y in itertools.product(range(a.size), repeat=2):
        for c in bits(a.add[x][y]):
            for s in sigmas:
                if not (target.add[s[x]][s[y]] >> s[c]) & 1:
                    w_mor = (names[x], names[y], names[c])
                    break
            if w_mor:
                break
        if w_mor:
            break

    w_strong = None
    for x, y, c in itertools.product(range(a.size), repeat=3):
        if (a.add[x][y] >> c) & 1:
            continue
        if all((target.add[s[x]][s[y]] >> s[c]) & 1 for s in sigmas):
            w_strong = (names[x], names[y], names[c])
            break

    verdicts = [
        Verdict("sper-nonempty", True, None),
        Verdict("injective", w_inj is None, w_inj),
        Verdict("morphism", w_mor is None, w_mor),
        Verdict("strong", w_strong is None, w_strong),
    ]
    if 3 ** len(sigmas) <= CARRIER_CAP:
        power = product([target] * len(sigmas))
        mapping = tuple(
            power.carrier.index("(" + ",".join(target.names[v] for v in vec) + ")")
            for vec in vectors)
        f = StructureMap(a, power, mapping)
        from .core import embedding_kind
        kind = embedding_kind(f) if check_morphism(f).overall else "not-a-morphism"
        verdicts.append(Verdict(
            "materialized-embedding",
            kind in ("strongly_embedded", "submultiring"),
            None if kind in ("strongly_embedded", "submultiring") else (kind,),
            f"embedding kind: {kind}", informational=False))
    return CheckReport("evaluation embedding", tuple(verdicts))


def q_t(a: FiniteMultiring, t: Preordering) -> tuple[FiniteMultiring, StructureMap]:
    """Marshall quotient at the nonzero part of a proper preordering."""
    s_mask = t.cone & ~(1 << a.zero)
    s = MultiplicativeSet(a, s_mask)
    return marshall_quotient(a, s)
