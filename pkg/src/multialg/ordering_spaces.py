"""Sign-function spaces: abstract ordering spaces ({-1,1}-valued) and
abstract real spectra ({-1,0,1}-valued), with value sets, axiom audits, and
the constructions to and from real reduced multifields and multirings.

The character condition AX2 is audited by exhaustive enumeration: characters
of the function group in the two-valued case, candidate cones over sign
pairs in the three-valued case.  Every admissible candidate must come from a
point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .core import (
    Carrier,
    CheckReport,
    FiniteMultiring,
    InputError,
    StructureMap,
    Verdict,
    bits,
    full_mask,
    mask_of,
)
from .spectra import enumerate_orderings, is_real_reduced_mf, is_real_reduced_mr

AOS = "aos"
ARS = "ars"


@dataclass(frozen=True)
class SignSpace:
    """Finite point set plus a set of sign-valued functions on it."""

    mode: str
    points: tuple[str, ...]
    functions: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.mode not in (AOS, ARS):
            raise InputError(f"unknown sign space mode {self.mode!r}")
        if not self.points:
            raise InputError("empty point set")
        if len(set(self.points)) != len(self.points):
            raise InputError("duplicate point labels")
        allowed = (-1, 1) if self.mode == AOS else (-1, 0, 1)
        seen = set()
        for f in self.functions:
            if len(f) != len(self.points):
                raise InputError("function arity does not match points")
            if any(v not in allowed for v in f):
                raise InputError(f"function value outside {allowed}")
            if f in seen:
                raise InputError(f"duplicate function {f}")
            seen.add(f)
        if not self.functions:
            raise InputError("empty function set")

    @property
    def npoints(self) -> int:
        return len(self.points)

    @property
    def nfunctions(self) -> int:
        return len(self.functions)

    def index(self, f: tuple[int, ...]) -> Optional[int]:
        try:
            return self.functions.index(f)
        except ValueError:
            return None

    def constant(self, v: int) -> Optional[int]:
        return self.index(tuple([v] * self.npoints))

    def pointwise_mul(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(a * b for a, b in zip(self.functions[i], self.functions[j]))

    def negation(self, i: int) -> tuple[int, ...]:
        return tuple(-v for v in self.functions[i])


def function_label(f: tuple[int, ...]) -> str:
    return "".join("+" if v > 0 else "-" if v < 0 else "0" for v in f)


def make_sign_space(mode: str, points: Sequence[str],
                    functions: Sequence[Sequence[int]]) -> SignSpace:
    return SignSpace(mode, tuple(points),
                     tuple(sorted(tuple(int(v) for v in f) for f in functions)))


def fan_aos(k: int) -> SignSpace:
    """All sign vectors on k points."""
    if k < 1:
        raise InputError("fan needs at least one point")
    pts = tuple(f"x{i}" for i in range(k))
    funcs = list(itertools.product((-1, 1), repeat=k))
    return make_sign_space(AOS, pts, funcs)


def one_point_ars() -> SignSpace:
    return make_sign_space(ARS, ("x0",), [(-1,), (0,), (1,)])


# ---------------------------------------------------------------------------
# value sets

@lru_cache(maxsize=None)
def value_table(s: SignSpace) -> tuple[tuple[int, ...], ...]:
    """D(a,b) as masks over function indices."""
    n = s.nfunctions
    out = [[0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        a, b = s.functions[i], s.functions[j]
        m = 0
        for k, c in enumerate(s.functions):
            if s.mode == AOS:
                ok = all(cv in (av, bv) for cv, av, bv in zip(c, a, b))
            else:
                ok = all(av * cv > 0 or bv * cv > 0 or cv == 0
                         for cv, av, bv in zip(c, a, b))
            if ok:
                m |= 1 << k
        out[i][j] = m
    return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def transversal_table(s: SignSpace) -> tuple[tuple[int, ...], ...]:
    """D^t(a,b): as D but a zero of c forces b = -a at that point."""
    if s.mode != ARS:
        raise InputError("transversal sets exist in ars mode only")
    n = s.nfunctions
    out = [[0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        a, b = s.functions[i], s.functions[j]
        m = 0
        for k, c in enumerate(s.functions):
            if all(av * cv > 0 or bv * cv > 0 or (cv == 0 and bv == -av)
                   for cv, av, bv in zip(c, a, b)):
                m |= 1 << k
        out[i][j] = m
    return tuple(tuple(r) for r in out)


def value_set(s: SignSpace, a: tuple[int, ...],
              b: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """D(a,b) as a tuple of functions."""
    i, j = s.index(a), s.index(b)
    if i is None or j is None:
        raise InputError("value set arguments must belong to the space")
    return tuple(s.functions[k] for k in bits(value_table(s)[i][j]))


def transversal_value_set(s: SignSpace, a: tuple[int, ...],
                          b: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    i, j = s.index(a), s.index(b)
    if i is None or j is None:
        raise InputError("value set arguments must belong to the space")
    return tuple(s.functions[k] for k in bits(transversal_table(s)[i][j]))


# ---------------------------------------------------------------------------
# characters (two-valued case)

def _f2_decompositions(s: SignSpace) -> tuple[list[int], list[int]]:
    """Greedy F2 basis of the function group; returns for each function the
    basis-subset mask whose product it is, plus the list of basis indices."""
    basis: list[tuple[int, int]] = []  # (vector as sign mask, basis id)
    basis_ids: list[int] = []
    decomp: list[int] = []
    for idx, f in enumerate(s.functions):
        vec = mask_of(i for i, v in enumerate(f) if v < 0)
        combo = 0
        for bvec, bid in basis:
            low = bvec & -bvec
            if vec & low:
                vec ^= bvec
                combo ^= 1 << bid
        if vec:
            bid = len(basis_ids)
            basis.append((vec, bid))
            basis.sort(key=lambda p: p[0] & -p[0])
            basis_ids.append(idx)
            combo ^= 1 << bid
        decomp.append(combo)
    return decomp, basis_ids


def _characters(s: SignSpace) -> list[tuple[int, ...]]:
    """All multiplicative maps from the function group to {-1,1}."""
    decomp, basis_ids = _f2_decompositions(s)
    dim = len(basis_ids)
    out = []
    for assign in itertools.product((1, -1), repeat=dim):
        chi = []
        for combo in decomp:
            v = 1
            for b in bits(combo):
                v *= assign[b]
            chi.append(v)
        out.append(tuple(chi))
    return out


# ---------------------------------------------------------------------------
# axiom audits

def _ax1_verdicts(s: SignSpace) -> list[Verdict]:
    verdicts = []
    w_closed = None
    for i, j in itertools.product(range(s.nfunctions), repeat=2):
        if s.index(s.pointwise_mul(i, j)) is None:
            w_closed = (function_label(s.functions[i]),
                        function_label(s.functions[j]))
            break
    verdicts.append(Verdict("AX1-closed-under-product", w_closed is None, w_closed))
    needed = (1, -1) if s.mode == AOS else (1, 0, -1)
    w_const = None
    for v in needed:
        if s.constant(v) is None:
            w_const = (v,)
            break
    verdicts.append(Verdict("AX1-constants", w_const is None, w_const))
    w_sep = None
    for x, y in itertools.combinations(range(s.npoints), 2):
        if all(f[x] == f[y] for f in s.functions):
            w_sep = (s.points[x], s.points[y])
            break
    verdicts.append(Verdict("AX1-separates-points", w_sep is None, w_sep))
    return verdicts


def check_aos(s: SignSpace) -> CheckReport:
    if s.mode != AOS:
        raise InputError("two-valued audit on a three-valued space")
    verdicts = _ax1_verdicts(s)
    dtab = value_table(s)

    ax1_ok = all(v.passed for v in verdicts[:2])
    if ax1_ok:
        minus = s.constant(-1)
        w2 = None
        evaluations = {tuple(f[x] for f in s.functions) for x in range(s.npoints)}
        for chi in _characters(s):
            if chi[minus] != -1:
                continue
            ker = mask_of(i for i, v in enumerate(chi) if v == 1)
            closed = True
            for i in bits(ker):
                for j in bits(ker):
                    if dtab[i][j] & ~ker:
                        closed = False
                        break
                if not closed:
                    break
            if closed and chi not in evaluations:
                w2 = ("character " + function_label(chi),)
                break
        verdicts.append(Verdict("AX2-characters-are-points", w2 is None, w2))
    else:
        verdicts.append(Verdict("AX2-characters-are-points", False, None,
                                "skipped: AX1 failed"))

    w3 = None
    n = s.nfunctions
    for a, b, c in itertools.product(range(n), repeat=3):
        lhs = 0
        for r in bits(dtab[b][c]):
            lhs |= dtab[a][r]
        for t in bits(lhs):
            if not any((dtab[sx][c] >> t) & 1 for sx in bits(dtab[a][b])):
                w3 = (function_label(s.functions[a]),
                      function_label(s.functions[b]),
                      function_label(s.functions[c]),
                      function_label(s.functions[t]))
                break
        if w3:
            break
    verdicts.append(Verdict("AX3-associativity", w3 is None, w3))
    return CheckReport("abstract ordering space", tuple(verdicts))


def _ars_point_cones(s: SignSpace) -> set[int]:
    cones = set()
    for x in range(s.npoints):
        cones.add(mask_of(i for i, f in enumerate(s.functions) if f[x] >= 0))
    return cones


def _enumerate_ars_cones(s: SignSpace) -> list[int]:
    """Submonoids P with P u -P = G, -1 not in P, D-closure and the prime
    support condition, enumerated over sign pairs {a,-a}."""
    n = s.nfunctions
    dtab = value_table(s)
    neg_index = [s.index(s.negation(i)) for i in range(n)]
    if any(v is None for v in neg_index):
        return []
    singles = mask_of(i for i in range(n) if neg_index[i] == i)
    one = s.constant(1)
    minus = s.constant(-1)
    pairs = sorted({(min(i, neg_index[i]), max(i, neg_index[i]))
                    for i in range(n) if neg_index[i] != i})
    out: list[int] = []

    def compatible(p: int, decided: int, new: int) -> bool:
        for u in bits(new):
            for v in bits(p):
                w = s.index(s.pointwise_mul(u, v))
                if w is None or ((decided >> w) & 1 and not (p >> w) & 1):
                    return False
                if dtab[u][v] & decided & ~p or dtab[v][u] & decided & ~p:
                    return False
        return True

    def leaf(p: int) -> None:
        if (p >> minus) & 1 or not (p >> one) & 1:
            return
        # full re-verification of closure and value-set stability
        for i in bits(p):
            for j in bits(p):
                w = s.index(s.pointwise_mul(i, j))
                if w is None or not (p >> w) & 1:
                    return
                if dtab[i][j] & ~p:
                    return
        supp = p & mask_of(neg_index[i] for i in bits(p))
        for i, j in itertools.product(range(n), repeat=2):
            w = s.index(s.pointwise_mul(i, j))
            if (supp >> w) & 1 and not (supp >> i) & 1 and not (supp >> j) & 1:
                return
        out.append(p)

    def dfs(k: int, p: int, decided: int) -> None:
        if k == len(pairs):
            leaf(p)
            return
        i, j = pairs[k]
        for extra in (1 << i, 1 << j, (1 << i) | (1 << j)):
            q = p | extra
            d = decided | (1 << i) | (1 << j)
            if compatible(q, d, extra):
                dfs(k + 1, q, d)

    if compatible(singles, singles, singles):
        dfs(0, singles, singles)
    return out


def check_ars(s: SignSpace) -> CheckReport:
    if s.mode != ARS:
        raise InputError("three-valued audit on a two-valued space")
    verdicts = _ax1_verdicts(s)
    ax1_ok = all(v.passed for v in verdicts[:2])

    if ax1_ok:
        cones = _enumerate_ars_cones(s)
        point_cones = _ars_point_cones(s)
        w2 = None
        for p in cones:
            if p not in point_cones:
                w2 = tuple(function_label(s.functions[i]) for i in bits(p))
                break
        if w2 is None:
            for p in point_cones:
                if p not in cones:
                    w2 = ("missing point cone",) + tuple(
                        function_label(s.functions[i]) for i in bits(p))
                    break
        verdicts.append(Verdict("AX2-cones-are-points", w2 is None, w2))
    else:
        verdicts.append(Verdict("AX2-cones-are-points", False, None,
                                "skipped: AX1 failed"))

    w3 = None
    dt = transversal_table(s)
    n = s.nfunctions
    for a, b, c in itertools.product(range(n), repeat=3):
        for q in bits(dt[b][c]):
            for p in bits(dt[a][q]):
                if not any((dt[r][c] >> p) & 1 for r in bits(dt[a][b])):
                    w3 = (function_label(s.functions[a]),
                          function_label(s.functions[b]),
                          function_label(s.functions[c]),
                          function_label(s.functions[p]))
                    break
            if w3:
                break
        if w3:
            break
    verdicts.append(Verdict("AX3-strong-associativity", w3 is None, w3))
    return CheckReport("abstract real spectrum", tuple(verdicts))


def value_set_reassociation_check(s: SignSpace) -> CheckReport:
    """Union re-association of value sets, the inductive step behind the
    associativity of the derived multifield sums."""
    dtab = value_table(s)
    n = s.nfunctions
    w = None
    for a, b, c in itertools.product(range(n), repeat=3):
        left = 0
        for g in bits(dtab[a][b]):
            left |= dtab[c][g]
        right = 0
        for h in bits(dtab[b][c]):
            right |= dtab[h][a]
        if left != right:
            w = (function_label(s.functions[a]), function_label(s.functions[b]),
                 function_label(s.functions[c]))
            break
    return CheckReport("value set reassociation",
                       (Verdict("union-reassociation", w is None, w),))


def ars_bridge_check(s: SignSpace) -> CheckReport:
    """Transversal sets refine value sets; scaling by c^2 lifts membership."""
    dtab = value_table(s)
    dt = transversal_table(s)
    n = s.nfunctions
    w_sub = None
    for a, b in itertools.product(range(n), repeat=2):
        if dt[a][b] & ~dtab[a][b]:
            w_sub = (function_label(s.functions[a]),
                     function_label(s.functions[b]))
            break
    w_lift = None
    for a, b in itertools.product(range(n), repeat=2):
        for c in bits(dtab[a][b]):
            c2 = s.index(s.pointwise_mul(c, c))
            ac2 = s.index(s.pointwise_mul(a, c2))
            bc2 = s.index(s.pointwise_mul(b, c2))
            if not (dt[ac2][bc2] >> c) & 1:
                w_lift = (function_label(s.functions[c]),
                          function_label(s.functions[a]),
                          function_label(s.functions[b]))
                break
        if w_lift:
            break
    return CheckReport(
        subject="value set bridges",
        verdicts=(
            Verdict("transversal-refines", w_sub is None, w_sub),
            Verdict("square-scaling-lifts", w_lift is None, w_lift),
        ),
    )


# ---------------------------------------------------------------------------
# spaces to multifields / multirings

def aos_to_mfred(s: SignSpace, zero_label: str = "0") -> FiniteMultiring:
    """Adjoin a zero to the function group; sums are value sets except in the
    forced zero and opposite cases."""
    if s.mode != AOS:
        raise InputError("multifield construction needs a two-valued space")
    n = s.nfunctions
    labels = [function_label(f) for f in s.functions]
    if zero_label in labels:
        raise InputError("zero label collides with a function label")
    names = tuple(labels) + (zero_label,)
    zero = n
    dtab = value_table(s)
    neg_index = [s.index(s.negation(i)) for i in range(n)]
    if any(v is None for v in neg_index):
        raise InputError("function set is not closed under negation")
    total = full_mask(n + 1)
    add = [[0] * (n + 1) for _ in range(n + 1)]
    mul = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        add[i][zero] = 1 << i
        add[zero][i] = 1 << i
        for j in range(n):
            add[i][j] = total if j == neg_index[i] else dtab[i][j]
            k = s.index(s.pointwise_mul(i, j))
            if k is None:
                raise InputError("function set is not closed under products")
            mul[i][j] = k
        mul[i][zero] = zero
        mul[zero][i] = zero
    add[zero][zero] = 1 << zero
    mul[zero][zero] = zero
    one = s.constant(1)
    if one is None:
        raise InputError("function set lacks the constant 1")
    neg = tuple(neg_index) + (zero,)
    return FiniteMultiring(Carrier(names), tuple(tuple(r) for r in add),
                           tuple(tuple(r) for r in mul), neg, zero, one)


def mfred_to_aos(f: FiniteMultiring) -> tuple[SignSpace, CheckReport]:
    """Points are the characters of the nonzero part whose kernel swallows
    sums; functions are the element evaluations.  The bijection audits
    compare the points with the orderings and the functions with the
    nonzero elements."""
    if not is_real_reduced_mf(f).overall:
        raise InputError("space construction requires a real reduced multifield")
    nz = [x for x in range(f.size) if x != f.zero]
    pos = {x: i for i, x in enumerate(nz)}
    chars = _admissible_characters(f)
    points = tuple(f"P{i}" for i in range(len(chars)))
    functions = sorted(tuple(chi[pos[x]] for chi in chars) for x in nz)
    space = SignSpace(AOS, points, tuple(functions))

    orderings = enumerate_orderings(f)
    signs_from_orderings = sorted(
        tuple(1 if (o.positive >> x) & 1 else -1 for x in nz)
        for o in orderings)
    w_points = None if signs_from_orderings == sorted(chars) \
        else (len(chars), len(orderings))
    w_funcs = None if len(set(functions)) == len(nz) else (len(nz),)
    report = CheckReport(
        subject="character/ordering bijections",
        verdicts=(
            Verdict("points-match-orderings", w_points is None, w_points),
            Verdict("functions-match-elements", w_funcs is None, w_funcs),
        ),
    )
    return space, report


def _admissible_characters(f: FiniteMultiring) -> list[tuple[int, ...]]:
    """Sign characters of the nonzero part sending -1 to -1 whose kernel
    swallows sums, sorted; these are the points of the derived space."""
    nz = [x for x in range(f.size) if x != f.zero]
    pos = {x: i for i, x in enumerate(nz)}
    minus = f.neg[f.one]
    chars = []
    for chi in _GroupView(f, nz).characters():
        if chi[pos[minus]] != -1:
            continue
        ker = [nz[i] for i, v in enumerate(chi) if v == 1]
        kmask = mask_of(ker)
        closed = True
        for a in ker:
            for b in ker:
                if f.add[a][b] & ~kmask:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            chars.append(chi)
    chars.sort()
    return chars


class _GroupView:
    """Exponent-2 group structure on the nonzero part of a multifield."""

    def __init__(self, f: FiniteMultiring, nz: list[int]) -> None:
        self.f = f
        self.nz = nz
        self.pos = {x: i for i, x in enumerate(nz)}

    def characters(self) -> list[tuple[int, ...]]:
        f, nz, pos = self.f, self.nz, self.pos
        basis: list[tuple[int, int]] = []
        decomp = []
        # represent each element by which basis elements multiply to it
        expr: dict[int, int] = {f.one: 0}
        order = []
        for x in nz:
            if x in expr:
                order.append(x)
                continue
            # new basis element
            bid = len(basis)
            basis.append((x, bid))
            new_expr = dict(expr)
            for y, combo in expr.items():
                new_expr[f.mul[y][x]] = combo | (1 << bid)
            expr = new_expr
            order.append(x)
        out = []
        dim = len(basis)
        for assign in itertools.product((1, -1), repeat=dim):
            chi = []
            for x in nz:
                v = 1
                for b in bits(expr[x]):
                    v *= assign[b]
                chi.append(v)
            out.append(tuple(chi))
        return out


def ars_to_mrred(s: SignSpace) -> FiniteMultiring:
    """Sums are the transversal value sets."""
    if s.mode != ARS:
        raise InputError("multiring construction needs a three-valued space")
    n = s.nfunctions
    dt = transversal_table(s)
    for i, j in itertools.product(range(n), repeat=2):
        if dt[i][j] == 0:
            raise InputError(
                f"empty transversal set at ({function_label(s.functions[i])},"
                f"{function_label(s.functions[j])}): not a space of signs")
    names = tuple(function_label(f) for f in s.functions)
    mul = []
    for i in range(n):
        row = []
        for j in range(n):
            k = s.index(s.pointwise_mul(i, j))
            if k is None:
                raise InputError("function set is not closed under products")
            row.append(k)
        mul.append(tuple(row))
    neg = tuple(s.index(s.negation(i)) for i in range(n))
    if any(v is None for v in neg):
        raise InputError("function set is not closed under negation")
    zero = s.constant(0)
    one = s.constant(1)
    if zero is None or one is None:
        raise InputError("function set lacks a constant")
    return FiniteMultiring(Carrier(names), dt, tuple(mul),
                           tuple(neg), zero, one)  # type: ignore[arg-type]


def mrred_to_ars(a: FiniteMultiring) -> tuple[SignSpace, CheckReport]:
    """Points are the orderings, functions the element evaluations; the
    transversal sets of the space must reproduce the addition table."""
    if not is_real_reduced_mr(a).overall:
        raise InputError("space construction requires a real reduced multiring")
    orderings = enumerate_orderings(a)
    if not orderings:
        raise InputError("empty real spectrum")
    sigmas = [o.sign_map().mapping for o in orderings]
    q2names = ("-1", "0", "1")
    tovals = {0: -1, 1: 0, 2: 1}
    vectors = [tuple(tovals[s[x]] for s in sigmas) for x in range(a.size)]
    w_inj = None if len(set(vectors)) == a.size else (a.size, len(set(vectors)))
    points = tuple(f"P{i}" for i in range(len(orderings)))
    space = SignSpace(ARS, points, tuple(sorted(set(vectors))))

    dt = transversal_table(space)
    w_dt = None
    vec_index = {v: space.index(v) for v in vectors}
    for x, y in itertools.product(range(a.size), repeat=2):
        got = dt[vec_index[vectors[x]]][vec_index[vectors[y]]]
        want = mask_of(vec_index[vectors[c]] for c in bits(a.add[x][y]))
        if got != want:
            w_dt = (a.names[x], a.names[y])
            break
    report = CheckReport(
        subject="evaluation space",
        verdicts=(
            Verdict("evaluations-injective", w_inj is None, w_inj),
            Verdict("transversal-matches-addition", w_dt is None, w_dt),
        ),
    )
    return space, report


# ---------------------------------------------------------------------------
# space morphisms and functoriality

@dataclass(frozen=True)
class SpaceMap:
    """Point map between sign spaces, source points into target points."""

    source: SignSpace
    target: SignSpace
    point_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.point_map) != self.source.npoints:
            raise InputError("point map not total")
        if any(not 0 <= v < self.target.npoints for v in self.point_map):
            raise InputError("point map image outside target")

    def pullback(self, h: int) -> tuple[int, ...]:
        """h o alpha for a target function index h."""
        f = self.target.functions[h]
        return tuple(f[self.point_map[x]] for x in range(self.source.npoints))


def space_morphism_check(m: SpaceMap) -> CheckReport:
    """Pullbacks of target functions must lie in the source function set;
    surjectivity on points is audited, not assumed."""
    w_pull = None
    for h in range(m.target.nfunctions):
        if m.source.index(m.pullback(h)) is None:
            w_pull = (function_label(m.target.functions[h]),)
            break
    surjective = len(set(m.point_map)) == m.target.npoints
    return CheckReport(
        subject="sign space morphism",
        verdicts=(
            Verdict("pullbacks-land-in-source", w_pull is None, w_pull),
            Verdict("surjective-on-points", surjective, None,
                    "audited, not required", informational=True),
        ),
    )


def is_space_morphism(m: SpaceMap) -> bool:
    return space_morphism_check(m).overall


def enumerate_space_morphisms(s: SignSpace, t: SignSpace) -> list[SpaceMap]:
    """All point maps whose pullbacks land in the source function set."""
    out = []
    for point_map in itertools.product(range(t.npoints), repeat=s.npoints):
        m = SpaceMap(s, t, point_map)
        if is_space_morphism(m):
            out.append(m)
    return out


def _ordering_mask_to_point(f: FiniteMultiring, chars: list) -> dict[int, int]:
    """Positive-cone mask of each character's ordering, to its point index."""
    nz = [x for x in range(f.size) if x != f.zero]
    out = {}
    for j, chi in enumerate(chars):
        pmask = (1 << f.zero) | mask_of(x for i, x in enumerate(nz)
                                        if chi[i] == 1)
        out[pmask] = j
    return out


def mf_map_to_aos_map(sigma: StructureMap) -> SpaceMap:
    """Contravariant induced point map: orderings of the target pull back
    along the morphism to orderings of the source."""
    f: FiniteMultiring = sigma.source  # type: ignore[assignment]
    k: FiniteMultiring = sigma.target  # type: ignore[assignment]
    space_f, _ = mfred_to_aos(f)
    space_k, _ = mfred_to_aos(k)
    f_points = _ordering_mask_to_point(f, _admissible_characters(f))
    k_points = _ordering_mask_to_point(k, _admissible_characters(k))
    point_map = [0] * space_k.npoints
    for pmask, j in k_points.items():
        pre = mask_of(x for x in range(f.size)
                      if (pmask >> sigma.mapping[x]) & 1)
        if pre not in f_points:
            raise InputError("preimage of an ordering is not an ordering; "
                             "the map is not a morphism of real reduced "
                             "multifields")
        point_map[j] = f_points[pre]
    return SpaceMap(space_k, space_f, tuple(point_map))


def mr_map_to_ars_map(sigma: StructureMap) -> SpaceMap:
    """Contravariant induced point map on the sign spectra."""
    a: FiniteMultiring = sigma.source  # type: ignore[assignment]
    b: FiniteMultiring = sigma.target  # type: ignore[assignment]
    space_a, _ = mrred_to_ars(a)
    space_b, _ = mrred_to_ars(b)
    a_index = {o.positive: i for i, o in enumerate(enumerate_orderings(a))}
    point_map = []
    for o in enumerate_orderings(b):
        pre = mask_of(x for x in range(a.size)
                      if (o.positive >> sigma.mapping[x]) & 1)
        if pre not in a_index:
            raise InputError("preimage of an ordering is not an ordering; "
                             "the map is not a morphism of real reduced "
                             "multirings")
        point_map.append(a_index[pre])
    return SpaceMap(space_b, space_a, tuple(point_map))


def induced_function_map(m: SpaceMap) -> dict[int, int]:
    """Target function index to source function index, by pullback."""
    out = {}
    for h in range(m.target.nfunctions):
        idx = m.source.index(m.pullback(h))
        if idx is None:
            raise InputError("not a space morphism")
        out[h] = idx
    return out


def space_map_to_mf_map(m: SpaceMap, mf_target_space: FiniteMultiring,
                        mf_source_space: FiniteMultiring) -> StructureMap:
    """Contravariant induced morphism between the derived multifields: takes
    the multifield of the target space into the multifield of the source
    space, functions by pullback and zero to zero."""
    pull = induced_function_map(m)
    mapping = [0] * (m.target.nfunctions + 1)
    for h, g in pull.items():
        mapping[h] = g
    mapping[m.target.nfunctions] = m.source.nfunctions
    return StructureMap(mf_target_space, mf_source_space, tuple(mapping))


def find_space_isomorphism(s: SignSpace, t: SignSpace) -> Optional[tuple[int, ...]]:
    """Point bijection whose pullback matches the function sets exactly."""
    if s.mode != t.mode or s.npoints != t.npoints \
            or s.nfunctions != t.nfunctions:
        return None

    def signature(space: SignSpace, x: int) -> tuple[int, ...]:
        return tuple(sorted(f[x] for f in space.functions))

    sig_s = [signature(s, x) for x in range(s.npoints)]
    sig_t = [signature(t, x) for x in range(t.npoints)]
    assign: list[int] = [-1] * s.npoints
    used = [False] * t.npoints

    def extend(x: int) -> Optional[tuple[int, ...]]:
        if x == s.npoints:
            pulled = {tuple(f[assign[i]] for i in range(s.npoints))
                      for f in t.functions}
            if pulled == set(s.functions):
                return tuple(assign)
            return None
        for y in range(t.npoints):
            if used[y] or sig_s[x] != sig_t[y]:
                continue
            assign[x] = y
            used[y] = True
            found = extend(x + 1)
            if found is not None:
                return found
            used[y] = False
        assign[x] = -1
        return None

    return extend(0)


# ---------------------------------------------------------------------------
# round-trips

def aos_mf_roundtrip(s: SignSpace) -> CheckReport:
    """Space -> multifield -> space closes up to exhibited isomorphism."""
    f = aos_to_mfred(s)
    rr = is_real_reduced_mf(f)
    s2, bij = mfred_to_aos(f)
    iso = find_space_isomorphism(s, s2)
    return CheckReport(
        subject="ordering space round-trip",
        verdicts=(
            Verdict("image-real-reduced", rr.overall, None),
            Verdict("bijections", bij.overall, None),
            Verdict("space-isomorphic", iso is not None, iso,
                    "exhibited point bijection" if iso else ""),
        ),
    )


def mf_aos_roundtrip(f: FiniteMultiring) -> CheckReport:
    from .core import find_isomorphism
    s, bij = mfred_to_aos(f)
    aos = check_aos(s)
    f2 = aos_to_mfred(s)
    iso = find_isomorphism(f, f2)
    return CheckReport(
        subject="real reduced multifield round-trip",
        verdicts=(
            Verdict("space-passes-audit", aos.overall,
                    None if aos.overall else tuple(v.axiom for v in aos.failures())),
            Verdict("bijections", bij.overall, None),
            Verdict("multifield-isomorphic", iso is not None,
                    None if iso else (f.names,)),
        ),
    )


def ars_mr_roundtrip(s: SignSpace) -> CheckReport:
    a = ars_to_mrred(s)
    rr = is_real_reduced_mr(a)
    s2, audit = mrred_to_ars(a)
    iso = find_space_isomorphism(s, s2)
    return CheckReport(
        subject="sign spectrum round-trip",
        verdicts=(
            Verdict("image-real-reduced", rr.overall, None),
            Verdict("evaluation-audit", audit.overall, None),
            Verdict("space-isomorphic", iso is not None, iso,
                    "exhibited point bijection" if iso else ""),
        ),
    )


def mr_ars_roundtrip(a: FiniteMultiring) -> CheckReport:
    from .core import find_isomorphism
    s, audit = mrred_to_ars(a)
    ars = check_ars(s)
    a2 = ars_to_mrred(s)
    iso = find_isomorphism(a, a2)
    return CheckReport(
        subject="real reduced multiring round-trip",
        verdicts=(
            Verdict("space-passes-audit", ars.overall,
                    None if ars.overall else tuple(v.axiom for v in ars.failures())),
            Verdict("evaluation-audit", audit.overall, None),
            Verdict("multiring-isomorphic", iso is not None,
                    None if iso else (a.names,)),
        ),
    )
