"""Finite multigroups and multirings as explicit tables.

Set-valued cells are stored as bitmasks over carrier indices; carriers are
capped at 64 elements.  Structures are immutable after construction and all
checks are pure functions returning a CheckReport with one verdict per axiom.
The first violation in lexicographic index order is reported as the witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

CARRIER_CAP = 64


class InputError(ValueError):
    """Malformed input: bad table shape, empty cell, unknown label, size cap."""


class StructuralAnomaly(RuntimeError):
    """A property the constructions assume failed on this concrete instance."""


# ---------------------------------------------------------------------------
# bitmask helpers

def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# carriers and reports

@dataclass(frozen=True)
class Carrier:
    """Ordered list of distinct element labels; index order is canonical."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not (1 <= len(self.names) <= CARRIER_CAP):
            raise InputError(
                f"carrier size {len(self.names)} outside 1..{CARRIER_CAP}")
        if len(set(self.names)) != len(self.names):
            raise InputError("duplicate element labels")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown element label {name!r}") from None

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))


@dataclass(frozen=True)
class Verdict:
    axiom: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""
    informational: bool = False

    def render(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        parts = [f"{mark}  {self.axiom}"]
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.note:
            parts.append(f"[{self.note}]")
        return "  ".join(parts)


@dataclass(frozen=True)
class CheckReport:
    """Result of an axiom/property audit: per-axiom verdicts plus witnesses."""

    subject: str
    verdicts: tuple[Verdict, ...]

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts if not v.informational)

    def verdict(self, axiom: str) -> Verdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def failures(self) -> tuple[Verdict, ...]:
        return tuple(v for v in self.verdicts if not v.passed)

    def render(self) -> str:
        head = f"{self.subject}: {'PASS' if self.overall else 'FAIL'}"
        return "\n".join([head] + ["  " + v.render() for v in self.verdicts])


def _verdict_all(axiom: str, found: Optional[tuple], note: str = "",
                 informational: bool = False) -> Verdict:
    return Verdict(axiom, found is None, found, note, informational)


# ---------------------------------------------------------------------------
# multigroups

@dataclass(frozen=True)
class FiniteMultigroup:
    """(G, *, r, e) with a set-valued operation given as an n x n mask table."""

    carrier: Carrier
    op: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int

    def __post_init__(self) -> None:
        n = self.carrier.size
        _validate_cell_table("hyperoperation", self.op, n)
        _validate_unary("inv", self.inv, n)
        if not 0 <= self.identity < n:
            raise InputError("identity index out of range")

    @property
    def size(self) -> int:
        return self.carrier.size

    def cell(self, x: int, y: int) -> int:
        return self.op[x][y]

    def op_masks(self, xmask: int, ymask: int) -> int:
        """Union-extended operation on subsets."""
        out = 0
        for x in bits(xmask):
            row = self.op[x]
            for y in bits(ymask):
                out |= row[y]
        return out


def _validate_cell_table(what: str, table: Sequence[Sequence[int]], n: int) -> None:
    if len(table) != n:
        raise InputError(f"{what} table has {len(table)} rows, carrier has {n}")
    top = full_mask(n)
    for i, row in enumerate(table):
        if len(row) != n:
            raise InputError(f"{what} row {i} has {len(row)} cells, expected {n}")
        for j, cell in enumerate(row):
            if cell == 0:
                raise InputError(f"empty {what} cell at ({i},{j})")
            if cell & ~top:
                raise InputError(f"{what} cell at ({i},{j}) indexes outside carrier")


def _validate_unary(what: str, table: Sequence[int], n: int) -> None:
    if len(table) != n:
        raise InputError(f"{what} table has {len(table)} entries, expected {n}")
    for i, v in enumerate(table):
        if not 0 <= v < n:
            raise InputError(f"{what}({i}) out of range")


def _validate_value_table(what: str, table: Sequence[Sequence[int]], n: int) -> None:
    if len(table) != n:
        raise InputError(f"{what} table has {len(table)} rows, carrier has {n}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise InputError(f"{what} row {i} has {len(row)} cells, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise InputError(f"{what} cell at ({i},{j}) out of range")


def multigroup_from_labels(names: Sequence[str],
                           op: Sequence[Sequence[Sequence[str]]],
                           inv: dict[str, str],
                           identity: str) -> FiniteMultigroup:
    carrier = Carrier(tuple(names))
    n = carrier.size
    if len(op) != n or any(len(r) != n for r in op):
        raise InputError("ragged hyperoperation table")
    table = tuple(tuple(mask_of(carrier.index(l) for l in cell) for cell in row)
                  for row in op)
    invt = tuple(carrier.index(inv[name]) for name in names)
    return FiniteMultigroup(carrier, table, invt, carrier.index(identity))


def group_as_multigroup(names: Sequence[str],
                        mul: Callable[[int, int], int],
                        inv: Callable[[int], int],
                        identity: int) -> FiniteMultigroup:
    """Wrap an ordinary group law as a singleton-valued multigroup."""
    carrier = Carrier(tuple(names))
    n = carrier.size
    table = tuple(tuple(1 << mul(x, y) for y in range(n)) for x in range(n))
    return FiniteMultigroup(carrier, table, tuple(inv(x) for x in range(n)), identity)


def check_multigroup(m: FiniteMultigroup) -> CheckReport:
    """Audit the four multigroup axioms; commutativity is reported separately."""
    n = m.size
    names = m.carrier.names
    r = m.inv

    w_rev = None
    for x, y in itertools.product(range(n), repeat=2):
        cell = m.op[x][y]
        for z in bits(cell):
            if not (m.op[z][r[y]] >> x) & 1 or not (m.op[r[x]][z] >> y) & 1:
                w_rev = (names[x], names[y], names[z])
                break
        if w_rev:
            break

    w_id = None
    for x in range(n):
        cell = m.op[m.identity][x]
        if cell != 1 << x:
            y = next(i for i in bits(cell ^ (1 << x)))
            w_id = (names[x], names[y])
            break

    w_assoc = None
    for x, y, z in itertools.product(range(n), repeat=3):
        left = m.op_masks(1 << x, m.op[y][z])
        right = m.op_masks(m.op[x][y], 1 << z)
        if left != right:
            w_assoc = (names[x], names[y], names[z])
            break

    w_comm = None
    for x, y in itertools.combinations(range(n), 2):
        if m.op[x][y] != m.op[y][x]:
            w_comm = (names[x], names[y])
            break

    return CheckReport(
        subject="multigroup",
        verdicts=(
            _verdict_all("i-reversibility", w_rev),
            _verdict_all("ii-identity", w_id),
            _verdict_all("iii-associativity", w_assoc),
            _verdict_all("iv-commutativity", w_comm),
        ),
    )


# ---------------------------------------------------------------------------
# relational presentation

@dataclass(frozen=True)
class RelationalMultigroup:
    """(G, Pi, r, i) with the operation presented as a set of triples."""

    carrier: Carrier
    pi: frozenset[tuple[int, int, int]]
    inv: tuple[int, ...]
    identity: int

    def __post_init__(self) -> None:
        n = self.carrier.size
        _validate_unary("inv", self.inv, n)
        if not 0 <= self.identity < n:
            raise InputError("identity index out of range")
        for t in self.pi:
            if len(t) != 3 or any(not 0 <= v < n for v in t):
                raise InputError(f"triple {t} outside carrier")

    @property
    def size(self) -> int:
        return self.carrier.size


def to_relational(m: FiniteMultigroup) -> RelationalMultigroup:
    triples = frozenset((x, y, z)
                        for x in range(m.size) for y in range(m.size)
                        for z in bits(m.op[x][y]))
    return RelationalMultigroup(m.carrier, triples, m.inv, m.identity)


def from_relational(rel: RelationalMultigroup) -> FiniteMultigroup:
    n = rel.size
    table = [[0] * n for _ in range(n)]
    for (x, y, z) in rel.pi:
        table[x][y] |= 1 << z
    for x, y in itertools.product(range(n), repeat=2):
        if table[x][y] == 0:
            raise InputError(
                f"non-total hyperoperation: no triple for "
                f"({rel.carrier.names[x]},{rel.carrier.names[y]})")
    return FiniteMultigroup(rel.carrier, tuple(tuple(r) for r in table),
                            rel.inv, rel.identity)


def check_relational_axioms(rel: RelationalMultigroup) -> CheckReport:
    """Audit axioms I-IV of the triple presentation."""
    n = rel.size
    names = rel.carrier.names
    pi = rel.pi
    r = rel.inv
    by_first2: dict[tuple[int, int], list[int]] = {}
    for (x, y, z) in pi:
        by_first2.setdefault((x, y), []).append(z)

    w1 = None
    for t in sorted(pi):
        x, y, z = t
        if (z, r[y], x) not in pi or (r[x], z, y) not in pi:
            w1 = (names[x], names[y], names[z])
            break

    w2 = None
    for x, y in itertools.product(range(n), repeat=2):
        if ((x, rel.identity, y) in pi) != (x == y):
            w2 = (names[x], names[y])
            break

    w3 = None
    for u, v, w, x in itertools.product(range(n), repeat=4):
        lhs = any((p, w, x) in pi for p in by_first2.get((u, v), ()))
        if lhs and not any((u, q, x) in pi for q in by_first2.get((v, w), ())):
            w3 = (names[u], names[v], names[w], names[x])
            break

    w4 = None
    for t in sorted(pi):
        x, y, z = t
        if (y, x, z) not in pi:
            w4 = (names[x], names[y], names[z])
            break

    return CheckReport(
        subject="relational multigroup",
        verdicts=(
            _verdict_all("I-reversibility", w1),
            _verdict_all("II-identity", w2),
            _verdict_all("III-reassociation", w3),
            _verdict_all("IV-commutativity", w4),
        ),
    )


def check_relational_lemmas(rel: RelationalMultigroup) -> CheckReport:
    """Audit the six consequences (a)-(f) of axioms I-III.

    Axioms I-III are re-verified first; on a precondition failure the lemma
    scan is skipped and the axiom verdicts carry the report.
    """
    ax = check_relational_axioms(rel)
    pre = [v for v in ax.verdicts if v.axiom != "IV-commutativity"]
    if not all(v.passed for v in pre):
        note = Verdict("lemmas", False, None,
                       "skipped: axioms I-III failed", informational=True)
        return CheckReport("relational lemmas", tuple(pre) + (note,))

    n = rel.size
    names = rel.carrier.names
    pi = rel.pi
    r = rel.inv
    e = rel.identity
    by_first2: dict[tuple[int, int], list[int]] = {}
    for (x, y, z) in pi:
        by_first2.setdefault((x, y), []).append(z)

    wa = None if r[e] == e else (names[e],)

    wb = None
    for x in range(n):
        if r[r[x]] != x:
            wb = (names[x],)
            break

    wc = None
    for x, y, z in itertools.product(range(n), repeat=3):
        if ((x, y, z) in pi) != ((r[y], r[x], r[z]) in pi):
            wc = (names[x], names[y], names[z])
            break

    wd = None
    for x, y in itertools.product(range(n), repeat=2):
        if ((e, x, y) in pi) != (x == y):
            wd = (names[x], names[y])
            break

    we = None
    for u, v, w, x in itertools.product(range(n), repeat=4):
        lhs = any((u, q, x) in pi for q in by_first2.get((v, w), ()))
        if lhs and not any((p, w, x) in pi for p in by_first2.get((u, v), ())):
            we = (names[u], names[v], names[w], names[x])
            break

    wf = None
    for a, b in itertools.product(range(n), repeat=2):
        if (a, b) not in by_first2:
            wf = (names[a], names[b])
            break

    return CheckReport(
        subject="relational lemmas",
        verdicts=(
            _verdict_all("a-inverse-fixes-identity", wa),
            _verdict_all("b-inverse-involutive", wb),
            _verdict_all("c-triple-inversion", wc),
            _verdict_all("d-left-identity", wd),
            _verdict_all("e-reverse-reassociation", we),
            _verdict_all("f-totality", wf),
        ),
    )


# ---------------------------------------------------------------------------
# multirings

@dataclass(frozen=True)
class FiniteMultiring:
    """(R, +, ., -, 0, 1): set-valued addition, single-valued multiplication."""

    carrier: Carrier
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    zero: int
    one: int

    def __post_init__(self) -> None:
        n = self.carrier.size
        _validate_cell_table("addition", self.add, n)
        _validate_value_table("multiplication", self.mul, n)
        _validate_unary("neg", self.neg, n)
        for idx, what in ((self.zero, "zero"), (self.one, "one")):
            if not 0 <= idx < n:
                raise InputError(f"{what} index out of range")

    @property
    def size(self) -> int:
        return self.carrier.size

    @property
    def names(self) -> tuple[str, ...]:
        return self.carrier.names

    def add_set(self, a: int, b: int) -> int:
        return self.add[a][b]

    def add_masks(self, xmask: int, ymask: int) -> int:
        out = 0
        for x in bits(xmask):
            row = self.add[x]
            for y in bits(ymask):
                out |= row[y]
        return out

    def mul_masks(self, xmask: int, ymask: int) -> int:
        out = 0
        for x in bits(xmask):
            row = self.mul[x]
            for y in bits(ymask):
                out |= 1 << row[y]
        return out

    def neg_mask(self, xmask: int) -> int:
        return mask_of(self.neg[x] for x in bits(xmask))

    def nonzero_mask(self) -> int:
        return full_mask(self.size) & ~(1 << self.zero)

    def additive_multigroup(self) -> FiniteMultigroup:
        return FiniteMultigroup(self.carrier, self.add, self.neg, self.zero)


def multiring_from_labels(names: Sequence[str],
                          add: Sequence[Sequence[Sequence[str]]],
                          mul: Sequence[Sequence[str]],
                          neg: dict[str, str],
                          zero: str,
                          one: str) -> FiniteMultiring:
    carrier = Carrier(tuple(names))
    n = carrier.size
    if len(add) != n or any(len(r) != n for r in add):
        raise InputError("ragged addition table")
    if len(mul) != n or any(len(r) != n for r in mul):
        raise InputError("ragged multiplication table")
    addt = tuple(tuple(mask_of(carrier.index(l) for l in cell) for cell in row)
                 for row in add)
    mult = tuple(tuple(carrier.index(v) for v in row) for row in mul)
    negt = tuple(carrier.index(neg[name]) for name in names)
    return FiniteMultiring(carrier, addt, mult, negt,
                           carrier.index(zero), carrier.index(one))


def ring_multiring(n: int, name: Optional[str] = None) -> FiniteMultiring:
    """Z/n wrapped as a singleton-valued multiring."""
    if n < 1 or n > CARRIER_CAP:
        raise InputError(f"modulus {n} outside 1..{CARRIER_CAP}")
    names = tuple(str(i) for i in range(n))
    add = tuple(tuple(1 << ((i + j) % n) for j in range(n)) for i in range(n))
    mul = tuple(tuple((i * j) % n for j in range(n)) for i in range(n))
    neg = tuple((-i) % n for i in range(n))
    return FiniteMultiring(Carrier(names), add, mul, neg, 0, 1 % n)


def q2() -> FiniteMultiring:
    """The three-element sign multifield {-1,0,1}."""
    return multiring_from_labels(
        names=("-1", "0", "1"),
        add=[
            [["-1"], ["-1"], ["-1", "0", "1"]],
            [["-1"], ["0"], ["1"]],
            [["-1", "0", "1"], ["1"], ["1"]],
        ],
        mul=[["1", "0", "-1"], ["0", "0", "0"], ["-1", "0", "1"]],
        neg={"-1": "1", "0": "0", "1": "-1"},
        zero="0",
        one="1",
    )


def krasner() -> FiniteMultiring:
    """The two-element multifield {0,1} with 1+1={0,1}."""
    return multiring_from_labels(
        names=("0", "1"),
        add=[[["0"], ["1"]], [["1"], ["0", "1"]]],
        mul=[["0", "0"], ["0", "1"]],
        neg={"0": "0", "1": "1"},
        zero="0",
        one="1",
    )


def check_multiring(r: FiniteMultiring) -> CheckReport:
    """Audit the multiring axioms.

    Weak distributivity (a+b)d <= ad+bd is the axiom; equality is reported
    as an extra informational verdict so multifields can be recognised.
    """
    n = r.size
    names = r.names
    addgrp = check_multigroup(r.additive_multigroup())
    verdicts = [Verdict("add-" + v.axiom, v.passed, v.witness) for v in addgrp.verdicts]

    w = None
    for a, b, c in itertools.product(range(n), repeat=3):
        if r.mul[r.mul[a][b]][c] != r.mul[a][r.mul[b][c]]:
            w = (names[a], names[b], names[c])
            break
    verdicts.append(_verdict_all("mul-associativity", w))

    w = None
    for a, b in itertools.combinations(range(n), 2):
        if r.mul[a][b] != r.mul[b][a]:
            w = (names[a], names[b])
            break
    verdicts.append(_verdict_all("mul-commutativity", w))

    w = None
    for a in range(n):
        if r.mul[r.one][a] != a:
            w = (names[a],)
            break
    verdicts.append(_verdict_all("mul-identity", w))

    w = None
    for a in range(n):
        if r.mul[a][r.zero] != r.zero:
            w = (names[a],)
            break
    verdicts.append(_verdict_all("zero-absorbing", w))

    w_weak = None
    w_full = None
    for a, b, d in itertools.product(range(n), repeat=3):
        left = r.mul_masks(r.add[a][b], 1 << d)
        right = r.add[r.mul[a][d]][r.mul[b][d]]
        if w_weak is None and left & ~right:
            w_weak = (names[a], names[b], names[d])
        if w_full is None and left != right:
            w_full = (names[a], names[b], names[d])
        if w_weak and w_full:
            break
    verdicts.append(_verdict_all("distributivity-weak", w_weak))
    verdicts.append(_verdict_all("distributivity-full", w_full,
                                 note="informational", informational=True))

    return CheckReport("multiring", tuple(verdicts))


@dataclass(frozen=True)
class MultiringKind:
    multiring: bool
    multidomain: bool
    multifield: bool


def _classify_unchecked(r: FiniteMultiring) -> MultiringKind:
    n = r.size
    z = r.zero
    domain = True
    for a, b in itertools.product(range(n), repeat=2):
        if a != z and b != z and r.mul[a][b] == z:
            domain = False
            break
    fieldlike = True
    for a in range(n):
        if a == z:
            continue
        if not any(r.mul[a][b] == r.one for b in range(n)):
            fieldlike = False
            break
    return MultiringKind(True, domain, fieldlike)


def classify(r: FiniteMultiring, *, verified: bool = False) -> MultiringKind:
    """Flag multidomain / multifield status.  Requires the axioms to hold;
    pass verified=True to skip the re-audit."""
    if not verified and not check_multiring(r).overall:
        raise InputError("classify: structure fails the multiring audit")
    return _classify_unchecked(r)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class StructureMap:
    """Total map between two structures, stored on carrier indices."""

    source: object
    target: object
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.source.carrier.size
        m = self.target.carrier.size
        if len(self.mapping) != n:
            raise InputError("map not total on source carrier")
        if any(not 0 <= v < m for v in self.mapping):
            raise InputError("map image outside target carrier")

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.carrier.size


def identity_map(a: FiniteMultiring) -> StructureMap:
    return StructureMap(a, a, tuple(range(a.size)))


def compose_maps(f: StructureMap, g: StructureMap) -> StructureMap:
    """g after f."""
    if f.target is not g.source and f.target != g.source:
        raise InputError("compose: middle structures differ")
    return StructureMap(f.source, g.target, tuple(g.mapping[v] for v in f.mapping))


def check_morphism(f: StructureMap) -> CheckReport:
    """Audit the five multiring morphism conditions."""
    a: FiniteMultiring = f.source  # type: ignore[assignment]
    b: FiniteMultiring = f.target  # type: ignore[assignment]
    names = a.names
    fm = f.mapping

    w1 = None
    for x, y in itertools.product(range(a.size), repeat=2):
        for c in bits(a.add[x][y]):
            if not (b.add[fm[x]][fm[y]] >> fm[c]) & 1:
                w1 = (names[x], names[y], names[c])
                break
        if w1:
            break

    w2 = None
    for x in range(a.size):
        if fm[a.neg[x]] != b.neg[fm[x]]:
            w2 = (names[x],)
            break

    w3 = None if fm[a.zero] == b.zero else (names[a.zero],)

    w4 = None
    for x, y in itertools.product(range(a.size), repeat=2):
        if fm[a.mul[x][y]] != b.mul[fm[x]][fm[y]]:
            w4 = (names[x], names[y])
            break

    w5 = None if fm[a.one] == b.one else (names[a.one],)

    return CheckReport(
        subject="morphism",
        verdicts=(
            _verdict_all("i-add-membership", w1),
            _verdict_all("ii-neg", w2),
            _verdict_all("iii-zero", w3),
            _verdict_all("iv-mul", w4),
            _verdict_all("v-one", w5),
        ),
    )


def kernel_mask(f: StructureMap) -> int:
    b: FiniteMultiring = f.target  # type: ignore[assignment]
    return mask_of(i for i, v in enumerate(f.mapping) if v == b.zero)


def embedding_kind(f: StructureMap) -> str:
    """Classify a morphism along the substructure chain.

    Returns the maximal label among not_injective, embedded,
    strongly_embedded, submultiring.
    """
    if not check_morphism(f).overall:
        raise InputError("embedding_kind: map is not a morphism")
    a: FiniteMultiring = f.source  # type: ignore[assignment]
    b: FiniteMultiring = f.target  # type: ignore[assignment]
    fm = f.mapping
    if not f.is_injective():
        return "not_injective"
    reflects = True
    for x, y in itertools.product(range(a.size), repeat=2):
        cell = b.add[fm[x]][fm[y]]
        for c in range(a.size):
            if (cell >> fm[c]) & 1 and not (a.add[x][y] >> c) & 1:
                reflects = False
                break
        if not reflects:
            break
    if not reflects:
        return "embedded"
    image = mask_of(fm)
    for x, y in itertools.product(range(a.size), repeat=2):
        if b.add[fm[x]][fm[y]] & ~image:
            return "strongly_embedded"
    return "submultiring"


def is_multiring_morphism(f: StructureMap) -> bool:
    return check_morphism(f).overall


def enumerate_multiring_morphisms(a: FiniteMultiring,
                                  b: FiniteMultiring) -> list[StructureMap]:
    """All morphisms a -> b, by backtracking in canonical element order."""
    n, m = a.size, b.size
    assign = [-1] * n
    out: list[StructureMap] = []

    def consistent(i: int) -> bool:
        v = assign[i]
        if i == a.zero and v != b.zero:
            return False
        if i == a.one and v != b.one:
            return False
        for j in range(n):
            w = assign[j]
            if w < 0:
                continue
            if a.neg[j] == i and b.neg[w] != v:
                return False
            if a.neg[i] == j and b.neg[v] != w:
                return False
            p = a.mul[i][j]
            if assign[p] >= 0 and b.mul[v][w] != assign[p]:
                return False
            for k in range(n):
                u = assign[k]
                if u < 0:
                    continue
                if a.mul[j][k] == i and b.mul[w][u] != v:
                    return False
                if (a.add[j][k] >> i) & 1 and not (b.add[w][u] >> v) & 1:
                    return False
        return True

    def extend(i: int) -> None:
        if i == n:
            f = StructureMap(a, b, tuple(assign))
            if check_morphism(f).overall:
                out.append(f)
            return
        for v in range(m):
            assign[i] = v
            if consistent(i):
                extend(i + 1)
        assign[i] = -1

    extend(0)
    return out


def find_isomorphism(a: FiniteMultiring,
                     b: FiniteMultiring) -> Optional[StructureMap]:
    """First isomorphism in backtracking order over canonical element order,
    or None.  Label-insensitive: only the tables must match."""
    n = a.size
    if n != b.size:
        return None
    assign = [-1] * n
    used = [False] * b.size

    def consistent(i: int) -> bool:
        v = assign[i]
        if (i == a.zero) != (v == b.zero):
            return False
        if (i == a.one) != (v == b.one):
            return False
        for j in range(n):
            w = assign[j]
            if w < 0:
                continue
            if a.neg[i] == j and b.neg[v] != w:
                return False
            if a.neg[j] == i and b.neg[w] != v:
                return False
            p = a.mul[i][j]
            if assign[p] >= 0 and b.mul[v][w] != assign[p]:
                return False
            q = a.mul[j][i]
            if assign[q] >= 0 and b.mul[w][v] != assign[q]:
                return False
            if a.add[i][j].bit_count() != b.add[v][w].bit_count():
                return False
        return True

    def full_match() -> bool:
        for x, y in itertools.product(range(n), repeat=2):
            if mask_of(assign[c] for c in bits(a.add[x][y])) != b.add[assign[x]][assign[y]]:
                return False
            if assign[a.mul[x][y]] != b.mul[assign[x]][assign[y]]:
                return False
        return True

    def extend(i: int) -> Optional[StructureMap]:
        if i == n:
            if full_match():
                return StructureMap(a, b, tuple(assign))
            return None
        for v in range(n):
            if used[v]:
                continue
            assign[i] = v
            used[v] = True
            if consistent(i):
                found = extend(i + 1)
                if found is not None:
                    return found
            used[v] = False
        assign[i] = -1
        return None

    return extend(0)


def is_isomorphic(a: FiniteMultiring, b: FiniteMultiring) -> bool:
    return find_isomorphism(a, b) is not None
