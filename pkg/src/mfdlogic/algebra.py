"""Truth-degree algebras: integral commutative pomonoids and friends.

Dependencies are graded over a pomonoid: a partially ordered set with a
commutative, associative, monotone multiplication whose unit is the greatest
element.  Degrees multiply when evidence accumulates and the order says when
one degree is at least another.  Three families live here:

* :class:`FinitePomonoid` with explicit order and multiplication tables,
* :class:`FiniteResiduatedLattice`, a finite pomonoid with lattice meets and
  joins, a bottom, and a residuum adjoint to the multiplication,
* :class:`UnitIntervalPomonoid`, the classical t-norms (product, minimum,
  Lukasiewicz) on real numbers in [0, 1].

Besides evaluation of multisets and satisfaction of dependencies, the module
can exhaustively enumerate all finite integral commutative pomonoids up to a
size cap (deduplicated up to isomorphism) and complete any finite pomonoid
into a residuated lattice of downsets; both power the countermodel search.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .formula import AttributeMultiset, Mfd, Theory

__all__ = [
    "Violation",
    "UnassignedAttributeError",
    "InvalidAlgebraError",
    "FinitePomonoid",
    "FiniteResiduatedLattice",
    "UnitIntervalPomonoid",
    "Evaluation",
    "validate",
    "validate_unit_interval",
    "elem_power",
    "evaluate",
    "satisfies",
    "is_model",
    "enumerate_pomonoids",
    "downset_completion",
    "builtin_algebra",
    "BUILTIN_ALGEBRA_NAMES",
    "algebra_to_json",
    "algebra_from_json",
    "load_algebra",
    "ENUMERATION_SIZE_CAP",
]

# Enumeration beyond this carrier size is refused; the search space explodes.
ENUMERATION_SIZE_CAP = 6


@dataclass(frozen=True)
class Violation:
    """One failed algebra axiom with the witnessing elements."""

    axiom: str
    witness: Tuple

    def __str__(self) -> str:
        return f"{self.axiom} fails at {self.witness}"


class UnassignedAttributeError(KeyError):
    """Raised when evaluating a multiset over an incomplete assignment."""


class InvalidAlgebraError(ValueError):
    """Raised when loading an algebra description that fails validation."""


# =====================================================================
# Finite pomonoids
# =====================================================================


class FinitePomonoid:
    """An integral commutative pomonoid on elements 0..size-1.

    ``leq_table[a][b]`` says whether a <= b and ``times_table[a][b]`` is the
    product.  Elements are addressed by index everywhere; ``element_names``
    only affects display and serialization.  Construction checks shapes and
    index ranges; axiom checking is the job of :func:`validate`.
    """

    __slots__ = ("element_names", "unit", "leq_table", "times_table", "_np")

    def __init__(
        self,
        element_names: Sequence[str],
        unit: int,
        leq_table: Sequence[Sequence[bool]],
        times_table: Sequence[Sequence[int]],
    ):
        names = tuple(str(x) for x in element_names)
        n = len(names)
        if n == 0:
            raise ValueError("algebra needs at least one element")
        if len(set(names)) != n:
            raise ValueError("element names must be distinct")
        if not (0 <= unit < n):
            raise ValueError(f"unit index {unit} out of range")
        leq = tuple(tuple(bool(v) for v in row) for row in leq_table)
        times = tuple(tuple(int(v) for v in row) for row in times_table)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValueError(f"leq table must be {n}x{n}")
        if len(times) != n or any(len(row) != n for row in times):
            raise ValueError(f"times table must be {n}x{n}")
        if any(not (0 <= v < n) for row in times for v in row):
            raise ValueError("times table entry out of range")
        self.element_names = names
        self.unit = int(unit)
        self.leq_table = leq
        self.times_table = times
        self._np = None

    @property
    def size(self) -> int:
        return len(self.element_names)

    def elements(self) -> range:
        return range(self.size)

    def leq_holds(self, a: int, b: int) -> bool:
        return self.leq_table[a][b]

    def times(self, a: int, b: int) -> int:
        return self.times_table[a][b]

    def index_of(self, name: str) -> int:
        try:
            return self.element_names.index(name)
        except ValueError:
            raise ValueError(f"unknown element name {name!r}") from None

    def is_linear(self) -> bool:
        """True when the order is total."""
        n = self.size
        return all(
            self.leq_table[a][b] or self.leq_table[b][a]
            for a in range(n)
            for b in range(a + 1, n)
        )

    def np_tables(self):
        """(times, leq) as numpy arrays, cached; used by vectorized sweeps."""
        if self._np is None:
            import numpy as np

            self._np = (
                np.array(self.times_table, dtype=np.int64),
                np.array(self.leq_table, dtype=bool),
            )
        return self._np

    def canonical_form(self) -> Tuple[Tuple[bool, ...], Tuple[int, ...]]:
        """Relabeling-invariant fingerprint: minimal (leq, times) over all
        permutations.  Two finite pomonoids are isomorphic iff their
        canonical forms are equal."""
        n = self.size
        best = None
        for perm in itertools.permutations(range(n)):
            leq = tuple(
                self.leq_table[perm[i]][perm[j]] for i in range(n) for j in range(n)
            )
            inv = [0] * n
            for pos, orig in enumerate(perm):
                inv[orig] = pos
            times = tuple(
                inv[self.times_table[perm[i]][perm[j]]]
                for i in range(n)
                for j in range(n)
            )
            key = (leq, times)
            if best is None or key < best:
                best = key
        return best

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePomonoid):
            return NotImplemented
        return (
            self.element_names == other.element_names
            and self.unit == other.unit
            and self.leq_table == other.leq_table
            and self.times_table == other.times_table
        )

    def __hash__(self) -> int:
        return hash((self.element_names, self.unit, self.leq_table, self.times_table))

    def __repr__(self) -> str:
        return f"<FinitePomonoid size={self.size} unit={self.element_names[self.unit]!r}>"

    def describe(self) -> str:
        """Readable rendering of the order and multiplication tables."""
        names = self.element_names
        width = max(len(s) for s in names)
        pad = lambda s: s.rjust(width)
        lines = [f"elements: {' '.join(names)}   unit: {names[self.unit]}"]
        lines.append("leq (row <= col):")
        header = " " * (width + 2) + " ".join(pad(s) for s in names)
        lines.append(header)
        for a in range(self.size):
            row = " ".join(pad("1" if self.leq_table[a][b] else ".") for b in range(self.size))
            lines.append(f"  {pad(names[a])} {row}")
        lines.append("times:")
        lines.append(header)
        for a in range(self.size):
            row = " ".join(pad(names[self.times_table[a][b]]) for b in range(self.size))
            lines.append(f"  {pad(names[a])} {row}")
        return "\n".join(lines)


class FiniteResiduatedLattice(FinitePomonoid):
    """A finite pomonoid whose order is a bounded lattice with a residuum.

    ``residuum_table[a][b]`` is the largest x with x*a <= b; adjointness
    (a*b <= c iff a <= residuum(b, c)) is part of :func:`validate`.
    """

    __slots__ = ("bottom", "meet_table", "join_table", "residuum_table")

    def __init__(
        self,
        element_names: Sequence[str],
        unit: int,
        leq_table: Sequence[Sequence[bool]],
        times_table: Sequence[Sequence[int]],
        bottom: int,
        meet_table: Sequence[Sequence[int]],
        join_table: Sequence[Sequence[int]],
        residuum_table: Sequence[Sequence[int]],
    ):
        super().__init__(element_names, unit, leq_table, times_table)
        n = self.size
        if not (0 <= bottom < n):
            raise ValueError(f"bottom index {bottom} out of range")
        for label, table in (("meet", meet_table), ("join", join_table), ("residuum", residuum_table)):
            rows = tuple(tuple(int(v) for v in row) for row in table)
            if len(rows) != n or any(len(row) != n for row in rows):
                raise ValueError(f"{label} table must be {n}x{n}")
            if any(not (0 <= v < n) for row in rows for v in row):
                raise ValueError(f"{label} table entry out of range")
        self.bottom = int(bottom)
        self.meet_table = tuple(tuple(int(v) for v in row) for row in meet_table)
        self.join_table = tuple(tuple(int(v) for v in row) for row in join_table)
        self.residuum_table = tuple(tuple(int(v) for v in row) for row in residuum_table)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def residuum(self, a: int, b: int) -> int:
        return self.residuum_table[a][b]

    def __repr__(self) -> str:
        return f"<FiniteResiduatedLattice size={self.size} unit={self.element_names[self.unit]!r}>"


class UnitIntervalPomonoid:
    """Real degrees in [0, 1] under a t-norm, ordered as usual.

    Comparisons are exact machine-real comparisons; nothing is rounded.
    """

    KINDS = ("product", "min", "lukasiewicz")

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in self.KINDS:
            raise ValueError(f"unknown unit-interval pomonoid kind {kind!r}")
        self.kind = kind

    @property
    def unit(self) -> float:
        return 1.0

    def leq_holds(self, a: float, b: float) -> bool:
        return a <= b

    def times(self, a: float, b: float) -> float:
        if self.kind == "product":
            return a * b
        if self.kind == "min":
            return a if a <= b else b
        return max(0.0, a + b - 1.0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitIntervalPomonoid):
            return NotImplemented
        return self.kind == other.kind

    def __hash__(self) -> int:
        return hash(("UnitIntervalPomonoid", self.kind))

    def __repr__(self) -> str:
        return f"<UnitIntervalPomonoid {self.kind}>"


Algebra = Union[FinitePomonoid, UnitIntervalPomonoid]


# =====================================================================
# Axiom checking
# =====================================================================


def validate(algebra: FinitePomonoid) -> List[Violation]:
    """All axiom violations of a finite candidate; empty means sound.

    Checks the partial order, the commutative monoid laws, monotonicity of
    the multiplication, and integrality (unit on top).  For residuated
    lattices also bounds, meet/join being actual infima/suprema, and the
    adjointness of the residuum, all exhaustively.
    """
    out: List[Violation] = []
    n = algebra.size
    leq = algebra.leq_table
    t = algebra.times_table
    u = algebra.unit

    for a in range(n):
        if not leq[a][a]:
            out.append(Violation("order-reflexive", (a,)))
    for a in range(n):
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                out.append(Violation("order-antisymmetric", (a, b)))
            for c in range(n):
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    out.append(Violation("order-transitive", (a, b, c)))

    for a in range(n):
        for b in range(n):
            if t[a][b] != t[b][a]:
                out.append(Violation("times-commutative", (a, b)))
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    out.append(Violation("times-associative", (a, b, c)))

    for a in range(n):
        if t[u][a] != a:
            out.append(Violation("unit-neutral", (a,)))
        if not leq[a][u]:
            out.append(Violation("unit-greatest", (a,)))

    for a in range(n):
        for b in range(n):
            if not leq[a][b]:
                continue
            for c in range(n):
                if not leq[t[a][c]][t[b][c]]:
                    out.append(Violation("times-monotone", (a, b, c)))

    if isinstance(algebra, FiniteResiduatedLattice):
        bot = algebra.bottom
        for a in range(n):
            if not leq[bot][a]:
                out.append(Violation("bottom-least", (a,)))
        for a in range(n):
            for b in range(n):
                m = algebra.meet_table[a][b]
                if not (leq[m][a] and leq[m][b]):
                    out.append(Violation("meet-lower-bound", (a, b)))
                else:
                    for c in range(n):
                        if leq[c][a] and leq[c][b] and not leq[c][m]:
                            out.append(Violation("meet-greatest-lower", (a, b, c)))
                j = algebra.join_table[a][b]
                if not (leq[a][j] and leq[b][j]):
                    out.append(Violation("join-upper-bound", (a, b)))
                else:
                    for c in range(n):
                        if leq[a][c] and leq[b][c] and not leq[j][c]:
                            out.append(Violation("join-least-upper", (a, b, c)))
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if leq[t[a][b]][c] != leq[a][algebra.residuum_table[b][c]]:
                        out.append(Violation("residuum-adjoint", (a, b, c)))

    return out


def validate_unit_interval(
    algebra: UnitIntervalPomonoid,
    samples: int = 500,
    seed: int = 0,
    tolerance: float = 1e-12,
) -> List[Violation]:
    """Numeric spot check of the pomonoid laws on sampled triples."""
    import random

    rng = random.Random(seed)
    out: List[Violation] = []
    for _ in range(samples):
        a, b, c = (rng.random() for _ in range(3))
        t = algebra.times
        if abs(t(a, b) - t(b, a)) > tolerance:
            out.append(Violation("times-commutative", (a, b)))
        if abs(t(t(a, b), c) - t(a, t(b, c))) > tolerance:
            out.append(Violation("times-associative", (a, b, c)))
        if abs(t(1.0, a) - a) > tolerance:
            out.append(Violation("unit-neutral", (a,)))
        lo, hi = min(a, b), max(a, b)
        if t(lo, c) > t(hi, c) + tolerance:
            out.append(Violation("times-monotone", (lo, hi, c)))
        if t(a, b) > min(a, b) + tolerance:
            out.append(Violation("integrality", (a, b)))
    return out


# =====================================================================
# Evaluation semantics
# =====================================================================


@dataclass
class Evaluation:
    """An assignment of degrees to attribute names over some algebra."""

    algebra: Algebra
    assignment: Dict[str, Union[int, float]] = field(default_factory=dict)

    def degree_name(self, attr: str) -> str:
        """Display form of the assigned degree."""
        value = self.assignment[attr]
        if isinstance(self.algebra, FinitePomonoid):
            return self.algebra.element_names[value]
        return format(value, ".4f")


def elem_power(algebra: Algebra, a, n: int):
    """a multiplied with itself n times; the empty product is the unit."""
    if n < 0:
        raise ValueError(f"power must be non-negative, got {n}")
    acc = algebra.unit
    for _ in range(n):
        acc = algebra.times(acc, a)
    return acc


def evaluate(e: Evaluation, m: AttributeMultiset):
    """Degree of a multiset: product of attribute degrees with multiplicity."""
    algebra = e.algebra
    acc = algebra.unit
    for name, mult in m.items():
        try:
            value = e.assignment[name]
        except KeyError:
            raise UnassignedAttributeError(name) from None
        acc = algebra.times(acc, elem_power(algebra, value, mult))
    return acc


def satisfies(e: Evaluation, f: Mfd) -> bool:
    """Whether the antecedent degree is below the consequent degree."""
    return e.algebra.leq_holds(evaluate(e, f.antecedent), evaluate(e, f.consequent))


def is_model(e: Evaluation, theory: Theory) -> bool:
    return all(satisfies(e, f) for f in theory.distinct_formulas())


# =====================================================================
# Exhaustive enumeration of finite integral commutative pomonoids
# =====================================================================
#
# A poset with a greatest element on n points is an arbitrary poset on n-1
# points with a new top adjoined, so labeled posets are generated by that
# recursion, canonicalized (minimal flattened order matrix over all
# relabelings) and sorted.  Multiplication tables are then filled in
# row-major cell order by backtracking: each entry must sit below both
# arguments (integrality), respect monotonicity against the cells already
# chosen, and pass associativity; the unit row is fixed.  Tables isomorphic
# under an order automorphism are emitted once.


def _labeled_posets(n: int) -> List[Tuple[Tuple[bool, ...], ...]]:
    """All labeled posets on 0..n-1 as leq matrices."""
    posets: List[Tuple[Tuple[bool, ...], ...]] = [()]
    for k in range(1, n + 1):
        grown: List[Tuple[Tuple[bool, ...], ...]] = []
        for leq in posets:
            m = k - 1
            subsets = list(itertools.chain.from_iterable(
                itertools.combinations(range(m), r) for r in range(m + 1)
            ))
            down = [s for s in subsets
                    if all(leq[y][x] <= (y in s) for x in s for y in range(m))]
            up = [s for s in subsets
                  if all(leq[x][y] <= (y in s) for x in s for y in range(m))]
            for d in down:
                dset = set(d)
                for u in up:
                    if dset & set(u):
                        continue
                    if not all(leq[x][y] for x in d for y in u):
                        continue
                    uset = set(u)
                    rows = [
                        tuple(leq[i][j] for j in range(m)) + ((i in dset),)
                        for i in range(m)
                    ]
                    rows.append(tuple((j in uset) for j in range(m)) + (True,))
                    grown.append(tuple(rows))
        posets = grown
    return posets


def _canonical_leq(leq: Tuple[Tuple[bool, ...], ...]) -> Tuple[Tuple[bool, ...], ...]:
    n = len(leq)
    best = None
    for perm in itertools.permutations(range(n)):
        mat = tuple(tuple(leq[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if best is None or mat < best:
            best = mat
    return best


def _posets_with_top(n: int) -> List[Tuple[Tuple[bool, ...], ...]]:
    """Canonical posets of size n having a greatest element, sorted."""
    if n == 0:
        return []
    seen = set()
    out = []
    for base in _labeled_posets(n - 1):
        m = n - 1
        rows = [tuple(base[i][j] for j in range(m)) + (True,) for i in range(m)]
        rows.append(tuple(False for _ in range(m)) + (True,))
        canon = _canonical_leq(tuple(rows))
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    out.sort()
    return out


def _order_automorphisms(leq: Tuple[Tuple[bool, ...], ...]) -> List[Tuple[int, ...]]:
    n = len(leq)
    return [
        perm
        for perm in itertools.permutations(range(n))
        if all(leq[perm[i]][perm[j]] == leq[i][j] for i in range(n) for j in range(n))
    ]


def _fill_times_tables(
    leq: Tuple[Tuple[bool, ...], ...], unit: int
) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    n = len(leq)
    cells = [(i, j) for i in range(n) for j in range(i, n) if i != unit and j != unit]
    candidates = {
        (i, j): [v for v in range(n) if leq[v][i] and leq[v][j]] for (i, j) in cells
    }
    table: List[List[Optional[int]]] = [[None] * n for _ in range(n)]
    for x in range(n):
        table[unit][x] = x
        table[x][unit] = x

    def consistent(i: int, j: int, v: int) -> bool:
        # monotonicity against every already chosen comparable cell
        for b in range(n):
            w = table[b][j]
            if w is not None:
                if leq[i][b] and not leq[v][w]:
                    return False
                if leq[b][i] and not leq[w][v]:
                    return False
            w = table[i][b]
            if w is not None:
                if leq[j][b] and not leq[v][w]:
                    return False
                if leq[b][j] and not leq[w][v]:
                    return False
        return True

    def assoc_closed(i: int, j: int) -> bool:
        # associativity on triples whose products are all determined so far
        for k in range(n):
            for x, y, z in ((i, j, k), (i, k, j), (k, i, j)):
                xy = table[x][y]
                yz = table[y][z]
                if xy is None or yz is None:
                    continue
                left = table[xy][z]
                right = table[x][yz]
                if left is not None and right is not None and left != right:
                    return False
        return True

    def complete_ok() -> bool:
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        return False
                    if leq[a][b] and not leq[table[a][c]][table[b][c]]:
                        return False
        return True

    def search(pos: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if pos == len(cells):
            if complete_ok():
                yield tuple(tuple(row) for row in table)
            return
        i, j = cells[pos]
        for v in candidates[(i, j)]:
            if not consistent(i, j, v):
                continue
            table[i][j] = v
            table[j][i] = v
            if assoc_closed(i, j):
                yield from search(pos + 1)
            table[i][j] = None
            if i != j:
                table[j][i] = None

    yield from search(0)


def enumerate_pomonoids(max_size: int, size_cap: int = ENUMERATION_SIZE_CAP) -> Iterator[FinitePomonoid]:
    """Stream every integral commutative pomonoid of size <= max_size.

    Deterministic order: carrier size, then order matrix, then times table,
    all lexicographic.  One representative per isomorphism class; the dedup
    is exact at these sizes (canonical order matrix plus minimization of the
    table under order automorphisms).
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    if max_size > size_cap:
        raise ValueError(f"max_size {max_size} exceeds enumeration cap {size_cap}")
    for n in range(1, max_size + 1):
        names = tuple(f"e{i}" for i in range(n))
        for leq in _posets_with_top(n):
            unit = next(
                j for j in range(n) if all(leq[i][j] for i in range(n))
            )
            autos = [p for p in _order_automorphisms(leq) if p != tuple(range(n))]
            seen_tables = set()
            for times in _fill_times_tables(leq, unit):
                canon = tuple(v for row in times for v in row)
                for perm in autos:
                    inv = _inverse_perm(perm)
                    relabeled = tuple(
                        inv[times[perm[i]][perm[j]]] for i in range(n) for j in range(n)
                    )
                    if relabeled < canon:
                        canon = relabeled
                if canon in seen_tables:
                    continue
                seen_tables.add(canon)
                yield FinitePomonoid(names, unit, leq, times)


def _inverse_perm(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for pos, orig in enumerate(perm):
        inv[orig] = pos
    return tuple(inv)


# =====================================================================
# Downset completion
# =====================================================================


def downset_completion(
    p: FinitePomonoid,
) -> Tuple[FiniteResiduatedLattice, Tuple[int, ...]]:
    """Complete a finite pomonoid into a residuated lattice of downsets.

    Carrier: all downward closed subsets ordered by inclusion.  Product of
    two downsets collects everything below a pointwise product; the residuum
    is the largest downset whose product with the left argument stays inside
    the right one.  Returns the lattice and the embedding that sends each
    element to its principal downset; the embedding preserves products, the
    unit and the order in both directions.
    """
    n = p.size
    leq = p.leq_table
    downsets: List[frozenset] = []
    for bits in range(1 << n):
        s = frozenset(i for i in range(n) if bits >> i & 1)
        if all(leq[y][x] <= (y in s) for x in s for y in range(n)):
            downsets.append(s)
    downsets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    index = {s: i for i, s in enumerate(downsets)}
    m = len(downsets)

    def down_product(x: frozenset, y: frozenset) -> frozenset:
        prods = {p.times_table[a][b] for a in x for b in y}
        return frozenset(z for z in range(n) if any(leq[z][w] for w in prods))

    full = frozenset(range(n))
    unit_idx = index[full]
    bottom_idx = index[frozenset()]
    names = tuple(
        "{" + ",".join(p.element_names[i] for i in sorted(s)) + "}" for s in downsets
    )
    leq_table = [[downsets[a] <= downsets[b] for b in range(m)] for a in range(m)]
    times_table = [[index[down_product(downsets[a], downsets[b])] for b in range(m)] for a in range(m)]
    meet_table = [[index[downsets[a] & downsets[b]] for b in range(m)] for a in range(m)]
    join_table = [[index[downsets[a] | downsets[b]] for b in range(m)] for a in range(m)]

    residuum_table = []
    for a in range(m):
        row = []
        for b in range(m):
            x, y = downsets[a], downsets[b]
            members = frozenset(
                z for z in range(n) if down_product(x, frozenset((z,))) <= y
            )
            row.append(index[members])
        residuum_table.append(row)

    lattice = FiniteResiduatedLattice(
        names, unit_idx, leq_table, times_table, bottom_idx, meet_table, join_table, residuum_table
    )
    embedding = tuple(
        index[frozenset(x for x in range(n) if leq[x][a])] for a in range(n)
    )
    return lattice, embedding


# =====================================================================
# Built-in algebras and JSON serialization
# =====================================================================

BUILTIN_ALGEBRA_NAMES = ("product", "min", "lukasiewicz", "bool2")


def builtin_algebra(name: str) -> Algebra:
    """Algebra addressed by name: the three t-norms or the Boolean chain."""
    if name in UnitIntervalPomonoid.KINDS:
        return UnitIntervalPomonoid(name)
    if name == "bool2":
        return FinitePomonoid(
            ("0", "1"),
            unit=1,
            leq_table=((True, True), (False, True)),
            times_table=((0, 0), (0, 1)),
        )
    raise ValueError(
        f"unknown algebra name {name!r}; expected one of {', '.join(BUILTIN_ALGEBRA_NAMES)}"
    )


def algebra_to_json(algebra: FinitePomonoid) -> dict:
    """Plain-dict description of a finite algebra (names, not indices)."""
    names = algebra.element_names
    doc = {
        "elements": list(names),
        "unit": names[algebra.unit],
        "leq": [list(row) for row in algebra.leq_table],
        "times": [[names[v] for v in row] for row in algebra.times_table],
    }
    if isinstance(algebra, FiniteResiduatedLattice):
        doc["bottom"] = names[algebra.bottom]
        doc["meet"] = [[names[v] for v in row] for row in algebra.meet_table]
        doc["join"] = [[names[v] for v in row] for row in algebra.join_table]
        doc["residuum"] = [[names[v] for v in row] for row in algebra.residuum_table]
    return doc


def algebra_from_json(doc: Mapping) -> FinitePomonoid:
    """Parse and validate a finite algebra description."""
    try:
        names = [str(x) for x in doc["elements"]]
        pos = {name: i for i, name in enumerate(names)}
        if len(pos) != len(names):
            raise InvalidAlgebraError("duplicate element names")
        unit = pos[doc["unit"]]
        leq = [[bool(v) for v in row] for row in doc["leq"]]
        times = [[pos[str(v)] for v in row] for row in doc["times"]]
        if "residuum" in doc or "meet" in doc or "join" in doc or "bottom" in doc:
            algebra: FinitePomonoid = FiniteResiduatedLattice(
                names,
                unit,
                leq,
                times,
                pos[doc["bottom"]],
                [[pos[str(v)] for v in row] for row in doc["meet"]],
                [[pos[str(v)] for v in row] for row in doc["join"]],
                [[pos[str(v)] for v in row] for row in doc["residuum"]],
            )
        else:
            algebra = FinitePomonoid(names, unit, leq, times)
    except InvalidAlgebraError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidAlgebraError(f"malformed algebra description: {exc}") from exc
    problems = validate(algebra)
    if problems:
        raise InvalidAlgebraError(
            "algebra violates axioms: " + "; ".join(str(v) for v in problems[:5])
        )
    return algebra


def load_algebra(source: str) -> Algebra:
    """Resolve a builtin name or a JSON file path to an algebra."""
    if source in BUILTIN_ALGEBRA_NAMES:
        return builtin_algebra(source)
    with open(source, "r", encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))
