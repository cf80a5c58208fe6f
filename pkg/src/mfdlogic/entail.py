"""Entailment engine: prove, refute, or give up within budget.

Provability of ``A -> B`` is reachability in a rewrite graph on multisets:
a theory rule ``E -> F`` rewrites W into F X whenever W = E X.  The prover
runs breadth-first search from A looking for any multiset containing B and
reconstructs a checkable certificate from the path.  The refuter sweeps
evaluations over exhaustively enumerated finite pomonoids, smallest first,
until one models the theory but not the query.  ``decide`` interleaves the
two, taking the member fast path when the theory is non-contracting (there
the answer is definitive either way).

Both searches are budgeted; when neither side settles the verdict is
Unknown and carries the spent budgets.  Proofs found are always re-checked
and countermodels re-evaluated through the plain scalar semantics before
being reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import Evaluation, FinitePomonoid, enumerate_pomonoids, is_model, satisfies
from .formula import (
    AttributeMultiset,
    Mfd,
    Theory,
    divides,
    is_non_contracting_theory,
)
from .member import member
from .proofs import Hyp, ProofTree, check_proof, derive_pro, derive_ref, derive_rwt

__all__ = [
    "RewriteStep",
    "RewritePath",
    "Budgets",
    "BudgetReport",
    "Proved",
    "Refuted",
    "Unknown",
    "Verdict",
    "rewrite_successors",
    "bfs_prove",
    "certificate_from_path",
    "find_countermodel",
    "decide",
    "deduction_witness",
    "classical_entails",
]


@dataclass(frozen=True)
class RewriteStep:
    """One rewrite: rule E -> F applied with remainder X gives F X."""

    rule: Mfd
    remainder: AttributeMultiset
    result: AttributeMultiset


@dataclass(frozen=True)
class RewritePath:
    start: AttributeMultiset
    steps: Tuple[RewriteStep, ...]

    @property
    def end(self) -> AttributeMultiset:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class Budgets:
    """Search limits: BFS nodes, model evaluations, largest algebra tried."""

    bfs_nodes: int = 100_000
    model_evals: int = 1_000_000
    max_algebra_size: int = 5


@dataclass(frozen=True)
class BudgetReport:
    """What an inconclusive run spent and whether either space was finished."""

    bfs_nodes_used: int = 0
    bfs_exhausted: bool = False
    model_evals_used: int = 0
    algebras_scanned: int = 0
    models_exhausted: bool = False


@dataclass(frozen=True)
class Proved:
    query: Mfd
    path: RewritePath
    certificate: ProofTree


@dataclass(frozen=True)
class Refuted:
    query: Mfd
    method: str  # "countermodel" or "member-algorithm"
    algebra: Optional[FinitePomonoid] = None
    evaluation: Optional[Evaluation] = None


@dataclass(frozen=True)
class Unknown:
    query: Mfd
    report: BudgetReport


Verdict = Union[Proved, Refuted, Unknown]


# =====================================================================
# Rewriting and the BFS prover
# =====================================================================


def rewrite_successors(
    w: AttributeMultiset, theory: Theory
) -> List[RewriteStep]:
    """All one-step rewrites of w, in theory order."""
    out = []
    for f in theory.distinct_formulas():
        x = divides(f.antecedent, w)
        if x is not None:
            out.append(RewriteStep(f, x, f.consequent.union(x)))
    return out


def _walk_back(
    start: AttributeMultiset,
    end: tuple,
    parents: dict,
    names: Sequence[str],
) -> RewritePath:
    def unvec(state: tuple) -> AttributeMultiset:
        return AttributeMultiset({n: c for n, c in zip(names, state) if c})

    steps = []
    cur = end
    while parents[cur] is not None:
        prev, rule = parents[cur]
        remainder = divides(rule.antecedent, unvec(prev))
        steps.append(RewriteStep(rule, remainder, unvec(cur)))
        cur = prev
    steps.reverse()
    return RewritePath(start, tuple(steps))


def _bfs_engine(theory: Theory, query: Mfd, budget: int) -> Iterator[tuple]:
    """Layered BFS from the query antecedent.

    Yields ("layer", nodes) after each finished depth, then exactly one of
    ("proved", path), ("exhausted", nodes) or ("budget", nodes).

    States are count tuples over the fixed variable universe of the theory
    and query; rewriting cannot introduce attributes outside it.  Counts
    stay far below the multiset cap for any storable number of nodes.
    """
    start = query.antecedent
    goal = query.consequent
    rules = theory.distinct_formulas()
    if budget < 1:
        yield ("budget", 0)
        return
    names = sorted(set(theory.variables) | set(query.variables))
    index = {n: i for i, n in enumerate(names)}
    width = len(names)

    def vec(m: AttributeMultiset) -> tuple:
        row = [0] * width
        for n, c in m.items():
            row[index[n]] = c
        return tuple(row)

    start_v = vec(start)
    goal_v = vec(goal)
    compiled = []
    for f in rules:
        ant = vec(f.antecedent)
        con = vec(f.consequent)
        compiled.append((f, ant, tuple(c - a for a, c in zip(ant, con))))

    parents: dict = {start_v: None}
    nodes = 1
    if all(g <= w for g, w in zip(goal_v, start_v)):
        yield ("proved", _walk_back(start, start_v, parents, names))
        return
    frontier = [start_v]
    while frontier:
        next_frontier = []
        for w in frontier:
            for f, ant, delta in compiled:
                if any(a > c for a, c in zip(ant, w)):
                    continue
                nxt = tuple(c + d for c, d in zip(w, delta))
                if nxt in parents:
                    continue
                if nodes >= budget:
                    yield ("budget", nodes)
                    return
                parents[nxt] = (w, f)
                nodes += 1
                if all(g <= c for g, c in zip(goal_v, nxt)):
                    yield ("proved", _walk_back(start, nxt, parents, names))
                    return
                next_frontier.append(nxt)
        yield ("layer", nodes)
        frontier = next_frontier
    yield ("exhausted", nodes)


def certificate_from_path(query: Mfd, path: RewritePath) -> ProofTree:
    """Expand a rewrite path into an axiom/cut tree concluding the query.

    Start from A -> A, rewrite the consequent along each step using the
    fired rule as hypothesis, and finally project down to the query
    consequent.
    """
    tree = derive_ref(path.start)
    for step in path.steps:
        tree = derive_rwt(tree, Hyp(step.rule))
    return derive_pro(tree, query.consequent)


def bfs_prove(theory: Theory, query: Mfd, budget: int = 100_000) -> Verdict:
    """Search for a proof; Proved with certificate, else Unknown.

    Unknown covers both budget exhaustion and a fully explored finite
    rewrite graph (the report distinguishes them); this function never
    claims refutation.
    """
    for event in _bfs_engine(theory, query, budget):
        kind = event[0]
        if kind == "proved":
            path = event[1]
            cert = certificate_from_path(query, path)
            check_proof(cert, theory)
            return Proved(query, path, cert)
        if kind == "exhausted":
            return Unknown(query, BudgetReport(bfs_nodes_used=event[1], bfs_exhausted=True))
        if kind == "budget":
            return Unknown(query, BudgetReport(bfs_nodes_used=event[1]))
    raise AssertionError("search ended without a terminal event")


# =====================================================================
# Countermodel search
# =====================================================================


def _sweep_algebra(
    algebra: FinitePomonoid,
    formulas: Sequence[Mfd],
    query: Mfd,
    variables: Sequence[str],
    limit: int,
) -> Tuple[Optional[int], int]:
    """Vectorized scan of evaluations of one algebra, in lexicographic
    order of element indices (last variable fastest).  Returns the first
    refuting evaluation index (or None) and how many were swept."""
    times, leq = algebra.np_tables()
    s = algebra.size
    k = len(variables)
    total = s**k
    count = min(total, limit)
    if count <= 0:
        return None, 0
    idx = np.arange(count, dtype=np.int64)
    columns = {
        v: (idx // (s ** (k - 1 - pos))) % s for pos, v in enumerate(variables)
    }

    def degree(ms: AttributeMultiset) -> np.ndarray:
        acc = np.full(count, algebra.unit, dtype=np.int64)
        for name, mult in ms.items():
            col = columns[name]
            for _ in range(mult):
                acc = times[acc, col]
        return acc

    models = np.ones(count, dtype=bool)
    for f in formulas:
        models &= leq[degree(f.antecedent), degree(f.consequent)]
        if not models.any():
            return None, count
    refutes = models & ~leq[degree(query.antecedent), degree(query.consequent)]
    hits = np.nonzero(refutes)[0]
    if hits.size:
        return int(hits[0]), count
    return None, count


def _evaluation_from_index(
    algebra: FinitePomonoid, variables: Sequence[str], index: int
) -> Evaluation:
    s = algebra.size
    assignment = {}
    for pos, v in enumerate(variables):
        assignment[v] = (index // (s ** (len(variables) - 1 - pos))) % s
    return Evaluation(algebra, assignment)


def _countermodel_engine(
    theory: Theory, query: Mfd, max_size: int, budget: int
) -> Iterator[tuple]:
    """Scan enumerated pomonoids smallest-first for a refuting evaluation.

    Yields ("algebra", evals_used, algebras_scanned) after each swept
    algebra, then one of ("refuted", algebra, evaluation, evals, scanned),
    ("budget", evals, scanned) or ("exhausted", evals, scanned).
    """
    variables = sorted(set(theory.variables) | set(query.variables))
    formulas = theory.distinct_formulas()
    evals_used = 0
    scanned = 0
    for algebra in enumerate_pomonoids(max_size):
        remaining = budget - evals_used
        if remaining <= 0:
            yield ("budget", evals_used, scanned)
            return
        hit, swept = _sweep_algebra(algebra, formulas, query, variables, remaining)
        evals_used += swept
        scanned += 1
        if hit is not None:
            e = _evaluation_from_index(algebra, variables, hit)
            # independent scalar re-check of the witness
            if not (is_model(e, theory) and not satisfies(e, query)):
                raise AssertionError("countermodel failed independent validation")
            yield ("refuted", algebra, e, evals_used, scanned)
            return
        if swept < algebra.size ** len(variables):
            yield ("budget", evals_used, scanned)
            return
        yield ("algebra", evals_used, scanned)
    yield ("exhausted", evals_used, scanned)


def find_countermodel(
    theory: Theory,
    query: Mfd,
    max_size: int = 5,
    budget: int = 1_000_000,
) -> Optional[Tuple[FinitePomonoid, Evaluation]]:
    """First (algebra, evaluation) modeling the theory but not the query.

    Deterministic: algebras come in enumeration order, evaluations in
    lexicographic order, so the witness is reproducible.  None means the
    budget or the size cap ran out without a hit.
    """
    for event in _countermodel_engine(theory, query, max_size, budget):
        if event[0] == "refuted":
            return event[1], event[2]
        if event[0] in ("budget", "exhausted"):
            return None
    return None


# =====================================================================
# The combined decision procedure
# =====================================================================


def decide(theory: Theory, query: Mfd, budgets: Budgets = Budgets()) -> Verdict:
    """Prove or refute the query, or report Unknown with spent budgets.

    Non-contracting theories get the definitive fast path: the member
    procedure answers yes/no outright, and a yes is upgraded to a full
    certificate by BFS (re-running with a doubled node budget if needed;
    reachability is guaranteed).  Otherwise the prover and the refuter run
    interleaved, one BFS layer against one algebra sweep, first hit wins.
    """
    if is_non_contracting_theory(theory):
        if member(theory, query):
            budget = max(budgets.bfs_nodes, 1)
            for _ in range(7):
                verdict = bfs_prove(theory, query, budget)
                if isinstance(verdict, Proved):
                    return verdict
                budget *= 2
            raise RuntimeError(
                "provable query but certificate search exceeded escalated budgets"
            )
        return Refuted(query, "member-algorithm")

    prover = _bfs_engine(theory, query, budgets.bfs_nodes)
    refuter = _countermodel_engine(
        theory, query, budgets.max_algebra_size, budgets.model_evals
    )
    report = BudgetReport()
    prover_alive = True
    refuter_alive = True
    while prover_alive or refuter_alive:
        if prover_alive:
            event = next(prover)
            kind = event[0]
            if kind == "proved":
                path = event[1]
                cert = certificate_from_path(query, path)
                check_proof(cert, theory)
                return Proved(query, path, cert)
            if kind == "layer":
                report = replace(report, bfs_nodes_used=event[1])
            else:
                prover_alive = False
                report = replace(
                    report,
                    bfs_nodes_used=event[1],
                    bfs_exhausted=(kind == "exhausted"),
                )
        if refuter_alive:
            event = next(refuter)
            kind = event[0]
            if kind == "refuted":
                return Refuted(query, "countermodel", event[1], event[2])
            if kind == "algebra":
                report = replace(
                    report, model_evals_used=event[1], algebras_scanned=event[2]
                )
            else:
                refuter_alive = False
                report = replace(
                    report,
                    model_evals_used=event[1],
                    algebras_scanned=event[2],
                    models_exhausted=(kind == "exhausted"),
                )
    return Unknown(query, report)


def deduction_witness(
    theory: Theory,
    a: AttributeMultiset,
    b: AttributeMultiset,
    n_max: int,
    budgets: Budgets = Budgets(),
) -> Optional[int]:
    """Least n <= n_max with theory proving A^n -> B, if any.

    This is the local deduction property: adding the hypothesis
    ``1 -> A`` proves ``1 -> B`` exactly when some finite power of A
    already implies B.
    """
    for n in range(n_max + 1):
        verdict = decide(theory, Mfd(a.power(n), b), budgets)
        if isinstance(verdict, Proved):
            return n
    return None


def classical_entails(theory: Theory, query: Mfd) -> bool:
    """Classical functional-dependency entailment on attribute sets.

    Multiplicities collapse to supports and the answer is the textbook
    closure computation.
    """
    closure = set(query.antecedent.support)
    changed = True
    while changed:
        changed = False
        for f in theory.distinct_formulas():
            if set(f.antecedent.support) <= closure:
                extra = set(f.consequent.support) - closure
                if extra:
                    closure |= extra
                    changed = True
    return set(query.consequent.support) <= closure
