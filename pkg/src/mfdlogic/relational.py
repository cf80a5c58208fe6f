"""Ranked relations: dependency semantics over similarity-scored data.

A ranked relation is an ordinary table together with, per attribute, a
reflexive similarity map into the degree algebra.  A dependency
``A -> B`` holds in the relation when for every ordered pair of rows the
aggregated antecedent similarity stays below the aggregated consequent
similarity; aggregation is the algebra product over the multiset, so
repeated attributes damp the antecedent and weaken the claim.

Only reflexivity is ever required of a similarity; symmetry or any
transitivity-like law plays no role in the semantics.  Degrees live in any
pomonoid, typically a t-norm on [0, 1].

The two bridges to evaluation semantics are here as well: an evaluation
becomes a two-row relation with the same satisfaction behaviour, and a
relation decomposes into one evaluation per ordered pair of rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    Algebra,
    Evaluation,
    FinitePomonoid,
    UnitIntervalPomonoid,
    algebra_from_json,
    builtin_algebra,
    elem_power,
)
from .formula import AttributeMultiset, Mfd, Theory

__all__ = [
    "SchemeMismatchError",
    "InvalidRelationError",
    "SimilaritySpace",
    "RankedRelation",
    "RelationViolation",
    "tuple_similarity",
    "satisfies_relation",
    "relation_models",
    "evaluation_to_relation",
    "relation_to_evaluations",
    "builtin_similarity",
    "relation_from_json",
    "load_relation",
]

SimilarityFn = Callable[[object, object], object]


class SchemeMismatchError(ValueError):
    """A formula or similarity spec mentions attributes outside the scheme."""


class InvalidRelationError(ValueError):
    """Malformed relation description."""


@dataclass
class SimilaritySpace:
    """Per-attribute similarity maps into a shared degree algebra.

    ``domains`` is optional shape metadata ("scalar", "vector2", ...,
    "token") used when loading tuples from files.
    """

    algebra: Algebra
    functions: Dict[str, SimilarityFn]
    domains: Dict[str, str] = None

    def __post_init__(self):
        if self.domains is None:
            self.domains = {}

    def degree(self, attr: str, a, b):
        try:
            fn = self.functions[attr]
        except KeyError:
            raise SchemeMismatchError(f"no similarity for attribute {attr!r}") from None
        return fn(a, b)


@dataclass
class RankedRelation:
    """Rows over a scheme plus a similarity space covering that scheme."""

    scheme: Tuple[str, ...]
    tuples: Tuple[Tuple, ...]
    similarity: SimilaritySpace

    def __post_init__(self):
        self.scheme = tuple(self.scheme)
        self.tuples = tuple(tuple(row) for row in self.tuples)
        for row in self.tuples:
            if len(row) != len(self.scheme):
                raise InvalidRelationError(
                    f"row {row!r} has {len(row)} values for {len(self.scheme)} attributes"
                )
        missing = [a for a in self.scheme if a not in self.similarity.functions]
        if missing:
            raise SchemeMismatchError(f"no similarity for attributes: {', '.join(missing)}")

    def __len__(self) -> int:
        return len(self.tuples)

    def value(self, i: int, attr: str):
        return self.tuples[i][self.scheme.index(attr)]


@dataclass(frozen=True)
class RelationViolation:
    """An ordered pair of rows where the dependency fails, with degrees."""

    formula: Mfd
    i: int
    j: int
    antecedent_degree: object
    consequent_degree: object


def _check_attrs(rel: RankedRelation, f: Mfd) -> None:
    outside = (set(f.antecedent.support) | set(f.consequent.support)) - set(rel.scheme)
    if outside:
        raise SchemeMismatchError(
            f"formula mentions attributes outside the scheme: {', '.join(sorted(outside))}"
        )


def tuple_similarity(rel: RankedRelation, i: int, j: int, m: AttributeMultiset):
    """Aggregated similarity of rows i and j over a multiset of attributes.

    The product of per-attribute similarities, each raised to its
    multiplicity; the empty multiset gives the unit.
    """
    algebra = rel.similarity.algebra
    acc = algebra.unit
    for attr, mult in m.items():
        if attr not in rel.scheme:
            raise SchemeMismatchError(f"attribute {attr!r} not in scheme")
        d = rel.similarity.degree(attr, rel.value(i, attr), rel.value(j, attr))
        acc = algebra.times(acc, elem_power(algebra, d, mult))
    return acc


def satisfies_relation(
    rel: RankedRelation, f: Mfd
) -> Tuple[bool, Optional[RelationViolation]]:
    """Check a dependency over all ordered row pairs, diagonal included.

    Returns (True, None) or (False, first violation in row-major order)
    with both aggregated degrees.
    """
    _check_attrs(rel, f)
    algebra = rel.similarity.algebra
    n = len(rel.tuples)
    for i in range(n):
        for j in range(n):
            da = tuple_similarity(rel, i, j, f.antecedent)
            db = tuple_similarity(rel, i, j, f.consequent)
            if not algebra.leq_holds(da, db):
                return False, RelationViolation(f, i, j, da, db)
    return True, None


def relation_models(
    rel: RankedRelation, theory: Theory
) -> Tuple[bool, Optional[RelationViolation]]:
    """Check every theory formula; returns the first violation if any."""
    for f in theory.distinct_formulas():
        ok, violation = satisfies_relation(rel, f)
        if not ok:
            return False, violation
    return True, None


# =====================================================================
# Bridges between evaluations and relations
# =====================================================================


def evaluation_to_relation(e: Evaluation) -> RankedRelation:
    """A two-row relation that satisfies exactly what the evaluation does.

    Row one holds the unit everywhere, row two the assigned degrees; the
    similarity of the two values of an attribute is the assigned degree
    itself, and reflexivity gives the unit.
    """
    algebra = e.algebra
    scheme = tuple(sorted(e.assignment))
    unit = algebra.unit

    def make_fn(degree):
        def fn(a, b):
            if a == b:
                return unit
            return degree

        return fn

    functions = {p: make_fn(e.assignment[p]) for p in scheme}
    rows = (
        tuple(unit for _ in scheme),
        tuple(e.assignment[p] for p in scheme),
    )
    return RankedRelation(scheme, rows, SimilaritySpace(algebra, functions))


def relation_to_evaluations(rel: RankedRelation) -> List[Evaluation]:
    """One evaluation per ordered pair of rows (row-major order).

    The evaluation of an attribute is the similarity of the two row values,
    so a dependency holds in the relation iff it holds in every returned
    evaluation.
    """
    algebra = rel.similarity.algebra
    out = []
    for i in range(len(rel.tuples)):
        for j in range(len(rel.tuples)):
            assignment = {
                attr: rel.similarity.degree(attr, rel.value(i, attr), rel.value(j, attr))
                for attr in rel.scheme
            }
            out.append(Evaluation(algebra, assignment))
    return out


# =====================================================================
# Built-in similarity kinds and the relation file format
# =====================================================================


def builtin_similarity(kind: str, algebra: Algebra, params: Mapping) -> SimilarityFn:
    """Construct one of the stock similarity functions.

    * ``exp_euclidean`` with constant c: exp(-10^-c * distance), where the
      distance is |a-b| on scalars and Euclidean on equal-length vectors;
      degrees land in (0, 1] and suit the unit-interval algebras.
    * ``equality``: the unit on equal values, the designated ``bottom``
      element otherwise.
    * ``table``: an explicit matrix over listed ``labels``; the diagonal
      must be the unit (reflexivity is checked eagerly).
    """
    if kind == "exp_euclidean":
        if not isinstance(algebra, UnitIntervalPomonoid):
            raise InvalidRelationError("exp_euclidean needs a unit-interval algebra")
        c = params["c"]
        scale = 10.0 ** (-float(c))

        def exp_fn(a, b):
            if isinstance(a, (int, float)) and isinstance(b, (int, float)):
                dist = abs(a - b)
            else:
                if len(a) != len(b):
                    raise ValueError(f"vector length mismatch: {a!r} vs {b!r}")
                dist = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
            return math.exp(-scale * dist)

        return exp_fn

    if kind == "equality":
        unit = algebra.unit
        bottom = params["bottom"]
        if isinstance(algebra, FinitePomonoid) and isinstance(bottom, str):
            bottom = algebra.index_of(bottom)

        def eq_fn(a, b):
            return unit if a == b else bottom

        return eq_fn

    if kind == "table":
        labels = list(params["labels"])
        values = params["values"]
        pos = {v: i for i, v in enumerate(labels)}
        if len(pos) != len(labels):
            raise InvalidRelationError("table labels must be distinct")
        if len(values) != len(labels) or any(len(row) != len(labels) for row in values):
            raise InvalidRelationError("table values must be square over the labels")
        grid = []
        for row in values:
            if isinstance(algebra, FinitePomonoid):
                grid.append([algebra.index_of(str(v)) for v in row])
            else:
                grid.append([float(v) for v in row])
        for i in range(len(labels)):
            if grid[i][i] != algebra.unit:
                raise InvalidRelationError(
                    f"similarity table not reflexive at label {labels[i]!r}"
                )

        def table_fn(a, b):
            try:
                return grid[pos[a]][pos[b]]
            except KeyError:
                missing = a if a not in pos else b
                raise ValueError(f"value {missing!r} not covered by similarity table") from None

        return table_fn

    raise InvalidRelationError(f"unknown similarity kind {kind!r}")


_DOMAIN_KINDS = ("scalar", "token")


def _coerce_value(value, domain: Optional[str], attr: str):
    if domain is None:
        return tuple(value) if isinstance(value, list) else value
    if domain == "scalar":
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InvalidRelationError(f"attribute {attr!r} expects a scalar, got {value!r}")
        return value
    if domain == "token":
        if not isinstance(value, str):
            raise InvalidRelationError(f"attribute {attr!r} expects a token, got {value!r}")
        return value
    if domain.startswith("vector"):
        try:
            width = int(domain[len("vector") :])
        except ValueError:
            raise InvalidRelationError(f"unknown domain {domain!r}") from None
        if (
            not isinstance(value, (list, tuple))
            or len(value) != width
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
        ):
            raise InvalidRelationError(
                f"attribute {attr!r} expects a {width}-vector, got {value!r}"
            )
        return tuple(value)
    raise InvalidRelationError(f"unknown domain {domain!r}")


def relation_from_json(doc: Mapping) -> RankedRelation:
    """Build a ranked relation from its dict description.

    Shape: {"algebra": name-or-inline, "scheme": [...], "domains": {...},
    "similarity": {attr: {"kind": ..., ...}}, "tuples": [[...], ...]}.
    """
    try:
        algebra_spec = doc["algebra"]
        scheme = [str(a) for a in doc["scheme"]]
        similarity_spec = doc["similarity"]
        rows = doc["tuples"]
    except (KeyError, TypeError) as exc:
        raise InvalidRelationError(f"malformed relation description: {exc}") from exc

    if isinstance(algebra_spec, str):
        algebra = builtin_algebra(algebra_spec)
    else:
        algebra = algebra_from_json(algebra_spec)

    domains = {str(k): str(v) for k, v in doc.get("domains", {}).items()}
    functions = {}
    for attr in scheme:
        spec = similarity_spec.get(attr)
        if spec is None:
            raise SchemeMismatchError(f"no similarity for attribute {attr!r}")
        params = {k: v for k, v in spec.items() if k != "kind"}
        functions[attr] = builtin_similarity(spec["kind"], algebra, params)

    tuples = []
    for row in rows:
        if len(row) != len(scheme):
            raise InvalidRelationError(
                f"row {row!r} has {len(row)} values for {len(scheme)} attributes"
            )
        coerced = []
        for attr, value in zip(scheme, row):
            coerced.append(_coerce_value(value, domains.get(attr), attr))
        tuples.append(tuple(coerced))

    space = SimilaritySpace(algebra, functions, domains)
    return RankedRelation(tuple(scheme), tuple(tuples), space)


def load_relation(path: str) -> RankedRelation:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidRelationError(f"invalid JSON in {path}: {exc}") from exc
    return relation_from_json(doc)
