"""Proof trees over the two-rule calculus for graded dependencies.

The calculus has one axiom scheme and one inference rule:

* axiom: ``A B -> B`` for any multisets A and B (more evidence implies less),
* cut: from ``A -> B`` and ``B C -> D`` conclude ``A C -> D``.

Everything else (transitivity, augmentation, reflexivity, rewriting of a
part of the consequent, projection, weak additivity) arises by composing
these two, and the constructors below build exactly those compositions, so
every tree they return bottoms out in hypotheses, axiom instances and cuts.

Cut nodes store their conclusion; :func:`check_proof` re-derives every
conclusion and refuses trees whose stored formulas do not match, whose cuts
do not divide, or whose hypotheses are not in the ambient theory.
Certificates serialize as s-expressions with formulas in the theory grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple, Union

from .formula import (
    TOP,
    AttributeMultiset,
    Mfd,
    Theory,
    divides,
    format_mfd,
    format_multiset,
    parse_mfd,
    parse_multiset,
)

__all__ = [
    "ProofError",
    "ProofParseError",
    "Hyp",
    "AxInstance",
    "Cut",
    "ProofTree",
    "check_proof",
    "derive_ref",
    "derive_tra",
    "derive_aug",
    "derive_rwt",
    "derive_pro",
    "derive_weak_additivity",
    "format_proof",
    "parse_proof",
]


class ProofError(ValueError):
    """A proof tree failed verification."""


class ProofParseError(ValueError):
    """Malformed certificate text."""


@dataclass(frozen=True)
class Hyp:
    """Appeal to a theory formula."""

    formula: Mfd

    @property
    def conclusion(self) -> Mfd:
        return self.formula


@dataclass(frozen=True)
class AxInstance:
    """The axiom A B -> B, stored as the pair (A, B)."""

    left: AttributeMultiset
    right: AttributeMultiset

    @property
    def conclusion(self) -> Mfd:
        return Mfd(self.left.union(self.right), self.right)


@dataclass(frozen=True)
class Cut:
    """A cut of two subproofs; the conclusion is stored and re-verified."""

    left: "ProofTree"
    right: "ProofTree"
    conclusion: Mfd


ProofTree = Union[Hyp, AxInstance, Cut]


def check_proof(tree: ProofTree, theory: Theory) -> Mfd:
    """Verify a tree bottom-up and return its conclusion.

    Raises :class:`ProofError` when a hypothesis is not a theory formula,
    when the premises of a cut do not compose, or when a stored conclusion
    disagrees with the one the rule actually yields.
    """
    if isinstance(tree, Hyp):
        if tree.formula not in theory.formulas:
            raise ProofError(f"hypothesis not in theory: {format_mfd(tree.formula)}")
        return tree.formula
    if isinstance(tree, AxInstance):
        return tree.conclusion
    if isinstance(tree, Cut):
        left = check_proof(tree.left, theory)
        right = check_proof(tree.right, theory)
        c = divides(left.consequent, right.antecedent)
        if c is None:
            raise ProofError(
                "cut premises do not compose: "
                f"{format_mfd(left)} with {format_mfd(right)}"
            )
        expected = Mfd(left.antecedent.union(c), right.consequent)
        if expected != tree.conclusion:
            raise ProofError(
                f"cut conclusion mismatch: stored {format_mfd(tree.conclusion)}, "
                f"derived {format_mfd(expected)}"
            )
        return tree.conclusion
    raise ProofError(f"not a proof node: {tree!r}")


# =====================================================================
# Derived rules, expanded into axiom instances and cuts
# =====================================================================


def derive_ref(a: AttributeMultiset) -> ProofTree:
    """A -> A, an axiom instance with empty left part."""
    return AxInstance(TOP, a)


def derive_tra(p1: ProofTree, p2: ProofTree) -> ProofTree:
    """From A -> B and B -> C conclude A -> C (cut with empty remainder)."""
    f1, f2 = p1.conclusion, p2.conclusion
    if f1.consequent != f2.antecedent:
        raise ProofError(
            f"transitivity mismatch: {format_mfd(f1)} then {format_mfd(f2)}"
        )
    return Cut(p1, p2, Mfd(f1.antecedent, f2.consequent))


def derive_aug(p1: ProofTree, c: AttributeMultiset) -> ProofTree:
    """From A -> B conclude A C -> B C."""
    f1 = p1.conclusion
    bc = f1.consequent.union(c)
    return Cut(p1, AxInstance(TOP, bc), Mfd(f1.antecedent.union(c), bc))


def derive_rwt(p1: ProofTree, p2: ProofTree) -> ProofTree:
    """Rewrite inside a consequent: from A -> B C and C -> D get A -> B D.

    The part C is the antecedent of the second premise and must divide the
    first premise's consequent.
    """
    f1, f2 = p1.conclusion, p2.conclusion
    b = divides(f2.antecedent, f1.consequent)
    if b is None:
        raise ProofError(
            f"rewrite part {format_multiset(f2.antecedent)} does not divide "
            f"consequent {format_multiset(f1.consequent)}"
        )
    return derive_tra(p1, derive_aug(p2, b))


def derive_pro(p1: ProofTree, b: AttributeMultiset) -> ProofTree:
    """Project a consequent: from A -> B C conclude A -> B."""
    f1 = p1.conclusion
    c = divides(b, f1.consequent)
    if c is None:
        raise ProofError(
            f"projection target {format_multiset(b)} does not divide "
            f"consequent {format_multiset(f1.consequent)}"
        )
    return derive_tra(p1, AxInstance(c, b))


def derive_weak_additivity(p1: ProofTree, p2: ProofTree) -> ProofTree:
    """From A -> B and A -> C conclude A A -> B C.

    Additivity with a single A on the left fails in general; doubling the
    antecedent is what the calculus actually grants.
    """
    f1, f2 = p1.conclusion, p2.conclusion
    if f1.antecedent != f2.antecedent:
        raise ProofError(
            f"antecedents differ: {format_mfd(f1)} and {format_mfd(f2)}"
        )
    a, b, c = f1.antecedent, f1.consequent, f2.consequent
    bc = b.union(c)
    inner = Cut(p1, AxInstance(TOP, bc), Mfd(a.union(c), bc))
    return Cut(p2, inner, Mfd(a.union(a), bc))


# =====================================================================
# Certificate text: s-expressions
# =====================================================================
#
#   proof := (hyp "<mfd>") | (ax "<multiset>" "<multiset>")
#          | (cut <proof> <proof> "<mfd>")
#
# Formulas and multisets use the theory grammar; the empty multiset prints
# as "1".


def format_proof(tree: ProofTree) -> str:
    if isinstance(tree, Hyp):
        return f'(hyp "{format_mfd(tree.formula)}")'
    if isinstance(tree, AxInstance):
        return f'(ax "{format_multiset(tree.left)}" "{format_multiset(tree.right)}")'
    if isinstance(tree, Cut):
        return (
            f"(cut {format_proof(tree.left)} {format_proof(tree.right)} "
            f'"{format_mfd(tree.conclusion)}")'
        )
    raise ProofError(f"not a proof node: {tree!r}")


_TOKEN_RE = re.compile(r'\(|\)|"[^"]*"|[a-z]+')


def _tokenize(text: str):
    pos = 0
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        between = text[pos : match.start()]
        if between.strip():
            raise ProofParseError(f"unexpected characters {between.strip()!r}")
        tokens.append(match.group())
        pos = match.end()
    if text[pos:].strip():
        raise ProofParseError(f"unexpected trailing characters {text[pos:].strip()!r}")
    return tokens


def parse_proof(text: str) -> ProofTree:
    """Parse an s-expression certificate."""
    tokens = _tokenize(text)
    pos = 0

    def expect(tok: str):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise ProofParseError(f"expected {tok!r}, got {got}")
        pos += 1

    def string() -> str:
        nonlocal pos
        if pos >= len(tokens) or not tokens[pos].startswith('"'):
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise ProofParseError(f"expected quoted string, got {got}")
        raw = tokens[pos][1:-1]
        pos += 1
        return raw

    def node() -> ProofTree:
        nonlocal pos
        expect("(")
        if pos >= len(tokens):
            raise ProofParseError("unexpected end of input")
        head = tokens[pos]
        pos += 1
        if head == "hyp":
            tree: ProofTree = Hyp(parse_mfd(string()))
        elif head == "ax":
            tree = AxInstance(parse_multiset(string()), parse_multiset(string()))
        elif head == "cut":
            left = node()
            right = node()
            tree = Cut(left, right, parse_mfd(string()))
        else:
            raise ProofParseError(f"unknown proof node kind {head!r}")
        expect(")")
        return tree

    tree = node()
    if pos != len(tokens):
        raise ProofParseError(f"unexpected trailing tokens {tokens[pos:]!r}")
    return tree
