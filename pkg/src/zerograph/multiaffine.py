"""Exact multiaffine polynomials with Cyc8 coefficients."""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from .cyclotomic import Cyc8

__all__ = ["MultiAffinePoly", "SharedVariableError"]


class SharedVariableError(ValueError):
    """Product of two factors that both involve the same variable."""


class MultiAffinePoly:
    """Finite map from variable subsets to nonzero Cyc8 coefficients.

    ``universe`` is an ordered tuple of variable names; it fixes the order
    used for display and serialization. Equality ignores universe order.
    """

    __slots__ = ("universe", "terms")

    def __init__(self, universe: Iterable[str], terms: Mapping[frozenset, object] = ()):
        self.universe = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("duplicate variable in universe")
        uset = set(self.universe)
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = frozenset(mono)
            if not mono <= uset:
                raise ValueError(f"term {sorted(mono)} uses variables outside the universe")
            coeff = Cyc8.coerce(coeff)
            clean[mono] = clean[mono] + coeff if mono in clean else coeff
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, value=1, universe: Iterable[str] = ()) -> MultiAffinePoly:
        return cls(universe, {frozenset(): value})

    @classmethod
    def variable(cls, name: str) -> MultiAffinePoly:
        return cls((name,), {frozenset([name]): 1})

    def __repr__(self) -> str:
        return f"MultiAffinePoly({len(self.terms)} terms over {len(self.universe)} vars)"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            names = "*".join(v for v in self.universe if v in mono)
            out.append(f"({c})" + (f"*{names}" if names else ""))
        return " + ".join(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiAffinePoly):
            return NotImplemented
        return set(self.universe) == set(other.universe) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, variables: Iterable[str]) -> Cyc8:
        return self.terms.get(frozenset(variables), Cyc8())

    def variables(self) -> set[str]:
        """Variables that occur in at least one term."""
        out: set[str] = set()
        for mono in self.terms:
            out |= mono
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        pos = {v: i for i, v in enumerate(self.universe)}
        return sorted(
            self.terms.items(), key=lambda kv: (len(kv[0]), sorted(pos[v] for v in kv[0]))
        )

    def _merged_universe(self, other: MultiAffinePoly) -> tuple[str, ...]:
        seen = set(self.universe)
        return self.universe + tuple(v for v in other.universe if v not in seen)

    def __add__(self, other: MultiAffinePoly) -> MultiAffinePoly:
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms[mono] + c if mono in terms else c
        return MultiAffinePoly(self._merged_universe(other), terms)

    def __neg__(self) -> MultiAffinePoly:
        return MultiAffinePoly(self.universe, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: MultiAffinePoly) -> MultiAffinePoly:
        return self + (-other)

    def scale(self, c) -> MultiAffinePoly:
        c = Cyc8.coerce(c)
        return MultiAffinePoly(self.universe, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: MultiAffinePoly) -> MultiAffinePoly:
        return multiply(self, other)

    def relabel(self, universe: Iterable[str]) -> MultiAffinePoly:
        """Same terms over a reordered (or enlarged) universe."""
        return MultiAffinePoly(universe, self.terms)

    def to_dict(self) -> dict:
        pos = {v: i for i, v in enumerate(self.universe)}
        return {
            "vars": list(self.universe),
            "terms": [
                {"set": sorted(mono, key=pos.__getitem__), "coeff": c.to_dict()}
                for mono, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> MultiAffinePoly:
        if set(doc) != {"vars", "terms"}:
            raise ValueError("multiaffine JSON needs exactly keys vars, terms")
        terms = {}
        for t in doc["terms"]:
            mono = frozenset(t["set"])
            if len(mono) != len(t["set"]) or mono in terms:
                raise ValueError("repeated variable or repeated term in multiaffine JSON")
            terms[mono] = Cyc8.from_dict(t["coeff"])
        return cls(doc["vars"], terms)

    @classmethod
    def from_json(cls, text: str) -> MultiAffinePoly:
        return cls.from_dict(json.loads(text))


def multiply(p: MultiAffinePoly, q: MultiAffinePoly) -> MultiAffinePoly:
    """Product of two multiaffine polynomials in disjoint variables."""
    shared = p.variables() & q.variables()
    if shared:
        raise SharedVariableError(f"factors share variables {sorted(shared)}")
    terms = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            # disjoint supports make m1 | m2 unique per pair
            terms[m1 | m2] = c1 * c2
    return MultiAffinePoly(p._merged_universe(q), terms)


def asano_contract(p: MultiAffinePoly, pair: tuple[str, str], target: str) -> MultiAffinePoly:
    """Replace A + B*v1 + C*v2 + D*v1*v2 by A + D*target.

    ``target`` may reuse ``v1`` or ``v2`` but must not name any other
    variable of ``p``.
    """
    v1, v2 = pair
    if v1 == v2:
        raise ValueError("contraction needs two distinct variables")
    for v in (v1, v2):
        if v not in p.universe:
            raise ValueError(f"variable {v!r} is not in the universe")
    if target in p.universe and target not in pair:
        raise ValueError(f"target {target!r} already names another variable")
    both = frozenset((v1, v2))
    terms = {}
    for mono, c in p.terms.items():
        hit = mono & both
        if not hit:
            terms[mono] = c
        elif hit == both:
            terms[(mono - both) | {target}] = c
    universe = []
    for v in p.universe:
        if v == v1:
            universe.append(target)
        elif v != v2:
            universe.append(v)
    return MultiAffinePoly(universe, terms)


def specialize(p: MultiAffinePoly) -> list[Cyc8]:
    """Set every variable to z: coefficient of z**k sums the k-subset terms."""
    out: list[Cyc8] = []
    for mono, c in p.terms.items():
        k = len(mono)
        while len(out) <= k:
            out.append(Cyc8())
        out[k] = out[k] + c
    while out and not out[-1]:
        out.pop()
    return out
