"""The formal derivative attached to a substitution grammar.

A grammar here is a finite map sending each variable to a Laurent polynomial
(its substitution image).  The derivative ``D`` is the unique linear operator
on Laurent polynomials that satisfies the product rule and agrees with the
grammar on variables.  Variables carried by the grammar's ``inert`` set, and
any variable with no rule at all, behave as constants (``D(v) = 0``).

On a single term the derivative is computed directly from the product rule,

    D(c * prod v^e_v) = c * sum_v e_v * v^(e_v - 1) * rule(v) * prod_{u != v} u^e_u,

which also handles negative exponents: the ``e_v`` factor reproduces
``D(v^-1) = -v^-2 * D(v)`` without special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .laurent import LaurentPolynomial, check_variable_name

#: Iterated derivatives grow factorially; refuse absurd depths by default.
DEFAULT_DERIVE_LIMIT = 25

BUILTIN_GRAMMAR_NAMES = ("paper_G", "eulerian", "andre", "ramanujan", "exterior_peak")


@dataclass(frozen=True, eq=True)
class Grammar:
    """An immutable set of substitution rules, plus declared constants.

    ``var_order`` is an optional display hint (typically the declaration
    order); it never affects the derivative.
    """

    rules: Mapping[str, LaurentPolynomial]
    inert: frozenset[str] = frozenset()
    name: str | None = None
    var_order: tuple[str, ...] | None = None

    def __post_init__(self):
        for name in self.rules:
            check_variable_name(name)
        overlap = self.inert & set(self.rules)
        if overlap:
            raise ValueError(f"variables {sorted(overlap)} are both ruled and inert")
        known = set(self.rules) | self.inert
        for name, image in self.rules.items():
            stray = image.variables() - known
            if stray:
                raise ValueError(
                    f"rule for '{name}' uses undeclared variable "
                    f"'{sorted(stray)[0]}' (add a rule or declare it inert)"
                )

    def display_order(self) -> tuple[str, ...]:
        if self.var_order is not None:
            return self.var_order
        return tuple(sorted(set(self.rules) | self.inert))

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "rules": {
                name: self.rules[name].to_json_obj() for name in sorted(self.rules)
            },
            "inert": sorted(self.inert),
        }


@dataclass(frozen=True)
class DerivativeSequence:
    """``items[k]`` is the k-th derivative of ``start`` under ``grammar``."""

    start: LaurentPolynomial
    items: tuple[LaurentPolynomial, ...]
    grammar: Grammar

    def order(self) -> int:
        return len(self.items) - 1


def derive(p: LaurentPolynomial, g: Grammar) -> LaurentPolynomial:
    """Apply the formal derivative once, returning a canonical polynomial."""
    rules = g.rules
    result = LaurentPolynomial.zero()
    for mono, coeff in p.items():
        for i, (name, exp) in enumerate(mono):
            image = rules.get(name)
            if image is None:
                continue
            if exp == 1:
                rest = mono[:i] + mono[i + 1:]
            else:
                rest = mono[:i] + ((name, exp - 1),) + mono[i + 1:]
            partial = LaurentPolynomial({rest: coeff * exp})
            result = result + partial * image
    return result


def derive_n(
    p: LaurentPolynomial,
    g: Grammar,
    n: int,
    limit: int | None = None,
) -> DerivativeSequence:
    """Compute ``D^0(p) .. D^n(p)`` by iterated single derivatives."""
    cap = DEFAULT_DERIVE_LIMIT if limit is None else limit
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n > cap:
        raise ValueError(f"derivative order {n} exceeds the limit {cap}")
    items = [p]
    for _ in range(n):
        items.append(derive(items[-1], g))
    return DerivativeSequence(start=p, items=tuple(items), grammar=g)


def leibniz_check(
    u: LaurentPolynomial,
    v: LaurentPolynomial,
    g: Grammar,
    n: int,
) -> bool:
    """True iff D^n(uv) equals the binomial convolution of the factor derivatives."""
    direct = derive_n(u * v, g, n).items[n]
    du = derive_n(u, g, n).items
    dv = derive_n(v, g, n).items
    expanded = LaurentPolynomial.zero()
    for k in range(n + 1):
        expanded = expanded + math.comb(n, k) * (du[k] * dv[n - k])
    return direct == expanded


def _make_builtin(name: str, rule_exps: dict[str, dict[str, int]], order: tuple[str, ...]) -> Grammar:
    rules = {
        var: LaurentPolynomial.term(1, exps) for var, exps in rule_exps.items()
    }
    return Grammar(rules=rules, name=name, var_order=order)


_BUILTINS: dict[str, Grammar] = {
    # The four-variable grammar whose iterated derivatives of z and y carry
    # the joint distributions of (exterior peaks, proper double descents) and
    # (peaks, double descents) over permutations.
    "paper_G": _make_builtin(
        "paper_G",
        {
            "x": {"x": 1, "y": 1},
            "y": {"x": 1, "z": 1},
            "z": {"z": 1, "w": 1},
            "w": {"x": 1, "z": 1},
        },
        ("x", "y", "z", "w"),
    ),
    # Generates the Eulerian polynomials.
    "eulerian": _make_builtin(
        "eulerian",
        {"x": {"x": 1, "y": 1}, "y": {"x": 1, "y": 1}},
        ("x", "y"),
    ),
    # Generates the Andre polynomials.
    "andre": _make_builtin(
        "andre",
        {"x": {"x": 1, "y": 1}, "y": {"x": 1}},
        ("x", "y"),
    ),
    # Generates the Ramanujan polynomials.
    "ramanujan": _make_builtin(
        "ramanujan",
        {"x": {"x": 3, "y": 1}, "y": {"x": 1, "y": 2}},
        ("x", "y"),
    ),
    # Two-variable grammar counting exterior peaks alone.
    "exterior_peak": _make_builtin(
        "exterior_peak",
        {"x": {"x": 1, "y": 1}, "y": {"x": 2}},
        ("x", "y"),
    ),
}


def builtin_grammar(name: str) -> Grammar:
    """Look up one of the built-in grammars by name."""
    try:
        return _BUILTINS[name]
    except KeyError:
        known = ", ".join(BUILTIN_GRAMMAR_NAMES)
        raise ValueError(f"unknown grammar '{name}' (choose from: {known})") from None
