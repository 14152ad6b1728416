"""Truncated series arithmetic over an exact coefficient ring.

A ``TruncatedSeries`` holds the coefficients of ``t^0 .. t^order`` of a formal
power series in ``t``.  Coefficients live in a pluggable exact ring, either
the rationals or Laurent polynomials; the ring supplies ``zero``, ``one`` and
``invert``, everything else goes through the elements' own operators.  There
is no floating point anywhere.

``gen_series(p, g, order)`` is the exponential generating series of the
iterated derivatives of ``p`` under the grammar ``g``: its n-th coefficient is
the polynomial ``D^n(p) / n!``.  The named closed forms in ``closed_form``
produce the same kind of data as exact rational series, evaluated at a point
where every square root in the formula is itself rational (an "admissible"
point, supplied together with that root).  Closed forms are assembled purely
from exponentials of linear terms, sums, products and series inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from .grammar import Grammar, derive_n
from .laurent import LaurentPolynomial


class InadmissiblePointError(ValueError):
    """A closed form was asked for at a point it cannot be evaluated at."""


@dataclass(frozen=True)
class Ring:
    """The minimal contract a coefficient ring must provide."""

    name: str
    zero: object
    one: object
    invert: Callable[[object], object]


RATIONALS = Ring(
    name="rationals",
    zero=Fraction(0),
    one=Fraction(1),
    invert=lambda c: Fraction(1) / c,
)

LAURENT = Ring(
    name="laurent",
    zero=LaurentPolynomial.zero(),
    one=LaurentPolynomial.one(),
    invert=lambda p: p ** -1,
)


class TruncatedSeries:
    """Coefficients of t^0 .. t^order; arithmetic never looks past order."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence):
        self.ring = ring
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the t^0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int, ring: Ring = RATIONALS) -> "TruncatedSeries":
        return cls(ring, [value] + [ring.zero] * order)

    # -- arithmetic ----------------------------------------------------------

    def _match(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"series orders differ ({self.order} vs {other.order}); "
                "truncate one of them first"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + other
            return TruncatedSeries(self.ring, coeffs)
        self._match(other)
        return TruncatedSeries(
            self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] - other
            return TruncatedSeries(self.ring, coeffs)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.ring, [a * other for a in self.coeffs])
        self._match(other)
        n = self.order
        zero = self.ring.zero
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b == zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """The reciprocal series; the constant term must be invertible."""
        try:
            head = self.ring.invert(self.coeffs[0])
        except ZeroDivisionError:
            raise ValueError(
                "series constant term vanishes; reciprocal does not exist"
            ) from None
        out = [head]
        for n in range(1, self.order + 1):
            acc = self.ring.zero
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-(head * acc))
        return TruncatedSeries(self.ring, out)

    def derivative(self) -> "TruncatedSeries":
        """d/dt, one order lower."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        return TruncatedSeries(
            self.ring, [(n + 1) * self.coeffs[n + 1] for n in range(self.order)]
        )

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.ring, self.coeffs[: order + 1])

    def egf_coefficients(self) -> list:
        """The underlying EGF data: n! times the n-th coefficient."""
        return [factorial(n) * c for n, c in enumerate(self.coeffs)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries([{shown}{tail}], order={self.order})"


def exp_series(alpha, order: int, ring: Ring = RATIONALS) -> TruncatedSeries:
    """exp(alpha * t) truncated: the n-th coefficient is alpha^n / n!."""
    coeffs = [ring.one]
    power = ring.one
    for n in range(1, order + 1):
        power = power * alpha
        coeffs.append(power * Fraction(1, factorial(n)))
    return TruncatedSeries(ring, coeffs)


def gen_series(p: LaurentPolynomial, g: Grammar, order: int) -> TruncatedSeries:
    """The generating series of p under g, with polynomial coefficients."""
    items = derive_n(p, g, order).items
    return TruncatedSeries(
        LAURENT, [items[n] * Fraction(1, factorial(n)) for n in range(order + 1)]
    )


@dataclass(frozen=True)
class EvalPoint:
    """A rational assignment, plus the exact square root a closed form needs."""

    assignment: Mapping[str, Fraction]
    discriminant_root: Fraction | None = None

    def __post_init__(self):
        normalized = {name: Fraction(v) for name, v in self.assignment.items()}
        object.__setattr__(self, "assignment", normalized)
        if self.discriminant_root is not None:
            object.__setattr__(
                self, "discriminant_root", Fraction(self.discriminant_root)
            )

    def value(self, name: str) -> Fraction:
        try:
            return self.assignment[name]
        except KeyError:
            raise InadmissiblePointError(
                f"point is missing an assignment for '{name}'"
            ) from None

    def root_for(self, discriminant: Fraction, description: str) -> Fraction:
        """The stored root, checked exactly against the needed discriminant."""
        s = self.discriminant_root
        if s is None:
            raise InadmissiblePointError(
                f"closed form needs a rational square root of {description}"
            )
        if s * s != discriminant:
            raise InadmissiblePointError(
                f"root {s} squared is {s * s}, but {description} = {discriminant}"
            )
        return s


CLOSED_FORMS = (
    "gen_z",
    "gen_y",
    "gessel_T",
    "elizalde_noy_U",
    "no_pdd_U0",
    "carlitz_F",
)


def _invert_denominator(denom: TruncatedSeries) -> TruncatedSeries:
    try:
        return denom.inverse()
    except ValueError:
        raise InadmissiblePointError(
            "denominator constant term vanishes at this point"
        ) from None


def closed_form(
    which: str,
    point: EvalPoint | None,
    order: int,
) -> TruncatedSeries:
    """A named closed-form EGF as an exact rational truncated series.

    ``gen_z`` and ``gen_y`` are the generating series of the derivatives of z
    and y under the four-variable grammar; ``carlitz_F`` the peak/valley
    quadruple series; ``gessel_T`` the exterior-peak count series in x;
    ``elizalde_noy_U`` the proper-double-descent count series in y;
    ``no_pdd_U0`` the reciprocal series counting permutations with no proper
    double descent (it needs no point).
    """
    if which == "no_pdd_U0":
        coeffs = []
        for n in range(order + 1):
            if n % 3 == 0:
                coeffs.append(Fraction(1, factorial(n)))
            elif n % 3 == 1:
                coeffs.append(Fraction(-1, factorial(n)))
            else:
                coeffs.append(Fraction(0))
        return TruncatedSeries(RATIONALS, coeffs).inverse()

    if which not in CLOSED_FORMS:
        raise ValueError(f"unknown closed form {which!r} (choose from {CLOSED_FORMS})")
    if point is None:
        raise InadmissiblePointError(f"closed form '{which}' needs an evaluation point")

    if which in ("gen_z", "gen_y", "carlitz_F"):
        x, y = point.value("x"), point.value("y")
        z, w = point.value("z"), point.value("w")
        delta = (w + y) ** 2 - 4 * x * z
        s = point.root_for(delta, "(w+y)^2 - 4xz")
        if which == "carlitz_F":
            u = (y + w + s) / 2
            v = (y + w - s) / 2
            exp_u = exp_series(u, order)
            exp_v = exp_series(v, order)
            return (exp_v - exp_u) * _invert_denominator(exp_u * v - exp_v * u)
        exp_s = exp_series(s, order)
        denom = TruncatedSeries.constant(w + y + s, order) - exp_s * (w + y - s)
        inv = _invert_denominator(denom)
        if which == "gen_z":
            return exp_series((w - y + s) / 2, order) * inv * (2 * z * s)
        return (exp_s - 1) * (2 * x * z) * inv + TruncatedSeries.constant(y, order)

    if which == "gessel_T":
        x = point.value("x")
        r = point.root_for(1 - x, "1 - x")
        denom = exp_series(r, order) * (r - 1) + exp_series(-r, order) * (r + 1)
        return _invert_denominator(denom) * (2 * r)

    # elizalde_noy_U
    y = point.value("y")
    q = point.root_for((y - 1) * (y + 3), "(y-1)(y+3)")
    num = exp_series((1 - y + q) / 2, order) * (2 * q)
    denom = TruncatedSeries.constant(1 + y + q, order) - exp_series(q, order) * (1 + y - q)
    return num * _invert_denominator(denom)
