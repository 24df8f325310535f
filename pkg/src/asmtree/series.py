"""Truncated formal power series over exact rationals, plus the generating
functions whose coefficients must reproduce the counting formulas.

A PowerSeries holds coefficients 0..order as Fractions; nothing is ever
rounded. Binary operations truncate to the shorter operand, and equality
compares coefficientwise up to the shared order, which is the natural
notion for truncated series (and the reason instances are unhashable).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from . import formulas

Scalar = Union[int, Fraction]


class PowerSeries:
    """A formal power series known exactly up to x**order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]) -> None:
        self._coeffs = tuple(Fraction(c) for c in coeffs)
        if not self._coeffs:
            raise ValueError("a series needs at least its constant term")

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0] * (order + 1))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "PowerSeries":
        return cls([value] + [0] * order)

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        """The identity series x, truncated at the given order."""
        if order < 1:
            raise ValueError("order must be at least 1 to represent x")
        return cls([0, 1] + [0] * (order - 1))

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        """The coefficient of x**k; k must be within the truncation."""
        if not 0 <= k <= self.order:
            raise ValueError(f"coefficient {k} outside truncation order {self.order}")
        return self._coeffs[k]

    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def truncate(self, order: int) -> "PowerSeries":
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} series to {order}")
        return PowerSeries(self._coeffs[: order + 1])

    def _coerce(self, other: object) -> "PowerSeries | None":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        return None

    def __add__(self, other: object) -> "PowerSeries":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        n = min(self.order, rhs.order)
        return PowerSeries([self._coeffs[k] + rhs._coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self._coeffs])

    def __sub__(self, other: object) -> "PowerSeries":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "PowerSeries":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "PowerSeries":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        n = min(self.order, rhs.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self._coeffs[: n + 1]):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = rhs._coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        n = min(self.order, rhs.order)
        return self._coeffs[: n + 1] == rhs._coeffs[: n + 1]

    # Equality is truncation-aware, so instances must not be hashable.
    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self._coeffs[:6])
        if self.order > 5:
            shown += ", ..."
        return f"PowerSeries([{shown}], order={self.order})"

    def reciprocal(self) -> "PowerSeries":
        """The series b with self * b == 1; needs a nonzero constant term."""
        a = self._coeffs
        if a[0] == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        out = [Fraction(1) / a[0]]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, n + 1):
                if a[i]:
                    acc += a[i] * out[n - i]
            out.append(-acc / a[0])
        return PowerSeries(out)

    def sqrt(self) -> "PowerSeries":
        """The series s with s * s == self; needs constant term 1."""
        a = self._coeffs
        if a[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, n):
                acc += out[i] * out[n - i]
            out.append((a[n] - acc) / 2)
        return PowerSeries(out)

    def exp(self) -> "PowerSeries":
        """exp of the series; needs constant term 0 so the result is exact."""
        a = self._coeffs
        if a[0] != 0:
            raise ValueError("exp needs constant term 0")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    acc += k * a[k] * out[n - k]
            out.append(acc / n)
        return PowerSeries(out)

    def compose(self, inner: "PowerSeries | Iterable[Scalar]") -> "PowerSeries":
        """self(inner(x)) truncated to self.order.

        `inner` is treated as an exact polynomial (missing high terms are
        zero) and must have zero constant term, otherwise the composition
        would need infinitely many terms of self.
        """
        if not isinstance(inner, PowerSeries):
            inner = PowerSeries(inner)
        if inner._coeffs[0] != 0:
            raise ValueError("compose needs an inner polynomial with zero constant term")
        order = self.order
        padded = list(inner._coeffs[: order + 1])
        padded += [Fraction(0)] * (order + 1 - len(padded))
        p = PowerSeries(padded)
        result = PowerSeries.constant(self._coeffs[-1], order)
        for k in range(self.order - 1, -1, -1):
            result = result * p + self._coeffs[k]
        return result


def dump_coefficients(ps: PowerSeries) -> str:
    """One line per coefficient: "k<TAB>num/den", denominator omitted when
    it is 1. This is the CLI's exchange format."""
    lines = []
    for k, c in enumerate(ps.coefficients()):
        if c.denominator == 1:
            lines.append(f"{k}\t{c.numerator}")
        else:
            lines.append(f"{k}\t{c.numerator}/{c.denominator}")
    return "\n".join(lines)


def egf_fubini(order: int) -> PowerSeries:
    """1 / (2 - e^x): coefficient of x^k times k! counts ordered set
    partitions of a k-set, including the empty one at k = 0."""
    x = PowerSeries.x(order)
    return (2 - x.exp()).reciprocal()


def ogf_super_catalan(order: int) -> PowerSeries:
    """(1 + x - sqrt(1 - 6x + x^2)) / 4: coefficient of x^n counts plane
    trees with n leaves and no single-child nodes."""
    x = PowerSeries.x(order)
    root = (1 - 6 * x + x * x).sqrt()
    return (1 + x - root) * Fraction(1, 4)


def ogf_connected_cycle(order: int) -> PowerSeries:
    """Ordinary generating function of the connected-rule cycle counts;
    coefficients at n >= 3 match connected_cycle(n)."""
    x = PowerSeries.x(order)
    root = (1 - 6 * x + x * x).sqrt()
    return (x * x + x - x * root) * (4 * root).reciprocal() + x


def egf_td_cycle(order: int) -> PowerSeries:
    """(x - x e^x + e^x - 1) / (2 - e^x): coefficient of x^n times n!
    counts timed connected-rule trees of the n-cycle."""
    x = PowerSeries.x(order)
    e = x.exp()
    return (x - x * e + e - 1) * (2 - e).reciprocal()


class FunctionalEqCheck(NamedTuple):
    ok: bool
    first_mismatch: int | None


def check_td_path_functional_eq(
    order: int, coefficients: Iterable[int] | None = None
) -> FunctionalEqCheck:
    """Verify 2 P(x) - P(x + x^2) == x up to the given order, where P is
    the ordinary generating function of the timed edge-rule path counts.

    `coefficients` overrides the sequence (index 1 first); that hook exists
    so tests can corrupt a term and watch the check fail. Returns the
    verdict and the first mismatching exponent, if any.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    if coefficients is None:
        coeffs = [formulas.td_edge_path(n) for n in range(1, order + 1)]
    else:
        coeffs = list(coefficients)[:order]
        if len(coeffs) < order:
            raise ValueError(f"need at least {order} coefficients, got {len(coeffs)}")
    p = PowerSeries([0, *coeffs])
    lhs = 2 * p - p.compose([0, 1, 1])
    x = PowerSeries.x(order)
    for k in range(order + 1):
        if lhs.coefficient(k) != x.coefficient(k):
            return FunctionalEqCheck(False, k)
    return FunctionalEqCheck(True, None)
