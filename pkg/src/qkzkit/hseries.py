"""Truncated power series in the quantization parameter h over Q.

These are the scalars of k[[h]]/(h^(D+1)): shift amounts, central charges,
evaluation points.  All operands of a binary operation must share D.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import NonUnitError, TruncationMismatch
from .ratfn import frac_to_str, str_to_frac


class HSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("HSeries needs at least the h^0 coefficient")
        self.coeffs = coeffs

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def constant(c, D: int) -> "HSeries":
        return HSeries((Fraction(c),) + (Fraction(0),) * D)

    @staticmethod
    def h(D: int, power: int = 1) -> "HSeries":
        """The monomial h^power."""
        return HSeries(
            tuple(Fraction(1 if m == power else 0) for m in range(D + 1))
        )

    @staticmethod
    def zero(D: int) -> "HSeries":
        return HSeries.constant(0, D)

    def _check(self, other: "HSeries"):
        if self.truncation != other.truncation:
            raise TruncationMismatch(
                f"D={self.truncation} vs D={other.truncation}"
            )

    def __add__(self, other: "HSeries") -> "HSeries":
        self._check(other)
        return HSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HSeries") -> "HSeries":
        self._check(other)
        return HSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HSeries":
        return HSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other: "HSeries") -> "HSeries":
        self._check(other)
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return HSeries(out)

    def scale(self, c) -> "HSeries":
        c = Fraction(c)
        return HSeries(tuple(a * c for a in self.coeffs))

    def inv(self) -> "HSeries":
        if self.coeffs[0] == 0:
            raise NonUnitError("h^0 coefficient is zero")
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        out[0] = 1 / self.coeffs[0]
        for m in range(1, n):
            s = sum(self.coeffs[k] * out[m - k] for k in range(1, m + 1))
            out[m] = -out[0] * s
        return HSeries(out)

    def exp(self) -> "HSeries":
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise NonUnitError("exp needs zero h^0 part")
        n = len(self.coeffs)
        acc = HSeries.constant(1, n - 1)
        power = HSeries.constant(1, n - 1)
        for j in range(1, n):
            power = power * self
            if power.is_zero:
                break
            acc = acc + power.scale(Fraction(1, factorial(j)))
        return acc

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def constant_part(self) -> Fraction:
        return self.coeffs[0]

    def positive_part(self) -> "HSeries":
        """The h^1-and-up tail."""
        return HSeries((Fraction(0),) + self.coeffs[1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, HSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"HSeries({hseries_to_str(self)!r})"


def hseries_to_str(s: HSeries) -> str:
    return ",".join(frac_to_str(c) for c in s.coeffs)


def str_to_hseries(text: str, D: int | None = None) -> HSeries:
    """Parse "c0,c1,..." (or a single "p/q" meaning a constant)."""
    parts = [str_to_frac(p) for p in text.split(",")]
    if D is not None:
        if len(parts) == 1:
            parts = parts + [Fraction(0)] * D
        elif len(parts) != D + 1:
            raise ValueError(f"expected {D + 1} coefficients, got {len(parts)}")
    return HSeries(parts)
