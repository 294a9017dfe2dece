"""Spectral R-matrix families on k^N (x) k^N and their axiom checks.

The rational family lives in the additive coordinate, the six-vertex
trigonometric family (N = 2) in the multiplicative one.  One spectral
variable stays symbolic in every identity check; the others are substituted
by deterministic rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import KernelError, PoleError, ShapeMismatch
from .hseries import HSeries
from .ratfn import P_ONE, P_ZERO, RF_ZERO, RatFn, pmul, ptrim
from .scalar import ADDITIVE, MULTIPLICATIVE, Point, Scalar
from .tensor import LegMatrix, LegShape

RATIONAL = "rational"
TRIGONOMETRIC = "trigonometric"

#: deterministic substitution pool for non-symbolic spectral variables
SAMPLE_POOL = [
    Fraction(1),
    Fraction(1, 2),
    Fraction(-1, 3),
    Fraction(7, 5),
    Fraction(-2),
    Fraction(3),
    Fraction(-5, 7),
    Fraction(9, 4),
    Fraction(11, 3),
    Fraction(-13, 6),
]


@dataclass(frozen=True)
class ArgShift:
    """Spectral-argument displacement of the symbolic coordinate.

    Additive mode: w -> w + const + hpart.
    Multiplicative mode: w -> const * w * exp(hpart); const is a group
    element, hpart a formal-neighborhood exponent with zero h^0 part.
    """

    const: Fraction
    hpart: HSeries

    @staticmethod
    def none(D: int) -> "ArgShift":
        return ArgShift(Fraction(0), HSeries.zero(D))

    @staticmethod
    def of(c, D: int) -> "ArgShift":
        return ArgShift(Fraction(c), HSeries.zero(D))

    @staticmethod
    def of_h(t: HSeries) -> "ArgShift":
        if t.constant_part != 0:
            raise ValueError("use const for the h^0 part")
        return ArgShift(Fraction(0), t)


def shift_scalar(s: Scalar, off: ArgShift, hscale=Fraction(1)) -> Scalar:
    """Displace the coordinate by off; off.hpart is always an additive
    displacement, which the multiplicative coordinate absorbs as a factor
    exp(hscale * hpart) (hscale relates the coordinate to the additive one).
    """
    if s.mode == ADDITIVE:
        t = HSeries.constant(off.const, s.truncation) + off.hpart
        return s.shift(t)
    out = s
    # const 0 means "no factor" (the additive-neutral default); 1 is the
    # multiplicative neutral element
    if off.const not in (0, 1):
        out = out.scale_arg(off.const)
    if not off.hpart.is_zero:
        out = out.shift_mul(off.hpart.scale(hscale))
    return out


class RMatrixFamily:
    """Constructor and cache for R(w) on legs [N, N]."""

    def __init__(self, family: str, N: int, D: int):
        if family == RATIONAL:
            if N < 2:
                raise ValueError("rational family needs N >= 2")
            self.mode = ADDITIVE
        elif family == TRIGONOMETRIC:
            if N != 2:
                raise ValueError("trigonometric family is built for N = 2")
            self.mode = MULTIPLICATIVE
        else:
            raise ValueError(f"family {family!r} not supported")
        self.family = family
        self.N = N
        self.D = D
        self.shape = LegShape([N, N])
        self.crossing_hshift = HSeries.h(D).scale(N)  # the shift N*h
        # additive displacement t acts on the multiplicative coordinate as
        # the factor exp(hshift_scale * t); the half accounts for the
        # coordinate being the square root of the group-like one
        self.hshift_scale = Fraction(1, 2) if family == TRIGONOMETRIC else Fraction(1)
        self._base: LegMatrix | None = None

    # -- construction -------------------------------------------------
    @property
    def base(self) -> LegMatrix:
        if self._base is None:
            if self.family == RATIONAL:
                self._base = _build_rational_matrix(self.N, self.D)
            else:
                self._base = _build_trigonometric_matrix(self.D)
        return self._base

    def r(self, off: ArgShift | None = None) -> LegMatrix:
        """R with the symbolic argument displaced by off."""
        if off is None or (off.hpart.is_zero and (
            off.const == 0 if self.mode == ADDITIVE else off.const == 1
        )):
            return self.base
        return self.base.map_entries(
            lambda s: shift_scalar(s, off, self.hshift_scale)
        )

    def r_value(self, off: ArgShift) -> LegMatrix:
        """R at a fully substituted argument (no symbolic coordinate left)."""
        if self.mode == ADDITIVE:
            val = HSeries.constant(off.const, self.D) + off.hpart
        else:
            factor = off.const if off.const != 0 else Fraction(1)
            val = off.hpart.scale(self.hshift_scale).exp().scale(factor)
        p = Point(val, self.mode)
        return self.base.map_entries(
            lambda s: Scalar.from_hseries(s.eval(p), self.mode)
        )

    def identity(self, legs: int = 2) -> LegMatrix:
        return LegMatrix.identity(
            LegShape([self.N] * legs), self.D, self.mode
        )

    def sigma(self) -> LegMatrix:
        return LegMatrix.from_leg_permutation(self.shape, (1, 0), self.D, self.mode)

    def classical_r(self) -> LegMatrix:
        """The matrix r with R = 1 - h r + O(h^2)."""
        return -self.base.grade_matrix(1)

    def descriptor(self) -> dict:
        return {"family": self.family, "N": self.N, "D": self.D}


def build_rational(N: int, D: int) -> RMatrixFamily:
    return RMatrixFamily(RATIONAL, N, D)


def build_trigonometric(N: int = 2, D: int = 4) -> RMatrixFamily:
    return RMatrixFamily(TRIGONOMETRIC, N, D)


def family_from_descriptor(desc: dict, d_override: int | None = None) -> RMatrixFamily:
    family = desc.get("family")
    if family == "elliptic":
        raise KernelError("elliptic family out of scope")
    N = int(desc.get("N", 2))
    D = int(d_override if d_override is not None else desc.get("D", 4))
    return RMatrixFamily(family, N, D)


def _build_rational_matrix(N: int, D: int) -> LegMatrix:
    """1 - h (sigma - 1/N) / (w - h/N) on legs [N, N]."""
    w = Scalar.coordinate(D, ADDITIVE)
    denom = w - Scalar.from_hseries(HSeries.h(D).scale(Fraction(1, N)), ADDITIVE)
    s = denom.inv() * Scalar.from_hseries(HSeries.h(D), ADDITIVE)  # h/(w - h/N)
    s_over_n = s.scale(Fraction(1, N))
    one = Scalar.one(D, ADDITIVE)
    shape = LegShape([N, N])
    entries: dict = {}
    for i in range(N):
        for j in range(N):
            row = shape.ravel((i, j))
            diag = one + s_over_n
            swap = -s
            col_same = shape.ravel((i, j))
            entries[(row, col_same)] = diag
            col_swap = shape.ravel((j, i))
            if col_swap == col_same:
                entries[(row, col_same)] = diag + swap
            else:
                entries[(row, col_swap)] = swap
    return LegMatrix(shape, entries, D, ADDITIVE)


def _build_trigonometric_matrix(D: int) -> LegMatrix:
    """Six-vertex matrix in the symmetric gauge, q = exp(-h/2).

    The coordinate w is the half-exponential of the additive one, so the
    diagonal entries depend on w^2 and the two hopping entries coincide.
    The gauge is pinned by the scaling degeneration onto the rational
    family and by the plain (conjugation-free) crossing identity.
    """
    q = HSeries.h(D).scale(Fraction(-1, 2)).exp()
    qs = Scalar.from_hseries(q, MULTIPLICATIVE)
    q2 = qs * qs
    w = Scalar.coordinate(D, MULTIPLICATIVE)
    w2 = w * w
    one = Scalar.one(D, MULTIPLICATIVE)
    dinv = (qs * w2 - one).inv()
    a = (q2 * w2 - one) * dinv           # same-index diagonal
    b = qs * (w2 - one) * dinv           # mixed-index diagonal
    c = w * (q2 - one) * dinv            # both hopping entries
    shape = LegShape([2, 2])
    idx = shape.ravel
    entries = {
        (idx((0, 0)), idx((0, 0))): a,
        (idx((1, 1)), idx((1, 1))): a,
        (idx((0, 1)), idx((0, 1))): b,
        (idx((1, 0)), idx((1, 0))): b,
        (idx((0, 1)), idx((1, 0))): c,
        (idx((1, 0)), idx((0, 1))): c,
    }
    return LegMatrix(shape, entries, D, MULTIPLICATIVE)


# -- sample handling ---------------------------------------------------

def _delta(F: RMatrixFamily, a: Fraction, b: Fraction) -> ArgShift:
    """Argument displacement representing the difference of sample points."""
    if F.mode == ADDITIVE:
        return ArgShift.of(a - b, F.D)
    return ArgShift.of(a / b, F.D)


def _sym_minus(F: RMatrixFamily, b: Fraction) -> ArgShift:
    """Displacement for (symbolic u1) - b."""
    if F.mode == ADDITIVE:
        return ArgShift.of(-b, F.D)
    return ArgShift.of(Fraction(1) / b, F.D)


def default_samples(F: RMatrixFamily, count: int = 5):
    """Deterministic pole-free sample pairs (u2, u3); screened-out pairs
    are replaced from the pool, never silently dropped."""
    out = []
    pool = SAMPLE_POOL
    i = 0
    while len(out) < count and i < len(pool) * len(pool):
        a = pool[i % len(pool)]
        b = pool[(i // len(pool) + i + 1) % len(pool)]
        i += 1
        if a == b:
            continue
        if F.mode == MULTIPLICATIVE and (a == 0 or b == 0):
            continue
        try:
            F.r_value(_delta(F, a, b))
        except PoleError:
            continue
        if (a, b) not in out:
            out.append((a, b))
    if len(out) < count:
        raise KernelError("could not assemble pole-free sample pairs")
    return out


# -- identity checks ---------------------------------------------------

def check_qybe(F: RMatrixFamily, samples=None):
    """Residual of the three-leg consistency identity at each sample pair.

    u1 stays symbolic; returns a list of (sample, first_failing_grade or
    None) with None meaning exact zero to order D.
    """
    if samples is None:
        samples = default_samples(F)
    big = LegShape([F.N] * 3)
    results = []
    for (u2, u3) in samples:
        r12 = F.r(_sym_minus(F, u2)).embed(big, (1, 2))
        r13 = F.r(_sym_minus(F, u3)).embed(big, (1, 3))
        r23 = F.r_value(_delta(F, u2, u3)).embed(big, (2, 3))
        diff = r12 * r13 * r23 - r23 * r13 * r12
        results.append(((u2, u3), diff.first_nonzero_grade()))
    return results


def check_crossing(F: RMatrixFamily):
    """Crossing symmetry: both transpose-invert forms agree and are a scalar
    multiple g of R displaced by N*h; returns (g, report dict)."""
    r = F.base
    x = r.inv().partial_transpose(1).inv().partial_transpose(1)
    y = r.inv().partial_transpose(2).inv().partial_transpose(2)
    forms_equal = (x - y).is_zero
    shifted = F.r(ArgShift.of_h(F.crossing_hshift))
    g = None
    proportional = False
    for (rc, cc), v in sorted(shifted.entries.items()):
        if v.is_unit:
            g = x.get(rc, cc) * v.inv()
            break
    if g is not None:
        proportional = (x - shifted.mul_scalar(g)).is_zero
    if not proportional:
        raise KernelError("crossing form is not proportional to the displaced R")
    report = {
        "forms_equal": forms_equal,
        "proportional": proportional,
        "g_unit_leading": g.grades[0] == RatFn.from_fraction(1),
    }
    return g, report


def unitarity_scalar(F: RMatrixFamily) -> Scalar:
    """The scalar phi with R(w) R^{21}(-w) = phi * Id."""
    return matrix_unitarity_scalar(F.base, F.sigma())


def matrix_unitarity_scalar(r: LegMatrix, sigma: LegMatrix) -> Scalar:
    r_neg = r.map_entries(lambda s: s.negate_arg())
    r21_neg = sigma * r_neg * sigma
    prod = r * r21_neg
    n = prod.shape.total
    phi = prod.get(0, 0)
    for (rc, cc), v in prod.entries.items():
        if rc != cc:
            raise KernelError("product R(w) R^21(-w) is not diagonal")
    for i in range(n):
        if prod.get(i, i) != phi:
            raise KernelError("product R(w) R^21(-w) is not scalar")
    return phi


def check_classical_ybe(F: RMatrixFamily, samples=None):
    """Classical YBE for the h^1 matrix r: sum of pairwise commutators
    vanishes; one variable symbolic."""
    if samples is None:
        samples = default_samples(F, 3)
    big = LegShape([F.N] * 3)
    results = []
    for (u2, u3) in samples:
        r12 = (-F.r(_sym_minus(F, u2)).grade_matrix(1)).embed(big, (1, 2))
        r13 = (-F.r(_sym_minus(F, u3)).grade_matrix(1)).embed(big, (1, 3))
        r23 = (-F.r_value(_delta(F, u2, u3)).grade_matrix(1)).embed(big, (2, 3))
        acc = (
            (r12 * r13 - r13 * r12)
            + (r12 * r23 - r23 * r12)
            + (r13 * r23 - r23 * r13)
        )
        results.append(((u2, u3), acc.first_nonzero_grade()))
    return results


# -- trigonometric -> rational degeneration ----------------------------

def _series_mul(a, b, L):
    out = [RF_ZERO] * L
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j in range(L - i):
            y = b[j]
            if not y.is_zero:
                out[i + j] = out[i + j] + x * y
    return out


def _series_inv(a, L):
    if a[0].is_zero:
        raise ZeroDivisionError("series inverse of non-unit")
    out = [RF_ZERO] * L
    out[0] = a[0].inv()
    for m in range(1, L):
        acc = RF_ZERO
        for k in range(1, m + 1):
            if not a[k].is_zero and not out[m - k].is_zero:
                acc = acc + a[k] * out[m - k]
        out[m] = -(out[0] * acc)
    return out


def _poly_at_series(p, e, L):
    """Evaluate a Fraction-coefficient polynomial at an RatFn series."""
    acc = [RF_ZERO] * L
    for c in reversed(p if p else (Fraction(0),)):
        acc = _series_mul(acc, e, L)
        acc[0] = acc[0] + RatFn.from_fraction(c)
    return acc


def _laurent_quotient(num, den, L):
    """(valuation, coeffs) of num/den as a Laurent series in s."""
    vn = next((i for i, c in enumerate(num) if not c.is_zero), None)
    vd = next((i for i, c in enumerate(den) if not c.is_zero), None)
    if vd is None:
        raise ZeroDivisionError("zero denominator series")
    if vn is None:
        return 0, [RF_ZERO] * L
    q = _series_mul(
        num[vn:] + [RF_ZERO] * vn, _series_inv(den[vd:] + [RF_ZERO] * vd, L), L
    )
    return vn - vd, q


def degeneration_limit(F: RMatrixFamily) -> LegMatrix:
    """Leading s-grade of R under (u, h) -> (s*u, s*h), as an additive-mode
    matrix in u; raises if any negative s-power survives."""
    if F.family != TRIGONOMETRIC:
        raise KernelError("degeneration check applies to the trigonometric family")
    D = F.D
    L = 2 * D + 8
    # the coordinate at (s*u, s*h) is exp(hshift_scale * s * u): an s-series
    # with RatFn(u) coefficients
    c = F.hshift_scale
    e = [
        RatFn(ptrim([Fraction(0)] * j + [Fraction(c**j, factorial(j))]))
        for j in range(L)
    ]
    entries: dict = {}
    for (rc, cc), v in F.base.entries.items():
        grades_out = [RF_ZERO] * (D + 1)
        for m, g in enumerate(v.grades):
            if g.is_zero:
                continue
            num = _poly_at_series(g.num, e, L)
            den = _poly_at_series(g.den if g.den else P_ONE, e, L)
            val, q = _laurent_quotient(num, den, L)
            # total s-exponent of q[j] h^m is m + val + j
            for j, c in enumerate(q):
                tot = m + val + j
                if tot > 0 or c.is_zero:
                    continue
                if tot < 0:
                    raise KernelError(
                        f"degeneration has a pole in s at entry {(rc, cc)}"
                    )
                grades_out[m] = grades_out[m] + c
        sc = Scalar(grades_out, ADDITIVE)
        if not sc.is_zero:
            entries[(rc, cc)] = sc
    return LegMatrix(LegShape([F.N, F.N]), entries, D, ADDITIVE)


def check_degeneration(F_trig: RMatrixFamily):
    """Entrywise comparison of the scaling limit with the rational family."""
    limit = degeneration_limit(F_trig)
    rat = build_rational(F_trig.N, F_trig.D).base
    return (limit - rat).first_nonzero_grade()
