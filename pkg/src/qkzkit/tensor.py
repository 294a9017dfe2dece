"""Multi-leg linear algebra over the scalar ring.

A LegMatrix is a square operator on a tensor product of finite-dimensional
spaces.  Entries are Scalars, stored sparsely as {(row, col): Scalar} with
zeros omitted; row/column indices enumerate multi-indices in row-major leg
order.  Legs are 1-based.
"""

from __future__ import annotations

from .errors import (
    LiftFailure,
    ShapeMismatch,
    SingularMatrix,
)
from .ratfn import RF_ONE, RF_ZERO, RatFn
from .scalar import ADDITIVE, Scalar


class LegShape:
    __slots__ = ("dims", "total", "strides")

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d <= 0 for d in dims):
            raise ShapeMismatch(f"bad leg dims {dims}")
        self.dims = dims
        strides = [1] * len(dims)
        for i in range(len(dims) - 2, -1, -1):
            strides[i] = strides[i + 1] * dims[i + 1]
        self.strides = tuple(strides)
        self.total = strides[0] * dims[0]

    def unravel(self, flat: int):
        out = []
        for s, d in zip(self.strides, self.dims):
            out.append((flat // s) % d)
        return tuple(out)

    def ravel(self, multi) -> int:
        return sum(i * s for i, s in zip(multi, self.strides))

    def __eq__(self, other):
        return isinstance(other, LegShape) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"LegShape({list(self.dims)})"


class LegMatrix:
    __slots__ = ("shape", "entries", "D", "mode")

    def __init__(self, shape: LegShape, entries: dict, D: int, mode: str = ADDITIVE):
        self.shape = shape
        self.entries = {k: v for k, v in entries.items() if not v.is_zero}
        self.D = D
        self.mode = mode

    # -- constructors -------------------------------------------------
    @staticmethod
    def identity(shape: LegShape, D: int, mode: str = ADDITIVE) -> "LegMatrix":
        one = Scalar.one(D, mode)
        return LegMatrix(shape, {(i, i): one for i in range(shape.total)}, D, mode)

    @staticmethod
    def zero(shape: LegShape, D: int, mode: str = ADDITIVE) -> "LegMatrix":
        return LegMatrix(shape, {}, D, mode)

    @staticmethod
    def from_leg_permutation(shape: LegShape, perm, D: int, mode: str = ADDITIVE) -> "LegMatrix":
        """Operator sending e_{i_1} x...x e_{i_k} to the legs reordered by perm.

        perm is 0-based: output leg p receives input leg perm[p].
        """
        one = Scalar.one(D, mode)
        out_dims = tuple(shape.dims[p] for p in perm)
        out_shape = LegShape(out_dims)
        entries = {}
        for col in range(shape.total):
            multi = shape.unravel(col)
            row = out_shape.ravel(tuple(multi[p] for p in perm))
            entries[(row, col)] = one
        return LegMatrix(out_shape, entries, D, mode)

    # -- helpers ------------------------------------------------------
    def _check(self, other: "LegMatrix"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        if self.D != other.D or self.mode != other.mode:
            raise ShapeMismatch("mixed truncation or mode")

    def get(self, r: int, c: int) -> Scalar:
        s = self.entries.get((r, c))
        return s if s is not None else Scalar.zero(self.D, self.mode)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def first_nonzero_grade(self) -> int | None:
        best = None
        for s in self.entries.values():
            g = s.first_nonzero_grade()
            if g is not None and (best is None or g < best):
                best = g
        return best

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "LegMatrix") -> "LegMatrix":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return LegMatrix(self.shape, out, self.D, self.mode)

    def __neg__(self) -> "LegMatrix":
        return LegMatrix(
            self.shape, {k: -v for k, v in self.entries.items()}, self.D, self.mode
        )

    def __sub__(self, other: "LegMatrix") -> "LegMatrix":
        return self + (-other)

    def __mul__(self, other: "LegMatrix") -> "LegMatrix":
        self._check(other)
        rows_b: dict = {}
        for (k, c), v in other.entries.items():
            rows_b.setdefault(k, []).append((c, v))
        out: dict = {}
        for (r, k), a in self.entries.items():
            row = rows_b.get(k)
            if row is None:
                continue
            for c, b in row:
                cur = out.get((r, c))
                prod = a * b
                out[(r, c)] = prod if cur is None else cur + prod
        return LegMatrix(self.shape, out, self.D, self.mode)

    def mul_scalar(self, s: Scalar) -> "LegMatrix":
        return LegMatrix(
            self.shape, {k: v * s for k, v in self.entries.items()}, self.D, self.mode
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LegMatrix) or self.shape != other.shape:
            return False
        return (self - other).is_zero

    def __hash__(self):
        raise TypeError("LegMatrix is unhashable")

    # -- leg surgery --------------------------------------------------
    def embed(self, target: LegShape, legs) -> "LegMatrix":
        """Act with self on the named 1-based legs of target, identity elsewhere.

        The order of `legs` defines the correspondence with self's legs, so
        transposed placements like (2, 1) are supported.
        """
        legs = tuple(legs)
        if len(set(legs)) != len(legs):
            raise ShapeMismatch(f"repeated leg in {legs}")
        if len(legs) != len(self.shape.dims):
            raise ShapeMismatch("leg count mismatch")
        for mine, l in enumerate(legs):
            if not 1 <= l <= len(target.dims):
                raise ShapeMismatch(f"leg {l} outside target")
            if target.dims[l - 1] != self.shape.dims[mine]:
                raise ShapeMismatch(
                    f"dim of leg {l} is {target.dims[l - 1]}, "
                    f"operator leg has {self.shape.dims[mine]}"
                )
        active = set(l - 1 for l in legs)
        rest = [i for i in range(len(target.dims)) if i not in active]
        rest_shape = LegShape([target.dims[i] for i in rest]) if rest else None
        rest_count = rest_shape.total if rest_shape else 1

        def compose(sub_multi, rest_multi):
            full = [0] * len(target.dims)
            for mine, l in enumerate(legs):
                full[l - 1] = sub_multi[mine]
            for pos, i in enumerate(rest):
                full[i] = rest_multi[pos]
            return target.ravel(full)

        out: dict = {}
        for (r, c), v in self.entries.items():
            rm = self.shape.unravel(r)
            cm = self.shape.unravel(c)
            for flat in range(rest_count):
                restm = rest_shape.unravel(flat) if rest_shape else ()
                out[(compose(rm, restm), compose(cm, restm))] = v
        return LegMatrix(target, out, self.D, self.mode)

    def partial_transpose(self, leg: int) -> "LegMatrix":
        """Transpose in the named 1-based leg only."""
        if not 1 <= leg <= len(self.shape.dims):
            raise ShapeMismatch(f"no leg {leg}")
        i = leg - 1
        out = {}
        for (r, c), v in self.entries.items():
            rm = list(self.shape.unravel(r))
            cm = list(self.shape.unravel(c))
            rm[i], cm[i] = cm[i], rm[i]
            out[(self.shape.ravel(rm), self.shape.ravel(cm))] = v
        return LegMatrix(self.shape, out, self.D, self.mode)

    # -- inversion ----------------------------------------------------
    def inv(self) -> "LegMatrix":
        """Exact inverse by Gaussian elimination with unit pivots.

        Pivot selection: first row whose candidate has nonzero h^0 grade,
        lowest row index first, so elimination traces are reproducible.
        """
        n = self.shape.total
        zero = Scalar.zero(self.D, self.mode)
        a = [[self.get(r, c) for c in range(n)] for r in range(n)]
        b = [
            [Scalar.one(self.D, self.mode) if r == c else zero for c in range(n)]
            for r in range(n)
        ]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col].is_unit:
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix(f"no unit pivot in column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                b[col], b[piv] = b[piv], b[col]
            inv_p = a[col][col].inv()
            a[col] = [x * inv_p for x in a[col]]
            b[col] = [x * inv_p for x in b[col]]
            for r in range(n):
                if r == col or a[r][col].is_zero:
                    continue
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        return LegMatrix(
            self.shape,
            {(r, c): b[r][c] for r in range(n) for c in range(n)},
            self.D,
            self.mode,
        )

    def theta(self) -> "LegMatrix":
        """(X^{-1}) transposed in leg 1."""
        return self.inv().partial_transpose(1)

    # -- grades -------------------------------------------------------
    def grade(self, m: int):
        """Dense m-th h-grade as rows of RatFn."""
        n = self.shape.total
        out = [[RF_ZERO] * n for _ in range(n)]
        for (r, c), v in self.entries.items():
            out[r][c] = v.grades[m]
        return out

    def grade_matrix(self, m: int) -> "LegMatrix":
        """The m-th h-grade as a LegMatrix concentrated in grade 0."""
        out = {}
        for (r, c), v in self.entries.items():
            g = v.grades[m]
            if not g.is_zero:
                out[(r, c)] = Scalar.from_ratfn(g, self.D, self.mode)
        return LegMatrix(self.shape, out, self.D, self.mode)

    # -- entrywise maps -----------------------------------------------
    def map_entries(self, fn) -> "LegMatrix":
        return LegMatrix(
            self.shape, {k: fn(v) for k, v in self.entries.items()}, self.D, self.mode
        )

    def apply(self, vec):
        """Matrix-vector product; vec is a list of Scalars."""
        out = [Scalar.zero(self.D, self.mode) for _ in range(self.shape.total)]
        for (r, c), v in self.entries.items():
            if not vec[c].is_zero:
                out[r] = out[r] + v * vec[c]
        return out

    def nullspace(self):
        """Basis of the exact kernel, computed grade-by-grade in h.

        Solves the h^0 kernel over the rational-function field, then lifts
        order-by-order; each returned vector v satisfies A v = 0 exactly to
        order D.  Raises LiftFailure on a rank drop that admits no lift.
        """
        n = self.shape.total
        grades = [self.grade(m) for m in range(self.D + 1)]
        kern0 = kernel_basis(grades[0], n)
        if not kern0:
            return []
        # echelonize so each basis vector leads at a distinct coordinate and
        # vanishes at every other vector's lead; makes the lifts unique
        rref(kern0, n)
        kern0 = [v for v in kern0 if any(not x.is_zero for x in v)]
        pivots = []
        for v in kern0:
            p = next(i for i in range(n) if not v[i].is_zero)
            pivots.append(p)
        out = []
        for v0, p in zip(kern0, pivots):
            lead = v0[p].inv()
            levels = [[x * lead for x in v0]]
            for m in range(1, self.D + 1):
                rhs = [RF_ZERO] * n
                for k in range(1, m + 1):
                    gk = grades[k]
                    prev = levels[m - k]
                    for r in range(n):
                        acc = rhs[r]
                        row = gk[r]
                        for c in range(n):
                            if not row[c].is_zero and not prev[c].is_zero:
                                acc = acc + row[c] * prev[c]
                        rhs[r] = acc
                sol = solve_linear(grades[0], [-x for x in rhs])
                if sol is None:
                    raise LiftFailure(f"no lift at h-grade {m}")
                # fix the kernel freedom: zero out every h^0-pivot coordinate
                for kv, kp in zip(kern0, pivots):
                    f = sol[kp] / kv[kp]
                    if not f.is_zero:
                        sol = [s - f * x for s, x in zip(sol, kv)]
                levels.append(sol)
            vec = [
                Scalar([levels[m][i] for m in range(self.D + 1)], self.mode)
                for i in range(n)
            ]
            out.append(vec)
        return out

    def __repr__(self):
        return f"LegMatrix({self.shape!r}, nnz={len(self.entries)})"


# -- exact linear algebra over the rational-function field -------------

def rref(rows, ncols: int):
    """Reduced row echelon form in place; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c].inv()
        rows[r] = [x * lead for x in rows[r]]
        for i in range(len(rows)):
            if i == r or rows[i][c].is_zero:
                continue
            f = rows[i][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def kernel_basis(matrix, ncols: int):
    """Kernel basis of a dense RatFn matrix over the RatFn field."""
    rows = [list(r) for r in matrix if any(not x.is_zero for x in r)]
    if not rows:
        return [
            [RF_ONE if i == j else RF_ZERO for i in range(ncols)]
            for j in range(ncols)
        ]
    pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [RF_ZERO] * ncols
        v[f] = RF_ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve_linear(matrix, b):
    """One solution x of matrix @ x = b over the RatFn field, or None."""
    ncols = len(matrix[0]) if matrix else 0
    rows = []
    for row, rhs in zip(matrix, b):
        if any(not x.is_zero for x in row) or not rhs.is_zero:
            rows.append(list(row) + [rhs])
    if not rows:
        return [RF_ZERO] * ncols
    pivots = rref(rows, ncols)
    for row in rows[len(pivots):]:
        if not row[ncols].is_zero:
            return None
    x = [RF_ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x
