"""Exact sparse linear algebra over the package's fields.

Matrices act on column coordinate vectors; composition reads right to left,
so ``A @ B`` applies B first.  Rows are stored as dicts mapping column index
to a nonzero raw field value, which keeps the permutation-heavy braiding
matrices cheap.  All elimination is deterministic: pivots are chosen in
ascending column order and echelon bases are fully reduced, so two subspaces
are equal exactly when their stored rows are equal.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .errors import FieldMismatchError, ShapeError
from .scalars import Field

Vec = dict[int, Any]


class Mat:
    """Sparse exact matrix."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: list[Vec] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        one = field.one()
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_rows(cls, field: Field, dense: Sequence[Sequence[Any]], ncols: int | None = None) -> "Mat":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows: list[Vec] = []
        for r in dense:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            rows.append({j: v for j, v in enumerate(r) if not field.is_zero(v)})
        return cls(field, len(dense), ncols, rows)

    @classmethod
    def from_flat(cls, field: Field, flat: Sequence[Any], nrows: int, ncols: int) -> "Mat":
        if len(flat) != nrows * ncols:
            raise ShapeError(f"expected {nrows * ncols} entries, got {len(flat)}")
        rows: list[Vec] = []
        for i in range(nrows):
            row = {}
            for j in range(ncols):
                v = flat[i * ncols + j]
                if not field.is_zero(v):
                    row[j] = v
            rows.append(row)
        return cls(field, nrows, ncols, rows)

    # -- basics --------------------------------------------------------------

    def _check_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")

    def copy(self) -> "Mat":
        return Mat(self.field, self.nrows, self.ncols, [dict(r) for r in self.rows])

    def entry(self, i: int, j: int) -> Any:
        return self.rows[i].get(j, self.field.zero())

    def set_entry(self, i: int, j: int, v: Any) -> None:
        if self.field.is_zero(v):
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("Mat is unhashable")

    def __repr__(self) -> str:
        return f"Mat({self.field}, {self.nrows}x{self.ncols})"

    def to_dense(self) -> list[list[Any]]:
        zero = self.field.zero()
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = v
        return out

    def to_flat(self) -> list[Any]:
        out = []
        for row in self.to_dense():
            out.extend(row)
        return out

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("size mismatch in +")
        fld = self.field
        rows: list[Vec] = []
        for ra, rb in zip(self.rows, other.rows):
            row = dict(ra)
            for j, v in rb.items():
                s = fld.add(row.get(j, fld.zero()), v)
                if fld.is_zero(s):
                    row.pop(j, None)
                else:
                    row[j] = s
            rows.append(row)
        return Mat(fld, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(self.field.neg(self.field.one()))

    def scale(self, c: Any) -> "Mat":
        fld = self.field
        if fld.is_zero(c):
            return Mat.zeros(fld, self.nrows, self.ncols)
        return Mat(
            fld,
            self.nrows,
            self.ncols,
            [{j: fld.mul(c, v) for j, v in row.items()} for row in self.rows],
        )

    def __neg__(self) -> "Mat":
        return self.scale(self.field.neg(self.field.one()))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        fld = self.field
        add, mul, is_zero = fld.add, fld.mul, fld.is_zero
        orows = other.rows
        out: list[Vec] = []
        for row in self.rows:
            acc: Vec = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    prod = mul(a, b)
                    if j in acc:
                        s = add(acc[j], prod)
                        if is_zero(s):
                            del acc[j]
                        else:
                            acc[j] = s
                    elif not is_zero(prod):
                        acc[j] = prod
            out.append(acc)
        return Mat(fld, self.nrows, other.ncols, out)

    def apply(self, x: Vec) -> Vec:
        """Matrix-vector product A x for a sparse column vector."""
        fld = self.field
        out: Vec = {}
        for i, row in enumerate(self.rows):
            acc = fld.zero()
            hit = False
            for j, v in row.items():
                if j in x:
                    acc = fld.add(acc, fld.mul(v, x[j]))
                    hit = True
            if hit and not fld.is_zero(acc):
                out[i] = acc
        return out

    def transpose(self) -> "Mat":
        rows: list[Vec] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                rows[j][i] = v
        return Mat(self.field, self.ncols, self.nrows, rows)

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product in the lexicographic pair basis (i, j) -> i*n + j."""
        self._check_field(other)
        fld = self.field
        rows: list[Vec] = []
        for ra in self.rows:
            for rb in other.rows:
                row: Vec = {}
                for j1, a in ra.items():
                    base = j1 * other.ncols
                    for j2, b in rb.items():
                        row[base + j2] = fld.mul(a, b)
                rows.append(row)
        return Mat(fld, self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def columns(self) -> list[Vec]:
        cols: list[Vec] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def stack(self, other: "Mat") -> "Mat":
        """Vertical stack."""
        self._check_field(other)
        if self.ncols != other.ncols:
            raise ShapeError("stack needs equal column counts")
        return Mat(self.field, self.nrows + other.nrows, self.ncols,
                   [dict(r) for r in self.rows] + [dict(r) for r in other.rows])


def vec_add_scaled(field: Field, target: Vec, c: Any, src: Vec) -> None:
    """target += c * src, in place, dropping zeros."""
    add, mul, is_zero = field.add, field.mul, field.is_zero
    for j, v in src.items():
        prod = mul(c, v)
        if j in target:
            s = add(target[j], prod)
            if is_zero(s):
                del target[j]
            else:
                target[j] = s
        elif not is_zero(prod):
            target[j] = prod


class Subspace:
    """Row space in canonical reduced echelon form.

    Equality of subspaces is literal equality of the stored rows, which the
    canonical form guarantees.
    """

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, rows: list[Vec], pivots: list[int]):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        one = field.one()
        return cls(field, ambient, [{i: one} for i in range(ambient)], list(range(ambient)))

    @classmethod
    def from_vectors(cls, field: Field, ambient: int, vectors: Iterable[Vec]) -> "Subspace":
        sub = cls.zero(field, ambient)
        for v in vectors:
            sub._insert(dict(v))
        sub._normalize()
        return sub

    @classmethod
    def from_matrix_rows(cls, mat: Mat) -> "Subspace":
        return cls.from_vectors(mat.field, mat.ncols, mat.rows)

    @classmethod
    def from_matrix_columns(cls, mat: Mat) -> "Subspace":
        return cls.from_vectors(mat.field, mat.nrows, mat.columns())

    # -- construction internals ---------------------------------------------

    def _insert(self, v: Vec) -> bool:
        """Reduce v against the current rows; insert the residual if nonzero.

        Returns True when the dimension grew.  Rows are kept pivot-normalised
        and mutually reduced lazily (a final _normalize pass completes RREF).
        """
        fld = self.field
        while v:
            lead = min(v)
            try:
                idx = self.pivots.index(lead)
            except ValueError:
                coeff_inv = fld.inv(v[lead])
                if not fld.is_zero(fld.sub(coeff_inv, fld.one())):
                    v = {j: fld.mul(coeff_inv, val) for j, val in v.items()}
                # keep pivot list sorted, rows aligned
                pos = 0
                while pos < len(self.pivots) and self.pivots[pos] < lead:
                    pos += 1
                self.pivots.insert(pos, lead)
                self.rows.insert(pos, v)
                return True
            vec_add_scaled(fld, v, fld.neg(v[lead]), self.rows[idx])
        return False

    def _normalize(self) -> None:
        """Finish reduction: clear pivot columns above each pivot."""
        fld = self.field
        for i in range(len(self.rows) - 1, -1, -1):
            piv = self.pivots[i]
            row_i = self.rows[i]
            for k in range(i):
                row_k = self.rows[k]
                c = row_k.get(piv)
                if c is not None:
                    vec_add_scaled(fld, row_k, fld.neg(c), row_i)

    # -- queries ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v modulo the subspace (normal form on non-pivot coords)."""
        fld = self.field
        out = dict(v)
        for piv, row in zip(self.pivots, self.rows):
            c = out.get(piv)
            if c is not None:
                vec_add_scaled(fld, out, fld.neg(c), row)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords(self, v: Vec) -> list[Any] | None:
        """Coefficients of v in the echelon basis, or None if v is outside."""
        residual = self.reduce(v)
        if residual:
            return None
        return [v.get(p, self.field.zero()) for p in self.pivots]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("Subspace is unhashable")

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient} over {self.field})"

    # -- lattice operations -----------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.field, self.ambient, [*self.rows, *other.rows])

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via left kernel of the reduction residuals."""
        self._check_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        residual = Mat(self.field, self.dim, self.ambient,
                       [other.reduce(r) for r in self.rows])
        combos = kernel(residual.transpose())
        vectors = []
        for alpha in combos.rows:
            v: Vec = {}
            for i, c in alpha.items():
                vec_add_scaled(self.field, v, c, self.rows[i])
            vectors.append(v)
        return Subspace.from_vectors(self.field, self.ambient, vectors)

    def tensor(self, other: "Subspace") -> "Subspace":
        """Row-space tensor product; already echelon for echelon inputs."""
        self._check_compatible_field(other)
        fld = self.field
        rows: list[Vec] = []
        pivots: list[int] = []
        for u, pu in zip(self.rows, self.pivots):
            for v, pv in zip(other.rows, other.pivots):
                row: Vec = {}
                for j1, a in u.items():
                    base = j1 * other.ambient
                    for j2, b in v.items():
                        row[base + j2] = fld.mul(a, b)
                rows.append(row)
                pivots.append(pu * other.ambient + pv)
        order = sorted(range(len(rows)), key=lambda i: pivots[i])
        return Subspace(fld, self.ambient * other.ambient,
                        [rows[i] for i in order], [pivots[i] for i in order])

    def complement_coords(self) -> list[int]:
        """Ambient coordinates not used as pivots; their classes form the
        canonical basis of the quotient by this subspace."""
        pivset = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivset]

    def basis_matrix(self) -> Mat:
        return Mat(self.field, self.dim, self.ambient, [dict(r) for r in self.rows])

    def _check_compatible(self, other: "Subspace") -> None:
        self._check_compatible_field(other)
        if self.ambient != other.ambient:
            raise ShapeError("ambient dimension mismatch")

    def _check_compatible_field(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"subspaces over {self.field} and {other.field}")


def kernel(mat: Mat) -> Subspace:
    """Right null space {x : A x = 0} in canonical echelon form."""
    fld = mat.field
    rref = Subspace.from_matrix_rows(mat)
    pivset = set(rref.pivots)
    free = [j for j in range(mat.ncols) if j not in pivset]
    vectors: list[Vec] = []
    for f in free:
        v: Vec = {f: fld.one()}
        for piv, row in zip(rref.pivots, rref.rows):
            c = row.get(f)
            if c is not None:
                v[piv] = fld.neg(c)
        vectors.append(v)
    return Subspace.from_vectors(fld, mat.ncols, vectors)


def image(mat: Mat) -> Subspace:
    """Column space."""
    return Subspace.from_matrix_columns(mat)


def rank(mat: Mat) -> int:
    return Subspace.from_matrix_rows(mat).dim


class SpanSolver:
    """Expresses vectors in a fixed (not necessarily echelon) spanning list.

    Used wherever quotient coordinates must be written in a chosen section
    basis.  Elimination order is fixed by the input order, so coordinates are
    deterministic.
    """

    def __init__(self, field: Field, ambient: int, basis: Sequence[Vec]):
        self.field = field
        self.ambient = ambient
        self.basis = [dict(b) for b in basis]
        self._ech_rows: list[Vec] = []
        self._ech_pivots: list[int] = []
        self._transforms: list[Vec] = []  # echelon row i = sum_k transform[i][k] * basis_k
        for k, b in enumerate(self.basis):
            v = dict(b)
            t: Vec = {k: field.one()}
            self._reduce_tracked(v, t)
            if v:
                lead = min(v)
                inv = field.inv(v[lead])
                if not field.is_zero(field.sub(inv, field.one())):
                    v = {j: field.mul(inv, val) for j, val in v.items()}
                    t = {j: field.mul(inv, val) for j, val in t.items()}
                self._ech_rows.append(v)
                self._ech_pivots.append(lead)
                self._transforms.append(t)

    def _reduce_tracked(self, v: Vec, t: Vec) -> None:
        fld = self.field
        while v:
            lead = min(v)
            try:
                i = self._ech_pivots.index(lead)
            except ValueError:
                # rows with larger pivots cannot touch this coordinate
                return
            c = fld.neg(v[lead])
            vec_add_scaled(fld, v, c, self._ech_rows[i])
            vec_add_scaled(fld, t, c, self._transforms[i])

    @property
    def rank(self) -> int:
        return len(self._ech_rows)

    def express(self, v: Vec) -> list[Any] | None:
        """Coefficients on the original basis list, or None when outside."""
        fld = self.field
        v = dict(v)
        t: Vec = {}
        self._reduce_tracked(v, t)
        if v:
            return None
        coeffs = [fld.zero()] * len(self.basis)
        for k, c in t.items():
            coeffs[k] = fld.neg(c)
        return coeffs
