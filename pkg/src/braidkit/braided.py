"""Finite-dimensional braided vector spaces and their brackets.

Conventions used everywhere downstream:

* a braiding on an n-dimensional space V is an exact n^2 x n^2 matrix acting
  on column coordinates of V (x) V in the lexicographic pair basis
  e_i (x) e_j -> i*n + j (0-based);
* for an operator a on V (x) V we write a1 = a (x) Id and a2 = Id (x) a on
  triple tensors, and likewise for a bracket V (x) V -> V;
* composition is right to left, matching operator notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any

from .errors import (
    BraidEquationError,
    DomainError,
    InputFormatError,
    ShapeError,
    UnsupportedOperationError,
)
from .linalg import Mat, Subspace, Vec, image, kernel
from .scalars import Field, Scalar

# Default bounds for exhaustive subspace enumeration.
ENUM_MAX_DIM = 3
ENUM_MAX_PRIME = 13

#: sentinel returned when every field element is a valid Hecke mark
ALL_MARKS = "ALL"


@dataclass(frozen=True)
class BraidedSpace:
    """A vector space of dimension ``dim`` with a braiding matrix ``braiding``.

    ``make`` enforces the braid equation (``unchecked=True`` is for
    deliberate negative-test inputs); the bare constructor is reserved for
    the named generators, which are braidings by construction.
    """

    field: Field
    dim: int
    braiding: Mat

    def __post_init__(self):
        n = self.dim
        if n < 0:
            raise DomainError("dimension must be >= 0")
        if (self.braiding.nrows, self.braiding.ncols) != (n * n, n * n):
            raise ShapeError(f"braiding must be {n * n}x{n * n}")

    @classmethod
    def make(cls, field: Field, dim: int, braiding: Mat, unchecked: bool = False) -> "BraidedSpace":
        space = cls(field, dim, braiding)
        if not unchecked:
            ok, witness = check_braid_equation(space)
            if not ok:
                raise BraidEquationError(f"braid equation fails on basis word {witness}")
        return space

    def braiding_on_triple(self) -> tuple[Mat, Mat]:
        """(c1, c2) = (c (x) Id, Id (x) c) on V tensor 3."""
        idm = Mat.identity(self.field, self.dim)
        return self.braiding.kron(idm), idm.kron(self.braiding)


@dataclass(frozen=True)
class BracketMap:
    """A linear map V (x) V -> V in the same pair basis, with an optional
    record of a passed compatibility check against its braided space."""

    matrix: Mat
    compatibility_checked: bool = dc_field(default=False, compare=False)

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def on_triple(self, n: int) -> tuple[Mat, Mat]:
        """(b1, b2) = (b (x) Id, Id (x) b) mapping V tensor 3 to V tensor 2."""
        idm = Mat.identity(self.matrix.field, n)
        return self.matrix.kron(idm), idm.kron(self.matrix)


@dataclass(frozen=True)
class HeckeReport:
    is_hecke: bool
    marks: tuple[Any, ...] | str  # tuple of raw field values, or ALL_MARKS
    minimal_polynomial: tuple[Any, ...]  # monic, ascending powers

    def single_mark(self) -> Any:
        if self.marks == ALL_MARKS or not isinstance(self.marks, tuple) or len(self.marks) != 1:
            raise DomainError("braiding does not have a unique Hecke mark")
        return self.marks[0]


def check_braid_equation(space: BraidedSpace) -> tuple[bool, tuple[int, ...] | None]:
    """True when c1 c2 c1 = c2 c1 c2 on V tensor 3; else a failing basis word."""
    c1, c2 = space.braiding_on_triple()
    lhs = c1 @ c2 @ c1
    rhs = c2 @ c1 @ c2
    diff = lhs - rhs
    if diff.is_zero():
        return True, None
    cols = diff.columns()
    bad = min(j for j, col in enumerate(cols) if col)
    n = space.dim
    word = (bad // (n * n), (bad // n) % n, bad % n)
    return False, word


def minimal_polynomial(field: Field, mat: Mat) -> tuple[Any, ...]:
    """Monic minimal polynomial of a square matrix, ascending coefficients."""
    if mat.nrows != mat.ncols:
        raise ShapeError("minimal polynomial needs a square matrix")
    n = mat.nrows
    if n == 0:
        return (field.one(),)
    # flatten successive powers and look for the first linear dependency
    basis: list[Vec] = []
    power = Mat.identity(field, n)
    flats: list[Vec] = []
    while True:
        flat: Vec = {}
        for i, row in enumerate(power.rows):
            for j, v in row.items():
                flat[i * n + j] = v
        flats.append(flat)
        sub = Subspace.from_vectors(field, n * n, flats)
        if sub.dim < len(flats):
            break
        basis.append(flat)
        power = power @ mat
    # solve flats[-1] = sum coeff_k flats[k] for k < deg
    from .linalg import SpanSolver

    solver = SpanSolver(field, n * n, flats[:-1])
    coeffs = solver.express(flats[-1])
    assert coeffs is not None
    deg = len(flats) - 1
    return tuple(field.neg(c) for c in coeffs) + (field.one(),)


def check_hecke(space: BraidedSpace, lam: Scalar) -> bool:
    """Exact test (c + Id)(c - lam Id) = 0."""
    fld = space.field
    idm = Mat.identity(fld, space.dim ** 2)
    c = space.braiding
    lhs = (c + idm) @ (c - idm.scale(lam.value))
    return lhs.is_zero()


def hecke_analysis(space: BraidedSpace) -> HeckeReport:
    """Minimal-polynomial analysis of the Hecke property.

    The braiding is Hecke of mark lam exactly when its minimal polynomial
    divides (X + 1)(X - lam).  ``marks`` lists every valid lam; the ALL
    sentinel covers c = -Id and the char-2 collapse where +Id and -Id agree.
    """
    fld = space.field
    if space.dim == 0:
        return HeckeReport(True, ALL_MARKS, (fld.one(),))
    mp = minimal_polynomial(fld, space.braiding)
    deg = len(mp) - 1
    if deg == 1:
        # c = mu Id with mu = -mp[0]
        mu = fld.neg(mp[0])
        if fld.is_zero(fld.add(mu, fld.one())):
            return HeckeReport(True, ALL_MARKS, mp)
        return HeckeReport(True, (mu,), mp)
    if deg == 2:
        # match X^2 + a X + b against (X + 1)(X - lam) = X^2 + (1 - lam) X - lam
        b, a = mp[0], mp[1]
        lam = fld.neg(b)
        if a == fld.sub(fld.one(), lam):
            return HeckeReport(True, (lam,), mp)
        return HeckeReport(False, (), mp)
    return HeckeReport(False, (), mp)


def rescale(space: BraidedSpace, mu: Scalar) -> BraidedSpace:
    """The braided space (V, mu c); mu must be nonzero.

    For a Hecke braiding of mark lam, rescaling by -1/lam yields one of mark
    1/lam, and doing it twice returns the original braiding.
    """
    if mu.is_zero():
        raise DomainError("rescale needs a nonzero scalar")
    # both sides of the braid equation scale by mu^3, so no re-check needed
    return BraidedSpace(space.field, space.dim, space.braiding.scale(mu.value))


# ---------------------------------------------------------------------------
# brackets


def check_bracket_compat(space: BraidedSpace, bracket: BracketMap) -> tuple[bool, tuple[int, ...] | None]:
    """The two compatibility identities c b1 = b2 c1 c2 and c b2 = b1 c2 c1,
    checked as matrices on V tensor 3; returns a failing basis word if any."""
    n = space.dim
    c = space.braiding
    c1, c2 = space.braiding_on_triple()
    b1, b2 = bracket.on_triple(n)
    d1 = (c @ b1) - (b2 @ (c1 @ c2))
    d2 = (c @ b2) - (b1 @ (c2 @ c1))
    for diff in (d1, d2):
        if not diff.is_zero():
            cols = diff.columns()
            bad = min(j for j, col in enumerate(cols) if col)
            word = (bad // (n * n), (bad // n) % n, bad % n)
            return False, word
    return True, None


def checked_bracket(space: BraidedSpace, matrix: Mat) -> BracketMap:
    """Build a BracketMap and record a passed compatibility check."""
    br = BracketMap(matrix)
    ok, witness = check_bracket_compat(space, br)
    if not ok:
        from .errors import IncompatibleBracketError

        raise IncompatibleBracketError(f"bracket incompatible with braiding at word {witness}")
    return BracketMap(matrix, compatibility_checked=True)


def solve_compatible_brackets(space: BraidedSpace) -> Subspace:
    """Echelon basis of all brackets compatible with the braiding.

    The two identities are linear in the bracket, so the solution set is the
    kernel of a stacked system over the n^3 matrix entries b[r][s], flattened
    as r*n^2 + s.
    """
    n = space.dim
    fld = space.field
    if n == 0:
        return Subspace.zero(fld, 0)
    c = space.braiding
    c1, c2 = space.braiding_on_triple()
    c12 = c1 @ c2
    c21 = c2 @ c1
    idm = Mat.identity(fld, n)
    unknowns = n * n * n
    rows: list[Vec] = []

    def mat_of_unit(r: int, s: int) -> Mat:
        m = Mat.zeros(fld, n, n * n)
        m.rows[r][s] = fld.one()
        return m

    # Each unit bracket E_rs contributes one column of the linear system;
    # build the system row-wise by transposing at the end.
    sys_cols: list[Vec] = []
    eq_count = 2 * (n * n) * (n ** 3)
    for r in range(n):
        for s in range(n * n):
            b = mat_of_unit(r, s)
            b1 = b.kron(idm)
            b2 = idm.kron(b)
            d1 = (c @ b1) - (b2 @ c12)
            d2 = (c @ b2) - (b1 @ c21)
            col: Vec = {}
            base = 0
            for d in (d1, d2):
                for i, row in enumerate(d.rows):
                    for j, v in row.items():
                        col[base + i * (n ** 3) + j] = v
                base += (n * n) * (n ** 3)
            sys_cols.append(col)
    system = Mat(fld, eq_count, unknowns)
    for idx, col in enumerate(sys_cols):
        for eq, v in col.items():
            system.rows[eq][idx] = v
    return kernel(system)


def bracket_from_vector(space: BraidedSpace, vec: Vec) -> BracketMap:
    """Inverse of the flattening used by solve_compatible_brackets."""
    n = space.dim
    m = Mat.zeros(space.field, n, n * n)
    for idx, v in vec.items():
        m.rows[idx // (n * n)][idx % (n * n)] = v
    return BracketMap(m)


# ---------------------------------------------------------------------------
# categorical subspaces


def is_categorical(space: BraidedSpace, sub: Subspace) -> bool:
    """c(L (x) V) inside V (x) L and c(V (x) L) inside L (x) V, exactly."""
    if sub.ambient != space.dim:
        raise ShapeError("subspace ambient dimension does not match the space")
    fld = space.field
    n = space.dim
    full = Subspace.full(fld, n)
    lv = sub.tensor(full)
    vl = full.tensor(sub)
    c = space.braiding
    for v in lv.rows:
        if not vl.contains(c.apply(v)):
            return False
    for v in vl.rows:
        if not lv.contains(c.apply(v)):
            return False
    return True


def all_subspaces(fld: Field, n: int) -> list[Subspace]:
    """Every subspace of F^n for a finite field, via echelon-form enumeration."""
    if not fld.is_finite():
        raise UnsupportedOperationError(
            "subspace enumeration needs a finite field; test single subspaces instead"
        )
    elements = list(fld.elements())
    out: list[Subspace] = [Subspace.zero(fld, n)]
    one = fld.one()
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_positions = [
                (i, j)
                for i in range(k)
                for j in range(n)
                if j > pivots[i] and j not in pivots
            ]
            for values in itertools.product(elements, repeat=len(free_positions)):
                rows: list[Vec] = [{pivots[i]: one} for i in range(k)]
                for (i, j), v in zip(free_positions, values):
                    if not fld.is_zero(v):
                        rows[i][j] = v
                out.append(Subspace(fld, n, rows, list(pivots)))
    return out


def enumerate_categorical(
    space: BraidedSpace,
    max_dim: int = ENUM_MAX_DIM,
    max_prime: int = ENUM_MAX_PRIME,
) -> list[Subspace]:
    """All categorical subspaces, by exhaustive enumeration.

    Only available over small finite fields; the bounds keep the subspace
    count at desk scale and can be relaxed explicitly by the caller.
    """
    fld = space.field
    if not fld.is_finite():
        raise UnsupportedOperationError(
            "enumerate_categorical needs a finite prime field; use is_categorical"
        )
    if fld.characteristic() > max_prime:
        raise UnsupportedOperationError(f"field characteristic exceeds the bound {max_prime}")
    if space.dim > max_dim:
        raise UnsupportedOperationError(f"dimension exceeds the enumeration bound {max_dim}")
    if space.dim == 0:
        return [Subspace.zero(fld, 0)]
    return [sub for sub in all_subspaces(fld, space.dim) if is_categorical(space, sub)]


# ---------------------------------------------------------------------------
# bracket identities


def check_antisymmetry(space: BraidedSpace, bracket: BracketMap) -> bool:
    """b c = -b."""
    lhs = bracket.matrix @ space.braiding
    return (lhs + bracket.matrix).is_zero()


def check_generalized_jacobi(space: BraidedSpace, bracket: BracketMap) -> bool:
    """b b1 (Id - c2 + c2 c1) = 0 on V tensor 3."""
    n = space.dim
    fld = space.field
    c1, c2 = space.braiding_on_triple()
    b1, _ = bracket.on_triple(n)
    idm = Mat.identity(fld, n ** 3)
    op = idm - c2 + (c2 @ c1)
    return (bracket.matrix @ b1 @ op).is_zero()


def check_hecke_jacobi(space: BraidedSpace, bracket: BracketMap, lam: Scalar) -> bool:
    """Both mark-weighted Jacobi identities:

    b b1 (lam^2 Id - lam c2 + c2 c1) = 0 and
    b b2 (lam^2 Id - lam c1 + c1 c2) = 0.
    """
    n = space.dim
    fld = space.field
    c1, c2 = space.braiding_on_triple()
    b1, b2 = bracket.on_triple(n)
    idm = Mat.identity(fld, n ** 3)
    lam2 = fld.mul(lam.value, lam.value)
    op1 = idm.scale(lam2) - c2.scale(lam.value) + (c2 @ c1)
    op2 = idm.scale(lam2) - c1.scale(lam.value) + (c1 @ c2)
    first = (bracket.matrix @ b1 @ op1).is_zero()
    second = (bracket.matrix @ b2 @ op2).is_zero()
    return first and second


def zeta_map(space: BraidedSpace, lam: Scalar) -> Mat:
    """(lam Id - c1)(lam^2 Id - lam c2 + c2 c1) on V tensor 3.

    The braid equation makes this equal to the mirror product
    (lam Id - c2)(lam^2 Id - lam c1 + c1 c2); the equality is asserted.
    """
    fld = space.field
    n = space.dim
    c1, c2 = space.braiding_on_triple()
    idm = Mat.identity(fld, n ** 3)
    lam2 = fld.mul(lam.value, lam.value)
    left = (idm.scale(lam.value) - c1) @ (idm.scale(lam2) - c2.scale(lam.value) + (c2 @ c1))
    right = (idm.scale(lam.value) - c2) @ (idm.scale(lam2) - c1.scale(lam.value) + (c1 @ c2))
    if not (left - right).is_zero():
        raise BraidEquationError("the two factorizations disagree; input is not a braiding")
    return left


def eigen_image(space: BraidedSpace, lam: Scalar) -> Subspace:
    """Im(lam Id - c) on V tensor 2."""
    idm = Mat.identity(space.field, space.dim ** 2)
    return image(idm.scale(lam.value) - space.braiding)


# ---------------------------------------------------------------------------
# named generators and JSON specs


def flip_space(fld: Field, n: int) -> BraidedSpace:
    """The flip e_i (x) e_j -> e_j (x) e_i."""
    one = fld.one()
    m = Mat.zeros(fld, n * n, n * n)
    for i in range(n):
        for j in range(n):
            m.rows[j * n + i][i * n + j] = one
    return BraidedSpace(fld, n, m)


def dj_hecke_space(fld: Field, n: int, q: Scalar) -> BraidedSpace:
    """The rank-n Drinfeld-Jimbo Hecke symmetry, normalised to mark q^2.

    On the pair basis: e_i e_i -> q^2 e_i e_i; e_i e_j -> q e_j e_i for
    i < j; e_i e_j -> q e_j e_i + (q^2 - 1) e_i e_j for i > j.  The usual
    (c - q)(c + 1/q) = 0 normalisation is scaled by q so that the quadratic
    relation becomes (c + 1)(c - q^2) = 0.
    """
    if q.is_zero():
        raise DomainError("dj_hecke needs q nonzero")
    qv = q.value
    q2 = fld.mul(qv, qv)
    m = Mat.zeros(fld, n * n, n * n)
    for i in range(n):
        for j in range(n):
            src = i * n + j
            if i == j:
                m.rows[src][src] = q2
            elif i < j:
                m.rows[j * n + i][src] = qv
            else:
                m.rows[j * n + i][src] = qv
                m.rows[src][src] = fld.sub(q2, fld.one())
    return BraidedSpace(fld, n, m)


def scalar_space(fld: Field, n: int, mu: Scalar) -> BraidedSpace:
    """mu times the identity braiding (dim 1 is the usual use)."""
    m = Mat.identity(fld, n * n).scale(mu.value)
    return BraidedSpace(fld, n, m)


def diagonal_space(fld: Field, qmatrix: list[list[Any]]) -> BraidedSpace:
    """Diagonal braiding e_i (x) e_j -> q[i][j] e_j (x) e_i."""
    n = len(qmatrix)
    for row in qmatrix:
        if len(row) != n:
            raise InputFormatError("diagonal braiding needs a square parameter matrix")
    m = Mat.zeros(fld, n * n, n * n)
    for i in range(n):
        for j in range(n):
            m.rows[j * n + i][i * n + j] = qmatrix[i][j]
    return BraidedSpace(fld, n, m)


def cross_bracket(fld: Field) -> BracketMap:
    """The alternating 3-dimensional bracket b(e_i, e_j) = eps_ijk e_k."""
    one = fld.one()
    neg = fld.neg(one)
    m = Mat.zeros(fld, 3, 9)
    eps = {(0, 1, 2): one, (1, 2, 0): one, (2, 0, 1): one,
           (1, 0, 2): neg, (2, 1, 0): neg, (0, 2, 1): neg}
    for (i, j, k), v in eps.items():
        m.rows[k][i * 3 + j] = v
    return BracketMap(m)


def gf8_unit_example() -> tuple[BraidedSpace, Scalar, BracketMap]:
    """The bundled char-2 counterexample: dim 1 over F8, identity braiding,
    mark g (a generator, not a cube root of unity), bracket x (x) x -> x."""
    from .scalars import GF8

    space = scalar_space(GF8, 1, Scalar(GF8, GF8.one()))
    lam = Scalar(GF8, GF8.generator())
    bracket = BracketMap(Mat.from_rows(GF8, [[GF8.one()]]))
    return space, lam, bracket


GENERATORS = ("flip", "dj_hecke", "scalar", "diagonal")


def generator_space(name: str, fld: Field, params: dict[str, Any]) -> BraidedSpace:
    """Dispatch for the built-in named braided-space generators."""
    if name == "flip":
        n = int(params.get("n", 2))
        return flip_space(fld, n)
    if name == "dj_hecke":
        n = int(params.get("n", 2))
        q = Scalar(fld, fld.parse(params.get("q", 2)))
        return dj_hecke_space(fld, n, q)
    if name == "scalar":
        n = int(params.get("n", 1))
        mu = Scalar(fld, fld.parse(params.get("mu", 1)))
        return scalar_space(fld, n, mu)
    if name == "diagonal":
        qm = params.get("qmatrix")
        if qm is None:
            raise InputFormatError("diagonal generator needs a qmatrix parameter")
        parsed = [[fld.parse(v) for v in row] for row in qm]
        return diagonal_space(fld, parsed)
    raise InputFormatError(f"unknown generator {name!r}; choose from {GENERATORS}")


BRAIDED_SPACE_KEYS = {"field", "dim", "c", "bracket"}


def braided_space_from_json(doc: dict, check: bool = True) -> tuple[BraidedSpace, BracketMap | None]:
    """Strictly parse the JSON braided-space schema.

    Keys: field (tag string), dim, c (n^4 scalars row-major), optional
    bracket (n^3 scalars row-major).  Unknown keys are rejected.  With
    ``check=False`` the braid equation is not enforced, so a validator can
    report the failure itself instead of refusing the input.
    """
    from .scalars import field_from_string

    if not isinstance(doc, dict):
        raise InputFormatError("braided-space spec must be a JSON object")
    unknown = set(doc) - BRAIDED_SPACE_KEYS
    if unknown:
        raise InputFormatError(f"unknown keys in braided-space spec: {sorted(unknown)}")
    for key in ("field", "dim", "c"):
        if key not in doc:
            raise InputFormatError(f"braided-space spec is missing {key!r}")
    fld = field_from_string(doc["field"])
    n = doc["dim"]
    if not isinstance(n, int) or n < 0:
        raise InputFormatError("dim must be a nonnegative integer")
    flat = [fld.parse(v) for v in doc["c"]]
    braiding = Mat.from_flat(fld, flat, n * n, n * n)
    space = BraidedSpace.make(fld, n, braiding, unchecked=not check)
    bracket = None
    if doc.get("bracket") is not None:
        bflat = [fld.parse(v) for v in doc["bracket"]]
        bracket = BracketMap(Mat.from_flat(fld, bflat, n, n * n))
    return space, bracket


def braided_space_to_json(space: BraidedSpace, bracket: BracketMap | None = None) -> dict:
    fld = space.field
    doc = {
        "field": fld.name,
        "dim": space.dim,
        "c": [fld.format(v) for v in space.braiding.to_flat()],
    }
    if bracket is not None:
        doc["bracket"] = [fld.format(v) for v in bracket.matrix.to_flat()]
    return doc
