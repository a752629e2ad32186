"""The truncated tensor bialgebra of a braided vector space.

Degree-d words carry the lexicographic index w_1 n^(d-1) + ... + w_d, so the
concatenation product A^p (x) A^q -> A^(p+q) is the identity re-indexing and
only the braiding lifts and the shuffle comultiplication hold actual data.

The braiding lift c^{p,q} moves a length-p block across a length-q block one
crossing at a time:

    c^{0,q} = c^{p,0} = Id,    c^{1,1} = c,
    c^{1,q} = (Id^(q-1) (x) c) ... (c (x) Id^(q-1)),
    c^{p,q} = (c^{p-1,q} (x) Id) (Id^(p-1) (x) c^{1,q})      for p >= 2.

The shuffle components are grown one appended letter at a time, which is the
matrix form of how the comultiplication acts on a product by a degree-one
primitive:

    Delta^{d,0} = Delta^{0,d} = Id,
    Delta^{p,q} = (Delta^{p,q-1} (x) Id)
                + (Id^(p-1) (x) c^{q,1}) (Delta^{p-1,q} (x) Id).

Both caches are filled eagerly at construction; instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Iterable

from .braided import BraidedSpace
from .errors import DomainError, InputFormatError, ShapeError, UnsupportedOperationError
from .linalg import Mat, SpanSolver, Subspace, Vec, kernel
from .scalars import Field

#: when True, constructors re-verify the graded hexagon identities they rely on
DEBUG_VALIDATE = False


class TruncatedTensorBialgebra:
    """T(V, c) truncated at a degree cutoff, with cached structure blocks."""

    def __init__(self, space: BraidedSpace, cutoff: int):
        if cutoff < 0:
            raise DomainError("cutoff must be >= 0")
        self.space = space
        self.cutoff = cutoff
        self.field = space.field
        n = space.dim
        self._braid: dict[tuple[int, int], Mat] = {}
        self._comul: dict[tuple[int, int], Mat] = {}
        for total in range(cutoff + 1):
            for p in range(total + 1):
                q = total - p
                self._braid[(p, q)] = self._build_lift(p, q)
        for total in range(cutoff + 1):
            for p in range(total + 1):
                q = total - p
                self._comul[(p, q)] = self._build_shuffle(p, q)
        self._symmetrizers: dict[int, Mat] = {}
        if DEBUG_VALIDATE:
            report = validate_graded_bialgebra(self.bialgebra())
            if not report.passed:
                raise ShapeError(f"tensor bialgebra self-check failed: {report.failures()[:1]}")

    # -- degree bookkeeping ---------------------------------------------------

    def dim(self, d: int) -> int:
        return self.space.dim ** d

    def identity(self, d: int) -> Mat:
        return Mat.identity(self.field, self.dim(d))

    # -- lifted braiding --------------------------------------------------------

    def _build_lift(self, p: int, q: int) -> Mat:
        n = self.space.dim
        fld = self.field
        if p == 0 or q == 0:
            return Mat.identity(fld, n ** (p + q))
        if p == 1 and q == 1:
            return self.space.braiding
        if p == 1:
            legs = q + 1
            result = Mat.identity(fld, n ** legs)
            for i in range(1, q + 1):
                op = Mat.identity(fld, n ** (i - 1)).kron(self.space.braiding).kron(
                    Mat.identity(fld, n ** (q - i)))
                result = op @ result
            return result
        lower = self._braid[(p - 1, q)]
        single = self._braid[(1, q)]
        idm_v = Mat.identity(fld, n)
        idm_left = Mat.identity(fld, n ** (p - 1))
        return (lower.kron(idm_v)) @ (idm_left.kron(single))

    def braid_block(self, p: int, q: int) -> Mat:
        if (p, q) not in self._braid:
            raise DomainError(f"braiding block ({p},{q}) is beyond the cutoff {self.cutoff}")
        return self._braid[(p, q)]

    # -- shuffle comultiplication ----------------------------------------------

    def _build_shuffle(self, p: int, q: int) -> Mat:
        n = self.space.dim
        fld = self.field
        if p == 0 or q == 0:
            return Mat.identity(fld, n ** (p + q))
        idm_v = Mat.identity(fld, n)
        first = self._comul[(p, q - 1)].kron(idm_v)
        second = Mat.identity(fld, n ** (p - 1)).kron(self._braid[(q, 1)]) @ (
            self._comul[(p - 1, q)].kron(idm_v))
        return first + second

    def comul_block(self, p: int, q: int) -> Mat:
        if (p, q) not in self._comul:
            raise DomainError(f"shuffle block ({p},{q}) is beyond the cutoff {self.cutoff}")
        return self._comul[(p, q)]

    # -- quantum symmetrizer -----------------------------------------------------

    def quantum_symmetrizer(self, d: int) -> Mat:
        """The braid-lifted symmetrizer on degree d, normalised so that the
        degree-2 instance is Id + c."""
        if d < 1:
            raise DomainError("quantum symmetrizer needs degree >= 1")
        n = self.space.dim
        fld = self.field
        if d in self._symmetrizers:
            return self._symmetrizers[d]
        if d == 1:
            sym = Mat.identity(fld, n)
        else:
            lower = self.quantum_symmetrizer(d - 1)
            total = Mat.identity(fld, n ** d)
            acc = Mat.identity(fld, n ** d)
            for i in range(1, d):
                ci = Mat.identity(fld, n ** (i - 1)).kron(self.space.braiding).kron(
                    Mat.identity(fld, n ** (d - i - 1)))
                acc = acc @ ci
                total = total + acc
            sym = Mat.identity(fld, n).kron(lower) @ total
        self._symmetrizers[d] = sym
        return sym

    # -- packaging ---------------------------------------------------------------

    def bialgebra(self) -> "TruncatedBraidedBialgebra":
        """The tensor bialgebra as a generic structure-constant object."""
        fld = self.field
        dims = tuple(self.dim(d) for d in range(self.cutoff + 1))
        mul = {}
        comul = {}
        braid = {}
        for total in range(self.cutoff + 1):
            for p in range(total + 1):
                q = total - p
                mul[(p, q)] = Mat.identity(fld, self.dim(total))
                comul[(p, q)] = self._comul[(p, q)]
                braid[(p, q)] = self._braid[(p, q)]
        return TruncatedBraidedBialgebra(
            field=fld, dims=dims, mul=mul, comul=comul, braid=braid,
            unit={0: fld.one()}, counit={0: fld.one()})


# ---------------------------------------------------------------------------
# graded elements of the truncation


@dataclass
class GradedVector:
    """A finitely supported element of the truncated tensor algebra."""

    field: Field
    dim: int
    cutoff: int
    components: dict[int, Vec] = dc_field(default_factory=dict)
    truncated: bool = False

    @classmethod
    def unit(cls, fld: Field, dim: int, cutoff: int) -> "GradedVector":
        return cls(fld, dim, cutoff, {0: {0: fld.one()}})

    @classmethod
    def basis_word(cls, fld: Field, dim: int, cutoff: int, word: Iterable[int]) -> "GradedVector":
        word = tuple(word)
        if len(word) > cutoff:
            raise DomainError("word longer than the cutoff")
        idx = 0
        for letter in word:
            if not 0 <= letter < dim:
                raise DomainError(f"letter {letter} outside 0..{dim - 1}")
            idx = idx * dim + letter
        return cls(fld, dim, cutoff, {len(word): {idx: fld.one()}})

    def _clean(self) -> None:
        for d in [d for d, comp in self.components.items() if not comp]:
            del self.components[d]

    def add(self, other: "GradedVector") -> "GradedVector":
        out = {d: dict(v) for d, v in self.components.items()}
        fld = self.field
        for d, comp in other.components.items():
            tgt = out.setdefault(d, {})
            for j, v in comp.items():
                s = fld.add(tgt.get(j, fld.zero()), v)
                if fld.is_zero(s):
                    tgt.pop(j, None)
                else:
                    tgt[j] = s
        res = GradedVector(self.field, self.dim, self.cutoff, out,
                           self.truncated or other.truncated)
        res._clean()
        return res

    def scale(self, c: Any) -> "GradedVector":
        fld = self.field
        if fld.is_zero(c):
            return GradedVector(fld, self.dim, self.cutoff, {}, self.truncated)
        return GradedVector(
            fld, self.dim, self.cutoff,
            {d: {j: fld.mul(c, v) for j, v in comp.items()} for d, comp in self.components.items()},
            self.truncated)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedVector):
            return NotImplemented
        return (self.field, self.dim, self.components) == (other.field, other.dim, other.components)


def multiply(x: GradedVector, y: GradedVector) -> GradedVector:
    """Concatenation product; components past the cutoff are dropped and the
    truncation flag is raised."""
    if (x.field, x.dim) != (y.field, y.dim):
        raise ShapeError("graded vectors over different spaces")
    fld = x.field
    n = x.dim
    cutoff = min(x.cutoff, y.cutoff)
    out: dict[int, Vec] = {}
    truncated = x.truncated or y.truncated
    for p, xc in x.components.items():
        for q, yc in y.components.items():
            if p + q > cutoff:
                if xc and yc:
                    truncated = True
                continue
            tgt = out.setdefault(p + q, {})
            shift = n ** q
            for i, a in xc.items():
                for j, b in yc.items():
                    idx = i * shift + j
                    s = fld.add(tgt.get(idx, fld.zero()), fld.mul(a, b))
                    if fld.is_zero(s):
                        tgt.pop(idx, None)
                    else:
                        tgt[idx] = s
    res = GradedVector(fld, n, cutoff, out, truncated)
    res._clean()
    return res


# ---------------------------------------------------------------------------
# generic truncated graded braided bialgebras


@dataclass
class TruncatedBraidedBialgebra:
    """A graded braided bialgebra given by structure-constant blocks.

    ``mul[(p, q)]`` maps A^p (x) A^q to A^(p+q); ``comul[(p, q)]`` maps
    A^(p+q) to A^p (x) A^q; ``braid[(p, q)]`` maps A^p (x) A^q to
    A^q (x) A^p.  Blocks exist for p + q <= cutoff.  The degree-0 component
    is one-dimensional with the stored unit vector and counit functional.
    """

    field: Field
    dims: tuple[int, ...]
    mul: dict[tuple[int, int], Mat]
    comul: dict[tuple[int, int], Mat]
    braid: dict[tuple[int, int], Mat]
    unit: Vec
    counit: Vec

    def __post_init__(self):
        if not self.dims:
            raise ShapeError("need at least the degree-0 component")
        for (p, q), m in self.mul.items():
            if (m.nrows, m.ncols) != (self.dims[p + q], self.dims[p] * self.dims[q]):
                raise ShapeError(f"mul block ({p},{q}) has wrong shape")
        for (p, q), m in self.comul.items():
            if (m.nrows, m.ncols) != (self.dims[p] * self.dims[q], self.dims[p + q]):
                raise ShapeError(f"comul block ({p},{q}) has wrong shape")
        for (p, q), m in self.braid.items():
            if (m.nrows, m.ncols) != (self.dims[q] * self.dims[p], self.dims[p] * self.dims[q]):
                raise ShapeError(f"braid block ({p},{q}) has wrong shape")

    @property
    def cutoff(self) -> int:
        return len(self.dims) - 1

    def is_zero_connected(self) -> bool:
        return self.dims[0] == 1

    # -- total-space coordinates -------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offset(self, d: int) -> int:
        return sum(self.dims[:d])

    def block_of(self, global_index: int) -> tuple[int, int]:
        acc = 0
        for d, size in enumerate(self.dims):
            if global_index < acc + size:
                return d, global_index - acc
            acc += size
        raise ShapeError("global index out of range")

    def embed(self, d: int, local: Vec) -> Vec:
        off = self.offset(d)
        return {off + j: v for j, v in local.items()}

    def split(self, total: Vec) -> dict[int, Vec]:
        out: dict[int, Vec] = {}
        for g, v in total.items():
            d, j = self.block_of(g)
            out.setdefault(d, {})[j] = v
        return out

    def degree_filtration(self) -> list[Subspace]:
        """The chain C_k = (degrees <= k), as total-space subspaces."""
        fld = self.field
        one = fld.one()
        chain = []
        for k in range(self.cutoff + 1):
            upto = self.offset(k) + self.dims[k]
            chain.append(Subspace(fld, self.total_dim,
                                  [{i: one} for i in range(upto)], list(range(upto))))
        return chain

    # -- total-space operations ----------------------------------------------------

    def mul_pair_vec(self, x: Vec, y: Vec) -> Vec:
        """Product of two total-space vectors; raises past the cutoff."""
        fld = self.field
        out: Vec = {}
        xs = self.split(x)
        ys = self.split(y)
        for p, xc in xs.items():
            for q, yc in ys.items():
                if p + q > self.cutoff:
                    raise UnsupportedOperationError("product exceeds the truncation")
                pair: Vec = {}
                dq = self.dims[q]
                for i, a in xc.items():
                    for j, b in yc.items():
                        pair[i * dq + j] = fld.mul(a, b)
                img = self.mul[(p, q)].apply(pair)
                off = self.offset(p + q)
                for j, v in img.items():
                    s = fld.add(out.get(off + j, fld.zero()), v)
                    if fld.is_zero(s):
                        out.pop(off + j, None)
                    else:
                        out[off + j] = s
        return out

    def comul_vec(self, x: Vec) -> Vec:
        """Full comultiplication into global pair coordinates g1 * D + g2."""
        fld = self.field
        D = self.total_dim
        out: Vec = {}
        for d, comp in self.split(x).items():
            for p in range(d + 1):
                q = d - p
                img = self.comul[(p, q)].apply(comp)
                offp, offq = self.offset(p), self.offset(q)
                dq = self.dims[q]
                for pair_idx, v in img.items():
                    i, j = pair_idx // dq, pair_idx % dq
                    g = (offp + i) * D + (offq + j)
                    s = fld.add(out.get(g, fld.zero()), v)
                    if fld.is_zero(s):
                        out.pop(g, None)
                    else:
                        out[g] = s
        return out

    def braid_pair_vec(self, x: Vec, y: Vec) -> Vec:
        """Braiding of two total-space vectors, in global pair coordinates."""
        fld = self.field
        D = self.total_dim
        out: Vec = {}
        xs = self.split(x)
        ys = self.split(y)
        for p, xc in xs.items():
            for q, yc in ys.items():
                if p + q > self.cutoff:
                    raise UnsupportedOperationError("braiding exceeds the truncation")
                pair: Vec = {}
                dq = self.dims[q]
                for i, a in xc.items():
                    for j, b in yc.items():
                        pair[i * dq + j] = fld.mul(a, b)
                img = self.braid[(p, q)].apply(pair)
                offp, offq = self.offset(p), self.offset(q)
                dp = self.dims[p]
                for pair_idx, v in img.items():
                    i, j = pair_idx // dp, pair_idx % dp
                    g = (offq + i) * D + (offp + j)
                    s = fld.add(out.get(g, fld.zero()), v)
                    if fld.is_zero(s):
                        out.pop(g, None)
                    else:
                        out[g] = s
        return out

    # -- serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        fld = self.field

        def blocks(bl: dict[tuple[int, int], Mat]) -> dict[str, list[str]]:
            return {f"{p},{q}": [fld.format(v) for v in m.to_flat()]
                    for (p, q), m in sorted(bl.items())}

        return {
            "field": fld.name,
            "dims": list(self.dims),
            "mul": blocks(self.mul),
            "comul": blocks(self.comul),
            "braid": blocks(self.braid),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TruncatedBraidedBialgebra":
        from .scalars import field_from_string

        keys = {"field", "dims", "mul", "comul", "braid"}
        unknown = set(doc) - keys
        if unknown:
            raise InputFormatError(f"unknown keys in bialgebra spec: {sorted(unknown)}")
        missing = keys - set(doc)
        if missing:
            raise InputFormatError(f"bialgebra spec is missing {sorted(missing)}")
        fld = field_from_string(doc["field"])
        dims = tuple(int(d) for d in doc["dims"])
        cutoff = len(dims) - 1

        def parse_blocks(raw: dict, shape: Callable[[int, int], tuple[int, int]]) -> dict:
            out = {}
            for key, flat in raw.items():
                p_str, q_str = key.split(",")
                p, q = int(p_str), int(q_str)
                if p + q > cutoff:
                    raise InputFormatError(f"block {key} is beyond the cutoff")
                nrows, ncols = shape(p, q)
                out[(p, q)] = Mat.from_flat(fld, [fld.parse(v) for v in flat], nrows, ncols)
            return out

        mul = parse_blocks(doc["mul"], lambda p, q: (dims[p + q], dims[p] * dims[q]))
        comul = parse_blocks(doc["comul"], lambda p, q: (dims[p] * dims[q], dims[p + q]))
        braid = parse_blocks(doc["braid"], lambda p, q: (dims[q] * dims[p], dims[p] * dims[q]))
        return cls(field=fld, dims=dims, mul=mul, comul=comul, braid=braid,
                   unit={0: fld.one()}, counit={0: fld.one()})


# ---------------------------------------------------------------------------
# axiom validation


@dataclass
class AxiomLedger:
    """Pass/fail record per axiom instance, keyed by degrees."""

    entries: list[dict]

    @property
    def passed(self) -> bool:
        return all(e["ok"] for e in self.entries)

    def failures(self) -> list[dict]:
        return [e for e in self.entries if not e["ok"]]

    def by_axiom(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for e in self.entries:
            out[e["axiom"]] = out.get(e["axiom"], True) and e["ok"]
        return out

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "axioms": self.by_axiom(),
            "failures": [
                {"axiom": e["axiom"], "degrees": list(e["degrees"])}
                for e in self.failures()
            ],
        }


def _first_bad_column(diff: Mat) -> int | None:
    cols = diff.columns()
    bad = [j for j, col in enumerate(cols) if col]
    return min(bad) if bad else None


def validate_graded_bialgebra(A: TruncatedBraidedBialgebra) -> AxiomLedger:
    """Check every graded axiom instance with total degree within the cutoff.

    Covers associativity and unit laws, the braiding/multiplication and
    braiding/comultiplication hexagons, ground-degree braiding behaviour,
    coassociativity and counit laws, per-tridegree braid equations, and the
    multiplicativity of the comultiplication with respect to the braided
    product on A (x) A.
    """
    fld = A.field
    N = A.cutoff
    entries: list[dict] = []

    def record(axiom: str, degrees: tuple, diff: Mat) -> None:
        bad = _first_bad_column(diff)
        entry = {"axiom": axiom, "degrees": degrees, "ok": bad is None}
        if bad is not None:
            entry["witness"] = {"column": bad}
        entries.append(entry)

    def idm(d: int) -> Mat:
        return Mat.identity(fld, A.dims[d])

    unit_col = Mat(fld, A.dims[0], 1, [({0: v} if not fld.is_zero(v) else {})
                                       for v in [A.unit.get(i, fld.zero()) for i in range(A.dims[0])]])
    counit_row = Mat(fld, 1, A.dims[0], [dict(A.counit)])

    # unit/counit pairing must be 1
    pairing = counit_row @ unit_col
    record("counit_unit_pairing", (), pairing - Mat.identity(fld, 1))

    for n in range(N + 1):
        # (gr2) unit laws
        left = A.mul[(0, n)] @ unit_col.kron(idm(n))
        right = A.mul[(n, 0)] @ idm(n).kron(unit_col)
        record("unit_law", (n,), left - idm(n))
        record("unit_law", (n,), right - idm(n))
        # (gr5)/(c5) ground braiding: c(1 (x) a) = a (x) 1 and c(a (x) 1) = 1 (x) a
        c0n = A.braid[(0, n)] @ unit_col.kron(idm(n))
        cn0 = A.braid[(n, 0)] @ idm(n).kron(unit_col)
        record("ground_braiding", (0, n), c0n - idm(n).kron(unit_col))
        record("ground_braiding", (n, 0), cn0 - unit_col.kron(idm(n)))
        # counit contraction of the ground braiding
        record("counit_braiding", (n, 0),
               counit_row.kron(idm(n)) @ A.braid[(n, 0)] - idm(n).kron(counit_row))
        record("counit_braiding", (0, n),
               idm(n).kron(counit_row) @ A.braid[(0, n)] - counit_row.kron(idm(n)))
        # (c2) counit laws
        eps_left = counit_row.kron(idm(n)) @ A.comul[(0, n)]
        eps_right = idm(n).kron(counit_row) @ A.comul[(n, 0)]
        record("counit_law", (n,), eps_left - idm(n))
        record("counit_law", (n,), eps_right - idm(n))

    for total in range(N + 1):
        for p in range(total + 1):
            for q in range(total - p + 1):
                r = total - p - q
                # (gr1) associativity
                lhs = A.mul[(p + q, r)] @ A.mul[(p, q)].kron(idm(r))
                rhs = A.mul[(p, q + r)] @ idm(p).kron(A.mul[(q, r)])
                record("associativity", (p, q, r), lhs - rhs)
                # (c1) coassociativity
                lhs = A.comul[(p, q)].kron(idm(r)) @ A.comul[(p + q, r)]
                rhs = idm(p).kron(A.comul[(q, r)]) @ A.comul[(p, q + r)]
                record("coassociativity", (p, q, r), lhs - rhs)
                # (gr3) braiding of a product, left
                lhs = A.braid[(p + q, r)] @ A.mul[(p, q)].kron(idm(r))
                rhs = idm(r).kron(A.mul[(p, q)]) @ A.braid[(p, r)].kron(idm(q)) @ idm(p).kron(A.braid[(q, r)])
                record("mul_braid_hexagon", (p, q, r), lhs - rhs)
                # (gr4) braiding of a product, right
                lhs = A.braid[(r, p + q)] @ idm(r).kron(A.mul[(p, q)])
                rhs = A.mul[(p, q)].kron(idm(r)) @ idm(p).kron(A.braid[(r, q)]) @ A.braid[(r, p)].kron(idm(q))
                record("mul_braid_hexagon", (r, p, q), lhs - rhs)
                # (c3) braiding of a comultiplication, left
                lhs = idm(r).kron(A.comul[(p, q)]) @ A.braid[(p + q, r)]
                rhs = A.braid[(p, r)].kron(idm(q)) @ idm(p).kron(A.braid[(q, r)]) @ A.comul[(p, q)].kron(idm(r))
                record("comul_braid_hexagon", (p, q, r), lhs - rhs)
                # (c4) braiding of a comultiplication, right
                lhs = A.comul[(p, q)].kron(idm(r)) @ A.braid[(r, p + q)]
                rhs = idm(p).kron(A.braid[(r, q)]) @ A.braid[(r, p)].kron(idm(q)) @ idm(r).kron(A.comul[(p, q)])
                record("comul_braid_hexagon", (r, p, q), lhs - rhs)
                # braid equation in this tridegree
                lhs = A.braid[(q, r)].kron(idm(p)) @ idm(q).kron(A.braid[(p, r)]) @ A.braid[(p, q)].kron(idm(r))
                rhs = idm(r).kron(A.braid[(p, q)]) @ A.braid[(p, r)].kron(idm(q)) @ idm(p).kron(A.braid[(q, r)])
                record("braid_equation", (p, q, r), lhs - rhs)

    # comultiplication is multiplicative for the braided product on A (x) A
    for total in range(N + 1):
        for p in range(total + 1):
            q = total - p
            for r in range(total + 1):
                s = total - r
                lhs = A.comul[(r, s)] @ A.mul[(p, q)]
                rhs = Mat.zeros(fld, A.dims[r] * A.dims[s], A.dims[p] * A.dims[q])
                for i in range(min(p, r) + 1):
                    j = r - i
                    i2 = p - i
                    j2 = q - j
                    if j < 0 or j > q or i2 < 0 or j2 < 0 or i2 + j2 != s:
                        continue
                    term = (A.mul[(i, j)].kron(A.mul[(i2, j2)])
                            @ idm(i).kron(A.braid[(i2, j)]).kron(idm(j2))
                            @ A.comul[(i, i2)].kron(A.comul[(j, j2)]))
                    rhs = rhs + term
                record("bialgebra_compat", (p, q, r, s), lhs - rhs)

    return AxiomLedger(entries)


# ---------------------------------------------------------------------------
# primitives and the coradical filtration


@dataclass
class PrimitiveSpace:
    """Graded primitives of a 0-connected truncated bialgebra.

    ``by_degree`` maps each degree to the primitive subspace of that
    component; ``basis_degrees`` gives the degree of each vector of the
    concatenated basis; ``braiding`` is the restriction of the ambient
    braiding to P (x) P in that basis (None when a needed block falls beyond
    the truncation).
    """

    ambient: TruncatedBraidedBialgebra
    by_degree: dict[int, Subspace]
    basis_degrees: list[int]
    braiding: Mat | None

    @property
    def dim(self) -> int:
        return len(self.basis_degrees)

    def dims_vector(self) -> list[int]:
        return [self.by_degree[d].dim if d in self.by_degree else 0
                for d in range(1, self.ambient.cutoff + 1)]

    def basis_total_vectors(self) -> list[Vec]:
        out = []
        for d in sorted(self.by_degree):
            for row in self.by_degree[d].rows:
                out.append(self.ambient.embed(d, row))
        return out

    def total_subspace(self) -> Subspace:
        return Subspace.from_vectors(self.ambient.field, self.ambient.total_dim,
                                     self.basis_total_vectors())

    def braided_space(self) -> BraidedSpace:
        if self.braiding is None:
            raise UnsupportedOperationError("primitive braiding not available inside the cutoff")
        return BraidedSpace.make(self.ambient.field, self.dim, self.braiding)


def primitives(A: TruncatedBraidedBialgebra) -> PrimitiveSpace:
    """Kernel of the reduced comultiplication, degree by degree, together
    with the braiding it inherits."""
    if not A.is_zero_connected():
        raise DomainError("primitives need a 0-connected input")
    fld = A.field
    by_degree: dict[int, Subspace] = {}
    for d in range(1, A.cutoff + 1):
        if A.dims[d] == 0:
            continue
        stacked = Mat.zeros(fld, 0, A.dims[d])
        for p in range(1, d):
            q = d - p
            stacked = stacked.stack(A.comul[(p, q)])
        ker = kernel(stacked)
        if ker.dim:
            by_degree[d] = ker
    basis_degrees: list[int] = []
    basis: list[tuple[int, Vec]] = []
    for d in sorted(by_degree):
        for row in by_degree[d].rows:
            basis.append((d, row))
            basis_degrees.append(d)
    m = len(basis)
    braiding: Mat | None = Mat.zeros(fld, m * m, m * m)
    pair_solvers: dict[tuple[int, int], SpanSolver] = {}
    for a, (d1, u) in enumerate(basis):
        for b, (d2, v) in enumerate(basis):
            if d1 + d2 > A.cutoff:
                braiding = None
                break
            pair: Vec = {}
            dq = A.dims[d2]
            for i, x in u.items():
                for j, y in v.items():
                    pair[i * dq + j] = fld.mul(x, y)
            img = A.braid[(d1, d2)].apply(pair)
            key = (d2, d1)
            if key not in pair_solvers:
                vecs = []
                for (dd1, uu) in basis:
                    if dd1 != d2:
                        continue
                    for (dd2, vv) in basis:
                        if dd2 != d1:
                            continue
                        pv: Vec = {}
                        dp = A.dims[d1]
                        for i, x in uu.items():
                            for j, y in vv.items():
                                pv[i * dp + j] = fld.mul(x, y)
                        vecs.append(pv)
                pair_solvers[key] = SpanSolver(fld, A.dims[d2] * A.dims[d1], vecs)
            coeffs = pair_solvers[key].express(img)
            if coeffs is None:
                # braiding does not preserve P (x) P; cannot restrict
                braiding = None
                break
            idx_pairs = [(i, j) for i, dd1 in enumerate(basis_degrees) if dd1 == d2
                         for j, dd2 in enumerate(basis_degrees) if dd2 == d1]
            col = a * m + b
            for coeff, (i, j) in zip(coeffs, idx_pairs):
                if not fld.is_zero(coeff):
                    braiding.rows[i * m + j][col] = coeff
        if braiding is None:
            break
    return PrimitiveSpace(A, by_degree, basis_degrees, braiding)


def coradical_filtration(A: TruncatedBraidedBialgebra, n: int | None = None) -> list[Subspace]:
    """The ascending chain C_0 <= C_1 <= ... computed degreewise.

    C_0 is the degree-0 line; C_(k+1) collects the elements whose reduced
    comultiplication lands in C_k (x) A.  Returned as total-space subspaces,
    length n + 1 (default: cutoff + 1).
    """
    if not A.is_zero_connected():
        raise DomainError("coradical filtration needs a 0-connected input")
    if n is None:
        n = A.cutoff
    fld = A.field
    by_degree: dict[int, Subspace] = {0: Subspace.full(fld, A.dims[0])}
    chain: list[Subspace] = []

    def normal_form_matrix(sub: Subspace, ambient: int) -> Mat:
        # a matrix whose kernel is exactly `sub`
        m = Mat.zeros(fld, ambient, ambient)
        for j in range(ambient):
            res = sub.reduce({j: fld.one()})
            for i, v in res.items():
                m.rows[i][j] = v
        return m

    def snapshot() -> Subspace:
        vecs = []
        for d, sub in sorted(by_degree.items()):
            for row in sub.rows:
                vecs.append(A.embed(d, row))
        return Subspace.from_vectors(fld, A.total_dim, vecs)

    chain.append(snapshot())
    for _ in range(n):
        new_by_degree: dict[int, Subspace] = {0: by_degree[0]}
        for d in range(1, A.cutoff + 1):
            if A.dims[d] == 0:
                continue
            stacked = Mat.zeros(fld, 0, A.dims[d])
            for p in range(1, d):
                q = d - p
                prev = by_degree.get(p, Subspace.zero(fld, A.dims[p]))
                nf = normal_form_matrix(prev, A.dims[p])
                cond = nf.kron(Mat.identity(fld, A.dims[q])) @ A.comul[(p, q)]
                stacked = stacked.stack(cond)
            ker = kernel(stacked)
            if ker.dim:
                new_by_degree[d] = ker
        by_degree = new_by_degree
        chain.append(snapshot())
    return chain


# ---------------------------------------------------------------------------
# associated graded of a compatible filtration


def gr_of_filtration(
    A: TruncatedBraidedBialgebra,
    chain: list[Subspace],
    check: bool = True,
) -> TruncatedBraidedBialgebra:
    """Associated graded bialgebra of an algebra-coalgebra filtration.

    The chain must be ascending total-space subspaces with a one-dimensional
    bottom, exhausting the truncation.  Algebra, coalgebra and braiding
    compatibility are verified (the braiding condition
    c(C_n (x) C_m) <= C_m (x) C_n is the load-bearing one) before quotient
    structure blocks are formed.

    Chain levels may mix degrees (the coradical filtration of a non-strict
    input does).  Structure blocks of the output are only computable while
    the degrees occurring in the sections stay within the cached truncation,
    so the output cutoff is lowered to the largest level for which every
    needed block exists.
    """
    fld = A.field
    D = A.total_dim
    L = len(chain) - 1
    if L < 0:
        raise DomainError("empty filtration chain")
    if chain[0].dim != 1:
        raise DomainError("filtration must start from a one-dimensional bottom")
    if chain[-1].dim != D:
        raise DomainError("filtration chain must exhaust the truncated space")
    for k in range(L):
        if not chain[k + 1].contains_space(chain[k]):
            raise DomainError(f"filtration chain is not ascending at level {k}")

    # section bases: S_k spans a complement of C_(k-1) in C_k
    sections: list[list[Vec]] = []
    for k in range(L + 1):
        prev = chain[k - 1] if k else Subspace.zero(fld, D)
        residuals = [prev.reduce(row) for row in chain[k].rows]
        sec = Subspace.from_vectors(fld, D, [r for r in residuals if r])
        sections.append(list(sec.rows))

    # highest tensor degree appearing at each level bounds which blocks exist
    maxdeg = []
    for k in range(L + 1):
        top = 0
        for row in chain[k].rows:
            for g in row:
                d, _ = A.block_of(g)
                top = max(top, d)
        maxdeg.append(top)
    L_out = 0
    for cand in range(L, -1, -1):
        ok = all(maxdeg[i] + maxdeg[j] <= A.cutoff
                 for i in range(cand + 1) for j in range(cand + 1 - i))
        if ok:
            L_out = cand
            break
    L = L_out
    flat: list[Vec] = [v for sec in sections for v in sec]
    level_of: list[int] = [k for k, sec in enumerate(sections) for _ in sec]
    solver = SpanSolver(fld, D, flat)
    if solver.rank != D:
        raise DomainError("sections do not span; chain is not a filtration")
    # columns of the change of basis (standard coordinates -> section coordinates)
    phi_cols: list[Vec] = []
    for t in range(D):
        coeffs = solver.express({t: fld.one()})
        assert coeffs is not None
        phi_cols.append({i: c for i, c in enumerate(coeffs) if not fld.is_zero(c)})

    def phi(vec: Vec) -> Vec:
        out: Vec = {}
        for t, v in vec.items():
            for i, c in phi_cols[t].items():
                s = fld.add(out.get(i, fld.zero()), fld.mul(v, c))
                if fld.is_zero(s):
                    out.pop(i, None)
                else:
                    out[i] = s
        return out

    def phi_pair(vec: Vec) -> Vec:
        out: Vec = {}
        for g, v in vec.items():
            g1, g2 = g // D, g % D
            for f1, a in phi_cols[g1].items():
                base = f1 * D
                va = fld.mul(v, a)
                for f2, b in phi_cols[g2].items():
                    idx = base + f2
                    s = fld.add(out.get(idx, fld.zero()), fld.mul(va, b))
                    if fld.is_zero(s):
                        out.pop(idx, None)
                    else:
                        out[idx] = s
        return out

    dims_gr = tuple(len(sec) for sec in sections)
    start = [0] * len(sections)
    for k in range(1, len(sections)):
        start[k] = start[k - 1] + dims_gr[k - 1]

    def witness_error(kind: str, info: tuple) -> None:
        raise ShapeError(f"filtration incompatible with {kind} at levels {info}")

    mul_gr: dict[tuple[int, int], Mat] = {}
    braid_gr: dict[tuple[int, int], Mat] = {}
    comul_gr: dict[tuple[int, int], Mat] = {}
    for i in range(L + 1):
        for j in range(L + 1 - i):
            tgt = i + j
            m = Mat.zeros(fld, dims_gr[tgt], dims_gr[i] * dims_gr[j])
            cbl = Mat.zeros(fld, dims_gr[j] * dims_gr[i], dims_gr[i] * dims_gr[j])
            for a, u in enumerate(sections[i]):
                for b, v in enumerate(sections[j]):
                    col = a * dims_gr[j] + b
                    prod = phi(A.mul_pair_vec(u, v))
                    for f, c in prod.items():
                        if level_of[f] > tgt:
                            if check:
                                witness_error("the algebra structure", (i, j))
                        elif level_of[f] == tgt:
                            m.rows[f - start[tgt]][col] = c
                    braided = phi_pair(A.braid_pair_vec(u, v))
                    for idx, c in braided.items():
                        f1, f2 = idx // D, idx % D
                        if level_of[f1] > j or level_of[f2] > i:
                            if check:
                                witness_error("the braiding", (i, j))
                        elif level_of[f1] == j and level_of[f2] == i:
                            row = (f1 - start[j]) * dims_gr[i] + (f2 - start[i])
                            cbl.rows[row][col] = c
            mul_gr[(i, j)] = m
            braid_gr[(i, j)] = cbl
    for k in range(L + 1):
        for i in range(k + 1):
            j = k - i
            m = Mat.zeros(fld, dims_gr[i] * dims_gr[j], dims_gr[k])
            for col, u in enumerate(sections[k]):
                img = phi_pair(A.comul_vec(u))
                for idx, c in img.items():
                    f1, f2 = idx // D, idx % D
                    if level_of[f1] + level_of[f2] > k:
                        if check:
                            witness_error("the coalgebra structure", (k,))
                    elif level_of[f1] == i and level_of[f2] == j:
                        row = (f1 - start[i]) * dims_gr[j] + (f2 - start[j])
                        m.rows[row][col] = c
            comul_gr[(i, j)] = m

    unit_total = A.embed(0, A.unit)
    unit_phi = phi(unit_total)
    unit_gr: Vec = {}
    for f, c in unit_phi.items():
        if level_of[f] != 0:
            raise DomainError("unit does not lie in the bottom of the chain")
        unit_gr[f - start[0]] = c
    # counit on gr^0 via any section representative
    counit_gr: Vec = {}
    for idx, s0 in enumerate(sections[0]):
        acc = fld.zero()
        for g, v in s0.items():
            d, loc = A.block_of(g)
            if d == 0:
                acc = fld.add(acc, fld.mul(A.counit.get(loc, fld.zero()), v))
        if not fld.is_zero(acc):
            counit_gr[idx] = acc
    return TruncatedBraidedBialgebra(
        field=fld, dims=dims_gr[:L + 1], mul=mul_gr, comul=comul_gr, braid=braid_gr,
        unit=unit_gr, counit=counit_gr)


# ---------------------------------------------------------------------------
# universal lift of a degree-one map


def extend_algebra_map(
    tensor: TruncatedTensorBialgebra,
    f: Mat,
    target: TruncatedBraidedBialgebra,
) -> tuple[list[Mat], bool]:
    """Lift f : V -> A^1 to the graded algebra map T(V, c) -> A.

    Requires f to intertwine the braidings (checked).  Returns the list of
    degree components and a flag telling whether the lift was additionally
    verified to be a coalgebra map (done when Im f lies inside the primitives
    of the target).
    """
    space = tensor.space
    fld = tensor.field
    if fld != target.field:
        raise DomainError("domain and target live over different fields")
    if (f.nrows, f.ncols) != (target.dims[1] if len(target.dims) > 1 else 0, space.dim):
        raise ShapeError("f must map V into the degree-1 component")
    cutoff = min(tensor.cutoff, target.cutoff)
    # braided-map precondition: c_A (f (x) f) = (f (x) f) c_V
    ff = f.kron(f)
    lhs = target.braid[(1, 1)] @ ff
    rhs = ff @ space.braiding
    if not (lhs - rhs).is_zero():
        raise DomainError("f does not intertwine the braidings")
    maps: list[Mat] = []
    unit_col = Mat(fld, target.dims[0], 1,
                   [{0: v} if not fld.is_zero(v) else {} for v in
                    [target.unit.get(i, fld.zero()) for i in range(target.dims[0])]])
    maps.append(unit_col)
    if cutoff >= 1:
        maps.append(f)
    for d in range(2, cutoff + 1):
        maps.append(target.mul[(d - 1, 1)] @ maps[d - 1].kron(f))
    # coalgebra-map verification when the image is primitive
    prim = primitives(target)
    img_in_p = True
    p1 = prim.by_degree.get(1, Subspace.zero(fld, target.dims[1] if len(target.dims) > 1 else 0))
    for col in f.columns():
        if not p1.contains(col):
            img_in_p = False
            break
    if img_in_p:
        for total in range(cutoff + 1):
            for p in range(total + 1):
                q = total - p
                lhs = target.comul[(p, q)] @ maps[total]
                rhs = maps[p].kron(maps[q]) @ tensor.comul_block(p, q)
                if not (lhs - rhs).is_zero():
                    raise ShapeError(
                        f"lift fails to be a coalgebra map at bidegree ({p},{q})")
    return maps, img_in_p
