"""Sparse exact matrices and subspaces against dense brute-force oracles."""

import random
from fractions import Fraction

from braidkit.linalg import Mat, SpanSolver, Subspace, image, kernel, rank
from braidkit.scalars import QQ, PrimeField

F5 = PrimeField(5)


def _random_mat(fld, rng, nrows, ncols, density=0.5):
    m = Mat.zeros(fld, nrows, ncols)
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                v = fld.from_int(rng.randint(-4, 4))
                if not fld.is_zero(v):
                    m.rows[i][j] = v
    return m


def _dense_mul(fld, a, b):
    n, k, m = len(a), len(a[0]) if a else 0, len(b[0]) if b else 0
    out = [[fld.zero()] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if fld.is_zero(a[i][t]):
                continue
            for j in range(m):
                out[i][j] = fld.add(out[i][j], fld.mul(a[i][t], b[t][j]))
    return out


def test_matmul_against_dense():
    rng = random.Random(7)
    for fld in (QQ, F5):
        for _ in range(15):
            a = _random_mat(fld, rng, rng.randint(1, 6), rng.randint(1, 6))
            b = _random_mat(fld, rng, a.ncols, rng.randint(1, 6))
            assert (a @ b).to_dense() == _dense_mul(fld, a.to_dense(), b.to_dense())


def test_kron_on_units():
    a = Mat.from_rows(QQ, [[Fraction(2), Fraction(0)], [Fraction(1), Fraction(3)]])
    b = Mat.identity(QQ, 3)
    k = a.kron(b)
    assert k.nrows == k.ncols == 6
    assert k.entry(0, 0) == Fraction(2)
    assert k.entry(3, 0) == Fraction(1)
    assert k.entry(4, 1) == Fraction(1)


def test_apply_matches_matmul():
    rng = random.Random(11)
    a = _random_mat(QQ, rng, 5, 4)
    x = {1: Fraction(2), 3: Fraction(-1)}
    col = Mat(QQ, 4, 1, [({0: x[j]} if j in x else {}) for j in range(4)])
    assert a.apply(x) == {i: row[0] for i, row in enumerate((a @ col).rows) if row}


def test_rank_and_kernel_dimensions():
    rng = random.Random(23)
    for fld in (QQ, F5):
        for _ in range(20):
            m = _random_mat(fld, rng, rng.randint(1, 7), rng.randint(1, 7))
            r = rank(m)
            ker = kernel(m)
            img = image(m)
            assert r + ker.dim == m.ncols
            assert img.dim == r
            for row in ker.rows:
                assert not m.apply(row)


def test_subspace_equality_is_canonical():
    v1 = [{0: Fraction(1), 1: Fraction(2)}, {1: Fraction(1), 2: Fraction(1)}]
    v2 = [{0: Fraction(2), 1: Fraction(6), 2: Fraction(2)},
          {1: Fraction(-1), 2: Fraction(-1)}]
    s1 = Subspace.from_vectors(QQ, 3, v1)
    s2 = Subspace.from_vectors(QQ, 3, v2)
    assert s1 == s2
    assert s1.dim == 2


def test_sum_and_intersection():
    rng = random.Random(31)
    for _ in range(15):
        amb = rng.randint(2, 6)
        a = Subspace.from_vectors(
            QQ, amb, [_random_mat(QQ, rng, 1, amb).rows[0] for _ in range(rng.randint(1, 3))])
        b = Subspace.from_vectors(
            QQ, amb, [_random_mat(QQ, rng, 1, amb).rows[0] for _ in range(rng.randint(1, 3))])
        cap = a.intersect(b)
        union = a.sum(b)
        # modular law of dimensions
        assert cap.dim + union.dim == a.dim + b.dim
        for row in cap.rows:
            assert a.contains(row) and b.contains(row)


def test_tensor_of_subspaces():
    a = Subspace.from_vectors(QQ, 2, [{0: Fraction(1)}])
    b = Subspace.from_vectors(QQ, 2, [{0: Fraction(1)}, {1: Fraction(1)}])
    t = a.tensor(b)
    assert t.dim == 2
    assert t.ambient == 4
    assert t.contains({0: Fraction(1)}) and t.contains({1: Fraction(1)})
    assert not t.contains({2: Fraction(1)})


def test_complement_coords():
    s = Subspace.from_vectors(QQ, 4, [{0: Fraction(1), 2: Fraction(5)}])
    assert s.complement_coords() == [1, 2, 3]


def test_span_solver_roundtrip():
    rng = random.Random(47)
    for fld in (QQ, F5):
        for _ in range(10):
            amb = rng.randint(2, 6)
            basis = [_random_mat(fld, rng, 1, amb).rows[0] for _ in range(rng.randint(1, amb))]
            solver = SpanSolver(fld, amb, basis)
            coeffs = [fld.from_int(rng.randint(-3, 3)) for _ in basis]
            vec = {}
            for c, b in zip(coeffs, basis):
                for j, v in b.items():
                    s = fld.add(vec.get(j, fld.zero()), fld.mul(c, v))
                    if fld.is_zero(s):
                        vec.pop(j, None)
                    else:
                        vec[j] = s
            got = solver.express(vec)
            assert got is not None
            rebuilt = {}
            for c, b in zip(got, basis):
                for j, v in b.items():
                    s = fld.add(rebuilt.get(j, fld.zero()), fld.mul(c, v))
                    if fld.is_zero(s):
                        rebuilt.pop(j, None)
                    else:
                        rebuilt[j] = s
            assert rebuilt == vec


def test_span_solver_outside():
    solver = SpanSolver(QQ, 3, [{0: Fraction(1), 1: Fraction(1)}])
    assert solver.express({2: Fraction(1)}) is None
