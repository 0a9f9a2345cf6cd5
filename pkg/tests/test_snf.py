import math
import random
from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from okc.algebra import RowLattice, matmul, quotient_basis, smith_normal_form


def det(M):
    # Fraction Gaussian elimination, independent of the library
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        out *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(out)


def determinantal_divisors(M):
    m, n = len(M), len(M[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def factors_oracle(M):
    d = determinantal_divisors(M)
    return tuple(d[k] // (d[k - 1] if k else 1) for k in range(len(d)))


def test_small_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).factors == (1, 1)
    assert smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()
    assert smith_normal_form([]).factors == ()


def test_quotient_examples():
    q = quotient_basis([(1, -1)], 2)
    assert (q.free_rank, q.torsion) == (1, ())
    q = quotient_basis([(2,)], 1)
    assert (q.free_rank, q.torsion) == (0, (2,))
    q = quotient_basis([(1, 0, 0), (0, 2, 0)], 3)
    assert (q.free_rank, q.torsion, q.representatives) == (1, (2,), (2,))
    assert not q.integral


def test_snf_against_minor_oracle_seeded():
    rng = random.Random(2024)
    for _ in range(150):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        if m * n > 20:
            # keep the minor expansion cheap
            n = max(1, 20 // m)
        M = [[rng.randint(-9, 9) if rng.random() < 0.7 else 0 for _ in range(n)] for _ in range(m)]
        res = smith_normal_form(M)
        assert res.factors == factors_oracle(M)
        assert matmul(matmul(res.U, M), res.V) == res.D
        assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
        for a, b in zip(res.factors, res.factors[1:]):
            assert b % a == 0


def test_six_by_six_full_rank():
    rng = random.Random(5)
    M = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(6)]
    res = smith_normal_form(M, transforms=False)
    assert math.prod(res.factors) == abs(det(M))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=4), st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_lattice_reduction_is_canonical(rows, coeffs):
    L = RowLattice(rows, 4)
    v = coeffs
    shift = [0] * 4
    for k, r in zip(coeffs, rows):
        shift = [a + k * b for a, b in zip(shift, r)]
    assert L.reduce(v) == L.reduce([a + b for a, b in zip(v, shift)])
    assert L.contains(shift)
    assert L.reduce(L.reduce(v)) == L.reduce(v)
