from hypothesis import given
from hypothesis import strategies as st
import pytest

from bruteforce import kernel_by_enumeration, solutions_by_enumeration, span_mod
from strategies import int_matrices, ring_matrices
from homalg.errors import DimensionError
from homalg.exactlin import ZZ, LinearSystem, Matrix, Zmod, kernel_basis, snf, solve
from homalg.oracles import det, invariant_factors_by_minors


def M(rows, ring=ZZ, cols=None):
    return Matrix.from_rows(ring, rows, cols)


def test_snf_diag_2_3():
    s = snf(M([[2, 0], [0, 3]]))
    assert s.d.to_rows() == [[1, 0], [0, 6]]
    assert s.rank == 2


def test_snf_over_z4_keeps_2():
    s = snf(M([[2]], Zmod(4)))
    assert s.d.to_rows() == [[2]]


def test_snf_over_z2_normalizes_units():
    s = snf(M([[3, 1], [1, 1]], Zmod(2)))
    assert s.invariant_factors == [1]


def test_snf_zero_and_empty():
    assert snf(Matrix.zeros(ZZ, 2, 3)).rank == 0
    assert snf(Matrix.zeros(ZZ, 0, 3)).d.shape == (0, 3)


def _is_diagonal_chain(s, modulus=None):
    d = s.d
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d[i, j]:
                return False
    diag = s.invariant_factors
    if any(x <= 0 for x in diag) or any(diag[i + 1] % diag[i] for i in range(len(diag) - 1)):
        return False
    if modulus is not None and any(modulus % x for x in diag):
        return False
    return all(x == 0 for x in s.diagonal[s.rank:])


def _unimodular(u):
    if u.ring.is_integers:
        return abs(det(u.to_rows())) == 1
    from math import gcd
    return gcd(det(u.lift().to_rows()), u.ring.modulus) == 1


@given(ring_matrices())
def test_snf_certificate(a):
    s = snf(a)
    assert s.u @ a @ s.v == s.d
    assert _unimodular(s.u) and _unimodular(s.v)
    assert _is_diagonal_chain(s, a.ring.modulus)


@given(int_matrices(max_rows=4, max_cols=4, bound=20))
def test_snf_matches_minor_oracle(a):
    assert snf(a).invariant_factors == invariant_factors_by_minors(a.to_rows(), a.cols)


def test_kernel_examples():
    k = kernel_basis(M([[2]], Zmod(4)))
    assert k.to_rows() == [[2]]
    k = kernel_basis(Matrix.zeros(ZZ, 1, 2))
    assert sorted(map(tuple, k.T.to_rows())) == [(0, 1), (1, 0)]


@given(ring_matrices(max_rows=3, max_cols=3))
def test_kernel_columns_are_in_kernel(a):
    k = kernel_basis(a)
    assert (a @ k).is_zero()


@given(st.sampled_from([2, 3, 4, 6]), st.data())
def test_kernel_generates_full_kernel_mod_m(m, data):
    a = data.draw(int_matrices(max_rows=3, max_cols=3, ring=Zmod(m)))
    k = kernel_basis(a)
    gen = span_mod([list(k.column(j)) for j in range(k.cols)], a.cols, m)
    assert gen == set(kernel_by_enumeration(a.to_rows(), a.cols, m))


@given(int_matrices(max_rows=3, max_cols=3, min_cols=1))
def test_kernel_over_z_is_saturated(a):
    k = kernel_basis(a)
    # a lattice basis of a saturated sublattice has gcd of maximal minors 1
    if k.cols:
        assert invariant_factors_by_minors(k.to_rows(), k.cols) == [1] * k.cols
    assert k.cols == a.cols - snf(a).rank


def test_solve_no_solution():
    assert solve(M([[2]]), [3]) is None
    assert solve(M([[2]], Zmod(4)), [1]) is None
    assert solve(M([[2]], Zmod(4)), [2]) is not None


def test_solve_dimension_error():
    with pytest.raises(DimensionError):
        solve(M([[1, 2]]), [1, 2])


@given(st.sampled_from([2, 3, 4, 6]), st.data())
def test_solve_matches_enumeration(m, data):
    a = data.draw(int_matrices(max_rows=3, max_cols=3, min_rows=1, ring=Zmod(m)))
    b = data.draw(st.lists(st.integers(0, m - 1), min_size=a.rows, max_size=a.rows))
    x = solve(a, b)
    sols = solutions_by_enumeration(a.to_rows(), a.cols, b, m)
    assert (x is None) == (not sols)
    if x is not None:
        assert tuple(x.entries) in sols


@given(int_matrices(max_rows=3, max_cols=3, min_rows=1), st.data())
def test_solve_over_z_consistent(a, data):
    y = data.draw(st.lists(st.integers(-5, 5), min_size=a.cols, max_size=a.cols))
    b = (a @ Matrix.column_vector(ZZ, y)).entries
    x = solve(a, b)
    assert x is not None and (a @ x).entries == b


def test_linear_system_sylvester():
    # find X with A X - X B = C for a known X0
    a = M([[1, 2], [0, 1]])
    b = M([[3, 0], [1, 3]])
    x0 = M([[1, -1], [2, 5]])
    c = a @ x0 - x0 @ b
    ls = LinearSystem(ZZ)
    x = ls.unknown(2, 2)
    ls.equation([(a, x, None), (-Matrix.identity(ZZ, 2), x, b)], c)
    (sol,) = ls.solve()
    assert a @ sol - sol @ b == c


def test_linear_system_unsolvable_and_empty():
    ls = LinearSystem(ZZ)
    x = ls.unknown(1, 1)
    ls.equation([(M([[2]]), x, None)], M([[1]]))
    assert ls.solve() is None
    ls = LinearSystem(ZZ)
    ls.unknown(0, 3)
    assert ls.solve()[0].shape == (0, 3)


def test_matrix_ops():
    a = M([[1, 2], [3, 4]])
    assert a.T.to_rows() == [[1, 3], [2, 4]]
    assert a.kron(Matrix.identity(ZZ, 1)) == a
    assert a.hstack(a).shape == (2, 4)
    assert a.block_diag(M([[5]])).to_rows() == [[1, 2, 0], [3, 4, 0], [0, 0, 5]]
    assert M([[5]], Zmod(4)).to_rows() == [[1]]
    with pytest.raises(DimensionError):
        a @ M([[1, 2, 3]])
