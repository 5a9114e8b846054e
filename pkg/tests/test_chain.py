import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from homalg.chain import (
    ChainMap, direct_sum_complex, homology, homology_data, identity_map, induced_on_homology,
    is_exact, is_exact_at, is_quasi_iso, make_chain_map, make_complex, non_exact_degrees,
    restrict, ses_to_complex, zero_complex, zero_map,
)
from homalg.errors import DimensionError, NotAComplex, SquareFails
from homalg.exactlin import ZZ, Zmod
from homalg.fpmod import cyclic, free_module, from_decomposition, is_isomorphic, make_hom
from homalg.randgen import random_complex

Z = free_module(ZZ, 1)


def test_not_a_complex():
    with pytest.raises(NotAComplex) as exc:
        make_complex({0: Z, 1: Z, 2: Z}, {2: [[1]], 1: [[1]]})
    assert exc.value.degree == 2


def test_boundary_outside_window():
    with pytest.raises(DimensionError):
        make_complex({0: Z, 1: Z}, {3: [[1]]})


def test_times_two_on_z():
    c = make_complex({1: Z, 0: Z}, {1: [[2]]})
    assert str(homology(c, 0).decomposition) == "Z/2"
    assert homology(c, 1).is_zero
    assert non_exact_degrees(c) == [0]


def test_times_two_on_z4_end():
    r = Zmod(4)
    f = free_module(r, 1)
    c = make_complex({1: f, 0: f}, {1: [[2]]})
    assert str(homology(c, 0).decomposition) == "Z/2"
    assert str(homology(c, 1).decomposition) == "Z/2"


def test_ses_complex_is_exact():
    c = ses_to_complex(Z, Z, cyclic(ZZ, 2), make_hom(Z, Z, [[2]]), make_hom(Z, cyclic(ZZ, 2), [[1]]))
    assert c.module(2) == Z and c.module(0) == cyclic(ZZ, 2)
    assert is_exact(c)


def test_homology_data_roundtrip():
    c = make_complex({2: Z, 1: free_module(ZZ, 2), 0: Z}, {2: [[2], [0]], 1: [[0, 0]]})
    hd = homology_data(c, 1)
    assert str(hd.homology.decomposition) == "Z ⊕ Z/2"
    for coords in [(1, 0), (0, 1), (1, 1)]:
        z = hd.representative(coords)
        assert hd.classify(z) == hd.homology.normal_form(coords)
    with pytest.raises(ValueError):
        homology_data(make_complex({1: Z, 0: Z}, {1: [[1]]}), 1).classify((1,))


def _expected(pieces, n, ring):
    free, tors = 0, []
    for p in pieces:
        f, t = p.homology.get(n, (0, ()))
        free += f
        tors.extend(t)
    return from_decomposition(ring, free, tors)


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 6, 9]))
def test_random_complex_homology_matches_pieces(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    rng = random.Random(seed)
    rc = random_complex(rng, ring, 0, 3)
    for n in rc.complex.degrees:
        assert is_isomorphic(homology(rc.complex, n), _expected(rc.pieces, n, ring))
    assert is_exact(rc.complex) == rc.exact


def test_square_fails():
    c = make_complex({1: Z, 0: Z}, {1: [[1]]})
    d = make_complex({1: Z, 0: Z}, {1: [[2]]})
    with pytest.raises(SquareFails):
        make_chain_map(c, d, {1: [[1]], 0: [[1]]})
    u = make_chain_map(c, d, {1: [[2]], 0: [[4]]})
    assert isinstance(u, ChainMap)


def test_induced_on_homology_times_3():
    c = make_complex({0: Z})
    u = make_chain_map(c, c, {0: [[3]]})
    h = induced_on_homology(u, 0)
    assert h.apply([1]) == (3,)
    assert not is_quasi_iso(u)
    assert is_quasi_iso(identity_map(c))


@given(st.integers(0, 2**32))
def test_functoriality(seed):
    rng = random.Random(seed)
    c = random_complex(rng, ZZ, 0, 2, kind="perturbed").complex
    u = identity_map(c) + identity_map(c)
    v = u @ u
    for n in c.degrees:
        lhs = induced_on_homology(v, n)
        rhs = induced_on_homology(u, n) @ induced_on_homology(u, n)
        assert lhs.equals(rhs)
        assert induced_on_homology(zero_map(c, c), n).is_zero()


def test_exactness_helpers_and_sums():
    c = make_complex({1: Z, 0: Z}, {1: [[1]]})
    d = make_complex({1: Z, 0: Z}, {1: [[3]]})
    s = direct_sum_complex(c, d)
    assert is_exact_at(s, 1) and not is_exact_at(s, 0)
    assert str(homology(s, 0).decomposition) == "Z/3"
    assert restrict(s, 0, 0).hi == 0
    assert is_exact(zero_complex(ZZ, -1, 2))
