import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from homalg.chain import (
    direct_sum_complex, homology, identity_map, induced_on_homology, is_quasi_iso,
    make_chain_map, make_complex, zero_map,
)
from homalg.errors import DimensionError
from homalg.exactlin import ZZ, Matrix, Zmod
from homalg.fpmod import cyclic, free_module
from homalg.homotopy import (
    are_chain_homotopic, find_homotopy_inverse_witnesses, find_null_homotopy, find_splitting,
    homotopy_term, is_split_exact, make_raising_maps, perturb, verify_homotopy_equivalence,
    verify_null_homotopy, verify_splitting,
)
from homalg.randgen import random_complex, random_free_complex

Z = free_module(ZZ, 1)


def test_identity_on_disk_is_null_homotopic():
    c = make_complex({1: Z, 0: Z}, {1: [[1]]})
    s = find_null_homotopy(identity_map(c))
    assert s is not None and verify_null_homotopy(identity_map(c), s)
    assert s.level(0).map.to_rows() == [[1]]


def test_times_two_has_no_splitting():
    c = make_complex({1: Z, 0: Z}, {1: [[2]]})
    assert find_splitting(c) is None
    assert find_null_homotopy(identity_map(c)) is None


def test_nonsplit_exact_torsion():
    # 0 -> Z/2 -> Z/4 -> Z/2 -> 0 is exact and not split
    c = make_complex({2: cyclic(ZZ, 2), 1: cyclic(ZZ, 4), 0: cyclic(ZZ, 2)}, {2: [[2]], 1: [[1]]})
    assert not is_split_exact(c)
    assert find_null_homotopy(identity_map(c)) is None


def test_split_ses_over_z6():
    r = Zmod(6)
    c = make_complex({2: cyclic(r, 2), 1: free_module(r, 1), 0: cyclic(r, 3)}, {2: [[3]], 1: [[1]]})
    s = find_splitting(c)
    assert s is not None and verify_splitting(c, s)
    assert is_split_exact(c)


def test_raising_maps_shape_checked():
    c = make_complex({1: Z, 0: Z}, {1: [[1]]})
    with pytest.raises(DimensionError):
        make_raising_maps(c, c, {0: Matrix.identity(ZZ, 2)})


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 6]))
def test_null_homotopy_of_identity_iff_split(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    rng = random.Random(seed)
    rc = random_complex(rng, ring, 0, 3)
    s = find_null_homotopy(identity_map(rc.complex))
    assert (s is not None) == rc.split
    if rc.exact:
        assert (find_splitting(rc.complex) is not None) == rc.split


@given(st.integers(0, 2**32))
def test_perturbed_maps_agree_on_homology(seed):
    rng = random.Random(seed)
    c = random_free_complex(rng)
    levels = {}
    for n in c.degrees:
        a, b = c.module(n), c.module(n + 1)
        levels[n] = [[rng.randint(-2, 2) for _ in range(a.generators)] for _ in range(b.generators)]
    s = make_raising_maps(c, c, levels)
    g = identity_map(c)
    h = perturb(g, s)
    assert are_chain_homotopic(h, g) is not None
    assert verify_null_homotopy(h - g, s)
    for n in c.degrees:
        assert induced_on_homology(h, n).equals(induced_on_homology(g, n))
        assert homotopy_term(s, n).equals((h - g).level(n))


def test_homotopy_equivalence_with_disk():
    c = make_complex({0: Z})
    disk = make_complex({1: Z, 0: Z}, {1: [[1]]})
    d = direct_sum_complex(c, disk)
    f = make_chain_map(c, d, {0: [[1], [0]]})
    q = make_chain_map(d, c, {0: [[1, 0]]})
    w = find_homotopy_inverse_witnesses(f, q)
    assert w is not None
    assert verify_homotopy_equivalence(f, q, *w)


def test_quasi_iso_without_homotopy_inverse():
    p = make_complex({1: Z, 0: Z}, {1: [[2]]})
    t = make_complex({1: free_module(ZZ, 0), 0: cyclic(ZZ, 2)})
    f = make_chain_map(p, t, {0: [[1]]})
    assert is_quasi_iso(f)
    # any map Z/2 -> Z is zero, so the only candidate inverse is zero
    q = zero_map(t, p)
    assert find_homotopy_inverse_witnesses(f, q) is None
    assert str(homology(p, 0).decomposition) == "Z/2"


def test_homotopic_maps_found():
    c = make_complex({1: Z, 0: Z}, {1: [[1]]})
    assert are_chain_homotopic(identity_map(c), zero_map(c, c)) is not None
    e = make_complex({0: Z})
    two = make_chain_map(e, e, {0: [[2]]})
    assert are_chain_homotopic(two, identity_map(e)) is None
