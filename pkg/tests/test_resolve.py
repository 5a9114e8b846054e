import random
from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from homalg.chain import homology, identity_map, is_exact, non_exact_degrees
from homalg.diagram import ShortExactSeqModules
from homalg.errors import NotExact, NotSurjective
from homalg.exactlin import ZZ, Zmod
from homalg.fpmod import cyclic, direct_sum, free_module, from_decomposition, identity_hom, is_isomorphic, make_hom
from homalg.homotopy import are_chain_homotopic
from homalg.randgen import random_hom, random_module
from homalg.resolve import (
    find_splitting_ses, free_cover, free_resolution, is_projective, lift_between_resolutions,
    lift_through_surjection, make_resolution,
)

Z = free_module(ZZ, 1)


def test_lift_z2_over_z4_fails():
    z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
    q = make_hom(z4, z2, [[1]])
    assert lift_through_surjection(identity_hom(z2), q) is None


def test_lift_free_always_works():
    z2, z4 = cyclic(ZZ, 2), cyclic(ZZ, 4)
    q = make_hom(z4, z2, [[1]])
    h = lift_through_surjection(make_hom(Z, z2, [[1]]), q)
    assert h is not None and (q @ h).equals(make_hom(Z, z2, [[1]]))


def test_lift_requires_surjection():
    with pytest.raises(NotSurjective):
        lift_through_surjection(identity_hom(Z), make_hom(Z, Z, [[2]]))


def test_split_ses_example():
    b, (i1, i2), (p1, p2) = direct_sum(Z, cyclic(ZZ, 2))
    ses = ShortExactSeqModules(i1, p2)
    h = find_splitting_ses(ses)
    assert h is not None and (p2 @ h).equals(identity_hom(cyclic(ZZ, 2)))
    nonsplit = ShortExactSeqModules(make_hom(Z, Z, [[2]]), make_hom(Z, cyclic(ZZ, 2), [[1]]))
    assert find_splitting_ses(nonsplit) is None


def test_projectivity():
    assert is_projective(free_module(ZZ, 2))
    assert not is_projective(cyclic(ZZ, 3))
    r = Zmod(6)
    assert is_projective(cyclic(r, 2))       # Z/2 is a summand of Z/6
    assert not is_projective(cyclic(Zmod(4), 2))


def test_free_resolution_over_z():
    m = from_decomposition(ZZ, 1, [2, 6])
    r = free_resolution(m)
    assert r.complete and r.depth == 1
    assert is_exact(r.augmented_complex())
    assert is_isomorphic(homology(r.complex(), 0), m)


def test_periodic_resolution_over_z4():
    r = free_resolution(cyclic(Zmod(4), 2), depth=5)
    assert r.depth == 5 and not r.complete
    assert r.free_ranks == [1] * 6
    assert all(phi.map.to_rows() == [[2]] for phi in r.maps)
    assert not r.last_map_bijective


def test_over_z6_resolution_alternates():
    # the cover keeps the presentation generator, so Z/2 over Z/6 gets ×2, ×3, ×2, ...
    r = free_resolution(cyclic(Zmod(6), 2), depth=4)
    assert [gcd(phi.map[0, 0], 6) for phi in r.maps] == [2, 3, 2, 3]
    assert non_exact_degrees(r.augmented_complex()) == [4]
    assert is_projective(cyclic(Zmod(6), 2))


def test_make_resolution_checks_exactness():
    z2 = cyclic(ZZ, 2)
    r = make_resolution(z2, [[1]], [[[2]]])
    assert r.complete
    with pytest.raises(NotExact):
        make_resolution(z2, [[1]], [[[4]]])


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 6, 8, 9]))
@settings(max_examples=40)
def test_random_resolution_exact(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    rng = random.Random(seed)
    m = random_module(rng, ring)
    res = free_resolution(m, depth=3)
    bad = non_exact_degrees(res.augmented_complex())
    assert bad == ([] if res.complete else [res.depth])
    assert is_isomorphic(homology(res.complex(), 0), m)
    _, cover = free_cover(m)
    assert cover.codomain == m


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 6]))
@settings(max_examples=30)
def test_comparison_lift_unique_up_to_homotopy(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    rng = random.Random(seed)
    m, n, k = (random_module(rng, ring) for _ in range(3))
    f, g = random_hom(rng, m, n), random_hom(rng, n, k)
    pm, pn, pk = (free_resolution(x, depth=3) for x in (m, n, k))
    lf = lift_between_resolutions(f, pm, pn)
    lg = lift_between_resolutions(g, pn, pk)
    lgf = lift_between_resolutions(g @ f, pm, pk)
    assert lf.level(0).codomain == pn.module(0)
    # every lift covers its map on the augmentation
    for u, x, p, q in ((lf, f, pm, pn), (lg, g, pn, pk), (lgf, g @ f, pm, pk)):
        assert (q.augmentation @ u.level(0)).equals(x @ p.augmentation)
    if pm.complete:
        # homotopy uniqueness only makes sense without truncation at the top
        lid = lift_between_resolutions(identity_hom(m), pm, pm)
        assert are_chain_homotopic(lid, identity_map(lid.source)) is not None
