import random
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from conftest import FIXTURES
from homalg.chain import homology
from homalg.derived import universal_coefficients
from homalg.errors import ParseError
from homalg.exactlin import ZZ, Zmod
from homalg.fpmod import cyclic
from homalg.simplicial import (
    MAX_DIM, SimplicialComplex, boundary_matrix, chain_complex_of, circle, dump_facets,
    format_report, homology_report, hollow_tetrahedron, klein_bottle, load_facets,
    parse_facets, point, rp2, simplex, sphere,
)


def report(k):
    return [str(d) for d in homology_report(k)]


def test_fixture_homology():
    assert report(point()) == ["Z"]
    assert report(hollow_tetrahedron()) == ["Z", "0", "Z"]
    assert report(circle()) == ["Z", "Z"]
    assert report(rp2()) == ["Z", "Z/2", "0"]
    assert report(klein_bottle()) == ["Z", "Z ⊕ Z/2", "0"]
    assert report(simplex(3)) == ["Z", "0", "0", "0"]
    assert report(sphere(3)) == ["Z", "0", "0", "Z"]


def test_f_vectors():
    assert hollow_tetrahedron().f_vector() == [4, 6, 4]
    assert rp2().f_vector() == [6, 15, 10]
    assert klein_bottle().f_vector() == [8, 24, 16]
    assert rp2().euler_characteristic() == 1
    assert klein_bottle().euler_characteristic() == 0


def test_format_report():
    assert format_report(homology_report(hollow_tetrahedron())) == "H0 = Z, H1 = 0, H2 = Z"


def test_boundary_matrix_signs():
    d = boundary_matrix(simplex(2), 2)
    # faces (1,2), (0,2), (0,1) with signs +, -, +
    assert d.T.to_rows() == [[1, -1, 1]]
    assert (boundary_matrix(simplex(3), 1) @ boundary_matrix(simplex(3), 2)).is_zero()


@pytest.mark.parametrize("k", [hollow_tetrahedron(), rp2(), klein_bottle(), sphere(3)])
def test_boundary_squares_to_zero(k):
    for n in range(2, k.dimension + 1):
        assert (boundary_matrix(k, n - 1) @ boundary_matrix(k, n)).is_zero()


def test_klein_bottle_is_closed_surface():
    k = klein_bottle()
    edges = {}
    for f in k.facets:
        for e in combinations(f, 2):
            edges[e] = edges.get(e, 0) + 1
    assert set(edges.values()) == {2}
    # vertex links are cycles
    for v in k.vertices:
        link = [tuple(x for x in f if x != v) for f in k.facets if v in f]
        deg = {}
        for a, b in link:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        assert set(deg.values()) == {2}


def test_mod_2_homology_of_rp2():
    c = chain_complex_of(rp2(), Zmod(2))
    assert [str(homology(c, n).decomposition) for n in range(3)] == ["Z/2", "Z/2", "Z/2"]


def _components(k):
    parent = {v: v for v in k.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for a, b in k.simplices(1):
        parent[find(a)] = find(b)
    return len({find(v) for v in k.vertices})


@st.composite
def random_complexes(draw):
    n = draw(st.integers(1, 7))
    facets = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True),
                           min_size=1, max_size=8))
    return SimplicialComplex.from_facets(facets)


@given(random_complexes())
@settings(max_examples=50)
def test_h0_counts_components(k):
    h0 = homology_report(k)[0]
    assert h0.free_rank == _components(k) and not h0.invariant_factors


@given(random_complexes())
@settings(max_examples=50)
def test_euler_characteristic_from_ranks(k):
    rep = homology_report(k)
    assert sum((-1) ** n * d.free_rank for n, d in enumerate(rep)) == k.euler_characteristic()


@given(random_complexes(), st.randoms(use_true_random=False))
@settings(max_examples=30)
def test_relabel_invariance(k, rnd):
    vs = k.vertices
    targets = rnd.sample(range(50), len(vs))
    k2 = k.relabel(dict(zip(vs, targets)))
    assert homology_report(k2) == homology_report(k)


def test_disjoint_union_adds_homology():
    u = rp2().disjoint_union(circle())
    rep = homology_report(u)
    assert [str(d) for d in rep] == ["Z^2", "Z ⊕ Z/2", "0"]


@pytest.mark.parametrize("k", [rp2(), klein_bottle()])
def test_universal_coefficients_on_surfaces(k):
    c = chain_complex_of(k)
    for g in (2, 3):
        for n in c.degrees:
            lhs, rhs = universal_coefficients(c, cyclic(ZZ, g), n)
            assert str(lhs.decomposition) == str(rhs.decomposition)


def test_from_facets_drops_faces():
    k = SimplicialComplex.from_facets([[0, 1, 2], [0, 1], [2]])
    assert k.facets == ((0, 1, 2),)
    with pytest.raises(ValueError):
        SimplicialComplex.from_facets([[]])
    with pytest.raises(ValueError):
        SimplicialComplex.from_facets([list(range(MAX_DIM + 2))])


def test_parse_and_dump_roundtrip():
    k = klein_bottle()
    assert parse_facets(dump_facets(k)) == k
    assert parse_facets("# comment\n0 1 2\n\n1 2 3  # trailing\n").f_vector() == [4, 5, 2]


@pytest.mark.parametrize("text, fragment", [
    ("0 1\nx 2\n", "<string>:2:"),
    ("0 -1\n", "nonnegative"),
    ("# only a comment\n", "no facets"),
    (" ".join(map(str, range(MAX_DIM + 2))), "exceeds"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_facets(text)
    assert fragment in str(e.value)


def test_fixture_files():
    expected = {"tetra_hollow.txt": ["Z", "0", "Z"], "circle.txt": ["Z", "Z"],
                "rp2.txt": ["Z", "Z/2", "0"], "klein_bottle.txt": ["Z", "Z ⊕ Z/2", "0"]}
    for name, exp in expected.items():
        assert report(load_facets(FIXTURES / name)) == exp


def test_random_seeded_unions():
    rng = random.Random(7)
    pieces = [rp2(), circle(), point(), klein_bottle()]
    k = rng.choice(pieces)
    for _ in range(2):
        k = k.disjoint_union(rng.choice(pieces))
    assert homology_report(k)[0].free_rank == 3
