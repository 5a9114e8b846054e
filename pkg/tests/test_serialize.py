import json
import random

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from strategies import ring_matrices
from homalg import serialize as ser
from homalg.errors import ParseError
from homalg.exactlin import ZZ, Zmod
from homalg.fpmod import is_isomorphic
from homalg.homotopy import find_null_homotopy
from homalg.chain import identity_map
from homalg.randgen import random_complex, random_module, random_ses_complexes, random_ses_modules
from homalg.resolve import free_resolution


def roundtrip(obj):
    return json.loads(ser.dumps(obj))


def test_rings():
    assert ser.ring_from_json("Z") == ZZ
    assert ser.ring_from_json("Z/6") == Zmod(6)
    assert ser.ring_from_json({"Zmod": "6"}) == Zmod(6)
    assert ser.ring_to_json(Zmod(6)) == {"Zmod": "6"}
    for bad in ("Q", {"Zmod": 1}, {"Zmod": "x"}, 3):
        with pytest.raises(ParseError):
            ser.ring_from_json(bad)


@given(ring_matrices())
def test_matrix_roundtrip(a):
    assert ser.matrix_from_json(roundtrip(ser.matrix_to_json(a))) == a


def test_matrix_big_entries_survive():
    from homalg.exactlin import Matrix
    a = Matrix.from_rows(ZZ, [[10**40, -3]])
    assert ser.matrix_from_json(roundtrip(ser.matrix_to_json(a))) == a


def test_bare_list_matrix_and_shape_check():
    a = ser.matrix_from_json([[1, 2], [3, 4]], ZZ)
    assert a.to_rows() == [[1, 2], [3, 4]]
    with pytest.raises(ParseError):
        ser.matrix_from_json([[1, 2], [3]], ZZ)
    with pytest.raises(ParseError):
        ser.matrix_from_json([[1, 2]], ZZ, (2, 2))
    with pytest.raises(ParseError):
        ser.matrix_from_json([[1, True]], ZZ)


@pytest.mark.parametrize("text, expect", [
    ("Z", "Z"), ("Z^2 + Z/4", "Z^2 ⊕ Z/4"), ("(Z/3)^2 ⊕ Z/2", "Z/3 ⊕ Z/6"), ("0", "0"), ("Z/1", "0"),
])
def test_shorthand(text, expect):
    assert str(ser.parse_module_shorthand(text).decomposition) == expect


def test_shorthand_over_zmod():
    r = Zmod(4)
    d = ser.parse_module_shorthand("R + Z/2", r).decomposition
    assert d.free_rank == 1 and str(d) == "Z/4 ⊕ Z/2"
    for bad in ("Z/3", "Z"):
        with pytest.raises(ParseError):
            ser.parse_module_shorthand(bad, r)
    with pytest.raises(ParseError):
        ser.parse_module_shorthand("Q^2")


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 6]))
@settings(max_examples=30)
def test_module_and_complex_roundtrip(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    rng = random.Random(seed)
    m = random_module(rng, ring)
    assert ser.module_from_json(roundtrip(ser.module_to_json(m))) == m
    d = m.decomposition
    assert ser.decomposition_from_json(roundtrip(ser.decomposition_to_json(d))) == d
    c = random_complex(rng, ring, 0, 2).complex
    assert ser.complex_from_json(roundtrip(ser.complex_to_json(c))) == c


@given(st.integers(0, 2**32))
@settings(max_examples=20)
def test_sequence_roundtrips(seed):
    rng = random.Random(seed)
    ses = random_ses_complexes(rng)
    back = ser.ses_complexes_from_json(roundtrip(ser.ses_complexes_to_json(ses)))
    assert back.f.equals(ses.f) and back.g.equals(ses.g)
    sm = random_ses_modules(rng, rng.choice([ZZ, Zmod(6)]))
    back2 = ser.ses_modules_from_json(roundtrip(ser.ses_modules_to_json(sm)))
    assert back2.f.map == sm.f.map and back2.g.map == sm.g.map


def test_hom_chain_map_and_raising_roundtrip():
    rng = random.Random(5)
    rc = random_complex(rng, ZZ, 0, 2, kind="split")
    c = rc.complex
    u = identity_map(c)
    back = ser.chain_map_from_json(roundtrip(ser.chain_map_to_json(u)))
    assert back.equals(u)
    s = find_null_homotopy(u)
    s2 = ser.raising_maps_from_json(roundtrip(ser.raising_maps_to_json(s)), c, c)
    assert all(s2.level(n).equals(s.level(n)) for n in c.degrees)
    h = u.level(0)
    assert ser.hom_from_json(roundtrip(ser.hom_to_json(h))).map == h.map


@given(st.integers(0, 2**32), st.sampled_from(["Z", 4, 9]))
@settings(max_examples=20)
def test_resolution_roundtrip(seed, r):
    ring = ZZ if r == "Z" else Zmod(r)
    res = free_resolution(random_module(random.Random(seed), ring), 3)
    back = ser.resolution_from_json(roundtrip(ser.resolution_to_json(res)))
    assert back.free_ranks == res.free_ranks and back.complete == res.complete
    assert is_isomorphic(back.target, res.target)


def test_complex_parse_errors():
    with pytest.raises(ParseError):
        ser.complex_from_json({"ring": "Z", "modules": {}})
    with pytest.raises(ParseError):
        ser.complex_from_json({"ring": "Z", "modules": {"0": "Z"}, "boundaries": {"3": [[1]]}})
    with pytest.raises(ParseError):
        ser.complex_from_json({"ring": "Z", "modules": {"x": "Z"}})


def test_load_json_reports_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "ring": "Z",\n  oops\n}\n')
    with pytest.raises(ParseError) as e:
        ser.load_json(p)
    assert f"{p}:3:" in str(e.value)
    with pytest.raises(ParseError):
        ser.load_json(tmp_path / "missing.json")
