"""Write the example inputs in fixtures/ used by the CLI examples and tests.

    PYTHONPATH=src python3 scripts/make_fixtures.py
"""

from pathlib import Path

from homalg import serialize as ser
from homalg.acceptance import literal_modules_fixture, repaired_snake_fixture
from homalg.chain import make_complex, ses_to_complex
from homalg.exactlin import ZZ, Matrix, Zmod
from homalg.fpmod import ModuleHom, cyclic, free_module
from homalg.simplicial import circle, dump_facets, hollow_tetrahedron, klein_bottle, rp2

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def write(name, obj):
    (OUT / name).write_text(ser.dumps(obj) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    for name, k in [("tetra_hollow", hollow_tetrahedron()), ("circle", circle()),
                    ("rp2", rp2()), ("klein_bottle", klein_bottle())]:
        (OUT / f"{name}.txt").write_text(f"# {name}: one facet per line\n" + dump_facets(k))

    z = free_module(ZZ, 1)
    write("z4.json", ser.module_to_json(cyclic(ZZ, 4)))
    write("z6.json", ser.module_to_json(cyclic(ZZ, 6)))
    write("z2_over_z4.json", ser.module_to_json(cyclic(Zmod(4), 2)))
    write("matrix.json", ser.matrix_to_json(Matrix.from_rows(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])))

    good = ses_to_complex(z, z, cyclic(ZZ, 2), ModuleHom(z, z, Matrix.from_rows(ZZ, [[2]])),
                          ModuleHom(z, cyclic(ZZ, 2), Matrix.from_rows(ZZ, [[1]])))
    bad = ses_to_complex(z, z, cyclic(ZZ, 3), ModuleHom(z, z, Matrix.from_rows(ZZ, [[6]])),
                         ModuleHom(z, cyclic(ZZ, 3), Matrix.from_rows(ZZ, [[1]])))
    write("ses_x2.json", ser.complex_to_json(good))
    write("bad.json", ser.complex_to_json(bad))

    # d∘d ≠ 0: Z -×2→ Z -×2→ Z
    write("not_a_complex.json", {"ring": "Z", "modules": {"2": "Z", "1": "Z", "0": "Z"},
                                 "boundaries": {"2": [["2"]], "1": [["2"]]}})
    write("les_x2.json", ser.ses_complexes_to_json(repaired_snake_fixture()))
    write("les_literal_modules.json", ser.ses_complexes_to_json(literal_modules_fixture()))

    disk = make_complex({1: z, 0: z}, {1: [[1]]})
    times2 = make_complex({1: z, 0: z}, {1: [[2]]})
    write("disk.json", ser.complex_to_json(disk))
    write("times2.json", ser.complex_to_json(times2))
    write("homotopy_id_vs_0.json", {"source": ser.complex_to_json(times2),
                                    "f": {"levels": {"0": [["1"]], "1": [["1"]]}}})


if __name__ == "__main__":
    main()
