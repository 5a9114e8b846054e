"""Finite simplicial complexes and their simplicial chain complexes.

Simplices are strictly increasing vertex tuples; that ordering is the
orientation.  ``d`` deletes the j-th vertex with sign ``(-1)^j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .chain import ChainComplex, homology, make_complex
from .errors import ParseError
from .exactlin import ZZ, Matrix, RingSpec
from .fpmod import Decomposition, free_module

MAX_DIM = 8


@dataclass(frozen=True)
class SimplicialComplex:
    facets: tuple[tuple[int, ...], ...]
    closure: dict[int, list[tuple[int, ...]]] = field(compare=False, repr=False)

    @classmethod
    def from_facets(cls, facets) -> "SimplicialComplex":
        clean = set()
        for f in facets:
            s = tuple(sorted(set(f)))
            if not s:
                raise ValueError("empty facet")
            if any(v < 0 for v in s):
                raise ValueError(f"negative vertex in facet {s}")
            if len(s) - 1 > MAX_DIM:
                raise ValueError(f"facet {s} has dimension {len(s) - 1} > {MAX_DIM}")
            clean.add(s)
        # drop facets contained in other facets
        maximal = sorted(s for s in clean if not any(s != t and set(s) <= set(t) for t in clean))
        closure: dict[int, set] = {}
        for s in maximal:
            for k in range(1, len(s) + 1):
                closure.setdefault(k - 1, set()).update(combinations(s, k))
        return cls(tuple(maximal), {k: sorted(v) for k, v in sorted(closure.items())})

    @property
    def dimension(self) -> int:
        return max(self.closure, default=-1)

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.closure.get(0, [])]

    def simplices(self, n: int) -> list[tuple[int, ...]]:
        return self.closure.get(n, [])

    def f_vector(self) -> list[int]:
        return [len(self.simplices(n)) for n in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.f_vector()))

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex.from_facets([[mapping[v] for v in f] for f in self.facets])

    def disjoint_union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        shift = max(self.vertices, default=-1) + 1
        return SimplicialComplex.from_facets(list(self.facets) + [[v + shift for v in f] for f in other.facets])


def boundary_matrix(k: SimplicialComplex, n: int, ring: RingSpec = ZZ) -> Matrix:
    """``d_n``: rows indexed by (n-1)-simplices, columns by n-simplices."""
    rows, cols = k.simplices(n - 1), k.simplices(n)
    index = {s: i for i, s in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    if n >= 1:
        for j, s in enumerate(cols):
            for pos in range(len(s)):
                entries[index[s[:pos] + s[pos + 1:]]][j] = (-1) ** pos
    return Matrix.from_rows(ring, entries, len(cols))


def chain_complex_of(k: SimplicialComplex, ring: RingSpec = ZZ) -> ChainComplex:
    top = max(k.dimension, 0)
    mods = {n: free_module(ring, len(k.simplices(n))) for n in range(top + 1)}
    return make_complex(mods, {n: boundary_matrix(k, n, ring) for n in range(1, top + 1)}, ring=ring)


def homology_report(k: SimplicialComplex) -> list[Decomposition]:
    c = chain_complex_of(k)
    return [homology(c, n).decomposition for n in c.degrees]


def format_report(report: list[Decomposition]) -> str:
    return ", ".join(f"H{n} = {d}" for n, d in enumerate(report))


def parse_facets(text: str, source: str = "<string>") -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            facet = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"{source}:{lineno}: vertex indices must be integers, got {line!r}") from None
        if any(v < 0 for v in facet):
            raise ParseError(f"{source}:{lineno}: vertex indices must be nonnegative")
        if len(set(facet)) - 1 > MAX_DIM:
            raise ParseError(f"{source}:{lineno}: facet dimension exceeds {MAX_DIM}")
        facets.append(facet)
    if not facets:
        raise ParseError(f"{source}: no facets")
    return SimplicialComplex.from_facets(facets)


def load_facets(path) -> SimplicialComplex:
    p = Path(path)
    return parse_facets(p.read_text(), str(p))


def dump_facets(k: SimplicialComplex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in k.facets)


# ----------------------------------------------------------------- fixtures

def point() -> SimplicialComplex:
    return SimplicialComplex.from_facets([[0]])


def simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([list(range(n + 1))])


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    return SimplicialComplex.from_facets(list(combinations(range(n + 2), n + 1)))


def hollow_tetrahedron() -> SimplicialComplex:
    return sphere(2)


def circle() -> SimplicialComplex:
    return sphere(1)


def rp2() -> SimplicialComplex:
    """The 6-vertex projective plane (antipodal quotient of the icosahedron)."""
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
            (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    return SimplicialComplex.from_facets([[v - 1 for v in t] for t in tris])


KLEIN_BOTTLE_8 = (
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 4), (1, 2, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6),
    (2, 3, 5), (2, 3, 7), (2, 4, 6), (2, 6, 7), (3, 4, 7), (3, 5, 6), (4, 5, 7), (5, 6, 7),
)


def klein_bottle() -> SimplicialComplex:
    """An 8-vertex, 16-triangle Klein bottle found by ``scripts/find_klein_bottle.py``."""
    return SimplicialComplex.from_facets(KLEIN_BOTTLE_8)
