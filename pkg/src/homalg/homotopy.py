"""Null-homotopies, chain homotopies and splittings as exact linear systems.

All unknown maps ``s_n`` over all degrees go into one ``LinearSystem``.
Each ``s_n`` must be a homomorphism of presented modules, which is encoded
by auxiliary unknowns ``Y`` with ``s_n R_src = R_tgt Y``.  Hom equalities
hold modulo the target relations, encoded the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import ChainComplex, ChainMap, _window, identity_map, is_exact
from .errors import DimensionError
from .exactlin import LinearSystem, Matrix
from .fpmod import ModuleHom, zero_hom


@dataclass(frozen=True)
class DegreeRaisingMaps:
    """Maps ``s_n: source_n -> target_{n+1}``; no commuting condition."""

    source: ChainComplex
    target: ChainComplex
    lo: int
    levels: tuple[ModuleHom, ...]

    def __post_init__(self):
        for k, s in enumerate(self.levels):
            n = self.lo + k
            if s.domain != self.source.module(n) or s.codomain != self.target.module(n + 1):
                raise DimensionError(f"raising map at degree {n} has the wrong domain or codomain")

    def level(self, n: int) -> ModuleHom:
        if self.lo <= n < self.lo + len(self.levels):
            return self.levels[n - self.lo]
        return zero_hom(self.source.module(n), self.target.module(n + 1))


def make_raising_maps(source: ChainComplex, target: ChainComplex, levels) -> DegreeRaisingMaps:
    lo, hi = _window(source, target)
    out = []
    for n in range(lo, hi + 1):
        a, b = source.module(n), target.module(n + 1)
        if n in levels:
            x = levels[n]
            x = x if isinstance(x, ModuleHom) else ModuleHom(
                a, b, x if isinstance(x, Matrix) else Matrix.from_rows(a.ring, x, a.generators))
            out.append(x)
        else:
            out.append(zero_hom(a, b))
    return DegreeRaisingMaps(source, target, lo, tuple(out))


def zero_raising_maps(source: ChainComplex, target: ChainComplex) -> DegreeRaisingMaps:
    return make_raising_maps(source, target, {})


def homotopy_term(s: DegreeRaisingMaps, n: int) -> ModuleHom:
    """``d_D(n+1) ∘ s_n + s_{n-1} ∘ d_C(n)``."""
    return s.target.d(n + 1) @ s.level(n) + s.level(n - 1) @ s.source.d(n)


def verify_null_homotopy(f: ChainMap, s: DegreeRaisingMaps) -> bool:
    if s.source != f.source or s.target != f.target:
        return False
    lo, hi = _window(f.source, f.target)
    return all(f.level(n).equals(homotopy_term(s, n)) for n in range(lo, hi + 1))


def perturb(g: ChainMap, s: DegreeRaisingMaps) -> ChainMap:
    """``g + ds + sd``, again a chain map (validated on construction)."""
    lo, hi = _window(g.source, g.target)
    return ChainMap(g.source, g.target, lo,
                    tuple(g.level(n) + homotopy_term(s, n) for n in range(lo, hi + 1)))


def _raising_unknowns(system: LinearSystem, source: ChainComplex, target: ChainComplex, lo: int, hi: int):
    """One unknown per degree, plus its well-definedness constraint."""
    ids = {}
    for n in range(lo, hi + 1):
        a, b = source.module(n), target.module(n + 1)
        x = system.unknown(b.generators, a.generators)
        y = system.unknown(b.relations.cols, a.relations.cols)
        system.equation([(None, x, a.relations), (-b.relations, y, None)],
                        Matrix.zeros(a.ring, b.generators, a.relations.cols))
        ids[n] = x
    return ids


def find_null_homotopy(f: ChainMap) -> DegreeRaisingMaps | None:
    c, d = f.source, f.target
    lo, hi = _window(c, d)
    ring = c.ring
    system = LinearSystem(ring)
    s = _raising_unknowns(system, c, d, lo, hi)
    for n in range(lo, hi + 1):
        src, tgt = c.module(n), d.module(n)
        terms = [(d.d(n + 1).map, s[n], None)]
        if n - 1 in s:
            terms.append((None, s[n - 1], c.d(n).map))
        w = system.unknown(tgt.relations.cols, src.generators)
        terms.append((tgt.relations, w, None))
        system.equation(terms, f.level(n).map)
    sol = system.solve()
    if sol is None:
        return None
    levels = {n: ModuleHom(c.module(n), d.module(n + 1), sol[s[n]]) for n in range(lo, hi + 1)}
    out = make_raising_maps(c, d, levels)
    assert verify_null_homotopy(f, out)
    return out


def are_chain_homotopic(f: ChainMap, g: ChainMap) -> DegreeRaisingMaps | None:
    """A chain homotopy ``s`` from ``f`` to ``g``: ``f - g = ds + sd``."""
    return find_null_homotopy(f - g)


def verify_splitting(c: ChainComplex, s: DegreeRaisingMaps) -> bool:
    return all(c.d(n).equals(c.d(n) @ s.level(n - 1) @ c.d(n)) for n in c.degrees)


def find_splitting(c: ChainComplex) -> DegreeRaisingMaps | None:
    """Maps ``s_n: C_n -> C_{n+1}`` with ``d_n = d_n s_{n-1} d_n`` for all n."""
    ring = c.ring
    system = LinearSystem(ring)
    lo, hi = c.lo, c.hi
    s = _raising_unknowns(system, c, c, lo, hi)
    for n in range(lo + 1, hi + 1):
        d = c.d(n).map
        tgt = c.module(n - 1)
        w = system.unknown(tgt.relations.cols, c.module(n).generators)
        system.equation([(d, s[n - 1], d), (tgt.relations, w, None)], d)
    sol = system.solve()
    if sol is None:
        return None
    out = make_raising_maps(c, c, {n: sol[s[n]] for n in range(lo, hi + 1)})
    assert verify_splitting(c, out)
    return out


def is_split_exact(c: ChainComplex) -> bool:
    return is_exact(c) and find_splitting(c) is not None


def verify_homotopy_equivalence(f: ChainMap, q: ChainMap, s: DegreeRaisingMaps, t: DegreeRaisingMaps) -> bool:
    """``s`` is a homotopy from ``id_C`` to ``q∘f`` and ``t`` one from ``id_D`` to ``f∘q``.

    The identities are required only up to homotopy, not on the nose.
    """
    if q.source != f.target or q.target != f.source:
        return False
    c, d = f.source, f.target
    return (verify_null_homotopy(identity_map(c) - q @ f, s)
            and verify_null_homotopy(identity_map(d) - f @ q, t))


def find_homotopy_inverse_witnesses(f: ChainMap, q: ChainMap):
    """Witnesses ``(s, t)`` for :func:`verify_homotopy_equivalence`, or None."""
    s = are_chain_homotopic(identity_map(f.source), q @ f)
    if s is None:
        return None
    t = are_chain_homotopic(identity_map(f.target), f @ q)
    if t is None:
        return None
    return s, t
