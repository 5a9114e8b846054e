"""Random modules, complexes and short exact sequences with known answers.

Complexes are direct sums of small pieces whose homology and splitting
behaviour are known by hand, then disguised by random changes of
generators in every degree.  The labels on a ``RandomComplex`` therefore
come from the construction, not from the library being tested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from .chain import ChainComplex, ChainMap, direct_sum_complex, make_chain_map, make_complex, zero_complex
from .diagram import ShortExactSeqComplexes, ShortExactSeqModules
from .errors import NotWellDefined
from .exactlin import ZZ, Matrix, RingSpec
from .fpmod import (
    FpModule,
    ModuleHom,
    cokernel,
    cyclic,
    direct_sum,
    free_module,
    image,
    zero_module,
)


def random_unimodular(ring: RingSpec, n: int, rng: random.Random, steps: int | None = None) -> tuple[Matrix, Matrix]:
    """``(P, P^{-1})`` built from random elementary operations."""
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    q = [row[:] for row in p]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        # row_i += k row_j on P; col_j -= k col_i on P^{-1}
        p[i] = [a + k * b for a, b in zip(p[i], p[j])]
        for r in q:
            r[j] -= k * r[i]
    if n and rng.random() < 0.5:
        i = rng.randrange(n)
        p[i] = [-a for a in p[i]]
        for r in q:
            r[i] = -r[i]
    return Matrix.from_rows(ring, p, n), Matrix.from_rows(ring, q, n)


@dataclass
class Piece:
    """A tiny complex with hand-computed homology; ``lo`` is its lowest degree."""

    lo: int
    complex: ChainComplex
    exact: bool
    split: bool
    homology: dict[int, tuple[int, tuple[int, ...]]] = field(default_factory=dict)


def _piece(ring, lo, mods, bds, exact, split, hom=None) -> Piece:
    c = make_complex({lo + k: m for k, m in enumerate(mods)},
                     {lo + k: b for k, b in bds.items()}, ring=ring)
    return Piece(lo, c, exact, split, hom or {})


def disk(ring: RingSpec, lo: int, rank: int = 1) -> Piece:
    """``R^r -id→ R^r`` in degrees ``lo+1, lo``: split exact."""
    f = free_module(ring, rank)
    return _piece(ring, lo, [f, f], {1: Matrix.identity(ring, rank)}, True, True)


def torsion_ses_piece(ring: RingSpec, lo: int, a: int, b: int) -> Piece:
    """``0 → Z/a → Z/ab → Z/b → 0``; split exactly when ``gcd(a, b) = 1``."""
    ma, mab, mb = cyclic(ring, a), cyclic(ring, a * b), cyclic(ring, b)
    return _piece(ring, lo, [mb, mab, ma], {1: [[1]], 2: [[b]]}, True, gcd(a, b) == 1)


def free_quotient_piece(lo: int, k: int) -> Piece:
    """``0 → Z -×k→ Z → Z/k → 0`` over Z, exact and not split for ``k ≥ 2``."""
    z = free_module(ZZ, 1)
    return _piece(ZZ, lo, [cyclic(ZZ, k), z, z], {1: [[1]], 2: [[k]]}, True, k == 1)


def homology_free_piece(ring: RingSpec, n: int) -> Piece:
    """``R`` alone in degree ``n``."""
    return _piece(ring, n, [free_module(ring, 1)], {}, False, False, {n: (1, ())})


def homology_torsion_piece(ring: RingSpec, n: int, k: int) -> Piece:
    """``R -×k→ R`` in degrees ``n+1, n`` for ``k ≥ 2``.

    ``H_n = R/k``.  Over Z the top is exact; over Z/m (``k | m``) the top
    carries ``ker(×k) ≅ Z/k`` as well.
    """
    f = free_module(ring, 1)
    hom = {n: (0, (k,))}
    if not ring.is_integers:
        hom[n + 1] = (0, (k,))
    return _piece(ring, n, [f, f], {1: [[k]]}, False, False, hom)


def conjugate(c: ChainComplex, rng: random.Random) -> ChainComplex:
    """Same complex after random invertible changes of generators and of relations."""
    ring = c.ring
    changes = {n: random_unimodular(ring, c.module(n).generators, rng) for n in c.degrees}
    mods = {}
    for n in c.degrees:
        m = c.module(n)
        p, _ = changes[n]
        q, _ = random_unimodular(ring, m.relations.cols, rng)
        mods[n] = FpModule(ring, m.generators, p @ m.relations @ q)
    bds = {n: changes[n - 1][0] @ c.d(n).map @ changes[n][1] for n in range(c.lo + 1, c.hi + 1)}
    return make_complex(mods, bds, ring=ring)


@dataclass
class RandomComplex:
    complex: ChainComplex
    exact: bool
    split: bool
    pieces: list[Piece]

    @property
    def nonexact_degrees(self) -> set[int]:
        return {n for p in self.pieces for n in p.homology}


def _ring_divisor_pairs(ring: RingSpec):
    if ring.is_integers:
        return [(a, b) for a in range(2, 5) for b in range(1, 5)]
    m = ring.modulus
    return [(a, m // a) for a in range(2, m + 1) if m % a == 0 and a < m]


def random_complex(rng: random.Random, ring: RingSpec = ZZ, lo: int = 0, hi: int = 3,
                   kind: str | None = None) -> RandomComplex:
    """``kind``: 'split' (disks only), 'exact' (may include non-split pieces) or 'perturbed'."""
    kind = kind or rng.choice(["split", "exact", "perturbed"])
    pieces: list[Piece] = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(lo, hi - 1)
        pieces.append(disk(ring, d, rng.randint(1, 2)))
    if kind in ("exact", "perturbed") and hi - lo >= 2:
        for _ in range(rng.randint(0 if kind == "perturbed" else 1, 2)):
            d = rng.randint(lo, hi - 2)
            pairs = _ring_divisor_pairs(ring)
            if ring.is_integers and rng.random() < 0.4:
                pieces.append(free_quotient_piece(d, rng.randint(2, 5)))
            elif pairs:
                a, b = rng.choice(pairs)
                pieces.append(torsion_ses_piece(ring, d, a, b))
    if kind == "perturbed":
        for _ in range(rng.randint(1, 2)):
            d = rng.randint(lo, hi - 1)
            if rng.random() < 0.5:
                pieces.append(homology_free_piece(ring, rng.randint(lo, hi)))
            else:
                k = rng.randint(2, 6) if ring.is_integers else rng.choice(
                    [x for x in range(2, ring.modulus + 1) if ring.modulus % x == 0 and x < ring.modulus] or [0])
                if k == 0:
                    pieces.append(homology_free_piece(ring, d))
                else:
                    pieces.append(homology_torsion_piece(ring, d, k))
    rng.shuffle(pieces)
    total = zero_complex(ring, lo, hi)
    for p in pieces:
        total = direct_sum_complex(total, p.complex)
    exact = all(p.exact for p in pieces)
    split = exact and all(p.split for p in pieces)
    return RandomComplex(conjugate(total, rng), exact, split, pieces)


# ------------------------------------------------------------- modules

def random_module(rng: random.Random, ring: RingSpec = ZZ, max_gens: int = 3, max_entry: int = 6) -> FpModule:
    g = rng.randint(0, max_gens)
    r = rng.randint(0, g + 1)
    rows = [[rng.randint(-max_entry, max_entry) for _ in range(r)] for _ in range(g)]
    return FpModule(ring, g, Matrix.from_rows(ring, rows, r))


def random_hom(rng: random.Random, m: FpModule, n: FpModule, tries: int = 20) -> ModuleHom:
    """A random well-defined hom; falls back to zero."""
    ring = m.ring
    for _ in range(tries):
        x = Matrix.from_rows(ring, [[rng.randint(-3, 3) for _ in range(m.generators)] for _ in range(n.generators)],
                             m.generators)
        try:
            return ModuleHom(m, n, x)
        except NotWellDefined:
            continue
    return ModuleHom(m, n, Matrix.zeros(ring, n.generators, m.generators))


def random_ses_modules(rng: random.Random, ring: RingSpec = ZZ) -> ShortExactSeqModules:
    """``0 → im φ → B → B / im φ → 0`` for a random ``φ: R^k → B``."""
    b = random_module(rng, ring)
    k = rng.randint(0, 3)
    phi = random_hom(rng, free_module(ring, k), b)
    a, incl = image(phi)
    c, proj = cokernel(incl)
    return ShortExactSeqModules(incl, proj)


# -------------------------------------------------- SES of complexes

def _random_chain_map(rng: random.Random, a: ChainComplex, b: ChainComplex) -> ChainMap:
    """``k`` times the inclusion of ``A`` into ``b = A ⊕ E``."""
    ring = a.ring
    k = rng.randint(-2, 2)
    levels = {}
    for n in a.degrees:
        ga, gb = a.module(n).generators, b.module(n).generators
        levels[n] = Matrix.from_rows(ring, [[k * int(i == j) for j in range(ga)] for i in range(gb)], ga)
    return make_chain_map(a, b, levels)


def mapping_cylinder_ses(u: ChainMap) -> ShortExactSeqComplexes:
    """``0 → A → Cyl(u) → Cone(u) → 0``; its connecting map realizes ``H(u)`` up to sign."""
    a, b = u.source, u.target
    ring = a.ring
    lo, hi = min(a.lo, b.lo), max(a.hi + 1, b.hi)
    cyl_mods, cone_mods, cyl_d, cone_d, inc, proj = {}, {}, {}, {}, {}, {}
    for n in range(lo, hi + 1):
        an, an1, bn = a.module(n), a.module(n - 1), b.module(n)
        cone_mods[n] = direct_sum(an1, bn)[0]
        cyl_mods[n] = direct_sum(an, cone_mods[n])[0]
    for n in range(lo + 1, hi + 1):
        da, da1, db = a.d(n).map, a.d(n - 1).map, b.d(n).map
        un1 = u.level(n - 1).map
        # Cone_n = A_{n-1} ⊕ B_n, d(a', b) = (-d a', d b - u a')
        cone = (-da1).hstack(Matrix.zeros(ring, da1.rows, db.cols)).vstack((-un1).hstack(db))
        cone_d[n] = cone
        # Cyl_n = A_n ⊕ A_{n-1} ⊕ B_n, d(a, a', b) = (d a + a', -d a', d b - u a')
        top = da.hstack(Matrix.identity(ring, da.rows)).hstack(Matrix.zeros(ring, da.rows, db.cols))
        bottom = Matrix.zeros(ring, cone.rows, da.cols).hstack(cone)
        cyl_d[n] = top.vstack(bottom)
    cyl = make_complex(cyl_mods, cyl_d, ring=ring)
    cone_c = make_complex(cone_mods, cone_d, ring=ring)
    a_big = make_complex({n: a.module(n) for n in range(lo, hi + 1)},
                         {n: a.d(n).map for n in range(lo + 1, hi + 1)}, ring=ring)
    for n in range(lo, hi + 1):
        ga = a.module(n).generators
        gc = cone_mods[n].generators
        inc[n] = Matrix.identity(ring, ga).vstack(Matrix.zeros(ring, gc, ga))
        proj[n] = Matrix.zeros(ring, gc, ga).hstack(Matrix.identity(ring, gc))
    return ShortExactSeqComplexes(make_chain_map(a_big, cyl, inc), make_chain_map(cyl, cone_c, proj))


def multiplication_ses(c: ChainComplex, k: int) -> ShortExactSeqComplexes:
    """``0 → C -×k→ C → C/k → 0`` for a complex of free Z-modules (not levelwise split)."""
    ring = c.ring
    quot = {n: FpModule(ring, c.module(n).generators, Matrix.scalar(ring, c.module(n).generators, k))
            for n in c.degrees}
    q = make_complex(quot, {n: c.d(n).map for n in range(c.lo + 1, c.hi + 1)}, ring=ring)
    f = make_chain_map(c, c, {n: Matrix.scalar(ring, c.module(n).generators, k) for n in c.degrees})
    g = make_chain_map(c, q, {n: Matrix.identity(ring, c.module(n).generators) for n in c.degrees})
    return ShortExactSeqComplexes(f, g)


def random_free_complex(rng: random.Random, lo: int = 0, hi: int = 2, max_rank: int = 2) -> ChainComplex:
    """Random complex of free Z-modules, a disguised sum of disks and ``Z -×k→ Z`` pieces."""
    pieces = []
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(lo, hi - 1)
        r = rng.choice([homology_free_piece(ZZ, rng.randint(lo, hi)), homology_torsion_piece(ZZ, n, rng.randint(0, 4)),
                        disk(ZZ, n, rng.randint(1, max_rank))])
        pieces.append(r.complex)
    total = zero_complex(ZZ, lo, hi)
    for p in pieces:
        total = direct_sum_complex(total, p)
    return conjugate(total, rng)


def random_ses_complexes(rng: random.Random, ring: RingSpec = ZZ, kind: str | None = None) -> ShortExactSeqComplexes:
    """Either a mapping-cylinder sequence or (over Z) a multiplication-by-k sequence."""
    kind = kind or rng.choice(["cylinder", "cylinder", "multiply"] if ring.is_integers else ["cylinder"])
    if kind == "multiply":
        return multiplication_ses(random_free_complex(rng), rng.randint(2, 4))
    a = random_complex(rng, ring, 0, 2).complex
    e = random_complex(rng, ring, 0, 2).complex
    b = direct_sum_complex(a, e)
    return mapping_cylinder_ses(_random_chain_map(rng, a, b))


def exact_pair_ses(rng: random.Random, ring: RingSpec = ZZ) -> ShortExactSeqComplexes:
    """Cylinder sequence with A and the target of ``u`` exact, so all three terms are exact."""
    a = random_complex(rng, ring, 0, 2, kind=rng.choice(["split", "exact"])).complex
    e = random_complex(rng, ring, 0, 2, kind=rng.choice(["split", "exact"])).complex
    return mapping_cylinder_ses(_random_chain_map(rng, a, direct_sum_complex(a, e)))


def zero_to(c: ChainComplex) -> ChainMap:
    return make_chain_map(zero_complex(c.ring, c.lo, c.hi), c, {})


__all__ = [
    "random_unimodular", "random_complex", "random_module", "random_hom", "random_ses_modules",
    "random_ses_complexes", "exact_pair_ses", "mapping_cylinder_ses", "multiplication_ses",
    "random_free_complex", "conjugate", "zero_to", "RandomComplex", "zero_module",
]
