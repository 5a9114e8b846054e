"""Short exact sequences, the snake lemma and long exact sequences.

Preimage choices in the chases are arbitrary; every map produced here is
compared only as a homomorphism between presented quotients, so the choice
does not matter.  Pass an ``rng`` to randomize the choices and check that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chain import ChainComplex, ChainMap, _window, homology_data, induced_on_homology
from .errors import NotCommutative, NotExact, RowNotExact
from .exactlin import Matrix
from .fpmod import (
    FpModule,
    ModuleHom,
    cokernel_with_section,
    factor_through,
    is_surjective,
    kernel,
    preimage,
)


def exact_at_middle(u: ModuleHom, v: ModuleHom) -> bool:
    """``im u = ker v`` for ``u: A -> B``, ``v: B -> C``."""
    if not (v @ u).is_zero():
        return False
    k, incl = kernel(v)
    return all(preimage(u, incl.map.column(j)) is not None for j in range(k.generators))


def _check_ses(f: ModuleHom, g: ModuleHom, where=None):
    tag = (lambda p: p) if where is None else (lambda p: (where, p))
    if not kernel(f)[0].is_zero:
        raise NotExact(tag("A"), f"first map not injective{_at(where)}")
    if not exact_at_middle(f, g):
        raise NotExact(tag("B"), f"image of the first map is not the kernel of the second{_at(where)}")
    if not is_surjective(g):
        raise NotExact(tag("C"), f"second map not surjective{_at(where)}")


def _at(where):
    return "" if where is None else f" at degree {where}"


@dataclass(frozen=True)
class ShortExactSeqModules:
    """``0 → a -f→ b -g→ c → 0``, validated on construction."""

    f: ModuleHom
    g: ModuleHom

    def __post_init__(self):
        if self.f.codomain != self.g.domain:
            raise ValueError("f.codomain must equal g.domain")
        _check_ses(self.f, self.g)

    @property
    def a(self) -> FpModule:
        return self.f.domain

    @property
    def b(self) -> FpModule:
        return self.f.codomain

    @property
    def c(self) -> FpModule:
        return self.g.codomain


@dataclass(frozen=True)
class ShortExactSeqComplexes:
    """Degreewise short exact ``0 → A -f→ B -g→ C → 0``."""

    f: ChainMap
    g: ChainMap

    def __post_init__(self):
        if self.f.target != self.g.source:
            raise ValueError("f.target must equal g.source")
        lo, hi = self.window
        for n in range(lo, hi + 1):
            _check_ses(self.f.level(n), self.g.level(n), where=n)

    @property
    def a(self) -> ChainComplex:
        return self.f.source

    @property
    def b(self) -> ChainComplex:
        return self.f.target

    @property
    def c(self) -> ChainComplex:
        return self.g.target

    @property
    def window(self) -> tuple[int, int]:
        lo1, hi1 = _window(self.a, self.b)
        lo2, hi2 = _window(self.b, self.c)
        return min(lo1, lo2), max(hi1, hi2)


@dataclass(frozen=True)
class LongExactSequence:
    """``modules[0] → modules[1] → ...`` with ``maps[i]: modules[i] → modules[i+1]``."""

    modules: tuple[FpModule, ...]
    maps: tuple[ModuleHom, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.maps) != len(self.modules) - 1 or len(self.labels) != len(self.modules):
            raise ValueError("need one map between consecutive modules and one label per module")
        for i, h in enumerate(self.maps):
            if h.domain != self.modules[i] or h.codomain != self.modules[i + 1]:
                raise ValueError(f"map {i} does not connect modules {i} and {i + 1}")

    def is_exact_at(self, i: int) -> bool:
        return exact_at_middle(self.maps[i - 1], self.maps[i])

    def is_exact(self) -> bool:
        return all(self.is_exact_at(i) for i in range(1, len(self.modules) - 1))

    def failures(self) -> list[int]:
        return [i for i in range(1, len(self.modules) - 1) if not self.is_exact_at(i)]

    def __len__(self):
        return len(self.modules)

    def __str__(self):
        return " → ".join(f"{lab} = {m}" for lab, m in zip(self.labels, self.modules))


@dataclass(frozen=True)
class SnakeDiagram:
    """Rows ``M1 -f→ M2 -g→ M3 → 0`` and ``0 → N1 -fp→ N2 -gp→ N3``; verticals a, b, c."""

    f: ModuleHom
    g: ModuleHom
    fp: ModuleHom
    gp: ModuleHom
    a: ModuleHom
    b: ModuleHom
    c: ModuleHom

    def __post_init__(self):
        if not (self.b @ self.f).equals(self.fp @ self.a):
            raise NotCommutative("left")
        if not (self.c @ self.g).equals(self.gp @ self.b):
            raise NotCommutative("right")
        if not exact_at_middle(self.f, self.g):
            raise RowNotExact("top middle")
        if not is_surjective(self.g):
            raise RowNotExact("top right")
        if not kernel(self.fp)[0].is_zero:
            raise RowNotExact("bottom left")
        if not exact_at_middle(self.fp, self.gp):
            raise RowNotExact("bottom middle")


def snake(diagram: SnakeDiagram, rng: random.Random | None = None) -> LongExactSequence:
    """``ker a → ker b → ker c -∂→ coker a → coker b → coker c``, exactness verified.

    ``∂`` lifts through ``g``, applies ``b`` and pulls back through ``fp``,
    with no extra sign.
    """
    dg = diagram
    ka, ia = kernel(dg.a)
    kb, ib = kernel(dg.b)
    kc, ic = kernel(dg.c)
    ca, pa, sa = cokernel_with_section(dg.a)
    cb, pb, sb = cokernel_with_section(dg.b)
    cc, pc, _ = cokernel_with_section(dg.c)
    ring = ka.ring

    k1 = factor_through(dg.f @ ia, ib)
    k2 = factor_through(dg.g @ ib, ic)
    cols = []
    for j in range(kc.generators):
        y = preimage(dg.g, ic.map.column(j), rng)
        x = preimage(dg.fp, dg.b.apply(y), rng)
        assert x is not None, "chase left the image of the bottom-left map"
        cols.append(ca.normal_form(pa.apply(x)))
    delta = ModuleHom(kc, ca, Matrix.from_columns(ring, cols, ca.generators))
    c1 = ModuleHom(ca, cb, pb.map @ dg.fp.map @ sa)
    c2 = ModuleHom(cb, cc, pc.map @ dg.gp.map @ sb)
    seq = LongExactSequence((ka, kb, kc, ca, cb, cc), (k1, k2, delta, c1, c2),
                            ("ker a", "ker b", "ker c", "coker a", "coker b", "coker c"))
    bad = seq.failures()
    assert not bad, f"snake sequence not exact at positions {bad}"
    return seq


def connecting_hom(ses: ShortExactSeqComplexes, n: int, rng: random.Random | None = None) -> ModuleHom:
    """``∂_n: H_n(C) → H_{n-1}(A)`` by lift, apply boundary, pull back."""
    hc = homology_data(ses.c, n)
    ha = homology_data(ses.a, n - 1)
    g, f = ses.g.level(n), ses.f.level(n - 1)
    d = ses.b.d(n)
    cols = []
    for j in range(hc.homology.generators):
        e = [int(i == j) for i in range(hc.homology.generators)]
        y = preimage(g, hc.representative(e), rng)
        x = preimage(f, d.apply(y), rng)
        assert x is not None, "boundary of the lift is not in the image of f"
        cols.append(ha.classify(x))
    return ModuleHom(hc.homology, ha.homology, Matrix.from_columns(ses.a.ring, cols, ha.homology.generators))


def long_exact_sequence(ses: ShortExactSeqComplexes, rng: random.Random | None = None) -> LongExactSequence:
    """``H_{hi+1}(C) → H_hi(A) → H_hi(B) → H_hi(C) → ... → H_lo(C) → H_{lo-1}(A)``.

    The end terms are zero; including them certifies injectivity and
    surjectivity at the ends.  A failed exactness check is a bug, so it
    raises AssertionError.
    """
    lo, hi = ses.window
    mods, maps, labels = [], [], []
    mods.append(homology_data(ses.c, hi + 1).homology)
    labels.append(f"H_{hi + 1}(C)")
    for n in range(hi, lo - 1, -1):
        maps.append(connecting_hom(ses, n + 1, rng))
        fa = induced_on_homology(ses.f, n)
        gb = induced_on_homology(ses.g, n)
        mods.extend([fa.domain, fa.codomain, gb.codomain])
        labels.extend([f"H_{n}(A)", f"H_{n}(B)", f"H_{n}(C)"])
        maps.extend([fa, gb])
    maps.append(connecting_hom(ses, lo, rng))
    mods.append(homology_data(ses.a, lo - 1).homology)
    labels.append(f"H_{lo - 1}(A)")
    seq = LongExactSequence(tuple(mods), tuple(maps), tuple(labels))
    bad = seq.failures()
    assert not bad, f"long exact sequence fails at positions {bad}"
    return seq


def homology_square(ses: ShortExactSeqComplexes, n: int) -> SnakeDiagram:
    """Snake diagram whose connecting map is ``∂_n`` up to the evident isomorphisms.

    Top row: ``X_n / im d_{n+1}``; bottom row: cycles ``Z_{n-1}(X)``;
    verticals induced by ``d_n``.
    """
    a, b, c = ses.a, ses.b, ses.c
    tops = [cokernel_with_section(x.d(n + 1)) for x in (a, b, c)]
    bots = [kernel(x.d(n - 1)) for x in (a, b, c)]
    f, g = ses.f.level(n), ses.g.level(n)
    f1, g1 = ses.f.level(n - 1), ses.g.level(n - 1)
    (qa, pa, sa), (qb, pb, sb), (qc, pc, sc) = tops
    (za, ia), (zb, ib), (zc, ic) = bots
    top_f = ModuleHom(qa, qb, pb.map @ f.map @ sa)
    top_g = ModuleHom(qb, qc, pc.map @ g.map @ sb)
    bot_f = factor_through(f1 @ ia, ib)
    bot_g = factor_through(g1 @ ib, ic)
    verts = []
    for x, (q, _, s), (z, i) in zip((a, b, c), tops, bots):
        verts.append(factor_through(ModuleHom(q, x.module(n - 1), x.d(n).map @ s), i))
    return SnakeDiagram(top_f, top_g, bot_f, bot_g, *verts)


def two_of_three_exact(ses: ShortExactSeqComplexes) -> tuple[bool, bool, bool]:
    from .chain import is_exact
    return is_exact(ses.a), is_exact(ses.b), is_exact(ses.c)
