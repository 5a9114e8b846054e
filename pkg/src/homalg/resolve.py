"""Free covers, lifting, projectivity and free resolutions.

Over Z every finitely presented module has a free resolution of length at
most one (subgroups of free abelian groups are free).  Over Z/m the
resolution is extended degree by degree by covering kernels and may never
stop, so the caller bounds the depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import ChainComplex, ChainMap, make_chain_map, make_complex, restrict
from .diagram import ShortExactSeqModules, exact_at_middle
from .errors import NotExact, NotSurjective
from .exactlin import LinearSystem, Matrix, kernel_basis, snf
from .fpmod import (
    FpModule,
    ModuleHom,
    free_module,
    identity_hom,
    is_surjective,
    kernel,
    zero_hom,
)


def free_cover(m: FpModule) -> tuple[FpModule, ModuleHom]:
    """Free module on the generators of ``m`` with its canonical surjection."""
    f = free_module(m.ring, m.generators)
    return f, ModuleHom(f, m, Matrix.identity(m.ring, m.generators))


def lift_through_surjection(f: ModuleHom, phi: ModuleHom) -> ModuleHom | None:
    """``h: P -> M`` with ``phi ∘ h = f`` for ``f: P -> N``, ``phi: M -> N`` onto.

    Returns None when no homomorphism lifts ``f``; that can only happen for
    non-projective ``P``.
    """
    if f.codomain != phi.codomain:
        raise ValueError("f and phi must share a codomain")
    if not is_surjective(phi):
        raise NotSurjective("map to lift through is not surjective")
    p, m, n = f.domain, phi.domain, phi.codomain
    system = LinearSystem(p.ring)
    h = system.unknown(m.generators, p.generators)
    y = system.unknown(m.relations.cols, p.relations.cols)
    system.equation([(None, h, p.relations), (-m.relations, y, None)],
                    Matrix.zeros(p.ring, m.generators, p.relations.cols))
    w = system.unknown(n.relations.cols, p.generators)
    system.equation([(phi.map, h, None), (n.relations, w, None)], f.map)
    sol = system.solve()
    if sol is None:
        assert not p.is_free_presentation, "free modules always lift"
        return None
    out = ModuleHom(p, m, sol[h])
    assert (phi @ out).equals(f)
    return out


def is_projective(m: FpModule) -> bool:
    """Does the free-cover sequence ``0 → K → F → m → 0`` split?"""
    _, g = free_cover(m)
    return lift_through_surjection(identity_hom(m), g) is not None


def find_splitting_ses(ses: ShortExactSeqModules) -> ModuleHom | None:
    """``h: C -> B`` with ``g ∘ h = id_C``, or None."""
    return lift_through_surjection(identity_hom(ses.c), ses.g)


@dataclass(frozen=True)
class Resolution:
    """``... → P_2 -φ_2→ P_1 -φ_1→ P_0 -φ_0→ target → 0`` with free ``P_i``.

    ``complete`` records that the last map is injective, so the resolution
    can be continued by zeros.  ``last_map_bijective`` records the stricter
    condition that the last map is an isomorphism.
    """

    target: FpModule
    augmentation: ModuleHom
    maps: tuple[ModuleHom, ...]
    complete: bool

    def __post_init__(self):
        mods = [self.augmentation.domain] + [phi.domain for phi in self.maps]
        for i, p in enumerate(mods):
            if not p.is_free_presentation:
                raise ValueError(f"P_{i} is not free")
        if self.augmentation.codomain != self.target:
            raise ValueError("augmentation must map onto the target")
        if not is_surjective(self.augmentation):
            raise NotExact(-1, "augmentation not surjective")
        prev = self.augmentation
        for i, phi in enumerate(self.maps, start=1):
            if phi.codomain != prev.domain:
                raise ValueError(f"φ_{i} does not land in P_{i - 1}")
            if not exact_at_middle(phi, prev):
                raise NotExact(i - 1, f"resolution not exact at P_{i - 1}")
            prev = phi
        if self.complete and not kernel(prev)[0].is_zero:
            raise NotExact(self.depth, "resolution flagged complete but last map not injective")

    @property
    def ring(self):
        return self.target.ring

    @property
    def depth(self) -> int:
        return len(self.maps)

    def module(self, i: int) -> FpModule:
        if i == 0:
            return self.augmentation.domain
        if 1 <= i <= self.depth:
            return self.maps[i - 1].domain
        return free_module(self.ring, 0)

    @property
    def free_ranks(self) -> list[int]:
        return [self.module(i).generators for i in range(self.depth + 1)]

    def phi(self, i: int) -> ModuleHom:
        if i == 0:
            return self.augmentation
        if 1 <= i <= self.depth:
            return self.maps[i - 1]
        return zero_hom(self.module(i), self.module(i - 1))

    @property
    def last_map_bijective(self) -> bool:
        last = self.phi(self.depth)
        return kernel(last)[0].is_zero and is_surjective(last)

    def complex(self, top: int | None = None) -> ChainComplex:
        """``P_top → ... → P_0`` without the target; zeros past a complete end."""
        top = self.depth if top is None else top
        mods = {i: self.module(i) for i in range(top + 1)}
        return make_complex(mods, {i: self.phi(i) for i in range(1, min(top, self.depth) + 1)}, ring=self.ring)

    def augmented_complex(self) -> ChainComplex:
        mods = {i: self.module(i) for i in range(self.depth + 1)}
        mods[-1] = self.target
        return make_complex(mods, {i: self.phi(i) for i in range(0, self.depth + 1)}, ring=self.ring)


def make_resolution(target: FpModule, augmentation, maps) -> Resolution:
    """Resolution from matrices; ``complete`` is set when the last map is injective."""
    ring = target.ring
    aug = augmentation if isinstance(augmentation, Matrix) else Matrix.from_rows(ring, augmentation)
    p0 = free_module(ring, aug.cols)
    homs = []
    prev = p0
    for m in maps:
        m = m if isinstance(m, Matrix) else Matrix.from_rows(ring, m)
        p = free_module(ring, m.cols)
        homs.append(ModuleHom(p, prev, m))
        prev = p
    aug_hom = ModuleHom(p0, target, aug)
    last = homs[-1] if homs else aug_hom
    return Resolution(target, aug_hom, tuple(homs), kernel(last)[0].is_zero)


def _free_hom(ring, m: Matrix) -> ModuleHom:
    return ModuleHom(free_module(ring, m.cols), free_module(ring, m.rows), m)


def free_resolution(m: FpModule, depth: int = 4) -> Resolution:
    """Free resolution of ``m``.

    Over Z the result is complete with depth at most one regardless of
    ``depth``.  Over Z/m it has ``depth`` maps unless a kernel vanishes
    first.  The cover of ``m`` uses its presentation generators unpruned.
    """
    ring = m.ring
    p0, aug = free_cover(m)
    rel = m.relations
    nonzero = [j for j in range(rel.cols) if any(rel.column(j))]
    rel = rel.select(None, nonzero)
    if ring.is_integers:
        if rel.cols == 0:
            return Resolution(m, aug, (), True)
        s = snf(rel)
        phi1 = rel if s.rank == rel.cols else (rel @ s.v).select(None, range(s.rank))
        return Resolution(m, aug, (_free_hom(ring, phi1),), True)
    maps = []
    cur = rel
    complete = rel.cols == 0
    while cur.cols and len(maps) < depth:
        maps.append(_free_hom(ring, cur))
        cur = kernel_basis(cur)
        if cur.cols == 0:
            complete = True
    return Resolution(m, aug, tuple(maps), complete)


def lift_between_resolutions(f: ModuleHom, p: Resolution, q: Resolution) -> ChainMap:
    """Chain map ``P -> Q`` over ``f: M -> N`` (comparison theorem).

    Levels ``f_i`` satisfy ``ψ_i ∘ f_i = f_{i-1} ∘ φ_i`` with ``f_{-1} = f``.
    """
    if f.domain != p.target or f.codomain != q.target:
        raise ValueError("f must go from p.target to q.target")
    top = p.depth if q.complete else min(p.depth, q.depth)
    levels = {}
    prev = f @ p.augmentation
    for i in range(top + 1):
        if i > q.depth and q.complete and i > 0:
            fi = zero_hom(p.module(i), q.module(i))
        elif i == 0:
            fi = lift_through_surjection(prev, q.augmentation)
        else:
            psi = q.phi(i)
            system = LinearSystem(f.ring)
            x = system.unknown(psi.domain.generators, p.module(i).generators)
            system.equation([(psi.map, x, None)], prev.map)
            sol = system.solve()
            assert sol is not None, "lift must exist: P_i is free and the target lands in im ψ_i"
            fi = ModuleHom(p.module(i), q.module(i), sol[x])
        levels[i] = fi
        if i < top:
            prev = fi @ p.phi(i + 1)
    return make_chain_map(restrict(p.complex(), 0, top), q.complex(top), levels)
