"""Bounded chain complexes, chain maps and homology.

Complexes live on a finite window ``lo..hi`` of degrees and are zero
outside it.  Boundaries lower degree by one: ``d(n): C_n -> C_{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import DimensionError, NotAComplex, SquareFails
from .exactlin import Matrix, RingSpec
from .fpmod import (
    FpModule,
    ModuleHom,
    cokernel_with_section,
    direct_sum,
    factor_through,
    identity_hom,
    is_iso,
    kernel,
    preimage,
    zero_hom,
    zero_module,
)


def _as_hom(x, domain: FpModule, codomain: FpModule) -> ModuleHom:
    if isinstance(x, ModuleHom):
        if x.domain != domain or x.codomain != codomain:
            raise DimensionError("boundary domain/codomain do not match the stored modules")
        return x
    if not isinstance(x, Matrix):
        x = Matrix.from_rows(domain.ring, x, domain.generators)
    return ModuleHom(domain, codomain, x)


@dataclass(frozen=True)
class ChainComplex:
    ring: RingSpec
    lo: int
    hi: int
    modules: tuple[FpModule, ...]
    boundaries: tuple[ModuleHom, ...]  # d(lo+1), ..., d(hi)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty degree window")
        if len(self.modules) != self.hi - self.lo + 1:
            raise ValueError("one module per degree in the window")
        if len(self.boundaries) != self.hi - self.lo:
            raise ValueError("one boundary per degree above lo")
        for k, d in enumerate(self.boundaries):
            n = self.lo + 1 + k
            if d.domain != self.module(n) or d.codomain != self.module(n - 1):
                raise DimensionError(f"boundary at degree {n} has the wrong domain or codomain")
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise NotAComplex(n)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def module(self, n: int) -> FpModule:
        if self.lo <= n <= self.hi:
            return self.modules[n - self.lo]
        return zero_module(self.ring)

    def d(self, n: int) -> ModuleHom:
        if self.lo < n <= self.hi:
            return self.boundaries[n - self.lo - 1]
        return zero_hom(self.module(n), self.module(n - 1))

    def __str__(self):
        parts = [f"{self.module(n)}[{n}]" for n in reversed(self.degrees)]
        return " → ".join(parts)


def make_complex(modules: Mapping[int, FpModule], boundaries: Mapping[int, object] | None = None,
                 ring: RingSpec | None = None) -> ChainComplex:
    """Complex on the window spanned by the keys of ``modules``.

    ``boundaries[n]`` maps degree ``n`` to ``n - 1`` and may be a hom, a
    Matrix or nested lists; missing ones are zero.
    """
    boundaries = dict(boundaries or {})
    if not modules:
        if ring is None:
            raise ValueError("ring required for an empty complex")
        modules = {0: zero_module(ring)}
    lo, hi = min(modules), max(modules)
    ring = ring or next(iter(modules.values())).ring
    mods = tuple(modules.get(n, zero_module(ring)) for n in range(lo, hi + 1))

    def mod(n):
        return mods[n - lo] if lo <= n <= hi else zero_module(ring)

    for n in boundaries:
        if not lo <= n <= hi:
            raise DimensionError(f"boundary at degree {n} outside window {lo}..{hi}")
        if n == lo and not _as_hom(boundaries[n], mod(n), mod(n - 1)).is_zero():
            raise DimensionError(f"boundary at degree {lo} must map to the zero module")
    ds = tuple(
        _as_hom(boundaries[n], mod(n), mod(n - 1)) if n in boundaries else zero_hom(mod(n), mod(n - 1))
        for n in range(lo + 1, hi + 1)
    )
    return ChainComplex(ring, lo, hi, mods, ds)


def zero_complex(ring: RingSpec, lo: int = 0, hi: int = 0) -> ChainComplex:
    return make_complex({n: zero_module(ring) for n in range(lo, hi + 1)}, ring=ring)


def restrict(c: ChainComplex, lo: int, hi: int) -> ChainComplex:
    """Brutal truncation to degrees ``lo..hi``."""
    return make_complex({n: c.module(n) for n in range(lo, hi + 1)},
                        {n: c.d(n).map for n in range(lo + 1, hi + 1)}, ring=c.ring)


@dataclass(frozen=True)
class HomologyData:
    """``Z_n``, ``B_n`` and ``H_n = Z_n / B_n`` at one degree.

    ``boundary_map`` is ``d(n+1)`` factored through the cycles; ``section``
    lifts homology generators to cycle coordinates.
    """

    degree: int
    cycles: FpModule
    cycle_inclusion: ModuleHom
    boundary_map: ModuleHom
    homology: FpModule
    projection: ModuleHom
    section: Matrix

    def representative(self, coords) -> tuple[int, ...]:
        """A cycle in ``C_n`` representing the homology class with the given coordinates."""
        z = self.section @ Matrix.column_vector(self.homology.ring, coords)
        return self.cycle_inclusion.apply(z)

    def classify(self, cycle) -> tuple[int, ...]:
        """Homology coordinates of a cycle given in ``C_n`` coordinates."""
        z = preimage(self.cycle_inclusion, cycle)
        if z is None:
            raise ValueError("not a cycle")
        # homology is in canonical form, so its normal form is its coordinates
        return self.homology.normal_form(self.projection.apply(z))


@lru_cache(maxsize=4096)
def homology_data(c: ChainComplex, n: int) -> HomologyData:
    z, incl = kernel(c.d(n))
    beta = factor_through(c.d(n + 1), incl)
    h, proj, section = cokernel_with_section(beta)
    return HomologyData(n, z, incl, beta, h, proj, section)


def homology(c: ChainComplex, n: int) -> FpModule:
    return homology_data(c, n).homology


def is_exact_at(c: ChainComplex, n: int) -> bool:
    by_homology = homology(c, n).is_zero
    # independent route: every cycle generator is a boundary
    z, incl = kernel(c.d(n))
    by_image = all(preimage(c.d(n + 1), incl.map.column(j)) is not None for j in range(z.generators))
    assert by_homology == by_image, f"homology and image tests disagree at degree {n}"
    return by_homology


def is_exact(c: ChainComplex) -> bool:
    return all(is_exact_at(c, n) for n in c.degrees)


def non_exact_degrees(c: ChainComplex) -> list[int]:
    return [n for n in c.degrees if not is_exact_at(c, n)]


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    lo: int
    levels: tuple[ModuleHom, ...]

    def __post_init__(self):
        for k, u in enumerate(self.levels):
            n = self.lo + k
            if u.domain != self.source.module(n) or u.codomain != self.target.module(n):
                raise DimensionError(f"level {n} has the wrong domain or codomain")
        for n in range(self.lo, self.hi + 2):
            left = self.target.d(n) @ self.level(n)
            right = self.level(n - 1) @ self.source.d(n)
            if not left.equals(right):
                raise SquareFails(n)

    @property
    def hi(self) -> int:
        return self.lo + len(self.levels) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def level(self, n: int) -> ModuleHom:
        if self.lo <= n <= self.hi:
            return self.levels[n - self.lo]
        return zero_hom(self.source.module(n), self.target.module(n))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise DimensionError("composition needs other.target == self.source")
        lo, hi = _window(other.source, self.target)
        return ChainMap(other.source, self.target, lo,
                        tuple(self.level(n) @ other.level(n) for n in range(lo, hi + 1)))

    def _pointwise(self, other: "ChainMap", op) -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise DimensionError("chain maps between different complexes")
        lo, hi = _window(self.source, self.target)
        return ChainMap(self.source, self.target, lo,
                        tuple(op(self.level(n), other.level(n)) for n in range(lo, hi + 1)))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self._pointwise(other, lambda a, b: a - b)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, self.lo, tuple(-u for u in self.levels))

    def equals(self, other: "ChainMap") -> bool:
        lo, hi = _window(self.source, self.target)
        return all(self.level(n).equals(other.level(n)) for n in range(lo, hi + 1))


def _window(c: ChainComplex, d: ChainComplex) -> tuple[int, int]:
    return min(c.lo, d.lo), max(c.hi, d.hi)


def make_chain_map(source: ChainComplex, target: ChainComplex, levels: Mapping[int, object]) -> ChainMap:
    """Chain map from per-degree homs or matrices; missing degrees are zero."""
    lo, hi = _window(source, target)
    for n in levels:
        if not lo <= n <= hi:
            raise DimensionError(f"level {n} outside window {lo}..{hi}")
    out = []
    for n in range(lo, hi + 1):
        s, t = source.module(n), target.module(n)
        out.append(_as_hom(levels[n], s, t) if n in levels else zero_hom(s, t))
    return ChainMap(source, target, lo, tuple(out))


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, c.lo, tuple(identity_hom(c.module(n)) for n in c.degrees))


def zero_map(c: ChainComplex, d: ChainComplex) -> ChainMap:
    return make_chain_map(c, d, {})


def induced_on_homology(u: ChainMap, n: int) -> ModuleHom:
    hs = homology_data(u.source, n)
    ht = homology_data(u.target, n)
    cols = []
    for j in range(hs.homology.generators):
        e = [int(i == j) for i in range(hs.homology.generators)]
        cycle = u.level(n).apply(hs.representative(e))
        cols.append(ht.classify(cycle))
    m = Matrix.from_columns(u.source.ring, cols, ht.homology.generators)
    return ModuleHom(hs.homology, ht.homology, m)


def is_quasi_iso(u: ChainMap) -> bool:
    lo, hi = _window(u.source, u.target)
    return all(is_iso(induced_on_homology(u, n)) for n in range(lo, hi + 1))


def direct_sum_complex(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Degreewise direct sum (finite products coincide)."""
    if c.ring != d.ring:
        raise ValueError("complexes over different rings")
    lo, hi = _window(c, d)
    mods = {n: direct_sum(c.module(n), d.module(n))[0] for n in range(lo, hi + 1)}
    bds = {n: c.d(n).map.block_diag(d.d(n).map) for n in range(lo + 1, hi + 1)}
    return make_complex(mods, bds, ring=c.ring)


def ses_to_complex(a: FpModule, b: FpModule, c: FpModule, f: ModuleHom, g: ModuleHom) -> ChainComplex:
    """``0 → a → b → c → 0`` as a complex with ``a`` in degree 2 and ``c`` in degree 0."""
    return make_complex({2: a, 1: b, 0: c}, {2: f, 1: g})
