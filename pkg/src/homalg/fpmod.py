"""Finitely presented modules over Z or Z/m and their homomorphisms.

A module is the cokernel of its relation matrix: ``generators`` free
generators modulo the column span of ``relations`` (and modulo ``m`` over
Z/m).  Every module carries its invariant-factor decomposition, computed
once at construction, together with the Smith transform that maps generator
coordinates to canonical coordinates.  That transform gives a normal form
for elements, which is what equality of elements and of homomorphisms uses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DimensionError, NotWellDefined
from .exactlin import ZZ, Matrix, RingSpec, _Smith, kernel_basis, solve


@dataclass(frozen=True)
class Decomposition:
    """``R^free_rank ⊕ R/d_1 ⊕ ... ⊕ R/d_k`` with ``d_1 | d_2 | ... | d_k``."""

    ring: RingSpec
    free_rank: int
    invariant_factors: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = []
        if self.free_rank:
            base = str(self.ring) if self.ring.is_integers else f"({self.ring})"
            if self.ring.is_integers and self.free_rank == 1:
                parts.append("Z")
            elif self.free_rank == 1:
                parts.append(str(self.ring))
            else:
                parts.append(f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " ⊕ ".join(parts) if parts else "0"


def _lifted_relations(ring: RingSpec, generators: int, relations: Matrix) -> list[list[int]]:
    rows = relations.lift().to_rows()
    if ring.modulus is not None:
        m = ring.modulus
        for i, r in enumerate(rows):
            r.extend(m if j == i else 0 for j in range(generators))
    return rows


@dataclass(frozen=True)
class FpModule:
    ring: RingSpec
    generators: int
    relations: Matrix
    decomposition: Decomposition = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise ValueError(f"relations over {self.relations.ring}, module over {self.ring}")
        if self.relations.rows != self.generators:
            raise DimensionError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")
        rows = _lifted_relations(self.ring, self.generators, self.relations)
        ncols = self.relations.cols + (self.generators if self.ring.modulus else 0)
        s = _Smith(rows, self.generators, ncols, track_uinv=True)
        diag = [s.d[i][i] for i in range(s.rank)] + [0] * (self.generators - s.rank)
        m = self.ring.modulus
        # canonical coordinates: indices whose diagonal entry is not a unit
        keep = [i for i, d in enumerate(diag) if d != 1]
        orders = [diag[i] for i in keep]
        if m is None:
            free = sum(1 for d in orders if d == 0)
            factors = tuple(d for d in orders if d != 0)
        else:
            free = sum(1 for d in orders if d == m)
            factors = tuple(d for d in orders if d != m)
        object.__setattr__(self, "decomposition", Decomposition(self.ring, free, factors))
        object.__setattr__(self, "_orders", tuple(0 if (m and d == m) else d for d in orders))
        object.__setattr__(self, "_to_canon", [s.u[i] for i in keep])
        object.__setattr__(self, "_from_canon", [[s.uinv[r][i] for r in range(self.generators)] for i in keep])

    def __str__(self):
        return str(self.decomposition)

    @property
    def is_zero(self) -> bool:
        return self.decomposition.is_zero

    @property
    def is_free_presentation(self) -> bool:
        return self.relations.cols == 0 or self.relations.is_zero()

    def normal_form(self, coords) -> tuple[int, ...]:
        """Canonical coordinates of the element with the given generator coordinates."""
        coords = coords.entries if isinstance(coords, Matrix) else tuple(coords)
        if len(coords) != self.generators:
            raise DimensionError(f"element has {len(coords)} coordinates, module has {self.generators} generators")
        out = []
        m = self.ring.modulus
        for row, d in zip(self._to_canon, self._orders):
            x = sum(a * b for a, b in zip(row, coords) if b)
            if d:
                x %= d
            elif m:
                x %= m
            out.append(x)
        return tuple(out)

    def is_zero_element(self, coords) -> bool:
        return not any(self.normal_form(coords))

    def element(self, *coords: int) -> "ModuleElement":
        return ModuleElement(self, tuple(coords))


@dataclass(frozen=True)
class ModuleElement:
    parent: FpModule
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.parent.generators:
            raise DimensionError("coordinate count does not match generators")

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return element_eq(self, other)

    def __hash__(self):
        return hash(self.parent.normal_form(self.coords))


def element_eq(x: ModuleElement, y: ModuleElement) -> bool:
    """Equal iff the coordinate difference lies in the relation span."""
    if x.parent != y.parent:
        return False
    diff = Matrix.column_vector(x.parent.ring, [a - b for a, b in zip(x.coords, y.coords)])
    rel = x.parent.relations
    if rel.cols == 0:
        return diff.is_zero()
    return solve(rel, diff) is not None


# constructors for common modules

def zero_module(ring: RingSpec) -> FpModule:
    return FpModule(ring, 0, Matrix.zeros(ring, 0, 0))


def free_module(ring: RingSpec, rank: int) -> FpModule:
    return FpModule(ring, rank, Matrix.zeros(ring, rank, 0))


def cyclic(ring: RingSpec, order: int) -> FpModule:
    """``R/(order)``; ``order = 0`` gives ``R`` itself."""
    if order == 0:
        return free_module(ring, 1)
    return FpModule(ring, 1, Matrix.from_rows(ring, [[order]]))


def presented(ring: RingSpec, relations) -> FpModule:
    """Module from a relation matrix given as nested lists (rows = generators)."""
    if isinstance(relations, Matrix):
        return FpModule(ring, relations.rows, relations)
    m = Matrix.from_rows(ring, relations)
    return FpModule(ring, m.rows, m)


def from_decomposition(ring: RingSpec, free_rank: int, factors=()) -> FpModule:
    gens = len(factors) + free_rank
    rel = Matrix.diagonal(ring, list(factors), gens, len(factors))
    return FpModule(ring, gens, rel)


# homomorphisms

@dataclass(frozen=True)
class ModuleHom:
    """A homomorphism given by generator images (columns of ``map``)."""

    domain: FpModule
    codomain: FpModule
    map: Matrix

    def __post_init__(self):
        if self.domain.ring != self.codomain.ring or self.map.ring != self.domain.ring:
            raise ValueError("domain, codomain and map must share a ring")
        if self.map.shape != (self.codomain.generators, self.domain.generators):
            raise DimensionError(
                f"map is {self.map.shape}, expected "
                f"{(self.codomain.generators, self.domain.generators)}")
        images = self.map @ self.domain.relations
        for j in range(images.cols):
            if not self.codomain.is_zero_element(images.column(j)):
                raise NotWellDefined(
                    f"relation {j} of the domain maps to a nonzero element of the codomain")

    @property
    def ring(self) -> RingSpec:
        return self.domain.ring

    def apply(self, coords) -> tuple[int, ...]:
        v = coords if isinstance(coords, Matrix) else Matrix.column_vector(self.ring, coords)
        return (self.map @ v).entries

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        """``self ∘ other``."""
        if other.codomain != self.domain:
            raise DimensionError("composition needs other.codomain == self.domain")
        return ModuleHom(other.domain, self.codomain, self.map @ other.map)

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        _same_hom_set(self, other)
        return ModuleHom(self.domain, self.codomain, self.map + other.map)

    def __neg__(self) -> "ModuleHom":
        return ModuleHom(self.domain, self.codomain, -self.map)

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        return self + (-other)

    def scale(self, k: int) -> "ModuleHom":
        return ModuleHom(self.domain, self.codomain, self.map.scale(k))

    def is_zero(self) -> bool:
        return all(self.codomain.is_zero_element(c) for c in self.map.columns())

    def equals(self, other: "ModuleHom") -> bool:
        """Equality as maps, i.e. modulo the codomain relations."""
        _same_hom_set(self, other)
        return (self - other).is_zero()


def _same_hom_set(f: ModuleHom, g: ModuleHom):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DimensionError("homomorphisms have different domains or codomains")


def make_hom(domain: FpModule, codomain: FpModule, map) -> ModuleHom:
    if not isinstance(map, Matrix):
        map = Matrix.from_rows(domain.ring, map, domain.generators)
    return ModuleHom(domain, codomain, map)


def identity_hom(m: FpModule) -> ModuleHom:
    return ModuleHom(m, m, Matrix.identity(m.ring, m.generators))


def zero_hom(m: FpModule, n: FpModule) -> ModuleHom:
    return ModuleHom(m, n, Matrix.zeros(m.ring, n.generators, m.generators))


def scalar_hom(m: FpModule, x: int) -> ModuleHom:
    """Multiplication by the ring element ``x`` on ``m``."""
    return ModuleHom(m, m, Matrix.scalar(m.ring, m.generators, x))


def compose(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """Apply ``f`` first, then ``g``."""
    return g @ f


def add(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    return f + g


def hom_eq(f: ModuleHom, g: ModuleHom) -> bool:
    return f.equals(g)


def simplify(m: FpModule) -> tuple[FpModule, ModuleHom, ModuleHom]:
    """Canonical presentation ``m'`` of ``m`` with inverse isomorphisms ``m -> m'`` and ``m' -> m``.

    Generators of ``m'`` are the torsion summands in divisibility order,
    then the free ones; relations are diagonal.
    """
    ring = m.ring
    orders = m._orders
    k = len(orders)
    tors = [i for i, d in enumerate(orders) if d]
    rel = Matrix.from_columns(ring, [[orders[i] if r == i else 0 for r in range(k)] for i in tors], k)
    canon = FpModule(ring, k, rel)
    to = Matrix.from_rows(ring, m._to_canon, m.generators)
    back = Matrix.from_columns(ring, m._from_canon, m.generators)
    return canon, ModuleHom(m, canon, to), ModuleHom(canon, m, back)


def _x_part_kernel(top: Matrix, rel: Matrix) -> Matrix:
    """x-coordinates of the kernel of ``[top | rel]``: all x with ``top x`` in span(rel)."""
    k = kernel_basis(top.hstack(rel))
    return k.select(range(top.cols), None)


def kernel(f: ModuleHom) -> tuple[FpModule, ModuleHom]:
    """Kernel of ``f`` with its (injective) inclusion into ``f.domain``."""
    ring = f.ring
    x = _x_part_kernel(f.map, f.codomain.relations)
    rel = _x_part_kernel(x, f.domain.relations)
    k = FpModule(ring, x.cols, rel)
    incl = ModuleHom(k, f.domain, x)
    canon, _, back = simplify(k)
    return canon, incl @ back


def image(f: ModuleHom) -> tuple[FpModule, ModuleHom]:
    """Image of ``f`` with its inclusion into ``f.codomain``."""
    rel = _x_part_kernel(f.map, f.codomain.relations)
    im = FpModule(f.ring, f.domain.generators, rel)
    incl = ModuleHom(im, f.codomain, f.map)
    canon, _, back = simplify(im)
    return canon, incl @ back


def cokernel_with_section(f: ModuleHom) -> tuple[FpModule, ModuleHom, Matrix]:
    """Cokernel, its projection, and generator lifts back into ``f.codomain``."""
    n = f.codomain
    c = FpModule(f.ring, n.generators, n.relations.hstack(f.map))
    canon, to, back = simplify(c)
    proj = ModuleHom(n, canon, to.map)
    return canon, proj, back.map


def cokernel(f: ModuleHom) -> tuple[FpModule, ModuleHom]:
    """Cokernel with its (surjective) projection from ``f.codomain``."""
    canon, proj, _ = cokernel_with_section(f)
    return canon, proj


def direct_sum(m: FpModule, n: FpModule) -> tuple[FpModule, tuple[ModuleHom, ModuleHom], tuple[ModuleHom, ModuleHom]]:
    if m.ring != n.ring:
        raise ValueError("direct sum needs a common ring")
    ring = m.ring
    s = FpModule(ring, m.generators + n.generators, m.relations.block_diag(n.relations))
    i1 = Matrix.identity(ring, m.generators).vstack(Matrix.zeros(ring, n.generators, m.generators))
    i2 = Matrix.zeros(ring, m.generators, n.generators).vstack(Matrix.identity(ring, n.generators))
    inj = (ModuleHom(m, s, i1), ModuleHom(n, s, i2))
    proj = (ModuleHom(s, m, i1.T), ModuleHom(s, n, i2.T))
    return s, inj, proj


def direct_sum_many(mods: list[FpModule], ring: RingSpec | None = None) -> FpModule:
    if not mods:
        return zero_module(ring or ZZ)
    out = mods[0]
    for m in mods[1:]:
        out = direct_sum(out, m)[0]
    return out


def decompose(m: FpModule) -> tuple[int, list[int]]:
    d = m.decomposition
    return d.free_rank, list(d.invariant_factors)


def is_isomorphic(m: FpModule, n: FpModule) -> bool:
    return m.ring == n.ring and m.decomposition == n.decomposition


def is_injective(f: ModuleHom) -> bool:
    return kernel(f)[0].is_zero


def is_surjective(f: ModuleHom) -> bool:
    return cokernel(f)[0].is_zero


def is_iso(f: ModuleHom) -> bool:
    return is_injective(f) and is_surjective(f)


def preimage(f: ModuleHom, coords, rng: random.Random | None = None) -> tuple[int, ...] | None:
    """Domain coordinates of some ``x`` with ``f(x) = coords``, or None.

    With ``rng`` a random element of the kernel (of the lifted system) is
    added, so callers can check that their results do not depend on the
    choice.
    """
    top = f.map.hstack(f.codomain.relations)
    x = solve(top, coords)
    if x is None:
        return None
    x = list(x.entries[:f.domain.generators])
    if rng is not None:
        k = kernel_basis(top)
        for j in range(k.cols):
            c = rng.randint(-3, 3)
            if c:
                col = k.column(j)
                for i in range(len(x)):
                    x[i] += c * col[i]
    return tuple(f.ring.reduce(v) for v in x)


def factor_through(g: ModuleHom, incl: ModuleHom) -> ModuleHom:
    """The map ``h`` with ``incl ∘ h = g`` for an injective ``incl``; raises if ``g`` does not land in its image."""
    cols = []
    for j in range(g.map.cols):
        x = preimage(incl, g.map.column(j))
        if x is None:
            raise NotWellDefined("map does not factor through the given submodule")
        cols.append(x)
    return ModuleHom(g.domain, incl.domain, Matrix.from_columns(g.ring, cols, incl.domain.generators))


def induced_on_quotients(f: ModuleHom, src_lift: Matrix, dst_proj: ModuleHom, src: FpModule) -> ModuleHom:
    """Map ``src -> dst_proj.codomain`` sending generator j to ``dst_proj(f(src_lift[:, j]))``."""
    m = dst_proj.map @ f.map @ src_lift
    return ModuleHom(src, dst_proj.codomain, m)
