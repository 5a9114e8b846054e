"""Tensor products and Tor.

Generator ``(i, j)`` of ``M ⊗ N`` has index ``i * gens(N) + j``, which
matches ``Matrix.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Literal

from .chain import ChainComplex, ChainMap, homology, induced_on_homology, make_chain_map, make_complex
from .diagram import LongExactSequence, ShortExactSeqComplexes, ShortExactSeqModules, long_exact_sequence
from .exactlin import LinearSystem, Matrix
from .fpmod import FpModule, ModuleHom, cokernel, free_module, kernel, scalar_hom
from .resolve import Resolution, free_resolution, lift_between_resolutions, lift_through_surjection, make_resolution

Side = Literal["left", "right"]


def tensor(m: FpModule, n: FpModule) -> FpModule:
    if m.ring != n.ring:
        raise ValueError("tensor needs a common ring")
    ring = m.ring
    im, in_ = Matrix.identity(ring, m.generators), Matrix.identity(ring, n.generators)
    rel = m.relations.kron(in_).hstack(im.kron(n.relations))
    return FpModule(ring, m.generators * n.generators, rel)


def tensor_hom(f: ModuleHom, n: FpModule) -> ModuleHom:
    """``f ⊗ N: M ⊗ N → M' ⊗ N``."""
    return ModuleHom(tensor(f.domain, n), tensor(f.codomain, n),
                     f.map.kron(Matrix.identity(n.ring, n.generators)))


def hom_tensor(m: FpModule, f: ModuleHom) -> ModuleHom:
    """``M ⊗ f: M ⊗ N → M ⊗ N'``."""
    return ModuleHom(tensor(m, f.domain), tensor(m, f.codomain),
                     Matrix.identity(m.ring, m.generators).kron(f.map))


def apply_tensor_to_complex(c: ChainComplex, n: FpModule) -> ChainComplex:
    """Degreewise ``C ⊗ N``."""
    return make_complex({k: tensor(c.module(k), n) for k in c.degrees},
                        {k: tensor_hom(c.d(k), n).map for k in range(c.lo + 1, c.hi + 1)}, ring=c.ring)


def tensor_complex_left(m: FpModule, c: ChainComplex) -> ChainComplex:
    """Degreewise ``M ⊗ C``."""
    return make_complex({k: tensor(m, c.module(k)) for k in c.degrees},
                        {k: hom_tensor(m, c.d(k)).map for k in range(c.lo + 1, c.hi + 1)}, ring=c.ring)


def tensor_chain_map(u: ChainMap, n: FpModule) -> ChainMap:
    src = apply_tensor_to_complex(u.source, n)
    tgt = apply_tensor_to_complex(u.target, n)
    return make_chain_map(src, tgt, {k: tensor_hom(u.level(k), n).map for k in u.degrees})


@dataclass(frozen=True)
class TorRequest:
    left: FpModule
    right: FpModule
    degree: int
    resolve_side: Side = "right"

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("Tor degree must be nonnegative")
        if self.left.ring != self.right.ring:
            raise ValueError("Tor needs a common ring")
        if self.resolve_side not in ("left", "right"):
            raise ValueError("resolve_side is 'left' or 'right'")


def tor(req: TorRequest, resolution: Resolution | None = None) -> FpModule:
    """``Tor_i(M, N)`` as the homology of a tensored free resolution.

    ``resolve_side='right'`` resolves N and takes ``H_i(M ⊗ P)``;
    ``'left'`` resolves M and takes ``H_i(P ⊗ N)``.  A caller-supplied
    resolution of the resolved side may replace the canonical one.
    """
    i = req.degree
    if req.resolve_side == "right":
        r = resolution or free_resolution(req.right, i + 1)
        _check_depth(r, i)
        return homology(tensor_complex_left(req.left, r.complex(i + 1)), i)
    r = resolution or free_resolution(req.left, i + 1)
    _check_depth(r, i)
    return homology(apply_tensor_to_complex(r.complex(i + 1), req.right), i)


def tor_module(m: FpModule, n: FpModule, i: int, resolve_side: Side = "right") -> FpModule:
    return tor(TorRequest(m, n, i, resolve_side))


def _check_depth(r: Resolution, i: int):
    if not r.complete and r.depth < i + 1:
        raise ValueError(f"resolution of depth {r.depth} too short for Tor_{i}")


def tor_hom(f: ModuleHom, n: FpModule, i: int,
            p: Resolution | None = None, q: Resolution | None = None) -> ModuleHom:
    """``Tor_i(f, N): Tor_i(M, N) → Tor_i(M', N)`` via a comparison lift of resolutions."""
    p = p or free_resolution(f.domain, i + 1)
    q = q or free_resolution(f.codomain, i + 1)
    u = lift_between_resolutions(f, p, q)
    return induced_on_homology(tensor_chain_map(u, n), i)


def torsion_part(m: FpModule, x: int) -> FpModule:
    """``{v ∈ M : x v = 0}``."""
    return kernel(scalar_hom(m, x))[0]


def ideal_quotient_module(a: int, b: int) -> FpModule:
    """``(aZ ∩ bZ) / (aZ · bZ)`` presented as the cokernel of the inclusion ``abZ → lcm(a,b)Z``."""
    from .exactlin import ZZ
    lcm = a * b // gcd(a, b)
    one = free_module(ZZ, 1)
    incl = ModuleHom(one, one, Matrix.from_rows(ZZ, [[a * b // lcm]]))
    return cokernel(incl)[0]


def horseshoe(ses: ShortExactSeqModules, depth: int) -> tuple[Resolution, Resolution, Resolution]:
    """Resolutions of A, B, C with ``P^B_i = P^A_i ⊕ P^C_i`` and block upper triangular differentials."""
    f, g = ses.f, ses.g
    ring = f.ring
    pa = free_resolution(ses.a, depth)
    pc = free_resolution(ses.c, depth)
    top = max(pa.depth, pc.depth)
    beta0 = lift_through_surjection(pc.augmentation, g)
    aug_b = (f @ pa.augmentation).map.hstack(beta0.map)
    maps = []
    prev_lambda = None
    for i in range(1, top + 1):
        phia, phic = pa.phi(i).map, pc.phi(i).map
        system = LinearSystem(ring)
        lam = system.unknown(phia.rows, phic.cols)
        if i == 1:
            w = system.unknown(ses.b.relations.cols, phic.cols)
            system.equation([((f @ pa.augmentation).map, lam, None), (ses.b.relations, w, None)],
                            -(beta0.map @ phic))
        else:
            system.equation([(pa.phi(i - 1).map, lam, None)], -(prev_lambda @ phic))
        sol = system.solve()
        assert sol is not None, "horseshoe correction term must exist"
        prev_lambda = sol[lam]
        top_row = phia.hstack(prev_lambda)
        bottom = Matrix.zeros(ring, phic.rows, phia.cols).hstack(phic)
        maps.append(top_row.vstack(bottom))
    pb = make_resolution(ses.b, aug_b, maps)
    return pa, pb, pc


def _split_maps(pa: Resolution, pb: Resolution, pc: Resolution, top: int):
    ca, cb, cc = pa.complex(top), pb.complex(top), pc.complex(top)
    ring = pa.ring
    inc, proj = {}, {}
    for i in range(top + 1):
        a, c = pa.module(i).generators, pc.module(i).generators
        inc[i] = Matrix.identity(ring, a).vstack(Matrix.zeros(ring, c, a))
        proj[i] = Matrix.zeros(ring, c, a).hstack(Matrix.identity(ring, c))
    return make_chain_map(ca, cb, inc), make_chain_map(cb, cc, proj)


def tor_les(ses: ShortExactSeqModules, n: FpModule, up_to: int) -> LongExactSequence:
    """``Tor_k(A,N) → Tor_k(B,N) → Tor_k(C,N) → Tor_{k-1}(A,N) → ... → C⊗N → 0`` from ``k = up_to``.

    Built from a horseshoe resolution tensored with N; the full sequence of
    the truncated complexes is verified exact before the top degree (where
    truncation distorts homology) is cut off.
    """
    top = up_to + 1
    pa, pb, pc = horseshoe(ses, top)
    iota, pi = _split_maps(pa, pb, pc, top)
    tses = ShortExactSeqComplexes(tensor_chain_map(iota, n), tensor_chain_map(pi, n))
    full = long_exact_sequence(tses)
    # full starts H_{top+1}(C), H_top(A), H_top(B), H_top(C), H_up_to(A), ...
    keep = slice(4, None)
    labels = [lab.replace("H_", "Tor_").replace("(A)", "(A,N)").replace("(B)", "(B,N)").replace("(C)", "(C,N)")
              for lab in full.labels[keep]]
    labels[-1] = "0"
    return LongExactSequence(full.modules[keep], full.maps[keep][:len(labels) - 1], tuple(labels))


def universal_coefficients(c: ChainComplex, g: FpModule, n: int) -> tuple[FpModule, FpModule]:
    """``(H_n(C ⊗ G), H_n(C) ⊗ G ⊕ Tor_1(H_{n-1}(C), G))`` for a complex of free Z-modules."""
    from .fpmod import direct_sum
    lhs = homology(apply_tensor_to_complex(c, g), n)
    rhs = direct_sum(tensor(homology(c, n), g), tor_module(homology(c, n - 1), g, 1))[0]
    return lhs, rhs
