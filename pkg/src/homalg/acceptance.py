"""Acceptance criteria 1-8 as plain functions.

Each returns a ``CriterionResult``.  The CLI ``report`` verb and
``tests/test_acceptance.py`` both call :func:`run_all`.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from .chain import (
    ChainComplex,
    homology,
    identity_map,
    induced_on_homology,
    is_exact,
    is_exact_at,
    is_quasi_iso,
    make_chain_map,
    make_complex,
)
from .derived import (
    TorRequest,
    ideal_quotient_module,
    tor,
    tor_les,
    tor_module,
    torsion_part,
    universal_coefficients,
)
from .diagram import (
    ShortExactSeqComplexes,
    ShortExactSeqModules,
    exact_at_middle,
    long_exact_sequence,
    two_of_three_exact,
)
from .errors import NotExact
from .exactlin import ZZ, Matrix, Zmod, snf
from .fpmod import ModuleHom, cyclic, free_module, is_surjective, kernel, zero_module
from .homotopy import are_chain_homotopic, find_null_homotopy, find_splitting, make_raising_maps, perturb
from .oracles import det, invariant_factors_by_minors
from .randgen import (
    exact_pair_ses,
    random_complex,
    random_hom,
    random_module,
    random_ses_complexes,
    random_ses_modules,
    zero_to,
)
from .resolve import free_resolution, is_projective, lift_between_resolutions, make_resolution
from .simplicial import chain_complex_of, circle, hollow_tetrahedron, homology_report, klein_bottle, rp2


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)
    limit: float | None = None

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        head = f"criterion {self.number}: {status}  {self.title}  [{self.seconds:.2f}s{limit}]"
        if self.ok:
            return head
        return head + "\n" + "\n".join(f"    - {d}" for d in self.details)


class _Checks:
    """Collects named boolean checks."""

    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str):
        if not ok:
            self.failures.append(what)

    def note(self, what: str):
        self.notes.append(what)


def _z():
    return free_module(ZZ, 1)


def _mul(k: int, a=None, b=None) -> ModuleHom:
    a, b = a or _z(), b or _z()
    return ModuleHom(a, b, Matrix.from_rows(a.ring, [[k]]))


def _decomp(m) -> tuple[int, tuple[int, ...]]:
    d = m.decomposition
    return d.free_rank, tuple(d.invariant_factors)


# ------------------------------------------------------------- criterion 1

def _padded(f: ModuleHom, g: ModuleHom) -> ChainComplex:
    """``0 → 0 → A → B → C → 0 → 0`` with A in degree 2."""
    ring = f.ring
    z = zero_module(ring)
    return make_complex({4: z, 3: z, 2: f.domain, 1: f.codomain, 0: g.codomain, -1: z, -2: z}, {2: f, 1: g})


def criterion_1() -> CriterionResult:
    c = _Checks()
    iota_f, tau_g = _mul(2), ModuleHom(_z(), cyclic(ZZ, 2), Matrix.from_rows(ZZ, [[1]]))
    pc = _padded(iota_f, tau_g)
    # im(id_0) = ker(ι), im(ι) = ker(f), im(g) = ker(τ)
    c.check(is_exact_at(pc, 3), "im(id_0) = ker(ι)")
    c.check(is_exact_at(pc, 2) and kernel(iota_f)[0].is_zero, "im(ι) = ker(f): f injective")
    c.check(is_exact_at(pc, 0) and is_surjective(tau_g), "im(g) = ker(τ): g surjective")
    c.check(is_exact_at(pc, 1), "im(×2) = ker(quotient)")
    c.check(is_exact(pc), "padded ×2 sequence exact everywhere")
    try:
        ShortExactSeqModules(iota_f, tau_g)
    except NotExact as e:
        c.check(False, f"×2 sequence rejected: {e}")
    bad_f, bad_g = _mul(6), ModuleHom(_z(), cyclic(ZZ, 3), Matrix.from_rows(ZZ, [[1]]))
    bc = _padded(bad_f, bad_g)
    c.check(not is_exact_at(bc, 1), "×6 sequence flagged not exact at the middle")
    c.check(is_exact_at(bc, 2) and is_exact_at(bc, 0), "×6 sequence exact at its ends")
    c.check(_decomp(homology(bc, 1)) == (0, (2,)), "middle homology of the ×6 sequence is Z/2 (im ⊊ ker)")
    return CriterionResult(1, "short exact fixtures (×2 exact, ×6 not exact)", not c.failures, details=c.failures, limit=1.0)


# ------------------------------------------------------------- criterion 2

def criterion_2(seed: int = 2, n: int = 200) -> CriterionResult:
    c = _Checks()
    rng = random.Random(seed)
    rings = [ZZ, ZZ, ZZ, Zmod(4), Zmod(6), Zmod(8), Zmod(12)]
    exact_count = 0
    for i in range(n):
        ring = rng.choice(rings)
        kind = rng.choice(["split", "exact"]) if i % 2 == 0 else "perturbed"
        rc = random_complex(rng, ring, 0, rng.randint(2, 4), kind=kind)
        cx = rc.complex
        by_exact = is_exact(cx)
        by_homology = all(homology(cx, k).is_zero for k in cx.degrees)
        by_qiso = is_quasi_iso(zero_to(cx))
        exact_count += by_exact
        c.check(by_exact == by_homology == by_qiso == rc.exact,
                f"case {i} over {ring}: exact={by_exact} H=0:{by_homology} qiso={by_qiso} built={rc.exact}")
    return CriterionResult(2, f"exact ⇔ H=0 ⇔ 0→C quasi-iso on {n} complexes ({exact_count} exact)",
                           not c.failures, details=c.failures[:10])


# ------------------------------------------------------------- criterion 3

LITERAL_TARGET = "0→ℤ-×2→ℤ→ℤ/2→ℤ/2→0"


def literal_snake_fixture():
    """The ∂ = ×2 fixture as literally stated; construction raises NotExact."""
    a = make_complex({0: _z()})
    b = make_complex({1: _z(), 0: _z()}, {1: [[2]]})
    c = make_complex({1: _z(), 0: cyclic(ZZ, 2)}, {1: [[0]]})
    f = make_chain_map(a, b, {0: [[1]]})
    g = make_chain_map(b, c, {1: [[1]], 0: [[1]]})
    return ShortExactSeqComplexes(f, g)


def repaired_snake_fixture():
    """C = Z in degree 1 only: ∂_1 is ×2 and the LES is 0→Z-×2→Z→Z/2→0."""
    a = make_complex({0: _z()})
    b = make_complex({1: _z(), 0: _z()}, {1: [[2]]})
    c = make_complex({1: _z(), 0: zero_module(ZZ)})
    f = make_chain_map(a, b, {0: [[1]]})
    g = make_chain_map(b, c, {1: [[1]]})
    return ShortExactSeqComplexes(f, g)


def literal_modules_fixture():
    """The literal modules with f_0 repaired to ×2."""
    a = make_complex({0: _z()})
    b = make_complex({1: _z(), 0: _z()}, {1: [[2]]})
    c = make_complex({1: _z(), 0: cyclic(ZZ, 2)}, {1: [[0]]})
    f = make_chain_map(a, b, {0: [[2]]})
    g = make_chain_map(b, c, {1: [[1]], 0: [[1]]})
    return ShortExactSeqComplexes(f, g)


def target_sequence_exact_choices() -> list[tuple[int, int]]:
    """All (u, v) making ``0→Z-×2→Z-u→Z/2-v→Z/2→0`` exact; brute force over the four hom choices."""
    z, z2 = _z(), cyclic(ZZ, 2)
    zero = free_module(ZZ, 0)
    out = []
    for u in (0, 1):
        for v in (0, 1):
            maps = [ModuleHom(zero, z, Matrix.zeros(ZZ, 1, 0)), _mul(2),
                    ModuleHom(z, z2, Matrix.from_rows(ZZ, [[u]])),
                    ModuleHom(z2, z2, Matrix.from_rows(ZZ, [[v]])),
                    ModuleHom(z2, zero_module(ZZ), Matrix.zeros(ZZ, 0, 1))]
            if all(exact_at_middle(maps[i], maps[i + 1]) for i in range(4)):
                out.append((u, v))
    return out


def _strip_zeros(seq) -> list[str]:
    return [str(m.decomposition) for m in seq.modules if not m.is_zero]


def criterion_3(seed: int = 3, n: int = 100) -> CriterionResult:
    c = _Checks()
    # literal fixture, as stated
    try:
        literal_snake_fixture()
        c.check(False, "literal fixture unexpectedly accepted")
    except NotExact as e:
        c.check(False, f"literal ∂=×2 fixture is not short exact ({e}, position {e.position})")
    choices = target_sequence_exact_choices()
    c.check(bool(choices), f"target {LITERAL_TARGET} admits no exact maps (checked all 4 choices)")
    # repaired fixtures (recorded, not part of the literal demand)
    les = long_exact_sequence(repaired_snake_fixture())
    c.note(f"repaired fixture LES: {' → '.join(_strip_zeros(les))}, exact={les.is_exact()}")
    les2 = long_exact_sequence(literal_modules_fixture())
    c.note(f"literal modules, f0=×2: {' → '.join(_strip_zeros(les2))}, exact={les2.is_exact()}")
    literal_failures = list(c.failures)
    rng = random.Random(seed)
    for i in range(n):
        ses = random_ses_complexes(rng)
        try:
            ok = long_exact_sequence(ses, rng=rng).is_exact()
        except AssertionError as e:
            ok = False
            c.note(str(e))
        c.check(ok, f"random SES {i}: LES not exact")
    for i in range(n):
        ses = exact_pair_ses(rng) if i % 2 == 0 else random_ses_complexes(rng)
        ea, eb, ec = two_of_three_exact(ses)
        c.check(sum((ea, eb, ec)) != 2, f"two-of-three violated on instance {i}: {(ea, eb, ec)}")
    random_ok = len(c.failures) == len(literal_failures)
    details = c.failures + c.notes
    if random_ok:
        details.append(f"randomized parts pass: {n} LES exact, {n} two-of-three instances")
    return CriterionResult(3, "snake/LES fixture, random LES, two-of-three", not c.failures, details=details)


# ------------------------------------------------------------- criterion 4

def criterion_4(seed: int = 4, n: int = 100) -> CriterionResult:
    c = _Checks()
    rng = random.Random(seed)
    split_seen = nonsplit_exact = nonzero_h = 0
    for i in range(n):
        ring = rng.choice([ZZ, ZZ, Zmod(4), Zmod(6)])
        rc = random_complex(rng, ring, 0, rng.randint(2, 3), kind=("split", "exact", "perturbed")[i % 3])
        cx = rc.complex
        s = find_null_homotopy(identity_map(cx))
        split_seen += rc.split
        nonsplit_exact += rc.exact and not rc.split
        has_h = not is_exact(cx)
        nonzero_h += has_h
        c.check((s is not None) == rc.split, f"complex {i} over {ring}: homotopy found={s is not None}, split={rc.split}")
        c.check((find_splitting(cx) is not None and not has_h) == rc.split, f"complex {i}: splitting search disagrees")
        if has_h:
            c.check(s is None, f"complex {i}: identity null-homotopic despite nonzero homology")
        # homotopic maps induce equal maps on homology
        k = rng.randint(-2, 2)
        f = make_chain_map(cx, cx, {d: Matrix.scalar(ring, cx.module(d).generators, k) for d in cx.degrees})
        raising = make_raising_maps(cx, cx, {d: random_hom(rng, cx.module(d), cx.module(d + 1)).map for d in cx.degrees})
        g = perturb(f, raising)
        h = are_chain_homotopic(f, g)
        c.check(h is not None, f"complex {i}: perturbed map not recognized as homotopic")
        for d in cx.degrees:
            c.check(induced_on_homology(f, d).map == induced_on_homology(g, d).map,
                    f"complex {i}: homotopic maps differ on H_{d}")
    title = f"null-homotopy of id ⇔ split exact ({split_seen} split, {nonsplit_exact} exact non-split, {nonzero_h} with H≠0)"
    return CriterionResult(4, title, not c.failures, details=c.failures[:10])


# ------------------------------------------------------------- criterion 5

def criterion_5() -> CriterionResult:
    c = _Checks()
    z2 = cyclic(ZZ, 2)
    r = free_resolution(z2)
    c.check(r.free_ranks == [1, 1] and r.phi(1).map.to_rows() == [[2]] and r.complete and r.depth == 1,
            f"ℤ/2 over ℤ: ranks {r.free_ranks}, φ1 {r.phi(1).map.to_rows()}, complete {r.complete}")
    r4 = free_resolution(cyclic(Zmod(4), 2), depth=10)
    c.check(r4.depth == 10 and r4.free_ranks == [1] * 11 and all(p.map.to_rows() == [[2]] for p in r4.maps)
            and not r4.complete, f"ℤ/2 over ℤ/4 to depth 10: ranks {r4.free_ranks}")
    z3 = cyclic(Zmod(6), 3)
    c.check(is_projective(z3), "ℤ/3 over ℤ/6 projective")
    c.check(z3.decomposition.free_rank == 0 and list(z3.decomposition.invariant_factors) == [3],
            f"ℤ/3 over ℤ/6 decomposes as {z3.decomposition}, not free")
    c.check(not is_projective(z2), "ℤ/2 over ℤ not projective")
    padded = make_resolution(z2, [[1, 0]], [[[2, 0], [0, 1]]])
    for p, q in ((r, padded), (padded, r)):
        u = lift_between_resolutions(ModuleHom(z2, z2, Matrix.identity(ZZ, 1)), p, q)
        c.check(is_quasi_iso(u), f"comparison lift {p.free_ranks}→{q.free_ranks} not a quasi-iso")
        c.check((q.augmentation @ u.level(0)).equals(p.augmentation), "lift does not cover the identity")
    return CriterionResult(5, "resolutions and comparison lifting", not c.failures, details=c.failures)


# ------------------------------------------------------------- criterion 6

def tor_table(a_max: int = 30, b_max: int = 30) -> dict[tuple[int, int], tuple[str, str, str, int]]:
    """``(a, b) -> (right, left, ideal module, gcd)`` decompositions of Tor_1(Z/a, Z/b)."""
    out = {}
    for a in range(2, a_max + 1):
        ma = cyclic(ZZ, a)
        for b in range(2, b_max + 1):
            mb = cyclic(ZZ, b)
            right = tor(TorRequest(ma, mb, 1, "right")).decomposition
            left = tor(TorRequest(ma, mb, 1, "left")).decomposition
            ideal = ideal_quotient_module(a, b).decomposition
            out[(a, b)] = (str(right), str(left), str(ideal), gcd(a, b))
    return out


def criterion_6(seed: int = 6) -> CriterionResult:
    c = _Checks()
    rng = random.Random(seed)
    table = tor_table()
    for (a, b), (right, left, ideal, g) in table.items():
        want = "0" if g == 1 else f"Z/{g}"
        c.check(right == left == ideal == want, f"Tor_1(Z/{a}, Z/{b}): {right}, {left}, {ideal}, want {want}")
    for i in range(100):
        m = random_module(rng)
        x = rng.randint(1, 12)
        t = tor_module(cyclic(ZZ, x), m, 1)
        c.check(_decomp(t) == _decomp(torsion_part(m, x)), f"torsion pair {i}: x={x}, M={m.decomposition}")
    for i in range(20):
        m = random_module(rng)
        f = free_module(ZZ, rng.randint(0, 3))
        for k in (1, 2):
            c.check(tor_module(f, m, k).is_zero and tor_module(m, f, k).is_zero, f"free module Tor_{k} nonzero")
        for k in (2, 3):
            c.check(tor_module(m, random_module(rng), k).is_zero, f"Tor_{k} over Z nonzero")
    r4 = Zmod(4)
    for i in range(1, 11):
        t = tor_module(cyclic(r4, 2), cyclic(r4, 2), i)
        c.check(_decomp(t) == (0, (2,)), f"Tor_{i}(Z/2, Z/2) over Z/4 = {t.decomposition}")
    for i in range(50):
        ring = rng.choice([ZZ, ZZ, Zmod(4), Zmod(6)])
        ses = random_ses_modules(rng, ring)
        les = tor_les(ses, random_module(rng, ring), rng.randint(1, 2))
        c.check(les.is_exact(), f"Tor LES {i} over {ring} not exact")
    return CriterionResult(6, "Tor table (841 cases ×3), torsion and free vanishing, ℤ/4 periodicity, Tor LES",
                           not c.failures, details=c.failures[:10], limit=30.0)


# ------------------------------------------------------------- criterion 7

SIMPLICIAL_EXPECTED = {
    "hollow tetrahedron": (hollow_tetrahedron, ["Z", "0", "Z"]),
    "circle": (circle, ["Z", "Z"]),
    "RP2": (rp2, ["Z", "Z/2", "0"]),
    "Klein bottle": (klein_bottle, ["Z", "Z ⊕ Z/2", "0"]),
}


def criterion_7() -> CriterionResult:
    c = _Checks()
    z2 = cyclic(ZZ, 2)
    for name, (build, want) in SIMPLICIAL_EXPECTED.items():
        k = build()
        got = [str(d) for d in homology_report(k)]
        c.check(got == want, f"{name}: {got} != {want}")
        cx = chain_complex_of(k)
        for n in cx.degrees:
            lhs, rhs = universal_coefficients(cx, z2, n)
            c.check(_decomp(lhs) == _decomp(rhs), f"{name}: UCT fails at n={n}: {lhs.decomposition} vs {rhs.decomposition}")
    return CriterionResult(7, "simplicial fixtures and universal coefficients", not c.failures, details=c.failures)


# ------------------------------------------------------------- criterion 8

def criterion_8(seed: int = 8, n: int = 1000) -> CriterionResult:
    c = _Checks()
    rng = random.Random(seed)
    oracle_cases = 0
    for i in range(n):
        r, k = rng.randint(1, 12), rng.randint(1, 12)
        if i % 4 == 0:
            r, k = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-50, 50) for _ in range(k)] for _ in range(r)]
        if i % 10 == 1 and r > 1:
            rows[-1] = [2 * x - y for x, y in zip(rows[0], rows[1 % r])]  # force rank deficiency
        a = Matrix.from_rows(ZZ, rows, k)
        s = snf(a)
        diag = s.diagonal
        c.check(s.u @ a @ s.v == s.d, f"case {i}: U A V != D")
        c.check(abs(det(s.u.to_rows())) == 1 and abs(det(s.v.to_rows())) == 1, f"case {i}: transforms not unimodular")
        off = [s.d[x, y] for x in range(r) for y in range(k) if x != y]
        c.check(not any(off), f"case {i}: D not diagonal")
        nz = [d for d in diag if d]
        c.check(all(d > 0 for d in nz) and len(nz) == s.rank and all(diag[j] != 0 for j in range(s.rank)),
                f"case {i}: diagonal signs or rank")
        c.check(all(nz[j + 1] % nz[j] == 0 for j in range(len(nz) - 1)), f"case {i}: divisibility chain broken")
        if r <= 6 and k <= 6:
            oracle_cases += 1
            c.check(nz == invariant_factors_by_minors(rows, k), f"case {i}: minors oracle disagrees")
    return CriterionResult(8, f"SNF engine on {n} matrices ({oracle_cases} against gcd-of-minors)",
                           not c.failures, details=c.failures[:10], limit=60.0)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_criterion(k: int) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[k]()
    res.seconds = time.perf_counter() - t0
    return res


def run_all(which=None) -> list[CriterionResult]:
    return [run_criterion(k) for k in (which or sorted(CRITERIA))]
