"""Slow reference computations that share no code with the Smith form engine.

Used by the acceptance report and the tests to cross-check results.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd


def det(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_divisors(rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """``D_k`` = gcd of all k×k minors, for k = 1 .. min(rows, cols); 0 once all minors vanish."""
    r = len(rows)
    c = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for ri in combinations(range(r), k):
            for ci in combinations(range(c), k):
                g = gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
    return out


def invariant_factors_by_minors(rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """Nonzero Smith diagonal as ``D_k / D_{k-1}``."""
    out, prev = [], 1
    for dk in determinantal_divisors(rows, ncols):
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def _primes(n: int) -> list[int]:
    ps, x = [], n
    p = 2
    while p * p <= x:
        if x % p == 0:
            ps.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        ps.append(x)
    return ps


def finite_group_invariants(generators: int, relation_columns: list[list[int]], exponent: int) -> list[int]:
    """Invariant factors of ``(Z/e)^g / <columns>`` by counting elements killed by ``p^k``.

    ``exponent`` must kill the group being described (for a module over
    Z/m pass m).  Brute force over ``e^g`` elements, so keep it small.
    """
    e = exponent
    if generators == 0 or e == 1:
        return []
    # subgroup H generated by the columns, by closure
    gens = [tuple(x % e for x in col) for col in relation_columns]
    zero = (0,) * generators
    h = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for gcol in gens:
                y = tuple((a + b) % e for a, b in zip(x, gcol))
                if y not in h:
                    h.add(y)
                    nxt.append(y)
        frontier = nxt
    size_h = len(h)

    def killed(n: int) -> int:
        cnt = sum(1 for x in product(range(e), repeat=generators) if tuple(n * a % e for a in x) in h)
        return cnt // size_h

    # multiset of prime-power cyclic factors
    factors: list[int] = []
    for p in _primes(e):
        k, prev_count, cyclic_at_least = 1, 1, []
        while True:
            q = p ** k
            if e % q:
                break
            c = killed(q)
            ratio = c // prev_count
            m = 0
            while ratio > 1:
                ratio //= p
                m += 1
            cyclic_at_least.append(m)  # factors with p-part >= p^k
            prev_count = c
            k += 1
        for k, m in enumerate(cyclic_at_least, start=1):
            nxt = cyclic_at_least[k] if k < len(cyclic_at_least) else 0
            factors.extend([p ** k] * (m - nxt))
    # combine prime powers into an invariant factor chain
    by_prime: dict[int, list[int]] = {}
    for q in factors:
        p = _primes(q)[0]
        by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for v in by_prime.values():
        v.sort(reverse=True)
        for i, q in enumerate(v):
            chain[length - 1 - i] *= q
    return chain


def module_invariants_by_enumeration(generators: int, relation_columns: list[list[int]],
                                     modulus: int | None = None, exponent: int | None = None) -> list[int]:
    """Invariant factors of a finite module.

    Over Z/m the exponent is m.  Over Z pass an ``exponent`` that kills the
    module (for instance |det| of a square full-rank relation matrix).
    """
    e = modulus if modulus is not None else exponent
    if e is None:
        raise ValueError("need a modulus or an exponent bound")
    return [d for d in finite_group_invariants(generators, relation_columns, e) if d != 1]
