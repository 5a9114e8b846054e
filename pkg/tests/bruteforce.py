"""Exhaustive oracles for tiny finite modules.

A finite module is handled as ``(Z/e)^g / H`` where ``H`` is spanned by the
relation columns and ``e`` kills the module (the modulus over Z/m, or a
known exponent over Z).  Nothing here calls into the Smith form code.
"""

from itertools import product


def span_mod(columns, g, e):
    zero = (0,) * g
    h = {zero}
    frontier = [zero]
    cols = [tuple(x % e for x in c) for c in columns]
    while frontier:
        nxt = []
        for x in frontier:
            for c in cols:
                y = tuple((a + b) % e for a, b in zip(x, c))
                if y not in h:
                    h.add(y)
                    nxt.append(y)
        frontier = nxt
    return h


class FiniteModel:
    """Cosets of ``(Z/e)^g`` modulo the span of ``columns``."""

    def __init__(self, g, columns, e):
        self.g, self.e = g, e
        self.h = span_mod(columns, g, e)
        self._key = {}
        for v in product(range(e), repeat=g):
            if v not in self._key:
                coset = [tuple((a + b) % e for a, b in zip(v, h)) for h in self.h]
                rep = min(coset)
                for w in coset:
                    self._key[w] = rep
        self.elements = sorted(set(self._key.values()))

    def key(self, v):
        return self._key[tuple(x % self.e for x in v)]

    def __len__(self):
        return len(self.elements)


def model_of(m, exponent=None):
    """FiniteModel of an FpModule (over Z pass an exponent killing it)."""
    e = m.ring.modulus if m.ring.modulus is not None else exponent
    cols = [list(m.relations.column(j)) for j in range(m.relations.cols)]
    return FiniteModel(m.generators, cols, e)


def kernel_by_enumeration(rows, ncols, m):
    return [x for x in product(range(m), repeat=ncols)
            if all(sum(r[j] * x[j] for j in range(ncols)) % m == 0 for r in rows)]


def solutions_by_enumeration(rows, ncols, b, m):
    return [x for x in product(range(m), repeat=ncols)
            if all((sum(r[j] * x[j] for j in range(ncols)) - bi) % m == 0 for r, bi in zip(rows, b))]


def apply(matrix_rows, v, e):
    return tuple(sum(a * b for a, b in zip(row, v)) % e for row in matrix_rows)


def find_isomorphism(mm: FiniteModel, nm: FiniteModel, e):
    """Search generator images for a well-defined bijection; returns images or None."""
    if len(mm) != len(nm):
        return None
    g = mm.g
    basis = [tuple(int(i == j) for j in range(g)) for i in range(g)]
    for images in product(nm.elements, repeat=g):
        rows = [[images[j][i] for j in range(g)] for i in range(nm.g)]
        if any(nm.key(apply(rows, h, e)) != nm.key((0,) * nm.g) for h in mm.h):
            continue
        seen = {nm.key(apply(rows, x, e)) for x in mm.elements}
        if len(seen) == len(nm):
            return images
    del basis
    return None
