"""Search for a triangulated Klein bottle on 8 vertices.

Closed surfaces are grown one triangle at a time: the lexicographically
smallest edge lying on only one triangle is closed off by a new triangle,
and every vertex link must stay a disjoint union of paths or a single
cycle.  Accepted surfaces have Euler characteristic 0; the Klein bottle is
told apart from the torus by H1 = Z + Z/2.

    PYTHONPATH=src python3 scripts/find_klein_bottle.py
"""

import sys
from itertools import combinations

from homalg.simplicial import SimplicialComplex, homology_report

N = 8


def link_ok(tris, v, closed):
    """Link of ``v`` is a union of paths, or (when closed) one cycle through all its edges."""
    adj = {}
    for t in tris:
        if v in t:
            a, b = [x for x in t if x != v]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    if any(len(n) > 2 for n in adj.values()):
        return False
    if not closed:
        return True
    if any(len(n) != 2 for n in adj.values()):
        return False
    start = next(iter(adj))
    seen, prev, cur = {start}, None, start
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        seen.add(cur)
    return len(seen) == len(adj)


def search(tris, edge_count):
    open_edges = sorted(e for e, c in edge_count.items() if c == 1)
    if not open_edges:
        verts = {x for t in tris for x in t}
        if len(verts) == N and len(tris) == 16 and all(link_ok(tris, v, True) for v in range(N)):
            yield list(tris)
        return
    if len(tris) >= 16:
        return
    a, b = open_edges[0]
    for c in range(N):
        if c in (a, b):
            continue
        t = tuple(sorted((a, b, c)))
        if t in tris:
            continue
        new_edges = [tuple(sorted(p)) for p in combinations(t, 2)]
        if any(edge_count.get(e, 0) >= 2 for e in new_edges):
            continue
        tris.append(t)
        for e in new_edges:
            edge_count[e] = edge_count.get(e, 0) + 1
        if all(link_ok(tris, v, False) for v in t):
            yield from search(tris, edge_count)
        for e in new_edges:
            edge_count[e] -= 1
        tris.pop()


def main():
    start = [(0, 1, 2)]
    counts = {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    for tris in search(start, counts):
        k = SimplicialComplex.from_facets(tris)
        h = homology_report(k)
        if str(h[1]) == "Z ⊕ Z/2":
            for t in sorted(tris):
                print(*t)
            return 0
    print("no Klein bottle found", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
