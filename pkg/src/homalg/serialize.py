"""JSON forms for matrices, modules, homs, complexes, chain maps and resolutions.

Matrix entries are written as decimal strings so no consumer rounds them;
integers are also accepted on input.  Wherever a module is expected a
shorthand string such as ``"Z^2 ⊕ Z/4"`` may stand in for the full form.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .chain import ChainComplex, ChainMap, make_chain_map, make_complex
from .diagram import ShortExactSeqComplexes, ShortExactSeqModules
from .errors import ParseError
from .exactlin import ZZ, Matrix, RingSpec, Zmod
from .fpmod import Decomposition, FpModule, ModuleHom, direct_sum_many, cyclic, free_module, zero_module
from .homotopy import DegreeRaisingMaps, make_raising_maps
from .resolve import Resolution, make_resolution


# ------------------------------------------------------------------ rings

def ring_to_json(ring: RingSpec):
    return "Z" if ring.is_integers else {"Zmod": str(ring.modulus)}


def ring_from_json(obj) -> RingSpec:
    if obj in ("Z", "ZZ"):
        return ZZ
    if isinstance(obj, str):
        m = re.fullmatch(r"\s*Z\s*/\s*(\d+)\s*", obj)
        if m:
            return _zmod(int(m.group(1)))
    if isinstance(obj, dict) and set(obj) == {"Zmod"}:
        return _zmod(_int(obj["Zmod"], "Zmod"))
    raise ParseError(f"unrecognized ring {obj!r}; expected \"Z\", \"Z/m\" or {{\"Zmod\": m}}")


def _zmod(m: int) -> RingSpec:
    if m < 2:
        raise ParseError(f"modulus must be at least 2, got {m}")
    return Zmod(m)


def _int(x, what: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{what}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"\s*[+-]?\d+\s*", x):
        return int(x)
    raise ParseError(f"{what}: expected an integer, got {x!r}")


def require(obj, key, what):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"{what}: missing key {key!r}")
    return obj[key]


# --------------------------------------------------------------- matrices

def matrix_to_json(a: Matrix) -> dict:
    return {"ring": ring_to_json(a.ring), "rows": a.rows, "cols": a.cols,
            "entries": [[str(x) for x in row] for row in a.to_rows()]}


def matrix_from_json(obj, ring: RingSpec | None = None, shape: tuple[int, int] | None = None) -> Matrix:
    """A Matrix from its JSON form or from bare nested lists.

    Bare lists need ``ring``; ``shape`` disambiguates matrices with no rows.
    """
    if isinstance(obj, list):
        if ring is None:
            raise ParseError("bare matrix needs a ring")
        rows = [[_int(x, "matrix entry") for x in _row(r)] for r in obj]
        if shape is not None:
            r, c = shape
            if not rows and r == 0:
                return Matrix.zeros(ring, 0, c)
            if len(rows) != r or any(len(x) != c for x in rows):
                raise ParseError(f"matrix should be {r}x{c}")
            return Matrix.from_rows(ring, rows, c)
        cols = len(rows[0]) if rows else 0
        if any(len(x) != cols for x in rows):
            raise ParseError("ragged matrix rows")
        return Matrix.from_rows(ring, rows, cols)
    mring = ring_from_json(require(obj, "ring", "matrix")) if "ring" in obj else ring
    if mring is None:
        raise ParseError("matrix: missing ring")
    if ring is not None and mring != ring:
        raise ParseError(f"matrix over {mring} where {ring} was expected")
    r = _int(require(obj, "rows", "matrix"), "rows")
    c = _int(require(obj, "cols", "matrix"), "cols")
    if r < 0 or c < 0:
        raise ParseError("matrix dimensions must be nonnegative")
    entries = require(obj, "entries", "matrix")
    if not isinstance(entries, list) or len(entries) != r:
        raise ParseError(f"matrix: expected {r} rows of entries")
    rows = []
    for i, row in enumerate(entries):
        row = _row(row)
        if len(row) != c:
            raise ParseError(f"matrix row {i} has {len(row)} entries, expected {c}")
        rows.append([_int(x, f"matrix entry ({i}, {j})") for j, x in enumerate(row)])
    if shape is not None and (r, c) != shape:
        raise ParseError(f"matrix is {r}x{c}, expected {shape[0]}x{shape[1]}")
    return Matrix.from_rows(mring, rows, c)


def _row(x):
    if not isinstance(x, list):
        raise ParseError(f"matrix row must be a list, got {x!r}")
    return x


# ---------------------------------------------------------------- modules

_TERM = re.compile(r"""^\s*(?:
      (?P<zero>0)
    | (?P<free>Z|R)(?:\^(?P<frank>\d+))?
    | \(\s*Z\s*/\s*(?P<pd>\d+)\s*\)\s*\^\s*(?P<prank>\d+)
    | Z\s*/\s*(?P<d>\d+)
)\s*$""", re.X)


def parse_module_shorthand(text: str, ring: RingSpec = ZZ) -> FpModule:
    """``"Z^2 ⊕ Z/4 ⊕ (Z/3)^2"``; ``+`` also separates summands.

    ``Z`` and ``R`` mean a free summand of rank one over ``ring``; ``Z/d``
    over ``Z/m`` needs ``d | m``.
    """
    pieces = []
    for term in re.split(r"⊕|\+", text):
        mt = _TERM.match(term)
        if not mt:
            raise ParseError(f"cannot parse module term {term.strip()!r} in {text!r}")
        if mt["zero"]:
            continue
        if mt["free"]:
            if mt["free"] == "Z" and not ring.is_integers:
                raise ParseError(f"'Z' is ambiguous over {ring}; write R or {ring}")
            pieces.extend([free_module(ring, 1)] * int(mt["frank"] or 1))
            continue
        d, k = (int(mt["pd"]), int(mt["prank"])) if mt["pd"] else (int(mt["d"]), 1)
        if d < 1:
            raise ParseError(f"cyclic order must be positive in {term.strip()!r}")
        if not ring.is_integers and ring.modulus % d:
            raise ParseError(f"Z/{d} is not a module over {ring}")
        pieces.extend([cyclic(ring, d)] * k)
    if not pieces:
        return zero_module(ring)
    return direct_sum_many(pieces, ring) if len(pieces) > 1 else pieces[0]


def module_to_json(m: FpModule) -> dict:
    return {"ring": ring_to_json(m.ring), "generators": m.generators,
            "relations": matrix_to_json(m.relations)}


def module_from_json(obj, ring: RingSpec | None = None) -> FpModule:
    if isinstance(obj, str):
        return parse_module_shorthand(obj, ring or ZZ)
    mring = ring_from_json(obj["ring"]) if isinstance(obj, dict) and "ring" in obj else ring
    if mring is None:
        raise ParseError("module: missing ring")
    if ring is not None and mring != ring:
        raise ParseError(f"module over {mring} where {ring} was expected")
    g = _int(require(obj, "generators", "module"), "generators")
    if g < 0:
        raise ParseError("generators must be nonnegative")
    rel = obj.get("relations", [])
    if isinstance(rel, list) and not rel:
        rel = Matrix.zeros(mring, g, 0)
    else:
        rel = matrix_from_json(rel, mring)
    if rel.rows != g:
        raise ParseError(f"relations have {rel.rows} rows for {g} generators")
    return FpModule(mring, g, rel)


def decomposition_to_json(d: Decomposition) -> dict:
    return {"ring": ring_to_json(d.ring), "free_rank": d.free_rank,
            "invariant_factors": [str(x) for x in d.invariant_factors], "text": str(d)}


def decomposition_from_json(obj) -> Decomposition:
    ring = ring_from_json(require(obj, "ring", "decomposition"))
    free = _int(require(obj, "free_rank", "decomposition"), "free_rank")
    factors = tuple(_int(x, "invariant factor") for x in require(obj, "invariant_factors", "decomposition"))
    return Decomposition(ring, free, factors)


def hom_to_json(f: ModuleHom) -> dict:
    return {"domain": module_to_json(f.domain), "codomain": module_to_json(f.codomain),
            "map": matrix_to_json(f.map)}


def hom_from_json(obj, ring: RingSpec | None = None) -> ModuleHom:
    dom = module_from_json(require(obj, "domain", "hom"), ring)
    cod = module_from_json(require(obj, "codomain", "hom"), ring or dom.ring)
    m = matrix_from_json(require(obj, "map", "hom"), dom.ring, (cod.generators, dom.generators))
    return ModuleHom(dom, cod, m)


# -------------------------------------------------------------- complexes

def complex_to_json(c: ChainComplex) -> dict:
    return {
        "ring": ring_to_json(c.ring),
        "degrees": [c.lo, c.hi],
        "modules": {str(n): module_to_json(c.module(n)) for n in c.degrees},
        "boundaries": {str(n): matrix_to_json(c.d(n).map) for n in range(c.lo + 1, c.hi + 1)},
    }


def _degree_keys(obj: dict, what: str) -> dict[int, object]:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object keyed by degree")
    return {_int(k, f"{what} degree"): v for k, v in obj.items()}


def complex_from_json(obj) -> ChainComplex:
    ring = ring_from_json(require(obj, "ring", "complex")) if "ring" in obj else ZZ
    mods = {n: module_from_json(v, ring) for n, v in _degree_keys(require(obj, "modules", "complex"), "modules").items()}
    if "degrees" in obj:
        degs = obj["degrees"]
        if not isinstance(degs, list) or not degs:
            raise ParseError("degrees: expected [lo, hi] or a list of degrees")
        lo, hi = min(_int(x, "degree") for x in degs), max(_int(x, "degree") for x in degs)
        for n in range(lo, hi + 1):
            mods.setdefault(n, zero_module(ring))
        if any(not lo <= n <= hi for n in mods):
            raise ParseError("module degree outside the declared degrees")
    if not mods:
        raise ParseError("complex has no modules")
    bds = {}
    for n, v in _degree_keys(obj.get("boundaries", {}), "boundaries").items():
        if n not in mods or n - 1 not in mods:
            raise ParseError(f"boundary at degree {n} needs modules at {n} and {n - 1}")
        bds[n] = matrix_from_json(v, ring, (mods[n - 1].generators, mods[n].generators))
    return make_complex(mods, bds, ring=ring)


def levels_to_json(levels: dict[int, Matrix]) -> dict:
    return {str(n): matrix_to_json(m) for n, m in levels.items()}


def chain_map_to_json(u: ChainMap, with_complexes: bool = True) -> dict:
    out = {"levels": levels_to_json({n: u.level(n).map for n in u.degrees})}
    if with_complexes:
        out = {"source": complex_to_json(u.source), "target": complex_to_json(u.target), **out}
    return out


def chain_map_from_json(obj, source: ChainComplex | None = None, target: ChainComplex | None = None) -> ChainMap:
    source = source or complex_from_json(require(obj, "source", "chain map"))
    target = target or complex_from_json(require(obj, "target", "chain map"))
    levels = {}
    for n, v in _degree_keys(require(obj, "levels", "chain map"), "levels").items():
        levels[n] = matrix_from_json(v, source.ring, (target.module(n).generators, source.module(n).generators))
    return make_chain_map(source, target, levels)


def raising_maps_to_json(s: DegreeRaisingMaps) -> dict:
    return {"levels": {str(n): hom_to_json(s.level(n)) for n in range(s.lo, s.lo + len(s.levels))}}


def raising_maps_from_json(obj, source: ChainComplex, target: ChainComplex) -> DegreeRaisingMaps:
    levels = {}
    for n, v in _degree_keys(require(obj, "levels", "raising maps"), "levels").items():
        shape = (target.module(n + 1).generators, source.module(n).generators)
        levels[n] = matrix_from_json(v["map"] if isinstance(v, dict) and "map" in v else v, source.ring, shape)
    return make_raising_maps(source, target, levels)


# --------------------------------------------------------------- sequences

def ses_complexes_to_json(ses: ShortExactSeqComplexes) -> dict:
    return {"a": complex_to_json(ses.a), "b": complex_to_json(ses.b), "c": complex_to_json(ses.c),
            "f": chain_map_to_json(ses.f, False), "g": chain_map_to_json(ses.g, False)}


def ses_complexes_from_json(obj) -> ShortExactSeqComplexes:
    a, b, c = (complex_from_json(require(obj, k, "ses")) for k in "abc")
    f = chain_map_from_json(require(obj, "f", "ses"), a, b)
    g = chain_map_from_json(require(obj, "g", "ses"), b, c)
    return ShortExactSeqComplexes(f, g)


def ses_modules_to_json(ses: ShortExactSeqModules) -> dict:
    return {"a": module_to_json(ses.a), "b": module_to_json(ses.b), "c": module_to_json(ses.c),
            "f": matrix_to_json(ses.f.map), "g": matrix_to_json(ses.g.map)}


def ses_modules_from_json(obj, ring: RingSpec | None = None) -> ShortExactSeqModules:
    a = module_from_json(require(obj, "a", "ses"), ring)
    ring = a.ring
    b, c = module_from_json(require(obj, "b", "ses"), ring), module_from_json(require(obj, "c", "ses"), ring)
    f = matrix_from_json(require(obj, "f", "ses"), ring, (b.generators, a.generators))
    g = matrix_from_json(require(obj, "g", "ses"), ring, (c.generators, b.generators))
    return ShortExactSeqModules(ModuleHom(a, b, f), ModuleHom(b, c, g))


def resolution_to_json(r: Resolution) -> dict:
    return {"target": module_to_json(r.target), "ranks": r.free_ranks, "complete": r.complete,
            "augmentation": matrix_to_json(r.augmentation.map),
            "maps": [matrix_to_json(phi.map) for phi in r.maps]}


def resolution_from_json(obj) -> Resolution:
    target = module_from_json(require(obj, "target", "resolution"))
    aug = matrix_from_json(require(obj, "augmentation", "resolution"), target.ring)
    maps = [matrix_from_json(m, target.ring) for m in require(obj, "maps", "resolution")]
    r = make_resolution(target, aug, maps)
    if "complete" in obj and bool(obj["complete"]) != r.complete:
        raise ParseError("stored 'complete' flag disagrees with the maps")
    return r


# -------------------------------------------------------------------- files

def load_json(path) -> object:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"{p}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{p}:{e.lineno}: {e.msg}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
