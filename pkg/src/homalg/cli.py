"""Command line interface.

Exit status: 0 on success, 1 when a mathematical condition fails (including
a negative answer from ``check-exact``, ``homotopy`` or ``report``), 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize as ser
from .chain import homology, identity_map, non_exact_degrees
from .derived import TorRequest, tor
from .diagram import long_exact_sequence
from .errors import DimensionError, HomalgError, ParseError
from .exactlin import ZZ, snf
from .homotopy import are_chain_homotopic, find_null_homotopy
from .resolve import free_resolution
from .simplicial import chain_complex_of, format_report, homology_report, load_facets


def _ring(args):
    return ser.ring_from_json(args.ring) if getattr(args, "ring", None) else None


def _load_module(spec: str, ring):
    """A module from a JSON file, or a shorthand string such as ``Z/4``."""
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        obj = ser.load_json(p)
        try:
            return ser.module_from_json(obj, ring)
        except ParseError as e:
            raise ParseError(f"{p}: {e}") from None
    return ser.parse_module_shorthand(spec, ring or ZZ)


def _load(path: str, parse):
    obj = ser.load_json(path)
    try:
        return parse(obj)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from None
    except (KeyError, TypeError, AttributeError) as e:
        raise ParseError(f"{path}: malformed input ({type(e).__name__}: {e})") from None


def _emit(args, obj, text: str):
    print(ser.dumps(obj) if args.json else text)


# ------------------------------------------------------------------ verbs

def cmd_snf(args) -> int:
    a = _load(args.matrix, ser.matrix_from_json)
    s = snf(a)
    text = "\n".join([f"invariant factors: {s.invariant_factors}", f"rank: {s.rank}", "D =", str(s.d)])
    _emit(args, {"rank": s.rank, "invariant_factors": [str(x) for x in s.invariant_factors],
                 "d": ser.matrix_to_json(s.d), "u": ser.matrix_to_json(s.u), "v": ser.matrix_to_json(s.v)}, text)
    return 0


def cmd_decompose(args) -> int:
    m = _load_module(args.module, _ring(args))
    _emit(args, ser.decomposition_to_json(m.decomposition), str(m.decomposition))
    return 0


def cmd_homology(args) -> int:
    if args.simplicial:
        k = load_facets(args.simplicial)
        report = homology_report(k)
        _emit(args, {"ring": "Z", "homology": {str(n): ser.decomposition_to_json(d) for n, d in enumerate(report)}},
              format_report(report))
        return 0
    if not args.complex:
        raise ParseError("homology needs a complex file or --simplicial")
    c = _load(args.complex, ser.complex_from_json)
    hs = {n: homology(c, n).decomposition for n in c.degrees}
    _emit(args, {"ring": ser.ring_to_json(c.ring), "homology": {str(n): ser.decomposition_to_json(d) for n, d in hs.items()}},
          ", ".join(f"H{n} = {d}" for n, d in hs.items()))
    return 0


def cmd_check_exact(args) -> int:
    c = _load(args.complex, ser.complex_from_json)
    bad = non_exact_degrees(c)
    text = "exact" if not bad else "not exact at degree " + ", ".join(map(str, bad))
    _emit(args, {"exact": not bad, "non_exact_degrees": bad}, text)
    return 0 if not bad else 1


def cmd_les(args) -> int:
    ses = _load(args.ses, ser.ses_complexes_from_json)
    les = long_exact_sequence(ses)
    rows = [f"{lab} = {m.decomposition}" for lab, m in zip(les.labels, les.modules)]
    text = "\n".join(rows + [f"exact: {les.is_exact()}"])
    _emit(args, {"labels": list(les.labels),
                 "modules": [ser.module_to_json(m) for m in les.modules],
                 "decompositions": [ser.decomposition_to_json(m.decomposition) for m in les.modules],
                 "maps": [ser.matrix_to_json(h.map) for h in les.maps],
                 "exact": les.is_exact()}, text)
    return 0


def _parse_homotopy_input(obj):
    if "modules" in obj:
        return ser.complex_from_json(obj), None, None
    src = ser.complex_from_json(ser.require(obj, "source", "homotopy input"))
    tgt = ser.complex_from_json(ser.require(obj, "target", "homotopy input")) if "target" in obj else src
    f = ser.chain_map_from_json(ser.require(obj, "f", "homotopy input"), src, tgt)
    g = ser.chain_map_from_json(obj["g"], src, tgt) if "g" in obj else f - f
    return None, f, g


def cmd_homotopy(args) -> int:
    c, f, g = _load(args.input, _parse_homotopy_input)
    if c is not None:
        s = find_null_homotopy(identity_map(c))
        found, what = s is not None, "identity is null-homotopic (split exact)" if s else "identity is not null-homotopic"
    else:
        s = are_chain_homotopic(f, g)
        found, what = s is not None, "f ≃ g" if s else "f and g are not chain homotopic"
    obj = {"homotopic": found, "homotopy": ser.raising_maps_to_json(s) if s else None}
    lines = [what]
    if s:
        lines += [f"s_{n} = {s.level(n).map.to_rows()}" for n in range(s.lo, s.lo + len(s.levels))]
    _emit(args, obj, "\n".join(lines))
    return 0 if found else 1


def cmd_resolve(args) -> int:
    m = _load_module(args.module, _ring(args))
    r = free_resolution(m, args.depth)
    lines = [f"ranks: {r.free_ranks}", f"complete: {r.complete}", f"augmentation: {r.augmentation.map.to_rows()}"]
    lines += [f"phi_{i}: {phi.map.to_rows()}" for i, phi in enumerate(r.maps, start=1)]
    _emit(args, ser.resolution_to_json(r), "\n".join(lines))
    return 0


def cmd_tor(args) -> int:
    ring = _ring(args) or ZZ
    if args.table:
        from .acceptance import tor_table
        a_max, b_max = args.table
        if ring != ZZ:
            raise ParseError("--table is defined over Z only")
        table = tor_table(a_max, b_max)
        bad = [k for k, (r, l, i, g) in table.items() if not r == l == i == ("0" if g == 1 else f"Z/{g}")]
        lines = [f"Tor_1(Z/{a}, Z/{b}) = {r}   left {l}   ideal {i}   gcd {g}" for (a, b), (r, l, i, g) in table.items()]
        lines.append(f"{len(table) - len(bad)}/{len(table)} agree with Z/gcd(a,b)")
        _emit(args, {"rows": [{"a": a, "b": b, "right": r, "left": l, "ideal": i, "gcd": str(g)}
                              for (a, b), (r, l, i, g) in table.items()], "mismatches": len(bad)}, "\n".join(lines))
        return 0 if not bad else 1
    if len(args.modules) != 2 or args.degree is None:
        raise ParseError("tor needs two modules and --degree (or --table A_MAX B_MAX)")
    m, n = (_load_module(x, ring) for x in args.modules)
    t = tor(TorRequest(m, n, args.degree, args.side))
    _emit(args, ser.decomposition_to_json(t.decomposition), str(t.decomposition))
    return 0


def cmd_report(args) -> int:
    from .acceptance import run_all
    results = run_all(args.criteria or None)
    passed = sum(r.ok for r in results)
    if args.json:
        print(ser.dumps([{"criterion": r.number, "title": r.title, "passed": r.ok, "seconds": f"{r.seconds:.3f}",
                          "details": r.details} for r in results]))
    else:
        for r in results:
            print(r.line())
        print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homalg", description="Exact homological algebra over Z and Z/m.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("snf", cmd_snf, "Smith normal form of a matrix JSON")
    sp.add_argument("matrix")
    sp = verb("decompose", cmd_decompose, "canonical decomposition of a module")
    sp.add_argument("module", help="module JSON file or shorthand like 'Z^2 + Z/4'")
    sp.add_argument("--ring")
    sp = verb("homology", cmd_homology, "homology of a complex JSON or a simplicial complex")
    sp.add_argument("complex", nargs="?")
    sp.add_argument("--simplicial", metavar="FILE")
    sp = verb("check-exact", cmd_check_exact, "certify exactness of a complex")
    sp.add_argument("complex")
    sp = verb("les", cmd_les, "long exact homology sequence of a SES of complexes")
    sp.add_argument("ses")
    sp = verb("homotopy", cmd_homotopy, "search for a chain homotopy or a contraction")
    sp.add_argument("input")
    sp = verb("resolve", cmd_resolve, "free resolution of a module")
    sp.add_argument("module")
    sp.add_argument("--ring")
    sp.add_argument("--depth", type=int, default=4)
    sp = verb("tor", cmd_tor, "Tor_i(M, N)")
    sp.add_argument("modules", nargs="*")
    sp.add_argument("--ring")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--side", choices=["left", "right"], default="right")
    sp.add_argument("--table", nargs=2, type=int, metavar=("A_MAX", "B_MAX"))
    sp = verb("report", cmd_report, "run the acceptance criteria")
    sp.add_argument("criteria", nargs="*", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", 0) is not None and getattr(args, "depth", 0) < 0:
        parser.error("--depth must be nonnegative")
    if getattr(args, "degree", None) is not None and args.degree < 0:
        parser.error("--degree must be nonnegative")
    try:
        return args.fn(args)
    except HomalgError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ParseError, DimensionError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
