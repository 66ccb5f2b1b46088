"""Command-line front end: `quadtors torsion|growth|sieve|tate|galois|verify`.

Exit status: 0 clean, 1 counterexample found, 2 usage or input error,
3 root search indeterminate.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .curve import O, Curve, Point
from .errors import Indeterminate, InvalidArgument, NotFound

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3

FIELDS = ("a1", "a2", "a3", "a4", "a6")


class CorpusError(InvalidArgument):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    source: str = ""

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def curve(self) -> Curve:
        return Curve.from_ainvs(self.ainvs)

    @property
    def conductor_label(self) -> int:
        """Leading integer of a database-style label such as 15.a3."""
        head = self.label.split(".")[0]
        return int(head) if head.isdigit() else 0


def _entry(label, values, where: str, source="") -> CorpusEntry:
    try:
        coeffs = [int(str(v).strip()) for v in values]
    except (TypeError, ValueError):
        raise CorpusError(f"{where}: non-integer coefficient in {list(values)}") from None
    if not label:
        raise CorpusError(f"{where}: empty label")
    e = CorpusEntry(label, *coeffs, source=source or "")
    try:
        e.curve()
    except InvalidArgument:
        raise CorpusError(f"curve {label!r} ({where}) is singular") from None
    return e


def _parse_csv(text: str, name: str) -> list[CorpusEntry]:
    rows = [(i, line) for i, line in enumerate(text.splitlines(), 1)
            if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise CorpusError(f"{name}: no header line")
    hline, header = rows[0]
    cols = [c.strip() for c in next(csv.reader([header]))]
    if cols[:6] != ["label", *FIELDS]:
        raise CorpusError(f"{name}:{hline}: header must start with label,a1,a2,a3,a4,a6")
    out = []
    for lineno, line in rows[1:]:
        vals = next(csv.reader([line]))
        if len(vals) < 6 or len(vals) > len(cols):
            raise CorpusError(f"{name}:{lineno}: expected {len(cols)} fields, got {len(vals)}")
        src = vals[cols.index("source")] if "source" in cols and len(vals) > cols.index("source") else ""
        out.append(_entry(vals[0].strip(), vals[1:6], f"{name}:{lineno}", src))
    return out


def _parse_json(text: str, name: str) -> list[CorpusEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{name}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, list):
        raise CorpusError(f"{name}: expected a JSON array")
    out = []
    for i, obj in enumerate(data):
        if not isinstance(obj, dict) or any(k not in obj for k in ("label", *FIELDS)):
            raise CorpusError(f"{name}: entry {i} lacks label,a1,a2,a3,a4,a6")
        out.append(_entry(str(obj["label"]), [obj[k] for k in FIELDS], f"{name}: entry {i}",
                          obj.get("source", "")))
    return out


def parse_corpus(path=None, text: str | None = None) -> list[CorpusEntry]:
    """Read a CSV or JSON corpus; the bundled one when neither argument is given."""
    if text is None:
        if path is None:
            text = resources.files("quadtors.data").joinpath("corpus.csv").read_text(encoding="utf-8")
            path = "corpus.csv"
        else:
            text = Path(path).read_text(encoding="utf-8")
    name = str(path) if path is not None else "<corpus>"
    entries = _parse_json(text, name) if text.lstrip().startswith("[") else _parse_csv(text, name)
    seen = set()
    for e in entries:
        if e.label in seen:
            raise CorpusError(f"duplicate label {e.label!r} in {name}")
        seen.add(e.label)
    return entries


def bundled_corpus(max_conductor: int | None = None) -> list[CorpusEntry]:
    es = parse_corpus()
    if max_conductor is not None:
        es = [e for e in es if e.conductor_label <= max_conductor]
    return es


def find_curve(label: str) -> CorpusEntry:
    for e in parse_corpus():
        if e.label == label:
            return e
    raise NotFound(f"no bundled curve labelled {label!r}")


# --- formatting -----------------------------------------------------------

def _curve_arg(s: str) -> Curve:
    parts = s.split(",")
    if len(parts) == 1:
        try:
            return find_curve(s).curve()
        except NotFound as exc:
            raise argparse.ArgumentTypeError(exc.args[0]) from None
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("expected a1,a2,a3,a4,a6 or a bundled label")
    try:
        return Curve.from_ainvs([Fraction(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point_arg(s: str):
    parts = s.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected x,y")
    try:
        return Point(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pt(P) -> list | str:
    return "O" if P is O else [str(P[0]), str(P[1])]


def _emit(args, obj, text: str):
    print(json.dumps(obj, indent=2, sort_keys=False) if args.json else text)


# --- commands -------------------------------------------------------------

def cmd_torsion(args) -> int:
    from .divpoly import torsion_over_Q
    from .growth import torsion_over_K
    if args.d is None:
        T, gens = torsion_over_Q(args.curve)
    else:
        T, gens = torsion_over_K(args.curve, args.d)
    obj = {"curve": list(map(str, args.curve.ainvs)), "d": args.d, "structure": str(T),
           "generators": [_pt(P) for P in gens]}
    text = str(T) + "".join(f"\n  generator ({P[0]}, {P[1]})" for P in gens)
    _emit(args, obj, text)
    return EXIT_OK


def cmd_growth(args) -> int:
    from .exact import squarefree_range
    from .growth import growth_record
    recs = []
    for d in squarefree_range(args.dmax):
        r = growth_record(args.curve, d)
        if r.grew or args.all:
            recs.append(r)
    text = "\n".join(f"d={r.d:4d}  {r.T_Q} -> {r.T_K}  new orders {sorted(r.new_orders)}"
                     for r in recs) or "no growth"
    _emit(args, [r.to_dict() for r in recs], text)
    return EXIT_OK


def cmd_sieve(args) -> int:
    from .sieve import sieve
    res = sieve(args.curve, args.bound)
    text = (f"coarse primes {sorted(res.coarse_primes)}\nsharp primes  {sorted(res.sharp_primes)}\n"
            f"candidate d   {list(res.candidate_d)}")
    _emit(args, res.to_dict(), text)
    return EXIT_OK


def cmd_tate(args) -> int:
    from .tate import to_tate_normal_form, verify_discriminant_identities
    tf, trace = to_tate_normal_form(args.curve, args.point)
    rep = verify_discriminant_identities(trace)
    obj = {"b": str(tf.b), "c": str(tf.c), "disc": str(tf.disc),
           "trace": trace.to_dict(), "identities": rep.results}
    _emit(args, obj, f"{tf}\ndisc {tf.disc}\n{rep}")
    return EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_galois(args) -> int:
    from . import galois as gl
    G = gl.named_subgroup(args.ell, args.name, args.eps)
    obj = {"ell": G.ell, "name": args.name, "order": G.order}
    lines = [f"{args.name} over F_{G.ell}: order {G.order}"]
    if args.elements:
        obj["elements"] = [list(m) for m in G.elements]
        lines += [gl.fmt(m) for m in G.elements]
    if args.fixed_points:
        fv = sorted(gl.fixed_vectors(G))
        obj["fixed_vectors"] = [list(v) for v in fv]
        lines.append(f"fixed vectors: {fv}")
    if args.index2:
        subs = gl.index2_subgroups(G)
        obj["index2"] = [[list(m) for m in H.elements] for H in subs]
        lines.append(f"{len(subs)} subgroup(s) of index 2")
        lines += ["  " + " ".join(gl.fmt(m) for m in H.elements) for H in subs]
    if args.analysis:
        res = gl.quadratic_growth_analysis(G)
        obj["analysis"] = [{"subgroup": [list(m) for m in c.subgroup.elements],
                            "new_fixed": sorted(list(v) for v in c.new_fixed),
                            "in_sl2": c.in_sl2} for c in res]
        lines.append(f"{len(res)} index-2 subgroup(s) with new fixed vectors")
        lines += [f"  order {c.subgroup.order}, new {sorted(c.new_fixed)}, in SL2: {c.in_sl2}" for c in res]
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .sieve import verify_growth_theorems
    corpus = parse_corpus(args.corpus)
    if args.max_conductor is not None:
        corpus = [e for e in corpus if e.conductor_label <= args.max_conductor]
    rep = verify_growth_theorems(corpus, args.dmax, jobs=args.jobs)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(rep.summary())
        for r in rep.counterexamples:
            print("COUNTEREXAMPLE", json.dumps(r.to_dict()))
        for item in rep.indeterminate:
            print("INDETERMINATE", json.dumps(item))
    return rep.exit_status()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadtors", description="Torsion growth of elliptic curves over quadratic fields.")
    sub = p.add_subparsers(dest="command", required=True)

    def curve_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--curve", type=_curve_arg, required=True, help="a1,a2,a3,a4,a6 or a bundled label")
        s.add_argument("--json", action="store_true")
        return s

    s = curve_cmd("torsion", "torsion structure over Q or Q(sqrt d)")
    s.add_argument("--d", type=int, default=None)
    s.set_defaults(func=cmd_torsion)

    s = curve_cmd("growth", "quadratic fields where the torsion grows")
    s.add_argument("--dmax", type=int, default=30)
    s.add_argument("--all", action="store_true", help="also list d without growth")
    s.set_defaults(func=cmd_growth)

    s = curve_cmd("sieve", "candidate primes and fields")
    s.add_argument("--bound", type=int, default=100)
    s.set_defaults(func=cmd_sieve)

    s = curve_cmd("tate", "Tate normal form at a rational point")
    s.add_argument("--point", type=_point_arg, required=True)
    s.set_defaults(func=cmd_tate)

    s = sub.add_parser("galois", help="subgroups of GL2(F_l)")
    s.add_argument("--ell", type=int, required=True, choices=(2, 3, 5, 7))
    s.add_argument("--name", required=True)
    s.add_argument("--eps", type=int, default=None, help="non-residue for the non-split Cartan")
    s.add_argument("--fixed-points", action="store_true")
    s.add_argument("--index2", action="store_true")
    s.add_argument("--analysis", action="store_true")
    s.add_argument("--elements", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_galois)

    s = sub.add_parser("verify", help="check the growth theorems over a corpus")
    s.add_argument("--corpus", default=None, help="CSV or JSON corpus (default: bundled)")
    s.add_argument("--dmax", type=int, default=30)
    s.add_argument("--max-conductor", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def run_command(argv) -> tuple[int, str]:
    """Run argv and capture stdout; returns (exit status, output)."""
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = main(argv)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except Indeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (InvalidArgument, NotFound, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
