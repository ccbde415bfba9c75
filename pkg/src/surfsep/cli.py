"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import sem
from .bounds import bounds_report
from .constructions import ConstructionSpec, construct_lower_bound
from .embedding import euler_genus, metrics
from .errors import EmbeddingError, PreconditionError
from .generators import SURFACES, GrowthSpec, grow_random, triangulate
from .separator import SeparatorCertificate, surface_separator, verify_certificate


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(a) -> int:
    base = sem.read(a.base) if a.base else a.surface
    E = grow_random(GrowthSpec(base, a.n, a.seed))
    _emit(sem.dumps(E), a.out)
    return 0


def cmd_triangulate(a) -> int:
    E = sem.read(a.inp)
    T, aux = triangulate(E, a.strategy)
    _emit(sem.dumps(T), a.out)
    if a.aux:
        Path(a.aux).write_text(json.dumps({"auxiliary": sorted(aux)}) + "\n")
    if aux:
        print(f"star fallback added {len(aux)} auxiliary vertices", file=sys.stderr)
    return 0


def _read_aux(path):
    if not path:
        return frozenset()
    return frozenset(json.loads(Path(path).read_text())["auxiliary"])


def cmd_separate(a) -> int:
    E = sem.read(a.inp)
    cert = surface_separator(E, a.ell, root=a.root, auxiliary=_read_aux(a.aux))
    _emit(cert.to_json(), a.cert)
    return 0


def cmd_verify(a) -> int:
    E = sem.read(a.inp)
    try:
        cert = SeparatorCertificate.load(a.cert)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return 2
    rep = verify_certificate(E, cert)
    if a.json:
        print(json.dumps(rep.as_dict(), indent=1))
    else:
        print(rep)
    return 0 if rep.ok else 1


def cmd_bounds(a) -> int:
    rep = bounds_report(a.genus, a.delta, a.k)
    d = rep.to_dict()
    if a.json:
        print(json.dumps(d, indent=1))
    else:
        for key, val in d.items():
            print(f"{key}\t{val}")
    return 0


def cmd_construct(a) -> int:
    kp = sem.read(a.kp) if a.kp else None
    G, rep = construct_lower_bound(ConstructionSpec(a.genus, a.delta, a.k, kp=kp))
    _emit(sem.dumps(G), a.out)
    print(rep, file=sys.stderr)
    return 0


def cmd_metrics(a) -> int:
    E = sem.read(a.inp)
    met = metrics(E)
    d = {
        "n": E.n, "m": E.m, "g": euler_genus(E), "max_degree": met.max_degree,
        "diameter": met.diameter, "radius": met.radius, "center": met.center,
    }
    if a.json:
        print(json.dumps(d))
    else:
        for key, val in d.items():
            print(f"{key}\t{val}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surfsep", description="Separators and degree-diameter tools for graphs on surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="grow a random triangulation")
    p.add_argument("--surface", choices=SURFACES, default="sphere")
    p.add_argument("--base", help="SEM1 triangulation to grow instead of a built-in surface")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("triangulate", help="triangulate a 2-cell embedding")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--strategy", choices=("ear", "star"), default="ear")
    p.add_argument("--aux", help="write auxiliary vertex ids as JSON here")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("separate", help="compute an ell-separator certificate")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--cert")
    p.add_argument("--root", type=int, help="root the BFS tree here instead of at a centre")
    p.add_argument("--aux", help="JSON file of auxiliary vertices from triangulate")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="degree-diameter bounds for (g, delta, k)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build the K_p-plus-trees lower-bound graph")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kp", help="SEM1 embedding of K_p to use instead of a built-in one")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("metrics", help="print n, m, g, max degree, diameter, radius")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metrics)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except (EmbeddingError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
