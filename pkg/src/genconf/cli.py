"""``genconf`` command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error.  JSON goes to stdout
or to ``--out``; output is deterministic for fixed arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import dcr as dcr_mod
from .arith import GaussianRational
from .config import (
    PROJECTIVE,
    Configuration,
    Permutation,
    ProjectiveTransform,
    act_permutation,
    act_transform,
    is_generic,
    matrix_to_json,
    sample_generic,
)
from .errors import GenconfError, InvalidConfiguration
from .normalize import compose, decompose, is_reduced
from .simplicial import (
    FIRST,
    SECOND,
    Simplex,
    build_complex,
    classify,
    dimension,
    normal_simplex,
    orbit_indices,
    stabilizer,
)
from .tame import TameMap, recover


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj, out) -> None:
    text = _dump(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfiguration(f"{path} is not valid JSON: {exc}") from None


# -- subcommands -------------------------------------------------------------


def _check_complex(obj) -> dict:
    m, n = int(obj["m"]), int(obj["n"])
    vertices = [dcr_mod.parse_dcr(t) for t in obj["vertices"]]
    if sorted(vertices) != dcr_mod.enumerate_dcrs(m, n):
        raise InvalidConfiguration("vertex list is not the full set of cross ratios")
    for u, v in obj["edges"]:
        if not dcr_mod.divides(vertices[u], vertices[v]):
            raise InvalidConfiguration(f"edge {u}-{v} does not join divisible cross ratios")
    for t, orbs in obj.get("orbits", {}).items():
        for orb in orbs:
            for sx in orb:
                if len(sx) != int(t) + 1:
                    raise InvalidConfiguration(f"simplex {sx} listed under dimension {t}")
    return {"kind": "complex", "m": m, "n": n, "vertices": len(vertices), "edges": len(obj["edges"])}


def _check_object(obj) -> dict:
    if not isinstance(obj, dict):
        raise InvalidConfiguration("expected a JSON object")
    if "rows" in obj:
        q = Configuration.from_json(obj)
        return {"kind": "configuration", "m": q.m, "n": q.n, "space": q.space,
                "generic": is_generic(q), "reduced": is_reduced(q)}
    if "gamma" in obj and "reduced" in obj:
        T = ProjectiveTransform.from_json(obj["gamma"])
        r = Configuration.from_json(obj["reduced"])
        if not is_reduced(r):
            raise InvalidConfiguration("'reduced' is not in the reduced space")
        compose(T, r)
        return {"kind": "normalization", "m": r.m, "n": r.n}
    if "rho" in obj:
        sigma, rho = Permutation(tuple(obj["sigma"])), Permutation(tuple(obj["rho"]))
        if sigma * rho != Permutation.identity(sigma.n):
            raise InvalidConfiguration("sigma is not the inverse of rho")
        for sample in obj["samples"]:
            Configuration.from_json(sample["config"])
            ProjectiveTransform.from_json(sample["tau"])
        return {"kind": "recovery", "n": sigma.n, "samples": len(obj["samples"])}
    if "sigma" in obj and "tau" in obj:
        f = TameMap.from_json(obj)
        return {"kind": "tame_map", "m": f.m, "n": f.n, "tau": obj["tau"]["kind"]}
    if "vertices" in obj:
        return _check_complex(obj)
    if "stabilizer" in obj:
        n = int(obj["n"])
        simplex = [dcr_mod.parse_dcr(t) for t in obj["simplex"]]
        for images in obj["stabilizer"]:
            p = Permutation(tuple(images))
            if p.n != n or any(dcr_mod.permute(p, v) != v for v in simplex):
                raise InvalidConfiguration(f"{images} does not fix the simplex")
        return {"kind": "stabilizer", "n": n, "order": len(obj["stabilizer"])}
    if "orbits" in obj and "t" in obj:
        for orb in obj["orbits"]:
            [dcr_mod.parse_dcr(t) for t in orb["representative"]]
        return {"kind": "orbits", "m": obj["m"], "n": obj["n"], "t": obj["t"], "count": len(obj["orbits"])}
    raise InvalidConfiguration("unrecognised JSON document")


def cmd_check(args) -> None:
    obj = _read_json(args.file)
    try:
        report = _check_object(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GenconfError):
            raise
        raise InvalidConfiguration(f"malformed document: {exc}") from None
    report["valid"] = True
    _emit(report, args.out)


def cmd_normalize(args) -> None:
    q = Configuration.from_json(_read_json(args.config))
    T, r = decompose(q)
    _emit({"gamma": T.to_json(), "reduced": r.to_json()}, args.out)


def cmd_dcr_eval(args) -> None:
    d = dcr_mod.parse_dcr(args.dcr)
    q = Configuration.from_json(_read_json(args.config))
    print(str(dcr_mod.evaluate(d, q)))


def _complex_json(m, n, max_dim, with_orbits) -> dict:
    cx = build_complex(m, n)
    dim = dimension(cx)
    top = dim if max_dim is None else min(max_dim, dim)
    out = {
        "m": m,
        "n": n,
        "dimension": dim,
        "vertices": [str(v) for v in cx.vertices],
        "edges": [list(e) for e in cx.edges()],
    }
    if with_orbits:
        orbs = {str(t): orbit_indices(cx, t) for t in range(top + 1)}
        out["orbits"] = {t: [[list(c) for c in orb] for orb in o] for t, o in orbs.items()}
        out["orbit_counts"] = {t: len(o) for t, o in orbs.items()}
    return out


def cmd_complex(args) -> None:
    if args.max_dim is not None and args.max_dim < 0:
        raise UsageError("--max-dim must be >= 0")
    _emit(_complex_json(args.m, args.n, args.max_dim, args.orbits), args.out)


def cmd_orbits(args) -> None:
    cx = build_complex(args.m, args.n)
    rows = []
    for orb in orbit_indices(cx, args.t):
        sx = cx.simplex(orb[0])
        rows.append({"size": len(orb), "type": classify(sx) if args.t > 0 else None,
                     "representative": [str(v) for v in sx.vertices]})
    _emit({"m": args.m, "n": args.n, "t": args.t, "orbits": rows}, args.out)


def cmd_stabilizer(args) -> None:
    if args.vertex:
        sx = Simplex(tuple(dcr_mod.parse_dcr(t) for t in args.vertex))
        for v in sx.vertices:
            if v.m != args.m or max(v.support) > args.n:
                raise InvalidConfiguration(f"{v} is not a vertex for m={args.m}, n={args.n}")
    else:
        t = args.dim if args.dim is not None else (
            args.n - args.m - 3 if args.kind == FIRST else args.m - 1)
        sx = normal_simplex(args.kind, t, args.m, args.n)
    perms = stabilizer(sx, args.n)
    _emit({"m": args.m, "n": args.n, "simplex": [str(v) for v in sx.vertices],
           "order": len(perms), "stabilizer": sorted(list(p.images) for p in perms)}, args.out)


def cmd_recover(args) -> None:
    f = TameMap.from_json(_read_json(args.map))
    if (f.m, f.n) != (args.m, args.n):
        raise InvalidConfiguration(f"map acts on (m={f.m}, n={f.n}), not (m={args.m}, n={args.n})")
    rec = recover(f, args.m, args.n, seed=args.seed)
    rng = random.Random(f"samples-{args.seed}")
    samples = []
    for _ in range(args.samples):
        q = sample_generic(args.m, args.n, PROJECTIVE, rng)
        samples.append({"config": q.to_json(), "tau": matrix_to_json(rec.tau_eval(q).normalized())})
    _emit({"sigma": list(rec.sigma.images), "rho": list(rec.rho.images), "samples": samples}, args.out)


# -- selftest ----------------------------------------------------------------


def _selftest_suites(m: int, n: int, seed: int):
    rng = random.Random(seed)
    configs = [sample_generic(m, n, PROJECTIVE, rng) for _ in range(5)]
    vertices = dcr_mod.enumerate_dcrs(m, n)
    picks = rng.sample(vertices, min(20, len(vertices)))

    def plucker():
        for q in configs:
            for d in picks:
                i, (j, k, l, s) = d.essential_support, d.quad
                if not dcr_mod.plucker_defect(q, i, j, k, l, s).is_zero():
                    return False
        return True

    def omit_values():
        return all(not dcr_mod.value_is_exceptional(dcr_mod.evaluate(d, q)) for q in configs for d in picks)

    def psl_invariance():
        for q in configs:
            T = ProjectiveTransform.random(m + 1, rng)
            Tq = act_transform(T, q)
            if any(dcr_mod.evaluate(d, Tq) != dcr_mod.evaluate(d, q) for d in picks):
                return False
        return True

    def normalization():
        for q in configs:
            T, r = decompose(q)
            if not is_reduced(r) or compose(T, r) != q:
                return False
            A = ProjectiveTransform.random(m + 1, rng)
            if decompose(act_transform(A, q))[1] != r:
                return False
        return True

    def identities():
        one = GaussianRational(1)
        for q in configs:
            for d in picks:
                v = dcr_mod.evaluate(d, q)
                if dcr_mod.evaluate(dcr_mod.inverse(d), q) * v != one:
                    return False
                if dcr_mod.evaluate(dcr_mod.one_minus(d), q) + v != one:
                    return False
        return True

    def vertex_count():
        return len(vertices) == dcr_mod.dcr_count(m, n)

    def equivariance():
        theta = Permutation.random(n, rng)
        return all(dcr_mod.evaluate(dcr_mod.permute(theta, d), act_permutation(theta, q))
                   == dcr_mod.evaluate(d, q) for q in configs[:2] for d in picks)

    suites = [("plucker", plucker), ("omit-0-1", omit_values), ("psl-invariance", psl_invariance),
              ("normalization", normalization), ("dcr-identities", identities),
              ("vertex-count", vertex_count), ("permutation-action", equivariance)]
    if len(vertices) <= 2000:
        def complex_dimension():
            return dimension(build_complex(m, n)) == max(n - m - 3, m - 1)
        suites.append(("complex-dimension", complex_dimension))
    return suites


def cmd_selftest(args) -> int:
    if args.m < 1 or args.n < args.m + 3:
        raise UsageError("selftest needs m >= 1 and n >= m+3")
    failures = 0
    width = 20
    print(f"{'suite':<{width}} result  seconds")
    for name, fn in _selftest_suites(args.m, args.n, args.seed):
        start = time.perf_counter()
        try:
            ok = bool(fn())
        except GenconfError as exc:
            ok = False
            name = f"{name} ({type(exc).__name__})"
        failures += not ok
        print(f"{name:<{width}} {'PASS' if ok else 'FAIL':<7} {time.perf_counter() - start:.2f}")
    return 1 if failures else 0


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genconf", description="Generic configurations and determinant cross ratios.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a JSON document produced by genconf")
    c.add_argument("file")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("normalize", help="split a configuration into gamma and its reduced form")
    c.add_argument("config")
    c.add_argument("--out")
    c.set_defaults(func=cmd_normalize)

    c = sub.add_parser("dcr-eval", help="evaluate a cross ratio on a configuration")
    c.add_argument("dcr")
    c.add_argument("config")
    c.set_defaults(func=cmd_dcr_eval)

    c = sub.add_parser("complex", help="build the divisibility complex")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--max-dim", type=int)
    c.add_argument("--orbits", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_complex)

    c = sub.add_parser("orbits", help="S(n)-orbits of t-simplices")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_orbits)

    c = sub.add_parser("stabilizer", help="stabilizer of a normal or given ordered simplex")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--kind", choices=[FIRST, SECOND], default=FIRST)
    c.add_argument("--dim", type=int)
    c.add_argument("--vertex", action="append", help="cross ratio text; repeat for each vertex in order")
    c.add_argument("--out")
    c.set_defaults(func=cmd_stabilizer)

    c = sub.add_parser("recover", help="recover sigma and tau from a tame map used as a black box")
    c.add_argument("map")
    c.add_argument("m", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--samples", type=int, default=3)
    c.add_argument("--out")
    c.set_defaults(func=cmd_recover)

    c = sub.add_parser("selftest", help="run the invariant suites on random data")
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--n", type=int, default=6)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"genconf: {exc}", file=sys.stderr)
        return 2
    except GenconfError as exc:
        print(f"genconf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
