"""Command-line front end.

Every command writes one JSON document (``manifest`` + ``result``) to stdout,
or a plain table with ``--emit table``.  Exit status: 0 pass/success,
2 computed but negative, 1 error.
"""

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import bounds as B
from . import designs as D
from .configurations import parse_builtin
from .core_model import (
    Field,
    angle_set,
    configuration_to_dict,
    gramian,
    load_configuration,
)
from .errors import DesignError, ParseError
from .gegenbauer import (
    GegExpansion,
    MonomialPoly,
    complex_Q,
    complex_Q_exact,
    dim_H,
    dim_harm,
    real_Q,
    real_Q_explicit,
)
from .index_algebra import ComplexIndexSet, RealIndexSet, parse_index_set
from .potentials import (
    canonical_potential,
    evaluate,
    monomial_potential,
    pair_energy,
)

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


def _version():
    from . import __version__
    return __version__


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# -- JSON encoding ---------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(doc):
    return json.dumps(_jsonable(doc), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


# -- input helpers ---------------------------------------------------------

def _read_input(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _unwrap_config(data):
    """Accept a bare configuration or a report whose result holds one."""
    try:
        doc = json.loads(data)
    except (ValueError, UnicodeDecodeError):
        return load_configuration(data)
    if isinstance(doc, dict) and "result" in doc and "manifest" in doc:
        inner = doc["result"]
        if isinstance(inner, dict) and "configuration" in inner:
            inner = inner["configuration"]
        return load_configuration(json.dumps(inner))
    return load_configuration(data)


def _load_config(args):
    """Configuration plus a digest of the bytes (or builtin spec) it came from."""
    if getattr(args, "input", None):
        data = _read_input(args.input)
        return _unwrap_config(data), hashlib.sha256(data).hexdigest()
    if getattr(args, "builtin", None):
        return parse_builtin(args.builtin), hashlib.sha256(args.builtin.encode()).hexdigest()
    raise UsageError("give --input FILE or --builtin NAME[:ARGS]")


def _parse_number(tok):
    tok = tok.strip()
    if "j" in tok:
        return complex(tok)
    try:
        return Fraction(tok)
    except ValueError:
        return float(tok)


def _parse_list(text):
    if text is None or not text.strip():
        return []
    return [_parse_number(t) for t in text.split(",") if t.strip()]


def _parse_weights(spec):
    if spec is None or spec == "uniform":
        return None
    if spec.startswith("m:"):
        try:
            return ("m", int(spec[2:]))
        except ValueError:
            raise ParseError(f"bad m-weights spec {spec!r}") from None
    data = json.loads(_read_input(spec))
    if isinstance(data, dict):
        data = data.get("weights")
    if not isinstance(data, list):
        raise ParseError("weights file must hold a list or {\"weights\": [...]}")
    return np.asarray(data, dtype=float)


def _parse_geg(text, field, d):
    """``k:c,k:c`` (real) or ``p.q:c,...`` (complex) Gegenbauer coefficients."""
    coeffs = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, val = item.partition(":")
        if not val:
            raise ParseError(f"bad coefficient entry {item!r}")
        if field is Field.REAL:
            k = int(key)
        else:
            p, _, q = key.partition(".")
            k = (int(p), int(q))
        coeffs[k] = float(Fraction(val.strip())) if "j" not in val else complex(val)
    return GegExpansion(field, d, coeffs)


def _key_out(k):
    return list(k) if isinstance(k, tuple) else k


# -- commands --------------------------------------------------------------

def cmd_gegenbauer(args):
    field = Field.parse(args.field)
    if field is Field.REAL:
        if args.k is None:
            raise UsageError("real Gegenbauer needs --k")
        poly = real_Q(args.d, args.k)
        res = {"field": "real", "d": args.d, "k": args.k, "dim": dim_harm(args.d, args.k),
               "monomial": poly.coeffs}
        if args.exact:
            res["exact"] = [str(c) for c in real_Q_explicit(args.d, args.k)]
    else:
        if args.p is None or args.q is None:
            raise UsageError("complex Gegenbauer needs --p and --q")
        poly = complex_Q(args.d, args.p, args.q)
        res = {"field": "complex", "d": args.d, "p": args.p, "q": args.q,
               "dim": dim_H(args.d, args.p, args.q), "monomial": poly.to_dict()["monomial"]}
        if args.exact:
            res["exact"] = [[a, b, str(c)] for (a, b), c in
                            sorted(complex_Q_exact(args.d, args.p, args.q).items())]
    if args.at is not None:
        res["value"] = poly(np.asarray(_parse_number(args.at), dtype=complex
                                       if field is Field.COMPLEX else float))
    return res, EXIT_OK


def cmd_potential(args):
    field = Field.parse(args.field)
    if args.family:
        name, _, rest = args.family.partition(":")
        params = [int(x) for x in rest.split(",") if x.strip()]
        pot = monomial_potential(field, args.d, name, *params)
    else:
        idx, _ = parse_index_set(args.indices, field)
        pot = canonical_potential(field, args.d, idx)
    res = {"provenance": pot.provenance, "expansion": pot.expansion.to_dict(), "f0": pot.f0,
           "value_at_one": pot.expansion.value_at_one()}
    digest = None
    if args.input or args.builtin:
        config, digest = _load_config(args)
        pv = evaluate(pot, gramian(config), config.effective_weights())
        res["evaluation"] = {"value": pv.value, "floor": pv.floor, "residual": pv.residual}
    return res, EXIT_OK, digest


def cmd_verify(args):
    config, digest = _load_config(args)
    tol = args.tol if args.tol is not None else D.DEFAULT_TOL
    idx, family = parse_index_set(args.design, config.field)
    weights = _parse_weights(args.weights)
    if args.check == "moments":
        if not family or family[0] != "t_design":
            raise UsageError("--check moments needs a t:N design")
        rep = D.verify_t_design(config, family[1][0], weights, tol)
    elif args.check == "m-weighted":
        if not family or family[0] not in ("half_design", "hom_m_complex", "t_design"):
            raise UsageError("--check m-weighted needs a half:M, homc:M or t:M design")
        m = family[1][0]
        rep = D.verify_half_design_m_weights(config, m, also_t_design=family[0] == "t_design",
                                             tol=tol)
    else:
        rep = D.verify(config, idx, weights, tol)
    return rep.as_dict(), (EXIT_OK if rep.passed else EXIT_NEGATIVE), digest


def cmd_synthesize(args):
    field = Field.parse(args.field)
    idx, _ = parse_index_set(args.design, field)
    tol = args.tol if args.tol is not None else D.DEFAULT_TOL
    opts = D.SynthesisOptions(max_iters=args.max_iters, restarts=args.restarts, tol=tol,
                              threads=args.threads)
    mode = "m_weights" if args.weights == "m_weights" else "uniform"
    res = D.synthesize(field, args.d, args.n, idx, weights_mode=mode, seed=args.seed, opts=opts)
    out = {"synthesis": res.as_dict(), "configuration": configuration_to_dict(res.configuration)}
    if res.success:
        if mode == "uniform":
            check = D.verify(res.configuration, idx, None, 10 * tol)
        else:
            check = D.verify_half_design_m_weights(res.configuration, idx.max_degree(), tol=10 * tol)
        out["verification"] = check.as_dict()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(configuration_to_dict(res.configuration)))
    return out, (EXIT_OK if res.success else EXIT_NEGATIVE)


def _absolute_E(args, field):
    """Index set E and variant for ``bound absolute``; family shorthand picks the standard E."""
    idx, family = parse_index_set(args.indices, field)
    if field is Field.COMPLEX:
        if family and family[0] == "tt_design":
            return B.tt_index_set(family[1][0]), None, family
        if family and family[0] == "pq_design":
            p, q = family[1]
            return ComplexIndexSet((p - j, q - j) for j in range(min(p, q) + 1)), None, family
        return idx, None, family
    if family and family[0] == "t_design":
        e, odd = divmod(family[1][0], 2)
        if odd:
            return RealIndexSet(range(e % 2, e + 1, 2)), "odd_even", family
        return RealIndexSet(range(e + 1)), "square", family
    if family and family[0] == "half_design":
        m = family[1][0]
        if m % 2:
            raise UsageError("half-design absolute bounds need an even order")
        t = m // 2
        return RealIndexSet(range(t % 2, t + 1, 2)), "square", family
    return idx, args.variant or "square", family


def _d_range(args):
    if args.d_range:
        lo, _, hi = args.d_range.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [args.d]


def cmd_bound(args):
    field = Field.parse(args.field)
    kind = args.kind
    if kind == "absolute":
        if not args.indices:
            raise UsageError("bound absolute needs --indices")
        if args.emit == "table":
            rows = []
            _, _, family = _absolute_E(args, field)
            for d in _d_range(args) if args.d_range else range(1 if field is Field.COMPLEX else 2,
                                                                  args.d + 1):
                if family and family[0] in ("tt_design", "t_design"):
                    tmax = family[1][0]
                    for t in range(1, tmax + 1):
                        sub = argparse.Namespace(**vars(args))
                        sub.indices = f"{'tt' if family[0] == 'tt_design' else 't'}:{t}"
                        rows.append(_absolute_row(sub, field, d, t))
                else:
                    rows.append(_absolute_row(args, field, d, None))
            return {"rows": rows}, EXIT_OK
        rep = _absolute_report(args, field, args.d)
    elif kind == "special":
        rep = B.special_bounds(args.d, [str(a) if isinstance(a, Fraction) else a
                                        for a in _parse_list(args.angles)])
    elif kind == "s_angular":
        if args.s is None:
            raise UsageError("bound s_angular needs --s")
        if args.emit == "table":
            rows = [{"d": d, "s": args.s, "eps": int(args.zero),
                     "bound": B.s_angular_bound(d, args.s, args.zero).value,
                     "tight_abs2": B.s_angular_bound(d, args.s, args.zero).tight_roots}
                    for d in _d_range(args)]
            return {"rows": rows}, EXIT_OK
        rep = B.s_angular_bound(args.d, args.s, args.zero)
    elif kind == "fisher":
        spec = B.AnnihilatorSpec(
            args.d,
            angles=tuple(complex(a) if isinstance(a, complex) else float(a)
                         for a in _parse_list(args.angles)),
            real_parts=tuple(float(a) for a in _parse_list(args.real_parts)),
            projective=tuple(float(a) for a in _parse_list(args.projective)),
            field=field)
        F = B.annihilator(spec)
        rep = B.fisher_bound(F, n=args.n)
        rep.details["annihilator"] = F.to_dict()
    elif kind == "acode":
        if not args.geg:
            raise UsageError("bound acode needs --geg")
        F = _parse_geg(args.geg, field, args.d)
        pts = [complex(a) if field is Field.COMPLEX else float(a)
               for a in _parse_list(args.angles)]
        rep = B.upper_bound_acode(F, pts)
    elif kind == "lower":
        if args.harmonic is not None:
            rep = B.harmonic_index_lower(args.d, args.harmonic)
        else:
            if not args.geg:
                raise UsageError("bound lower needs --geg or --harmonic")
            F = _parse_geg(args.geg, field, args.d)
            L = parse_index_set(args.indices, field)[0] if args.indices else None
            rep = B.lower_bound(F, L)
    else:
        raise UsageError(f"unknown bound kind {kind!r}")
    return rep.as_dict(), EXIT_OK


def _absolute_report(args, field, d):
    E, variant, _ = _absolute_E(args, field)
    if field is Field.COMPLEX:
        return B.absolute_lower_complex(E, d)
    return B.absolute_lower_real(E, d, variant)


def _absolute_row(args, field, d, t):
    rep = _absolute_report(args, field, d)
    row = {"d": d, "bound": rep.value, "tight_roots": rep.tight_roots, "root_kind": rep.root_kind}
    if t is not None:
        row = {"t": t, **row}
    return row


def cmd_angles(args):
    config, digest = _load_config(args)
    tol = args.tol if args.tol is not None else D.DEFAULT_TOL
    A = angle_set(gramian(config), config.weights, tol)
    rows = [{"angle": a, "multiplicity": m} for a, m in A.items()]
    if config.field is Field.COMPLEX:
        for r in rows:
            r["abs2"] = abs(r["angle"]) ** 2
    return {"n": config.n, "rows": rows, "diagonal_weight": A.diagonal_weight}, EXIT_OK, digest


def cmd_energy(args):
    config, digest = _load_config(args)
    res = {"n": config.n}
    if args.indices:
        pot = canonical_potential(config.field, config.dimension,
                                  parse_index_set(args.indices, config.field)[0])
        pv = evaluate(pot, gramian(config), config.effective_weights())
        res["canonical"] = {"value": pv.value, "floor": pv.floor, "residual": pv.residual}
    if args.power is not None:
        if config.field is Field.REAL:
            F = MonomialPoly.x() ** args.power
        else:
            F = (MonomialPoly.z() * MonomialPoly.zbar()) ** args.power
        res["pair_energy"] = pair_energy(config, F)
        res["power"] = args.power
    if len(res) == 1:
        raise UsageError("energy needs --indices or --power")
    return res, EXIT_OK, digest


def cmd_builtin(args):
    config = parse_builtin(args.spec)
    return configuration_to_dict(config), EXIT_OK


COMMANDS = {
    "gegenbauer": cmd_gegenbauer,
    "potential": cmd_potential,
    "verify": cmd_verify,
    "synthesize": cmd_synthesize,
    "bound": cmd_bound,
    "angles": cmd_angles,
    "energy": cmd_energy,
    "builtin": cmd_builtin,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="pass/fail tolerance")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (fallback: SPHERE_DESIGNS_THREADS)")
    common.add_argument("--emit", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record wall time in the manifest")

    parser = _Parser(prog="sphere-designs", parents=[common],
                     description="Spherical designs: potentials, verification, synthesis, bounds.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    def config_args(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--input", help="configuration JSON file ('-' for stdin)")
        g.add_argument("--builtin", help="builtin configuration, e.g. simplex:3")

    p = add("gegenbauer", "Gegenbauer / disk polynomial coefficients")
    p.add_argument("--field", default="real")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--at", help="evaluate at this point")
    p.add_argument("--exact", action="store_true", help="also print exact rational coefficients")

    p = add("potential", "canonical or monomial potential, optionally evaluated")
    p.add_argument("--field", default="real")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--indices")
    g.add_argument("--family", help="monomial family, e.g. half_design:4 or hom_pq:2,1")
    config_args(p)

    p = add("verify", "verify a configuration against an index set")
    config_args(p)
    p.add_argument("--design", required=True, help="index set, e.g. t:5, tt:2, 0,2,4")
    p.add_argument("--weights", default="uniform", help="uniform | m:K | weights.json")
    p.add_argument("--check", choices=("index", "moments", "m-weighted"), default="index")

    p = add("synthesize", "find a design numerically")
    p.add_argument("--field", default="real")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--design", required=True)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--weights", choices=("uniform", "m_weights"), default="uniform")
    p.add_argument("--output", help="also write the configuration to this file")

    p = add("bound", "size bounds")
    p.add_argument("kind", choices=("absolute", "special", "fisher", "acode", "lower",
                                    "s_angular"))
    p.add_argument("--field", default="real")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--d-range", help="LO..HI for tables")
    p.add_argument("--indices")
    p.add_argument("--variant", choices=("square", "odd_even"))
    p.add_argument("--angles", help="comma list; fractions like 1/3 and complex like 0.5+0.2j")
    p.add_argument("--real-parts")
    p.add_argument("--projective")
    p.add_argument("--s", type=int)
    p.add_argument("--zero", action="store_true", help="0 is one of the s angles")
    p.add_argument("--geg", help="Gegenbauer coefficients k:c,... or p.q:c,...")
    p.add_argument("--harmonic", type=int, help="lower bound for harmonic index t")
    p.add_argument("--n", type=int, help="size for the Fisher equality certificate")

    p = add("angles", "angle set of a configuration")
    config_args(p)

    p = add("energy", "potential and pair energies")
    config_args(p)
    p.add_argument("--indices")
    p.add_argument("--power", type=int, help="pair energy of x^k (real) or |z|^2k (complex)")

    p = add("builtin", "print a builtin configuration")
    p.add_argument("spec", help="e.g. simplex:3, icosahedron, scaled:simplex,2.0,3")
    return parser


def _table(result):
    rows = result.get("rows")
    if rows is None and "residuals" in result:
        rows = [{"index": _key_out(k), "residual": r}
                for k, r in zip(result["indices"], result["residuals"])]
    if rows is None:
        return dumps(result)
    cols = list(rows[0]) if rows else []
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        out.append("| " + " | ".join(json.dumps(_jsonable(r[c])) for c in cols) + " |")
    return "\n".join(out) + "\n"


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_ERROR
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    if not args.command:
        build_parser().print_help(stderr)
        return EXIT_ERROR
    for name, default in (("tol", None), ("seed", None), ("threads", None), ("emit", "json"),
                          ("timing", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    start = time.perf_counter()
    try:
        out = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"sphere-designs: {exc}\n")
        return EXIT_ERROR
    except (DesignError, OSError, ValueError, json.JSONDecodeError) as exc:
        stderr.write(f"sphere-designs: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    result, code = out[0], out[1]
    digest = out[2] if len(out) > 2 else None
    manifest = {
        "command": argv,
        "seed": args.seed,
        "version": _version(),
        "tolerances": {"tol": args.tol if args.tol is not None else D.DEFAULT_TOL,
                       "root": B.ROOT_TOL},
        "input_digest": digest,
    }
    if args.timing:
        manifest["wall_time"] = time.perf_counter() - start
    if args.emit == "table":
        stdout.write(_table(_jsonable(result)))
    else:
        stdout.write(dumps({"manifest": manifest, "result": result}))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
