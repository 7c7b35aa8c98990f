"""Batch CLI: every verification and computation as a reproducible run.

Each subcommand validates its inputs, runs the engine, and writes a
machine-readable Report (JSON; CSV for arch-gamma).  Exit codes:
0 = all PASS, 1 = any FAIL, 2 = INCONCLUSIVE (stabilization or budget
limits — an engineering limit, never a refutation), 3 = invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .archimedean import (QuadratureConfig, RealCharacter, RealSchwartzFn,
                          fourier_real, gamma_oracle, gamma_real)
from .distributions import (INVERSE, TwistedDistribution, cstar_gamma, tilde,
                            verify_bk_identity, verify_inverse_weak,
                            verify_relation)
from .errors import EngineError
from .integrate import IntegrationConfig
from .padic import PAdicContext, PAdicMatrix
from .schwartz import SchwartzBruhatFn
from .zeta import MultiplicativeCharacter, gamma_factor, phi_independence_check

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INVALID = 0, 1, 2, 3


class InvalidSpec(Exception):
    pass


# -- input parsing -------------------------------------------------------

def parse_character(p: int, source: str) -> MultiplicativeCharacter:
    """Named built-ins, inline JSON (starts with '{'), or a JSON file path.

    JSON schema: {"conductor_exp": c, "table": {"u": value, ...} or
    "generators": {"g": value, ...}, "value_at_p": value}; scalar values are
    rational strings or {"root": [m, a]} for the p^m-th root of unity zeta^a.
    """
    source = source.strip()
    if source == "trivial":
        return MultiplicativeCharacter.trivial(p)
    if source.startswith("unramified:"):
        return MultiplicativeCharacter.unramified(
            p, _parse_scalar_spec(p, source.split(":", 1)[1]))
    if source == "quadratic":
        return MultiplicativeCharacter.quadratic_ramified(p)
    if source.startswith("{"):
        data = json.loads(source)
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InvalidSpec("cannot read character source %r: %s" % (source, exc))
    try:
        c = int(data.get("conductor_exp", 0))
        vp = _parse_scalar_spec(p, data.get("value_at_p", 1))
        if "generators" in data:
            gens = {int(g): _parse_scalar_spec(p, v)
                    for g, v in data["generators"].items()}
            return MultiplicativeCharacter.from_generators(p, c, gens, vp)
        table = {int(u): _parse_scalar_spec(p, v)
                 for u, v in data.get("table", {}).items()}
        return MultiplicativeCharacter(p, c, table, vp)
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidSpec("bad character description: %s" % exc)


def _parse_scalar_spec(p: int, v):
    from .scalars import root_of_unity
    if isinstance(v, dict):
        if "root" not in v:
            raise InvalidSpec("scalar dict needs a 'root': [m, a] entry")
        m, a = v["root"]
        return root_of_unity(p, int(m), int(a))
    if isinstance(v, str):
        v = v.strip()
        if v.startswith("root:"):
            m, a = v.split(":", 1)[1].split("/")
            return root_of_unity(p, int(m), int(a))
        return Fraction(v)
    return Fraction(v)


def parse_phi(n: int, ctx: PAdicContext, name: str) -> SchwartzBruhatFn:
    """Built-ins unit_ball, scaled_ball(k), shifted_ball(a,k), or @file.json."""
    name = name.strip()
    if name.startswith("@"):
        try:
            with open(name[1:]) as fh:
                phi = SchwartzBruhatFn.from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise InvalidSpec("cannot load Phi from %r: %s" % (name[1:], exc))
        if phi.n != n or phi.ctx.p != ctx.p:
            raise InvalidSpec("Phi file %r has wrong n or p" % name[1:])
        return phi
    if name == "unit_ball":
        return SchwartzBruhatFn.unit_ball(n, ctx)
    if name.startswith("scaled_ball(") and name.endswith(")"):
        return SchwartzBruhatFn.scaled_ball(n, ctx, int(name[12:-1]))
    if name.startswith("shifted_ball(") and name.endswith(")"):
        parts = name[13:-1].split(",")
        if len(parts) != 2:
            raise InvalidSpec("shifted_ball takes two arguments: a, k")
        return SchwartzBruhatFn.shifted_ball(n, ctx, Fraction(parts[0]), int(parts[1]))
    raise InvalidSpec("unknown Phi %r (use unit_ball, scaled_ball(k), "
                      "shifted_ball(a,k), or @file.json)" % name)


def parse_phi_list(n: int, ctx: PAdicContext, spec: str):
    out, depth, cur = [], 0, []
    for ch in spec:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [parse_phi(n, ctx, s) for s in out if s.strip()]


def build_config(args) -> IntegrationConfig:
    cfg = IntegrationConfig()
    for field in ("m_max", "m_confirm", "r_max", "confirm", "hard_budget", "threads"):
        v = getattr(args, field, None)
        if v is not None:
            setattr(cfg, field, v)
    return cfg


# -- report plumbing -----------------------------------------------------

def make_report(command: str, parameters: dict, results, verdict: str,
                elapsed: float, cells: int, windows=None) -> dict:
    return {
        "tool": "gjzeta",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "verdict": verdict,
        "results": results,
        "windows": windows or {},
        "cells_enumerated": cells,
        "elapsed_seconds": round(elapsed, 3),
    }


def emit(report, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def verdict_exit(verdict: str) -> int:
    return {"PASS": EXIT_PASS, "FAIL": EXIT_FAIL}.get(verdict, EXIT_INCONCLUSIVE)


# -- subcommands ---------------------------------------------------------

def cmd_gamma(args) -> int:
    ctx = PAdicContext(args.p)
    chi = parse_character(args.p, args.char)
    cfg = build_config(args)
    phis = parse_phi_list(args.n, ctx, args.phis)
    t0 = time.time()
    ok, gamma, warnings = phi_independence_check(phis, chi, cfg)
    cells = sum(z.stats.get("cells", 0)
                for z in (gamma.num, gamma.den))
    report = make_report(
        "gamma",
        {"p": args.p, "n": args.n, "char": args.char, "phis": args.phis},
        {"gamma": gamma.value.serialize(),
         "num": gamma.num.value.serialize(),
         "den": gamma.den.value.serialize(),
         "warnings": warnings},
        "PASS" if ok else "FAIL",
        time.time() - t0, cells,
        {"k_range_den": list(gamma.den.k_range),
         "k_range_num": list(gamma.num.k_range)})
    emit(report, args)
    return verdict_exit(report["verdict"])


def cmd_verify_fe(args) -> int:
    # same engine as gamma: the claim *is* Phi-independence of the ratio
    return cmd_gamma(args)


def cmd_verify_bk(args) -> int:
    ctx = PAdicContext(args.p)
    chi = parse_character(args.p, args.char)
    cfg = build_config(args)
    phis = parse_phi_list(args.n, ctx, args.phis)
    if args.n == 1:
        xs = [PAdicMatrix([[Fraction(1)]]), PAdicMatrix([[Fraction(args.p)]]),
              PAdicMatrix([[Fraction(1, args.p)]])]
    elif args.n == 2:
        xs = [PAdicMatrix.identity(2),
              PAdicMatrix([[1, 0], [0, 2]]),
              PAdicMatrix([[0, 1], [2, 0]])]
    else:
        raise InvalidSpec("verify-bk supports n in {1, 2}")
    t0 = time.time()
    rep = verify_bk_identity(chi, args.n, phis, xs, cfg)
    report = make_report(
        "verify-bk", rep["parameters"] | {"char": args.char, "phis": args.phis},
        {"claim": rep["claim"], "lhs": rep["lhs"], "rhs": rep["rhs"]},
        rep["verdict"], time.time() - t0, rep["cells_enumerated"], rep["windows"])
    emit(report, args)
    return verdict_exit(report["verdict"])


def cmd_verify_inverse(args) -> int:
    chi = parse_character(args.p, args.char)
    cfg = build_config(args)
    if args.alpha2 is None:
        d = tilde(cstar_gamma(args.n))
    else:
        d = TwistedDistribution(args.n, args.alpha2, -1, INVERSE)
    t0 = time.time()
    rep = verify_inverse_weak(d, [chi], cfg)
    report = make_report(
        "verify-inverse", rep["parameters"] | {"char": args.char},
        {"claim": rep["claim"], "products": rep["lhs"], "target": rep["rhs"]},
        rep["verdict"], time.time() - t0, rep["cells_enumerated"], rep["windows"])
    emit(report, args)
    return verdict_exit(report["verdict"])


def cmd_verify_relation(args) -> int:
    t0 = time.time()
    reps = [verify_relation(n) for n in range(1, args.n + 1)]
    verdict = "PASS" if all(r["verdict"] == "PASS" for r in reps) else "FAIL"
    report = make_report(
        "verify-relation", {"n_max": args.n},
        [{"n": r["parameters"]["n"], "verdict": r["verdict"],
          "lhs": r["lhs"], "rhs": r["rhs"]} for r in reps],
        verdict, time.time() - t0, 0)
    emit(report, args)
    return verdict_exit(verdict)


def random_schwartz(n: int, ctx: PAdicContext, rng, terms: int = 3,
                    max_level: int = 3) -> SchwartzBruhatFn:
    """Deterministic pseudo-random test function, levels within |k| <= max_level."""
    from .scalars import root_of_unity
    p = ctx.p
    out = SchwartzBruhatFn(n, ctx, [])
    for _ in range(rng.randint(1, terms)):
        level = rng.randint(-max_level, max_level)
        denom = p ** rng.randint(0, 2)
        center = PAdicMatrix([[Fraction(rng.randint(-4, 4), denom)
                               for _ in range(n)] for _ in range(n)])
        modulation = PAdicMatrix([[Fraction(rng.randint(-4, 4), denom)
                                   for _ in range(n)] for _ in range(n)])
        coeff = root_of_unity(p, 1, rng.randint(0, p - 1)) * Fraction(
            rng.randint(-3, 3), rng.randint(1, 3))
        out = out + SchwartzBruhatFn.indicator(n, ctx, center, level,
                                               modulation, coeff)
    return out


def cmd_fourier_selftest(args) -> int:
    import random
    rng = random.Random(args.seed)
    t0 = time.time()
    failures = []
    total = 0
    for n in (1, 2):
        for p in (2, 3):
            ctx = PAdicContext(p)
            for i in range(args.count):
                total += 1
                f = random_schwartz(n, ctx, rng)
                g = random_schwartz(n, ctx, rng)
                if not f.fourier().fourier().fn_equal(f.reflect()):
                    failures.append({"n": n, "p": p, "index": i,
                                     "law": "double transform = reflect"})
                from .scalars import scalar_is_zero
                if not scalar_is_zero(f.inner_product(g)
                                      - f.fourier().inner_product(g.fourier())):
                    failures.append({"n": n, "p": p, "index": i, "law": "Plancherel"})
    verdict = "PASS" if not failures else "FAIL"
    report = make_report(
        "fourier-selftest", {"count_per_case": args.count, "seed": args.seed},
        {"functions_checked": total, "failures": failures},
        verdict, time.time() - t0, 0)
    emit(report, args)
    return verdict_exit(verdict)


def cmd_arch_gamma(args) -> int:
    chi = RealCharacter(args.delta, Fraction(args.tau))
    qcfg = QuadratureConfig()
    if args.s is not None:
        grid = [complex(x) for x in args.s.split(",")]
    else:
        grid = [complex(x) for x in qcfg.s_grid]
    phi = RealSchwartzFn.hermite_multiple([1, 1])
    t0 = time.time()
    rows = []
    worst = 0.0
    for s in grid:
        val = gamma_real(chi, s, phi, qcfg)
        oracle = gamma_oracle(chi, s)
        err = abs(val - oracle)
        worst = max(worst, err)
        rows.append((s.real, s.imag, val.real, val.imag,
                     oracle.real, oracle.imag, err))
    verdict = "PASS" if worst < args.tol else "FAIL"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["s_re", "s_im", "gamma_re", "gamma_im",
                    "oracle_re", "oracle_im", "abs_err"])
        for row in rows:
            w.writerow(["%.12g" % x for x in row])
        text = buf.getvalue()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return verdict_exit(verdict)
    report = make_report(
        "arch-gamma",
        {"delta": args.delta, "tau": str(args.tau), "tol": args.tol,
         "s_grid": [str(s) for s in grid]},
        {"rows": [dict(zip(("s_re", "s_im", "gamma_re", "gamma_im",
                            "oracle_re", "oracle_im", "abs_err"), r))
                  for r in rows],
         "max_abs_err": worst},
        verdict, time.time() - t0, 0)
    emit(report, args)
    return verdict_exit(verdict)


# -- argument plumbing ---------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gjzeta",
        description="Exact local zeta integrals, gamma factors, and "
                    "distribution identities on GL_n(Q_p), plus a numeric "
                    "real-place check.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, padic=True):
        sp.add_argument("--out", help="write the report here instead of stdout")
        if padic:
            sp.add_argument("--p", type=int, required=True, help="residue prime")
            sp.add_argument("--char", default="trivial",
                            help="trivial | unramified:VALUE | quadratic | "
                                 "inline JSON | file path (default: trivial)")
            sp.add_argument("--m-max", dest="m_max", type=int)
            sp.add_argument("--r-max", dest="r_max", type=int)
            sp.add_argument("--confirm", type=int)
            sp.add_argument("--hard-budget", dest="hard_budget", type=int)
            sp.add_argument("--threads", type=int,
                            help="worker threads (never changes values)")

    sp = sub.add_parser("gamma", help="gamma factor as an exact rational function in T")
    common(sp)
    sp.add_argument("--n", type=int, required=True, choices=(1, 2))
    sp.add_argument("--phis", default="unit_ball,scaled_ball(1),shifted_ball(1,1)",
                    help="comma-separated Phi list (independence is re-verified)")
    sp.set_defaults(fn=cmd_gamma)

    sp = sub.add_parser("verify-fe",
                        help="Phi-independence of the functional-equation ratio")
    common(sp)
    sp.add_argument("--n", type=int, required=True, choices=(1, 2))
    sp.add_argument("--phis", default="unit_ball,scaled_ball(1)")
    sp.set_defaults(fn=cmd_verify_fe)

    sp = sub.add_parser("verify-bk",
                        help="generating-distribution spectral identity")
    common(sp)
    sp.add_argument("--n", type=int, required=True, choices=(1, 2))
    sp.add_argument("--phis", default="unit_ball,scaled_ball(1)")
    sp.set_defaults(fn=cmd_verify_bk)

    sp = sub.add_parser("verify-inverse",
                        help="weak convolution-inverse identity")
    common(sp)
    sp.add_argument("--n", type=int, required=True, choices=(1, 2))
    sp.add_argument("--alpha2", type=int,
                    help="2*alpha for D = (alpha, -1, INVERSE); default: "
                         "the sign-flipped normalizing distribution")
    sp.set_defaults(fn=cmd_verify_inverse)

    sp = sub.add_parser("verify-relation",
                        help="closed-form tuple identity linking the "
                             "normalizing and generating distributions")
    common(sp, padic=False)
    sp.add_argument("--n", type=int, required=True,
                    help="check all sizes 1..n")
    sp.set_defaults(fn=cmd_verify_relation)

    sp = sub.add_parser("fourier-selftest",
                        help="double-transform and Plancherel sweep on "
                             "randomized test functions")
    common(sp, padic=False)
    sp.add_argument("--count", type=int, default=200,
                    help="functions per (n, p) case (default 200)")
    sp.add_argument("--seed", type=int, default=20260824)
    sp.set_defaults(fn=cmd_fourier_selftest)

    sp = sub.add_parser("arch-gamma",
                        help="real-place gamma sweep against the Gamma oracle")
    common(sp, padic=False)
    sp.add_argument("--delta", type=int, default=0, choices=(0, 1))
    sp.add_argument("--tau", default="0", help="imaginary twist (rational)")
    sp.add_argument("--s", help="comma-separated complex s grid")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(fn=cmd_arch_gamma)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InvalidSpec as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, json.JSONDecodeError) as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except EngineError as exc:
        print("INCONCLUSIVE: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
