"""Command-line entry point: ``qconv <subcommand> [flags]``.

Exit status: 0 success, 1 domain error, 2 a verification reported failure,
64 bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

import mpmath as mp

from . import conjecture, jfraction, sequences, theta
from .algebra import IntPoly, format_poly, format_zpoly
from .qcomb import q_binomial_theorem_check

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64

MAX_DEGREE = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def expanded_zpoly(zp):
    """Fully expanded text, e.g. ``1 - q^3*z - q^5*z + q^6*z^2``."""
    terms = []
    for k, c in enumerate(zp.coeffs):
        poly = c if isinstance(c, IntPoly) else IntPoly.constant(int(c))
        for e, a in enumerate(poly.coeffs):
            if a:
                terms.append((k, e, a))
    if not terms:
        return "0"
    out = []
    for k, e, a in terms:
        mono = [m for m in (_mono("q", e), _mono("z", k)) if m]
        body = "*".join(mono)
        mag = abs(a)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        out.append(("-" if a < 0 else "+", text))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, text in out[1:]:
        s += f" {sign} {text}"
    return s


def _mono(v, e):
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


def _emit(cfg, payload, text_lines):
    if cfg.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _seq_text(values):
    return "[" + ",".join(str(v) for v in values) + "]"


def _guard_depth(cfg, h):
    if h > jfraction.H_CAP and not cfg.allow_deep:
        raise ValueError(f"h = {h} exceeds the cap {jfraction.H_CAP}; pass --allow-deep to override")
    # Q_h has q-degree h^2 + h(h-1), the numerator a little more
    predicted = 2 * h * h + 4 * h
    _guard_degree(cfg, predicted)


def _guard_degree(cfg, predicted):
    if predicted > cfg.max_degree and not cfg.force:
        raise ValueError(
            f"predicted q-degree {predicted} exceeds --max-degree {cfg.max_degree}; use --force"
        )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_convergent(cfg):
    h = cfg.h
    if h < 0:
        raise ValueError("h must be nonnegative")
    _guard_depth(cfg, h)
    if cfg.closed_form and h < 1:
        raise ValueError("closed forms need h >= 1")
    pair = jfraction.convergent(h, closed_form=cfg.closed_form)
    payload = {
        "h": h,
        "P": format_zpoly(pair.P.coeffs),
        "Q": format_zpoly(pair.Q.coeffs),
        "P_expanded": expanded_zpoly(pair.P),
        "Q_expanded": expanded_zpoly(pair.Q),
        "method": "closed-form" if cfg.closed_form else "recurrence",
    }
    _emit(
        cfg,
        payload,
        [f"P_{h} = {payload['P_expanded']}", f"Q_{h} = {payload['Q_expanded']}"],
    )
    return EXIT_OK


def cmd_coeffs(cfg):
    _guard_depth(cfg, cfg.h)
    _guard_degree(cfg, cfg.order * cfg.order)
    series = jfraction.convergent_coefficients(cfg.h, cfg.order)
    coeffs = [str(c) for c in series]
    matches = [series[n] == IntPoly.monomial(n * n) for n in range(cfg.order + 1)]
    payload = {"h": cfg.h, "order": cfg.order, "coefficients": coeffs, "equals_q_n2": matches}
    lines = [f"[z^{n}] {c}" for n, c in enumerate(coeffs)]
    _emit(cfg, payload, lines)
    return EXIT_OK


def _ring_spot_check(seed, rounds=25):
    rng = random.Random(seed)

    def rand_poly():
        return IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(0, 30))])

    for _ in range(rounds):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            return False
    return True


def cmd_verify(cfg):
    _guard_depth(cfg, cfg.h_max)
    report = jfraction.verify_main_theorem(cfg.h_max)
    closed = {
        h: jfraction.convergent(h, closed_form=True) == jfraction.convergent(h)
        for h in range(1, cfg.h_max + 1)
    }
    qbt = all(q_binomial_theorem_check(n) for n in range(0, 13))
    ring = _ring_spot_check(cfg.seed)
    ok = report.ok and all(closed.values()) and qbt and ring
    payload = {
        "main_theorem": report.as_dict(),
        "closed_forms": {str(h): v for h, v in closed.items()},
        "q_binomial_theorem": qbt,
        "ring_spot_check": {"seed": cfg.seed, "ok": ring},
        "ok": ok,
    }
    lines = []
    for r in report.records:
        state = "ok" if r.passed else "FAIL"
        lines.append(f"h={r.h:2d} orders 0..{r.checked - 1} {state} first_failure={r.first_failure}")
    lines.append(f"closed forms: {'ok' if all(closed.values()) else 'FAIL'}")
    lines.append(f"q-binomial theorem n<=12: {'ok' if qbt else 'FAIL'}")
    lines.append(f"ring spot check (seed {cfg.seed}): {'ok' if ring else 'FAIL'}")
    lines.append("verify: " + ("ok" if ok else "FAIL"))
    _emit(cfg, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_rp(cfg):
    _guard_degree(cfg, cfg.n)
    if cfg.mod is not None:
        table = sequences.rp_congruence_series(cfg.mod, cfg.p, cfg.n)
    else:
        table = sequences.rp_generating_series(cfg.p, cfg.n, cfg.h)
    payload = table.as_dict()
    rc = EXIT_OK
    if cfg.check:
        oracle = [sequences.rp_oracle(cfg.p, n) for n in range(cfg.n + 1)]
        if cfg.mod is not None:
            oracle = [v % cfg.mod for v in oracle]
        bad = [n for n in range(cfg.n + 1) if oracle[n] != table.values[n]]
        payload["oracle_mismatches"] = bad
        rc = EXIT_VERIFY if bad else EXIT_OK
    lines = [_seq_text(table.values)]
    if cfg.check:
        lines.append("oracle: " + ("ok" if rc == EXIT_OK else f"mismatch at {payload['oracle_mismatches']}"))
    _emit(cfg, payload, lines)
    return rc


def cmd_sigma1(cfg):
    _guard_degree(cfg, cfg.n)
    if cfg.odd:
        table = sequences.sigma1_odd((cfg.n - 1) // 2)
    else:
        table = sequences.sigma1_full(cfg.n)
    _emit(cfg, table.as_dict(), [_seq_text(table.values)])
    return EXIT_OK


def cmd_partition(cfg):
    if cfg.n < 0:
        raise ValueError("n must be nonnegative")
    _guard_degree(cfg, cfg.n)
    table = sequences.partition_series(cfg.n)
    _emit(cfg, table.as_dict(), [_seq_text(table.values)])
    return EXIT_OK


def _num(text):
    try:
        return mp.mpmathify(text)
    except (ValueError, TypeError):
        raise UsageError(f"not a number: {text!r}") from None


def cmd_theta(cfg):
    params = theta.ThetaParams(cfg.family, _num(cfg.u), _num(cfg.q))
    d = cfg.precision
    payload = {"family": cfg.family, "u": cfg.u, "q": cfg.q, "precision": d}
    lines = []
    with mp.workdps(d):
        if cfg.method in ("direct", "both"):
            sv = theta.theta_direct(params, dps=d)
            payload["direct"] = sv.as_dict()
            lines.append(f"direct     {mp.nstr(sv.value, d)}  (tail <= {mp.nstr(sv.tail_bound, 3)})")
        if cfg.method in ("jfraction", "both"):
            v = theta.theta_jfraction(params, cfg.i_max, dps=d)
            payload["jfraction"] = {"value": mp.nstr(v, d), "i_max": cfg.i_max, "method": "jfraction"}
            lines.append(f"jfraction  {mp.nstr(v, d)}  (i_max={cfg.i_max})")
        if cfg.method == "both":
            diff = abs(sv.value - v)
            payload["abs_diff"] = mp.nstr(diff, 5)
            lines.append(f"difference {mp.nstr(diff, 5)}")
    payload["method"] = cfg.method
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_gss(cfg):
    q, z = _num(cfg.q), _num(cfg.z)
    d = cfg.precision
    modes = ["direct", "jfraction_series", "quadrature"] if cfg.mode == "all" else [cfg.mode]
    payload = {"q": cfg.q, "z": cfg.z, "precision": d, "values": {}}
    lines = []
    with mp.workdps(d):
        for m in modes:
            v = theta.geometric_square_series(q, z, mode=m, i_max=cfg.i_max, dps=d)
            payload["values"][m] = mp.nstr(v, d)
            lines.append(f"{m:17s} {mp.nstr(v, d)}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_constants(cfg):
    report = theta.special_constants_check(dps=max(60, cfg.precision))
    lines = []
    for key, row in report.items():
        if isinstance(row, dict):
            state = "ok" if row["ok"] else "FAIL"
            lines.append(f"{key:26s} diff={row['abs_diff']:>12s} {state}")
    _emit(cfg, report, lines)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_zeta(cfg):
    report = theta.mellin_zeta_check(_num(cfg.s), dps=max(30, cfg.precision))
    lines = [
        f"integral    {report['integral']}",
        f"closed form {report['closed_form']}",
        f"difference  {report['abs_diff']} {'ok' if report['ok'] else 'FAIL'}",
    ]
    _emit(cfg, report, lines)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def _params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter {k} must be an exact rational, got {v!r}") from None
    return out


def cmd_conjecture(cfg):
    _guard_degree(cfg, 8 * cfg.depth * cfg.depth)
    params = _params(cfg.param)
    if cfg.target == "custom":
        if not cfg.file:
            raise UsageError("--target custom needs --file")
        with open(cfg.file, encoding="utf-8") as fh:
            tgt = conjecture.custom_target(fh.readlines())
    else:
        tgt = conjecture.target(cfg.target, **params)
    rec = conjecture.solve_components(tgt, cfg.depth)
    payload = {"target": cfg.target, "params": {k: str(v) for k, v in params.items()}}
    payload.update(rec.as_dict())
    lines = [f"c_{h} = {c}" for h, c in enumerate(rec.c, 1)]
    lines += [f"ab_{h} = {a}" for h, a in enumerate(rec.ab, 2)]
    if rec.terminated_at is not None:
        lines.append(f"terminated at k={rec.terminated_at}")
    rc = EXIT_OK
    if cfg.check_table:
        if cfg.target not in conjecture.CLOSED_FORM_ROWS:
            raise UsageError(f"no tabulated row for target {cfg.target}")
        rep = conjecture.verify_closed_form(cfg.target, cfg.depth, corrected=cfg.corrected, **params)
        payload["table"] = rep
        lines.append("table: " + ("ok" if rep["ok"] else "MISMATCH"))
        rc = EXIT_OK if rep["ok"] else EXIT_VERIFY
    _emit(cfg, payload, lines)
    return rc


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _default_precision():
    raw = os.environ.get("QCONV_PRECISION")
    if raw is None:
        return theta.DEFAULT_DPS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QCONV_PRECISION must be an integer, got {raw!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--precision", type=int, default=None, help="decimal digits (>= 15)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-degree", type=int, default=MAX_DEGREE)
    common.add_argument("--force", action="store_true")
    common.add_argument("--allow-deep", action="store_true", help="permit h above the depth cap")

    p = _Parser(prog="qconv", description="Square-series J-fraction toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("convergent", parents=[common], help="P_h and Q_h")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--closed-form", action="store_true")
    s.set_defaults(run=cmd_convergent)

    s = sub.add_parser("coeffs", parents=[common], help="[z^n] Conv_h")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(run=cmd_coeffs)

    s = sub.add_parser("verify", parents=[common], help="exact coefficient checks")
    s.add_argument("--h-max", type=int, default=12)
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("rp", parents=[common], help="sums of p squares")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--h", type=int, default=None)
    s.add_argument("--mod", type=int, choices=(3, 4), default=None)
    s.add_argument("--check", action="store_true", help="compare with lattice counts")
    s.set_defaults(run=cmd_rp)

    s = sub.add_parser("sigma1", parents=[common], help="divisor sums")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--odd", action="store_true", help="odd indices via fourth powers")
    s.set_defaults(run=cmd_sigma1)

    s = sub.add_parser("partition", parents=[common], help="p(0..n)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_partition)

    s = sub.add_parser("theta", parents=[common], help="Jacobi theta values")
    s.add_argument("--family", type=int, choices=(1, 2, 3, 4), required=True)
    s.add_argument("--u", default="0")
    s.add_argument("--q", required=True)
    s.add_argument("--method", choices=("direct", "jfraction", "both"), default="both")
    s.add_argument("--i-max", type=int, default=12)
    s.set_defaults(run=cmd_theta)

    s = sub.add_parser("gss", parents=[common], help="sum q^(n^2) z^n")
    s.add_argument("--q", required=True)
    s.add_argument("--z", required=True)
    s.add_argument(
        "--mode", choices=("direct", "jfraction_series", "quadrature", "all"), default="all"
    )
    s.add_argument("--i-max", type=int, default=12)
    s.set_defaults(run=cmd_gss)

    s = sub.add_parser("constants-check", parents=[common], help="closed-form theta values")
    s.set_defaults(run=cmd_constants)

    s = sub.add_parser("zeta-check", parents=[common], help="Mellin transform of theta_2")
    s.add_argument("--s", required=True)
    s.set_defaults(run=cmd_zeta)

    s = sub.add_parser("conjecture", parents=[common], help="recover J-fraction components")
    s.add_argument("--target", choices=conjecture.TARGETS, required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--param", action="append", help="key=value, exact rational")
    s.add_argument("--file", help="custom target values, one per line")
    s.add_argument("--check-table", action="store_true")
    s.add_argument("--corrected", action="store_true", help="use amended table formulas")
    s.set_defaults(run=cmd_conjecture)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
        if cfg.precision is None:
            cfg.precision = _default_precision()
        if cfg.precision < 15:
            raise UsageError("precision must be at least 15 digits")
    except UsageError as exc:
        sys.stderr.write(f"qconv: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        with mp.workdps(cfg.precision):
            return cfg.run(cfg)
    except UsageError as exc:
        sys.stderr.write(f"qconv: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        sys.stderr.write(f"qconv: {exc}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
