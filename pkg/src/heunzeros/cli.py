"""Command-line front end.

Subcommands
    poly     build coefficient polynomials and print them
    zeros    zeros of one polynomial, labelled by grid index
    table    comparison table: grid point, three approximation orders,
             and the solved zero at each requested degree
    track    stabilization report across degrees
    d2       connection-coefficient estimate at a given B
    verify   self-contained property checks (independent of pytest)

Families
    lame     --n --s [--eta]            (gamma = delta = 1/2 member)
    mathieu  --q [--a]                  (reduced family, s = q)
    whill    --A0 --A1 --h              (confluent member, s = -2h)
    heun     --gamma --delta --alpha --beta --s
    cheun    --gamma --delta --alpha --s
    rcheun   --gamma --delta --s

Scalar arguments accept the grammar "a", "a/b", "a.b", and complex
combinations "x+yi" / "x-yi" / "yi" with rational or decimal parts;
such values stay exact.  Plain float syntax (including exponents) is
accepted too and is treated as inexact.

Exit codes: 0 success, 2 argument parse error, 3 numerical
non-convergence, 4 invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import mpmath as mp

from .families import (
    FamilyKind,
    InvalidSpecError,
    LameParams,
    MathieuParams,
    RecurrenceSpec,
    WhittakerHillParams,
    from_lame,
    from_mathieu,
    from_whittaker_hill,
)
from .perturbation import zero_estimate
from .recurrence import build_family
from .rootfind import NonConvergenceError
from .scalars import (
    format_scalar,
    is_exact_scalar,
    parse_gaussian_rational,
    to_mpc,
    working_precision,
)
from .tracking import (
    convergence_report,
    d2_closed_form_s0,
    d2_sequence,
    d2_zero_search,
    solve_zeros,
)

EXIT_OK = 0
EXIT_NONCONVERGENCE = 3
EXIT_INVALID = 4


# -- configuration ---------------------------------------------------------------

@dataclass
class RunConfig:
    """Everything one subcommand invocation needs, pre-parsed.

    Family parameters stay as the user's strings so exact inputs stay
    exact; they are interpreted once by `build_spec`.
    """

    command: str
    family: str = ""
    params: dict = field(default_factory=dict)
    m: int | None = None
    m_list: tuple = ()
    m_max: int | None = None
    k_max: int = 6
    B: str | None = None
    K: int = 500
    precision_bits: int = 256
    tol: str | None = None
    order: int = 2
    digits: int = 10
    fmt: str = "text"
    seed_policy: str = "auto"
    output: str | None = None
    search: bool = False
    midpoint: bool = False
    suite: str = "all"

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_json(data: dict) -> "RunConfig":
        data = dict(data)
        data["m_list"] = tuple(data.get("m_list", ()))
        return RunConfig(**data)


def parse_cli_scalar(text: str):
    """Exact Gaussian-rational parse first, then big-float syntax."""
    try:
        return parse_gaussian_rational(text)
    except ValueError:
        pass
    try:
        return mp.mpf(text)
    except Exception:
        pass
    try:
        return mp.mpc(text.replace("i", "j"))
    except Exception:
        raise InvalidSpecError(f"cannot parse scalar {text!r}") from None


def build_spec(cfg: RunConfig):
    """(spec, B_or_None) from the family selector and parameters."""
    p = {k: parse_cli_scalar(v) for k, v in cfg.params.items()}
    fam = cfg.family
    B = parse_cli_scalar(cfg.B) if cfg.B is not None else None

    def need(*names):
        missing = [n for n in names if n not in p]
        if missing:
            raise InvalidSpecError(
                f"family {fam!r} needs --{' --'.join(missing)}"
            )

    if fam == "lame":
        need("n", "s")
        spec, emap = from_lame(LameParams(n=p["n"], s=p["s"],
                                          eta=p.get("eta")))
        if "eta" in p and B is None:
            B = emap.b_from_eta(p["eta"])
        return spec, B
    if fam == "mathieu":
        need("q")
        spec, b_from_a = from_mathieu(MathieuParams(q=p["q"], a=p.get("a")))
        return spec, b_from_a if b_from_a is not None else B
    if fam == "whill":
        need("A0", "A1", "h")
        spec, b = from_whittaker_hill(
            WhittakerHillParams(A0=p["A0"], A1=p["A1"], h=p["h"])
        )
        return spec, b if B is None else B
    if fam == "heun":
        need("gamma", "delta", "alpha", "beta", "s")
        return RecurrenceSpec(kind=FamilyKind.HEUN, gamma=p["gamma"],
                              delta=p["delta"], s=p["s"], alpha=p["alpha"],
                              beta=p["beta"]), B
    if fam == "cheun":
        need("gamma", "delta", "alpha", "s")
        return RecurrenceSpec(kind=FamilyKind.CONFLUENT, gamma=p["gamma"],
                              delta=p["delta"], s=p["s"],
                              alpha=p["alpha"]), B
    if fam == "rcheun":
        need("gamma", "delta", "s")
        return RecurrenceSpec(kind=FamilyKind.REDUCED, gamma=p["gamma"],
                              delta=p["delta"], s=p["s"]), B
    raise InvalidSpecError(f"unknown family {fam!r}")


# -- formatting helpers ------------------------------------------------------------

def _fmt(x, digits: int) -> str:
    """Table cell: exact integers bare, everything else padded to the
    full digit count."""
    if x is None:
        return "-"
    if is_exact_scalar(x) and not isinstance(x, str):
        from .scalars import as_exact

        q = as_exact(x)
        if q.is_real and q.re.denominator == 1:
            return str(q.re.numerator)
    return format_scalar(x, digits, pad=True)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _emit(payload: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")


# -- subcommands -------------------------------------------------------------------

def cmd_poly(cfg: RunConfig) -> str:
    spec, _ = build_spec(cfg)
    m_max = cfg.m_max if cfg.m_max is not None else (cfg.m or 4)
    fam = build_family(spec, m_max)
    if cfg.fmt == "json":
        return json.dumps(fam.to_json(), indent=2)
    if cfg.fmt == "csv":
        rows = [("m", "k", "coefficient")]
        for m in range(m_max + 1):
            for k, c in enumerate(fam[m].coeffs):
                rows.append((m, k, str(c)))
        return _csv_text(rows)
    lines = []
    for m in range(m_max + 1):
        body = ", ".join(str(c) for c in fam[m].coeffs)
        lines.append(f"c_{m}(B): [{body}]")
    return "\n".join(lines)


def cmd_zeros(cfg: RunConfig) -> str:
    spec, _ = build_spec(cfg)
    if cfg.m is None:
        raise InvalidSpecError("zeros needs --m")
    tol = float(cfg.tol) if cfg.tol is not None else None
    zs = solve_zeros(spec, cfg.m, precision_bits=cfg.precision_bits,
                     tol=tol, seed_policy=cfg.seed_policy, order=cfg.order)
    d = cfg.digits
    if cfg.fmt == "json":
        return json.dumps({
            "schema": "heunzeros-zeros/1",
            "spec": spec.to_json(),
            "m": cfg.m,
            "precision_bits": cfg.precision_bits,
            "tol": mp.nstr(zs.tol, 5),
            "converged": all(zs.converged),
            "zeros": [
                {
                    "re": mp.nstr(z.real, d + 5),
                    "im": mp.nstr(z.imag, d + 5),
                    "residual": mp.nstr(r, 5),
                    "label_k": lab,
                }
                for z, r, lab in zip(zs.zeros, zs.residuals, zs.labels)
            ],
        }, indent=2)
    if cfg.fmt == "csv":
        rows = [("re", "im", "residual", "label_k")]
        for z, r, lab in zip(zs.zeros, zs.residuals, zs.labels):
            rows.append((mp.nstr(z.real, d + 5), mp.nstr(z.imag, d + 5),
                         mp.nstr(r, 5), "" if lab is None else lab))
        return _csv_text(rows)
    lines = [f"zeros of c_{cfg.m}(B)  [{spec.kind.value}]"]
    for z, r, lab in zip(zs.zeros, zs.residuals, zs.labels):
        k = "-" if lab is None else str(lab)
        lines.append(f"  k={k:>3}  {_fmt(z, d):<36}  residual {mp.nstr(r, 3)}")
    return "\n".join(lines)


def _table_rows(spec, cfg: RunConfig):
    ms = cfg.m_list or ((cfg.m,) if cfg.m else ())
    if not ms:
        raise InvalidSpecError("table needs --m (one or more degrees)")
    ms = tuple(sorted(set(ms)))
    cols = {}
    for m in ms:
        zs = solve_zeros(spec, m, precision_bits=cfg.precision_bits,
                         seed_policy=cfg.seed_policy, order=cfg.order)
        cols[m] = {
            lab: z for z, lab in zip(zs.zeros, zs.labels) if lab is not None
        }
    top = max(ms)
    rows = []
    for k in range(min(cfg.k_max, top - 1) + 1):
        ests = []
        for order in (0, 1, 2):
            try:
                ests.append(zero_estimate(spec, k, top - 1, order))
            except Exception:
                ests.append(None)
        rows.append({
            "k": k,
            "orders": ests,
            "zeros": {m: cols[m].get(k) for m in ms},
        })
    return ms, rows


def cmd_table(cfg: RunConfig) -> str:
    spec, _ = build_spec(cfg)
    ms, rows = _table_rows(spec, cfg)
    d = cfg.digits
    if cfg.fmt == "json":
        return json.dumps({
            "schema": "heunzeros-table/1",
            "spec": spec.to_json(),
            "m_list": list(ms),
            "rows": [
                {
                    "k": r["k"],
                    "order0": _fmt(r["orders"][0], d),
                    "order1": _fmt(r["orders"][1], d),
                    "order2": _fmt(r["orders"][2], d),
                    "zeros": {str(m): _fmt(z, d)
                              for m, z in r["zeros"].items()},
                }
                for r in rows
            ],
        }, indent=2)
    header = ["k", "0th approx.", "1st approx.", "2nd approx."] + [
        f"zero of c_{m}" for m in ms
    ]
    table = [header]
    for r in rows:
        cells = [str(r["k"])] + [_fmt(e, d) for e in r["orders"]]
        cells += [_fmt(r["zeros"][m], d) for m in ms]
        table.append(cells)
    if cfg.fmt == "csv":
        return _csv_text(table)
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths))
        for row in table
    )


def cmd_track(cfg: RunConfig) -> str:
    spec, _ = build_spec(cfg)
    ms = cfg.m_list or (30, 40)
    rep = convergence_report(spec, m_list=ms, digits=cfg.digits,
                             precision_bits=cfg.precision_bits,
                             seed_policy=cfg.seed_policy)
    if cfg.fmt == "json":
        return json.dumps(rep.to_json(), indent=2)
    m1, m2 = rep.m_list[-2], rep.m_list[-1]
    if cfg.fmt == "csv":
        rows = [("label_k", "re", "im", "stabilized_digits")]
        for t in rep.tracks:
            z = t.value_at(m2)
            if z is None:
                continue
            rows.append((
                "" if t.label_k is None else t.label_k,
                mp.nstr(mp.mpc(z).real, cfg.digits + 5),
                mp.nstr(mp.mpc(z).imag, cfg.digits + 5),
                t.stabilized.get((m1, m2), ""),
            ))
        return _csv_text(rows)
    lines = [
        f"degrees {rep.m_list}: n_stable({cfg.digits}) = "
        f"{rep.n_stable()} of {len(rep.zero_sets[m2].zeros)}"
    ]
    for t in rep.tracks:
        z = t.value_at(m2)
        if z is None:
            continue
        sd = t.stabilized.get((m1, m2))
        k = "-" if t.label_k is None else str(t.label_k)
        lines.append(
            f"  k={k:>3}  {_fmt(z, cfg.digits):<36}  "
            f"digits {'-' if sd is None else sd}"
        )
    return "\n".join(lines)


def cmd_d2(cfg: RunConfig) -> str:
    spec, B = build_spec(cfg)
    if B is None:
        raise InvalidSpecError("d2 needs --B (or a family mapping giving one)")
    est = d2_sequence(spec, B, K=cfg.K, precision_bits=cfg.precision_bits)
    d = cfg.digits
    out = {
        "schema": "heunzeros-d2/1",
        "spec": spec.to_json(),
        "B": _fmt(B, d + 5),
        "K": cfg.K,
        "estimate": _fmt(est.estimate, d),
        "tail": _fmt(est.tail, d),
        "error_indicator": mp.nstr(est.error_indicator, 5),
    }
    with working_precision(cfg.precision_bits):
        s_is_zero = to_mpc(spec.s) == 0
    if s_is_zero:
        out["closed_form"] = _fmt(
            d2_closed_form_s0(spec, B, cfg.precision_bits), d
        )
    if cfg.midpoint:
        from .oracle import d2_by_midpoint_matching

        mm = d2_by_midpoint_matching(spec, B,
                                     precision_bits=cfg.precision_bits)
        out["midpoint"] = _fmt(mm.d2, d)
    if cfg.search:
        tol = float(cfg.tol) if cfg.tol is not None else 1e-10
        res = d2_zero_search(spec, B, tol=tol, K=cfg.K,
                             precision_bits=cfg.precision_bits)
        out["zero_search"] = {
            "B": _fmt(res.B, d),
            "d2": _fmt(res.d2, d),
            "iterations": res.iterations,
            "K_used": res.K_used,
        }
    if cfg.fmt == "json":
        return json.dumps(out, indent=2)
    if cfg.fmt == "csv":
        keys = [k for k in out if k not in ("schema", "spec", "zero_search")]
        rows = [tuple(keys), tuple(str(out[k]) for k in keys)]
        return _csv_text(rows)
    lines = [f"d2 estimate  = {out['estimate']}   (K = {cfg.K})",
             f"raw tail     = {out['tail']}",
             f"indicator    = {out['error_indicator']}"]
    if "closed_form" in out:
        lines.append(f"closed form  = {out['closed_form']}   (s = 0)")
    if "midpoint" in out:
        lines.append(f"midpoint     = {out['midpoint']}")
    if "zero_search" in out:
        zs = out["zero_search"]
        lines.append(
            f"zero search  : B = {zs['B']}  d2 = {zs['d2']}  "
            f"({zs['iterations']} iterations, K = {zs['K_used']})"
        )
    return "\n".join(lines)


# -- verify ------------------------------------------------------------------------

def _default_specs():
    lame, _ = from_lame(LameParams(n=2, s="1/100"))
    math, _ = from_mathieu(MathieuParams(q=2))
    whc = RecurrenceSpec(kind=FamilyKind.CONFLUENT, gamma="1/2",
                         delta="1/2", s="-1/100", alpha=5)
    return [lame, math, whc]


def _suite_recurrence(specs):
    from .oracle import family_ode_polys, series_solution
    from .recurrence import eval_sequence, leading_coefficient_law

    checks = []
    B = "-7/3"
    for spec in specs:
        sol = series_solution(*family_ode_polys(spec, B), 0, 16)
        prod = eval_sequence(spec, B, 16)
        ok = all(sol.coeffs[k] == prod[k] for k in range(17))
        checks.append((f"series matches the defining equation "
                       f"[{spec.kind.value}]", ok, ""))
    for spec in specs:
        fam = build_family(spec.with_s(0), 6)
        from .families import recurrence_coeffs

        ok = all(
            fam[m + 1](-(recurrence_coeffs(spec, k)[0])) == 0
            for m in range(6) for k in range(m + 1)
        )
        checks.append((f"s=0 zeros sit on the -D_k grid "
                       f"[{spec.kind.value}]", ok, ""))
        fam2 = build_family(spec, 8)
        ok2 = all(
            fam2[m].leading_coefficient == leading_coefficient_law(spec, m)
            for m in range(1, 9)
        )
        checks.append((f"leading coefficient law [{spec.kind.value}]",
                       ok2, ""))
    return checks


def _suite_perturbation(specs):
    from .perturbation import first_order_coeff, second_order_coeff
    from .recurrence import eval_s_polynomial
    from .perturbation import zero_expansion

    checks = []
    for spec in specs:
        stable = True
        for k in range(5):
            f_ref = first_order_coeff(spec, k, k + 1)
            s_ref = second_order_coeff(spec, k, k + 2)
            for m in range(k + 2, 9):
                if first_order_coeff(spec, k, m) != f_ref:
                    stable = False
                if second_order_coeff(spec, k, m) != s_ref:
                    stable = False
        checks.append((f"expansion coefficients settle for m >= k+order "
                       f"[{spec.kind.value}]", stable, ""))
    for spec in specs:
        k, m = 2, 5
        exp1 = zero_expansion(spec, k, m, order=1)
        poly1 = eval_s_polynomial(spec, list(exp1.coefficients()), m)
        ok1 = all(c == 0 for c in poly1.coeffs[:2])
        exp2 = zero_expansion(spec, k, m, order=2)
        poly2 = eval_s_polynomial(spec, list(exp2.coefficients()), m)
        ok2 = all(c == 0 for c in poly2.coeffs[:3])
        checks.append((f"substituted expansions vanish to their order "
                       f"[{spec.kind.value}]", ok1 and ok2, ""))
    return checks


def _suite_rootfind(specs):
    from .rootfind import find_all_roots

    checks = []
    for spec in specs:
        fam = build_family(spec, 8)
        zs_est = solve_zeros(spec, 8, seed_policy="estimates")
        zs_cir = solve_zeros(spec, 8, seed_policy="circles")
        pairs = zip(sorted(zs_est.zeros, key=lambda z: (z.real, z.imag)),
                    sorted(zs_cir.zeros, key=lambda z: (z.real, z.imag)))
        agree = max(abs(a - b) for a, b in pairs)
        checks.append((
            f"seeding strategies agree on c_8 zeros [{spec.kind.value}]",
            agree < mp.mpf(2) ** -80 and all(zs_est.converged),
            f"max gap {mp.nstr(agree, 3)}",
        ))
        res = max(zs_est.residuals)
        checks.append((f"zero residuals below tolerance "
                       f"[{spec.kind.value}]", res < zs_est.tol, ""))
    return checks


def _suite_tracking(specs):
    from .tracking import match_zeros, min_grid_gap, stabilized_digits

    checks = []
    for spec in specs:
        za = solve_zeros(spec, 12)
        zb = solve_zeros(spec, 16)
        thr = min_grid_gap(spec, 12) / 2
        res = match_zeros(za, zb, threshold=thr)
        ident = all(za.labels[ia] == zb.labels[ib]
                    for ia, ib, _ in res.pairs)
        checks.append((f"cross-degree matching preserves labels "
                       f"[{spec.kind.value}]", ident, ""))
        rep = convergence_report(spec, m_list=(16, 20), digits=6)
        checks.append((f"low zeros stabilize quickly "
                       f"[{spec.kind.value}]", rep.n_stable(6) >= 8,
                       f"n_stable(6) = {rep.n_stable(6)}"))
    ok = (stabilized_digits(mp.mpf("1.0000001"), mp.mpf(1)) == 6
          and stabilized_digits(mp.mpf(1), mp.mpf(1)) >= 50)
    checks.append(("stabilized-digit counter calibrated", ok, ""))
    return checks


def _suite_oracle(specs):
    from .oracle import (
        d2_by_midpoint_matching,
        family_ode_polys,
        local_solutions_at_1,
        ode_residual,
        z1_swapped_spec,
    )
    from .recurrence import eval_sequence

    checks = []
    for spec in specs:
        # truncation tail at |z| = 0.35 with 60 terms sits near 1e-25,
        # far below the pass line yet far above honest coefficient bugs
        res = ode_residual(spec, mp.mpf("-2.0"), N=60)
        checks.append((f"production series satisfies the equation "
                       f"[{spec.kind.value}]", res < mp.mpf("1e-20"),
                       f"residual {mp.nstr(res, 3)}"))
        u0, _ = local_solutions_at_1(spec, "-7/3", 12)
        sw, bw = z1_swapped_spec(spec, "-7/3")
        prod = eval_sequence(sw, bw, 12)
        ok = all(u0.coeffs[k] == prod[k] for k in range(13))
        checks.append((f"point-exchange parameter map exact "
                       f"[{spec.kind.value}]", ok, ""))
    s0 = RecurrenceSpec(kind=FamilyKind.REDUCED, gamma="1/2", delta="1/2",
                        s=0)
    b = mp.mpf("-0.35")
    seq = d2_sequence(s0, b, K=400).estimate
    cf = d2_closed_form_s0(s0, b)
    mid = d2_by_midpoint_matching(s0, b).d2
    tri = max(abs(seq - cf), abs(cf - mid), abs(mid - seq))
    checks.append(("three d2 routes agree at s = 0", tri < mp.mpf("1e-10"),
                   f"max gap {mp.nstr(tri, 3)}"))
    return checks


_SUITES = {
    "recurrence": _suite_recurrence,
    "perturbation": _suite_perturbation,
    "rootfind": _suite_rootfind,
    "tracking": _suite_tracking,
    "oracle": _suite_oracle,
}


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    if cfg.family:
        spec, _ = build_spec(cfg)
        specs = [spec]
    else:
        specs = _default_specs()
    names = list(_SUITES) if cfg.suite == "all" else [cfg.suite]
    unknown = [n for n in names if n not in _SUITES]
    if unknown:
        raise InvalidSpecError(f"unknown suite {unknown[0]!r}")
    lines, failures = [], 0
    with working_precision(cfg.precision_bits):
        for name in names:
            for label, ok, detail in _SUITES[name](specs):
                mark = "PASS" if ok else "FAIL"
                failures += 0 if ok else 1
                suffix = f"  ({detail})" if detail and not ok else ""
                lines.append(f"{mark}  [{name}] {label}{suffix}")
    lines.append(
        f"{'all checks passed' if failures == 0 else f'{failures} check(s) failed'}"
    )
    return "\n".join(lines), (0 if failures == 0 else 1)


# -- argument wiring -----------------------------------------------------------------

_PARAM_FLAGS = ("gamma", "delta", "alpha", "beta", "s", "n", "q", "a",
                "A0", "A1", "h", "eta")


def _add_common(p: argparse.ArgumentParser, family_required: bool = True):
    p.add_argument("--family", required=family_required,
                   choices=["lame", "mathieu", "whill", "heun", "cheun",
                            "rcheun"])
    for flag in _PARAM_FLAGS:
        p.add_argument(f"--{flag}", default=None,
                       help=argparse.SUPPRESS if flag in ("eta",)
                       else f"family parameter {flag}")
    p.add_argument("--precision-bits", type=int, default=256)
    p.add_argument("--tol", default=None,
                   help="root tolerance (default 2^(-precision/2))")
    p.add_argument("--order", type=int, default=2, choices=[0, 1, 2],
                   help="perturbative order used for seeding")
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--format", dest="fmt", default="text",
                   choices=["text", "json", "csv"])
    p.add_argument("--seed-policy", default="auto",
                   choices=["auto", "estimates", "circles"])
    p.add_argument("--output", default=None, help="write result to a file")


def _m_list(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heunzeros",
        description="coefficient polynomials of Heun-class equations: "
                    "exact builds, zero tracking, and connection estimates",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="build and print c_0..c_m")
    _add_common(p)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--m", type=int, default=None)

    p = sub.add_parser("zeros", help="zeros of c_m")
    _add_common(p)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("table", help="approximation-vs-zero table")
    _add_common(p)
    p.add_argument("--m", type=_m_list, required=True,
                   help="degree or comma list, e.g. 30,40")
    p.add_argument("--k-max", type=int, default=6)

    p = sub.add_parser("track", help="stabilization across degrees")
    _add_common(p)
    p.add_argument("--m", type=_m_list, default=(30, 40),
                   help="comma list of degrees, e.g. 30,40")

    p = sub.add_parser("d2", help="connection-coefficient estimate")
    _add_common(p)
    p.add_argument("--B", default=None, help="accessory parameter value")
    p.add_argument("--K", type=int, default=500)
    p.add_argument("--search", action="store_true",
                   help="secant search for the nearest d2 zero from --B")
    p.add_argument("--midpoint", action="store_true",
                   help="also run the interior-matching cross-check")

    p = sub.add_parser("verify", help="self-contained property checks")
    _add_common(p, family_required=False)
    p.add_argument("--suite", default="all",
                   choices=["all"] + sorted(_SUITES))

    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {
        flag: getattr(args, flag)
        for flag in _PARAM_FLAGS
        if getattr(args, flag, None) is not None
    }
    m_attr = getattr(args, "m", None)
    cfg = RunConfig(
        command=args.command,
        family=args.family or "",
        params=params,
        m=m_attr if isinstance(m_attr, int) else None,
        m_list=m_attr if isinstance(m_attr, tuple) else (),
        m_max=getattr(args, "m_max", None),
        k_max=getattr(args, "k_max", 6),
        B=getattr(args, "B", None),
        K=getattr(args, "K", 500),
        precision_bits=args.precision_bits,
        tol=args.tol,
        order=args.order,
        digits=args.digits,
        fmt=args.fmt,
        seed_policy=args.seed_policy,
        output=args.output,
        search=getattr(args, "search", False),
        midpoint=getattr(args, "midpoint", False),
        suite=getattr(args, "suite", "all"),
    )
    return cfg


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        if cfg.command == "poly":
            _emit(cmd_poly(cfg), cfg)
        elif cfg.command == "zeros":
            _emit(cmd_zeros(cfg), cfg)
        elif cfg.command == "table":
            _emit(cmd_table(cfg), cfg)
        elif cfg.command == "track":
            _emit(cmd_track(cfg), cfg)
        elif cfg.command == "d2":
            _emit(cmd_d2(cfg), cfg)
        elif cfg.command == "verify":
            text, code = cmd_verify(cfg)
            _emit(text, cfg)
            return code
        return EXIT_OK
    except NonConvergenceError as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_NONCONVERGENCE}),
              file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (InvalidSpecError, ValueError) as exc:
        print(json.dumps({"error": str(exc), "code": EXIT_INVALID}),
              file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
