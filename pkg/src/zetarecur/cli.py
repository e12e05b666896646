"""Command line entry point: ``zetarecur tables`` and ``zetarecur verify``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
errors.  Reports are deterministic apart from the ``timestamp`` block.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator

from . import coeffs, cothalg, identities, laurent, zetanum
from .report import IdentityReport, NumericCheck

SUITES = ("algebra", "ramanujan", "limit", "recurrence", "klimit")
TABLE_KINDS = ("c", "h", "U", "V", "L", "D", "r")
ENV_PRECISION = "ZETARECUR_PRECISION"
MAX_TABLE_SIZE = 200
DIGITS = 20


@dataclass
class RunConfig:
    precision_bits: int = 256
    tol: str = "1e-12"
    n_max: int = 40
    output_format: str = "json"
    N: int | None = None
    M: int | None = None
    K: int | None = None
    alpha_min: str = "1/16"
    J: int = 60
    n_budget: int = 200


@dataclass
class Record:
    name: str
    paper_equation_label: str
    status: str
    residual: str
    tol: str = ""
    tail_bounds: dict[str, str] = field(default_factory=dict)
    terms_used: Any = None
    detail: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    def as_json(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "paper_equation_label": self.paper_equation_label,
            "status": self.status,
            "residual": self.residual,
            "tol": self.tol,
            "tail_bounds": self.tail_bounds,
            "terms_used": self.terms_used,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_num(x) -> str:
    if x is None:
        return ""
    ctx = zetanum.context(96)
    return ctx.nstr(zetanum.to_mpf(ctx, x), DIGITS)


# ---------------------------------------------------------------------------
# record builders


def _exact(rep: IdentityReport) -> Record:
    return Record(
        name=rep.name,
        paper_equation_label=rep.label,
        status="pass" if rep.ok else "fail",
        residual="exact",
        detail={"checked": rep.checked, **({"failures": rep.failures[:5]} if rep.failures else {}),
                **{k: v for k, v in rep.detail.items()}},
    )


def _numeric(chk: NumericCheck, name: str | None = None) -> Record:
    return Record(
        name=name or chk.name,
        paper_equation_label=chk.label,
        status="pass" if chk.ok else "fail",
        residual=fmt_num(chk.residual),
        tol=fmt_num(chk.tol),
        tail_bounds={"series": fmt_num(chk.tail_bound)} if chk.tail_bound else {},
        terms_used=chk.terms_used or None,
        detail=chk.detail,
    )


def _side_residual(lhs, rhs, p: int):
    """``|lhs - rhs|`` plus one unit of rounding at ``p`` bits on the larger side."""
    ctx = zetanum.context(p)
    scale = max(abs(lhs), abs(rhs), ctx.mpf(1))
    return abs(lhs - rhs) + ctx.ldexp(scale, -p)


def _tol(cfg: RunConfig, p: int):
    return zetanum.context(p).mpf(cfg.tol)


def suite_algebra(cfg: RunConfig) -> Iterator[Callable[[], Record]]:
    m_max = max(1, cfg.n_max // 2)

    def laurent_ids():
        rep = IdentityReport(f"algebra.laurent_identities[M<={m_max}]", "")
        for M in range(1, m_max + 1):
            rep.merge(laurent.check_prop21(M))
        return _exact(rep)

    def s_rec():
        rep = IdentityReport(f"algebra.s_recurrences[M<={m_max}]", "")
        for M in range(1, m_max + 1):
            rep.merge(laurent.check_s_recurrences(M))
        return _exact(rep)

    def tables():
        rep = IdentityReport(f"algebra.tables[n<={cfg.n_max}]", "c_n_k_recurrence,v_recurrence,definition_of_V")
        try:
            coeffs.build_tables(cfg.n_max)
            rep.expect(True, "")
        except coeffs.TableMismatch as exc:
            rep.expect(False, str(exc))
        return _exact(rep)

    def even_derivatives():
        n = min(cfg.n_max, 20)
        rep = cothalg.verify_lemma22(n, coeffs.build_tables(cfg.n_max).c)
        rep.name = f"algebra.even_derivatives[n<={n}]"
        return _exact(rep)

    def binrec():
        rep = coeffs.check_binomial_recurrence(cfg.n_max)
        rep.name = f"algebra.binomial_recurrence[n<={cfg.n_max}]"
        return _exact(rep)

    def matrices():
        rep = coeffs.check_matrix_identities(cfg.n_max)
        rep.name = f"algebra.matrix_identities[n<={cfg.n_max}]"
        return _exact(rep)

    def coth_ids():
        p = cfg.precision_bits
        checks = identities.verify_coth_identities(["0.3", "1", "2.5"], 4, p, _tol(cfg, p))
        worst = max(checks, key=lambda c: c.residual)
        return Record(
            name="algebra.coth_expansions[M<=4]",
            paper_equation_label="eq_coth_odd,eq_coth_even",
            status="pass" if all(checks) else "fail",
            residual=fmt_num(worst.residual),
            tol=cfg.tol,
            detail={"checked": len(checks), "worst": worst.name, "relative": True},
        )

    yield from (laurent_ids, s_rec, tables, even_derivatives, binrec, matrices, coth_ids)


def suite_ramanujan(cfg: RunConfig) -> Iterator[Callable[[], Record]]:
    p = cfg.precision_bits
    ctx = zetanum.context(p)
    for label, alpha in (("pi", ctx.pi), ("2pi", 2 * ctx.pi), ("pi/3", ctx.pi / 3)):
        for n in (1, 2, 3):
            def run(alpha=alpha, n=n, label=label):
                lhs, rhs = zetanum.ramanujan_sides(alpha, n, p)
                chk = NumericCheck(f"ramanujan.formula[alpha={label},n={n}]", "",
                                   _side_residual(lhs, rhs, p), _tol(cfg, p))
                return _numeric(chk)
            yield run
    for parity, label in (("even", "eq_N_even"), ("odd", "eq_N_odd")):
        for M in range(1 if parity == "even" else 0, 4):
            for alpha in ("1/2", "1", "2"):
                def run(parity=parity, M=M, alpha=alpha, label=label):
                    a = zetanum.to_mpf(ctx, Fraction(alpha))
                    worst = 0
                    for form in (1, 2):
                        lhs, rhs = zetanum.cor32_sides(a, M, parity, p, form)
                        worst = max(worst, _side_residual(lhs, rhs, p))
                    return _numeric(NumericCheck(f"ramanujan.coth_form[{parity},M={M},alpha={alpha}]",
                                                 label, worst, _tol(cfg, p)))
                yield run


def _limit_record(name: str, label: str, cert: identities.LimitCertificate, cfg: RunConfig) -> Record:
    return Record(
        name=name,
        paper_equation_label=label,
        status="pass" if cert.passed else "fail",
        residual=fmt_num(cert.residuals[-1]),
        tol=cfg.tol,
        tail_bounds={"series": fmt_num(cert.tail_bounds[-1])},
        terms_used=cert.terms_used[-1],
        detail={
            "schedule": [fmt_rational(a) for a in cert.schedule],
            "target": fmt_num(cert.target),
            "residuals": [fmt_num(r) for r in cert.residuals],
            "raw_residuals": [fmt_num(r) for r in cert.raw_residuals],
            "decreasing": cert.decreasing,
            "decay_slope": None if cert.decay_slope is None else round(cert.decay_slope, 6),
        },
    )


def _schedule(cfg: RunConfig):
    return identities.schedule_down_to(Fraction(cfg.alpha_min))


def suite_limit(cfg: RunConfig) -> Iterator[Callable[[], Record]]:
    for N in ([cfg.N] if cfg.N else range(1, 5)):
        def run(N=N):
            cert = identities.verify_limit(N, _schedule(cfg), cfg.precision_bits, cfg.tol)
            return _limit_record(f"limit.value[N={N}]", "limit_equation", cert, cfg)
        yield run


def suite_klimit(cfg: RunConfig) -> Iterator[Callable[[], Record]]:
    Ks = [cfg.K] if cfg.K is not None else [0, 1, 2]
    Ms = [cfg.M] if cfg.M else [1, 2]
    for K in Ks:
        for M in Ms:
            def run(K=K, M=M):
                cert = identities.verify_klimit(K, M, _schedule(cfg), cfg.precision_bits, cfg.tol)
                rec = _limit_record(f"klimit.value[K={K},M={M}]", "K_equation", cert, cfg)
                combo = identities.klimit_combo(K, M)
                rec.detail["weights"] = {str(m): fmt_rational(w) for m, w in combo.weights.items()}
                rec.detail["zeta_coeffs"] = {str(k): fmt_rational(c) for k, c in combo.zeta_coeffs.items()}
                return rec
            yield run


def suite_recurrence(cfg: RunConfig) -> Iterator[Callable[[], Record]]:
    p = cfg.precision_bits

    def zeta3_recurrence():
        rep = identities.verify_recurrence_cor41(cfg.J, cfg.n_budget, p, cfg.tol)
        return Record(
            name=f"recurrence.zeta3[J={cfg.J},n_budget={cfg.n_budget}]",
            paper_equation_label="odd_zeta_recurrence1",
            status="pass" if rep.passed else "fail",
            residual=fmt_num(rep.residual),
            tol=cfg.tol,
            tail_bounds={
                "inner": fmt_num(rep.inner_tail_bound),
                "outer": fmt_num(rep.outer_tail_bound),
                "outer_estimate": fmt_num(rep.outer_tail_estimate),
            },
            terms_used={"J": cfg.J, "n_budget": cfg.n_budget},
            detail={"lhs": fmt_num(rep.lhs), "rhs": fmt_num(rep.rhs)},
        )

    yield zeta3_recurrence
    for N in ([cfg.N] if cfg.N else [1, 2]):
        def gen(N=N):
            rel = identities.generate_tanh_recurrence(N, 120, p, cfg.tol)
            return Record(
                name=f"recurrence.tanh_family[N={N}]",
                paper_equation_label="id_from_tanh",
                status="pass" if rel.passed else "fail",
                residual=fmt_num(rel.residual),
                tol=cfg.tol,
                tail_bounds={"source_truncation": fmt_num(rel.truncation_bound)},
                terms_used={"k_max": rel.k_max},
                detail={"leading_coefficients": [fmt_num(c) for c in rel.coefficients[:6]]},
            )
        yield gen

    def tanh_ids():
        checks = identities.verify_tanh_ids(["0.1", "1", "5"], p, _tol(cfg, p))
        worst = max(checks, key=lambda c: c.residual)
        return Record(
            name="recurrence.tanh_identities",
            paper_equation_label="id_tanh,id_from_tanh",
            status="pass" if all(checks) else "fail",
            residual=fmt_num(worst.residual),
            tol=cfg.tol,
            tail_bounds={"series": fmt_num(max(c.tail_bound for c in checks))},
            terms_used=max(c.terms_used for c in checks),
            detail={"checked": len(checks), "worst": worst.name},
        )

    yield tanh_ids


SUITE_FUNCS = {
    "algebra": suite_algebra,
    "ramanujan": suite_ramanujan,
    "limit": suite_limit,
    "recurrence": suite_recurrence,
    "klimit": suite_klimit,
}


def run_suites(names, cfg: RunConfig, progress=None) -> list[Record]:
    records = []
    for suite in names:
        for job in SUITE_FUNCS[suite](cfg):
            t0 = time.perf_counter()
            try:
                rec = job()
            except Exception as exc:  # a crashing check is a failed check
                rec = Record(name=f"{suite}.{getattr(job, '__name__', 'check')}", paper_equation_label="",
                             status="fail", residual="error", detail={"error": repr(exc)})
            rec.wall_time = time.perf_counter() - t0
            records.append(rec)
            if progress:
                progress(rec)
    records.sort(key=lambda r: r.name)
    return records


# ---------------------------------------------------------------------------
# output


def render_report(command: str, cfg: RunConfig, records: list[Record], fmt: str) -> str:
    failed = sum(r.status != "pass" for r in records)
    if fmt == "json":
        doc = {
            "command": command,
            "config": {
                "precision_bits": cfg.precision_bits,
                "tol": cfg.tol,
                "n_max": cfg.n_max,
                "alpha_min": cfg.alpha_min,
            },
            "records": [r.as_json() for r in records],
            "summary": {"total": len(records), "passed": len(records) - failed, "failed": failed},
            "timestamp": {
                "created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
                "wall_time": {r.name: round(r.wall_time, 4) for r in records},
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "paper_equation_label", "status", "residual", "tol", "terms_used"])
        for r in records:
            w.writerow([r.name, r.paper_equation_label, r.status, r.residual, r.tol,
                        "" if r.terms_used is None else json.dumps(r.terms_used, sort_keys=True)])
        return buf.getvalue()
    lines = [f"{r.status.upper():4}  {r.name:<52} residual={r.residual}" for r in records]
    lines.append(f"{len(records) - failed}/{len(records)} checks passed")
    return "\n".join(lines) + "\n"


def table_entries(kind: str, size: int) -> list[dict[str, Any]]:
    if kind == "r":
        return [{"k": k, "value": fmt_rational(v)} for k, v in enumerate(coeffs.limit_coeffs(size).r, start=1)]
    t = coeffs.build_tables(size) if kind in ("c", "U", "V") else None
    mats = {
        "c": lambda: t.c,
        "h": lambda: coeffs.build_h(size),
        "U": lambda: t.U,
        "V": lambda: t.V,
        "L": lambda: coeffs.build_L(size),
        "D": lambda: coeffs.build_D(size),
    }
    m = mats[kind]()
    return [
        {"row": i, "col": j, "value": fmt_rational(m[i][j])}
        for i in range(1, size + 1)
        for j in range(1, size + 1)
        if m[i][j]
    ]


def render_table(kind: str, size: int, fmt: str) -> str:
    entries = table_entries(kind, size)
    if fmt == "json":
        return json.dumps({"kind": kind, "size": size, "entries": entries}, indent=2) + "\n"
    buf = io.StringIO()
    keys = list(entries[0]) if entries else ["row", "col", "value"]
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(entries)
    else:
        for e in entries:
            buf.write("  ".join(str(e[k]) for k in keys) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing


def _default_precision() -> int:
    env = os.environ.get(ENV_PRECISION)
    if env is None:
        return 256
    try:
        return int(env)
    except ValueError:
        return -1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=None,
                        help=f"working precision in bits (default 256, or ${ENV_PRECISION})")
    common.add_argument("--tol", default="1e-12", help="tolerance for numeric checks (decimal string)")
    common.add_argument("--n-max", type=int, default=40, help="size bound for the exact tables")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    parser = argparse.ArgumentParser(prog="zetarecur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    tp = sub.add_parser("tables", parents=[common], help="emit an exact coefficient table")
    tp.add_argument("--kind", choices=TABLE_KINDS, required=True)
    tp.add_argument("--n", "--N", dest="size", type=int, required=True, help="table size (or N for kind r)")

    vp = sub.add_parser("verify", parents=[common], help="run identity checks")
    vp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    vp.add_argument("--N", type=int, default=None)
    vp.add_argument("--M", type=int, default=None)
    vp.add_argument("--K", type=int, default=None)
    vp.add_argument("--alpha-min", default="1/16", help="smallest alpha in the halving schedule")
    vp.add_argument("--J", type=int, default=60, help="outer truncation for the zeta(3) recurrence")
    vp.add_argument("--n-budget", type=int, default=200, help="inner truncation for the zeta(3) recurrence")
    vp.add_argument("-v", "--verbose", action="store_true", help="stream records to stderr")
    return parser


def _config(args, parser) -> RunConfig:
    p = args.precision_bits if args.precision_bits is not None else _default_precision()
    if p < 64:
        parser.error(f"precision must be >= 64 bits (got {p})")
    try:
        tol = zetanum.context(64).mpf(args.tol)
    except (ValueError, TypeError):
        parser.error(f"invalid --tol {args.tol!r}")
    if not tol > 0:
        parser.error("--tol must be positive")
    if args.n_max < 1:
        parser.error("--n-max must be >= 1")
    cfg = RunConfig(precision_bits=p, tol=args.tol, n_max=args.n_max, output_format=args.format)
    if args.command == "verify":
        try:
            a = Fraction(args.alpha_min)
        except (ValueError, ZeroDivisionError):
            parser.error(f"invalid --alpha-min {args.alpha_min!r}")
        if not 0 < a <= 1:
            parser.error("--alpha-min must lie in (0, 1]")
        for name in ("N", "M"):
            v = getattr(args, name)
            if v is not None and v < 1:
                parser.error(f"--{name} must be >= 1")
        if args.K is not None and args.K < 0:
            parser.error("--K must be >= 0")
        if args.J < 1 or args.n_budget < 1:
            parser.error("--J and --n-budget must be >= 1")
        cfg.N, cfg.M, cfg.K = args.N, args.M, args.K
        cfg.alpha_min, cfg.J, cfg.n_budget = args.alpha_min, args.J, args.n_budget
    return cfg


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "tables":
        if not 1 <= args.size <= MAX_TABLE_SIZE:
            print(f"zetarecur: table size must lie in [1, {MAX_TABLE_SIZE}]", file=sys.stderr)
            return 2
        sys.stdout.write(render_table(args.kind, args.size, cfg.output_format))
        return 0

    names = SUITES if args.suite == "all" else (args.suite,)
    progress = None
    if args.verbose:
        def progress(rec: Record) -> None:
            print(f"[{rec.status}] {rec.name} ({rec.wall_time:.2f}s)", file=sys.stderr, flush=True)
    records = run_suites(names, cfg, progress)
    sys.stdout.write(render_report("verify " + " ".join(argv), cfg, records, cfg.output_format))
    return 0 if all(r.status == "pass" for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
