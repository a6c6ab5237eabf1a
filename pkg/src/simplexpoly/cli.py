"""Batch command-line front end.

Verbs: ``poly``, ``gram``, ``connect``, ``expand``, ``limit``, ``esf``.
Exit status is 0 on success, 2 on invalid input and 3 when the emitted
report carries a nonempty ``discrepancies`` list.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .core import Poly, check_index, fmt_exact
from .distributions import esf_pmf, partitions_of
from .families import FAMILIES, FamilyError, Params, get_family
from .hahn import hahn_jacobi_limit_diag
from .laguerre import CORRECTED_READING, PRINTED_READING, connection_table, connection_cstar
from .meixner import meixner_connection_check
from .oracle import fourier_expand, gram_matrix

OK, INVALID, DISCREPANCY = 0, 2, 3
OUTPUT_DIR_ENV = "SIMPLEXPOLY_OUTPUT_DIR"

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise UsageError(f"expected an integer or p/q rational, got {text!r}")
    value = Fraction(text)
    return value


def rational_list(text: str) -> tuple:
    return tuple(rational(t) for t in text.split(",") if t.strip())


def int_list(text: str) -> tuple:
    try:
        return check_index(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad index {text!r}: {exc}") from None


def parse_poly(text: str, dim: int) -> Poly:
    """``"coef@e1,e2;coef@e1,e2"`` or a JSON polynomial object."""
    text = text.strip()
    if text.startswith("{"):
        p = Poly.from_json(text)
    else:
        terms = {}
        for chunk in filter(None, (c.strip() for c in text.split(";"))):
            coef, _, exps = chunk.partition("@")
            key = int_list(exps) if exps else (0,) * dim
            terms[key] = terms.get(key, Fraction(0)) + rational(coef)
        p = Poly(dim, terms)
    if p.dim != dim:
        raise UsageError(f"polynomial has {p.dim} variables, family expects {dim}")
    return p


def _params(args) -> Params:
    return Params(
        alpha=args.alpha or (),
        eps=tuple(int(e) for e in args.eps) if args.eps else (),
        total=args.total,
        p=args.p,
        theta=args.theta,
        depth=args.depth,
    )


def _add_family_args(sp):
    sp.add_argument("--family", required=True)
    sp.add_argument("--alpha", type=rational_list)
    sp.add_argument("--eps", type=int_list)
    sp.add_argument("--total", type=int, help="sample size |r| for Hahn families")
    sp.add_argument("--p", type=rational)
    sp.add_argument("--theta", type=rational)
    sp.add_argument("--depth", type=int, help="truncation depth for GEM families")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplexpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", help=f"output file (relative paths resolve under ${OUTPUT_DIR_ENV})")

    sp = sub.add_parser("poly", help="coefficients of one polynomial")
    _add_family_args(sp)
    sp.add_argument("--n", type=int_list, required=True)
    common(sp)

    sp = sub.add_parser("gram", help="exact Gram matrix and constant comparison")
    _add_family_args(sp)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--constants", choices=("derived", "printed", "none"), default="derived")
    sp.add_argument("--threads", type=int, default=1)
    common(sp)

    sp = sub.add_parser("connect", help="Laguerre and Meixner connection coefficients")
    sp.add_argument("--alpha", type=rational_list, required=True)
    sp.add_argument("--n", type=int_list, required=True)
    sp.add_argument("--p", type=rational, default=Fraction(1, 2))
    sp.add_argument("--reading", choices=("printed", "corrected"), default="corrected")
    common(sp)

    sp = sub.add_parser("expand", help="Fourier coefficients of a polynomial")
    _add_family_args(sp)
    sp.add_argument("--f", required=True, help='"coef@e1,e2;..." or a JSON polynomial')
    sp.add_argument("--max-degree", type=int)
    common(sp)

    sp = sub.add_parser("limit", help="Hahn to Jacobi convergence table")
    sp.add_argument("--alpha", type=rational, required=True)
    sp.add_argument("--beta", type=rational, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--N", type=int_list, default=(100, 1000, 10000))
    sp.add_argument("--grid", type=int, default=11, help="number of equispaced z points in [0, 1]")
    common(sp)

    sp = sub.add_parser("esf", help="Ewens sampling formula")
    sp.add_argument("--theta", type=rational, required=True)
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    return parser


# ------------------------------------------------------------------ verbs

def _family_setup(args):
    fam = get_family(args.family)
    params = _params(args)
    fam.validate(params)
    return fam, params


def _poly(args):
    fam, params = _family_setup(args)
    p = fam.build(params, args.n)
    if args.format == "csv":
        lines = ["index,coeff"] + [
            " ".join(map(str, k)) + "," + fmt_exact(c) for k, c in sorted(p.terms.items())
        ]
        return "\n".join(lines) + "\n", OK
    return json.dumps({"family": fam.name, "n": list(args.n), "poly": p.to_json()}, indent=2) + "\n", OK


def _gram(args):
    fam, params = _family_setup(args)
    if args.max_degree < 0 or args.threads < 1:
        raise UsageError("--max-degree must be >= 0 and --threads >= 1")
    report = gram_matrix(
        lambda n: fam.build(params, n),
        fam.indices(params, args.max_degree),
        fam.weight(params),
        fam.constant(params, args.constants),
        threads=args.threads,
    )
    text = report.to_csv() if args.format == "csv" else report.dumps() + "\n"
    return text, DISCREPANCY if report.discrepancies else OK


def _connect(args):
    if len(args.alpha) < 2 or len(args.n) != len(args.alpha):
        raise UsageError("connect needs d >= 2 alpha entries and an index n of length d")
    reading = CORRECTED_READING if args.reading == "corrected" else PRINTED_READING
    lag = connection_table(args.alpha, args.n, reading=reading)
    p = args.p
    if not 0 < p < 1:
        raise UsageError("--p must lie in (0, 1)")
    scale = p ** sum(args.n)
    meix_rows, meix_disc = {}, []
    for m in sorted(lag.entries):
        oracle = meixner_connection_check(args.alpha, p, args.n, m)
        cstar = connection_cstar(args.alpha, args.n, m)
        row = {"oracle": oracle, "printed": cstar, "scaled": scale * cstar}
        meix_rows[m] = row
        for meth in ("printed", "scaled"):
            if row[meth] != oracle:
                meix_disc.append(
                    {"m": list(m), "method": meth, "value": fmt_exact(row[meth]), "oracle": fmt_exact(oracle)}
                )
    discrepancies = [dict(d, system="laguerre") for d in lag.discrepancies] + [
        dict(d, system="meixner") for d in meix_disc
    ]
    if args.format == "csv":
        lines = ["system,m," + ",".join(lag.methods)]
        for m, row in sorted(lag.entries.items()):
            lines.append("laguerre," + " ".join(map(str, m)) + "," + ",".join(fmt_exact(row[k]) for k in lag.methods))
        lines.append("system,m,oracle,printed,scaled")
        for m, row in meix_rows.items():
            lines.append("meixner," + " ".join(map(str, m)) + "," + ",".join(fmt_exact(v) for v in row.values()))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            {
                "reading": reading.label(),
                "laguerre": lag.to_json(),
                "meixner": {
                    "p": fmt_exact(p),
                    "methods": ["oracle", "printed", "scaled"],
                    "entries": {
                        ",".join(map(str, m)): {k: fmt_exact(v) for k, v in row.items()}
                        for m, row in meix_rows.items()
                    },
                    "discrepancies": meix_disc,
                },
                "discrepancies": discrepancies,
            },
            indent=2,
        ) + "\n"
    return text, DISCREPANCY if discrepancies else OK


def _expand(args):
    fam, params = _family_setup(args)
    dim = fam.weight(params).nvars
    f = parse_poly(args.f, dim)
    degree = f.degree if args.max_degree is None else args.max_degree
    exp = fourier_expand(f, lambda n: fam.build(params, n), fam.indices(params, max(degree, 0)), fam.weight(params))
    if args.format == "csv":
        lines = ["index,coefficient,norm"] + [
            " ".join(map(str, n)) + f",{fmt_exact(a)},{fmt_exact(exp.norms[n])}"
            for n, a in sorted(exp.coefficients.items())
        ]
        return "\n".join(lines) + "\n", OK
    return json.dumps(exp.to_json(), indent=2) + "\n", OK


def _limit(args):
    if args.grid < 2:
        raise UsageError("--grid needs at least two points")
    zgrid = [Fraction(i, args.grid - 1) for i in range(args.grid)]
    rows = hahn_jacobi_limit_diag(args.alpha, args.beta, args.n, args.N, zgrid)
    if args.format == "json":
        body = [{"N": r.N, "n": r.n, "sup_error": r.sup_error, "constant_gap": r.constant_gap} for r in rows]
        return json.dumps(body, indent=2) + "\n", OK
    lines = ["N,n,sup_error,constant_gap"] + [f"{r.N},{r.n},{r.sup_error!r},{r.constant_gap!r}" for r in rows]
    return "\n".join(lines) + "\n", OK


def _esf(args):
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    probs = {p.label(): esf_pmf(args.theta, p) for p in partitions_of(args.n)}
    if args.format == "csv":
        lines = ["partition,probability"] + [f'"{k}",{fmt_exact(v)}' for k, v in probs.items()]
        return "\n".join(lines) + "\n", OK
    return json.dumps({k: fmt_exact(v) for k, v in probs.items()}) + "\n", OK


VERBS = {"poly": _poly, "gram": _gram, "connect": _connect, "expand": _expand, "limit": _limit, "esf": _esf}


def _resolve_output(path: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, code = VERBS[args.verb](args)
    except (UsageError, FamilyError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"simplexpoly: error: {exc}", file=stderr)
        return INVALID
    if args.output:
        path = _resolve_output(args.output)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path}", file=stderr)
    else:
        stdout.write(text)
    if code == DISCREPANCY:
        print("discrepancies detected; see the report", file=stderr)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
