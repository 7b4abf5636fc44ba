"""Command-line front end: build algebra files, run verifiers, solve, tabulate.

Subcommands: build, verify, whittaker, character. Reports are JSON with a
top-level "pass" field; the exit code is 0 exactly when it is true. All
randomness is seeded through --seed (default 0) and recorded in reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import serialize
from .charfun import fock_character, verma_character, verify_factorization
from .exactlin import Scalar, SparseMatrix, SparseVector, solve
from .fockrep import build_fock, verify_highest_weight, verify_lift_identities, verify_whittaker_covariance
from .reports import Report
from .superalg import build_gl, subalgebra_from_span, verify_algebra, weyl_vector
from .takiff import build_takiff, verify_hat_closure, verify_takiff
from .wfinite import (
    appendix_pairing_check,
    eta_for_fock,
    graded_nilradical,
    hat_eta,
    nil_character,
    nilchar_from_e,
    regularity_check,
    solve_dual_elements,
    verify_skryabin_conditions,
    whittaker_vectors,
    zeta_from_chi,
)

DEFAULT_MAX_TRUNC = 8


class UsageError(Exception):
    pass


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(rep: Report, out: str | None, seed: int | None = None) -> int:
    if seed is not None:
        rep.seed = seed
    _write(rep.to_json() + "\n", out)
    return 0 if rep.passed else 1


def _trunc(value: int) -> int:
    cap = int(os.environ.get("STL_MAX_TRUNC", DEFAULT_MAX_TRUNC))
    if value > cap:
        raise UsageError(f"truncation {value} exceeds the cap {cap} (STL_MAX_TRUNC)")
    if value < 0:
        raise UsageError("truncation must be nonnegative")
    return value


def _load_takiff(path: str):
    return serialize.takiff_from_dict(_load(path))


def _level(text: str) -> Scalar:
    c = Scalar.parse(text)
    if not c:
        raise UsageError("the level c must be nonzero")
    return c


def _grading_element(t, e: SparseVector) -> SparseVector:
    """Solve [h, e] = e over the Cartan; central shifts do not matter."""
    base = t.base
    cols = [base.bracket(SparseVector.unit(h), e) for h in t.rd.cartan]
    mat = SparseMatrix.from_columns(cols, base.dim)
    sol = solve(mat, e)
    if sol is None:
        raise UsageError("no Cartan grading element h with [h, e] = e")
    out = {}
    for pos, s in sol.items():
        out[t.rd.cartan[pos]] = s
    return SparseVector(out)


def _principal_data(t, args):
    if not getattr(args, "e", None):
        raise UsageError("this suite needs --e with an element file")
    e = serialize.vector_from_dict(_load(args.e), t.base)
    if getattr(args, "h", None):
        h = serialize.vector_from_dict(_load(args.h), t.base)
    else:
        h = _grading_element(t, e)
    g = graded_nilradical(t, h)
    return e, h, g


def cmd_build(args) -> int:
    if args.kind == "gl":
        a, rd = build_gl(args.m, args.n)
        out = serialize.algebra_to_dict(a)
        out["root_datum"] = serialize.root_datum_to_dict(rd)
        _write(serialize.dumps(out), args.out)
        return 0
    if args.kind == "takiff":
        d = _load(args.of)
        a = serialize.algebra_from_dict(d)
        if "root_datum" not in d:
            raise UsageError("the input file carries no root datum")
        rd = serialize.root_datum_from_dict(d["root_datum"])
        t, _ = build_takiff(a, rd)
        _write(serialize.dumps(serialize.takiff_to_dict(t)), args.out)
        return 0
    if args.kind == "span":
        d = _load(getattr(args, "in"))
        a = serialize.algebra_from_dict(d)
        gens = serialize.vectors_from_dict(_load(args.gens), a)
        sub, emb = subalgebra_from_span(a, gens, name=args.name)
        out = serialize.algebra_to_dict(sub)
        out["embedding"] = [
            {"i": i, "j": j, "coeff": str(s)} for (i, j), s in sorted(emb.entries.items())
        ]
        _write(serialize.dumps(out), args.out)
        return 0
    raise UsageError(f"unknown build kind {args.kind}")


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "algebra":
        a = serialize.algebra_from_dict(_load(args.alg))
        return _emit_report(verify_algebra(a), args.out, args.seed)

    if suite == "takiff":
        t = _load_takiff(args.alg)
        rep = verify_takiff(t)
        _, hat = build_takiff(t.base, t.rd)
        rep.merge(verify_hat_closure(t, hat))
        return _emit_report(rep, args.out, args.seed)

    t = _load_takiff(args.alg)

    if suite == "fock-lift":
        f = build_fock(t, _level(args.c), _eta_dict(t, args))
        return _emit_report(verify_lift_identities(f, args.deg), args.out, args.seed)

    if suite == "highest-weight":
        f = build_fock(t, _level(args.c))
        return _emit_report(verify_highest_weight(f), args.out, args.seed)

    if suite == "whittaker-covariance":
        c = _level(args.c)
        if not args.eta:
            raise UsageError("whittaker-covariance needs --eta with a character file")
        eta_nc = serialize.nilchar_from_dict(_load(args.eta), t.total)
        hatted = hat_eta(t, eta_nc, c)
        f = build_fock(t, c, eta_for_fock(t, eta_nc))
        chi_hat = {}
        for i, pidx in enumerate(t.rd.positive):
            r = t.rd.roots[pidx]
            if r.parity == 0:
                chi_hat[i] = hatted.value(r.space[0])
        return _emit_report(
            verify_whittaker_covariance(f, chi_hat, max_degree=args.deg), args.out, args.seed
        )

    if suite == "factorization":
        c = _level(args.c)
        f = build_fock(t, c)
        lam = (
            serialize.weight_from_dict(_load(args.weight))
            if args.weight
            else weyl_vector(t.rd, c)
        )
        return _emit_report(verify_factorization(f, lam, _trunc(args.trunc)), args.out, args.seed)

    if suite == "skryabin":
        e, h, g = _principal_data(t, args)
        chi = nilchar_from_e(t, g, e)
        solve_dual_elements(t, g, e)
        return _emit_report(verify_skryabin_conditions(g, chi), args.out, args.seed)

    if suite == "appendix":
        c = _level(args.c)
        e, h, g = _principal_data(t, args)
        chi = nilchar_from_e(t, g, e)
        solve_dual_elements(t, g, e)
        f = build_fock(t, c, eta_for_fock(t, chi))
        rep = appendix_pairing_check(
            f, g, chi, max_weight=args.weight_bound, find_trunc=_trunc(args.trunc)
        )
        return _emit_report(rep, args.out, args.seed)

    if suite == "regularity":
        c = _level(args.c)
        if args.chi:
            chi = serialize.nilchar_from_dict(_load(args.chi), t.total)
        elif not args.e:
            raise UsageError("regularity needs --chi or --e")
        else:
            e, h, g = _principal_data(t, args)
            full = nilchar_from_e(t, g, e)
            dom = tuple(k for k in full.domain if t.total.parity[k] == 0)
            chi = nil_character(t.total, dom, {k: v for k, v in full.values.items() if k in dom})
        zeta = zeta_from_chi(t, chi, c)
        return _emit_report(regularity_check(zeta, t.rd), args.out, args.seed)

    raise UsageError(f"unknown verify suite {suite}")


def _eta_dict(t, args):
    if getattr(args, "eta", None):
        return eta_for_fock(t, serialize.nilchar_from_dict(_load(args.eta), t.total))
    return None


def cmd_whittaker(args) -> int:
    t = _load_takiff(args.alg)
    c = _level(args.c)
    f = build_fock(t, c, _eta_dict(t, args))
    phi = serialize.nilchar_from_dict(_load(args.chi), t.total)
    wb = whittaker_vectors(f, phi, _trunc(args.trunc))
    out = {
        "dimension": wb.dimension,
        "previous_dimension": wb.prev_dimension,
        "stable": wb.stable,
        "vectors": [serialize.module_vector_to_dict(f, v) for v in wb.vectors],
        "report": wb.report.to_dict(),
    }
    _write(serialize.dumps(out), args.out)
    return 0


def cmd_character(args) -> int:
    t = _load_takiff(args.alg)
    c = _level(args.c)
    trunc = _trunc(args.trunc)
    if args.kind == "fock":
        ch = fock_character(build_fock(t, c), trunc)
    elif args.kind == "verma":
        lam = (
            serialize.weight_from_dict(_load(args.weight))
            if args.weight
            else weyl_vector(t.rd, c)
        )
        ch = verma_character(t.rd, lam, trunc, hatted=True)
    elif args.kind == "verma-plain":
        lam = (
            serialize.weight_from_dict(_load(args.weight))
            if args.weight
            else weyl_vector(t.rd)
        )
        ch = verma_character(t.rd, lam, trunc, hatted=False)
    else:
        raise UsageError(f"unknown character kind {args.kind}")
    if args.format == "tsv":
        lines = ["offset\tmult"]
        for o, m in ch.terms():
            lines.append(",".join(str(k) for k in o) + f"\t{m}")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _write(serialize.dumps(serialize.character_to_dict(ch)), args.out)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whittak", description=__doc__)
    p.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit algebra JSON files")
    bs = b.add_subparsers(dest="kind", required=True)
    bgl = bs.add_parser("gl")
    bgl.add_argument("--m", type=int, required=True)
    bgl.add_argument("--n", type=int, required=True)
    bgl.add_argument("--out")
    btak = bs.add_parser("takiff")
    btak.add_argument("--of", required=True)
    btak.add_argument("--out")
    bspan = bs.add_parser("span")
    bspan.add_argument("--in", dest="in", required=True)
    bspan.add_argument("--gens", required=True)
    bspan.add_argument("--name", default="span")
    bspan.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument(
        "suite",
        choices=[
            "algebra",
            "takiff",
            "fock-lift",
            "highest-weight",
            "whittaker-covariance",
            "factorization",
            "skryabin",
            "appendix",
            "regularity",
        ],
    )
    v.add_argument("--alg", required=True)
    v.add_argument("--e")
    v.add_argument("--h")
    v.add_argument("--chi")
    v.add_argument("--eta")
    v.add_argument("--c", default="1")
    v.add_argument("--deg", type=int, default=2)
    v.add_argument("--trunc", type=int, default=4)
    v.add_argument("--weight")
    v.add_argument("--weight-bound", type=int, default=3)
    v.add_argument("--out")

    w = sub.add_parser("whittaker", help="solve for Whittaker vectors")
    w.add_argument("--alg", required=True)
    w.add_argument("--chi", required=True)
    w.add_argument("--eta")
    w.add_argument("--c", default="1")
    w.add_argument("--trunc", type=int, default=4)
    w.add_argument("--out")

    ch = sub.add_parser("character", help="emit a formal character table")
    ch.add_argument("--kind", choices=["fock", "verma", "verma-plain"], default="fock")
    ch.add_argument("--alg", required=True)
    ch.add_argument("--c", default="1")
    ch.add_argument("--trunc", type=int, default=4)
    ch.add_argument("--weight")
    ch.add_argument("--format", choices=["json", "tsv"], default="json")
    ch.add_argument("--out")

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "whittaker":
            return cmd_whittaker(args)
        if args.command == "character":
            return cmd_character(args)
        raise UsageError(f"unknown command {args.command}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
