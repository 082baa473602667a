"""Command line front-end.

Subcommands build instances from text documents (see textio), run one of
the engines, and write results back in the same format.  Exit codes:
0 success (and passing checks), 1 domain error or failing check, 2 usage
error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import jordan, oracle, polymat, reductions, textio
from .dnc import interpolation_basis
from .field import PrimeField
from .jordan import JordanRep
from .linearization import lin_interp_basis
from .nullspace import minimal_nullspace_basis
from .polymat import PolyMatrix
from .shift_change import change_shift
from .textio import Document, ParseError, Section


class UsageError(Exception):
    pass


def _load(path: str) -> Document:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return textio.parse_document(handle.read())
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc


def _emit(doc: Document, path: str | None) -> None:
    text = textio.serialize_document(doc)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _same_prime(*docs: Document) -> int:
    ps = {d.p for d in docs}
    if len(ps) != 1:
        raise ValueError("input files disagree on the field prime")
    return ps.pop()


def _jordan_from(doc: Document, field: PrimeField, evals):
    """Jordan section normalized, with the evaluation columns permuted along."""
    blocks = doc.first("jordan")
    rep, perm = jordan.normalize(field, blocks)
    return rep, [[row[c] for c in perm] for row in evals]


def _shift_from(args, doc: Document, m: int, skip: int = 0) -> list[int]:
    """Shift from --shift (first section) or the bundled document (index skip)."""
    if args.shift:
        sdoc = _load(args.shift)
        _same_prime(sdoc, doc)
        shift = sdoc.first("shift")
    else:
        try:
            shift = doc.first("shift", skip)
        except ValueError:
            shift = [0] * m
    if len(shift) != m:
        raise ValueError("shift length does not match the row count")
    return list(shift)


def _cmd_interp(args) -> int:
    doc = _load(args.evals)
    field = doc.field()
    evals = doc.first("mat")
    m = len(evals)
    shift = _shift_from(args, doc, m)
    if args.dense_mulmat:
        if args.algo == "dnc":
            raise UsageError("--algo dnc requires a Jordan multiplication matrix")
        mdoc = _load(args.dense_mulmat)
        _same_prime(doc, mdoc)
        mulmat = mdoc.first("mat", skip=1 if args.dense_mulmat == args.evals else 0)
    else:
        jdoc = _load(args.jordan) if args.jordan else doc
        if args.jordan:
            _same_prime(doc, jdoc)
        mulmat, evals = _jordan_from(jdoc, field, evals)
    sigma = len(evals[0]) if evals else 0
    if args.algo == "dnc":
        basis = interpolation_basis(evals, mulmat, shift, field)
    elif args.algo == "lin":
        delta = 1
        if isinstance(mulmat, JordanRep):
            bound = jordan.minpoly_degree(mulmat)
        else:
            bound = max(sigma, 1)
        while delta < bound:
            delta *= 2
        basis, _ = lin_interp_basis(evals, mulmat, shift, delta, field)
    else:
        basis, _ = oracle.oracle_popov(evals, mulmat, shift, field)
    _emit(Document(field.p, [textio.polymat_section(basis)]), args.output)
    return 0


def _orders_from(args, doc: Document) -> list[int]:
    """Orders from --orders (first shift section) or the bundled document."""
    if args.orders:
        odoc = _load(args.orders)
        _same_prime(odoc, doc)
        return list(odoc.first("shift"))
    return list(doc.first("shift", 0))


def _cmd_hermite_pade(args) -> int:
    # bundled layout: polymat, then shift #0 = orders, shift #1 = shift
    doc = _load(args.input)
    field = doc.field()
    fmat = textio.polymat_from_section(doc.first("polymat"), field)
    orders = _orders_from(args, doc)
    shift = _shift_from(args, doc, fmat.nrows, skip=0 if args.orders else 1)
    inst = reductions.hermite_pade_instance(fmat, orders)
    basis = interpolation_basis(inst.evals, inst.mulmat, shift, field)
    _emit(Document(field.p, [textio.polymat_section(basis)]), args.output)
    return 0


def _cmd_mpade(args) -> int:
    # bundled layout: polymat, mat of points (one row), orders, then shift
    doc = _load(args.input)
    field = doc.field()
    fmat = textio.polymat_from_section(doc.first("polymat"), field)
    points = doc.first("mat")[0]
    orders = _orders_from(args, doc)
    shift = _shift_from(args, doc, fmat.nrows, skip=0 if args.orders else 1)
    inst = reductions.mpade_instance(fmat, points, orders)
    basis = interpolation_basis(inst.evals, inst.mulmat, shift, field)
    _emit(Document(field.p, [textio.polymat_section(basis)]), args.output)
    return 0


def _cmd_multi_interp(args) -> int:
    doc = _load(args.input)
    field = doc.field()
    gamma_rows = doc.first("mat", 0)
    point_rows = doc.first("mat", 1)
    weights = doc.first("shift")
    r = len(weights)
    gamma = tuple(tuple(g) for g in gamma_rows)
    points = tuple((row[0], tuple(row[1:])) for row in point_rows)
    supports = []
    for k in range(len(points)):
        rows = doc.first("mat", 2 + k)
        supports.append(frozenset((row[0], tuple(row[1:])) for row in rows))
    inst = reductions.MultivariateInstance(
        field, r, gamma, points, tuple(supports), tuple(weights)
    )
    interp, shift = reductions.multivariate_instance(inst)
    basis = interpolation_basis(interp.evals, interp.mulmat, shift, field)
    _emit(
        Document(
            field.p,
            [Section("shift", shift), textio.polymat_section(basis)],
        ),
        args.output,
    )
    return 0


def _cmd_rs_interp(args) -> int:
    doc = _load(args.points)
    field = doc.field()
    pts = [(row[0], row[1]) for row in doc.first("mat")]
    mults = [args.multiplicity] * len(pts)
    if args.mult_file:
        mdoc = _load(args.mult_file)
        _same_prime(doc, mdoc)
        mults = list(mdoc.first("shift"))
    sigma = sum(b * (b + 1) // 2 for b in mults)
    m = args.list_size or reductions.guruswami_sudan_list_size(sigma, args.weight)
    res = reductions.rs_interpolation(field, pts, mults, args.weight, m)
    q = PolyMatrix(field, [res.q_row], m)
    _emit(
        Document(
            field.p,
            [
                Section("shift", res.shift),
                textio.polymat_section(q),
                textio.polymat_section(res.basis),
            ],
        ),
        args.output,
    )
    return 0


def _cmd_nullspace(args) -> int:
    doc = _load(args.input)
    field = doc.field()
    fmat = textio.polymat_from_section(doc.first("polymat"), field)
    shift = _shift_from(args, doc, fmat.nrows)
    basis, _ = minimal_nullspace_basis(fmat, shift)
    _emit(Document(field.p, [textio.polymat_section(basis)]), args.output)
    return 0


def _cmd_shift_change(args) -> int:
    # bundled layout: polymat, shift #0 = base shift, shift #1 = extra shift
    doc = _load(args.input)
    field = doc.field()
    pmat = textio.polymat_from_section(doc.first("polymat"), field)
    if args.shift:
        sdoc = _load(args.shift)
        _same_prime(doc, sdoc)
        base = list(sdoc.first("shift"))
    else:
        base = list(doc.first("shift", 0))
    if args.target:
        tdoc = _load(args.target)
        _same_prime(doc, tdoc)
        extra = list(tdoc.first("shift"))
    else:
        extra = list(doc.first("shift", 0 if args.shift else 1))
    reduced, transform = change_shift(pmat, base, extra)
    sections = [textio.polymat_section(reduced)]
    if args.with_transform:
        sections.append(textio.polymat_section(transform))
    _emit(Document(field.p, sections), args.output)
    return 0


def _cmd_check(args) -> int:
    doc = _load(args.matrix)
    field = doc.field()
    mat = textio.polymat_from_section(doc.first("polymat"), field)
    if args.mode in ("popov", "reduced"):
        shift = _shift_from(args, doc, mat.ncols)
        ok = (
            polymat.is_popov(mat, shift)
            if args.mode == "popov"
            else polymat.is_reduced(mat, shift)
        )
    else:
        if not args.evals:
            raise UsageError(f"check --{args.mode} requires --evals")
        if args.mode == "equiv" and not args.matrix2:
            raise UsageError("check --equiv requires --matrix2")
        edoc = _load(args.evals)
        _same_prime(doc, edoc)
        evals = edoc.first("mat")
        if args.dense_mulmat:
            mdoc = _load(args.dense_mulmat)
            _same_prime(doc, mdoc)
            mulmat = mdoc.first("mat", skip=1 if args.dense_mulmat == args.evals else 0)
        else:
            jdoc = _load(args.jordan) if args.jordan else edoc
            mulmat, evals = _jordan_from(jdoc, field, evals)
        if args.mode == "interpolant":
            res = oracle.naive_residual(mulmat, mat, evals)
            ok = all(not any(row) for row in res)
        else:
            odoc = _load(args.matrix2)
            _same_prime(doc, odoc)
            other = textio.polymat_from_section(odoc.first("polymat"), field)
            shift = _shift_from(args, edoc, mat.nrows)
            ok = oracle.module_equivalent(mat, other, evals, mulmat, shift)
    print("ok" if ok else "failed")
    return 0 if ok else 1


def _bench_instance(field: PrimeField, m: int, sigma: int, rng: random.Random):
    fmat = PolyMatrix.from_entries(
        field, [[[rng.randrange(field.p) for _ in range(sigma)]] for _ in range(m)]
    )
    return reductions.hermite_pade_instance(fmat, [sigma])


def _cmd_bench(args) -> int:
    field = PrimeField(args.field)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    engines = [e for e in args.engines.split(",") if e]
    for e in engines:
        if e not in ("dnc", "lin", "oracle"):
            raise UsageError(f"unknown engine '{e}'")
    rng = random.Random(args.seed)
    print("engine,m,sigma,seconds")
    for sigma in sizes:
        inst = _bench_instance(field, args.m, sigma, rng)
        shift = [0] * args.m
        for engine in engines:
            start = time.perf_counter()
            if engine == "dnc":
                interpolation_basis(inst.evals, inst.mulmat, shift, field)
            elif engine == "lin":
                delta = 1
                while delta < jordan.minpoly_degree(inst.mulmat):
                    delta *= 2
                lin_interp_basis(inst.evals, inst.mulmat, shift, delta, field)
            else:
                oracle.oracle_popov(inst.evals, inst.mulmat, shift, field)
            elapsed = time.perf_counter() - start
            print(f"{engine},{args.m},{sigma},{elapsed:.6f}")
            sys.stdout.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mib", description="shifted minimal interpolation bases over prime fields"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interp", help="interpolation basis for (E, M)")
    p.add_argument("--algo", choices=("lin", "dnc", "oracle"), default="dnc")
    p.add_argument("--evals", required=True, help="file with the evaluation matrix")
    p.add_argument("--jordan", help="file with the Jordan representation")
    p.add_argument("--dense-mulmat", help="file with a dense multiplication matrix")
    p.add_argument("--shift", help="file with the shift")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("hermite-pade", help="truncated-product relation basis")
    p.add_argument("input", help="file with the polynomial matrix (plus shift/orders)")
    p.add_argument("--orders", help="file whose shift section lists the orders")
    p.add_argument("--shift")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_hermite_pade)

    p = sub.add_parser("mpade", help="multi-point congruence relation basis")
    p.add_argument("input", help="polymat + mat-of-points + orders document")
    p.add_argument("--orders")
    p.add_argument("--shift")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_mpade)

    p = sub.add_parser("multi-interp", help="constrained multivariate interpolation")
    p.add_argument("input", help="gamma, points, weights, and one support per point")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_multi_interp)

    p = sub.add_parser("rs-interp", help="list-decoding interpolation step")
    p.add_argument("points", help="file with an n x 2 matrix of (x, y) pairs")
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--mult-file", help="file whose shift section lists multiplicities")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--list-size", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_rs_interp)

    p = sub.add_parser("nullspace", help="minimal left nullspace basis")
    p.add_argument("input", help="polymat document (shift optional)")
    p.add_argument("--shift")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_nullspace)

    p = sub.add_parser("shift-change", help="re-reduce under an augmented shift")
    p.add_argument("input", help="polymat + base shift + extra shift document")
    p.add_argument("--shift", help="file with the base shift")
    p.add_argument("--target", help="file with the extra shift")
    p.add_argument("--with-transform", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_shift_change)

    p = sub.add_parser("check", help="verify a property of a result file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--popov", dest="mode", action="store_const", const="popov")
    mode.add_argument("--reduced", dest="mode", action="store_const", const="reduced")
    mode.add_argument(
        "--interpolant", dest="mode", action="store_const", const="interpolant"
    )
    mode.add_argument("--equiv", dest="mode", action="store_const", const="equiv")
    p.add_argument("--matrix", required=True)
    p.add_argument("--matrix2")
    p.add_argument("--evals")
    p.add_argument("--jordan")
    p.add_argument("--dense-mulmat")
    p.add_argument("--shift")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bench", help="wall-clock comparison of the engines")
    p.add_argument("--sizes", default="256,512,1024,2048")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=int, default=65537)
    p.add_argument("--engines", default="dnc,lin,oracle")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
