"""
Command-line front end

Every subcommand prints one document on stdout, either JSON or CSV; rationals
are always written as "p/q" strings
"""
import argparse
import csv
import io
import json
import logging
import sys

from sympy.polys.domains import QQ

from . import __version__
from . import domain_types as dt
from .algebra import basis_fields, check_dual_bases, dual_bases, make_algebra
from .casimir import Representation, casimir_matrix, eigenvalue, half_boxes, n_c_matrix
from .critical import critical_set, positivity_bound
from .exceptions import EquiquantError, InvalidArgumentError, InvariantViolation
from .ferrers import (
    admissible_diagrams,
    check_tree_dominance,
    dim_irrep,
    dominance_lt,
    format_diagram,
    format_graded,
    parse_diagram,
    tilde_tree,
)
from .polynomials import format_monomial, monomial_basis, symbol_ring
from .quantization import eigen_decompose, quantization_matrix, verify_equivariance
from .symbols import lie_diffop_poly, lie_tensor_poly
from .utils import binomial, format_rational, to_rational

logger = logging.getLogger(__name__)

DOCUMENT_VERSION = 1


def _document(command, spec, records, **extra):
    document = {
        "command": command,
        "version": DOCUMENT_VERSION,
        "family": spec.family.value,
        "n": spec.n,
        "records": records,
    }
    document.update(extra)
    return document


def cmd_decompose(spec, k):
    """
    Summands of the k-th symmetric power of g_-1 with their dimensions
    """
    if k < 0:
        raise InvalidArgumentError("Degree must be non-negative")
    records = [
        {"diagram": format_diagram(diagram), "dimension": dim_irrep(diagram, spec.n)}
        for diagram in admissible_diagrams(spec, k)
    ]
    total = sum(record["dimension"] for record in records)
    expected = binomial(spec.d + k - 1, k)
    if total != expected:
        logger.error("Dimensions sum to %d instead of %d", total, expected)
    return _document(
        "decompose", spec, records, k=k, total={"dimension": total, "expected": expected}
    )


def cmd_eigenvalue(spec, diagram, delta):
    """
    Casimir eigenvalue of a summand, at a rational shift or as its delta-polynomial
    """
    diagram = parse_diagram(diagram)
    k = half_boxes(diagram)
    poly = eigenvalue(diagram, spec)
    record = {"diagram": format_diagram(diagram), "degree": k}
    if delta == "symbolic":
        record.update(
            {"c2": format_rational(poly.c2), "c1": format_rational(poly.c1), "c0": format_rational(poly.c0)}
        )
    else:
        delta = to_rational(delta)
        record.update({"delta": format_rational(delta), "value": format_rational(poly(delta))})
    return _document("eigenvalue", spec, [record])


def cmd_critical(spec, kmax):
    records = []
    for value in critical_set(spec, kmax):
        if value.delta <= 0:
            raise InvariantViolation("Non-positive critical shift {}".format(value.delta))
        for witness in value.witnesses:
            records.append(
                {
                    "delta": format_rational(value.delta),
                    "upper": format_graded(witness.upper),
                    "lower": format_graded(witness.lower),
                    "bound": format_rational(positivity_bound(witness.upper, witness.lower, spec)),
                }
            )
    return _document("critical", spec, records, kmax=kmax)


def _column_major(item):
    (row, column), _ = item
    return column, row


def cmd_quantize(spec, lam, mu, K, M):
    """
    Sparse triplets of the quantization matrix together with an equivariance summary
    """
    lam, mu = to_rational(lam), to_rational(mu)
    Q = quantization_matrix(spec, lam, mu, K, M)
    report = verify_equivariance(Q) if M >= 1 else None
    monomials = Q.basis.monomials
    records = [
        {
            "row": format_monomial(monomials[row]),
            "column": format_monomial(monomials[column]),
            "value": format_rational(value),
        }
        for (row, column), value in sorted(Q.matrix.to_dok().items(), key=_column_major)
        if value
    ]
    equivariance = {
        "checked": report.checked if report else 0,
        "violations": len(report.violations) if report else 0,
    }
    logger.info("violations: %d", equivariance["violations"])
    return _document(
        "quantize",
        spec,
        records,
        **{
            "lambda": format_rational(lam),
            "mu": format_rational(mu),
            "K": K,
            "M": M,
            "equivariance": equivariance,
        }
    )


def cmd_tree(spec, diagram, k):
    root = parse_diagram(diagram)
    tree = tilde_tree(root, k, spec)
    records = []
    for level, diagrams in enumerate(tree.levels):
        records.append(
            {
                "level": level,
                "degree": k - level,
                "diagrams": [format_diagram(x) for x in diagrams],
                "dominated": all(dominance_lt(x, root) for x in diagrams) if level else True,
            }
        )
    return _document("tree", spec, records, root=format_graded(dt.GradedDiagram(root, k)))


def _check(name, func):
    try:
        detail = func()
    except EquiquantError as error:
        return {"name": name, "status": "failed", "detail": str(error)}
    if detail is False:
        return {"name": name, "status": "failed", "detail": ""}
    return {"name": name, "status": "ok", "detail": detail or ""}


def _verify_dimensions(spec, kmax):
    for k in range(kmax + 1):
        total = sum(dim_irrep(x, spec.n) for x in admissible_diagrams(spec, k))
        if total != binomial(spec.d + k - 1, k):
            raise EquiquantError("Degree {} sums to {}".format(k, total))
    return "k <= {}".format(kmax)


def _verify_spectrum(spec, K, M):
    for delta in (QQ(0), QQ(1, 2), QQ(1), QQ(3)):
        eigen_decompose(spec, delta, (K, M))
    return "K={} M={}".format(K, M)


def _verify_casimir_relation(spec, K):
    for lam, mu in ((QQ(0), QQ(0)), (QQ(1, 2), QQ(1, 2)), (QQ(1, 3), QQ(2, 3))):
        operator = casimir_matrix(Representation.diff_ops, spec, lam, mu, (K, 0)).matrix
        tensor = casimir_matrix(Representation.tensor_fields, spec, lam, mu, (K, 0)).matrix
        nc = n_c_matrix(spec, lam, mu, (K, 0)).matrix
        if not operator.sub(tensor).sub(nc).is_zero_matrix:
            raise EquiquantError("C(L) - C(L^t) != N_C at ({}, {})".format(lam, mu))
    return "K={}".format(K)


def _verify_critical(spec, kmax):
    values = critical_set(spec, kmax)
    if any(value.delta <= 0 for value in values):
        return False
    return "{} values up to degree {}".format(len(values), kmax)


def _verify_trees(spec, kmax):
    for k in range(kmax + 1):
        for root in admissible_diagrams(spec, k):
            check_tree_dominance(tilde_tree(root, k, spec))
    return "k <= {}".format(kmax)


def _verify_affine(spec, K, M):
    lam, mu = QQ(1, 3), QQ(2, 3)
    affine = basis_fields(spec)[: spec.d + spec.n * spec.n]
    ring_basis = monomial_basis(spec.d, K, M)
    ring = symbol_ring(spec.d)
    for X in affine:
        for monomial in ring_basis:
            poly = ring.from_dict({monomial: QQ.one})
            if lie_diffop_poly(X, poly, lam, mu) != lie_tensor_poly(X, poly, mu - lam):
                raise EquiquantError("Affine field disagrees on {}".format(format_monomial(monomial)))
    return "{} fields".format(len(affine))


def _verify_quantization(spec, K, M):
    Q = quantization_matrix(spec, QQ(1, 2), QQ(1, 2), K, M)
    report = verify_equivariance(Q)
    if report.violations:
        raise EquiquantError("{} equivariance violations".format(len(report.violations)))
    return "{} checks".format(report.checked)


def cmd_verify(spec, K, M, kmax):
    records = [
        _check("dual_bases", lambda: check_dual_bases(dual_bases(spec), spec)),
        _check("dimensions", lambda: _verify_dimensions(spec, kmax)),
        _check("spectrum", lambda: _verify_spectrum(spec, K, M)),
        _check("casimir_relation", lambda: _verify_casimir_relation(spec, K)),
        _check("critical_positivity", lambda: _verify_critical(spec, kmax)),
        _check("tree_dominance", lambda: _verify_trees(spec, kmax)),
        _check("affine_coincidence", lambda: _verify_affine(spec, K, M)),
        _check("quantization", lambda: _verify_quantization(spec, K, M)),
    ]
    return _document("verify", spec, records, K=K, M=M, kmax=kmax)


def _cell(value):
    if isinstance(value, (list, tuple)):
        return ";".join(str(item) for item in value)
    return value


def render(document, output_format="json"):
    """
    Text of an output document, byte-deterministic for a fixed document
    """
    if output_format == "json":
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    records = document["records"]
    if records:
        header = sorted(records[0])
        writer.writerow(header)
        for record in records:
            writer.writerow([_cell(record[key]) for key in header])
    if "total" in document:
        total = document["total"]
        writer.writerow(["total", total["dimension"], total["expected"]])
    return buffer.getvalue()


def _add_common(parser):
    parser.add_argument("--family", required=True, choices=["o", "sp"])
    parser.add_argument("--n", required=True, type=int)
    parser.add_argument("--format", dest="output_format", default="json", choices=["json", "csv"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equiquant",
        description="Casimir spectra, critical shifts and equivariant quantization "
        "for the orthogonal and symplectic 3-graded algebras.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    decompose = commands.add_parser("decompose", help="irreducible summands of S^k(g_-1)")
    _add_common(decompose)
    decompose.add_argument("--k", required=True, type=int)

    value = commands.add_parser("eigenvalue", help="Casimir eigenvalue of a summand")
    _add_common(value)
    value.add_argument("--diagram", required=True)
    value.add_argument("--delta", required=True, help='a rational "p/q" or "symbolic"')

    critical = commands.add_parser("critical", help="critical shift values up to a degree")
    _add_common(critical)
    critical.add_argument("--kmax", required=True, type=int)

    quantize = commands.add_parser("quantize", help="matrix of the equivariant quantization")
    _add_common(quantize)
    quantize.add_argument("--lambda", dest="lam", default=None)
    quantize.add_argument("--mu", default=None)
    quantize.add_argument("--half-densities", action="store_true", help="lambda = mu = 1/2")
    quantize.add_argument("--K", required=True, type=int)
    quantize.add_argument("--M", required=True, type=int)

    tree = commands.add_parser("tree", help="tilde-tree of a summand")
    _add_common(tree)
    tree.add_argument("--diagram", required=True)
    tree.add_argument("--k", required=True, type=int)

    verify = commands.add_parser("verify", help="run the consistency checks")
    _add_common(verify)
    verify.add_argument("--K", type=int, default=2)
    verify.add_argument("--M", type=int, default=2)
    verify.add_argument("--kmax", type=int, default=3)
    return parser


def _weights(args):
    if args.half_densities:
        if args.lam is not None or args.mu is not None:
            raise InvalidArgumentError("--half-densities excludes --lambda and --mu")
        return QQ(1, 2), QQ(1, 2)
    if args.lam is None or args.mu is None:
        raise InvalidArgumentError("--lambda and --mu are required without --half-densities")
    return to_rational(args.lam), to_rational(args.mu)


def run(args):
    spec = make_algebra(args.family, args.n)
    if args.command == "decompose":
        return cmd_decompose(spec, args.k)
    if args.command == "eigenvalue":
        return cmd_eigenvalue(spec, args.diagram, args.delta)
    if args.command == "critical":
        return cmd_critical(spec, args.kmax)
    if args.command == "quantize":
        lam, mu = _weights(args)
        return cmd_quantize(spec, lam, mu, args.K, args.M)
    if args.command == "tree":
        return cmd_tree(spec, args.diagram, args.k)
    return cmd_verify(spec, args.K, args.M, args.kmax)


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        document = run(args)
    except EquiquantError as error:
        logger.error("%s", error)
        return error.exit_code

    stdout.write(render(document, args.output_format))
    if args.command == "verify" and any(r["status"] != "ok" for r in document["records"]):
        return 4
    return 0
