"""Command-line entry point.

Every record goes to standard output as one JSON object per line, with a fixed
key order and floats written to 17 significant digits. Exit codes: 0 decided
verdict or all checks passed, 2 usage error, 3 indeterminate verdict, 4
failed check or internal numerical failure.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import verify
from .bounds import classify_epsilon_cat, classify_epsilon_mixture
from .errors import NumericalError, QuditError
from .matrixfile import encode_matrix
from .su_basis import build_basis
from .verdict import Verdict

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3
EXIT_NUMERIC = 4


def _format_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def dumps(obj):
    """Compact JSON with 17-significant-digit floats; dict key order is preserved."""
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(record, stream=None):
    print(dumps(record), file=stream or sys.stdout)


def _label_text(label):
    kind, *levels = label
    return f"{kind}({','.join(map(str, levels))})"


def _pairs(vec):
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=complex)]


def basis_bundle(D):
    basis = build_basis(D)
    full = basis.full
    labels = ["lambda0"] + [_label_text(lab) for lab in basis.labels]
    gram = np.einsum("aij,bji->ab", full, full)
    residual = float(np.abs(gram - np.eye(D * D)).max())
    matrices = [
        {"index": i, "label": lab, **encode_matrix(m, [D], hermitian=True)}
        for i, (lab, m) in enumerate(zip(labels, full))
    ]
    report = {"dim": D, "count": len(matrices), "orthonormality_residual": residual, "passed": residual < 1e-12}
    return {"dim": D, "matrices": matrices, "orthonormality": report}


def cmd_basis(args):
    bundle = basis_bundle(args.dim)
    if args.out is None:
        _emit(bundle)
        return EXIT_OK
    path = Path(args.out)
    try:
        path.write_text(dumps(bundle) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write basis bundle to {path}: {exc.strerror}") from exc
    _emit({**bundle["orthonormality"], "path": str(path)})
    return EXIT_OK


def certificate_payload(verdict):
    out = {"verdict": verdict.verdict.value, "boundary_used": verdict.boundary_used}
    for key, value in verdict.certificate.items():
        if key == "ensemble":
            value = [{"weight": t.weight, "a": _pairs(t.a), "b": _pairs(t.b)} for t in value]
        out[key] = value
    return out


def cmd_classify(args):
    if args.kind == "mixture":
        verdict = classify_epsilon_mixture(args.dim, args.eps)
    else:
        if args.n is None:
            raise QuditError("classify cat requires --n")
        verdict = classify_epsilon_cat(args.dim, args.n, args.eps)
    record = {
        "verdict": verdict.verdict.value,
        "boundary_used": verdict.boundary_used,
        "certificate_kind": verdict.certificate_kind,
    }
    if args.cert_out is not None:
        path = Path(args.cert_out)
        try:
            path.write_text(dumps(certificate_payload(verdict)) + "\n")
        except OSError as exc:
            raise OSError(f"cannot write certificate to {path}: {exc.strerror}") from exc
        record["certificate_path"] = str(path)
    _emit(record)
    return EXIT_OK if verdict.decided else EXIT_INDETERMINATE


def cmd_verify(args):
    if args.suite == "haar":
        checks = verify.haar_suite(args.dim, args.samples, args.seed, args.workers)
    else:
        checks = verify.SUITES[args.suite](args.dim)
    for c in checks:
        _emit({"suite": args.suite, "check": c.name, "passed": c.passed, "residual": c.residual, "tolerance": c.tolerance})
    ok = all(c.passed for c in checks)
    _emit({"suite": args.suite, "dim": args.dim, "checks": len(checks), "passed": ok})
    return EXIT_OK if ok else EXIT_NUMERIC


def build_parser():
    parser = argparse.ArgumentParser(prog="quditsep", description="Qudit separability numerics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="write the SU(D) generator basis as a MatrixFile bundle")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", help="bundle path (default: standard output)")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("classify", help="separability verdict for an eps-mixture or eps-cat state")
    p.add_argument("kind", choices=["mixture", "cat"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, help="number of qudits (cat only)")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--cert-out", help="write the full certificate here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QuditError as exc:
        print(f"quditsep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"quditsep: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"quditsep: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
