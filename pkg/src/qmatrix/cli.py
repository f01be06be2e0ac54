"""``qfs`` command-line front end.

Exit codes: 0 success, 2 parse or validation error, 3 negative verdict
(not classical, a failed reproduction), 4 usage error. Errors are printed
to stderr as one line, ``<Category>: <ErrorName>: <detail>``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io, reproduce
from .core import (
    Basis,
    bloch_vector,
    l1_coherence,
    membership,
    mutual_information,
    partial_trace,
    purity,
    qfs_decohere,
    qfs_is_classical,
    von_neumann_entropy,
)
from .errors import DimensionMismatch, OverlappingParts, ParseError, QFSError, UsageError, ValidationError, WeightMismatch, WeightNotNormalized
from .information import Ensemble, fidelity_matrix, holevo
from .tolerance import ToleranceConfig

EXIT_OK, EXIT_INVALID, EXIT_NEGATIVE, EXIT_USAGE = 0, 2, 3, 4
WEIGHT_SUM_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"UsageError: {message}\n")


def _tol(args) -> ToleranceConfig:
    return ToleranceConfig().with_(**{f: getattr(args, f"tol_{f}", None) for f in ToleranceConfig.field_names()})


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _matrix_text(m: np.ndarray, indent: str = "  ") -> str:
    rows = []
    for row in m:
        cells = []
        for z in row:
            cells.append(_fmt(z.real) if abs(z.imag) < 5e-5 else f"{z.real:.4f}{z.imag:+.4f}j")
        rows.append(indent + "  ".join(f"{c:>8}" for c in cells))
    return "\n".join(rows)


def cmd_inspect(args) -> int:
    q = io.load_qfs(args.path, _tol(args))
    tol = _tol(args)
    rows = []
    for x in q.labels:
        rho = q[x]
        row = {
            "label": x,
            "purity": purity(rho),
            "entropy_bits": von_neumann_entropy(rho, tol),
            "l1_coherence": l1_coherence(rho),
        }
        if q.dim == 2:
            row["membership"] = membership(rho)
            row["bloch"] = list(bloch_vector(rho))
        rows.append(row)

    width = max([5] + [len(x) for x in q.labels])
    head = f"{'label':<{width}}  " + ("membership  " if q.dim == 2 else "") + "purity  entropy  coherence"
    if q.dim == 2:
        head += "  bloch"
    lines = [f"dim {q.dim}, {len(q)} elements", head]
    for r in rows:
        line = f"{r['label']:<{width}}  "
        if q.dim == 2:
            line += f"{_fmt(r['membership']):>10}  "
        line += f"{_fmt(r['purity']):>6}  {_fmt(r['entropy_bits']):>7}  {_fmt(r['l1_coherence']):>9}"
        if q.dim == 2:
            line += "  (" + ", ".join(_fmt(v) for v in r["bloch"]) + ")"
        lines.append(line)
    _emit(args, {"dim": q.dim, "elements": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_classical(args) -> int:
    q = io.load_qfs(args.path, _tol(args))
    verdict, norm = qfs_is_classical(q, _tol(args))
    word = "classical" if verdict else "not classical"
    _emit(
        args,
        {"classical": verdict, "max_commutator_norm": norm},
        f"{word} (max commutator Frobenius norm {norm:.4e})",
    )
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _basis(flag: str, dim: int, tol: ToleranceConfig) -> Basis:
    if flag == "computational":
        return Basis.computational(dim)
    b = io.load_basis(flag, tol)
    if b.dim != dim:
        raise DimensionMismatch(f"DimensionMismatch: basis has dim {b.dim}, fuzzy set has dim {dim}")
    return b


def cmd_decohere(args) -> int:
    tol = _tol(args)
    q = io.load_qfs(args.path, tol)
    out = qfs_decohere(q, _basis(args.basis, q.dim, tol))
    doc = io.dump_qfs(out)
    if args.out:
        io.write_json(args.out, doc)
        print(f"wrote {len(out)} decohered elements to {args.out}")
    else:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_fidelity(args) -> int:
    q = io.load_qfs(args.path, _tol(args))
    f = fidelity_matrix(q)
    labels = list(q.labels)
    width = max([6] + [len(x) for x in labels])
    lines = [" " * width + "  " + "  ".join(f"{x:>{width}}" for x in labels)]
    for x, row in zip(labels, f):
        lines.append(f"{x:<{width}}  " + "  ".join(f"{_fmt(v):>{width}}" for v in row))
    _emit(args, {"labels": labels, "fidelity": f.tolist()}, "\n".join(lines))
    return EXIT_OK


def _weights(flag: str | None, n: int) -> np.ndarray:
    if flag is None:
        return np.full(n, 1.0 / n)
    try:
        w = np.array([float(s) for s in flag.split(",")])
    except ValueError:
        raise UsageError(f"could not parse weights {flag!r}") from None
    if w.size != n:
        raise WeightMismatch(f"WeightMismatch: {w.size} weights for {n} elements")
    if np.any(w < 0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise WeightNotNormalized(f"WeightNotNormalized: weights must be nonnegative and sum to 1, sum = {w.sum():.9g}")
    return w / w.sum()


def cmd_holevo(args) -> int:
    tol = _tol(args)
    q = io.load_qfs(args.path, tol)
    if len(q) == 0:
        raise ValidationError("holevo needs at least one element")
    w = _weights(args.weights, len(q))
    ens = Ensemble(w, q.states, tol)
    chi = holevo(ens, tol)
    s_mix = von_neumann_entropy(ens.mixture(), tol)
    per = {x: von_neumann_entropy(q[x], tol) for x in q.labels}
    lines = [f"chi          = {_fmt(chi)} bits", f"S(mixture)   = {_fmt(s_mix)} bits"]
    lines += [f"S({x}) = {_fmt(s)} bits  (weight {_fmt(p)})" for (x, s), p in zip(per.items(), w)]
    _emit(
        args,
        {"holevo_bits": chi, "mixture_entropy_bits": s_mix, "weights": w.tolist(), "entropies_bits": per},
        "\n".join(lines),
    )
    return EXIT_OK


def _parts(flag: str | None, labels: tuple[str, ...]) -> tuple[list[str], list[str]] | None:
    if flag is None:
        if len(labels) < 2:
            return None
        return [labels[0]], list(labels[1:])
    if flag.count("|") != 1:
        raise UsageError(f"--parts must look like 'A|B' or 'A,B|C', got {flag!r}")
    left, right = ([s.strip() for s in side.split(",") if s.strip()] for side in flag.split("|"))
    if set(left) & set(right):
        raise OverlappingParts(f"OverlappingParts: {sorted(set(left) & set(right))} in both parts")
    return left, right


def cmd_qmatrix(args) -> int:
    tol = _tol(args)
    qm = io.load_qmatrix(args.path, tol)
    parts = _parts(args.parts, qm.labels)
    sections = {}
    lines = [f"subsystems {list(qm.labels)} with dims {list(qm.dims)}"]
    for x in qm.labels:
        sec = partial_trace(qm, [x])
        s = von_neumann_entropy(sec, tol)
        sections[x] = {"matrix": io.encode_matrix(sec.matrix), "entropy_bits": s}
        lines.append(f"section {x}  (S = {_fmt(s)} bits)")
        lines.append(_matrix_text(sec.matrix))
    s_global = von_neumann_entropy(qm.global_state, tol)
    lines.append(f"global entropy S = {_fmt(s_global)} bits")
    payload = {"labels": list(qm.labels), "dims": list(qm.dims), "sections": sections, "global_entropy_bits": s_global}
    if parts is not None:
        a, b = parts
        mi = mutual_information(qm, a, b, tol)
        lines.append(f"I({','.join(a)} : {','.join(b)}) = {_fmt(mi)} bits")
        payload["parts"] = [a, b]
        payload["mutual_information_bits"] = mi
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_examples(args) -> int:
    checks = reproduce.run(args.name)
    ok = all(c.passed for c in checks)
    if args.json:
        print(json.dumps(
            {
                "example": args.name,
                "passed": ok,
                "checks": [
                    {"name": c.name, "observed": c.observed, "expected": c.expected,
                     "tol": c.tol, "mode": c.mode, "passed": c.passed}
                    for c in checks
                ],
            },
            indent=2,
            ensure_ascii=False,
        ))
    else:
        for c in checks:
            print(c.line())
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    for f in ToleranceConfig.field_names():
        common.add_argument(f"--tol-{f}", type=float, default=None, metavar="X",
                            help=f"override the {f} tolerance")

    p = _Parser(prog="qfs", description="Quantum fuzzy set diagnostics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("inspect", parents=[common], help="per-element diagnostics")
    s.add_argument("path")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("classical", parents=[common], help="pairwise commutation verdict")
    s.add_argument("path")
    s.set_defaults(func=cmd_classical)

    s = sub.add_parser("decohere", parents=[common], help="dephase every element in a basis")
    s.add_argument("path")
    s.add_argument("--basis", default="computational",
                   help="'computational' or a path to a basis-1 document")
    s.add_argument("--out", help="output path (default: stdout)")
    s.set_defaults(func=cmd_decohere)

    s = sub.add_parser("fidelity", parents=[common], help="pairwise Uhlmann fidelities")
    s.add_argument("path")
    s.set_defaults(func=cmd_fidelity)

    s = sub.add_parser("holevo", parents=[common], help="Holevo quantity of the elements")
    s.add_argument("path")
    s.add_argument("--weights", help="comma-separated weights (default uniform)")
    s.set_defaults(func=cmd_holevo)

    s = sub.add_parser("qmatrix", parents=[common], help="sections and mutual information")
    s.add_argument("path")
    s.add_argument("--parts", help="two disjoint label groups, e.g. 'A|B' or 'q0,q1|q2'")
    s.set_defaults(func=cmd_qmatrix)

    s = sub.add_parser("examples", parents=[common], help="run a built-in reproduction")
    s.add_argument("name", help=f"one of {', '.join(reproduce.EXAMPLES)}")
    s.set_defaults(func=cmd_examples)
    return p


def _error_line(exc: QFSError) -> str:
    if isinstance(exc, ParseError):
        top = "ParseError"
    elif isinstance(exc, UsageError):
        top = "UsageError"
    else:
        top = "ValidationError"
    msg = str(exc)
    name = exc.category
    if msg.startswith(f"{name}: "):
        msg = msg[len(name) + 2:]
    if name == top:
        return f"{top}: {msg}"
    return f"{top}: {name}: {msg}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QFSError as exc:
        print(_error_line(exc), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
