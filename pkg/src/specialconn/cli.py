"""Command line front end: ``specialconn <command> ...``.

Every command produces a report ``{command, inputs, findings, seed, status}``.
``--format machine`` prints it as canonical JSON; ``--format text`` prints a
readable summary.  Exit codes: 0 ok, 1 mathematical rejection or violation
(the findings carry a witness), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import io
from .catalog import NAMES, UsageError, build
from .errors import ConsistencyError, RecordError, Rejected, StructuralError
from .exact import Mat, format_rational
from .jordan import NonassocAlgebra, classify_algebra, tkk, tkk_special_product
from .lie import LieAlgebra, is_semisimple, killing, lower_central_series, validate_lie
from .pairs import DEFAULT_SEED, Involution, SymmetricPair, classify, decompose
from .products import (
    ProductTensor,
    curvature,
    holonomy,
    semi_symmetry_check,
    solve_special,
    torsion,
    verify_special,
)

OK, REJECTED, VIOLATION = "ok", "rejected", "violation"


class _Usage(Exception):
    pass


class _Outcome(Exception):
    """Raised inside a command to finish with a non-ok status."""

    def __init__(self, status: str, findings: dict):
        super().__init__(status)
        self.status = status
        self.findings = findings


# ---------------------------------------------------------------------------
# helpers


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load(path: str, inputs: dict, *kinds):
    inputs[path] = _digest(path) if Path(path).is_file() else "missing"
    value = io.parse(path)
    if kinds and not isinstance(value, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise RecordError(f"expected a {names} record, got {type(value).__name__}", path)
    return value


def _vecs(vectors) -> list[list[str]]:
    return [[format_rational(x) for x in v] for v in vectors]


def _mat(m) -> list[list[str]]:
    return _vecs(m.tolist())


def _lie_summary(L: LieAlgebra) -> dict:
    series = lower_central_series(L)
    return {
        "dim": L.dim,
        "semisimple": is_semisimple(L),
        "nilpotent": series.nilpotent,
        "nilpotency_class": series.nilpotency_class,
        "lower_central_series_dims": [s.dim for s in series.chain],
        "killing_form": _mat(killing(L)),
    }


def _pair_summary(P: SymmetricPair) -> dict:
    return {"dim_g": P.algebra.dim, "dim_m": P.p, "dim_h": P.q, "m_basis": _vecs(P.m_basis), "h_basis": _vecs(P.h_basis)}


def _special_findings(P: SymmetricPair, A: ProductTensor) -> dict:
    rep = verify_special(P, A)
    R = curvature(P, A)
    findings = rep.as_dict()
    findings["special"] = rep.ok
    findings["torsion_free"] = not any(x for a in torsion(A) for b in a for x in b)
    findings["curvature_equals_canonical"] = R == curvature(P)
    if rep.ok:
        findings["semi_symmetric"] = semi_symmetry_check(R).ok
    return findings


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, inputs) -> dict:
    value = _load(args.file, inputs)
    if isinstance(value, (LieAlgebra, SymmetricPair)):
        L = value.algebra if isinstance(value, SymmetricPair) else value
        rep = validate_lie(L)
        findings = {"kind": "pair" if isinstance(value, SymmetricPair) else "lie", "valid": rep.valid}
        if not rep.valid:
            findings["witness"] = rep.violations[0]
            findings["violation_count"] = len(rep.violations)
            raise _Outcome(VIOLATION, findings)
        findings.update(_lie_summary(L))
        if isinstance(value, SymmetricPair):
            findings.update(_pair_summary(value))
        return findings
    if isinstance(value, NonassocAlgebra):
        flags = classify_algebra(value)
        return {"kind": "nonassoc", "dim": value.dim, **flags.as_dict()}
    A = value
    commutative = all(A.alpha[i][j] == A.alpha[j][i] for i in range(A.dim) for j in range(A.dim))
    return {"kind": "product", "dim": A.dim, "commutative": commutative, "zero": A.is_zero()}


def cmd_decompose(args, inputs) -> dict:
    L = _load(args.algebra, inputs, LieAlgebra)
    inputs[args.involution] = _digest(args.involution) if Path(args.involution).is_file() else "missing"
    try:
        rec = json.loads(Path(args.involution).read_bytes())
    except OSError as exc:
        raise RecordError(f"cannot read file ({exc.strerror})", args.involution) from None
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON ({exc.msg})", args.involution) from None
    raw = rec.get("involution") if isinstance(rec, dict) else rec
    if not isinstance(raw, list) or len(raw) != L.dim:
        raise RecordError(f"involution must be a {L.dim}x{L.dim} matrix", f"{args.involution}: $.involution")
    rows = [io._vector(r, L.dim, f"$.involution[{k}]") for k, r in enumerate(raw)]
    P = decompose(L, Involution(L, Mat(rows, L.dim)))
    findings = _pair_summary(P)
    if args.out:
        io.write(P, args.out)
        findings["written"] = args.out
    return findings


def cmd_classify(args, inputs) -> dict:
    P = _load(args.pair, inputs, SymmetricPair)
    C = classify(P, compact_h_assertion=args.compact_h, seed=args.seed)
    rep = C.report()
    findings = dict(rep.pop("flags"))
    findings.update(rep)
    findings.pop("seed", None)
    findings["dim_m"] = P.p
    findings["dim_h"] = P.q
    if args.split:
        data = {"summands_m": findings["decomposition"], "summands_g": [_vecs(s.basis) for s in C.decomposition], "certificates": C.certificates}
        Path(args.split).write_text(io.dumps(data))
        findings["split_written"] = args.split
    return findings


def _solution_report(S) -> dict:
    return {
        "w_dim": S.w_dim,
        "basis": [io.to_record(t) for t in S.candidate_space],
        "constraints": S.constraint_strings,
        "solutions": [io.to_record(t) for t in S.solutions],
        "components": [
            {"dim": c.dim, "basis": [io.to_record(t) for t in c.tensors], "complete": c.complete, "residual": c.residual}
            for c in S.components
        ],
        "status": S.status,
    }


def cmd_products(args, inputs) -> dict:
    P = _load(args.pair, inputs, SymmetricPair)
    if args.max_params < 0:
        raise _Usage("--max-params must be nonnegative")
    findings = _solution_report(solve_special(P, max_params=args.max_params))
    if args.out:
        Path(args.out).write_text(io.dumps(findings))
        findings["written"] = args.out
    return findings


def cmd_verify(args, inputs) -> dict:
    P = _load(args.pair, inputs, SymmetricPair)
    A = _load(args.product, inputs, ProductTensor)
    if A.dim != P.p:
        raise RecordError(f"product has dim {A.dim} but m has dim {P.p}", args.product)
    findings = _special_findings(P, A)
    if not findings["special"]:
        raise _Outcome(VIOLATION, findings)
    return findings


def cmd_holonomy(args, inputs) -> dict:
    P = _load(args.pair, inputs, SymmetricPair)
    A = _load(args.product, inputs, ProductTensor)
    if A.dim != P.p:
        raise RecordError(f"product has dim {A.dim} but m has dim {P.p}", args.product)
    H = holonomy(P, A)
    return {"dim": H.dim, "closed": H.closed, "basis": [_mat(m) for m in H.matrices()]}


def cmd_tkk(args, inputs) -> dict:
    A = _load(args.algebra, inputs, NonassocAlgebra)
    G = tkk(A)
    findings = {
        "grade_dims": {str(k): v for k, v in G.grade_dims().items()},
        "dim": G.lie.dim,
        "algebra_flags": {k: v for k, v in classify_algebra(A).as_dict().items() if k != "witnesses"},
        "lie": io.to_record(G.lie),
    }
    findings.update({k: v for k, v in _lie_summary(G.lie).items() if k != "dim"})
    if args.special_product:
        P, T = tkk_special_product(A)
        findings["special_product"] = io.to_record(T)
        findings["special_product_checks"] = _special_findings(P, T)
        findings["special_product_nonzero"] = not T.is_zero()
    return findings


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        if "=" not in item:
            raise _Usage(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    return params


def cmd_catalog(args, inputs) -> dict:
    entry = build(args.name, _parse_params(args.param))
    data = io.write(entry.artifact, args.out)
    return {
        "name": entry.name,
        "params": entry.params,
        "kind": io.record_kind(json.loads(data)),
        "written": args.out,
        "digest": "sha256:" + hashlib.sha256(data).hexdigest(),
    }


COMMANDS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "classify": cmd_classify,
    "products": cmd_products,
    "verify": cmd_verify,
    "holonomy": cmd_holonomy,
    "tkk": cmd_tkk,
    "catalog": cmd_catalog,
}


# ---------------------------------------------------------------------------
# argument parsing and rendering


def _global_flags(parser: argparse.ArgumentParser, defaults: bool):
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    parser.add_argument("--format", choices=("text", "machine"), help="output mode (default text)", **({"default": "text"} if defaults else kw))
    parser.add_argument("--seed", type=int, help=f"seed for randomized splitting (default {DEFAULT_SEED})", **({"default": DEFAULT_SEED} if defaults else kw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specialconn", description="Exact computations for special connections on symmetric pairs.")
    _global_flags(parser, True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, False)
        return p

    p = add("check", "validate any record (Lie algebra, pair, product, nonassociative algebra)")
    p.add_argument("file")
    p = add("decompose", "split a Lie algebra along an involution")
    p.add_argument("algebra")
    p.add_argument("--involution", required=True, help="file with an involution matrix or pair record")
    p.add_argument("--out", help="write the resulting pair record here")
    p = add("classify", "simple / semi-simple / strongly semi-simple flags of a pair")
    p.add_argument("pair")
    p.add_argument("--compact-h", action="store_true", help="assert that H is compact")
    p.add_argument("--split", help="write the summand decomposition to this file")
    p = add("products", "solve for all special products on m")
    p.add_argument("pair")
    p.add_argument("--max-params", type=int, default=3, help="largest candidate-space dimension to solve completely")
    p.add_argument("--out", help="write the solution report here")
    p = add("verify", "check that a product is special")
    p.add_argument("pair")
    p.add_argument("--product", required=True)
    p = add("holonomy", "holonomy algebra of a special product")
    p.add_argument("pair")
    p.add_argument("--product", required=True)
    p = add("tkk", "TKK Lie algebra of a Jordan algebra")
    p.add_argument("algebra")
    p.add_argument("--special-product", action="store_true", help="also build the induced special product")
    p = add("catalog", f"write a catalog entry ({', '.join(NAMES)})")
    p.add_argument("name")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--out", required=True)
    return parser


def _render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]
    for path, digest in report["inputs"].items():
        lines.append(f"  input {path} ({digest[:19]}...)")

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat_list(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_short(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat_list(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_short(v)}")

    walk(report["findings"], 1)
    lines.append(f"  seed: {report['seed']}")
    return "\n".join(lines) + "\n"


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _short(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    inputs: dict = {}
    status, findings = OK, {}
    try:
        findings = COMMANDS[args.command](args, inputs)
    except _Outcome as out:
        status, findings = out.status, out.findings
    except Rejected as exc:
        status, findings = REJECTED, {"reason": str(exc), "witness": exc.witness}
    except ConsistencyError as exc:
        status, findings = VIOLATION, {"reason": str(exc), "witness": exc.witness}
    except (RecordError, UsageError, StructuralError, _Usage) as exc:
        print(f"specialconn {args.command}: error: {exc}", file=stderr)
        return 2

    report = {"command": args.command, "inputs": inputs, "findings": findings, "seed": args.seed, "status": status}
    if args.format == "machine":
        stdout.write(io.dumps(report))
    else:
        stdout.write(_render_text(report))
    return 0 if status == OK else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
