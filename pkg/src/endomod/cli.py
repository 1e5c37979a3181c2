"""Command-line entry point: ``endomod COMMAND --input FILE [--seed N] [--output FILE]``.

Exit codes: 0 success, 1 I/O or parse error, 2 domain error.
"""

import argparse
import hashlib
import json
import sys

from . import linalg as la
from .coherent import devissage_steps, dim_functor, evaluate, in_f_prime, phi
from .equivalences import (
    PrimaryComponent,
    component_change_of_basis,
    endo_classify,
    fext_forward,
    primary_split,
    verify_adjunction,
)
from .errors import EndomodError, NotPrimary
from .jsonio import dump_matrix, dump_module, dump_witness, dumps, load_matrix, load_poly, load_presentation
from .k0 import aut_k0_class, nil_k0_class
from .selftest import run_all
from .torsion import (
    char_matrix,
    devissage_filtration,
    elementary_divisors,
    invariant_factors,
    nilpotency_index,
    smith_normal_form,
    snf_certificate,
)

COMMANDS = (
    "classify",
    "k0",
    "nilclass",
    "jordan",
    "primary-split",
    "fext",
    "functor-eval",
    "functor-devissage",
    "selftest",
)


class ParseError(Exception):
    pass


def _snf_checks(M):
    return snf_certificate(M, smith_normal_form(char_matrix(M), M.field))


def cmd_classify(obj, seed):
    M = load_matrix(obj)
    divs = elementary_divisors(M, seed)
    result = {
        "dim": M.dim,
        "invariant_factors": [d.to_json() for d in invariant_factors(M)],
        "elementary_divisors": divs.to_json(),
    }
    return result, {"snf": _snf_checks(M), "dimension": divs.dim == M.dim}


def cmd_k0(obj, seed):
    M = load_matrix(obj)
    cls = aut_k0_class(M, seed)
    return cls.to_json(), {"snf": _snf_checks(M)}


def cmd_nilclass(obj, seed):
    N = load_matrix(obj)
    index = nilpotency_index(N)
    filt = devissage_filtration(N)
    cls = nil_k0_class(N)
    result = {
        "nilpotency_index": index,
        "blocks": cls.to_json(),
        "filtration_quotient_dims": filt.quotient_dims(),
    }
    checks = {
        "filtration_length": filt.length == index,
        "quotients_trivial": filt.check(N),
        "dimension": sum(r * c for r, c in cls.entries) == N.dim,
    }
    return result, checks


def cmd_jordan(obj, seed):
    M = load_matrix(obj)
    comps = []
    dims_ok = True
    for C in endo_classify(M, seed):
        L, N = fext_forward(C, seed)
        dims_ok = dims_ok and C.dim == C.ideal_gen.deg * N.dim
        comps.append(
            {
                "m": C.ideal_gen.to_json(),
                "dim": C.dim,
                "residue_field": L.descriptor.to_json(),
                "blocks": nil_k0_class(N).to_json(),
            }
        )
    total = sum(c["dim"] for c in comps)
    return {"components": comps}, {"dimension_identity": dims_ok, "components_span": total == M.dim}


def cmd_primary_split(obj, seed):
    M = load_matrix(obj)
    comps = primary_split(M, seed)
    F = M.field
    P = component_change_of_basis(M, comps)
    blocks = la.block_diag(F, [C.module.mat for C in comps])
    conj_ok = la.matmul(F, M.mat, P) == la.matmul(F, P, blocks) if M.dim else True
    result = {
        "components": [
            {
                "m": C.ideal_gen.to_json(),
                "basis": [[F.encode(x) for x in v] for v in C.basis],
                "module": dump_module(C.module),
            }
            for C in comps
        ],
        "change_of_basis": dump_matrix(F, P)["matrix"],
    }
    checks = {"block_diagonal": conj_ok, "change_of_basis_invertible": la.rank(F, P, M.dim) == M.dim}
    return result, checks


def cmd_fext(obj, seed):
    M = load_matrix(obj)
    if "m" in obj:
        C = PrimaryComponent(load_poly(M.field, obj["m"]), M)
    else:
        comps = endo_classify(M, seed)
        if len(comps) != 1:
            raise NotPrimary(f"module has {len(comps)} primary components; pass \"m\"")
        C = PrimaryComponent(comps[0].ideal_gen, M)
    L, N = fext_forward(C, seed)
    w = verify_adjunction(C, seed)
    result = {
        "m": C.ideal_gen.to_json(),
        "residue_field": L.descriptor.to_json(),
        "nilpotent": dump_module(N),
        "witness": dump_witness(w),
    }
    return result, dict(w.checks)


def cmd_functor_eval(obj, seed):
    Fn = load_presentation(obj)
    D = evaluate(Fn)
    nu = in_f_prime(D)
    result = {
        "data": D.to_json(),
        "dim": dim_functor(D),
        "in_f_prime": nu is not None,
        "nu": nu.to_json() if nu is not None else None,
        "phi": [list(x) for x in phi(D)] if nu is not None else None,
    }
    return result, {"relations": D.check_relations()}


def cmd_functor_devissage(obj, seed):
    D = evaluate(load_presentation(obj))
    steps = devissage_steps(D, seed)
    counts = {}
    for r, _ in steps:
        counts[r] = counts.get(r, 0) + 1
    F = D.field
    result = {
        "dim": dim_functor(D),
        "nu": {str(r): c for r, c in sorted(counts.items())},
        "steps": [{"r": r, "vector": [F.encode(x) for x in v]} for r, v in steps],
    }
    return result, {"steps_equal_dim": len(steps) == dim_functor(D), "relations": D.check_relations()}


HANDLERS = {
    "classify": cmd_classify,
    "k0": cmd_k0,
    "nilclass": cmd_nilclass,
    "jordan": cmd_jordan,
    "primary-split": cmd_primary_split,
    "fext": cmd_fext,
    "functor-eval": cmd_functor_eval,
    "functor-devissage": cmd_functor_devissage,
}


def _read_input(path):
    if path is None:
        raise ParseError("--input is required for this command")
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("input must be a JSON object")
    return obj, hashlib.sha256(raw).hexdigest()


def run(command, input_path=None, seed=0):
    """Execute one command; returns (exit code, report dict)."""
    base = {"command": command, "seed": seed}
    try:
        if command == "selftest":
            results = run_all(seed)
            ok = all(r.passed for r in results)
            report = dict(base, input_sha256=None, result=[r.to_json() for r in results], checks={"all_passed": ok})
            if not ok:
                failed = [r.number for r in results if not r.passed]
                report["error"] = {"code": "SelftestFailed", "message": f"criteria {failed} failed"}
                return 2, report
            return 0, report
        if command not in HANDLERS:
            raise ParseError(f"unknown command {command!r}")
        obj, digest = _read_input(input_path)
        base["input_sha256"] = digest
        result, checks = HANDLERS[command](obj, seed)
        return 0, dict(base, result=result, checks=checks)
    except EndomodError as exc:
        return 2, dict(base, error={"code": exc.code, "message": str(exc)})
    except ParseError as exc:
        return 1, dict(base, error={"code": "ParseError", "message": str(exc)})
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        return 1, dict(base, error={"code": "ParseError", "message": f"{type(exc).__name__}: {exc}"})


def main(argv=None):
    parser = argparse.ArgumentParser(prog="endomod", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="path to the JSON input")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", help="write the report here instead of stdout")
    args = parser.parse_args(argv)
    code, report = run(args.command, args.input, args.seed)
    text = dumps(report)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            sys.stderr.write(f"cannot write {args.output}: {exc.strerror}\n")
            return 1
    else:
        sys.stdout.write(text)
    if args.command == "selftest":
        for r in report.get("result", []):
            status = "PASS" if r["passed"] else "FAIL"
            sys.stderr.write(f"[{status}] {r['number']}. {r['name']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
