"""Batch verification front end.

Every subcommand reads an optional JSON job file, merges ``--bounds`` and
``--seed`` on top, runs one checker and writes a JSON report.  Exit status
is 0 on pass, 1 when a counterexample was found and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Mapping, Optional, Sequence

from .dpois import (DoubleBracketSpec, WheeledBracketEngine, check_big_bracket,
                    check_double_jacobi, check_poisson_axioms, check_shift_compat,
                    symplectic_pairing_check, tensor)
from .fock import (_as_word, fock_contract, fock_contract_direct, fock_from_json,
                   fock_handle, fock_mul)
from .freealg import AlgElem, FreeAlgebra
from .matred import check_wheeled_relations, jacobi_poly, kr_bracket, kr_table
from .ncgeo import form_algebra
from .report import Report
from .symgrp import verify_identities
from .wheelcore import check_axioms, check_wheelgebra, end_handle

DEFAULT_BOUNDS = {"max_arity": 3, "max_word_len": 2, "max_necklace_len": 2, "dim_V": 2}
EXTRA_BOUNDS = {"n_max", "max_total", "max_necklaces", "samples"}


class UsageError(ValueError):
    """Malformed job or arguments."""


# ---------------------------------------------------------------------------
# Job parsing


def parse_bounds(text: Optional[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"bound {item!r} is not of the form k=v")
        k, v = (s.strip() for s in item.split("=", 1))
        try:
            out[k] = int(v)
        except ValueError:
            raise UsageError(f"bound {k} must be an integer") from None
    return out


def _bounds(job: Mapping[str, Any]) -> dict[str, int]:
    b = dict(DEFAULT_BOUNDS)
    for k, v in job.get("bounds", {}).items():
        if k not in DEFAULT_BOUNDS and k not in EXTRA_BOUNDS:
            raise UsageError(f"unknown bound {k!r}")
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise UsageError(f"bound {k} must be a positive integer")
        b[k] = v
    return b


def _algebra(job: Mapping[str, Any], default: Sequence[str]) -> FreeAlgebra:
    data = job.get("algebra")
    if data is None:
        return FreeAlgebra(default)
    try:
        return FreeAlgebra.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed algebra: {exc}") from None


def _spec(job: Mapping[str, Any], A: FreeAlgebra) -> DoubleBracketSpec:
    data = job.get("bracket")
    if data is None:
        if "x" not in A.names:
            raise UsageError("no bracket given and the algebra has no generator x")
        return DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "x", ""), (-1, "", "x"))})
    try:
        return DoubleBracketSpec.from_json(A, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed bracket: {exc}") from None


def _element(A: FreeAlgebra, data: Any, field: str) -> AlgElem:
    """A string names a generator or spells a word; a list is ``[[coef, [names]], ...]``."""
    if data is None:
        raise UsageError(f"job field {field!r} is required")
    try:
        if isinstance(data, str):
            return AlgElem(A, {_as_word(A, data): 1})
        return A.element_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed {field}: {exc}") from None


def _fock(A: FreeAlgebra, job: Mapping[str, Any], field: str):
    if field not in job:
        raise UsageError(f"job field {field!r} is required")
    try:
        return fock_from_json(A, job[field])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed {field}: {exc}") from None


def _pick(job: Mapping[str, Any], b: dict[str, int], key: str, default: int) -> int:
    """An explicitly requested bound, else a command-specific default."""
    return b[key] if key in job.get("bounds", {}) else default


def _int(job: Mapping[str, Any], field: str, default: Optional[int] = None) -> int:
    v = job.get(field, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise UsageError(f"job field {field!r} must be an integer")
    return v


# ---------------------------------------------------------------------------
# Commands


def _symgrp(job, b) -> Report:
    return verify_identities(b.get("n_max", 5))


def _wheel_axioms(job, b) -> Report:
    instance = job.get("instance", "fock")
    if instance == "end":
        S = end_handle(b["dim_V"])
    elif instance == "fock":
        A = _algebra(job, ["x", "y"])
        S = fock_handle(A, b["max_word_len"], b["max_necklace_len"], b.get("max_necklaces", 1))
    else:
        raise UsageError("instance must be 'end' or 'fock'")
    rep = Report("wheel-axioms", instance=S.name, bounds={**S.bounds, "max_arity": b["max_arity"]})
    for sub in (check_axioms(S, b["max_arity"]), check_wheelgebra(S, b["max_arity"])):
        rep.merge(sub)
        rep.details.update(sub.details)
    return rep


def _fock_mul(job, b) -> Report:
    A = _algebra(job, ["x"])
    u, v = _fock(A, job, "u"), _fock(A, job, "v")
    rep = Report("fock-mul", instance=repr(A), cases=1)
    rep.details["product"] = fock_mul(u, v).to_json()
    return rep


def _fock_contract(job, b) -> Report:
    A = _algebra(job, ["x"])
    u = _fock(A, job, "u")
    i, j = _int(job, "i", u.n), _int(job, "j", u.n)
    if not (1 <= i <= u.n and 1 <= j <= u.n):
        raise UsageError("contraction indices out of range")
    via_cycles = fock_contract(u.n, i, j, u)
    direct = fock_contract_direct(u.n, i, j, u)
    rep = Report("fock-contract", instance=repr(A), bounds={"i": i, "j": j}, cases=1)
    rep.details["result"] = via_cycles.to_json()
    if via_cycles != direct:
        rep.fail({"u": u.to_json(), "i": i, "j": j, "cycles": via_cycles.to_json(),
                  "direct": direct.to_json()})
    return rep


def _double_jacobi(job, b) -> Report:
    A = _algebra(job, ["x"])
    return check_double_jacobi(_spec(job, A), _pick(job, b, "max_word_len", 3))


def _poisson(job, b) -> Report:
    A = _algebra(job, ["x"])
    engine = WheeledBracketEngine(_spec(job, A))
    arity = _pick(job, b, "max_arity", 2)
    return check_poisson_axioms(engine, max_arity=arity, max_total=b.get("max_total", 3 * arity),
                                max_word_len=b["max_word_len"], max_neck_len=b["max_necklace_len"],
                                max_necklaces=b.get("max_necklaces", 1))


def _shift(job, b) -> Report:
    A = _algebra(job, ["x"])
    engine = WheeledBracketEngine(_spec(job, A))
    return check_shift_compat(engine, max_arity=b["max_arity"], max_word_len=b["max_word_len"],
                              max_neck_len=b["max_necklace_len"],
                              max_necklaces=b.get("max_necklaces", 1))


def _big(job, b) -> Report:
    return check_big_bracket(_algebra(job, ["x", "theta"]), b["max_word_len"])


def _symplectic(job, b) -> Report:
    B = _algebra(job, ["x", "theta"])
    F = form_algebra(B)
    omega = job.get("omega")
    if omega is None:
        if B.names != ("x", "theta"):
            raise UsageError("job field 'omega' is required for this algebra")
        omega = [["1", ["d:x", "d:theta"]]]
    return symplectic_pairing_check(B, _element(F, omega, "omega"))


def _matred(job, b) -> Report:
    A = _algebra(job, ["x"])
    arity = _pick(job, b, "max_arity", 2)
    return check_wheeled_relations(A, b["dim_V"], arity, b["max_word_len"], b["max_necklace_len"],
                                   b.get("max_necklaces", 1))


def _kr_bracket(job, b) -> Report:
    A = _algebra(job, ["x"])
    engine = WheeledBracketEngine(_spec(job, A))
    a, c = _element(A, job.get("a"), "a"), _element(A, job.get("b"), "b")
    d = b["dim_V"]
    idx = {k: _int(job, k) for k in ("i", "j", "k", "l")}
    if any(not 1 <= v <= d for v in idx.values()):
        raise UsageError("matrix indices out of range")
    val = kr_bracket(a, c, (idx["i"], idx["j"]), (idx["k"], idx["l"]), engine, d)
    rep = Report("kr-bracket", instance=repr(A), bounds={"dim_V": d, **idx}, cases=1)
    rep.details["value"] = val.to_json()
    rep.details["text"] = repr(val)
    return rep


def _kr_jacobi(job, b) -> Report:
    A = _algebra(job, ["x"])
    engine = WheeledBracketEngine(_spec(job, A))
    names, table = kr_table(engine, b["dim_V"])
    return jacobi_poly(names, table, samples=b.get("samples", 20), seed=job.get("seed", 0))


COMMANDS: dict[str, Callable[[Mapping[str, Any], dict[str, int]], Report]] = {
    "symgrp-identities": _symgrp,
    "wheel-axioms": _wheel_axioms,
    "fock-mul": _fock_mul,
    "fock-contract": _fock_contract,
    "double-jacobi": _double_jacobi,
    "wheeled-poisson-axioms": _poisson,
    "shift-compat": _shift,
    "big-bracket": _big,
    "symplectic-pairing": _symplectic,
    "matred-relations": _matred,
    "kr-bracket": _kr_bracket,
    "kr-jacobi": _kr_jacobi,
}


def run(job: Mapping[str, Any]) -> Report:
    """Execute a job mapping with a ``command`` field."""
    command = job.get("command")
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    return COMMANDS[command](job, _bounds(job))


def threads() -> int:
    """Parallelism cap from ``WHEELKIT_THREADS``; checkers currently run in one process."""
    raw = os.environ.get("WHEELKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("WHEELKIT_THREADS must be a positive integer") from None
    if n < 1:
        raise UsageError("WHEELKIT_THREADS must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wheelkit", description=__doc__.splitlines()[0])
    p.add_argument("command", nargs="?", choices=sorted(COMMANDS),
                   help="check to run; may instead be given as 'command' in the job file")
    p.add_argument("--job", help="JSON job file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, help="seed for randomized supplements")
    p.add_argument("--bounds", help="comma-separated k=v overrides")
    p.add_argument("--instance", choices=("end", "fock"), help="wheel-axioms instance")
    return p


def load_job(args: argparse.Namespace) -> dict[str, Any]:
    job: dict[str, Any] = {}
    if args.job:
        try:
            with open(args.job, encoding="utf-8") as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read job: {exc}") from None
        if not isinstance(job, dict):
            raise UsageError("job must be a JSON object")
    if args.command:
        if job.get("command", args.command) != args.command:
            raise UsageError("command conflicts with the job file")
        job["command"] = args.command
    if args.seed is not None:
        if args.seed < 0 or args.seed >= 2 ** 64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        job["seed"] = args.seed
    if args.instance:
        job["instance"] = args.instance
    job["bounds"] = {**job.get("bounds", {}), **parse_bounds(args.bounds)}
    return job


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        threads()
        report = run(load_job(args))
    except UsageError as exc:
        print(f"wheelkit: {exc}", file=sys.stderr)
        return 2
    text = report.to_json() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
