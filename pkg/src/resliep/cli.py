"""Command-line entry point: ``resliep <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage,
input or feasibility errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import heisclass, serialize
from .cecoh import cohomology
from .extend import central_extension, kind_cocycle, named_extension, parse_kind, verify_extension
from .gfp import GF, field_make
from .liealg import LieAlgebra, structure_report
from .pstruct import HeisenbergParams, RestrictedLieAlgebra, heisenberg_restricted, verify_restricted
from .rescoh import restricted_cohomology, verify_sequences

COMMANDS = ("describe", "cohomology", "restricted-cohomology", "classify", "extend", "verify")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None = None
    k: int = 1
    modulus: tuple[int, ...] | None = None
    heisenberg: int | None = None
    lam: tuple[str, ...] | None = None
    algebra: str | None = None
    m: int | None = None
    degree: int | None = None
    cocycle: str | None = None
    format: str = "json"
    out: str | None = None
    seed: int = 0
    samples: int = 100
    members: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        lam = d.pop("lam")
        d["lambda"] = list(lam) if lam is not None else None
        d["modulus"] = list(self.modulus) if self.modulus is not None else None
        d.pop("out")
        return d


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resliep", description="Restricted Lie algebra cohomology toolkit")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--p", type=int, help="field characteristic")
    ap.add_argument("--k", type=int, default=1, help="extension degree of the field")
    ap.add_argument("--modulus", help="comma-separated monic modulus coefficients, constant term first")
    ap.add_argument("--heisenberg", type=int, metavar="M", help="use the Heisenberg algebra h_M")
    ap.add_argument("--lambda", dest="lam", help="comma-separated [p]-parameters lambda_1..lambda_{2M+1}")
    ap.add_argument("--algebra", metavar="FILE", help="JSON algebra file")
    ap.add_argument("--m", type=int, help="Heisenberg index for classify")
    ap.add_argument("--degree", type=int)
    ap.add_argument("--cocycle", help="'Hi:i', 'Hst:s,t' or a JSON cocycle file")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--out", metavar="PATH")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--members", action="store_true", help="list every orbit member in classify output")
    return ap


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    seed = args.seed
    if environ.get("RESLIEP_SEED"):
        try:
            seed = int(environ["RESLIEP_SEED"])
        except ValueError:
            raise UsageError(f"RESLIEP_SEED must be an integer, got {environ['RESLIEP_SEED']!r}") from None
    modulus = None
    if args.modulus:
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise UsageError(f"bad --modulus {args.modulus!r}") from None
    lam = tuple(s.strip() for s in args.lam.split(",")) if args.lam else None
    cfg = RunConfig(
        command=args.command, p=args.p, k=args.k, modulus=modulus, heisenberg=args.heisenberg, lam=lam,
        algebra=args.algebra, m=args.m, degree=args.degree, cocycle=args.cocycle, format=args.format,
        out=args.out, seed=seed, samples=args.samples, members=args.members,
    )
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if cfg.command == "classify":
        if cfg.m is None or cfg.p is None:
            raise UsageError("classify needs --m and --p")
        return
    if (cfg.heisenberg is None) == (cfg.algebra is None):
        raise UsageError("give exactly one algebra source: --heisenberg M or --algebra FILE")
    if cfg.heisenberg is not None and cfg.p is None:
        raise UsageError("--heisenberg needs --p")
    if cfg.algebra is not None and cfg.lam is not None:
        raise UsageError("--lambda only applies to --heisenberg")
    if cfg.command in ("cohomology", "restricted-cohomology") and cfg.degree is None:
        raise UsageError(f"{cfg.command} needs --degree")
    if cfg.command == "extend" and cfg.cocycle is None:
        raise UsageError("extend needs --cocycle")
    if cfg.samples < 1:
        raise UsageError("--samples must be positive")


def _field(cfg: RunConfig) -> GF:
    return field_make(cfg.p, cfg.k, cfg.modulus)


def parse_lambda(F: GF, entries, m: int) -> tuple[int, ...]:
    if entries is None:
        return (0,) * (2 * m + 1)
    if len(entries) != 2 * m + 1:
        raise UsageError(f"--lambda needs {2 * m + 1} entries for m = {m}, got {len(entries)}")
    if F.is_prime_field:
        try:
            return tuple(int(s) % F.p for s in entries)
        except ValueError:
            raise UsageError(f"--lambda entries must be integers over F_{F.p}") from None
    return tuple(F.parse(s) for s in entries)


def load_source(cfg: RunConfig) -> LieAlgebra | RestrictedLieAlgebra:
    """Heisenberg sources are always restricted (lambda defaults to 0)."""
    if cfg.algebra is not None:
        A = serialize.load_algebra(cfg.algebra)
        F = A.field
        if cfg.p is not None and (F.p, F.k) != (cfg.p, cfg.k):
            raise UsageError(f"--p/--k disagree with the field in {cfg.algebra}")
        return A
    F = _field(cfg)
    return heisenberg_restricted(F, HeisenbergParams(cfg.heisenberg, parse_lambda(F, cfg.lam, cfg.heisenberg)))


def _require_restricted(A) -> RestrictedLieAlgebra:
    if not isinstance(A, RestrictedLieAlgebra):
        raise UsageError("this command needs a [p]-operator: use --heisenberg or an algebra file with 'pmap'")
    return A


def _lie(A) -> LieAlgebra:
    return A.algebra if isinstance(A, RestrictedLieAlgebra) else A


# -- commands ---------------------------------------------------------------------


def cmd_describe(cfg: RunConfig) -> tuple[dict, int]:
    A = load_source(cfg)
    L = _lie(A)
    rep = {"dim": L.n, "field": serialize.field_to_dict(L.field), "structure": structure_report(L).to_dict()}
    rep["algebra"] = serialize.algebra_to_dict(A)
    return rep, EXIT_OK


def cmd_cohomology(cfg: RunConfig) -> tuple[dict, int]:
    A = load_source(cfg)
    L = _lie(A)
    return cohomology(L, cfg.degree).to_dict(L.field), EXIT_OK


def cmd_restricted_cohomology(cfg: RunConfig) -> tuple[dict, int]:
    R = _require_restricted(load_source(cfg))
    if cfg.degree not in (1, 2):
        raise UsageError("restricted cohomology is available in degrees 1 and 2")
    L, F = R.algebra, R.field
    rep = restricted_cohomology(L, R.pmap, cfg.degree).to_dict(F)
    seq = verify_sequences(L, R.pmap)
    rep["exactness"] = seq.to_dict()
    if cfg.heisenberg is not None and cfg.degree == 2:
        m = cfg.heisenberg
        expected = 2 * m * m + m
        rep["formula_check"] = {
            "formula": "2m^2+m",
            "expected": expected,
            "computed": rep["dim_H"],
            "flag": rep["dim_H"] != expected,
        }
    return rep, EXIT_OK if seq.exact else EXIT_FAIL


def cmd_classify(cfg: RunConfig) -> tuple[dict, int]:
    F = _field(cfg)
    c = heisclass.classify(F, cfg.m)
    return c.to_dict(members=cfg.members), EXIT_OK if c.transitive else EXIT_FAIL


def cmd_extend(cfg: RunConfig) -> tuple[dict, int]:
    R = _require_restricted(load_source(cfg))
    rng = np.random.default_rng(cfg.seed)
    label = None
    if Path(cfg.cocycle).is_file():
        rc = serialize.load_cocycle(R.field, R.n, cfg.cocycle)
    else:
        parse_kind(cfg.cocycle)
        label = cfg.cocycle
        rc = kind_cocycle(R.n, label)
    if label is not None and R.params is not None:
        ext = named_extension(R, label)
        report = verify_extension(ext, samples=cfg.samples, rng=rng, kind=label)
    else:
        ext = central_extension(R, rc)
        report = verify_extension(ext, samples=cfg.samples, rng=rng)
    out = serialize.algebra_to_dict(ext.total)
    out["cocycle"] = serialize.cocycle_to_dict(R.field, ext.cocycle)
    out["verification"] = report.to_dict()
    return out, EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    A = load_source(cfg)
    L = _lie(A)
    s = structure_report(L)
    rep = {"jacobi_ok": s.jacobi_ok, "jacobi_failure": s.jacobi_failure}
    ok = s.jacobi_ok
    if isinstance(A, RestrictedLieAlgebra):
        check = verify_restricted(L, A.pmap, samples=cfg.samples, rng=np.random.default_rng(cfg.seed))
        rep["restricted"] = check.to_dict()
        ok = ok and check.ok
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


DISPATCH = {
    "describe": cmd_describe,
    "cohomology": cmd_cohomology,
    "restricted-cohomology": cmd_restricted_cohomology,
    "classify": cmd_classify,
    "extend": cmd_extend,
    "verify": cmd_verify,
}


def run(cfg: RunConfig) -> tuple[dict, int]:
    report, status = DISPATCH[cfg.command](cfg)
    report = dict(report)
    report["config"] = cfg.to_dict()
    return report, status


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def render(report: dict, fmt: str) -> str:
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []

    def walk(prefix: str, v):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else k, v[k])
        else:
            lines.append(f"{prefix}: {json.dumps(v)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        report, status = run(cfg)
    except (UsageError, ValueError, heisclass.InfeasibleSearch, ZeroDivisionError) as exc:
        print(f"resliep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, cfg.format)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
