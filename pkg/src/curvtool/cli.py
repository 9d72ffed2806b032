"""Command-line surface emitting deterministic machine-readable reports.

Subcommands: tensor, metric, identity, ring, search. Reports are JSON with
sorted keys so golden files diff cleanly, and they round-trip through
parse_report. The env var CURVTOOL_SEED overrides --rng wherever one exists.

Exit codes: 0 success, 2 expected property violated, 3 parse error,
4 unknown entity, 5 domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from . import curvature, linalg, metrics3, proof_kit, quotient_ring, search
from .errors import (
    BadInvolution,
    DegeneratePlane,
    DegenerateWarp,
    DependentBasis,
    DimUnsupported,
    KernelMismatch,
    NotGeodesicFrame,
    OddMultiplicity,
    OutOfDomain,
    ParseError,
    RankNotOne,
    SignChange,
    UnknownIdentity,
    UnknownMetric,
    ZeroElement,
)

EXIT_OK = 0
EXIT_PROPERTY = 2
EXIT_PARSE = 3
EXIT_UNKNOWN = 4
EXIT_DOMAIN = 5

IDENTITY_NAMES = ("w-rank1", "m-identity", "cubic-pencil", "cc0-probe", "minor-div")
RING_OPS = ("reduce", "mul", "divide", "valuation")
METRIC_CHECKS = ("ricci", "bianchi", "h", "phi", "cotton")

_UNKNOWN_ERRORS = (UnknownMetric, UnknownIdentity, DimUnsupported)
_DOMAIN_ERRORS = (
    BadInvolution,
    DegeneratePlane,
    DegenerateWarp,
    DependentBasis,
    KernelMismatch,
    NotGeodesicFrame,
    OddMultiplicity,
    OutOfDomain,
    RankNotOne,
    SignChange,
    ZeroElement,
    ValueError,
)


@dataclass(frozen=True)
class Report:
    """Key-sorted JSON document: command echo, inputs digest, results, flags."""

    command: tuple[str, ...]
    inputs_digest: str
    tolerances: dict
    results: dict
    flags: dict

    def to_text(self) -> str:
        payload = {
            "command": list(self.command),
            "inputs_digest": self.inputs_digest,
            "tolerances": self.tolerances,
            "results": self.results,
            "flags": self.flags,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> Report:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a report document: {exc}") from None
    expected = {"command", "inputs_digest", "tolerances", "results", "flags"}
    if not isinstance(payload, dict) or set(payload) != expected:
        raise ParseError("not a report document: wrong top-level fields")
    return Report(
        command=tuple(payload["command"]),
        inputs_digest=payload["inputs_digest"],
        tolerances=payload["tolerances"],
        results=payload["results"],
        flags=payload["flags"],
    )


def _digest(obj) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True).encode("utf-8")
    ).hexdigest()


def _resolve_rng(args) -> int:
    env = os.environ.get("CURVTOOL_SEED")
    if env is None:
        return args.rng
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"CURVTOOL_SEED must be an integer, got {env!r}") from None


def _structure_obj(structure) -> Optional[dict]:
    if structure is None:
        return None
    return {
        "kernel_dim": structure.kernel_dim,
        "pairs": [[float(lam), int(n)] for lam, n in structure.pairs],
        "rank": structure.rank,
    }


def _parse_point(text: str) -> np.ndarray:
    fields = text.split(",")
    if len(fields) != 3:
        raise ParseError(f"point must be 'x,y,z', got {text!r}")
    try:
        return np.array([float(f) for f in fields])
    except ValueError:
        raise ParseError(f"malformed point coordinate in {text!r}") from None


def _parse_params(text: str) -> dict[str, Fraction]:
    params: dict[str, Fraction] = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParseError(f"parameter must be 'name=value', got {item!r}")
        try:
            params[key] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed parameter value in {item!r}") from None
    return params


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        values = [float(f) for f in text.split(",") if f.strip()]
    except ValueError:
        raise ParseError(f"{flag} expects comma-separated numbers, got {text!r}") from None
    if not values:
        raise ParseError(f"{flag} needs at least one value")
    return values


def _random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


# --- tensor -------------------------------------------------------------------


def cmd_tensor(args, argv) -> tuple[Report, bool]:
    seed = _resolve_rng(args)
    if args.file is not None:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc}") from None
        tensor = curvature.tensor_from_text(text)
        inputs = {"kind": "file", "text": text}
    else:
        if args.dim is None:
            raise ParseError("--builtin requires --dim")
        if not curvature.MIN_DIM <= args.dim <= curvature.MAX_DIM:
            raise DimUnsupported(
                f"dim {args.dim} outside [{curvature.MIN_DIM}, {curvature.MAX_DIM}]"
            )
        if args.builtin == "constant":
            tensor = curvature.constant_curvature(args.dim, args.c)
        else:
            phi = np.eye(args.dim)
            phi[0, 0] = -1.0
            tensor = curvature.r_phi(args.dim, args.c, phi)
        inputs = {"kind": "builtin", "name": args.builtin, "dim": args.dim, "c": args.c}
    verdict = curvature.is_ip(tensor, samples=args.samples, tol=args.tol, rng_seed=seed)
    results = {
        "dim": tensor.dim,
        "norm": tensor.norm(),
        "samples": verdict.samples,
        "verdict": verdict.verdict,
        "structure": _structure_obj(verdict.structure),
        "rank": verdict.rank,
        "bianchi_residuals": {
            k: float(v) for k, v in curvature.bianchi_residuals(tensor).items()
        },
    }
    if verdict.mismatch is not None:
        results["mismatch"] = [_structure_obj(s) for s in verdict.mismatch]
    flags = {"ip": verdict.verdict, "expected_ip": bool(args.expect_ip)}
    report = Report(
        command=("tensor", *argv[1:]),
        inputs_digest=_digest({**inputs, "samples": args.samples, "rng": seed}),
        tolerances={"structure": args.tol},
        results=results,
        flags=flags,
    )
    return report, verdict.verdict or not args.expect_ip


# --- metric -------------------------------------------------------------------

FRAME_IDENTITY_TOL = 1e-5
RICCI_TOL = 1e-8
CONFORMAL_FLAT_TOL = 1e-4
PROFILE_FIT_TOL = 1e-6


def _phi_samples(x0: float) -> np.ndarray:
    # probe along the x-axis around the evaluation point (unit window at 0)
    if x0 == 0.0:
        return np.linspace(0.65, 1.35, 9)
    return x0 * (1.0 + np.linspace(-0.35, 0.35, 9))


def cmd_metric(args, argv) -> tuple[Report, bool]:
    checks = [c for c in args.checks.split(",") if c]
    for check in checks:
        if check not in METRIC_CHECKS:
            raise UnknownIdentity(f"no metric check named {check!r}")
    if not checks:
        raise ParseError("--checks needs at least one entry")
    params = _parse_params(args.params)
    point = _parse_point(args.point)
    tolerances = {
        "frame_identity": FRAME_IDENTITY_TOL,
        "ricci": RICCI_TOL,
        "conformal_flat": CONFORMAL_FLAT_TOL,
        "profile_fit": PROFILE_FIT_TOL,
    }
    inputs = {
        "name": args.name,
        "params": {k: str(v) for k, v in sorted(params.items())},
        "point": [float(c) for c in point],
        "checks": sorted(checks),
    }
    results: dict = {"metric": args.name, "point": [float(c) for c in point]}
    flags: dict = {}
    if args.name == "milnor":
        if set(checks) != {"ricci"}:
            raise UnknownIdentity("milnor supports only the ricci check")
        if set(params) != {"l1", "l2", "l3"}:
            raise ValueError("milnor expects parameters l1, l2, l3")
        diagonal = metrics3.milnor_ricci(params["l1"], params["l2"], params["l3"])
        results["checks"] = {
            "ricci": {
                "diagonal": [str(v) for v in diagonal],
                "diagonal_float": [float(v) for v in diagonal],
            }
        }
        return (
            Report(("metric", *argv[1:]), _digest(inputs), tolerances, results, flags),
            True,
        )
    chart = metrics3.named_chart(args.name, {k: float(v) for k, v in params.items()})
    out: dict = {}
    for check in checks:
        if check == "ricci":
            rr = metrics3.ricci_report(chart, point, tol=RICCI_TOL)
            out["ricci"] = {
                "eigenvalues": [float(w) for w in rr.eigenvalues],
                "rank": rr.rank,
                "frame_directions": rr.frame_directions.T.tolist(),
                "coordinate_directions": rr.coordinate_directions.T.tolist(),
            }
        elif check == "bianchi":
            triple = metrics3.second_bianchi_frame_check(chart, point)
            closed = metrics3.closed_form_residual(chart, point)
            out["bianchi"] = {
                "second_bianchi": [float(r) for r in triple],
                "trace_h": float(triple[0]),
                "closed_form": float(closed),
            }
            flags["bianchi_ok"] = max(*triple, closed) <= FRAME_IDENTITY_TOL
        elif check == "h":
            value = metrics3.h_evolution_check(chart, point)
            out["h"] = {"h_evolution": float(value)}
            flags["h_ok"] = value <= FRAME_IDENTITY_TOL
        elif check == "phi":
            fit = metrics3.phi_profile_check(chart, _phi_samples(float(point[0])))
            out["phi"] = {
                "a": fit.a,
                "b": fit.b,
                "c": fit.c,
                "max_residual": fit.max_residual,
            }
            flags["phi_fit_ok"] = fit.max_residual <= PROFILE_FIT_TOL
        elif check == "cotton":
            value = metrics3.conformal_flat_residual(chart, point)
            out["cotton"] = {"conformal_flat_residual": float(value)}
            flags["conformally_flat"] = value <= CONFORMAL_FLAT_TOL
    results["checks"] = out
    report = Report(("metric", *argv[1:]), _digest(inputs), tolerances, results, flags)
    return report, True


# --- identity -----------------------------------------------------------------

W_RANK1_TOL = 1e-8
M_IDENTITY_TOL = 1e-8
PENCIL_TOL = 1e-12
PROBE_TOL = 1e-6


def _identity_w_rank1(args, rng) -> tuple[dict, dict, dict]:
    expected = args.alpha**2 * args.scale**4
    rank_one = 0
    max_rel = 0.0
    for _ in range(args.trials):
        fam = proof_kit.NormalFormFamily(
            "a",
            alpha=args.alpha,
            conjugator=_random_orthogonal(7, rng),
            scale=args.scale,
        )
        w = proof_kit.w_operator(fam.member(), args.scale, args.alpha)
        if linalg.numeric_rank(w) == 1:
            rank_one += 1
        max_rel = max(max_rel, abs(float(np.trace(w)) - expected) / expected)
    results = {
        "alpha": args.alpha,
        "scale": args.scale,
        "trials": args.trials,
        "rank_one": rank_one,
        "expected_eigenvalue": expected,
        "max_relative_error": max_rel,
    }
    flags = {
        "all_rank_one": rank_one == args.trials,
        "eigenvalue_within_tol": max_rel <= W_RANK1_TOL,
    }
    return results, flags, {"relative": W_RANK1_TOL}


def _identity_m_identity(args, rng) -> tuple[dict, dict, dict]:
    t_values = _parse_floats(args.t, "--t")
    max_residual = 0.0
    for _ in range(args.trials):
        fam = proof_kit.NormalFormFamily(
            "a",
            alpha=args.alpha,
            conjugator=_random_orthogonal(7, rng),
            scale=args.scale,
        )
        b = args.scale * fam.kernel_basis()[:, 0]
        for t in t_values:
            res = proof_kit.m_identity_residual(
                fam.member(), args.scale, b, args.alpha, t
            )
            max_residual = max(max_residual, res)
    results = {
        "alpha": args.alpha,
        "scale": args.scale,
        "t_values": t_values,
        "trials": args.trials,
        "max_residual": max_residual,
    }
    flags = {"identity_holds": max_residual <= M_IDENTITY_TOL}
    return results, flags, {"residual": M_IDENTITY_TOL}


def _identity_cubic_pencil(args, rng) -> tuple[dict, dict, dict]:
    j2 = proof_kit.rotation_block()
    k = np.zeros((7, 7))
    k[:4, :4] = proof_kit.symplectic_block()
    l = np.zeros((7, 7))
    l[:2, :2] = args.a * j2
    l[:2, 2:4] = args.b * j2
    l[2:4, :2] = args.b * j2
    l[2:4, 2:4] = -args.a * j2
    residuals = proof_kit.cubic_pencil_residuals(k, l, float(np.hypot(args.a, args.b)))
    results = {
        "a": args.a,
        "b": args.b,
        "residuals": {key: float(v) for key, v in residuals.items()},
    }
    flags = {"pencil_holds": max(residuals.values()) <= PENCIL_TOL}
    return results, flags, {"residual": PENCIL_TOL}


def _identity_cc0_probe(args, rng) -> tuple[dict, dict, dict]:
    found = 0
    witness = None
    for _ in range(args.trials):
        basis = [rng.standard_normal((4, 3)) for _ in range(4)]
        probe = proof_kit.cc0_probe(basis, samples=200, tol=PROBE_TOL, rng_seed=rng)
        if probe.status == proof_kit.FAILS_PROPERTY:
            found += 1
            if witness is None:
                witness = {
                    "coefficients": [float(c) for c in probe.witness.coefficients],
                    "singular_values": [
                        float(s) for s in probe.witness.singular_values
                    ],
                }
    results = {"trials": args.trials, "fails_property": found, "witness": witness}
    flags = {"all_violate": found == args.trials}
    return results, flags, {"singular_pattern": PROBE_TOL}


def _identity_minor_div(args, rng) -> tuple[dict, dict, dict]:
    m = args.m

    def random_poly():
        terms: dict[tuple[int, ...], Fraction] = {}
        for _ in range(3):
            exp = [0] * m
            for _ in range(int(rng.integers(0, 3))):
                exp[int(rng.integers(0, m))] += 1
            coeff = Fraction(int(rng.integers(-3, 4)))
            if coeff:
                terms[tuple(exp)] = terms.get(tuple(exp), Fraction(0)) + coeff
        return quotient_ring.MultiPoly(m, terms)

    def random_elem():
        return quotient_ring.QuotElem(random_poly(), random_poly())

    accepted = 0
    for _ in range(args.trials):
        left = [random_elem() for _ in range(3)]
        right = [random_elem() for _ in range(3)]
        entries = [[quotient_ring.mul(a, b) for b in right] for a in left]
        if quotient_ring.minor_divisibility_check(entries).ok:
            accepted += 1
    tbar = quotient_ring.QuotElem.tbar(m)
    zero = quotient_ring.QuotElem.zero(m)
    reject = quotient_ring.minor_divisibility_check([[tbar, zero], [zero, tbar]])
    results = {
        "m": m,
        "trials": args.trials,
        "rank_one_accepted": accepted,
        "identity_rejected": not reject.ok,
        "failing_minor": list(reject.failing_minor) if reject.failing_minor else None,
    }
    flags = {
        "family_divisible": accepted == args.trials,
        "identity_rejected": not reject.ok,
    }
    return results, flags, {"arithmetic": 0.0}


def cmd_identity(args, argv) -> tuple[Report, bool]:
    if args.name not in IDENTITY_NAMES:
        raise UnknownIdentity(f"no identity named {args.name!r}")
    seed = _resolve_rng(args)
    rng = np.random.default_rng(seed)
    builder = {
        "w-rank1": _identity_w_rank1,
        "m-identity": _identity_m_identity,
        "cubic-pencil": _identity_cubic_pencil,
        "cc0-probe": _identity_cc0_probe,
        "minor-div": _identity_minor_div,
    }[args.name]
    results, flags, tolerances = builder(args, rng)
    results = {"identity": args.name, "rng": seed, **results}
    inputs = {
        "name": args.name,
        "rng": seed,
        "alpha": args.alpha,
        "scale": args.scale,
        "t": args.t,
        "a": args.a,
        "b": args.b,
        "trials": args.trials,
        "m": args.m,
    }
    report = Report(
        command=("identity", *argv[1:]),
        inputs_digest=_digest(inputs),
        tolerances=tolerances,
        results=results,
        flags=flags,
    )
    return report, all(flags.values())


# --- ring ---------------------------------------------------------------------


def cmd_ring(args, argv) -> tuple[Report, bool]:
    if args.op not in RING_OPS:
        raise UnknownIdentity(f"no ring operation named {args.op!r}")
    element = quotient_ring.parse_element(args.expr, args.m)
    results: dict = {"m": args.m, "op": args.op, "expr": args.expr}
    flags: dict = {}
    if args.op == "reduce":
        results["result"] = quotient_ring.format_element(element)
    elif args.op == "mul":
        if args.rhs is None:
            raise ParseError("--rhs is required for op mul")
        rhs = quotient_ring.parse_element(args.rhs, args.m)
        results["rhs"] = args.rhs
        results["result"] = quotient_ring.format_element(quotient_ring.mul(element, rhs))
    elif args.op == "divide":
        quotient = quotient_ring.tbar_divide(element)
        flags["divisible"] = quotient is not None
        results["result"] = (
            None if quotient is None else quotient_ring.format_element(quotient)
        )
    else:
        results["valuation"] = quotient_ring.tbar_valuation(element)
    report = Report(
        command=("ring", *argv[1:]),
        inputs_digest=_digest({"m": args.m, "op": args.op, "expr": args.expr, "rhs": args.rhs}),
        tolerances={"arithmetic": 0.0},
        results=results,
        flags=flags,
    )
    return report, True


# --- search -------------------------------------------------------------------


def cmd_search(args, argv) -> tuple[Report, bool]:
    seed = _resolve_rng(args)
    if not curvature.MIN_DIM <= args.dim <= curvature.MAX_DIM:
        raise DimUnsupported(
            f"dim {args.dim} outside [{curvature.MIN_DIM}, {curvature.MAX_DIM}]"
        )
    cfg = search.SearchConfig(
        dim=args.dim,
        seeds=args.seeds,
        iterations=args.iters,
        plane_batch=args.planes,
        polish_iterations=args.polish,
        tol_residual=args.tol,
        rng_seed=seed,
        workers=args.workers,
    )
    outcome = search.run_search(cfg)
    candidates = []
    for cand in outcome.candidates:
        histogram: dict[str, int] = {}
        for rank in cand.rank_census.values():
            histogram[str(rank)] = histogram.get(str(rank), 0) + 1
        candidates.append(
            {
                "seed": cand.seed_index,
                "residual": cand.residual,
                "max_rank": cand.max_rank,
                "rank_histogram": histogram,
                "structure": _structure_obj(cand.structure),
                "ricci_rank": cand.ricci_rank,
                "constant_curvature_distance": cand.constant_curvature_distance,
            }
        )
    summary = outcome.summary
    witnesses = {
        str(c.seed_index): curvature.tensor_to_text(c.tensor)
        for c in outcome.candidates
        if c.seed_index in summary.counterexample_seeds
    }
    results = {
        "dim": args.dim,
        "candidates": candidates,
        "summary": {
            "total": summary.total,
            "below_tol": summary.below_tol,
            "max_rank_below_tol": summary.max_rank_below_tol,
            "counterexample_seeds": list(summary.counterexample_seeds),
        },
        "witnesses": witnesses,
    }
    flags = {"no_counterexample": not summary.counterexample_seeds}
    report = Report(
        command=("search", *argv[1:]),
        inputs_digest=_digest(
            {
                "dim": args.dim,
                "seeds": args.seeds,
                "iters": args.iters,
                "planes": args.planes,
                "polish": args.polish,
                "tol": args.tol,
                "rng": seed,
            }
        ),
        tolerances={"residual": args.tol, "rank_census": search.RANK_CENSUS_TOL},
        results=results,
        flags=flags,
    )
    return report, not summary.counterexample_seeds


# --- wiring -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        # values like "-1,0,0" (points, t-lists) must parse as arguments
        self._negative_number_matcher = re.compile(r"^-\d[\d.,eE/+-]*$")

    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curvtool", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tensor = sub.add_parser("tensor", help="classify a curvature tensor")
    source = tensor.add_mutually_exclusive_group(required=True)
    source.add_argument("--file", help="tensor document path")
    source.add_argument("--builtin", choices=["constant", "rphi"])
    tensor.add_argument("--dim", type=int, help="dimension for --builtin")
    tensor.add_argument("--c", type=float, default=1.0, help="curvature scale")
    tensor.add_argument("--samples", type=int, default=200)
    tensor.add_argument("--tol", type=float, default=1e-9)
    tensor.add_argument("--expect-ip", dest="expect_ip", action="store_true")
    tensor.add_argument("--rng", type=int, default=0)
    tensor.add_argument("--out", help="write the report here instead of stdout")

    metric = sub.add_parser("metric", help="run checks on a named metric")
    metric.add_argument("--name", required=True)
    metric.add_argument("--params", default="", help="comma list name=value")
    metric.add_argument("--point", default="0,0,0")
    metric.add_argument("--checks", default="ricci", help=",".join(METRIC_CHECKS))
    metric.add_argument("--out")

    identity = sub.add_parser("identity", help="verify a named identity family")
    identity.add_argument("--name", required=True, help="|".join(IDENTITY_NAMES))
    identity.add_argument("--alpha", type=float, default=2.0)
    identity.add_argument("--scale", type=float, default=1.0)
    identity.add_argument("--t", default="-1,0,0.7,2", help="comma list (use --t=...)")
    identity.add_argument("--a", type=float, default=1.0)
    identity.add_argument("--b", type=float, default=1.0)
    identity.add_argument("--trials", type=int, default=100)
    identity.add_argument("--m", type=int, default=3, help="ring variables (minor-div)")
    identity.add_argument("--rng", type=int, default=0)
    identity.add_argument("--out")

    ring = sub.add_parser("ring", help="quotient-ring arithmetic on literals")
    ring.add_argument("--m", type=int, default=6, help="number of y variables")
    ring.add_argument("--op", required=True, help="|".join(RING_OPS))
    ring.add_argument("--expr", required=True)
    ring.add_argument("--rhs", help="second operand for op mul")
    ring.add_argument("--out")

    srch = sub.add_parser("search", help="residual-minimization counterexample search")
    srch.add_argument("--dim", type=int, default=7)
    srch.add_argument("--seeds", type=int, default=50)
    srch.add_argument("--iters", type=int, default=2000)
    srch.add_argument("--planes", type=int, default=8)
    srch.add_argument("--polish", type=int, default=400)
    srch.add_argument("--tol", type=float, default=1e-6)
    srch.add_argument("--rng", type=int, default=0)
    srch.add_argument("--workers", type=int, default=1)
    srch.add_argument("--out")
    return parser


_HANDLERS = {
    "tensor": cmd_tensor,
    "metric": cmd_metric,
    "identity": cmd_identity,
    "ring": cmd_ring,
    "search": cmd_search,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, ok = _HANDLERS[args.command](args, argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _UNKNOWN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = report.to_text()
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_PROPERTY


if __name__ == "__main__":
    raise SystemExit(main())
