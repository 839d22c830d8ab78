"""Command-line front-end.

Subcommands: classify, slice, measure, path, verify, gen. All reports embed
the tool version, tolerance, seed and the claim tag they instantiate, and are
byte-identical across runs for identical inputs. Output files are written
atomically (temp file plus rename), so no partial files survive an error.

Exit codes: 0 success (an "entangling" verdict is a successful
classification), 1 verification-suite failure, 2 malformed input or usage,
3 input not unitary within tolerance, 4 hypothesis violation (non-product
slice image, invalid POVM).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import fixtures, verify
from .classify import (
    LocalOnObject,
    Product,
    SwapForm,
    classify_slice,
    classify_unitary,
    reconstruction_error,
    slice_residual,
)
from .dynamics import entanglement_profile, geodesic_path
from .errors import (
    DimensionError,
    InvalidPOVMError,
    NonUnitaryError,
    SliceHypothesisError,
    SlicePatternError,
    WitnessSearchError,
)
from .linalg import DEFAULT_SEED, Tolerance, haar_unitary, random_state, swap_unitary
from .measurement import (
    disturbance,
    is_trivial_povm,
    measured_observable,
    outcome_probabilities,
    swap_scheme,
    triviality_deviation,
)
from .bipartite import DensityOperator
from .serialize import (
    canonical_json,
    matrix_from_json,
    matrix_to_json,
    povm_to_json,
    profile_csv,
    scheme_from_json,
    scheme_to_json,
    state_to_json,
    vector_from_json,
    vector_to_json,
    write_atomic,
)

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_NOT_UNITARY = 3
EXIT_HYPOTHESIS = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation.

    The seed always has a value (default 0xB05C) so unseeded runs are
    reproducible; dimensions, when given, are positive.
    """

    command: str
    tol: Tolerance
    seed: int
    dims: tuple[int, int] | None
    steps: int
    samples: int
    out: str | None
    fmt: str
    input: str | None = None
    phi0: str | None = None
    scheme: str | None = None
    state: str | None = None
    probe_init: str | None = None
    name: str | None = None
    phase: float = 0.0
    probe_control: bool = False

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        dims = None
        if args.dims is not None:
            d1, d2 = args.dims
            if d1 < 1 or d2 < 1:
                raise CliError(f"dimensions must be positive, got {d1} {d2}", EXIT_BAD_INPUT)
            dims = (d1, d2)
        try:
            tol = Tolerance(args.tol)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_BAD_INPUT) from exc
        if args.steps < 2:
            raise CliError(f"--steps must be at least 2, got {args.steps}", EXIT_BAD_INPUT)
        return RunConfig(
            command=args.command,
            tol=tol,
            seed=args.seed,
            dims=dims,
            steps=args.steps,
            samples=args.samples,
            out=args.out,
            fmt=args.format,
            input=getattr(args, "input", None),
            phi0=getattr(args, "phi0", None),
            scheme=getattr(args, "scheme", None),
            state=getattr(args, "state", None),
            probe_init=getattr(args, "probe_init", None),
            name=getattr(args, "name", None),
            phase=getattr(args, "phase", 0.0),
            probe_control=getattr(args, "probe_control", False),
        )

    def require_dims(self) -> tuple[int, int]:
        if self.dims is None:
            raise CliError("--dims d1 d2 is required for this command", EXIT_BAD_INPUT)
        return self.dims


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_BAD_INPUT) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_BAD_INPUT) from exc


def _load_matrix(path: str) -> np.ndarray:
    try:
        return matrix_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{path} is not a valid matrix: {exc}", EXIT_BAD_INPUT) from exc


def _load_vector(path: str) -> np.ndarray:
    try:
        return vector_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{path} is not a valid vector: {exc}", EXIT_BAD_INPUT) from exc


def _report_header(claim: str, config: RunConfig) -> dict:
    return {
        "tool": "entkit",
        "version": verify.VERSION,
        "claim": claim,
        "tol": config.tol.eps,
        "seed": config.seed,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(report)
    if fmt == "text":
        lines = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(report.items())]
        return "\n".join(lines) + "\n"
    raise CliError(f"format {fmt!r} not supported for this command", EXIT_BAD_INPUT)


def cmd_classify(config: RunConfig) -> int:
    d1, d2 = config.require_dims()
    u = _load_matrix(config.input)
    try:
        form = classify_unitary(u, d1, d2, config.tol, config.seed)
    except DimensionError as exc:
        raise CliError(str(exc), EXIT_BAD_INPUT) from exc
    except NonUnitaryError as exc:
        raise CliError(f"{exc} (unitarity defect {exc.defect:.6e})", EXIT_NOT_UNITARY) from exc
    report = _report_header("theorem-classification", config)
    report["dims"] = [d1, d2]
    report["verdict"] = form.verdict
    if isinstance(form, Product):
        report["factors"] = {"v": matrix_to_json(form.v), "w": matrix_to_json(form.w)}
        report["reconstruction_error"] = reconstruction_error(form, u)
        report["witness"] = None
    elif isinstance(form, SwapForm):
        report["factors"] = {"v21": matrix_to_json(form.v21), "w12": matrix_to_json(form.w12)}
        report["reconstruction_error"] = reconstruction_error(form, u)
        report["witness"] = None
    else:
        report["factors"] = None
        report["reconstruction_error"] = None
        report["witness"] = {
            "input": state_to_json(form.input),
            "image": state_to_json(form.witness),
            "second_schmidt_coeff": form.second_coeff,
        }
    _emit(_render(report, config.fmt), config.out)
    return EXIT_OK


def cmd_slice(config: RunConfig) -> int:
    d1, d2 = config.require_dims()
    u = _load_matrix(config.input)
    phi0 = _load_vector(config.phi0)
    try:
        form = classify_slice(u, d1, d2, phi0, config.tol)
    except SliceHypothesisError as exc:
        raise CliError(f"{exc} (offending indices {exc.indices})", EXIT_HYPOTHESIS) from exc
    except NonUnitaryError as exc:
        raise CliError(str(exc), EXIT_NOT_UNITARY) from exc
    except (DimensionError, ValueError) as exc:
        raise CliError(str(exc), EXIT_BAD_INPUT) from exc
    report = _report_header("prop1-slice", config)
    report["dims"] = [d1, d2]
    report["form"] = form.form
    if isinstance(form, LocalOnObject):
        report["isometry"] = matrix_to_json(form.v)
    else:
        report["isometry"] = matrix_to_json(form.w12)
    report["phi_prime"] = vector_to_json(form.phi_prime)
    report["residual"] = slice_residual(form, u, d1, d2, phi0)
    _emit(_render(report, config.fmt), config.out)
    return EXIT_OK


def cmd_measure(config: RunConfig) -> int:
    raw = _load_json(config.scheme)
    try:
        scheme = scheme_from_json(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"invalid scheme: {exc}", EXIT_BAD_INPUT) from exc
    phi = _load_vector(config.state)
    try:
        scheme.check(config.tol)
        induced = measured_observable(scheme, config.tol)
        probs = outcome_probabilities(scheme, phi, config.tol)
        rho = DensityOperator.from_pure(phi)
        dist = disturbance(scheme, rho, config.tol)
    except InvalidPOVMError as exc:
        raise CliError(f"invalid POVM: {exc.report}", EXIT_HYPOTHESIS) from exc
    except ValueError as exc:
        # covers normalization, dimension and coupling-unitarity defects
        raise CliError(str(exc), EXIT_BAD_INPUT) from exc
    trivial, scalars = is_trivial_povm(induced, config.tol)
    report = _report_header("prob-reproducibility", config)
    report["outcomes"] = list(probs.labels)
    report["probabilities"] = [float(p) for p in probs.probabilities]
    report["measured_observable"] = povm_to_json(induced)
    report["trivial_observable"] = trivial
    report["trivial_scalars"] = scalars
    report["triviality_deviation"] = triviality_deviation(induced)
    report["disturbance"] = dist
    _emit(_render(report, config.fmt), config.out)
    return EXIT_OK


def cmd_path(config: RunConfig) -> int:
    d1, d2 = config.require_dims()
    u = _load_matrix(config.input)
    if config.probe_init:
        probe_init = _load_vector(config.probe_init)
    else:
        probe_init = np.eye(d2)[0]
    try:
        path = geodesic_path(u, d1, d2, config.tol)
        profile = entanglement_profile(
            path, probe_init, config.steps, config.seed, config.samples, config.tol
        )
    except NonUnitaryError as exc:
        raise CliError(str(exc), EXIT_NOT_UNITARY) from exc
    except (DimensionError, ValueError) as exc:
        raise CliError(str(exc), EXIT_BAD_INPUT) from exc
    best = profile.max_point()
    obstruction = any(
        pt.verdict == "entangling" for pt in profile.points if 0.0 < pt.t < 1.0
    )
    summary = (
        f"max entropy {best.max_entropy_bits:.6f} bits at t={best.t} "
        f"({best.maximizing_input_id}); interior entangling point witnessed: {obstruction}"
    )
    print(summary, file=sys.stderr)
    if config.fmt == "csv":
        _emit(profile_csv(profile.points), config.out)
        return EXIT_OK
    report = _report_header("swap-obstruction", config)
    report["dims"] = [d1, d2]
    report["n_steps"] = config.steps
    report["max_entropy_bits"] = best.max_entropy_bits
    report["max_entropy_t"] = best.t
    report["max_entropy_input_id"] = best.maximizing_input_id
    report["max_entropy_input"] = vector_to_json(best.maximizing_input)
    report["interior_entangling_witnessed"] = obstruction
    report["profile"] = [
        {
            "t": pt.t,
            "max_entropy_bits": pt.max_entropy_bits,
            "op_schmidt_rank": pt.op_schmidt_rank,
            "verdict": pt.verdict,
            "maximizing_input_id": pt.maximizing_input_id,
            "maximizing_input": vector_to_json(pt.maximizing_input),
        }
        for pt in profile.points
    ]
    _emit(_render(report, config.fmt), config.out)
    if config.out:
        # the grid data also lands next to the report as CSV
        base = config.out[: -len(".json")] if config.out.endswith(".json") else config.out
        write_atomic(base + ".csv", profile_csv(profile.points))
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = verify.run_all(config.seed, config.tol)
    _emit(_render(report, config.fmt), config.out)
    return EXIT_OK if report["passed"] else EXIT_SUITE_FAILURE


def cmd_gen(config: RunConfig) -> int:
    d1, d2 = config.dims if config.dims else (2, 2)
    seed = config.seed
    name = config.name
    if name == "identity":
        obj = matrix_to_json(np.eye(d1 * d2))
    elif name == "swap":
        if d1 != d2:
            raise CliError("swap requires equal dimensions", EXIT_BAD_INPUT)
        obj = matrix_to_json(swap_unitary(d1))
    elif name == "cnot":
        obj = matrix_to_json(fixtures.cnot(control_on_object=not config.probe_control))
    elif name == "controlled-phase":
        obj = matrix_to_json(fixtures.controlled_phase(config.phase, d1, d2))
    elif name == "haar":
        obj = matrix_to_json(haar_unitary(d1 * d2, seed))
    elif name == "haar-product":
        u, _, _ = fixtures.haar_product(d1, d2, seed)
        obj = matrix_to_json(u)
    elif name == "dressed-swap":
        if d1 != d2:
            raise CliError("dressed-swap requires equal dimensions", EXIT_BAD_INPUT)
        u, _, _ = fixtures.dressed_swap(d1, seed)
        obj = matrix_to_json(u)
    elif name == "random-state":
        obj = vector_to_json(random_state(d1, seed))
    elif name == "projective-povm":
        obj = povm_to_json(fixtures.projective_povm(d1))
    elif name == "trine-povm":
        obj = povm_to_json(fixtures.trine_povm())
    elif name == "random-povm":
        obj = povm_to_json(fixtures.random_povm(d1, max(2, config.samples), seed))
    elif name == "swap-scheme":
        if d1 != d2:
            raise CliError("swap-scheme requires equal dimensions", EXIT_BAD_INPUT)
        pointer = fixtures.projective_povm(d1)
        phi0 = np.eye(d1)[0]
        obj = scheme_to_json(swap_scheme(pointer, phi0))
    else:
        raise CliError(f"unknown fixture name {name!r}", EXIT_BAD_INPUT)
    _emit(canonical_json(obj), config.out)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "slice": cmd_slice,
    "measure": cmd_measure,
    "path": cmd_path,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entkit",
        description="Bipartite toolkit: non-entangling unitary classification, "
        "measurement schemes, entanglement dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance")
        p.add_argument(
            "--seed", type=int, default=DEFAULT_SEED,
            help="RNG seed (default 0xB05C for reproducible unseeded runs)",
        )
        p.add_argument("--dims", type=int, nargs=2, metavar=("D1", "D2"), default=None)
        p.add_argument("--steps", type=int, default=64, help="path grid intervals")
        p.add_argument("--samples", type=int, default=8, help="random input count")
        p.add_argument("--out", default=None, help="output path (stdout if absent)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("classify", help="classify a bipartite unitary")
    p.add_argument("input", help="matrix JSON file")
    add_common(p)

    p = sub.add_parser("slice", help="classify the action on a fixed probe slice")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--phi0", required=True, help="probe vector JSON file")
    add_common(p)

    p = sub.add_parser("measure", help="evaluate a measurement scheme on a state")
    p.add_argument("--scheme", required=True, help="scheme JSON file")
    p.add_argument("--state", required=True, help="object state JSON file")
    add_common(p)

    p = sub.add_parser("path", help="entanglement profile along the path to a coupling")
    p.add_argument("input", help="endpoint matrix JSON file")
    p.add_argument("--probe-init", default=None, help="probe vector JSON file")
    add_common(p)

    p = sub.add_parser("verify", help="run the full invariant corpus")
    add_common(p)

    p = sub.add_parser("gen", help="emit a named fixture as JSON")
    p.add_argument(
        "name",
        help="identity | swap | cnot | controlled-phase | haar | haar-product | "
        "dressed-swap | random-state | projective-povm | trine-povm | "
        "random-povm | swap-scheme",
    )
    p.add_argument("--phase", type=float, default=float(np.pi) / 2)
    p.add_argument("--probe-control", action="store_true")
    add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SlicePatternError, WitnessSearchError) as exc:
        # numerical breakdown, typically a misconfigured tolerance
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SUITE_FAILURE


if __name__ == "__main__":
    sys.exit(main())
