"""Command-line front end: JSON sum documents in, JSON reports (and CSV
traces) out.

Exit codes: 0 success, 1 mathematical negative (e.g. a NotEquivalent or
Undecidable verdict), 2 usage or schema error, 3 search budget exhausted.
Reports never embed timestamps, so identical inputs with identical seeds
produce byte-identical output; the APTK_SEED environment variable supplies
the default seed.  Phases are serialized as exact "p/q" turn strings
whenever they are exact, which preserves decidability across save/load.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

from . import __version__
from .besic import b2_distance_exact, fourier_coefficient, mean_value_estimate
from .errors import (
    AptkError,
    BudgetExhaustedError,
    DuplicateFrequencyError,
    NegativeModulusError,
    NotEquivalentFamilyError,
    NotEquivalentInputError,
    SchemaError,
)
from .fejer import approximant, approximation_error, fejer_factors
from .freq import AtomTable, BasisInfo, FrequencySet, integralize, natural_basis
from .search import (
    dense_translate_sequence,
    enumerate_taus,
    extract_convergent_subsequence,
    find_tau,
    uniform_set_check,
)
from .sums import (
    Coefficient,
    ExponentialSum,
    PhaseTurns,
    Witness,
    decide_equivalence,
    deviation,
    sample_equivalent,
    translate,
    witness_natural_form,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# Sum document (de)serialization
# ---------------------------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(Fraction(f))


def _parse_exact(value, field: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError("expected an exact rational, got a boolean", field=field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"not a valid rational: {value!r}", field=field) from e
    raise SchemaError(
        f"expected an int or 'p/q' string, got {type(value).__name__}", field=field
    )


def parse_sum_document(doc: dict) -> tuple[ExponentialSum, AtomTable]:
    """Validate and load a sum document. See the README for the schema."""
    if not isinstance(doc, dict):
        raise SchemaError("document root must be an object")
    atoms_spec = doc.get("atoms")
    if not isinstance(atoms_spec, list) or not atoms_spec:
        raise SchemaError("required: nonempty list", field="atoms")
    names, values, have_values = [], {}, 0
    for i, entry in enumerate(atoms_spec):
        if not isinstance(entry, dict) or "name" not in entry:
            raise SchemaError("each atom needs a 'name'", field=f"atoms[{i}]")
        name = entry["name"]
        if not isinstance(name, str) or name in names:
            raise SchemaError("atom names must be distinct strings", field=f"atoms[{i}].name")
        names.append(name)
        if "value" in entry:
            v = entry["value"]
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise SchemaError("atom value must be a finite number", field=f"atoms[{i}].value")
            values[name] = float(v)
            have_values += 1
    if have_values not in (0, len(names)):
        raise SchemaError("either every atom or no atom may carry a numeric value", field="atoms")
    table = AtomTable(tuple(names), values if have_values else None)

    freq_spec = doc.get("frequencies")
    if not isinstance(freq_spec, list) or not freq_spec:
        raise SchemaError("required: nonempty list of coordinate vectors", field="frequencies")
    rows = []
    for i, vec in enumerate(freq_spec):
        if not isinstance(vec, list) or len(vec) != len(names):
            raise SchemaError(
                f"expected a vector of {len(names)} rationals", field=f"frequencies[{i}]"
            )
        rows.append(tuple(_parse_exact(c, f"frequencies[{i}][{k}]") for k, c in enumerate(vec)))
    if len(set(rows)) != len(rows):
        raise DuplicateFrequencyError("duplicate frequency rows", field="frequencies")

    coeff_spec = doc.get("coefficients")
    if not isinstance(coeff_spec, list) or len(coeff_spec) != len(rows):
        raise SchemaError("must align with frequencies", field="coefficients")
    coeffs = []
    for i, entry in enumerate(coeff_spec):
        if not isinstance(entry, dict):
            raise SchemaError("each coefficient must be an object", field=f"coefficients[{i}]")
        modulus = entry.get("modulus")
        if not isinstance(modulus, (int, float)) or isinstance(modulus, bool) or not math.isfinite(modulus):
            raise SchemaError("modulus must be a finite number", field=f"coefficients[{i}].modulus")
        if modulus < 0:
            raise NegativeModulusError("modulus must be nonnegative", field=f"coefficients[{i}].modulus")
        phase = entry.get("phase_turns", 0)
        field = f"coefficients[{i}].phase_turns"
        if isinstance(phase, bool):
            raise SchemaError("phase must be a rational string or a number", field=field)
        if isinstance(phase, (str, int)):
            p = PhaseTurns.from_fraction(_parse_exact(phase, field))
        elif isinstance(phase, float):
            if not math.isfinite(phase):
                raise SchemaError("phase must be finite", field=field)
            p = PhaseTurns.from_float(phase)  # decimals are approximate by convention
        else:
            raise SchemaError("phase must be a rational string or a number", field=field)
        coeffs.append(Coefficient(float(modulus), p))

    tail = doc.get("tail_energy", 0.0)
    if not isinstance(tail, (int, float)) or isinstance(tail, bool) or not math.isfinite(tail) or tail < 0:
        raise SchemaError("tail_energy must be a nonnegative finite number", field="tail_energy")
    fs = FrequencySet.from_coords(rows)
    return ExponentialSum(fs, tuple(coeffs), float(tail)), table


def sum_to_document(f: ExponentialSum, atoms: AtomTable) -> dict:
    atom_entries = []
    for name in atoms.names:
        entry = {"name": name}
        if atoms.values is not None:
            entry["value"] = float(atoms.values[name])
        atom_entries.append(entry)
    return {
        "atoms": atom_entries,
        "frequencies": [[_frac_str(c) for c in fr.coords] for fr in f.freqs],
        "coefficients": [
            {
                "modulus": c.modulus,
                "phase_turns": _frac_str(c.phase.exact) if c.phase.is_exact else c.phase.approx,
            }
            for c in f.coeffs
        ],
        "tail_energy": f.tail_energy,
    }


def _load_sum(path: str) -> tuple[ExponentialSum, AtomTable]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON (line {e.lineno}, column {e.colno})") from e
    return parse_sum_document(doc)


def _basis_to_json(info: BasisInfo) -> dict:
    out = {
        "elements": [[_frac_str(c) for c in g.coords] for g in info.basis],
        "coord_matrix": [[_frac_str(c) for c in row] for row in info.coord_matrix],
        "is_integral": info.is_integral,
        "lcm_q": info.lcm_q,
    }
    if info.basis_indices is not None:
        out["basis_indices"] = list(info.basis_indices)
    if info.column_scales is not None:
        out["column_scales"] = list(info.column_scales)
    return out


def _witness_to_json(w: Witness) -> dict:
    return {
        "x_turns": [
            _frac_str(p.exact) if p.is_exact else p.approx for p in w.x
        ],
        "prefix_n": w.prefix_n,
        "basis": _basis_to_json(w.basis_ref),
    }


def _complex_to_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_report(report: dict, out_path: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        _write_atomic(out_path, text)
    else:
        sys.stdout.write(text)


def _emit_csv(path: str, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_atomic(path, buf.getvalue())


def _default_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("APTK_SEED")
    return int(env) if env else 0


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_basis(args) -> int:
    f, _ = _load_sum(args.sum)
    info = natural_basis(f.freqs)
    _emit_report({"command": "basis", "basis": _basis_to_json(info)}, args.output)
    return EXIT_OK


def _cmd_integralize(args) -> int:
    f, _ = _load_sum(args.sum)
    info = integralize(natural_basis(f.freqs))
    _emit_report({"command": "integralize", "basis": _basis_to_json(info)}, args.output)
    return EXIT_OK


def _verdict_to_json(v) -> dict:
    out = {"status": v.status, "mode": v.mode}
    if v.witnesses:
        out["witnesses"] = [_witness_to_json(w) for w in v.witnesses]
    if v.obstruction is not None:
        obs = {"kind": v.obstruction.kind}
        if v.obstruction.index is not None:
            obs["index"] = v.obstruction.index
        if v.obstruction.relation is not None:
            obs["relation"] = list(v.obstruction.relation)
            obs["value"] = _frac_str(v.obstruction.value)
        out["obstruction"] = obs
    if v.reason is not None:
        out["reason"] = v.reason
    if v.residual is not None:
        out["residual"] = v.residual
    return out


def _cmd_equiv(args) -> int:
    a, _ = _load_sum(args.a)
    b, _ = _load_sum(args.b)
    mode = "tolerance" if args.mode == "tol" else "exact"
    verdict = decide_equivalence(
        a, b, mode=mode, eps_phase=args.eps_phase, max_denominator=args.max_denom
    )
    _emit_report({"command": "equiv", "verdict": _verdict_to_json(verdict)}, args.output)
    return EXIT_OK if verdict.is_equivalent else EXIT_NEGATIVE


def _cmd_witness(args) -> int:
    a, _ = _load_sum(args.a)
    b, _ = _load_sum(args.b)
    witness, shifts = witness_natural_form(a, b)
    report = {
        "command": "witness",
        "x0_turns": [_frac_str(p.exact) for p in witness.x],
        "lattice_shifts": [list(p) for p in shifts],
        "basis": _basis_to_json(witness.basis_ref),
    }
    _emit_report(report, args.output)
    return EXIT_OK


def _cmd_sample(args) -> int:
    f, atoms = _load_sum(args.sum)
    seed = _default_seed(args.seed)
    g = sample_equivalent(f, seed)
    doc = sum_to_document(g, atoms)
    _emit_report({"command": "sample", "seed": seed, "sum": doc}, args.output)
    if args.emit:
        _write_atomic(args.emit, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _cmd_translate(args) -> int:
    f, atoms = _load_sum(args.sum)
    g = translate(f, args.tau, atoms)
    doc = sum_to_document(g, atoms)
    _emit_report({"command": "translate", "tau": args.tau, "sum": doc}, args.output)
    if args.emit:
        _write_atomic(args.emit, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _cmd_b2dist(args) -> int:
    a, _ = _load_sum(args.a)
    b, _ = _load_sum(args.b)
    dist = b2_distance_exact(a, b)
    report = {
        "command": "b2dist",
        "distance": dist,
        "upper_bound": bool(a.tail_energy > 0 or b.tail_energy > 0),
    }
    _emit_report(report, args.output)
    return EXIT_OK


def _cmd_mean(args) -> int:
    f, atoms = _load_sum(args.sum)
    schedule = [float(x) for x in args.schedule.split(",")]
    signal = lambda t: f.evaluate(t, atoms)  # noqa: E731
    entries = []
    for freq in f.freqs:
        est = mean_value_estimate(signal, freq, atoms, schedule)
        entries.append(
            {
                "frequency": [_frac_str(c) for c in freq.coords],
                "exact_coefficient": _complex_to_json(fourier_coefficient(f, freq)),
                "estimate": _complex_to_json(est.value),
                "estimates": [_complex_to_json(e) for e in est.estimates],
                "residuals": list(est.residuals),
            }
        )
    report = {"command": "mean", "schedule": schedule, "coefficients": entries}
    _emit_report(report, args.output)
    return EXIT_OK


def _cmd_fejer(args) -> int:
    f, _ = _load_sum(args.sum)
    info = natural_basis(f.freqs)
    if not info.is_integral:
        info = integralize(info)
    orders = [int(x) for x in args.orders.split(",")]
    scheme = fejer_factors(info, orders)
    damped = approximant(f, scheme)
    report = {
        "command": "fejer",
        "orders": orders,
        "factors": {str(j): _frac_str(p) for j, p in sorted(scheme.factors.items())},
        "approximation_error": approximation_error(f, scheme),
        "approximant_moduli": [c.modulus for c in damped.coeffs],
    }
    _emit_report(report, args.output)
    return EXIT_OK


def _cert_to_json(cert) -> dict:
    return {
        "tau": cert.tau,
        "deviation": cert.deviation,
        "target_eps": cert.target_eps,
        "lower_bound_d": cert.lower_bound_d,
        "evaluations": cert.evaluations,
        "strategy": cert.strategy,
    }


def _cmd_find_tau(args) -> int:
    a, atoms = _load_sum(args.a)
    b, _ = _load_sum(args.b)
    cert = find_tau(a, b, atoms, d=args.d, eps=args.eps, budget=args.budget, strategy=args.strategy)
    _emit_report({"command": "find-tau", "certificate": _cert_to_json(cert)}, args.output)
    return EXIT_OK


def _cmd_enumerate_taus(args) -> int:
    a, atoms = _load_sum(args.a)
    b, _ = _load_sum(args.b)
    t0, t1 = (float(x) for x in args.range.split(","))
    taus, report = enumerate_taus(a, b, atoms, eps=args.eps, t_range=(t0, t1), max_count=args.max_count)
    payload = {
        "command": "enumerate-taus",
        "eps": args.eps,
        "range": [t0, t1],
        "taus": taus,
        "density": {
            "interval_length_l": report.interval_length_l,
            "window_count": report.window_count,
            "taus_per_window": list(report.taus_per_window),
            "max_gap": report.max_gap,
        },
    }
    _emit_report(payload, args.output)
    if args.csv:
        rows = [[t, deviation(a, b, atoms, t)] for t in taus]
        _emit_csv(args.csv, ["tau", "deviation"], rows)
    return EXIT_OK


def _cmd_dense_translates(args) -> int:
    f, atoms = _load_sum(args.f)
    h, _ = _load_sum(args.h)
    run = dense_translate_sequence(f, h, atoms, n_max=args.nmax, strategy=args.strategy)
    payload = {
        "command": "dense-translates",
        "taus": list(run.taus),
        "eps_sequence": list(run.eps_sequence),
        "certified_bounds": [
            {"measured_mean_square": m, "bound_5eps": b} for m, b in run.certified_bounds
        ],
    }
    _emit_report(payload, args.output)
    if args.csv:
        rows = [
            [n + 1, run.taus[n], run.certified_bounds[n][0], run.certified_bounds[n][1]]
            for n in range(len(run.taus))
        ]
        _emit_csv(args.csv, ["n", "tau", "measured_mean_square", "bound_5eps"], rows)
    return EXIT_OK


def _cmd_uniform_check(args) -> int:
    try:
        with open(args.taus, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"cannot read tau list from {args.taus}: {e}") from e
    if isinstance(data, dict):
        data = data.get("taus", data.get("result", {}).get("taus"))
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) for x in data):
        raise SchemaError("expected a JSON array of numbers or an object with a 'taus' array")
    ratio = uniform_set_check(sorted(float(x) for x in data), args.l)
    _emit_report(
        {"command": "uniform-check", "l": args.l, "ratio": ratio if math.isfinite(ratio) else "inf"},
        args.output,
    )
    return EXIT_OK


def _cmd_compact_extract(args) -> int:
    sums = []
    atoms = None
    for path in args.sums:
        f, table = _load_sum(path)
        sums.append(f)
        atoms = atoms or table
    indices, limit = extract_convergent_subsequence(sums, tol=args.tol)
    payload = {
        "command": "compact-extract",
        "indices": indices,
        "limit": sum_to_document(limit, atoms),
    }
    _emit_report(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aptk",
        description="Exact equivalence decisions and translation-number search for exponential sums",
    )
    parser.add_argument("--version", action="version", version=f"aptk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        return p

    p = add("basis", _cmd_basis, help="natural basis and exact coordinates")
    p.add_argument("sum")

    p = add("integralize", _cmd_integralize, help="integral basis via per-column rescaling")
    p.add_argument("sum")

    p = add("equiv", _cmd_equiv, help="decide Bohr equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=["exact", "tol"], default="exact")
    p.add_argument("--eps-phase", type=float, default=1e-9, dest="eps_phase")
    p.add_argument("--max-denom", type=int, default=10**6, dest="max_denom")

    p = add("witness", _cmd_witness, help="natural-basis witness with integer lattice shifts")
    p.add_argument("a")
    p.add_argument("b")

    p = add("sample", _cmd_sample, help="draw a random equivalent sum")
    p.add_argument("sum")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit", help="also write the sampled sum document to this path")

    p = add("translate", _cmd_translate, help="time translate f(t+tau)")
    p.add_argument("sum")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--emit", help="also write the translated sum document to this path")

    p = add("b2dist", _cmd_b2dist, help="exact B^2 distance via Parseval")
    p.add_argument("a")
    p.add_argument("b")

    p = add("mean", _cmd_mean, help="mean-value estimates against exact coefficients")
    p.add_argument("sum")
    p.add_argument("--schedule", default="100,1000")

    p = add("fejer", _cmd_fejer, help="composite kernel damping factors and approximant")
    p.add_argument("sum")
    p.add_argument("--orders", required=True)

    p = add("find-tau", _cmd_find_tau, help="find a translation number tau > d with D(tau) < eps")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--budget", type=int, default=50_000_000)
    p.add_argument("--strategy", choices=["auto", "scan", "lattice"], default="auto")

    p = add("enumerate-taus", _cmd_enumerate_taus, help="all sub-eps translation numbers in a range")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--range", required=True, help="T0,T1")
    p.add_argument("--max-count", type=int, default=100_000, dest="max_count")
    p.add_argument("--csv", help="write tau vs deviation trace here")

    p = add("dense-translates", _cmd_dense_translates, help="increasing taus with 5*eps_n certificates")
    p.add_argument("f")
    p.add_argument("h")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--strategy", choices=["auto", "scan", "lattice"], default="auto")
    p.add_argument("--csv", help="write n vs measured/bound trace here")

    p = add("uniform-check", _cmd_uniform_check, help="max/min window-count ratio of a tau set")
    p.add_argument("taus", help="JSON file with an array of taus (or a report containing one)")
    p.add_argument("--l", type=float, required=True)

    p = add("compact-extract", _cmd_compact_extract, help="convergent subsequence of equivalent sums")
    p.add_argument("sums", nargs="+")
    p.add_argument("--tol", type=float, required=True)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help/--version.
        return int(e.code) if e.code else EXIT_OK
    try:
        return args.handler(args)
    except BudgetExhaustedError as e:
        report = {
            "command": args.command,
            "error": "budget_exhausted",
            "message": str(e),
            "best_tau": e.best_tau,
            "best_deviation": e.best_deviation,
            "evaluations": e.evaluations,
        }
        _emit_report(report, getattr(args, "output", None))
        return EXIT_BUDGET
    except (NotEquivalentInputError, NotEquivalentFamilyError) as e:
        _emit_report(
            {"command": args.command, "error": "not_equivalent", "message": str(e)},
            getattr(args, "output", None),
        )
        return EXIT_NEGATIVE
    except AptkError as e:
        print(f"aptk {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"aptk {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
