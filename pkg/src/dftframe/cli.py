"""Command-line surface: frame analysis, coset enumeration, simulation,
reference tables, and the verification sweep.

Subcommands: analyze, cosets, simulate, table1, table2, verify.  All row
indices on the command line are 1-based; patterns use '×' for systematic
rows and '-' for parity ('x' is accepted as an ASCII alias).  Exit codes:
0 success, 1 failed verification, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DftframeError, InvalidArgumentError
from .frames import FrameSpec, REAL_BCH, VARIANTS, generator
from .spectra import (
    IndexSet,
    default_thread_count,
    det_gram_product_formula,
    gram_spectrum,
    sampled_sweep,
    sine_product_identity_residual,
    theorem_sweep,
    verify_bounds,
)
from .systematic import (
    codeword_variance,
    distance_profile,
    is_tight,
    optimal_index_set,
    systematic_frame,
)
from .cosets import count_bounds, enumerate_cosets
from .codec import (
    QUANTIZE_ONLY,
    QUANTIZE_PLUS_ERASURE,
    QUANTIZE_PLUS_ERROR,
    Quantizer,
    Scenario,
    run_simulation,
)

CROSS = "×"
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2

# Reference row selections reproduced by `table1`, in presentation order.
TABLE1_SECTIONS: Tuple[Tuple[int, int, Tuple[Tuple[int, ...], ...]], ...] = (
    (6, 3, ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 5))),
    (7, 5, ((1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 4, 5, 7), (1, 3, 4, 5, 7))),
    (10, 5, ((1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 4, 7), (1, 2, 3, 5, 9),
             (1, 2, 3, 6, 7), (1, 2, 3, 5, 7), (1, 2, 3, 6, 9), (1, 2, 3, 6, 8),
             (1, 2, 4, 5, 8), (1, 2, 5, 6, 9), (1, 2, 4, 6, 9), (1, 3, 5, 7, 10),
             (1, 3, 5, 7, 9))),
)

# Leader display order for `table2` (the (7,3) catalog).
TABLE2_LEADERS: Tuple[Tuple[int, ...], ...] = (
    (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 5), (1, 3, 4))


# ============================================================
# Pattern and argument helpers
# ============================================================

def pattern_to_rows(pattern: str) -> IndexSet:
    """Parse '××-×--' (or ASCII 'xx-x--') into a 1-based index set."""
    indices = []
    for i, ch in enumerate(pattern):
        if ch in (CROSS, "x", "X"):
            indices.append(i + 1)
        elif ch != "-":
            raise InvalidArgumentError(
                f"pattern may contain only '{CROSS}', 'x', and '-', got {ch!r}")
    if not indices:
        raise InvalidArgumentError("pattern selects no rows")
    return IndexSet(n=len(pattern), indices=tuple(indices))


def rows_to_pattern(rows: IndexSet) -> str:
    return "".join(CROSS if i in rows.indices else "-" for i in range(1, rows.n + 1))


def _parse_int_list(text: str, what: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise InvalidArgumentError(f"{what} must be a comma-separated integer list, got {text!r}")


def _rows_from_args(args, n: int) -> IndexSet:
    given_rows = getattr(args, "rows", None)
    given_pattern = getattr(args, "pattern", None)
    if given_rows is not None and given_pattern is not None:
        raise InvalidArgumentError("pass either --rows or --pattern, not both")
    if given_pattern is not None:
        rows = pattern_to_rows(given_pattern)
        if rows.n != n:
            raise InvalidArgumentError(
                f"pattern length {rows.n} does not match n={n}")
        return rows
    if given_rows is None:
        raise InvalidArgumentError("one of --rows or --pattern is required")
    return IndexSet(n=n, indices=_parse_int_list(given_rows, "--rows"))


def _frame_spec_from_args(args) -> FrameSpec:
    if args.n is None or args.k is None:
        raise InvalidArgumentError("--n and --k are required")
    zero_rows = None
    if getattr(args, "zero_rows", None) is not None:
        zero_rows = tuple(i - 1 for i in _parse_int_list(args.zero_rows, "--zero-rows"))
    return FrameSpec(n=args.n, k=args.k, variant=args.variant or REAL_BCH,
                     zero_rows=zero_rows)


def load_config(path: str) -> dict:
    """Read a TOML or JSON config file (chosen by extension, then content)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read config {path}: {exc}") from exc
    if path.endswith(".json"):
        return json.loads(raw.decode("utf-8"))
    try:
        import tomllib  # Python 3.11+
    except ModuleNotFoundError:
        import tomli as tomllib
    if path.endswith(".toml"):
        return tomllib.loads(raw.decode("utf-8"))
    try:
        return json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError:
        try:
            return tomllib.loads(raw.decode("utf-8"))
        except Exception:
            raise InvalidArgumentError(f"could not parse {path} as JSON or TOML")


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _fmt4(v) -> str:
    """Four-decimal display, switching to scientific for tiny magnitudes."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    x = float(v)
    if x != 0.0 and abs(x) < 1e-3:
        return f"{x:.4e}"
    return f"{x:.4f}"


def _csv_text(fieldnames: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


# ============================================================
# analyze
# ============================================================

def cmd_analyze(args) -> int:
    spec = _frame_spec_from_args(args)
    gen = generator(spec)
    rows = _rows_from_args(args, spec.n)
    sp = gram_spectrum(gen, rows)
    bounds = verify_bounds(spec, rows, gen=gen)
    profile = distance_profile(rows)

    doc = {
        "n": spec.n,
        "k": spec.k,
        "variant": spec.variant,
        "rows": list(rows.indices),
        "pattern": rows_to_pattern(rows),
        "spectrum": sp.to_json(),
        "distance": profile.to_json(),
        "bounds": [b.to_json() for b in bounds],
    }
    tight = None
    variance_factor = None
    if len(rows) == spec.k:
        frame = systematic_frame(gen, rows)
        tight = is_tight(frame)
        variance_factor = frame.variance_factor
        doc["tight"] = tight
        doc["variance_factor"] = variance_factor
        doc["codeword_variance_unit_source"] = codeword_variance(frame, 1.0)

    if args.format == "json":
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        row = {
            "n": spec.n, "k": spec.k, "variant": spec.variant,
            "rows": " ".join(str(i) for i in rows.indices),
            "pattern": doc["pattern"],
            "lambda_min": _fmt4(sp.lambda_min),
            "lambda_max": _fmt4(sp.lambda_max),
            "sum_reciprocal": _fmt4(sp.sum_reciprocal),
            "product": _fmt4(sp.product),
            "d_min": profile.d_min,
            "tight": "" if tight is None else str(tight).lower(),
            "variance_factor": "" if variance_factor is None else _fmt4(variance_factor),
        }
        _emit(args, _csv_text(list(row.keys()), [row]))
    else:
        lines = [
            f"frame n={spec.n} k={spec.k} variant={spec.variant}",
            f"rows {{{', '.join(str(i) for i in rows.indices)}}}  pattern {doc['pattern']}",
            "eigenvalues: " + ", ".join(f"{v:.6f}" for v in sp.eigenvalues),
            f"lambda_min {sp.lambda_min:.6f}  lambda_max {sp.lambda_max:.6f}",
            f"sum {sp.sum:.6f}  sum_reciprocal {sp.sum_reciprocal:.6f}  product {sp.product:.6e}",
            f"gaps ({', '.join(str(g) for g in profile.gaps)})  d_min {profile.d_min}",
        ]
        if tight is not None:
            lines.append(f"tight {str(tight).lower()}  variance_factor {variance_factor:.6f}")
        lines.append("bounds:")
        for b in bounds:
            status = "PASS" if b.holds else "FAIL"
            witness = ", ".join(f"{k_}={_fmt4(v)}" for k_, v in b.witness.items())
            lines.append(f"  [{status}] {b.bound}: {witness}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if all(b.holds for b in bounds) else EXIT_VERIFY_FAILED


# ============================================================
# cosets
# ============================================================

def cmd_cosets(args) -> int:
    if args.n is None or args.k is None:
        raise InvalidArgumentError("--n and --k are required")
    catalog = enumerate_cosets(args.n, args.k, merge_reversal=args.merge_reversal)
    lower, upper = count_bounds(args.n, args.k)
    if args.format == "json":
        doc = catalog.to_json()
        doc["count_bounds"] = {"lower": lower, "upper": upper}
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        rows = catalog.to_csv_rows()
        _emit(args, _csv_text(["leader", "members", "distance_cycle", "weight", "eigenvalues"], rows))
    else:
        lines = [
            f"cosets of k={args.k} subsets of [1,{args.n}]"
            f" (reversal {'merged' if args.merge_reversal else 'not merged'})",
            f"count {catalog.count}  spectral classes {catalog.spectral_class_count}"
            f"  bounds ({lower:.4f}, {upper:.4f}]",
        ]
        for c in catalog.cosets:
            lines.append(
                f"  leader {{{', '.join(str(i) for i in c.leader.indices)}}}"
                f"  members {c.size}"
                f"  distances ({','.join(str(d) for d in c.distance_cycle)})"
                f"  weight {c.weight}"
                f"  eigenvalues {', '.join(f'{v:.4f}' for v in c.spectrum.eigenvalues)}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


# ============================================================
# simulate
# ============================================================

_SCENARIO_ALIASES = {
    "quantize": QUANTIZE_ONLY,
    "error": QUANTIZE_PLUS_ERROR,
    "erasure": QUANTIZE_PLUS_ERASURE,
    QUANTIZE_ONLY: QUANTIZE_ONLY,
    QUANTIZE_PLUS_ERROR: QUANTIZE_PLUS_ERROR,
    QUANTIZE_PLUS_ERASURE: QUANTIZE_PLUS_ERASURE,
}


def _cfg_get(cfg: dict, *path, default=None):
    node = cfg
    for part in path:
        if not isinstance(node, dict) or part not in node:
            return default
        node = node[part]
    return node


def cmd_simulate(args) -> int:
    cfg = load_config(args.config) if args.config else {}

    def pick(value, *path, default=None):
        return value if value is not None else _cfg_get(cfg, *path, default=default)

    n = pick(args.n, "frame", "n")
    k = pick(args.k, "frame", "k")
    if n is None or k is None:
        raise InvalidArgumentError("--n and --k are required (flags or config)")
    variant = pick(args.variant, "frame", "variant", default=REAL_BCH)
    spec = FrameSpec(n=int(n), k=int(k), variant=variant)
    gen = generator(spec)

    cfg_rows = _cfg_get(cfg, "frame", "rows")
    if args.rows is not None:
        rows = IndexSet(n=spec.n, indices=_parse_int_list(args.rows, "--rows"))
    elif cfg_rows is not None:
        rows = IndexSet(n=spec.n, indices=tuple(int(i) for i in cfg_rows))
    else:
        rows = optimal_index_set(spec.n, spec.k)
    frame = systematic_frame(gen, rows)

    sigma_x = float(pick(args.sigma_x, "scenario", "sigma_x", default=1.0))
    levels = int(pick(args.levels, "quantizer", "levels", default=64))
    spread = float(pick(args.spread, "quantizer", "spread", default=4.0))
    step = pick(args.step, "quantizer", "step")
    if step is not None:
        quantizer = Quantizer(step=float(step), levels=levels)
    else:
        sigma_y = math.sqrt(codeword_variance(frame, sigma_x))
        quantizer = Quantizer.for_sigma(sigma_y, levels=levels, spread=spread)

    kind_text = pick(args.scenario, "scenario", "kind", default="quantize")
    if kind_text not in _SCENARIO_ALIASES:
        raise InvalidArgumentError(
            f"unknown scenario {kind_text!r}; expected one of {sorted(set(_SCENARIO_ALIASES))}")
    kind = _SCENARIO_ALIASES[kind_text]

    nu = int(pick(args.nu, "scenario", "nu", default=1 if kind == QUANTIZE_PLUS_ERROR else 0))
    sigma_e_sq = pick(args.sigma_e_sq, "scenario", "sigma_e_sq")
    if sigma_e_sq is None and kind == QUANTIZE_PLUS_ERROR:
        sigma_e_sq = 10.0 * quantizer.sigma_q_sq
    cfg_erased = _cfg_get(cfg, "scenario", "erased")
    erased = None
    if args.erased is not None:
        erased = IndexSet(n=spec.n, indices=_parse_int_list(args.erased, "--erased"))
    elif cfg_erased is not None:
        erased = IndexSet(n=spec.n, indices=tuple(int(i) for i in cfg_erased))
    if kind == QUANTIZE_PLUS_ERASURE and erased is None:
        raise InvalidArgumentError("erasure scenario needs --erased positions")

    poisson = True if args.poisson else bool(
        _cfg_get(cfg, "scenario", "poisson_errors", default=False))
    refine = False if args.no_refine else bool(
        _cfg_get(cfg, "scenario", "refine", default=True))
    scenario = Scenario(
        kind=kind,
        sigma_x=sigma_x,
        nu=nu,
        sigma_e_sq=float(sigma_e_sq) if sigma_e_sq is not None else 0.0,
        poisson_errors=poisson,
        erased=erased,
        refine=refine,
    )
    trials = int(pick(args.trials, "trials", default=200000))
    seed = int(pick(args.seed, "seed", default=12345))

    report = run_simulation(frame, scenario, quantizer, trials=trials, seed=seed)
    doc = report.to_json()
    doc["frame"] = {
        "n": spec.n, "k": spec.k, "variant": spec.variant,
        "rows": list(rows.indices), "pattern": rows_to_pattern(rows),
        "tight": is_tight(frame),
    }
    if args.format == "json":
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        row = {
            "kind": scenario.kind,
            "n": spec.n, "k": spec.k,
            "rows": " ".join(str(i) for i in rows.indices),
            "trials": trials, "seed": seed,
            "empirical_mse": f"{report.empirical_mse:.6e}",
            "predicted_mse": f"{report.predicted_mse:.6e}",
            "ratio": f"{report.ratio:.4f}",
            "overflow_rate": f"{report.overflow_rate:.6f}",
            "refined_empirical_mse": ("" if report.refined_empirical_mse is None
                                      else f"{report.refined_empirical_mse:.6e}"),
        }
        _emit(args, _csv_text(list(row.keys()), [row]))
    else:
        lines = [
            f"simulation {scenario.kind}  frame n={spec.n} k={spec.k} rows "
            f"{{{', '.join(str(i) for i in rows.indices)}}}",
            f"trials {trials}  seed {seed}  quantizer step {quantizer.step:.6g} "
            f"levels {quantizer.levels}",
            f"codeword variance: empirical {report.empirical_codeword_variance:.6f}  "
            f"predicted {report.predicted_codeword_variance:.6f}",
            f"MSE: empirical {report.empirical_mse:.6e}  predicted "
            f"{report.predicted_mse:.6e}  ratio {report.ratio:.4f}",
        ]
        if report.refined_empirical_mse is not None:
            lines.append(f"refined MSE: {report.refined_empirical_mse:.6e}")
        if report.overflow_rate > 0:
            lines.append(f"overflow rate {report.overflow_rate:.6f}")
        for w in report.warnings:
            lines.append(f"warning: {w}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


# ============================================================
# table1 / table2
# ============================================================

def table1_rows() -> List[dict]:
    """The reference spectra of all 21 tabulated row selections."""
    out = []
    for n, k, row_sets in TABLE1_SECTIONS:
        gen = generator(FrameSpec(n=n, k=k))
        for idx_tuple in row_sets:
            rows = IndexSet(n=n, indices=idx_tuple)
            sp = gram_spectrum(gen, rows)
            out.append({
                "code": f"({n},{k})",
                "rows": idx_tuple,
                "pattern": rows_to_pattern(rows),
                "lambda_min": sp.lambda_min,
                "lambda_max": sp.lambda_max,
                "sum_reciprocal": sp.sum_reciprocal,
                "product": sp.product,
            })
    return out


def cmd_table1(args) -> int:
    rows = table1_rows()
    if args.format == "json":
        doc = [dict(r, rows=list(r["rows"])) for r in rows]
        _emit(args, _json_text(doc))
    else:
        csv_rows = [{
            "code": r["code"],
            "pattern": r["pattern"],
            "lambda_min": _fmt4(r["lambda_min"]),
            "lambda_max": _fmt4(r["lambda_max"]),
            "sum_reciprocal": _fmt4(r["sum_reciprocal"]),
            "product": _fmt4(r["product"]),
        } for r in rows]
        text = _csv_text(["code", "pattern", "lambda_min", "lambda_max",
                          "sum_reciprocal", "product"], csv_rows)
        if args.format == "text":
            widths = None
            table_lines = []
            for line in text.splitlines():
                cells = line.split(",")
                if widths is None:
                    widths = [max(12, len(c) + 2) for c in cells]
                table_lines.append("".join(c.ljust(w) for c, w in zip(cells, widths)))
            text = "\n".join(table_lines)
        _emit(args, text)
    return EXIT_OK


def table2_cosets():
    """The (7,3) cosets in display order, labeled C1..C5."""
    catalog = enumerate_cosets(7, 3, merge_reversal=False)
    by_leader = {c.leader.indices: c for c in catalog.cosets}
    return [(f"C{i + 1}", by_leader[leader]) for i, leader in enumerate(TABLE2_LEADERS)]


def cmd_table2(args) -> int:
    labeled = table2_cosets()
    if args.format == "json":
        doc = [dict(c.to_json(), coset=label) for label, c in labeled]
        _emit(args, _json_text(doc))
    else:
        csv_rows = [{
            "coset": label,
            "leader": " ".join(str(i) for i in c.leader.indices),
            "members": c.size,
            "distance_cycle": " ".join(str(d) for d in c.distance_cycle),
            "weight": c.weight,
            "eigenvalues": " ".join(f"{v:.4f}" for v in c.spectrum.eigenvalues),
        } for label, c in labeled]
        text = _csv_text(["coset", "leader", "members", "distance_cycle",
                          "weight", "eigenvalues"], csv_rows)
        if args.format == "text":
            lines = []
            for label, c in labeled:
                members = "; ".join(
                    " ".join(str(i) for i in m.indices) for m in c.members)
                lines.append(
                    f"{label}: leader {{{', '.join(str(i) for i in c.leader.indices)}}}"
                    f"  weight {c.weight}"
                    f"  distances ({','.join(str(d) for d in c.distance_cycle)})")
                lines.append(f"    members: {members}")
                lines.append("    eigenvalues: "
                             + ", ".join(f"{v:.4f}" for v in c.spectrum.eigenvalues))
            text = "\n".join(lines)
        _emit(args, text)
    return EXIT_OK


# ============================================================
# verify
# ============================================================

_EXHAUSTIVE_LIMIT = 16
_SAMPLED_LIMIT = 24
_SINE_LIMIT = 64


def _verify_bounds_check(n_max: int, tol: float, threads: Optional[int],
                         samples: int) -> Tuple[str, bool, str]:
    exhaustive_max = min(n_max, _EXHAUSTIVE_LIMIT)
    summary = theorem_sweep(n_max=exhaustive_max, tol=tol, max_workers=threads)
    checks = summary["checks"]
    violations = list(summary["violations"])
    detail = (f"exhaustive n<={exhaustive_max}: {checks} checks")
    if n_max > exhaustive_max:
        sampled = sampled_sweep(exhaustive_max + 1, n_max, tol=tol,
                                samples=samples, max_workers=threads)
        checks += sampled["checks"]
        violations += sampled["violations"]
        detail += (f"; sampled {exhaustive_max + 1}<=n<={n_max}: "
                   f"{sampled['checks']} checks")
    if violations:
        first = violations[0]
        detail += (f"; {len(violations)} violations, first: n={first['n']} "
                   f"k={first['k']} rows={first['rows']} {first['bound']} "
                   f"witness={first['witness']}")
    return ("eigenvalue_bounds", not violations, detail)


def _verify_sine_check(n_max: int) -> Tuple[str, bool, str]:
    worst_n, worst = 1, 0.0
    for n in range(1, min(n_max, _SINE_LIMIT) + 1):
        res = sine_product_identity_residual(n)
        if res > worst:
            worst_n, worst = n, res
    ok = worst < 1e-9
    return ("sine_product_identity",
            ok,
            f"max residual {worst:.3e} at n={worst_n} over n<={min(n_max, _SINE_LIMIT)}")


def _verify_det_check(n_max: int) -> Tuple[str, bool, str]:
    from itertools import combinations as _combos

    cap = min(n_max, 12)
    worst = 0.0
    worst_at = ""
    count = 0
    for n in range(2, cap + 1):
        for k in range(1, n + 1):
            spec = FrameSpec(n=n, k=k, variant="ComplexBCH")
            gen = generator(spec)
            for combo in _combos(range(1, n + 1), k):
                rows = IndexSet(n=n, indices=combo)
                closed = det_gram_product_formula(spec, rows)
                eig = gram_spectrum(gen, rows).product
                rel = abs(closed - eig) / max(abs(eig), 1e-300)
                count += 1
                if rel > worst:
                    worst, worst_at = rel, f"n={n} k={k} rows={list(combo)}"
    ok = worst < 1e-8
    return ("determinant_closed_form", ok,
            f"{count} subsets over n<={cap}, worst relative gap {worst:.3e} ({worst_at})")


def _verify_coset_check(n_max: int, threads: Optional[int]) -> Tuple[str, bool, str]:
    cap = min(n_max, _EXHAUSTIVE_LIMIT)
    failures = []
    pairs = 0
    for n in range(2, cap + 1):
        for k in range(1, n + 1):
            catalog = enumerate_cosets(n, k, merge_reversal=True)
            lower, upper = count_bounds(n, k)
            pairs += 1
            if not (lower < catalog.count <= math.ceil(upper)):
                failures.append(
                    f"n={n} k={k}: count {catalog.count} outside "
                    f"({lower:.3f}, ceil({upper:.3f})]")
    detail = f"{pairs} (n,k) pairs over n<={cap}"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return ("coset_count_bounds", not failures, detail)


def cmd_verify(args) -> int:
    n_max = args.n_max
    identity = args.identity
    if identity == "sine":
        if n_max > _SINE_LIMIT:
            raise InvalidArgumentError(
                f"sine identity check supports n <= {_SINE_LIMIT}, got --n-max {n_max}")
    elif n_max > _SAMPLED_LIMIT:
        raise InvalidArgumentError(
            f"verification sweeps support n <= {_SAMPLED_LIMIT} "
            f"(exhaustive to {_EXHAUSTIVE_LIMIT}, sampled beyond), got --n-max {n_max}")
    threads = args.threads if args.threads is not None else default_thread_count()

    results: List[Tuple[str, bool, str]] = []
    if identity in ("all", "bounds"):
        results.append(_verify_bounds_check(n_max, args.tol, threads, args.samples))
    if identity in ("all", "sine"):
        results.append(_verify_sine_check(n_max if identity == "sine" else max(n_max, 32)))
    if identity in ("all", "det"):
        results.append(_verify_det_check(n_max))
    if identity in ("all", "cosets"):
        results.append(_verify_coset_check(n_max, threads))
    if args.inject_failure:
        results.append(("injected_failure", False,
                        "synthetic failure requested via --inject-failure"))

    all_passed = all(ok for _, ok, _ in results)
    if args.format == "json":
        doc = {
            "passed": all_passed,
            "n_max": n_max,
            "checks": [{"name": name, "passed": ok, "detail": detail}
                       for name, ok, detail in results],
        }
        _emit(args, _json_text(doc))
    else:
        lines = []
        for name, ok, detail in results:
            lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        lines.append(
            f"{'all checks passed' if all_passed else 'VERIFICATION FAILED'}"
            f" ({sum(1 for _, ok, _ in results if ok)}/{len(results)})")
        _emit(args, "\n".join(lines))
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


# ============================================================
# Parser
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dftframe",
        description="Systematic DFT frames: spectra, cosets, and quantized-codec simulation.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_common(p, rows_flags=True):
        p.add_argument("--n", type=int, help="frame length")
        p.add_argument("--k", type=int, help="message length")
        p.add_argument("--variant", choices=list(VARIANTS),
                       help="frame construction variant (default RealBCH)")
        if rows_flags:
            p.add_argument("--rows", help="comma-separated 1-based row indices")
            p.add_argument("--pattern",
                           help=f"row pattern like '{CROSS}{CROSS}-{CROSS}--' ('x' works too)")
        p.add_argument("--format", choices=["json", "csv", "text"], default="text")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("analyze", help="spectrum, distances, tightness, and bounds of one row selection")
    add_common(p)
    p.add_argument("--zero-rows", help="1-based parity row positions (GeneralDFT only)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cosets", help="enumerate shift/reversal cosets of k-subsets")
    add_common(p, rows_flags=False)
    p.add_argument("--merge-reversal", action="store_true",
                   help="merge each orbit with its reversal orbit")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("simulate", help="Monte-Carlo quantized encode/decode run")
    add_common(p)
    p.add_argument("--scenario", choices=["quantize", "error", "erasure"],
                   help="channel model (default quantize)")
    p.add_argument("--trials", type=int, help="number of Monte-Carlo trials (default 200000)")
    p.add_argument("--seed", type=int, help="random seed (default 12345)")
    p.add_argument("--sigma-x", type=float, dest="sigma_x", help="source std dev (default 1.0)")
    p.add_argument("--nu", type=int, help="errors per codeword for the error scenario")
    p.add_argument("--sigma-e-sq", type=float, dest="sigma_e_sq",
                   help="error variance (default 10x the quantizer noise)")
    p.add_argument("--poisson", action="store_true",
                   help="draw the per-codeword error count from a Poisson law")
    p.add_argument("--erased", help="comma-separated 1-based erased positions")
    p.add_argument("--no-refine", action="store_true",
                   help="skip consistent refinement in erasure scenarios")
    p.add_argument("--levels", type=int, help="quantizer levels (default 64)")
    p.add_argument("--spread", type=float,
                   help="quantizer half-range in codeword std devs (default 4.0)")
    p.add_argument("--step", type=float, help="explicit quantizer step (overrides --spread)")
    p.add_argument("--config", help="TOML/JSON file with frame/scenario/quantizer fields")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table1", help="reference spectra of the 21 tabulated row selections")
    p.add_argument("--format", choices=["json", "csv", "text"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="the (7,3) coset catalog in reference order")
    p.add_argument("--format", choices=["json", "csv", "text"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("verify", help="sweep the eigenvalue bounds and identities")
    p.add_argument("--n-max", type=int, default=12, dest="n_max",
                   help=f"largest frame length (exhaustive to {_EXHAUSTIVE_LIMIT}, "
                        f"sampled to {_SAMPLED_LIMIT}; default 12)")
    p.add_argument("--tol", type=float, default=1e-8, help="violation tolerance (default 1e-8)")
    p.add_argument("--identity", choices=["all", "bounds", "sine", "det", "cosets"],
                   default="all", help="which family of checks to run")
    p.add_argument("--samples", type=int, default=60,
                   help="random subsets per size in the sampled range")
    p.add_argument("--threads", type=int,
                   help="worker threads (default: DFTFRAME_THREADS or CPU count)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    p.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_INVALID
    try:
        return args.func(args)
    except DftframeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
