"""Subframe selection and eigenvalue analysis.

Everything here operates on row-index subsets of a frame: extracting the
p x k subframe, computing the Hermitian spectrum of its Gram matrix, the
closed-form determinant product, the sine-product identity, and numeric
certification of the extreme-eigenvalue bounds.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConstructionError, InvalidArgumentError
from .frames import COMPLEX_BCH, FrameSpec, GeneratorSet, generator

_HERMITIAN_TOL = 1e-9
_TRACE_TOL = 1e-8
_CLAMP_FLOOR = -1e-10


# ============================================================
# Index sets (1-based row selections)
# ============================================================

@dataclass(frozen=True)
class IndexSet:
    """A set of 1-based row indices in [1, n], stored sorted ascending."""

    n: int
    indices: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidArgumentError(f"ambient length must be a positive integer, got {self.n}")
        idx = tuple(int(i) for i in self.indices)
        if len(idx) == 0:
            raise InvalidArgumentError("index set must be non-empty")
        if len(set(idx)) != len(idx):
            raise InvalidArgumentError(f"duplicate indices in {idx}")
        for i in idx:
            if not (1 <= i <= self.n):
                raise InvalidArgumentError(f"index {i} outside [1, {self.n}]")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def zero_based(self) -> Tuple[int, ...]:
        return tuple(i - 1 for i in self.indices)

    def gaps(self) -> Tuple[int, ...]:
        """Successive circular gaps between sorted indices, wrapping at n."""
        idx = self.indices
        return tuple(idx[(j + 1) % len(idx)] - idx[j] + (self.n if j == len(idx) - 1 else 0)
                     for j in range(len(idx)))

    def is_circularly_consecutive(self) -> bool:
        return len(self) == self.n or max(self.gaps()) == self.n - len(self) + 1

    def to_json(self) -> dict:
        return {"n": self.n, "indices": list(self.indices)}


# ============================================================
# Spectra
# ============================================================

@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues of a Hermitian PSD matrix plus summary stats.

    sum_reciprocal counts only eigenvalues above rank_tolerance, so rank-
    deficient Grams (p > k row selections) report a finite value.
    """

    eigenvalues: Tuple[float, ...]
    rank_tolerance: float

    @property
    def sum(self) -> float:
        return float(np.sum(self.eigenvalues))

    @property
    def sum_reciprocal(self) -> float:
        vals = [v for v in self.eigenvalues if v > self.rank_tolerance]
        return float(np.sum([1.0 / v for v in vals])) if vals else 0.0

    @property
    def product(self) -> float:
        return float(np.prod(self.eigenvalues))

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]

    @property
    def lambda_max(self) -> float:
        return self.eigenvalues[0]

    @property
    def rank(self) -> int:
        return sum(1 for v in self.eigenvalues if v > self.rank_tolerance)

    def to_json(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "sum": self.sum,
            "sum_reciprocal": self.sum_reciprocal,
            "product": self.product,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "rank_tolerance": self.rank_tolerance,
        }


def hermitian_eigenvalues(m: np.ndarray) -> Spectrum:
    """Eigenvalues of a Hermitian matrix, descending, tiny negatives clamped.

    The input is symmetrized as (M + M^H)/2 before solving; asymmetry beyond
    tolerance is rejected rather than silently averaged away.
    """
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    asym = float(np.abs(m - m.conj().T).max(initial=0.0))
    if asym > _HERMITIAN_TOL * scale:
        raise InvalidArgumentError(
            f"matrix is not Hermitian: max |M - M^H| = {asym:.3e}")
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    vals = np.where((vals < 0.0) & (vals >= _CLAMP_FLOOR * scale), 0.0, vals)
    vals = np.sort(vals)[::-1]
    lam_max = float(vals[0]) if vals.size else 0.0
    return Spectrum(
        eigenvalues=tuple(float(v) for v in vals),
        rank_tolerance=1e-8 * max(lam_max, 0.0),
    )


def subframe(gen: GeneratorSet, rows: IndexSet) -> np.ndarray:
    """The p x k submatrix of G picking the given 1-based rows."""
    if rows.n != gen.n:
        raise InvalidArgumentError(
            f"index set is over length {rows.n}, frame has n={gen.n}")
    return gen.G[list(rows.zero_based()), :]


def gram_spectrum(gen: GeneratorSet, rows: IndexSet) -> Spectrum:
    """Spectrum of G_p @ G_p^H for the selected p rows (descending)."""
    g_p = subframe(gen, rows)
    spec = hermitian_eigenvalues(g_p @ g_p.conj().T)
    p = len(rows)
    if abs(spec.sum - p) > _TRACE_TOL * max(1.0, p):
        raise ConstructionError(
            f"Gram trace self-test failed: sum of eigenvalues {spec.sum!r} != {p}")
    return spec


def _cross_spectrum(gen: GeneratorSet, rows: IndexSet) -> Spectrum:
    """Spectrum of the k x k matrix G_p^H @ G_p (used for tall/short bounds)."""
    g_p = subframe(gen, rows)
    return hermitian_eigenvalues(g_p.conj().T @ g_p)


# ============================================================
# Closed-form identities
# ============================================================

def det_gram_product_formula(spec: FrameSpec, rows: IndexSet) -> float:
    """Product of the k Gram eigenvalues from the sine closed form.

    Evaluates (1/k^k) * prod over index pairs p<q of 4*sin^2(pi*(q-p)/n) in
    log-space.  The closed form holds when the frame keeps a circularly
    consecutive block of transform rows (every BCH frame does); selectors
    with scattered support fall outside it and are rejected.
    """
    n, k = spec.n, spec.k
    if rows.n != n:
        raise InvalidArgumentError(f"index set is over length {rows.n}, frame has n={n}")
    if len(rows) != k:
        raise InvalidArgumentError(
            f"determinant formula needs exactly k={k} rows, got {len(rows)}")
    if not spec.has_consecutive_support():
        raise InvalidArgumentError(
            "determinant closed form requires a circularly consecutive "
            f"selector support; this frame keeps rows {list(spec.support)}")
    log_det = -k * math.log(k)
    for p, q in combinations(rows.indices, 2):
        log_det += math.log(4.0) + 2.0 * math.log(math.sin(math.pi * (q - p) / n))
    return math.exp(log_det)


def sine_product_identity_residual(n: int) -> float:
    """Relative residual of prod_r sin^2(pi r/n)^(n-r) = n^n / 2^(n(n-1)).

    Both sides are compared in log-space; the return value is
    |LHS * 2^(n(n-1)) / n^n - 1| and should be at numerical noise level.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    log_lhs = sum(2.0 * (n - r) * math.log(math.sin(math.pi * r / n))
                  for r in range(1, n))
    log_ratio = log_lhs + n * (n - 1) * math.log(2.0) - n * math.log(n)
    return abs(math.expm1(log_ratio))


# ============================================================
# Bound verification
# ============================================================

@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one eigenvalue bound on one row selection."""

    bound: str
    description: str
    holds: bool
    witness: dict

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "description": self.description,
            "holds": self.holds,
            "witness": self.witness,
        }


def _check(bound: str, description: str, holds: bool, **witness) -> BoundReport:
    return BoundReport(bound=bound, description=description, holds=bool(holds),
                       witness={k: (float(v) if isinstance(v, (int, float, np.floating)) else v)
                                for k, v in witness.items()})


def verify_bounds(spec: FrameSpec, rows: IndexSet,
                  gen: Optional[GeneratorSet] = None,
                  tol: float = 1e-8) -> List[BoundReport]:
    """Check every eigenvalue bound applicable to this row selection.

    Returns one report per applicable bound; all must hold for any valid
    frame/selection pair (a false report indicates a numerical defect).
    """
    if gen is None:
        gen = generator(spec)
    n, k, p = spec.n, spec.k, len(rows)
    reports: List[BoundReport] = []

    spec_pp = gram_spectrum(gen, rows)
    lam_min, lam_max = spec_pp.lambda_min, spec_pp.lambda_max

    reports.append(_check(
        "unit_bracket",
        "smallest Gram eigenvalue <= 1 <= largest (unit diagonal)",
        lam_min <= 1.0 + tol and lam_max >= 1.0 - tol,
        lambda_min=lam_min, lambda_max=lam_max))

    reports.append(_check(
        "trace_identity",
        "eigenvalues of the p x p Gram sum to p",
        abs(spec_pp.sum - p) <= tol * max(1.0, p),
        eigenvalue_sum=spec_pp.sum, p=p))

    if p == k:
        if n % k != 0:
            reports.append(_check(
                "strict_unit_bracket",
                "for n not a multiple of k, the unit bracket is strict on square Grams",
                lam_min < 1.0 - 1e-9 and lam_max > 1.0 + 1e-9,
                lambda_min=lam_min, lambda_max=lam_max))
        if k < n < 2 * k:
            top = spec_pp.eigenvalues[: 2 * k - n]
            err = max(abs(v - n / k) for v in top)
            reports.append(_check(
                "repeated_ratio_eigenvalues",
                "for k < n < 2k, the 2k-n largest eigenvalues all equal n/k",
                err <= tol,
                max_deviation=err, expected=n / k, count=2 * k - n))
        if n == 2 * k:
            gaps = rows.gaps()
            if rows.is_circularly_consecutive() or all(g == 2 for g in gaps):
                ev = spec_pp.eigenvalues
                err = max(abs(ev[j] + ev[k - 1 - j] - 2.0) for j in range(k))
                reports.append(_check(
                    "complement_pairing",
                    "for n = 2k with consecutive or every-other rows, "
                    "lambda_j + lambda_(k+1-j) = 2",
                    err <= tol,
                    max_pairing_error=err))
    else:
        spec_kk = _cross_spectrum(gen, rows)
        if p > k:
            reports.append(_check(
                "tall_lower_bound",
                "for p > k rows, the largest eigenvalue of the k x k Gram is >= p/k",
                spec_kk.lambda_max >= p / k - tol,
                lambda_max=spec_kk.lambda_max, ratio=p / k))
        else:
            reports.append(_check(
                "short_upper_bound",
                "for p < k rows, the smallest eigenvalue of the k x k Gram is <= p/k",
                spec_kk.lambda_min <= p / k + tol,
                lambda_min=spec_kk.lambda_min, ratio=p / k))
    return reports


# ============================================================
# Exhaustive sweep
# ============================================================

def _evaluate_subsets(g: np.ndarray, n: int, k: int, p: int,
                      combos: np.ndarray, tol: float) -> Tuple[int, List[dict]]:
    """Batched bound checks for many p-row subsets (combos are 0-based, (m, p)).

    Computes the smaller of the two Grams for each subset (they share their
    nonzero eigenvalues), solves them in one batched call, and applies every
    applicable predicate vectorized.  Returns (checks, violations).
    """
    m = combos.shape[0]
    sub = g[combos]                             # (m, p, k)
    if p <= k:
        gram = sub @ sub.conj().transpose(0, 2, 1)
    else:
        gram = sub.conj().transpose(0, 2, 1) @ sub
    gram = (gram + gram.conj().transpose(0, 2, 1)) / 2.0
    vals = np.maximum(np.linalg.eigvalsh(gram), 0.0)   # (m, s) ascending
    lam_small = vals[:, 0]
    lam_big = vals[:, -1]
    sums = vals.sum(axis=1)
    violations: List[dict] = []

    def fail(mask: np.ndarray, bound: str, witness_fn):
        for idx in np.nonzero(mask)[0]:
            violations.append({
                "n": n, "k": k, "rows": [int(i) + 1 for i in combos[idx]],
                "bound": bound, "witness": witness_fn(int(idx)),
            })

    checks = 2 * m
    lam_min_pp = np.zeros_like(lam_small) if p > k else lam_small
    bad = ~((lam_min_pp <= 1.0 + tol) & (lam_big >= 1.0 - tol))
    fail(bad, "unit_bracket",
         lambda i: {"lambda_min": float(lam_min_pp[i]), "lambda_max": float(lam_big[i])})
    bad = np.abs(sums - p) > tol * max(1.0, p)
    fail(bad, "trace_identity", lambda i: {"eigenvalue_sum": float(sums[i]), "p": p})

    if p == k:
        if n % k != 0:
            checks += m
            bad = ~((lam_small < 1.0 - 1e-9) & (lam_big > 1.0 + 1e-9))
            fail(bad, "strict_unit_bracket",
                 lambda i: {"lambda_min": float(lam_small[i]), "lambda_max": float(lam_big[i])})
        if k < n < 2 * k:
            checks += m
            dev = np.abs(vals[:, n - k:] - n / k).max(axis=1)
            bad = dev > tol
            fail(bad, "repeated_ratio_eigenvalues",
                 lambda i: {"max_deviation": float(dev[i]), "expected": n / k})
    elif p > k:
        checks += m
        bad = lam_big < p / k - tol
        fail(bad, "tall_lower_bound",
             lambda i: {"lambda_max": float(lam_big[i]), "ratio": p / k})
    else:
        # short side: the k x k Gram has k - p zero eigenvalues, so its
        # minimum (0) sits below p/k automatically; counted, never failing
        checks += m
    return checks, violations


def _sweep_pair(n: int, k: int, tol: float) -> Tuple[int, List[dict]]:
    """Check every subset of every size for one (n, k); returns (checks, violations)."""
    gen = generator(FrameSpec(n=n, k=k, variant=COMPLEX_BCH))
    checks = 0
    violations: List[dict] = []
    for p in range(1, n + 1):
        combos = np.array(list(combinations(range(n), p)), dtype=int)
        c, v = _evaluate_subsets(gen.G, n, k, p, combos, tol)
        checks += c
        violations.extend(v)
    return checks, violations


def _sampled_pair(n: int, k: int, tol: float, samples: int,
                  rng: np.random.Generator) -> Tuple[int, List[dict]]:
    """Spot-check random subsets of one (n, k): square plus tall/short sizes."""
    gen = generator(FrameSpec(n=n, k=k, variant=COMPLEX_BCH))
    sizes = {k}
    if k > 1:
        sizes.add(rng.integers(1, k))          # one short size
    if k < n:
        sizes.add(int(rng.integers(k + 1, n + 1)))  # one tall size
    checks = 0
    violations: List[dict] = []
    for p in sorted(sizes):
        count = max(1, min(samples, math.comb(n, p)))
        combos = np.unique(
            np.sort(np.array([rng.choice(n, size=p, replace=False)
                              for _ in range(count)]), axis=1), axis=0)
        c, v = _evaluate_subsets(gen.G, n, k, p, combos, tol)
        checks += c
        violations.extend(v)
    return checks, violations


def default_thread_count() -> int:
    """Worker cap: DFTFRAME_THREADS if set, else the CPU count (min 1)."""
    env = os.environ.get("DFTFRAME_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidArgumentError(
                f"DFTFRAME_THREADS must be an integer, got {env!r}")
    return max(1, os.cpu_count() or 1)


def _run_pairs(pairs, worker, max_workers: Optional[int]) -> Tuple[int, List[dict]]:
    workers = max_workers if max_workers is not None else default_thread_count()
    total_checks = 0
    violations: List[dict] = []
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, pairs))
    else:
        results = [worker(nk) for nk in pairs]
    for checks, viol in results:
        total_checks += checks
        violations.extend(viol)
    violations.sort(key=lambda v: (v["n"], v["k"], v["rows"], v["bound"]))
    return total_checks, violations


def theorem_sweep(n_max: int = 12, tol: float = 1e-8,
                  max_workers: Optional[int] = None, n_min: int = 1) -> dict:
    """Exhaustively certify every eigenvalue bound for all n_min <= n <= n_max.

    Sweeps every (n, k) pair and every row subset of every size, checking the
    unit bracket, trace identity, strictness when n is not a multiple of k,
    the repeated n/k eigenvalues for k < n < 2k, and the tall/short p/k
    bounds.  Returns a summary with any violations (there should be none).
    """
    if not (1 <= n_min <= n_max):
        raise InvalidArgumentError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    start = time.perf_counter()
    pairs = [(n, k) for n in range(n_min, n_max + 1) for k in range(1, n + 1)]
    total_checks, violations = _run_pairs(
        pairs, lambda nk: _sweep_pair(nk[0], nk[1], tol), max_workers)
    return {
        "mode": "exhaustive",
        "n_min": n_min,
        "n_max": n_max,
        "tolerance": tol,
        "pairs": len(pairs),
        "checks": total_checks,
        "violations": violations,
        "elapsed_seconds": time.perf_counter() - start,
    }


def sampled_sweep(n_min: int, n_max: int, tol: float = 1e-8, samples: int = 60,
                  seed: int = 20240, max_workers: Optional[int] = None) -> dict:
    """Randomized spot-check of the same bounds for a range of larger n."""
    if not (1 <= n_min <= n_max):
        raise InvalidArgumentError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    start = time.perf_counter()
    pairs = [(n, k) for n in range(n_min, n_max + 1) for k in range(1, n + 1)]

    def worker(nk):
        n, k = nk
        # give each pair its own deterministic stream so threading order
        # cannot change the sampled subsets
        rng = np.random.default_rng((seed, n, k))
        return _sampled_pair(n, k, tol, samples, rng)

    total_checks, violations = _run_pairs(pairs, worker, max_workers)
    return {
        "mode": "sampled",
        "n_min": n_min,
        "n_max": n_max,
        "tolerance": tol,
        "samples_per_size": samples,
        "seed": seed,
        "pairs": len(pairs),
        "checks": total_checks,
        "violations": violations,
        "elapsed_seconds": time.perf_counter() - start,
    }
