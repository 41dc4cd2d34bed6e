"""Quantized encode/decode simulation.

Pipeline: encode x with a systematic frame, quantize the codeword with a
uniform mid-rise quantizer, optionally corrupt or erase samples, then
reconstruct with the frame pseudoinverse and compare the measured MSE with
the closed forms MSE_q = (k/n) sigma_q^2, MSE_{q+e} = (k/n)(sigma_q^2 +
(nu/n) sigma_e^2), and the erasure form (sigma_q^2/k) sum(1/mu_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import InsufficientDataError, InvalidArgumentError
from .spectra import IndexSet, hermitian_eigenvalues, subframe
from .systematic import SystematicFrame, codeword_variance

QUANTIZE_ONLY = "QuantizeOnly"
QUANTIZE_PLUS_ERROR = "QuantizePlusError"
QUANTIZE_PLUS_ERASURE = "QuantizePlusErasure"
SCENARIO_KINDS = (QUANTIZE_ONLY, QUANTIZE_PLUS_ERROR, QUANTIZE_PLUS_ERASURE)

_OVERFLOW_WARN_RATE = 0.01


# ============================================================
# Quantizer
# ============================================================

@dataclass(frozen=True)
class Quantizer:
    """Uniform mid-rise quantizer with saturation.

    Cells are [i*step, (i+1)*step) for integer i in [-levels/2, levels/2);
    outputs are cell centers, so any in-range input incurs error at most
    step/2 and the flat-noise model gives sigma_q^2 = step^2 / 12.
    """

    step: float
    levels: int

    def __post_init__(self):
        if not (self.step > 0):
            raise InvalidArgumentError(f"step must be positive, got {self.step}")
        if not (isinstance(self.levels, int) and self.levels >= 2 and self.levels % 2 == 0):
            raise InvalidArgumentError(
                f"levels must be an even integer >= 2, got {self.levels}")

    @classmethod
    def for_sigma(cls, sigma: float, levels: int = 64, spread: float = 4.0) -> "Quantizer":
        """Quantizer whose range covers [-spread*sigma, +spread*sigma]."""
        if not (sigma > 0):
            raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
        return cls(step=2.0 * spread * sigma / levels, levels=levels)

    @property
    def range_half(self) -> float:
        return self.levels * self.step / 2.0

    @property
    def sigma_q_sq(self) -> float:
        return self.step ** 2 / 12.0

    def cell(self, y) -> np.ndarray:
        """Saturating cell index floor(y/step), as floats (NaN passes through)."""
        y = np.asarray(y, dtype=float)
        lo, hi = -self.levels // 2, self.levels // 2 - 1
        with np.errstate(invalid="ignore"):
            return np.clip(np.floor(y / self.step), lo, hi)

    def quantize(self, y) -> np.ndarray:
        """Cell-center representative of each input value."""
        return self.cell(y) * self.step + self.step / 2.0

    def overflow_rate(self, y) -> float:
        y = np.asarray(y, dtype=float)
        return float(np.mean(np.abs(y) > self.range_half))

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "levels": self.levels,
            "range": [-self.range_half, self.range_half],
            "sigma_q_sq": self.sigma_q_sq,
            "mode": "mid-rise",
        }


# ============================================================
# Scenario / report types
# ============================================================

@dataclass(frozen=True)
class Scenario:
    """What happens to the codeword between encoder and decoder.

    nu is the number of corrupted samples per codeword (a fixed count by
    default; a Poisson-distributed count with mean nu when poisson_errors);
    erased lists dropped codeword positions for the erasure kind; refine
    applies consistent refinement on systematic samples whose quantizer
    cells the decoder can trust, i.e. in the quantize-only and erasure
    kinds.  Random errors corrupt cells at unknown positions, so the
    error kind never refines (snapping to a corrupted cell is harmful).
    """

    kind: str
    sigma_x: float = 1.0
    nu: int = 0
    sigma_e_sq: float = 0.0
    poisson_errors: bool = False
    erased: Optional[IndexSet] = None
    refine: bool = True

    def __post_init__(self):
        if self.kind not in SCENARIO_KINDS:
            raise InvalidArgumentError(
                f"unknown scenario kind {self.kind!r}; expected one of {SCENARIO_KINDS}")
        if not (self.sigma_x > 0):
            raise InvalidArgumentError(f"sigma_x must be positive, got {self.sigma_x}")
        if self.nu < 0 or self.sigma_e_sq < 0:
            raise InvalidArgumentError("error parameters must be non-negative")
        if self.kind == QUANTIZE_PLUS_ERROR and self.nu == 0:
            raise InvalidArgumentError("error scenario needs nu >= 1")
        if self.kind == QUANTIZE_PLUS_ERASURE and self.erased is None:
            raise InvalidArgumentError("erasure scenario needs the erased position set")
        if self.kind != QUANTIZE_PLUS_ERASURE and self.erased is not None:
            raise InvalidArgumentError(f"erased positions are only valid for {QUANTIZE_PLUS_ERASURE}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sigma_x": self.sigma_x,
            "nu": self.nu,
            "sigma_e_sq": self.sigma_e_sq,
            "poisson_errors": self.poisson_errors,
            "erased": list(self.erased.indices) if self.erased is not None else None,
            "refine": self.refine,
        }


@dataclass(frozen=True)
class SimReport:
    """Measured vs predicted statistics of one simulation run."""

    trials: int
    seed: int
    scenario: Scenario
    quantizer: Quantizer
    empirical_mse: float
    predicted_mse: float
    empirical_codeword_variance: float
    predicted_codeword_variance: float
    overflow_rate: float
    refined_empirical_mse: Optional[float] = None
    warnings: Tuple[str, ...] = ()

    @property
    def ratio(self) -> float:
        return self.empirical_mse / self.predicted_mse

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "scenario": self.scenario.to_json(),
            "quantizer": self.quantizer.to_json(),
            "empirical_mse": self.empirical_mse,
            "predicted_mse": self.predicted_mse,
            "ratio": self.ratio,
            "empirical_codeword_variance": self.empirical_codeword_variance,
            "predicted_codeword_variance": self.predicted_codeword_variance,
            "overflow_rate": self.overflow_rate,
            "refined_empirical_mse": self.refined_empirical_mse,
            "warnings": list(self.warnings),
        }


# ============================================================
# Encode / reconstruct
# ============================================================

def _real_matrix(f: SystematicFrame) -> np.ndarray:
    if not f.is_real:
        raise InvalidArgumentError(
            "this operation models real-valued codewords; the frame's "
            "systematic generator has non-negligible imaginary parts")
    return f.G_sys.real


def encode(f: SystematicFrame, x) -> np.ndarray:
    """y = G_sys @ x; the systematic positions of y carry x verbatim."""
    x = np.asarray(x)
    if x.shape != (f.k,):
        raise InvalidArgumentError(f"expected a length-{f.k} vector, got shape {x.shape}")
    y = f.G_sys @ x.astype(complex)
    return y.real if f.is_real and np.isrealobj(x) else y


def pseudoinverse(f: SystematicFrame) -> np.ndarray:
    """Closed-form left inverse (k/n) * G_k * G^H of the systematic generator."""
    g_k = subframe(f.base, f.systematic_rows)
    return (f.k / f.n) * g_k @ f.base.G.conj().T


def linear_reconstruct(f: SystematicFrame, y_hat) -> np.ndarray:
    """Apply the closed-form pseudoinverse to a received codeword."""
    y_hat = np.asarray(y_hat)
    if y_hat.shape != (f.n,):
        raise InvalidArgumentError(f"expected a length-{f.n} vector, got shape {y_hat.shape}")
    x_hat = pseudoinverse(f) @ y_hat.astype(complex)
    return x_hat.real if f.is_real and np.isrealobj(y_hat) else x_hat


def erasure_reconstruct(f: SystematicFrame, y_hat_surviving, surviving: IndexSet) -> np.ndarray:
    """Least-squares reconstruction from the surviving codeword positions."""
    if surviving.n != f.n:
        raise InvalidArgumentError(
            f"surviving set is over length {surviving.n}, frame has n={f.n}")
    if len(surviving) < f.k:
        raise InsufficientDataError(
            f"need at least k={f.k} surviving positions, got {len(surviving)}")
    y_hat = np.asarray(y_hat_surviving)
    if y_hat.shape != (len(surviving),):
        raise InvalidArgumentError(
            f"expected {len(surviving)} surviving values, got shape {y_hat.shape}")
    sub = f.G_sys[list(surviving.zero_based()), :]
    x_hat, *_ = np.linalg.lstsq(sub, y_hat.astype(complex), rcond=None)
    return x_hat.real if f.is_real and np.isrealobj(y_hat) else x_hat


def erasure_predicted_mse(f: SystematicFrame, surviving: IndexSet, sigma_q_sq: float) -> float:
    """(sigma_q^2 / k) * sum(1/mu_i) over the surviving subframe's Gram eigenvalues."""
    if len(surviving) < f.k:
        raise InsufficientDataError(
            f"need at least k={f.k} surviving positions, got {len(surviving)}")
    sub = f.G_sys[list(surviving.zero_based()), :]
    mu = hermitian_eigenvalues(sub.conj().T @ sub)
    return float(sigma_q_sq / f.k * mu.sum_reciprocal)


def consistent_refine(x_hat, y_hat_systematic, q: Quantizer) -> np.ndarray:
    """Snap reconstructed components back into their transmitted cells.

    Wherever a component of x_hat falls in a different quantizer cell than
    the received systematic sample, it is replaced by the nearest point of
    the correct cell (the boundary facing x_hat, nudged inside so the cells
    match exactly).  NaN entries of y_hat_systematic (erased systematic
    positions) pass the corresponding x_hat through unchanged.
    """
    x_hat = np.asarray(x_hat, dtype=float)
    y_hat = np.asarray(y_hat_systematic, dtype=float)
    if x_hat.shape != y_hat.shape:
        raise InvalidArgumentError(
            f"shape mismatch: {x_hat.shape} vs {y_hat.shape}")
    valid = ~np.isnan(y_hat)
    centers = q.quantize(np.where(valid, y_hat, 0.0))
    inconsistent = valid & (q.cell(x_hat) != q.cell(np.where(valid, y_hat, 0.0)))
    # nearest point of the correct cell: the boundary facing x_hat, moved
    # one ulp toward the center so floor(cand/step) lands in that cell
    cand = centers - np.sign(centers - x_hat) * (q.step / 2.0)
    cand = np.nextafter(cand, centers)
    return np.where(inconsistent, cand, x_hat)


# ============================================================
# Monte-Carlo driver
# ============================================================

def run_simulation(f: SystematicFrame, scenario: Scenario, quantizer: Quantizer,
                   trials: int, seed: int) -> SimReport:
    """Measure reconstruction MSE over random codewords and compare closed forms.

    Deterministic given the seed: sources, error positions, and error values
    all flow from one generator.  Real-output frames only, since the source
    and quantizer model real samples.
    """
    if not (isinstance(trials, int) and trials >= 1):
        raise InvalidArgumentError(f"trials must be a positive integer, got {trials}")
    g = _real_matrix(f)
    n, k = f.n, f.k
    rng = np.random.default_rng(seed)
    sigma_q_sq = quantizer.sigma_q_sq
    warnings: List[str] = []

    x = rng.normal(0.0, scenario.sigma_x, size=(trials, k))
    y = x @ g.T
    emp_var = float(np.mean(y ** 2))
    pred_var = codeword_variance(f, scenario.sigma_x)
    overflow = quantizer.overflow_rate(y)
    if overflow > _OVERFLOW_WARN_RATE:
        warnings.append(
            f"quantizer overflow rate {overflow:.4f} exceeds {_OVERFLOW_WARN_RATE}; "
            "the flat-noise model assumes the range covers the codeword")
    y_hat = quantizer.quantize(y)

    refined_mse: Optional[float] = None
    if scenario.kind == QUANTIZE_ONLY:
        pinv = pseudoinverse(f).real
        x_hat = y_hat @ pinv.T
        predicted = (k / n) * sigma_q_sq
        if scenario.refine:
            sys_cols = list(f.systematic_rows.zero_based())
            refined = consistent_refine(x_hat, y_hat[:, sys_cols], quantizer)
            refined_mse = float(np.mean((refined - x) ** 2))
    elif scenario.kind == QUANTIZE_PLUS_ERROR:
        counts = (np.minimum(rng.poisson(scenario.nu, size=trials), n)
                  if scenario.poisson_errors
                  else np.full(trials, min(scenario.nu, n)))
        # one uniform permutation per trial; the first count[t] slots get hit
        order = rng.permuted(np.tile(np.arange(n), (trials, 1)), axis=1)
        hit = np.arange(n) < counts[:, None]
        values = rng.normal(0.0, np.sqrt(scenario.sigma_e_sq), size=(trials, n))
        errors = np.zeros((trials, n))
        np.put_along_axis(errors, order, np.where(hit, values, 0.0), axis=1)
        y_hat = y_hat + errors
        pinv = pseudoinverse(f).real
        x_hat = y_hat @ pinv.T
        predicted = (k / n) * (sigma_q_sq + scenario.nu / n * scenario.sigma_e_sq)
    else:
        erased = set(scenario.erased.indices)
        surviving = IndexSet(n=n, indices=tuple(i for i in range(1, n + 1)
                                                if i not in erased))
        if len(surviving) < k:
            raise InsufficientDataError(
                f"need at least k={k} surviving positions, got {len(surviving)}")
        sub = g[list(surviving.zero_based()), :]
        pinv_sub = np.linalg.pinv(sub)
        x_hat = y_hat[:, list(surviving.zero_based())] @ pinv_sub.T
        predicted = erasure_predicted_mse(f, surviving, sigma_q_sq)
        if scenario.refine:
            sys_rows = f.systematic_rows.zero_based()
            y_sys = np.where(np.isin(sys_rows, list(scenario.erased.zero_based())),
                             np.nan, y_hat[:, list(sys_rows)])
            refined = consistent_refine(x_hat, y_sys, quantizer)
            refined_mse = float(np.mean((refined - x) ** 2))

    empirical = float(np.mean((x_hat - x) ** 2))
    return SimReport(
        trials=trials,
        seed=seed,
        scenario=scenario,
        quantizer=quantizer,
        empirical_mse=empirical,
        predicted_mse=float(predicted),
        empirical_codeword_variance=emp_var,
        predicted_codeword_variance=pred_var,
        overflow_rate=overflow,
        refined_empirical_mse=refined_mse,
        warnings=tuple(warnings),
    )
