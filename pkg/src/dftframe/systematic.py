"""Systematic frames: G_sys = G @ G_k^{-1}, tightness, the variance
objective, and the optimal / worst choices of systematic rows.

The k selected rows of G_sys form an identity block, so those codeword
positions carry the message verbatim; the remaining n-k rows are parity.
The reconstruction variance objective tr(G_sys^H G_sys) = (n/k) * sum(1/
lambda_i) is minimized exactly by evenly spread rows and maximized by a
contiguous block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConstructionError, IllConditionedError, InvalidArgumentError
from .frames import FrameSpec, GeneratorSet, matrix_to_json
from .spectra import IndexSet, Spectrum, hermitian_eigenvalues, subframe

_IDENTITY_TOL = 1e-9
_COND_LIMIT = 1e12
DEFAULT_TIGHT_TOL = 1e-6


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True)
class DistanceProfile:
    """Successive circular gaps of a sorted row set and its minimum distance."""

    gaps: Tuple[int, ...]
    d_min: int

    def to_json(self) -> dict:
        return {"gaps": list(self.gaps), "d_min": self.d_min}


@dataclass(frozen=True)
class SystematicFrame:
    """An n x k systematic generator with its spectral summary.

    spectrum is that of G_k @ G_k^H (the selected square subframe);
    sys_spectrum is that of G_sys^H @ G_sys, whose eigenvalues are
    (n/k) / lambda in reversed order; variance_factor = tr(G_sys^H G_sys).
    """

    G_sys: np.ndarray
    base: GeneratorSet
    spec: FrameSpec
    systematic_rows: IndexSet
    spectrum: Spectrum
    sys_spectrum: Spectrum
    variance_factor: float

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def is_real(self) -> bool:
        return bool(np.abs(self.G_sys.imag).max(initial=0.0) < _IDENTITY_TOL)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "systematic_rows": list(self.systematic_rows.indices),
            "spectrum": self.spectrum.to_json(),
            "sys_spectrum": self.sys_spectrum.to_json(),
            "variance_factor": self.variance_factor,
            "tight": is_tight(self),
            "G_sys": matrix_to_json(self.G_sys),
        }


# ============================================================
# Construction
# ============================================================

def systematic_frame(gen: GeneratorSet, rows: IndexSet) -> SystematicFrame:
    """Right-multiply G by the inverse of its selected k x k subframe.

    The selected rows of the result form I_k, so the encoder is systematic
    on those positions.  A huge condition estimate on the subframe signals
    an upstream defect (every k-row subframe of these frames is invertible).
    """
    if len(rows) != gen.k:
        raise InvalidArgumentError(
            f"systematic rows must have exactly k={gen.k} indices, got {len(rows)}")
    g_k = subframe(gen, rows)
    cond = float(np.abs(np.linalg.cond(g_k, 1)))
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise IllConditionedError(
            f"selected subframe has condition estimate {cond:.3e} (> {_COND_LIMIT:.0e})")
    # G_sys @ G_k = G  solved column-block-wise via the transposed system
    g_sys = np.linalg.solve(g_k.T, gen.G.T).T

    ident = g_sys[list(rows.zero_based()), :]
    resid = float(np.abs(ident - np.eye(gen.k)).max())
    if resid > 1e-8:
        raise ConstructionError(
            f"systematic rows do not form an identity block (residual {resid:.3e})")

    spectrum = hermitian_eigenvalues(g_k @ g_k.conj().T)
    sys_spectrum = hermitian_eigenvalues(g_sys.conj().T @ g_sys)
    ratio = gen.n / gen.k
    for mu, lam in zip(sys_spectrum.eigenvalues, reversed(spectrum.eigenvalues)):
        if abs(mu - ratio / lam) > 1e-8 * max(1.0, abs(mu)):
            raise ConstructionError(
                "reciprocal-spectrum self-test failed: "
                f"{mu!r} vs {ratio / lam!r}")
    variance_factor = sys_spectrum.sum
    if variance_factor < gen.n - 1e-6:
        raise ConstructionError(
            f"variance factor {variance_factor!r} fell below its minimum {gen.n}")
    return SystematicFrame(
        G_sys=g_sys,
        base=gen,
        spec=gen.spec,
        systematic_rows=rows,
        spectrum=spectrum,
        sys_spectrum=sys_spectrum,
        variance_factor=float(variance_factor),
    )


def is_tight(f: SystematicFrame, tol: float = DEFAULT_TIGHT_TOL) -> bool:
    """True when the eigenvalues of G_sys^H G_sys agree to relative tol."""
    if tol <= 0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tol}")
    mu = f.sys_spectrum
    return (mu.lambda_max - mu.lambda_min) / mu.lambda_max < tol


# ============================================================
# Row-set selection
# ============================================================

def _orbit_lexmin(n: int, base: Tuple[int, ...]) -> Tuple[int, ...]:
    """Lexicographically smallest member over all shifts and reversals."""
    from .cosets import reversal, shift

    best = None
    for start in (IndexSet(n=n, indices=base),
                  reversal(IndexSet(n=n, indices=base))):
        for c in range(n):
            cand = shift(start, c).indices
            if best is None or cand < best:
                best = cand
    return best


def optimal_index_set(n: int, k: int) -> IndexSet:
    """Evenly spread systematic rows: the variance-minimizing choice.

    Uses gaps floor(n*(i+1)/k) - floor(n*i/k), which interleaves ceil(n/k)
    and floor(n/k) steps as evenly as possible, then returns the
    lexicographically smallest shift/reversal-equivalent set.
    """
    if not (1 <= k <= n):
        raise InvalidArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    rows = [1]
    for i in range(k - 1):
        rows.append(rows[-1] + (n * (i + 1)) // k - (n * i) // k)
    return IndexSet(n=n, indices=_orbit_lexmin(n, tuple(rows)))


def worst_index_set(n: int, k: int) -> IndexSet:
    """Circularly successive rows {1..k}: the variance-maximizing choice."""
    if not (1 <= k <= n):
        raise InvalidArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    return IndexSet(n=n, indices=tuple(range(1, k + 1)))


def distance_profile(rows: IndexSet) -> DistanceProfile:
    """Successive circular gaps (in sorted-row order) and the minimum gap."""
    gaps = rows.gaps()
    return DistanceProfile(gaps=gaps, d_min=min(gaps))


def codeword_variance(f: SystematicFrame, sigma_x: float) -> float:
    """Per-sample variance of y = G_sys @ x for i.i.d. x of variance sigma_x^2."""
    if not (sigma_x > 0):
        raise InvalidArgumentError(f"sigma_x must be positive, got {sigma_x}")
    return float(sigma_x ** 2 * f.variance_factor / f.n)
