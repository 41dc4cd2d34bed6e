"""Construction of DFT frames: the unitary transform, the row selector, the
generator set G, and the parity-check H.

A frame here is an n x k matrix G = sqrt(n/k) * Wn^H * Sigma (optionally
right-multiplied by Wk for the real variant), where Wn is the unitary order-n
DFT and Sigma keeps k of the n transform rows.  The zero rows of Sigma are the
parity directions; H collects the corresponding rows of Wn so that H @ G = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ConstructionError,
    InvalidArgumentError,
    UnsupportedCodeError,
)

REAL_BCH = "RealBCH"
COMPLEX_BCH = "ComplexBCH"
GENERAL_DFT = "GeneralDFT"
VARIANTS = (REAL_BCH, COMPLEX_BCH, GENERAL_DFT)

_IMAG_TOL = 1e-9
_SELF_CHECK_TOL = 1e-9


# ============================================================
# ComplexMatrix serialization helpers
# ============================================================

def matrix_to_json(m: np.ndarray) -> dict:
    """Serialize a dense matrix as {rows, cols, re, im} (row-major)."""
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": m.real.ravel().tolist(),
        "im": m.imag.ravel().tolist(),
    }


def matrix_from_json(doc: dict) -> np.ndarray:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc["im"], dtype=float)
    if re.size != rows * cols or im.size != rows * cols:
        raise InvalidArgumentError("matrix document has inconsistent sizes")
    return (re + 1j * im).reshape(rows, cols)


# ============================================================
# Frame parameters
# ============================================================

def _real_bch_blocks(n: int, k: int) -> Tuple[int, int]:
    alpha = math.ceil(n / 2) - (n - k) // 2
    return alpha, k - alpha


def _default_zero_rows(n: int, k: int, variant: str) -> Tuple[int, ...]:
    if variant == REAL_BCH:
        alpha, beta = _real_bch_blocks(n, k)
        return tuple(range(alpha, n - beta))
    # one trailing parity block: rows 0..k-1 carry the identity
    return tuple(range(k, n))


def _is_circularly_consecutive(rows: Sequence[int], n: int) -> bool:
    m = len(rows)
    if m in (0, n):
        return True
    s = set(rows)
    return any(all((start + i) % n in s for i in range(m)) for start in s)


@dataclass(frozen=True)
class FrameSpec:
    """Parameters that define one DFT frame.

    zero_rows are 0-based indices of the all-zero rows of Sigma; when omitted
    they default to the canonical placement for the variant.  BCH variants
    require the zero rows to be circularly consecutive.
    """

    n: int
    k: int
    variant: str = REAL_BCH
    zero_rows: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise InvalidArgumentError("n and k must be integers")
        if not (1 <= self.k <= self.n):
            raise InvalidArgumentError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.variant not in VARIANTS:
            raise InvalidArgumentError(
                f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.variant == REAL_BCH and self.n % 2 == 0 and self.k % 2 == 0:
            raise UnsupportedCodeError(
                f"real codes with n and k both even do not exist (n={self.n}, k={self.k})")
        zr = self.zero_rows
        if zr is None:
            zr = _default_zero_rows(self.n, self.k, self.variant)
        else:
            zr = tuple(int(r) for r in zr)
        if len(zr) != self.n - self.k or len(set(zr)) != len(zr):
            raise InvalidArgumentError(
                f"zero_rows must be {self.n - self.k} distinct indices, got {zr}")
        if any(not (0 <= r < self.n) for r in zr):
            raise InvalidArgumentError(f"zero_rows out of range [0, {self.n}): {zr}")
        if self.variant in (REAL_BCH, COMPLEX_BCH) and not _is_circularly_consecutive(zr, self.n):
            raise InvalidArgumentError(
                f"{self.variant} requires circularly consecutive zero rows, got {sorted(zr)}")
        if self.variant == REAL_BCH and tuple(sorted(zr)) != _default_zero_rows(self.n, self.k, REAL_BCH):
            raise InvalidArgumentError(
                "RealBCH fixes the zero rows at the canonical middle block "
                f"{list(_default_zero_rows(self.n, self.k, REAL_BCH))}, got {sorted(zr)}")
        object.__setattr__(self, "zero_rows", tuple(sorted(zr)))

    @property
    def support(self) -> Tuple[int, ...]:
        """0-based rows of Sigma that carry the identity entries, ascending."""
        zero = set(self.zero_rows)
        return tuple(m for m in range(self.n) if m not in zero)

    @property
    def blocks(self) -> Tuple[int, int]:
        """(alpha, beta): sizes of the leading/trailing identity blocks."""
        if self.variant == REAL_BCH:
            return _real_bch_blocks(self.n, self.k)
        if not self.zero_rows:
            return self.k, 0
        first_zero = min(self.zero_rows)
        alpha = sum(1 for m in self.support if m < first_zero)
        return alpha, self.k - alpha

    def has_consecutive_support(self) -> bool:
        return _is_circularly_consecutive(self.support, self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "variant": self.variant,
            "zero_rows": list(self.zero_rows),
        }


# ============================================================
# Matrix constructors
# ============================================================

def dft_matrix(n: int) -> np.ndarray:
    """Unitary order-n DFT with entries exp(-2j*pi*r*s/n)/sqrt(n)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"transform order must be a positive integer, got {n}")
    r = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(r, r) / n) / np.sqrt(n)


def sigma_matrix(spec: FrameSpec) -> np.ndarray:
    """The n x k row selector: each support row carries exactly one 1."""
    s = np.zeros((spec.n, spec.k), dtype=complex)
    for j, m in enumerate(spec.support):
        s[m, j] = 1.0
    return s


@dataclass(frozen=True)
class GeneratorSet:
    """A constructed frame: the generator G, parity-check H, and block sizes."""

    G: np.ndarray
    H: np.ndarray
    spec: FrameSpec
    alpha: int
    beta: int

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def is_real(self) -> bool:
        return bool(np.abs(self.G.imag).max(initial=0.0) < _IMAG_TOL)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "alpha": self.alpha,
            "beta": self.beta,
            "G": matrix_to_json(self.G),
            "H": matrix_to_json(self.H),
        }


def generator(spec: FrameSpec) -> GeneratorSet:
    """Build the generator and parity-check pair for a frame spec.

    The real variant multiplies by the order-k transform on the right and is
    only constructible when k is odd; an even k leaves residual imaginary
    parts in G no matter how the identity blocks are split.
    """
    n, k = spec.n, spec.k
    w_n = dft_matrix(n)
    g = np.sqrt(n / k) * w_n.conj().T @ sigma_matrix(spec)
    if spec.variant == REAL_BCH:
        if k % 2 == 0:
            # n odd here (both-even is rejected by FrameSpec); the symmetric
            # block sizes needed for a real result only exist for odd k.
            raise UnsupportedCodeError(
                f"the real construction needs odd k; (n={n}, k={k}) yields a complex generator")
        g = g @ dft_matrix(k)
        resid = float(np.abs(g.imag).max(initial=0.0))
        if resid >= _IMAG_TOL:
            raise ConstructionError(
                f"real-variant generator has imaginary residue {resid:.3e}")
        g = g.real.astype(complex)
    h = w_n[list(spec.zero_rows), :]

    if np.abs(h @ g).max(initial=0.0) > _SELF_CHECK_TOL:
        raise ConstructionError("parity-check self-test failed: H @ G != 0")
    gram = g.conj().T @ g
    if np.abs(gram - (n / k) * np.eye(k)).max() > _SELF_CHECK_TOL:
        raise ConstructionError("frame-operator self-test failed: G^H G != (n/k) I")

    alpha, beta = spec.blocks
    return GeneratorSet(G=g, H=h, spec=spec, alpha=alpha, beta=beta)


def gramian_entry(spec: FrameSpec, r: int, s: int) -> complex:
    """Closed-form entry (r, s) of G @ G^H, with 1-based row indices.

    Equals (1/k) * sum over the support rows m of exp(j*m*(theta_r - theta_s))
    with theta_x = 2*pi*(x-1)/n; the full matrix is circulant, so the value
    depends on (r - s) mod n only.
    """
    n = spec.n
    for name, idx in (("r", r), ("s", s)):
        if not (isinstance(idx, int) and 1 <= idx <= n):
            raise InvalidArgumentError(f"row index {name}={idx} outside [1, {n}]")
    theta = 2.0 * np.pi * (r - s) / n
    ms = np.asarray(spec.support)
    return complex(np.exp(1j * ms * theta).sum() / spec.k)
