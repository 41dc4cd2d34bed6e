"""Generator construction: DFT matrices, zero-row layout, and self-checks."""

import numpy as np
import pytest

from dftframe import (
    COMPLEX_BCH,
    GENERAL_DFT,
    REAL_BCH,
    FrameSpec,
    InvalidArgumentError,
    UnsupportedCodeError,
    dft_matrix,
    generator,
    gramian_entry,
    matrix_from_json,
    matrix_to_json,
    sigma_matrix,
)


# ============================================================
# DFT matrix
# ============================================================

def test_dft_matrix_order_one_and_two():
    np.testing.assert_allclose(dft_matrix(1), [[1.0]], atol=1e-15)
    w2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    np.testing.assert_allclose(dft_matrix(2), w2, atol=1e-15)


def test_dft_matrix_order_four_column():
    w4 = dft_matrix(4)
    np.testing.assert_allclose(w4[:, 1], np.array([1.0, -1j, -1.0, 1j]) / 2.0, atol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 5, 8, 12])
def test_dft_matrix_is_unitary(n):
    w = dft_matrix(n)
    np.testing.assert_allclose(w.conj().T @ w, np.eye(n), atol=1e-12)


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_dft_matrix_rejects_bad_order(bad):
    with pytest.raises(InvalidArgumentError):
        dft_matrix(bad)


# ============================================================
# FrameSpec validation and zero-row layout
# ============================================================

def test_real_default_zero_rows_are_centered():
    spec = FrameSpec(n=5, k=3)
    assert spec.variant == REAL_BCH
    assert spec.blocks == (2, 1)
    assert spec.zero_rows == (2, 3)
    assert spec.support == (0, 1, 4)


def test_complex_default_zero_rows_trail():
    spec = FrameSpec(n=7, k=4, variant=COMPLEX_BCH)
    assert spec.zero_rows == (4, 5, 6)
    assert spec.support == (0, 1, 2, 3)


def test_real_rejects_n_and_k_both_even():
    with pytest.raises(UnsupportedCodeError):
        FrameSpec(n=4, k=2)
    with pytest.raises(UnsupportedCodeError):
        FrameSpec(n=10, k=4)


def test_real_rejects_non_canonical_zero_rows():
    with pytest.raises(InvalidArgumentError):
        FrameSpec(n=5, k=3, zero_rows=(0, 1))


def test_bch_variants_require_consecutive_zero_rows():
    with pytest.raises(InvalidArgumentError):
        FrameSpec(n=6, k=3, variant=COMPLEX_BCH, zero_rows=(1, 3, 5))
    # the general variant accepts the same scattered layout
    spec = FrameSpec(n=6, k=3, variant=GENERAL_DFT, zero_rows=(1, 3, 5))
    assert spec.support == (0, 2, 4)
    assert not spec.has_consecutive_support()


def test_zero_rows_wrap_counts_as_consecutive():
    spec = FrameSpec(n=6, k=4, variant=COMPLEX_BCH, zero_rows=(5, 0))
    assert spec.zero_rows == (0, 5)
    assert spec.has_consecutive_support()


@pytest.mark.parametrize("kwargs", [
    dict(n=3, k=4),
    dict(n=0, k=0),
    dict(n=6, k=3, variant="Fourier"),
    dict(n=6, k=3, variant=GENERAL_DFT, zero_rows=(1,)),
    dict(n=6, k=3, variant=GENERAL_DFT, zero_rows=(1, 1, 2)),
    dict(n=6, k=3, variant=GENERAL_DFT, zero_rows=(1, 2, 6)),
])
def test_frame_spec_rejects_bad_arguments(kwargs):
    with pytest.raises(InvalidArgumentError):
        FrameSpec(**kwargs)


def test_sigma_matrix_places_identity_on_support():
    spec = FrameSpec(n=5, k=3)
    s = sigma_matrix(spec)
    assert s.shape == (5, 3)
    expected = np.zeros((5, 3))
    expected[0, 0] = expected[1, 1] = expected[4, 2] = 1.0
    np.testing.assert_allclose(s, expected, atol=0.0)


# ============================================================
# Generator self-checks
# ============================================================

@pytest.mark.parametrize("n,k,variant", [
    (5, 3, REAL_BCH),
    (6, 3, REAL_BCH),
    (7, 5, REAL_BCH),
    (10, 5, REAL_BCH),
    (7, 4, COMPLEX_BCH),
    (8, 3, GENERAL_DFT),
])
def test_generator_invariants(n, k, variant):
    gen = generator(FrameSpec(n=n, k=k, variant=variant))
    assert gen.G.shape == (n, k)
    assert gen.H.shape == (n - k, n)
    assert np.abs(gen.H @ gen.G).max() < 1e-9
    np.testing.assert_allclose(gen.G.conj().T @ gen.G, (n / k) * np.eye(k), atol=1e-9)
    # unit-norm rows: the Gramian diagonal is exactly 1
    np.testing.assert_allclose(np.sum(np.abs(gen.G) ** 2, axis=1), np.ones(n), atol=1e-9)


def test_real_variant_yields_real_generator():
    gen = generator(FrameSpec(n=6, k=3))
    assert gen.is_real
    assert np.abs(gen.G.imag).max() < 1e-12
    assert (gen.alpha, gen.beta) == (2, 1)


def test_real_variant_rejects_even_k():
    with pytest.raises(UnsupportedCodeError):
        generator(FrameSpec(n=7, k=4))


def test_complex_variant_is_generally_complex():
    gen = generator(FrameSpec(n=7, k=4, variant=COMPLEX_BCH))
    assert not gen.is_real


def test_full_rate_generator_is_square_unitary_scaled():
    gen = generator(FrameSpec(n=5, k=5))
    np.testing.assert_allclose(gen.G.conj().T @ gen.G, np.eye(5), atol=1e-12)
    assert gen.H.shape == (0, 5)


# ============================================================
# Gramian closed form
# ============================================================

def test_gramian_diagonal_is_one():
    spec = FrameSpec(n=10, k=5)
    for r in (1, 4, 10):
        assert gramian_entry(spec, r, r) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n,k,variant", [
    (6, 3, REAL_BCH),
    (10, 5, REAL_BCH),
    (7, 4, COMPLEX_BCH),
    (8, 3, GENERAL_DFT),
])
def test_gramian_closed_form_matches_product(n, k, variant):
    spec = FrameSpec(n=n, k=k, variant=variant)
    gen = generator(spec)
    gram = gen.G @ gen.G.conj().T
    worst = 0.0
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            worst = max(worst, abs(gramian_entry(spec, r, s) - gram[r - 1, s - 1]))
    assert worst < 1e-12


def test_gramian_is_circulant():
    spec = FrameSpec(n=9, k=4, variant=COMPLEX_BCH)
    base = gramian_entry(spec, 4, 1)
    for r in range(1, 7):
        assert gramian_entry(spec, r + 3, r) == pytest.approx(base, abs=1e-12)


def test_gramian_rejects_out_of_range_indices():
    spec = FrameSpec(n=6, k=3)
    with pytest.raises(InvalidArgumentError):
        gramian_entry(spec, 0, 1)
    with pytest.raises(InvalidArgumentError):
        gramian_entry(spec, 1, 7)


# ============================================================
# JSON round trips
# ============================================================

def test_matrix_json_round_trip():
    rng = np.random.default_rng(42)
    m = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    doc = matrix_to_json(m)
    assert doc["rows"] == 3 and doc["cols"] == 5
    np.testing.assert_allclose(matrix_from_json(doc), m, atol=0.0)


def test_frame_spec_json_round_trip():
    spec = FrameSpec(n=7, k=3)
    doc = spec.to_json()
    again = FrameSpec(n=doc["n"], k=doc["k"], variant=doc["variant"],
                      zero_rows=tuple(doc["zero_rows"]))
    assert again == spec


def test_generator_json_embeds_matrices():
    gen = generator(FrameSpec(n=6, k=3))
    doc = gen.to_json()
    np.testing.assert_allclose(matrix_from_json(doc["G"]), gen.G, atol=0.0)
    np.testing.assert_allclose(matrix_from_json(doc["H"]), gen.H, atol=0.0)
