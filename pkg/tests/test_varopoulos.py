"""Kernels on spectra, positive definiteness, and the positivity equivalences."""

import json

import numpy as np
import pytest

from ehtp.errors import GroupMismatchError, NumericalError
from ehtp.groups import Character, make_cyclic_product
from ehtp.measures import Measure, dirac, from_density
from ehtp.representations import character_rep, diagonalize, regular_rep
from ehtp.suites import random_character_rep
from ehtp.varopoulos import (
    VFunction,
    equivalence_suite,
    from_measure,
    gram_factorize,
    gram_sup,
    is_positive_definite,
)


def _spectrum(n, exponents):
    g = make_cyclic_product([n])
    chars = [Character((n,), (k,)) for k in exponents]
    return g, diagonalize(character_rep(g, chars))


class TestFromMeasure:
    def test_identity_point_mass_gives_all_ones(self):
        g, diag = _spectrum(5, [0, 1, 2])
        u = from_measure(diag, dirac(g, g.identity))
        assert np.allclose(u.values, np.ones((3, 3)))

    def test_point_mass_gives_a_rank_one_kernel(self):
        g, diag = _spectrum(6, [1, 4])
        u = from_measure(diag, dirac(g, 2))
        vals = np.array([c.evaluate(g, 2) for c in diag.spectrum])
        assert np.allclose(u.values, np.outer(vals, np.conj(vals)))
        assert np.linalg.matrix_rank(u.values) == 1

    def test_uniform_probability_gives_the_identity_kernel(self):
        g = make_cyclic_product([7])
        diag = diagonalize(regular_rep(g))
        u = from_measure(diag, from_density(g, np.ones(7)))
        assert np.allclose(u.values, np.eye(7), atol=1e-12)
        assert is_positive_definite(u)

    def test_linearity(self):
        g, diag = _spectrum(8, [1, 2, 5])
        rng = np.random.default_rng(0)
        mu = Measure(g, rng.standard_normal(8) + 1j * rng.standard_normal(8))
        nu = Measure(g, rng.standard_normal(8) + 1j * rng.standard_normal(8))
        lhs = from_measure(diag, mu + nu * 2.0)
        assert np.allclose(lhs.values, from_measure(diag, mu).values + 2.0 * from_measure(diag, nu).values)

    def test_group_mismatch_rejected(self):
        _, diag = _spectrum(5, [1])
        with pytest.raises(GroupMismatchError):
            from_measure(diag, dirac(make_cyclic_product([6]), 0))


class TestPositiveDefiniteness:
    def test_all_ones_kernel_is_positive(self):
        _, diag = _spectrum(5, [0, 2, 3])
        u = VFunction(diag.spectrum, np.ones((3, 3)))
        assert is_positive_definite(u)

    def test_signature_kernel_is_not(self):
        _, diag = _spectrum(5, [0, 2])
        u = VFunction(diag.spectrum, np.diag([1.0, -1.0]))
        assert not is_positive_definite(u)

    def test_non_hermitian_kernel_is_not(self):
        _, diag = _spectrum(5, [0, 2])
        u = VFunction(diag.spectrum, np.array([[1.0, 2.0], [0.0, 1.0]]))
        assert not is_positive_definite(u)

    def test_probability_measures_give_positive_kernels(self):
        g = make_cyclic_product([3, 3])
        rng = np.random.default_rng(1)
        for _ in range(10):
            diag = diagonalize(random_character_rep(g, rng, max_dim=5))
            w = rng.random(9)
            mu = Measure(g, w / w.sum())
            assert is_positive_definite(from_measure(diag, mu))


class TestGramFactorization:
    def test_all_ones_kernel_has_a_single_constant_factor(self):
        _, diag = _spectrum(7, [0, 1, 3])
        factors = gram_factorize(VFunction(diag.spectrum, np.ones((3, 3))))
        assert len(factors) == 1
        phi = factors[0]
        assert np.allclose(np.abs(phi), 1.0)
        assert np.allclose(phi, phi[0])  # constant up to the common phase

    def test_identity_kernel_factors_into_indicators(self):
        _, diag = _spectrum(5, [1, 2])
        factors = gram_factorize(VFunction(diag.spectrum, np.eye(2)))
        assert len(factors) == 2
        stacked = np.abs(np.stack(factors))
        assert np.allclose(np.sort(stacked, axis=1), [[0.0, 1.0], [0.0, 1.0]])

    def test_random_positive_kernels_reconstruct(self):
        rng = np.random.default_rng(2)
        _, diag = _spectrum(9, [0, 2, 5, 7])
        for _ in range(10):
            gmat = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            u = VFunction(diag.spectrum, gmat @ gmat.conj().T)
            factors = gram_factorize(u)
            recon = sum(np.outer(phi, np.conj(phi)) for phi in factors)
            assert np.linalg.norm(recon - u.values) < 1e-9

    def test_sup_is_the_largest_diagonal_entry(self):
        rng = np.random.default_rng(3)
        _, diag = _spectrum(8, [1, 3, 6])
        gmat = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        u = VFunction(diag.spectrum, gmat @ gmat.conj().T)
        factors = gram_factorize(u)
        assert gram_sup(factors) == pytest.approx(float(np.real(u.values.diagonal().max())), rel=1e-9)

    def test_indefinite_kernel_rejected(self):
        _, diag = _spectrum(5, [0, 1])
        with pytest.raises(NumericalError):
            gram_factorize(VFunction(diag.spectrum, np.diag([1.0, -1.0])))

    def test_empty_factorization_for_the_zero_kernel(self):
        _, diag = _spectrum(5, [0, 1])
        assert gram_factorize(VFunction(diag.spectrum, np.zeros((2, 2)))) == []
        assert gram_sup([]) == 0.0


class TestEquivalenceSuite:
    def test_identity_point_mass_is_positive_in_every_sense(self):
        g, diag = _spectrum(6, [0, 1, 3])
        report = equivalence_suite(diag, dirac(g, g.identity))
        assert report.completely_positive and report.positive_definite
        assert report.sampled_positive
        assert report.kraus_count == 1
        assert report.kraus_diagonality < 1e-10
        assert report.consistent

    def test_positive_measures_pass_with_diagonal_kraus(self):
        g = make_cyclic_product([2, 4])
        rng = np.random.default_rng(4)
        diag = diagonalize(random_character_rep(g, rng, max_dim=6))
        mu = Measure(g, rng.random(8))
        report = equivalence_suite(diag, mu)
        assert report.completely_positive and report.positive_definite
        assert report.kraus_count >= 1
        assert report.kraus_diagonality < 1e-8
        assert report.kraus_min_singular > 1e-9

    def test_signed_measures_fail_consistently(self):
        g, diag = _spectrum(7, [1, 2, 4])
        report = equivalence_suite(diag, (dirac(g, 1) - dirac(g, 0)) * 1.5)
        assert not report.completely_positive
        assert not report.positive_definite
        assert not report.sampled_positive
        assert report.consistent
        assert report.kraus_count == 0

    def test_generic_complex_measures_are_consistent(self):
        g = make_cyclic_product([9])
        rng = np.random.default_rng(5)
        for _ in range(10):
            diag = diagonalize(random_character_rep(g, rng, max_dim=5))
            mu = Measure(g, rng.standard_normal(9) + 1j * rng.standard_normal(9))
            report = equivalence_suite(diag, mu, trials=10)
            assert report.consistent


class TestVFunctionContainer:
    def test_shape_is_validated(self):
        _, diag = _spectrum(5, [0, 1])
        with pytest.raises(ValueError):
            VFunction(diag.spectrum, np.ones((3, 3)))

    def test_values_are_read_only(self):
        _, diag = _spectrum(5, [0, 1])
        u = VFunction(diag.spectrum, np.eye(2))
        with pytest.raises(ValueError):
            u.values[0, 0] = 2.0

    def test_json_form_lists_characters_and_value_pairs(self):
        _, diag = _spectrum(4, [1, 3])
        u = VFunction(diag.spectrum, np.array([[1.0, 2j], [-2j, 1.0]]))
        payload = json.loads(u.to_json())
        assert payload["characters"] == [{"exponents": [1]}, {"exponents": [3]}]
        assert payload["values"][0][1] == [0.0, 2.0]

    def test_csv_form_has_exponent_labels(self):
        g = make_cyclic_product([2, 2])
        chars = [Character((2, 2), (0, 1)), Character((2, 2), (1, 0))]
        diag = diagonalize(character_rep(g, chars))
        u = from_measure(diag, dirac(g, g.identity))
        lines = u.to_csv().splitlines()
        assert lines[0].split(",")[1:] == ["0:1", "1:0"]
        assert len(lines) == 3
