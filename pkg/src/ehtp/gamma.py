"""The conjugation-average action of a measure under a unitary representation.

For a measure mu and representation pi the map

    x -> sum_s mu({s}) pi(s) x pi(s)*

is an elementary operator; measure convolution turns into composition of
maps, so this is a homomorphism from the measure algebra into completely
bounded maps, contractive from total variation to cb norm.  For abelian
groups the map is a Schur multiplier in the joint eigenbasis, with symbol
``(j, k) -> mu_hat(chi_j * chi_k^-1)``, and its kernel is detected either by
the Fourier transform vanishing on the quotient set of the spectrum or by
the vanishing of the integrated tensor-conjugate representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elementary import ElementaryOperator, apply, slice_left, transfer_matrix
from .errors import GroupMismatchError, NumericalError, RestrictionMismatchError
from .groups import SubgroupRestriction, difference_set
from .measures import Measure, fourier_stieltjes, reverse
from .representations import (
    DiagonalizedRep,
    Representation,
    diagonalize,
    integrate,
    restrict_representation,
    tensor_conjugate,
)

__all__ = [
    "GammaImage",
    "gamma",
    "slice_identity_residual",
    "schur_form",
    "kernel_test_difference_set",
    "kernel_test_tensor_conjugate",
    "kernel_test_transfer",
    "restriction_spectrum_check",
    "RestrictionReport",
]

SCHUR_TOL = 1e-9
DIFFSET_TOL = 1e-10
TRANSFER_TOL = 1e-9
SLICE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GammaImage:
    """A measure realized as an elementary operator through a representation.

    One term ``(mu({s}) pi(s), pi(s)*)`` per support point, in element order;
    the term list records the provenance and is intentionally not pruned.
    """

    op: ElementaryOperator
    source: Measure
    rep: Representation

    def apply(self, x: np.ndarray) -> np.ndarray:
        return apply(self.op, x)

    def transfer(self) -> np.ndarray:
        return transfer_matrix(self.op)


def gamma(pi: Representation, mu: Measure) -> GammaImage:
    """Realize ``mu`` as the elementary operator ``x -> sum mu({s}) pi(s) x pi(s)*``."""
    if not pi.group.is_same(mu.group):
        raise GroupMismatchError("representation and measure live on different groups")
    support = mu.support()
    left = mu.weights[support, None, None] * pi.matrices[support]
    right = pi.matrices[support].conj().transpose(0, 2, 1)
    return GammaImage(ElementaryOperator(pi.dim, left, right), mu, pi)


def slice_identity_residual(image: GammaImage, w: np.ndarray) -> float:
    """Residual of the left-slice identity: slicing the operator against
    ``omega(a) = trace(W* a)`` equals integrating the reversal of the measure
    reweighted by ``s -> omega(pi(s))``."""
    pi, mu = image.rep, image.source
    weighted = Measure(mu.group, mu.weights * np.einsum("sij,ij->s", pi.matrices, np.conj(w)))
    expected = integrate(pi, reverse(weighted))
    return float(np.linalg.norm(slice_left(image.op, w) - expected))


def _symbol_residual(diag: DiagonalizedRep, mu: Measure, symbol: np.ndarray) -> float:
    """Worst entrywise deviation of the operator from acting as the symbol
    on the rotated matrix units."""
    op = gamma(diag.rep, mu).op
    v = diag.basis
    resid = 0.0
    for j in range(diag.rep.dim):
        for k in range(diag.rep.dim):
            unit = np.outer(v[:, j], np.conj(v[:, k]))
            resid = max(resid, float(np.abs(apply(op, unit) - symbol[j, k] * unit).max()))
    return resid


def schur_form(diag: DiagonalizedRep, mu: Measure, tol: float = SCHUR_TOL) -> np.ndarray:
    """Symbol matrix of the map in the joint eigenbasis.

    Entry ``(j, k)`` is ``mu_hat(chi_j * chi_k^-1)``; verified against a
    direct application of the operator to every rotated matrix unit.
    """
    pi = diag.rep
    if not pi.group.is_same(mu.group):
        raise GroupMismatchError("representation and measure live on different groups")
    d = pi.dim
    chars = diag.char_of_index
    cache: dict[tuple[int, ...], complex] = {}
    symbol = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            quot = chars[j].quotient(chars[k])
            if quot.exponents not in cache:
                cache[quot.exponents] = fourier_stieltjes(mu, quot)
            symbol[j, k] = cache[quot.exponents]

    resid = _symbol_residual(diag, mu, symbol)
    if resid > tol * max(1.0, mu.norm):
        raise NumericalError(f"symbol verification failed: residual {resid:.3e}")
    return symbol


def kernel_test_difference_set(diag: DiagonalizedRep, mu: Measure, tol: float = DIFFSET_TOL) -> bool:
    """True iff the Fourier-Stieltjes transform vanishes on every quotient
    ``sigma * tau^-1`` of spectrum characters."""
    if not diag.rep.group.is_same(mu.group):
        raise GroupMismatchError("representation and measure live on different groups")
    quotients = difference_set(diag.spectrum)
    values = [fourier_stieltjes(mu, sigma) for sigma in quotients]
    return bool(max(abs(v) for v in values) <= tol)


def kernel_test_tensor_conjugate(pi: Representation, mu: Measure, tol: float = TRANSFER_TOL) -> bool:
    """True iff ``mu`` integrates to zero under ``pi (x) conj(pi)``."""
    tensor = tensor_conjugate(pi)
    resid = float(np.linalg.norm(integrate(tensor, mu)))
    return bool(resid <= tol * pi.dim**2)


def kernel_test_transfer(image: GammaImage, tol: float = TRANSFER_TOL) -> bool:
    """True iff the transfer matrix of the realized operator vanishes."""
    return bool(np.linalg.norm(image.transfer()) <= tol * image.rep.dim**2)


@dataclass(frozen=True)
class RestrictionReport:
    """Outcome of restricting a representation to a subgroup."""

    expected_exponents: tuple[tuple[int, ...], ...]
    actual_exponents: tuple[tuple[int, ...], ...]
    symbol_residual: float

    @property
    def match(self) -> bool:
        return self.expected_exponents == self.actual_exponents


def restriction_spectrum_check(
    pi: Representation,
    sub: SubgroupRestriction,
    seed: int = 0,
    tol: float = SCHUR_TOL,
) -> RestrictionReport:
    """Check that restricting the representation to a subgroup restricts its
    spectrum: the character set of ``pi`` restricted to H equals the
    restriction of the character set of ``pi``.  Also verifies the symbol
    identity for the restricted data on a random measure.

    Raises :class:`RestrictionMismatchError` when the sets differ.
    """
    diag_g = diagonalize(pi)
    expected = sub.restrict_spectrum(diag_g.spectrum)

    restricted = restrict_representation(pi, sub)
    diag_h = diagonalize(restricted)

    expected_exps = tuple(sorted(expected.exponent_set()))
    actual_exps = tuple(sorted(diag_h.spectrum.exponent_set()))
    if expected_exps != actual_exps:
        raise RestrictionMismatchError(
            f"restricted spectrum {actual_exps} differs from restricted character set {expected_exps}"
        )

    rng = np.random.default_rng(seed)
    h = sub.subgroup
    kappa = Measure(h, rng.standard_normal(h.order) + 1j * rng.standard_normal(h.order))
    symbol = schur_form(diag_h, kappa, tol=tol)
    resid = _symbol_residual(diag_h, kappa, symbol)
    return RestrictionReport(expected_exps, actual_exps, resid)
