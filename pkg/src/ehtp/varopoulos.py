"""Functions on a character spectrum, positive definiteness, and the
equivalence of positivity notions for measure-induced Schur multipliers.

A measure acting through a diagonalized abelian representation is an
entrywise (Schur) multiplier with symbol ``u(sigma, tau) = mu_hat(sigma
tau^-1)`` on the spectrum.  Complete positivity of the map, positive
semidefiniteness of the symbol, and positivity on sampled states are all
equivalent; ``equivalence_suite`` exercises all three plus the structure of
the Kraus family (which must land in the algebra diagonalized by the
eigenbasis).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .elementary import (
    conjugate_by,
    is_completely_positive,
    positive_implies_cp_check,
    strongly_independent_kraus,
    vec,
)
from .errors import EquivalenceViolationError, GroupMismatchError, NumericalError
from .gamma import gamma
from .groups import SpectrumSet
from .measures import Measure, fourier_stieltjes
from .representations import DiagonalizedRep

__all__ = [
    "VFunction",
    "from_measure",
    "is_positive_definite",
    "gram_factorize",
    "gram_sup",
    "equivalence_suite",
    "EquivalenceReport",
]

PSD_TOL = 1e-9
GRAM_EIGENVALUE_CUTOFF = 1e-10  # relative to the largest eigenvalue
KRAUS_DIAGONALITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class VFunction:
    """A kernel on a spectrum set: one complex value per character pair."""

    spectrum: SpectrumSet
    values: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.spectrum)
        vals = np.ascontiguousarray(self.values, dtype=np.complex128)
        if vals.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {vals.shape}")
        object.__setattr__(self, "values", vals)
        self.values.flags.writeable = False

    @property
    def is_hermitian(self) -> bool:
        return bool(np.linalg.norm(self.values - self.values.conj().T)
                    <= PSD_TOL * max(1.0, float(np.linalg.norm(self.values))))

    def to_json(self) -> str:
        payload = {
            "characters": [{"exponents": list(c.exponents)} for c in self.spectrum],
            "values": [[[float(v.real), float(v.imag)] for v in row] for row in self.values],
        }
        return json.dumps(payload, sort_keys=True)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        labels = [":".join(str(e) for e in c.exponents) for c in self.spectrum]
        writer.writerow([""] + labels)
        for label, row in zip(labels, self.values):
            writer.writerow([label] + [repr(complex(v)) for v in row])
        return out.getvalue()


def from_measure(diag: DiagonalizedRep, mu: Measure) -> VFunction:
    """The kernel ``(sigma, tau) -> mu_hat(sigma tau^-1)`` on the spectrum."""
    if not diag.rep.group.is_same(mu.group):
        raise GroupMismatchError("representation and measure live on different groups")
    chars = diag.spectrum.characters
    n = len(chars)
    vals = np.zeros((n, n), dtype=np.complex128)
    for i, sigma in enumerate(chars):
        for j, tau in enumerate(chars):
            vals[i, j] = fourier_stieltjes(mu, sigma.quotient(tau))
    return VFunction(diag.spectrum, vals)


def is_positive_definite(u: VFunction, tol: float = PSD_TOL) -> bool:
    """Numerically Hermitian positive semidefinite as a matrix on the
    spectrum: smallest eigenvalue >= -tol * max(1, largest absolute
    eigenvalue), the same threshold convention as
    :func:`ehtp.elementary.is_completely_positive`."""
    if not u.is_hermitian:
        return False
    evals = np.linalg.eigvalsh((u.values + u.values.conj().T) / 2)
    if evals.size == 0:
        return True
    return bool(evals.min() >= -tol * max(1.0, float(np.abs(evals).max())))


def gram_factorize(u: VFunction, tol: float = PSD_TOL) -> list[np.ndarray]:
    """Functions ``phi_i`` on the spectrum with ``u(s, t) = sum_i phi_i(s)
    conj(phi_i(t))``, from the eigendecomposition; eigenvalues below
    ``1e-10`` times the largest are dropped.  Errors on a kernel that is not
    positive semidefinite."""
    if not is_positive_definite(u, tol):
        raise NumericalError("kernel is not positive semidefinite")
    evals, evecs = np.linalg.eigh((u.values + u.values.conj().T) / 2)
    top = float(evals.max()) if evals.size else 0.0
    if top <= 0.0:
        return []
    keep = evals > GRAM_EIGENVALUE_CUTOFF * top
    return [np.sqrt(lam) * evecs[:, i] for i, lam in zip(np.nonzero(keep)[0], evals[keep])]


def gram_sup(factors: list[np.ndarray]) -> float:
    """``sup_sigma sum_i |phi_i(sigma)|^2``, the diagonal supremum of the kernel."""
    if not factors:
        return 0.0
    return float(np.max(np.sum(np.abs(np.array(factors)) ** 2, axis=0)))


@dataclass(frozen=True)
class EquivalenceReport:
    """Verdicts of the three positivity criteria plus Kraus structure data."""

    completely_positive: bool
    positive_definite: bool
    sampled_positive: bool
    kraus_count: int
    kraus_min_singular: float
    kraus_diagonality: float

    @property
    def consistent(self) -> bool:
        return self.completely_positive == self.positive_definite


def equivalence_suite(
    diag: DiagonalizedRep,
    mu: Measure,
    trials: int = 50,
    tol: float = PSD_TOL,
    seed: int = 0,
) -> EquivalenceReport:
    """Run all three positivity criteria on one (representation, measure)
    pair and check their consistency.

    Asserts that complete positivity of the realized operator and positive
    semidefiniteness of the kernel agree, and that positivity on sampled
    states never contradicts them.  On completely positive instances the
    strongly independent Kraus family is extracted and must consist of
    matrices diagonal in the joint eigenbasis.

    Raises :class:`EquivalenceViolationError` on any disagreement; a raise
    here signals a bug, not a property of the input.
    """
    op = gamma(diag.rep, mu).op
    cp = is_completely_positive(op, tol)
    pd = is_positive_definite(from_measure(diag, mu), tol)
    rotated = conjugate_by(op, diag.basis)
    sampled = positive_implies_cp_check(rotated, trials=trials, tol=tol, seed=seed)

    if cp != pd:
        raise EquivalenceViolationError(
            f"complete positivity ({cp}) disagrees with kernel positivity ({pd})"
        )
    if cp and not sampled.sampled_positive:
        raise EquivalenceViolationError("sampled positivity contradicts complete positivity")

    kraus_count = 0
    min_singular = float("nan")
    diagonality = float("nan")
    if cp:
        kraus = strongly_independent_kraus(op, tol)
        kraus_count = len(kraus)
        if kraus:
            stacked = np.stack([vec(k) for k in kraus], axis=1)
            min_singular = float(np.linalg.svd(stacked, compute_uv=False).min())
            vh = diag.basis.conj().T
            diagonality = 0.0
            for k in kraus:
                rot = vh @ k @ diag.basis
                off = rot - np.diag(np.diag(rot))
                diagonality = max(
                    diagonality,
                    float(np.linalg.norm(off) / max(np.linalg.norm(rot), 1e-300)),
                )
            if diagonality > KRAUS_DIAGONALITY_TOL:
                raise EquivalenceViolationError(
                    f"Kraus family is not diagonal in the eigenbasis: residual {diagonality:.3e}"
                )
    return EquivalenceReport(
        completely_positive=cp,
        positive_definite=pd,
        sampled_positive=sampled.sampled_positive,
        kraus_count=kraus_count,
        kraus_min_singular=min_singular,
        kraus_diagonality=diagonality,
    )