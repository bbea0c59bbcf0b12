"""Unitary representations of finite groups on C^d, and their diagonalization.

Abelian representations are simultaneously diagonalizable; ``diagonalize``
recovers a joint eigenbasis together with the exact character (exponent
tuple) attached to every basis vector.  The basis is found by
eigendecomposing a random Hermitian combination of the representation
matrices, verified, retried with fresh coefficients, and, if randomness
keeps failing, rebuilt deterministically by refining degenerate eigenspaces
one group element at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    GroupMismatchError,
    NonAbelianError,
    NumericalError,
)
from .groups import Character, FiniteGroup, SpectrumSet, SubgroupRestriction, spectrum
from .measures import Measure

__all__ = [
    "Representation",
    "DiagonalizedRep",
    "make_representation",
    "trivial_rep",
    "regular_rep",
    "character_rep",
    "conjugate_rep",
    "integrate",
    "tensor_conjugate",
    "restrict_representation",
    "diagonalize",
    "gelfand",
    "cyclic_vector",
]

UNITARITY_TOL = 1e-9         # on ||U*U - I||_F, scaled by dimension
HOMOMORPHISM_TOL = 1e-9      # on ||pi(a)pi(b) - pi(ab)||_F, scaled by dimension
DIAGONALITY_TOL = 1e-9       # off-diagonal magnitude in the joint eigenbasis
PHASE_TOL = 1e-6             # eigenvalue distance to the nearest root of unity
RECONSTRUCTION_TOL = 1e-8    # ||pi(s) - V diag(chi(s)) V*||_F
_EXHAUSTIVE_ORDER = 64
_PAIR_SAMPLES = 200
_MAX_RETRIES = 5


@dataclass(frozen=True, eq=False)
class Representation:
    """A unitary representation: one d x d matrix per group element."""

    group: FiniteGroup
    dim: int
    matrices: np.ndarray  # (order, d, d) complex

    def __post_init__(self) -> None:
        m = np.ascontiguousarray(self.matrices, dtype=np.complex128)
        if m.shape != (self.group.order, self.dim, self.dim):
            raise DimensionMismatchError(
                f"matrices must have shape ({self.group.order}, {self.dim}, {self.dim}), got {m.shape}"
            )
        object.__setattr__(self, "matrices", m)
        self.matrices.flags.writeable = False

    def matrix(self, element: int) -> np.ndarray:
        return self.matrices[element]

    def __repr__(self) -> str:
        return f"Representation(dim={self.dim}, group={self.group!r})"


def make_representation(group: FiniteGroup, matrices: np.ndarray) -> Representation:
    """Build a representation and verify unitarity plus the homomorphism law.

    Raises :class:`NumericalError` when the matrices fail to be a unitary
    representation: that is the signal the CLI maps to its numerical-failure
    exit code.
    """
    matrices = np.asarray(matrices, dtype=np.complex128)
    if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
        raise DimensionMismatchError("expected a stack of square matrices")
    pi = Representation(group, matrices.shape[1], matrices)
    _validate(pi)
    return pi


def _validate(pi: Representation) -> None:
    d, n = pi.dim, pi.group.order
    eye = np.eye(d)
    gram = np.einsum("sji,sjk->sik", np.conj(pi.matrices), pi.matrices)
    resid = np.linalg.norm(gram - eye, axis=(1, 2)).max()
    if resid > UNITARITY_TOL * d:
        raise NumericalError(f"matrices are not unitary: ||U*U - I||_F = {resid:.3e}")

    if np.linalg.norm(pi.matrices[pi.group.identity] - eye) > HOMOMORPHISM_TOL * d:
        raise NumericalError("identity element is not represented by the identity matrix")

    if n <= _EXHAUSTIVE_ORDER:
        for a in range(n):
            prod = pi.matrices[a] @ pi.matrices
            resid = np.linalg.norm(prod - pi.matrices[pi.group.cayley[a]], axis=(1, 2)).max()
            if resid > HOMOMORPHISM_TOL * d:
                raise NumericalError(f"homomorphism law fails at element {a}: residual {resid:.3e}")
    else:
        rng = np.random.default_rng(0)
        pairs = rng.integers(0, n, size=(_PAIR_SAMPLES, 2))
        for a, b in pairs:
            resid = np.linalg.norm(pi.matrices[a] @ pi.matrices[b] - pi.matrices[pi.group.cayley[a, b]])
            if resid > HOMOMORPHISM_TOL * d:
                raise NumericalError(f"homomorphism law fails at pair ({a},{b}): residual {resid:.3e}")


def trivial_rep(group: FiniteGroup, dim: int = 1) -> Representation:
    return Representation(group, dim, np.tile(np.eye(dim, dtype=np.complex128), (group.order, 1, 1)))


def regular_rep(group: FiniteGroup) -> Representation:
    """Left regular representation by permutation matrices: pi(s) e_t = e_{st}."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    for s in range(n):
        mats[s, group.cayley[s], np.arange(n)] = 1.0
    return Representation(group, n, mats)


def character_rep(group: FiniteGroup, chars: Sequence[Character]) -> Representation:
    """Diagonal representation with the given characters on the diagonal,
    with multiplicity as listed."""
    table = np.array([c.values(group) for c in chars])  # (d, order)
    d = len(chars)
    mats = np.zeros((group.order, d, d), dtype=np.complex128)
    idx = np.arange(d)
    mats[:, idx, idx] = table.T
    return Representation(group, d, mats)


def conjugate_rep(pi: Representation, v: np.ndarray) -> Representation:
    """The equivalent representation ``s -> V* pi(s) V`` for unitary V."""
    v = np.asarray(v, dtype=np.complex128)
    vh = v.conj().T
    return Representation(pi.group, pi.dim, np.einsum("ij,sjk,kl->sil", vh, pi.matrices, v))


def integrate(pi: Representation, mu: Measure) -> np.ndarray:
    """``sum_s mu({s}) pi(s)``, the representation of the measure algebra."""
    if not pi.group.is_same(mu.group):
        raise GroupMismatchError("representation and measure live on different groups")
    return np.einsum("s,sij->ij", mu.weights, pi.matrices)


def tensor_conjugate(pi: Representation) -> Representation:
    """The representation ``s -> pi(s) (x) conj(pi(s))`` on C^(d^2)."""
    d = pi.dim
    mats = np.einsum("sij,skl->sikjl", pi.matrices, np.conj(pi.matrices))
    return Representation(pi.group, d * d, mats.reshape(pi.group.order, d * d, d * d))


def restrict_representation(pi: Representation, sub: SubgroupRestriction) -> Representation:
    """Restrict to a subgroup, re-indexed by the subgroup's own elements."""
    if not pi.group.is_same(sub.group):
        raise GroupMismatchError("representation and subgroup live on different groups")
    return Representation(sub.subgroup, pi.dim, pi.matrices[sub.embedding])


# ---------------------------------------------------------------------------
# Joint diagonalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiagonalizedRep:
    """A representation together with a verified joint eigenbasis.

    ``basis`` has the joint eigenvectors as columns; ``char_of_index[j]``
    is the exact character such that ``pi(s) basis[:,j] = chi_j(s) basis[:,j]``
    for every s; ``spectrum`` is the duplicate-free sorted character set.
    """

    rep: Representation
    basis: np.ndarray
    char_of_index: tuple[Character, ...]
    spectrum: SpectrumSet

    def __post_init__(self) -> None:
        b = np.ascontiguousarray(self.basis, dtype=np.complex128)
        object.__setattr__(self, "basis", b)
        self.basis.flags.writeable = False


def _offdiag_max(mats: np.ndarray) -> float:
    off = mats.copy()
    idx = np.arange(mats.shape[1])
    off[:, idx, idx] = 0.0
    return float(np.abs(off).max()) if off.size else 0.0


def _cluster(values: np.ndarray, tol: float = 1e-8) -> list[list[int]]:
    """Group indices whose (possibly complex) values coincide within tol."""
    clusters: list[list[int]] = []
    reps: list[complex] = []
    for idx, val in enumerate(values):
        for ci, rep in enumerate(reps):
            if abs(val - rep) <= tol:
                clusters[ci].append(idx)
                break
        else:
            clusters.append([idx])
            reps.append(complex(val))
    return clusters


def _diagonalize_normal(sub: np.ndarray) -> np.ndarray:
    """Unitary diagonalizing a normal matrix: eigendecompose the Hermitian
    part, then the anti-Hermitian part inside each degenerate cluster (the
    two parts commute for normal input)."""
    herm = (sub + sub.conj().T) / 2
    anti = (sub - sub.conj().T) / 2j
    evals, w = np.linalg.eigh(herm)
    for cl in _cluster(evals):
        if len(cl) > 1:
            comp = w[:, cl].conj().T @ anti @ w[:, cl]
            _, w2 = np.linalg.eigh((comp + comp.conj().T) / 2)
            w[:, cl] = w[:, cl] @ w2
    return w


def _refine_sequentially(pi: Representation) -> np.ndarray:
    """Deterministic fallback: walk the elements, refining the basis inside
    each joint eigenspace found so far.  Those eigenspaces are invariant for
    the remaining matrices, whose compressions stay normal."""
    d = pi.dim
    v = np.eye(d, dtype=np.complex128)
    blocks: list[np.ndarray] = [np.arange(d)]
    for s in range(pi.group.order):
        next_blocks: list[np.ndarray] = []
        for blk in blocks:
            if len(blk) == 1:
                next_blocks.append(blk)
                continue
            basis = v[:, blk]
            sub = basis.conj().T @ pi.matrices[s] @ basis
            w = _diagonalize_normal(sub)
            v[:, blk] = basis @ w
            diag_vals = np.diag(w.conj().T @ sub @ w)
            for cl in _cluster(diag_vals):
                next_blocks.append(blk[cl])
        blocks = next_blocks
    return v


def diagonalize(pi: Representation, seed: int = 0) -> DiagonalizedRep:
    """Joint eigenbasis of an abelian representation with exact characters.

    Raises :class:`NonAbelianError` without a cyclic-product presentation and
    :class:`NumericalError` when the input is not (numerically) a
    representation: non-commuting matrices, eigenvalue phases that do not
    round to roots of unity within 1e-6, or a reconstruction residual above
    1e-8.
    """
    shape = pi.group.abelian_shape
    if shape is None:
        raise NonAbelianError("diagonalization needs a cyclic-product group")

    rng = np.random.default_rng(seed)
    mats = pi.matrices
    v = None
    for _ in range(_MAX_RETRIES):
        c1 = rng.standard_normal(pi.group.order)
        c2 = rng.standard_normal(pi.group.order)
        adj = mats.conj().transpose(0, 2, 1)
        herm = np.einsum("s,sij->ij", c1, mats + adj) + 1j * np.einsum("s,sij->ij", c2, mats - adj)
        herm = (herm + herm.conj().T) / 2
        _, cand = np.linalg.eigh(herm)
        rotated = np.einsum("ij,sjk,kl->sil", cand.conj().T, mats, cand)
        if _offdiag_max(rotated) <= DIAGONALITY_TOL:
            v = cand
            break
    if v is None:
        v = _refine_sequentially(pi)
        rotated = np.einsum("ij,sjk,kl->sil", v.conj().T, mats, v)
        if _offdiag_max(rotated) > DIAGONALITY_TOL:
            raise NumericalError(
                "joint diagonalization failed; matrices do not commute within tolerance"
            )

    chars = _read_characters(pi, v, shape)

    # global reconstruction check against the exact character values
    table = np.array([c.values(pi.group) for c in chars])  # (d, order)
    recon = np.einsum("ij,sj,kj->sik", v, table.T, np.conj(v))
    resid = float(np.linalg.norm(recon - mats, axis=(1, 2)).max())
    if resid > RECONSTRUCTION_TOL:
        raise NumericalError(f"eigenbasis reconstruction residual {resid:.3e} exceeds {RECONSTRUCTION_TOL}")

    return DiagonalizedRep(pi, v, tuple(chars), spectrum(pi.group, chars, sort=True))


def _read_characters(pi: Representation, v: np.ndarray, shape: tuple[int, ...]) -> list[Character]:
    """Exact exponents from the eigenvalue phases at the factor generators."""
    gens = []
    for axis in range(len(shape)):
        coords = [0] * len(shape)
        coords[axis] = 1 if shape[axis] > 1 else 0
        gens.append(pi.group.element_index(coords))

    chars = []
    diags = [np.diag(v.conj().T @ pi.matrices[g] @ v) for g in gens]
    for j in range(pi.dim):
        exps = []
        for axis, n in enumerate(shape):
            lam = diags[axis][j]
            k = int(np.round(np.angle(lam) * n / (2 * np.pi))) % n
            root = np.exp(2j * np.pi * k / n)
            if abs(lam - root) > PHASE_TOL:
                raise NumericalError(
                    f"eigenvalue {lam:.6f} is not a {n}-th root of unity within {PHASE_TOL}"
                )
            exps.append(k)
        chars.append(Character(shape, tuple(exps)))
    return chars


def gelfand(diag: DiagonalizedRep, mu: Measure, tol: float = 1e-9) -> dict[Character, complex]:
    """Evaluate ``sigma -> mu_hat(sigma)`` on the spectrum and verify that the
    integrated measure is diagonal in the joint eigenbasis with exactly those
    entries."""
    from .measures import fourier_stieltjes

    pi = diag.rep
    rotated = diag.basis.conj().T @ integrate(pi, mu) @ diag.basis
    values = {sigma: fourier_stieltjes(mu, sigma) for sigma in diag.spectrum}
    expected = np.diag(np.array([values[c] for c in diag.char_of_index]))
    resid = float(np.abs(rotated - expected).max())
    scale = max(1.0, mu.norm)
    if resid > tol * scale:
        raise NumericalError(f"integrated measure is not diagonal with transform values: residual {resid:.3e}")
    return values


# ---------------------------------------------------------------------------
# Cyclic vectors for block-diagonal algebras
# ---------------------------------------------------------------------------


def cyclic_vector(diag_dims: Sequence[int], vectors: Sequence[np.ndarray]) -> np.ndarray:
    """A single vector whose orbit under the block-diagonal algebra spans at
    least the span of the given vectors.

    ``diag_dims`` lists the block sizes of the algebra acting on C^d
    (all ones = the diagonal MASA).  The vector is assembled incrementally:
    each input contributes its components on the blocks it is the first to
    touch, which is an orthogonal-projection construction since the blocks
    are disjoint.  An empty input list yields the zero vector.
    """
    dims = [int(k) for k in diag_dims]
    if any(k < 1 for k in dims):
        raise ValueError("block sizes must be positive")
    d = sum(dims)
    starts = np.concatenate([[0], np.cumsum(dims)])
    xi = np.zeros(d, dtype=np.complex128)
    covered = [False] * len(dims)
    for vec in vectors:
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (d,):
            raise DimensionMismatchError(f"vectors must have length {d}")
        scale = np.linalg.norm(vec)
        for k in range(len(dims)):
            blk = slice(starts[k], starts[k + 1])
            if covered[k] or np.linalg.norm(vec[blk]) <= 1e-12 * max(1.0, scale):
                continue
            xi[blk] = vec[blk]
            covered[k] = True
    return xi


def block_algebra_basis(diag_dims: Sequence[int]) -> list[np.ndarray]:
    """Matrix-unit basis of the block-diagonal algebra with the given sizes."""
    dims = [int(k) for k in diag_dims]
    d = sum(dims)
    starts = np.concatenate([[0], np.cumsum(dims)])
    out = []
    for k, size in enumerate(dims):
        for i in range(size):
            for j in range(size):
                m = np.zeros((d, d), dtype=np.complex128)
                m[starts[k] + i, starts[k] + j] = 1.0
                out.append(m)
    return out
