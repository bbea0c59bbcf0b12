"""Elementary operators on M_d: finite sums x -> sum_i a_i x b_i.

This is the concrete form every map in this package takes.  The module
provides application, composition (term-wise product lists), slice maps
against trace functionals, the Choi matrix, complete-positivity tests,
Kraus extraction with strong (linear) independence, and the
positivity-implies-complete-positivity check for bimodule maps over the
diagonal MASA.

Conventions, fixed once for the whole package:

* ``vec`` stacks columns: ``vec(m) = m.T.ravel()``, so
  ``vec(a x b) = (b^T (x) a) vec(x)`` and the transfer matrix of the map is
  ``sum_i b_i^T (x) a_i``.
* The Choi matrix has block ``(i, j)`` equal to ``T(E_ij)``; a single term
  ``a (x) b`` contributes ``vec(a) vec(b*)^``, so a Kraus term ``a (x) a*``
  contributes the rank-one ``vec(a) vec(a)^*``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    BimoduleError,
    DimensionMismatchError,
    NotCompletelyPositiveError,
    NumericalError,
)

__all__ = [
    "ElementaryOperator",
    "vec",
    "unvec",
    "identity_op",
    "conjugation_op",
    "schur_op",
    "apply",
    "compose",
    "transfer_matrix",
    "slice_left",
    "slice_right",
    "choi",
    "is_completely_positive",
    "strongly_independent_kraus",
    "is_diagonal_bimodule",
    "positive_implies_cp_check",
    "conjugate_by",
    "PositivityReport",
    "op_to_json",
    "op_from_json",
]

CP_TOL = 1e-9
KRAUS_EIGENVALUE_CUTOFF = 1e-12   # relative to the largest Choi eigenvalue
KRAUS_RECONSTRUCTION_TOL = 1e-9
STRONG_INDEPENDENCE_TOL = 1e-9


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m).T.ravel()


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise DimensionMismatchError("vector length is not a perfect square")
    return v.reshape(d, d).T


@dataclass(frozen=True, eq=False)
class ElementaryOperator:
    """``x -> sum_i left[i] x right[i]`` on d x d matrices.

    Terms are kept as given; nothing is pruned, so the term list documents
    how the operator was assembled.
    """

    dim: int
    left: np.ndarray   # (n, d, d)
    right: np.ndarray  # (n, d, d)

    def __post_init__(self) -> None:
        l = np.ascontiguousarray(self.left, dtype=np.complex128)
        r = np.ascontiguousarray(self.right, dtype=np.complex128)
        d = self.dim
        if l.shape != r.shape or l.ndim != 3 or l.shape[1:] != (d, d):
            raise DimensionMismatchError(
                f"term stacks must both have shape (n, {d}, {d}); got {l.shape} and {r.shape}"
            )
        object.__setattr__(self, "left", l)
        object.__setattr__(self, "right", r)
        self.left.flags.writeable = False
        self.right.flags.writeable = False

    @classmethod
    def from_terms(cls, dim: int, terms: Iterable[tuple[np.ndarray, np.ndarray]]) -> "ElementaryOperator":
        pairs = [(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)) for a, b in terms]
        if pairs:
            left = np.stack([a for a, _ in pairs])
            right = np.stack([b for _, b in pairs])
        else:
            left = np.zeros((0, dim, dim), dtype=np.complex128)
            right = np.zeros((0, dim, dim), dtype=np.complex128)
        return cls(dim, left, right)

    @property
    def n_terms(self) -> int:
        return self.left.shape[0]

    @property
    def terms(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        return tuple((self.left[i], self.right[i]) for i in range(self.n_terms))

    def __repr__(self) -> str:
        return f"ElementaryOperator(dim={self.dim}, n_terms={self.n_terms})"


def identity_op(dim: int) -> ElementaryOperator:
    eye = np.eye(dim, dtype=np.complex128)
    return ElementaryOperator.from_terms(dim, [(eye, eye)])


def conjugation_op(u: np.ndarray) -> ElementaryOperator:
    """``x -> u x u*`` as a single-term operator."""
    u = np.asarray(u, dtype=np.complex128)
    return ElementaryOperator.from_terms(u.shape[0], [(u, u.conj().T)])


def schur_op(symbol: np.ndarray) -> ElementaryOperator:
    """Entrywise multiplication by ``symbol`` as an elementary operator,
    one term per row: ``x -> sum_j E_jj x diag(symbol[j])``."""
    symbol = np.asarray(symbol, dtype=np.complex128)
    d = symbol.shape[0]
    if symbol.shape != (d, d):
        raise DimensionMismatchError("symbol must be square")
    terms = []
    for j in range(d):
        e_jj = np.zeros((d, d), dtype=np.complex128)
        e_jj[j, j] = 1.0
        terms.append((e_jj, np.diag(symbol[j])))
    return ElementaryOperator.from_terms(d, terms)


def _check_dim(t: ElementaryOperator, x: np.ndarray) -> None:
    if x.shape != (t.dim, t.dim):
        raise DimensionMismatchError(f"argument must be {t.dim} x {t.dim}, got {x.shape}")


def apply(t: ElementaryOperator, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    _check_dim(t, x)
    if t.n_terms == 0:
        return np.zeros((t.dim, t.dim), dtype=np.complex128)
    return np.einsum("nij,jk,nkl->il", t.left, x, t.right)


def compose(s: ElementaryOperator, t: ElementaryOperator) -> ElementaryOperator:
    """``s`` after ``t``: term pairs ``(a_i c_j, d_j b_i)`` from
    ``s = sum a_i (x) b_i`` and ``t = sum c_j (x) d_j``."""
    if s.dim != t.dim:
        raise DimensionMismatchError("operators act on different dimensions")
    d = s.dim
    left = np.einsum("iab,jbc->ijac", s.left, t.left).reshape(-1, d, d)
    right = np.einsum("jab,ibc->ijac", t.right, s.right).reshape(-1, d, d)
    return ElementaryOperator(d, left, right)


def transfer_matrix(t: ElementaryOperator) -> np.ndarray:
    """Matrix of the map on column-stacked vectors: ``sum_i right_i^T (x) left_i``."""
    d = t.dim
    if t.n_terms == 0:
        return np.zeros((d * d, d * d), dtype=np.complex128)
    return np.einsum("nba,ncd->acbd", t.right, t.left).reshape(d * d, d * d)


def slice_left(t: ElementaryOperator, w: np.ndarray) -> np.ndarray:
    """Left slice against the functional ``omega(a) = trace(W* a)``:
    ``sum_i omega(left_i) right_i``."""
    w = np.asarray(w, dtype=np.complex128)
    _check_dim(t, w)
    if t.n_terms == 0:
        return np.zeros((t.dim, t.dim), dtype=np.complex128)
    coeffs = np.einsum("nij,ij->n", t.left, np.conj(w))
    return np.einsum("n,nij->ij", coeffs, t.right)


def slice_right(t: ElementaryOperator, w: np.ndarray) -> np.ndarray:
    """Right slice: ``sum_i omega(right_i) left_i``."""
    w = np.asarray(w, dtype=np.complex128)
    _check_dim(t, w)
    if t.n_terms == 0:
        return np.zeros((t.dim, t.dim), dtype=np.complex128)
    coeffs = np.einsum("nij,ij->n", t.right, np.conj(w))
    return np.einsum("n,nij->ij", coeffs, t.left)


def choi(t: ElementaryOperator) -> np.ndarray:
    """Choi matrix with block ``(i, j)`` equal to ``T(E_ij)``."""
    d = t.dim
    c = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(t.n_terms):
        va = vec(t.left[i])
        vb = vec(t.right[i].conj().T)
        c += np.outer(va, np.conj(vb))
    return c


def _choi_hermitian_part(t: ElementaryOperator, tol: float) -> np.ndarray | None:
    """Hermitian part of the Choi matrix, or None when the map is not
    Hermiticity-preserving within tolerance."""
    c = choi(t)
    scale = max(1.0, float(np.linalg.norm(c)))
    if np.linalg.norm(c - c.conj().T) > tol * scale:
        return None
    return (c + c.conj().T) / 2


def is_completely_positive(t: ElementaryOperator, tol: float = CP_TOL) -> bool:
    """True iff the Choi matrix is (numerically) positive semidefinite:
    Hermitian, with smallest eigenvalue >= -tol * max(1, largest absolute
    eigenvalue).  The unit floor keeps maps that are zero up to cancellation
    noise on the positive side."""
    herm = _choi_hermitian_part(t, tol)
    if herm is None:
        return False
    evals = np.linalg.eigvalsh(herm)
    if evals.size == 0:
        return True
    top = float(np.abs(evals).max())
    return bool(evals.min() >= -tol * max(1.0, top))


def strongly_independent_kraus(t: ElementaryOperator, tol: float = CP_TOL) -> list[np.ndarray]:
    """Kraus decomposition ``T(x) = sum_i k_i x k_i*`` with linearly
    independent (strongly independent) Kraus elements.

    Taken from the eigendecomposition of the Choi matrix, pruning the null
    space; the surviving vectorized elements are orthogonal with norms
    ``sqrt(lambda_i)``, so the family is automatically strongly independent.
    Raises for a map that is not completely positive, and verifies the
    reconstruction on all matrix units.
    """
    if not is_completely_positive(t, tol):
        raise NotCompletelyPositiveError("Kraus extraction needs a completely positive map")
    herm = _choi_hermitian_part(t, tol)
    assert herm is not None
    evals, evecs = np.linalg.eigh(herm)
    top = float(evals.max()) if evals.size else 0.0
    if top <= 0.0:
        return []
    # unit floor: a map that is zero up to cancellation noise keeps no terms
    keep = evals > KRAUS_EIGENVALUE_CUTOFF * max(1.0, top)
    kraus = [unvec(np.sqrt(lam) * evecs[:, i]) for i, lam in zip(np.nonzero(keep)[0], evals[keep])]

    recon = ElementaryOperator.from_terms(t.dim, [(k, k.conj().T) for k in kraus])
    resid = _unit_residual(t, recon)
    if resid > KRAUS_RECONSTRUCTION_TOL * max(1.0, top):
        raise NumericalError(f"Kraus reconstruction residual {resid:.3e}")
    return kraus


def _unit_residual(s: ElementaryOperator, t: ElementaryOperator) -> float:
    """Largest Frobenius deviation of the two maps on matrix units."""
    return float(np.abs(transfer_matrix(s) - transfer_matrix(t)).max())


def is_diagonal_bimodule(t: ElementaryOperator, tol: float = CP_TOL) -> bool:
    """True iff the map is a bimodule map over the diagonal MASA, i.e. it
    commutes with left/right multiplication by diagonal matrices.  Concretely
    every matrix unit must map to a multiple of itself."""
    d = t.dim
    for j in range(d):
        for k in range(d):
            x = np.zeros((d, d), dtype=np.complex128)
            x[j, k] = 1.0
            y = apply(t, x)
            y_res = y.copy()
            y_res[j, k] = 0.0
            if np.linalg.norm(y_res) > tol * max(1.0, float(np.linalg.norm(y))):
                return False
    return True


@dataclass(frozen=True)
class PositivityReport:
    """Outcome of sampling positivity against the complete-positivity test."""

    sampled_positive: bool
    completely_positive: bool
    trials: int
    worst_eigenvalue_ratio: float

    @property
    def verdicts_agree(self) -> bool:
        return self.sampled_positive == self.completely_positive


def positive_implies_cp_check(
    t: ElementaryOperator,
    trials: int = 50,
    tol: float = CP_TOL,
    seed: int = 0,
) -> PositivityReport:
    """Compare sampled positivity with complete positivity for a map that is
    a bimodule map over the diagonal MASA (precondition, checked; for such
    maps the two must agree).

    Half the samples are rank-one ``w w*`` (which detect any failure of
    positivity for a diagonal bimodule map), half are full-rank ``g g*``.
    """
    if not is_diagonal_bimodule(t, tol):
        raise BimoduleError("map is not a bimodule map over the diagonal MASA")
    rng = np.random.default_rng(seed)
    d = t.dim
    # normalize against input scale times term scale, not just ||y||: when
    # the map is numerically zero the output is pure float noise and would
    # otherwise register as an order-one violation
    term_scale = float(
        np.sum(np.linalg.norm(t.left, axis=(1, 2)) * np.linalg.norm(t.right, axis=(1, 2)))
    )
    worst = np.inf
    for trial in range(trials):
        if trial % 2 == 0:
            w = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            x = np.outer(w, np.conj(w))
        else:
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            x = g @ g.conj().T
        y = apply(t, x)
        scale = max(float(np.linalg.norm(y)),
                    float(np.linalg.norm(x)) * term_scale, 1e-300)
        if np.linalg.norm(y - y.conj().T) > tol * scale:
            worst = -np.inf  # non-Hermitian output: not even positivity-preserving
            continue
        evals = np.linalg.eigvalsh((y + y.conj().T) / 2)
        worst = min(worst, float(evals.min()) / scale)
    sampled_positive = bool(worst >= -tol)
    return PositivityReport(
        sampled_positive=sampled_positive,
        completely_positive=is_completely_positive(t, tol),
        trials=trials,
        worst_eigenvalue_ratio=float(worst),
    )


def conjugate_by(t: ElementaryOperator, v: np.ndarray) -> ElementaryOperator:
    """The unitarily rotated map ``x -> V* T(V x V*) V`` (term-wise)."""
    v = np.asarray(v, dtype=np.complex128)
    _check_dim(t, v)
    vh = v.conj().T
    return ElementaryOperator(t.dim, np.einsum("ij,njk,kl->nil", vh, t.left, v),
                              np.einsum("ij,njk,kl->nil", vh, t.right, v))


def _matrix_to_lists(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _matrix_from_lists(data, dim: int) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.shape != (dim, dim, 2):
        raise ValueError(f"matrix entries must be [re, im] pairs in a {dim}x{dim} grid")
    return arr[..., 0] + 1j * arr[..., 1]


def op_to_json(t: ElementaryOperator) -> str:
    """Serialize as ``{"dim": d, "terms": [{"a": [[..]], "b": [[..]]}]}``
    with each entry an ``[re, im]`` pair."""
    payload = {
        "dim": t.dim,
        "terms": [{"a": _matrix_to_lists(a), "b": _matrix_to_lists(b)} for a, b in t.terms],
    }
    return json.dumps(payload, sort_keys=True)


def op_from_json(text: str | bytes | dict) -> ElementaryOperator:
    """Inverse of :func:`op_to_json`; also accepts an already-parsed dict."""
    payload = json.loads(text) if not isinstance(text, dict) else text
    dim = int(payload["dim"])
    terms = [
        (_matrix_from_lists(entry["a"], dim), _matrix_from_lists(entry["b"], dim))
        for entry in payload["terms"]
    ]
    return ElementaryOperator.from_terms(dim, terms)
