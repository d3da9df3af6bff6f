"""Dense complex linear algebra for small state spaces.

Conventions used package-wide:

* matrices are numpy ``complex128`` arrays; callers may pass anything
  array-like and get validated arrays back;
* tensor products are laid out in the lexicographic product basis
  |00>, |01>, |10>, |11>, with the FIRST factor as subsystem A;
* Hermitian and density-matrix inputs are validated, never trusted.

The eigensolver is a cyclic Jacobi iteration run on the real symmetric
2n x 2n embedding [[Re a, -Im a], [Im a, Re a]] of an n x n Hermitian
matrix.  At the dimensions this package works with (<= 16) that is simple,
deterministic and provably convergent.  numpy is used for array arithmetic
only; no numpy.linalg decompositions are called from library code.

All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PreconditionError

HERMITIAN_ATOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 60

IDENT2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

_SINGLE_KETS = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
    "-": np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0),
}


def ket(label: str) -> np.ndarray:
    """Product ket from a string of single-qubit symbols, e.g. ket("01"),
    ket("+-").  Symbols: 0, 1, + (= (|0>+|1>)/sqrt2), - (= (|0>-|1>)/sqrt2)."""
    if not label or any(ch not in _SINGLE_KETS for ch in label):
        raise PreconditionError(
            f"unknown ket label {label!r}; use symbols from 01+-"
        )
    vec = _SINGLE_KETS[label[0]]
    for ch in label[1:]:
        vec = np.kron(vec, _SINGLE_KETS[ch])
    return vec


def projector(vec: np.ndarray) -> np.ndarray:
    """Rank-1 projector onto a (not necessarily normalized) vector."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    nrm2 = float(np.real(np.vdot(v, v)))
    if nrm2 <= 0.0:
        raise PreconditionError("cannot project onto the zero vector")
    return np.outer(v, v.conj()) / nrm2


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(a, atol: float = HERMITIAN_ATOL) -> bool:
    m = as_matrix(a)
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)


def require_hermitian(a, atol: float = HERMITIAN_ATOL, what: str = "matrix") -> np.ndarray:
    m = as_matrix(a)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > atol:
        raise PreconditionError(
            f"{what} is not Hermitian: max |a - a^dagger| = {dev:.3e} > {atol:.1e}"
        )
    # Symmetrize away representation noise so downstream exact identities
    # (e.g. realified embedding symmetry) hold to machine precision.
    return 0.5 * (m + m.conj().T)


def jordan_product(a, b) -> np.ndarray:
    """Symmetrized product (ab + ba)/2 of two Hermitian matrices."""
    ma = require_hermitian(a, what="left factor")
    mb = require_hermitian(b, what="right factor")
    if ma.shape != mb.shape:
        raise PreconditionError(
            f"dimension mismatch: {ma.shape[0]} vs {mb.shape[0]}"
        )
    return 0.5 * (ma @ mb + mb @ ma)


def tensor(a, b) -> np.ndarray:
    """Kronecker product in the lexicographic basis (first factor = A)."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    m = np.asarray(a, dtype=complex)
    return float(math.sqrt(float(np.real(np.sum(m * m.conj())))))


def hs_distance(a, b) -> float:
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise PreconditionError(
            f"dimension mismatch: {ma.shape[0]} vs {mb.shape[0]}"
        )
    return hs_norm(ma - mb)


def _split_dims(rho: np.ndarray, dims: tuple[int, int]) -> tuple[int, int]:
    da, db = dims
    if rho.shape[0] != da * db:
        raise PreconditionError(
            f"matrix of dimension {rho.shape[0]} does not factor as {da}x{db}"
        )
    return da, db


def partial_trace(rho, subsystem: str, dims: tuple[int, int] = (2, 2), *,
                  validate: bool = True) -> np.ndarray:
    """Trace out one factor.  ``subsystem`` names the factor REMOVED:
    partial_trace(rho, "A") returns the state of B."""
    m = as_matrix(rho)
    da, db = _split_dims(m, dims)
    if validate:
        require_density(m, what="partial_trace input")
    t = m.reshape(da, db, da, db)
    if subsystem == "A":
        return np.einsum("ijik->jk", t)
    if subsystem == "B":
        return np.einsum("ijkj->ik", t)
    raise PreconditionError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def partial_transpose(rho, subsystem: str = "B", dims: tuple[int, int] = (2, 2)) -> np.ndarray:
    """Transpose one tensor factor in place (the PPT-test map)."""
    m = as_matrix(rho)
    da, db = _split_dims(m, dims)
    t = m.reshape(da, db, da, db)
    if subsystem == "A":
        out = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        out = t.transpose(0, 3, 2, 1)
    else:
        raise PreconditionError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return out.reshape(da * db, da * db)


# ---------------------------------------------------------------------------
# Eigensolver: cyclic Jacobi on the realified embedding
# ---------------------------------------------------------------------------

def realify(h: np.ndarray) -> np.ndarray:
    """Real symmetric 2n x 2n embedding of a Hermitian matrix.

    [[Re h, -Im h], [Im h, Re h]] has the same spectrum as h with every
    eigenvalue doubled; (u; v) is an eigenvector iff u + iv is one of h.
    """
    re, im = np.real(h), np.imag(h)
    top = np.hstack([re, -im])
    bot = np.hstack([im, re])
    return np.vstack([top, bot])


def _jacobi_symmetric(s: np.ndarray, want_vectors: bool,
                      tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Returns eigenvalues sorted ascending and, if requested, the matching
    orthonormal eigenvector columns.
    """
    a = np.array(s, dtype=float)
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    fro = math.sqrt(float(np.sum(a * a)))
    thresh = tol * max(1.0, fro)
    for _ in range(JACOBI_MAX_SWEEPS):
        # Sum the off-diagonal squares directly; subtracting the diagonal
        # mass from the total cancels catastrophically near convergence.
        stripped = a.copy()
        np.fill_diagonal(stripped, 0.0)
        off = math.sqrt(float(np.sum(stripped * stripped)))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh / (n * n):
                    continue
                phi = 0.5 * math.atan2(2.0 * apq, a[q, q] - a[p, p])
                c, sn = math.cos(phi), math.sin(phi)
                # rows
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - sn * rq
                a[q, :] = sn * rp + c * rq
                # columns
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - sn * cq
                a[:, q] = sn * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - sn * vq
                    v[:, q] = sn * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is not None:
        v = v[:, order]
    return w, v


def eigvalsh(a) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Computed on the realified embedding; the doubled spectrum is collapsed
    by taking every other sorted value.
    """
    h = require_hermitian(a)
    w2, _ = _jacobi_symmetric(realify(h), want_vectors=False)
    return w2[::2].copy()


def eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition (w ascending, unitary columns v).

    The 2n realified eigenvectors complexify to 2n exact eigenvectors of
    `a` forming a tight frame; a greedy Gram-Schmidt pass keeps the n
    best-conditioned independent ones.
    """
    h = require_hermitian(a)
    n = h.shape[0]
    w2, v2 = _jacobi_symmetric(realify(h), want_vectors=True)
    cands = [(w2[j], v2[:n, j] + 1j * v2[n:, j]) for j in range(2 * n)]

    kept: list[tuple[float, np.ndarray]] = []
    used = [False] * len(cands)
    for _ in range(n):
        best_idx, best_res, best_vec = -1, -1.0, None
        for idx, (_, z) in enumerate(cands):
            if used[idx]:
                continue
            r = z.copy()
            for _, kz in kept:
                r -= kz * np.vdot(kz, r)
            rn = float(np.real(np.vdot(r, r)))
            if rn > best_res + 1e-15:
                best_idx, best_res, best_vec = idx, rn, r
        if best_idx < 0 or best_res <= 1e-12:
            raise PreconditionError("eigenvector extraction failed; matrix may be ill-conditioned")
        used[best_idx] = True
        kept.append((cands[best_idx][0], best_vec / math.sqrt(best_res)))

    kept.sort(key=lambda p: p[0])
    w = np.array([p[0] for p in kept])
    v = np.column_stack([p[1] for p in kept])
    return w, v


def operator_norm(a) -> float:
    """Spectral norm of a Hermitian matrix (largest |eigenvalue|)."""
    w = eigvalsh(a)
    return float(max(abs(w[0]), abs(w[-1])))


def min_eigenvalue(a) -> float:
    return float(eigvalsh(a)[0])


def top_eigenvector(a) -> np.ndarray:
    """Unit eigenvector for the largest eigenvalue."""
    w, v = eigh(a)
    return v[:, -1].copy()


# ---------------------------------------------------------------------------
# State validation
# ---------------------------------------------------------------------------

def is_psd(a, slack: float = 1e-10) -> bool:
    return min_eigenvalue(a) >= -slack


def is_density(rho, tol: float = 1e-10) -> bool:
    m = np.asarray(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if not is_hermitian(m, atol=max(HERMITIAN_ATOL, tol)):
        return False
    if abs(float(np.real(np.trace(m))) - 1.0) > tol:
        return False
    return is_psd(0.5 * (m + m.conj().T), slack=tol)


def require_density(rho, tol: float = 1e-10, what: str = "state") -> np.ndarray:
    m = require_hermitian(rho, atol=max(HERMITIAN_ATOL, tol), what=what)
    tr = float(np.real(np.trace(m)))
    if abs(tr - 1.0) > tol:
        raise PreconditionError(f"{what} has trace {tr!r}, expected 1")
    lo = min_eigenvalue(m)
    if lo < -tol:
        raise PreconditionError(
            f"{what} is not positive semidefinite: min eigenvalue {lo:.3e}"
        )
    return m


def is_rank1_projection(p, tol: float = 1e-10) -> bool:
    """Idempotency test for a Hermitian matrix: p^2 == p and trace 1."""
    m = np.asarray(p, dtype=complex)
    if not is_hermitian(m, atol=max(HERMITIAN_ATOL, tol)):
        return False
    if abs(float(np.real(np.trace(m))) - 1.0) > tol:
        return False
    return float(np.max(np.abs(m @ m - m))) <= tol


def require_rank1_projection(p, tol: float = 1e-10, what: str = "state") -> np.ndarray:
    m = require_hermitian(p, atol=max(HERMITIAN_ATOL, tol), what=what)
    if abs(float(np.real(np.trace(m))) - 1.0) > tol:
        raise PreconditionError(f"{what} must have trace 1")
    dev = float(np.max(np.abs(m @ m - m)))
    if dev > tol:
        raise PreconditionError(
            f"{what} is not a rank-1 projection: max |p^2 - p| = {dev:.3e}"
        )
    return m


# ---------------------------------------------------------------------------
# Bloch-sphere helpers (qubits)
# ---------------------------------------------------------------------------

def bloch_projector(a) -> np.ndarray:
    """Pure qubit state (I + a.sigma)/2 from a unit Bloch vector."""
    v = np.asarray(a, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise PreconditionError(f"Bloch vector must have 3 components, got {v.shape}")
    nrm = float(np.sqrt(v @ v))
    if abs(nrm - 1.0) > 1e-10:
        raise PreconditionError(f"Bloch vector must be unit length, |a| = {nrm!r}")
    return 0.5 * (IDENT2 + v[0] * PAULI_X + v[1] * PAULI_Y + v[2] * PAULI_Z)


def bloch_vector(p) -> np.ndarray:
    """Bloch components (Tr(p sigma_x), Tr(p sigma_y), Tr(p sigma_z))."""
    m = as_matrix(p)
    if m.shape != (2, 2):
        raise PreconditionError(f"expected a qubit operator, got shape {m.shape}")
    return np.array([float(np.real(np.trace(m @ s))) for s in PAULIS])
