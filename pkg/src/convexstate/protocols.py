"""Protocol-level consequences: no cloning, and BB84-style bit commitment.

Cloning chain.  For distinct non-orthogonal pure states x, y with ratio
r in (0, 1), a cloner would give a chain of transition-probability
comparisons ending in r <= r^2, which fails for every r strictly between
0 and 1.  ``cloning_contradiction`` evaluates every link with the
full-space ratio engine.

Bit commitment.  Alice commits to a bit by publishing one of

    D0 = (|01><01| + |10><10|)/2
    D1 = (|ab><ab| + |ba><ba|)/2,  a = (|0>+|1>)/sqrt2, b = (|0>-|1>)/sqrt2.

Both reduce to I/2 on Bob's side, so the commitment is concealing.  In
full quantum mechanics it is not binding: Alice can instead share the EPR
projector E and later steer it into D0 or D1 with a local nonselective
measurement (computational or +/- basis).  In a theory without
entanglement E is unavailable, and ``binding_attack_search`` looks for a
separable substitute (best mixture of pure product states plus two
A-side channels).  Finding none within budget is evidence of binding, not
a proof, and is reported as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import DEFAULT_TOL
from .errors import InternalCheckError, PreconditionError
from .transition import affine_ratio_bloch, affine_ratio_quantum

# ---------------------------------------------------------------------------
# Cloning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CloningCheckReport:
    bloch_x: tuple[float, float, float]
    bloch_y: tuple[float, float, float]
    r: float                 # single-copy ratio
    r_embed: float           # after tensoring a fixed ancilla
    r_clone_bound: float     # ratio between doubled states = what cloning needs
    r_squared: float
    contradiction: bool      # r > r_clone_bound, so the chain r <= ... <= r^2 breaks

    def chain_values(self) -> tuple[float, float, float, float]:
        return (self.r, self.r_embed, self.r_clone_bound, self.r_squared)


def cloning_contradiction(bloch_x, bloch_y,
                          tol: float = DEFAULT_TOL.equality) -> CloningCheckReport:
    """Evaluate the no-cloning chain for a qubit pair given by Bloch vectors.

    Preconditions: distinct, non-orthogonal pure states, so r in (0, 1).
    The embedded ratio (ancilla |0>) must equal r, the doubled-state ratio
    equals r^2, and cloning would force r <= r^2: false on (0, 1).
    """
    r = affine_ratio_bloch(bloch_x, bloch_y).value
    if r <= tol or r >= 1.0 - tol:
        raise PreconditionError(
            f"cloning chain needs 0 < r < 1; got r = {r!r} "
            "(states equal or orthogonal)"
        )
    px = linalg.bloch_projector(np.asarray(bloch_x, dtype=float))
    py = linalg.bloch_projector(np.asarray(bloch_y, dtype=float))
    anc = linalg.projector(linalg.ket("0"))
    r_embed = affine_ratio_quantum(linalg.tensor(px, anc), linalg.tensor(py, anc)).value
    r_clone = affine_ratio_quantum(linalg.tensor(px, px), linalg.tensor(py, py)).value
    return CloningCheckReport(
        bloch_x=tuple(float(c) for c in np.asarray(bloch_x, dtype=float)),
        bloch_y=tuple(float(c) for c in np.asarray(bloch_y, dtype=float)),
        r=r, r_embed=r_embed, r_clone_bound=r_clone, r_squared=r * r,
        contradiction=bool(r > r_clone + tol),
    )


# ---------------------------------------------------------------------------
# Commitment states and channels
# ---------------------------------------------------------------------------

def build_bb84_states() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(D0, D1, E): the two commitment states and the EPR projector."""
    d0 = 0.5 * (linalg.projector(linalg.ket("01")) + linalg.projector(linalg.ket("10")))
    d1 = 0.5 * (linalg.projector(linalg.ket("+-")) + linalg.projector(linalg.ket("-+")))
    epr = linalg.projector(linalg.ket("01") - linalg.ket("10"))
    return d0, d1, epr


def concealment_check(d0, d1, tol: float = 1e-12) -> tuple[bool, float]:
    """Bob cannot tell the commitments apart: equal B-side reductions."""
    ra = linalg.partial_trace(d0, "A")
    rb = linalg.partial_trace(d1, "A")
    dev = linalg.hs_distance(ra, rb)
    return dev <= tol, dev


def apply_channel_a(kraus: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Apply an A-side channel, Kraus operators stacked as (k, 2, 2)."""
    t = rho.reshape(2, 2, 2, 2)
    out = np.einsum("nab,bicj,ndc->aidj", kraus, t, kraus.conj())
    return out.reshape(4, 4)


def kraus_completeness_deviation(kraus: np.ndarray) -> float:
    s = np.einsum("nba,nbc->ac", kraus.conj(), kraus)
    return float(np.max(np.abs(s - np.eye(2))))


def measurement_channel(vectors) -> np.ndarray:
    """Nonselective projective measurement channel on one qubit."""
    ks = np.stack([linalg.projector(v) for v in vectors])
    dev = kraus_completeness_deviation(ks)
    if dev > 1e-12:
        raise PreconditionError(f"measurement vectors are not a basis (dev {dev:.2e})")
    return ks


@dataclass(frozen=True)
class ChannelTranscript:
    label: str
    kraus: np.ndarray
    output: np.ndarray
    target_label: str
    deviation: float


def qm_unbinding_demo(epr=None, tol: float = 1e-12) -> tuple[ChannelTranscript, ChannelTranscript]:
    """The quantum attack: local measurement channels steer E to D0 or D1.

    Raises InternalCheckError if the outputs miss their targets; that
    would mean the construction itself is broken.
    """
    d0, d1, built = build_bb84_states()
    e = built if epr is None else linalg.require_density(epr, what="EPR state")
    ch0 = measurement_channel([linalg.ket("0"), linalg.ket("1")])
    ch1 = measurement_channel([linalg.ket("+"), linalg.ket("-")])
    out0 = apply_channel_a(ch0, e)
    out1 = apply_channel_a(ch1, e)
    dev0 = float(np.max(np.abs(out0 - d0)))
    dev1 = float(np.max(np.abs(out1 - d1)))
    if dev0 > tol or dev1 > tol:
        raise InternalCheckError(
            f"unbinding channels missed their targets: dev0={dev0:.2e}, dev1={dev1:.2e}"
        )
    return (
        ChannelTranscript("computational-basis measurement on A", ch0, out0, "D0", dev0),
        ChannelTranscript("+/- basis measurement on A", ch1, out1, "D1", dev1),
    )


# ---------------------------------------------------------------------------
# Binding search over separable commitments
# ---------------------------------------------------------------------------

def binding_residual(sigma, kraus0, kraus1, d0, d1) -> float:
    """Squared-distance objective for an attack attempt:
    |Lambda0(sigma) - D0|^2 + |Lambda1(sigma) - D1|^2 (HS norms)."""
    r0 = apply_channel_a(np.asarray(kraus0, dtype=complex), sigma)
    r1 = apply_channel_a(np.asarray(kraus1, dtype=complex), sigma)
    return linalg.hs_distance(r0, d0) ** 2 + linalg.hs_distance(r1, d1) ** 2


_N_KRAUS = 4
_CHANNEL_PARAMS = _N_KRAUS * 8          # 4 Kraus ops, 2x2 complex each
_STATE_PARAMS = 7                       # 3 + 3 Bloch components + weight seed


def _channel_from_params(p: np.ndarray) -> np.ndarray | None:
    """Trace-preserving channel from 32 raw reals.

    Raw 2x2 seeds are normalized by S^{-1/2} with S = sum K^dag K; the
    2x2 PSD square root has a closed form.  Returns None when S is close
    to singular (the move is rejected rather than regularized, keeping
    every accepted channel trace-preserving to machine precision).
    """
    seeds = (p[0::2] + 1j * p[1::2]).reshape(_N_KRAUS, 2, 2)
    s = np.einsum("nba,nbc->ac", seeds.conj(), seeds)
    tr = float(np.real(s[0, 0] + s[1, 1]))
    det = float(np.real(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0]))
    if tr <= 1e-8 or det <= 1e-10 * max(1.0, tr) ** 2:
        return None
    root_det = math.sqrt(max(det, 0.0))
    denom = math.sqrt(tr + 2.0 * root_det)
    sqrt_s = (s + root_det * np.eye(2)) / denom
    a, b = sqrt_s[0, 0], sqrt_s[0, 1]
    c, d = sqrt_s[1, 0], sqrt_s[1, 1]
    det_sqrt = a * d - b * c
    inv_sqrt = np.array([[d, -b], [-c, a]], dtype=complex) / det_sqrt
    return np.einsum("nab,bc->nac", seeds, inv_sqrt)


_PAULI_STACK = np.stack([linalg.PAULI_X, linalg.PAULI_Y, linalg.PAULI_Z])
_Z_AXIS = np.array([0.0, 0.0, 1.0])


def _unit_rows(rows: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.sum(rows * rows, axis=1))
    out = np.where(norms[:, None] > 0.0, rows / np.where(norms == 0.0, 1.0, norms)[:, None],
                   _Z_AXIS[None, :])
    return out


def _sigma_from_params(p: np.ndarray, support: int) -> np.ndarray:
    """Mixture of pure product states from support * 7 raw reals.

    Each row of 7 is (Bloch seed of A factor, Bloch seed of B factor,
    weight seed); seeds are normalized, weights squared and renormalized,
    and a zero Bloch seed falls back to the +z axis.
    """
    q = p.reshape(support, _STATE_PARAMS)
    ua = _unit_rows(q[:, 0:3])
    ub = _unit_rows(q[:, 3:6])
    w = q[:, 6] ** 2
    total = float(np.sum(w))
    if total <= 0.0:
        w = np.ones(support)
        total = float(support)
    ea = 0.5 * (linalg.IDENT2[None, :, :] + np.einsum("ni,ijk->njk", ua, _PAULI_STACK))
    fb = 0.5 * (linalg.IDENT2[None, :, :] + np.einsum("ni,ijk->njk", ub, _PAULI_STACK))
    prods = np.einsum("nab,ncd->nacbd", ea, fb).reshape(support, 4, 4)
    return np.einsum("n,nij->ij", w / total, prods)


def _lift_a(kraus: np.ndarray) -> np.ndarray:
    """Kraus operators on A lifted to the pair space: K -> K tensor I."""
    k = kraus.shape[0]
    return np.einsum("nij,ab->niajb", kraus, linalg.IDENT2).reshape(k, 4, 4)


def _lifted_residual(sigma, lifted0, lifted1, d0, d1) -> float:
    r0 = np.sum(lifted0 @ sigma @ lifted0.conj().transpose(0, 2, 1), axis=0)
    r1 = np.sum(lifted1 @ sigma @ lifted1.conj().transpose(0, 2, 1), axis=0)
    e0 = r0 - d0
    e1 = r1 - d1
    return float(np.sum(np.abs(e0) ** 2) + np.sum(np.abs(e1) ** 2))


@dataclass(frozen=True)
class BindingSearchReport:
    residual: float
    support: int
    starts: int
    seed: int
    sweeps: int
    best_start: int
    start_residuals: tuple[float, ...]
    evaluations: int
    message: str
    best_sigma: np.ndarray = field(repr=False, default=None)
    best_kraus0: np.ndarray = field(repr=False, default=None)
    best_kraus1: np.ndarray = field(repr=False, default=None)


def binding_attack_search(d0=None, d1=None, support: int = 8, starts: int = 32,
                          seed: int = 0, sweeps: int = 30) -> BindingSearchReport:
    """Search for a separable commitment that opens as both bits.

    Decision variables: a mixture of `support` pure product states and two
    4-Kraus A-side channels.  Optimization is gradient-free coordinate
    descent (pattern search with a shrinking step), multi-started from
    seeded random points plus one warm start at sigma = D0 with identity
    channels.  The reported residual is an upper bound on nothing and a
    lower bound on nothing: it is the best attack found within budget; a
    large value is evidence for binding, not a proof.
    """
    if support < 1 or starts < 1 or sweeps < 1:
        raise PreconditionError(
            f"budgets must be positive: support={support}, starts={starts}, sweeps={sweeps}"
        )
    if d0 is None or d1 is None:
        d0, d1, _ = build_bb84_states()
    d0 = linalg.require_density(d0, what="D0")
    d1 = linalg.require_density(d1, what="D1")

    n_sigma = support * _STATE_PARAMS
    k1_off = n_sigma + _CHANNEL_PARAMS
    n_total = k1_off + _CHANNEL_PARAMS
    evals = 0

    def lifted_channel(raw):
        k = _channel_from_params(raw)
        return (None, None) if k is None else (k, _lift_a(k))

    def components(p):
        k0, l0 = lifted_channel(p[n_sigma:k1_off])
        k1, l1 = lifted_channel(p[k1_off:])
        return (_sigma_from_params(p[:n_sigma], support), k0, l0, k1, l1)

    def value_of(parts):
        nonlocal evals
        evals += 1
        sigma, k0, l0, k1, l1 = parts
        if k0 is None or k1 is None:
            return math.inf
        return _lifted_residual(sigma, l0, l1, d0, d1)

    def update_component(parts, p, j):
        """Rebuild only the component that parameter j feeds."""
        sigma, k0, l0, k1, l1 = parts
        if j < n_sigma:
            sigma = _sigma_from_params(p[:n_sigma], support)
        elif j < k1_off:
            k0, l0 = lifted_channel(p[n_sigma:k1_off])
        else:
            k1, l1 = lifted_channel(p[k1_off:])
        return sigma, k0, l0, k1, l1

    def warm_params():
        p = np.zeros(n_total)
        # sigma = D0: half |0>|1>, half |1>|0>
        p[0:7] = [0, 0, 1, 0, 0, -1, 1.0]
        if support >= 2:
            p[7:14] = [0, 0, -1, 0, 0, 1, 1.0]
        for i in range(2, support):
            p[i * 7:(i + 1) * 7] = [0, 0, 1, 0, 0, 1, 0.0]
        for off in (n_sigma, n_sigma + _CHANNEL_PARAMS):
            p[off + 0] = 1.0   # K_0 = I (real part of entries (0,0) and (1,1))
            p[off + 6] = 1.0
        return p

    best_val, best_parts, best_start = math.inf, None, -1
    start_residuals = []
    for s in range(starts):
        if s == 0:
            p = warm_params()
        else:
            rng = np.random.default_rng([int(seed), s])
            p = rng.normal(scale=0.8, size=n_total)
            for off in (n_sigma, k1_off):
                p[off + 0] += 1.0
                p[off + 6] += 1.0
        parts = components(p)
        val = value_of(parts)
        if not math.isfinite(val):
            p = warm_params()
            parts = components(p)
            val = value_of(parts)
        step = 0.35
        for _ in range(sweeps):
            improved = False
            for j in range(n_total):
                for delta in (step, -step):
                    q = p.copy()
                    q[j] += delta
                    parts2 = update_component(parts, q, j)
                    v2 = value_of(parts2)
                    if v2 < val - 1e-14:
                        p, val, parts = q, v2, parts2
                        improved = True
                        break
            if not improved:
                step *= 0.5
                if step < 1e-4:
                    break
        start_residuals.append(float(val))
        if val < best_val:
            best_val, best_parts, best_start = float(val), parts, s
    sigma, k0, _, k1, _ = best_parts
    message = (
        "no attack found within budget; residual stays well above zero "
        "(evidence for binding, not a proof)"
        if best_val > 1e-6 else
        "attack found: the commitment is not binding for these targets"
    )
    return BindingSearchReport(
        residual=best_val, support=support, starts=starts, seed=seed, sweeps=sweeps,
        best_start=best_start, start_residuals=tuple(start_residuals),
        evaluations=evals, message=message,
        best_sigma=sigma, best_kraus0=k0, best_kraus1=k1,
    )


@dataclass(frozen=True)
class BitCommitmentReport:
    concealing: bool
    concealment_deviation: float
    epr_separable: bool
    epr_partial_transpose_min_eig: float
    qm_unbinding_demonstrated: bool
    qm_unbinding_max_deviation: float
    separable_binding_residual: float
    search: BindingSearchReport = field(repr=False)

    def to_json_dict(self) -> dict:
        return {
            "concealing": self.concealing,
            "concealment_deviation": self.concealment_deviation,
            "epr_separable": self.epr_separable,
            "epr_partial_transpose_min_eig": self.epr_partial_transpose_min_eig,
            "qm_unbinding_demonstrated": self.qm_unbinding_demonstrated,
            "qm_unbinding_max_deviation": self.qm_unbinding_max_deviation,
            "separable_binding_residual": self.separable_binding_residual,
            "search": {
                "support": self.search.support,
                "starts": self.search.starts,
                "seed": self.search.seed,
                "sweeps": self.search.sweeps,
                "best_start": self.search.best_start,
                "start_residuals": list(self.search.start_residuals),
                "evaluations": self.search.evaluations,
                "message": self.search.message,
            },
        }


def run_bit_commitment_analysis(support: int = 8, starts: int = 32,
                                seed: int = 0, sweeps: int = 30) -> BitCommitmentReport:
    """Full commitment analysis: concealment, the quantum attack, and the
    search for a separable attack."""
    from .models import separable_membership

    d0, d1, epr = build_bb84_states()
    concealing, dev = concealment_check(d0, d1)
    pt_min = linalg.min_eigenvalue(linalg.partial_transpose(epr, "B"))
    epr_sep = separable_membership(epr)
    t0, t1 = qm_unbinding_demo(epr)
    search = binding_attack_search(d0, d1, support=support, starts=starts,
                                   seed=seed, sweeps=sweeps)
    return BitCommitmentReport(
        concealing=concealing,
        concealment_deviation=dev,
        epr_separable=epr_sep,
        epr_partial_transpose_min_eig=pt_min,
        qm_unbinding_demonstrated=True,
        qm_unbinding_max_deviation=max(t0.deviation, t1.deviation),
        separable_binding_residual=search.residual,
        search=search,
    )
