"""Necessary conditions for a convex set to be a JB-algebra state space.

The state space of a JB algebra (self-adjoint part of a matrix or operator
algebra with the symmetrized product) is constrained:

1. the face generated by two distinct extreme points is a Euclidean ball
   B^n for some n >= 1 (a segment when n = 1);
2. if the space is not a simplex, some generated face is a ball with
   n >= 2, so the extreme points form a continuum — a polytope that is not
   a simplex is therefore ruled out immediately;
3. if the extreme points are norm-path-connected, some pair must admit an
   equal-superposition state z (both transition probabilities 1/2).

``check_polytope`` and ``check_separable_pair`` return a JBVerdict whose
refutations always carry machine-checkable certificates.

Jordan-algebra sanity checks for matrix inputs (the Jordan identity and
the JB norm inequalities) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, transition
from .config import DEFAULT_TOL
from .errors import PreconditionError
from .polytope import (Face, SimplexDecision, VPolytope, generated_face,
                       is_simplex)

REFUTED = "refuted"
NOT_REFUTED = "not_refuted"

FINITE_NONSIMPLEX = "finite_nonsimplex"
FACE_NOT_BALL = "face_not_ball"
CONNECTED_BUT_UNSUPERPOSABLE = "connected_but_unsuperposable"


# ---------------------------------------------------------------------------
# Jordan-algebra checks on matrices
# ---------------------------------------------------------------------------

def jordan_identity_residual(a, b) -> float:
    """HS norm of ((a.a).b).a - (a.a).(b.a), zero for any JB algebra
    (with . the symmetrized product)."""
    ma = linalg.require_hermitian(a, what="a")
    mb = linalg.require_hermitian(b, what="b")
    aa = linalg.jordan_product(ma, ma)
    lhs = linalg.jordan_product(linalg.jordan_product(aa, mb), ma)
    rhs = linalg.jordan_product(aa, linalg.jordan_product(mb, ma))
    return linalg.hs_distance(lhs, rhs)


def jordan_identity_scale(a, b) -> float:
    """Normalization for the identity residual: the identity is cubic in a
    and linear in b."""
    na = linalg.hs_norm(a)
    nb = linalg.hs_norm(b)
    return (1.0 + na) ** 3 * (1.0 + nb)


@dataclass(frozen=True)
class NormInequalityReport:
    submultiplicative: bool   # |a.b|  <= |a| |b|
    square_identity: bool     # |a.a|  == |a|^2
    square_dominance: bool    # |a.a|  <= |a.a + b.b|
    norms: dict

    @property
    def all_hold(self) -> bool:
        return self.submultiplicative and self.square_identity and self.square_dominance


def jb_norm_inequalities(a, b, slack: float = DEFAULT_TOL.equality) -> NormInequalityReport:
    """The three JB norm conditions in the operator norm, with additive slack."""
    ma = linalg.require_hermitian(a, what="a")
    mb = linalg.require_hermitian(b, what="b")
    na, nb = linalg.operator_norm(ma), linalg.operator_norm(mb)
    ab = linalg.jordan_product(ma, mb)
    aa = linalg.jordan_product(ma, ma)
    bb = linalg.jordan_product(mb, mb)
    n_ab = linalg.operator_norm(ab)
    n_aa = linalg.operator_norm(aa)
    n_sum = linalg.operator_norm(aa + bb)
    scale = max(1.0, na, nb) ** 2
    return NormInequalityReport(
        submultiplicative=n_ab <= na * nb + slack * scale,
        square_identity=abs(n_aa - na * na) <= slack * scale,
        square_dominance=n_aa <= n_sum + slack * scale,
        norms={"|a|": na, "|b|": nb, "|a.b|": n_ab, "|a.a|": n_aa,
               "|a.a + b.b|": n_sum},
    )


# ---------------------------------------------------------------------------
# Ball descriptors and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BallDescriptor:
    """Which ball B^n a face could be.  Only n = 1 is decidable from a
    polytope face: a segment.  Anything else with finitely many vertices is
    not a ball at all."""

    n: int | None            # None means "not a ball"
    note: str = ""

    @property
    def is_ball(self) -> bool:
        return self.n is not None

    def to_json_dict(self) -> dict:
        return {"is_ball": self.is_ball,
                "n": self.n if self.n is not None else "not_a_ball",
                "note": self.note}


def ball_descriptor(face: Face) -> BallDescriptor:
    k = len(face.vertex_indices)
    if k == 1:
        return BallDescriptor(None, "single point (degenerate: not generated by two distinct extreme points)")
    if k == 2:
        return BallDescriptor(1, "segment")
    return BallDescriptor(None, f"{k} extreme points, affine dimension {face.affine_dimension()}")


@dataclass(frozen=True)
class JBVerdict:
    verdict: str                      # refuted | not_refuted
    failed_condition: str | None
    certificate: dict | None

    def to_json_dict(self) -> dict:
        from .serialize import jsonable

        return {
            "verdict": self.verdict,
            "failed_condition": self.failed_condition,
            "certificate": jsonable(self.certificate),
        }


def _face_evidence(k: VPolytope) -> list[dict]:
    """BallDescriptor of the generated face for every vertex pair."""
    out = []
    n = len(k.vertices)
    for i in range(n):
        for j in range(i + 1, n):
            f = generated_face(k, k.vertices[i], k.vertices[j])
            d = ball_descriptor(f)
            out.append({
                "pair": [i, j],
                "face_vertices": list(f.vertex_indices),
                "ball": d.to_json_dict(),
            })
    return out


def check_polytope(k: VPolytope, with_face_evidence: bool | None = None) -> JBVerdict:
    """Decide the necessary conditions for a finite-vertex state space.

    A polytope's extreme points are isolated, so the path-connectivity
    condition never applies; the binding conditions are (1) and (2).  A
    polytope that is not a simplex in the pairwise sense admits an
    ambiguous mixture, and a non-simplex JB state space would need
    continuum many extreme points, so finitely many vertices refute it
    outright.  A polytope that passes the pairwise test can still expose a
    generated face with 3 or more vertices, which no ball B^n matches.
    """
    n = len(k.vertices)
    if with_face_evidence is None:
        with_face_evidence = n <= 8
    decision = is_simplex(k)
    evidence = _face_evidence(k) if with_face_evidence else None

    if not decision.pairwise_simplex:
        cert = decision.certificate
        certificate = {
            "kind": "ambiguous_mixture",
            "indices": list(cert.indices),
            "w": cert.w, "x": cert.x, "y": cert.y, "z": cert.z,
            "lam": cert.lam, "mu": cert.mu,
            "mixture_point": cert.mixture_point(),
            "note": (
                "a point interior to two different vertex segments; a "
                "non-simplex JB state space needs continuum many extreme "
                f"points, but this polytope has {n}"
            ),
        }
        if evidence is not None:
            certificate["face_evidence"] = evidence
        return JBVerdict(REFUTED, FINITE_NONSIMPLEX, certificate)

    if not decision.affinely_independent:
        # Pairwise-simplex but affinely dependent: hunt for a generated face
        # that is not a segment.
        for i in range(n):
            for j in range(i + 1, n):
                f = generated_face(k, k.vertices[i], k.vertices[j])
                if len(f.vertex_indices) > 2:
                    certificate = {
                        "kind": "non_ball_face",
                        "pair": [i, j],
                        "face_vertices": list(f.vertex_indices),
                        "ball": ball_descriptor(f).to_json_dict(),
                        "note": (
                            "the face generated by this extreme pair has "
                            f"{len(f.vertex_indices)} extreme points; no "
                            "Euclidean ball B^n has finitely many extreme "
                            "points beyond a segment's two"
                        ),
                    }
                    if evidence is not None:
                        certificate["face_evidence"] = evidence
                    return JBVerdict(REFUTED, FACE_NOT_BALL, certificate)

    certificate = None
    if evidence is not None:
        certificate = {"kind": "survey", "face_evidence": evidence,
                       "note": "all checked conditions hold"}
    return JBVerdict(NOT_REFUTED, None, certificate)


def check_separable_pair(x, y, path_steps: int = 64, search_grid: int = 1024) -> JBVerdict:
    """Connectivity vs superposability for the separable two-qubit theory.

    The inputs must be orthogonal pure product states, orthogonal in both
    factors.  A norm-continuous path of pure product states connects them,
    yet no pure product state is an equal superposition of them; a JB state
    space with path-connected extreme points cannot do that.
    """
    handle = transition.StateSpaceHandle.separable_2x2()
    path = transition.path_connect_product_states(x, y, steps=path_steps)
    prep = transition.path_report(path)
    search = transition.superposability_search(handle, x, y, grid=search_grid)
    if search.found:
        raise PreconditionError(
            "superposability search unexpectedly found an equal superposition; "
            "inputs do not refute anything"
        )
    ok_path = (
        prep["factor_identity_deviation"] <= 1e-12
        and prep["max_consecutive_distance"] <= np.pi / path_steps * np.sqrt(2.0)
    )
    if not ok_path:
        raise PreconditionError(f"path construction failed its own bounds: {prep}")
    certificate = {
        "kind": "connected_but_unsuperposable",
        "path": {
            "steps_per_leg": path_steps,
            **prep,
            "distance_bound": float(np.pi / path_steps * np.sqrt(2.0)),
        },
        "search": {
            "found": search.found,
            "overlaps": search.overlaps,
            **search.transcript,
        },
        "note": (
            "extreme points are norm-path-connected but the pair admits no "
            "equal superposition, which a JB state space would require"
        ),
    }
    return JBVerdict(REFUTED, CONNECTED_BUT_UNSUPERPOSABLE, certificate)
