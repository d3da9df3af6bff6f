"""Admissibility verdicts, certificate re-validation, and the Jordan
axiom suites."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from convexstate import linalg
from convexstate.admissibility import (CONNECTED_BUT_UNSUPERPOSABLE,
                                       FACE_NOT_BALL, FINITE_NONSIMPLEX,
                                       NOT_REFUTED, REFUTED, ball_descriptor,
                                       check_polytope, check_separable_pair,
                                       jb_norm_inequalities,
                                       jordan_identity_residual,
                                       jordan_identity_scale)
from convexstate.errors import PreconditionError
from convexstate.models import (make_classical_simplex, make_spekkens_hull,
                                make_square)
from convexstate.polytope import (AmbiguousMixtureCertificate, VPolytope,
                                  affine_dimension_of, generated_face,
                                  minimal_face, parse_point, verify_face)

BIPYRAMID = VPolytope(
    [(1, 0, 0), (0, 1, 0), (0, 0, 0),
     ("1/3", "1/3", 1), ("1/3", "1/3", -1)],
    name="bipyramid",
)


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (m + m.conj().T)


# ---------------------------------------------------------------------------
# Polytope verdicts
# ---------------------------------------------------------------------------

def test_spekkens_refuted():
    verdict = check_polytope(make_spekkens_hull())
    assert verdict.verdict == REFUTED
    assert verdict.failed_condition == FINITE_NONSIMPLEX
    cert = verdict.certificate
    assert cert["kind"] == "ambiguous_mixture"
    rebuilt = AmbiguousMixtureCertificate(
        indices=tuple(cert["indices"]),
        w=cert["w"], x=cert["x"], y=cert["y"], z=cert["z"],
        lam=cert["lam"], mu=cert["mu"],
    )
    assert rebuilt.validate()
    assert rebuilt.mixture_point() == cert["mixture_point"]


def test_square_refuted():
    verdict = check_polytope(make_square())
    assert verdict.verdict == REFUTED
    assert verdict.failed_condition == FINITE_NONSIMPLEX


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplexes_not_refuted(n):
    verdict = check_polytope(make_classical_simplex(n))
    assert verdict.verdict == NOT_REFUTED
    assert verdict.failed_condition is None


def test_single_point_not_refuted():
    verdict = check_polytope(VPolytope([(0, 0)]))
    assert verdict.verdict == NOT_REFUTED


def test_bipyramid_refuted_by_face():
    verdict = check_polytope(BIPYRAMID)
    assert verdict.verdict == REFUTED
    assert verdict.failed_condition == FACE_NOT_BALL
    cert = verdict.certificate
    assert cert["kind"] == "non_ball_face"
    i, j = cert["pair"]
    face = generated_face(BIPYRAMID, BIPYRAMID.vertices[i], BIPYRAMID.vertices[j])
    assert list(face.vertex_indices) == cert["face_vertices"]
    assert len(face.vertex_indices) > 2
    assert verify_face(BIPYRAMID, face.vertex_indices)
    assert not cert["ball"]["is_ball"]


def test_face_evidence_present_for_small_polytopes():
    verdict = check_polytope(make_classical_simplex(2))
    evidence = verdict.certificate["face_evidence"]
    assert len(evidence) == 3
    for item in evidence:
        assert item["ball"]["is_ball"]
        assert item["ball"]["n"] == 1


def test_face_evidence_can_be_disabled():
    verdict = check_polytope(make_classical_simplex(2), with_face_evidence=False)
    assert verdict.certificate is None


def test_ball_descriptor_cases():
    k = make_spekkens_hull()
    edge = generated_face(k, (1, 0, 0), (0, 1, 0))
    d = ball_descriptor(edge)
    assert d.is_ball and d.n == 1
    whole = generated_face(k, (1, 0, 0), (-1, 0, 0))
    assert not ball_descriptor(whole).is_ball
    point = minimal_face(k, (1, 0, 0))
    assert not ball_descriptor(point).is_ball


def test_verdict_json_shape():
    out = check_polytope(make_spekkens_hull()).to_json_dict()
    assert sorted(out.keys()) == ["certificate", "failed_condition", "verdict"]
    assert out["verdict"] == "refuted"


# ---------------------------------------------------------------------------
# Affine invariance
# ---------------------------------------------------------------------------

def _random_affine(rng, dim):
    while True:
        m = [[Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
              for _ in range(dim)] for _ in range(dim)]
        if affine_dimension_of([tuple(row) for row in m] + [tuple([Fraction(0)] * dim)]) == dim:
            shift = tuple(Fraction(int(rng.integers(-5, 6)), 2) for _ in range(dim))
            return m, shift


def test_affine_invariance():
    rng = np.random.default_rng(61)
    for k in (make_spekkens_hull(), make_classical_simplex(2), make_square()):
        base = check_polytope(k, with_face_evidence=False)
        for _ in range(3):
            m, shift = _random_affine(rng, k.ambient_dim)
            img = k.affine_image(m, shift)
            moved = check_polytope(img, with_face_evidence=False)
            assert moved.verdict == base.verdict
            assert moved.failed_condition == base.failed_condition


# ---------------------------------------------------------------------------
# Separable pair verdict
# ---------------------------------------------------------------------------

def test_separable_pair_refuted():
    x = linalg.projector(linalg.ket("01"))
    y = linalg.projector(linalg.ket("10"))
    verdict = check_separable_pair(x, y, path_steps=32, search_grid=256)
    assert verdict.verdict == REFUTED
    assert verdict.failed_condition == CONNECTED_BUT_UNSUPERPOSABLE
    cert = verdict.certificate
    path = cert["path"]
    assert path["steps_per_leg"] == 32
    assert path["factor_identity_deviation"] <= 1e-12
    assert path["max_consecutive_distance"] <= path["distance_bound"]
    search = cert["search"]
    assert search["found"] is False
    assert search["corners_only"]


def test_separable_pair_rejects_entangled_input():
    epr = linalg.projector(linalg.ket("01") - linalg.ket("10"))
    y = linalg.projector(linalg.ket("10"))
    with pytest.raises(PreconditionError):
        check_separable_pair(epr, y)


def test_separable_pair_rejects_shared_factor():
    x = linalg.projector(linalg.ket("00"))
    y = linalg.projector(linalg.ket("01"))
    with pytest.raises(PreconditionError):
        check_separable_pair(x, y)


# ---------------------------------------------------------------------------
# Jordan axiom suites
# ---------------------------------------------------------------------------

def test_jordan_identity_commuting_pair_zero():
    a = np.diag([1.0, 2.0, 3.0])
    b = np.diag([-1.0, 0.5, 4.0])
    assert jordan_identity_residual(a, b) <= 1e-15


def test_jordan_identity_random():
    rng = np.random.default_rng(62)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a, b = random_hermitian(rng, n), random_hermitian(rng, n)
        res = jordan_identity_residual(a, b)
        assert res <= 1e-11 * jordan_identity_scale(a, b)


def test_jordan_identity_scaled_inputs():
    rng = np.random.default_rng(63)
    a, b = random_hermitian(rng, 4), random_hermitian(rng, 4)
    assert jordan_identity_residual(2 * a, b) <= 1e-11 * jordan_identity_scale(2 * a, b)
    assert jordan_identity_residual(a, -3 * b) <= 1e-11 * jordan_identity_scale(a, -3 * b)


def test_norm_inequalities_hand_case():
    a = np.diag([1.0, -1.0])
    rep = jb_norm_inequalities(a, linalg.PAULI_X)
    assert rep.submultiplicative and rep.square_identity and rep.square_dominance
    assert rep.all_hold


def test_norm_inequalities_random():
    rng = np.random.default_rng(64)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        rep = jb_norm_inequalities(random_hermitian(rng, n),
                                   random_hermitian(rng, n))
        assert rep.all_hold


# ---------------------------------------------------------------------------
# Property: random rational simplexes survive
# ---------------------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_random_simplexes_not_refuted(dim, data):
    count = data.draw(st.integers(2, min(dim + 1, 5)))
    pts = data.draw(st.lists(
        st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=4)
                    for _ in range(dim)]),
        min_size=count, max_size=count, unique=True,
    ))
    assume(affine_dimension_of([parse_point(p) for p in pts]) == count - 1)
    verdict = check_polytope(VPolytope(pts), with_face_evidence=False)
    assert verdict.verdict == NOT_REFUTED
