"""Matrix models: sampling, invariants, heights, Hessians, dimensions."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from oracles import majorized_by
from orbitope_lab import facelab, jsonio, matmodel
from orbitope_lab import polytope as poly
from orbitope_lab.rootsys import metric_covector, pairing
from orbitope_lab.weyl import generate, orbit, to_dominant


def model_context(kind, n, x):
    model = matmodel.make_model(kind, n)
    rs = model.root_system
    group = generate(rs)
    xd = to_dominant(group, x).vector
    hull = poly.hull(orbit(group, xd))
    descriptors = facelab.classify_faces(rs, group, xd)
    return model, rs, group, xd, hull, descriptors


def test_sym_models_use_type_a_systems():
    for n in (2, 3, 4, 5):
        model = matmodel.make_model("sym", n)
        rs = model.root_system
        assert rs.rank == n - 1
        assert rs.ambient_dim == n
        assert rs.positive_multiplicities == (1,) * len(rs.positive_roots)
        assert rs.centralizer_dim == 0


def test_skew_models_have_doubled_multiplicities():
    expected = {
        3: (1, 1),  # rank, positive root count
        4: (2, 2),
        5: (2, 4),
        6: (3, 6),
        7: (3, 9),
    }
    for n, (rank, positives) in expected.items():
        model = matmodel.make_model("skew", n)
        rs = model.root_system
        m = n // 2
        assert rs.rank == rank == m
        assert len(rs.positive_roots) == positives
        assert rs.positive_multiplicities == (2,) * positives
        assert rs.centralizer_dim == m
        # both the acting algebra and the representation space are so(n):
        # center + root spaces on one side, Cartan + root spaces on the other
        dim_so_n = n * (n - 1) // 2
        total_mult = sum(rs.positive_multiplicities)
        assert rs.centralizer_dim + total_mult == dim_so_n
        assert m + total_mult == dim_so_n
        assert rs.inner_product == tuple(
            tuple(Fraction(2 if i == j else 0) for j in range(m))
            for i in range(m)
        )


def test_model_domain_errors():
    with pytest.raises(ValueError):
        matmodel.make_model("skew", 2)
    with pytest.raises(ValueError):
        matmodel.make_model("sym", 1)
    with pytest.raises(ValueError):
        matmodel.make_model("herm", 3)


def test_embed_exact_and_isometry():
    sym3 = matmodel.make_model("sym", 3)
    x = (Fraction(2), Fraction(0), Fraction(-2))
    mat = matmodel.embed_exact(sym3, x)
    assert [mat[i][i] for i in range(3)] == list(x)
    with pytest.raises(ValueError):
        matmodel.embed_exact(sym3, (1, 0, 0))
    rng = random.Random(8)
    for kind, n in (("sym", 3), ("skew", 4), ("skew", 5)):
        model = matmodel.make_model(kind, n)
        rs = model.root_system
        d = rs.ambient_dim
        for _ in range(5):
            u = [Fraction(rng.randint(-4, 4)) for _ in range(d)]
            v = [Fraction(rng.randint(-4, 4)) for _ in range(d)]
            if kind == "sym":
                su, sv = sum(u), sum(v)
                u = [n * c - su for c in u]
                v = [n * c - sv for c in v]
            mu = matmodel.embed_exact(model, u)
            mv = matmodel.embed_exact(model, v)
            trace_form = sum(
                mu[i][j] * mv[i][j] for i in range(n) for j in range(n)
            )
            assert trace_form == pairing(rs, u, v)


def test_project_round_trips_embed():
    for kind, n in (("sym", 3), ("sym", 4), ("skew", 4), ("skew", 5)):
        model = matmodel.make_model(kind, n)
        d = model.root_system.ambient_dim
        rng = random.Random(n)
        v = [Fraction(rng.randint(-3, 3)) for _ in range(d)]
        if kind == "sym":
            s = sum(v)
            v = [n * c - s for c in v]
        point = matmodel.embed(model, v)
        back = matmodel.project(model, point)
        assert np.allclose(back, [float(c) for c in v], atol=1e-12)


def test_sample_orbit_shapes_and_prefix_stability():
    model = matmodel.make_model("sym", 3)
    x = (2, 0, -2)
    small = matmodel.sample_orbit(model, x, 50, seed=4)
    large = matmodel.sample_orbit(model, x, 200, seed=4)
    assert small.points.shape == (50, 3, 3)
    assert small.projections.shape == (50, 3)
    assert np.array_equal(small.points, large.points[:50])
    other = matmodel.sample_orbit(model, x, 50, seed=5)
    assert not np.array_equal(small.points, other.points)
    with pytest.raises(ValueError):
        matmodel.sample_orbit(model, x, 0, seed=1)


def test_forced_points_are_exact():
    model = matmodel.make_model("sym", 3)
    x = (2, 0, -2)
    sample = matmodel.sample_orbit(
        model, x, 5, seed=0, forced_cartan_points=[(0, 2, -2)]
    )
    assert sample.n_haar == 5
    assert sample.points.shape[0] == 6
    assert np.array_equal(sample.points[5], np.diag([0.0, 2.0, -2.0]))
    assert np.array_equal(sample.projections[5], [0.0, 2.0, -2.0])


def test_spectrum_preserved_on_orbit():
    for kind, n, x in (("sym", 3, (2, 0, -2)), ("skew", 4, (3, 1)), ("skew", 5, (3, 1))):
        model = matmodel.make_model(kind, n)
        sample = matmodel.sample_orbit(model, x, 300, seed=2)
        scale = math.sqrt(sum(float(c) ** 2 for c in x))
        assert matmodel.spectrum_deviation(sample) <= 1e-9 * scale


def test_kostant_projections_inside_polytope():
    model, rs, group, x, hull, _ = model_context("sym", 3, (2, 0, -2))
    sample = matmodel.sample_orbit(model, x, 500, seed=3)
    record = matmodel.kostant_check(sample, hull)
    scale = math.sqrt(8.0)
    assert record["max_violation"] <= 1e-9 * scale
    assert record["max_facet_violation"] <= 1e-9 * scale
    assert 0.0 <= record["coverage"] <= 1.0
    assert len(record["vertex_distances"]) == len(hull.vertices)


def test_kostant_identity_hook_is_exact():
    model, rs, group, x, hull, _ = model_context("sym", 3, (2, 0, -2))
    sample = matmodel.sample_orbit(
        model, x, 10, seed=1, forced_cartan_points=list(hull.vertices)
    )
    record = matmodel.kostant_check(sample, hull)
    # the forced vertex points sit exactly on the boundary
    assert record["max_facet_violation"] <= 0.0
    # coverage counts only the Haar prefix, which misses every vertex here
    assert record["coverage"] == 0.0


def test_kostant_coverage_monotone_in_sample_size():
    model, rs, group, x, hull, _ = model_context("sym", 3, (2, 0, -2))
    tol = 0.5  # loose tolerance so coverage is visibly nonzero at these sizes
    values = []
    for n in (100, 400, 1600):
        sample = matmodel.sample_orbit(model, x, n, seed=6)
        values.append(
            matmodel.kostant_check(sample, hull, vertex_tol=tol)["coverage"]
        )
    assert values == sorted(values)


def test_diagonals_majorized_by_spectrum():
    model = matmodel.make_model("sym", 3)
    x = (2, 0, -2)
    sample = matmodel.sample_orbit(model, x, 200, seed=9)
    for p in sample.projections:
        assert majorized_by(p, [2.0, 0.0, -2.0], tol=1e-9)


def test_argmax_height_frozen_values():
    model, rs, group, x, hull, _ = model_context("sym", 3, (2, 0, -2))
    sample = matmodel.sample_orbit(
        model, x, 500, seed=42, forced_cartan_points=list(hull.vertices)
    )
    rec = matmodel.argmax_height(sample, (1, 0, -1))
    assert abs(rec["best_value"] - 4.0) < 1e-12
    rec_x = matmodel.argmax_height(sample, x)
    assert abs(rec_x["best_value"] - 8.0) < 1e-12
    rec_zero = matmodel.argmax_height(sample, (0, 0, 0))
    assert rec_zero["best_value"] == 0.0
    assert len(rec_zero["indices"]) == len(sample.points)


def test_argmax_height_skew_sign_convention():
    # heights must use the trace form; a sign slip would put the maximizer
    # at the opposite vertex
    model, rs, group, x, hull, _ = model_context("skew", 4, (3, 1))
    sample = matmodel.sample_orbit(
        model, x, 200, seed=1, forced_cartan_points=list(hull.vertices)
    )
    beta = (1, 0)
    rec = matmodel.argmax_height(sample, beta)
    value, indices = poly.support(hull, metric_covector(rs, beta))
    assert abs(rec["best_value"] - float(value)) < 1e-12


def test_hessian_closed_form_rotation_generator():
    model = matmodel.make_model("sym", 2)
    xi = np.array([[0.0, 1.0], [-1.0, 0.0]])
    closed = matmodel.hessian_closed_form(model, (1, -1), (1, -1), xi)
    assert closed == -8.0
    numeric = matmodel.hessian_fd(model, (1, -1), (1, -1), xi)
    assert abs(closed - numeric) < 1e-6


def test_hessian_closed_form_matches_finite_differences():
    cases = (
        ("sym", 3, (2, 0, -2), (3, 0, -3)),
        ("sym", 3, (1, 1, -2), (2, 0, -2)),
        ("skew", 4, (3, 1), (2, 1)),
        ("skew", 5, (3, 2), (2, 1)),
    )
    for kind, n, x, beta in cases:
        model = matmodel.make_model(kind, n)
        scale = math.sqrt(sum(float(c) ** 2 for c in x)) * math.sqrt(
            sum(float(c) ** 2 for c in beta)
        )
        record = matmodel.hessian_check(model, x, beta, 40, seed=5)
        assert record["max_abs_error"] <= 1e-5 * scale, (kind, n)


def test_hessian_zero_beta_is_flat():
    model = matmodel.make_model("sym", 3)
    record = matmodel.hessian_check(model, (2, 0, -2), (0, 0, 0), 5)
    assert record["max_abs_error"] == 0.0


def test_local_max_frozen_cases():
    model = matmodel.make_model("sym", 3)
    x = (2, 0, -2)
    same = matmodel.local_max_test(model, x, (1, 1, -2))
    assert same["chamber"] and same["numeric"] and same["agree"]
    opposite = matmodel.local_max_test(model, x, (-2, 0, 2))
    assert not opposite["chamber"]
    assert not opposite["numeric"]
    assert opposite["agree"]
    assert opposite["max_second_derivative"] > opposite["threshold"]
    flat = matmodel.local_max_test(model, x, (0, 0, 0))
    assert flat["chamber"] and flat["numeric"]


def test_local_max_agreement_sweep():
    rng = random.Random(123)
    for kind, n in (("sym", 3), ("skew", 4)):
        model = matmodel.make_model(kind, n)
        group = generate(model.root_system)
        d = model.root_system.ambient_dim
        for k in range(15):
            x = [rng.randint(-4, 4) for _ in range(d)]
            beta = [rng.randint(-4, 4) for _ in range(d)]
            if kind == "sym":
                sx, sb = sum(x), sum(beta)
                x = [n * c - sx for c in x]
                beta = [n * c - sb for c in beta]
            if all(c == 0 for c in x):
                x = [1] + [0] * (d - 2) + [-1]
            xd = to_dominant(group, tuple(Fraction(c) for c in x)).vector
            rec = matmodel.local_max_test(model, xd, beta, seed=k)
            assert rec["agree"], (kind, xd, beta, rec)


def test_ext_face_dim_matches_prediction():
    cases = (
        ("sym", 3, (2, 0, -2)),
        ("sym", 3, (1, 1, -2)),
        ("sym", 4, (3, 1, -1, -3)),
        ("sym", 4, (1, 1, -1, -1)),
        ("skew", 4, (3, 1)),
        ("skew", 4, (1, 1)),
        ("skew", 5, (3, 1)),
        ("skew", 5, (1, 0)),
    )
    for kind, n, x in cases:
        model, rs, group, xd, hull, descriptors = model_context(kind, n, x)
        for d in descriptors:
            result = matmodel.ext_face_dim_check(model, xd, d)
            assert result.numeric_dim == result.predicted_dim, (kind, n, x, d.I)


def test_ext_face_dim_check_validates_input():
    model, rs, group, x, hull, descriptors = model_context("sym", 3, (2, 0, -2))
    other = matmodel.make_model("sym", 4)
    with pytest.raises(ValueError):
        matmodel.ext_face_dim_check(other, (3, 1, -1, -3), descriptors[0])
    with pytest.raises(ValueError):
        matmodel.ext_face_dim_check(model, (0, 2, -2), descriptors[0])
    with pytest.raises(ValueError):
        matmodel.ext_face_dim_check(model, (4, 0, -4), descriptors[0])


def test_verification_report_passes_and_is_deterministic():
    model, rs, group, x, hull, descriptors = model_context("sym", 3, (2, 0, -2))
    kwargs = dict(
        group=group,
        orbit_polytope=hull,
        descriptors=descriptors,
        n_pairs=10,
        hessian_trials=5,
    )
    rep1 = matmodel.verification_report(model, x, 150, 42, **kwargs)
    rep2 = matmodel.verification_report(model, x, 150, 42, **kwargs)
    assert rep1["passed"]
    assert rep1["failed_stages"] == []
    assert [s["name"] for s in rep1["stages"]] == [
        "spectrum",
        "kostant",
        "faces",
        "local-max-agreement",
        "hessian",
    ]
    assert jsonio.dump_report(rep1) == jsonio.dump_report(rep2)


def test_verification_report_catches_corrupted_descriptor():
    import dataclasses

    model, rs, group, x, hull, descriptors = model_context("sym", 3, (2, 0, -2))
    bad = list(descriptors)
    bad[0] = dataclasses.replace(bad[0], beta=tuple(-c for c in bad[0].beta))
    rep = matmodel.verification_report(
        model,
        x,
        100,
        7,
        group=group,
        orbit_polytope=hull,
        descriptors=bad,
        n_pairs=5,
        hessian_trials=3,
    )
    assert not rep["passed"]
    assert "faces" in rep["failed_stages"]
