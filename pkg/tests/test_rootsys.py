"""Root system construction, pairings, chambers, and the text format."""

import random
from fractions import Fraction

import pytest

from orbitope_lab.rootsys import (
    build_root_system,
    chamber_point,
    dominant_with_walls,
    fundamental_coweights,
    is_dominant,
    make_root_system,
    metric_covector,
    pairing,
    root_support,
    root_system_from_text,
    root_system_to_text,
    share_closed_chamber,
    simple_coefficients,
    wall_set,
)

CATALOG = {
    # label: (rank, ambient_dim, positive root count)
    "A1": (1, 2, 1),
    "A2": (2, 3, 3),
    "A3": (3, 4, 6),
    "B2": (2, 2, 4),
    "B3": (3, 3, 9),
    "C3": (3, 3, 9),
    "D2": (2, 2, 2),
    "D3": (3, 3, 6),
    "BC2": (2, 2, 6),
    "G2": (2, 3, 6),
    "F4": (4, 4, 24),
}


def test_catalog_shapes():
    for label, (rank, ambient, positives) in CATALOG.items():
        rs = build_root_system(label)
        assert rs.label == label
        assert rs.rank == rank
        assert rs.ambient_dim == ambient
        assert len(rs.positive_roots) == positives
        assert rs.positive_multiplicities == (1,) * positives
        assert rs.centralizer_dim == 0


def test_labels_case_insensitive():
    assert build_root_system("g2").label == "G2"
    assert build_root_system(" bc2 ").label == "BC2"


def test_bad_specs_rejected():
    for bad in ("", "  ", "E8", "A0", "Q3", "/no/such/file"):
        with pytest.raises(ValueError):
            build_root_system(bad)


def test_bc2_contains_doubled_root():
    rs = build_root_system("BC2")
    roots = set(rs.positive_roots)
    e1 = (Fraction(1), Fraction(0))
    twice = (Fraction(2), Fraction(0))
    assert e1 in roots and twice in roots


def test_pairing_is_plain_dot_for_identity_gram():
    rs = build_root_system("B3")
    rng = random.Random(0)
    for _ in range(10):
        lam = rs.positive_roots[rng.randrange(len(rs.positive_roots))]
        v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
        assert pairing(rs, lam, v) == sum(a * b for a, b in zip(lam, v))
        assert metric_covector(rs, v) == v


def test_pairing_respects_gram_matrix():
    rs = make_root_system(
        ((Fraction(1),),),
        ((Fraction(1),),),
        inner_product=((Fraction(3),),),
        label="scaled",
    )
    assert pairing(rs, (Fraction(1),), (Fraction(2),)) == 6
    assert metric_covector(rs, (Fraction(2),)) == (Fraction(6),)


def test_positive_roots_have_nonnegative_simple_coefficients():
    for label in CATALOG:
        rs = build_root_system(label)
        for root in rs.positive_roots:
            coeffs = simple_coefficients(rs, root)
            assert all(c >= 0 for c in coeffs)
            rebuilt = [Fraction(0)] * rs.ambient_dim
            for c, alpha in zip(coeffs, rs.simple_roots):
                for i, a in enumerate(alpha):
                    rebuilt[i] += c * a
            assert tuple(rebuilt) == root
            support = root_support(rs, root)
            assert support == frozenset(i for i, c in enumerate(coeffs) if c != 0)


def test_fundamental_coweights_dual_to_simple_roots():
    for label in CATALOG:
        rs = build_root_system(label)
        coweights = fundamental_coweights(rs)
        for i, alpha in enumerate(rs.simple_roots):
            norm = pairing(rs, alpha, alpha)
            for j, w in enumerate(coweights):
                expected = norm / 2 if i == j else 0
                assert pairing(rs, alpha, w) == expected


def test_dominance_and_walls():
    rs = build_root_system("B2")
    assert is_dominant(rs, (1, 1))
    assert wall_set(rs, (1, 1)) == frozenset({0})
    assert wall_set(rs, (2, 1)) == frozenset()
    assert wall_set(rs, (1, 0)) == frozenset({1})
    assert not is_dominant(rs, (0, 1))
    with pytest.raises(ValueError):
        wall_set(rs, (0, 1))


def test_chamber_point_sign_data():
    rs = build_root_system("A2")
    cp = chamber_point(rs, (2, 0, -2))
    assert cp.coords == (Fraction(2), Fraction(0), Fraction(-2))
    assert cp.is_dominant
    assert set(cp.signs) == {1}
    cp2 = chamber_point(rs, (0, 2, -2))
    assert not cp2.is_dominant
    assert -1 in cp2.signs


def test_share_closed_chamber_examples():
    rs = build_root_system("A2")
    assert share_closed_chamber(rs, (2, 0, -2), (1, 1, -2))
    assert share_closed_chamber(rs, (2, 0, -2), (3, 0, -3))
    assert not share_closed_chamber(rs, (2, 0, -2), (-2, 0, 2))
    assert share_closed_chamber(rs, (0, 0, 0), (2, 0, -2))
    # symmetry on random pairs
    rng = random.Random(21)
    for _ in range(50):
        x = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        y = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        assert share_closed_chamber(rs, x, y) == share_closed_chamber(rs, y, x)


def test_dominant_with_walls_round_trip():
    for label in ("A1", "A2", "A3", "B2", "B3", "C3", "D3", "BC2", "G2"):
        rs = build_root_system(label)
        for mask in range(1 << rs.rank):
            subset = frozenset(i for i in range(rs.rank) if mask >> i & 1)
            rep = dominant_with_walls(rs, subset)
            if subset == frozenset(range(rs.rank)):
                if rep is not None:
                    assert all(
                        pairing(rs, alpha, rep) == 0 for alpha in rs.simple_roots
                    )
                    assert any(c != 0 for c in rep)
                continue
            assert rep is not None
            assert is_dominant(rs, rep)
            assert wall_set(rs, rep) == subset


def test_dominant_with_walls_full_set_kernel_only():
    assert dominant_with_walls(build_root_system("B2"), {0, 1}) is None
    kernel = dominant_with_walls(build_root_system("A2"), {0, 1})
    assert kernel is not None


def test_text_format_round_trip():
    text = "\n".join(
        [
            "label halved",
            "ambient 2",
            "gram 2 0 0 2",
            "centralizer 2",
            "simple 1/2 -1/2",
            "simple 0 1/2",
            "root 1/2 -1/2 mult 2",
            "root 0 1/2 mult 2",
            "root 1/2 1/2 mult 2",
            "root 1/2 0",
        ]
    )
    rs = root_system_from_text(text)
    assert rs.label == "halved"
    assert rs.rank == 2
    mults = dict(zip(rs.positive_roots, rs.positive_multiplicities))
    assert mults[(Fraction(1, 2), Fraction(-1, 2))] == 2
    assert mults[(Fraction(1, 2), Fraction(0))] == 1
    assert rs.centralizer_dim == 2
    assert pairing(rs, rs.simple_roots[0], (1, 0)) == 1
    again = root_system_from_text(root_system_to_text(rs))
    assert again.simple_roots == rs.simple_roots
    assert again.positive_roots == rs.positive_roots
    assert again.positive_multiplicities == rs.positive_multiplicities
    assert again.inner_product == rs.inner_product
    assert again.centralizer_dim == rs.centralizer_dim
    assert again.label == rs.label


def test_text_format_rejects_malformed_input():
    with pytest.raises(ValueError):
        root_system_from_text("ambient 2\nsimple 1\n")
    with pytest.raises(ValueError):
        root_system_from_text("simple 1 0\n")
    with pytest.raises(ValueError):
        root_system_from_text("ambient 2\nwhatever 1 2\n")


def test_build_root_system_reads_files(tmp_path):
    rs = build_root_system("A2")
    path = tmp_path / "custom.txt"
    path.write_text(root_system_to_text(rs), encoding="utf-8")
    again = build_root_system(str(path))
    assert again.positive_roots == rs.positive_roots


def test_make_root_system_validates():
    one = (Fraction(1), Fraction(0))
    with pytest.raises(ValueError):
        # positive root outside the span cone of the simple roots
        make_root_system((one,), ((Fraction(0), Fraction(1)),))
    with pytest.raises(ValueError):
        # non-symmetric inner product
        make_root_system(
            (one,),
            (one,),
            inner_product=((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))),
        )
