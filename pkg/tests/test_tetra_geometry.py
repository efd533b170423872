import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from wignerlimits.exact_core import DomainError, half
from wignerlimits.tetra_geometry import (
    EDGES,
    DegenerateTetrahedronError,
    LabelConvention,
    Tetrahedron,
    cayley_menger,
    cos_phi_eq6,
    cos_theta_eq7,
    embed,
    exterior_dihedral,
    exterior_dihedrals,
    tetra_from_sixj,
    volume,
)
from wignerlimits.wigner_symbols import SelectionRuleError, SixJArgs

PH = LabelConvention.PLUS_HALF
SQ = LabelConvention.SQRT_JJ1
REGULAR_DIHEDRAL = math.pi - math.acos(1 / 3)


def regular(s2):
    return Tetrahedron({e: Fraction(s2) for e in EDGES})


def sample_tetrahedra():
    out = []
    for entries in [(1, 1, 1, 1, 1, 1), (5, 8, 12, 9, 7, 6), (9, 9, 9, 9, 9, 9), (2, 3, 4, 3, 3, 3), (3, 4, 5, 4, 3, 4)]:
        for conv in (PH, SQ):
            t = tetra_from_sixj(SixJArgs.of(*entries), conv)
            if cayley_menger(t) > 0:
                out.append(t)
    return out


class TestConstruction:
    def test_regular_plus_half(self):
        t = tetra_from_sixj(SixJArgs.of(1, 1, 1, 1, 1, 1), PH)
        assert set(t.sq_len.values()) == {Fraction(9, 4)}
        assert t.convention is PH

    def test_regular_sqrt(self):
        t = tetra_from_sixj(SixJArgs.of(1, 1, 1, 1, 1, 1), SQ)
        assert set(t.sq_len.values()) == {Fraction(2)}

    def test_triad_faithful_assignment(self):
        t = tetra_from_sixj((5, 8, 12, 9, 7, 6), PH)
        expected = {
            (1, 2): 5, (1, 3): 8, (2, 3): 12,
            (3, 4): 9, (2, 4): 7, (1, 4): 6,
        }
        for edge, j in expected.items():
            assert t.sq_len[edge] == (Fraction(j) + Fraction(1, 2)) ** 2
        assert t.sq_len[(1, 2)] == Fraction(121, 4)
        assert t.sq_len[(3, 4)] == Fraction(361, 4)

    def test_faces_are_triads(self):
        args = SixJArgs.of(5, 8, 12, 9, 7, 6)
        t = tetra_from_sixj(args, PH)
        j_of = {e: math.sqrt(float(v)) - 0.5 for e, v in t.sq_len.items()}
        faces = [sorted(round(j_of[e]) for e in EDGES if set(e) <= set(face)) for face in itertools.combinations((1, 2, 3, 4), 3)]
        triads = [sorted(int(x) for x in tri) for tri in args.triads().values()]
        assert sorted(faces) == sorted(triads)

    def test_rejects_nonpositive(self):
        sq = {e: Fraction(1) for e in EDGES}
        sq[(1, 2)] = Fraction(0)
        with pytest.raises(DomainError):
            Tetrahedron(sq)


class TestVolume:
    def test_regular_plus_half(self):
        t = regular(Fraction(9, 4))
        assert cayley_menger(t) / 288 == Fraction(729, 4608)
        assert math.isclose(volume(t), 0.3977475644174329, rel_tol=1e-14)
        assert math.isclose(volume(t), 1.5**3 / (6 * math.sqrt(2)), rel_tol=1e-14)

    def test_regular_sqrt(self):
        assert math.isclose(volume(regular(2)), 1 / 3, rel_tol=1e-15)

    def test_flat_is_degenerate(self):
        # vertex 4 at the midpoint of edge 1-2
        sq = {(1, 2): 4, (1, 3): 4, (2, 3): 4, (1, 4): 1, (2, 4): 1, (3, 4): 3}
        t = Tetrahedron({k: Fraction(v) for k, v in sq.items()})
        assert cayley_menger(t) == 0
        with pytest.raises(DegenerateTetrahedronError) as info:
            volume(t)
        assert info.value.cm_determinant == 0
        with pytest.raises(DegenerateTetrahedronError):
            exterior_dihedrals(t)

    def test_impossible_metric(self):
        t = tetra_from_sixj((7, 8, 9, 6, 9, 14), PH)
        assert cayley_menger(t) < 0
        with pytest.raises(DegenerateTetrahedronError):
            volume(t)

    def test_volume_matches_embedding(self):
        for t in sample_tetrahedra():
            p = embed(t)
            v = abs(np.dot(p[2] - p[1], np.cross(p[3] - p[1], p[4] - p[1]))) / 6
            assert math.isclose(v, volume(t), rel_tol=1e-12)
            for (h, k), s2 in t.sq_len.items():
                assert math.isclose(np.sum((p[h] - p[k]) ** 2), float(s2), rel_tol=1e-12)


class TestDihedrals:
    @pytest.mark.parametrize("s2", [Fraction(9, 4), Fraction(2)])
    def test_regular(self, s2):
        angles = exterior_dihedrals(regular(s2))
        for a in angles.values():
            assert abs(a - REGULAR_DIHEDRAL) <= 1e-12
        assert abs(REGULAR_DIHEDRAL - 1.9106332362) < 1e-10
        assert exterior_dihedral(regular(s2), (2, 1)) == angles[(1, 2)]

    def test_range(self):
        for t in sample_tetrahedra():
            for a in exterior_dihedrals(t).values():
                assert 0 < a < math.pi

    def test_relabel_invariance(self):
        for t in sample_tetrahedra():
            base = exterior_dihedrals(t)
            for perm in itertools.permutations((1, 2, 3, 4)):
                mapping = dict(zip((1, 2, 3, 4), perm))
                u = t.relabel(mapping)
                assert abs(volume(u) - volume(t)) <= 1e-12
                moved = exterior_dihedrals(u)
                for (h, k), a in base.items():
                    x, y = mapping[h], mapping[k]
                    assert abs(moved[(min(x, y), max(x, y))] - a) <= 1e-12

    def test_vertex_figure_triangle_inequality(self):
        # exterior angles at a vertex are the sides of the polar spherical
        # triangle; the interior angles are its angles and sum past pi
        for t in sample_tetrahedra():
            exterior = exterior_dihedrals(t)
            for v in (1, 2, 3, 4):
                at_v = [exterior[e] for e in EDGES if v in e]
                for i in range(3):
                    assert at_v[i] < sum(at_v) - at_v[i]
                assert sum(math.pi - x for x in at_v) > math.pi

    def test_unknown_edge(self):
        with pytest.raises(KeyError):
            exterior_dihedral(regular(2), (1, 1))


class TestCosPhi:
    def test_examples(self):
        assert cos_phi_eq6(2, 0, 2, 0, 2) == Fraction(1, 2)
        assert cos_phi_eq6(3, 1, 5, -1, 4) == Fraction(1, 2)
        # 3/2 + 3/2 = 5/2 + 1/2
        assert cos_phi_eq6(1, 0, 1, 0, "5/2") == -1
        assert cos_phi_eq6(3, 0, 3, 0, 5) == Fraction(-23, 98)

    def test_open_triangle(self):
        with pytest.raises(DomainError):
            cos_phi_eq6(0, 0, 0, 0, 3)

    def test_matches_embedding(self):
        checked = 0
        for a, b, c in itertools.product(range(1, 6), repeat=3):
            for f in (1, 2):
                for m, n in itertools.product(range(-f, f + 1), repeat=2):
                    try:
                        t = tetra_from_sixj(SixJArgs.of(c, b, a, f, a + n, b + m), PH)
                    except SelectionRuleError:
                        continue
                    if cayley_menger(t) <= 0:
                        continue
                    p = embed(t)
                    # edges (2,4) and (1,4) carry a+n and b+m; (1,2) carries c
                    u, v = p[2] - p[4], p[1] - p[4]
                    cos = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
                    assert abs(float(cos_phi_eq6(a, n, b, m, c)) - cos) <= 1e-12
                    checked += 1
        assert checked > 200


class TestCosTheta:
    def test_examples(self):
        assert cos_theta_eq7(0, 4) == 0
        assert cos_theta_eq7(5, 5) == Fraction(10, 11)
        assert cos_theta_eq7("-3/2", "7/2") == Fraction(-3, 8)

    def test_strictly_inside(self):
        for twice_c in range(0, 40):
            c = half(f"{twice_c}/2")
            for k in range(twice_c + 1):
                assert abs(cos_theta_eq7(c - k, c)) < 1

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            cos_theta_eq7(6, 5)
