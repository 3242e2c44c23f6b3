import numpy as np
from django.test import SimpleTestCase, tag

from geometry.exceptions import DomainError
from geometry.gf import build_field
from geometry.pg import PointSet, Y_INF, enumerate_plane, line_keys, point_key, standard_line_keys
from geometry.unitals import construct_bm, construct_bt, construct_hermitian
from geometry.verify import (assert_unital, count_pairs_on_lines, hermitian_eval, hermitian_points,
                             intersection_profile, parabola_counts_for_slope, parabola_hermitian_count,
                             tangent_parabola)

T = 3


class IntersectionProfileTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)
        self.lines = standard_line_keys(self.F)

    def test_single_line(self):
        F = self.F
        _, lines = enumerate_plane(F)
        S = PointSet(F, line_keys(F, lines[5]))
        report = intersection_profile(S, self.lines)
        self.assertEqual(report.profile, {1: 90, 10: 1})
        self.assertFalse(report.passed)
        self.assertEqual(len(report.witnesses), 1)
        self.assertEqual(report.witnesses[0]['size'], 10)
        self.assertEqual(sum(report.profile.values()), 91)

    def test_rejects_foreign_keys(self):
        S = PointSet(self.F, [point_key(self.F, (0, 2, 0))])
        with self.assertRaises(DomainError):
            intersection_profile(S, self.lines)

    def test_kind_profile_sums_to_profile(self):
        report = intersection_profile(construct_hermitian(self.F, T), self.lines)
        totals = {}
        for (_, size), count in report.kind_profile.items():
            totals[size] = totals.get(size, 0) + count
        self.assertEqual(totals, report.profile)

    def test_workers_do_not_change_the_profile(self):
        S = construct_bm(self.F, 4, 1)
        serial = intersection_profile(S, self.lines, jobs=1)
        pooled = intersection_profile(S, self.lines, jobs=2)
        self.assertEqual(serial.profile, pooled.profile)
        self.assertEqual(serial.kind_profile, pooled.kind_profile)

    def test_count_pairs_on_lines(self):
        self.assertEqual(count_pairs_on_lines({1: 28, 4: 63}), 28 * 27 // 2)


class LinesThroughVertexTests(SimpleTestCase):
    """Every construction meets the lines through Y_inf in q+1 points, and l_inf only in Y_inf."""

    def assert_vertex_lines(self, S):
        F = S.field
        vertex = point_key(F, Y_INF)
        for L, keys in standard_line_keys(F):
            if L.kind == 'line':
                continue
            meet = [k for k in keys if k in S]
            if L.kind == 'infinity':
                self.assertEqual(meet, [vertex])
            else:
                self.assertEqual(len(meet), F.q + 1, L)
        report = intersection_profile(S, standard_line_keys(F))
        self.assertEqual(report.kind_profile[('infinity', 1)], 1)
        vertical = {size: n for (kind, size), n in report.kind_profile.items() if kind == 'vertical'}
        self.assertEqual(vertical, {F.q + 1: F.qsq})

    def test_bm_and_hermitian(self):
        for p, e in ((2, 1), (3, 1), (2, 2), (5, 1)):
            F = build_field(p, e)
            b = next(x for x in F.elements() if not F.in_subfield(x))
            for S in (construct_hermitian(F, b), construct_bm(F, 1, b), construct_bm(F, 1, 0),
                      construct_bm(F, F.qsq - 1, 1)):
                with self.subTest(q=F.q, size=len(S)):
                    self.assert_vertex_lines(S)

    @tag('slow')
    def test_bt(self):
        self.assert_vertex_lines(construct_bt(build_field(2, 3)))


class AssertUnitalTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_hermitian_unital(self):
        report = assert_unital(construct_hermitian(self.F, T))
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 28, 4: 63})
        self.assertEqual(report.metadata['model'], 'standard')
        self.assertEqual(report.witnesses, [])

    def test_hsz_unital(self):
        self.assertTrue(assert_unital(construct_bm(self.F, 4, 1)).passed)

    def test_non_ebert_pair_fails_with_witness(self):
        report = assert_unital(construct_bm(self.F, 1, 0))
        self.assertFalse(report.passed)
        self.assertFalse(report.checks['two_character'])
        self.assertTrue(report.witnesses)

    def test_random_set_fails(self):
        F = self.F
        rng = np.random.default_rng(7)
        keys = [P.key(F) for P in enumerate_plane(F)[0]]
        S = PointSet(F, rng.choice(keys, size=28, replace=False).tolist())
        self.assertFalse(assert_unital(S).passed)

    def test_wrong_size(self):
        with self.assertRaises(DomainError):
            assert_unital(PointSet(self.F, [1]))

    def test_q5_bm_unital(self):
        F = build_field(5, 1, [3, 0, 1])
        report = assert_unital(construct_bm(F, 1, 5))
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 126, 6: 525})


class HermitianCurveTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_points(self):
        points = hermitian_points(self.F, T)
        self.assertEqual(len(points), 27)
        self.assertEqual(points, construct_hermitian(self.F, T).affine_part())
        self.assertTrue(all(hermitian_eval(self.F, T, x, y) == 0 for x, y in points))
        with self.assertRaises(DomainError):
            hermitian_points(self.F, 1)

    def test_parabola_counts(self):
        F = self.F
        for m in F.elements():
            counts = parabola_counts_for_slope(F, 0, T, m)
            self.assertEqual(sum(counts), 27)
            self.assertTrue(set(counts) <= {1, 4})
        self.assertEqual(parabola_counts_for_slope(F, 0, T, 2),
                         [parabola_hermitian_count(F, 0, T, 2, d) for d in F.elements()])

    def test_tangent_parabola(self):
        F = self.F
        for w, z in hermitian_points(F, T):
            m, d = tangent_parabola(F, 0, T, w, z)
            self.assertEqual(F.add(F.mul(m, w), d), z)
            self.assertEqual(parabola_hermitian_count(F, 0, T, m, d), 1)

    def test_tangent_parabola_needs_curve_point(self):
        self.assertNotEqual(hermitian_eval(self.F, T, 0, T), 0)
        with self.assertRaises(DomainError):
            tangent_parabola(self.F, 0, T, 0, T)

    def test_even_slope(self):
        F = build_field(2, 2)
        b = 6
        for w, z in hermitian_points(F, b)[:8]:
            m, _ = tangent_parabola(F, 1, b, w, z)
            self.assertEqual(m, F.mul(F.add(b, F.frobenius(b)), F.frobenius(w)))
