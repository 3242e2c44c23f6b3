from django.test import SimpleTestCase, tag

from geometry.cone import CONE_VERTEX_IMAGE, ConeConfig, collinear, cone_pipeline, lift, on_cone, project
from geometry.exceptions import DomainError
from geometry.gf import build_field
from geometry.pg import ProjPoint2, ProjPoint3, Y_INF, decode_key
from geometry.unitals import construct_bm, construct_hermitian, ebert_check

T = 3


class LiftProjectTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_lift_lands_on_cone(self):
        F = self.F
        points = construct_hermitian(F, T).points()
        lifted = [lift(F, T, P) for P in points]
        self.assertTrue(all(on_cone(F, X) for X in lifted))
        self.assertIn(CONE_VERTEX_IMAGE, lifted)
        self.assertEqual(lift(F, T, ProjPoint2(Y_INF)), CONE_VERTEX_IMAGE)

    def test_lift_rejects_points_off_the_unital(self):
        F = self.F
        off = next(ProjPoint2((1, 0, y)) for y in F.elements() if not F.in_subfield(y))
        with self.assertRaises(DomainError):
            lift(F, T, off)

    def test_project(self):
        F = self.F
        a = 4
        X = ProjPoint3((1, 2, F.mul(2, 2), 7))
        self.assertEqual(project(F, a, X).coords, (1, 2, F.add(7, F.mul(a, 1))))
        self.assertEqual(project(F, a, CONE_VERTEX_IMAGE).coords, Y_INF)
        with self.assertRaises(DomainError):
            project(F, a, ConeConfig(F, a, T).Q)

    def test_project_maps_hermitian_to_bm(self):
        F = self.F
        a = 4
        image = {project(F, a, lift(F, T, P)).coords for P in construct_hermitian(F, T).points()}
        expected = {decode_key(F, k) for k in construct_bm(F, a, T)}
        self.assertEqual(image, expected)

    def test_collinear(self):
        F = self.F
        X, Y = ProjPoint3((1, 0, 0, 0)), ProjPoint3((0, 1, 0, 0))
        self.assertTrue(collinear(F, X, Y, ProjPoint3((1, 1, 0, 0))))
        self.assertTrue(collinear(F, X, X, Y))
        self.assertFalse(collinear(F, X, Y, ProjPoint3((0, 0, 1, 0))))

    def test_config(self):
        F = self.F
        config = ConeConfig(F, 4, T)
        self.assertEqual(config.Q.coords, (0, 0, 1, F.neg(4)))
        self.assertEqual(config.to_json()['plane'], 'x2=0')
        with self.assertRaises(DomainError):
            ConeConfig(F, 4, 1)


class ConePipelineTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_classical(self):
        report = cone_pipeline(self.F, 0, T, check_profile=True)
        self.assertTrue(report.passed, report.checks)
        self.assertEqual(len(report.metadata['image']), 28)

    def test_image_is_bm_set_for_any_a(self):
        report = cone_pipeline(self.F, 4, T)
        self.assertTrue(report.passed)
        self.assertEqual(report.metadata['image'], list(construct_bm(self.F, 4, T).keys))

    def test_profile_fails_off_ebert(self):
        report = cone_pipeline(self.F, 4, T, check_profile=True)
        self.assertTrue(report.checks['image_is_bm_unital'])
        self.assertFalse(report.checks['image_profile.two_character'])

    def test_q4(self):
        self.assertTrue(cone_pipeline(build_field(2, 2), 1, 6, check_profile=True).passed)

    @tag('slow')
    def test_q5(self):
        F = build_field(5, 1, [3, 0, 1])
        report = cone_pipeline(F, 1, 5, check_profile=True)
        self.assertTrue(report.passed, report.checks)
        self.assertTrue(report.checks['image_profile.two_character'])
        self.assertEqual(len(report.metadata['image']), 126)

    @tag('slow')
    def test_q8(self):
        F = build_field(2, 3)
        b = next(x for x in F.elements() if not F.in_subfield(x))
        a = next(x for x in F.elements() if x and ebert_check(F, x, b))
        report = cone_pipeline(F, a, b, check_profile=True)
        self.assertTrue(report.passed)
