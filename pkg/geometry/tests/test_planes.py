from django.test import SimpleTestCase, tag

from geometry.exceptions import DomainError
from geometry.gf import build_field, find_epsilon
from geometry.pg import PointSet, Y_INF, affine_key, point_key
from geometry.planes import (EpsilonPlane, LineKind, ModelLine, ModelPoint, ParabolaPlane, PlaneModel, PointKind,
                             StandardPlane, apply_to_set, check_incidence_transfer, check_parallel_classes,
                             gamma_map, phi_inv, phi_map, plane_axiom_check)


class ModelObjectTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_point_keys_round_trip(self):
        F = self.F
        for P in (ModelPoint.affine(2, 7), ModelPoint.direction(4), ModelPoint.inf_vertical()):
            self.assertEqual(ModelPoint.from_key(F, P.key(F)), P)
        self.assertEqual(ModelPoint.inf_vertical().key(F), point_key(F, Y_INF))
        self.assertEqual(ModelPoint.direction(4).key(F), point_key(F, (0, 1, 4)))

    def test_json(self):
        self.assertEqual(ModelLine.curve(1, 2).to_json(), {'kind': 'curve', 'm': 1, 'd': 2})
        self.assertEqual(ModelLine.vertical(5).to_json(), {'kind': 'vertical', 'k': 5})
        self.assertEqual(ModelLine.at_infinity().to_json(), {'kind': 'infinity'})
        self.assertEqual(ModelPoint.direction(3).to_json(), {'kind': 'direction', 'm': 3})
        self.assertEqual(ParabolaPlane(self.F, 4).to_json(), {'model': 'A_a', 'a': 4})

    def test_line_points(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        points = model.line_points(ModelLine.curve(0, 0))
        self.assertEqual(len(points), 10)
        self.assertIn(ModelPoint.direction(0), points)
        for P in points:
            if P.is_affine:
                self.assertEqual(P.y, F.mul(4, F.mul(P.x, P.x)))
        self.assertEqual(len(model.all_lines()), 91)
        self.assertEqual(model.all_lines()[0].kind, LineKind.VERTICAL)
        self.assertEqual(model.all_lines()[-1].kind, LineKind.INFINITY)

    def test_line_through(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        P, R = ModelPoint.affine(1, 2), ModelPoint.affine(3, 0)
        L = model.line_through(P, R)
        self.assertEqual(L.kind, LineKind.CURVE)
        self.assertTrue(model.contains(L, P) and model.contains(L, R))
        self.assertEqual(model.line_through(P, ModelPoint.affine(1, 5)), ModelLine.vertical(1))
        self.assertEqual(model.line_through(P, ModelPoint.inf_vertical()), ModelLine.vertical(1))
        self.assertEqual(model.line_through(ModelPoint.direction(2), ModelPoint.inf_vertical()),
                         ModelLine.at_infinity())
        through_direction = model.line_through(ModelPoint.direction(2), P)
        self.assertEqual(through_direction.m, 2)
        self.assertTrue(model.contains(through_direction, P))
        with self.assertRaises(DomainError):
            model.line_through(P, P)

    def test_points(self):
        points = StandardPlane(self.F).points()
        self.assertEqual(len(points), 91)
        self.assertEqual(sum(1 for P in points if P.kind == PointKind.DIRECTION), 9)


class PlaneAxiomTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_standard_plane(self):
        report = plane_axiom_check(PlaneModel(self.F))
        self.assertTrue(report.passed, report.witnesses)
        self.assertTrue(report.metadata['exhaustive'])
        self.assertEqual(report.metadata['lines'], 91)

    def test_parabola_plane(self):
        for a in (1, 4):
            with self.subTest(a=a):
                self.assertTrue(plane_axiom_check(ParabolaPlane(self.F, a)).passed)

    def test_sampled_pairs(self):
        report = plane_axiom_check(ParabolaPlane(build_field(2, 2), 6), samples=200, seed=3)
        self.assertTrue(report.passed)
        self.assertFalse(report.metadata['exhaustive'])
        self.assertEqual(report.metadata['pairs'], 200)

    def test_parallel_classes(self):
        self.assertTrue(check_parallel_classes(ParabolaPlane(self.F, 4)).passed)


class MapTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_phi_inverse(self):
        F = self.F
        for x in F.elements():
            for y in (0, 5):
                self.assertEqual(phi_inv(F, 4, *phi_map(F, 4, x, y)), (x, y))

    def test_model_maps_are_phi(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        for x in F.elements():
            self.assertEqual(model.to_standard(x, 2), phi_map(F, 4, x, 2))
            self.assertEqual(model.from_standard(x, 2), phi_inv(F, 4, x, 2))

    def test_phi_inverse_carries_ambient_line_to_curve(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        line = PointSet(F, PlaneModel(F).line_keys(ModelLine.curve(0, 0)))
        image = apply_to_set(lambda x, y: phi_inv(F, 4, x, y), line)
        self.assertEqual(tuple(image.keys), model.line_keys(ModelLine.curve(0, 0)))

    def test_apply_to_set_keeps_infinite_points(self):
        F = self.F
        S = PointSet(F, [point_key(F, Y_INF), affine_key(F, 1, 1)])
        image = apply_to_set(lambda x, y: phi_map(F, 1, x, y), S)
        self.assertIn(point_key(F, Y_INF), image)
        self.assertIn(affine_key(F, 1, 0), image)

    def test_incidence_transfer(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        self.assertTrue(check_incidence_transfer(model).passed)
        self.assertTrue(check_incidence_transfer(model, lambda x, y: phi_inv(F, 4, x, y)).passed)

    def test_wrong_map_breaks_incidence(self):
        F = self.F
        model = ParabolaPlane(F, 4)
        report = check_incidence_transfer(model, lambda x, y: phi_map(F, 4, x, y))
        self.assertFalse(report.passed)
        self.assertTrue(report.witnesses)


class EpsilonPlaneTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(2, 3)
        self.eps, _ = find_epsilon(self.F)
        self.b = next(x for x in self.F.elements() if not self.F.in_subfield(x))

    def test_domain(self):
        with self.assertRaises(DomainError):
            EpsilonPlane(build_field(3, 1), 1, 3)
        with self.assertRaises(DomainError):
            EpsilonPlane(self.F, self.eps, 1)

    def test_gamma_is_an_involution(self):
        F = self.F
        for x in range(0, 64, 7):
            for y in (0, 9, 33):
                once = gamma_map(F, self.eps, self.b, x, y)
                self.assertEqual(gamma_map(F, self.eps, self.b, *once), (x, y))

    def test_gamma_matches_model(self):
        model = EpsilonPlane(self.F, self.eps, self.b)
        for x in range(0, 64, 5):
            self.assertEqual(gamma_map(self.F, self.eps, self.b, x, 0), model.from_standard(x, 0))

    @tag('slow')
    def test_plane_axioms(self):
        report = plane_axiom_check(EpsilonPlane(self.F, self.eps, self.b), samples=2000)
        self.assertTrue(report.passed)
        self.assertEqual(report.metadata['lines'], 64 * 64 + 64 + 1)
