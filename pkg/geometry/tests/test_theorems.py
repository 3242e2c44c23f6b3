from django.test import SimpleTestCase, tag

from geometry.exceptions import DomainError
from geometry.gf import build_field
from geometry.theorems import (check_bt_theorem, check_ebert_equivalence, check_main_theorem, check_parabola_lemma,
                               check_tangent_parabolas, default_bt_b, sample_pairs)
from geometry.unitals import ebert_check

T = 3


class EbertEquivalenceTests(SimpleTestCase):

    def test_exhaustive_q3(self):
        report = check_ebert_equivalence(build_field(3, 1))
        self.assertTrue(report.passed, report.witnesses)
        self.assertTrue(report.metadata['exhaustive'])
        self.assertEqual(report.metadata['pairs'], 81 * 81)
        self.assertEqual(report.metadata['valid'], 18)
        self.assertEqual(report.metadata['discrepancies'], 0)

    def test_explicit_pairs(self):
        report = check_ebert_equivalence(build_field(2, 2), pairs=[(1, 6), (1, 4), (0, 2), (3, 0)])
        self.assertTrue(report.passed)
        self.assertEqual(report.metadata['valid'], 2)

    def test_sampled_q5(self):
        F = build_field(5, 1)
        report = check_ebert_equivalence(F, samples=40, seed=11)
        self.assertTrue(report.passed)
        self.assertFalse(report.metadata['exhaustive'])
        self.assertEqual(report.metadata['seed'], 11)
        self.assertEqual(sample_pairs(F, 40, 11), sample_pairs(F, 40, 11))

    @tag('slow')
    def test_exhaustive_q4(self):
        report = check_ebert_equivalence(build_field(2, 2))
        self.assertTrue(report.passed)
        self.assertEqual(report.metadata['pairs'], 256 * 256)

    @tag('slow')
    def test_sampled_q5_thousand_pairs(self):
        report = check_ebert_equivalence(build_field(5, 1), samples=1000, seed=0, jobs=2)
        self.assertTrue(report.passed)
        self.assertEqual(report.metadata['pairs'], 1000)


class MainTheoremTests(SimpleTestCase):

    def test_q3_classical(self):
        report = check_main_theorem(build_field(3, 1), 0, T)
        self.assertTrue(report.passed, report.checks)
        self.assertEqual(report.profile, {1: 28, 4: 63})

    def test_q4(self):
        F = build_field(2, 2)
        report = check_main_theorem(F, 1, 6, samples=300)
        self.assertTrue(report.passed, report.checks)
        self.assertEqual(report.profile, {1: 65, 5: 208})
        self.assertEqual(report.metadata['model'], 'A_a')

    def test_invalid_pair(self):
        report = check_main_theorem(build_field(3, 1), 4, T)
        self.assertFalse(report.passed)
        self.assertFalse(report.checks['ebert'])
        self.assertFalse(report.checks['unital_in_model.two_character'])
        self.assertTrue(report.checks['phi_image_is_bm_unital'])
        self.assertTrue(report.checks['incidence_transfer.lines_preserved'])

    def test_needs_b_outside_subfield(self):
        with self.assertRaises(DomainError):
            check_main_theorem(build_field(3, 1), 4, 1)

    @tag('slow')
    def test_q5(self):
        F = build_field(5, 1, [3, 0, 1])
        report = check_main_theorem(F, 1, 5, samples=2000)
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 126, 6: 525})

    @tag('slow')
    def test_every_valid_pair_q4(self):
        F = build_field(2, 2)
        for b in F.elements():
            if F.in_subfield(b):
                continue
            invalid = next(a for a in F.elements() if not ebert_check(F, a, b))
            report = check_main_theorem(F, invalid, b, samples=40)
            self.assertFalse(report.checks['unital_in_model.two_character'], (invalid, b))
            self.assertTrue(report.checks['incidence_transfer.lines_preserved'])
            for a in F.elements():
                if ebert_check(F, a, b):
                    report = check_main_theorem(F, a, b, samples=40)
                    self.assertTrue(report.passed, (a, b, report.witnesses[:3]))
                    self.assertEqual(report.profile, {1: 65, 5: 208})

    @tag('slow')
    def test_valid_pair_per_norm_class_q5(self):
        F = build_field(5, 1)
        outside = [b for b in F.elements() if not F.in_subfield(b)]
        for b in outside[:2]:
            for norm in F.subfield:
                a = next(x for x in F.elements() if F.rel_norm(x) == norm)
                if not ebert_check(F, a, b):
                    continue
                with self.subTest(a=a, b=b):
                    report = check_main_theorem(F, a, b, samples=200)
                    self.assertTrue(report.passed, report.witnesses[:3])
                    self.assertEqual(report.profile, {1: 126, 6: 525})


class ParabolaTests(SimpleTestCase):

    def test_lemma_q3(self):
        report = check_parabola_lemma(build_field(3, 1), 0, T, direct_slopes=9)
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 27, 4: 54})

    def test_lemma_q4(self):
        report = check_parabola_lemma(build_field(2, 2), 1, 6)
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 64, 5: 192})

    def test_lemma_fails_off_ebert(self):
        report = check_parabola_lemma(build_field(3, 1), 4, T)
        self.assertFalse(report.passed)
        self.assertFalse(report.metadata['ebert'])
        self.assertTrue(report.checks['slope_partition'])

    def test_tangent_parabolas(self):
        for F, a, b in ((build_field(3, 1), 0, T), (build_field(2, 2), 1, 6)):
            with self.subTest(q=F.q):
                report = check_tangent_parabolas(F, a, b)
                self.assertTrue(report.passed, report.witnesses)
                self.assertEqual(report.metadata['points'], F.q ** 3)


class BuekenhoutTitsTheoremTests(SimpleTestCase):

    def test_default_b(self):
        F = build_field(2, 3)
        b = default_bt_b(F)
        self.assertFalse(F.in_subfield(b))
        self.assertTrue(all(F.in_subfield(x) for x in range(b)))

    @tag('slow')
    def test_q8(self):
        report = check_bt_theorem(build_field(2, 3), samples=2000)
        self.assertTrue(report.passed, report.checks)
        self.assertEqual(report.profile, {1: 513, 9: 3648})
        self.assertTrue(report.checks['gamma_image_is_bt_unital'])
