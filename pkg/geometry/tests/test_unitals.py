from unittest import mock

from django.test import SimpleTestCase, override_settings, tag

from geometry.exceptions import BoundExceededError, DomainError, VerificationFailure
from geometry.gf import build_field, find_epsilon
from geometry.pg import Y_INF, point_key
from geometry.unitals import (PairClass, PairRecord, UnitalKind, UnitalSpec, affine_part, classify, construct,
                              construct_bm, construct_bt, construct_bt_parametric, construct_hermitian, ebert_check,
                              ebert_value, enumerate_pairs)
from geometry.verify import assert_unital

T = 3  # t in GF(9)


class EbertTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_classical_pair(self):
        F = self.F
        self.assertEqual(ebert_value(F, 0, T), 2)
        self.assertTrue(ebert_check(F, 0, T))
        self.assertEqual(classify(F, 0, T), PairClass.CLASSICAL)

    def test_hsz_pair(self):
        F = self.F
        a = 4  # 1 + t
        self.assertEqual(ebert_value(F, a, 1), 2)
        self.assertTrue(ebert_check(F, a, 1))
        self.assertFalse(F.in_subfield(F.mul(a, a)))
        self.assertEqual(classify(F, a, 1), PairClass.HSZ)

    def test_invalid_pairs(self):
        F = self.F
        self.assertFalse(ebert_check(F, 1, 0))
        self.assertFalse(ebert_check(F, 0, 1))
        self.assertEqual(classify(F, 4, T), PairClass.INVALID)

    def test_even_q(self):
        F = build_field(2, 2)
        b = 6  # t^2 + t, so b^q + b = 1
        self.assertEqual(F.rel_trace(b), 1)
        self.assertEqual(ebert_value(F, 1, b), 1)
        self.assertTrue(ebert_check(F, 1, b))
        self.assertEqual(classify(F, 1, b), PairClass.BM_GENERAL)
        self.assertIsNone(ebert_value(F, 1, 1))
        self.assertFalse(ebert_check(F, 1, 1))

    def test_symmetric_in_a(self):
        for p, e in ((2, 1), (3, 1), (2, 2)):
            F = build_field(p, e)
            with self.subTest(q=F.q):
                for a in F.elements():
                    minus_a = F.neg(a)
                    for b in F.elements():
                        self.assertEqual(ebert_value(F, a, b), ebert_value(F, minus_a, b))
                        self.assertEqual(ebert_check(F, a, b), ebert_check(F, minus_a, b), (a, b))

    @tag('slow')
    def test_symmetric_in_a_q5(self):
        F = build_field(5, 1)
        for a in F.elements():
            minus_a = F.neg(a)
            for b in F.elements():
                self.assertEqual(ebert_check(F, a, b), ebert_check(F, minus_a, b), (a, b))

    def test_even_q_trace_one_is_invalid(self):
        F = build_field(2, 2)
        b = 4  # t^2, b^q + b lies in GF(4) minus GF(2)
        self.assertFalse(F.rel_trace(b) in (0, 1))
        self.assertFalse(ebert_check(F, 1, b))


class ConstructionTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(3, 1)

    def test_bm_size_and_vertex(self):
        U = construct_bm(self.F, 4, 1)
        self.assertEqual(len(U), 28)
        self.assertIn(point_key(self.F, Y_INF), U)
        self.assertEqual(len(affine_part(U)), 27)

    def test_bm_never_rejects(self):
        self.assertEqual(len(construct_bm(self.F, 1, 0)), 28)

    def test_hermitian(self):
        F = self.F
        self.assertEqual(construct_hermitian(F, T), construct_bm(F, 0, T))
        with self.assertRaises(DomainError):
            construct_hermitian(F, 1)

    def test_spec_dispatch(self):
        F = self.F
        spec = UnitalSpec('bm', F, a=4, b=1)
        self.assertEqual(spec.kind, UnitalKind.BM)
        self.assertEqual(construct(spec), construct_bm(F, 4, 1))
        self.assertEqual(spec.to_json(), {'kind': 'bm', 'a': 4, 'b': 1})
        self.assertEqual(UnitalSpec(UnitalKind.HERMITIAN, F, b=T).to_json(), {'kind': 'hermitian', 'b': T})

    def test_spec_validation(self):
        F = self.F
        with self.assertRaises(DomainError):
            UnitalSpec(UnitalKind.HERMITIAN, F, b=2)
        with self.assertRaises(DomainError):
            UnitalSpec(UnitalKind.BT, F)
        with self.assertRaises(ValueError):
            UnitalSpec('conic', F)


class BuekenhoutTitsTests(SimpleTestCase):

    def setUp(self):
        self.F = build_field(2, 3)

    def test_parameterizations_agree(self):
        F = self.F
        eps, _ = find_epsilon(F)
        U = construct_bt(F)
        self.assertEqual(len(U), 513)
        self.assertEqual(U, construct_bt_parametric(F, eps))
        self.assertEqual(construct(UnitalSpec(UnitalKind.BT, F)), U)

    def test_bad_epsilon(self):
        with self.assertRaises(DomainError):
            construct_bt(self.F, 0)

    def test_needs_odd_exponent(self):
        with self.assertRaises(DomainError):
            construct_bt(build_field(2, 2))
        with self.assertRaises(DomainError):
            construct_bt(build_field(3, 1))

    @tag('slow')
    def test_bt_unital_profile(self):
        report = assert_unital(construct_bt(self.F))
        self.assertTrue(report.passed)
        self.assertEqual(report.profile, {1: 513, 9: 3648})


class EnumerationTests(SimpleTestCase):

    @override_settings(UNITAL_CROSSCHECK_MAX_Q=2)
    def test_class_counts_q3(self):
        records = enumerate_pairs(build_field(3, 1))
        self.assertEqual(len(records), 81 * 81)
        counts = {c: 0 for c in PairClass}
        for record in records:
            counts[record.pair_class] += 1
            self.assertIsNone(record.unital)
        self.assertEqual(counts, {
            PairClass.INVALID: 6543,
            PairClass.CLASSICAL: 6,
            PairClass.HSZ: 12,
            PairClass.BM_GENERAL: 0,
        })

    @override_settings(UNITAL_ENUMERATE_MAX_Q=2)
    def test_bound(self):
        with self.assertRaises(BoundExceededError):
            enumerate_pairs(build_field(3, 1))

    def test_record_consistency(self):
        self.assertTrue(PairRecord(0, 3, PairClass.CLASSICAL).consistent)
        self.assertTrue(PairRecord(0, 3, PairClass.CLASSICAL, True).consistent)
        self.assertFalse(PairRecord(1, 0, PairClass.INVALID, True).consistent)

    def test_strict_crosscheck_q2(self):
        records = enumerate_pairs(build_field(2, 1), crosscheck_max_q=2, jobs=1, strict=True)
        self.assertEqual(len(records), 16 * 16)
        self.assertTrue(all(r.unital is not None and r.consistent for r in records))

    def test_strict_raises_on_disagreement(self):
        F = build_field(2, 1)
        with mock.patch('geometry.unitals.classify', return_value=PairClass.INVALID):
            records = enumerate_pairs(F, crosscheck_max_q=2, jobs=1)
            self.assertTrue(any(not r.consistent for r in records))
            with self.assertRaises(VerificationFailure):
                enumerate_pairs(F, crosscheck_max_q=2, jobs=1, strict=True)
