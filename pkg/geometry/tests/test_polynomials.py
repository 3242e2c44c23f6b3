from django.test import SimpleTestCase

from geometry.utils import polynomials as poly


class PolynomialTests(SimpleTestCase):

    def test_arithmetic(self):
        self.assertEqual(poly.add([1, 1], [1, 1], 2), [])
        self.assertEqual(poly.sub([1], [0, 1], 3), [1, 2])
        self.assertEqual(poly.mul([1, 1], [1, 1], 2), [1, 0, 1])
        self.assertEqual(poly.mul([], [1, 1], 5), [])

    def test_divmod(self):
        a = poly.mul([1, 2, 1], [4, 1], 5)
        quotient, remainder = poly.divmod_(poly.add(a, [3], 5), [4, 1], 5)
        self.assertEqual(quotient, [1, 2, 1])
        self.assertEqual(remainder, [3])
        with self.assertRaises(ZeroDivisionError):
            poly.divmod_([1], [], 5)

    def test_gcd(self):
        a = poly.mul([1, 1], [2, 1], 3)
        b = poly.mul([1, 1], [0, 1], 3)
        self.assertEqual(poly.gcd(a, b, 3), [1, 1])

    def test_powmod(self):
        # t^3 = 2t modulo t^2 + 1 over GF(3)
        self.assertEqual(poly.powmod([0, 1], 3, [1, 0, 1], 3), [0, 2])

    def test_evaluate(self):
        self.assertEqual(poly.evaluate([1, 0, 1], 2, 5), 0)
        self.assertTrue(poly.has_root([1, 0, 1], 5))
        self.assertFalse(poly.has_root([1, 0, 1], 3))

    def test_irreducibility(self):
        self.assertTrue(poly.is_irreducible([1, 0, 1], 3))
        self.assertFalse(poly.is_irreducible([1, 0, 1], 5))
        self.assertTrue(poly.is_irreducible([1, 1, 1], 5))
        self.assertTrue(poly.is_irreducible([1, 0, 0, 1, 1], 2))
        self.assertFalse(poly.is_irreducible([1, 0, 0, 0, 1], 2))
        # (t^2 + t + 1)^2 has no root but is reducible
        self.assertFalse(poly.is_irreducible([1, 0, 1, 0, 1], 2))
        self.assertFalse(poly.is_irreducible([1], 2))
