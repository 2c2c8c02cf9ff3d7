import unittest
from fractions import Fraction

from app.config.settings import settings
from app.models.errors import InsufficientData
from app.services.divisor_predict import p_d_poly
from app.services.quasipolynomial import fit_quasipolynomial, fit_sequence, period_sequence
from app.services.tableaux_core import validate


class TestQuasipolynomial(unittest.TestCase):
    """测试拟多项式拟合"""

    def setUp(self):
        """保存原始设置"""
        self.original_holdout = settings.fit_holdout

    def tearDown(self):
        """恢复原始设置"""
        settings.fit_holdout = self.original_holdout

    def test_constant_sequence(self):
        """测试常数序列得到 0 次拟合"""
        result = fit_sequence([(n, 6) for n in range(5, 11)])
        self.assertTrue(result.fitted)
        self.assertEqual((result.modulus, result.degree, result.onset), (1, 0, 5))
        self.assertEqual(result.classes[0].coeffs, (Fraction(6),))

    def test_quadratic_sequence(self):
        """测试二次序列的系数与 P_2 多项式一致"""
        poly = p_d_poly((2, 1), (1, 1))
        result = fit_sequence([(n, poly(n)) for n in range(10, 21)])
        self.assertTrue(result.fitted)
        self.assertEqual((result.modulus, result.degree), (1, 2))
        self.assertEqual([int(c) for c in result.classes[0].coeffs], poly.coeffs())
        self.assertEqual(result.classes[0](12), poly(12))

    def test_generic_tableau(self):
        """测试通用杨表的周期拟合为 n - 1"""
        result = fit_quasipolynomial(validate([[3], [6]]), range(8, 17))
        self.assertTrue(result.fitted)
        self.assertEqual((result.modulus, result.degree), (1, 1))
        self.assertEqual(result.classes[0].coeffs, (Fraction(-1), Fraction(1)))
        self.assertEqual(result.to_dict()["classes"][0]["coeffs"], ["-1", "1"])

    def test_period_sequence(self):
        """测试周期序列"""
        points = period_sequence(validate([[3], [6]]), [8, 9])
        self.assertEqual(points, [(8, 7), (9, 8)])

    def test_insufficient_data(self):
        """测试数据不足"""
        settings.fit_holdout = 2
        with self.assertRaises(InsufficientData):
            fit_sequence([(5, 1), (6, 1)])

    def test_no_fit(self):
        """测试在次数上限内无法拟合"""
        points = [(n, 2 ** n) for n in range(1, 9)]
        result = fit_sequence(points, max_modulus=1, max_degree=1)
        self.assertFalse(result.fitted)
        self.assertEqual(len(result.data), 8)
