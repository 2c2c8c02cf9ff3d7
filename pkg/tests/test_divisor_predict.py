import unittest

from app.config.settings import settings
from app.models.errors import DomainError, InvalidGaps, NotGeneric
from app.models.tableau import Partition
from app.services.divisor_predict import (
    NPoly,
    brute_force_positions,
    family_count,
    generic_divisor,
    generic_symmetry,
    is_generic,
    n_symbol,
    p_d,
    p_d_poly,
)
from app.services.enumeration import enumerate_family, enumerate_syt
from app.services.promotion_engine import orbit_partition, period
from app.services.tableaux_core import extend_first_row, lower_part, validate
from app.services.track_system import track_lengths


class TestGenericDivisor(unittest.TestCase):
    """测试通用情形的除数"""

    def setUp(self):
        """保存原始设置"""
        self.original_refinement = settings.symmetry_refinement

    def tearDown(self):
        """恢复原始设置"""
        settings.symmetry_refinement = self.original_refinement

    def test_is_generic(self):
        """测试通用情形的判定"""
        self.assertTrue(is_generic(validate([[3], [7]]), 9))
        self.assertFalse(is_generic(validate([[3], [4]]), 9))
        self.assertFalse(is_generic(validate([[2], [9]]), 9))

    def test_symmetric_example(self):
        """测试间隔序列对称时的细化"""
        T = validate([[3], [7]])
        Tn = extend_first_row(T, 9)
        self.assertEqual(Tn.rows, ((1, 2, 4, 5, 6, 8, 9), (3,), (7,)))
        self.assertEqual(period(Tn), 4)
        self.assertEqual(generic_symmetry(T, 9), 2)
        self.assertEqual(generic_divisor(T, 9, refine=False), 8)
        self.assertEqual(generic_divisor(T, 9, refine=True), 4)
        settings.symmetry_refinement = True
        self.assertEqual(generic_divisor(T, 9), 4)

    def test_not_generic(self):
        """测试非通用情形"""
        with self.assertRaises(NotGeneric):
            generic_divisor(validate([[3], [4]]), 9)

    def test_generic_sweep(self):
        """测试小形状上通用杨表的周期整除除数"""
        for parts in [(1,), (2,), (1, 1), (2, 1)]:
            size = sum(parts)
            for n in range(size + parts[0] + 1, 11):
                for Tn in enumerate_syt(Partition((n - size,) + parts)):
                    T = lower_part(Tn)
                    if not is_generic(T, n):
                        continue
                    pr = period(Tn)
                    self.assertEqual(generic_divisor(T, n, refine=False) % pr, 0, msg=str(Tn))
                    self.assertEqual(generic_divisor(T, n, refine=True) % pr, 0, msg=str(Tn))


class TestPd(unittest.TestCase):
    """测试 P_d 与位置计数"""

    def test_p_1(self):
        """测试单条轨道"""
        self.assertEqual(p_d([9], [2], [1]), 9)
        with self.assertRaises(DomainError):
            p_d([], [], [])

    def test_p_2_closed_form(self):
        """测试 P_2 = n_1 n_2 - 4 r_1 r_2 ℓ_2²"""
        for ls in [(2, 1), (3, 1), (3, 2)]:
            for rs in [(1, 1), (1, 2), (2, 1), (2, 2)]:
                n1, n2 = track_lengths(n_symbol, ls, rs)
                expected = NPoly.from_expr(n1 * n2 - 4 * rs[0] * rs[1] * ls[1] ** 2)
                self.assertEqual(p_d_poly(ls, rs), expected)

    def test_p_d_poly_values(self):
        """测试多项式在 n 处的值等于递推的值"""
        poly = p_d_poly((2, 1), (1, 1))
        self.assertEqual(poly.coeffs(), [8, -7, 1])
        self.assertTrue(poly.is_monic())
        for n in range(10, 16):
            self.assertEqual(poly(n), p_d(track_lengths(n, (2, 1), (1, 1)), (2, 1), (1, 1)))
        poly3 = p_d_poly((3, 2, 1), (1, 1, 1))
        self.assertEqual(poly3.degree, 3)

    def test_brute_force_matches(self):
        """测试暴力计数与 P_d 一致且与间隔无关"""
        cases = [
            ((2, 1), (1, 1), 12, [[(8,), (9,)]]),
            ((2, 1), (2, 1), 16, [[(4, 8), (11,)], [(6, 6), (11,)], [(5, 7), (11,)]]),
            ((3, 1), (1, 2), 18, [[(11,), (3, 12)], [(11,), (6, 9)], [(11,), (7, 8)]]),
        ]
        for ls, rs, n, gap_lists in cases:
            ns = track_lengths(n, ls, rs)
            value = p_d(ns, ls, rs)
            for gaps in gap_lists:
                self.assertEqual(brute_force_positions(ns, ls, rs, gaps), value)

    def test_invalid_gaps(self):
        """测试不合法的间隔序列"""
        ns = track_lengths(12, (2, 1), (1, 1))
        with self.assertRaises(InvalidGaps):
            brute_force_positions(ns, (2, 1), (1, 1), [(7,), (9,)])

    def test_family_count(self):
        """测试族的大小与分类筛选一致，轨道长度整除 P_d"""
        for n in range(10, 13):
            ls, rs = (2, 1), (1, 1)
            family = enumerate_family(n, ls, rs)
            self.assertEqual(len(family), family_count(n, ls, rs))
            value = p_d(track_lengths(n, ls, rs), ls, rs)
            for report in orbit_partition(family):
                self.assertEqual(value % report.period, 0)
        self.assertEqual(family_count(10, (2, 1), (1, 1)), 38)

    def test_example_periods_divide(self):
        """测试 T = {4,5,9} 的周期整除 P_2"""
        T = validate([[4, 5, 9]])
        poly = p_d_poly((2, 1), (1, 1))
        for n in range(10, 14):
            self.assertEqual(poly(n) % period(extend_first_row(T, n)), 0)
