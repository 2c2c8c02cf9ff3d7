import unittest

from app.models.errors import DuplicateEntry, NotExtendable, OrderError, PromotionError, ShapeError
from app.models.tableau import Partition, Tableau
from app.services.tableaux_core import (
    binomial,
    extend_first_row,
    hook_count,
    lower_part,
    make_partition,
    to_syt,
    transpose,
    validate,
)


class TestTableauxCore(unittest.TestCase):
    """测试杨表的基础操作"""

    def test_validate_standard(self):
        """测试合法杨表"""
        T = validate([[1, 2, 5], [3, 4]])
        self.assertEqual(T.shape, Partition((3, 2)))
        self.assertTrue(T.is_standard)
        self.assertEqual(T.canonical(), "1,2,5|3,4")
        self.assertEqual(T.to_dict(), {"rows": [[1, 2, 5], [3, 4]]})

    def test_validate_errors(self):
        """测试各类校验错误"""
        with self.assertRaises(OrderError):
            validate([[1, 4], [2, 3]])
        with self.assertRaises(DuplicateEntry):
            validate([[1, 2], [2]])
        with self.assertRaises(ShapeError):
            validate([[1], [2, 3]])
        with self.assertRaises(ShapeError):
            validate([])
        # 所有领域错误都是 ValueError
        with self.assertRaises(ValueError):
            validate([[2, 1]])
        self.assertTrue(issubclass(OrderError, PromotionError))

    def test_make_partition(self):
        """测试分拆构造"""
        self.assertEqual(make_partition([3, 1, 1]).size, 5)
        with self.assertRaises(ShapeError):
            make_partition([1, 2])
        with self.assertRaises(ShapeError):
            make_partition([2, 0])

    def test_to_syt(self):
        """测试标准化"""
        T = Tableau(((3, 7), (9,)))
        self.assertEqual(to_syt(T), Tableau(((1, 2), (3,))))

    def test_extend_first_row(self):
        """测试首行扩展"""
        T = validate([[4, 5, 9]])
        Tn = extend_first_row(T, 10)
        self.assertEqual(Tn.rows, ((1, 2, 3, 6, 7, 8, 10), (4, 5, 9)))
        self.assertEqual(lower_part(Tn), T)

    def test_extend_first_row_errors(self):
        """测试无法扩展的情形"""
        T = validate([[4, 5, 9]])
        with self.assertRaises(NotExtendable):
            extend_first_row(T, 6)
        with self.assertRaises(NotExtendable):
            extend_first_row(T, 8)
        # 新首行的 5 位于 3 的上方，第二列不递增
        with self.assertRaises(NotExtendable):
            extend_first_row(validate([[2, 3, 4]]), 8)

    def test_hook_count(self):
        """测试钩长公式"""
        self.assertEqual(hook_count(Partition((3, 2))), 5)
        self.assertEqual(hook_count(Partition((8, 6))), 1001)
        self.assertEqual(hook_count(Partition((2, 1))), 2)

    def test_transpose_and_binomial(self):
        """测试共轭分拆与二项式系数"""
        self.assertEqual(transpose(Partition((3, 1))), Partition((2, 1, 1)))
        self.assertEqual(binomial(5, 2), 10)
        self.assertEqual(binomial(3, -1), 0)
        self.assertEqual(binomial(-1, 0), 0)
