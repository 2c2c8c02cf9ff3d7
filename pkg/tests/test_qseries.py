import unittest

from app.models.errors import DomainError, NonConstantResidue, PreconditionViolated
from app.services.enumeration import enumerate_single_length
from app.services.qseries import (
    QPoly,
    csp_fixed_count,
    csp_polynomial,
    descents,
    eval_at_primitive_root,
    maj,
    maj_ell,
    maj_gf,
    q_binomial,
    q_binomial_pascal,
    q_int,
    single_length_count,
)
from app.services.tableaux_core import validate


class TestQSeries(unittest.TestCase):
    """测试 q-级数与 CSP 多项式"""

    def test_q_int(self):
        """测试 q-整数"""
        self.assertEqual(q_int(4).coeffs(), [1, 1, 1, 1])
        with self.assertRaises(DomainError):
            q_int(0)

    def test_q_binomial(self):
        """测试 q-二项式与 Pascal 递推一致"""
        self.assertEqual(q_binomial(4, 2).coeffs(), [1, 1, 2, 1, 1])
        for n in range(7):
            for k in range(n + 1):
                self.assertEqual(q_binomial(n, k), q_binomial_pascal(n, k))

    def test_exact_div_and_shift(self):
        """测试整除与平移"""
        p = q_int(6).exact_div(q_int(2))
        self.assertEqual(p.coeffs(), [1, 0, 1, 0, 1])
        self.assertEqual(QPoly.from_coeffs([1, 2]).shift(2).coeffs(), [0, 0, 1, 2])

    def test_csp_polynomial_at_one(self):
        """测试 q = 1 时得到族的大小"""
        self.assertEqual(csp_polynomial(12, 2, 2).evaluate(1), single_length_count(12, 2, 2))
        self.assertEqual(single_length_count(12, 2, 2), 15)
        with self.assertRaises(PreconditionViolated):
            csp_polynomial(9, 2, 2)

    def test_eval_at_primitive_root(self):
        """测试本原单位根处的精确求值"""
        self.assertEqual(eval_at_primitive_root(q_int(4), 1), 4)
        self.assertEqual(eval_at_primitive_root(q_int(4), 2), 0)
        self.assertEqual(eval_at_primitive_root(q_int(6), 3), 0)
        self.assertEqual(eval_at_primitive_root(q_int(6), 6), 0)
        # 4 不整除 6：[6]_q ≡ 1 + q (mod Φ_4)
        with self.assertRaises(NonConstantResidue):
            eval_at_primitive_root(q_int(6), 4)
        with self.assertRaises(NonConstantResidue):
            eval_at_primitive_root(QPoly.from_coeffs([0, 1]), 3)

    def test_csp_fixed_count(self):
        """测试不动点个数闭式"""
        self.assertEqual(csp_fixed_count(12, 2, 2, 1), 15)
        self.assertEqual(csp_fixed_count(12, 2, 2, 5), 0)
        with self.assertRaises(DomainError):
            csp_fixed_count(12, 2, 2, 3)

    def test_csp_matches_closed_form(self):
        """测试分圆求值与闭式在小网格上一致"""
        for ell in (1, 2):
            for r in (1, 2):
                for n in range((2 * r + 1) * ell, 13):
                    p = csp_polynomial(n, ell, r)
                    for d in range(1, n - ell + 1):
                        if (n - ell) % d == 0:
                            self.assertEqual(eval_at_primitive_root(p, d), csp_fixed_count(n, ell, r, d))

    def test_maj(self):
        """测试下降集与 maj"""
        Tn = validate([[1, 2, 5], [3, 4]])
        self.assertEqual(descents(Tn), [2])
        self.assertEqual(maj(Tn), 2)
        self.assertEqual(maj_ell(Tn, 2), 2)
        self.assertEqual(maj_ell(Tn, 3), 0)

    def test_maj_identity(self):
        """测试 q^{r²ℓ} 平移后的 CSP 多项式等于 maj_ℓ 生成函数"""
        for n, ell, r in [(10, 2, 2), (9, 1, 3), (11, 3, 1)]:
            family = list(enumerate_single_length(n, ell, r))
            self.assertEqual(csp_polynomial(n, ell, r).shift(r * r * ell), maj_gf(family, ell))
