"""q-类比、q-二项式、CSP 多项式及其在单位根处的精确求值"""
import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List

from sympy import Poly, cyclotomic_poly, symbols

from app.config.settings import settings
from app.models.errors import DomainError, NonConstantResidue, NonExactDivision, PreconditionViolated
from app.models.tableau import Tableau
from app.services.tableaux_core import binomial

q = symbols("q")


class QPoly:
    """q 的整系数多项式，封装 sympy.Poly"""

    def __init__(self, poly: Poly):
        self.p = poly

    @staticmethod
    def from_coeffs(coeffs: Iterable[int]) -> "QPoly":
        """由低次到高次的系数构造"""
        coeffs = [int(c) for c in coeffs]
        if not coeffs:
            coeffs = [0]
        return QPoly(Poly.from_list(coeffs[::-1], gens=q, domain="ZZ"))

    @staticmethod
    def monomial(k: int) -> "QPoly":
        return QPoly.from_coeffs([0] * k + [1])

    def coeffs(self) -> List[int]:
        """由低次到高次的系数，已去掉高次零项"""
        if self.p.is_zero:
            return []
        return [int(c) for c in self.p.all_coeffs()][::-1]

    @property
    def degree(self) -> int:
        return self.p.degree() if not self.p.is_zero else -1

    def __add__(self, other: "QPoly") -> "QPoly":
        return QPoly(self.p + other.p)

    def __mul__(self, other: "QPoly") -> "QPoly":
        return QPoly(self.p * other.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QPoly) and self.coeffs() == other.coeffs()

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs()))

    def exact_div(self, other: "QPoly") -> "QPoly":
        """整除，余式非零时报错"""
        quo, rem = divmod(self.p, other.p)
        if not rem.is_zero:
            raise NonExactDivision(f"{self.p.as_expr()} 不能被 {other.p.as_expr()} 整除，余式为 {rem.as_expr()}")
        return QPoly(quo)

    def shift(self, k: int) -> "QPoly":
        """乘以 q^k"""
        return self * QPoly.monomial(k)

    def evaluate(self, value):
        return sum(c * value ** k for k, c in enumerate(self.coeffs()))

    def to_dict(self) -> Dict[str, List[str]]:
        return {"coeffs": [str(c) for c in self.coeffs()]}

    def __repr__(self) -> str:
        return f"QPoly({self.coeffs()})"


def q_int(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^{n-1}"""
    if n < 1:
        raise DomainError(f"[n]_q 需要 n ≥ 1，得到 n={n}")
    return QPoly.from_coeffs([1] * n)


@lru_cache(maxsize=None)
def _q_factorial(n: int) -> QPoly:
    result = QPoly.from_coeffs([1])
    for k in range(1, n + 1):
        result = result * q_int(k)
    return result


def q_binomial(n: int, k: int) -> QPoly:
    """高斯二项式系数，按阶乘的商构造并验证整除"""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q-二项式需要 0 ≤ k ≤ n，得到 n={n}, k={k}")
    return _q_factorial(n).exact_div(_q_factorial(k) * _q_factorial(n - k))


@lru_cache(maxsize=None)
def q_binomial_pascal(n: int, k: int) -> QPoly:
    """按 q-Pascal 递推 [n,k] = [n-1,k-1] + q^k [n-1,k] 构造，用于交叉校验"""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q-二项式需要 0 ≤ k ≤ n，得到 n={n}, k={k}")
    if k == 0 or k == n:
        return QPoly.from_coeffs([1])
    return q_binomial_pascal(n - 1, k - 1) + q_binomial_pascal(n - 1, k).shift(k)


def csp_polynomial(n: int, ell: int, r: int) -> QPoly:
    """单一长度族的 CSP 多项式 [n-ℓ]_q / [r]_q · qbin(n-ℓ-2rℓ+r-1, r-1)

    Raises:
        PreconditionViolated: n < (2r+1)ℓ
        NonExactDivision: 除以 [r]_q 不整除
    """
    if r < 1 or ell < 1:
        raise PreconditionViolated(f"需要 ℓ ≥ 1 且 r ≥ 1，得到 ℓ={ell}, r={r}")
    if n < (2 * r + 1) * ell:
        raise PreconditionViolated(f"需要 n ≥ (2r+1)ℓ = {(2 * r + 1) * ell}，得到 n={n}")
    numerator = q_int(n - ell) * q_binomial(n - ell - 2 * r * ell + r - 1, r - 1)
    return numerator.exact_div(q_int(r))


def csp_fixed_count(n: int, ell: int, r: int, d: int) -> int:
    """P^{(n-ℓ)/d} 的不动点个数的闭式

    Raises:
        DomainError: d 不整除 n-ℓ
    """
    if d < 1 or (n - ell) % d != 0:
        raise DomainError(f"d={d} 不整除 n-ℓ={n - ell}")
    if r % d != 0:
        return 0
    value = Fraction(n - ell, r) * binomial((n - ell - 2 * r * ell + r) // d - 1, r // d - 1)
    if value.denominator != 1:
        raise NonExactDivision(f"不动点个数不是整数: {value}")
    return int(value)


def single_length_count(n: int, ell: int, r: int) -> int:
    """|T(n,ℓ,r)| = (n-ℓ)/r · C(n-ℓ-2rℓ+r-1, r-1)"""
    return csp_fixed_count(n, ell, r, 1)


def eval_at_primitive_root(p: QPoly, d: int) -> int:
    """在 d 次本原单位根处精确求值

    先对第 d 个分圆多项式取余，余式必须是常数；再用浮点求值交叉校验。

    Raises:
        NonConstantResidue: 余式不是常数
    """
    if d < 1:
        raise DomainError(f"d 必须为正整数，得到 d={d}")
    if p.p.is_zero:
        return 0
    cyclotomic = Poly(cyclotomic_poly(d, q), q, domain="ZZ")
    remainder = p.p.rem(cyclotomic)
    if remainder.degree() > 0:
        raise NonConstantResidue(f"模 Φ_{d} 的余式不是常数: {remainder.as_expr()}")
    value = int(remainder.as_expr())

    zeta = cmath.exp(2j * math.pi / d)
    approx = p.evaluate(zeta)
    if abs(approx - value) > settings.float_tolerance * max(1.0, abs(value)):
        raise NonConstantResidue(f"精确值 {value} 与浮点值 {approx} 不一致")
    return value


def descents(Tn: Tableau) -> List[int]:
    """所有 k 使得 k+1 位于严格更低的行"""
    rows = Tn.positions
    return [k for k in sorted(Tn.entries) if k + 1 in rows and rows[k + 1][0] > rows[k][0]]


def maj(Tn: Tableau) -> int:
    """主指标"""
    return sum(descents(Tn))


def maj_ell(Tn: Tableau, ell: int) -> int:
    """ℓ-主指标：只累加 k ≥ ℓ 的下降"""
    return sum(k for k in descents(Tn) if k >= ell)


def maj_gf(family: Iterable[Tableau], ell: int) -> QPoly:
    """∑ q^{maj_ℓ(T)}"""
    counts: Dict[int, int] = {}
    for Tn in family:
        m = maj_ell(Tn, ell)
        counts[m] = counts.get(m, 0) + 1
    if not counts:
        return QPoly.from_coeffs([0])
    coeffs = [0] * (max(counts) + 1)
    for m, c in counts.items():
        coeffs[m] = c
    return QPoly.from_coeffs(coeffs)
