"""轨道长度的除数预测：通用情形、P_d 递推与位置计数"""
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from sympy import Poly, expand, symbols

from app.config.settings import settings
from app.models.errors import DomainError, InvalidGaps, NonExactDivision, NotGeneric
from app.models.tableau import Tableau
from app.services.promotion_engine import period
from app.services.tableaux_core import binomial, extend_first_row, to_syt
from app.services.track_system import boundary_zone, track_lengths

n_symbol = symbols("n")

__all__ = [
    "NPoly", "is_generic", "generic_symmetry", "generic_divisor", "track_lengths",
    "p_d", "p_d_poly", "brute_force_positions", "family_count",
]


class NPoly:
    """变量 n 的整系数多项式"""

    def __init__(self, poly: Poly):
        self.p = poly

    @staticmethod
    def from_expr(expr) -> "NPoly":
        return NPoly(Poly(expand(expr), n_symbol, domain="ZZ"))

    def coeffs(self) -> List[int]:
        """由低次到高次的系数"""
        return [int(c) for c in self.p.all_coeffs()][::-1]

    @property
    def degree(self) -> int:
        return self.p.degree()

    def is_monic(self) -> bool:
        return int(self.p.LC()) == 1

    def __call__(self, value: int) -> int:
        return int(self.p.eval(value))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NPoly) and self.coeffs() == other.coeffs()

    def to_dict(self) -> Dict:
        return {"var": "n", "coeffs": [str(c) for c in self.coeffs()]}

    def __repr__(self) -> str:
        return f"NPoly({self.p.as_expr()})"


def is_generic(T: Tableau, n: int) -> bool:
    """T 的数字两两相差至少 2，且 2 与 n 不同时出现

    Raises:
        NotExtendable: T[n] 不是标准杨表
    """
    extend_first_row(T, n)
    entries = sorted(T.entries)
    if any(b - a < 2 for a, b in zip(entries, entries[1:])):
        return False
    return not (2 in T.entries and n in T.entries)


def generic_symmetry(T: Tableau, n: int) -> int:
    """模 n-1 间隔序列的最大循环对称阶 d*"""
    entries = sorted(T.entries)
    m = len(entries)
    gaps = [b - a for a, b in zip(entries, entries[1:])] + [entries[0] - entries[-1] + (n - 1)]
    for shift in range(1, m + 1):
        if m % shift == 0 and gaps[shift:] + gaps[:shift] == gaps:
            return m // shift
    return 1


def generic_divisor(T: Tableau, n: int, refine: bool = None) -> int:
    """通用情形下 pr(T[n]) 的除数 lcm(|T|, pr(T)) / |T| · (n-1)

    Args:
        T: 杨表
        n: 总格数
        refine: 是否使用间隔序列的循环对称细化，None 时读取配置

    Raises:
        NotGeneric: 不是通用情形
    """
    if not is_generic(T, n):
        raise NotGeneric(f"T={T} 在 n={n} 时不是通用情形")
    refine = settings.symmetry_refinement if refine is None else refine
    size = T.size
    pr = period(to_syt(T))
    sym = generic_symmetry(T, n) if refine else 1
    value = Fraction(math.lcm(size // sym, pr), size) * (n - 1)
    if value.denominator != 1:
        raise NonExactDivision(f"通用除数不是整数: {value}")
    return int(value)


def _p_d(ns: Sequence, ls: Sequence[int], rs: Sequence[int]):
    """P_d 递推，ns 可以是整数或 sympy 表达式"""
    d = len(ns)
    if d == 0:
        return 1
    if d == 1:
        return ns[0]
    total = math.prod(ns)
    for i in range(d):
        sub = _p_d(
            [ns[k] - 2 * rs[k] * ls[i] for k in range(i)],
            [ls[k] - ls[i] for k in range(i)],
            [rs[k] for k in range(i)],
        )
        for j in range(i + 1, d):
            middle = math.prod(ns[k] - 2 * rs[k] * ls[k] for k in range(i + 1, j))
            tail = math.prod(ns[k] for k in range(j + 1, d))
            total -= 4 * rs[i] * rs[j] * ls[j] ** 2 * sub * middle * tail
    return total


@lru_cache(maxsize=None)
def _p_d_cached(ns: Tuple[int, ...], ls: Tuple[int, ...], rs: Tuple[int, ...]) -> int:
    return _p_d(ns, ls, rs)


def p_d(ns: Sequence[int], ls: Sequence[int], rs: Sequence[int]) -> int:
    """合法位置序列的个数 P_d(n⃗, ℓ⃗, r⃗)

    Raises:
        DomainError: ℓ⃗ 为空或长度不一致
    """
    if not ls or not (len(ns) == len(ls) == len(rs)):
        raise DomainError(f"参数长度不一致或为空: n⃗={ns}, ℓ⃗={ls}, r⃗={rs}")
    return _p_d_cached(tuple(ns), tuple(ls), tuple(rs))


def p_d_poly(ls: Sequence[int], rs: Sequence[int]) -> NPoly:
    """以 n_i = track_lengths(n, ℓ⃗, r⃗) 代入后的 n 的多项式"""
    if not ls or len(ls) != len(rs):
        raise DomainError(f"参数长度不一致或为空: ℓ⃗={ls}, r⃗={rs}")
    ns = track_lengths(n_symbol, ls, rs)
    return NPoly.from_expr(_p_d(list(ns), list(ls), list(rs)))


def _gap_ends(track_len: int, ell: int, p: int, gaps: Sequence[int]) -> List[int]:
    ends, s = [], p
    for g in gaps:
        ends.append((s + ell - 2) % track_len + 1)
        s = (s + g - 1) % track_len + 1
    return ends


def brute_force_positions(ns: Sequence[int], ls: Sequence[int], rs: Sequence[int],
                          gaps: Sequence[Sequence[int]]) -> int:
    """枚举所有位置序列，统计满足瓶颈条件的个数

    Raises:
        InvalidGaps: 间隔序列与 n⃗, ℓ⃗, r⃗ 不符
    """
    d = len(ls)
    if not (len(ns) == len(rs) == len(gaps) == d):
        raise InvalidGaps("间隔序列个数与轨道数不一致")
    for i in range(d):
        if len(gaps[i]) != rs[i] or sum(gaps[i]) != ns[i] or any(g < 2 * ls[i] for g in gaps[i]):
            raise InvalidGaps(f"第 {i + 1} 条轨道的间隔序列 {list(gaps[i])} 不合法")

    # near[i][m][p]：第 i 条轨道位置为 p 时是否有游程结束于边界区域 B(n_i, m)
    # waiting[i][m][p]：是否有游程结束于 B(n_i, m) 的前一格
    near, waiting = [], []
    for i in range(d):
        near_m, waiting_m = {}, {}
        for m in set(ls):
            ends = [_gap_ends(ns[i], ls[i], p, gaps[i]) for p in range(1, ns[i] + 1)]
            near_m[m] = [any(boundary_zone(ns[i], m, e) for e in es) for es in ends]
            waiting_m[m] = [any(boundary_zone(ns[i], m, e % ns[i] + 1) for e in es) for es in ends]
        near.append(near_m)
        waiting.append(waiting_m)

    pairs = [(i, j) for i in range(d) for j in range(d) if ls[i] > ls[j]]
    count = 0
    for ps in product(*(range(nt) for nt in ns)):
        if all(not (near[i][ls[j]][ps[i]] and waiting[j][ls[j]][ps[j]]) for i, j in pairs):
            count += 1
    return count


def family_count(n: int, ls: Sequence[int], rs: Sequence[int]) -> int:
    """|T(n, ℓ⃗, r⃗)| = P_d · ∏ (1/r_i) C(n_i - 2r_iℓ_i + r_i - 1, r_i - 1)"""
    ns = track_lengths(n, ls, rs)
    value = Fraction(p_d(ns, ls, rs))
    for nt, ell, r in zip(ns, ls, rs):
        value *= Fraction(binomial(nt - 2 * r * ell + r - 1, r - 1), r)
    if value.denominator != 1:
        raise NonExactDivision(f"族的大小不是整数: {value}")
    return int(value)
