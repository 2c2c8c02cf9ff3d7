"""单一长度族 T(n, ℓ, r) 上的验证器"""
from itertools import product
from typing import Any, Dict, List

from app.factory.verifier_base import Verifier
from app.models.schema import CaseResult, VerifyParams
from app.services.enumeration import enumerate_single_length
from app.services.promotion_engine import count_fixed_in, orbit_partition
from app.services.qseries import (
    csp_fixed_count,
    csp_polynomial,
    eval_at_primitive_root,
    maj_gf,
)
from app.services.two_row_runs import in_single_length_family

MAX_N = 28


def single_length_grid(params: VerifyParams) -> List[Dict[str, Any]]:
    """(ℓ, r) ∈ ell × r，n 默认从 (2r+1)ℓ 到 28"""
    cases = []
    for ell, r in product(params.ell or [1, 2, 3], params.r or [1, 2, 3]):
        for n in params.n_values((2 * r + 1) * ell, MAX_N):
            cases.append({"key": f"n={n:03d},ell={ell},r={r}", "n": n, "ell": ell, "r": r})
    return cases


def _divisors(m: int) -> List[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


class SingleLengthVerifier(Verifier):
    """单一长度族验证器的公共部分"""

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        return single_length_grid(params)

    @staticmethod
    def family(case: Dict[str, Any]):
        return list(enumerate_single_length(case["n"], case["ell"], case["r"]))


class CSPVerifier(SingleLengthVerifier):
    theorem_id = "csp"
    anchor = "单一长度族的循环筛法：不动点个数 = CSP 多项式在本原单位根处的值"
    description = "对每个 d | n-ℓ，比较穷举不动点数、分圆精确求值与闭式"

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        n, ell, r = case["n"], case["ell"], case["r"]
        polynomial = csp_polynomial(n, ell, r)
        reports = orbit_partition(self.family(case))
        rows = []
        for d in _divisors(n - ell):
            brute = count_fixed_in(reports, (n - ell) // d)
            exact = eval_at_primitive_root(polynomial, d)
            closed = csp_fixed_count(n, ell, r, d)
            rows.append({"d": d, "brute": brute, "cyclotomic": exact, "closed": closed})
            if not brute == exact == closed:
                return self.result(case, False, {"values": rows}, witness=rows[-1])
        return self.result(case, True, {"values": rows})


class OrbitDividesVerifier(SingleLengthVerifier):
    theorem_id = "orbit_divides"
    anchor = "单一长度族中每个轨道长度整除 n-ℓ"
    description = "轨道长度整除 n-ℓ，且结构化生成的杨表都属于该族"

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        n, ell, r = case["n"], case["ell"], case["r"]
        family = self.family(case)
        for Tn in family:
            if not in_single_length_family(Tn, ell, r):
                return self.result(case, False, {"reason": "生成的杨表不属于该族"}, witness=Tn.to_dict())
        lengths = set()
        for report in orbit_partition(family):
            lengths.add(report.period)
            if (n - ell) % report.period != 0:
                return self.result(
                    case, False, {"period": report.period}, witness=report.canonical_rep.to_dict()
                )
        return self.result(case, True, {"orbit_lengths": sorted(lengths), "count": len(family)})


class MajVerifier(SingleLengthVerifier):
    theorem_id = "maj"
    anchor = "q^{r²ℓ} · CSP 多项式 = Σ q^{maj_ℓ(T)}"
    description = "逐系数比较平移后的 CSP 多项式与 maj_ℓ 生成函数"

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        n, ell, r = case["n"], case["ell"], case["r"]
        shifted = csp_polynomial(n, ell, r).shift(r * r * ell)
        generating = maj_gf(self.family(case), ell)
        detail = {"degree": shifted.degree}
        if shifted != generating:
            return self.result(
                case, False, detail, witness={"csp": shifted.coeffs(), "maj": generating.coeffs()}
            )
        return self.result(case, True, detail)

