"""通用情形的周期除数与计数验证器"""
from typing import Any, Dict, List

from app.factory.verifier_base import Verifier
from app.models.schema import CaseResult, VerifyParams
from app.models.tableau import Partition
from app.services.divisor_predict import generic_divisor, generic_symmetry, is_generic
from app.services.enumeration import census_ratios, enumerate_syt, generic_census, generic_census_filter
from app.services.promotion_engine import period
from app.services.tableaux_core import lower_part, make_partition

SMALL_SHAPES = [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]
GENERIC_MAX_N = 14
RATIO_NS = [50, 100, 200]


def shape_cases(params: VerifyParams) -> List[Dict[str, Any]]:
    shapes = [tuple(params.shape)] if params.shape else SMALL_SHAPES
    cases = []
    for parts in shapes:
        low = sum(parts) + parts[0] + 1
        for n in params.n_values(low, GENERIC_MAX_N):
            label = ",".join(map(str, parts))
            cases.append({"key": f"shape={label},n={n:03d}", "shape": list(parts), "n": n})
    return cases


class GenericVerifier(Verifier):
    theorem_id = "generic"
    anchor = "通用情形：pr(T[n]) 整除 lcm(|T|, pr(T)) / |T| · (n-1)"
    description = "穷举 λ[n] 中的通用杨表，检查周期整除未细化与细化后的除数"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        return shape_cases(params)

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        shape, n = make_partition(case["shape"]), case["n"]
        extended = Partition((n - shape.size,) + shape.parts)
        checked = exact = 0
        symmetric = 0
        for Tn in enumerate_syt(extended):
            T = lower_part(Tn)
            if not is_generic(T, n):
                continue
            checked += 1
            pr = period(Tn)
            bound = generic_divisor(T, n, refine=False)
            refined = generic_divisor(T, n, refine=True)
            if bound % pr != 0 or refined % pr != 0:
                return self.result(
                    case, False, {"period": pr, "divisor": bound, "refined": refined}, witness=Tn.to_dict()
                )
            exact += pr == refined
            symmetric += generic_symmetry(T, n) > 1
        return self.result(
            case, True, {"generic": checked, "equals_refined": exact, "with_symmetry": symmetric}
        )


class CensusVerifier(Verifier):
    theorem_id = "census"
    anchor = "通用杨表个数的钩长闭式，及其占比随 n 单调趋于 1"
    description = "闭式计数与穷举筛选一致；n ∈ {50, 100, 200} 时比例不减且不超过 1"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        shapes = [tuple(params.shape)] if params.shape else SMALL_SHAPES
        ratio_cases = [
            {"key": f"ratio:shape={','.join(map(str, parts))}", "shape": list(parts), "n": None}
            for parts in shapes
        ]
        return shape_cases(params) + ratio_cases

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        shape = make_partition(case["shape"])
        if case["n"] is None:
            ratios = census_ratios(shape, RATIO_NS)
            passed = all(a <= b for a, b in zip(ratios, ratios[1:])) and all(0 < x <= 1 for x in ratios)
            return self.result(case, passed, {"ns": RATIO_NS, "ratios": [str(x) for x in ratios]})

        generic, total, _ = generic_census(shape, case["n"])
        filtered = generic_census_filter(shape, case["n"])
        return self.result(case, generic == filtered, {"closed": generic, "filtered": filtered, "total": total})
