"""近钩形 (n-|T|, 2, 1, ..., 1) 的三类除数验证器"""
from collections import Counter
from typing import Any, Dict, List, Tuple

from app.factory.verifier_base import Verifier
from app.models.errors import InvariantViolated
from app.models.schema import CaseResult, VerifyParams
from app.models.tableau import Partition
from app.services.divisor_predict import is_generic
from app.services.enumeration import enumerate_syt, nearhook_shapes
from app.services.near_hook import (
    NearHookTracks,
    classify_near_hook,
    in_runs_only_family,
    nearhook_generic_divisor,
    nearhook_tracks,
    quadratic_divisor,
    runs_gap_sum,
    runsonly_divisor,
)
from app.services.promotion_engine import orbit_partition, period
from app.services.tableaux_core import lower_part

NEARHOOK_MAX_N = 16
HOOK_BOX_SIZES = range(3, 7)


def _min_rotation(seq: Tuple) -> Tuple:
    if not seq:
        return seq
    return min(seq[t:] + seq[:t] for t in range(len(seq)))


def _symmetry(seq: Tuple) -> int:
    """序列在循环移位下的自同构个数"""
    return sum(1 for t in range(len(seq)) if seq[t:] + seq[:t] == seq) or 1


def mixed_subset_key(tracks: NearHookTracks, r: int, s: int) -> Tuple:
    """固定间隔数据：各游程 (第一列长度, 间隔) 与单点间隔，均取循环最小代表"""
    runs = tuple(zip((len(p) for p in tracks.run_positions), tracks.run_gaps))
    return r, s, _min_rotation(runs), _min_rotation(tracks.singleton_gaps)


def check_mixed_subsets(n: int, subset_sizes: Counter) -> List[Dict[str, Any]]:
    """每个固定间隔数据子集的大小乘以两条轨道的对称数应等于二次除数，返回不相等的子集"""
    mismatches = []
    for (r, s, runs, singleton_gaps), size in sorted(subset_sizes.items()):
        expected = quadratic_divisor(n, r, s)
        labelled = size * _symmetry(runs) * _symmetry(singleton_gaps)
        if labelled != expected:
            mismatches.append({
                "r": r, "s": s, "runs": [list(x) for x in runs], "singleton_gaps": list(singleton_gaps),
                "size": size, "labelled": labelled, "quadratic": expected,
            })
    return mismatches


class NearHookVerifier(Verifier):
    theorem_id = "nearhook"
    anchor = "近钩形：通用 (|T|-1)(n-1)，纯游程 (2r-1)n-2r，混合情形的二次除数"
    description = "按分类检查每个近钩形轨道的周期整除对应除数"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        cases = [{"key": f"n={n:03d}", "n": n} for n in params.n_values(6, NEARHOOK_MAX_N)]
        return cases + [{"key": "hook_box", "n": None}]

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        if case["n"] is None:
            return self._check_hook_box(case)
        n = case["n"]
        counts = Counter()
        subset_sizes = Counter()
        for shape in nearhook_shapes(n):
            for report in orbit_partition(enumerate_syt(shape)):
                rep = report.canonical_rep
                T = lower_part(rep)
                profile = classify_near_hook(rep)
                witness = {"tableau": rep.to_dict(), "period": report.period, "profile": profile.to_dict()}

                if is_generic(T, n):
                    counts["generic"] += 1
                    divisor = nearhook_generic_divisor(T, n)
                elif in_runs_only_family(rep):
                    counts["runs_only"] += 1
                    divisor = runsonly_divisor(profile.r, n)
                    if profile.s != 0 or runs_gap_sum(profile) != n + profile.r:
                        return self.result(case, False, {"reason": "纯游程分类不一致"}, witness=witness)
                    if not all(in_runs_only_family(Tn) for Tn in report.members):
                        return self.result(case, False, {"reason": "纯游程族在提升下不封闭"}, witness=witness)
                elif profile.r >= 1 and profile.s >= 1:
                    counts["mixed"] += 1
                    divisor = quadratic_divisor(n, profile.r, profile.s)
                    for Tn in report.members:
                        try:
                            tracks = nearhook_tracks(Tn)
                        except InvariantViolated as e:
                            witness["member"] = Tn.to_dict()
                            return self.result(case, False, {"reason": f"无法构造混合轨道: {str(e)}"},
                                               witness=witness)
                        subset_sizes[mixed_subset_key(tracks, profile.r, profile.s)] += 1
                else:
                    counts["other"] += 1
                    continue

                if divisor % report.period != 0:
                    witness["divisor"] = divisor
                    return self.result(case, False, dict(counts), witness=witness)

        detail: Dict[str, Any] = dict(counts)
        detail["mixed_subsets"] = len(subset_sizes)
        mismatches = check_mixed_subsets(n, subset_sizes)
        if mismatches:
            detail["reason"] = "固定间隔数据的子集大小与二次除数不符"
            return self.result(case, False, detail, witness=mismatches)
        return self.result(case, True, detail)

    def _check_hook_box(self, case: Dict[str, Any]) -> CaseResult:
        """形状 (2, 1, ..., 1) 的标准杨表周期均为 |T|-1"""
        periods = {}
        for size in HOOK_BOX_SIZES:
            shape = Partition((2,) + (1,) * (size - 2))
            periods[size] = sorted({period(T) for T in enumerate_syt(shape)})
        passed = all(values == [size - 1] for size, values in periods.items())
        return self.result(case, passed, {"periods": {str(k): v for k, v in periods.items()}})
