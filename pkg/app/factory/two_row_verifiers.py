"""两行杨表：族的计数、轨道双射、同步旋转与 P_d 的验证器"""
from collections import Counter
from itertools import islice, product
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from app.factory.single_length_verifiers import SingleLengthVerifier, single_length_grid
from app.factory.verifier_base import Verifier
from app.models.errors import TrackCapacityError
from app.models.schema import CaseResult, VerifyParams
from app.models.tableau import Tableau
from app.services.divisor_predict import (
    NPoly,
    brute_force_positions,
    family_count,
    n_symbol,
    p_d,
    p_d_poly,
)
from app.services.enumeration import (
    enumerate_family,
    enumerate_family_by_tracks,
    enumerate_two_row,
    enumerate_two_row_all,
    family_capacity,
    family_in_scope,
)
from app.services.promotion_engine import orbit_partition, promote
from app.services.qseries import single_length_count
from app.services.tableaux_core import validate
from app.services.track_system import rotate_tracks, tableau_to_tracks, track_lengths, tracks_to_tableau
from app.services.two_row_runs import classify

# 长度为 3 和 1 的游程各两个，n = 20
WORKED_EXAMPLE = (
    (1, 3, 4, 5, 6, 7, 8, 11, 14, 15, 16, 19),
    (2, 9, 10, 12, 13, 17, 18, 20),
)

TWO_ROW_MAX_N = 16
P_D_LENGTHS = [(2, 1), (3, 1), (3, 2)]
P_D_POINTS = 5  # 每个族从容量下限起检查的 n 的个数


def sweep_cases(params: VerifyParams, low: int = 4) -> List[Dict[str, Any]]:
    return [{"key": f"n={n:03d}", "n": n} for n in params.n_values(low, TWO_ROW_MAX_N)]


def two_row_orbits(n: int):
    """n 格全部两行标准杨表的轨道，按形状分别计算"""
    reports = []
    for m in range(1, n // 2 + 1):
        reports.extend(orbit_partition(enumerate_two_row(n, m)))
    return reports


def in_scope_tracks(Tn: Tableau):
    """轨道容量不足时返回 None"""
    try:
        return tableau_to_tracks(Tn)
    except TrackCapacityError:
        return None


class CardinalityVerifier(Verifier):
    theorem_id = "cardinality"
    anchor = "|T(n,ℓ,r)| 的闭式与两行族 |T(n,ℓ⃗,r⃗)| 的计数公式"
    description = "单一长度族按闭式计数；两行族按分类分组后与 P_d 计数公式比较"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        single = [dict(case, kind="single", key="single:" + case["key"]) for case in single_length_grid(params)]
        family = [dict(case, kind="family", key="family:" + case["key"]) for case in sweep_cases(params)]
        return single + family

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        if case["kind"] == "single":
            count = len(SingleLengthVerifier.family(case))
            closed = single_length_count(case["n"], case["ell"], case["r"])
            return self.result(case, count == closed, {"enumerated": count, "closed": closed})

        n = case["n"]
        groups = Counter(classify(Tn)[:2] for Tn in enumerate_two_row_all(n))
        checked = []
        for (ls, rs), count in sorted(groups.items()):
            if not family_in_scope(n, ls, rs):
                continue
            expected = family_count(n, ls, rs)
            checked.append({"lengths": list(ls), "mults": list(rs), "enumerated": count, "formula": expected})
            if count != expected:
                return self.result(case, False, {"families": checked}, witness=checked[-1])
        return self.result(case, True, {"families": checked})


class BijectionVerifier(Verifier):
    theorem_id = "bijection"
    anchor = "两行杨表与轨道系统之间的双射"
    description = "tracks_to_tableau ∘ tableau_to_tracks 为恒等，结构化生成与分类筛选一致"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        return [{"key": "example", "n": len(WORKED_EXAMPLE[0]) + len(WORKED_EXAMPLE[1])}] + sweep_cases(params)

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        if case["key"] == "example":
            Tn = validate(WORKED_EXAMPLE)
            ts = tableau_to_tracks(Tn)
            detail = {"track_lengths": list(ts.track_lengths), "gaps": [list(g) for g in ts.gaps]}
            passed = ts.track_lengths[0] == 13 and tracks_to_tableau(ts) == Tn
            return self.result(case, passed, detail)

        n = case["n"]
        checked = 0
        classes = set()
        for Tn in enumerate_two_row_all(n):
            ts = in_scope_tracks(Tn)
            if ts is None:
                continue
            checked += 1
            classes.add((ts.lengths, ts.mults))
            if tracks_to_tableau(ts) != Tn:
                return self.result(case, False, {"checked": checked}, witness=Tn.to_dict())

        for ls, rs in sorted(classes):
            filtered = sorted(enumerate_family(n, ls, rs), key=lambda T: T.sort_key())
            if enumerate_family_by_tracks(n, ls, rs) != filtered:
                return self.result(
                    case, False, {"reason": "结构化生成与筛选结果不一致"},
                    witness={"lengths": list(ls), "mults": list(rs)},
                )
        return self.result(case, True, {"checked": checked, "families": len(classes)})


class CommutationVerifier(Verifier):
    theorem_id = "commutation"
    anchor = "提升对应轨道的同步旋转，间隔序列沿轨道不变"
    description = "tableau_to_tracks(promote(T)) = rotate_tracks(tableau_to_tracks(T))"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        return sweep_cases(params)

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        checked = 0
        for report in two_row_orbits(case["n"]):
            tracks = [in_scope_tracks(Tn) for Tn in report.members]
            if all(ts is None for ts in tracks):
                continue
            if any(ts is None for ts in tracks):
                return self.result(
                    case, False, {"reason": "轨道内的分类不一致"}, witness=report.canonical_rep.to_dict()
                )
            if len({ts.gaps for ts in tracks}) != 1:
                return self.result(
                    case, False, {"reason": "间隔序列沿轨道变化"}, witness=report.canonical_rep.to_dict()
                )
            for Tn, ts in zip(report.members, tracks):
                checked += 1
                if tableau_to_tracks(promote(Tn)) != rotate_tracks(ts):
                    return self.result(case, False, {"checked": checked}, witness=Tn.to_dict())
        return self.result(case, True, {"checked": checked})


def gap_choices(track_len: int, ell: int, r: int) -> Iterator[Tuple[int, ...]]:
    """n_i 分成 r 个至少为 2ℓ 的部分的全部有序方式"""
    if r == 1:
        if track_len >= 2 * ell:
            yield (track_len,)
        return
    for first in range(2 * ell, track_len - 2 * ell * (r - 1) + 1):
        for rest in gap_choices(track_len - first, ell, r - 1):
            yield (first,) + rest


def distinct_gap_lists(ns: Sequence[int], ls: Sequence[int], rs: Sequence[int], limit: int = 3):
    per_track = [list(gap_choices(nt, ell, r)) for nt, ell, r in zip(ns, ls, rs)]
    return list(islice(product(*per_track), limit))


class PdVerifier(Verifier):
    theorem_id = "p_d"
    anchor = "轨道长度整除合法位置序列个数 P_d(n⃗, ℓ⃗, r⃗)"
    description = "P_d 与暴力计数一致且与间隔无关，轨道长度整除 P_d，P_d 多项式与 P_2 展开一致"

    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        length_lists = [tuple(params.ell)] if params.ell else P_D_LENGTHS
        cases = []
        for ls in length_lists:
            mult_lists = [tuple(params.r)] if params.r else list(product((1, 2), repeat=len(ls)))
            for rs in mult_lists:
                capacity = family_capacity(ls, rs)
                for n in params.n_values(capacity, capacity + P_D_POINTS - 1):
                    key = f"ell={','.join(map(str, ls))},r={','.join(map(str, rs))},n={n:03d}"
                    cases.append({"key": key, "n": n, "ls": list(ls), "rs": list(rs)})
        return cases

    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        n, ls, rs = case["n"], case["ls"], case["rs"]
        if not family_in_scope(n, ls, rs):
            raise TrackCapacityError(f"n={n} 时 ℓ⃗={ls}, r⃗={rs} 的轨道容量不足")
        ns = track_lengths(n, ls, rs)
        value = p_d(ns, ls, rs)
        detail: Dict[str, Any] = {"track_lengths": list(ns), "p_d": value}

        brute = {}
        for gaps in distinct_gap_lists(ns, ls, rs):
            brute[str([list(g) for g in gaps])] = brute_force_positions(ns, ls, rs, gaps)
        detail["brute_force"] = brute
        if any(count != value for count in brute.values()):
            return self.result(case, False, detail, witness=brute)

        polynomial = p_d_poly(ls, rs)
        detail["polynomial"] = polynomial.to_dict()
        if polynomial(n) != value:
            return self.result(case, False, detail, witness={"polynomial_value": polynomial(n)})
        if len(ls) == 2:
            n1, n2 = track_lengths(n_symbol, ls, rs)
            printed = NPoly.from_expr(n1 * n2 - 4 * rs[0] * rs[1] * min(ls) ** 2)
            if printed != polynomial:
                return self.result(case, False, detail, witness={"printed": printed.to_dict()})

        if n <= TWO_ROW_MAX_N:
            periods = sorted({report.period for report in orbit_partition(enumerate_family(n, ls, rs))})
            detail["orbit_lengths"] = periods
            bad = [p for p in periods if value % p != 0]
            if bad:
                return self.result(case, False, detail, witness={"orbit_lengths": bad})
        return self.result(case, True, detail)
