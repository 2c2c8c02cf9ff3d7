"""提升操作、轨道与周期计算"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from app.models.errors import NotClosed
from app.models.tableau import Tableau
from app.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class OrbitReport:
    """一个提升轨道"""
    period: int
    members: Tuple[Tableau, ...] = field(repr=False)
    canonical_rep: Tableau

    def to_dict(self, with_members: bool = False) -> Dict:
        data = {"period": self.period, "canonical_rep": self.canonical_rep.to_dict()}
        if with_members:
            data["members"] = [m.to_dict() for m in self.members]
        return data


def _slide(T: Tableau) -> Tuple[List[List[Optional[int]]], Tuple[int, int]]:
    """移除左上角后执行 jeu-de-taquin 滑动，返回网格和最终空格位置"""
    grid: List[List[Optional[int]]] = [list(row) for row in T.rows]
    i, j = 0, 0
    grid[0][0] = None
    while True:
        right = grid[i][j + 1] if j + 1 < len(grid[i]) else None
        below = grid[i + 1][j] if i + 1 < len(grid) and j < len(grid[i + 1]) else None
        if right is None and below is None:
            return grid, (i, j)
        if below is None or (right is not None and right < below):
            grid[i][j], grid[i][j + 1] = right, None
            j += 1
        else:
            grid[i][j], grid[i + 1][j] = below, None
            i += 1


def promote(T: Tableau) -> Tableau:
    """执行一次提升

    移除最小数字，滑动空格，将 i_k 重新标记为 i_{k-1}，最后把最大数字放入空格。
    """
    grid, (i, j) = _slide(T)
    ordered = sorted(T.entries)
    relabel = {ordered[k]: ordered[k - 1] for k in range(1, len(ordered))}
    rows = []
    for r, row in enumerate(grid):
        new_row = []
        for c, x in enumerate(row):
            new_row.append(ordered[-1] if (r, c) == (i, j) else relabel[x])
        rows.append(tuple(new_row))
    return Tableau(tuple(rows))


def promote_power(T: Tableau, k: int) -> Tableau:
    for _ in range(k):
        T = promote(T)
    return T


def promoted_bottom_entry(Tn: Tableau) -> Optional[int]:
    """两行杨表一次提升中被移到首行的第二行数字（提升前的值），没有则为 None"""
    if len(Tn.rows) != 2:
        return None
    grid, _ = _slide(Tn)
    for x in grid[0]:
        if x is not None and x in Tn.rows[1]:
            return x
    return None


def predicted_promoted_entry(Tn: Tableau) -> Optional[int]:
    """按“第 k 个下行数字等于 2k”的判据预测被提升的数字"""
    for k, x in enumerate(Tn.rows[1], start=1):
        if x == 2 * k:
            return x
    return None


def period(T: Tableau) -> int:
    """最小的 p ≥ 1 使得 P^p(T) = T"""
    current = promote(T)
    steps = 1
    while current != T:
        current = promote(current)
        steps += 1
    return steps


def orbit(T: Tableau) -> OrbitReport:
    """物化 T 所在的轨道"""
    members = [T]
    current = promote(T)
    while current != T:
        members.append(current)
        current = promote(current)
    return OrbitReport(
        period=len(members),
        members=tuple(members),
        canonical_rep=min(members, key=lambda m: m.sort_key()),
    )


def orbit_partition(S: Iterable[Tableau]) -> List[OrbitReport]:
    """把一个提升封闭的集合划分为轨道

    Args:
        S: 杨表集合

    Returns:
        List[OrbitReport]: 按 canonical_rep 排序的轨道列表

    Raises:
        NotClosed: 某个 P(T) 不在 S 中
    """
    universe = set(S)
    for T in universe:
        image = promote(T)
        if image not in universe:
            raise NotClosed(f"集合在提升下不封闭: P({T}) = {image} 不在集合中", witness=T)

    visited = set()
    reports = []
    for T in sorted(universe, key=lambda t: t.sort_key()):
        if T in visited:
            continue
        report = orbit(T)
        visited.update(report.members)
        reports.append(report)
    reports.sort(key=lambda rep: rep.canonical_rep.sort_key())
    logger.debug(f"共 {len(universe)} 个杨表，划分为 {len(reports)} 条轨道")
    return reports


def orbit_lengths(reports: Iterable[OrbitReport]) -> Dict[int, int]:
    """轨道长度 -> 出现次数"""
    spectrum: Dict[int, int] = {}
    for rep in reports:
        spectrum[rep.period] = spectrum.get(rep.period, 0) + 1
    return dict(sorted(spectrum.items()))


def spectrum_lcm(reports: Iterable[OrbitReport]) -> int:
    """所有轨道长度的最小公倍数"""
    return math.lcm(1, *(rep.period for rep in reports))


def count_fixed(S: Iterable[Tableau], k: int) -> int:
    """|{T ∈ S : P^k(T) = T}|，即长度整除 k 的轨道大小之和"""
    return sum(rep.period for rep in orbit_partition(S) if k % rep.period == 0)


def count_fixed_in(reports: Iterable[OrbitReport], k: int) -> int:
    """在已划分好的轨道上计算不动点个数"""
    return sum(rep.period for rep in reports if k % rep.period == 0)
