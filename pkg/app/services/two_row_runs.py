"""两行杨表的弧图配对、彩虹移除与游程分类"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.models.errors import InvariantViolated, NotTwoRow, PreconditionViolated
from app.models.tableau import Tableau
from app.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ArcDiagram:
    """数轴 1..n 上的点/空位标记及不交叉的点-空位配对

    line 是重排后的数轴：j+1..n 之后接 1..j。
    """
    n: int
    dots: frozenset
    pairs: Tuple[Tuple[int, int], ...]  # (点, 空位)
    moved_prefix_j: int
    pivot_k: Optional[int]
    line: Tuple[int, ...]

    @property
    def partner(self) -> Dict[int, int]:
        mapping = {}
        for dot, space in self.pairs:
            mapping[dot] = space
            mapping[space] = dot
        return mapping

    def to_dict(self) -> Dict:
        return {
            "dots": sorted(self.dots),
            "pairs": [list(p) for p in self.pairs],
            "j": self.moved_prefix_j,
            "k": self.pivot_k,
        }


@dataclass(frozen=True)
class Run:
    """一个游程

    entries 为重排数轴顺序下的点，arcs 从外到内排列，每条弧按重排数轴上的 (左端, 右端) 存储。
    """
    length: int
    entries: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int], ...]

    def innermost_numbers(self, m: int) -> frozenset:
        """最内层 m 条弧的全部端点"""
        return frozenset(x for arc in self.arcs[self.length - m:] for x in arc)

    def to_dict(self) -> Dict:
        return {"length": self.length, "entries": list(self.entries)}


@dataclass(frozen=True)
class RunDecomposition:
    """游程分解：长度严格递减，runs[i] 为长度 lengths[i] 的全部游程"""
    lengths: Tuple[int, ...]
    mults: Tuple[int, ...]
    runs: Tuple[Tuple[Run, ...], ...]

    @property
    def assignment(self) -> Dict[int, Tuple[int, int]]:
        """数字 -> (长度类编号, 类内游程编号)"""
        return {
            x: (i, t)
            for i, group in enumerate(self.runs)
            for t, run in enumerate(group)
            for x in run.entries
        }

    @property
    def all_runs(self) -> List[Run]:
        return [run for group in self.runs for run in group]

    def to_dict(self) -> Dict:
        return {
            "lengths": list(self.lengths),
            "mults": list(self.mults),
            "runs": [run.to_dict() for run in self.all_runs],
        }


def _require_two_row(Tn: Tableau) -> None:
    if len(Tn.rows) != 2 or not Tn.is_standard:
        raise NotTwoRow(f"需要两行的标准杨表，得到形状 {Tn.shape}")


def build_arc_diagram(Tn: Tableau) -> ArcDiagram:
    """按四步过程构造弧图

    Raises:
        NotTwoRow: 不是两行标准杨表
    """
    _require_two_row(Tn)
    n = Tn.size
    dots = frozenset(Tn.rows[1])

    # 第一步：括号匹配
    stack: List[int] = []
    pairs: Dict[int, int] = {}
    for x in range(1, n + 1):
        if x in dots:
            stack.append(x)
        elif stack:
            pairs[stack.pop()] = x
    unpaired = stack
    if not unpaired:
        return ArcDiagram(n, dots, tuple(sorted(pairs.items())), 0, None, tuple(range(1, n + 1)))

    u = len(unpaired)
    k = unpaired[0]
    # 第二步：j 取 k 之前最后一个满足 (空位数 - 点数) ≤ u 的前缀
    balance, j = 0, 0
    for x in range(1, k):
        balance += -1 if x in dots else 1
        if balance <= u:
            j = x

    pairs = {dot: space for dot, space in pairs.items() if dot > j}

    # 第三步：在 1..j 内反向配对，每个点与其前方最近的空位相连
    spaces: List[int] = []
    for x in range(1, j + 1):
        if x in dots:
            if not spaces:
                raise InvariantViolated(f"点 {x} 前没有可配对的空位")
            pairs[x] = spaces.pop()
        else:
            spaces.append(x)
    if len(spaces) != u:
        raise InvariantViolated(f"1..{j} 中剩余 {len(spaces)} 个空位，但有 {u} 个未配对的点")

    # 第四步：d_u ↔ s_1, d_{u-1} ↔ s_2, ...
    for dot, space in zip(reversed(unpaired), spaces):
        pairs[dot] = space

    line = tuple(range(j + 1, n + 1)) + tuple(range(1, j + 1))
    logger.debug(f"弧图构造完成: n={n}, j={j}, k={k}")
    return ArcDiagram(n, dots, tuple(sorted(pairs.items())), j, k, line)


def _find_rainbows(line: List[int], partner: Dict[int, int]) -> List[Tuple[int, int]]:
    """当前数轴上所有彩虹的 (起始下标, 结束下标)"""
    rainbows = []
    for idx in range(len(line) - 1):
        if partner.get(line[idx]) != line[idx + 1]:
            continue
        a, b = idx, idx + 1
        while a > 0 and b + 1 < len(line) and partner.get(line[a - 1]) == line[b + 1]:
            a -= 1
            b += 1
        rainbows.append((a, b))
    return rainbows


def _make_run(line: List[int], a: int, b: int, dots: frozenset) -> Run:
    length = (b - a + 1) // 2
    entries = tuple(x for x in line[a:b + 1] if x in dots)
    if len(entries) != length:
        raise InvariantViolated(f"彩虹 {line[a:b + 1]} 中的点数与长度 {length} 不符")
    arcs = tuple((line[a + t], line[b - t]) for t in range(length))
    return Run(length, entries, arcs)


def extract_runs(diag: ArcDiagram) -> RunDecomposition:
    """反复移除相邻彩虹中较小者，得到游程分解"""
    partner = diag.partner
    line = list(diag.line)
    order = {x: idx for idx, x in enumerate(diag.line)}
    found: List[Run] = []

    while any(x in partner for x in line):
        rainbows = _find_rainbows(line, partner)
        if not rainbows:
            raise InvariantViolated("弧图中存在无法归入彩虹的弧")
        groups: List[List[Tuple[int, int]]] = [[rainbows[0]]]
        for rainbow in rainbows[1:]:
            if rainbow[0] == groups[-1][-1][1] + 1:
                groups[-1].append(rainbow)
            else:
                groups.append([rainbow])

        removed: List[Tuple[int, int]] = []
        for group in groups:
            if len(group) < 2:
                continue
            # 保留最大的彩虹，并列时保留最左边的
            keep = max(group, key=lambda rb: (rb[1] - rb[0], -rb[0]))
            removed.extend(rb for rb in group if rb != keep)
        if not removed:
            removed = rainbows

        doomed = set()
        for a, b in removed:
            found.append(_make_run(line, a, b, diag.dots))
            doomed.update(line[a:b + 1])
        line = [x for x in line if x not in doomed]

    lengths = tuple(sorted({run.length for run in found}, reverse=True))
    runs = tuple(
        tuple(sorted((run for run in found if run.length == ell), key=lambda run: order[run.entries[0]]))
        for ell in lengths
    )
    return RunDecomposition(lengths, tuple(len(group) for group in runs), runs)


def classify(Tn: Tableau) -> Tuple[Tuple[int, ...], Tuple[int, ...], RunDecomposition]:
    """确定 T[n] 所属的族 T(n, ℓ⃗, r⃗)"""
    decomposition = extract_runs(build_arc_diagram(Tn))
    return decomposition.lengths, decomposition.mults, decomposition


def in_single_length_family(Tn: Tableau, ell: int, r: int) -> bool:
    """判断 T[n] 是否属于单一长度族 T(n, ℓ, r)

    Raises:
        PreconditionViolated: n < (2r+1)ℓ
    """
    _require_two_row(Tn)
    n = Tn.size
    if n < (2 * r + 1) * ell:
        raise PreconditionViolated(f"需要 n ≥ (2r+1)ℓ = {(2 * r + 1) * ell}，得到 n={n}")

    entries = sorted(Tn.rows[1])
    blocks: List[List[int]] = []
    for x in entries:
        if blocks and blocks[-1][-1] == x - 1:
            blocks[-1].append(x)
        else:
            blocks.append([x])

    starts: List[int] = []
    if blocks[-1][-1] == n and len(blocks[-1]) < ell:
        tail = blocks.pop()
        k = ell - len(tail)
        head = list(range(k + 1, 2 * k + 1))
        if head not in blocks:
            return False
        blocks.remove(head)
        starts.append(tail[0] - 1)
    for block in blocks:
        if len(block) != ell:
            return False
        starts.append(block[0] - 1)

    if len(starts) != r:
        return False
    s = sorted(starts)
    if s[0] < ell or s[-1] > n - 1 or s[-1] > s[0] + n - 3 * ell:
        return False
    return all(a + 2 * ell <= b for a, b in zip(s, s[1:]))


def single_length_tableau(n: int, ell: int, starts: List[int]) -> Tableau:
    """由游程起点 s_1 < ... < s_r 构造 T[n]；起点 s 对应数字 s+1..s+ℓ，越过 n 时回绕到 k+1..2k"""
    bottom = set()
    for s in starts:
        if s <= n - ell:
            bottom.update(range(s + 1, s + ell + 1))
        else:
            k = s + ell - n
            bottom.update(range(s + 1, n + 1))
            bottom.update(range(k + 1, 2 * k + 1))
    top = tuple(x for x in range(1, n + 1) if x not in bottom)
    return Tableau((top, tuple(sorted(bottom))))
