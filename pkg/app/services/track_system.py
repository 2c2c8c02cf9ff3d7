"""两行杨表与多轨道配置之间的双射，以及提升在轨道上的同步旋转"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.models.errors import InvariantViolated, OrderError, TrackCapacityError
from app.models.tableau import Tableau
from app.services.tableaux_core import validate
from app.services.two_row_runs import build_arc_diagram, extract_runs
from app.utils.logger import get_logger

logger = get_logger(__name__)


def _wrap(x: int, m: int) -> int:
    """把整数映射到 1..m"""
    return (x - 1) % m + 1


def track_lengths(n: int, lengths: Sequence[int], mults: Sequence[int]) -> Tuple[int, ...]:
    """n_i = n - ℓ_i - 2 Σ_{j≠i} r_j · min(ℓ_i, ℓ_j)"""
    return tuple(
        n - li - 2 * sum(rj * min(li, lj) for j, (lj, rj) in enumerate(zip(lengths, mults)) if j != i)
        for i, li in enumerate(lengths)
    )


def boundary_zone(track_len: int, m: int, x: int) -> bool:
    """x 是否位于 {n_i-m+1, ..., n_i, 1, ..., m}"""
    return x > track_len - m or x <= m


def normalize_starts(starts: Sequence[int], track_len: int) -> Tuple[int, Tuple[int, ...]]:
    """在所有循环选择中取 (间隔序列, 位置) 字典序最小的代表"""
    ordered = sorted(starts)
    r = len(ordered)
    if r == 1:
        return ordered[0], (track_len,)
    best = None
    for t in range(r):
        rotated = ordered[t:] + ordered[:t]
        gaps = tuple((rotated[(u + 1) % r] - rotated[u]) % track_len for u in range(r))
        candidate = (gaps, rotated[0])
        if best is None or candidate < best:
            best = candidate
    return best[1], best[0]


@dataclass(frozen=True)
class TrackSystem:
    """d 条环形轨道：第 i 条长 n_i，容纳 r_i 个长度为 ℓ_i 的游程"""
    n: int
    lengths: Tuple[int, ...]
    mults: Tuple[int, ...]
    track_lengths: Tuple[int, ...]
    positions: Tuple[int, ...]
    gaps: Tuple[Tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.lengths)

    def starts(self, i: int) -> List[int]:
        """第 i 条轨道上各游程的起点"""
        result = [self.positions[i]]
        for g in self.gaps[i][:-1]:
            result.append(_wrap(result[-1] + g, self.track_lengths[i]))
        return result

    def ends(self, i: int) -> List[int]:
        return [_wrap(s + self.lengths[i] - 1, self.track_lengths[i]) for s in self.starts(i)]

    @staticmethod
    def from_starts(n: int, lengths: Sequence[int], mults: Sequence[int],
                    starts: Sequence[Sequence[int]]) -> "TrackSystem":
        """由各轨道的游程起点集合构造规范化的轨道系统"""
        lens = track_lengths(n, lengths, mults)
        normalized = [normalize_starts(s, nt) for s, nt in zip(starts, lens)]
        return TrackSystem(
            n=n,
            lengths=tuple(lengths),
            mults=tuple(mults),
            track_lengths=lens,
            positions=tuple(p for p, _ in normalized),
            gaps=tuple(g for _, g in normalized),
        )

    def with_starts(self, starts: Sequence[Sequence[int]]) -> "TrackSystem":
        return TrackSystem.from_starts(self.n, self.lengths, self.mults, starts)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "tracks": [
                {
                    "length": self.lengths[i],
                    "mult": self.mults[i],
                    "track_len": self.track_lengths[i],
                    "pos": self.positions[i],
                    "gaps": list(self.gaps[i]),
                }
                for i in range(self.d)
            ],
        }

    def render(self) -> str:
        """文本形式的轨道示意，● 为点，· 为空位"""
        lines = []
        for i in range(self.d):
            cells = ["·"] * self.track_lengths[i]
            for s in self.starts(i):
                for t in range(self.lengths[i]):
                    cells[_wrap(s + t, self.track_lengths[i]) - 1] = "●"
            lines.append(f"ℓ={self.lengths[i]} n_{i + 1}={self.track_lengths[i]}: {''.join(cells)}")
        return "\n".join(lines)


def check_invariants(ts: TrackSystem) -> None:
    """检查轨道系统的不变量

    Raises:
        InvariantViolated: 长度、间隔、位置或瓶颈条件不成立
    """
    if list(ts.lengths) != sorted(set(ts.lengths), reverse=True) or any(r < 1 for r in ts.mults):
        raise InvariantViolated(f"游程长度必须严格递减且重数为正: {ts.lengths}, {ts.mults}")
    if ts.track_lengths != track_lengths(ts.n, ts.lengths, ts.mults):
        raise InvariantViolated(f"轨道长度与公式不符: {ts.track_lengths}")
    for i in range(ts.d):
        nt, ell, r = ts.track_lengths[i], ts.lengths[i], ts.mults[i]
        if nt < 2 * r * ell:
            raise InvariantViolated(f"第 {i + 1} 条轨道长度 {nt} 小于 2rℓ = {2 * r * ell}")
        if len(ts.gaps[i]) != r or sum(ts.gaps[i]) != nt:
            raise InvariantViolated(f"第 {i + 1} 条轨道的间隔序列 {ts.gaps[i]} 与 r={r}, n_i={nt} 不符")
        if any(g < 2 * ell for g in ts.gaps[i]):
            raise InvariantViolated(f"第 {i + 1} 条轨道的间隔必须至少为 2ℓ = {2 * ell}")
        if not 1 <= ts.positions[i] <= nt:
            raise InvariantViolated(f"第 {i + 1} 条轨道的位置 {ts.positions[i]} 越界")
    if not check_bottleneck(ts):
        raise InvariantViolated("违反瓶颈条件")


def check_bottleneck(ts: TrackSystem) -> bool:
    """任意 ℓ_i > ℓ_j，m = ℓ_j：长游程结束于边界区域时，短游程不能正好在区域前一格等待

    短轨道上的禁止位置是 {n_j-m, ..., n_j, 1, ..., m-1}，即右移一格后落入边界区域的位置。
    """
    for i in range(ts.d):
        for j in range(ts.d):
            if ts.lengths[i] <= ts.lengths[j]:
                continue
            m = ts.lengths[j]
            nj = ts.track_lengths[j]
            long_near = any(boundary_zone(ts.track_lengths[i], m, e) for e in ts.ends(i))
            short_waiting = any(boundary_zone(nj, m, _wrap(e + 1, nj)) for e in ts.ends(j))
            if long_near and short_waiting:
                return False
    return True


def tableau_to_tracks(Tn: Tableau) -> TrackSystem:
    """把两行杨表投影到各条轨道上

    Raises:
        TrackCapacityError: 某条轨道长度 n_i < 2 r_i ℓ_i
        InvariantViolated: 游程在轨道上不连续
    """
    diag = build_arc_diagram(Tn)
    decomposition = extract_runs(diag)
    n = Tn.size
    lengths, mults = decomposition.lengths, decomposition.mults
    lens = track_lengths(n, lengths, mults)
    for i, (nt, ell, r) in enumerate(zip(lens, lengths, mults)):
        if nt < 2 * r * ell:
            raise TrackCapacityError(f"第 {i + 1} 条轨道长度 {nt} 小于 2rℓ = {2 * r * ell}")

    all_starts = []
    for i, ell in enumerate(lengths):
        skipped = set()
        for h, group in enumerate(decomposition.runs):
            if h == i:
                continue
            for run in group:
                skipped |= run.innermost_numbers(min(ell, run.length))
        # 再跳过前 ℓ_i 个既不是点也未被跳过的数
        free = []
        for x in range(1, n + 1):
            if len(free) == ell:
                break
            if x not in diag.dots and x not in skipped:
                free.append(x)
        skipped.update(free)
        cells = [x for x in range(1, n + 1) if x not in skipped]
        if len(cells) != lens[i]:
            raise InvariantViolated(f"第 {i + 1} 条轨道编号得到 {len(cells)} 个位置，应为 {lens[i]}")
        cell_of = {x: c for c, x in enumerate(cells, start=1)}

        starts = []
        for run in decomposition.runs[i]:
            if any(x not in cell_of for x in run.entries):
                raise InvariantViolated(f"游程 {run.entries} 的点在第 {i + 1} 条轨道上被跳过")
            occupied = {cell_of[x] for x in run.entries}
            heads = [c for c in occupied if _wrap(c - 1, lens[i]) not in occupied]
            if len(heads) != 1 or {_wrap(heads[0] + t, lens[i]) for t in range(ell)} != occupied:
                raise InvariantViolated(f"游程 {run.entries} 在第 {i + 1} 条轨道上不连续")
            starts.append(heads[0])
        all_starts.append(starts)

    return TrackSystem.from_starts(n, lengths, mults, all_starts)


def _is_paused(ts: TrackSystem, j: int) -> bool:
    """第 j 条轨道本步是否暂停

    较长的游程在边界区域内时，较短的轨道让行；较短的游程在区域内而较长的轨道
    没有游程在区域内时，较长的轨道等待。
    """
    for i in range(ts.d):
        if i == j:
            continue
        li, lj = ts.lengths[i], ts.lengths[j]
        if li > lj:
            if any(boundary_zone(ts.track_lengths[i], lj, e) for e in ts.ends(i)):
                return True
        elif any(boundary_zone(ts.track_lengths[i], li, e) for e in ts.ends(i)):
            if not any(boundary_zone(ts.track_lengths[j], li, e) for e in ts.ends(j)):
                return True
    return False


def rotate_tracks(ts: TrackSystem) -> TrackSystem:
    """一次提升在轨道上的效果：未暂停的轨道上所有游程左移一格"""
    new_starts = []
    for j in range(ts.d):
        starts = ts.starts(j)
        if not _is_paused(ts, j):
            starts = [_wrap(s - 1, ts.track_lengths[j]) for s in starts]
        new_starts.append(starts)
    return ts.with_starts(new_starts)


def inverse_rotate_tracks(ts: TrackSystem) -> TrackSystem:
    """rotate_tracks 的逆：在每条轨道“动或不动”的组合中寻找唯一前驱"""
    candidates = []
    for moved in product((False, True), repeat=ts.d):
        starts = [
            [_wrap(s + 1, ts.track_lengths[j]) for s in ts.starts(j)] if moved[j] else ts.starts(j)
            for j in range(ts.d)
        ]
        candidate = ts.with_starts(starts)
        if check_bottleneck(candidate) and rotate_tracks(candidate) == ts and candidate not in candidates:
            candidates.append(candidate)
    if len(candidates) != 1:
        raise InvariantViolated(f"找到 {len(candidates)} 个前驱，无法唯一求逆")
    return candidates[0]


def is_clear_of_boundary(ts: TrackSystem) -> bool:
    """所有游程都不跨越边界，且结束位置 e 满足 ℓ_i ≤ e ≤ n_i - ℓ_i"""
    return all(
        ts.lengths[i] <= e <= ts.track_lengths[i] - ts.lengths[i]
        for i in range(ts.d)
        for e in ts.ends(i)
    )


def _merge(ts: TrackSystem) -> Tableau:
    """合并远离边界的轨道系统"""
    n = ts.n
    lines: List[List[Optional[Tuple[int, int, int]]]] = []
    for i in range(ts.d):
        owner: Dict[int, Tuple[int, int]] = {}
        for run_idx, s in enumerate(ts.starts(i)):
            for t in range(ts.lengths[i]):
                owner[_wrap(s + t, ts.track_lengths[i])] = (run_idx, t)
        line: List[Optional[Tuple[int, int, int]]] = [None] * ts.lengths[i]
        for c in range(1, ts.track_lengths[i] + 1):
            line.append((i,) + owner[c] if c in owner else None)
        lines.append(line)

    processed = set()
    for k in range(n):
        for i in range(ts.d):
            if k >= len(lines[i]):
                continue
            item = lines[i][k]
            if item is None or item[2] != ts.lengths[i] - 1 or (i, item[1]) in processed:
                continue
            processed.add((i, item[1]))
            for j in range(ts.d):
                if j == i:
                    continue
                m = min(ts.lengths[i], ts.lengths[j])
                at = k + 1 - m
                lines[j][at:at] = [None] * (2 * m)

    bottom = set()
    for i, line in enumerate(lines):
        if len(line) != n:
            raise InvariantViolated(f"合并后第 {i + 1} 条轨道长度为 {len(line)}，应为 {n}")
        for pos, item in enumerate(line, start=1):
            if item is None:
                continue
            if pos in bottom:
                raise InvariantViolated(f"位置 {pos} 同时被两条轨道占用")
            bottom.add(pos)
    top = tuple(x for x in range(1, n + 1) if x not in bottom)
    try:
        return validate((top, tuple(sorted(bottom))))
    except OrderError as e:
        raise InvariantViolated(f"合并结果不是标准杨表: {str(e)}")


def _maps_to(Tn: Tableau, ts: TrackSystem) -> bool:
    try:
        return tableau_to_tracks(Tn) == ts
    except (InvariantViolated, TrackCapacityError):
        return False


def _turn_back(Tn: Tableau, steps: int) -> Tableau:
    """把弧图整体沿圆周右移 steps 格，再按新的切口重新确定每条弧上的点

    切口之后第一个空位记为 f；两端都在 1..f-1 内的弧，点在右端；其余弧的点在
    从 f 开始读数轴时先遇到的一端。
    """
    n = Tn.size
    arcs = [(_wrap(a + steps, n), _wrap(b + steps, n)) for a, b in build_arc_diagram(Tn).pairs]
    paired = {x for arc in arcs for x in arc}
    first_free = min(x for x in range(1, n + 1) if x not in paired)
    bottom = set()
    for a, b in arcs:
        if a < first_free and b < first_free:
            bottom.add(max(a, b))
        else:
            bottom.add(min(a, b, key=lambda x: (x - first_free) % n))
    top = tuple(x for x in range(1, n + 1) if x not in bottom)
    try:
        return validate((top, tuple(sorted(bottom))))
    except OrderError as e:
        raise InvariantViolated(f"转回后不是标准杨表: {str(e)}")


def tracks_to_tableau(ts: TrackSystem) -> Tableau:
    """由轨道系统合并回两行杨表

    有游程碰到边界时，先沿轨道旋转到远离边界的状态，在那里直接合并，
    再把合并得到的弧图沿圆周转回相同的格数。

    Raises:
        InvariantViolated: 不变量不成立或合并失败
    """
    check_invariants(ts)
    limit = settings.track_search_limit or ts.n
    current, steps = ts, 0
    while not is_clear_of_boundary(current):
        if steps >= limit:
            raise InvariantViolated(f"轨道系统在 {limit} 步内没有离开边界")
        current = rotate_tracks(current)
        steps += 1
    Tn = _merge(current)
    if steps:
        logger.debug(f"旋转 {steps} 步后合并，再把弧图转回")
        Tn = _turn_back(Tn, steps)
    if not _maps_to(Tn, ts):
        raise InvariantViolated("合并结果与轨道系统不一致")
    return Tn
