"""近钩形杨表：单点/游程分类、三类除数公式与双轨道状态"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app.models.errors import DomainError, InvariantViolated, NotGeneric, NotMixed, NotNearHook
from app.models.tableau import Tableau
from app.services.divisor_predict import is_generic
from app.services.tableaux_core import lower_part

RUN_STATE = "run"
SINGLETON_STATE = "singleton"


@dataclass(frozen=True)
class NearHookProfile:
    """近钩形 T[n] 的分类结果

    runs 中每个游程按模 n-1 的循环顺序排列，run_gaps[i] 是第 i 个游程的第一列首个数字
    与前一个游程第一列最后一个数字之差（模 n-1）。
    """
    n: int
    r: int
    s: int
    runs: Tuple[Tuple[int, ...], ...]
    singletons: Tuple[int, ...]
    column: Tuple[int, ...]
    top_right: int
    state: str
    run_gaps: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {
            "r": self.r,
            "s": self.s,
            "runs": [list(run) for run in self.runs],
            "singletons": list(self.singletons),
            "state": self.state,
        }


@dataclass(frozen=True)
class NearHookTracks:
    """混合情形下的游程轨道与单点轨道"""
    run_track_length: int
    singleton_track_length: int
    run_positions: Tuple[Tuple[int, ...], ...]
    singleton_positions: Tuple[int, ...]
    run_gaps: Tuple[int, ...]
    singleton_gaps: Tuple[int, ...]
    state: str


def is_near_hook(Tn: Tableau) -> bool:
    """形状为 (n-|T|, 2, 1, ..., 1)，且至少三行"""
    rows = Tn.rows
    return len(rows) >= 3 and len(rows[1]) == 2 and all(len(row) == 1 for row in rows[2:])


def _require_near_hook(Tn: Tableau) -> None:
    if not is_near_hook(Tn) or not Tn.is_standard:
        raise NotNearHook(f"需要近钩形标准杨表，得到形状 {Tn.shape}")


def _cyc(a: int, b: int, mod: int) -> int:
    """从 a 到 b 的模 mod 前进距离"""
    return (b - a) % mod


def _successor(x: int, n: int) -> int:
    """在 2..n 的循环中 x 的后继，n 之后回到 2"""
    return 2 if x == n else x + 1


def _predecessor(x: int, n: int) -> int:
    return n if x == 2 else x - 1


def classify_near_hook(Tn: Tableau) -> NearHookProfile:
    """按模 n-1 的间隔规则区分单点与游程

    Raises:
        NotNearHook: 不是近钩形
    """
    _require_near_hook(Tn)
    n = Tn.size
    mod = n - 1
    column = sorted(row[0] for row in Tn.rows[1:])
    top_right = Tn.rows[1][1]
    m = len(column)
    deltas = [_cyc(column[a], column[(a + 1) % m], mod) for a in range(m)]

    # 规则一：与下一个第一列数字相差 2 的数字是嵌套单点
    nested = {column[a] for a in range(m) if deltas[a] == 2}

    breaks = [a for a in range(m) if deltas[a] >= 3]
    segments: List[List[int]] = []
    if not breaks:
        segments.append(list(column))
    else:
        for b_idx, a in enumerate(breaks):
            nxt = breaks[(b_idx + 1) % len(breaks)]
            seg, idx = [], (a + 1) % m
            while True:
                seg.append(column[idx])
                if idx == nxt:
                    break
                idx = (idx + 1) % m
            segments.append(seg)

    groups = [[x for x in seg if x not in nested] for seg in segments]
    neighbours = {_predecessor(top_right, n), _successor(top_right, n)}
    owner = next((g for g, seg in enumerate(segments) if neighbours & set(seg)), None)
    if owner is not None:
        groups[owner].append(top_right)

    runs: List[Tuple[int, ...]] = []
    singletons = set(nested)
    for seg, group in zip(segments, groups):
        origin = seg[0]
        ordered = tuple(sorted(group, key=lambda v: _cyc(origin, v, mod)))
        if len(ordered) >= 2:
            runs.append(ordered)
        else:
            singletons.update(ordered)
    if owner is None:
        singletons.add(top_right)

    column_set = set(column)
    runs.sort(key=lambda run: min(x for x in run if x in column_set))
    run_gaps = []
    for idx, run in enumerate(runs):
        prev = runs[idx - 1]
        last_prev = [x for x in prev if x in column_set][-1]
        first_here = [x for x in run if x in column_set][0]
        run_gaps.append(_cyc(last_prev, first_here, mod))

    state = SINGLETON_STATE if top_right in singletons or (top_right - 1) in singletons else RUN_STATE
    return NearHookProfile(
        n=n,
        r=len(runs),
        s=len(singletons),
        runs=tuple(runs),
        singletons=tuple(sorted(singletons)),
        column=tuple(column),
        top_right=top_right,
        state=state,
        run_gaps=tuple(run_gaps),
    )


def in_runs_only_family(Tn: Tableau) -> bool:
    """T 的数字能否划分为至少两个循环连续数字组成的游程，且相邻游程第一列间隔至少为 3"""
    _require_near_hook(Tn)
    n = Tn.size
    mod = n - 1
    entries = set(lower_part(Tn).entries)
    column = {row[0] for row in Tn.rows[1:]}
    if len(entries) == mod:
        return False
    # 从一个不在 T 中的数字之后开始循环扫描
    start = next(x for x in range(2, n + 1) if x not in entries)
    blocks: List[List[int]] = []
    x = _successor(start, n)
    for _ in range(mod):
        if x in entries:
            if blocks and blocks[-1][-1] == _predecessor(x, n):
                blocks[-1].append(x)
            else:
                blocks.append([x])
        x = _successor(x, n)
    if not blocks or any(len(block) < 2 for block in blocks):
        return False
    # 右上角的数字只能是所在游程的首项或末项
    top_right = Tn.rows[1][1]
    if any(top_right in block[1:-1] for block in blocks):
        return False
    firsts = [[v for v in block if v in column] for block in blocks]
    for idx, cols in enumerate(firsts):
        prev = firsts[idx - 1]
        if _cyc(prev[-1], cols[0], mod) < 3:
            return False
    return True


def runs_gap_sum(profile: NearHookProfile) -> int:
    """Σ(ℓ_i + g_i)，对纯游程情形应等于 n + r"""
    return sum(len(run) for run in profile.runs) + sum(profile.run_gaps)


def nearhook_generic_divisor(T: Tableau, n: int) -> int:
    """通用近钩形的除数 (|T|-1)(n-1)

    Raises:
        NotGeneric: 不是通用情形
        NotNearHook: T 的形状不是 (2, 1, ..., 1)
    """
    if not (len(T.rows) >= 2 and len(T.rows[0]) == 2 and all(len(row) == 1 for row in T.rows[1:])):
        raise NotNearHook(f"T 的形状必须是 (2,1,...,1)，得到 {T.shape}")
    if not is_generic(T, n):
        raise NotGeneric(f"T={T} 在 n={n} 时不是通用情形")
    return (T.size - 1) * (n - 1)


def runsonly_divisor(r: int, n: int) -> int:
    """纯游程情形的除数 (2r-1)n - 2r"""
    if r < 1:
        raise DomainError(f"需要 r ≥ 1，得到 r={r}")
    return (2 * r - 1) * n - 2 * r


def quadratic_divisor(n: int, r: int, s: int) -> int:
    """混合情形的除数 (n-2r-1)((2r+s-1)(n-2s)-2r) - 2rs(4r+2s-3)"""
    if r < 1 or s < 1:
        raise DomainError(f"混合情形需要 r ≥ 1 且 s ≥ 1，得到 r={r}, s={s}；纯游程情形请使用 runsonly_divisor")
    return (n - 2 * r - 1) * ((2 * r + s - 1) * (n - 2 * s) - 2 * r) - 2 * r * s * (4 * r + 2 * s - 3)


def _number_track(n: int, skipped: set) -> Dict[int, int]:
    """跳过给定数字以及其后第一个未被跳过的数字，为剩余数字依次编号"""
    first_free = next(x for x in range(1, n + 1) if x not in skipped)
    skipped = skipped | {first_free}
    return {x: c for c, x in enumerate((x for x in range(1, n + 1) if x not in skipped), start=1)}


def _cyclic_gaps(points: Sequence[int], length: int) -> Tuple[int, ...]:
    ordered = sorted(points)
    if len(ordered) == 1:
        return (length,)
    return tuple((ordered[(t + 1) % len(ordered)] - ordered[t]) % length for t in range(len(ordered)))


def nearhook_tracks(Tn: Tableau) -> NearHookTracks:
    """构造混合情形的游程轨道和单点轨道

    Raises:
        NotMixed: r = 0 或 s = 0
        InvariantViolated: 轨道长度与公式不符
    """
    profile = classify_near_hook(Tn)
    if profile.r == 0 or profile.s == 0:
        raise NotMixed(f"需要同时存在游程和单点，得到 r={profile.r}, s={profile.s}")
    n = profile.n
    column = set(profile.column)
    wrap = lambda x: (x - 1) % n + 1

    # 单点轨道：跳过每个游程第一列最后一个数字之后的两个数字
    skipped = set()
    for run in profile.runs:
        last = [x for x in run if x in column][-1]
        skipped.update({wrap(last + 1), wrap(last + 2)})
    singleton_cells = _number_track(n, skipped)
    singleton_length = len(singleton_cells)
    if singleton_length != n - 2 * profile.r - 1:
        raise InvariantViolated(f"单点轨道长度为 {singleton_length}，应为 {n - 2 * profile.r - 1}")

    # 游程轨道：跳过每个单点及其后一个数字，处于单点状态的那个单点只跳过自身
    special: Optional[int] = None
    if profile.top_right in profile.singletons:
        special = profile.top_right
    elif profile.top_right - 1 in profile.singletons:
        special = profile.top_right - 1
    skipped = set()
    for x in profile.singletons:
        skipped.add(x)
        if x != special:
            skipped.add(wrap(x + 1))
    run_cells = _number_track(n, skipped)
    run_length = len(run_cells)
    expected = n - 2 * profile.s if profile.state == SINGLETON_STATE else n - 2 * profile.s - 1
    if run_length != expected:
        raise InvariantViolated(f"游程轨道长度为 {run_length}，应为 {expected}")

    try:
        singleton_positions = tuple(singleton_cells[x] for x in profile.singletons)
        run_positions = tuple(
            tuple(run_cells[x] for x in run if x in column) for run in profile.runs
        )
    except KeyError as e:
        raise InvariantViolated(f"数字 {e} 在轨道上被跳过")

    run_gaps = tuple(
        (run_positions[idx][0] - run_positions[idx - 1][-1]) % run_length
        for idx in range(len(run_positions))
    )
    return NearHookTracks(
        run_track_length=run_length,
        singleton_track_length=singleton_length,
        run_positions=run_positions,
        singleton_positions=singleton_positions,
        run_gaps=run_gaps,
        singleton_gaps=_cyclic_gaps(singleton_positions, singleton_length),
        state=profile.state,
    )
