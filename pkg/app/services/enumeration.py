"""标准杨表及各杨表族的穷举与结构化生成"""
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.models.errors import CapExceeded, DomainError, PreconditionViolated, TrackCapacityError
from app.models.tableau import Partition, Tableau
from app.services.divisor_predict import is_generic
from app.services.near_hook import classify_near_hook, quadratic_divisor
from app.services.promotion_engine import period
from app.services.tableaux_core import binomial, hook_count, lower_part
from app.services.track_system import TrackSystem, check_bottleneck, track_lengths, tracks_to_tableau
from app.services.two_row_runs import classify, single_length_tableau
from app.utils.logger import get_logger

logger = get_logger(__name__)


def _check_cap(size: int) -> None:
    if size > settings.enumeration_cap:
        raise CapExceeded(f"|λ|={size} 超出枚举上限 {settings.enumeration_cap}（可通过 PROMOLAB_CAP 调整）")


def enumerate_syt(shape: Partition) -> Iterator[Tableau]:
    """按“每个数字进入哪一行”的记录字典序生成全部标准杨表

    Raises:
        CapExceeded: |λ| 超出上限
    """
    _check_cap(shape.size)
    parts = shape.parts
    rows: List[List[int]] = [[] for _ in parts]

    def place(x: int) -> Iterator[Tableau]:
        if x > shape.size:
            yield Tableau(tuple(tuple(row) for row in rows))
            return
        for i, part in enumerate(parts):
            if len(rows[i]) < part and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(x)
                yield from place(x + 1)
                rows[i].pop()

    yield from place(1)


def two_row_shape(n: int, m: int) -> Partition:
    return Partition((n - m, m))


def enumerate_two_row(n: int, m: int) -> Iterator[Tableau]:
    """形状为 (n-m, m) 的全部标准杨表，即所有 |T| = m 的单行 T 对应的 T[n]"""
    return enumerate_syt(two_row_shape(n, m))


def single_length_starts(n: int, ell: int, r: int) -> Iterator[Tuple[int, ...]]:
    """所有满足 ℓ ≤ s_1, s_k + 2ℓ ≤ s_{k+1}, s_r ≤ s_1 + n - 3ℓ, s_r ≤ n - 1 的起点序列"""
    def extend(prefix: List[int]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == r:
            yield tuple(prefix)
            return
        low = prefix[-1] + 2 * ell if prefix else ell
        high = min(n - 1, prefix[0] + n - 3 * ell) if prefix else n - 1
        for s in range(low, high + 1):
            yield from extend(prefix + [s])

    yield from extend([])


def enumerate_single_length(n: int, ell: int, r: int) -> Iterator[Tableau]:
    """由游程起点序列直接生成 T(n, ℓ, r)

    Raises:
        PreconditionViolated: n < (2r+1)ℓ
    """
    if ell < 1 or r < 1 or n < (2 * r + 1) * ell:
        raise PreconditionViolated(f"需要 n ≥ (2r+1)ℓ，得到 n={n}, ℓ={ell}, r={r}")
    for starts in single_length_starts(n, ell, r):
        yield single_length_tableau(n, ell, list(starts))


def _check_capacity(n: int, ls: Sequence[int], rs: Sequence[int]) -> Tuple[int, ...]:
    ns = track_lengths(n, ls, rs)
    for i, (nt, ell, r) in enumerate(zip(ns, ls, rs)):
        if nt < 2 * r * ell:
            raise TrackCapacityError(f"第 {i + 1} 条轨道长度 {nt} 小于 2rℓ = {2 * r * ell}")
    return ns


def enumerate_family(n: int, ls: Sequence[int], rs: Sequence[int]) -> List[Tableau]:
    """在全部两行标准杨表中按分类筛选出 T(n, ℓ⃗, r⃗)

    Raises:
        TrackCapacityError: 某条轨道容量不足
    """
    _check_capacity(n, ls, rs)
    size = sum(ell * r for ell, r in zip(ls, rs))
    target = (tuple(ls), tuple(rs))
    return [Tn for Tn in enumerate_two_row(n, size) if classify(Tn)[:2] == target]


def track_start_sets(track_len: int, ell: int, r: int) -> Iterator[Tuple[int, ...]]:
    """一条轨道上所有循环间隔至少为 2ℓ 的 r 元起点集合"""
    for starts in combinations(range(1, track_len + 1), r):
        gaps = [(starts[(t + 1) % r] - starts[t]) % track_len or track_len for t in range(r)]
        if all(g >= 2 * ell for g in gaps):
            yield starts


def enumerate_track_systems(n: int, ls: Sequence[int], rs: Sequence[int]) -> Iterator[TrackSystem]:
    """所有满足瓶颈条件的轨道系统"""
    ns = _check_capacity(n, ls, rs)
    per_track = [list(track_start_sets(nt, ell, r)) for nt, ell, r in zip(ns, ls, rs)]
    for choice in product(*per_track):
        ts = TrackSystem.from_starts(n, ls, rs, choice)
        if check_bottleneck(ts):
            yield ts


def enumerate_family_by_tracks(n: int, ls: Sequence[int], rs: Sequence[int]) -> List[Tableau]:
    """通过轨道系统逐个合并生成 T(n, ℓ⃗, r⃗)"""
    family = [tracks_to_tableau(ts) for ts in enumerate_track_systems(n, ls, rs)]
    return sorted(family, key=lambda Tn: Tn.sort_key())


def generic_census(shape: Partition, n: int) -> Tuple[int, int, Fraction]:
    """通用情形的闭式计数

    Returns:
        Tuple[int, int, Fraction]: (通用杨表个数, λ[n] 的标准杨表总数, 比例)

    Raises:
        DomainError: n ≤ |λ| + λ₁
    """
    size = shape.size
    if n <= size + shape.parts[0]:
        raise DomainError(f"需要 n > |λ| + λ₁ = {size + shape.parts[0]}，得到 n={n}")
    # {2..n} 中两两不相邻的 |λ| 元子集，减去同时含 2 与 n 的
    generic = hook_count(shape) * (binomial(n - size, size) - binomial(n - size - 2, size - 2))
    total = hook_count(Partition((n - size,) + shape.parts))
    return generic, total, Fraction(generic, total)


def generic_census_filter(shape: Partition, n: int) -> int:
    """穷举 λ[n] 的标准杨表并逐个判断是否为通用情形"""
    extended = Partition((n - shape.size,) + shape.parts)
    return sum(1 for Tn in enumerate_syt(extended) if is_generic(lower_part(Tn), n))


def census_ratios(shape: Partition, ns: Sequence[int]) -> List[Fraction]:
    return [generic_census(shape, n)[2] for n in ns]


def nearhook_shapes(n: int) -> List[Partition]:
    """所有 (n-m, 2, 1^{m-2})，其中 m ≥ 3 且首行长度大于 2"""
    return [Partition((n - m, 2) + (1,) * (m - 2)) for m in range(3, n - 2)]


def enumerate_nearhook_all(n: int) -> Iterator[Tableau]:
    for shape in nearhook_shapes(n):
        yield from enumerate_syt(shape)


def enumerate_nearhook(n: int, r: int, s: int) -> List[Tableau]:
    """所有分类结果为 (r, s) 的近钩形 T[n]

    Raises:
        CapExceeded: n 超出上限
    """
    _check_cap(n)
    result = []
    for Tn in enumerate_nearhook_all(n):
        profile = classify_near_hook(Tn)
        if profile.r == r and profile.s == s:
            result.append(Tn)
    logger.debug(f"近钩形 (n={n}, r={r}, s={s}) 共 {len(result)} 个")
    return result


def enumerate_two_row_all(n: int) -> Iterator[Tableau]:
    """所有 n 格、第二行非空的两行标准杨表"""
    _check_cap(n)
    for m in range(1, n // 2 + 1):
        yield from enumerate_two_row(n, m)


def family_capacity(ls: Sequence[int], rs: Sequence[int]) -> int:
    """最小的 n，使每条轨道都满足 n_i ≥ 2 r_i ℓ_i"""
    return max(
        2 * ri * li + li + 2 * sum(rj * min(li, lj) for j, (lj, rj) in enumerate(zip(ls, rs)) if j != i)
        for i, (li, ri) in enumerate(zip(ls, rs))
    )


def family_in_scope(n: int, ls: Sequence[int], rs: Sequence[int]) -> bool:
    """每条轨道都满足 n_i ≥ 2 r_i ℓ_i"""
    try:
        _check_capacity(n, ls, rs)
    except TrackCapacityError:
        return False
    return True


def nearhook_onset(r: int, s: int, n_values: Sequence[int]) -> Optional[int]:
    """混合情形 (r, s) 的周期从哪个 n 起在给定范围内都整除二次除数

    Returns:
        Optional[int]: 满足条件的最小 n；范围内最后一个 n 仍不满足时返回 None
    """
    onset = None
    for n in sorted(n_values):
        divisor = quadratic_divisor(n, r, s)
        ok = all(divisor % period(Tn) == 0 for Tn in enumerate_nearhook(n, r, s))
        if ok and onset is None:
            onset = n
        elif not ok:
            onset = None
        logger.debug(f"近钩形 (r={r}, s={s}) n={n}: {'整除' if ok else '不整除'} {divisor}")
    return onset
