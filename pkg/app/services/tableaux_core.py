"""分拆与杨表的基础操作：校验、标准化、首行扩展与钩长公式"""
import math
from typing import Iterable, List, Sequence

from app.models.errors import DuplicateEntry, NotExtendable, OrderError, ShapeError
from app.models.tableau import Partition, Tableau


def make_partition(parts: Iterable[int]) -> Partition:
    """构造分拆

    Args:
        parts: 各部分长度

    Returns:
        Partition: 分拆

    Raises:
        ShapeError: 不是弱递减的正整数序列
    """
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise ShapeError(f"分拆必须由正整数组成: {list(parts)}")
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ShapeError(f"分拆不是弱递减的: {list(parts)}")
    return Partition(parts)


def validate(rows: Sequence[Sequence[int]]) -> Tableau:
    """校验并构造杨表

    Args:
        rows: 按行给出的数字

    Returns:
        Tableau: 合法的杨表

    Raises:
        ShapeError: 行长度不是弱递减的
        DuplicateEntry: 存在重复数字
        OrderError: 行或列不严格递增
    """
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    if not rows or any(len(row) == 0 for row in rows):
        raise ShapeError("杨表不能为空，也不能包含空行")

    seen = set()
    for row in rows:
        for x in row:
            if x in seen:
                raise DuplicateEntry(f"数字 {x} 重复出现")
            seen.add(x)
    if any(x < 1 for x in seen):
        raise OrderError("杨表中的数字必须是正整数")

    make_partition(len(row) for row in rows)

    for i, row in enumerate(rows):
        for j in range(1, len(row)):
            if row[j - 1] >= row[j]:
                raise OrderError(f"第 {i + 1} 行不是严格递增的: {list(row)}")
        if i > 0:
            above = rows[i - 1]
            for j, x in enumerate(row):
                if above[j] >= x:
                    raise OrderError(f"第 {j + 1} 列在第 {i + 1} 行处不是严格递增的")
    return Tableau(rows)


def to_syt(T: Tableau) -> Tableau:
    """将第 k 小的数字替换为 k，得到标准杨表"""
    rank = {x: k for k, x in enumerate(sorted(T.entries), start=1)}
    return Tableau(tuple(tuple(rank[x] for x in row) for row in T.rows))


def extend_first_row(T: Tableau, n: int) -> Tableau:
    """在 T 上方添加新的首行，构造 T[n]

    Args:
        T: 原杨表
        n: 扩展后的总格数

    Returns:
        Tableau: T[n]

    Raises:
        NotExtendable: n 太小、数字越界或结果不是标准杨表
    """
    first = len(T.rows[0])
    if n <= T.size + first:
        raise NotExtendable(f"n={n} 太小，需要 n > |T| + λ₁ = {T.size + first}")
    if min(T.entries) < 2 or max(T.entries) > n:
        raise NotExtendable(f"T 的数字必须位于 2..{n} 之间")
    top = tuple(x for x in range(1, n + 1) if x not in T.entries)
    try:
        return validate((top,) + T.rows)
    except (OrderError, ShapeError) as e:
        raise NotExtendable(f"T[{n}] 不是标准杨表: {str(e)}")


def lower_part(Tn: Tableau) -> Tableau:
    """去掉首行，取回 T"""
    return Tableau(Tn.rows[1:])


def hook_lengths(shape: Partition) -> List[int]:
    conjugate = transpose(shape).parts
    return [
        (part - j - 1) + (conjugate[j] - i - 1) + 1
        for i, part in enumerate(shape.parts)
        for j in range(part)
    ]


def hook_count(shape: Partition) -> int:
    """用钩长公式计算形状为 shape 的标准杨表个数"""
    return math.factorial(shape.size) // math.prod(hook_lengths(shape))


def transpose(shape: Partition) -> Partition:
    """共轭分拆"""
    return Partition(tuple(
        sum(1 for part in shape.parts if part > j) for j in range(shape.parts[0])
    ))


def binomial(n: int, k: int) -> int:
    """二项式系数，下标越界时取 0"""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)
