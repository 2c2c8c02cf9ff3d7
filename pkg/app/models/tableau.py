from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Tuple


@dataclass(frozen=True)
class Partition:
    """整数分拆，parts 弱递减"""
    parts: Tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def to_list(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Tableau:
    """数字互不相同的半标准杨表

    rows 按行存储，由 tableaux_core.validate 构造以保证合法性。
    """
    rows: Tuple[Tuple[int, ...], ...]

    @cached_property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    @cached_property
    def entries(self) -> FrozenSet[int]:
        return frozenset(x for row in self.rows for x in row)

    @property
    def is_standard(self) -> bool:
        return self.entries == frozenset(range(1, self.size + 1))

    @cached_property
    def positions(self) -> Dict[int, Tuple[int, int]]:
        """数字到 (行, 列) 的映射"""
        return {x: (i, j) for i, row in enumerate(self.rows) for j, x in enumerate(row)}

    def canonical(self) -> str:
        """规范文本形式，如 "1,2,5|3,4"，用于去重和排序"""
        return "|".join(",".join(str(x) for x in row) for row in self.rows)

    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.rows

    def to_dict(self) -> Dict[str, List[List[int]]]:
        return {"rows": [list(row) for row in self.rows]}

    def __str__(self) -> str:
        return self.canonical()
