import json
import os
from typing import Any, List, Tuple

import chardet
import yaml

from app.models.tableau import Partition, Tableau
from app.services.tableaux_core import make_partition, validate


class TableauParser:
    """杨表与参数解析器"""

    @staticmethod
    def parse_tableau(data: Any) -> Tableau:
        """由 {"rows": [[...], ...]} 或直接的行列表构造杨表"""
        rows = data.get("rows") if isinstance(data, dict) else data
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise ValueError("杨表格式错误，应为 {\"rows\": [[int, ...], ...]}")
        return validate(rows)

    @staticmethod
    def load_tableau(file_path: str) -> Tableau:
        """从 JSON 或 YAML 文件加载杨表，文件编码由 chardet 检测"""
        with open(file_path, "rb") as f:
            raw = f.read()
        content = raw.decode(chardet.detect(raw)["encoding"] or "utf-8")
        if os.path.splitext(file_path)[1].lower() in (".yaml", ".yml"):
            try:
                data = yaml.safe_load(content)
            except yaml.YAMLError as e:
                raise ValueError(f"解析YAML失败: {e}")
        else:
            try:
                data = json.loads(content)
            except json.JSONDecodeError as e:
                raise ValueError(f"解析JSON失败: {e}")
        return TableauParser.parse_tableau(data)

    @staticmethod
    def parse_int_vector(text: str) -> List[int]:
        """解析逗号分隔的整数，如 "3,1" """
        try:
            return [int(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise ValueError(f"无法解析整数列表: {text}")

    @staticmethod
    def parse_shape(text: str) -> Partition:
        return make_partition(TableauParser.parse_int_vector(text))

    @staticmethod
    def parse_grid(text: str) -> Tuple[int, int]:
        """解析 "n0..n1" 形式的闭区间，单个整数视为 n0 = n1"""
        try:
            if ".." in text:
                low, high = text.split("..", 1)
                low, high = int(low), int(high)
            else:
                low = high = int(text)
        except ValueError:
            raise ValueError(f"无法解析区间: {text}")
        if low > high:
            raise ValueError(f"区间下界大于上界: {text}")
        return low, high
