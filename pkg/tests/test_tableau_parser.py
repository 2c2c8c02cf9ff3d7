import os
import tempfile
import unittest

from app.models.errors import OrderError, ShapeError
from app.models.tableau import Partition
from app.utils.tableau_parser import TableauParser


class TestTableauParser(unittest.TestCase):
    """测试杨表与参数解析"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def _write(self, name: str, content: str, encoding: str = "utf-8") -> str:
        path = os.path.join(self.temp_dir.name, name)
        with open(path, "w", encoding=encoding) as f:
            f.write(content)
        return path

    def test_load_json(self):
        """测试从 JSON 文件加载"""
        path = self._write("t.json", '{"rows": [[1, 2, 5], [3, 4]]}')
        T = TableauParser.load_tableau(path)
        self.assertEqual(T.rows, ((1, 2, 5), (3, 4)))

    def test_load_yaml(self):
        """测试从 YAML 文件加载"""
        path = self._write("t.yaml", "# 示例杨表\nrows:\n  - [1, 3]\n  - [2, 4]\n")
        T = TableauParser.load_tableau(path)
        self.assertEqual(T.shape, Partition((2, 2)))

    def test_bare_list(self):
        """测试直接给出行列表"""
        self.assertEqual(TableauParser.parse_tableau([[1, 2], [3]]).size, 3)

    def test_malformed(self):
        """测试格式错误"""
        with self.assertRaises(ValueError) as ctx:
            TableauParser.load_tableau(self._write("bad.json", "{rows: "))
        self.assertIn("解析JSON失败", str(ctx.exception))
        with self.assertRaises(ValueError) as ctx:
            TableauParser.load_tableau(self._write("bad.yml", "rows: [[1, 2\n"))
        self.assertIn("解析YAML失败", str(ctx.exception))
        with self.assertRaises(ValueError):
            TableauParser.parse_tableau({"cols": [[1]]})
        with self.assertRaises(OrderError):
            TableauParser.parse_tableau({"rows": [[2, 1]]})

    def test_vectors_and_grid(self):
        """测试向量、形状与区间"""
        self.assertEqual(TableauParser.parse_int_vector("3, 1"), [3, 1])
        self.assertEqual(TableauParser.parse_shape("8,6"), Partition((8, 6)))
        self.assertEqual(TableauParser.parse_grid("10..20"), (10, 20))
        self.assertEqual(TableauParser.parse_grid("12"), (12, 12))
        with self.assertRaises(ValueError):
            TableauParser.parse_grid("20..10")
        with self.assertRaises(ValueError):
            TableauParser.parse_int_vector("a,b")
        with self.assertRaises(ShapeError):
            TableauParser.parse_shape("1,2")
