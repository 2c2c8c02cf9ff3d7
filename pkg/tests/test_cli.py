import io
import json
import os
import tempfile
import unittest
from unittest import mock

from app.cli import main
from app.config.settings import settings


class TestCLI(unittest.TestCase):
    """测试命令行"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.original_jobs = settings.jobs

    def tearDown(self):
        self.temp_dir.cleanup()
        settings.jobs = self.original_jobs

    def _write(self, name: str, content: str) -> str:
        path = os.path.join(self.temp_dir.name, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        return path

    def _run(self, argv):
        with mock.patch("sys.stdout", new_callable=io.StringIO) as out, \
                mock.patch("sys.stderr", new_callable=io.StringIO) as err:
            code = main(argv)
        return code, out.getvalue(), err.getvalue()

    def test_orbit(self):
        """测试 orbit 命令"""
        path = self._write("t.json", '{"rows": [[1, 2, 5], [3, 4]]}')
        code, out, _ = self._run(["orbit", "--tableau", path, "--members"])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["period"], 3)
        self.assertEqual(len(data["members"]), 3)
        self.assertEqual(data["version"], settings.report_version)

    def test_orbit_single_row(self):
        """测试单行杨表周期为 1"""
        path = self._write("row.json", "[[1, 2, 3]]")
        code, out, _ = self._run(["orbit", "--tableau", path])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["period"], 1)
        self.assertIsNone(json.loads(out)["members"])

    def test_malformed_json(self):
        """测试格式错误的输入返回 2"""
        path = self._write("bad.json", "{rows: [[1, 2]")
        code, out, err = self._run(["orbit", "--tableau", path])
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("解析JSON失败", err)

    def test_missing_file(self):
        """测试文件不存在"""
        code, _, _ = self._run(["orbit", "--tableau", os.path.join(self.temp_dir.name, "none.json")])
        self.assertEqual(code, 2)

    def test_spectrum(self):
        """测试 spectrum 命令"""
        code, out, _ = self._run(["spectrum", "--shape", "3,3"])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["count"], 5)
        for length in data["orbit_lengths"]:
            self.assertEqual(6 % int(length), 0)
        self.assertEqual(6 % int(data["lcm"]), 0)

    def test_verify_pass_and_out(self):
        """测试 verify 命令并写入文件"""
        out_path = os.path.join(self.temp_dir.name, "report.json")
        code, out, _ = self._run(["verify", "csp", "--n", "12", "--ell", "2", "--r", "2", "--out", out_path])
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["passed"])
        with open(out_path, encoding="utf-8") as f:
            self.assertEqual(json.load(f)["theorem"], "csp")

    def test_verify_precondition(self):
        """测试不满足前提的用例不算失败"""
        code, out, _ = self._run(["verify", "csp", "--n", "7", "--ell", "2", "--r", "2"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["skipped"], 1)

    def test_verify_unknown(self):
        """测试不支持的定理返回 2"""
        code, _, err = self._run(["verify", "unknown"])
        self.assertEqual(code, 2)
        self.assertIn("不支持的定理", err)

    @mock.patch("app.cli.VerifierFactory.create_verifier")
    def test_verify_failure_exit_code(self, mock_create):
        """测试验证失败时返回 1"""
        from app.models.schema import VerifyReport
        mock_create.return_value.run.return_value = VerifyReport(
            theorem="csp", description="", passed=False, failures=1
        )
        code, out, _ = self._run(["--jobs", "2", "verify", "csp", "--grid", "10..12"])
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(out)["passed"])
        self.assertEqual(settings.jobs, 2)
        params = mock_create.return_value.run.call_args[0][0]
        self.assertEqual(params.grid, [10, 12])

    def test_fit(self):
        """测试 fit 命令"""
        path = self._write("t.json", '{"rows": [[3], [6]]}')
        code, out, _ = self._run(["fit", "--tableau", path, "--grid", "8..16"])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertTrue(data["fitted"])
        self.assertEqual(data["degree"], 1)

    def test_classify(self):
        """测试 classify 命令"""
        rows = [[1, 3, 4, 5, 6, 7, 8, 11, 14, 15, 16, 19], [2, 9, 10, 12, 13, 17, 18, 20]]
        path = self._write("t20.json", json.dumps({"rows": rows}))
        code, out, _ = self._run(["classify", "--tableau", path])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["lengths"], [3, 1])
        self.assertEqual(data["mults"], [2, 2])
        self.assertEqual(data["arc_diagram"]["j"], 4)
        self.assertEqual(data["tracks"]["tracks"][0]["track_len"], 13)

    def test_usage_error(self):
        """测试缺少参数"""
        code, _, _ = self._run(["spectrum"])
        self.assertEqual(code, 2)
