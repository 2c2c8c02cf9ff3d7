from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.config.settings import settings


class ReportBase(BaseModel):
    """所有报告的公共字段"""
    version: str = Field(default_factory=lambda: settings.report_version)


class OrbitReportModel(ReportBase):
    """单个杨表的轨道报告"""
    period: int
    canonical_rep: Dict[str, List[List[int]]]
    members: Optional[List[Dict[str, List[List[int]]]]] = None


class SpectrumReport(ReportBase):
    """某个形状全部标准杨表的轨道长度谱"""
    shape: List[int]
    count: int
    orbit_lengths: Dict[str, int] = Field(default_factory=dict)
    lcm: str


class VerifyParams(BaseModel):
    """verify 命令的参数网格，未给出的字段使用各定理的默认网格"""
    n: Optional[List[int]] = None
    ell: Optional[List[int]] = None
    r: Optional[List[int]] = None
    shape: Optional[List[int]] = None
    grid: Optional[List[int]] = None  # [n0, n1]

    def n_values(self, default_low: int, default_high: int) -> List[int]:
        """合并 --n 与 --grid 得到要检查的 n"""
        if self.n:
            return list(self.n)
        low, high = self.grid if self.grid else (default_low, default_high)
        return list(range(low, high + 1))


class CaseResult(BaseModel):
    """一个检查用例的结果"""
    key: str
    passed: bool
    skipped: bool = False
    anchor: str
    detail: Dict[str, Any] = Field(default_factory=dict)
    witness: Optional[Any] = None


class VerifyReport(ReportBase):
    """定理验证报告"""
    theorem: str
    description: str
    passed: bool
    failures: int = 0
    skipped: int = 0
    cases: List[CaseResult] = Field(default_factory=list)


class FitReport(ReportBase):
    """拟多项式拟合报告"""
    tableau: Dict[str, List[List[int]]]
    fitted: bool
    modulus: Optional[int] = None
    degree: Optional[int] = None
    onset: Optional[int] = None
    classes: List[Dict[str, Any]] = Field(default_factory=list)
    data: List[List[int]] = Field(default_factory=list)


class ClassifyReport(ReportBase):
    """两行杨表的游程分解与轨道系统"""
    tableau: Dict[str, List[List[int]]]
    lengths: List[int]
    mults: List[int]
    runs: List[Dict[str, Any]] = Field(default_factory=list)
    arc_diagram: Dict[str, Any] = Field(default_factory=dict)
    tracks: Optional[Dict[str, Any]] = None
    render: Optional[str] = None
    note: Optional[str] = None
