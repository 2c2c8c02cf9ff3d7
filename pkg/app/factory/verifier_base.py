from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Type

from app.config.settings import settings
from app.models.errors import (
    CapExceeded,
    DomainError,
    PreconditionViolated,
    PromotionError,
    TrackCapacityError,
)
from app.models.schema import CaseResult, VerifyParams, VerifyReport
from app.utils.logger import get_logger

logger = get_logger(__name__)

# 这些错误说明用例不在定理的适用范围内，记为跳过而不是失败
SKIPPABLE = (PreconditionViolated, TrackCapacityError, DomainError, CapExceeded)


def _execute(verifier_cls: Type["Verifier"], case: Dict[str, Any]) -> CaseResult:
    return verifier_cls().run_case(case)


class Verifier(ABC):
    """定理验证器基类"""

    theorem_id: str = ""
    anchor: str = ""
    description: str = ""

    @abstractmethod
    def cases(self, params: VerifyParams) -> List[Dict[str, Any]]:
        """根据参数网格生成用例

        Args:
            params: 参数网格

        Returns:
            List[Dict[str, Any]]: 用例参数列表，每个用例必须含有 "key"
        """
        pass

    @abstractmethod
    def check_case(self, case: Dict[str, Any]) -> CaseResult:
        """执行一个用例

        Args:
            case: 用例参数

        Returns:
            CaseResult: 用例结果
        """
        pass

    def result(self, case: Dict[str, Any], passed: bool, detail: Dict[str, Any] = None,
               witness: Any = None) -> CaseResult:
        return CaseResult(
            key=case["key"],
            passed=passed,
            anchor=self.anchor,
            detail=detail or {},
            witness=witness,
        )

    def run_case(self, case: Dict[str, Any]) -> CaseResult:
        """执行用例，把不适用的参数记为跳过，其余领域错误记为失败"""
        try:
            return self.check_case(case)
        except SKIPPABLE as e:
            return CaseResult(
                key=case["key"],
                passed=True,
                skipped=True,
                anchor=self.anchor,
                detail={"reason": str(e)},
            )
        except PromotionError as e:
            witness = getattr(e, "witness", None)
            return CaseResult(
                key=case["key"],
                passed=False,
                anchor=self.anchor,
                detail={"error": type(e).__name__, "reason": str(e)},
                witness=witness.to_dict() if hasattr(witness, "to_dict") else witness,
            )

    def run(self, params: VerifyParams) -> VerifyReport:
        """执行全部用例，结果按用例键排序"""
        cases = self.cases(params)
        jobs = settings.effective_jobs
        logger.info(f"开始验证 {self.theorem_id}: 共 {len(cases)} 个用例，并行进程数 {jobs}")
        if jobs > 1 and len(cases) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                results = list(executor.map(_execute, [type(self)] * len(cases), cases))
        else:
            results = [self.run_case(case) for case in cases]
        results.sort(key=lambda res: res.key)

        failures = sum(1 for res in results if not res.passed)
        skipped = sum(1 for res in results if res.skipped)
        for res in results:
            if not res.passed:
                logger.warning(f"{self.theorem_id} 用例 {res.key} 未通过: {res.detail}")
        logger.info(f"验证 {self.theorem_id} 完成: 失败 {failures}，跳过 {skipped}")
        return VerifyReport(
            theorem=self.theorem_id,
            description=self.description,
            passed=failures == 0,
            failures=failures,
            skipped=skipped,
            cases=results,
        )
