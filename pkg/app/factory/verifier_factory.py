from typing import Any, Dict, List

from app.config.settings import settings
from app.factory.generic_verifiers import CensusVerifier, GenericVerifier
from app.factory.near_hook_verifier import NearHookVerifier
from app.factory.single_length_verifiers import CSPVerifier, MajVerifier, OrbitDividesVerifier
from app.factory.two_row_verifiers import (
    BijectionVerifier,
    CardinalityVerifier,
    CommutationVerifier,
    PdVerifier,
)
from app.factory.verifier_base import Verifier
from app.models.errors import UnknownTheorem

VERIFIERS = {
    cls.theorem_id: cls
    for cls in (
        CSPVerifier,
        OrbitDividesVerifier,
        MajVerifier,
        CardinalityVerifier,
        BijectionVerifier,
        CommutationVerifier,
        PdVerifier,
        GenericVerifier,
        CensusVerifier,
        NearHookVerifier,
    )
}


class VerifierFactory:
    """定理验证器工厂类"""

    @staticmethod
    def create_verifier(theorem_id: str) -> Verifier:
        """创建验证器实例

        Args:
            theorem_id: 定理编号，如 "csp"、"p_d"

        Returns:
            Verifier: 验证器实例

        Raises:
            UnknownTheorem: 不支持的定理编号
        """
        verifier_cls = VERIFIERS.get(theorem_id.lower())
        if verifier_cls is None:
            raise UnknownTheorem(f"不支持的定理: {theorem_id}")
        return verifier_cls()

    @staticmethod
    def available() -> List[str]:
        return sorted(VERIFIERS)

    @staticmethod
    def get_info() -> Dict[str, Any]:
        """获取验证器配置信息

        Returns:
            Dict[str, Any]: 配置信息
        """
        return {
            "theorems": {key: cls.description for key, cls in sorted(VERIFIERS.items())},
            "jobs": settings.effective_jobs,
            "enumeration_cap": settings.enumeration_cap,
        }
