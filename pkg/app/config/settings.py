import os
from pydantic import BaseModel
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

class Settings(BaseModel):
    """应用程序配置设置"""
    # 枚举配置
    enumeration_cap: int = int(os.getenv("PROMOLAB_CAP", "24"))  # 穷举时允许的最大 |λ[n]|
    jobs: int = int(os.getenv("PROMOLAB_JOBS", "1"))

    # 日志配置
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    debug: bool = os.getenv("DEBUG", "False").lower() == "true"

    # 报告配置
    report_version: str = "1.0"

    # 数值配置
    float_tolerance: float = float(os.getenv("PROMOLAB_FLOAT_TOL", "1e-6"))

    # 拟合器配置
    fit_max_modulus: int = int(os.getenv("PROMOLAB_FIT_MAX_MODULUS", "4"))
    fit_max_degree: int = int(os.getenv("PROMOLAB_FIT_MAX_DEGREE", "4"))
    fit_holdout: int = int(os.getenv("PROMOLAB_FIT_HOLDOUT", "2"))

    # 通用情形的对称细化
    symmetry_refinement: bool = os.getenv("PROMOLAB_SYMMETRY_REFINEMENT", "False").lower() == "true"

    # 还原杨表时离开边界所允许的最大旋转步数，0 表示 n
    track_search_limit: int = int(os.getenv("PROMOLAB_TRACK_SEARCH_LIMIT", "0"))

    @property
    def effective_jobs(self) -> int:
        """获取实际使用的并行进程数"""
        return max(1, self.jobs)

# 创建全局设置实例
settings = Settings()
