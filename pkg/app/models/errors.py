from typing import Any, Optional


class PromotionError(ValueError):
    """所有库内错误的基类"""


class ShapeError(PromotionError):
    """行长度不是弱递减的"""


class OrderError(PromotionError):
    """行或列不是严格递增的"""


class DuplicateEntry(PromotionError):
    """存在重复的数字"""


class NotExtendable(PromotionError):
    """无法构造 T[n]"""


class NotClosed(PromotionError):
    """集合在提升操作下不封闭"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NotTwoRow(PromotionError):
    """不是两行的 λ[n] 形状"""


class PreconditionViolated(PromotionError):
    """参数不满足前置条件"""


class TrackCapacityError(PromotionError):
    """轨道长度不足以容纳所有游程"""


class InvariantViolated(PromotionError):
    """轨道系统的不变量被破坏"""


class DomainError(PromotionError):
    """参数超出定义域"""


class NonExactDivision(PromotionError):
    """多项式除法不整除"""


class NonConstantResidue(PromotionError):
    """模分圆多项式的余式不是常数"""


class NotGeneric(PromotionError):
    """不是通用情形"""


class NotNearHook(PromotionError):
    """不是近钩形"""


class NotMixed(PromotionError):
    """近钩形中没有同时出现游程和单点"""


class CapExceeded(PromotionError):
    """超出枚举上限"""


class InvalidGaps(PromotionError):
    """间隔序列不合法"""


class UnknownTheorem(PromotionError):
    """未知的定理编号"""


class InsufficientData(PromotionError):
    """数据点不足以完成拟合"""
