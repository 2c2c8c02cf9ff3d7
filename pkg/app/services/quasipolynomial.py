"""探索性的拟多项式拟合：对 pr(T[n]) 按 n 的剩余类寻找最低次的多项式倍数"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, interpolate, symbols

from app.config.settings import settings
from app.models.errors import InsufficientData
from app.models.tableau import Tableau
from app.services.promotion_engine import period
from app.services.tableaux_core import extend_first_row
from app.utils.logger import get_logger

logger = get_logger(__name__)

n_symbol = symbols("n")


@dataclass(frozen=True)
class ClassFit:
    """一个剩余类上的拟合结果，coeffs 由低次到高次"""
    residue: int
    degree: int
    coeffs: Tuple[Fraction, ...]
    onset: int
    confirmed_on: Tuple[int, ...]

    def __call__(self, n: int) -> Fraction:
        return sum((c * n ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    def to_dict(self) -> Dict:
        return {
            "residue": self.residue,
            "degree": self.degree,
            "coeffs": [str(c) for c in self.coeffs],
            "onset": self.onset,
            "confirmed_on": list(self.confirmed_on),
        }


@dataclass(frozen=True)
class FitResult:
    """拟合结果；fitted 为 False 时表示在给定模数和次数范围内没有找到一致的拟合"""
    fitted: bool
    modulus: Optional[int] = None
    degree: Optional[int] = None
    onset: Optional[int] = None
    classes: Tuple[ClassFit, ...] = field(default_factory=tuple)
    data: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict:
        return {
            "fitted": self.fitted,
            "modulus": self.modulus,
            "degree": self.degree,
            "onset": self.onset,
            "classes": [c.to_dict() for c in self.classes],
            "data": [list(p) for p in self.data],
        }


def _interpolate(points: Sequence[Tuple[int, int]]) -> Tuple[Fraction, ...]:
    expr = interpolate([(x, y) for x, y in points], n_symbol) if len(points) > 1 else points[0][1]
    poly = Poly(expr, n_symbol, domain="QQ")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()][::-1]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _fit_class(residue: int, points: List[Tuple[int, int]], max_degree: int, holdout: int) -> Optional[ClassFit]:
    """在一个剩余类中寻找次数最低、起点最早的拟合，留出的点必须整除拟合值"""
    for degree in range(max_degree + 1):
        for onset in range(len(points)):
            window = points[onset:onset + degree + 1]
            held = points[onset + degree + 1:]
            if len(window) < degree + 1 or len(held) < holdout:
                break
            coeffs = _interpolate(window)
            if len(coeffs) - 1 > degree:
                continue
            candidate = ClassFit(residue, len(coeffs) - 1, coeffs, window[0][0], tuple(x for x, _ in held))
            if all(_divides(y, candidate(x)) for x, y in held):
                return candidate
    return None


def _divides(y: int, value: Fraction) -> bool:
    return value.denominator == 1 and value != 0 and value.numerator % y == 0


def fit_sequence(points: Iterable[Tuple[int, int]], max_modulus: int = None,
                 max_degree: int = None, holdout: int = None) -> FitResult:
    """对 (n, 值) 序列做拟多项式拟合

    Args:
        points: (n, 值) 对
        max_modulus: 尝试的最大模数
        max_degree: 尝试的最高次数
        holdout: 每个剩余类至少留出用于确认的点数

    Returns:
        FitResult: 次数最低、模数最小、起点最早的拟合

    Raises:
        InsufficientData: 数据点不足以拟合常数并留出确认点
    """
    max_modulus = max_modulus or settings.fit_max_modulus
    max_degree = settings.fit_max_degree if max_degree is None else max_degree
    holdout = settings.fit_holdout if holdout is None else holdout
    data = tuple(sorted((int(x), int(y)) for x, y in points))
    if len(data) < holdout + 1:
        raise InsufficientData(f"至少需要 {holdout + 1} 个数据点，得到 {len(data)} 个")

    best: Optional[FitResult] = None
    for modulus in range(1, max_modulus + 1):
        classes = []
        for residue in range(modulus):
            members = [p for p in data if p[0] % modulus == residue]
            fit = _fit_class(residue, members, max_degree, holdout) if members else None
            if fit is None:
                break
            classes.append(fit)
        else:
            result = FitResult(
                fitted=True,
                modulus=modulus,
                degree=max(c.degree for c in classes),
                onset=max(c.onset for c in classes),
                classes=tuple(classes),
                data=data,
            )
            if best is None or (result.degree, result.onset) < (best.degree, best.onset):
                best = result
    if best is None:
        logger.info(f"在模数 ≤ {max_modulus}、次数 ≤ {max_degree} 的范围内没有找到一致的拟合")
        return FitResult(fitted=False, data=data)
    return best


def period_sequence(T: Tableau, n_values: Iterable[int]) -> List[Tuple[int, int]]:
    """计算各 n 下 pr(T[n])"""
    points = []
    for n in n_values:
        points.append((n, period(extend_first_row(T, n))))
        logger.debug(f"n={n}: pr(T[n])={points[-1][1]}")
    return points


def fit_quasipolynomial(T: Tableau, n_values: Iterable[int], **kwargs) -> FitResult:
    """计算 pr(T[n]) 并拟合拟多项式"""
    return fit_sequence(period_sequence(T, n_values), **kwargs)
