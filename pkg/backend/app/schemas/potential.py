from typing import List, Optional, Sequence

import numpy as np

from .common import ToolkitModel
from .cone import MomentCone
from .volume import ReebVector


class HomogeneousFunction:
    """C* 위의 1차 동차 함수 h (값 / 기울기 / Hessian)"""

    def value(self, y: np.ndarray) -> float:
        raise NotImplementedError

    def gradient(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def hessian(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class LinearFunction(HomogeneousFunction):
    def __init__(self, coefficients: Sequence[float]):
        self.coefficients = np.asarray(coefficients, dtype=float)

    def value(self, y):
        return float(self.coefficients @ y)

    def gradient(self, y):
        return self.coefficients.copy()

    def hessian(self, y):
        n = len(self.coefficients)
        return np.zeros((n, n))


class PotentialSpec(ToolkitModel):
    """G = G_can + G_xi + h"""
    cone: MomentCone
    xi: ReebVector
    h: Optional[HomogeneousFunction] = None


class PotentialValue(ToolkitModel):
    value: float
    gradient: List[float]
    hessian: List[List[float]]
    inverse: List[List[float]]


class MetricBlocks(ToolkitModel):
    """g = G_ij dy^i dy^j + G^ij dphi_i dphi_j"""
    symplectic_block: List[List[float]]
    angular_block: List[List[float]]
    min_eigenvalue: float
    log_det: float
