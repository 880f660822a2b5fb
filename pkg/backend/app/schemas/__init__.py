from .cone import MomentCone, ChargeMatrix, GorensteinBasis, GoodnessResult, EquivalenceResult
from .volume import ReebVector, SimplicialDecomposition, SimplicialPiece, VolumeReport
from .solver import CriticalPoint, FutakiReport, QuotientFan, ReebPolytope, RegularityReport
from .zeta import ZetaEstimate, LichnerowiczScan
from .family import FamilySpec, YpqSweepRow
from .hypersurface import HypersurfaceSingularity, ScreenReport
from .potential import HomogeneousFunction, LinearFunction, PotentialSpec, PotentialValue, MetricBlocks
from .report import Report, ReportWarning

__all__ = [
    "MomentCone",
    "ChargeMatrix",
    "GorensteinBasis",
    "GoodnessResult",
    "EquivalenceResult",
    "ReebVector",
    "SimplicialDecomposition",
    "SimplicialPiece",
    "VolumeReport",
    "CriticalPoint",
    "FutakiReport",
    "QuotientFan",
    "ReebPolytope",
    "RegularityReport",
    "ZetaEstimate",
    "LichnerowiczScan",
    "FamilySpec",
    "YpqSweepRow",
    "HypersurfaceSingularity",
    "ScreenReport",
    "HomogeneousFunction",
    "LinearFunction",
    "PotentialSpec",
    "PotentialValue",
    "MetricBlocks",
    "Report",
    "ReportWarning",
]
