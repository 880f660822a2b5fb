from .cone_service import cone_service
from .volume_service import volume_service
from .reeb_service import reeb_service
from .zeta_service import zeta_service
from .family_service import family_service
from .screen_service import screen_service
from .potential_service import potential_service
from .report_service import report_service

__all__ = [
    "cone_service",
    "volume_service",
    "reeb_service",
    "zeta_service",
    "family_service",
    "screen_service",
    "potential_service",
    "report_service",
]
