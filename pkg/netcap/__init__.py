"""netcap: upper bounds and network codes for network function computation."""
from netcap import problems
from netcap.bounds import full_report
from netcap.codes import NetworkCode
from netcap.functions import TargetFunction
from netcap.limits import Limits
from netcap.network import Network

__version__ = "0.1.0"

__all__ = (
    "Limits",
    "Network",
    "NetworkCode",
    "TargetFunction",
    "full_report",
    "problems",
    "__version__",
)
