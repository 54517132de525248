from chernwall.cohomology import CohomologyRings, PairModel, S2Class, load_rings
from chernwall.options import RunOptions
from chernwall.report import Report
from chernwall.vanish import Certificate, Pipeline

__all__ = [
    "Certificate",
    "CohomologyRings",
    "PairModel",
    "Pipeline",
    "Report",
    "RunOptions",
    "S2Class",
    "load_rings",
]
