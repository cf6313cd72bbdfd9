"""Lower bounds on negativity from local-operator entanglement conditions."""
from .bounds import BoundCertificate, ProjectorPair, certify
from .conditions import KappaReport, OperatorPair, RankOnePair, kappa, kappa_first, kappa_second
from .states import BipartiteState, PureState, negativity_exact, schmidt
from .tensor import BipartiteIndex, partial_trace, partial_transpose, trace_norm

__version__ = "0.1.0"

__all__ = [
    "BipartiteIndex",
    "BipartiteState",
    "BoundCertificate",
    "KappaReport",
    "OperatorPair",
    "ProjectorPair",
    "PureState",
    "RankOnePair",
    "certify",
    "kappa",
    "kappa_first",
    "kappa_second",
    "negativity_exact",
    "partial_trace",
    "partial_transpose",
    "schmidt",
    "trace_norm",
]
