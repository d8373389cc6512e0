"""Exact mutation calculus for cluster structures knitted from terminal
quiver data: translation-quiver models, seeds and their trackers, the
explicit path from T_M to its dual, shuffle-algebra Euler characteristics
and type-A minor identifications."""

from . import cluster, errors, euler, exchange, laurent, mesh, minors, quiver, rigidpath

__all__ = [
    "cluster",
    "errors",
    "euler",
    "exchange",
    "laurent",
    "mesh",
    "minors",
    "quiver",
    "rigidpath",
]

__version__ = "0.1.0"
