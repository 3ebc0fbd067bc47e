"""Matrix realizations of group-manifolds.

Modules by topic: :mod:`manirep.numkit` (dense kernels and canonical
forms), :mod:`manirep.groups` (classical matrix groups), :mod:`manirep.gmodules`
(matrix modules and actions), :mod:`manirep.weyl` (exact dimensions and
enumeration of irreducibles), :mod:`manirep.stabilizers` (structured
stabilizers), :mod:`manirep.embeddings` (manifold realizations),
:mod:`manirep.classify` (admissible targets and minimality sweeps),
:mod:`manirep.cli` (the ``manirep`` command).
"""

from .numkit import Mat, Tolerance

__all__ = ["Mat", "Tolerance"]
__version__ = "0.1.0"
