"""Exact dimensions and bounded enumeration of irreducible highest-weight modules.

Dimensions are computed from the product over positive roots of
<lambda+rho, alpha> / <rho, alpha> in the standard epsilon-coordinates of
the classical root systems (types A, B, C, D), with half-integer
bookkeeping done over doubled integers so every result is an exact Python
int.  The closed-form catalog entries (vector, alternating and symmetric
squares, adjoints, spins) are the anchors everything else is validated
against.

Conventions: for ``SL`` and ``SO`` the parameter ``n`` is the matrix size
(weights have length n-1 and floor(n/2)); for ``SP`` it is the rank, the
group being Sp_{2n} on 2n x 2n matrices (weights have length n).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from . import groups as G
from .errors import InvalidDescriptor, UnsupportedGroup
from .gmodules import ModuleDescriptor

SL, SO, SP = "SL", "SO", "SP"


def rank_of(algebra: str, n: int) -> int:
    if algebra == SL:
        if n < 2:
            raise InvalidDescriptor("SL needs n >= 2")
        return n - 1
    if algebra == SO:
        if n < 3:
            raise InvalidDescriptor("SO needs n >= 3")
        return n // 2
    if algebra == SP:
        if n < 1:
            raise InvalidDescriptor("SP needs rank >= 1")
        return n
    raise InvalidDescriptor(f"unknown algebra {algebra!r}")


@dataclass(frozen=True)
class HighestWeight:
    algebra: str
    n: int
    kappa: tuple[int, ...]

    def __post_init__(self):
        m = rank_of(self.algebra, self.n)
        if len(self.kappa) != m:
            raise InvalidDescriptor(f"kappa must have length {m}, got {len(self.kappa)}")
        if any(k < 0 or int(k) != k for k in self.kappa):
            raise InvalidDescriptor("kappa entries must be nonnegative integers")

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "kappa": list(self.kappa),
            "dim": str(weyl_dim(self)),
        }


def weyl_dim(w: HighestWeight) -> int:
    """Exact dimension of the irreducible module with highest weight kappa."""
    kappa = list(w.kappa)
    n = w.n
    if w.algebra == SL:
        a = [sum(kappa[i:]) + (n - 1 - i) for i in range(n)]
        num, den = 1, 1
        for i, j in combinations(range(n), 2):
            num *= a[i] - a[j]
            den *= j - i
        q, r = divmod(num, den)
        assert r == 0
        return q
    if w.algebra == SO:
        m = n // 2
        if n % 2 == 1:
            # doubled epsilon-coordinates of lambda+rho and rho
            A = [2 * sum(kappa[i : m - 1]) + kappa[m - 1] + 2 * (m - 1 - i) + 1 for i in range(m)]
            R = [2 * (m - 1 - i) + 1 for i in range(m)]
            num, den = 1, 1
            for i, j in combinations(range(m), 2):
                num *= A[i] ** 2 - A[j] ** 2
                den *= R[i] ** 2 - R[j] ** 2
            for i in range(m):
                num *= A[i]
                den *= R[i]
        else:
            A = []
            for i in range(m):
                if i <= m - 3:
                    l2 = 2 * sum(kappa[i : m - 2]) + kappa[m - 2] + kappa[m - 1]
                elif i == m - 2:
                    l2 = kappa[m - 2] + kappa[m - 1]
                else:
                    l2 = kappa[m - 1] - kappa[m - 2]
                A.append(l2 + 2 * (m - 1 - i))
            R = [2 * (m - 1 - i) for i in range(m)]
            num, den = 1, 1
            for i, j in combinations(range(m), 2):
                num *= A[i] ** 2 - A[j] ** 2
                den *= R[i] ** 2 - R[j] ** 2
        q, r = divmod(num, den)
        assert r == 0
        return q
    if w.algebra == SP:
        m = n
        a = [sum(kappa[i:]) + (m - i) for i in range(m)]
        rr = [m - i for i in range(m)]
        num, den = 1, 1
        for i, j in combinations(range(m), 2):
            num *= a[i] ** 2 - a[j] ** 2
            den *= rr[i] ** 2 - rr[j] ** 2
        for i in range(m):
            num *= a[i]
            den *= rr[i]
        q, r = divmod(num, den)
        assert r == 0
        return q
    raise InvalidDescriptor(f"unknown algebra {w.algebra!r}")


def enumerate_irreps_below(algebra: str, n: int, bound: int) -> list[tuple[HighestWeight, int]]:
    """All weights with dimension <= bound, sorted by (dim, kappa).

    Breadth-first search over the weight lattice from 0, pruning any kappa
    whose dimension already exceeds the bound; that is exhaustive because
    decreasing a single coordinate strictly decreases the dimension, so the
    feasible set is downward closed.
    """
    if bound < 1:
        raise InvalidDescriptor("bound must be >= 1")
    m = rank_of(algebra, n)
    start = tuple([0] * m)
    seen = {start}
    out = []
    queue = deque([start])
    while queue:
        kap = queue.popleft()
        w = HighestWeight(algebra, n, kap)
        if weyl_dim(w) > bound:
            continue
        out.append((w, weyl_dim(w)))
        for i in range(m):
            nxt = list(kap)
            nxt[i] += 1
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    out.sort(key=lambda t: (t[1], t[0].kappa))
    return out


def _basis_weight(m: int, i: int, value: int = 1) -> tuple[int, ...]:
    v = [0] * m
    v[i - 1] = value
    return tuple(v)


def catalog_weight(algebra: str, n: int, name: str) -> HighestWeight | None:
    """Highest weight of a named catalog module, or None where it is not
    a single irreducible (e.g. Alt^2 of so_4)."""
    m = rank_of(algebra, n)
    k = None
    if algebra == SL:
        k = {
            "trivial": tuple([0] * m),
            "vector": _basis_weight(m, 1),
            "vector_dual": _basis_weight(m, m),
            "alt2": _basis_weight(m, 2) if m >= 2 else None,
            "alt2_dual": _basis_weight(m, m - 1) if m >= 2 else None,
            "sym2": _basis_weight(m, 1, 2),
            "sym2_dual": _basis_weight(m, m, 2),
            "adjoint": tuple(
                2 if (i == 0 and m == 1) else (1 if i in (0, m - 1) else 0) for i in range(m)
            ),
        }.get(name, "missing")
    elif algebra == SO:
        odd = n % 2 == 1
        alt2 = None
        if odd:
            alt2 = (2,) if m == 1 else ((0, 2) if m == 2 else _basis_weight(m, 2))
        else:
            alt2 = None if m == 2 else ((0, 1, 1) if m == 3 else _basis_weight(m, 2))
        vector = None
        if odd:
            vector = (2,) if m == 1 else _basis_weight(m, 1)
        else:
            vector = (1, 1) if m == 2 else _basis_weight(m, 1)
        sym2_0 = None
        if odd:
            sym2_0 = (4,) if m == 1 else _basis_weight(m, 1, 2)
        else:
            sym2_0 = (2, 2) if m == 2 else _basis_weight(m, 1, 2)
        k = {
            "trivial": tuple([0] * m),
            "vector": vector,
            "alt2": alt2,
            "adjoint": alt2,
            "sym2_0": sym2_0,
            "spin": _basis_weight(m, m),
            "spin_minus": None if odd else _basis_weight(m, m - 1),
        }.get(name, "missing")
    elif algebra == SP:
        k = {
            "trivial": tuple([0] * m),
            "vector": _basis_weight(m, 1),
            "adjoint": _basis_weight(m, 1, 2),
            "alt2_form": _basis_weight(m, 1, 2),
            "sym2_0_form": _basis_weight(m, 2) if m >= 2 else None,
        }.get(name, "missing")
    if k == "missing":
        raise InvalidDescriptor(f"unknown catalog module {name!r} for {algebra}")
    return None if k is None else HighestWeight(algebra, n, k)


#: smallest n for which the low-dimension catalog below is complete
LOW_DIM_THRESHOLD = {SL: 9, SO: 19, SP: 5}


@dataclass
class LowDimCatalog:
    algebra: str
    n: int
    bound: int
    modules: list[ModuleDescriptor]
    weights: list[tuple[HighestWeight, int]]
    advisory: bool
    unexplained: list[tuple[HighestWeight, int]]


def low_dim_classification(algebra: str, n: int) -> LowDimCatalog:
    """The catalog of irreducibles of dimension <= n^2 (4n^2 for SP).

    Below the proved thresholds the result is still computed and any
    enumerated weight whose dimension is not explained by the catalog is
    reported in ``unexplained`` with ``advisory=True``.
    """
    if algebra == SL:
        bound = n * n
        mods = [
            ModuleDescriptor("Trivial", n, "C"),
            ModuleDescriptor("RectNK", n, "C", k=1),
            ModuleDescriptor("Alt2", n, "C"),
            ModuleDescriptor("Sym2", n, "C"),
            ModuleDescriptor("SLnTraceless", n, "C"),
        ]
    elif algebra == SO:
        bound = n * n
        mods = [
            ModuleDescriptor("Trivial", n, "C"),
            ModuleDescriptor("RectNK", n, "C", k=1),
            ModuleDescriptor("Alt2", n, "C"),
            ModuleDescriptor("Sym2Traceless", n, "C"),
        ]
    elif algebra == SP:
        bound = 4 * n * n
        mods = [
            ModuleDescriptor("Trivial", 2 * n, "C"),
            ModuleDescriptor("RectNK", 2 * n, "C", k=1),
            ModuleDescriptor("Sym2TracelessForm", 2 * n, "C"),
            ModuleDescriptor("Alt2Form", 2 * n, "C"),
        ]
    else:
        raise InvalidDescriptor(f"unknown algebra {algebra!r}")

    from .gmodules import module_dim

    weights = enumerate_irreps_below(algebra, n, bound)
    catalog_dims = {module_dim(md) for md in mods}
    unexplained = [(w, d) for w, d in weights if d not in catalog_dims]
    advisory = n < LOW_DIM_THRESHOLD[algebra]
    return LowDimCatalog(algebra, n, bound, mods, weights, advisory, unexplained)


def _is_spinor(w: HighestWeight) -> bool:
    m = len(w.kappa)
    if w.n % 2 == 1:
        return w.kappa[m - 1] % 2 == 1
    return (w.kappa[m - 2] + w.kappa[m - 1]) % 2 == 1


def real_form_admissible(g: G.GroupDescriptor, w: HighestWeight) -> bool:
    """Whether the complex module descends to a real module of the real form.

    Split forms admit every weight.  SU_n needs a palindromic kappa plus the
    mod-4 condition on n; the compact symplectic group needs kappa_i even at
    every odd position i.  For indefinite SO_{p,q} the tensor (non-spinor)
    weights are realizable over R for every signature; spinor weights of a
    non-split signature are outside the supported range.
    """
    if g.family == G.SL and g.field == "R":
        _require(w, SL, g.n)
        return True
    if g.family == G.SP and g.field == "R":
        _require(w, SP, g.n // 2)
        return True
    if g.family == G.SU:
        _require(w, SL, g.n)
        n = g.n
        kap = w.kappa
        if any(kap[i] != kap[n - 2 - i] for i in range(n - 1)):
            return False
        if n % 2 == 1 or n % 4 == 0:
            return True
        return kap[n // 2 - 1] % 2 == 0
    if g.family == G.SP_COMPACT:
        _require(w, SP, g.n // 2)
        return all(w.kappa[i] % 2 == 0 for i in range(0, len(w.kappa), 2))
    if g.family == G.SOPQ:
        _require(w, SO, g.n)
        p, q = g.signature
        if abs(p - q) <= 1:
            return True
        if not _is_spinor(w):
            return True
        raise UnsupportedGroup(
            f"spinor weights of SO_{p},{q} are outside the supported classification"
        )
    raise UnsupportedGroup(f"no real-form criterion for family {g.family!r}")


def _require(w: HighestWeight, algebra: str, n: int) -> None:
    if w.algebra != algebra or w.n != n:
        raise InvalidDescriptor(
            f"weight is for {w.algebra}_{w.n}, group expects {algebra}_{n}"
        )
