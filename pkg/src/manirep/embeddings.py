"""Minimal equivariant matrix realizations of Grassmann, flag, and Stiefel manifolds.

Every supported family is a homogeneous space G/H realized as the orbit of
a fixed base matrix under one of the multiplication actions: a symmetric or
skew "spectral model" for Grassmannians and flags, and a frame model for
Stiefel manifolds.  The registry below records, for each family, the acting
group, the target module, the action, the base point, and the dimension of
the target (which is the smallest possible among all equivariant
realizations once the size parameters clear the family threshold; smaller
sizes are still constructed but flagged advisory).

Spectral parameters default to the smallest integer solutions of the
defining constraints (distinct values, weighted sum zero), so base points
are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from . import groups as G
from .errors import (
    InvalidDescriptor,
    InvalidSpectrum,
    NoConstantFactor,
    NotInGroup,
    SizeMismatch,
)
from .gmodules import ActionKind, ModuleDescriptor, act, contains as module_contains
from .numkit import COMPLEX, DEFAULT_TOL, REAL, Tolerance, frob, mat_to_json
from .stabilizers import stabilizer_dim_in_group

FAMILIES = (
    "gr-real", "gr-complex", "gr-quaternionic", "gr-sp-real", "gr-sp-complex",
    "gr-complex-locus", "slgr", "lgr-c", "slgr-star-h", "sogr-c", "igr",
    "gr-indefinite",
    "fl-real", "fl-complex", "fl-quaternionic", "ifl-even", "ifl-odd",
    "fl-sp", "lfl",
    "st-noncompact-real", "st-noncompact-complex",
    "stiefel-real", "stiefel-complex", "stiefel-quaternionic",
)

_TWO_BLOCK = {
    "gr-real", "gr-complex", "gr-quaternionic", "gr-sp-real", "gr-sp-complex",
    "gr-complex-locus",
}
_FLAG = {"fl-real", "fl-complex", "fl-quaternionic", "fl-sp", "lfl", "ifl-even", "ifl-odd"}
_STIEFEL = {
    "st-noncompact-real", "st-noncompact-complex",
    "stiefel-real", "stiefel-complex", "stiefel-quaternionic",
}


@dataclass(eq=False)
class ManifoldDescriptor:
    """One of the supported manifold families with its size parameters.

    ``n`` is the ambient size parameter of the family (the symplectic rank
    for rows built on Sp_{2n}); ``k`` the plane/frame size; ``ks`` the
    strictly increasing flag sizes; ``p`` the odd part of ifl-odd;
    ``pq``/``sizes`` the (p, q) plane type and (m, n) ambient split of the
    indefinite Grassmannian.  ``spectrum`` overrides the default integer
    spectral parameters.
    """

    family: str
    n: int
    k: int | None = None
    ks: tuple[int, ...] | None = None
    p: int | None = None
    pq: tuple[int, int] | None = None
    sizes: tuple[int, int] | None = None
    field: str | None = None
    spectrum: tuple | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidDescriptor(f"unknown manifold family {self.family!r}")
        if self.family in _TWO_BLOCK or self.family in _STIEFEL or self.family == "igr":
            if self.k is None or self.k < 1:
                raise InvalidDescriptor(f"{self.family} needs k >= 1")
            if self.family == "igr":
                if 2 * self.k > self.n:
                    raise InvalidDescriptor("igr needs 2k <= n")
            elif self.k > self.n or (self.k == self.n and self.family in _TWO_BLOCK):
                raise InvalidDescriptor(f"{self.family} needs k < n")
        if self.family in _FLAG:
            if not self.ks or any(a >= b for a, b in zip(self.ks, self.ks[1:])):
                raise InvalidDescriptor("flag sizes must be strictly increasing")
            if self.ks[0] < 1 or self.ks[-1] >= self.n:
                raise InvalidDescriptor("flag sizes must satisfy 0 < k_1 < ... < n")
            self.ks = tuple(self.ks)
        if self.family == "ifl-odd":
            if self.p is None or self.p < 1:
                raise InvalidDescriptor("ifl-odd needs an odd part p >= 1")
        if self.family == "gr-indefinite":
            if self.pq is None or self.sizes is None:
                raise InvalidDescriptor("gr-indefinite needs pq=(p,q) and sizes=(m,n)")
            p, q = self.pq
            mm, nn = self.sizes
            if not (0 <= p <= mm and 0 <= q <= nn):
                raise InvalidDescriptor("need p <= m and q <= n")
            if (p, q) in ((0, 0), (mm, nn)):
                raise InvalidDescriptor("the (p,q)-plane must be proper")
        if self.family == "fl-sp":
            if self.field not in (REAL, COMPLEX):
                raise InvalidDescriptor("fl-sp needs field 'R' or 'C'")
        if self.spectrum is not None:
            self.spectrum = tuple(self.spectrum)

    @property
    def parts(self) -> tuple[int, ...]:
        """Flag block sizes n_i = k_i - k_{i-1} including the tail block."""
        ks = (0,) + self.ks + (self.n,)
        return tuple(ks[i + 1] - ks[i] for i in range(len(ks) - 1))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "ks": list(self.ks) if self.ks else None,
            "p": self.p,
            "pq": list(self.pq) if self.pq else None,
            "sizes": list(self.sizes) if self.sizes else None,
            "field": self.field,
            "spectrum": None if self.spectrum is None else [float(s) for s in self.spectrum],
        }


@dataclass
class EmbeddedPoint:
    manifold: ManifoldDescriptor
    value: np.ndarray
    module: ModuleDescriptor

    def to_json(self) -> dict:
        field = COMPLEX if np.iscomplexobj(self.value) else REAL
        return {
            "manifold": self.manifold.to_json(),
            "value": mat_to_json(self.value, field),
            "module": self.module.to_json(),
            # the realization is valid at any size; only the optimality of
            # the target dimension needs the family threshold
            "minimality_advisory": minimality_advisory(self.manifold),
        }


def group(md: ManifoldDescriptor) -> G.GroupDescriptor:
    f, n = md.family, md.n
    if f in ("gr-real", "igr", "fl-real", "stiefel-real"):
        return G.so(n)
    if f in ("gr-complex", "fl-complex", "slgr", "stiefel-complex"):
        return G.su(n)
    if f == "slgr-star-h":
        return G.su(2 * n)
    if f in ("sogr-c", "ifl-even"):
        return G.so(2 * n)
    if f == "ifl-odd":
        return G.so(2 * n + md.p)
    if f == "gr-complex-locus":
        return G.so(n, COMPLEX)
    if f in ("gr-quaternionic", "fl-quaternionic", "lgr-c", "lfl", "stiefel-quaternionic"):
        return G.sp_compact(2 * n)
    if f == "gr-sp-real":
        return G.sp(2 * n, REAL)
    if f == "gr-sp-complex":
        return G.sp(2 * n, COMPLEX)
    if f == "fl-sp":
        return G.sp(2 * n, md.field)
    if f == "gr-indefinite":
        mm, nn = md.sizes
        return G.so_pq(mm, nn)
    if f == "st-noncompact-real":
        return G.sl(n, REAL)
    if f == "st-noncompact-complex":
        return G.sl(n, COMPLEX)
    raise InvalidDescriptor(f)


def module(md: ManifoldDescriptor) -> ModuleDescriptor:
    f, n = md.family, md.n
    if f in ("gr-real", "fl-real"):
        return ModuleDescriptor("Sym2Traceless", n, REAL)
    if f in ("gr-complex", "fl-complex"):
        return ModuleDescriptor("SUAlgebra", n)
    if f in ("gr-quaternionic", "fl-quaternionic"):
        return ModuleDescriptor("SymTracelessCapSU", 2 * n)
    if f == "gr-sp-real":
        return ModuleDescriptor("Sym2TracelessForm", 2 * n, REAL)
    if f in ("gr-sp-complex",):
        return ModuleDescriptor("Sym2TracelessForm", 2 * n, COMPLEX)
    if f == "fl-sp":
        return ModuleDescriptor("Sym2TracelessForm", 2 * n, md.field)
    if f == "gr-complex-locus":
        return ModuleDescriptor("Sym2Traceless", n, COMPLEX)
    if f == "slgr":
        return ModuleDescriptor("Sym2", n, COMPLEX)
    if f in ("lgr-c", "lfl"):
        return ModuleDescriptor("SpAlgebra", 2 * n)
    if f == "slgr-star-h":
        return ModuleDescriptor("Alt2", 2 * n, COMPLEX)
    if f in ("sogr-c", "ifl-even"):
        return ModuleDescriptor("Alt2", 2 * n, REAL)
    if f == "ifl-odd":
        return ModuleDescriptor("Alt2", 2 * n + md.p, REAL)
    if f == "igr":
        return ModuleDescriptor("Alt2", n, REAL)
    if f == "gr-indefinite":
        mm, nn = md.sizes
        return ModuleDescriptor("Sym2Traceless", mm + nn, REAL, form=G.Ipq(mm, nn))
    if f == "st-noncompact-real":
        return ModuleDescriptor("RectNK", n, REAL, k=md.k)
    if f == "st-noncompact-complex":
        return ModuleDescriptor("RectNK", n, COMPLEX, k=md.k)
    if f == "stiefel-real":
        return ModuleDescriptor("RectNK", n, REAL, k=md.k)
    if f == "stiefel-complex":
        return ModuleDescriptor("RectNK", n, COMPLEX, k=md.k)
    if f == "stiefel-quaternionic":
        return ModuleDescriptor("RectNK", 2 * n, COMPLEX, k=2 * md.k)
    raise InvalidDescriptor(f)


def action(md: ManifoldDescriptor) -> ActionKind:
    f = md.family
    if f in _STIEFEL:
        return ActionKind.LEFT_MULT
    if f in ("gr-sp-real", "gr-sp-complex", "fl-sp", "gr-indefinite"):
        return ActionKind.SIMILARITY
    if f in ("gr-complex", "fl-complex", "gr-quaternionic", "fl-quaternionic", "lgr-c", "lfl"):
        return ActionKind.CONGRUENCE_STAR
    return ActionKind.CONGRUENCE


def default_spectrum(md: ManifoldDescriptor) -> tuple:
    f = md.family
    if f in _TWO_BLOCK:
        n, k = md.n, md.k
        return (float(n - k), float(-k))
    if f == "igr":
        return (1.0,)
    if f == "lgr-c":
        return (1.0,)
    if f == "gr-indefinite":
        p, q = md.pq
        mm, nn = md.sizes
        return (float(mm + nn - p - q), float(-(p + q)))
    if f in ("ifl-even", "ifl-odd", "lfl"):
        # the trace vanishes automatically; what matters is that the
        # magnitudes are distinct and nonzero
        m1 = len(md.parts)
        return tuple(float(m1 - i) for i in range(m1))
    if f in _FLAG:
        parts = md.parts
        m1 = len(parts)
        c = [m1 - i for i in range(m1)]
        s = sum(ni * ci for ni, ci in zip(parts, c))
        return tuple(float(md.n * ci - s) for ci in c)
    return ()


def _validate_spectrum(md: ManifoldDescriptor, spec: tuple) -> None:
    f = md.family
    if f in _TWO_BLOCK:
        lam, mu = spec
        if lam == mu or md.k * lam + (md.n - md.k) * mu != 0:
            raise InvalidSpectrum("need lambda != mu with k*lambda + (n-k)*mu = 0")
    elif f == "gr-indefinite":
        lam, mu = spec
        p, q = md.pq
        mm, nn = md.sizes
        if lam == mu or (p + q) * lam + (mm + nn - p - q) * mu != 0:
            raise InvalidSpectrum("need lambda' != mu' with weighted sum zero")
    elif f == "igr":
        if spec[0] == 0:
            raise InvalidSpectrum("igr needs a nonzero lambda")
    elif f == "lgr-c":
        if spec[0] == 0:
            raise InvalidSpectrum("lgr needs a nonzero value")
    elif f in ("ifl-even", "ifl-odd", "lfl"):
        if len(spec) != len(md.parts):
            raise InvalidSpectrum("one value per flag block")
        if len({abs(s) for s in spec}) != len(spec) or any(s == 0 for s in spec):
            raise InvalidSpectrum("flag values must be nonzero with distinct magnitudes")
    elif f in _FLAG:
        parts = md.parts
        if len(spec) != len(parts):
            raise InvalidSpectrum("one value per flag block")
        if len(set(spec)) != len(spec):
            raise InvalidSpectrum("flag values must be distinct")
        if sum(ni * si for ni, si in zip(parts, spec)) != 0:
            raise InvalidSpectrum("weighted sum of flag values must vanish")


def _two_block_diag(lam, mu, k, n):
    return np.diag([lam] * k + [mu] * (n - k))


def _flag_diag(parts, spec):
    vals = []
    for ni, si in zip(parts, spec):
        vals.extend([si] * ni)
    return np.diag(vals)


def _skew_flag(parts, spec):
    n2 = 2 * sum(parts)
    out = np.zeros((n2, n2))
    pos = 0
    for ni, mi in zip(parts, spec):
        out[pos : pos + 2 * ni, pos : pos + 2 * ni] = mi * G.J2n(2 * ni)
        pos += 2 * ni
    return out


def base_point(md: ManifoldDescriptor) -> EmbeddedPoint:
    """The canonical point of the orbit, at group element = identity."""
    spec = md.spectrum if md.spectrum is not None else default_spectrum(md)
    _validate_spectrum(md, spec)
    f, n = md.family, md.n
    mod = module(md)
    if f in ("gr-real", "gr-complex-locus"):
        X = _two_block_diag(spec[0], spec[1], md.k, n)
        if f == "gr-complex-locus":
            X = X.astype(complex)
    elif f == "gr-complex":
        X = 1j * _two_block_diag(spec[0], spec[1], md.k, n)
    elif f == "gr-quaternionic":
        half = _two_block_diag(spec[0], spec[1], md.k, n)
        X = 1j * np.block([[half, np.zeros((n, n))], [np.zeros((n, n)), half]])
    elif f in ("gr-sp-real", "gr-sp-complex"):
        half = _two_block_diag(spec[0], spec[1], md.k, n)
        X = np.block([[half, np.zeros((n, n))], [np.zeros((n, n)), half]])
        if f == "gr-sp-complex":
            X = X.astype(complex)
    elif f == "slgr":
        X = np.eye(n, dtype=complex)
    elif f == "lgr-c":
        X = 1j * spec[0] * _two_block_diag(1.0, -1.0, n, 2 * n)
    elif f == "slgr-star-h":
        X = G.J2n(2 * n).astype(complex)
    elif f == "sogr-c":
        X = G.J2n(2 * n)
    elif f == "igr":
        X = np.zeros((n, n))
        X[: 2 * md.k, : 2 * md.k] = spec[0] * G.J2n(2 * md.k)
    elif f == "gr-indefinite":
        p, q = md.pq
        mm, nn = md.sizes
        X = np.diag([spec[0]] * p + [spec[1]] * (mm - p) + [spec[0]] * q + [spec[1]] * (nn - q))
    elif f == "fl-real":
        X = _flag_diag(md.parts, spec)
    elif f == "fl-complex":
        X = 1j * _flag_diag(md.parts, spec)
    elif f == "fl-quaternionic":
        half = _flag_diag(md.parts, spec)
        X = 1j * np.block([[half, np.zeros((n, n))], [np.zeros((n, n)), half]])
    elif f == "fl-sp":
        half = _flag_diag(md.parts, spec)
        X = np.block([[half, np.zeros((n, n))], [np.zeros((n, n)), half]])
        if md.field == COMPLEX:
            X = X.astype(complex)
    elif f == "lfl":
        half = _flag_diag(md.parts, spec)
        X = 1j * np.block([[half, np.zeros((n, n))], [np.zeros((n, n)), -half]])
    elif f == "ifl-even":
        X = _skew_flag(md.parts, spec)
    elif f == "ifl-odd":
        core = _skew_flag(md.parts, spec)
        X = np.zeros((2 * n + md.p, 2 * n + md.p))
        X[: 2 * n, : 2 * n] = core
    elif f == "stiefel-quaternionic":
        # k quaternionic coordinate lines: columns e_1..e_k, e_{n+1}..e_{n+k},
        # so the stabilizer is the symplectic group of the complement
        k = md.k
        X = np.zeros((2 * n, 2 * k), dtype=complex)
        X[:k, :k] = np.eye(k)
        X[n : n + k, k:] = np.eye(k)
    elif f in _STIEFEL:
        rows, cols = mod.shape
        X = np.zeros((rows, cols), dtype=complex if mod.field == COMPLEX else float)
        X[:cols, :cols] = np.eye(cols)
    else:
        raise InvalidDescriptor(f)
    if mod.kind != "RectNK":
        assert module_contains(mod, X), f"base point of {f} escapes its module"
    return EmbeddedPoint(manifold=md, value=X, module=mod)


def embed(md: ManifoldDescriptor, g: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> EmbeddedPoint:
    """Image of a group element: the action applied to the base point."""
    gp = group(md)
    if not G.contains(gp, g, tol):
        raise NotInGroup(f"element is not in the acting group of {md.family}")
    base = base_point(md)
    val = act(gp, action(md), g, base.value, module=base.module, tol=tol, check=False)
    if base.module.kind != "RectNK" and not module_contains(base.module, val, tol):
        raise SizeMismatch("image escaped the module; input is likely far from the group")
    return EmbeddedPoint(manifold=md, value=val, module=base.module)


def lift_subspace(md: ManifoldDescriptor, Y: np.ndarray) -> np.ndarray:
    """Complete an n x k basis matrix to an element of the acting group.

    Supported for the rows acting on R^n or C^n by left multiplication or
    two-block congruence (gr-real, gr-complex, stiefel-*, st-noncompact-*).
    For Grassmann rows the columns of Y span the plane; for Stiefel rows Y
    is the frame itself (orthonormal for the compact rows) and reappears
    verbatim as the first k columns of the lift.  The completion is by full
    QR with a determinant fix on a later column, so it needs k < n for the
    special/compact groups.
    """
    f = md.family
    if f not in ("gr-real", "gr-complex", "stiefel-real", "stiefel-complex",
                 "st-noncompact-real", "st-noncompact-complex"):
        raise InvalidDescriptor(f"no subspace lift for {f}")
    gp = group(md)
    n, k = gp.n, md.k
    dt = complex if gp.field == COMPLEX else float
    Y = np.asarray(Y).astype(dt)
    if Y.shape != (n, k):
        raise SizeMismatch(f"expected {n} x {k}")
    if np.linalg.matrix_rank(Y) != k:
        raise SizeMismatch("basis matrix must have full column rank")

    if f.startswith("stiefel"):
        if frob(Y.conj().T @ Y - np.eye(k)) > 1e-8:
            raise SizeMismatch("compact Stiefel frames must be orthonormal")
    Q, _ = np.linalg.qr(Y)  # orthonormal basis of col(Y); equals Y when orthonormal
    first = Y if (f.startswith("stiefel") or f.startswith("st-noncompact")) else Q
    comp = scipy.linalg.null_space(Q.conj().T) if n > k else np.zeros((n, 0), dtype=dt)
    A = np.concatenate([first, comp.astype(dt)], axis=1)

    det = np.linalg.det(A)
    if f.startswith("st-noncompact"):
        if k == n:
            if abs(det - 1.0) > 1e-8:
                raise NotInGroup("a full frame must already have determinant one")
            return A
        A[:, -1] = A[:, -1] / det
        return A
    # orthogonal / unitary completion
    if k == n:
        if abs(det - 1.0) > 1e-8:
            raise NotInGroup("a full frame must already have determinant one")
        return A
    if gp.field == REAL:
        if det < 0:
            A[:, -1] = -A[:, -1]
    else:
        A[:, -1] = A[:, -1] / det
    return A


def check_equivariance(md: ManifoldDescriptor, trials: int, seed: int) -> float:
    """Max relative residual of image(g1 g2) against g1 . image(g2)."""
    if trials < 1:
        raise InvalidDescriptor("need at least one trial")
    gp = group(md)
    base = base_point(md)
    kind = action(md)
    worst = 0.0
    for t in range(trials):
        g1 = G.sample(gp, seed + 2 * t)
        g2 = G.sample(gp, seed + 2 * t + 1)
        img2 = act(gp, kind, g2, base.value, check=False)
        lhs = act(gp, kind, g1 @ g2, base.value, check=False)
        rhs = act(gp, kind, g1, img2, check=False)
        worst = max(worst, frob(lhs - rhs) / max(frob(img2), 1e-300))
    return worst


def tangent_dim(md: ManifoldDescriptor) -> int:
    """Rank of the infinitesimal action at the base point."""
    gp = group(md)
    base = base_point(md)
    stab = stabilizer_dim_in_group(gp, base.module, action(md), base.value)
    return G.group_dim(gp) - stab


def mp_dimension(md: ManifoldDescriptor) -> int:
    """Least possible target dimension for the family (its closed form)."""
    f, n, k = md.family, md.n, md.k
    if f in ("gr-real", "gr-complex-locus", "fl-real"):
        return (n + 2) * (n - 1) // 2
    if f in ("gr-complex", "fl-complex"):
        return n * n - 1
    if f in ("gr-quaternionic", "gr-sp-real", "gr-sp-complex", "fl-sp", "fl-quaternionic"):
        return (n - 1) * (2 * n + 1)
    if f == "slgr":
        return n * (n + 1) // 2
    if f in ("lgr-c", "lfl"):
        return 2 * n * n + n
    if f in ("slgr-star-h", "sogr-c", "ifl-even"):
        return n * (2 * n - 1)
    if f == "igr":
        return n * (n - 1) // 2
    if f == "ifl-odd":
        N = 2 * n + md.p
        return N * (N - 1) // 2
    if f == "gr-indefinite":
        N = sum(md.sizes)
        return (N + 2) * (N - 1) // 2
    if f in ("st-noncompact-real", "st-noncompact-complex", "stiefel-real", "stiefel-complex"):
        return n * k
    if f == "stiefel-quaternionic":
        return 4 * n * k
    raise InvalidDescriptor(f)


def minimality_advisory(md: ManifoldDescriptor) -> bool:
    """True when the size is below the range where minimality is proved."""
    gp = group(md)
    if gp.family in ("SL", "SU"):
        return gp.n < 9
    if gp.family in ("SO", "SOpq"):
        return gp.n < 19
    return gp.n < 10  # symplectic rows: rank below 5


def on_orbit(md: ManifoldDescriptor, X: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether X carries the spectral/rank signature of the family's orbit."""
    base = base_point(md)
    mod = base.module
    if mod.kind != "RectNK" and not module_contains(mod, X, tol):
        return False
    f = md.family
    atol = tol.cutoff(max(frob(base.value), 1.0))
    if f in _STIEFEL:
        k = X.shape[1]
        if f == "stiefel-quaternionic":
            Xc = np.asarray(X, dtype=complex)
            J = G.J2n(X.shape[0]).astype(complex)
            return (
                frob(Xc.conj().T @ Xc - np.eye(k)) <= atol
                and frob(Xc.T @ J @ Xc - G.J2n(k)) <= atol
            )
        if f in ("stiefel-real", "stiefel-complex"):
            return frob(np.asarray(X).conj().T @ X - np.eye(k)) <= atol
        if np.linalg.matrix_rank(np.asarray(X)) < k:
            return False
        if k == X.shape[0]:
            return abs(np.linalg.det(np.asarray(X)) - 1.0) <= atol
        return True
    if f in ("slgr", "slgr-star-h"):
        s = np.linalg.svd(np.asarray(X, dtype=complex), compute_uv=False)
        s0 = np.linalg.svd(np.asarray(base.value, dtype=complex), compute_uv=False)
        return np.allclose(s, s0, atol=atol)
    if action(md) == ActionKind.CONGRUENCE_STAR:
        ev = np.sort(np.linalg.eigvalsh(-1j * np.asarray(X, dtype=complex)))
        ev0 = np.sort(np.linalg.eigvalsh(-1j * np.asarray(base.value, dtype=complex)))
        return np.allclose(ev, ev0, atol=atol)
    ev = np.linalg.eigvals(np.asarray(X, dtype=complex))
    ev0 = np.linalg.eigvals(np.asarray(base.value, dtype=complex))
    return _multiset_close(ev, ev0, max(atol, 1e-7 * max(frob(base.value), 1.0)))


def _multiset_close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Greedy matching of two complex multisets within tol."""
    if len(a) != len(b):
        return False
    remaining = list(b)
    for z in a:
        dists = [abs(z - w) for w in remaining]
        j = int(np.argmin(dists))
        if dists[j] > tol:
            return False
        remaining.pop(j)
    return True


def smallest_legal(family: str) -> ManifoldDescriptor:
    """The smallest parameter set on which the family is well defined."""
    table = {
        "gr-real": dict(n=4, k=2),
        "gr-complex": dict(n=3, k=1),
        "gr-quaternionic": dict(n=2, k=1),
        "gr-sp-real": dict(n=2, k=1),
        "gr-sp-complex": dict(n=2, k=1),
        "gr-complex-locus": dict(n=3, k=1),
        "slgr": dict(n=2),
        "lgr-c": dict(n=2),
        "slgr-star-h": dict(n=2),
        "sogr-c": dict(n=2),
        "igr": dict(n=5, k=2),
        "gr-indefinite": dict(n=2, pq=(1, 1), sizes=(2, 2)),
        "fl-real": dict(n=4, ks=(1, 2)),
        "fl-complex": dict(n=3, ks=(1, 2)),
        "fl-quaternionic": dict(n=3, ks=(1, 2)),
        "ifl-even": dict(n=3, ks=(1, 2)),
        "ifl-odd": dict(n=2, ks=(1,), p=1),
        "fl-sp": dict(n=3, ks=(1, 2), field=REAL),
        "lfl": dict(n=3, ks=(1, 2)),
        "st-noncompact-real": dict(n=3, k=2),
        "st-noncompact-complex": dict(n=3, k=2),
        "stiefel-real": dict(n=4, k=2),
        "stiefel-complex": dict(n=3, k=2),
        "stiefel-quaternionic": dict(n=2, k=1),
    }
    return ManifoldDescriptor(family=family, **table[family])


def all_smallest_legal() -> list[ManifoldDescriptor]:
    """The full family sweep (fl-sp appears once per field)."""
    out = []
    for fam in FAMILIES:
        md = smallest_legal(fam)
        out.append(md)
        if fam == "fl-sp":
            out.append(replace(md, field=COMPLEX))
    return out


# ---------------------------------------------------------------------------
# Cartan embeddings of the classical symmetric spaces


CARTAN_TYPES = ("AI", "AII", "AIII", "BDI", "DIII", "CI", "CII")


@dataclass
class CartanComparison:
    ctype: str
    params: dict
    identical: bool
    right_factor: np.ndarray | None
    residual: float

    def to_json(self) -> dict:
        return {
            "type": self.ctype,
            "params": self.params,
            "identical": self.identical,
            "right_factor": None if self.identical else mat_to_json(self.right_factor, COMPLEX),
            "residual": self.residual,
        }


def _cartan_maps(ctype: str, n: int, k: int | None):
    """(group, cartan map, aligned minimal map) for a symmetric-space type.

    The minimal map is the matching orbit map with its base point chosen in
    the same orbit so that a constant right factor can exist at all; for CI
    that representative is -J (same +-i spectrum as i*diag(I, -I)), and for
    CII the involution is the quaternion-compatible diag(I_k, -I_{n-k},
    I_k, -I_{n-k}).
    """
    if ctype == "AI":
        gp = G.su(n)
        return gp, (lambda Q: Q @ Q.T), (lambda Q: Q @ Q.T)
    if ctype == "AII":
        gp = G.su(2 * n)
        J = G.J2n(2 * n).astype(complex)
        return gp, (lambda Q: Q @ J @ Q.T @ J.T), (lambda Q: Q @ J @ Q.T)
    if ctype == "AIII":
        if k is None:
            raise InvalidDescriptor("AIII needs k")
        gp = G.su(n)
        D = _two_block_diag(1.0, -1.0, k, n).astype(complex)
        return gp, (lambda Q: Q @ (1j * D) @ Q.conj().T @ D), (lambda Q: 1j * Q @ D @ Q.conj().T)
    if ctype == "BDI":
        if k is None:
            raise InvalidDescriptor("BDI needs k")
        gp = G.so(n)
        D = _two_block_diag(1.0, -1.0, k, n)
        return gp, (lambda Q: Q @ D @ Q.T @ D), (lambda Q: Q @ D @ Q.T)
    if ctype == "DIII":
        gp = G.so(2 * n)
        J = G.J2n(2 * n)
        return gp, (lambda Q: Q @ J @ Q.T @ J.T), (lambda Q: Q @ J @ Q.T)
    if ctype == "CI":
        gp = G.sp_compact(2 * n)
        J = G.J2n(2 * n).astype(complex)
        return gp, (lambda Q: Q @ J @ Q.conj().T @ J.T), (lambda Q: Q @ (-J) @ Q.conj().T)
    if ctype == "CII":
        if k is None:
            raise InvalidDescriptor("CII needs k")
        gp = G.sp_compact(2 * n)
        half = _two_block_diag(1.0, -1.0, k, n)
        D = np.block(
            [[half, np.zeros((n, n))], [np.zeros((n, n)), half]]
        ).astype(complex)
        return gp, (lambda Q: Q @ D @ Q.conj().T @ D), (lambda Q: 1j * Q @ D @ Q.conj().T)
    raise InvalidDescriptor(f"unknown symmetric-space type {ctype!r}")


def cartan_compare(
    ctype: str,
    n: int,
    k: int | None = None,
    trials: int = 20,
    seed: int = 0,
    tol: float = 1e-8,
) -> CartanComparison:
    """Compare the Cartan embedding with the matching orbit realization.

    Samples group elements and solves for the constant invertible C with
    cartan(Q) = minimal(Q) C, verifying it across all trials.  Raises
    :class:`NoConstantFactor` when the relation fails.
    """
    gp, cartan, minimal = _cartan_maps(ctype, n, k)
    samples = [G.sample(gp, seed + t) for t in range(max(trials, 2))]
    C = np.linalg.solve(minimal(samples[0]), cartan(samples[0]))
    worst = 0.0
    for Q in samples:
        lhs = cartan(Q)
        rhs = minimal(Q) @ C
        worst = max(worst, frob(lhs - rhs) / max(frob(lhs), 1e-300))
    if worst > tol:
        raise NoConstantFactor(
            f"type {ctype}: residual {worst:.3e} exceeds {tol:g}; no constant right factor"
        )
    identical = frob(C - np.eye(C.shape[0])) <= 1e-8
    return CartanComparison(
        ctype=ctype,
        params={"n": n, "k": k},
        identical=identical,
        right_factor=None if identical else C,
        residual=worst,
    )
