"""Matrix modules and the multiplication actions on them.

Each :class:`ModuleDescriptor` names a linear subspace of F^{n x n} (or the
rectangular slab F^{n x k}) cut out by transpose/adjoint conditions against
a bilinear form, optionally with a trace constraint.  ``module_dim`` reports
the dimension over the descriptor's field: complex kinds over C, and the
real-structure kinds (su_n, u_n, traceless Hermitian, compact sp, and the
symmetric-traceless slice of su) over R, since those are only real-linear
subspaces of complex matrices.

``Alt^k`` for k >= 3 is carried for its dimension formula only; no
membership, projection, or action is defined for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import InvalidDescriptor, ModuleNotPreserved, NotInGroup, SizeMismatch
from .groups import GroupDescriptor, J2n, contains as group_contains, real_condition_nullspace
from .numkit import COMPLEX, DEFAULT_TOL, REAL, Tolerance, frob, mat_from_json, mat_to_json

TRIVIAL = "Trivial"
RECT_NK = "RectNK"
ALT2 = "Alt2"
SYM2 = "Sym2"
SYM2_TRACELESS = "Sym2Traceless"
SLN_TRACELESS = "SLnTraceless"
SU_ALGEBRA = "SUAlgebra"
U_ALGEBRA = "UAlgebra"
HERM_TRACELESS = "HermTraceless"
ALT2_FORM = "Alt2Form"
SYM2_TRACELESS_FORM = "Sym2TracelessForm"
SP_ALGEBRA = "SpAlgebra"
SYM_TRACELESS_CAP_SU = "SymTracelessCapSU"
ALT_K = "AltK"

#: kinds that are complex matrices but only real-linear subspaces
_REAL_STRUCTURE = {SU_ALGEBRA, U_ALGEBRA, HERM_TRACELESS, SP_ALGEBRA, SYM_TRACELESS_CAP_SU}
#: kinds whose optional form must be skew (ambient size even)
_SKEW_FORM_KINDS = {ALT2_FORM, SYM2_TRACELESS_FORM, SP_ALGEBRA, SYM_TRACELESS_CAP_SU}


class ActionKind(Enum):
    LEFT_MULT = "left-mult"
    RIGHT_MULT_INV = "right-mult-inv"
    EQUIVALENCE = "equivalence"
    CONGRUENCE = "congruence"
    SIMILARITY = "similarity"
    CONGRUENCE_STAR = "congruence-star"


@dataclass(eq=False)
class ModuleDescriptor:
    kind: str
    n: int
    field: str = REAL
    k: int | None = None
    form: np.ndarray | None = None

    def __post_init__(self):
        if self.kind in _REAL_STRUCTURE:
            self.field = REAL  # dimensions are counted over R
        if self.field not in (REAL, COMPLEX):
            raise InvalidDescriptor(f"unknown field {self.field!r}")
        if self.kind in (RECT_NK, ALT_K):
            if self.k is None or not (0 < self.k <= self.n):
                raise InvalidDescriptor(f"{self.kind} needs 0 < k <= n")
        elif self.k is not None:
            raise InvalidDescriptor(f"{self.kind} takes no k")
        if self.kind in _SKEW_FORM_KINDS and self.n % 2:
            raise InvalidDescriptor(f"{self.kind} needs even ambient size")
        if self.form is not None:
            self.form = np.asarray(self.form, dtype=complex if self._complex_entries else float)
            if self.form.shape != (self.n, self.n):
                raise InvalidDescriptor("form has wrong size")
            skewish = self.kind in _SKEW_FORM_KINDS
            defect = frob(self.form + (1 if skewish else -1) * self.form.T)
            if defect > 1e-12 * max(frob(self.form), 1.0):
                raise InvalidDescriptor("form has the wrong symmetry for this kind")
            if np.linalg.matrix_rank(self.form) < self.n:
                raise InvalidDescriptor("form must be nondegenerate")

    @property
    def _complex_entries(self) -> bool:
        return self.field == COMPLEX or self.kind in _REAL_STRUCTURE

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.k) if self.kind == RECT_NK else (self.n, self.n)

    def form_matrix(self) -> np.ndarray:
        if self.form is not None:
            return self.form
        dt = complex if self._complex_entries else float
        if self.kind in _SKEW_FORM_KINDS:
            return J2n(self.n).astype(dt)
        return np.eye(self.n, dtype=dt)

    def cache_key(self):
        fk = None if self.form is None else self.form.tobytes()
        return (self.kind, self.n, self.field, self.k, fk)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "field": self.field,
            "k": self.k,
            "form": None if self.form is None else mat_to_json(self.form),
        }

    @staticmethod
    def from_json(obj: dict) -> "ModuleDescriptor":
        return ModuleDescriptor(
            kind=obj["kind"],
            n=int(obj["n"]),
            field=obj.get("field", REAL),
            k=obj.get("k"),
            form=None if obj.get("form") is None else mat_from_json(obj["form"]),
        )


def module_dim(m: ModuleDescriptor) -> int:
    n = m.n
    half = n // 2
    table = {
        TRIVIAL: 1,
        RECT_NK: n * (m.k or 0),
        ALT2: n * (n - 1) // 2,
        SYM2: n * (n + 1) // 2,
        SYM2_TRACELESS: (n + 2) * (n - 1) // 2,
        SLN_TRACELESS: n * n - 1,
        SU_ALGEBRA: n * n - 1,
        U_ALGEBRA: n * n,
        HERM_TRACELESS: n * n - 1,
        ALT2_FORM: n * (n + 1) // 2,
        SYM2_TRACELESS_FORM: (half - 1) * (2 * half + 1),
        SP_ALGEBRA: 2 * half * half + half,
        SYM_TRACELESS_CAP_SU: (half - 1) * (2 * half + 1),
        ALT_K: math.comb(n, m.k or 0),
    }
    if m.kind not in table:
        raise InvalidDescriptor(f"unknown module kind {m.kind!r}")
    return table[m.kind]


def _conditions(m: ModuleDescriptor):
    """Residual maps that vanish exactly on the module."""
    F = m.form_matrix()
    conds = []
    if m.kind == ALT2:
        conds.append(lambda X: X.T @ F + F @ X)
    elif m.kind in (SYM2, SYM2_TRACELESS):
        conds.append(lambda X: X.T @ F - F @ X)
    elif m.kind == ALT2_FORM:
        conds.append(lambda X: X.T @ F + F @ X)
    elif m.kind == SYM2_TRACELESS_FORM:
        conds.append(lambda X: X.T @ F - F @ X)
    elif m.kind == SU_ALGEBRA:
        conds.append(lambda X: X.conj().T + X)
    elif m.kind == U_ALGEBRA:
        conds.append(lambda X: X.conj().T + X)
    elif m.kind == HERM_TRACELESS:
        conds.append(lambda X: X.conj().T - X)
    elif m.kind == SP_ALGEBRA:
        conds.append(lambda X: X.conj().T + X)
        conds.append(lambda X: X.T @ F + F @ X)
    elif m.kind == SYM_TRACELESS_CAP_SU:
        conds.append(lambda X: X.conj().T + X)
        conds.append(lambda X: X.T @ F - F @ X)
    elif m.kind == SLN_TRACELESS:
        pass
    elif m.kind == RECT_NK:
        return []
    else:
        raise InvalidDescriptor(f"{m.kind} has no membership conditions")
    if m.kind in (SYM2_TRACELESS, SYM2_TRACELESS_FORM, SLN_TRACELESS, SU_ALGEBRA,
                  HERM_TRACELESS, SP_ALGEBRA, SYM_TRACELESS_CAP_SU):
        conds.append(lambda X: np.atleast_2d(np.trace(X)))
    return conds


def contains(m: ModuleDescriptor, X: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    if m.kind in (TRIVIAL, ALT_K):
        raise InvalidDescriptor(f"{m.kind} supports no membership test")
    X = np.asarray(X)
    if X.shape != m.shape:
        raise SizeMismatch(f"expected shape {m.shape}, got {X.shape}")
    Xc = X.astype(complex)
    if not m._complex_entries and np.abs(Xc.imag).max(initial=0.0) > tol.abs_eps:
        return False
    if m.kind == RECT_NK:
        return True
    bound = tol.cutoff(max(frob(Xc), 1.0))
    return all(frob(np.asarray(c(Xc))) <= bound for c in _conditions(m))


_basis_cache: dict[tuple, np.ndarray] = {}


def basis(m: ModuleDescriptor) -> list[np.ndarray]:
    """Orthonormal basis of the module under the (real) Frobenius pairing."""
    key = m.cache_key()
    if key not in _basis_cache:
        if m.kind in (TRIVIAL, ALT_K):
            raise InvalidDescriptor(f"{m.kind} has no matrix basis")
        n = m.n
        if m.kind == RECT_NK:
            k = m.k
            out = []
            for i in range(n):
                for j in range(k):
                    E = np.zeros((n, k), dtype=complex if m.field == COMPLEX else float)
                    E[i, j] = 1.0
                    out.append(E)
                    if m.field == COMPLEX:
                        out.append(1j * E)
            _basis_cache[key] = out
            return out
        conds = _conditions(m)
        if m.field == COMPLEX and m.kind not in _REAL_STRUCTURE:
            # complex-linear conditions: solve over C directly
            cols = []
            for t in range(n * n):
                E = np.zeros((n, n), dtype=complex)
                E[t // n, t % n] = 1.0
                cols.append(np.concatenate([np.asarray(c(E)).ravel() for c in conds]))
            A = np.array(cols).T
            ns = scipy.linalg.null_space(A, rcond=1e-11)
            out = [v.reshape(n, n) for v in ns.T]
        else:
            out = real_condition_nullspace(n, conds, include_imaginary=m._complex_entries)
            if not m._complex_entries:
                out = [b.real for b in out]
        _basis_cache[key] = out
    return _basis_cache[key]


def project(m: ModuleDescriptor, X: np.ndarray) -> np.ndarray:
    """Frobenius-orthogonal projection of X onto the module."""
    X = np.asarray(X)
    if X.shape != m.shape:
        raise SizeMismatch(f"expected shape {m.shape}, got {X.shape}")
    if m.kind == RECT_NK:
        if m.field == REAL:
            return np.asarray(X, dtype=float)
        return np.asarray(X, dtype=complex)
    Xc = X.astype(complex)
    out = np.zeros_like(Xc)
    complex_linear = m.field == COMPLEX and m.kind not in _REAL_STRUCTURE
    for b in basis(m):
        bc = b.astype(complex)
        coef = np.vdot(bc, Xc)
        if not complex_linear:
            coef = coef.real
        out = out + coef * bc
    if not m._complex_entries:
        return out.real
    return out


def real_dim(m: ModuleDescriptor) -> int:
    """Dimension over R (doubles the complex-linear kinds)."""
    d = module_dim(m)
    return 2 * d if (m.field == COMPLEX and m.kind not in _REAL_STRUCTURE) else d


def dact(action: ActionKind, Z: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Derivative of the action at the identity: d/dt act(exp(tZ), X) at 0."""
    if action == ActionKind.LEFT_MULT:
        return Z @ X
    if action == ActionKind.RIGHT_MULT_INV:
        return -X @ Z
    if action == ActionKind.CONGRUENCE:
        return Z @ X + X @ Z.T
    if action == ActionKind.CONGRUENCE_STAR:
        return Z @ X + X @ Z.conj().T
    if action in (ActionKind.SIMILARITY, ActionKind.EQUIVALENCE):
        return Z @ X - X @ Z
    raise InvalidDescriptor(f"no infinitesimal action for {action}")


def act(
    g: GroupDescriptor,
    action: ActionKind,
    A,
    X: np.ndarray,
    module: ModuleDescriptor | None = None,
    tol: Tolerance = DEFAULT_TOL,
    check: bool = True,
):
    """Apply a group element to a module point by matrix multiplication.

    ``A`` is a single matrix, except for ``EQUIVALENCE`` which takes a pair
    ``(A1, A2)`` acting by A1 X A2^{-1}.  When ``module`` is supplied the
    result is checked to stay inside it.
    """
    if action == ActionKind.EQUIVALENCE:
        A1, A2 = A
        if check and not (group_contains(g, A1, tol) and group_contains(g, A2, tol)):
            raise NotInGroup("equivalence pair fails the group relations")
        out = A1 @ X @ np.linalg.inv(A2)
    else:
        A = np.asarray(A)
        if check and not group_contains(g, A, tol):
            raise NotInGroup(f"matrix is not in {g.family}_{g.n} to tolerance")
        if action == ActionKind.LEFT_MULT:
            out = A @ X
        elif action == ActionKind.RIGHT_MULT_INV:
            out = X @ np.linalg.inv(A)
        elif action == ActionKind.CONGRUENCE:
            out = A @ X @ A.T
        elif action == ActionKind.CONGRUENCE_STAR:
            out = A @ X @ A.conj().T
        elif action == ActionKind.SIMILARITY:
            out = A @ X @ np.linalg.inv(A)
        else:
            raise InvalidDescriptor(f"unknown action {action}")
    if module is not None and check:
        if not contains(module, _cast_to_module(module, out), tol):
            raise ModuleNotPreserved(f"action moved the point out of {module.kind}")
        out = _cast_to_module(module, out)
    return out


def _cast_to_module(m: ModuleDescriptor, X: np.ndarray) -> np.ndarray:
    if not m._complex_entries and np.iscomplexobj(X):
        if np.abs(X.imag).max(initial=0.0) <= 1e-9 * max(frob(X), 1.0):
            return X.real
    return X
