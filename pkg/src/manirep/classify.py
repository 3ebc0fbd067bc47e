"""Which module sums admit a faithful orbit realization, and minimality sweeps.

For each supported group family there is a short list of low-dimensional
irreducible modules (see :mod:`manirep.weyl`), so a candidate target is
just a tuple of multiplicities.  Admissibility is a single exact rational
inequality equivalent to the total dimension staying within the square
(or four-squares, for symplectic rank) bound; the unitary and compact
symplectic families instead have hard-coded short lists.

``stabilizer_form`` assembles the subgroup realized by a tuple of witness
points, one per module factor: per-factor structured stabilizers plus the
exact dimension of their intersection inside the group.

``minimality_certificate`` checks, for a manifold family, that its target
dimension matches the family's closed form and that no admissible target
of strictly smaller dimension reproduces the stabilizer dimension at
canonical (generic-spectrum) witnesses.  Stabilizer identity is compared
at desk scale only: dimension first, block-structure signature on ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import embeddings as E
from . import groups as G
from .errors import (
    InvalidDescriptor,
    NotMinimalFamily,
    UnsupportedGroup,
    WitnessNotInModule,
)
from .gmodules import (
    ActionKind,
    ModuleDescriptor,
    contains as module_contains,
    module_dim,
    real_dim,
)
from .numkit import (
    COMPLEX,
    DEFAULT_TOL,
    REAL,
    Tolerance,
    mat_to_json,
    numerical_rank,
    takagi,
    youla_blocks,
)
from .stabilizers import (
    intersect_stabilizer_dim,
    stabilizer_congruence_skew,
    stabilizer_congruence_sym,
    stabilizer_left_mult,
    stabilizer_similarity,
)


def classification_family(g: G.GroupDescriptor) -> str:
    if g.family == G.SL:
        return "SL"
    if g.family in (G.SO, G.SOPQ):
        return "SO"
    if g.family == G.SP:
        return "Sp"
    if g.family == G.SU:
        return "SU"
    if g.family == G.SP_COMPACT:
        return "SpC"
    raise UnsupportedGroup(f"no classification for family {g.family!r}")


@dataclass(frozen=True)
class TargetSpec:
    """A candidate module sum for one group, as factor multiplicities.

    SL: (b, c, d, e) copies of the column stack, skew squares, symmetric
    squares, and the adjoint.  SO: (b, c, d) with the traceless symmetric
    square last.  Sp: (b, c, d) = columns, symmetric-traceless (form),
    skew (form) = adjoint.  SU: (a,), the adjoint only.  SpC: (c, d).
    """

    group: G.GroupDescriptor
    multiplicities: tuple[int, ...]

    def modules(self) -> list[ModuleDescriptor]:
        g = self.group
        fam = classification_family(g)
        n = g.n
        out: list[ModuleDescriptor] = []
        if fam == "SL":
            b, c, d, e = self.multiplicities
            if b:
                out.append(ModuleDescriptor("RectNK", n, g.field, k=b))
            out += [ModuleDescriptor("Alt2", n, g.field)] * c
            out += [ModuleDescriptor("Sym2", n, g.field)] * d
            out += [ModuleDescriptor("SLnTraceless", n, g.field)] * e
        elif fam == "SO":
            b, c, d = self.multiplicities
            form = G.Ipq(*g.signature) if g.family == G.SOPQ else None
            fld = REAL if g.family == G.SOPQ else g.field
            if b:
                out.append(ModuleDescriptor("RectNK", n, fld, k=b))
            out += [ModuleDescriptor("Alt2", n, fld, form=form)] * c
            out += [ModuleDescriptor("Sym2Traceless", n, fld, form=form)] * d
        elif fam == "Sp":
            b, c, d = self.multiplicities
            if b:
                out.append(ModuleDescriptor("RectNK", n, g.field, k=b))
            out += [ModuleDescriptor("Sym2TracelessForm", n, g.field)] * c
            out += [ModuleDescriptor("Alt2Form", n, g.field)] * d
        elif fam == "SU":
            (a,) = self.multiplicities
            out += [ModuleDescriptor("SUAlgebra", n)] * a
        elif fam == "SpC":
            c, d = self.multiplicities
            out += [ModuleDescriptor("SymTracelessCapSU", n)] * c
            out += [ModuleDescriptor("SpAlgebra", n)] * d
        return out

    def to_json(self) -> dict:
        fam = classification_family(self.group)
        names = {
            "SL": ("b", "c", "d", "e"),
            "SO": ("b", "c", "d"),
            "Sp": ("b", "c", "d"),
            "SU": ("a",),
            "SpC": ("c", "d"),
        }[fam]
        return {
            "group": self.group.to_json(),
            "multiplicities": dict(zip(names, self.multiplicities)),
        }


@dataclass
class AdmissibilityReport:
    spec: TargetSpec
    admissible: bool
    inequality_value: Fraction
    module_dim_total: int
    modules: list[ModuleDescriptor]

    def to_json(self) -> dict:
        out = self.spec.to_json()
        out.update(
            {
                "admissible": self.admissible,
                "inequality_value": str(self.inequality_value),
                "dim_total": str(self.module_dim_total),
            }
        )
        return out


def _ranges(fam: str, g: G.GroupDescriptor) -> list[range]:
    n = g.n
    if fam == "SL":
        return [range(n + 1), range(3), range(2), range(2)]
    if fam == "SO":
        return [range(n + 1), range(3), range(3)]
    if fam == "Sp":
        return [range(n + 1), range(2), range(2)]
    if fam == "SU":
        return [range(2)]
    if fam == "SpC":
        return [range(2), range(2)]
    raise UnsupportedGroup(fam)


def admissible(spec: TargetSpec) -> AdmissibilityReport:
    """Evaluate the family's admissibility rule exactly over rationals."""
    g = spec.group
    fam = classification_family(g)
    mult = spec.multiplicities
    ranges = _ranges(fam, g)
    if len(mult) != len(ranges):
        raise InvalidDescriptor(f"{fam} expects {len(ranges)} multiplicities")
    in_range = all(m in r for m, r in zip(mult, ranges))
    n = g.n
    mods = spec.modules()
    dim_total = sum(module_dim(m) for m in mods)
    if fam == "SL":
        b, c, d, e = mult
        value = (
            (Fraction(c + d, 2) + e - 1) * n**2
            + (b - Fraction(c, 2) + Fraction(d, 2)) * n
            - e
        )
        ok = in_range and value <= 0
    elif fam == "SO":
        b, c, d = mult
        value = (Fraction(c + d, 2) - 1) * n**2 + (b + Fraction(d - c, 2)) * n - d
        ok = in_range and value <= 0
    elif fam == "Sp":
        b, c, d = mult
        half = n // 2
        value = (c + d - 2) * half**2 + (b - Fraction(c - d, 2)) * half - Fraction(c, 2)
        ok = in_range and value <= 0
    elif fam == "SU":
        (a,) = mult
        value = Fraction(dim_total - n**2)
        ok = a == 1
    else:  # SpC
        c, d = mult
        value = Fraction(dim_total - n**2)
        ok = (c, d) in ((0, 1), (1, 0), (1, 1))
    return AdmissibilityReport(spec, ok, value, dim_total, mods)


def enumerate_admissible(g: G.GroupDescriptor) -> list[AdmissibilityReport]:
    """All admissible multiplicity tuples, by total dimension then lex order."""
    fam = classification_family(g)
    from itertools import product

    out = []
    for mult in product(*_ranges(fam, g)):
        rep = admissible(TargetSpec(g, mult))
        if rep.admissible:
            out.append(rep)
    out.sort(key=lambda r: (r.module_dim_total, r.spec.multiplicities))
    return out


# ---------------------------------------------------------------------------
# stabilizers realized by witness tuples


@dataclass
class CompactBlocks:
    """Block stabilizer of a spectral witness inside a compact group."""

    conjugator: np.ndarray
    sizes: tuple[int, ...]
    flavor: str  # "s-unitary-product" | "unitary-product" | "sp-product"

    @property
    def dim(self) -> int:
        if self.flavor == "s-unitary-product":
            return sum(k * k for k in self.sizes) - 1
        if self.flavor == "unitary-product":
            return sum(k * k for k in self.sizes)
        if self.flavor == "sp-product":
            return sum(2 * k * k + k for k in self.sizes)
        raise InvalidDescriptor(self.flavor)

    def to_json(self) -> dict:
        return {
            "conjugator": mat_to_json(self.conjugator, COMPLEX),
            "sizes": list(self.sizes),
            "flavor": self.flavor,
            "dim": self.dim,
        }


def _group_eigs(vals: np.ndarray, tol: float) -> list[tuple[float, int]]:
    groups: list[tuple[float, int]] = []
    for v in np.sort(vals):
        if groups and abs(v - groups[-1][0]) <= tol:
            lam, k = groups[-1]
            groups[-1] = ((lam * k + v) / (k + 1), k + 1)
        else:
            groups.append((float(v), 1))
    return groups


def factor_stabilizer(module: ModuleDescriptor, X: np.ndarray, group: G.GroupDescriptor,
                      tol: Tolerance = DEFAULT_TOL):
    """Structured stabilizer of one witness, matching the factor's action."""
    kind = module.kind
    if kind == "RectNK":
        return stabilizer_left_mult(X, tol, field=module.field)
    if kind == "Alt2":
        S = X if module.form is None else module.form @ X
        return stabilizer_congruence_skew(S, tol, field=module.field)
    if kind in ("Sym2", "Sym2Traceless"):
        S = X if module.form is None else module.form @ X
        return stabilizer_congruence_sym(S, tol, field=module.field)
    if kind in ("SLnTraceless", "Sym2TracelessForm", "Alt2Form"):
        Z = np.asarray(X, dtype=complex) * 16
        dyadic = bool(np.all(Z == np.round(Z.real) + 1j * np.round(Z.imag)))
        return stabilizer_similarity(X, "exact" if dyadic else "numeric", tol, field=module.field)
    if kind == "SUAlgebra":
        vals, vecs = np.linalg.eigh(-1j * np.asarray(X, dtype=complex))
        sizes = tuple(k for _, k in _group_eigs(vals, tol.cutoff(np.abs(vals).max(initial=1.0))))
        return CompactBlocks(vecs, sizes, "s-unitary-product")
    if kind == "SymTracelessCapSU":
        vals, vecs = np.linalg.eigh(-1j * np.asarray(X, dtype=complex))
        pairs = _group_eigs(vals, tol.cutoff(np.abs(vals).max(initial=1.0)))
        if any(k % 2 for _, k in pairs):
            raise WitnessNotInModule("quaternionic witness spectra must pair up")
        sizes = tuple(k // 2 for _, k in pairs)
        return CompactBlocks(vecs, sizes, "sp-product")
    if kind == "SpAlgebra":
        vals, vecs = np.linalg.eigh(-1j * np.asarray(X, dtype=complex))
        pos = [(lam, k) for lam, k in _group_eigs(vals, tol.cutoff(np.abs(vals).max(initial=1.0))) if lam > 0]
        sizes = tuple(k for _, k in pos)
        return CompactBlocks(vecs, sizes, "unitary-product")
    raise InvalidDescriptor(f"no structured stabilizer for {kind}")


def _factor_action(module: ModuleDescriptor, g: G.GroupDescriptor) -> ActionKind:
    if module.kind == "RectNK":
        return ActionKind.LEFT_MULT
    if module.kind in ("SUAlgebra", "SymTracelessCapSU", "SpAlgebra"):
        return ActionKind.CONGRUENCE_STAR
    if module.kind in ("SLnTraceless", "Sym2TracelessForm", "Alt2Form"):
        return ActionKind.SIMILARITY
    if module.form is not None:
        return ActionKind.SIMILARITY  # twisted congruence of SO_{p,q}
    return ActionKind.CONGRUENCE


@dataclass
class StabilizerFormReport:
    spec: TargetSpec
    factors: list
    h_dim: int

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "h_dim": self.h_dim,
        }


def stabilizer_form(
    spec: TargetSpec, witnesses: list[np.ndarray], tol: Tolerance = DEFAULT_TOL
) -> StabilizerFormReport:
    """Per-factor structured stabilizers and the intersection dimension in G."""
    mods = spec.modules()
    if len(witnesses) != len(mods):
        raise InvalidDescriptor(f"expected {len(mods)} witnesses, got {len(witnesses)}")
    for m, X in zip(mods, witnesses):
        if not module_contains(m, X, tol):
            raise WitnessNotInModule(f"witness is not in {m.kind}")
    factors = [factor_stabilizer(m, X, spec.group, tol) for m, X in zip(mods, witnesses)]
    constraints = [(m, _factor_action(m, spec.group), X) for m, X in zip(mods, witnesses)]
    h_dim = intersect_stabilizer_dim(spec.group, constraints, tol)
    return StabilizerFormReport(spec=spec, factors=factors, h_dim=h_dim)


# ---------------------------------------------------------------------------
# canonical witnesses and the minimality sweep


def canonical_witness(module: ModuleDescriptor) -> np.ndarray:
    """The generic witness of a factor: full rank, all spectral values distinct."""
    n = module.n
    kind = module.kind
    if kind == "RectNK":
        X = np.zeros(module.shape, dtype=complex if module.field == COMPLEX else float)
        X[: module.k, : module.k] = np.eye(module.k)
        return X
    if kind == "Alt2":
        r = n // 2
        S = youla_blocks([float(i) for i in range(r, 0, -1)], n)
        if module.form is not None:
            S = np.linalg.inv(module.form) @ S
        return S.astype(complex if module.field == COMPLEX else float)
    if kind in ("Sym2", "Sym2Traceless"):
        vals = np.arange(1.0, n + 1)
        if kind == "Sym2Traceless":
            vals = vals - vals.mean()
        return np.diag(vals).astype(complex if module.field == COMPLEX else float)
    if kind == "SLnTraceless":
        vals = np.arange(1.0, n + 1)
        vals = vals - vals.mean()
        return np.diag(vals).astype(complex if module.field == COMPLEX else float)
    if kind == "SUAlgebra":
        vals = np.arange(1.0, n + 1)
        return 1j * np.diag(vals - vals.mean())
    if kind == "Sym2TracelessForm":
        half = n // 2
        vals = np.arange(1.0, half + 1)
        vals = vals - vals.mean()
        return np.diag(np.concatenate([vals, vals])).astype(
            complex if module.field == COMPLEX else float
        )
    if kind == "Alt2Form":
        half = n // 2
        vals = np.arange(1.0, half + 1)
        return np.diag(np.concatenate([vals, -vals])).astype(
            complex if module.field == COMPLEX else float
        )
    if kind == "SymTracelessCapSU":
        half = n // 2
        vals = np.arange(1.0, half + 1)
        vals = vals - vals.mean()
        return 1j * np.diag(np.concatenate([vals, vals]))
    if kind == "SpAlgebra":
        half = n // 2
        vals = np.arange(1.0, half + 1)
        return 1j * np.diag(np.concatenate([vals, -vals]))
    raise InvalidDescriptor(f"no canonical witness for {kind}")


def _signature_of_factor(module: ModuleDescriptor, X: np.ndarray) -> tuple:
    """Coarse block signature used to tell stabilizers of equal dimension apart."""
    kind = module.kind
    n = module.n
    if kind == "RectNK":
        return ("stack", module.k)
    if kind == "Alt2":
        S = X if module.form is None else module.form @ X
        r = numerical_rank(np.asarray(S, dtype=complex)) // 2
        return ("skew", r, n - 2 * r)
    if kind in ("Sym2", "Sym2Traceless"):
        S = X if module.form is None else module.form @ X
        if module.field == REAL:
            vals = np.linalg.eigvalsh(np.asarray(S + S.T, dtype=complex).real / 2)
        else:
            _, vals = takagi(np.asarray(S, dtype=complex))
        nz = vals[np.abs(vals) > 1e-9 * max(np.abs(vals).max(initial=0.0), 1.0)]
        mult = tuple(sorted(k for _, k in _group_eigs(nz, 1e-7 * max(np.abs(nz).max(initial=1.0), 1.0))))
        return ("sym", mult, n - len(nz))
    # adjoint-type factors: eigenvalue multiplicity pattern
    vals = np.linalg.eigvals(np.asarray(X, dtype=complex))
    re = np.sort(vals.imag if np.abs(vals.real).max(initial=0.0) < 1e-9 else vals.real)
    mult = tuple(sorted(k for _, k in _group_eigs(re, 1e-7 * max(np.abs(re).max(initial=1.0), 1.0))))
    return ("adjoint", mult)


@dataclass
class MinimalityReport:
    manifold: E.ManifoldDescriptor
    dim_v: int
    mp_dim: int
    h_dim: int
    advisory: bool
    candidates: list[tuple[tuple[int, ...], int, int]]  # (multiplicities, dim_total, stab_dim)
    dim_collisions: list[tuple[int, ...]]
    certified: bool

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold.to_json(),
            "dim_v": self.dim_v,
            "mp_dim": self.mp_dim,
            "h_dim": self.h_dim,
            "advisory": self.advisory,
            "candidates": [
                {"multiplicities": list(m), "dim_total": d, "stab_dim": s}
                for m, d, s in self.candidates
            ],
            "dim_collisions": [list(m) for m in self.dim_collisions],
            "certified": self.certified,
        }


def _comparison_dim(g: G.GroupDescriptor, m: ModuleDescriptor) -> int:
    # complex groups compare complex dimensions, real groups real ones
    return module_dim(m) if g.is_complex_group else real_dim(m)


def minimality_certificate(md: E.ManifoldDescriptor, tol: Tolerance = DEFAULT_TOL) -> MinimalityReport:
    """Desk-scale minimality check for one manifold family.

    Asserts the target dimension equals the family's closed form, then
    sweeps every admissible target of strictly smaller dimension and
    compares stabilizer dimensions at canonical witnesses.  A candidate
    matching both the dimension and the block signature of the family's
    stabilizer raises :class:`NotMinimalFamily`; a bare dimension tie is
    reported in ``dim_collisions`` (structure distinguishes the groups).
    """
    gp = E.group(md)
    mod = E.module(md)
    dim_v = module_dim(mod)
    mp = E.mp_dimension(md)
    if dim_v != mp:
        raise NotMinimalFamily(f"target dimension {dim_v} differs from closed form {mp}")
    h_dim = G.group_dim(gp) - E.tangent_dim(md)
    dim_v_cmp = _comparison_dim(gp, mod)

    target_sig = None
    base = E.base_point(md)
    if base.module.kind != "RectNK":
        target_sig = _signature_of_factor(base.module, base.value)

    candidates = []
    collisions = []
    for rep in enumerate_admissible(gp):
        mods = rep.modules
        if not mods:
            continue
        cmp_dim = sum(_comparison_dim(gp, m) for m in mods)
        if cmp_dim >= dim_v_cmp:
            continue
        witnesses = [canonical_witness(m) for m in mods]
        constraints = [(m, _factor_action(m, gp), X) for m, X in zip(mods, witnesses)]
        stab = intersect_stabilizer_dim(gp, constraints, tol)
        candidates.append((rep.spec.multiplicities, rep.module_dim_total, stab))
        if stab == h_dim:
            sig = _signature_of_factor(mods[0], witnesses[0]) if len(mods) == 1 else None
            if sig is not None and target_sig is not None and sig == target_sig:
                raise NotMinimalFamily(
                    f"admissible target {rep.spec.multiplicities} of dimension "
                    f"{rep.module_dim_total} reproduces the stabilizer"
                )
            collisions.append(rep.spec.multiplicities)
    return MinimalityReport(
        manifold=md,
        dim_v=dim_v,
        mp_dim=mp,
        h_dim=h_dim,
        advisory=E.minimality_advisory(md),
        candidates=candidates,
        dim_collisions=collisions,
        certified=True,
    )
