"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines.
"""

import time
from dataclasses import replace
from itertools import product

import numpy as np
import pytest

from manirep import groups as G
from manirep.classify import enumerate_admissible
from manirep.embeddings import (
    ManifoldDescriptor,
    all_smallest_legal,
    base_point,
    cartan_compare,
    check_equivariance,
    group,
    module,
    mp_dimension,
    tangent_dim,
)
from manirep.gmodules import ActionKind, ModuleDescriptor, module_dim
from manirep.numkit import numerical_rank, youla_blocks
from manirep.stabilizers import (
    intersect_stabilizer_dim,
    stabilizer_congruence_skew,
    stabilizer_congruence_sym,
    stabilizer_dim_in_group,
    stabilizer_left_mult,
    stabilizer_similarity,
)
from manirep.weyl import HighestWeight, catalog_weight, enumerate_irreps_below, weyl_dim


def verdict(num, ok, text):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_1_weyl_anchors():
    t0 = time.monotonic()
    checked = 0
    for n in range(3, 26):
        assert weyl_dim(catalog_weight("SL", n, "trivial")) == 1
        assert weyl_dim(catalog_weight("SL", n, "vector")) == n
        assert weyl_dim(catalog_weight("SL", n, "vector_dual")) == n
        assert weyl_dim(catalog_weight("SL", n, "alt2")) == n * (n - 1) // 2
        assert weyl_dim(catalog_weight("SL", n, "sym2")) == n * (n + 1) // 2
        assert weyl_dim(catalog_weight("SL", n, "adjoint")) == n * n - 1
        checked += 6
        assert weyl_dim(catalog_weight("SO", n, "trivial")) == 1
        assert weyl_dim(catalog_weight("SO", n, "vector")) == n
        w = catalog_weight("SO", n, "alt2")
        if w is not None:
            assert weyl_dim(w) == n * (n - 1) // 2
            checked += 1
        assert weyl_dim(catalog_weight("SO", n, "sym2_0")) == (n + 2) * (n - 1) // 2
        m = n // 2
        spin = 2**m if n % 2 else 2 ** (m - 1)
        assert weyl_dim(catalog_weight("SO", n, "spin")) == spin
        checked += 4
        assert weyl_dim(catalog_weight("SP", n, "trivial")) == 1
        assert weyl_dim(catalog_weight("SP", n, "vector")) == 2 * n
        assert weyl_dim(catalog_weight("SP", n, "adjoint")) == 2 * n * n + n
        assert weyl_dim(catalog_weight("SP", n, "sym2_0_form")) == (n - 1) * (2 * n + 1)
        checked += 4
    elapsed = time.monotonic() - t0
    verdict(1, elapsed < 1.0, f"{checked} closed-form anchors exact in {elapsed:.3f}s")


def test_criterion_2_sl_catalog():
    t0 = time.monotonic()
    ok = True
    for n in (9, 10, 11):
        found = enumerate_irreps_below("SL", n, n * n)
        m = n - 1
        expected = {
            catalog_weight("SL", n, name).kappa
            for name in ("trivial", "vector", "vector_dual", "alt2", "alt2_dual",
                         "sym2", "sym2_dual", "adjoint")
        }
        ok = ok and len(found) == 8 and {w.kappa for w, _ in found} == expected
    elapsed = time.monotonic() - t0
    verdict(2, ok and elapsed < 10.0,
            f"SL bounded irreducibles are exactly the 8 catalog classes ({elapsed:.3f}s)")


def test_criterion_3_so_sp_catalogs():
    t0 = time.monotonic()
    so_dims = sorted(d for _, d in enumerate_irreps_below("SO", 19, 361))
    sp_dims = sorted(d for _, d in enumerate_irreps_below("SP", 5, 100))
    elapsed = time.monotonic() - t0
    ok = so_dims == [1, 19, 171, 189] and sp_dims == [1, 10, 44, 55] and elapsed < 30.0
    verdict(3, ok, f"SO19 dims {so_dims}, SP5 dims {sp_dims} ({elapsed:.3f}s)")


def test_criterion_4_stabilizer_oracle():
    rng = np.random.default_rng(42)
    checked = 0
    for case in range(50):
        n = int(rng.integers(3, 10))
        field = "R" if case % 2 == 0 else "C"

        def gl_dim(X, action):
            m = {"left": ModuleDescriptor("RectNK", n, field, k=X.shape[1]),
                 "skew": ModuleDescriptor("Alt2", n, field),
                 "sym": ModuleDescriptor("Sym2", n, field)}[action]
            act = ActionKind.LEFT_MULT if action == "left" else ActionKind.CONGRUENCE
            return stabilizer_dim_in_group(G.gl(n, field), m, act, X)

        # left multiplication on a random bounded-rank slab
        k = int(rng.integers(1, n + 1))
        r = int(rng.integers(0, k + 1))
        Y = rng.standard_normal((n, r)) @ rng.standard_normal((r, k)) if r else np.zeros((n, k))
        if field == "C" and r:
            Y = Y + 1j * rng.standard_normal((n, r)) @ rng.standard_normal((r, k))
        assert stabilizer_left_mult(Y).dim == gl_dim(Y, "left")

        # skew congruence
        rr = int(rng.integers(0, n // 2 + 1))
        core = youla_blocks(sorted(rng.uniform(0.5, 3.0, size=rr), reverse=True), n)
        S = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if field == "C" else 0)
        Qr, _ = np.linalg.qr(S)
        Xs = Qr @ core.astype(Qr.dtype) @ Qr.T
        Xs = (Xs - Xs.T) / 2
        assert stabilizer_congruence_skew(Xs).dim == gl_dim(Xs, "skew")

        # symmetric congruence
        sr = int(rng.integers(0, n + 1))
        vals = rng.uniform(0.5, 3.0, size=sr) * rng.choice([-1.0, 1.0], size=sr)
        diag = np.diag(np.concatenate([vals, np.zeros(n - sr)]))
        Xm = Qr @ diag.astype(Qr.dtype) @ Qr.T
        Xm = (Xm + Xm.T) / 2
        assert stabilizer_congruence_sym(Xm).dim == gl_dim(Xm, "sym")

        # similarity with exact rational structure; keep the conjugation
        # well conditioned so the numeric oracle is unambiguous
        jvals = rng.choice([-1, 0, 1, 2], size=n)
        J = np.diag(jvals.astype(float))
        for i in range(n - 1):
            if jvals[i] == jvals[i + 1] and rng.random() < 0.5:
                J[i, i + 1] = 1.0
        while True:
            L = np.tril(rng.integers(-1, 2, size=(n, n)), -1) + np.eye(n)
            U = np.triu(rng.integers(-1, 2, size=(n, n)), 1) + np.eye(n)
            Sm = L @ U
            if np.linalg.cond(Sm) < 50:
                break
        Xj = Sm @ J @ np.linalg.inv(Sm)
        Xj = np.round(Xj * 16) / 16  # entries are exact integers; strip float fuzz
        if field == "C":
            Xj = Xj.astype(complex)
        td = stabilizer_similarity(Xj, "exact", field=field)
        gens = []
        for t in range(n * n):
            E = np.zeros((n, n), dtype=complex)
            E[t // n, t % n] = 1.0
            v = (E @ Xj - Xj @ E).ravel()
            gens.append(v if field == "C" else np.concatenate([v.real, v.imag]))
        numeric = n * n - numerical_rank(np.array(gens).T)
        assert td.commutant_dim == numeric
        checked += 4
    verdict(4, True, f"structured == numeric kernel on {checked} random stabilizers")


def test_criterion_5_intersection_example():
    e1 = np.zeros((9, 1)); e1[0, 0] = 1.0
    e9 = np.zeros((9, 1)); e9[8, 0] = 1.0
    m = ModuleDescriptor("RectNK", 9, "R", k=1)
    same = intersect_stabilizer_dim(G.so(9), [(m, ActionKind.LEFT_MULT, e1)] * 2)
    diff = intersect_stabilizer_dim(
        G.so(9), [(m, ActionKind.LEFT_MULT, e1), (m, ActionKind.LEFT_MULT, e9)]
    )
    verdict(5, (same, diff) == (28, 21), f"repeated vs split column stabilizers: {same} vs {diff}")


def test_criterion_6_equivariance_all_families():
    t0 = time.monotonic()
    worst = {}
    for md in all_smallest_legal():
        key = md.family + (f"-{md.field}" if md.family == "fl-sp" else "")
        worst[key] = check_equivariance(md, trials=100, seed=11)
    elapsed = time.monotonic() - t0
    bad = {k: v for k, v in worst.items() if v > 1e-8}
    ok = len(worst) == 25 and not bad and elapsed < 60.0
    verdict(6, ok, f"25 families, max residual {max(worst.values()):.2e} in {elapsed:.1f}s")


def _expected_manifold_dim(md: ManifoldDescriptor) -> int:
    """dim G/H from the subgroup closed forms, independent of the embeddings code."""
    f, n, k = md.family, md.n, md.k
    parts = md.parts if md.ks else None
    if f == "gr-real":
        return k * (n - k)
    if f == "gr-complex":
        return 2 * k * (n - k)
    if f in ("gr-quaternionic", "gr-sp-real", "gr-sp-complex"):
        return 4 * k * (n - k)
    if f == "gr-complex-locus":
        return k * (n - k)
    if f == "slgr":
        return (n - 1) * (n + 2) // 2
    if f == "lgr-c":
        return n * (n + 1)
    if f == "slgr-star-h":
        return 2 * n * n - n - 1
    if f == "sogr-c":
        return n * (n - 1)
    if f == "igr":
        return n * (n - 1) // 2 - k * k - (n - 2 * k) * (n - 2 * k - 1) // 2
    if f == "gr-indefinite":
        p, q = md.pq
        N = sum(md.sizes)
        return (p + q) * (N - p - q)
    if f == "fl-real":
        return sum(a * b for i, a in enumerate(parts) for b in parts[i + 1:])
    if f == "fl-complex":
        return 2 * sum(a * b for i, a in enumerate(parts) for b in parts[i + 1:])
    if f == "fl-quaternionic":
        return 4 * sum(a * b for i, a in enumerate(parts) for b in parts[i + 1:])
    if f == "ifl-even":
        return n * (2 * n - 1) - sum(a * a for a in parts)
    if f == "ifl-odd":
        N = 2 * n + md.p
        return N * (N - 1) // 2 - sum(a * a for a in parts) - md.p * (md.p - 1) // 2
    if f == "fl-sp":
        return 2 * n * n + n - sum(2 * a * a + a for a in parts)
    if f == "lfl":
        return 2 * n * n + n - sum(a * a for a in parts)
    if f in ("st-noncompact-real", "st-noncompact-complex"):
        # SL_n(C) is a complex group: its ranks are complex dimensions
        return n * k
    if f == "stiefel-real":
        return n * k - k * (k + 1) // 2
    if f == "stiefel-complex":
        return 2 * n * k - k * k
    if f == "stiefel-quaternionic":
        return 4 * n * k - 2 * k * k + k
    raise AssertionError(f)


def _grow(md: ManifoldDescriptor) -> ManifoldDescriptor:
    if md.family == "gr-indefinite":
        mm, nn = md.sizes
        return replace(md, n=md.n + 3, sizes=(mm + 3, nn + 3))
    return replace(md, n=md.n + 3)


def test_criterion_7_dimension_consistency():
    from manirep.embeddings import action

    checked = 0
    for md0 in all_smallest_legal():
        for md in (md0, _grow(md0)):
            gp = group(md)
            mod = module(md)
            stab = stabilizer_dim_in_group(gp, mod, action(md), base_point(md).value)
            t = tangent_dim(md)
            assert t == G.group_dim(gp) - stab, md.family
            assert t == _expected_manifold_dim(md), (md.family, t, _expected_manifold_dim(md))
            assert mp_dimension(md) == module_dim(mod), md.family
            checked += 1
    verdict(7, True, f"tangent/stabilizer/target dimensions consistent on {checked} cases")


def test_criterion_8_classification_sweeps():
    sl = {r.spec.multiplicities for r in enumerate_admissible(G.sl(9, "C"))}
    sl_expected = (
        {(b, 0, 0, 0) for b in range(10)}
        | {(b, 1, 0, 0) for b in range(6)}
        | {(b, 2, 0, 0) for b in range(2)}
        | {(b, 0, 1, 0) for b in range(5)}
        | {(0, 1, 1, 0), (0, 0, 0, 1)}
    )
    so = {r.spec.multiplicities for r in enumerate_admissible(G.so(19, "C"))}
    so_expected = (
        {(b, 0, 0) for b in range(20)}
        | {(b, 1, 0) for b in range(11)}
        | {(b, 0, 1) for b in range(10)}
        | {(b, 2, 0) for b in range(2)}
        | {(0, 1, 1)}
    )
    sp = {r.spec.multiplicities for r in enumerate_admissible(G.sp(10, "C"))}
    sp_expected = (
        {(b, 0, 0) for b in range(11)}
        | {(b, 1, 0) for b in range(6)}
        | {(b, 0, 1) for b in range(5)}
        | {(0, 1, 1)}
    )
    su = [r.spec.multiplicities for r in enumerate_admissible(G.su(9))]
    spc = [r.spec.multiplicities for r in enumerate_admissible(G.sp_compact(10))]
    ok = (
        sl == sl_expected
        and so == so_expected
        and sp == sp_expected
        and su == [(1,)]
        and sorted(spc) == [(0, 1), (1, 0), (1, 1)]
    )
    verdict(8, ok, f"admissible sweeps: SL9 {len(sl)}, SO19 {len(so)}, Sp10 {len(sp)}, "
                   f"SU9 {len(su)}, compact Sp10 {len(spc)}")


def test_criterion_9_cartan_types():
    cases = [
        ("AI", dict(n=9)), ("AII", dict(n=3)), ("AIII", dict(n=9, k=2)),
        ("BDI", dict(n=9, k=2)), ("DIII", dict(n=3)), ("CI", dict(n=3)),
        ("CII", dict(n=3, k=1)),
    ]
    results = []
    for ctype, kwargs in cases:
        rep = cartan_compare(ctype, trials=20, seed=5, **kwargs)
        results.append((ctype, rep.identical, rep.residual))
        assert rep.residual <= 1e-8
    assert results[0][1] is True  # AI is literally the same map
    verdict(9, True, "all seven symmetric-space types match up to a constant right factor: "
            + ", ".join(f"{t}{'=' if ident else '*'}" for t, ident, _ in results))


def test_criterion_10_weight_properties():
    checked = 0
    for n in range(3, 9):
        m = n - 1
        for kappa in product(range(3), repeat=m):
            assert weyl_dim(HighestWeight("SL", n, kappa)) == weyl_dim(
                HighestWeight("SL", n, kappa[::-1])
            )
            checked += 1
    for algebra, ns in (("SL", range(3, 9)), ("SO", range(5, 9)), ("SP", range(1, 9))):
        for n in ns:
            from manirep.weyl import rank_of

            m = rank_of(algebra, n)
            for kappa in product(range(3), repeat=m):
                d = weyl_dim(HighestWeight(algebra, n, kappa))
                for i in range(m):
                    if kappa[i]:
                        lower = list(kappa)
                        lower[i] -= 1
                        assert weyl_dim(HighestWeight(algebra, n, lower)) < d
                        checked += 1
    verdict(10, True, f"palindrome and strict-descent properties exhaustive ({checked} checks)")
