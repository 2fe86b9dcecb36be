"""Invariant connections via their Nomizu maps.

A NomizuMap stores the coefficients L[a,b,c] of Lambda(E_a)E_b over the
metric-orthonormal frame of its space.  Builders cover the canonical
one-parameter family, the two-summand Levi-Civita family and its
s-rescaling, bi-invariant per-ideal families, and the exotic bilinear
maps on u(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import (
    DEFAULT_TOL,
    LieAlgebra,
    LieAlgebraError,
    build_u,
    negative_killing,
    nullspace,
    realify,
    u_complex_basis,
)
from .reductive import (
    MetricSpec,
    ReductiveSpace,
    ReductiveError,
    check_inclusions,
    frame_sigma,
    frame_tables,
    lie_group_space,
)


class ConnectionError_(ValueError):
    """Invalid connection construction or check precondition."""


@dataclass
class NomizuMap:
    """Coefficients of an invariant connection over a metric frame."""

    space: ReductiveSpace
    metric: MetricSpec
    coeffs: np.ndarray           # (M, M, M): Lambda(E_a)E_b = sum_c coeffs[a,b,c] E_c
    label: str = ""

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def rescaled(self, metric: MetricSpec) -> "NomizuMap":
        """Same map expressed in the frame of another metric."""
        s_old = frame_sigma(self.space, self.metric)
        s_new = frame_sigma(self.space, metric)
        r = s_new / s_old
        coeffs = np.einsum("abc,a,b,c->abc", self.coeffs, 1.0 / r, 1.0 / r, r)
        return NomizuMap(self.space, metric, coeffs, self.label)


# ---------------------------------------------------------------------------
# builders


def nomizu_alpha(space: ReductiveSpace, alpha: float) -> NomizuMap:
    """The family Lambda(X)Y = ((1 - alpha)/2) [X, Y]_m on the Killing metric.

    alpha = 1 is the canonical connection (zero map), alpha = 0 the
    Levi-Civita connection of the naturally reductive metric.
    """
    metric = MetricSpec.killing(space.nsummands)
    coeffs = 0.5 * (1.0 - alpha) * space.bm
    return NomizuMap(space, metric, coeffs, label=f"alpha={alpha:g}")


def nomizu_levi_civita_gt(space: ReductiveSpace, t: float) -> NomizuMap:
    """Levi-Civita Nomizu map of the two-summand metric family g_t."""
    if len(space.summands) != 2:
        raise ConnectionError_("the g_t family needs exactly two summands")
    incl = check_inclusions(space)
    if not incl["ok"]:
        raise ConnectionError_(f"bracket inclusions violated: {incl}")
    metric = MetricSpec.g_t(t)
    s1, s2 = space.summand_slices()
    idx = space.summand_index()
    m2_mask = (idx == 1).astype(float)
    raw = np.zeros_like(space.bm)
    # values over the ip-orthonormal basis, blockwise in the inputs
    raw[s1, s1, :] = 0.5 * space.bm[s1, s1, :] * m2_mask
    raw[s1, s2, :] = t * space.bm[s1, s2, :]
    raw[s2, s1, :] = (1.0 - t) * space.bm[s2, s1, :]
    sigma = frame_sigma(space, metric)
    inv = 1.0 / sigma
    coeffs = np.einsum("abc,a,b,c->abc", raw, inv, inv, sigma)
    return NomizuMap(space, metric, coeffs, label=f"levi-civita t={t:g}")


def nomizu_st(space: ReductiveSpace, s: float, t: float) -> NomizuMap:
    """The two-parameter family s * Lambda_t; s = 0 canonical, s = 1 Levi-Civita."""
    base = nomizu_levi_civita_gt(space, t)
    return NomizuMap(space, base.metric, s * base.coeffs, label=f"s={s:g} t={t:g}")


def biinvariant_family(space: ReductiveSpace, ideals, alphas) -> NomizuMap:
    """Per-ideal bracket family on a Lie group space (k = 0).

    ``ideals`` are coefficient-vector bases (one array per ideal) jointly
    spanning the algebra; the map is sum_i ((1 - alpha_i)/2) [X_i, Y_i].
    The centre contributes nothing since its brackets vanish.
    """
    if space.dim_k != 0:
        raise ConnectionError_("bi-invariant families live on Lie group spaces")
    alg = space.algebra
    ideals = [np.asarray(b, dtype=float).reshape(-1, alg.dim) for b in ideals]
    if len(ideals) != len(alphas):
        raise ConnectionError_("one alpha per ideal is required")
    stacked = np.vstack(ideals)
    if stacked.shape[0] != alg.dim or np.linalg.matrix_rank(stacked, tol=1e-10) != alg.dim:
        raise ConnectionError_("ideals must jointly span the algebra")
    for basis in ideals:
        ker = _ideal_leak(alg, basis)
        if ker > 1e-8:
            raise ConnectionError_(f"non-ideal input (bracket leak {ker:.3e})")
    inv = np.linalg.inv(stacked)
    metric = MetricSpec.killing(space.nsummands)
    m = space.m_basis
    coeffs = np.zeros((space.dim_m,) * 3)
    offset = 0
    for basis, alpha in zip(ideals, alphas):
        rows = slice(offset, offset + basis.shape[0])
        offset += basis.shape[0]
        proj = inv[:, rows] @ basis          # projection onto this ideal
        comp = m @ proj                      # ideal components of the frame vectors
        vecs = np.einsum("ijk,ai,bj->abk", alg.structure, comp, comp)
        coeffs += 0.5 * (1.0 - alpha) * np.einsum(
            "abk,kl,cl->abc", vecs, space.ip.gram, m
        )
    label = "biinv alpha=(" + ",".join(f"{a:g}" for a in alphas) + ")"
    return NomizuMap(space, metric, coeffs, label=label)


def _ideal_leak(alg: LieAlgebra, basis: np.ndarray) -> float:
    """Residual of [g, ideal] outside the ideal span."""
    brs = np.einsum("ijk,aj->iak", alg.structure, basis).reshape(-1, alg.dim)
    proj = (brs @ basis.T) @ basis
    return float(np.abs(brs - proj).max()) if brs.size else 0.0


# ---------------------------------------------------------------------------
# pointwise checks


def lambda_matrices(nm: NomizuMap) -> np.ndarray:
    """Stack of matrices of Lambda(E_a) acting on frame coordinates."""
    return nm.coeffs.transpose(0, 2, 1)


def is_metric(nm: NomizuMap, metric: MetricSpec | None = None,
              tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether Lambda(X) is skew for the given metric; returns (flag, residual)."""
    coeffs = nm.coeffs if metric is None else nm.rescaled(metric).coeffs
    residual = float(np.abs(coeffs + coeffs.transpose(0, 2, 1)).max())
    return residual < tol, residual


def satisfies_stc(nm: NomizuMap, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Polarized check of Lambda(X)X = 0 over all frame pairs."""
    residual = float(np.abs(nm.coeffs + nm.coeffs.transpose(1, 0, 2)).max())
    return residual < tol, residual


def equivariance_residual(nm: NomizuMap) -> float:
    """Infinitesimal Ad(k)-equivariance defect of the map."""
    space = nm.space
    if space.dim_k == 0:
        return 0.0
    _, _, adk_f, _ = frame_tables(space, nm.metric)
    lam = lambda_matrices(nm)
    # ad(W) Lambda(X) - Lambda(X) ad(W) - Lambda(ad(W) X) over k and frame X
    left = np.einsum("wij,ajk->waik", adk_f, lam) - np.einsum(
        "aij,wjk->waik", lam, adk_f
    )
    right = np.einsum("wca,cik->waik", adk_f, lam)
    return float(np.abs(left - right).max())


def derivation_defect(nm: NomizuMap) -> np.ndarray:
    """Leibniz defect D(Z,X,Y) of the map against the m-bracket (k = 0 spaces)."""
    if nm.space.dim_k != 0:
        raise ConnectionError_("derivation checks are for Lie group spaces")
    bm_f, _, _, _ = frame_tables(nm.space, nm.metric)
    L = nm.coeffs
    term1 = np.einsum("xyc,zcd->zxyd", bm_f, L)
    term2 = np.einsum("zxc,cyd->zxyd", L, bm_f)
    term3 = np.einsum("zyc,xcd->zxyd", L, bm_f)
    return term1 - term2 - term3


def is_derivation(nm: NomizuMap, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether every Lambda(Z) is a derivation of the algebra."""
    residual = float(np.abs(derivation_defect(nm)).max())
    return residual < tol, residual


def verify_stary(nm: NomizuMap, tol: float = DEFAULT_TOL) -> float:
    """Residual of the torsion/curvature identity for maps with Lambda(X)X = 0.

    The identity (nabla_Z T)(X,Y) = 2{R(Z,X)Y - Lambda(Y)([Z,X] - Lambda(Z)X)}
    holds exactly when the map is a derivation; the returned residual is
    its maximal defect over frame triples.
    """
    ok, res = satisfies_stc(nm)
    if not ok:
        raise ConnectionError_(
            f"the identity presumes Lambda(X)X = 0 (violated by {res:.3e})"
        )
    bm_f, _, _, _ = frame_tables(nm.space, nm.metric)
    lam = lambda_matrices(nm)
    L = nm.coeffs
    # torsion T(X,Y) = 2 Lambda(X)Y - [X,Y]
    t3 = 2.0 * L - bm_f
    # (nabla_Z T)(X,Y) = Lambda(Z)T(X,Y) - T(Lambda(Z)X, Y) - T(X, Lambda(Z)Y)
    nt = (
        np.einsum("xyc,zdc->zxyd", t3, lam)
        - np.einsum("zxc,cyd->zxyd", L, t3)
        - np.einsum("zyc,xcd->zxyd", L, t3)
    )
    # curvature R(Z,X) = [Lambda(Z), Lambda(X)] - Lambda([Z,X])
    rmat = (
        np.einsum("zij,xjk->zxik", lam, lam)
        - np.einsum("xij,zjk->zxik", lam, lam)
        - np.einsum("zxc,cik->zxik", bm_f, lam)
    )
    r_term = rmat.transpose(0, 1, 3, 2)          # R(Z,X)Y components over Y
    inner = bm_f - L                             # [Z,X] - Lambda(Z)X
    lam_term = np.einsum("zxc,ycd->zxyd", inner, L)
    rhs = 2.0 * (r_term - lam_term)
    return float(np.abs(nt - rhs).max())


# ---------------------------------------------------------------------------
# exotic bilinear maps on u(n)


@dataclass
class BilinearMapOnU:
    """A bilinear map u(n) x u(n) -> u(n) as a coefficient table."""

    algebra: LieAlgebra
    coeffs: np.ndarray           # (d, d, d) over the u(n) basis
    kind: str

    def as_nomizu(self, space: ReductiveSpace) -> NomizuMap:
        """Express the map over the frame of a Lie group space of u(n)."""
        same = (space.algebra is self.algebra
                or np.array_equal(space.algebra.basis, self.algebra.basis))
        if space.dim_k != 0 or not same:
            raise ConnectionError_("expected a Lie group space over the same algebra")
        metric = MetricSpec.killing(space.nsummands)
        s = space.m_basis                        # frame rows over the raw basis
        sinv = np.linalg.inv(s)
        coeffs = np.einsum("ia,jb,abc,cd->ijd", s, s, self.coeffs, sinv)
        return NomizuMap(space, metric, coeffs, label=self.kind)


def exotic_un_maps(n: int) -> dict:
    """The symmetric maps eta1, eta2, eta3 and the skew map mu on u(n)."""
    if n < 2:
        raise ConnectionError_("exotic maps need n >= 2")
    alg = build_u(n)
    cb = u_complex_basis(n)
    eye = np.eye(n, dtype=complex)

    def table(fn):
        d = len(cb)
        out = np.zeros((d, d, d))
        for a, x in enumerate(cb):
            for b, y in enumerate(cb):
                out[a, b] = alg.coefficients(realify(fn(x, y)))
        return out

    maps = {
        "eta1": lambda x, y: 1j * (x @ y + y @ x),
        "eta2": lambda x, y: np.trace(x @ y) * 1j * eye,
        "eta3": lambda x, y: np.trace(x) * np.trace(y) * 1j * eye,
        "mu": lambda x, y: 1j * (np.trace(y) * x - np.trace(x) * y),
    }
    return {kind: BilinearMapOnU(alg, table(fn), kind) for kind, fn in maps.items()}


def combine_bilinear(maps: dict, c1: float, c2: float, c3: float, c: float) -> BilinearMapOnU:
    """Linear combination c1*eta1 + c2*eta2 + c3*eta3 + c*mu."""
    coeffs = (
        c1 * maps["eta1"].coeffs
        + c2 * maps["eta2"].coeffs
        + c3 * maps["eta3"].coeffs
        + c * maps["mu"].coeffs
    )
    return BilinearMapOnU(maps["eta1"].algebra, coeffs,
                          kind=f"combo({c1:g},{c2:g},{c3:g},{c:g})")


def linear_combination_stc_rank(n: int, sample_points=None, rtol: float = 1e-8) -> dict:
    """Solution space of eta_c(X, X) = 0 in the weights (c1, c2, c3, c).

    The default sample set (basis vectors and pairwise sums) spans the
    quadratic constraints; the expected solution space is the mu-axis.
    """
    maps = exotic_un_maps(n)
    alg = maps["eta1"].algebra
    d = alg.dim
    if sample_points is None:
        samples = [np.eye(d)[a] for a in range(d)]
        samples += [np.eye(d)[a] + np.eye(d)[b] for a in range(d) for b in range(a + 1, d)]
    else:
        samples = [np.asarray(x, dtype=float) for x in sample_points]
    order = ["eta1", "eta2", "eta3", "mu"]
    rows = []
    for x in samples:
        cols = [np.einsum("abc,a,b->c", maps[k].coeffs, x, x) for k in order]
        rows.append(np.column_stack(cols))
    system = np.vstack(rows)
    basis = nullspace(system, rtol=rtol)
    mu_only = bool(
        basis.shape[0] == 1 and np.abs(basis[0][:3]).max() < 1e-8
    )
    return {"dimension": int(basis.shape[0]), "basis": basis, "mu_only": mu_only,
            "weights_order": order}


def u_group_space(n: int, center_weight: float = 1.0) -> ReductiveSpace:
    """Lie group space of u(n) with -K patched by a centre block."""
    alg = build_u(n)
    ip = negative_killing(alg, center_weight=center_weight)
    return lie_group_space(alg, ip=ip, name=f"lie-group(u{n})")
