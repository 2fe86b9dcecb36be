"""Reductive decompositions g = k + m, isotropy splits and Casimir data.

A ReductiveSpace stores an algebra together with an orthonormalized
subalgebra basis and complement basis; the complement may carry an
ordered two-summand split.  Instances are treated as immutable and all
operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .liealg import (
    DEFAULT_TOL,
    InnerProduct,
    LieAlgebra,
    LieAlgebraError,
    gram_schmidt,
    negative_killing,
    nullspace,
)


class ReductiveError(ValueError):
    """Invalid reductive decomposition or isotropy split."""


@dataclass
class MetricSpec:
    """Per-summand positive scales of an invariant metric.

    The metric is sum_i scales[i] * ip restricted to the i-th summand.
    For a two-summand space the family (1, 2t) is the usual one; t = 1/2
    gives the Killing-type metric with all scales equal to 1.
    """

    scales: tuple = (1.0,)

    def __post_init__(self):
        self.scales = tuple(float(s) for s in self.scales)
        if any(s <= 0 for s in self.scales):
            raise ReductiveError("metric scales must be positive")

    @classmethod
    def killing(cls, nsummands: int = 1) -> "MetricSpec":
        return cls((1.0,) * max(1, nsummands))

    @classmethod
    def g_t(cls, t: float) -> "MetricSpec":
        if t <= 0:
            raise ReductiveError("g_t requires t > 0")
        return cls((1.0, 2.0 * t))

    @property
    def t(self) -> float | None:
        """Parameter t when the scales have the (1, 2t) shape."""
        if len(self.scales) == 2 and abs(self.scales[0] - 1.0) < 1e-14:
            return self.scales[1] / 2.0
        if len(self.scales) == 1:
            return 0.5
        return None


@dataclass
class ReductiveSpace:
    """Algebra, subalgebra k, ip-orthonormal complement m, optional split."""

    algebra: LieAlgebra
    ip: InnerProduct
    k_basis: np.ndarray          # (dim k, dim g)
    m_basis: np.ndarray          # (dim m, dim g)
    summands: tuple = ()         # ((start, stop), ...) index ranges into m_basis
    name: str = ""

    @property
    def dim_k(self) -> int:
        return self.k_basis.shape[0]

    @property
    def dim_m(self) -> int:
        return self.m_basis.shape[0]

    @property
    def summand_dims(self) -> tuple:
        if not self.summands:
            return (self.dim_m,)
        return tuple(stop - start for start, stop in self.summands)

    @property
    def nsummands(self) -> int:
        return max(1, len(self.summands))

    def summand_slices(self):
        if not self.summands:
            return [slice(0, self.dim_m)]
        return [slice(start, stop) for start, stop in self.summands]

    def summand_index(self) -> np.ndarray:
        """Summand number of each m-basis index."""
        idx = np.zeros(self.dim_m, dtype=int)
        for s, sl in enumerate(self.summand_slices()):
            idx[sl] = s
        return idx

    # -- cached bracket tables (read-only use) -----------------------------

    @cached_property
    def _gram(self) -> np.ndarray:
        return self.ip.gram

    @cached_property
    def m_bracket_vectors(self) -> np.ndarray:
        """[Z_a, Z_b] as algebra coefficient vectors, shape (M, M, dim g)."""
        c = self.algebra.structure
        return np.einsum("ijk,ai,bj->abk", c, self.m_basis, self.m_basis)

    @cached_property
    def bm(self) -> np.ndarray:
        """m-part coefficients of [Z_a, Z_b] over the m-basis."""
        return np.einsum("abk,kl,cl->abc", self.m_bracket_vectors, self._gram, self.m_basis)

    @cached_property
    def bk(self) -> np.ndarray:
        """k-part coefficients of [Z_a, Z_b] over the k-basis."""
        if self.dim_k == 0:
            return np.zeros((self.dim_m, self.dim_m, 0))
        return np.einsum("abk,kl,cl->abc", self.m_bracket_vectors, self._gram, self.k_basis)

    @cached_property
    def adk(self) -> np.ndarray:
        """Matrices of ad(k_a) on m: adk[a, c, b] = <[k_a, Z_b], Z_c>."""
        if self.dim_k == 0:
            return np.zeros((0, self.dim_m, self.dim_m))
        c = self.algebra.structure
        vecs = np.einsum("ijk,ai,bj->abk", c, self.k_basis, self.m_basis)
        return np.einsum("abk,kl,cl->acb", vecs, self._gram, self.m_basis)

    @cached_property
    def k_structure(self) -> np.ndarray:
        """Structure constants of k in its orthonormal basis."""
        if self.dim_k == 0:
            return np.zeros((0, 0, 0))
        c = self.algebra.structure
        vecs = np.einsum("ijk,ai,bj->abk", c, self.k_basis, self.k_basis)
        return np.einsum("abk,kl,cl->abc", vecs, self._gram, self.k_basis)

    @cached_property
    def b_form(self) -> np.ndarray:
        """Negative Killing form of g restricted to the m-basis."""
        return -(self.m_basis @ self.algebra.killing @ self.m_basis.T)

    def validate(self, tol: float = 1e-8) -> dict:
        """Residuals of the reductive-space invariants."""
        g = self._gram
        res = {}
        res["m_orthonormal"] = float(
            np.abs(self.m_basis @ g @ self.m_basis.T - np.eye(self.dim_m)).max()
        ) if self.dim_m else 0.0
        res["k_m_orthogonal"] = float(
            np.abs(self.k_basis @ g @ self.m_basis.T).max()
        ) if self.dim_k and self.dim_m else 0.0
        if self.dim_k:
            c = self.algebra.structure
            kk = np.einsum("ijk,ai,bj->abk", c, self.k_basis, self.k_basis)
            proj = np.einsum("abk,kl,cl->abc", kk, g, self.k_basis)
            recon = np.einsum("abc,ck->abk", proj, self.k_basis)
            res["k_closed"] = float(np.abs(kk - recon).max())
        else:
            res["k_closed"] = 0.0
        if self.dim_k and self.dim_m:
            c = self.algebra.structure
            km = np.einsum("ijk,ai,bj->abk", c, self.k_basis, self.m_basis)
            kpart = np.einsum("abk,kl,cl->abc", km, g, self.k_basis)
            res["k_m_in_m"] = float(np.abs(kpart).max())
        else:
            res["k_m_in_m"] = 0.0
        # [Z_a, Z_b] must decompose exactly into k- and m-parts
        recon = np.einsum("abc,ck->abk", self.bm, self.m_basis)
        if self.dim_k:
            recon = recon + np.einsum("abc,ck->abk", self.bk, self.k_basis)
        res["m_bracket_split"] = float(
            np.abs(self.m_bracket_vectors - recon).max()
        ) if self.dim_m else 0.0
        res["ok"] = bool(max(res.values()) < tol)
        return res


def decompose(algebra: LieAlgebra, k_basis, ip: InnerProduct | None = None,
              name: str = "", tol: float = DEFAULT_TOL) -> ReductiveSpace:
    """Split g = k + m with m the ip-orthogonal complement of k.

    The k and m bases are orthonormalized against ``ip`` (default -K).
    Raises if k is not a subalgebra or the complement is not ad(k)-stable.
    """
    if ip is None:
        ip = negative_killing(algebra)
    k_basis = np.asarray(k_basis, dtype=float).reshape(-1, algebra.dim)
    if k_basis.shape[0]:
        k_basis = gram_schmidt(k_basis, ip)
        complement = nullspace(k_basis @ ip.gram)
    else:
        complement = np.eye(algebra.dim)
    if complement.shape[0]:
        m_basis = gram_schmidt(complement, ip)
    else:
        m_basis = complement.reshape(0, algebra.dim)
    space = ReductiveSpace(algebra=algebra, ip=ip, k_basis=k_basis,
                           m_basis=m_basis, name=name or algebra.name)
    report = space.validate(tol=max(tol, 1e-8))
    if not report["ok"]:
        bad = {k: v for k, v in report.items() if k != "ok"}
        raise ReductiveError(f"decomposition of {space.name} failed: {bad}")
    return space


def assemble(algebra: LieAlgebra, k_basis, m_basis, ip: InnerProduct,
             summands=(), name: str = "", tol: float = 1e-8) -> ReductiveSpace:
    """Build a space from pinned bases, validating instead of recomputing."""
    space = ReductiveSpace(
        algebra=algebra, ip=ip,
        k_basis=np.asarray(k_basis, dtype=float).reshape(-1, algebra.dim),
        m_basis=np.asarray(m_basis, dtype=float).reshape(-1, algebra.dim),
        summands=tuple(tuple(s) for s in summands), name=name or algebra.name,
    )
    report = space.validate(tol=tol)
    if not report["ok"]:
        bad = {k: v for k, v in report.items() if k != "ok"}
        raise ReductiveError(f"assembled space {space.name} is invalid: {bad}")
    return space


def lie_group_space(algebra: LieAlgebra, ip: InnerProduct | None = None,
                    name: str = "") -> ReductiveSpace:
    """The k = 0 space of a compact Lie group (m = whole algebra)."""
    return decompose(algebra, np.zeros((0, algebra.dim)), ip=ip,
                     name=name or algebra.name)


# ---------------------------------------------------------------------------
# Casimir data


@dataclass
class CasimirData:
    """Casimir operator of the isotropy action and per-summand constants."""

    operator: np.ndarray          # (M, M) over the m-basis
    constants: tuple              # one scalar per summand
    deviation: float              # max departure from blockwise scalar
    a_gram: np.ndarray            # A(Z_i, Z_j) = <C Z_i, Z_j>


def casimir(space: ReductiveSpace, q_k: np.ndarray | None = None) -> CasimirData:
    """Casimir operator on m from dual bases of k with respect to q_k.

    ``q_k`` is a gram matrix over the space's (orthonormalized) k-basis;
    the default is the restriction of the space inner product, i.e. the
    identity.  Constants are mean diagonal entries per summand.
    """
    m = space.dim_m
    if space.dim_k == 0:
        op = np.zeros((m, m))
        return CasimirData(op, tuple(0.0 for _ in range(space.nsummands)), 0.0, op.copy())
    if q_k is None:
        qinv = np.eye(space.dim_k)
    else:
        q_k = np.asarray(q_k, dtype=float)
        if np.abs(np.linalg.det(q_k)) < 1e-14:
            raise ReductiveError("q_k is degenerate on k")
        qinv = np.linalg.inv(q_k)
    op = -np.einsum("ab,aij,bjk->ik", qinv, space.adk, space.adk)
    constants = []
    deviation = 0.0
    for sl in space.summand_slices():
        block = op[sl, sl]
        cas = float(np.trace(block) / max(1, block.shape[0]))
        constants.append(cas)
        deviation = max(deviation, float(np.abs(block - cas * np.eye(block.shape[0])).max()))
    # off-summand blocks must vanish
    idx = space.summand_index()
    off = op[idx[:, None] != idx[None, :]]
    if off.size:
        deviation = max(deviation, float(np.abs(off).max()))
    a_gram = op.T.copy()
    return CasimirData(op, tuple(constants), deviation, a_gram)


# ---------------------------------------------------------------------------
# isotropy splitting


def center_of_k(space: ReductiveSpace) -> np.ndarray:
    """Central elements of k as rows of k-coordinates."""
    if space.dim_k == 0:
        return np.zeros((0, 0))
    system = space.k_structure.transpose(1, 2, 0).reshape(-1, space.dim_k)
    return nullspace(system)


def _cluster_eigh(op: np.ndarray, gap: float):
    """Eigenvectors of a symmetric operator grouped by eigenvalue clusters."""
    vals, vecs = np.linalg.eigh(0.5 * (op + op.T))
    blocks = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > gap:
            blocks.append(vecs[:, start:i].T)
            start = i
    return blocks


def _inclusion_residuals(space: ReductiveSpace) -> dict:
    """Residuals of the four two-summand bracket inclusions."""
    if len(space.summands) != 2:
        raise ReductiveError("inclusion check requires exactly two summands")
    s1, s2 = space.summand_slices()
    bm, bk = space.bm, space.bk
    adk = space.adk
    res = {}
    # [k, m_i] in m_i
    leak = 0.0
    if space.dim_k:
        leak = max(np.abs(adk[:, s2, s1]).max(initial=0.0),
                   np.abs(adk[:, s1, s2]).max(initial=0.0))
    res["k_mi_in_mi"] = float(leak)
    # [m1, m1] in k + m2
    res["m1_m1_in_k_m2"] = float(np.abs(bm[s1, s1, s1]).max(initial=0.0))
    # [m1, m2] in m1
    leak = max(np.abs(bm[s1, s2, :][:, :, s2]).max(initial=0.0),
               np.abs(bk[s1, s2, :]).max(initial=0.0) if space.dim_k else 0.0)
    res["m1_m2_in_m1"] = float(leak)
    # [m2, m2] in k
    res["m2_m2_in_k"] = float(np.abs(bm[s2, s2, :]).max(initial=0.0))
    return res


def check_inclusions(space: ReductiveSpace, tol: float = 1e-8) -> dict:
    """Per-inclusion residuals and booleans for a two-summand space."""
    res = _inclusion_residuals(space)
    out = {key: {"residual": val, "ok": bool(val < tol)} for key, val in res.items()}
    out["ok"] = bool(all(v["ok"] for v in out.values() if isinstance(v, dict)))
    return out


def split_isotropy(space: ReductiveSpace, gap: float = 1e-6,
                   tol: float = 1e-8) -> ReductiveSpace:
    """Split m into isotropy summands and return a reordered space.

    Eigenspaces of the Casimir operator are refined by the squared action
    of the centre of k (which separates summands with equal Casimir
    constants, e.g. on Killing-Einstein flag spaces).  For two summands
    the order is fixed so that [m2, m2] lies in k.  Raises when the
    spectra do not separate an ad(k)-stable split.
    """
    if space.dim_m == 0:
        raise ReductiveError("cannot split an empty complement")
    operators = [casimir(space).operator]
    for z in center_of_k(space):
        adz = np.einsum("a,aij->ij", z, space.adk)
        operators.append(-adz @ adz)
    blocks = [np.eye(space.dim_m)]
    for op in operators:
        refined = []
        for blk in blocks:
            sub = blk @ op @ blk.T
            for piece in _cluster_eigh(sub, gap):
                refined.append(piece @ blk)
        blocks = refined
    # verify each block is ad(k)-stable
    for blk in blocks:
        comp = nullspace(blk)
        if comp.shape[0] and space.dim_k:
            leak = np.abs(np.einsum("aij,bj,ci->abc", space.adk, blk, comp)).max()
            if leak > max(tol, 1e-7):
                raise ReductiveError(
                    "isotropy spectra do not separate ad(k)-stable summands; "
                    "supply the split explicitly"
                )
    blocks.sort(key=lambda b: -b.shape[0])
    if len(blocks) == 2:
        blocks = _order_two_summands(space, blocks, tol)
    new_m = np.vstack([blk @ space.m_basis for blk in blocks])
    bounds = np.cumsum([0] + [b.shape[0] for b in blocks])
    summands = tuple((int(bounds[i]), int(bounds[i + 1])) for i in range(len(blocks)))
    return ReductiveSpace(algebra=space.algebra, ip=space.ip, k_basis=space.k_basis,
                          m_basis=new_m, summands=summands, name=space.name)


def _order_two_summands(space: ReductiveSpace, blocks, tol: float):
    """Pick the (m1, m2) assignment satisfying the bracket inclusions."""
    best = None
    for order in ([0, 1], [1, 0]):
        m_new = np.vstack([blocks[order[0]] @ space.m_basis,
                           blocks[order[1]] @ space.m_basis])
        d1 = blocks[order[0]].shape[0]
        trial = ReductiveSpace(algebra=space.algebra, ip=space.ip,
                               k_basis=space.k_basis, m_basis=m_new,
                               summands=((0, d1), (d1, space.dim_m)),
                               name=space.name)
        res = _inclusion_residuals(trial)
        worst = max(res.values())
        if best is None or worst < best[0]:
            best = (worst, order)
    if best[0] > max(tol, 1e-7):
        raise ReductiveError(
            f"no summand ordering satisfies the bracket inclusions "
            f"(best residual {best[0]:.3e})"
        )
    return [blocks[i] for i in best[1]]


# ---------------------------------------------------------------------------
# structural identities


def verify_use1(space: ReductiveSpace, q_k: np.ndarray | None = None) -> dict:
    """Residuals of the Casimir trace identities on m.

    Checks A(X,Y) = sum_j q_k([X,Z_j]_k, [Y,Z_j]_k) against the operator
    form, and -K(X,Y) = sum_i <[X,Z_i]_m, [Y,Z_i]_m> + 2A(X,Y), over all
    m-basis pairs.
    """
    cas = casimir(space, q_k=q_k)
    if space.dim_k:
        q = np.eye(space.dim_k) if q_k is None else np.asarray(q_k, dtype=float)
        a_sum = np.einsum("ajc,bjd,cd->ab", space.bk, space.bk, q)
    else:
        a_sum = np.zeros((space.dim_m, space.dim_m))
    res_a = float(np.abs(cas.a_gram - a_sum).max()) if space.dim_m else 0.0
    m_sum = np.einsum("aic,bic->ab", space.bm, space.bm)
    res_b = float(np.abs(space.b_form - m_sum - 2.0 * cas.a_gram).max()) if space.dim_m else 0.0
    return {"a_identity": res_a, "b_identity": res_b}


def frame_sigma(space: ReductiveSpace, metric: MetricSpec) -> np.ndarray:
    """Per-m-index scale factors sqrt(scale) of the metric frame."""
    if len(metric.scales) != space.nsummands:
        raise ReductiveError(
            f"metric has {len(metric.scales)} scales for {space.nsummands} summands"
        )
    sigma = np.empty(space.dim_m)
    for s, sl in zip(metric.scales, space.summand_slices()):
        sigma[sl] = np.sqrt(s)
    return sigma


def frame_tables(space: ReductiveSpace, metric: MetricSpec):
    """Bracket tables in the metric-orthonormal frame E_a = Z_a / sigma_a.

    Returns (bm_f, bk_f, adk_f, sigma) where bm_f[a,b,c] are frame
    coefficients of [E_a,E_b]_m, bk_f[a,b,:] the k-coefficients of
    [E_a,E_b]_k, and adk_f[w] the frame matrix of ad(k_w) on m.
    """
    sigma = frame_sigma(space, metric)
    inv = 1.0 / sigma
    bm_f = np.einsum("abc,a,b,c->abc", space.bm, inv, inv, sigma)
    bk_f = np.einsum("abc,a,b->abc", space.bk, inv, inv)
    adk_f = np.einsum("wcb,c,b->wcb", space.adk, sigma, inv)
    return bm_f, bk_f, adk_f, sigma
