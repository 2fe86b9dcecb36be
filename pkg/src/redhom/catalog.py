"""Named homogeneous spaces and the three two-summand flag families.

Space ids: "cp3", "sphere-s4", "sphere-s6", "sphere-s7", "berger",
"lie-group(<name>)" and "flag-B(l,p)" / "flag-C(l,p)" / "flag-D(l,p)".
The flag generators also produce the Killing-Einstein parameter tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import liealg
from .liealg import (
    InnerProduct,
    LieAlgebraError,
    bprime,
    build_g2,
    build_so,
    build_sp,
    build_su,
    build_u,
    negative_killing,
    realify,
    so_pairs,
    stabilizer_subalgebra,
    u_complex_basis,
    vector_annihilator_constraint,
)
from .reductive import (
    ReductiveError,
    ReductiveSpace,
    assemble,
    decompose,
    lie_group_space,
    split_isotropy,
)


class CatalogError(ValueError):
    """Unknown space id or invalid family parameters."""


@dataclass(frozen=True)
class FamilySpec:
    """Flag family letter with rank and parabolic parameters."""

    family: str
    ell: int
    p: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        ranges = {
            "B": (self.ell >= 2 and 2 <= self.p <= self.ell),
            "C": (self.ell >= 2 and 1 <= self.p <= self.ell - 1),
            "D": (self.ell >= 4 and 2 <= self.p <= self.ell - 2),
        }
        if fam not in ranges:
            raise CatalogError(f"unknown family {self.family!r}")
        if not ranges[fam]:
            raise CatalogError(
                f"parameters (l={self.ell}, p={self.p}) out of range for family {fam}"
            )


def family_dims(spec: FamilySpec) -> tuple:
    """Dimensions (d1, d2) of the two isotropy summands."""
    ell, p = spec.ell, spec.p
    if spec.family == "B":
        return 4 * p * (ell - p) + 2 * p, p * (p - 1)
    if spec.family == "C":
        return 4 * p * (ell - p), p * (p + 1)
    return 4 * p * (ell - p), p * (p - 1)


def killing_einstein_p(family: str, ell: int) -> int | None:
    """Integer p making the Killing metric Einstein (d1 = 2d2), if any."""
    family = family.upper()
    num = {"B": 2 * (ell + 1), "C": 2 * ell - 1, "D": 2 * ell + 1}.get(family)
    if num is None:
        raise CatalogError(f"unknown family {family!r}")
    if num % 3 != 0:
        return None
    p = num // 3
    return p if p >= 1 else None


def family_name(family: str, ell: int, p: int) -> str:
    """Group quotient label, omitting trivial factors."""
    if family == "B":
        rest = 2 * (ell - p) + 1
        tail = f"xSO({rest})" if rest > 1 else ""
        return f"SO({2 * ell + 1})/U({p}){tail}"
    if family == "C":
        rest = ell - p
        tail = f"xSp({rest})" if rest > 0 else ""
        return f"Sp({ell})/U({p}){tail}"
    rest = 2 * (ell - p)
    tail = f"xSO({rest})" if rest > 1 else ""
    return f"SO({2 * ell})/U({p}){tail}"


def killing_einstein_table(family: str, lmax: int) -> list:
    """Rows (l, p, name) with an Einstein Killing metric, l up to lmax.

    Rows follow the published series by divisibility alone; the D-series
    opening row has p = l - 1, outside the strict build range.
    """
    family = family.upper()
    lmin = {"B": 2, "C": 2, "D": 4}[family]
    rows = []
    for ell in range(lmin, lmax + 1):
        p = killing_einstein_p(family, ell)
        if p is None:
            continue
        upper = {"B": ell, "C": ell - 1, "D": ell - 1}[family]
        if p < 1 or p > upper:
            continue
        rows.append({"family": family, "l": ell, "p": p,
                     "name": family_name(family, ell, p)})
    return rows


# ---------------------------------------------------------------------------
# pinned example spaces


def _so5_vector(pairs, *terms) -> np.ndarray:
    """Coefficient vector over the so(5) basis from (weight, (i, j)) terms."""
    v = np.zeros(len(pairs))
    for weight, ij in terms:
        v[pairs.index(ij)] = weight
    return v


@lru_cache(maxsize=None)
def build_cp3() -> ReductiveSpace:
    """The twistor space of the 4-sphere with its pinned basis.

    k = u(2) spanned by {k1..k4}, m split into a 4-dim and a 2-dim summand,
    everything orthonormal for the trace form B'.
    """
    so5 = build_so(5)
    pairs = so_pairs(5)
    h = np.sqrt(0.5)
    k_basis = [
        _so5_vector(pairs, (1.0, (1, 2))),
        _so5_vector(pairs, (1.0, (3, 4))),
        _so5_vector(pairs, (h, (1, 3)), (-h, (2, 4))),
        _so5_vector(pairs, (h, (1, 4)), (h, (2, 3))),
    ]
    m_basis = [
        _so5_vector(pairs, (1.0, (1, 5))),
        _so5_vector(pairs, (1.0, (2, 5))),
        _so5_vector(pairs, (1.0, (3, 5))),
        _so5_vector(pairs, (1.0, (4, 5))),
        _so5_vector(pairs, (h, (1, 3)), (h, (2, 4))),
        _so5_vector(pairs, (h, (1, 4)), (-h, (2, 3))),
    ]
    return assemble(so5, k_basis, m_basis, bprime(so5),
                    summands=((0, 4), (4, 6)), name="cp3")


@lru_cache(maxsize=None)
def build_sphere_s4() -> ReductiveSpace:
    """The 4-sphere as a symmetric pair inside so(5)."""
    so5 = build_so(5)
    pairs = so_pairs(5)
    k = [np.eye(len(pairs))[idx] for idx, (i, j) in enumerate(pairs) if j <= 4]
    return decompose(so5, np.array(k), ip=negative_killing(so5), name="sphere-s4")


@lru_cache(maxsize=None)
def build_sphere_s7() -> ReductiveSpace:
    """The 7-sphere over the 3-form stabilizer inside so(7)."""
    so7 = build_so(7)
    w = liealg.three_form()
    from itertools import combinations

    triples = list(combinations(range(7), 3))

    def constraint(x):
        xw = liealg.form_action(x, w)
        return np.array([xw[t] for t in triples])

    k = stabilizer_subalgebra(so7, constraint, name="g2-in-so7")
    if k.shape[0] != 14:
        raise CatalogError("3-form stabilizer is not 14-dimensional")
    return decompose(so7, k, ip=negative_killing(so7), name="sphere-s7")


@lru_cache(maxsize=None)
def build_sphere_s6() -> ReductiveSpace:
    """The 6-sphere over the vector stabilizer inside the exceptional algebra."""
    g2 = build_g2()
    k = stabilizer_subalgebra(
        g2, vector_annihilator_constraint(np.eye(7)[:, 0]), name="su3-in-g2"
    )
    if k.shape[0] != 8:
        raise CatalogError("vector stabilizer is not 8-dimensional")
    return decompose(g2, k, ip=negative_killing(g2), name="sphere-s6")


@lru_cache(maxsize=None)
def build_berger() -> ReductiveSpace:
    """The 7-dimensional Berger space over an irreducibly embedded so(3).

    so(3) acts by conjugation on traceless symmetric 3x3 matrices; the
    images of the rotation generators span the subalgebra inside so(5).
    """
    so5 = build_so(5)
    u = [
        (np.diag([1.0, -1.0, 0.0])) / np.sqrt(2.0),
        (np.diag([1.0, 1.0, -2.0])) / np.sqrt(6.0),
    ]
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        m = np.zeros((3, 3))
        m[i, j] = m[j, i] = 1.0
        u.append(m / np.sqrt(2.0))
    gens = []
    for i, j in [(1, 2), (1, 3), (2, 3)]:
        l = np.zeros((3, 3))
        l[i - 1, j - 1], l[j - 1, i - 1] = -1.0, 1.0
        rho = np.array([[np.trace(ua @ (l @ ub - ub @ l)) for ub in u] for ua in u])
        gens.append(so5.coefficients(rho))
    return decompose(so5, np.array(gens), ip=negative_killing(so5), name="berger")


_LIE_GROUPS = {
    "su2": lambda: build_su(2),
    "su3": lambda: build_su(3),
    "so3": lambda: build_so(3),
    "sp2": lambda: build_sp(2),
}


@lru_cache(maxsize=None)
def build_lie_group(name: str) -> ReductiveSpace:
    """A compact group as the k = 0 space with the Killing-form metric."""
    key = name.lower()
    if key.startswith("u") and key[1:].isdigit():
        alg = build_u(int(key[1:]))
        ip = negative_killing(alg, center_weight=1.0)
    elif key in _LIE_GROUPS:
        alg = _LIE_GROUPS[key]()
        ip = negative_killing(alg)
    else:
        raise CatalogError(f"unknown Lie group {name!r}")
    return lie_group_space(alg, ip=ip, name=f"lie-group({key})")


# ---------------------------------------------------------------------------
# flag family builders


def _embed_block(mat: np.ndarray, total: int, offset: int) -> np.ndarray:
    out = np.zeros((total, total))
    n = mat.shape[0]
    out[offset:offset + n, offset:offset + n] = mat
    return out


@lru_cache(maxsize=None)
def build_flag(family: str, ell: int, p: int) -> ReductiveSpace:
    """Two-summand flag space of a classical group, split and ordered.

    The unitary factor is realified into the leading block; the orthogonal
    or symplectic factor sits in the trailing block.  The isotropy split
    is found spectrally and validated against the closed-form dimensions.
    """
    spec = FamilySpec(family, ell, p)
    d1, d2 = family_dims(spec)
    if spec.family == "B":
        ambient = build_so(2 * ell + 1)
        rest = 2 * (ell - p) + 1
        k_mats = [_embed_block(realify(z), 2 * ell + 1, 0) for z in u_complex_basis(p)]
        k_mats += [
            _embed_block(liealg._e_skew(rest, i, j), 2 * ell + 1, 2 * p)
            for i, j in so_pairs(rest)
        ] if rest >= 2 else []
    elif spec.family == "D":
        ambient = build_so(2 * ell)
        rest = 2 * (ell - p)
        k_mats = [_embed_block(realify(z), 2 * ell, 0) for z in u_complex_basis(p)]
        k_mats += [
            _embed_block(liealg._e_skew(rest, i, j), 2 * ell, 2 * p)
            for i, j in so_pairs(rest)
        ] if rest >= 2 else []
    else:
        ambient = build_sp(ell)
        rest = ell - p
        # u(p) in the leading complex block of sp(l): Z1 = diag(A, 0), Z2 = 0
        k_cplx = []
        for z in u_complex_basis(p):
            z1 = np.zeros((ell, ell), dtype=complex)
            z1[:p, :p] = z
            top = np.hstack([z1, np.zeros((ell, ell), dtype=complex)])
            bot = np.hstack([np.zeros((ell, ell), dtype=complex), z1.conj()])
            k_cplx.append(np.vstack([top, bot]))
        # sp(l - p) in the trailing block
        if rest >= 1:
            for w in liealg._sp_complex_basis(rest):
                z1s, z2s = w[:rest, :rest], w[:rest, rest:]
                z1 = np.zeros((ell, ell), dtype=complex)
                z2 = np.zeros((ell, ell), dtype=complex)
                z1[p:, p:] = z1s
                z2[p:, p:] = z2s
                top = np.hstack([z1, z2])
                bot = np.hstack([-z2.conj(), z1.conj()])
                k_cplx.append(np.vstack([top, bot]))
        k_mats = [realify(z) for z in k_cplx]
    k_basis = np.array([ambient.coefficients(m) for m in k_mats])
    space = decompose(ambient, k_basis, ip=negative_killing(ambient),
                      name=f"flag-{spec.family}({ell},{p})")
    space = split_isotropy(space)
    if space.summand_dims != (d1, d2):
        raise CatalogError(
            f"flag-{spec.family}({ell},{p}): isotropy split {space.summand_dims} "
            f"does not match the family dimensions {(d1, d2)}"
        )
    return space


# ---------------------------------------------------------------------------
# descriptor registry and id parsing


@dataclass(frozen=True)
class SpaceDescriptor:
    """Catalog entry resolvable to a reductive space."""

    id: str
    family: str
    params: tuple = ()
    expected: dict = field(default_factory=dict)


_NAMED = {
    "cp3": SpaceDescriptor(
        "cp3", "cp3",
        expected={"dims": (4, 2), "cas_equal": True,
                  "riemannian_roots": (0.5, 1.0), "skew_roots": (0.0, 2.0),
                  "normalization": "b-prime"},
    ),
    "sphere-s4": SpaceDescriptor(
        "sphere-s4", "sphere-s4",
        expected={"dims": (4,), "hom_dimension": 0, "symmetric": True},
    ),
    "sphere-s6": SpaceDescriptor(
        "sphere-s6", "sphere-s6",
        expected={"dims": (6,), "hom_dimension": 2},
    ),
    "sphere-s7": SpaceDescriptor(
        "sphere-s7", "sphere-s7",
        expected={"dims": (7,), "hom_dimension": 1},
    ),
    "berger": SpaceDescriptor(
        "berger", "berger",
        expected={"dims": (7,)},
    ),
}

_FLAG_RE = re.compile(r"^flag-([BCD])\((\d+),(\d+)\)$")
_GROUP_RE = re.compile(r"^lie-group\((\w+)\)$")


def parse_id(space_id: str) -> SpaceDescriptor:
    """Resolve a space id string to a descriptor."""
    sid = space_id.strip()
    if sid in _NAMED:
        return _NAMED[sid]
    m = _FLAG_RE.match(sid)
    if m:
        fam, ell, p = m.group(1), int(m.group(2)), int(m.group(3))
        spec = FamilySpec(fam, ell, p)
        d1, d2 = family_dims(spec)
        ke = killing_einstein_p(fam, ell) == p
        return SpaceDescriptor(sid, f"flag-{fam}", (ell, p),
                               expected={"dims": (d1, d2), "cas_equal": ke,
                                         "skew_roots": (0.0, 2.0) if ke else None})
    m = _GROUP_RE.match(sid)
    if m:
        return SpaceDescriptor(sid, "lie-group", (m.group(1),),
                               expected={"cas_equal": True})
    raise CatalogError(f"unknown space id {space_id!r}")


def build_space(descriptor) -> ReductiveSpace:
    """Build and validate the reductive space of a descriptor or id string."""
    if isinstance(descriptor, str):
        descriptor = parse_id(descriptor)
    builders = {
        "cp3": build_cp3,
        "sphere-s4": build_sphere_s4,
        "sphere-s6": build_sphere_s6,
        "sphere-s7": build_sphere_s7,
        "berger": build_berger,
    }
    if descriptor.family in builders:
        space = builders[descriptor.family]()
    elif descriptor.family.startswith("flag-"):
        space = build_flag(descriptor.family[-1], *descriptor.params)
    elif descriptor.family == "lie-group":
        space = build_lie_group(descriptor.params[0])
    else:
        raise CatalogError(f"no builder for {descriptor.id!r}")
    expected_dims = descriptor.expected.get("dims")
    if expected_dims and space.summand_dims != tuple(expected_dims):
        raise CatalogError(
            f"{descriptor.id}: built dims {space.summand_dims} != expected {expected_dims}"
        )
    return space


def known_ids() -> list:
    """Named catalog ids (the flag and group generators accept parameters)."""
    return sorted(_NAMED) + ["lie-group(su2)", "lie-group(su3)",
                             "flag-B(5,4)", "flag-C(5,3)"]
