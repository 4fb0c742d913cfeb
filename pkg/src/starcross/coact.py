"""Coactions of finite groups, their spatial crossed products, and duality.

A coaction is a certified *-homomorphism from a coefficient algebra into its
tensor product with the group algebra, satisfying the comultiplication
identity and nondegeneracy.  Crossed products by coactions and by homogeneous
spaces are realized spatially as spans of ``delta(b) (1 (x) M_f)`` inside the
tensor ambient; every construction is certified on the spot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoactionIdentityFails,
    CocycleIdentityFails,
    IsoSearchFailed,
    NotInAlgebra,
    NotNondegenerate,
    NotNormal,
    NotStarHom,
)
from .fingroup import FiniteGroup, Subgroup, is_normal, left_cosets, quotient_group
from .linalgx import pivoted_basis, rank_qr
from .staralg import (
    DEFAULT_TOL,
    TAU_MEM,
    StarAlgebra,
    StarHom,
    Tolerance,
    is_star_hom,
    lambda_matrices,
    matrix_algebra,
    max_abs,
    rho_matrices,
    tensor,
)

__all__ = [
    "Coaction",
    "make_coaction",
    "trivial_coaction",
    "dual_coaction",
    "comultiplication_coaction",
    "HomogeneousCP",
    "coaction_crossed_product",
    "homogeneous_reduced_cp",
    "restrict_coaction",
    "restriction_iso",
    "stabilize",
    "Cocycle",
    "is_cocycle",
    "twist",
    "fundamental_unitary",
    "katayama_iso",
    "KatayamaResult",
    "group_leg_split",
    "group_leg_join",
]


# -- tensor-leg bookkeeping ---------------------------------------------------

def group_leg_split(mat: np.ndarray, m: int, g: FiniteGroup) -> np.ndarray:
    """Split ``Y = sum_u Y_u (x) lambda_u`` into the stack ``(|G|, m, m)``.

    Valid whenever ``Y`` lies in ``M_m (x) span(lambda)``; confirm with
    :func:`group_leg_join` when membership is in doubt.
    """
    n = g.order
    y = np.asarray(mat, complex).reshape(m, n, m, n)
    return np.stack([y[:, u, :, g.identity] for u in range(n)])


def group_leg_join(parts: np.ndarray, g: FiniteGroup) -> np.ndarray:
    """Assemble ``sum_u parts[u] (x) lambda_u``."""
    lam = lambda_matrices(g)
    m = parts.shape[1]
    out = np.einsum("uij,uab->iajb", np.asarray(parts, complex), lam)
    return out.reshape(m * g.order, m * g.order)


# -- coactions ------------------------------------------------------------------

class Coaction:
    """A certified coaction of a finite group on a dense matrix algebra.

    ``coeff[i, k, u]`` expands the image of the i-th basis element over the
    basis ``b_k (x) lambda_u``.
    """

    def __init__(self, algebra: StarAlgebra, group: FiniteGroup, coeff: np.ndarray,
                 label: str | None = None, certify: bool = True,
                 tol: Tolerance = DEFAULT_TOL):
        self.algebra = algebra
        self.group = group
        self.coeff = np.asarray(coeff, complex)
        d, n = algebra.dim, group.order
        if self.coeff.shape != (d, d, n):
            raise ValueError(f"coefficient tensor must have shape ({d},{d},{n})")
        self.lam = lambda_matrices(group)
        self.label = label or f"delta[{algebra.label};{group.name}]"
        self._delta_mats: np.ndarray | None = None
        if certify:
            self.certify(tol)

    # -- evaluation -------------------------------------------------------------

    def apply_coords(self, c: np.ndarray) -> np.ndarray:
        """Coefficient-algebra coords -> image coefficients (dim B, |G|)."""
        return np.tensordot(np.asarray(c, complex), self.coeff, axes=(0, 0))

    def pair_coeff_to_matrix(self, pair: np.ndarray) -> np.ndarray:
        """(dim B, |G|) image coefficients -> ambient matrix on m|G|."""
        parts = np.tensordot(pair.T, self.algebra.basis, axes=(1, 0))  # (|G|, m, m)
        return group_leg_join(parts, self.group)

    def delta_matrix(self, c: np.ndarray) -> np.ndarray:
        if self._delta_mats is not None:
            return np.tensordot(np.asarray(c, complex), self._delta_mats, axes=(0, 0))
        return self.pair_coeff_to_matrix(self.apply_coords(c))

    def delta_matrices(self) -> np.ndarray:
        """Cached images of the basis, shape (dim, m|G|, m|G|)."""
        if self._delta_mats is None:
            m, n = self.algebra.amb_dim, self.group.order
            parts = np.tensordot(self.coeff, self.algebra.basis, axes=(1, 0))
            # parts[i, u] is the u-th fiber of the i-th image
            mats = np.einsum("duij,uab->diajb", parts, self.lam)
            self._delta_mats = np.ascontiguousarray(
                mats.reshape(self.algebra.dim, m * n, m * n))
        return self._delta_mats

    def of_matrix(self, mat: np.ndarray) -> np.ndarray:
        return self.delta_matrix(self.algebra.coords(mat))

    # -- certification ------------------------------------------------------------

    def identity_residual(self) -> float:
        """Residual of the two coaction iterates on the basis, in coordinates."""
        c = self.coeff
        d, n = self.algebra.dim, self.group.order
        left = c.transpose(0, 2, 1).reshape(d * n, d)        # [(i,u), k]
        right = c.reshape(d, d * n)                          # [k, (l,v)]
        lhs = (left @ right).reshape(d, n, d, n)             # [(i,u),(l,v)]
        rhs = np.zeros_like(lhs)
        for u in range(n):
            rhs[:, u, :, u] = c[:, :, u]
        scale = max(1.0, max_abs(self.algebra.basis))
        return max_abs(lhs - rhs) * scale

    def star_hom_residuals(self, rng=None, max_pairs: int = 2304) -> dict:
        rng = np.random.default_rng(11) if rng is None else rng
        alg, grp = self.algebra, self.group
        d = alg.dim
        mats = self.delta_matrices()
        star = 0.0
        eye = np.eye(d, dtype=complex)
        for i in range(d):
            img_star = self.delta_matrix(alg.star(eye[i]))
            star = max(star, max_abs(img_star - mats[i].conj().T))
        unit = max_abs(self.delta_matrix(alg.unit_coords)
                       - np.kron(alg.unit_matrix, np.eye(grp.order)))
        mult = 0.0
        if d * d <= max_pairs:
            for i in range(d):
                prods = np.einsum("ab,kbc->kac", alg.basis[i], alg.basis)
                imgs = np.stack([self.delta_matrix(alg.coords(p)) for p in prods])
                mult = max(mult, max_abs(imgs - mats[i] @ mats))
        else:
            for _ in range(96):
                c1, c2 = alg.random_coords(rng), alg.random_coords(rng)
                lhs = self.delta_matrix(alg.mul(c1, c2))
                rhs = self.delta_matrix(c1) @ self.delta_matrix(c2)
                mult = max(mult, max_abs(lhs - rhs) / max(1.0, max_abs(rhs)))
        return {"mult": mult, "star": star, "unit": unit}

    def nondegeneracy_rank(self) -> int:
        """Rank of the family delta(b_i)(1 (x) lambda_u) in coordinates."""
        d, n = self.algebra.dim, self.group.order
        grp = self.group
        p = np.empty((d * n, d * n), dtype=complex)
        for u in range(n):
            # right mult by 1 (x) lambda_u sends b_l (x) lambda_w to b_l (x) lambda_{wu}
            table = grp.mul[np.arange(n), grp.inv[u]]       # w -> w u^{-1}
            p[u::n, :] = self.coeff[:, :, table].reshape(d, d * n)
        return rank_qr(p)

    def certify(self, tol: Tolerance = DEFAULT_TOL) -> dict:
        hom = self.star_hom_residuals()
        bound = 1e3 * tol.abs
        if max(hom.values()) > bound:
            raise NotStarHom(f"{self.label}: homomorphism residuals {hom}")
        ident = self.identity_residual()
        if ident > bound:
            raise CoactionIdentityFails(f"{self.label}: identity residual {ident:.3e}")
        rank = self.nondegeneracy_rank()
        full = self.algebra.dim * self.group.order
        if rank != full:
            raise NotNondegenerate(f"{self.label}: rank {rank} < {full}")
        return {"hom": hom, "identity": ident,
                "nondegeneracy_rank": rank, "full_rank": full}


def make_coaction(algebra: StarAlgebra, group: FiniteGroup, delta,
                  label: str | None = None, tol: Tolerance = DEFAULT_TOL) -> Coaction:
    """Build and certify a coaction from basis images.

    ``delta`` may be a coefficient tensor ``(dim, dim, |G|)``, a stack of
    ambient images on ``m|G|``, or a callable on ambient matrices.
    """
    d, n = algebra.dim, group.order
    if callable(delta):
        images = np.stack([delta(b) for b in algebra.basis])
    else:
        arr = np.asarray(delta, complex)
        if arr.shape == (d, d, n):
            return Coaction(algebra, group, arr, label=label, tol=tol)
        images = arr
    if images.shape != (d, algebra.amb_dim * n, algebra.amb_dim * n):
        raise ValueError("delta images have the wrong shape")
    coeff = np.empty((d, d, n), dtype=complex)
    for i, img in enumerate(images):
        parts = group_leg_split(img, algebra.amb_dim, group)
        coeff[i] = algebra.coords_batch(parts).T
        rec = group_leg_join(
            np.tensordot(coeff[i].T, algebra.basis, axes=(1, 0)), group)
        if max_abs(rec - img) > TAU_MEM * max(1.0, max_abs(img)):
            raise NotInAlgebra("delta image is not in B (x) C*(G)")
    return Coaction(algebra, group, coeff, label=label, tol=tol)


def trivial_coaction(algebra: StarAlgebra, group: FiniteGroup) -> Coaction:
    d, n = algebra.dim, group.order
    coeff = np.zeros((d, d, n), dtype=complex)
    coeff[:, :, group.identity] = np.eye(d)
    return Coaction(algebra, group, coeff,
                    label=f"trivial[{algebra.label};{group.name}]")


def comultiplication_coaction(group: FiniteGroup, cg: StarAlgebra | None = None) -> Coaction:
    """The group algebra coacting on itself by the comultiplication."""
    from .staralg import group_algebra

    cg = cg if cg is not None else group_algebra(group)[0]
    n = group.order
    coeff = np.zeros((n, n, n), dtype=complex)
    for s in range(n):
        coeff[s, s, s] = 1.0
    return Coaction(cg, group, coeff, label=f"comult[{group.name}]")


def dual_coaction(cp) -> Coaction:
    """The canonical coaction on a realized crossed product: each fiber is
    tagged by its own group element."""
    alg = cp.dense_algebra()
    grp = cp.group
    d = alg.dim
    coeff = np.zeros((d, d, grp.order), dtype=complex)
    dc = cp.coeff.dim
    for s in range(grp.order):
        for k in range(dc):
            idx = s * dc + k
            coeff[idx, idx, s] = 1.0
    out = Coaction(alg, grp, coeff, label=f"dual[{cp.label}]")
    out.crossed_product = cp
    return out


# -- crossed products by coactions and homogeneous spaces -----------------------

class HomogeneousCP:
    """The spatial crossed product ``span{ delta(b)(1 (x) M_f) }`` for f constant
    on left cosets of H; with H trivial this is the coaction crossed product.

    Elements are tracked by coefficients over a pivoted independent subfamily
    of the natural spanning family; per-column-block structure of the ambient
    matrices makes coefficient recovery a small least-squares solve per group
    element.
    """

    def __init__(self, coaction: Coaction, subgroup: Subgroup | None = None,
                 check: bool = True, label: str | None = None):
        self.coaction = coaction
        b, grp = coaction.algebra, coaction.group
        self.group = grp
        self.subgroup = subgroup if subgroup is not None else grp.trivial_subgroup()
        self.cosets = left_cosets(grp, self.subgroup)
        self.b = b
        m, n = b.amb_dim, grp.order
        self.rep_dim = m * n
        self.label = label or f"({b.label})x[{grp.name}/{self.subgroup.order}]"

        dmats = coaction.delta_matrices()
        # column-block frames: colblock_t(delta(b_i)) stacked over i
        resh = dmats.reshape(b.dim, m, n, m, n)
        self._col_frames = np.stack([
            resh[:, :, :, :, t].reshape(b.dim, -1) for t in range(n)
        ])                                              # (n, dim B, m*n*m)
        self._col_pinv = np.stack([
            np.linalg.pinv(self._col_frames[t].T) for t in range(n)
        ])
        self._colmask = np.zeros((self.cosets.size, m * n), dtype=float)
        for t in range(n):
            mask = np.zeros(n)
            mask[t] = 1.0
            self._colmask[self.cosets.coset_of(t)] += np.tile(mask, m)

        fam = np.stack([
            self._family_signature(i, c)
            for i in range(b.dim) for c in range(self.cosets.size)
        ])
        self._family_sig = fam
        self.pivots = pivoted_basis(fam, tol=1e-9)
        self.dim = len(self.pivots)
        self._basis_sig = fam[self.pivots]
        self._basis_pinv = np.linalg.pinv(self._basis_sig.T)
        self._bmats: np.ndarray | None = None
        unit_fam = np.zeros((b.dim, self.cosets.size), dtype=complex)
        unit_fam[:, :] = np.asarray(b.unit_coords, complex)[:, None]
        self.unit_coords = self.family_to_coords(unit_fam)
        if check:
            self.closure_report()

    # -- signatures ---------------------------------------------------------------

    def _family_signature(self, i: int, c: int) -> np.ndarray:
        sig = np.zeros((self.group.order, self.b.dim), dtype=complex)
        for t in range(self.group.order):
            if self.cosets.coset_of(t) == c:
                sig[t, i] = 1.0
        return sig.reshape(-1)

    def signature(self, mat: np.ndarray) -> tuple[np.ndarray, float]:
        """Per-column-block coefficients of an ambient matrix, with residual."""
        m, n = self.b.amb_dim, self.group.order
        y = np.asarray(mat, complex).reshape(m, n, m, n)
        cols = y.transpose(3, 0, 1, 2).reshape(n, -1)        # (n, m*n*m)
        sig = np.einsum("tdc,tc->td", self._col_pinv.reshape(n, self.b.dim, -1), cols)
        rec = np.einsum("tdc,td->tc", self._col_frames, sig)
        return sig.reshape(-1), max_abs(rec - cols)

    def family_to_coords(self, fam_coeff: np.ndarray) -> np.ndarray:
        """(dim B, cosets) spanning-family coefficients -> pivot coordinates."""
        fam = np.asarray(fam_coeff, complex)
        sig = np.empty(self.group.order * self.b.dim, dtype=complex)
        for t in range(self.group.order):
            sig[t * self.b.dim:(t + 1) * self.b.dim] = fam[:, self.cosets.coset_of(t)]
        return self._basis_pinv @ sig

    def family_coords(self, i: int, c: int) -> np.ndarray:
        fam = np.zeros((self.b.dim, self.cosets.size), dtype=complex)
        fam[i, c] = 1.0
        return self.family_to_coords(fam)

    # -- coefficient-algebra interface ------------------------------------------

    def _assemble_matrix(self, coords) -> np.ndarray:
        m, n = self.b.amb_dim, self.group.order
        dmats = self.coaction.delta_matrices()
        out = np.zeros((m * n, m * n), dtype=complex)
        for k, coeff in enumerate(np.asarray(coords, complex)):
            if coeff == 0:
                continue
            i, c = divmod(self.pivots[k], self.cosets.size)
            out += coeff * (dmats[i] * self._colmask[c][None, :])
        return out

    def basis_matrices(self, budget: int = 30_000_000) -> np.ndarray | None:
        if self._bmats is None and self.dim * self.rep_dim ** 2 <= budget:
            eye = np.eye(self.dim, dtype=complex)
            self._bmats = np.stack([self._assemble_matrix(c) for c in eye])
        return self._bmats

    def to_matrix(self, coords) -> np.ndarray:
        bm = self.basis_matrices()
        if bm is not None:
            return np.tensordot(np.asarray(coords, complex), bm, axes=(0, 0))
        return self._assemble_matrix(coords)

    def to_matrix_batch(self, cs) -> np.ndarray:
        bm = self.basis_matrices()
        if bm is not None:
            return np.tensordot(np.asarray(cs, complex), bm, axes=(-1, 0))
        return np.stack([self._assemble_matrix(c) for c in cs])

    def coords(self, mat) -> np.ndarray:
        sig, resid = self.signature(mat)
        if resid > 1e-5 * max(1.0, max_abs(mat)):
            raise NotInAlgebra(f"{self.label}: column blocks leave the span ({resid:.2e})")
        return self._basis_pinv @ sig

    def coords_batch(self, mats) -> np.ndarray:
        return np.stack([self.coords(m) for m in mats])

    def membership_residual(self, mat) -> float:
        sig, resid = self.signature(mat)
        rec = self.to_matrix(self._basis_pinv @ sig)
        return max(resid, max_abs(rec - mat))

    def mul(self, c1, c2) -> np.ndarray:
        return self.coords(self.to_matrix(c1) @ self.to_matrix(c2))

    def star(self, c) -> np.ndarray:
        return self.coords(self.to_matrix(c).conj().T)

    def trace(self, c) -> complex:
        return complex(np.trace(self.to_matrix(c)))

    def random_coords(self, rng, selfadjoint: bool = False) -> np.ndarray:
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        if selfadjoint:
            c = (c + self.star(c)) / 2
        return c

    def dense_algebra(self) -> StarAlgebra:
        basis = self.to_matrix_batch(np.eye(self.dim, dtype=complex))
        return StarAlgebra(basis, label=self.label,
                           unit=self.to_matrix(self.unit_coords), validate=False)

    # -- canonical maps -----------------------------------------------------------

    def j_b(self) -> StarHom:
        """The canonical embedding of the coefficient algebra."""
        imgs = []
        for i in range(self.b.dim):
            fam = np.zeros((self.b.dim, self.cosets.size), dtype=complex)
            fam[i, :] = 1.0
            imgs.append(self.family_to_coords(fam))
        return StarHom.from_basis_images(self.b, self, imgs)

    def j_c_coords(self, f_values: np.ndarray) -> np.ndarray:
        """Image of a coset-constant function: 1 (x) M_f in element coordinates."""
        fam = np.outer(np.asarray(self.b.unit_coords, complex),
                       np.asarray(f_values, complex))
        return self.family_to_coords(fam)

    def covariance_residual(self) -> float:
        """Residual of the covariance relation tying the canonical embedding to
        the fundamental multiplication-translation unitary (full CP only)."""
        if self.subgroup.order != 1:
            raise NotNormal("covariance relation is stated on the full crossed product")
        grp, b = self.group, self.b
        m, n = b.amb_dim, grp.order
        lam = lambda_matrices(grp)
        w = np.zeros((n * n, n * n), dtype=complex)
        for s in range(n):
            e = np.zeros((n, n))
            e[s, s] = 1.0
            w += np.kron(e, lam[s])
        w_big = np.kron(np.eye(m), w)
        dmats = self.coaction.delta_matrices()
        eye = np.eye(b.dim, dtype=complex)
        worst = 0.0
        for i in range(b.dim):
            pair = self.coaction.apply_coords(eye[i])      # (dim B, |G|)
            parts = np.stack([
                np.tensordot(pair[:, u], dmats, axes=(0, 0)) for u in range(n)
            ])
            lhs = np.einsum("uij,uab->iajb", parts, lam).reshape(m * n * n, m * n * n)
            rhs = w_big @ np.kron(dmats[i], np.eye(n)) @ w_big.conj().T
            worst = max(worst, max_abs(lhs - rhs))
        return worst

    def dual_action(self):
        """The dual action on the full crossed product: right-translate the
        function leg.  Carries its implementing unitaries for spot checks."""
        from .dynamics import MatrixAction

        if self.subgroup.order != 1:
            raise NotNormal("dual action lives on the full crossed product")
        grp = self.group
        m = self.b.amb_dim
        rho = rho_matrices(grp)
        perms = []
        for t in range(grp.order):
            tgt = grp.mul[np.arange(grp.order), grp.inv[t]]   # s -> s t^{-1}
            perm = np.zeros((self.dim, self.dim), dtype=complex)
            for k, p in enumerate(self.pivots):
                i, s = divmod(p, self.cosets.size)
                fam = np.zeros((self.b.dim, self.cosets.size), dtype=complex)
                fam[i, tgt[s]] = 1.0
                perm[:, k] = self.family_to_coords(fam)
            perms.append(perm)
        act = MatrixAction(grp, self, np.stack(perms))
        act.implementing_unitaries = np.stack(
            [np.kron(np.eye(m), rho[t]) for t in range(grp.order)])
        return act

    def closure_report(self, rng=None, tol: Tolerance = DEFAULT_TOL) -> dict:
        """Certify that the span is closed under products and adjoints."""
        rng = np.random.default_rng(23) if rng is None else rng
        worst_mul = worst_star = 0.0
        for _ in range(6):
            c1, c2 = self.random_coords(rng), self.random_coords(rng)
            m1, m2 = self.to_matrix(c1), self.to_matrix(c2)
            scale = max(1.0, max_abs(m1) * max_abs(m2))
            worst_mul = max(worst_mul,
                            max_abs(self.to_matrix(self.mul(c1, c2)) - m1 @ m2) / scale)
            worst_star = max(worst_star,
                             max_abs(self.to_matrix(self.star(c1)) - m1.conj().T))
        report = {"mult": worst_mul, "star": worst_star,
                  "ok": max(worst_mul, worst_star) <= 1e4 * tol.abs}
        if not report["ok"]:
            raise NotInAlgebra(f"{self.label}: span is not a *-algebra: {report}")
        return report

    def __repr__(self) -> str:
        return f"HomogeneousCP({self.label}, dim={self.dim}, ambient={self.rep_dim})"


def coaction_crossed_product(coaction: Coaction) -> HomogeneousCP:
    return HomogeneousCP(coaction, None,
                         label=f"({coaction.algebra.label})x{coaction.group.name}")


def homogeneous_reduced_cp(coaction: Coaction, subgroup: Subgroup) -> HomogeneousCP:
    return HomogeneousCP(coaction, subgroup)


# -- restriction -----------------------------------------------------------------

def restrict_coaction(coaction: Coaction, n_sub: Subgroup):
    """Restrict along the quotient map of a normal subgroup.

    Returns the restricted coaction together with the quotient group and the
    projection array element -> coset index.
    """
    grp = coaction.group
    if not is_normal(grp, n_sub):
        raise NotNormal("restriction needs a normal subgroup")
    quot, proj = quotient_group(grp, n_sub)
    d = coaction.algebra.dim
    coeff = np.zeros((d, d, quot.order), dtype=complex)
    for u in range(grp.order):
        coeff[:, :, proj[u]] += coaction.coeff[:, :, u]
    restricted = Coaction(coaction.algebra, quot, coeff,
                          label=f"{coaction.label}|{quot.name}")
    return restricted, quot, proj


def restriction_iso(coaction: Coaction, n_sub: Subgroup,
                    tol: Tolerance = DEFAULT_TOL) -> dict:
    """Certified isomorphism between the homogeneous-space crossed product at a
    normal subgroup and the crossed product by the restricted coaction."""
    homog = HomogeneousCP(coaction, n_sub)
    restricted, quot, proj = restrict_coaction(coaction, n_sub)
    small = coaction_crossed_product(restricted)
    imgs = []
    for p in homog.pivots:
        i, c = divmod(p, homog.cosets.size)
        # left cosets of N and points of G/N are indexed compatibly: both use
        # first-seen representatives, and quotient_group reuses the coset space
        imgs.append(small.family_coords(i, c))
    hom = StarHom.from_basis_images(homog, small, imgs)
    rep = is_star_hom(hom, tol=tol, max_pairs=0)
    bij = homog.dim == small.dim and rank_qr(hom.coeff) == homog.dim
    return {"star_hom": rep.to_dict(), "bijective": bij, "hom": hom,
            "ok": rep.ok and bij}


# -- stabilization, cocycles, exterior equivalence --------------------------------

def stabilize(coaction: Coaction, k: int,
              stabilized_algebra: StarAlgebra | None = None) -> Coaction:
    """The coaction on B (x) M_k obtained by flipping the matrix leg past the
    group leg."""
    b = coaction.algebra
    big = stabilized_algebra if stabilized_algebra is not None \
        else tensor(b, matrix_algebra(k))
    d, n = b.dim, coaction.group.order
    kk = k * k
    coeff = np.zeros((d * kk, d * kk, n), dtype=complex)
    for p in range(kk):
        coeff[p::kk, p::kk, :] = coaction.coeff
    return Coaction(big, coaction.group, coeff, label=f"stab[{coaction.label};{k}]")


@dataclass
class Cocycle:
    matrix: np.ndarray          # unitary in B (x) C*(G), ambient m|G|
    coaction: Coaction


def is_cocycle(v: np.ndarray, coaction: Coaction, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Certify unitarity and the exterior-equivalence identity of a one-cocycle."""
    b, grp = coaction.algebra, coaction.group
    m, n = b.amb_dim, grp.order
    v = np.asarray(v, complex)
    unit_res = max(max_abs(v @ v.conj().T - np.eye(m * n)),
                   max_abs(v.conj().T @ v - np.eye(m * n)))
    parts = group_leg_split(v, m, grp)
    rejoin = max_abs(group_leg_join(parts, grp) - v)
    lam = lambda_matrices(grp)
    lhs = np.einsum("uij,uab,ucd->iacjbd", parts, lam, lam)
    lhs = lhs.reshape(m * n * n, m * n * n)
    dparts = np.stack([coaction.of_matrix(p) for p in parts])  # (|G|, mn, mn)
    mid = np.einsum("uij,uab->iajb", dparts, lam).reshape(m * n * n, m * n * n)
    rhs = np.kron(v, np.eye(n)) @ mid
    ident = max_abs(lhs - rhs)
    return {"unitarity": unit_res, "identity": ident, "rejoin": rejoin,
            "ok": max(unit_res, ident, rejoin) <= 1e3 * tol.abs}


def twist(coaction: Coaction, v: np.ndarray | Cocycle, tol: Tolerance = DEFAULT_TOL,
          check: bool = True) -> Coaction:
    """The exterior-equivalent coaction conjugated by a certified one-cocycle."""
    vmat = v.matrix if isinstance(v, Cocycle) else np.asarray(v, complex)
    if check:
        rep = is_cocycle(vmat, coaction, tol)
        if not rep["ok"]:
            raise CocycleIdentityFails(f"cocycle certification failed: {rep}")
    b, grp = coaction.algebra, coaction.group
    d = b.dim
    coeff = np.empty((d, d, grp.order), dtype=complex)
    dmats = coaction.delta_matrices()
    for i in range(d):
        img = vmat @ dmats[i] @ vmat.conj().T
        parts = group_leg_split(img, b.amb_dim, grp)
        rec = group_leg_join(parts, grp)
        if max_abs(rec - img) > TAU_MEM * max(1.0, max_abs(img)):
            raise NotInAlgebra("twisted image leaves B (x) C*(G)")
        coeff[i] = b.coords_batch(parts).T
    return Coaction(b, grp, coeff, label=f"AdV[{coaction.label}]")


def fundamental_unitary(g: FiniteGroup) -> tuple[np.ndarray, dict]:
    """The multiplication-translation unitary on the doubled group space, with
    its unitarity and pentagon-type certification."""
    n = g.order
    lam = lambda_matrices(g)
    w = np.zeros((n * n, n * n), dtype=complex)
    for s in range(n):
        e = np.zeros((n, n))
        e[s, s] = 1.0
        w += np.kron(e, lam[s])
    unit_res = max(max_abs(w @ w.conj().T - np.eye(n * n)),
                   max_abs(w.conj().T @ w - np.eye(n * n)))
    lhs = np.zeros((n ** 3, n ** 3), dtype=complex)
    w13 = np.zeros_like(lhs)
    for s in range(n):
        e = np.zeros((n, n))
        e[s, s] = 1.0
        lhs += np.kron(e, np.kron(lam[s], lam[s]))
        w13 += np.kron(e, np.kron(np.eye(n), lam[s]))
    w12 = np.kron(w, np.eye(n))
    pentagon = max_abs(lhs - w12 @ w13)
    return w, {"unitarity": unit_res, "pentagon": pentagon}


# -- Katayama duality ---------------------------------------------------------------

@dataclass
class KatayamaResult:
    iso: StarHom
    target: StarAlgebra
    double_cp: object
    stabilized: Coaction
    twisted: Coaction
    cocycle_report: dict
    star_hom_report: dict
    intertwine_residual: float
    bijective: bool

    @property
    def ok(self) -> bool:
        return (self.star_hom_report["ok"] and self.bijective
                and self.cocycle_report["ok"])


def katayama_iso(coaction: Coaction, tol: Tolerance = DEFAULT_TOL) -> KatayamaResult:
    """Certified isomorphism of the double crossed product onto B (x) M_|G|,
    intertwining the double-dual coaction with the cocycle-twisted stabilized
    coaction.

    Raises IsoSearchFailed when any residual exceeds tolerance; a convention
    mismatch between the spatial realizations would surface here.
    """
    from .dynamics import CrossedProduct

    b, grp = coaction.algebra, coaction.group
    n = grp.order
    cp1 = coaction_crossed_product(coaction)
    dual_act = cp1.dual_action()
    cp2 = CrossedProduct(dual_act, label=f"({cp1.label})x{grp.name}")
    target = tensor(b, matrix_algebra(n))
    rho = rho_matrices(grp)

    eye1 = np.eye(cp1.dim, dtype=complex)
    imgs = []
    for t in range(n):
        for k in range(cp1.dim):
            mat = cp1.to_matrix(eye1[k]) @ np.kron(np.eye(b.amb_dim), rho[t])
            imgs.append(target.coords(mat))
    # cp2 coordinates are (t, k) with the group leg major
    kappa = StarHom.from_basis_images(cp2, target, imgs)
    hom_rep = is_star_hom(kappa, tol=tol, max_pairs=0)
    bij = cp2.dim == target.dim and kappa.is_bijective(tol=1e-9)

    w, _ = fundamental_unitary(grp)
    v = np.kron(np.eye(b.amb_dim), w.conj().T)
    stab = stabilize(coaction, n, stabilized_algebra=target)
    cocycle_rep = is_cocycle(v, stab, tol)
    eps = twist(stab, v, tol, check=False)

    worst = 0.0
    eye2 = np.eye(cp2.dim, dtype=complex)
    for t in range(n):
        for k in range(cp1.dim):
            idx = t * cp1.dim + k
            kap = kappa.apply_coords(eye2[idx])
            lhs = np.zeros((target.dim, n), dtype=complex)
            lhs[:, t] = kap                      # image tensored with lambda_t
            rhs = eps.apply_coords(kap)
            worst = max(worst, max_abs(lhs - rhs))
    worst = worst * max(1.0, max_abs(target.basis))

    result = KatayamaResult(kappa, target, cp2, stab, eps, cocycle_rep,
                            hom_rep.to_dict(), worst, bij)
    if not result.ok or worst > 1e3 * tol.abs:
        raise IsoSearchFailed(
            f"katayama certification failed: hom={hom_rep.to_dict()}, "
            f"intertwine={worst:.3e}, bijective={bij}")
    return result
