"""Actions of finite groups on matrix algebras and their crossed products.

A crossed product is always realized concretely: the coefficient algebra is
represented faithfully on its ambient space, the regular representation
supplies the group unitaries, and the *-algebra generated on the doubled
space is the crossed product.  Elements are coefficient functions on the
group, stored as coordinate arrays of shape ``(|G|, dim_coeff)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ActionMismatch, DimensionOverflow, NotAnAction, NotCovariant
from .fingroup import FiniteGroup, CosetSpace, Subgroup, modular, product_group
from .staralg import (
    DEFAULT_TOL,
    TAU_MEM,
    AMBIENT_CAP,
    StarAlgebra,
    StarHom,
    Tolerance,
    lambda_matrices,
    max_abs,
    rho_matrices,
    tensor,
)

__all__ = [
    "GroupAction",
    "TrivialAction",
    "InnerAction",
    "MatrixAction",
    "SiteAction",
    "SubgroupAction",
    "ConjugationAction",
    "function_algebra_over",
    "diagonal_action",
    "translation_action_left",
    "translation_action_right",
    "tilde_action",
    "double_dual_action",
    "is_action",
    "CcFunction",
    "convolve",
    "involute",
    "CovariantRep",
    "induced_rep",
    "CrossedProduct",
    "crossed_product",
    "stone_von_neumann_check",
    "dual_coaction",
]


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

class GroupAction:
    """An action of a finite group on a coefficient algebra.

    Subclasses implement :meth:`coord_apply`; the algebra may be a dense
    :class:`~starcross.staralg.StarAlgebra` or any object with the same
    coordinate interface (e.g. a realized crossed product).
    """

    def __init__(self, group: FiniteGroup, algebra):
        self.group = group
        self.algebra = algebra

    def coord_apply(self, s: int, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def coord_apply_batch(self, s: int, coords: np.ndarray) -> np.ndarray:
        """Apply one automorphism to a stack of coordinate vectors."""
        return np.stack([self.coord_apply(s, c) for c in coords])

    def matrix_apply(self, s: int, mat: np.ndarray) -> np.ndarray:
        return self.algebra.to_matrix(self.coord_apply(s, self.algebra.coords(mat)))

    def aut_matrix(self, s: int) -> np.ndarray:
        """The automorphism as a dim x dim matrix on coordinates."""
        return self.coord_apply_batch(s, np.eye(self.algebra.dim, dtype=complex)).T

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.group.name} on {self.algebra.label})"


class TrivialAction(GroupAction):
    def coord_apply(self, s, coords):
        return np.asarray(coords, complex)

    def coord_apply_batch(self, s, coords):
        return np.asarray(coords, complex)


class InnerAction(GroupAction):
    """alpha_s = Ad(u_s) for a unitary representation ``u`` on the ambient space."""

    def __init__(self, group, algebra, unitaries):
        super().__init__(group, algebra)
        self.unitaries = np.asarray(unitaries, complex)
        if self.unitaries.shape != (group.order, algebra.amb_dim, algebra.amb_dim):
            raise NotAnAction("need one ambient unitary per group element")

    def coord_apply(self, s, coords):
        u = self.unitaries[s]
        return self.algebra.coords(u @ self.algebra.to_matrix(coords) @ u.conj().T)

    def coord_apply_batch(self, s, coords):
        u = self.unitaries[s]
        mats = self.algebra.to_matrix_batch(np.asarray(coords, complex))
        return self.algebra.coords_batch(u @ mats @ u.conj().T)


class MatrixAction(GroupAction):
    """Explicit linear maps on coordinates, one ``dim x dim`` matrix per element."""

    def __init__(self, group, algebra, maps):
        super().__init__(group, algebra)
        self.maps = np.asarray(maps, complex)
        if self.maps.shape != (group.order, algebra.dim, algebra.dim):
            raise NotAnAction("need one coordinate map per group element")

    def coord_apply(self, s, coords):
        return self.maps[s] @ np.asarray(coords, complex)

    def coord_apply_batch(self, s, coords):
        return np.asarray(coords, complex) @ self.maps[s].T

    def aut_matrix(self, s):
        return self.maps[s]


class SiteAction(GroupAction):
    """An action on a function algebra ``C(X, A)`` combining a site permutation
    with a base automorphism applied pointwise.

    ``site_pull[g, x]`` is the site whose value feeds site ``x`` after acting
    by ``g`` (i.e. ``(g.f)(x) = base_{base_elem[g]}(f(site_pull[g, x]))``), and
    ``base_elem[g]`` indexes the base action's group.
    """

    def __init__(self, group, funcalg, base_action: GroupAction, site_pull, base_elem):
        super().__init__(group, funcalg)
        self.base_action = base_action
        self.site_pull = np.asarray(site_pull, dtype=np.int64)
        self.base_elem = np.asarray(base_elem, dtype=np.int64)
        self.sites = funcalg.sites
        self.base_dim = base_action.algebra.dim

    def values_apply(self, g: int, values: np.ndarray) -> np.ndarray:
        """Apply to a ``(sites, n, n)`` value array."""
        gathered = values[self.site_pull[g]]
        return apply_base_batch(self.base_action, int(self.base_elem[g]), gathered)

    def coord_apply(self, g, coords):
        c = np.asarray(coords, complex).reshape(self.sites, self.base_dim)
        gathered = c[self.site_pull[g]]
        out = self.base_action.coord_apply_batch(int(self.base_elem[g]), gathered)
        return out.reshape(-1)

    def coord_apply_batch(self, g, coords):
        c = np.asarray(coords, complex).reshape(len(coords), self.sites, self.base_dim)
        gathered = c[:, self.site_pull[g], :]
        flat = gathered.reshape(-1, self.base_dim)
        out = self.base_action.coord_apply_batch(int(self.base_elem[g]), flat)
        return out.reshape(len(coords), -1)


class SubgroupAction(GroupAction):
    """Restriction of an action to a subgroup, reindexed over the subgroup's own group."""

    def __init__(self, action: GroupAction, subgroup: Subgroup):
        self.parent_action = action
        self.subgroup = subgroup
        super().__init__(subgroup.as_group(), action.algebra)

    def coord_apply(self, s, coords):
        return self.parent_action.coord_apply(self.subgroup.members[s], coords)

    def coord_apply_batch(self, s, coords):
        return self.parent_action.coord_apply_batch(self.subgroup.members[s], coords)


class ConjugationAction(GroupAction):
    """Action by conjugation with explicit unitaries on the representation space
    of the coefficient algebra (which may be a realized crossed product)."""

    def __init__(self, group, algebra, unitaries, coord_shortcut=None):
        super().__init__(group, algebra)
        self.unitaries = np.asarray(unitaries, complex)
        if self.unitaries.shape[0] != group.order:
            raise NotAnAction("need one unitary per group element")
        self._shortcut = coord_shortcut

    def coord_apply(self, s, coords):
        if self._shortcut is not None:
            return self._shortcut(s, np.asarray(coords, complex))
        u = self.unitaries[s]
        mat = self.algebra.to_matrix(coords)
        return self.algebra.coords(u @ mat @ u.conj().T)

    def coord_apply_batch(self, s, coords):
        if self._shortcut is not None:
            return np.stack([self._shortcut(s, c) for c in np.asarray(coords, complex)])
        return super().coord_apply_batch(s, coords)


def apply_base_batch(action: GroupAction, s: int, values: np.ndarray) -> np.ndarray:
    """Apply a base automorphism to a stack of ambient values ``(..., n, n)``."""
    if isinstance(action, TrivialAction):
        return np.asarray(values, complex)
    if isinstance(action, InnerAction):
        u = action.unitaries[s]
        return u @ np.asarray(values, complex) @ u.conj().T
    alg = action.algebra
    shape = values.shape
    flat = np.asarray(values, complex).reshape(-1, shape[-2], shape[-1])
    coords = alg.coords_batch(flat)
    out = alg.to_matrix_batch(action.coord_apply_batch(s, coords))
    return out.reshape(shape)


# -- function algebras over sites ------------------------------------------------

class FunctionAlgebra(StarAlgebra):
    """``C(X, A)``: block-diagonal ambient, one ``A`` block per site.

    Coordinates are laid out site-major: ``(site, base_coord)``.
    """

    def __init__(self, base: StarAlgebra, sites: int, label: str):
        self.base = base
        self.sites = sites
        n = base.amb_dim
        dim = sites * base.dim
        basis = np.zeros((dim, sites * n, sites * n), dtype=complex)
        for x in range(sites):
            for k in range(base.dim):
                basis[x * base.dim + k, x * n:(x + 1) * n, x * n:(x + 1) * n] = base.basis[k]
        unit = np.kron(np.eye(sites), base.unit_matrix)
        super().__init__(basis, label=label, unit=unit, validate=False)

    def values_to_coords(self, values: np.ndarray) -> np.ndarray:
        """(sites, n, n) value array -> flat coordinates."""
        return self.base.coords_batch(np.asarray(values, complex)).reshape(-1)

    def coords_to_values(self, coords: np.ndarray) -> np.ndarray:
        c = np.asarray(coords, complex).reshape(self.sites, self.base.dim)
        return self.base.to_matrix_batch(c)


def function_algebra_over(base: StarAlgebra, sites: int, label: str | None = None) -> FunctionAlgebra:
    return FunctionAlgebra(base, sites, label or f"C({sites},{base.label})")


def diagonal_action(base_action: GroupAction, cosets: CosetSpace,
                    funcalg: FunctionAlgebra | None = None) -> SiteAction:
    """The diagonal action on functions over G/H: translate cosets, apply the base."""
    g = base_action.group
    if cosets.parent is not g:
        raise ActionMismatch("coset space belongs to a different group")
    funcalg = funcalg or function_algebra_over(
        base_action.algebra, cosets.size,
        label=f"C({g.name}/{cosets.subgroup.order},{base_action.algebra.label})")
    pull = np.empty((g.order, cosets.size), dtype=np.int64)
    for t in range(g.order):
        for c, r in enumerate(cosets.reps):
            pull[t, c] = cosets.coset_of(g.op(g.inv[t], r))
    return SiteAction(g, funcalg, base_action, pull, np.arange(g.order))


def translation_action_left(g: FiniteGroup, base_algebra: StarAlgebra | None = None,
                            funcalg: FunctionAlgebra | None = None) -> SiteAction:
    """Left translation on C(G): (t.f)(s) = f(t^{-1} s); no base twist."""
    from .staralg import scalar_algebra

    base = base_algebra or scalar_algebra()
    funcalg = funcalg or function_algebra_over(base, g.order, label=f"C({g.name},{base.label})")
    pull = g.mul[g.inv, :]              # pull[t, s] = t^{-1} s
    return SiteAction(g, funcalg, TrivialAction(g, base), pull, np.full(g.order, g.identity))


def translation_action_right(g: FiniteGroup, base_algebra: StarAlgebra | None = None,
                             funcalg: FunctionAlgebra | None = None) -> SiteAction:
    """Right translation on C(G): (t.f)(s) = f(s t)."""
    from .staralg import scalar_algebra

    base = base_algebra or scalar_algebra()
    funcalg = funcalg or function_algebra_over(base, g.order, label=f"C({g.name},{base.label})")
    pull = g.mul.T.copy()               # pull[t, s] = s t
    return SiteAction(g, funcalg, TrivialAction(g, base), pull, np.full(g.order, g.identity))


def tilde_action(base_action: GroupAction, h: Subgroup,
                 funcalg: FunctionAlgebra | None = None) -> SiteAction:
    """The H x G action on C(G, A): ((h,t).f)(s) = alpha_t(f(t^{-1} s h))."""
    g = base_action.group
    if h.parent is not g:
        raise ActionMismatch("subgroup belongs to a different group")
    hg = product_group(h.as_group(), g)
    funcalg = funcalg or function_algebra_over(
        base_action.algebra, g.order, label=f"C({g.name},{base_action.algebra.label})")
    pull = np.empty((hg.order, g.order), dtype=np.int64)
    base_elem = np.empty(hg.order, dtype=np.int64)
    for idx in range(hg.order):
        hh = h.members[idx // g.order]
        t = idx % g.order
        base_elem[idx] = t
        for s in range(g.order):
            pull[idx, s] = g.op(g.op(g.inv[t], s), hh)
    act = SiteAction(hg, funcalg, base_action, pull, base_elem)
    act.factors = (h, g)
    return act


def is_action(action: GroupAction, tol: Tolerance = DEFAULT_TOL, rng=None) -> dict:
    """Certify the homomorphism property and *-automorphism property."""
    rng = np.random.default_rng(0) if rng is None else rng
    g, alg = action.group, action.algebra
    eye = np.eye(alg.dim, dtype=complex)
    hom = 0.0
    for s in range(g.order):
        for t in range(g.order):
            st = g.op(s, t)
            lhs = action.coord_apply_batch(s, action.coord_apply_batch(t, eye))
            rhs = action.coord_apply_batch(st, eye)
            hom = max(hom, max_abs(lhs - rhs))
    ident = max_abs(action.coord_apply_batch(g.identity, eye) - eye)
    star = mult = 0.0
    for _ in range(16):
        s = int(rng.integers(g.order))
        c1, c2 = alg.random_coords(rng), alg.random_coords(rng)
        lhs = action.coord_apply(s, alg.mul(c1, c2))
        rhs = alg.mul(action.coord_apply(s, c1), action.coord_apply(s, c2))
        mult = max(mult, max_abs(alg.to_matrix(lhs - rhs)))
        lhs = action.coord_apply(s, alg.star(c1))
        rhs = alg.star(action.coord_apply(s, c1))
        star = max(star, max_abs(alg.to_matrix(lhs - rhs)))
    worst = max(hom, ident, star, mult)
    report = {"hom": hom, "identity": ident, "star": star, "mult": mult,
              "ok": worst <= 100 * tol.abs}
    if not report["ok"]:
        raise NotAnAction(f"action certification failed: {report}")
    return report


# ---------------------------------------------------------------------------
# Convolution algebra of A-valued functions on G
# ---------------------------------------------------------------------------

class CcFunction:
    """A coefficient-algebra-valued function on the group, as ambient values."""

    def __init__(self, action: GroupAction, values):
        self.action = action
        self.values = np.asarray(values, complex)
        n = action.algebra.amb_dim
        if self.values.shape != (action.group.order, n, n):
            raise ActionMismatch(
                f"values must have shape ({action.group.order}, {n}, {n})")

    def coords(self) -> np.ndarray:
        return self.action.algebra.coords_batch(self.values).reshape(-1)

    def __add__(self, other):
        return CcFunction(self.action, self.values + other.values)

    def __sub__(self, other):
        return CcFunction(self.action, self.values - other.values)

    def __rmul__(self, scalar):
        return CcFunction(self.action, scalar * self.values)


def point_mass(action: GroupAction, s: int, value) -> CcFunction:
    vals = np.zeros((action.group.order, action.algebra.amb_dim, action.algebra.amb_dim), complex)
    vals[s] = value
    return CcFunction(action, vals)


def convolve(f: CcFunction, g: CcFunction) -> CcFunction:
    """Twisted convolution of coefficient functions."""
    if f.action is not g.action:
        raise ActionMismatch("functions live over different actions")
    act, grp = f.action, f.action.group
    out = np.zeros_like(f.values)
    for t in range(grp.order):
        shifted = g.values[grp.mul[grp.inv[t]]]          # s -> g(t^{-1} s)
        out += f.values[t] @ apply_base_batch(act, t, shifted)
    return CcFunction(act, out)


def involute(f: CcFunction) -> CcFunction:
    """Twisted involution of a coefficient function."""
    act, grp = f.action, f.action.group
    out = np.empty_like(f.values)
    for s in range(grp.order):
        out[s] = apply_base_batch(act, s, f.values[grp.inv[s]].conj().T) / modular(grp, s)
    return CcFunction(act, out)


# ---------------------------------------------------------------------------
# Covariant representations and crossed products
# ---------------------------------------------------------------------------

class PiRep:
    """A representation of a coefficient algebra by its images on basis elements."""

    def __init__(self, algebra, images):
        self.algebra = algebra
        self.images = np.asarray(images, complex)
        if self.images.shape[0] != algebra.dim:
            raise NotCovariant("need one image per basis element")
        self.space_dim = self.images.shape[1]

    @classmethod
    def ambient(cls, algebra) -> "PiRep":
        basis = getattr(algebra, "basis", None)
        if basis is not None:
            return cls(algebra, np.asarray(basis, complex))
        eye = np.eye(algebra.dim, dtype=complex)
        return cls(algebra, np.stack([algebra.to_matrix(c) for c in eye]))

    @classmethod
    def from_star_hom(cls, hom: StarHom) -> "PiRep":
        eye = np.eye(hom.domain.dim, dtype=complex)
        return cls(hom.domain,
                   np.stack([hom.codomain.to_matrix(hom.apply_coords(c)) for c in eye]))

    def apply(self, coords) -> np.ndarray:
        return np.tensordot(np.asarray(coords, complex), self.images, axes=(-1, 0))

    def is_faithful(self, tol: float = 1e-9) -> bool:
        flat = self.images.reshape(self.algebra.dim, -1)
        return np.linalg.matrix_rank(flat, tol=tol * max(1.0, max_abs(flat))) == self.algebra.dim


@dataclass
class CovariantRep:
    """A covariant pair: a coefficient representation and compatible group unitaries."""

    pi: PiRep
    unitaries: np.ndarray
    action: GroupAction

    def covariance_residual(self) -> float:
        grp, alg = self.action.group, self.action.algebra
        eye = np.eye(alg.dim, dtype=complex)
        worst = 0.0
        for s in range(grp.order):
            u = self.unitaries[s]
            for k in range(alg.dim):
                lhs = u @ self.pi.apply(eye[k]) @ u.conj().T
                rhs = self.pi.apply(self.action.coord_apply(s, eye[k]))
                worst = max(worst, max_abs(lhs - rhs))
        return worst

    def integrated(self, func_coords: np.ndarray) -> np.ndarray:
        """The integrated form applied to crossed-product coordinates (|G|, d)."""
        grp = self.action.group
        c = np.asarray(func_coords, complex).reshape(grp.order, -1)
        return sum(self.pi.apply(c[s]) @ self.unitaries[s] for s in range(grp.order))


def induced_rep(pi: PiRep | StarHom, action: GroupAction) -> CovariantRep:
    """The induced covariant pair on the doubled space.

    The coefficient rep twists fiberwise by the inverse action and the group
    acts by ``1 (x) lambda``; faithfulness of the integrated form for faithful
    input is certified downstream by rank checks, not assumed.
    """
    if isinstance(pi, StarHom):
        pi = PiRep.from_star_hom(pi)
    grp, alg = action.group, action.algebra
    if pi.algebra.dim != alg.dim:
        raise NotCovariant("representation is of a different algebra")
    m, n = pi.space_dim, grp.order
    images = np.zeros((alg.dim, m * n, m * n), dtype=complex)
    eye = np.eye(alg.dim, dtype=complex)
    for s in range(n):
        block = pi.apply(action.coord_apply_batch(grp.inv[s], eye))
        images[:, m * s:m * (s + 1), m * s:m * (s + 1)] = block
    lam = lambda_matrices(grp)
    # ambient index is (group-leg, pi-leg) with the group leg major
    unitaries = np.stack([np.kron(lam[s], np.eye(m)) for s in range(n)])
    return CovariantRep(PiRep(alg, images), unitaries, action)


class CrossedProduct:
    """The crossed product of a finite action, realized on the doubled space.

    Coordinates are coefficient functions ``(|G|, dim_coeff)`` flattened to a
    vector; multiplication is twisted convolution, the involution is the
    twisted adjoint, and :meth:`to_matrix` is the faithful realization via the
    induced representation of the coefficient algebra's ambient inclusion.
    """

    def __init__(self, action: GroupAction, label: str | None = None, check: bool = True):
        self.action = action
        self.group = action.group
        self.coeff = action.algebra
        self.dim = self.group.order * self.coeff.dim
        self.rep_dim = self.coeff.rep_dim * self.group.order
        if self.rep_dim > AMBIENT_CAP:
            raise DimensionOverflow(f"crossed product ambient {self.rep_dim} exceeds cap")
        self.label = label or f"({self.coeff.label})x{self.group.name}"
        self.unit_coords = np.zeros(self.dim, dtype=complex)
        self._unit_block(self.unit_coords)[self.group.identity] = self.coeff.unit_coords
        self._scale = 1.0
        if check:
            self.validate()

    def _unit_block(self, flat) -> np.ndarray:
        return flat.reshape(self.group.order, self.coeff.dim)

    def pack(self, per_element: np.ndarray) -> np.ndarray:
        return np.asarray(per_element, complex).reshape(-1)

    def unpack(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, complex).reshape(self.group.order, self.coeff.dim)

    # -- CoeffAlgebra interface ------------------------------------------------

    def mul(self, c1, c2) -> np.ndarray:
        grp = self.group
        f, g = self.unpack(c1), self.unpack(c2)
        out = np.zeros_like(f)
        for t in range(grp.order):
            shifted = g[grp.mul[grp.inv[t]]]
            twisted = self.action.coord_apply_batch(t, shifted)
            left = self.coeff.to_matrix(f[t])
            prod = left @ self.coeff.to_matrix_batch(twisted)
            out += self.coeff.coords_batch(prod)
        return self.pack(out)

    def star(self, c) -> np.ndarray:
        grp = self.group
        f = self.unpack(c)
        out = np.empty_like(f)
        for s in range(grp.order):
            adj = self.coeff.star(f[grp.inv[s]])
            out[s] = self.action.coord_apply(s, adj) / modular(grp, s)
        return self.pack(out)

    def to_matrix(self, coords) -> np.ndarray:
        grp = self.group
        m = self.coeff.rep_dim
        f = self.unpack(coords)
        eyeg = np.arange(grp.order)
        out = np.zeros((self.rep_dim, self.rep_dim), dtype=complex)
        for s in range(grp.order):
            if not np.any(f[s]):
                continue
            twisted = np.stack([self.action.coord_apply(grp.inv[a], f[s]) for a in eyeg])
            blocks = np.stack([self.coeff.to_matrix(t) for t in twisted])
            cols = grp.mul[grp.inv[s]]          # b = s^{-1} a
            for a in range(grp.order):
                b = cols[a]
                out[m * a:m * (a + 1), m * b:m * (b + 1)] += blocks[a]
        return out

    def to_matrix_batch(self, cs) -> np.ndarray:
        return np.stack([self.to_matrix(c) for c in cs])

    def coords(self, mat) -> np.ndarray:
        """Structural inverse of :meth:`to_matrix` (reads the identity block row)."""
        grp = self.group
        m = self.coeff.rep_dim
        e = grp.identity
        f = np.empty((grp.order, self.coeff.dim), dtype=complex)
        row = np.asarray(mat, complex)[m * e:m * (e + 1)]
        for s in range(grp.order):
            b = grp.inv[s]
            f[s] = self.coeff.coords(row[:, m * b:m * (b + 1)])
        return self.pack(f)

    def coords_batch(self, mats) -> np.ndarray:
        return np.stack([self.coords(m) for m in mats])

    def trace(self, coords) -> complex:
        return complex(np.trace(self.to_matrix(coords)))

    def membership_residual(self, mat) -> float:
        return max_abs(self.to_matrix(self.coords(mat)) - mat)

    def random_coords(self, rng, selfadjoint: bool = False) -> np.ndarray:
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        if selfadjoint:
            c = (c + self.star(c)) / 2
        return c

    # -- canonical maps ----------------------------------------------------------

    def embed_function(self, f: CcFunction | np.ndarray) -> np.ndarray:
        """Coefficient-function values ``(|G|, n, n)`` -> crossed-product coordinates."""
        vals = f.values if isinstance(f, CcFunction) else np.asarray(f, complex)
        return self.pack(self.coeff.coords_batch(vals))

    def function_values(self, coords) -> np.ndarray:
        return self.coeff.to_matrix_batch(self.unpack(coords))

    def i_coeff(self, c) -> np.ndarray:
        out = np.zeros((self.group.order, self.coeff.dim), dtype=complex)
        out[self.group.identity] = np.asarray(c, complex)
        return self.pack(out)

    def i_group(self, s: int) -> np.ndarray:
        out = np.zeros((self.group.order, self.coeff.dim), dtype=complex)
        out[s] = self.coeff.unit_coords
        return self.pack(out)

    def basis_coords(self, s: int, k: int) -> np.ndarray:
        out = np.zeros((self.group.order, self.coeff.dim), dtype=complex)
        out[s, k] = 1.0
        return self.pack(out)

    def dense_algebra(self, budget: int = 40_000_000) -> StarAlgebra:
        """Materialize as a dense StarAlgebra (for small realizations only)."""
        cost = self.dim * self.rep_dim * self.rep_dim
        if cost > budget:
            raise DimensionOverflow(f"dense materialization would need {cost} entries")
        basis = np.stack([self.to_matrix(c) for c in np.eye(self.dim, dtype=complex)])
        return StarAlgebra(basis, label=self.label, unit=self.to_matrix(self.unit_coords),
                           validate=False)

    def validate(self, rng=None, tol: Tolerance = DEFAULT_TOL) -> dict:
        """Certify that the realization is a faithful *-representation of the
        twisted convolution algebra."""
        rng = np.random.default_rng(7) if rng is None else rng
        worst_mul = worst_star = worst_inv = 0.0
        for _ in range(4):
            c1, c2 = self.random_coords(rng), self.random_coords(rng)
            m1, m2 = self.to_matrix(c1), self.to_matrix(c2)
            worst_mul = max(worst_mul, max_abs(self.to_matrix(self.mul(c1, c2)) - m1 @ m2))
            worst_star = max(worst_star, max_abs(self.to_matrix(self.star(c1)) - m1.conj().T))
            worst_inv = max(worst_inv, max_abs(self.coords(m1) - c1))
        scale = max(1.0, max_abs(m1), max_abs(m2))
        report = {"mult": worst_mul, "star": worst_star, "roundtrip": worst_inv,
                  "ok": max(worst_mul, worst_star, worst_inv) <= 1e4 * tol.abs * scale ** 2}
        if not report["ok"]:
            raise NotAnAction(f"crossed product realization failed: {report}")
        return report

    def __repr__(self) -> str:
        return f"CrossedProduct({self.label}, dim={self.dim}, ambient={self.rep_dim})"


def crossed_product(action: GroupAction, label: str | None = None) -> CrossedProduct:
    return CrossedProduct(action, label=label)


def double_dual_action(cp: CrossedProduct) -> ConjugationAction:
    """Right translation in the function coordinate of ``C(G,A) x G``.

    Acts on crossed-product coordinates by ``f(r, s) -> f(r, s t)`` and is
    implemented spatially by conjugation with ``1 (x) rho_t (x) 1`` in the
    realization (certified by ``verify_implementing_unitaries``).
    """
    grp = cp.group
    funcalg = cp.coeff
    if not isinstance(funcalg, FunctionAlgebra) or funcalg.sites != grp.order:
        raise ActionMismatch("double dual action needs a crossed product of C(G,A)")
    base_dim = funcalg.base.dim
    unitaries = np.stack([ahh_unitary(cp, t) for t in range(grp.order)])

    def shortcut(t: int, coords: np.ndarray) -> np.ndarray:
        f = coords.reshape(grp.order, grp.order, base_dim)
        return f[:, grp.mul[:, t], :].reshape(-1)

    act = ConjugationAction(grp, cp, unitaries, coord_shortcut=shortcut)
    return act


def ahh_unitary(cp: CrossedProduct, t: int) -> np.ndarray:
    """The permutation unitary implementing the double dual action at ``t``.

    The realization's ambient layout is (convolution leg, site leg, base leg);
    right translation acts on the site leg only.
    """
    grp = cp.group
    funcalg = cp.coeff
    n = funcalg.base.amb_dim
    rho = rho_matrices(grp)
    site_rho = np.kron(rho[t], np.eye(n))
    return np.kron(np.eye(grp.order), site_rho)


def verify_implementing_unitaries(cp: CrossedProduct, action: GroupAction,
                                  unitary_fn=ahh_unitary, rng=None) -> float:
    """Max residual of Ad(unitary) against the action on sampled elements."""
    rng = np.random.default_rng(3) if rng is None else rng
    worst = 0.0
    for t in range(cp.group.order):
        u = unitary_fn(cp, t)
        for _ in range(2):
            c = cp.random_coords(rng)
            lhs = u @ cp.to_matrix(c) @ u.conj().T
            rhs = cp.to_matrix(action.coord_apply(t, c))
            worst = max(worst, max_abs(lhs - rhs) / max(1.0, max_abs(rhs)))
    return worst


def stone_von_neumann_check(cp: CrossedProduct, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Certify the kernel-operator isomorphism of ``C(G,A) x G`` onto A (x) M_G.

    The localized covariant pair (fiberwise-twisted multiplication, left
    translation) integrates to kernel operators; the resulting map doubles as
    a strong regression test of twisted convolution.
    """
    grp = cp.group
    funcalg = cp.coeff
    if not isinstance(funcalg, FunctionAlgebra) or funcalg.sites != grp.order:
        raise ActionMismatch("check needs a crossed product of C(G,A)")
    base = funcalg.base
    base_action = None
    # recover the base action from the site action used to build cp
    if isinstance(cp.action, SiteAction):
        base_action = cp.action.base_action
    if base_action is None:
        raise ActionMismatch("crossed product does not carry a site action")
    from .staralg import matrix_algebra

    target = tensor(base, matrix_algebra(grp.order))

    lam = lambda_matrices(grp)
    n = base.amb_dim

    def kernel_matrix(coords) -> np.ndarray:
        f = cp.unpack(coords).reshape(grp.order, grp.order, base.dim)
        out = np.zeros((n * grp.order, n * grp.order), dtype=complex)
        for u in range(grp.order):
            vals = base.to_matrix_batch(f[u])           # value at (u, site s)
            twisted = np.stack([
                base.to_matrix(base_action.coord_apply(grp.inv[s], base.coords(vals[s])))
                for s in range(grp.order)
            ])
            emb = np.einsum("sij,st->isjt", twisted, np.eye(grp.order)).reshape(
                n * grp.order, n * grp.order)
            out += emb @ np.kron(np.eye(n), lam[u])
        return out

    images = [target.coords(kernel_matrix(c)) for c in np.eye(cp.dim, dtype=complex)]
    hom = StarHom.from_basis_images(cp, target, images)
    from .staralg import is_star_hom

    rep = is_star_hom(hom, tol=tol, max_pairs=0)
    rank = int(np.linalg.matrix_rank(hom.coeff, tol=1e-9))
    report = {"star_hom": rep.to_dict(), "rank": rank, "dim": cp.dim,
              "bijective": rank == cp.dim == target.dim,
              "ok": rep.ok and rank == cp.dim == target.dim}
    return report


def dual_coaction(cp: CrossedProduct):
    """The canonical coaction on a realized crossed product (see :mod:`starcross.coact`)."""
    from . import coact

    return coact.dual_coaction(cp)
