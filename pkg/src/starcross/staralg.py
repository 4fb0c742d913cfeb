"""Finite-dimensional C*-algebras as concrete matrix *-algebras.

A :class:`StarAlgebra` is a unital *-closed subspace of ``n x n`` complex
matrices with a distinguished basis.  Elements are tracked both as ambient
matrices and as coordinate vectors with respect to the basis; all residual
checks compare matrices entrywise against :class:`Tolerance`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionOverflow, NotInAlgebra, NotSelfAdjoint, NotStarHom
from .fingroup import FiniteGroup

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "TAU_MEM",
    "AMBIENT_CAP",
    "StarAlgebra",
    "AlgElem",
    "StarHom",
    "StarHomReport",
    "matrix_algebra",
    "function_algebra",
    "direct_sum",
    "tensor",
    "group_algebra",
    "comultiplication",
    "is_positive",
    "min_eigenvalue",
    "is_star_hom",
    "center_basis",
    "summand_dims",
    "faithful_compression",
    "elem_to_json",
    "elem_from_json",
    "algebra_to_json",
    "algebra_from_json",
    "max_abs",
]

TAU_MEM = 1e-8          # membership tolerance, looser than arithmetic tolerance
AMBIENT_CAP = 4096      # default cap on ambient matrix size


@dataclass(frozen=True)
class Tolerance:
    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if self.abs <= 0 or self.rel <= 0:
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()


def max_abs(arr) -> float:
    arr = np.asarray(arr)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


class StarAlgebra:
    """A concrete matrix *-algebra with a distinguished linear basis.

    Parameters
    ----------
    basis:
        Array of shape ``(dim, n, n)`` spanning the algebra.
    unit:
        The identity element as an ``n x n`` matrix.  If omitted it is solved
        for (and must exist: every algebra here is unital).
    validate:
        Check linear independence and closure under products and adjoints.
    """

    def __init__(self, basis, label: str = "A", unit=None, validate: bool = True,
                 tol: Tolerance = DEFAULT_TOL):
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise ValueError("basis must have shape (dim, n, n)")
        self.basis = basis
        self.dim = basis.shape[0]
        self.amb_dim = basis.shape[1]
        if self.amb_dim > AMBIENT_CAP:
            raise DimensionOverflow(f"ambient dimension {self.amb_dim} exceeds cap {AMBIENT_CAP}")
        self.label = label
        self.tol = tol
        self._bmat = basis.reshape(self.dim, -1).T          # (n*n, dim)
        self._pinv = np.linalg.pinv(self._bmat)
        self._scale = max(max_abs(basis), 1.0)
        if validate and np.linalg.matrix_rank(self._bmat, tol=1e-10 * self._scale) < self.dim:
            raise ValueError(f"{label}: basis is linearly dependent")
        self.unit_matrix = np.asarray(unit, complex) if unit is not None else self._solve_unit()
        self.unit_coords = self.coords(self.unit_matrix)
        if validate:
            self._check_closure()

    # coordinates are exact-least-squares; membership is judged against TAU_MEM

    def coords(self, mat) -> np.ndarray:
        return self._pinv @ np.asarray(mat, complex).ravel()

    def coords_batch(self, mats) -> np.ndarray:
        m = np.asarray(mats, complex).reshape(len(mats), -1)
        return m @ self._pinv.T

    def from_coords(self, c) -> np.ndarray:
        return np.tensordot(np.asarray(c, complex), self.basis, axes=(0, 0))

    def to_matrix(self, c) -> np.ndarray:
        return self.from_coords(c)

    def to_matrix_batch(self, cs) -> np.ndarray:
        return np.tensordot(np.asarray(cs, complex), self.basis, axes=(-1, 0))

    @property
    def rep_dim(self) -> int:
        return self.amb_dim

    def membership_residual(self, mat) -> float:
        mat = np.asarray(mat, complex)
        rec = self.from_coords(self.coords(mat))
        return max_abs(rec - mat)

    def contains(self, mat, tau: float = TAU_MEM) -> bool:
        return self.membership_residual(mat) <= tau * max(self._scale, max_abs(mat), 1.0)

    # -- algebra operations in coordinates ------------------------------------

    def mul(self, c1, c2) -> np.ndarray:
        return self.coords(self.from_coords(c1) @ self.from_coords(c2))

    def star(self, c) -> np.ndarray:
        return self.coords(self.from_coords(c).conj().T)

    def trace(self, c) -> complex:
        return complex(np.trace(self.from_coords(c)))

    def element(self, mat, check: bool = True) -> "AlgElem":
        return AlgElem(self, mat, check=check)

    def basis_element(self, k: int) -> "AlgElem":
        return AlgElem(self, self.basis[k], check=False)

    def unit(self) -> "AlgElem":
        return AlgElem(self, self.unit_matrix, check=False)

    def random_coords(self, rng, selfadjoint: bool = False) -> np.ndarray:
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        if selfadjoint:
            c = (c + self.star(c)) / 2
        return c

    def random_element(self, rng, selfadjoint: bool = False) -> "AlgElem":
        return AlgElem(self, self.from_coords(self.random_coords(rng, selfadjoint)), check=False)

    # -- construction-time validation ------------------------------------------

    def _solve_unit(self) -> np.ndarray:
        # unit u solves u b_i = b_i for all i; assemble the stacked system
        d, n = self.dim, self.amb_dim
        lhs = np.zeros((d * n * n, d), dtype=complex)
        rhs = np.zeros(d * n * n, dtype=complex)
        for i in range(d):
            for k in range(d):
                lhs[i * n * n:(i + 1) * n * n, k] = (self.basis[k] @ self.basis[i]).ravel()
            rhs[i * n * n:(i + 1) * n * n] = self.basis[i].ravel()
        sol, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
        u = self.from_coords(sol)
        res = max(max_abs(u @ b - b) for b in self.basis)
        res = max(res, max(max_abs(b @ u - b) for b in self.basis))
        if res > TAU_MEM * self._scale:
            raise ValueError(f"{self.label}: no unit found (residual {res:.2e})")
        return u

    def _check_closure(self) -> None:
        worst = self.closure_residual()
        if worst > TAU_MEM * max(self._scale, 1.0) ** 2:
            raise NotInAlgebra(f"{self.label}: basis not closed (residual {worst:.2e})")

    def closure_residual(self) -> float:
        """Max membership residual of basis products and adjoints."""
        worst = 0.0
        for i in range(self.dim):
            worst = max(worst, self.membership_residual(self.basis[i].conj().T))
            prods = np.einsum("ab,kbc->kac", self.basis[i], self.basis)
            rec = self.to_matrix_batch(self.coords_batch(prods))
            worst = max(worst, max_abs(rec - prods))
        return worst

    def __repr__(self) -> str:
        return f"StarAlgebra({self.label}, dim={self.dim}, ambient={self.amb_dim})"


class AlgElem:
    """An element of a :class:`StarAlgebra`, stored as its ambient matrix."""

    def __init__(self, algebra: StarAlgebra, matrix, check: bool = True):
        self.algebra = algebra
        self.matrix = np.asarray(matrix, dtype=complex)
        if self.matrix.shape != (algebra.amb_dim, algebra.amb_dim):
            raise ValueError("matrix has wrong ambient size")
        if check and not algebra.contains(self.matrix):
            raise NotInAlgebra(f"matrix is not in span({algebra.label})")

    def coords(self) -> np.ndarray:
        return self.algebra.coords(self.matrix)

    def adjoint(self) -> "AlgElem":
        return AlgElem(self.algebra, self.matrix.conj().T, check=False)

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            if other.algebra is not self.algebra:
                raise NotInAlgebra("elements live in different algebras")
            return AlgElem(self.algebra, self.matrix @ other.matrix, check=False)
        return AlgElem(self.algebra, self.matrix * other, check=False)

    __matmul__ = __mul__

    def __rmul__(self, scalar):
        return AlgElem(self.algebra, scalar * self.matrix, check=False)

    def __add__(self, other):
        return AlgElem(self.algebra, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return AlgElem(self.algebra, self.matrix - other.matrix, check=False)

    def __repr__(self) -> str:
        return f"AlgElem({self.algebra.label}, norm={np.linalg.norm(self.matrix):.3g})"


# -- homomorphisms -------------------------------------------------------------

@dataclass
class StarHomReport:
    mult_residual: float
    star_residual: float
    unit_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return max(self.mult_residual, self.star_residual, self.unit_residual) <= self.tol

    def to_dict(self) -> dict:
        return {
            "mult_residual": self.mult_residual,
            "star_residual": self.star_residual,
            "unit_residual": self.unit_residual,
            "tol": self.tol,
            "ok": self.ok,
        }


class StarHom:
    """A linear map between coefficient algebras, stored on coordinates.

    ``coeff`` has shape ``(codomain.dim, domain.dim)``.  Homomorphism and
    *-compatibility are certified numerically by :func:`is_star_hom`, not
    assumed.
    """

    def __init__(self, domain, codomain, coeff):
        self.domain = domain
        self.codomain = codomain
        self.coeff = np.asarray(coeff, dtype=complex)
        if self.coeff.shape != (codomain.dim, domain.dim):
            raise ValueError("coefficient matrix has wrong shape")

    @classmethod
    def from_basis_images(cls, domain, codomain, images) -> "StarHom":
        """Images given as codomain coordinate vectors, one per domain basis element."""
        coeff = np.stack([np.asarray(im, complex) for im in images], axis=1)
        return cls(domain, codomain, coeff)

    @classmethod
    def from_matrix_images(cls, domain, codomain, matrices) -> "StarHom":
        imgs = [codomain.coords(m) for m in matrices]
        return cls.from_basis_images(domain, codomain, imgs)

    def apply_coords(self, c) -> np.ndarray:
        return self.coeff @ np.asarray(c, complex)

    def apply(self, elem: AlgElem) -> AlgElem:
        c = self.apply_coords(self.domain.coords(elem.matrix))
        return AlgElem(self.codomain, self.codomain.to_matrix(c), check=False)

    def compose(self, inner: "StarHom") -> "StarHom":
        if inner.codomain is not self.domain:
            raise NotStarHom("composition domain mismatch")
        return StarHom(inner.domain, self.codomain, self.coeff @ inner.coeff)

    def is_bijective(self, tol: float = 1e-9) -> bool:
        if self.domain.dim != self.codomain.dim:
            return False
        s = np.linalg.svd(self.coeff, compute_uv=False)
        return bool(s[-1] > tol * max(1.0, s[0]))

    def inverse(self) -> "StarHom":
        if self.domain.dim != self.codomain.dim:
            raise NotStarHom("inverse needs equal dimensions")
        return StarHom(self.codomain, self.domain, np.linalg.inv(self.coeff))

    def rank(self, tol: float = 1e-9) -> int:
        return int(np.linalg.matrix_rank(self.coeff, tol=tol * max(1.0, max_abs(self.coeff))))


def is_star_hom(hom: StarHom, tol: Tolerance = DEFAULT_TOL, rng=None,
                max_pairs: int = 4096, unital: bool = True) -> StarHomReport:
    """Certify multiplicativity, *-preservation and unitality of a StarHom.

    Basis pairs are checked exhaustively when the domain is small; otherwise a
    seeded random sample of coordinate pairs is used.
    """
    dom, cod = hom.domain, hom.codomain
    d = dom.dim
    rng = np.random.default_rng(0) if rng is None else rng

    def residual_pair(c1, c2) -> float:
        lhs = hom.apply_coords(dom.mul(c1, c2))
        rhs = cod.mul(hom.apply_coords(c1), hom.apply_coords(c2))
        return max_abs(cod.to_matrix(lhs - rhs))

    mult = 0.0
    if d * d <= max_pairs:
        eye = np.eye(d)
        for i in range(d):
            for j in range(d):
                mult = max(mult, residual_pair(eye[i], eye[j]))
    else:
        for _ in range(64):
            c1 = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            c2 = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            mult = max(mult, residual_pair(c1, c2))

    star = 0.0
    eye = np.eye(d)
    for i in range(d):
        lhs = hom.apply_coords(dom.star(eye[i]))
        rhs = cod.star(hom.apply_coords(eye[i]))
        star = max(star, max_abs(cod.to_matrix(lhs - rhs)))

    unit = 0.0
    if unital:
        unit = max_abs(cod.to_matrix(hom.apply_coords(dom.unit_coords) - cod.unit_coords))
    return StarHomReport(mult, star, unit, tol.abs * 100)


# -- constructors --------------------------------------------------------------

def matrix_algebra(n: int, label: str | None = None) -> StarAlgebra:
    """The full matrix algebra M_n with the matrix-unit basis."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > AMBIENT_CAP:
        raise DimensionOverflow(f"ambient dimension {n} exceeds cap {AMBIENT_CAP}")
    basis = np.zeros((n * n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            basis[i * n + j, i, j] = 1.0
    return StarAlgebra(basis, label=label or f"M{n}", unit=np.eye(n), validate=False)


def function_algebra(k: int, label: str | None = None) -> StarAlgebra:
    """The commutative algebra of functions on k points (diagonal k x k matrices)."""
    if k < 1:
        raise ValueError("k must be positive")
    basis = np.zeros((k, k, k), dtype=complex)
    for i in range(k):
        basis[i, i, i] = 1.0
    return StarAlgebra(basis, label=label or f"C^{k}", unit=np.eye(k), validate=False)


def scalar_algebra() -> StarAlgebra:
    return function_algebra(1, label="C")


def direct_sum(a: StarAlgebra, b: StarAlgebra, label: str | None = None) -> StarAlgebra:
    n = a.amb_dim + b.amb_dim
    if n > AMBIENT_CAP:
        raise DimensionOverflow(f"ambient dimension {n} exceeds cap {AMBIENT_CAP}")
    basis = np.zeros((a.dim + b.dim, n, n), dtype=complex)
    basis[:a.dim, :a.amb_dim, :a.amb_dim] = a.basis
    basis[a.dim:, a.amb_dim:, a.amb_dim:] = b.basis
    unit = np.zeros((n, n), dtype=complex)
    unit[:a.amb_dim, :a.amb_dim] = a.unit_matrix
    unit[a.amb_dim:, a.amb_dim:] = b.unit_matrix
    return StarAlgebra(basis, label=label or f"({a.label})+({b.label})", unit=unit, validate=False)


def tensor(a: StarAlgebra, b: StarAlgebra, label: str | None = None) -> StarAlgebra:
    """Kronecker tensor product; basis is the pairwise Kronecker basis."""
    n = a.amb_dim * b.amb_dim
    if n > AMBIENT_CAP:
        raise DimensionOverflow(f"ambient dimension {n} exceeds cap {AMBIENT_CAP}")
    basis = np.einsum("iab,jcd->ijacbd", a.basis, b.basis).reshape(
        a.dim * b.dim, n, n
    )
    unit = np.kron(a.unit_matrix, b.unit_matrix)
    return StarAlgebra(basis, label=label or f"({a.label})x({b.label})", unit=unit, validate=False)


def group_algebra(g: FiniteGroup):
    """The group algebra of ``g`` realized by left translation on l^2(g).

    Returns ``(algebra, lam)`` where ``lam(s)`` is the unitary basis element
    attached to the group element ``s``.
    """
    n = g.order
    basis = np.zeros((n, n, n), dtype=complex)
    for s in range(n):
        basis[s, g.mul[s], np.arange(n)] = 1.0
    alg = StarAlgebra(basis, label=f"C*({g.name})", unit=np.eye(n), validate=False)

    def lam(s: int) -> AlgElem:
        return AlgElem(alg, basis[s], check=False)

    return alg, lam


def lambda_matrices(g: FiniteGroup) -> np.ndarray:
    """Stack of left-translation unitaries, shape (order, order, order)."""
    n = g.order
    out = np.zeros((n, n, n), dtype=complex)
    for s in range(n):
        out[s, g.mul[s], np.arange(n)] = 1.0
    return out


def rho_matrices(g: FiniteGroup) -> np.ndarray:
    """Stack of right-translation unitaries, shape (order, order, order)."""
    n = g.order
    out = np.zeros((n, n, n), dtype=complex)
    for t in range(n):
        out[t, g.mul[np.arange(n), g.inv[t]], np.arange(n)] = 1.0
    return out


def comultiplication(g: FiniteGroup, cg: StarAlgebra | None = None,
                     cgcg: StarAlgebra | None = None) -> StarHom:
    """The coproduct on the group algebra, sending each translation unitary to
    its doubled copy inside the tensor square."""
    cg = cg if cg is not None else group_algebra(g)[0]
    cgcg = cgcg if cgcg is not None else tensor(cg, cg)
    n = g.order
    coeff = np.zeros((n * n, n), dtype=complex)
    for s in range(n):
        coeff[s * n + s, s] = 1.0
    return StarHom(cg, cgcg, coeff)


# -- positivity ----------------------------------------------------------------

def min_eigenvalue(mat) -> float:
    mat = np.asarray(mat, complex)
    herm = (mat + mat.conj().T) / 2
    return float(np.linalg.eigvalsh(herm)[0])


def is_positive(x, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the (self-adjoint) element has min eigenvalue >= -tol.abs."""
    mat = x.matrix if isinstance(x, AlgElem) else np.asarray(x, complex)
    scale = max(1.0, max_abs(mat))
    if max_abs(mat - mat.conj().T) > 100 * tol.abs * scale:
        raise NotSelfAdjoint("element is not self-adjoint to tolerance")
    return min_eigenvalue(mat) >= -tol.abs * scale


# -- structure: center, simple summands, compression ---------------------------

def center_basis(alg, rng=None, probes: int = 8) -> np.ndarray:
    """Coordinate basis of the center, found by solving commutant equations.

    The commutant is taken against random elements first, then verified
    against the whole basis (adding constraints if verification fails).
    """
    rng = np.random.default_rng(0) if rng is None else rng
    d = alg.dim
    basis_c = np.eye(d)

    def commutator_matrix(c_probe):
        rows = np.empty((d, d), dtype=complex)
        for k in range(d):
            rows[:, k] = alg.mul(basis_c[k], c_probe) - alg.mul(c_probe, basis_c[k])
        return rows

    null = np.eye(d)
    for _ in range(probes):
        probe = alg.random_coords(rng)
        m = commutator_matrix(probe) @ null
        if m.shape[1] == 0:
            break
        u, s, vh = np.linalg.svd(m, full_matrices=True)
        scale = max(1.0, s[0] if s.size else 0.0)
        keep = vh[np.concatenate([s, np.zeros(vh.shape[0] - s.size)]) <= 1e-9 * scale]
        null = null @ keep.conj().T
    # verify against every basis element, tightening if needed
    for k in range(d):
        m = commutator_matrix(basis_c[k]) @ null
        if null.shape[1] and max_abs(m) > 1e-7:
            u, s, vh = np.linalg.svd(m, full_matrices=True)
            scale = max(1.0, s[0] if s.size else 0.0)
            keep = vh[np.concatenate([s, np.zeros(vh.shape[0] - s.size)]) <= 1e-9 * scale]
            null = null @ keep.conj().T
    return null.T  # rows are central coordinate vectors


def _eig_clusters(vals: np.ndarray, rtol: float = 1e-6) -> list[np.ndarray]:
    order = np.argsort(vals)
    scale = max(1.0, float(np.max(np.abs(vals))))
    clusters, current = [], [order[0]]
    for idx in order[1:]:
        if vals[idx] - vals[current[-1]] <= rtol * scale:
            current.append(idx)
        else:
            clusters.append(np.array(current))
            current = [idx]
    clusters.append(np.array(current))
    return clusters


def _isotypic_frames(alg, rng) -> list[np.ndarray]:
    """Orthonormal frames for the ranges of the minimal central projections."""
    zc = center_basis(alg, rng=rng)
    if len(zc) == 1:
        return [np.eye(alg.rep_dim if hasattr(alg, "rep_dim") else alg.amb_dim, dtype=complex)]
    c = (rng.standard_normal(len(zc)) @ zc)
    c = (c + alg.star(c)) / 2
    z = alg.to_matrix(c)
    z = (z + z.conj().T) / 2
    vals, vecs = np.linalg.eigh(z)
    return [vecs[:, cl] for cl in _eig_clusters(vals)]


def summand_dims(alg, rng=None) -> list[int]:
    """Sizes of the simple matrix summands, via spectral splitting of the center.

    For a finite-dimensional C*-algebra the result ``[m_1, ..., m_k]`` satisfies
    ``sum(m_i^2) == dim``; that identity is asserted as a consistency check.
    """
    rng = np.random.default_rng(1234) if rng is None else rng
    frames = _isotypic_frames(alg, rng)
    dims = []
    total = 0
    for q in frames:
        compressed = [q.conj().T @ alg.to_matrix(c) @ q for c in np.eye(alg.dim)]
        flat = np.stack([m.ravel() for m in compressed])
        r = np.linalg.matrix_rank(flat, tol=1e-8 * max(1.0, max_abs(flat)))
        m = int(round(np.sqrt(r)))
        if m * m != r:
            raise ValueError(f"summand block has non-square dimension {r}")
        dims.append(m)
        total += r
    if total != alg.dim:
        raise ValueError(f"summand dims {dims} inconsistent with algebra dim {alg.dim}")
    return sorted(dims)


def _commutant_on_subspace(alg, frame: np.ndarray) -> np.ndarray:
    """Basis of the commutant of the compressed algebra on ``range(frame)``."""
    k = frame.shape[1]
    mats = [frame.conj().T @ alg.to_matrix(c) @ frame for c in np.eye(alg.dim)]
    rows = []
    for m in mats:
        op = np.kron(np.eye(k), m) - np.kron(m.T, np.eye(k))
        rows.append(op)
    stacked = np.vstack(rows)
    _, s, vh = np.linalg.svd(stacked)
    scale = max(1.0, s[0] if s.size else 0.0)
    null = vh[np.concatenate([s, np.zeros(vh.shape[0] - s.size)]) <= 1e-9 * scale]
    return null  # rows are vec'd commutant elements on the subspace


def faithful_compression(alg, rng=None) -> tuple[StarAlgebra, StarHom]:
    """A minimal faithful block realization of the algebra.

    Returns ``(small, iso)`` where ``small`` has ambient size ``sum(m_i)`` (one
    copy of every simple summand) and ``iso`` is the certified-by-construction
    coordinate map onto it.  Multiplicativity should be re-checked by the
    caller via :func:`is_star_hom` when it matters.
    """
    rng = np.random.default_rng(99) if rng is None else rng
    frames = _isotypic_frames(alg, rng)
    isometries = []
    for q in frames:
        k = q.shape[1]
        comm = _commutant_on_subspace(alg, q)
        mult = int(round(np.sqrt(len(comm))))
        m = k // mult
        if mult == 1:
            isometries.append(q)
            continue
        h = sum(
            coef * v.reshape(k, k)
            for coef, v in zip(rng.standard_normal(len(comm)), comm)
        )
        h = h + h.conj().T
        vals, vecs = np.linalg.eigh(h)
        cluster = _eig_clusters(vals)[0]
        if len(cluster) % m != 0:
            # generic element should split into rank-m eigenspaces; retry coarser
            cluster = cluster[:m]
        isometries.append(q @ vecs[:, cluster[:m]])
    v = np.hstack(isometries)
    small_basis = np.stack([v.conj().T @ b @ v for b in alg.basis])
    small = StarAlgebra(
        small_basis, label=f"{alg.label}~min", unit=v.conj().T @ alg.unit_matrix @ v,
        validate=False,
    )
    iso = StarHom(alg, small, np.eye(alg.dim))
    return small, iso


# -- serialization ---------------------------------------------------------------

def _mat_to_json(mat: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in mat]


def _mat_from_json(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data])


def elem_to_json(elem: AlgElem) -> str:
    return json.dumps({"algebra": elem.algebra.label, "matrix": _mat_to_json(elem.matrix)})


def elem_from_json(text: str, algebra: StarAlgebra) -> AlgElem:
    data = json.loads(text)
    return AlgElem(algebra, _mat_from_json(data["matrix"]))


def algebra_to_json(alg: StarAlgebra) -> str:
    return json.dumps({"label": alg.label, "basis": [_mat_to_json(b) for b in alg.basis]})


def algebra_from_json(text: str) -> StarAlgebra:
    data = json.loads(text)
    basis = np.stack([_mat_from_json(b) for b in data["basis"]])
    return StarAlgebra(basis, label=data.get("label", "A"))
