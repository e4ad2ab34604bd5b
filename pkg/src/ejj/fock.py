"""Truncated multimode bosonic basis and sparse operator algebra.

Basis states are occupation tuples ordered lexicographically with mode 0
slowest, i.e. C-order raveling of the occupation grid.  All modules share
a space's index maps instead of recomputing the ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import DimensionError, DomainError

#: Default per-mode occupation cutoff for spectra.
DEFAULT_CUTOFF_SPECTRUM = 5
#: Default per-mode occupation cutoff for driven gate dynamics.
DEFAULT_CUTOFF_GATE = 7


class FockSpace:
    """Product Fock space with a per-mode occupation cutoff.

    Parameters
    ----------
    cutoffs:
        Either an int (same ``n_max`` for every mode, with ``n_modes``
        required) or a sequence of per-mode maxima ``n_max(m) >= 1``.
    """

    def __init__(self, cutoffs, n_modes=None):
        if np.isscalar(cutoffs):
            if n_modes is None:
                raise DomainError("scalar cutoff needs an explicit n_modes")
            cutoffs = (int(cutoffs),) * int(n_modes)
        self.cutoffs = tuple(int(c) for c in cutoffs)
        if any(c < 1 for c in self.cutoffs):
            raise DomainError(f"every cutoff must be >= 1, got {self.cutoffs}")
        self.n_modes = len(self.cutoffs)
        self._dims = tuple(c + 1 for c in self.cutoffs)
        self.dimension = int(np.prod(self._dims))
        # occupations[i, m] = occupation of mode m in basis state i
        grids = np.indices(self._dims).reshape(self.n_modes, -1)
        self.occupations = grids.T.copy()
        # stride of mode m in the raveled index
        self._strides = np.array(
            [int(np.prod(self._dims[m + 1:])) for m in range(self.n_modes)], dtype=np.int64
        )

    def index(self, occ) -> int:
        """Basis index of an occupation tuple."""
        occ = tuple(int(n) for n in occ)
        if len(occ) != self.n_modes:
            raise DimensionError(f"expected {self.n_modes} occupations, got {len(occ)}")
        if any(n < 0 or n > c for n, c in zip(occ, self.cutoffs)):
            raise DomainError(f"occupation {occ} outside cutoffs {self.cutoffs}")
        return int(np.ravel_multi_index(occ, self._dims))

    def occupation(self, i: int) -> tuple:
        """Occupation tuple of basis state i."""
        return tuple(int(n) for n in self.occupations[i])

    def total_occupation(self) -> np.ndarray:
        return self.occupations.sum(axis=1)

    def enlarged(self, extra=2) -> "FockSpace":
        """Same modes with every cutoff increased (for convergence checks)."""
        return FockSpace(tuple(c + extra for c in self.cutoffs))

    def __eq__(self, other):
        return isinstance(other, FockSpace) and self.cutoffs == other.cutoffs

    def __hash__(self):
        return hash(self.cutoffs)

    def __repr__(self):
        return f"FockSpace(cutoffs={self.cutoffs}, dimension={self.dimension})"


@dataclass
class Operator:
    """Sparse complex matrix tied to a :class:`FockSpace`."""

    space: FockSpace
    mat: sparse.csr_matrix

    def __post_init__(self):
        if self.mat.shape != (self.space.dimension, self.space.dimension):
            raise DimensionError(
                f"matrix shape {self.mat.shape} does not match space "
                f"dimension {self.space.dimension}"
            )
        self.mat = sparse.csr_matrix(self.mat, dtype=complex)

    def _check_space(self, other):
        if self.space != other.space:
            raise DimensionError("operators live on different Fock spaces")

    def dag(self) -> "Operator":
        return Operator(self.space, self.mat.conjugate().transpose().tocsr())

    def __add__(self, other):
        self._check_space(other)
        return Operator(self.space, self.mat + other.mat)

    def __sub__(self, other):
        self._check_space(other)
        return Operator(self.space, self.mat - other.mat)

    def __mul__(self, scalar):
        return Operator(self.space, self.mat * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return Operator(self.space, -self.mat)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._check_space(other)
            return Operator(self.space, (self.mat @ other.mat).tocsr())
        if isinstance(other, FockState):
            return FockState(self.space, self.mat @ other.amplitudes)
        return self.mat @ other

    def to_dense(self) -> np.ndarray:
        return self.mat.toarray()

    def hermiticity_defect(self) -> float:
        """max|H - H^dag| relative to max|H| (0 for an exactly hermitian H)."""
        diff = (self.mat - self.mat.conjugate().transpose()).tocoo()
        scale = abs(self.mat).max() if self.mat.nnz else 0.0
        if scale == 0.0:
            return 0.0
        return float(abs(diff).max() / scale) if diff.nnz else 0.0

    def is_hermitian(self, tol=1e-10) -> bool:
        return self.hermiticity_defect() <= tol

    def expectation(self, state: "FockState") -> complex:
        return complex(np.vdot(state.amplitudes, self.mat @ state.amplitudes))

    @property
    def nnz(self):
        return self.mat.nnz


@dataclass
class FockState:
    """State vector on a :class:`FockSpace`."""

    space: FockSpace
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amp.size != self.space.dimension:
            raise DimensionError(
                f"amplitude vector length {amp.size} != dimension {self.space.dimension}"
            )
        if not np.all(np.isfinite(amp.view(float))):
            raise DomainError("state amplitudes must be finite")
        self.amplitudes = amp

    @classmethod
    def fock(cls, space: FockSpace, occ) -> "FockState":
        amp = np.zeros(space.dimension, dtype=complex)
        amp[space.index(occ)] = 1.0
        return cls(space, amp)

    @classmethod
    def vacuum(cls, space: FockSpace) -> "FockState":
        return cls.fock(space, (0,) * space.n_modes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockState":
        n = self.norm()
        if n == 0:
            raise DomainError("cannot normalize the zero vector")
        return FockState(self.space, self.amplitudes / n)

    def overlap(self, other: "FockState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def population(self, occ) -> float:
        return float(abs(self.amplitudes[self.space.index(occ)]) ** 2)


def identity(space: FockSpace) -> Operator:
    return Operator(space, sparse.identity(space.dimension, dtype=complex, format="csr"))


def annihilation(space: FockSpace, m: int) -> Operator:
    """Ladder operator b_m: <..., n-1, ...|b_m|..., n, ...> = sqrt(n)."""
    if not 0 <= m < space.n_modes:
        raise DomainError(f"mode index {m} out of range for {space.n_modes} modes")
    occ = space.occupations[:, m]
    cols = np.nonzero(occ > 0)[0]
    rows = cols - space._strides[m]
    data = np.sqrt(occ[cols]).astype(complex)
    mat = sparse.csr_matrix((data, (rows, cols)),
                            shape=(space.dimension, space.dimension))
    return Operator(space, mat)


def creation(space: FockSpace, m: int) -> Operator:
    return annihilation(space, m).dag()


def number(space: FockSpace, m: int) -> Operator:
    if not 0 <= m < space.n_modes:
        raise DomainError(f"mode index {m} out of range for {space.n_modes} modes")
    diag = space.occupations[:, m].astype(complex)
    return Operator(space, sparse.diags(diag, format="csr"))


def total_number(space: FockSpace) -> Operator:
    return Operator(space, sparse.diags(space.total_occupation().astype(complex),
                                        format="csr"))


def quadrature(space: FockSpace, m: int) -> Operator:
    """X_m = b_m + b_m^dag."""
    b = annihilation(space, m)
    return b + b.dag()


def normal_ordered_monomial(space: FockSpace, powers) -> Operator:
    """Product over modes of (b_m^dag)^c_m (b_m)^a_m, creations on the left.

    ``powers`` maps mode index to a (creation_count, annihilation_count)
    pair; it can be a dict or a per-mode sequence.  Matrix elements follow
    directly from the occupation algebra: the monomial sends |..n_m..> to
    |..n_m - a_m + c_m..> with a product of square-root factors, and
    annihilates anything with n_m < a_m or a target above the cutoff.
    """
    if isinstance(powers, dict):
        items = powers.items()
    else:
        items = enumerate(powers)
    cre = np.zeros(space.n_modes, dtype=np.int64)
    ann = np.zeros(space.n_modes, dtype=np.int64)
    for m, (c, a) in items:
        if not 0 <= m < space.n_modes:
            raise DomainError(f"mode index {m} out of range for {space.n_modes} modes")
        if c < 0 or a < 0:
            raise DomainError("creation/annihilation counts must be >= 0")
        cre[m], ann[m] = c, a

    occ = space.occupations
    target = occ - ann[None, :] + cre[None, :]
    valid = np.all(target >= 0, axis=1) & np.all(
        target <= np.array(space.cutoffs)[None, :], axis=1
    ) & np.all(occ >= ann[None, :], axis=1)
    cols = np.nonzero(valid)[0]
    if cols.size == 0:
        return Operator(space, sparse.csr_matrix(
            (space.dimension, space.dimension), dtype=complex))

    amp = np.ones(cols.size)
    for m in range(space.n_modes):
        n = occ[cols, m].astype(float)
        for k in range(ann[m]):                      # b^a: sqrt(n (n-1) ...)
            amp *= np.sqrt(n - k)
        base = n - ann[m]
        for k in range(1, cre[m] + 1):               # b^dag^c on the remainder
            amp *= np.sqrt(base + k)
    rows = np.fromiter(
        (space.index(t) for t in target[cols]), dtype=np.int64, count=cols.size
    )
    mat = sparse.csr_matrix((amp.astype(complex), (rows, cols)),
                            shape=(space.dimension, space.dimension))
    return Operator(space, mat)


def site_spaces_compatible(lattice_space: FockSpace, site_space: FockSpace) -> int:
    """Number of identical site blocks making up ``lattice_space``."""
    k = site_space.n_modes
    if k == 0 or lattice_space.n_modes % k:
        raise DimensionError("lattice space is not a whole number of site blocks")
    n_sites = lattice_space.n_modes // k
    for s in range(n_sites):
        if lattice_space.cutoffs[s * k:(s + 1) * k] != site_space.cutoffs:
            raise DimensionError(
                "lattice space cutoffs do not tile the single-site cutoffs"
            )
    return n_sites


def tensor_embed(op: Operator, site: int, lattice_space: FockSpace) -> Operator:
    """Embed a single-site operator at ``site``, identity elsewhere.

    The lattice space must be a product of identical copies of the
    operator's space, ordered site-major (site 0 slowest), which matches
    plain Kronecker products in the shared basis convention.
    """
    n_sites = site_spaces_compatible(lattice_space, op.space)
    if not 0 <= site < n_sites:
        raise DomainError(f"site {site} out of range for {n_sites} sites")
    d = op.space.dimension
    left = sparse.identity(d**site, dtype=complex, format="csr")
    right = sparse.identity(d**(n_sites - site - 1), dtype=complex, format="csr")
    mat = sparse.kron(sparse.kron(left, op.mat), right, format="csr")
    return Operator(lattice_space, mat)
