"""Finite groups, functions on them, convolution, and unitary representations.

Group elements are dense indices 0..n-1; the multiplication table is the only
source of truth.  Functions on the group live in l2(G) with counting measure
and inner product <f, g> = sum_x f(x) conj(g(x)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotAGroup, NotInvariant
from .numerics import DEFAULT_TOL, as_vector, orthonormal_columns

#: Largest order for which exhaustive table validation is attempted.
MAX_ORDER = 512


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table of element indices."""

    order: int
    cayley: np.ndarray
    identity: int
    inverses: np.ndarray
    label: str = ""

    def mul(self, x: int, y: int) -> int:
        return int(self.cayley[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def elements(self) -> range:
        return range(self.order)

    def vector(self, data) -> "GroupVector":
        return GroupVector(self, as_vector(data))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and np.array_equal(self.cayley, other.cayley)
        )

    def __hash__(self):
        return hash((self.order, self.label))


def group_from_cayley(table, label: str = "") -> FiniteGroup:
    """Validate a multiplication table and build a :class:`FiniteGroup`.

    Checks, in order: shape, Latin-square property, existence of an identity,
    inverses, and full associativity.  Raises :class:`NotAGroup` naming the
    first violated axiom.
    """
    cayley = np.asarray(table, dtype=np.int64)
    if cayley.ndim != 2 or cayley.shape[0] != cayley.shape[1]:
        raise NotAGroup("table is not square")
    n = cayley.shape[0]
    if n == 0:
        raise NotAGroup("empty table")
    if n > MAX_ORDER:
        raise NotAGroup(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    if cayley.min() < 0 or cayley.max() >= n:
        raise NotAGroup("entries are not element indices")

    idx = np.arange(n)
    if not (np.all(np.sort(cayley, axis=1) == idx) and np.all(np.sort(cayley, axis=0) == idx[:, None])):
        raise NotAGroup("Latin square property fails")

    identity = -1
    for e in range(n):
        if np.array_equal(cayley[e], idx) and np.array_equal(cayley[:, e], idx):
            identity = e
            break
    if identity < 0:
        raise NotAGroup("no two-sided identity")

    inverses = np.argmax(cayley == identity, axis=1)
    if not (np.all(cayley[idx, inverses] == identity) and np.all(cayley[inverses, idx] == identity)):
        raise NotAGroup("inverses missing")

    # Associativity, one O(n^2) slice per z to keep memory flat.
    for z in range(n):
        left = cayley[:, z][cayley]          # (xy)z
        right = cayley[:, cayley[:, z]]      # x(yz)
        if not np.array_equal(left, right):
            raise NotAGroup("associativity fails")

    cayley.setflags(write=False)
    inverses.setflags(write=False)
    return FiniteGroup(order=n, cayley=cayley, identity=identity, inverses=inverses, label=label)


def _cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def _dihedral_table(n: int) -> np.ndarray:
    """Dihedral group of order 2n; indices 0..n-1 are r^j, n..2n-1 are s r^j."""
    m = 2 * n
    table = np.zeros((m, m), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = (i + j) % n                    # r^i r^j
            table[i, n + j] = n + (j - i) % n            # r^i (s r^j) = s r^(j-i)
            table[n + i, j] = n + (i + j) % n            # (s r^i) r^j
            table[n + i, n + j] = (j - i) % n            # (s r^i)(s r^j) = r^(j-i)
    return table


def _heisenberg_table(n: int) -> np.ndarray:
    """Unitriangular 3x3 matrices over Z_n; element (x, y, z) has index x n^2 + y n + z."""
    m = n ** 3
    table = np.zeros((m, m), dtype=np.int64)
    for a in range(m):
        x, r = divmod(a, n * n)
        y, z = divmod(r, n)
        for b in range(m):
            x2, r2 = divmod(b, n * n)
            y2, z2 = divmod(r2, n)
            table[a, b] = ((x + x2) % n) * n * n + ((y + y2) % n) * n + (z + z2 + x * y2) % n
    return table


def _product_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    n2 = t2.shape[0]
    return (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(
        t1.shape[0] * n2, t1.shape[0] * n2
    )


_SPEC_RE = re.compile(r"^(cyclic|dihedral|heisenberg):(\d+)$")


def builtin_group(spec: str) -> FiniteGroup:
    """Build one of the named group families.

    Supported specs: ``cyclic:n``, ``dihedral:n`` (order 2n), ``heisenberg:n``
    (order n^3), and direct products joined with ``x``, for example
    ``cyclic:2 x dihedral:3``.
    """
    parts = [p.strip() for p in re.split(r"\s*x\s*", spec.strip()) if p.strip()]
    if not parts:
        raise NotAGroup(f"empty group spec {spec!r}")
    if len(parts) > 1:
        groups = [builtin_group(p) for p in parts]
        table = groups[0].cayley
        for g in groups[1:]:
            table = _product_table(table, g.cayley)
        label = " x ".join(g.label for g in groups)
        return group_from_cayley(table, label=label)

    m = _SPEC_RE.match(parts[0])
    if not m:
        raise NotAGroup(f"unknown group spec {parts[0]!r}")
    family, n = m.group(1), int(m.group(2))
    if n < 1:
        raise NotAGroup("group parameter must be at least 1")
    if family == "cyclic":
        table = _cyclic_table(n)
    elif family == "dihedral":
        table = _dihedral_table(n)
    else:
        table = _heisenberg_table(n)
    return group_from_cayley(table, label=f"{family}:{n}")


def element_orders(group: FiniteGroup) -> list[int]:
    orders = []
    for x in group.elements():
        k, y = 1, x
        while y != group.identity:
            y = group.mul(y, x)
            k += 1
        orders.append(k)
    return orders


def conjugacy_classes(group: FiniteGroup) -> list[list[int]]:
    seen = np.zeros(group.order, dtype=bool)
    classes = []
    for x in group.elements():
        if seen[x]:
            continue
        orbit = {group.mul(group.mul(g, x), group.inv(g)) for g in group.elements()}
        for y in orbit:
            seen[y] = True
        classes.append(sorted(orbit))
    return classes


def center(group: FiniteGroup) -> list[int]:
    return [
        x
        for x in group.elements()
        if all(group.mul(x, g) == group.mul(g, x) for g in group.elements())
    ]


def is_abelian(group: FiniteGroup) -> bool:
    return bool(np.array_equal(group.cayley, group.cayley.T))


@dataclass(frozen=True)
class GroupVector:
    """A complex function on a finite group, an element of l2(G)."""

    group: FiniteGroup
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = as_vector(self.data)
        if d.shape[0] != self.group.order:
            raise DimensionMismatch(
                f"vector length {d.shape[0]} != group order {self.group.order}"
            )
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    def inner(self, other: "GroupVector") -> complex:
        _same_group(self, other)
        return complex(np.sum(self.data * other.data.conj()))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


def delta(group: FiniteGroup, x: int) -> GroupVector:
    d = np.zeros(group.order, dtype=complex)
    d[x] = 1.0
    return GroupVector(group, d)


def _same_group(f: GroupVector, g: GroupVector) -> None:
    if f.group != g.group:
        raise DimensionMismatch("vectors live on different groups")


def convolve(f: GroupVector, g: GroupVector) -> GroupVector:
    """(f * g)(x) = sum_y f(y) g(y^-1 x) with counting measure."""
    _same_group(f, g)
    return GroupVector(f.group, convolution_operator(g, side="right") @ f.data)


def involution(f: GroupVector) -> GroupVector:
    """f*(x) = conj(f(x^-1))."""
    return GroupVector(f.group, f.data[f.group.inverses].conj())


def convolution_operator(f: GroupVector, side: str = "right") -> np.ndarray:
    """Matrix of right convolution g -> g * f, or left convolution g -> f * g."""
    group = f.group
    if side == "right":
        # entry [x, y] = f(y^-1 x)
        return f.data[group.cayley[group.inverses]].T.copy()
    if side == "left":
        # entry [x, y] = f(x y^-1)
        return f.data[group.cayley[:, group.inverses]].copy()
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class Rep:
    """A unitary representation: one d x d matrix per group element."""

    group: FiniteGroup
    dim: int
    matrices: np.ndarray = field(repr=False)  # shape (order, dim, dim)

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=complex)
        if mats.shape != (self.group.order, self.dim, self.dim):
            raise DimensionMismatch(
                f"expected matrices of shape {(self.group.order, self.dim, self.dim)}, "
                f"got {mats.shape}"
            )
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    def __getitem__(self, x: int) -> np.ndarray:
        return self.matrices[x]

    def homomorphism_residual(self) -> float:
        """max_x,y || rep(x) rep(y) - rep(xy) ||_F."""
        worst = 0.0
        for x in self.group.elements():
            prods = self.matrices[x] @ self.matrices
            worst = max(worst, float(np.max(np.linalg.norm(
                prods - self.matrices[self.group.cayley[x]], axis=(1, 2)))))
        return worst

    def unitarity_residual(self) -> float:
        eye = np.eye(self.dim)
        prods = self.matrices @ self.matrices.conj().transpose(0, 2, 1)
        return float(np.max(np.linalg.norm(prods - eye, axis=(1, 2))))

    def identity_residual(self) -> float:
        return float(np.linalg.norm(self.matrices[self.group.identity] - np.eye(self.dim)))

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        if self.identity_residual() > tol:
            raise NotInvariant("rep does not map the identity to Id")
        if self.unitarity_residual() > tol:
            raise NotInvariant("rep matrices are not unitary within tolerance")
        if self.homomorphism_residual() > tol:
            raise NotInvariant("rep is not a homomorphism within tolerance")

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


def left_regular_rep(group: FiniteGroup) -> Rep:
    """Permutation matrices of left translation: (lambda(x) f)(y) = f(x^-1 y)."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=complex)
    cols = np.arange(n)
    for x in group.elements():
        mats[x, group.cayley[x], cols] = 1.0  # lambda(x) delta_y = delta_{xy}
    return Rep(group=group, dim=n, matrices=mats)


def restrict_rep(rep: Rep, basis, tol: float = DEFAULT_TOL) -> Rep:
    """Compress ``rep`` to the span of ``basis`` (a list of orthonormal vectors).

    The span must be invariant; otherwise :class:`NotInvariant` is raised.
    """
    q = np.column_stack([as_vector(v) for v in basis])
    if np.linalg.norm(q.conj().T @ q - np.eye(q.shape[1])) > tol:
        raise NotInvariant("basis vectors are not orthonormal")
    proj = q @ q.conj().T
    eye = np.eye(rep.dim)
    for x in rep.group.elements():
        leak = (eye - proj) @ rep.matrices[x] @ q
        if np.linalg.norm(leak) > tol * max(1.0, np.linalg.norm(q)):
            raise NotInvariant(f"span is not invariant under element {x}")
    compressed = np.einsum("ij,xjk,kl->xil", q.conj().T, rep.matrices, q)
    return Rep(group=rep.group, dim=q.shape[1], matrices=compressed)


def invariant_orthonormal_basis(rep: Rep, vectors, rel_cutoff: float = 1e-11) -> np.ndarray:
    """Orthonormal basis of span{rep(x) v : x in G, v in vectors} as columns."""
    cols = []
    for v in vectors:
        w = as_vector(v)
        cols.append(np.einsum("xij,j->ix", rep.matrices, w))
    if not cols:
        return np.zeros((rep.dim, 0), dtype=complex)
    return orthonormal_columns(np.hstack(cols), rel_cutoff=rel_cutoff)
