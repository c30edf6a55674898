"""Group construction, convolution and regular representation tests."""
import numpy as np
import pytest

from frametrace.errors import NotAGroup, NotInvariant
from frametrace.groups import (
    GroupVector,
    builtin_group,
    center,
    conjugacy_classes,
    convolution_operator,
    convolve,
    delta,
    element_orders,
    group_from_cayley,
    involution,
    is_abelian,
    left_regular_rep,
    restrict_rep,
)


def rand_vec(group, rng):
    return GroupVector(
        group, rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
    )


def test_z2_table():
    g = group_from_cayley([[0, 1], [1, 0]])
    assert g.order == 2
    assert g.identity == 0


def test_non_latin_rejected():
    with pytest.raises(NotAGroup, match="Latin"):
        group_from_cayley([[0, 1], [1, 1]])


def test_no_identity_rejected():
    # Latin square with no row equal to [0, 1, 2]
    t = [[1, 0, 2], [0, 2, 1], [2, 1, 0]]
    with pytest.raises(NotAGroup, match="identity"):
        group_from_cayley(t)


def test_nonassociative_rejected():
    # Latin square with identity 0 that is not a group (order 5 loop)
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup, match="associativity"):
        group_from_cayley(t)


def test_relabeled_z6_preserves_orders():
    rng = np.random.default_rng(11)
    z6 = builtin_group("cyclic:6")
    perm = rng.permutation(6)
    inv = np.argsort(perm)
    relabeled = perm[z6.cayley[np.ix_(inv, inv)]]
    g = group_from_cayley(relabeled)
    assert sorted(element_orders(g)) == sorted(element_orders(z6))


def test_cyclic4_structure():
    g = builtin_group("cyclic:4")
    assert is_abelian(g)
    assert sorted(element_orders(g)) == [1, 2, 4, 4]


def test_dihedral4_structure():
    g = builtin_group("dihedral:4")
    assert g.order == 8
    assert not is_abelian(g)

    # oracle: direct conjugacy enumeration
    def classes_naive(gr):
        out = []
        left = set(gr.elements())
        while left:
            x = min(left)
            orbit = {gr.mul(gr.mul(s, x), gr.inv(s)) for s in gr.elements()}
            left -= orbit
            out.append(frozenset(orbit))
        return set(out)

    cls = conjugacy_classes(g)
    assert len(cls) == 5
    assert {frozenset(c) for c in cls} == classes_naive(g)


def test_heisenberg3_center():
    g = builtin_group("heisenberg:3")
    assert g.order == 27
    z = center(g)
    assert len(z) == 3
    # oracle: elementwise commutation scan
    naive = [
        x
        for x in g.elements()
        if all(g.cayley[x, y] == g.cayley[y, x] for y in g.elements())
    ]
    assert z == naive


def test_direct_product_spec():
    g = builtin_group("cyclic:2 x cyclic:3")
    assert g.order == 6
    assert is_abelian(g)
    assert max(element_orders(g)) == 6  # Z2 x Z3 = Z6


def test_bad_spec_rejected():
    with pytest.raises(NotAGroup):
        builtin_group("quaternion:2")


def test_convolve_deltas_cyclic3():
    g = builtin_group("cyclic:3")
    out = convolve(delta(g, 1), delta(g, 2))
    assert np.allclose(out.data, delta(g, 0).data)


def test_convolve_identity_unit():
    rng = np.random.default_rng(12)
    g = builtin_group("dihedral:3")
    f = rand_vec(g, rng)
    assert np.allclose(convolve(f, delta(g, g.identity)).data, f.data)
    assert np.allclose(convolve(delta(g, g.identity), f).data, f.data)


def test_convolve_vs_double_loop():
    rng = np.random.default_rng(13)
    g = builtin_group("dihedral:3")
    f, h = rand_vec(g, rng), rand_vec(g, rng)
    oracle = np.zeros(g.order, dtype=complex)
    for x in g.elements():
        for y in g.elements():
            oracle[x] += f.data[y] * h.data[g.mul(g.inv(y), x)]
    assert np.allclose(convolve(f, h).data, oracle, atol=1e-12)


def test_convolve_associative():
    rng = np.random.default_rng(14)
    g = builtin_group("dihedral:4")
    f, h, k = (rand_vec(g, rng) for _ in range(3))
    lhs = convolve(convolve(f, h), k)
    rhs = convolve(f, convolve(h, k))
    assert np.linalg.norm(lhs.data - rhs.data) <= 1e-12 * max(1.0, np.linalg.norm(lhs.data))


def test_involution_cases():
    g = builtin_group("cyclic:3")
    assert np.allclose(involution(delta(g, 1)).data, delta(g, 2).data)
    rng = np.random.default_rng(15)
    f = rand_vec(g, rng)
    assert np.allclose(involution(involution(f)).data, f.data)
    assert abs(involution(f).norm() - f.norm()) < 1e-12


def test_involution_antihomomorphism():
    rng = np.random.default_rng(16)
    g = builtin_group("dihedral:3")
    f, h = rand_vec(g, rng), rand_vec(g, rng)
    lhs = involution(convolve(f, h))
    rhs = convolve(involution(h), involution(f))
    assert np.allclose(lhs.data, rhs.data, atol=1e-12)


def test_regular_rep_cyclic2():
    g = builtin_group("cyclic:2")
    lam = left_regular_rep(g)
    assert np.array_equal(lam.matrices[1].real, [[0, 1], [1, 0]])


def test_regular_rep_moves_delta():
    g = builtin_group("dihedral:4")
    lam = left_regular_rep(g)
    for x in g.elements():
        assert np.allclose(lam.matrices[x] @ delta(g, g.identity).data, delta(g, x).data)


def test_regular_rep_exact_homomorphism():
    g = builtin_group("heisenberg:2")
    lam = left_regular_rep(g)
    assert lam.homomorphism_residual() == 0.0
    assert lam.unitarity_residual() == 0.0


def test_right_convolution_operator():
    rng = np.random.default_rng(17)
    g = builtin_group("dihedral:3")
    f = rand_vec(g, rng)
    u = convolution_operator(f, side="right")
    assert np.allclose(convolution_operator(delta(g, g.identity)), np.eye(g.order))
    # U_f is in the commutant of left translation
    lam = left_regular_rep(g)
    worst = max(
        np.linalg.norm(lam.matrices[x] @ u - u @ lam.matrices[x]) for x in g.elements()
    )
    assert worst <= 1e-12
    # matrix applies right convolution
    h = rand_vec(g, rng)
    assert np.allclose(u @ h.data, convolve(h, f).data, atol=1e-12)
    # trace picks out |G| f(e)
    assert abs(np.trace(u) - g.order * f.data[g.identity]) < 1e-12


def test_restrict_rep_full_basis():
    g = builtin_group("cyclic:3")
    lam = left_regular_rep(g)
    eye = np.eye(3, dtype=complex)
    sub = restrict_rep(lam, [eye[:, j] for j in range(3)])
    assert np.allclose(sub.matrices, lam.matrices)


def test_restrict_rep_trivial_line():
    g = builtin_group("cyclic:2")
    lam = left_regular_rep(g)
    sub = restrict_rep(lam, [np.ones(2) / np.sqrt(2)])
    assert sub.dim == 1
    assert np.allclose(sub.matrices, 1.0)


def test_restrict_rep_rejects_noninvariant():
    g = builtin_group("cyclic:2")
    lam = left_regular_rep(g)
    with pytest.raises(NotInvariant):
        restrict_rep(lam, [np.array([1.0, 0.0])])
