import random
from math import inf

import pytest

from rinfinity.intlinalg import (
    AbelianAuto,
    FGAbelianGroup,
    IntMatrix,
    fix_subgroup,
    inverse_unimodular,
    kernel_basis,
    lattice_quotient,
    reidemeister_number_abelian,
    smith_normal_form,
    solve_integer,
)


def random_matrix(rng, n, m, lo=-9, hi=9):
    return IntMatrix.of([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)])


def random_unimodular(rng, n, steps=12):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        for k in range(n):
            m[i][k] += q * m[j][k]
    return IntMatrix.of(m)


def test_snf_identity():
    snf = smith_normal_form(IntMatrix.identity(3))
    assert snf.s == IntMatrix.identity(3)
    assert snf.u * IntMatrix.identity(3) * snf.v == snf.s


def test_snf_random_certified():
    rng = random.Random(11)
    for _ in range(1000):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        mat = random_matrix(rng, n, m)
        snf = smith_normal_form(mat)
        assert snf.u * mat * snf.v == snf.s
        assert abs(snf.u.det()) == 1
        assert abs(snf.v.det()) == 1
        d = snf.diagonal
        for i in range(len(d) - 1):
            if d[i + 1] != 0:
                assert d[i] != 0 and d[i + 1] % d[i] == 0
        for i in range(snf.s.nrows):
            for j in range(snf.s.ncols):
                if i != j:
                    assert snf.s.rows[i][j] == 0
        assert all(x >= 0 for x in d)


def test_inverse_unimodular():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randint(1, 6)
        u = random_unimodular(rng, n)
        assert u * inverse_unimodular(u) == IntMatrix.identity(n)


def test_solve_and_kernel():
    rng = random.Random(17)
    for _ in range(300):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        mat = random_matrix(rng, n, m, -4, 4)
        x = tuple(rng.randint(-5, 5) for _ in range(m))
        b = mat.apply(x)
        sol = solve_integer(mat, b)
        assert sol is not None
        assert mat.apply(sol) == b
        for k in kernel_basis(mat):
            assert mat.apply(k) == (0,) * n


def test_gw_relator_invariant_factors():
    # Z^3 with relators {2*e1, b*e1}: C2 + Z^2 when b is even, Z^2 when odd.
    even = FGAbelianGroup.from_relator_columns(3, [(2, 0, 0), (2, 0, 0)])
    st = even.structure()
    assert st.torsion == (2,) and st.free_rank == 2
    odd = FGAbelianGroup.from_relator_columns(3, [(2, 0, 0), (3, 0, 0)])
    st = odd.structure()
    assert st.torsion == () and st.free_rank == 2


def test_fix_subgroup_basics():
    z2 = FGAbelianGroup.free(2)
    ident = AbelianAuto(z2, IntMatrix.identity(2))
    assert fix_subgroup(ident).order == inf
    neg = AbelianAuto(z2, IntMatrix.of([[-1, 0], [0, -1]]))
    assert fix_subgroup(neg).order == 1
    assert reidemeister_number_abelian(neg) == 4
    assert reidemeister_number_abelian(ident) == inf


def test_fix_on_torsion_group():
    # -I on C2 + Z^2 fixes the torsion generator: |Fix| = 2.
    grp = FGAbelianGroup.from_relator_columns(3, [(2, 0, 0)])
    neg = AbelianAuto(grp, IntMatrix.of([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]))
    fixed = fix_subgroup(neg)
    assert fixed.order == 2
    keys = {grp.element_key(g) for g in fixed.generators}
    assert keys == {grp.element_key((1, 0, 0))}


def test_auto_validation():
    grp = FGAbelianGroup.from_relator_columns(2, [(2, 0)])
    with pytest.raises(ValueError):
        AbelianAuto(grp, IntMatrix.of([[0, 1], [1, 0]]))  # does not stabilize 2Z x 0
    with pytest.raises(ValueError):
        AbelianAuto(FGAbelianGroup.free(2), IntMatrix.of([[2, 0], [0, 1]]))  # not onto


def test_fix_infinite_iff_reidemeister_infinite():
    rng = random.Random(19)
    checked = 0
    while checked < 1000:
        n = rng.randint(1, 5)
        m = random_unimodular(rng, n, steps=rng.randint(2, 10))
        auto = AbelianAuto(FGAbelianGroup.free(n), m)
        r = reidemeister_number_abelian(auto)
        f = fix_subgroup(auto).order
        assert (r == inf) == (f == inf)
        if r != inf:
            # finite case: |coker(M - I)| = |det(M - I)|
            assert r == abs((m - IntMatrix.identity(n)).det())
        checked += 1


def test_lattice_quotient_rejects_outside_relations():
    with pytest.raises(ValueError):
        lattice_quotient([(2, 0)], [(1, 0)], 2)
