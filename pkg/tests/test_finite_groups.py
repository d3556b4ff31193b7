import random
from collections import Counter

from rinfinity.finite_groups import (
    FiniteGroup,
    abelian_group,
    all_subgroups,
    alternating4,
    automorphisms,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    fixed_points,
    induced_automorphism,
    is_automorphism,
    is_normal,
    pauli_group,
    quotient_group,
    reidemeister_number_finite,
    semidirect_cyclic,
    small_groups_up_to_16,
    swap_action_group,
    twisted_classes,
)


def test_small_group_counts_by_order():
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
                9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}
    counts = Counter(g.order for g in small_groups_up_to_16())
    assert dict(counts) == expected


def test_group_axioms_of_constructions():
    for g in [cyclic(6), dihedral(4), dicyclic(2), alternating4(),
              swap_action_group(), pauli_group(), semidirect_cyclic(8, 2, 3)]:
        n = g.order
        for a in range(n):
            assert g.mul(a, g.inverses[a]) == 0
        rng = random.Random(1)
        for _ in range(200):
            a, b, c = (rng.randrange(n) for _ in range(3))
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_distinguishing_invariants_order_16():
    order16 = [g for g in small_groups_up_to_16() if g.order == 16]
    assert len(order16) == 16 - 2  # 14 groups
    assert sum(1 for g in order16 if g.is_abelian) == 5
    # invariant fingerprints are pairwise distinct except for the known
    # tie between C4:C4 and Q8xC2, separated by their squaring maps
    fingerprints = []
    for g in order16:
        orders = tuple(sorted(g.element_orders))
        squares = tuple(sorted(Counter(g.mul(a, a) for a in range(16)).values()))
        fingerprints.append((g.is_abelian, orders, squares))
    assert len(set(fingerprints)) == 14


def test_q8_has_unique_involution():
    q8 = dicyclic(2)
    assert sum(1 for o in q8.element_orders if o == 2) == 1
    q16 = dicyclic(4)
    assert sum(1 for o in q16.element_orders if o == 2) == 1


def test_automorphism_counts_known():
    assert len(automorphisms(cyclic(5))) == 4
    assert len(automorphisms(cyclic(8))) == 4
    assert len(automorphisms(abelian_group((2, 2)))) == 6  # GL(2,2)
    assert len(automorphisms(abelian_group((2, 2, 2)))) == 168  # GL(3,2)
    assert len(automorphisms(dihedral(4))) == 8
    assert len(automorphisms(dicyclic(2))) == 24  # Aut(Q8) = S4
    assert len(automorphisms(alternating4())) == 24


def test_automorphisms_are_automorphisms():
    rng = random.Random(3)
    for g in [dihedral(4), dicyclic(3), swap_action_group()]:
        autos = automorphisms(g)
        for phi in autos:
            assert is_automorphism(g, phi)
        assert len(set(autos)) == len(autos)


def test_twisted_classes_trivial_group():
    g = cyclic(1)
    assert twisted_classes(g, (0,))[0] == 1


def test_twisted_classes_identity_on_c5():
    g = cyclic(5)
    ident = tuple(range(5))
    assert twisted_classes(g, ident)[0] == 5


def test_twisted_classes_matches_naive():
    rng = random.Random(5)
    for g in [cyclic(6), dihedral(3), dicyclic(2), abelian_group((4, 2))]:
        for phi in automorphisms(g):
            count, classes = twisted_classes(g, phi)
            # naive orbit computation over all of G
            n = g.order
            reach = {a: {g.mul(g.mul(h, a), g.inverses[phi[h]]) for h in range(n)} for a in range(n)}
            seen, naive = set(), 0
            for a in range(n):
                if a in seen:
                    continue
                naive += 1
                stack = [a]
                while stack:
                    x = stack.pop()
                    if x in seen:
                        continue
                    seen.add(x)
                    stack.extend(reach[x])
            assert count == naive
            assert sum(len(c) for c in classes) == n


def test_fixed_points_vs_reidemeister_folklore():
    # |Fix| = 1 iff R = 1, spot-checked on one nonabelian example here.
    g = dihedral(3)
    for phi in automorphisms(g):
        r = reidemeister_number_finite(g, phi)
        assert (r == 1) == (len(fixed_points(g, phi)) == 1)


def test_subgroups_of_q8_and_c2c2():
    assert len(all_subgroups(dicyclic(2))) == 6
    assert len(all_subgroups(abelian_group((2, 2)))) == 5
    assert len(all_subgroups(abelian_group((2, 2, 2, 2)))) == 67


def test_quotient_group():
    g = dihedral(4)
    center = next(h for h in all_subgroups(g) if len(h) == 2 and is_normal(g, h)
                  and all(g.mul(a, x) == g.mul(x, a) for x in h for a in range(g.order)))
    q, coset_of = quotient_group(g, center)
    assert q.order == 4
    assert q.is_abelian
    for a in range(g.order):
        for b in range(g.order):
            assert coset_of[g.mul(a, b)] == q.mul(coset_of[a], coset_of[b])


def test_induced_automorphism_and_monotonicity():
    g = dihedral(4)
    autos = automorphisms(g)
    normals = [h for h in all_subgroups(g) if is_normal(g, h)]
    for phi in autos:
        r_phi = reidemeister_number_finite(g, phi)
        for h in normals:
            induced = induced_automorphism(g, phi, h)
            if induced is None:
                continue
            q, _ = quotient_group(g, h)
            assert r_phi >= reidemeister_number_finite(q, induced)
