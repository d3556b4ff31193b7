"""Finite groups as multiplication tables: construction combinators, the
full catalogue of groups of order <= 16, automorphism enumeration by
images of a generating sequence, and the brute-force twisted-conjugacy
oracle.

Elements are 0..n-1 with 0 the identity; the table is a flat tuple with
table[a * n + b] = a * b.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.order
        if len(self.table) != n * n:
            raise ValueError("table size is not a perfect square")
        for a in range(n):
            if self.table[a * n] != a or self.table[a] != a:
                raise ValueError("element 0 is not an identity")

    @property
    def order(self) -> int:
        return int(len(self.table) ** 0.5 + 0.5)

    def mul(self, a: int, b: int) -> int:
        return self.table[a * self.order + b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        n = self.order
        inv = [0] * n
        for a in range(n):
            for b in range(n):
                if self.mul(a, b) == 0:
                    inv[a] = b
                    break
        return tuple(inv)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.mul(x, a)
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul(a, b) == self.mul(b, a) for a in range(n) for b in range(a))

    @cached_property
    def generating_sequence(self) -> tuple[int, ...]:
        """A short generating sequence, found greedily."""
        gens: list[int] = []
        current = {0}
        candidates = sorted(range(self.order), key=lambda a: -self.element_orders[a])
        while len(current) < self.order:
            for a in candidates:
                if a not in current:
                    gens.append(a)
                    current = self.subgroup_closure(gens)
                    break
        return tuple(gens)

    def subgroup_closure(self, elements) -> set[int]:
        closed = {0}
        frontier = [0]
        gens = [g for g in elements]
        gens += [self.inverses[g] for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in closed:
                    closed.add(y)
                    frontier.append(y)
        return closed

    @cached_property
    def word_tree(self) -> tuple[tuple[int, int], ...]:
        """BFS expressions: element e != 0 satisfies e = parent * generator."""
        gens = self.generating_sequence
        parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
        queue = [0]
        while queue:
            x = queue.pop(0)
            for g in gens:
                y = self.mul(x, g)
                if y not in parent:
                    parent[y] = (x, g)
                    queue.append(y)
        return tuple(parent[e] for e in range(self.order))


def _table_from(elements: list, mul) -> tuple[tuple[int, ...], dict]:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [0] * (n * n)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i * n + j] = index[mul(a, b)]
    return tuple(table), index


def from_elements(name: str, identity, elements: list, mul) -> FiniteGroup:
    """Build a table group from abstract elements; identity is moved to 0."""
    ordered = [identity] + [e for e in elements if e != identity]
    table, _ = _table_from(ordered, mul)
    return FiniteGroup(name, table)


def generate_closure(identity, generators: list, mul) -> list:
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                frontier.append(y)
    return elements


def cyclic(n: int) -> FiniteGroup:
    return from_elements(f"C{n}", 0, list(range(n)), lambda a, b: (a + b) % n)


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    elements = [(a, b) for a in range(g.order) for b in range(h.order)]
    return from_elements(
        name or f"{g.name}x{h.name}",
        (0, 0),
        elements,
        lambda p, q: (g.mul(p[0], q[0]), h.mul(p[1], q[1])),
    )


def semidirect_cyclic(n: int, m: int, k: int, name: str | None = None) -> FiniteGroup:
    """C_n x| C_m with the generator of C_m acting by x -> x^k."""
    if pow(k, m, n) != 1 % n:
        raise ValueError("k^m must be 1 mod n")
    elements = [(a, b) for a in range(n) for b in range(m)]

    def mul(p, q):
        return ((p[0] + q[0] * pow(k, p[1], n)) % n, (p[1] + q[1]) % m)

    return from_elements(name or f"C{n}:C{m}(k={k})", (0, 0), elements, mul)


def dihedral(n: int) -> FiniteGroup:
    return semidirect_cyclic(n, 2, n - 1, name=f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """Order 4n: <a, b | a^{2n} = 1, b^2 = a^n, bab^-1 = a^-1>; n = 2 is
    the quaternion group."""
    two_n = 2 * n
    elements = [(a, b) for a in range(two_n) for b in range(2)]

    def mul(p, q):
        a1, b1 = p
        a2, b2 = q
        a = (a1 + (a2 if b1 == 0 else -a2)) % two_n
        if b1 and b2:
            return ((a + n) % two_n, 0)
        return (a, b1 ^ b2)

    name = "Q8" if n == 2 else f"Dic{n}"
    return from_elements(name, (0, 0), elements, mul)


def alternating4() -> FiniteGroup:
    perms = []
    import itertools

    for p in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        if inversions % 2 == 0:
            perms.append(p)
    ident = (0, 1, 2, 3)
    return from_elements("A4", ident, perms, lambda a, b: tuple(a[b[i]] for i in range(4)))


def swap_action_group() -> FiniteGroup:
    """(C2 x C2) x| C4 with the order-4 generator swapping the factors."""
    elements = [(x, y, z) for x in range(2) for y in range(2) for z in range(4)]

    def mul(p, q):
        x1, y1, z1 = p
        x2, y2, z2 = q
        if z1 % 2:
            x2, y2 = y2, x2
        return ((x1 + x2) % 2, (y1 + y2) % 2, (z1 + z2) % 4)

    return from_elements("(C2xC2):C4", (0, 0, 0), elements, mul)


def pauli_group() -> FiniteGroup:
    """Central product of D4 and C4: the 2x2 matrices generated by the two
    real involutions [[0,1],[1,0]], [[1,0],[0,-1]] and i times the identity,
    over the Gaussian integers."""

    def mat_mul(a, b):
        (a11, a12), (a21, a22) = (a[0], a[1]), (a[2], a[3])
        (b11, b12), (b21, b22) = (b[0], b[1]), (b[2], b[3])

        def cm(x, y):
            return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

        def ca(x, y):
            return (x[0] + y[0], x[1] + y[1])

        return (
            ca(cm(a11, b11), cm(a12, b21)),
            ca(cm(a11, b12), cm(a12, b22)),
            ca(cm(a21, b11), cm(a22, b21)),
            ca(cm(a21, b12), cm(a22, b22)),
        )

    one, zero, i_unit = (1, 0), (0, 0), (0, 1)
    ident = (one, zero, zero, one)
    x = (zero, one, one, zero)
    z = (one, zero, zero, (-1, 0))
    i_ident = (i_unit, zero, zero, i_unit)
    elements = generate_closure(ident, [x, z, i_ident], mat_mul)
    assert len(elements) == 16
    return from_elements("D4oC4", ident, elements, mat_mul)


def abelian_group(invariants: tuple[int, ...]) -> FiniteGroup:
    g = cyclic(invariants[0])
    for d in invariants[1:]:
        g = direct_product(g, cyclic(d))
    name = "x".join(f"C{d}" for d in invariants)
    return FiniteGroup(name, g.table)


def small_groups_up_to_16() -> list[FiniteGroup]:
    """All groups of order <= 16 up to isomorphism (42 of them)."""
    groups: list[FiniteGroup] = []
    for n in range(1, 16):
        groups.append(cyclic(n))
    groups.append(abelian_group((2, 2)))  # order 4
    groups.append(dihedral(3))  # = S3, order 6
    groups.extend(
        [
            abelian_group((4, 2)),
            abelian_group((2, 2, 2)),
            dihedral(4),
            dicyclic(2),  # Q8
        ]
    )  # order 8 non-cyclic
    groups.append(abelian_group((3, 3)))  # order 9
    groups.append(dihedral(5))  # order 10
    groups.extend([abelian_group((6, 2)), dihedral(6), alternating4(), dicyclic(3)])  # order 12
    groups.append(dihedral(7))  # order 14
    groups.extend(
        [
            cyclic(16),
            abelian_group((8, 2)),
            abelian_group((4, 4)),
            abelian_group((4, 2, 2)),
            abelian_group((2, 2, 2, 2)),
            dihedral(8),
            dicyclic(4),  # generalized quaternion Q16
            semidirect_cyclic(8, 2, 3, name="SD16"),
            semidirect_cyclic(8, 2, 5, name="M4(2)"),
            direct_product(dihedral(4), cyclic(2)),
            direct_product(dicyclic(2), cyclic(2)),
            semidirect_cyclic(4, 4, 3, name="C4:C4"),
            swap_action_group(),
            pauli_group(),
        ]
    )
    return groups


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms, as permutations of 0..n-1.

    Candidate images of the generating sequence are filtered by element
    order, extended to the whole group along the BFS word tree, and
    verified on all (element, generator) products, which suffices."""
    n = g.order
    gens = g.generating_sequence
    orders = g.element_orders
    tree = g.word_tree
    # topological order of the word tree (parents before children)
    topo: list[int] = [0]
    seen = {0}
    while len(topo) < n:
        for e in range(n):
            if e not in seen and tree[e][0] in seen:
                topo.append(e)
                seen.add(e)
    candidates = [[b for b in range(n) if orders[b] == orders[a]] for a in gens]
    gen_pos = {a: i for i, a in enumerate(gens)}
    out: list[tuple[int, ...]] = []
    images = [0] * n

    def build_checked(assignment) -> tuple[int, ...] | None:
        for e in topo[1:]:
            parent, gen = tree[e]
            images[e] = g.mul(images[parent], assignment[gen_pos[gen]])
        if len(set(images)) != n:
            return None
        # f(x * gen) == f(x) * f(gen) for all x and generators extends to a
        # homomorphism check on all products, by induction on word length.
        for x in range(n):
            row = x * n
            for i, a in enumerate(gens):
                if images[g.table[row + a]] != g.mul(images[x], assignment[i]):
                    return None
        return tuple(images)

    def rec(i: int, assignment: list[int]) -> None:
        if i == len(gens):
            result = build_checked(assignment)
            if result is not None:
                out.append(result)
            return
        for b in candidates[i]:
            assignment.append(b)
            rec(i + 1, assignment)
            assignment.pop()

    rec(0, [])
    return out


def is_automorphism(g: FiniteGroup, phi) -> bool:
    n = g.order
    if sorted(phi) != list(range(n)):
        return False
    return all(
        phi[g.mul(a, b)] == g.mul(phi[a], phi[b]) for a in range(n) for b in range(n)
    )


def twisted_classes(g: FiniteGroup, phi) -> tuple[int, list[list[int]]]:
    """Orbits of (h, a) -> h * a * phi(h)^-1; phi must be an automorphism."""
    if not is_automorphism(g, phi):
        raise ValueError("phi is not an automorphism")
    n = g.order
    gens = g.generating_sequence
    seen = [False] * n
    classes: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        stack = [start]
        while stack:
            a = stack.pop()
            for h in gens:
                b = g.mul(g.mul(h, a), g.inverses[phi[h]])
                if not seen[b]:
                    seen[b] = True
                    orbit.append(b)
                    stack.append(b)
        classes.append(sorted(orbit))
    return len(classes), classes


def reidemeister_number_finite(g: FiniteGroup, phi) -> int:
    return twisted_classes(g, phi)[0]


def fixed_points(g: FiniteGroup, phi) -> list[int]:
    return [a for a in range(g.order) if phi[a] == a]


def all_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, grown by closing known subgroups with one element."""
    n = g.order
    found: set[frozenset[int]] = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        h = frontier.pop()
        for a in range(1, n):
            if a in h:
                continue
            closure = frozenset(g.subgroup_closure(list(h) + [a]))
            if closure not in found:
                found.add(closure)
                frontier.append(closure)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_normal(g: FiniteGroup, h: frozenset[int]) -> bool:
    return all(
        g.mul(g.mul(a, x), g.inverses[a]) in h for a in range(g.order) for x in h
    )


def quotient_group(g: FiniteGroup, h: frozenset[int]) -> tuple[FiniteGroup, list[int]]:
    """(G/H, coset index of each element); H must be normal."""
    n = g.order
    coset_of = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if coset_of[a] >= 0:
            continue
        idx = len(reps)
        reps.append(a)
        for x in h:
            coset_of[g.mul(a, x)] = idx
    # identity coset first
    if coset_of[0] != 0:
        other = coset_of[0]
        for a in range(n):
            if coset_of[a] == 0:
                coset_of[a] = other
            elif coset_of[a] == other:
                coset_of[a] = 0
        reps[0], reps[other] = reps[other], reps[0]
    m = len(reps)
    table = [0] * (m * m)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i * m + j] = coset_of[g.mul(a, b)]
    return FiniteGroup(f"{g.name}/|{len(h)}|", tuple(table)), coset_of


def induced_automorphism(g: FiniteGroup, phi, h: frozenset[int]) -> tuple[int, ...] | None:
    """The automorphism on G/H induced by phi, or None if phi(H) != H."""
    if any(phi[x] not in h for x in h):
        return None
    _, coset_of = quotient_group(g, h)
    m = max(coset_of) + 1
    induced = [-1] * m
    for a in range(g.order):
        c, ic = coset_of[a], coset_of[phi[a]]
        if induced[c] == -1:
            induced[c] = ic
        elif induced[c] != ic:
            raise AssertionError("induced map is not well defined")
    return tuple(induced)
