import random

from rinfinity.braided import (
    IDENTITY,
    BraidedDiagram,
    equal,
    expansion,
    from_treepair,
    inverse,
    is_identity,
    multiply,
    parse_diagram,
    phi_characters,
    standard_generators,
    try_reduce,
    wrap_generator,
)
from rinfinity.braids import BraidWord, braid_equal
from rinfinity import treepairs as tp
from rinfinity.treepairs import LEAF, Tree, TreePair, caret


def random_tree(rng, n_leaves):
    if n_leaves == 1:
        return LEAF
    k = rng.randint(1, n_leaves - 1)
    return caret(random_tree(rng, k), random_tree(rng, n_leaves - k))


def random_pure_braid(rng, n, length=3):
    word = BraidWord.identity(n)
    if n < 2:
        return word
    for _ in range(length):
        pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
        i, j = pairs[rng.randrange(len(pairs))]
        gen = wrap_generator(i, j, n)
        word = word * (gen if rng.random() < 0.5 else gen.inverse())
    return word


def random_pure_diagram(rng, max_leaves=5, braid_length=2):
    n = rng.randint(1, max_leaves)
    return BraidedDiagram(
        random_tree(rng, n), random_pure_braid(rng, n, braid_length), random_tree(rng, n)
    )


def test_expansion_of_identity():
    e = expansion(IDENTITY, 1)
    assert e.minus == caret(LEAF, LEAF)
    assert e.plus == caret(LEAF, LEAF)
    assert e.braid == BraidWord.identity(2)
    assert is_identity(e)


def test_expansion_preserves_class():
    rng = random.Random(81)
    for _ in range(60):
        d = random_pure_diagram(rng, 4, 1)
        e = expansion(d, rng.randint(1, d.n_strands))
        assert equal(d, e)


def test_multiply_inverse_is_identity():
    rng = random.Random(83)
    for _ in range(40):
        d = random_pure_diagram(rng, 4, 1)
        assert is_identity(multiply(d, inverse(d)))


def test_multiply_matches_treepair_oracle():
    rng = random.Random(87)
    for _ in range(1000):
        n1, n2 = rng.randint(1, 6), rng.randint(1, 6)
        d1 = tp.reduce(TreePair(random_tree(rng, n1), random_tree(rng, n1)))
        d2 = tp.reduce(TreePair(random_tree(rng, n2), random_tree(rng, n2)))
        product = multiply(from_treepair(d1), from_treepair(d2))
        assert braid_equal(product.braid, BraidWord.identity(product.n_strands))
        expected = tp.multiply(d1, d2)
        assert equal(product, from_treepair(expected))


def test_try_reduce_roundtrip():
    rng = random.Random(89)
    for _ in range(60):
        d = try_reduce(random_pure_diagram(rng, 4, 1))
        e = d
        for _ in range(rng.randint(1, 3)):
            e = expansion(e, rng.randint(1, e.n_strands))
        r = try_reduce(e)
        assert equal(r, d)
        assert r.n_strands <= e.n_strands - 1


def test_try_reduce_identity_diagram():
    assert try_reduce(IDENTITY) == IDENTITY


def test_try_reduce_blocked_by_linking():
    # A genuinely linked caret pair must not reduce.
    tree = caret(LEAF, LEAF)
    d = BraidedDiagram(tree, BraidWord(2, (1, 1)), tree)
    assert try_reduce(d) == d


def test_generators_are_pure():
    gens = standard_generators()
    assert len(gens) == 10
    for name, d in gens.items():
        assert d.is_pure, name


def test_alpha12_linking():
    gens = standard_generators()
    linking = gens["alpha12"].braid.linking_matrix()
    n = gens["alpha12"].n_strands
    for i in range(n):
        for j in range(n):
            expected = 1 if {i + 1, j + 1} == {1, 2} else 0
            assert linking[i][j] == expected


def test_beta_vs_alpha_vine_sizes():
    gens = standard_generators()
    for i, j in ((1, 2), (1, 3), (2, 3), (2, 4)):
        assert gens[f"alpha{i}{j}"].n_strands == j + 1
        assert gens[f"beta{i}{j}"].n_strands == j
        assert gens[f"alpha{i}{j}"].minus == gens[f"alpha{i}{j}"].plus


def test_phi_characters_basics():
    assert phi_characters(IDENTITY) == (0, 0)
    gens = standard_generators()
    for name, d in gens.items():
        if name.startswith(("alpha", "beta")):
            assert phi_characters(d) == (0, 0)
    assert phi_characters(gens["x0"]) == tp.f_characters(tp.X0)
    assert phi_characters(gens["x1"]) == tp.f_characters(tp.X1)


def test_phi_characters_expansion_invariant():
    rng = random.Random(91)
    for _ in range(1000):
        d = random_pure_diagram(rng, 5, 1)
        e = expansion(d, rng.randint(1, d.n_strands))
        assert phi_characters(e) == phi_characters(d)


def test_phi_characters_additive():
    rng = random.Random(93)
    for _ in range(1000):
        d1 = random_pure_diagram(rng, 4, 1)
        d2 = random_pure_diagram(rng, 4, 1)
        c1, c2 = phi_characters(d1), phi_characters(d2)
        c12 = phi_characters(multiply(d1, d2))
        assert c12 == (c1[0] + c2[0], c1[1] + c2[1])


def test_phi_quotient_rank_two():
    gens = standard_generators()
    x0, x1 = gens["x0"], gens["x1"]
    rng = random.Random(97)
    for _ in range(50):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        word = IDENTITY
        for _ in range(abs(a)):
            word = multiply(word, x0 if a > 0 else inverse(x0))
        for _ in range(abs(b)):
            word = multiply(word, x1 if b > 0 else inverse(x1))
        chars = phi_characters(word)
        assert (chars == (0, 0)) == (a == 0 and b == 0)


def test_multiply_with_braided_generator_characters():
    gens = standard_generators()
    product = multiply(gens["x0"], gens["alpha12"])
    assert product.is_pure
    assert phi_characters(product) == phi_characters(gens["x0"])


def test_diagram_parse_roundtrip():
    gens = standard_generators()
    for d in gens.values():
        assert parse_diagram(str(d)) == d
