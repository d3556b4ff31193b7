"""Braided paired tree diagrams (T_minus, braid, T_plus) up to
expansion/reduction, the braided Thompson groups they form, and the two
tree-depth characters on the pure-braid subgroup.

Conventions: the minus tree is drawn on top with leaves 1..n left to
right, strands run top to bottom, strand s joins leaf s of the minus tree
to leaf perm(s) of the plus tree, and sigma_i crosses the strand in
position i over position i+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braids import BraidWord, braid_equal, cable, delete_strand
from .numbers import ParseError
from .treepairs import (
    LEAF,
    Tree,
    TreePair,
    add_caret,
    collapse_caret,
    format_tree,
    leaf_count,
    left_depth,
    parse_tree,
    refine,
    right_depth,
    right_vine,
    sibling_leaf_pairs,
)
from .braids import format_braid, parse_braid


@dataclass(frozen=True)
class BraidedDiagram:
    minus: Tree
    braid: BraidWord
    plus: Tree

    def __post_init__(self) -> None:
        n = leaf_count(self.minus)
        if leaf_count(self.plus) != n or self.braid.n != n:
            raise ValueError("leaf counts and strand count must agree")

    @property
    def n_strands(self) -> int:
        return self.braid.n

    @property
    def is_pure(self) -> bool:
        return self.braid.is_pure

    def __str__(self) -> str:
        return f"{format_tree(self.minus)} | {format_braid(self.braid)} | {format_tree(self.plus)}"


IDENTITY = BraidedDiagram(LEAF, BraidWord(1), LEAF)


def from_treepair(d: TreePair) -> BraidedDiagram:
    """Embed an element of F as a trivial-braid diagram."""
    return BraidedDiagram(d.minus, BraidWord.identity(leaf_count(d.minus)), d.plus)


def expansion(d: BraidedDiagram, leaf: int) -> BraidedDiagram:
    """Add a caret at minus-leaf `leaf` and at the plus leaf its strand
    reaches, doubling that strand into a parallel pair."""
    if not 1 <= leaf <= d.n_strands:
        raise ValueError(f"leaf {leaf} out of range")
    partner = d.braid.permutation()[leaf - 1]
    return BraidedDiagram(
        add_caret(d.minus, leaf),
        cable(d.braid, leaf),
        add_caret(d.plus, partner),
    )


def inverse(d: BraidedDiagram) -> BraidedDiagram:
    return BraidedDiagram(d.plus, d.braid.inverse(), d.minus)


def _expansion_targets(current: Tree, goal: Tree) -> list[int]:
    out: list[int] = []

    def go(cur: Tree, gl: Tree, offset: int) -> int:
        if cur.is_leaf:
            if not gl.is_leaf:
                out.append(offset + 1)
            return 1
        assert not gl.is_leaf
        nl = go(cur.left, gl.left, offset)
        return nl + go(cur.right, gl.right, offset + nl)

    go(current, goal, 0)
    return out


def multiply(d1: BraidedDiagram, d2: BraidedDiagram) -> BraidedDiagram:
    """Glue plus(d1) to minus(d2) after expanding both to their common
    refinement; the braids concatenate."""
    target = refine(d1.plus, d2.minus)
    while d1.plus != target:
        perm = d1.braid.permutation()
        j = _expansion_targets(d1.plus, target)[0]
        d1 = expansion(d1, perm.index(j) + 1)
    while d2.minus != target:
        d2 = expansion(d2, _expansion_targets(d2.minus, target)[0])
    return BraidedDiagram(d1.minus, d1.braid * d2.braid, d2.plus)


def try_reduce(d: BraidedDiagram) -> BraidedDiagram:
    """Greedily reverse expansions: a caret pair is removable when its two
    strands are parallel (deleting one and re-cabling reproduces the braid
    up to braid equality).  Sound, not claimed complete."""
    changed = True
    while changed:
        changed = False
        perm = d.braid.permutation()
        minus_pairs = sibling_leaf_pairs(d.minus)
        plus_pairs = set(sibling_leaf_pairs(d.plus))
        for i in minus_pairs:
            j = perm[i - 1]
            if perm[i] != j + 1 or j not in plus_pairs:
                continue
            candidate = delete_strand(d.braid, i + 1)
            if braid_equal(cable(candidate, i), d.braid):
                d = BraidedDiagram(
                    collapse_caret(d.minus, i),
                    candidate,
                    collapse_caret(d.plus, j),
                )
                changed = True
                break
    return d


def is_identity(d: BraidedDiagram) -> bool:
    """Expansions and reductions preserve (minus == plus and braid trivial),
    and that property characterizes the class of the identity diagram."""
    return d.minus == d.plus and braid_equal(d.braid, BraidWord.identity(d.n_strands))


def equal(d1: BraidedDiagram, d2: BraidedDiagram) -> bool:
    return is_identity(multiply(inverse(d1), d2))


def phi_characters(d: BraidedDiagram) -> tuple[int, int]:
    """(left, right) root-to-extreme-leaf depth differences; homomorphisms
    on the pure-braid subgroup, invariant under expansion there."""
    return (
        left_depth(d.plus) - left_depth(d.minus),
        right_depth(d.plus) - right_depth(d.minus),
    )


def wrap_generator(i: int, j: int, n: int) -> BraidWord:
    """The pure braid A_ij wrapping strand i around strand j (i < j <= n):
    (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1)."""
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    prefix = list(range(j - 1, i, -1))
    letters = prefix + [i, i] + [-k for k in reversed(prefix)]
    return BraidWord(n, tuple(letters))


def standard_generators() -> dict[str, BraidedDiagram]:
    """The ten standard generators of the braided analogue of F: the two
    tree-pair generators of F with trivial braids, and the wrap diagrams
    alpha_ij = (R_{j+1}, A_ij, R_{j+1}), beta_ij = (R_j, A_ij, R_j) on
    right vines."""
    from .treepairs import X0, X1

    gens: dict[str, BraidedDiagram] = {
        "x0": from_treepair(X0),
        "x1": from_treepair(X1),
    }
    for i, j in ((1, 2), (1, 3), (2, 3), (2, 4)):
        vine = right_vine(j + 1)
        gens[f"alpha{i}{j}"] = BraidedDiagram(vine, wrap_generator(i, j, j + 1), vine)
        vine = right_vine(j)
        gens[f"beta{i}{j}"] = BraidedDiagram(vine, wrap_generator(i, j, j), vine)
    return gens


def format_diagram(d: BraidedDiagram) -> str:
    return str(d)


def parse_diagram(text: str) -> BraidedDiagram:
    parts = text.split("|")
    if len(parts) != 3:
        raise ParseError("diagram must look like minus | braid | plus", text, 0)
    minus = parse_tree(parts[0].strip())
    plus = parse_tree(parts[2].strip())
    braid = parse_braid(parts[1], leaf_count(minus))
    return BraidedDiagram(minus, braid, plus)
