"""Fixed-point and twisted-conjugacy machinery built on integer matrices:
the character-invariance pipeline that certifies infinite fixed sets in
abelianizations, exact character independence, and the eigenvalue-1 test
for 2x2 unimodular matrices.

The heavy lifting on abelian groups (Smith normal form, fixed subgroups,
twisted class counts) lives in intlinalg; the brute-force finite oracle
lives in finite_groups.  This module adds the character-level operations
and re-exports the abelian ones for convenience.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, inf

from .intlinalg import (
    AbelianAuto,
    FGAbelianGroup,
    FixedSubgroup,
    IntMatrix,
    fix_subgroup,
    kernel_basis,
    reidemeister_number_abelian,
    smith_normal_form,
)

__all__ = [
    "AbelianAuto",
    "FGAbelianGroup",
    "FixedSubgroup",
    "IntMatrix",
    "CharacterData",
    "PipelineResult",
    "character_independence",
    "eigenvalue_one_check",
    "fix_subgroup",
    "fixed_vector_certificate",
    "normalize_ray",
    "reidemeister_number_abelian",
    "smith_normal_form",
]


def normalize_ray(vector: tuple[int, ...]) -> tuple[int, ...]:
    """Primitive representative of the positive ray through the vector:
    divide by the gcd, never flip signs."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no ray")
    return tuple(x // g for x in vector)


@dataclass(frozen=True)
class CharacterData:
    """Finitely many integer characters given by their values on a fixed
    generating set (one vector per character)."""

    labels: tuple[str, ...]
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.vectors):
            raise ValueError("need one label per vector")
        for v in self.vectors:
            if all(x == 0 for x in v):
                raise ValueError("characters must be nonzero")

    @staticmethod
    def of(**named_vectors) -> CharacterData:
        labels = tuple(named_vectors)
        return CharacterData(labels, tuple(tuple(v) for v in named_vectors.values()))


@dataclass(frozen=True)
class PipelineResult:
    ok: bool
    reason: str
    fixed_vector: tuple[int, ...] | None = None
    summed_character: tuple[int, ...] | None = None


def fixed_vector_certificate(chars: CharacterData, induced: IntMatrix) -> PipelineResult:
    """Certify an infinite fixed-point set from invariant characters.

    Requires the induced matrix to permute the character rays (composition
    with the action preserves the set up to positive scalars).  On success
    the sum of the characters is invariant and the matrix has an integer
    fixed vector of infinite order in the free quotient, which is
    returned as the certificate."""
    n = induced.nrows
    if induced.ncols != n:
        raise ValueError("induced matrix must be square")
    rays = [normalize_ray(v) for v in chars.vectors]
    images = []
    for v in rays:
        image = tuple(induced.transpose().apply(v))
        if all(x == 0 for x in image):
            return PipelineResult(False, "a character dies under the action")
        images.append(normalize_ray(image))
    if sorted(images) != sorted(rays):
        return PipelineResult(
            False,
            "the action does not preserve the character set up to positive scalars",
        )
    summed = tuple(sum(v[i] for v in rays) for i in range(len(rays[0])))
    if tuple(induced.transpose().apply(summed)) != summed:
        return PipelineResult(False, "summed character is not invariant", None, summed)
    kernel = kernel_basis(induced - IntMatrix.identity(n))
    if not kernel:
        return PipelineResult(
            False,
            "no eigenvalue-1 vector despite invariant characters (hypothesis violation)",
            None,
            summed,
        )
    return PipelineResult(True, "fixed vector of infinite order found", kernel[0], summed)


def swap_matrix(chars: CharacterData) -> IntMatrix:
    """The unique GL-matrix exchanging a pair of independent characters:
    C^-1 P C for the 2x2 character matrix C and the transposition P."""
    if len(chars.vectors) != 2 or any(len(v) != 2 for v in chars.vectors):
        raise ValueError("need exactly two characters on two generators")
    from .intlinalg import inverse_unimodular

    c = IntMatrix.of(chars.vectors)
    p = IntMatrix.of([[0, 1], [1, 0]])
    # characters act as rows; M must satisfy c * M = p * c as functionals
    return inverse_unimodular(c) * p * c


def character_independence(chars: CharacterData) -> tuple[int, bool]:
    """Exact determinant of the character-value matrix and whether the
    characters are linearly independent."""
    m = IntMatrix.of(chars.vectors)
    if m.nrows != m.ncols:
        raise ValueError("need a square value matrix")
    d = m.det()
    return d, d != 0


def eigenvalue_one_check(m: IntMatrix) -> bool:
    """Whether a 2x2 integer matrix with determinant +-1 has eigenvalue 1,
    i.e. det(M - I) = 0."""
    if m.nrows != 2 or m.ncols != 2:
        raise ValueError("matrix must be 2x2")
    if m.det() not in (1, -1):
        raise ValueError("matrix must be unimodular")
    return (m - IntMatrix.identity(2)).det() == 0
