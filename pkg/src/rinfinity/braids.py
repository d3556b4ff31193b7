"""Braid words on n strands with a decision procedure for the word problem.

Letters are nonzero integers: +i is the Artin generator sigma_i (the
strand in position i passes over position i+1), -i its inverse.  Strands
are labeled by their starting positions 1..n; the permutation sends start
position to end position.

Equality is decided by free reduction plus Dehornoy handle reduction,
with permutation / exponent-sum / pairwise-crossing-count fast paths.  A
handle is a factor sigma_i^e v sigma_i^{-e} where v uses neither index i
nor i-1; removing it rewrites each sigma_{i+1}^d in v as
sigma_{i+1}^{-e} sigma_i^d sigma_{i+1}^{e}.  A freely reduced word with
no handle is either empty or sigma-definite in its lowest index, hence
nontrivial.  Handle reduction terminates, but a generous iteration cap
guards against implementation bugs: breaching it raises, never lies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class HandleReductionCap(RuntimeError):
    """The handle-reduction iteration cap was hit; result unknown."""


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one strand")
        for l in self.letters:
            if l == 0 or abs(l) >= self.n:
                raise ValueError(f"letter {l} out of range for {self.n} strands")

    @staticmethod
    def identity(n: int) -> BraidWord:
        return BraidWord(n)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-l for l in reversed(self.letters)))

    def free_reduce(self) -> BraidWord:
        out: list[int] = []
        for l in self.letters:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)
        return BraidWord(self.n, tuple(out))

    def permutation(self) -> tuple[int, ...]:
        """perm[s-1] is the end position of the strand starting at s."""
        pos = list(range(1, self.n + 1))  # pos[p-1] = strand currently at position p
        for l in self.letters:
            i = abs(l)
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        perm = [0] * self.n
        for p, strand in enumerate(pos, start=1):
            perm[strand - 1] = p
        return tuple(perm)

    @property
    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(1, self.n + 1))

    def exponent_sum(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)

    def crossing_counts(self) -> dict[tuple[int, int], int]:
        """Signed crossing count between each pair of strands (by start
        label); an isotopy invariant of the word."""
        counts: dict[tuple[int, int], int] = {}
        pos = list(range(1, self.n + 1))
        for l in self.letters:
            i = abs(l)
            a, b = pos[i - 1], pos[i]
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + (1 if l > 0 else -1)
            pos[i - 1], pos[i] = b, a
        return {k: v for k, v in counts.items() if v}

    def linking_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Half the signed crossing counts; integral on pure braids."""
        counts = self.crossing_counts()
        half = Fraction(1, 2)

        def entry(i: int, j: int) -> Fraction:
            if i == j:
                return Fraction(0)
            return half * counts.get((min(i, j), max(i, j)), 0)

        return tuple(tuple(entry(i, j) for j in range(1, self.n + 1)) for i in range(1, self.n + 1))

    def __str__(self) -> str:
        return format_braid(self)


def _find_handle(letters: list[int]) -> tuple[int, int] | None:
    """Leftmost-ending handle (p, q): letters[p] = -letters[q] = sigma_i^e
    with no index i or i-1 strictly between."""
    last_seen: dict[int, int] = {}
    for q, l in enumerate(letters):
        i = abs(l)
        p = last_seen.get(i)
        if p is not None and letters[p] == -l:
            if all(abs(letters[k]) != i - 1 for k in range(p + 1, q)):
                return p, q
        last_seen[i] = q
    return None


def handle_reduce(word: BraidWord, cap: int | None = None) -> BraidWord:
    """Fully handle-reduce the word; the result is empty iff the braid is
    trivial."""
    letters = list(word.free_reduce().letters)
    if cap is None:
        cap = 4000 + 400 * len(letters) * len(letters)
    steps = 0
    while True:
        found = _find_handle(letters)
        if found is None:
            return BraidWord(word.n, tuple(letters))
        steps += 1
        if steps > cap:
            raise HandleReductionCap(f"no normal form after {steps} handle reductions")
        p, q = found
        e = 1 if letters[p] > 0 else -1
        i = abs(letters[p])
        replacement: list[int] = []
        for l in letters[p + 1 : q]:
            if abs(l) == i + 1:
                d = 1 if l > 0 else -1
                replacement += [-e * (i + 1), d * i, e * (i + 1)]
            else:
                replacement.append(l)
        letters[p : q + 1] = replacement
        # interleave free reduction to keep words short
        reduced: list[int] = []
        for l in letters:
            if reduced and reduced[-1] == -l:
                reduced.pop()
            else:
                reduced.append(l)
        letters = reduced


def braid_equal(b1: BraidWord, b2: BraidWord) -> bool:
    """Exact equality in the braid group B_n."""
    if b1.n != b2.n:
        raise ValueError("strand counts differ")
    if b1.letters == b2.letters:
        return True
    if b1.permutation() != b2.permutation():
        return False
    if b1.exponent_sum() != b2.exponent_sum():
        return False
    if b1.crossing_counts() != b2.crossing_counts():
        return False
    quotient = b1 * b2.inverse()
    return len(handle_reduce(quotient).letters) == 0


def is_trivial(b: BraidWord) -> bool:
    return braid_equal(b, BraidWord.identity(b.n))


def artin_action(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Image of the free-group basis under the Artin representation,
    sigma_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.  Faithful for all
    n, so it is an independent (if slower) equality oracle."""

    def reduce_word(w: list[int]) -> list[int]:
        out: list[int] = []
        for g in w:
            if out and out[-1] == -g:
                out.pop()
            else:
                out.append(g)
        return out

    images: list[list[int]] = [[g] for g in range(1, b.n + 1)]
    for l in reversed(b.letters):
        i = abs(l)
        new_i: list[int]
        new_i1: list[int]
        if l > 0:
            new_i, new_i1 = [i, i + 1, -i], [i]
        else:
            new_i, new_i1 = [i + 1], [-(i + 1), i, i + 1]
        table = {i: new_i, i + 1: new_i1}
        updated = []
        for img in images:
            word: list[int] = []
            for g in img:
                base = table.get(abs(g))
                if base is None:
                    word.append(g)
                elif g > 0:
                    word.extend(base)
                else:
                    word.extend(-x for x in reversed(base))
            updated.append(reduce_word(word))
        images = updated
    return tuple(tuple(img) for img in images)


def _block_cross(base: int, u: int, v: int, sign: int) -> list[int]:
    """Letters crossing a width-u block (positions base..base+u-1) with the
    width-v block to its right, all crossings with the given sign."""
    if sign > 0:
        return [base + u - 1 - a + c for a in range(u) for c in range(v)]
    return [-(l) for l in reversed(_block_cross(base, v, u, 1))]


def cable(b: BraidWord, strand: int) -> BraidWord:
    """Double the strand with the given start position into two parallel
    strands, rewriting each crossing as a block crossing."""
    if not 1 <= strand <= b.n:
        raise ValueError(f"strand {strand} out of range")
    pos = list(range(1, b.n + 1))
    out: list[int] = []
    for l in b.letters:
        i = abs(l)
        sign = 1 if l > 0 else -1
        left, right = pos[i - 1], pos[i]
        widths = [2 if s == strand else 1 for s in pos]
        base = 1 + sum(widths[: i - 1])
        u = 2 if left == strand else 1
        v = 2 if right == strand else 1
        out.extend(_block_cross(base, u, v, sign))
        pos[i - 1], pos[i] = right, left
    return BraidWord(b.n + 1, tuple(out))


def delete_strand(b: BraidWord, strand: int) -> BraidWord:
    """Forget the strand with the given start position; crossings through
    it disappear and the other letters shift accordingly."""
    if not 1 <= strand <= b.n:
        raise ValueError(f"strand {strand} out of range")
    pos = list(range(1, b.n + 1))
    out: list[int] = []
    for l in b.letters:
        i = abs(l)
        left, right = pos[i - 1], pos[i]
        if strand not in (left, right):
            removed_pos = pos.index(strand) + 1
            out.append((i - 1 if removed_pos < i else i) * (1 if l > 0 else -1))
        pos[i - 1], pos[i] = right, left
    return BraidWord(b.n - 1, tuple(out))


def format_braid(b: BraidWord) -> str:
    if not b.letters:
        return "e"
    return " ".join(f"s{abs(l)}" + ("'" if l < 0 else "") for l in b.letters)


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse words like `s1 s2' s1`; `e` is the empty word."""
    from .numbers import ParseError

    letters: list[int] = []
    stripped = text.strip()
    if stripped in ("", "e"):
        return BraidWord(n)
    pos = 0
    for token in stripped.split():
        if not token.startswith("s"):
            raise ParseError(f"bad braid token {token!r}", text, pos)
        body = token[1:]
        inv = body.endswith("'")
        if inv:
            body = body[:-1]
        if not body.isdigit() or int(body) < 1:
            raise ParseError(f"bad braid token {token!r}", text, pos)
        letters.append(-int(body) if inv else int(body))
        pos += len(token) + 1
    return BraidWord(n, tuple(letters))
