"""The four Lodha-Moore groups as words in the generators x_s, y_t acting
on infinite binary sequences.

The generator x relabels a neighborhood of the Cantor set
(00a -> 0a, 01a -> 10a, 1a -> 11a) and y does the same while re-entering
itself on each branch (0y(a), 10y^-1(a), 11y(a)); x_s and y_t act inside
the cylinder at the finite address s and fix everything else.  Words act
rightmost letter first.

Each letter is a small sequential transducer (match the address, then run
the case rules, buffering at most two input bits), and a word is the
pipeline of its letters.  Prefix evaluation streams bits through the
pipeline; the depth-bounded equality test explores the product of two
pipelines over all inputs with d branching bits followed by one of the
periodic tails 0^w, 1^w, (10)^w, sharing states across inputs.  A
`distinct` verdict always carries a concrete witness input; the positive
verdict is only "indistinguishable at this depth".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count

from .numbers import ParseError

Bits = tuple[int, ...]

VARIANTS = ("G", "yG", "Gy", "yGy")

# y-addresses each variant must avoid: constant-zero and/or constant-one
# addresses (the empty address is both).
_EXCLUDES = {
    "G": ("zeros", "ones"),
    "yG": ("ones",),
    "Gy": ("zeros",),
    "yGy": (),
}


def is_constant(addr: Bits, bit: int) -> bool:
    return all(b == bit for b in addr)


def y_address_allowed(addr: Bits, variant: str) -> bool:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    rules = _EXCLUDES[variant]
    if "zeros" in rules and is_constant(addr, 0):
        return False
    if "ones" in rules and is_constant(addr, 1):
        return False
    return True


@dataclass(frozen=True)
class LMLetter:
    kind: str  # 'x' or 'y'
    address: Bits
    sign: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("x", "y"):
            raise ValueError("letter kind must be 'x' or 'y'")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        if any(b not in (0, 1) for b in self.address):
            raise ValueError("address bits must be 0/1")

    def inverse(self) -> LMLetter:
        return LMLetter(self.kind, self.address, -self.sign)

    def __str__(self) -> str:
        addr = "".join(map(str, self.address))
        return f"{self.kind}({addr})" + ("'" if self.sign < 0 else "")


def x_letter(*addr: int, sign: int = 1) -> LMLetter:
    return LMLetter("x", tuple(addr), sign)


def y_letter(*addr: int, sign: int = 1) -> LMLetter:
    return LMLetter("y", tuple(addr), sign)


@dataclass(frozen=True)
class LMWord:
    letters: tuple[LMLetter, ...]
    variant: str = "yGy"

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        for l in self.letters:
            if l.kind == "y" and not y_address_allowed(l.address, self.variant):
                raise ValueError(f"letter {l} is not allowed in variant {self.variant}")

    def inverse(self) -> LMWord:
        return LMWord(tuple(l.inverse() for l in reversed(self.letters)), self.variant)

    def __mul__(self, other: LMWord) -> LMWord:
        if self.variant != other.variant:
            raise ValueError("variants differ")
        return LMWord(self.letters + other.letters, self.variant)

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters) if self.letters else "1"


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    """Infinite binary sequence preperiod . (period)^w, kept canonical:
    primitive period, maximally absorbed into the preperiod boundary."""

    preperiod: Bits
    period: Bits

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be nonempty")
        pre, per = list(self.preperiod), list(self.period)
        # primitive period
        n = len(per)
        for k in range(1, n):
            if n % k == 0 and per == per[:k] * (n // k):
                per = per[:k]
                n = k
                break
        # absorb: rotate the period left out of the preperiod tail
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        object.__setattr__(self, "preperiod", tuple(pre))
        object.__setattr__(self, "period", tuple(per))

    def bit(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, k: int) -> Bits:
        return tuple(self.bit(i) for i in range(k))

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        per = "".join(map(str, self.period))
        return f"{pre}({per})^w"


ZEROS = EventuallyPeriodicSeq((), (0,))
ONES = EventuallyPeriodicSeq((), (1,))
TAILS = {"0^w": (0,), "1^w": (1,), "(10)^w": (1, 0)}


# --- letter transducers -------------------------------------------------

_MATCH = "m"
_IDENT = "i"
_CASE = "c"
_CASE0 = "c0"
_CASE1 = "c1"


def _letter_initial(letter: LMLetter):
    if letter.address:
        return (_MATCH, 0)
    return (_CASE, letter.sign)


def _letter_step(letter: LMLetter, state, bit: int):
    """One input bit through one letter; returns (state', emitted bits)."""
    tag = state[0]
    if tag == _IDENT:
        return state, (bit,)
    if tag == _MATCH:
        i = state[1]
        if bit != letter.address[i]:
            return (_IDENT,), (bit,)
        if i + 1 < len(letter.address):
            return (_MATCH, i + 1), (bit,)
        return (_CASE, letter.sign), (bit,)
    sign = state[1]
    if letter.kind == "x":
        after = (_IDENT,)
    else:
        after = None  # computed per branch below
    if sign > 0:
        # 00a -> 0 _, 01a -> 10 _, 1a -> 11 _
        if tag == _CASE:
            return ((_CASE0, sign), ()) if bit == 0 else (
                (after or (_CASE, sign)), (1, 1))
        if tag == _CASE0:
            if bit == 0:
                return (after or (_CASE, sign)), (0,)
            return (after or (_CASE, -sign)), (1, 0)
    else:
        # 0a -> 00 _, 10a -> 01 _, 11a -> 1 _
        if tag == _CASE:
            return ((after or (_CASE, sign)), (0, 0)) if bit == 0 else (
                (_CASE1, sign), ())
        if tag == _CASE1:
            if bit == 0:
                return (after or (_CASE, -sign)), (0, 1)
            return (after or (_CASE, sign)), (1,)
    raise AssertionError(f"bad state {state}")


class WordMachine:
    """Synchronous pipeline of letter transducers, rightmost letter first."""

    def __init__(self, word: LMWord) -> None:
        self.stages = tuple(reversed(word.letters))
        self.initial = tuple(_letter_initial(l) for l in self.stages)
        self._memo: list[dict] = [dict() for _ in self.stages]

    def push(self, states, bit: int):
        bits = (bit,)
        new_states = []
        for k, letter in enumerate(self.stages):
            memo = self._memo[k]
            st = states[k]
            out: list[int] = []
            for b in bits:
                key = (st, b)
                nxt = memo.get(key)
                if nxt is None:
                    nxt = _letter_step(letter, st, b)
                    memo[key] = nxt
                st, emitted = nxt
                out.extend(emitted)
            new_states.append(st)
            bits = tuple(out)
        return tuple(new_states), bits


def _push_cap(word: LMWord, k: int) -> int:
    addr = sum(len(l.address) for l in word.letters)
    return (k + addr + 4) * (1 << len(word.letters)) + 32


def evaluate_prefix(word: LMWord, seq: EventuallyPeriodicSeq, k: int) -> Bits:
    """First k bits of word(seq)."""
    if k < 1:
        raise ValueError("output length must be >= 1")
    machine = WordMachine(word)
    states = machine.initial
    out: list[int] = []
    for i in range(_push_cap(word, k)):
        states, bits = machine.push(states, seq.bit(i))
        out.extend(bits)
        if len(out) >= k:
            return tuple(out[:k])
    raise RuntimeError("transducer failed to produce output (cap exceeded)")


def apply_word(word: LMWord, seq: EventuallyPeriodicSeq, k: int) -> Bits:
    return evaluate_prefix(word, seq, k)


def x_image_of_address(s: Bits, t: Bits) -> Bits | None:
    """x_s(t) for a finite address t, or None when not well-defined (t must
    extend s far enough for the case rules to read their bits)."""
    if t[: len(s)] != s:
        return None
    rest = t[len(s) :]
    if not rest:
        return None
    if rest[0] == 1:
        return s + (1, 1) + rest[1:]
    if len(rest) < 2:
        return None
    if rest[1] == 0:
        return s + (0,) + rest[2:]
    return s + (1, 0) + rest[2:]


# --- depth-bounded equality ---------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A concrete input on which the two words differ."""

    prefix: Bits
    tail: str
    position: int

    def sequence(self) -> EventuallyPeriodicSeq:
        return EventuallyPeriodicSeq(self.prefix, TAILS[self.tail])

    def __str__(self) -> str:
        pre = "".join(map(str, self.prefix)) or "ø"
        return f"input {pre}{self.tail}, first difference at output bit {self.position}"


@dataclass(frozen=True)
class DepthVerdict:
    distinct: bool
    depth: int
    witness: Witness | None = None

    def __bool__(self) -> bool:  # truthy = indistinguishable
        return not self.distinct


def _certify(w1: LMWord, w2: LMWord, prefix: Bits, tail: str) -> Witness:
    seq = EventuallyPeriodicSeq(prefix, TAILS[tail])
    k = 8
    while k < 4096:
        o1 = evaluate_prefix(w1, seq, k)
        o2 = evaluate_prefix(w2, seq, k)
        if o1 != o2:
            pos = next(i for i in range(k) if o1[i] != o2[i])
            return Witness(seq.preperiod, tail, pos)
        k *= 2
    raise AssertionError("mismatch vanished during certification")


def equal_up_to_depth(w1: LMWord, w2: LMWord, d: int) -> DepthVerdict:
    """Compare the actions on every input with d free bits followed by one
    of the tails 0^w, 1^w, (10)^w.  Product states are shared between
    inputs, so the cost is the size of the product automaton, not 2^d."""
    if d < 1:
        raise ValueError("depth must be >= 1")
    m1, m2 = WordMachine(w1), WordMachine(w2)
    start = (m1.initial, m2.initial, (), ())

    def step(node, bit):
        st1, st2, sur1, sur2 = node
        st1, o1 = m1.push(st1, bit)
        st2, o2 = m2.push(st2, bit)
        t1 = sur1 + o1
        t2 = sur2 + o2
        k = min(len(t1), len(t2))
        if t1[:k] != t2[:k]:
            return None
        return (st1, st2, t1[k:], t2[k:])

    depth_of = {start: 0}
    paths = {start: ()}
    stack = [start]
    while stack:
        node = stack.pop()
        depth = depth_of[node]
        if depth >= d:
            continue
        for bit in (0, 1):
            nxt = step(node, bit)
            if nxt is None:
                return DepthVerdict(True, d, _certify(w1, w2, paths[node] + (bit,), "0^w"))
            if nxt not in depth_of or depth_of[nxt] > depth + 1:
                depth_of[nxt] = depth + 1
                paths[nxt] = paths[node] + (bit,)
                stack.append(nxt)

    cap = max(_push_cap(w1, d), _push_cap(w2, d))
    tail_seen: set = set()
    for node in list(depth_of):
        for tail_name, period in TAILS.items():
            cur = node
            for i in range(cap):
                key = (cur, tail_name, i % len(period))
                if key in tail_seen:
                    break
                tail_seen.add(key)
                nxt = step(cur, period[i % len(period)])
                if nxt is None:
                    return DepthVerdict(True, d, _certify(w1, w2, paths[node], tail_name))
                cur = nxt
    return DepthVerdict(False, d)


# --- relations -----------------------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    instance: str
    status: str  # 'pass' | 'fail' | 'skipped'
    detail: str = ""


def _word(variant: str, *letters: LMLetter) -> LMWord:
    return LMWord(tuple(letters), variant)


def relation_suite(s: Bits, t: Bits, d: int, variant: str = "yGy") -> list[RelationCheck]:
    """Check every instance of the five defining relations attached to the
    addresses (s, t) that is legal in the given variant, at depth d."""
    out: list[RelationCheck] = []

    def check(name: str, instance: str, lhs: LMWord, rhs: LMWord) -> None:
        verdict = equal_up_to_depth(lhs, rhs, d)
        if verdict.distinct:
            out.append(RelationCheck(name, instance, "fail", str(verdict.witness)))
        else:
            out.append(RelationCheck(name, instance, "pass"))

    def skip(name: str, instance: str, why: str) -> None:
        out.append(RelationCheck(name, instance, "skipped", why))

    sa = "".join(map(str, s)) or "ø"
    ta = "".join(map(str, t)) or "ø"

    # square: x_s^2 = x_{s1} x_s x_{s0}
    check(
        "square",
        f"s={sa}",
        _word(variant, LMLetter("x", s), LMLetter("x", s)),
        _word(variant, LMLetter("x", s + (1,)), LMLetter("x", s), LMLetter("x", s + (0,))),
    )

    # x-conjugation: x_s x_t = x_{x_s(t)} x_s
    image = x_image_of_address(s, t)
    if image is None:
        skip("x-conj", f"s={sa},t={ta}", "x_s(t) undefined")
    else:
        check(
            "x-conj",
            f"s={sa},t={ta}",
            _word(variant, LMLetter("x", s), LMLetter("x", t)),
            _word(variant, LMLetter("x", image), LMLetter("x", s)),
        )

    # y-conjugation: x_s y_t = y_{x_s(t)} x_s
    if image is None:
        skip("y-conj", f"s={sa},t={ta}", "x_s(t) undefined")
    elif not (y_address_allowed(t, variant) and y_address_allowed(image, variant)):
        skip("y-conj", f"s={sa},t={ta}", f"y-address not allowed in {variant}")
    else:
        check(
            "y-conj",
            f"s={sa},t={ta}",
            _word(variant, LMLetter("x", s), LMLetter("y", t)),
            _word(variant, LMLetter("y", image), LMLetter("x", s)),
        )

    # commuting: y_s y_t = y_t y_s for incomparable s, t
    comparable = s[: len(t)] == t or t[: len(s)] == s
    if comparable:
        skip("commute", f"s={sa},t={ta}", "addresses comparable")
    elif not (y_address_allowed(s, variant) and y_address_allowed(t, variant)):
        skip("commute", f"s={sa},t={ta}", f"y-address not allowed in {variant}")
    else:
        check(
            "commute",
            f"s={sa},t={ta}",
            _word(variant, LMLetter("y", s), LMLetter("y", t)),
            _word(variant, LMLetter("y", t), LMLetter("y", s)),
        )

    # expansion: y_s = y_{s11} y_{s10}^-1 y_{s0} x_s
    rhs_addrs = (s + (1, 1), s + (1, 0), s + (0,))
    if not y_address_allowed(s, variant) or not all(
        y_address_allowed(a, variant) for a in rhs_addrs
    ):
        skip("expand", f"s={sa}", f"y-address not allowed in {variant}")
    else:
        check(
            "expand",
            f"s={sa}",
            _word(variant, LMLetter("y", s)),
            _word(
                variant,
                LMLetter("y", s + (1, 1)),
                LMLetter("y", s + (1, 0), -1),
                LMLetter("y", s + (0,)),
                LMLetter("x", s),
            ),
        )

    return out


# --- characters -----------------------------------------------------------

CHARACTERS = ("chi0", "chi1", "psi0", "psi1")

_APPLICABLE = {
    "chi0": ("G", "Gy"),
    "chi1": ("G", "yG"),
    "psi0": ("yG", "yGy"),
    "psi1": ("Gy", "yGy"),
}

QUOTIENT_PAIRS: dict[str, tuple[tuple[str, int], tuple[str, int]]] = {
    "G": (("chi0", 1), ("chi1", 1)),
    "yG": (("psi0", 1), ("chi1", 1)),
    "Gy": (("chi0", 1), ("psi1", -1)),
    "yGy": (("psi0", 1), ("psi1", -1)),
}


def _letter_value(name: str, letter: LMLetter) -> int:
    if name == "chi0":
        return -letter.sign if letter.kind == "x" and is_constant(letter.address, 0) else 0
    if name == "chi1":
        return letter.sign if letter.kind == "x" and is_constant(letter.address, 1) else 0
    if name == "psi0":
        return letter.sign if letter.kind == "y" and is_constant(letter.address, 0) else 0
    if name == "psi1":
        return letter.sign if letter.kind == "y" and is_constant(letter.address, 1) else 0
    raise ValueError(f"unknown character {name!r}")


def character_value(word: LMWord, name: str) -> int:
    if word.variant not in _APPLICABLE[name]:
        raise ValueError(f"character {name} is not defined on variant {word.variant}")
    return sum(_letter_value(name, l) for l in word.letters)


def characters(word: LMWord) -> dict[str, int]:
    """Values of every character defined on the word's variant."""
    return {
        name: character_value(word, name)
        for name in CHARACTERS
        if word.variant in _APPLICABLE[name]
    }


def quotient_image(word: LMWord) -> tuple[int, int]:
    """Image in Z^2 under the variant's distinguished character pair."""
    (n1, s1), (n2, s2) = QUOTIENT_PAIRS[word.variant]
    return s1 * character_value(word, n1), s2 * character_value(word, n2)


# --- word literals --------------------------------------------------------

_LM_TOKEN = re.compile(r"([xy])\((\d*)\)('?)")


def parse_word(text: str, variant: str = "yGy") -> LMWord:
    """Parse words like `x(011) y(01)' x()`; empty address = root."""
    letters = []
    pos = 0
    for token in text.split():
        m = _LM_TOKEN.fullmatch(token)
        if not m:
            raise ParseError(f"bad letter {token!r}", text, pos)
        if m.group(2) and any(c not in "01" for c in m.group(2)):
            raise ParseError(f"bad address in {token!r}", text, pos)
        addr = tuple(int(c) for c in m.group(2))
        letters.append(LMLetter(m.group(1), addr, -1 if m.group(3) else 1))
        pos += len(token) + 1
    return LMWord(tuple(letters), variant)


def format_word(word: LMWord) -> str:
    return " ".join(
        f"{l.kind}({''.join(map(str, l.address))})" + ("'" if l.sign < 0 else "")
        for l in word.letters
    )
