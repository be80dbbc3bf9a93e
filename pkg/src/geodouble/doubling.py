"""Amalgamated doubles of a free group over a subgroup, with normal forms.

Two copies of a rank-k free group G (an unprimed and a primed side) are
glued along a finitely generated subgroup H, giving the amalgamated
product G *_H G'.  Elements arrive as alternating lists of syllables
(side, word).  Every element has a unique normal form

    c_1 c_2 ... c_m h     (sides of the c_i strictly alternating)

where h lies in H and each c_i is the canonical representative of its
left coset c_i H, never itself in H.  The form is computed by pushing
subgroup parts rightward: each syllable splits as representative times
H-part, the H-part is absorbed into the next syllable (H lives on both
sides), and whatever survives at the end is the tail h.

This is a computable stand-in for doubling a manifold along boundary:
the fundamental group of the double is the amalgamated product of two
copies of the piece over the boundary subgroup, where side-swapping is
the automorphism induced by the reflection.  The swap fixes an element
exactly when its normal form has no syllables at all, i.e. exactly the
elements of H; ``is_fixed`` checks this by comparing normal forms, so the
zero-syllable characterisation can be tested against it independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .freegroups import (
    SubgroupGraph,
    Word,
    concat,
    free_reduce,
    inverse_word,
    stallings_graph,
    word_from_str,
    word_to_str,
)

UNPRIMED = 0
PRIMED = 1
_SIDE_NAMES = {UNPRIMED: "u", PRIMED: "p"}

Syllable = tuple[int, Word]


@dataclass(frozen=True)
class DoubleWord:
    """A raw (not yet normalised) element of the double."""

    syllables: tuple[Syllable, ...]

    def __post_init__(self) -> None:
        syllables = []
        for side, word in self.syllables:
            if side not in (UNPRIMED, PRIMED):
                raise ValueError(f"side must be 0 or 1, got {side}")
            word = tuple(word)
            free_reduce(word)  # validates letters
            syllables.append((side, word))
        object.__setattr__(self, "syllables", tuple(syllables))

    @classmethod
    def from_str(cls, text: str, rank: int | None = None) -> "DoubleWord":
        """Parse ``"u:abA p:bb u:a"`` (u = unprimed, p = primed)."""
        syllables = []
        for token in text.split():
            if ":" not in token:
                raise ValueError(f"syllable {token!r} needs a side prefix u: or p:")
            side_txt, word_txt = token.split(":", 1)
            if side_txt not in ("u", "p"):
                raise ValueError(f"unknown side {side_txt!r} (use u or p)")
            side = UNPRIMED if side_txt == "u" else PRIMED
            syllables.append((side, word_from_str(word_txt, rank)))
        return cls(tuple(syllables))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"{_SIDE_NAMES[s]}:{word_to_str(w)}" for s, w in self.syllables)


@dataclass(frozen=True)
class NormalForm:
    """Alternating coset representatives followed by a tail in the subgroup."""

    syllables: tuple[Syllable, ...]
    tail: Word

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    def side_flipped(self) -> "NormalForm":
        return NormalForm(tuple((1 - s, w) for s, w in self.syllables), self.tail)

    def __str__(self) -> str:
        parts = [f"{_SIDE_NAMES[s]}:{word_to_str(w)}" for s, w in self.syllables]
        parts.append(f"| {word_to_str(self.tail)}")
        return " ".join(parts)


def _merge_syllables(syllables: Iterable[Syllable]) -> list[Syllable]:
    # Reduce words, drop empties, merge same-side neighbours.
    stack: list[Syllable] = []
    for side, word in syllables:
        w = free_reduce(word)
        if not w:
            continue
        if stack and stack[-1][0] == side:
            merged = concat(stack.pop()[1], w)
            if merged:
                stack.append((side, merged))
        else:
            stack.append((side, w))
    return stack


class Double:
    """The double of a rank-k free group over a folded subgroup graph."""

    def __init__(self, subgroup: SubgroupGraph):
        self.subgroup = subgroup
        self.rank = subgroup.ambient_rank

    @classmethod
    def from_generators(cls, generators: Iterable[Word | str], rank: int) -> "Double":
        return cls(stallings_graph(generators, rank))

    def left_representative(self, word: Iterable[int]) -> Word:
        """Canonical representative of the left coset word*H.

        Derived from the graph's (right-coset) representative by inversion:
        rep_left(w) = rep(w^-1)^-1, so rep_left(w)^-1 * w lies in H and the
        output is constant on each left coset, empty exactly on H.
        """
        return inverse_word(self.subgroup.coset_representative(inverse_word(word)))

    def normal_form(self, dword: DoubleWord) -> NormalForm:
        """Rewrite to the unique alternating normal form with right tail."""
        contains = self.subgroup.contains
        out: list[Syllable] = []
        carry: Word = ()
        for side, word in _merge_syllables(dword.syllables):
            w = concat(carry, word)
            carry = ()
            while True:
                if not w or contains(w):
                    carry = w
                    break
                if out and out[-1][0] == side:
                    # The previous representative is same-side adjacent after
                    # an absorbed subgroup syllable: merge back and redo.
                    w = concat(out.pop()[1], w)
                    continue
                rep = self.left_representative(w)
                carry = concat(inverse_word(rep), w)
                out.append((side, rep))
                break
        return NormalForm(tuple(out), carry)

    def swap(self, dword: DoubleWord) -> DoubleWord:
        """The side-exchanging automorphism; an involution fixing H pointwise."""
        return DoubleWord(tuple((1 - s, w) for s, w in dword.syllables))

    def is_fixed(self, dword: DoubleWord) -> bool:
        """Does the swap fix this element?  Compares the two normal forms."""
        return self.normal_form(dword) == self.normal_form(self.swap(dword))

    def project(self, dword: DoubleWord) -> Word:
        """Image under the fold G *_H G' -> G that forgets the side."""
        return concat(*(w for _, w in dword.syllables))

    def nf_as_element(self, nf: NormalForm) -> DoubleWord:
        syl = nf.syllables + (((UNPRIMED, nf.tail),) if nf.tail else ())
        return DoubleWord(syl)


def random_double_word(rng: random.Random, rank: int,
                       subgroup: SubgroupGraph | None = None,
                       max_syllables: int = 6, max_letters: int = 6,
                       in_subgroup: bool = False) -> DoubleWord:
    """Sample a random double word; with ``in_subgroup`` the element is built
    from subgroup generators only, so it is guaranteed to lie in H."""
    count = rng.randint(0 if in_subgroup else 1, max_syllables)
    syllables = []
    for _ in range(count):
        side = rng.randint(0, 1)
        if in_subgroup:
            if subgroup is None or not subgroup.generators:
                word: Word = ()
            else:
                parts = []
                for _ in range(rng.randint(1, 3)):
                    g = rng.choice(subgroup.generators)
                    parts.append(g if rng.random() < 0.5 else inverse_word(g))
                word = concat(*parts)
        else:
            word = free_reduce(
                rng.choice([s for s in range(-rank, rank + 1) if s])
                for _ in range(rng.randint(1, max_letters)))
        syllables.append((side, word))
    return DoubleWord(tuple(syllables))
