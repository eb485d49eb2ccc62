"""Freely reduced words over {x, y}; capital letters are inverses."""

from __future__ import annotations

from functools import lru_cache

from .groups import AmbientGroup, PointSet

LETTERS = "xXyY"
_INV = {"x": "X", "X": "x", "y": "Y", "Y": "y"}
_RANK = {c: i for i, c in enumerate(LETTERS)}


def reduce_word(s: str) -> str:
    out = []
    for c in s:
        if c not in _INV:
            raise ValueError(f"bad letter {c!r}; alphabet is x X y Y")
        if out and out[-1] == _INV[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


class FreeWord:
    """A reduced word in the free group on x, y."""

    __slots__ = ("letters",)

    def __init__(self, letters: str = "", reduced: bool = False):
        if letters in ("e", "1"):
            letters = ""
        object.__setattr__(
            self, "letters", letters if reduced else reduce_word(letters)
        )

    def __setattr__(self, *args):
        raise AttributeError("FreeWord is immutable")

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        a, b = self.letters, other.letters
        # words are reduced, so cancellation happens only at the junction
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k] == _INV[b[k]]:
            k += 1
        return FreeWord(a[: len(a) - k] + b[k:], reduced=True)

    def inv(self) -> "FreeWord":
        return FreeWord(self.letters.swapcase()[::-1], reduced=True)

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inv() ** (-n)
        out = FreeWord()
        for _ in range(n):
            out = out * self
        return out

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_cyclically_reduced(self) -> bool:
        w = self.letters
        return len(w) < 2 or w[0] != _INV[w[-1]]

    def __repr__(self):
        return f"FreeWord({self.letters or 'e'!r})"

    def __str__(self):
        return self.letters or "e"


def word_sort_key(w: FreeWord):
    # generator order x < x^-1 < y < y^-1
    return (len(w.letters), tuple(_RANK[c] for c in w.letters))


@lru_cache(maxsize=None)
def free_group_f2() -> AmbientGroup:
    return AmbientGroup(
        name="free-group-xy",
        compose=lambda a, b: a * b,
        invert=lambda a: a.inv(),
        identity=FreeWord(),
        size_gauge=len,
        fmt=str,
        sort_key=word_sort_key,
        distance=lambda a, b: len(a.inv() * b),
    )


def f2_ball(radius: int, ambient: AmbientGroup | None = None) -> PointSet:
    """All reduced words of length <= radius, canonically ordered."""
    amb = ambient or free_group_f2()
    words = [""]
    frontier = [""]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for c in LETTERS:
                if w and w[-1] == _INV[c]:
                    continue
                nxt.append(w + c)
        words.extend(nxt)
        frontier = nxt
    return PointSet(amb, (FreeWord(w, reduced=True) for w in words), radius)
