"""Free-group words, commutators, bracket arrangements and substitution maps.

Words are immutable and always freely reduced.  The commutator convention is
``[a, b] = a^-1 b^-1 a b``, the one under which the Witt-Hall identity
``[ab, c] = [a, c] [[a, c], b] [b, c]`` holds as written.

Canonical text form: generators are ``family[i,j,...]``, an inverse letter
carries a ``^-1`` suffix, letters are joined with ``*`` and the identity is
``1``.  For example ``y[0]^-1*y[1]^-1*y[0]*y[1]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence, Union


class GenSym(NamedTuple):
    """An abstract generator symbol, e.g. ``GenSym("y", (0,))`` for y_0."""

    family: str
    indices: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"


class Letter(NamedTuple):
    gen: GenSym
    exp: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exp)

    def __str__(self) -> str:
        return str(self.gen) if self.exp == 1 else f"{self.gen}^-1"


def gen(family: str, *indices: int) -> GenSym:
    return GenSym(family, tuple(indices))


def letter_key(l: Letter) -> tuple:
    """Letter order: by generator, positive exponent before negative."""
    return (l.gen, -l.exp)


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for l in letters:
        if l.exp not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {l.exp}")
        if out and out[-1].gen == l.gen and out[-1].exp == -l.exp:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


class ReducedWord:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters: tuple[Letter, ...] = _free_reduce(letters)
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "ReducedWord":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def of(cls, g: GenSym, exp: int = 1) -> "ReducedWord":
        if exp == 0:
            return IDENTITY
        l = Letter(g, 1 if exp > 0 else -1)
        return cls._trusted((l,) * abs(exp))

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        a, b = self.letters, other.letters
        if not a:
            return other
        if not b:
            return self
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i].gen == b[i].gen and a[-1 - i].exp == -b[i].exp:
            i += 1
        return ReducedWord._trusted(a[: len(a) - i] + b[i:])

    def inverse(self) -> "ReducedWord":
        return ReducedWord._trusted(tuple(l.inverse() for l in reversed(self.letters)))

    def __pow__(self, k: int) -> "ReducedWord":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[GenSym]:
        return {l.gen for l in self.letters}

    def exponent_sum(self, g: GenSym) -> int:
        return sum(l.exp for l in self.letters if l.gen == g)

    def key(self) -> tuple:
        return (len(self.letters), tuple(letter_key(l) for l in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ReducedWord) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __lt__(self, other: "ReducedWord") -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"ReducedWord({format_word(self)!r})"


IDENTITY = ReducedWord._trusted(())


def word(*parts: Union[GenSym, Letter, tuple]) -> ReducedWord:
    """Build a word from generators (exponent +1), letters or (gen, exp) pairs."""
    letters: list[Letter] = []
    for p in parts:
        if isinstance(p, Letter):
            letters.append(p)
        elif isinstance(p, GenSym):
            letters.append(Letter(p, 1))
        else:
            g, e = p
            letters.extend([Letter(g, 1 if e > 0 else -1)] * abs(e))
    return ReducedWord(letters)


def multiply(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    return a * b


def invert(a: ReducedWord) -> ReducedWord:
    return a.inverse()


def product(words: Iterable[ReducedWord]) -> ReducedWord:
    out = IDENTITY
    for w in words:
        out = out * w
    return out


def commutator(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    """Return ``a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def conjugate(a: ReducedWord, by: ReducedWord) -> ReducedWord:
    """Return ``by^-1 a by``."""
    return by.inverse() * a * by


# ---------------------------------------------------------------------------
# text form

_LETTER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*\[(-?\d+(?:,-?\d+)*)?\](\^-1)?")
_GEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_\-]*)\[(-?\d+(?:,-?\d+)*)?\](\^-1)?$")


def format_word(w: ReducedWord) -> str:
    if not w.letters:
        return "1"
    return "*".join(str(l) for l in w.letters)


def parse_letter(text: str) -> Letter:
    m = _GEN_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse letter {text!r}")
    family, idx, inv = m.groups()
    indices = tuple(int(i) for i in idx.split(",")) if idx else ()
    return Letter(GenSym(family, indices), -1 if inv else 1)


def parse_word(text: str) -> ReducedWord:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    return ReducedWord(parse_letter(part) for part in text.split("*"))


# ---------------------------------------------------------------------------
# substitution homomorphisms


class GenMap:
    """A homomorphism of free groups given on generators.

    Unmapped generators are fixed (``default="identity"``) or sent to the
    identity (``default="kill"``).
    """

    __slots__ = ("images", "default", "_cache")

    def __init__(self, images: Mapping[GenSym, ReducedWord], default: str = "identity"):
        if default not in ("identity", "kill"):
            raise ValueError(f"unknown default {default!r}")
        self.images = dict(images)
        self.default = default
        self._cache: dict[Letter, ReducedWord] = {}

    def image_of(self, l: Letter) -> ReducedWord:
        img = self._cache.get(l)
        if img is None:
            base = self.images.get(l.gen)
            if base is None:
                base = IDENTITY if self.default == "kill" else ReducedWord._trusted((Letter(l.gen, 1),))
            img = base if l.exp == 1 else base.inverse()
            self._cache[l] = img
        return img

    def __call__(self, w: ReducedWord) -> ReducedWord:
        out = IDENTITY
        for l in w.letters:
            out = out * self.image_of(l)
        return out

    def then(self, other: "GenMap") -> "GenMap":
        """The composite ``other o self`` (apply self first)."""
        keys = set(self.images) | set(other.images)
        images = {g: other(self(ReducedWord.of(g))) for g in keys}
        default = "kill" if "kill" in (self.default, other.default) else "identity"
        return GenMap(images, default)

    def __repr__(self) -> str:
        body = ", ".join(f"{g}->{w}" for g, w in sorted(self.images.items()))
        return f"GenMap({{{body}}}, default={self.default!r})"


def apply_map(m: GenMap, w: ReducedWord) -> ReducedWord:
    return m(w)


def kill_map(gens: Iterable[GenSym]) -> GenMap:
    return GenMap({g: IDENTITY for g in gens}, default="identity")


# ---------------------------------------------------------------------------
# enumeration


def signed_letters(alphabet: Iterable[GenSym]) -> list[Letter]:
    """All letters over the alphabet in canonical letter order."""
    return [Letter(g, e) for g in sorted(set(alphabet)) for e in (1, -1)]


def enumerate_reduced_words(alphabet: Iterable[GenSym], max_len: int) -> Iterator[ReducedWord]:
    """Yield every reduced word of length <= max_len exactly once.

    Order is by length, then lexicographic in letter order.
    """
    letters = signed_letters(alphabet)
    yield IDENTITY
    layer: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for l in letters:
                if w and w[-1].gen == l.gen and w[-1].exp == -l.exp:
                    continue
                nxt.append(w + (l,))
        for w in nxt:
            yield ReducedWord._trusted(w)
        layer = nxt


def count_reduced_words(rank: int, max_len: int) -> int:
    """Closed form 1 + sum_l 2t(2t-1)^(l-1)."""
    if rank == 0:
        return 1
    return 1 + sum(2 * rank * (2 * rank - 1) ** (l - 1) for l in range(1, max_len + 1))


# ---------------------------------------------------------------------------
# bracket arrangements


@dataclass(frozen=True)
class Leaf:
    letter: Letter

    @property
    def weight(self) -> int:
        return 1

    def leaves(self) -> tuple[Letter, ...]:
        return (self.letter,)

    def inverse(self) -> "Leaf":
        return Leaf(self.letter.inverse())

    def __str__(self) -> str:
        return str(self.letter)


@dataclass(frozen=True)
class Node:
    left: "BracketTree"
    right: "BracketTree"

    @property
    def weight(self) -> int:
        return self.left.weight + self.right.weight

    def leaves(self) -> tuple[Letter, ...]:
        return self.left.leaves() + self.right.leaves()

    def inverse(self) -> "Node":
        # [a, b]^-1 = [b, a]
        return Node(self.right, self.left)

    def __str__(self) -> str:
        return f"[{self.left}, {self.right}]"


BracketTree = Union[Leaf, Node]


def leaf(g: GenSym, exp: int = 1) -> Leaf:
    return Leaf(Letter(g, exp))


def left_normed(first: BracketTree, *rest: BracketTree) -> BracketTree:
    """``[[[first, r1], r2], ...]``."""
    t = first
    for r in rest:
        t = Node(t, r)
    return t


def eval_bracket(t: BracketTree, subst: GenMap | None = None,
                 cache: dict | None = None) -> ReducedWord:
    """Evaluate a bracket arrangement; leaves go through ``subst`` if given."""
    if cache is not None:
        hit = cache.get(t)
        if hit is not None:
            return hit
    if isinstance(t, Leaf):
        w = ReducedWord._trusted((t.letter,))
        out = subst(w) if subst is not None else w
    else:
        out = commutator(eval_bracket(t.left, subst, cache), eval_bracket(t.right, subst, cache))
    if cache is not None:
        cache[t] = out
    return out


def tree_shapes(weight: int) -> list:
    """Binary tree shapes of a given weight, left-normed shape first.

    A shape is ``None`` for a leaf or a pair ``(left, right)``.
    """
    return _shapes(weight)


_SHAPE_CACHE: dict[int, list] = {}


def _shapes(w: int) -> list:
    if w in _SHAPE_CACHE:
        return _SHAPE_CACHE[w]
    if w == 1:
        out = [None]
    else:
        out = []
        for k in range(w - 1, 0, -1):
            for ls in _shapes(k):
                for rs in _shapes(w - k):
                    out.append((ls, rs))
    _SHAPE_CACHE[w] = out
    return out


def is_left_normed_shape(shape) -> bool:
    while shape is not None:
        if shape[1] is not None:
            return False
        shape = shape[0]
    return True


def fill_shape(shape, leaves: Sequence[BracketTree]) -> BracketTree:
    it = iter(leaves)

    def build(s):
        if s is None:
            return next(it)
        return Node(build(s[0]), build(s[1]))

    return build(shape)


def enumerate_brackets(
    leaves: Sequence[BracketTree],
    max_weight: int,
    *,
    min_weight: int = 1,
    accept: Callable[[Sequence[BracketTree]], bool] | None = None,
    left_normed_only: bool = False,
) -> Iterator[BracketTree]:
    """Yield bracket arrangements over the given leaf values.

    Order: by weight, then shape (left-normed first), then leaf sequence in
    the order of ``leaves``.  ``accept`` filters leaf sequences before any
    tree is built.
    """
    for w in range(min_weight, max_weight + 1):
        shapes = [s for s in tree_shapes(w) if not left_normed_only or is_left_normed_shape(s)]
        seqs = [seq for seq in itertools.product(leaves, repeat=w) if accept is None or accept(seq)]
        for shape in shapes:
            for seq in seqs:
                yield fill_shape(shape, seq)


def dedup_by_word(
    trees: Iterable[BracketTree],
    evaluate: Callable[[BracketTree], ReducedWord],
    *,
    up_to_inverse: bool = True,
    drop_identity: bool = True,
) -> list[tuple[BracketTree, ReducedWord]]:
    """Keep the first tree for each evaluated word.

    With ``up_to_inverse`` a word and its inverse count as the same
    generator, since they generate the same subgroup.
    """
    seen: set[ReducedWord] = set()
    out = []
    for t in trees:
        w = evaluate(t)
        if drop_identity and w.is_identity():
            continue
        if w in seen:
            continue
        seen.add(w)
        if up_to_inverse:
            seen.add(w.inverse())
        out.append((t, w))
    return out


def parse_bracket(text: str) -> BracketTree:
    """Parse the ``[a, [b, c]]`` text form produced by ``str(tree)``."""
    pos = 0
    s = text.strip()

    def parse() -> BracketTree:
        nonlocal pos
        while s[pos] == " ":
            pos += 1
        if s[pos] == "[":
            pos += 1
            left = parse()
            _expect(",")
            right = parse()
            _expect("]")
            return Node(left, right)
        m = _LETTER_RE.match(s, pos)
        if m is None:
            raise ValueError(f"cannot parse bracket at {s[pos:]!r}")
        pos = m.end()
        return Leaf(parse_letter(m.group(0)))

    def _expect(ch: str) -> None:
        nonlocal pos
        while s[pos] == " ":
            pos += 1
        if s[pos] != ch:
            raise ValueError(f"expected {ch!r} at {s[pos:]!r}")
        pos += 1

    t = parse()
    if s[pos:].strip():
        raise ValueError(f"trailing text {s[pos:]!r}")
    return t
