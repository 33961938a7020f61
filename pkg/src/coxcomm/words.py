"""Word problem, products, descents and coset representatives.

Elements are stored as their ShortLex-least reduced word. Two engines
compute normal forms, and they always agree:

* braid: Tits' solution of the word problem. The reduced words of an
  element form a single class under braid moves, and a reduced word ``w``
  followed by ``s`` fails to be reduced exactly when some word in the braid
  class of ``w`` ends in ``s``. No arithmetic, any label, but classes grow
  exponentially with length.
* geometric: descents read off the canonical reflection representation.
  Polynomial, but limited to labels in {2,3,4,5,6,inf}.

The engine is picked per graph (see :func:`set_word_engine`); memos live on
the graph object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence

from .errors import BudgetExceeded, InfiniteTypeError, UnsupportedLabelError
from .graph import INF, EMPTY, CoxeterGraph, GeneratorSubset, is_finite_type
from .reflection import ReflectionMatrix, is_supported

DEFAULT_BALL_CAP = 10**6

Word = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Element:
    """A group element, held as its ShortLex normal form.

    Build these through :func:`normal_form`; the constructor does not reduce.
    """

    word: Word = ()

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word


IDENTITY = Element(())


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    u: Element
    v: Element
    u_prime: Element


class _ClassInfo:
    __slots__ = ("nf", "words", "left", "right")

    def __init__(self, words: frozenset[Word]):
        self.words = words
        self.nf = min(words)
        left = right = 0
        for w in words:
            if w:
                left |= 1 << w[0]
                right |= 1 << w[-1]
        self.left = left
        self.right = right


class _BaseMemo:
    def __init__(self, g: CoxeterGraph):
        n = g.rank
        self.moves: dict[tuple[int, int], tuple[Word, Word]] = {}
        for s in range(n):
            for t in range(n):
                m = g.m(s, t)
                if s != t and m != INF:
                    self.moves[s, t] = (
                        tuple(s if k % 2 == 0 else t for k in range(m)),
                        tuple(t if k % 2 == 0 else s for k in range(m)),
                    )
        self.nf_of: dict[Word, Word] = {}

    def braid_class(self, word: Word) -> frozenset[Word]:
        moves = self.moves
        seen = {word}
        stack = [word]
        n = len(word)
        while stack:
            w = stack.pop()
            for i in range(n - 1):
                pair = moves.get((w[i], w[i + 1]))
                if pair is None:
                    continue
                src, dst = pair
                m = len(src)
                if i + m <= n and w[i:i + m] == src:
                    nw = w[:i] + dst + w[i + m:]
                    if nw not in seen:
                        seen.add(nw)
                        stack.append(nw)
        return frozenset(seen)


class _BraidMemo(_BaseMemo):
    """Tits' solution: whole braid classes, memoized. Works for every label,
    but a class can be exponentially large in the length."""

    def __init__(self, g: CoxeterGraph):
        super().__init__(g)
        self.info: dict[Word, _ClassInfo] = {}
        self._register(_ClassInfo(frozenset([()])))

    def _register(self, info: _ClassInfo) -> _ClassInfo:
        known = self.info.get(info.nf)
        if known is not None:
            return known
        self.info[info.nf] = info
        nf_of = self.nf_of
        for w in info.words:
            nf_of[w] = info.nf
        return info

    def info_of_reduced(self, word: Word) -> _ClassInfo:
        nf = self.nf_of.get(word)
        if nf is not None:
            return self.info[nf]
        return self._register(_ClassInfo(self.braid_class(word)))

    def mul_gen(self, nf: Word, s: int) -> Word:
        info = self.info[nf]
        if info.right >> s & 1:
            shorter = frozenset(w[:-1] for w in info.words if w[-1] == s)
            cand = min(shorter)
            if cand in self.nf_of:
                return self.nf_of[cand]
            return self._register(_ClassInfo(shorter)).nf
        return self.info_of_reduced(nf + (s,)).nf

    def gen_mul(self, s: int, nf: Word) -> Word:
        info = self.info[nf]
        if info.left >> s & 1:
            shorter = frozenset(w[1:] for w in info.words if w[0] == s)
            cand = min(shorter)
            if cand in self.nf_of:
                return self.nf_of[cand]
            return self._register(_ClassInfo(shorter)).nf
        return self.info_of_reduced((s,) + nf).nf

    def inverse(self, nf: Word) -> Word:
        rev = nf[::-1]
        if rev in self.nf_of:
            return self.nf_of[rev]
        info = self.info[nf]
        return self._register(_ClassInfo(frozenset(w[::-1] for w in info.words))).nf

    def reduced_words(self, nf: Word) -> frozenset[Word]:
        return self.info_of_reduced(nf).words

    def multiply(self, nf: Word, letters: Word) -> Word:
        for s in letters:
            nf = self.mul_gen(nf, s)
        return nf


class _Geometric:
    __slots__ = ("nf", "left", "right", "mat", "inv")

    def __init__(self, nf: Word, mat: ReflectionMatrix, inv: ReflectionMatrix):
        self.nf = nf
        self.mat = mat
        self.inv = inv
        self.right = mat.descents()
        self.left = inv.descents()


class _GeometricMemo(_BaseMemo):
    """Elements tracked by their matrices in the canonical representation.

    s is a right descent of w iff w(e_s) < 0, and the ShortLex normal form is
    read off by repeatedly stripping the smallest left descent, so every step
    costs O(rank^2) exact operations regardless of how many reduced words the
    element has. Needs every label in the exact field.
    """

    def __init__(self, g: CoxeterGraph):
        super().__init__(g)
        self.g = g
        self.info: dict[Word, _Geometric] = {}
        self._steps: dict[tuple[Word, int, bool], Word] = {}
        one = ReflectionMatrix(g)
        self.info[()] = _Geometric((), one, one.copy())
        self.nf_of[()] = ()

    def _from_matrices(self, mat: ReflectionMatrix, inv: ReflectionMatrix) -> Word:
        work = inv.copy()
        nf = []
        while True:
            s = work.first_descent()
            if s < 0:
                break
            nf.append(s)
            work.times(s)
        key = tuple(nf)
        if key not in self.info:
            self.info[key] = _Geometric(key, mat, inv)
            self.nf_of[key] = key
        return key

    def info_of_reduced(self, word: Word) -> _Geometric:
        nf = self.nf_of.get(word)
        if nf is not None:
            return self.info[nf]
        mat = ReflectionMatrix(self.g)
        inv = ReflectionMatrix(self.g)
        for s in word:
            mat.times(s)
            inv.left_times(s)
        nf = self._from_matrices(mat, inv)
        self.nf_of[word] = nf
        return self.info[nf]

    def _step(self, nf: Word, s: int, right: bool) -> Word:
        key = (nf, s, right)
        out = self._steps.get(key)
        if out is None:
            info = self.info[nf]
            mat, inv = info.mat.copy(), info.inv.copy()
            if right:
                mat.times(s)
                inv.left_times(s)
            else:
                mat.left_times(s)
                inv.times(s)
            out = self._steps[key] = self._from_matrices(mat, inv)
        return out

    def mul_gen(self, nf: Word, s: int) -> Word:
        return self._step(nf, s, True)

    def gen_mul(self, s: int, nf: Word) -> Word:
        return self._step(nf, s, False)

    def inverse(self, nf: Word) -> Word:
        return self.info_of_reduced(nf[::-1]).nf

    def reduced_words(self, nf: Word) -> frozenset[Word]:
        return self.braid_class(nf)

    def multiply(self, nf: Word, letters: Word) -> Word:
        """nf followed by letters, with a single normal-form extraction."""
        if len(letters) <= 1:
            return self.mul_gen(nf, letters[0]) if letters else nf
        info = self.info[nf]
        mat, inv = info.mat.copy(), info.inv.copy()
        for s in letters:
            mat.times(s)
            inv.left_times(s)
        return self._from_matrices(mat, inv)


ENGINES = ("auto", "braid", "geometric")


def set_word_engine(g: CoxeterGraph, engine: str) -> None:
    """Pin the word-problem engine used for g.

    ``auto`` (the default) uses the geometric engine when every label lies in
    the exact field and either the form is integral (labels 2, 3, inf) or the
    rank is at least 4; small irrational cases stay with braid classes, which
    are cheaper there. Both produce identical normal
    forms, so switching never changes a result, only the cost.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {', '.join(ENGINES)}")
    if engine == "geometric" and not is_supported(g):
        raise UnsupportedLabelError("the geometric engine needs labels in {2,3,4,5,6,inf}")
    g._cache["engine"] = engine
    g._cache.pop("words", None)


def word_engine(g: CoxeterGraph) -> str:
    """The engine actually in use for g."""
    engine = g._cache.get("engine", "auto")
    if engine == "auto":
        if not is_supported(g):
            return "braid"
        integral = all(g.m(i, j) in (2, 3, INF) for i in range(g.rank) for j in range(i))
        return "geometric" if integral or g.rank >= 4 else "braid"
    return engine


def _memo(g: CoxeterGraph) -> _BraidMemo | _GeometricMemo:
    memo = g._cache.get("words")
    if memo is None:
        cls = _GeometricMemo if word_engine(g) == "geometric" else _BraidMemo
        memo = g._cache["words"] = cls(g)
    return memo


def _check_letters(g: CoxeterGraph, letters: Iterable[int]) -> Word:
    word = tuple(letters)
    for s in word:
        if not (isinstance(s, int) and 0 <= s < g.rank):
            raise IndexError(f"generator index {s!r} out of range for rank {g.rank}")
    return word


def normal_form(g: CoxeterGraph, letters: Iterable[int]) -> Element:
    """Reduce an arbitrary word to the ShortLex normal form of its element."""
    word = _check_letters(g, letters)
    memo = _memo(g)
    nf = memo.nf_of.get(word)
    if nf is not None:
        return Element(nf)
    nf = ()
    for s in word:
        nf = memo.mul_gen(nf, s)
    return Element(nf)


def parse_word(g: CoxeterGraph, text: str) -> Element:
    """Whitespace-separated generator names; ``e`` (or empty) is the identity."""
    toks = text.split()
    if toks == ["e"] or not toks:
        return IDENTITY
    return normal_form(g, [g.index(t) for t in toks])


def format_word(g: CoxeterGraph, w: Element | Sequence[int]) -> str:
    word = w.word if isinstance(w, Element) else tuple(w)
    return " ".join(g.generators[i] for i in word) if word else "e"


def reduced_words(g: CoxeterGraph, w: Element) -> frozenset[Word]:
    """Every reduced word of w (its braid class)."""
    memo = _memo(g)
    memo.info_of_reduced(w.word)
    return memo.reduced_words(w.word)


def mul_gen(g: CoxeterGraph, w: Element, s: int) -> Element:
    memo = _memo(g)
    memo.info_of_reduced(w.word)
    return Element(memo.mul_gen(w.word, s))


def gen_mul(g: CoxeterGraph, s: int, w: Element) -> Element:
    memo = _memo(g)
    memo.info_of_reduced(w.word)
    return Element(memo.gen_mul(s, w.word))


def product(g: CoxeterGraph, *factors: Element) -> Element:
    memo = _memo(g)
    if not factors:
        return IDENTITY
    nf = factors[0].word
    memo.info_of_reduced(nf)
    rest = tuple(s for f in factors[1:] for s in f.word)
    return Element(memo.multiply(nf, rest))


def inverse(g: CoxeterGraph, w: Element) -> Element:
    memo = _memo(g)
    memo.info_of_reduced(w.word)
    return Element(memo.inverse(w.word))


def conjugate(g: CoxeterGraph, w: Element, h: Element) -> Element:
    """w h w^-1."""
    return product(g, w, h, inverse(g, w))


def generator(i: int) -> Element:
    return Element((i,))


def descents(g: CoxeterGraph, w: Element, side: Literal["left", "right"] = "right") -> GeneratorSubset:
    info = _memo(g).info_of_reduced(w.word)
    if side == "left":
        return GeneratorSubset(info.left)
    if side == "right":
        return GeneratorSubset(info.right)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def is_right_descent(g: CoxeterGraph, w: Element, s: int) -> bool:
    return bool(_memo(g).info_of_reduced(w.word).right >> s & 1)


def is_left_descent(g: CoxeterGraph, w: Element, s: int) -> bool:
    return bool(_memo(g).info_of_reduced(w.word).left >> s & 1)


def support(w: Element) -> GeneratorSubset:
    return GeneratorSubset.of(w.word)


def is_in_parabolic(g: CoxeterGraph, w: Element, x: GeneratorSubset) -> bool:
    return support(w) <= x


def ball(
    g: CoxeterGraph,
    radius: int | None,
    cap: int = DEFAULT_BALL_CAP,
    subset: GeneratorSubset | None = None,
) -> Iterator[Element]:
    """Elements of length <= radius (of W, or of W_subset), in ShortLex order.

    ``radius=None`` runs until the group is exhausted, which only ends for
    finite groups; the cap bounds the total element count either way.
    """
    if radius is not None and radius < 0:
        raise ValueError("radius must be non-negative")
    gens = list(subset) if subset is not None else list(range(g.rank))
    memo = _memo(g)
    level: list[Word] = [()]
    count = 1
    yield IDENTITY
    r = 0
    while level and (radius is None or r < radius):
        nxt = set()
        for nf in level:
            right = memo.info[nf].right
            for s in gens:
                if not right >> s & 1:
                    nxt.add(memo.mul_gen(nf, s))
        level = sorted(nxt)
        count += len(level)
        if count > cap:
            raise BudgetExceeded(f"ball exceeds the element budget of {cap}")
        for nf in level:
            yield Element(nf)
        r += 1


def group_elements(g: CoxeterGraph, subset: GeneratorSubset | None = None, cap: int = 10**4) -> list[Element]:
    """All elements of a finite W (or W_subset)."""
    x = g.full if subset is None else subset
    if not is_finite_type(g, x):
        raise InfiniteTypeError(f"W_{{{g.format_subset(x)}}} is infinite")
    return list(ball(g, None, cap=cap, subset=subset))


def longest_element(g: CoxeterGraph, x: GeneratorSubset) -> Element:
    """The longest element of a finite W_x, by greedy ascent."""
    if not is_finite_type(g, x):
        raise InfiniteTypeError(f"W_{{{g.format_subset(x)}}} is infinite, no longest element")
    memo = _memo(g)
    nf: Word = ()
    gens = list(x)
    while True:
        right = memo.info_of_reduced(nf).right
        for s in gens:
            if not right >> s & 1:
                nf = memo.mul_gen(nf, s)
                break
        else:
            return Element(nf)


def right_coset_min(g: CoxeterGraph, w: Element, x: GeneratorSubset) -> tuple[Element, Element]:
    """Write w = v u with u in W_x and v the minimal element of w W_x."""
    memo = _memo(g)
    nf = w.word
    stripped = []
    while True:
        right = memo.info_of_reduced(nf).right & x.bits
        if not right:
            break
        s = (right & -right).bit_length() - 1
        nf = memo.mul_gen(nf, s)
        stripped.append(s)
    return Element(nf), normal_form(g, reversed(stripped))


def left_coset_min(g: CoxeterGraph, w: Element, x: GeneratorSubset) -> tuple[Element, Element]:
    """Write w = u v with u in W_x and v the minimal element of W_x w."""
    memo = _memo(g)
    nf = w.word
    stripped = []
    while True:
        left = memo.info_of_reduced(nf).left & x.bits
        if not left:
            break
        s = (left & -left).bit_length() - 1
        nf = memo.gen_mul(s, nf)
        stripped.append(s)
    return normal_form(g, stripped), Element(nf)


def double_coset_decompose(
    g: CoxeterGraph, w: Element, x: GeneratorSubset, x_prime: GeneratorSubset = EMPTY
) -> DoubleCosetDecomposition:
    """w = u v u' with v the minimal element of W_x w W_x'.

    Strips the smallest left descent in x, then the smallest right descent
    in x', alternating until neither exists.
    """
    memo = _memo(g)
    nf = w.word
    left_strips: list[int] = []
    right_strips: list[int] = []
    while True:
        progressed = False
        info = memo.info_of_reduced(nf)
        left = info.left & x.bits
        if left:
            s = (left & -left).bit_length() - 1
            nf = memo.gen_mul(s, nf)
            left_strips.append(s)
            progressed = True
            info = memo.info_of_reduced(nf)
        right = info.right & x_prime.bits
        if right:
            s = (right & -right).bit_length() - 1
            nf = memo.mul_gen(nf, s)
            right_strips.append(s)
            progressed = True
        if not progressed:
            break
    return DoubleCosetDecomposition(
        u=normal_form(g, left_strips),
        v=Element(nf),
        u_prime=normal_form(g, reversed(right_strips)),
    )
