"""Signed words over an ordered generator alphabet.

A word is a finite sequence of letters ``c+`` / ``c-`` drawn from a declared
generator set; the empty word is the monoid identity.  Reversing a word and
negating every sign is an involutive anti-automorphism.  Each word and its
involution form an unordered two-element fiber, a *presentation class*; a
canonical-choice policy selects which member is the preferred presentation.

Connected sums of two classes are computed on chosen presentations via
:func:`pair` and satisfy a commutation law checked by
:func:`check_commutation_law`:  ``pair(a, s, t, b)`` and ``pair(b, t, s, a)``
always land in the same presentation class.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Literal, Mapping

from .errors import DomainError, ParseError, UnknownGeneratorError

Sign = Literal[1, -1]

PLUS: Sign = 1
MINUS: Sign = -1

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_LETTER_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)([+-])")
_SIGN_FROM_CHAR: dict[str, Sign] = {"+": PLUS, "-": MINUS}


def sign_char(sign: Sign) -> str:
    """One-character rendering of a sign, ``+`` or ``-``."""
    return "+" if sign > 0 else "-"


def parse_sign(char: str, *, column: int = 1) -> Sign:
    if char not in _SIGN_FROM_CHAR:
        raise ParseError(f"bad sign {char!r}", column=column, expected=("'+'", "'-'"))
    return _SIGN_FROM_CHAR[char]


def _check_sign(sign: int) -> None:
    if sign not in (PLUS, MINUS):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered alphabet of generator names.

    Names must be unique identifiers (letter followed by letters, digits or
    underscores).  The order given here fixes letter order everywhere else:
    lexicographic comparisons, abelianized coordinates, printed output.
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise DomainError("generator set must contain at least one name")
        seen: set[str] = set()
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise DomainError(f"invalid generator name {name!r}")
            if name in seen:
                raise DomainError(f"duplicate generator name {name!r}")
            seen.add(name)

    @classmethod
    def of(cls, *names: str) -> "GeneratorSet":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"unknown generator {name!r}") from None


@dataclass(frozen=True)
class SignedLetter:
    """A single occurrence ``c_i^sign``; ``gen`` indexes the generator set."""

    gen: int
    sign: Sign

    def __post_init__(self) -> None:
        if self.gen < 0:
            raise DomainError(f"generator index must be nonnegative, got {self.gen}")
        _check_sign(self.sign)

    def flipped(self) -> "SignedLetter":
        return SignedLetter(self.gen, -self.sign)


@dataclass(frozen=True)
class SignedWord:
    """An immutable word of signed letters over a fixed generator set."""

    gens: GeneratorSet
    letters: tuple[SignedLetter, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.gens)
        for letter in self.letters:
            if letter.gen >= n:
                raise DomainError(
                    f"letter index {letter.gen} out of range for {n} generators"
                )

    @classmethod
    def empty(cls, gens: GeneratorSet) -> "SignedWord":
        return cls(gens, ())

    @classmethod
    def from_pairs(
        cls, gens: GeneratorSet, pairs: list[tuple[str, Sign]]
    ) -> "SignedWord":
        letters = tuple(SignedLetter(gens.index(n), s) for n, s in pairs)
        return cls(gens, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def concat(self, other: "SignedWord") -> "SignedWord":
        """Concatenation; both operands must share one generator set."""
        if not isinstance(other, SignedWord):
            raise TypeError(f"cannot concatenate SignedWord with {type(other).__name__}")
        if other.gens != self.gens:
            raise DomainError("cannot concatenate words over different generator sets")
        return SignedWord(self.gens, self.letters + other.letters)

    def __mul__(self, other: object) -> "SignedWord":
        if not isinstance(other, SignedWord):
            return NotImplemented
        return self.concat(other)

    def involution(self) -> "SignedWord":
        """Reverse the word and negate every sign (an anti-automorphism)."""
        return SignedWord(
            self.gens, tuple(l.flipped() for l in reversed(self.letters))
        )


def _lex_key(word: SignedWord) -> tuple[tuple[int, int], ...]:
    # Letter order: generator index ascending, then + before -.
    return tuple((l.gen, 0 if l.sign > 0 else 1) for l in word.letters)


@dataclass(frozen=True)
class CanonicalPolicy:
    """Rule selecting the canonical member of a ``{w, involution(w)}`` fiber.

    ``lex`` mode picks the lexicographically least member.  ``explicit`` mode
    consults an override table first (keyed by either fiber member, valued by
    the chosen one) and falls back to ``lex`` for fibers it does not mention.
    """

    mode: Literal["lex", "explicit"] = "lex"
    overrides: Mapping[SignedWord, SignedWord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in ("lex", "explicit"):
            raise DomainError(f"unknown policy mode {self.mode!r}")
        for key, choice in self.overrides.items():
            if choice != key and choice != key.involution():
                raise DomainError(
                    f"override for {str(key)!r} must pick the word or its involution"
                )

    @classmethod
    def lex_least(cls) -> "CanonicalPolicy":
        return cls("lex")

    @classmethod
    def keeping(cls, words: list[SignedWord]) -> "CanonicalPolicy":
        """Explicit policy declaring each given word canonical for its fiber."""
        return cls("explicit", {w: w for w in words})

    def choose(self, word: SignedWord) -> SignedWord:
        anti = word.involution()
        if self.mode == "explicit":
            choice = self.overrides.get(word)
            if choice is None:
                choice = self.overrides.get(anti)
            if choice is not None:
                return choice
        return min(word, anti, key=_lex_key)


LEX_LEAST = CanonicalPolicy()


@dataclass(frozen=True, eq=False)
class PresentationClass:
    """Unordered fiber ``{canonical, anti}`` with a distinguished member.

    Equality and hashing treat the fiber as an unordered pair, so two classes
    built under different policies from the same underlying word compare
    equal.  A class is *degenerate* when the word is fixed by the involution
    (for example ``a+ a-``); the fiber then has a single element and the flag
    is reported rather than the input rejected.
    """

    canonical: SignedWord
    anti: SignedWord

    def __post_init__(self) -> None:
        if self.anti != self.canonical.involution():
            raise DomainError("anti presentation must be the involution of canonical")

    @classmethod
    def from_canonical(cls, word: SignedWord) -> "PresentationClass":
        """Build a class keeping ``word`` as the canonical presentation."""
        return cls(word, word.involution())

    @property
    def is_degenerate(self) -> bool:
        return self.canonical == self.anti

    def signed_form(self, sign: Sign) -> SignedWord:
        """Canonical presentation for ``+``, anti presentation for ``-``."""
        _check_sign(sign)
        return self.canonical if sign > 0 else self.anti

    def members(self) -> frozenset[SignedWord]:
        return frozenset((self.canonical, self.anti))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresentationClass):
            return NotImplemented
        return self.members() == other.members()

    def __hash__(self) -> int:
        return hash(self.members())

    def __str__(self) -> str:
        return f"{{{format_word(self.canonical)} | {format_word(self.anti)}}}"


def class_of(word: SignedWord, policy: CanonicalPolicy = LEX_LEAST) -> PresentationClass:
    """Presentation class of ``word`` with the policy-chosen canonical member."""
    return PresentationClass.from_canonical(policy.choose(word))


def pair(a: PresentationClass, sigma: Sign, tau: Sign, b: PresentationClass) -> SignedWord:
    """Connected-sum presentation: ``a`` at sign ``sigma`` then ``b`` at ``-tau``."""
    _check_sign(sigma)
    _check_sign(tau)
    return a.signed_form(sigma).concat(b.signed_form(-tau))


def check_commutation_law(
    a: PresentationClass, sigma: Sign, tau: Sign, b: PresentationClass
) -> bool:
    """``pair(a, s, t, b)`` and ``pair(b, t, s, a)`` present the same class."""
    return class_of(pair(a, sigma, tau, b)) == class_of(pair(b, tau, sigma, a))


def flip_generator_signs(word: SignedWord, gen: int) -> SignedWord:
    """Alphabet automorphism swapping ``c_gen^+`` and ``c_gen^-`` everywhere."""
    if not 0 <= gen < len(word.gens):
        raise DomainError(f"generator index {gen} out of range")
    return SignedWord(
        word.gens,
        tuple(l.flipped() if l.gen == gen else l for l in word.letters),
    )


def words_of_length(gens: GeneratorSet, length: int) -> Iterator[SignedWord]:
    """All words of exactly ``length`` letters, in deterministic order."""
    alphabet = [
        SignedLetter(i, s) for i in range(len(gens)) for s in (PLUS, MINUS)
    ]
    for combo in itertools.product(alphabet, repeat=length):
        yield SignedWord(gens, combo)


def iter_words(gens: GeneratorSet, max_length: int) -> Iterator[SignedWord]:
    """All words of length ``0..max_length``, shortest first."""
    for n in range(max_length + 1):
        yield from words_of_length(gens, n)


def format_word(word: SignedWord) -> str:
    """Render as ``a+ b-``; the empty word renders as the empty string."""
    names = word.gens.names
    return " ".join(f"{names[l.gen]}{sign_char(l.sign)}" for l in word.letters)


def parse_word(text: str, gens: GeneratorSet, *, line: int = 1) -> SignedWord:
    """Parse a word literal: whitespace-separated ``<name>+`` / ``<name>-`` tokens.

    The empty (or all-whitespace) string parses to the empty word.
    """
    letters: list[SignedLetter] = []
    for match in re.finditer(r"\S+", text):
        token = match.group()
        column = match.start() + 1
        m = _LETTER_RE.fullmatch(token)
        if m is None:
            raise ParseError(
                f"bad letter token {token!r}",
                line=line,
                column=column,
                expected=("'<name>+'", "'<name>-'"),
            )
        name, sc = m.group(1), m.group(2)
        if name not in gens.names:
            raise UnknownGeneratorError(name, line=line, column=column)
        letters.append(SignedLetter(gens.names.index(name), _SIGN_FROM_CHAR[sc]))
    return SignedWord(gens, tuple(letters))
