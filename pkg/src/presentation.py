"""Generators, words and relations of mapping class groups of nonorientable surfaces.

Words are tuples of (generator, exponent) letters with free reduction of
adjacent letters only. Relations are produced as pairs of words; evaluating
both sides under a representation is how the rest of the package checks them.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^([deuabg])(\d+)(?:\^([+-]?\d+))?$")


class PresentationError(Exception):
    """Raised when a word, generator or relation request is invalid."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class Family(Enum):
    """Generator families; the value is the atom letter of the word grammar."""

    DELTA = "d"
    EPS = "e"
    U = "u"
    ALPHA = "a"
    BETA = "b"
    GAMMA = "g"


class SurfaceKind(Enum):
    """Where a word lives: N_g, the orientable cover S_{g-1}, or the subsurface S'."""

    NONORIENTABLE = "N"
    ORIENTABLE = "S"
    SUBSURFACE = "S'"


NONORIENTABLE_FAMILIES = (Family.DELTA, Family.EPS, Family.U)
ORIENTABLE_FAMILIES = (Family.ALPHA, Family.BETA, Family.GAMMA)


@dataclass(frozen=True)
class Generator:
    """A named generator such as t_{delta_3} (``d3``) or u_2 (``u2``)."""

    family: Family
    index: int

    def __str__(self) -> str:
        return f"{self.family.value}{self.index}"

    @property
    def is_twist(self) -> bool:
        return self.family is not Family.U


def d(i: int) -> Generator:
    return Generator(Family.DELTA, i)


def e(j: int) -> Generator:
    return Generator(Family.EPS, j)


def u(i: int) -> Generator:
    return Generator(Family.U, i)


def a(i: int) -> Generator:
    return Generator(Family.ALPHA, i)


def b(i: int) -> Generator:
    return Generator(Family.BETA, i)


def g(j: int) -> Generator:
    return Generator(Family.GAMMA, j)


@dataclass(frozen=True)
class SurfaceContext:
    """Surface a word lives on.

    For NONORIENTABLE and SUBSURFACE, ``genus`` is the number of crosscaps g of
    N_{g,n}. For ORIENTABLE, ``genus`` is the genus h of S_h.
    """

    genus: int
    boundary: int = 0
    kind: SurfaceKind = SurfaceKind.NONORIENTABLE

    def index_range(self, family: Family) -> range:
        """Valid indices of a generator family in this context (empty if not allowed)."""
        n = self.genus
        if self.kind is SurfaceKind.NONORIENTABLE:
            ranges = {
                Family.DELTA: range(1, n),
                Family.U: range(1, n),
                Family.EPS: range(1, n // 2 + 1),
            }
        elif self.kind is SurfaceKind.ORIENTABLE:
            ranges = {
                Family.ALPHA: range(1, n + 1),
                Family.BETA: range(1, n + 1),
                Family.GAMMA: range(1, n),
            }
        else:
            r = (n - 1) // 2
            ranges = {
                Family.ALPHA: range(1, n // 2 + 1),
                Family.BETA: range(1, r + 1),
                Family.GAMMA: range(1, r),
            }
        return ranges.get(family, range(0))

    def check(self, gen: Generator) -> None:
        if gen.index not in self.index_range(gen.family):
            raise PresentationError(f"generator {gen} is out of range on {self.describe()}")

    def generators(self) -> list[Generator]:
        families = (
            NONORIENTABLE_FAMILIES if self.kind is SurfaceKind.NONORIENTABLE else ORIENTABLE_FAMILIES
        )
        return [Generator(f, i) for f in families for i in self.index_range(f)]

    def describe(self) -> str:
        if self.kind is SurfaceKind.ORIENTABLE:
            return f"S_{self.genus}"
        if self.kind is SurfaceKind.SUBSURFACE:
            return f"S' in N_{self.genus}"
        return f"N_{{{self.genus},{self.boundary}}}"


def nonorientable(genus: int, boundary: int = 0) -> SurfaceContext:
    return SurfaceContext(genus, boundary, SurfaceKind.NONORIENTABLE)


Letter = tuple[Generator, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the generators of a surface context."""

    letters: tuple[Letter, ...]
    context: SurfaceContext

    @classmethod
    def of(cls, letters: Iterable[Letter], context: SurfaceContext) -> "Word":
        """Validate every generator against the context and reduce."""
        letters = list(letters)
        for gen, _ in letters:
            context.check(gen)
        return cls(_reduce(letters), context)

    @classmethod
    def empty(cls, context: SurfaceContext) -> "Word":
        return cls((), context)

    @classmethod
    def from_generators(cls, context: SurfaceContext, *gens: Generator) -> "Word":
        return cls.of([(gen, 1) for gen in gens], context)

    def __mul__(self, other: "Word") -> "Word":
        if other.context != self.context:
            raise PresentationError("cannot multiply words from different surfaces")
        return Word(_reduce(self.letters + other.letters), self.context)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(_reduce(base.letters * abs(k)), self.context)

    def inverse(self) -> "Word":
        return Word(tuple((gen, -exp) for gen, exp in reversed(self.letters)), self.context)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def generators(self) -> set[Generator]:
        return {gen for gen, _ in self.letters}

    def __str__(self) -> str:
        return format_word(self)


def format_word(word: Word) -> str:
    """Print a word in the parser's grammar (``1`` for the empty word)."""
    if word.is_empty:
        return "1"
    return " ".join(str(gen) if exp == 1 else f"{gen}^{exp}" for gen, exp in word.letters)


def parse_word(text: str, context: SurfaceContext) -> Word:
    """Parse ``"d1 d2^-1 u3"`` into a reduced word.

    The empty string and ``"1"`` denote the empty word.

    Raises:
        PresentationError: On a malformed token (with its character position) or a
            generator outside the context
    """
    letters: list[Letter] = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        if token == "1":
            continue
        parsed = _TOKEN.match(token)
        if not parsed:
            raise PresentationError(f"cannot parse token {token!r}", match.start())
        family = Family(parsed.group(1))
        gen = Generator(family, int(parsed.group(2)))
        exp = int(parsed.group(3)) if parsed.group(3) is not None else 1
        try:
            context.check(gen)
        except PresentationError as err:
            raise PresentationError(str(err), match.start()) from err
        letters.append((gen, exp))
    return Word(_reduce(letters), context)


# -- relations -------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """An identity lhs = rhs between words, tagged by family and indices."""

    family: str
    indices: tuple[int, ...]
    lhs: Word
    rhs: Word

    @property
    def id(self) -> str:
        if not self.indices:
            return self.family
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"

    @property
    def relator(self) -> Word:
        return self.lhs * self.rhs.inverse()

    def generators(self) -> set[Generator]:
        return self.lhs.generators() | self.rhs.generators()

    def __str__(self) -> str:
        return f"{self.id}: {format_word(self.lhs)} = {format_word(self.rhs)}"


class N4Reading(Enum):
    """Readings of the printed genus-four relator t_{d(i+1)} u_? u_{i+1} = u_i u_{i+1} t_{d(i)}."""

    LITERAL = "literal"
    CORRECTED = "corrected"


def _w(ctx: SurfaceContext, *letters: Generator) -> Word:
    return Word.from_generators(ctx, *letters)


def commutation(family: str, indices: tuple[int, ...], x: Word, y: Word) -> Relation:
    return Relation(family, indices, x * y, y * x)


def braid(family: str, indices: tuple[int, ...], x: Word, y: Word) -> Relation:
    return Relation(family, indices, x * y * x, y * x * y)


def _standard_relations(ctx: SurfaceContext) -> list[Relation]:
    n = ctx.genus
    deltas = range(1, n)
    eps = range(1, n // 2 + 1)
    rels: list[Relation] = []
    for i in deltas:
        for j in deltas:
            if j > i + 1:
                rels.append(commutation("R1", (i, j), _w(ctx, d(i)), _w(ctx, d(j))))
    for i in eps:
        for j in eps:
            if j > i:
                rels.append(commutation("R2", (i, j), _w(ctx, e(i)), _w(ctx, e(j))))
    for i in eps:
        for j in deltas:
            if j != 2 * i:
                rels.append(commutation("R3", (i, j), _w(ctx, e(i)), _w(ctx, d(j))))
    for i in range(1, n - 1):
        rels.append(braid("R4", (i,), _w(ctx, d(i)), _w(ctx, d(i + 1))))
    for i in eps:
        if 2 * i < n:
            rels.append(braid("R5", (i,), _w(ctx, e(i)), _w(ctx, d(2 * i))))
    for i in deltas:
        for j in deltas:
            if abs(i - j) > 1:
                rels.append(commutation("R6", (i, j), _w(ctx, d(i)), _w(ctx, u(j))))
    for i in deltas:
        for j in deltas:
            if j > i + 1:
                rels.append(commutation("R7", (i, j), _w(ctx, u(i)), _w(ctx, u(j))))
    for i in eps:
        for j in deltas:
            if j > 2 * i:
                rels.append(commutation("R8", (i, j), _w(ctx, e(i)), _w(ctx, u(j))))
    for i in range(1, n - 1):
        rels.append(braid("R9", (i,), _w(ctx, u(i)), _w(ctx, u(i + 1))))
    for i in range(1, n - 1):
        rels.append(
            Relation("R10", (i,), _w(ctx, d(i), u(i + 1), u(i)), _w(ctx, u(i + 1), u(i), d(i + 1)))
        )
    for i in range(1, n - 1):
        rels.append(
            Relation("R11", (i,), _w(ctx, u(i + 1), d(i), d(i + 1), u(i)), _w(ctx, d(i), d(i + 1)))
        )
    for i in deltas:
        rels.append(Relation("R12", (i,), _w(ctx, d(i), u(i), d(i)), _w(ctx, u(i))))
    return rels


def shift_relations(ctx: SurfaceContext) -> list[Relation]:
    """d_{i+1} s = s d_i for s = d_1 ... d_{g-1}."""
    s = special_word("s", ctx.genus, ctx.boundary)
    return [
        Relation("SHIFT", (i,), _w(ctx, d(i + 1)) * s, s * _w(ctx, d(i)))
        for i in range(1, ctx.genus - 1)
    ]


def n4_extra_relations(reading: N4Reading = N4Reading.CORRECTED, boundary: int = 0) -> list[Relation]:
    """The three additional relator families of the genus-four presentation."""
    ctx = nonorientable(4, boundary)
    rels = []
    for i in (1, 2):
        first = u(1) if reading is N4Reading.LITERAL else u(i)
        rels.append(
            Relation("N4A", (i,), _w(ctx, d(i + 1), first, u(i + 1)), _w(ctx, u(i), u(i + 1), d(i)))
        )
    pair = _w(ctx, e(2), u(3))
    rels.append(Relation("N4B", (), pair * pair, Word.empty(ctx)))
    tail = _w(ctx, d(2), d(3), u(3), u(2))
    rels.append(Relation("N4C", (), _w(ctx, d(1)) * tail * _w(ctx, d(1)), tail))
    return rels


def relations_for(
    genus: int,
    boundary: int = 0,
    reading: N4Reading = N4Reading.CORRECTED,
    include_shift: bool = False,
) -> list[Relation]:
    """Every instance of R1-R12 on N_{genus,boundary}.

    At genus four the extra relators of the genus-four presentation are appended.

    Args:
        genus: Number of crosscaps g >= 3
        boundary: Number of boundary components (0 or 1)
        reading: Which reading of the suspect genus-four relator to emit
        include_shift: Also append the d_{i+1} s = s d_i family

    Raises:
        PresentationError: For g < 3 or more than one boundary component
    """
    if genus < 3:
        raise PresentationError(f"unsupported genus {genus} (need g >= 3)")
    if boundary not in (0, 1):
        raise PresentationError(f"unsupported boundary count {boundary} (need 0 or 1)")
    ctx = nonorientable(genus, boundary)
    rels = _standard_relations(ctx)
    if genus == 4:
        rels.extend(n4_extra_relations(reading, boundary))
    if include_shift:
        rels.extend(shift_relations(ctx))
    logger.debug("built %d relation instances for %s", len(rels), ctx.describe())
    return rels


def special_word(name: str, genus: int, boundary: int = 0) -> Word:
    """Named words; only ``s = d1 d2 ... d_{g-1}`` is defined."""
    if name != "s":
        raise PresentationError(f"unknown special word {name!r}")
    if genus < 3:
        raise PresentationError(f"unsupported genus {genus} (need g >= 3)")
    ctx = nonorientable(genus, boundary)
    return Word.from_generators(ctx, *(d(i) for i in range(1, genus)))


# -- abelianization --------------------------------------------------------


@dataclass(frozen=True)
class AbelianClass:
    """Class of a word in the abelianization, a vector space over GF(2)."""

    genus: int
    labels: tuple[str, ...]
    coordinates: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __add__(self, other: "AbelianClass") -> "AbelianClass":
        if self.labels != other.labels:
            raise PresentationError("abelian classes from different genera")
        coords = tuple((x + y) % 2 for x, y in zip(self.coordinates, other.coordinates))
        return AbelianClass(self.genus, self.labels, coords)

    def to_dict(self) -> dict:
        return dict(zip(self.labels, self.coordinates))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"[{lab}]" for lab, c in zip(self.labels, self.coordinates) if c)


def abelian_labels(genus: int) -> tuple[str, ...]:
    if genus < 3:
        raise PresentationError(f"unsupported genus {genus} (need g >= 3)")
    if genus == 4:
        return ("d1", "e2", "u1")
    if genus <= 6:
        return ("d1", "u1")
    return ("u1",)


def _letter_label(gen: Generator, genus: int) -> Optional[str]:
    if gen.family is Family.U:
        return "u1"
    if genus >= 7:
        return None
    if genus == 4 and gen.family is Family.EPS and gen.index == 2:
        return "e2"
    return "d1"


def abelianize(word: Word, genus: Optional[int] = None) -> AbelianClass:
    """Image of a word in the abelianization of the mapping class group.

    Raises:
        PresentationError: For genus < 3 or words not on a nonorientable surface
    """
    genus = word.context.genus if genus is None else genus
    if word.context.kind is not SurfaceKind.NONORIENTABLE:
        raise PresentationError("abelianization needs a word on N_g")
    labels = abelian_labels(genus)
    coords = [0] * len(labels)
    for gen, exp in word:
        label = _letter_label(gen, genus)
        if label is not None:
            k = labels.index(label)
            coords[k] = (coords[k] + exp) % 2
    return AbelianClass(genus, labels, tuple(coords))


# -- the infinite dihedral quotient at genus four ---------------------------


@dataclass(frozen=True)
class DihedralElement:
    """Element (xy)^translation * y^reflection of D_inf = <x, y | x^2 = y^2 = 1>."""

    translation: int = 0
    reflection: bool = False

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        sign = -1 if self.reflection else 1
        return DihedralElement(
            self.translation + sign * other.translation, self.reflection != other.reflection
        )

    def inverse(self) -> "DihedralElement":
        if self.reflection:
            return self
        return DihedralElement(-self.translation, False)

    def __pow__(self, k: int) -> "DihedralElement":
        base = self if k >= 0 else self.inverse()
        if base.reflection:
            return base if k % 2 else IDENTITY
        return DihedralElement(base.translation * abs(k), False)

    @property
    def is_identity(self) -> bool:
        return self.translation == 0 and not self.reflection

    @property
    def order(self) -> Optional[int]:
        """Finite order, or None for infinite order."""
        if self.is_identity:
            return 1
        if self.reflection:
            return 2
        return None

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        parts = []
        if self.translation == 1:
            parts.append("xy")
        elif self.translation:
            parts.append(f"(xy)^{self.translation}")
        if self.reflection:
            parts.append("y")
        return " ".join(parts)


IDENTITY = DihedralElement()
X = DihedralElement(1, True)
Y = DihedralElement(0, True)


def dihedral_image(gen: Generator) -> DihedralElement:
    """phi(e2) = xy, phi(d_i) = phi(e1) = 1, phi(u_i) = y."""
    if gen.family is Family.U:
        return Y
    if gen.family is Family.EPS and gen.index == 2:
        return X * Y
    return IDENTITY


def dihedral_eval(word: Word) -> DihedralElement:
    """Image of a genus-four word in D_inf.

    Raises:
        PresentationError: If the word is not on N_4
    """
    ctx = word.context
    if ctx.kind is not SurfaceKind.NONORIENTABLE or ctx.genus != 4:
        raise PresentationError("the dihedral quotient is defined on N_4 only")
    result = IDENTITY
    for gen, exp in word:
        result = result * dihedral_image(gen) ** exp
    return result


# -- translations ----------------------------------------------------------


def iota_translate(word: Word) -> Word:
    """Map a word on the subsurface S' into N_g letter by letter.

    a_i -> e_i, b_i -> d_{2i}, g_j -> d_{2j+1}.

    Raises:
        PresentationError: If the word is not on S' or a letter is out of range
    """
    ctx = word.context
    if ctx.kind is not SurfaceKind.SUBSURFACE:
        raise PresentationError("iota translates words on S' only")
    for gen, _ in word:
        ctx.check(gen)
    target = nonorientable(ctx.genus, ctx.boundary)
    mapping = {
        Family.ALPHA: lambda i: e(i),
        Family.BETA: lambda i: d(2 * i),
        Family.GAMMA: lambda i: d(2 * i + 1),
    }
    return Word.of(((mapping[gen.family](gen.index), exp) for gen, exp in word), target)
