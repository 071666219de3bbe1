"""Homological representations of the mapping class group of N_g.

The mapping class group of N_g acts on the homology of its orientation double
cover S_{g-1} through transvections. The sublattice K (kernel of the covering
map followed by the torsion-free quotient) is invariant, which yields two
(g-1)-dimensional representations: the action on K (``Psi1``) and on the
quotient H_1(S)/K (``Psi2``). The primed variants flip the sign of every
crosscap transposition.

Basis conventions:

- H_1(S_{g-1}) uses (a_1, b_1, ..., a_{g-1}, b_{g-1}) with <a_i, b_j> = delta_ij
- K uses (e_1, e_{r+1}, e_2, e_{r+2}, ..., e_r, e_{2r}[, e_{2r+1}])
- H_1(S)/K uses (a_1+K, b_1+K, ..., a_r+K, b_r+K[, b_{r+1}+K])
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from src.algebra import (
    A,
    B,
    C,
    ExactMatrix,
    block_diag,
    identity,
    intertwiner_basis,
    omega,
)
from src.presentation import (
    Family,
    Generator,
    Relation,
    SurfaceContext,
    SurfaceKind,
    Word,
    a,
    b,
    braid,
    commutation,
    d,
    e,
    g,
    nonorientable,
    u,
)

logger = logging.getLogger(__name__)

REP_NAMES = ("Phi", "Psi1", "Psi2", "Psi1'", "Psi2'")
CLI_REP_NAMES = {"phi": "Phi", "psi1": "Psi1", "psi2": "Psi2", "psi1p": "Psi1'", "psi2p": "Psi2'"}


class HomologyError(Exception):
    """Raised when a homological computation is requested outside its range."""

    pass


@dataclass(frozen=True)
class HomologyVector:
    """Integer coordinates of a class in H_1(S) ("S"), H_1(N) ("N") or R ("R")."""

    context: str
    coords: tuple[int, ...]

    def __add__(self, other: "HomologyVector") -> "HomologyVector":
        return HomologyVector(self.context, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "HomologyVector":
        return HomologyVector(self.context, tuple(-x for x in self.coords))

    def __sub__(self, other: "HomologyVector") -> "HomologyVector":
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


def surface_basis_vector(kind: str, i: int, h: int) -> HomologyVector:
    """a_i or b_i in H_1(S_h)."""
    coords = [0] * (2 * h)
    coords[2 * i - 2 if kind == "a" else 2 * i - 1] = 1
    return HomologyVector("S", tuple(coords))


def intersection(first: HomologyVector, second: HomologyVector) -> int:
    """Algebraic intersection <first, second> with <a_i, b_i> = 1."""
    x, y = first.coords, second.coords
    return sum(x[k] * y[k + 1] - x[k + 1] * y[k] for k in range(0, len(x), 2))


def curve_class(gen: Generator, h: int) -> HomologyVector:
    """Homology class of the curve of an orientable generator on S_h."""
    if gen.family is Family.ALPHA:
        return surface_basis_vector("a", gen.index, h)
    if gen.family is Family.BETA:
        return surface_basis_vector("b", gen.index, h)
    if gen.family is Family.GAMMA:
        return surface_basis_vector("a", gen.index, h) - surface_basis_vector("a", gen.index + 1, h)
    raise HomologyError(f"{gen} is not a curve on an orientable surface")


def transvection(v: HomologyVector) -> ExactMatrix:
    """Matrix of h -> h + <v, h> v in the (a, b)-basis.

    Raises:
        HomologyError: If v has odd length
    """
    n = len(v.coords)
    if n == 0 or n % 2:
        raise HomologyError(f"transvection needs an even-dimensional class, got length {n}")
    # row vector w with w . h = <v, h>
    w = [0] * n
    for k in range(0, n, 2):
        w[k] = -v.coords[k + 1]
        w[k + 1] = v.coords[k]
    rows = [[(1 if i == j else 0) + v.coords[i] * w[j] for j in range(n)] for i in range(n)]
    return ExactMatrix.from_rows(rows)


def orientable_relations(h: int) -> list[Relation]:
    """Braid and commutation relations among the twists a_i, b_i, g_j on S_h.

    Two twists braid when their curves meet once algebraically and commute when
    the classes have zero intersection.
    """
    ctx = SurfaceContext(h, 0, SurfaceKind.ORIENTABLE)
    gens = ctx.generators()
    rels = []
    for k, x in enumerate(gens):
        for y in gens[k + 1:]:
            n = abs(intersection(curve_class(x, h), curve_class(y, h)))
            wx, wy = Word.from_generators(ctx, x), Word.from_generators(ctx, y)
            if n == 1:
                rels.append(braid(f"BRAID[{x},{y}]", (), wx, wy))
            elif n == 0:
                rels.append(commutation(f"COMM[{x},{y}]", (), wx, wy))
    return rels


# -- the lift to the double cover -------------------------------------------


def theta_word(gen: Generator, genus: int) -> Word:
    """Lift of a twist generator of N_g to a word on S_{g-1}.

    t_{e_i} -> a_i a_{g-i}^-1, t_{d_2i} -> b_i b_{g-i}^-1,
    t_{d_2j+1} -> g_j g_{g-1-j}^-1, and d_1 is treated as e_1.

    Raises:
        HomologyError: For crosscap transpositions or indices outside the lift
    """
    r = (genus - 1) // 2
    ctx = SurfaceContext(genus - 1, 0, SurfaceKind.ORIENTABLE)
    if gen.family is Family.DELTA and gen.index == 1:
        gen = e(1)
    i = gen.index
    if gen.family is Family.EPS and 1 <= i <= r:
        pair = (a(i), a(genus - i))
    elif gen.family is Family.DELTA and i % 2 == 0 and 1 <= i // 2 <= r:
        pair = (b(i // 2), b(genus - i // 2))
    elif gen.family is Family.DELTA and i % 2 == 1 and 2 <= i - 1 <= genus - 2:
        j = (i - 1) // 2
        pair = (g(j), g(genus - 1 - j))
    else:
        raise HomologyError(f"no lift of {gen} to the double cover at genus {genus}")
    return Word.of([(pair[0], 1), (pair[1], -1)], ctx)


def lifted_generators(genus: int) -> list[Generator]:
    """Twist generators of N_g whose lift is known: d_1..d_{g-1} and e_1..e_r."""
    r = (genus - 1) // 2
    return [d(i) for i in range(1, genus)] + [e(i) for i in range(1, r + 1)]


# -- generator tables ------------------------------------------------------


@dataclass
class GeneratorTable:
    """Images of generators under a linear representation."""

    name: str
    genus: int
    dimension: int
    images: dict[Generator, ExactMatrix]
    context: SurfaceContext
    _inverses: dict[Generator, ExactMatrix] = field(default_factory=dict, repr=False)

    def __contains__(self, gen: Generator) -> bool:
        return gen in self.images

    def __getitem__(self, gen: Generator) -> ExactMatrix:
        try:
            return self.images[gen]
        except KeyError:
            raise HomologyError(f"{self.name} at genus {self.genus} has no image for {gen}") from None

    def covers(self, gens: Sequence[Generator]) -> bool:
        return all(gen in self.images for gen in gens)

    def image(self, gen: Generator, exponent: int = 1) -> ExactMatrix:
        if exponent >= 0:
            return self[gen] ** exponent
        if gen not in self._inverses:
            self._inverses[gen] = self[gen].inverse()
        return self._inverses[gen] ** (-exponent)

    def eval_word(self, word: Word) -> ExactMatrix:
        """Ordered product of the letter images.

        Raises:
            HomologyError: If a letter has no image
        """
        result = identity(self.dimension)
        for gen, exp in word:
            result = result @ self.image(gen, exp)
        return result

    def holds(self, relation: Relation) -> bool:
        return self.eval_word(relation.lhs) == self.eval_word(relation.rhs)

    def to_dict(self) -> dict:
        return {
            "rep": self.name,
            "genus": self.genus,
            "dimension": self.dimension,
            "generators": {str(gen): m.to_dict() for gen, m in self.images.items()},
        }


def _display(top: int, block: list[list[int]]) -> ExactMatrix:
    tail = ExactMatrix.from_rows(block)
    return block_diag(identity(top), tail) if top else tail


def _psi_displays(which: int, genus: int) -> dict[Generator, ExactMatrix]:
    """Images of u_{g-1} (and of d_{g-1} for even g) from the closed-form blocks."""
    if genus % 2:
        block = [[1, 0], [1, -1]] if which == 1 else [[-1, 0], [-1, 1]]
        return {u(genus - 1): _display(genus - 3, block)}
    if which == 1:
        twist = [[1, 1, 0], [0, 1, 0], [0, -2, 1]]
        cross = [[1, -1, 1], [0, 1, 0], [0, 2, -1]]
    else:
        twist = [[1, 1, -2], [0, 1, 0], [0, 0, 1]]
        cross = [[1, 1, -2], [0, 1, 0], [0, 1, -1]]
    return {d(genus - 1): _display(genus - 4, twist), u(genus - 1): _display(genus - 4, cross)}


def _psi_twists(genus: int) -> dict[Generator, ExactMatrix]:
    m = genus - 1
    r = m // 2
    images: dict[Generator, ExactMatrix] = {d(1): A(1, m)}
    for i in range(1, r + 1):
        images[e(i)] = A(i, m)
        images[d(2 * i)] = B(i, m)
    for j in range(1, (m - 2) // 2 + 1):
        images[d(2 * j + 1)] = C(j, m)
    return images


def _lower_crosscap_images(images: dict[Generator, ExactMatrix], genus: int) -> None:
    # u_{i+1} d_i d_{i+1} u_i = d_i d_{i+1}
    for i in range(genus - 2, 0, -1):
        dd = images[d(i)] @ images[d(i + 1)]
        images[u(i)] = dd.inverse() @ images[u(i + 1)].inverse() @ dd


def rep_table(name: str, genus: int) -> GeneratorTable:
    """Generator table of a named representation.

    Args:
        name: One of Phi, Psi1, Psi2, Psi1', Psi2' (or the lower-case CLI aliases)
        genus: Number of crosscaps g (g >= 5 for the Psi family, g >= 3 for Phi)

    Returns:
        For Phi: transvection images of a_i, b_i, g_j on S_{g-1}. For the Psi
        family: images of every d_i, e_i (i <= r) and u_i in dimension g-1.

    Raises:
        HomologyError: For unknown names or a genus that is too small
    """
    name = CLI_REP_NAMES.get(name, name)
    if name not in REP_NAMES:
        raise HomologyError(f"unknown representation {name!r}")
    if name == "Phi":
        if genus < 3:
            raise HomologyError(f"Phi needs g >= 3, got {genus}")
        h = genus - 1
        ctx = SurfaceContext(h, 0, SurfaceKind.ORIENTABLE)
        images = {gen: transvection(curve_class(gen, h)) for gen in ctx.generators()}
        return GeneratorTable(name, genus, 2 * h, images, ctx)
    if genus < 5:
        raise HomologyError(f"{name} needs g >= 5, got {genus}")
    which = 1 if name.startswith("Psi1") else 2
    images = _psi_twists(genus)
    images.update(_psi_displays(which, genus))
    if name.endswith("'"):
        images[u(genus - 1)] = -images[u(genus - 1)]
    _lower_crosscap_images(images, genus)
    logger.debug("built %s table at genus %d with %d generators", name, genus, len(images))
    return GeneratorTable(name, genus, genus - 1, images, nonorientable(genus))


@lru_cache(maxsize=None)
def _phi_table(genus: int) -> GeneratorTable:
    return rep_table("Phi", genus)


def eval_word(table: GeneratorTable, word: Word) -> ExactMatrix:
    return table.eval_word(word)


# -- the double cover in homology ------------------------------------------


@dataclass(frozen=True)
class HomologyMaps:
    """Covering map data on homology for N_g.

    ``pstar`` is the g x 2(g-1) matrix of P_* into Z^g (the torsion relation
    2(x_1 + ... + x_g) = 0 is left implicit). ``q`` is the (g-1) x 2(g-1) matrix
    into R = Z^g / <k> in the basis of the images of x_1..x_{g-1}.
    ``from_ef`` has the e_i, f_i as columns; ``to_ef`` is its inverse.
    """

    genus: int
    pstar: ExactMatrix
    q: ExactMatrix
    k_basis: tuple[HomologyVector, ...]
    f_basis: tuple[HomologyVector, ...]
    from_ef: ExactMatrix
    to_ef: ExactMatrix

    def kernel_check(self) -> bool:
        """q vanishes on every K-basis element."""
        return all(_apply(self.q, v).is_zero for v in self.k_basis)

    def pairing_table(self) -> dict[str, list[list[int]]]:
        ee = [[intersection(x, y) for y in self.k_basis] for x in self.k_basis]
        ef = [[intersection(x, y) for y in self.f_basis] for x in self.k_basis]
        ff = [[intersection(x, y) for y in self.f_basis] for x in self.f_basis]
        return {"ee": ee, "ef": ef, "ff": ff}

    def symplectic_check(self) -> bool:
        """<e_i, f_j> = delta_ij and <e_i, e_j> = <f_i, f_j> = 0."""
        n = self.genus - 1
        table = self.pairing_table()
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        zero = [[0] * n for _ in range(n)]
        return table["ef"] == eye and table["ee"] == zero and table["ff"] == zero


def _apply(m: ExactMatrix, v: HomologyVector) -> HomologyVector:
    column = ExactMatrix.from_rows([[x] for x in v.coords])
    image = m @ column
    return HomologyVector("N", tuple(int(image.entry(i, 0)) for i in range(image.rows)))


def _prefix(g_: int, upto: int, sign: int = 1) -> list[int]:
    return [sign if k < upto else 0 for k in range(g_)]


def homology_maps(genus: int) -> HomologyMaps:
    """Covering map on homology, the K-basis and its symplectic complement.

    Raises:
        HomologyError: For g < 3
    """
    if genus < 3:
        raise HomologyError(f"homology maps need g >= 3, got {genus}")
    h = genus - 1
    r = (genus - 1) // 2
    columns: dict[tuple[str, int], list[int]] = {}
    for i in range(1, r + 1):
        columns[("a", i)] = _prefix(genus, 2 * i)
        columns[("a", genus - i)] = _prefix(genus, 2 * i, -1)
        pair = [1 if k in (2 * i - 1, 2 * i) else 0 for k in range(genus)]
        columns[("b", i)] = pair
        columns[("b", genus - i)] = list(pair)
    if genus % 2 == 0:
        columns[("a", r + 1)] = [1] * genus
        columns[("b", r + 1)] = [2 if k == genus - 1 else 0 for k in range(genus)]
    order = [(kind, i) for i in range(1, h + 1) for kind in ("a", "b")]
    pstar = ExactMatrix.from_rows([[columns[key][row] for key in order] for row in range(genus)])
    # R = Z^g / <x_1 + ... + x_g>, coordinates on x_1..x_{g-1}
    projection = ExactMatrix.from_rows(
        [[1 if c == row else (-1 if c == genus - 1 else 0) for c in range(genus)] for row in range(h)]
    )
    q = projection @ pstar

    def av(i: int) -> HomologyVector:
        return surface_basis_vector("a", i, h)

    def bv(i: int) -> HomologyVector:
        return surface_basis_vector("b", i, h)

    k_basis = [av(i) + av(genus - i) for i in range(1, r + 1)]
    k_basis += [bv(i) - bv(genus - i) for i in range(1, r + 1)]
    f_basis = [bv(i) for i in range(1, r + 1)] + [av(genus - i) for i in range(1, r + 1)]
    if genus % 2 == 0:
        k_basis.append(av(r + 1))
        f_basis.append(bv(r + 1))
    vectors = k_basis + f_basis
    from_ef = ExactMatrix.from_rows(
        [[v.coords[row] for v in vectors] for row in range(2 * h)]
    )
    return HomologyMaps(
        genus=genus,
        pstar=pstar,
        q=q,
        k_basis=tuple(k_basis),
        f_basis=tuple(f_basis),
        from_ef=from_ef,
        to_ef=from_ef.inverse(),
    )


def k_order(genus: int) -> list[int]:
    """0-based positions of (e_1, e_{r+1}, e_2, e_{r+2}, ...) among e_1..e_{g-1}."""
    r = (genus - 1) // 2
    order = []
    for i in range(r):
        order += [i, r + i]
    if genus % 2 == 0:
        order.append(2 * r)
    return order


def quotient_change(genus: int) -> ExactMatrix:
    """Columns: the quotient basis (a_1+K, b_1+K, ...) in f-coordinates.

    a_i + K = -f_{r+i} + K and b_i + K = f_i + K.
    """
    r = (genus - 1) // 2
    n = genus - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(r):
        rows[r + i][2 * i] = -1
        rows[i][2 * i + 1] = 1
    if genus % 2 == 0:
        rows[2 * r][2 * r] = 1
    return ExactMatrix.from_rows(rows)


@dataclass(frozen=True)
class BlockDecomposition:
    """A matrix in the (e, f)-basis split as (X1, Y; 0, X2)."""

    source: ExactMatrix
    X1: ExactMatrix
    X2: ExactMatrix
    Y: ExactMatrix
    lower_left: ExactMatrix

    @property
    def is_upper_triangular(self) -> bool:
        return self.lower_left.is_zero()

    @property
    def dual_blocks(self) -> bool:
        """X1^t X2 = I."""
        return (self.X1.transpose() @ self.X2).is_identity()


def split_blocks(matrix: ExactMatrix) -> BlockDecomposition:
    n = matrix.rows // 2
    top, bottom = list(range(n)), list(range(n, 2 * n))
    return BlockDecomposition(
        source=matrix,
        X1=matrix.submatrix(top, top),
        X2=matrix.submatrix(bottom, bottom),
        Y=matrix.submatrix(top, bottom),
        lower_left=matrix.submatrix(bottom, top),
    )


def lifted_action(genus: int, word: Word, maps: Optional[HomologyMaps] = None) -> ExactMatrix:
    """Matrix of Phi(theta(word)) in the (e, f)-basis.

    Raises:
        HomologyError: If some letter has no lift
    """
    maps = maps or homology_maps(genus)
    phi = _phi_table(genus)
    result = identity(2 * (genus - 1))
    for gen, exp in word:
        lifted = phi.eval_word(theta_word(gen, genus))
        result = result @ (lifted ** exp)
    return maps.to_ef @ result @ maps.from_ef


def block_decompose(genus: int, word: Word, maps: Optional[HomologyMaps] = None) -> BlockDecomposition:
    """Split the (e, f)-basis matrix of a twist word into its blocks."""
    return split_blocks(lifted_action(genus, word, maps))


def derive_psi(genus: int, which: int) -> GeneratorTable:
    """Compute the twist images of Psi1 or Psi2 from the action on the double cover.

    Raises:
        HomologyError: For g < 5 or ``which`` not in {1, 2}
    """
    if genus < 5:
        raise HomologyError(f"derivation needs g >= 5, got {genus}")
    if which not in (1, 2):
        raise HomologyError(f"which must be 1 or 2, got {which}")
    maps = homology_maps(genus)
    order = k_order(genus)
    change = quotient_change(genus)
    change_inv = change.inverse()
    ctx = nonorientable(genus)
    images = {}
    for gen in lifted_generators(genus):
        blocks = block_decompose(genus, Word.from_generators(ctx, gen), maps)
        if which == 1:
            images[gen] = blocks.X1.submatrix(order, order)
        else:
            images[gen] = change_inv @ blocks.X2 @ change
    logger.debug("derived %d twist images of Psi%d at genus %d", len(images), which, genus)
    return GeneratorTable(f"Psi{which}", genus, genus - 1, images, ctx)


def covering_involution(genus: int, maps: Optional[HomologyMaps] = None) -> ExactMatrix:
    """Matrix in the (e, f)-basis of a_i -> -a_{g-i}, b_i -> b_{g-i}.

    Raises:
        HomologyError: For g < 3
    """
    maps = maps or homology_maps(genus)
    h = genus - 1
    rows = [[0] * (2 * h) for _ in range(2 * h)]
    for i in range(1, h + 1):
        j = genus - i
        rows[2 * j - 2][2 * i - 2] = -1
        rows[2 * j - 1][2 * i - 1] = 1
    j_ab = ExactMatrix.from_rows(rows)
    return maps.to_ef @ j_ab @ maps.from_ef


def involution_checks(genus: int) -> dict[str, bool]:
    """The four defining properties of the covering involution matrix."""
    maps = homology_maps(genus)
    J = covering_involution(genus, maps)
    n = genus - 1
    om = omega(2 * n)
    blocks = split_blocks(J)
    shape = blocks.X1 == -identity(n) and blocks.X2.is_identity() and blocks.lower_left.is_zero()
    ctx = nonorientable(genus)
    commutes = all(
        lifted_action(genus, Word.from_generators(ctx, gen), maps).commutes_with(J)
        for gen in lifted_generators(genus)
    )
    return {
        "involution": (J @ J).is_identity(),
        "anti_symplectic": J.transpose() @ om @ J == -om,
        "block_shape": shape,
        "commutes_with_twists": commutes,
    }


# -- conjugacy --------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyReport:
    """Outcome of searching for M with M rho2(x) = rho1(x) M on all generators."""

    genus: int
    first: str
    second: str
    twist_dimension: int
    full_dimension: int
    conjugate: bool
    witness: Optional[ExactMatrix] = None

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "first": self.first,
            "second": self.second,
            "twist_intertwiner_dimension": self.twist_dimension,
            "full_intertwiner_dimension": self.full_dimension,
            "conjugate": self.conjugate,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def shared_twists(genus: int) -> list[Generator]:
    """Twists whose images are A_i, B_i, C_j in every Psi table."""
    r = (genus - 1) // 2
    gens = [e(i) for i in range(1, r + 1)] + [d(2 * i) for i in range(1, r + 1)]
    gens += [d(2 * j + 1) for j in range(1, r)]
    return gens


def conjugacy_obstruction(genus: int, first: str = "Psi1", second: str = "Psi2") -> ConjugacyReport:
    """Decide whether two Psi tables are conjugate on the generators of N_g.

    First the intertwiners of the shared twist images are computed, then the
    remaining generators (u_{g-1}, and d_{g-1} for even g) are added and the
    generic member of the resulting space is tested for a nonzero determinant.
    """
    t1, t2 = rep_table(first, genus), rep_table(second, genus)
    m = genus - 1
    twists = shared_twists(genus)
    twist_space = intertwiner_basis([(t2[x], t1[x]) for x in twists], m)
    rest = [u(genus - 1)] + ([d(genus - 1)] if genus % 2 == 0 else [])
    full_space = intertwiner_basis([(t2[x], t1[x]) for x in twists + rest], m)
    witness = full_space.invertible_member()
    report = ConjugacyReport(
        genus=genus,
        first=t1.name,
        second=t2.name,
        twist_dimension=twist_space.rank,
        full_dimension=full_space.rank,
        conjugate=witness is not None,
        witness=witness,
    )
    logger.debug("conjugacy %s vs %s at genus %d: %s", first, second, genus, report.conjugate)
    return report
