"""Mod-2 homology of N_{2r+2}, its isometry group and the projection to Sp(2r, 2).

Vectors and matrices are ``galois.GF(2)`` arrays. Matrices act on column vectors
in the basis x_1, ..., x_{2r+2} of crosscap classes, where the pairing is the
dot product. Symplectic blocks use the basis (v_1, w_1, ..., v_r, w_r).
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import galois
import numpy as np

from src.algebra import ExactMatrix, Ring
from src.presentation import Family, Generator, Word

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


class Mod2Error(Exception):
    """Raised when a mod-2 object fails its defining conditions."""

    pass


def basis_vector(i: int, n: int) -> galois.FieldArray:
    """x_i (1-based) in GF(2)^n."""
    v = GF2.Zeros(n)
    v[i - 1] = 1
    return v


def block_vector(start: int, stop: int, n: int) -> galois.FieldArray:
    """x_start + ... + x_stop."""
    v = GF2.Zeros(n)
    v[start - 1:stop] = 1
    return v


def pairing(x: galois.FieldArray, y: galois.FieldArray) -> int:
    return int(np.dot(x, y))


def transvection(v: galois.FieldArray) -> galois.FieldArray:
    """x -> x + <v, x> v."""
    return GF2.Identity(len(v)) + v[:, None] * v[None, :]


def same(x: galois.FieldArray, y: galois.FieldArray) -> bool:
    return x.shape == y.shape and bool(np.all(np.asarray(x) == np.asarray(y)))


def bits(x: galois.FieldArray) -> tuple[int, ...]:
    return tuple(int(b) for b in np.asarray(x).ravel())


def to_exact(m: galois.FieldArray) -> ExactMatrix:
    """GF(2) interchange form of a galois matrix."""
    return ExactMatrix.from_rows(np.asarray(m).tolist(), Ring.GF2)


def from_exact(m: ExactMatrix) -> galois.FieldArray:
    return GF2(np.array(m.to_dict()["entries"], dtype=int) % 2)


@dataclass(frozen=True)
class SpecialVectors:
    """v_i = x_1 + ... + x_2i, w_i = x_2i + x_2i+1, c = x_{2r+2}, d = all ones."""

    r: int
    v: tuple[galois.FieldArray, ...]
    w: tuple[galois.FieldArray, ...]
    c: galois.FieldArray
    d: galois.FieldArray

    @property
    def n(self) -> int:
        return 2 * self.r + 2

    def symplectic_basis(self) -> list[galois.FieldArray]:
        """(v_1, w_1, ..., v_r, w_r)."""
        return [x for pair in zip(self.v, self.w) for x in pair]

    def adapted_basis(self) -> galois.FieldArray:
        """Columns v_1, w_1, ..., v_r, w_r, c, d."""
        return GF2(np.column_stack([np.asarray(x) for x in self.symplectic_basis() + [self.c, self.d]]))


@lru_cache(maxsize=None)
def special_vectors(r: int) -> SpecialVectors:
    """Special classes of V = H_1(N_{2r+2}, Z_2).

    Raises:
        Mod2Error: For r < 1
    """
    if r < 1:
        raise Mod2Error(f"r must be at least 1, got {r}")
    n = 2 * r + 2
    return SpecialVectors(
        r=r,
        v=tuple(block_vector(1, 2 * i, n) for i in range(1, r + 1)),
        w=tuple(block_vector(2 * i, 2 * i + 1, n) for i in range(1, r + 1)),
        c=basis_vector(n, n),
        d=block_vector(1, n, n),
    )


@lru_cache(maxsize=None)
def _adapted(r: int) -> tuple[galois.FieldArray, galois.FieldArray]:
    basis = special_vectors(r).adapted_basis()
    return basis, np.linalg.inv(basis)


def form_matrix(r: int) -> galois.FieldArray:
    """Gram matrix of the pairing on (v_1, w_1, ..., v_r, w_r)."""
    basis = special_vectors(r).symplectic_basis()
    return GF2([[pairing(x, y) for y in basis] for x in basis])


def is_symplectic(R: galois.FieldArray, r: int) -> bool:
    omega = form_matrix(r)
    return R.shape == (2 * r, 2 * r) and same(R.T @ omega @ R, omega)


def is_isometry(L: galois.FieldArray) -> bool:
    """Square, invertible and pairing-preserving on the crosscap basis."""
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        return False
    return same(L.T @ L, GF2.Identity(L.shape[0]))


def in_wsymp(z: galois.FieldArray, r: int) -> bool:
    sv = special_vectors(r)
    return pairing(z, sv.c) == 0 and pairing(z, sv.d) == 0


def _combine(coeffs: galois.FieldArray, vectors: list[galois.FieldArray], n: int) -> galois.FieldArray:
    total = GF2.Zeros(n)
    for c, v in zip(coeffs, vectors):
        if int(c):
            total = total + v
    return total


def _from_adapted(images: list[galois.FieldArray], r: int) -> galois.FieldArray:
    _, inverse = _adapted(r)
    return GF2(np.column_stack([np.asarray(x) for x in images])) @ inverse


def make_B(x: int, z: galois.FieldArray, r: int) -> galois.FieldArray:
    """B_{x,z}: d -> d, c -> c + x d + z, w -> w + <w, z> d on span(v_i, w_i).

    Raises:
        Mod2Error: If z lies outside span(v_i, w_i)
    """
    if not in_wsymp(z, r):
        raise Mod2Error(f"{bits(z)} is not in span(v_i, w_i)")
    sv = special_vectors(r)
    images = [w + GF2(pairing(w, z)) * sv.d for w in sv.symplectic_basis()]
    images += [sv.c + GF2(x % 2) * sv.d + z, sv.d]
    return _from_adapted(images, r)


def make_A(R: galois.FieldArray, r: int) -> galois.FieldArray:
    """A_R: acts as R on span(v_i, w_i) and fixes c and d.

    Raises:
        Mod2Error: If R is not symplectic
    """
    if not is_symplectic(R, r):
        raise Mod2Error("R does not preserve the symplectic form")
    sv = special_vectors(r)
    basis = sv.symplectic_basis()
    images = [_combine(R[:, k], basis, sv.n) for k in range(2 * r)]
    images += [sv.c, sv.d]
    return _from_adapted(images, r)


@dataclass(frozen=True)
class Decomposition:
    """L = B_{x,z} A_R."""

    x: int
    z: galois.FieldArray
    R: galois.FieldArray

    def rebuild(self, r: int) -> galois.FieldArray:
        return make_B(self.x, self.z, r) @ make_A(self.R, r)

    def to_dict(self) -> dict:
        return {"x": self.x, "z": list(bits(self.z)), "R": to_exact(self.R).to_dict()}


def genus_to_r(n: int) -> int:
    if n < 4 or n % 2:
        raise Mod2Error(f"expected an even size 2r+2 >= 4, got {n}")
    return (n - 2) // 2


def decompose(L: galois.FieldArray) -> Decomposition:
    """Split an isometry as B_{x,z} A_R.

    Raises:
        Mod2Error: If L is not an isometry of V
    """
    r = genus_to_r(L.shape[0])
    if not is_isometry(L):
        raise Mod2Error("matrix does not preserve the mod-2 pairing")
    sv = special_vectors(r)
    basis, inverse = _adapted(r)
    coords = inverse @ (L @ sv.c - sv.c)
    if coords[-2]:
        raise Mod2Error("image of c has a c-component")
    x = int(coords[-1])
    z_vec = _combine(coords[: 2 * r], sv.symplectic_basis(), sv.n)
    # B_{x,z} is an involution
    stabilizer = make_B(x, z_vec, r) @ L
    R = (inverse @ stabilizer @ basis)[: 2 * r, : 2 * r]
    return Decomposition(x=x, z=z_vec, R=R)


# -- the action of M(N_{2r+2}) ----------------------------------------------


def curve_class(gen: Generator, n: int) -> galois.FieldArray:
    """Mod-2 class of the curve of a twist generator."""
    if gen.family is Family.DELTA and 1 <= gen.index <= n - 1:
        return block_vector(gen.index, gen.index + 1, n)
    if gen.family is Family.EPS and 1 <= 2 * gen.index <= n:
        return block_vector(1, 2 * gen.index, n)
    raise Mod2Error(f"no mod-2 class for {gen} on N_{n}")


def swap(i: int, n: int) -> galois.FieldArray:
    """Exchange of x_i and x_{i+1}."""
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return GF2.Identity(n)[:, perm]


def rho(genus: int, gen: Generator) -> galois.FieldArray:
    """Action of a generator of M(N_g) on V.

    Raises:
        Mod2Error: For unsupported generators or odd genus
    """
    genus_to_r(genus)
    if gen.family is Family.U:
        if not 1 <= gen.index <= genus - 1:
            raise Mod2Error(f"no mod-2 action for {gen} on N_{genus}")
        return swap(gen.index, genus)
    return transvection(curve_class(gen, genus))


def rho_word(genus: int, word: Word) -> galois.FieldArray:
    result = GF2.Identity(genus)
    for gen, exp in word:
        step = rho(genus, gen)
        if exp < 0:
            step = np.linalg.inv(step)
        for _ in range(abs(exp)):
            result = result @ step
    return result


def epsilon_word(genus: int, word: Word) -> galois.FieldArray:
    """Sp(2r, 2)-component of the mod-2 action of a word.

    Raises:
        Mod2Error: For r < 2
    """
    r = genus_to_r(genus)
    if r < 2:
        raise Mod2Error(f"epsilon needs r >= 2, got r = {r}")
    return decompose(rho_word(genus, word)).R


# -- enumeration -----------------------------------------------------------


def span(vectors: list[galois.FieldArray], n: int) -> set[tuple[int, ...]]:
    found = {bits(GF2.Zeros(n))}
    for coeffs in itertools.product((0, 1), repeat=len(vectors)):
        total = GF2.Zeros(n)
        for c, v in zip(coeffs, vectors):
            if c:
                total = total + v
        found.add(bits(total))
    return found


def all_vectors(n: int) -> list[galois.FieldArray]:
    return [GF2(list(t)) for t in itertools.product((0, 1), repeat=n)]


def characteristic_vectors(r: int) -> list[tuple[int, ...]]:
    """Every u with <u, x> = <x, x> for all basis vectors x."""
    n = 2 * r + 2
    basis = [basis_vector(i, n) for i in range(1, n + 1)]
    return [bits(y) for y in all_vectors(n) if all(pairing(y, x) == pairing(x, x) for x in basis)]


def pairing_complement(r: int) -> set[tuple[int, ...]]:
    """{u : <u, c> = <u, d> = 0}."""
    return {bits(y) for y in all_vectors(2 * r + 2) if in_wsymp(y, r)}


def symplectic_group(r: int) -> list[galois.FieldArray]:
    """All of Sp(2r, 2) by exhaustive search (r <= 2)."""
    if r > 2:
        raise Mod2Error("exhaustive Sp(2r, 2) is limited to r <= 2")
    size = 2 * r
    found = []
    for entries in itertools.product((0, 1), repeat=size * size):
        R = GF2(np.array(entries).reshape(size, size))
        if is_symplectic(R, r):
            found.append(R)
    return found


def random_symplectic(r: int, rng: np.random.Generator, steps: int = 12) -> galois.FieldArray:
    """Product of random symplectic transvections."""
    omega = form_matrix(r)
    R = GF2.Identity(2 * r)
    for _ in range(steps):
        v = GF2(rng.integers(0, 2, size=2 * r))
        # x -> x + (v^t omega x) v
        R = (GF2.Identity(2 * r) + v[:, None] * (v @ omega)[None, :]) @ R
    return R


def random_wsymp(r: int, rng: np.random.Generator) -> galois.FieldArray:
    basis = special_vectors(r).symplectic_basis()
    total = GF2.Zeros(2 * r + 2)
    for v, c in zip(basis, rng.integers(0, 2, size=2 * r)):
        if c:
            total = total + v
    return total


def random_isov(r: int, rng: np.random.Generator) -> Decomposition:
    """A random triple (x, z, R)."""
    return Decomposition(x=int(rng.integers(0, 2)), z=random_wsymp(r, rng), R=random_symplectic(r, rng))


@dataclass(frozen=True)
class BruteForceResult:
    """Outcome of enumerating Iso(V) at r = 1."""

    order: int
    constructive_order: int
    matches_constructive: bool
    all_fix_d: bool

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "constructive_order": self.constructive_order,
            "matches_constructive": self.matches_constructive,
            "all_fix_d": self.all_fix_d,
        }


def brute_force_isov(r: int = 1, seed: Optional[int] = None) -> BruteForceResult:
    """Enumerate every 4x4 GF(2) matrix preserving the pairing and compare with B_{x,z} A_R.

    Raises:
        Mod2Error: For r != 1
    """
    if r != 1:
        raise Mod2Error("brute force enumeration is limited to r = 1")
    n = 2 * r + 2
    # every candidate matrix at once, entries in row-major bit order
    codes = np.arange(2 ** (n * n), dtype=np.uint32)
    shifts = np.arange(n * n, dtype=np.uint32)
    mats = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.int64).reshape(-1, n, n)
    gram = np.einsum("kji,kjl->kil", mats, mats) % 2
    isometries = mats[(gram == np.eye(n, dtype=np.int64)).all(axis=(1, 2))]
    d = np.ones(n, dtype=np.int64)
    fix_d = bool(((isometries @ d) % 2 == d).all())
    enumerated = {m.astype(np.uint8).tobytes() for m in isometries}

    constructive = set()
    for x in (0, 1):
        for z in span(special_vectors(r).symplectic_basis(), n):
            for R in symplectic_group(r):
                L = make_B(x, GF2(list(z)), r) @ make_A(R, r)
                constructive.add(np.asarray(L).astype(np.uint8).tobytes())
    logger.info("enumerated %d isometries, %d constructive", len(enumerated), len(constructive))
    return BruteForceResult(
        order=len(enumerated),
        constructive_order=len(constructive),
        matches_constructive=enumerated == constructive,
        all_fix_d=fix_d,
    )
