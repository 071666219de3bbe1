"""Exact matrix arithmetic over Z, Q, GF(2) and rational polynomial rings.

Wraps sympy's ``DomainMatrix`` so that every entry lives in an exact ring:

- ``Z`` and ``Q``: arbitrary-precision integers and rationals
- ``GF2``: bits
- ``PolyQ``: multivariate polynomials with rational coefficients
- ``FracQ``: rational functions, used when a derivation divides by a unit variable

Also provides the standard matrices (I, E_ij, V, V-hat, W, A_i, B_i, C_j, Omega)
and the commutant / intertwiner machinery.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Optional, Sequence

from sympy import Expr, Integer, Matrix, Poly, Rational, Symbol, expand, together
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")
_POLY_TEXT = re.compile(r"^[0-9a-zA-Z_+\-*/^ ().]*$")


class AlgebraError(Exception):
    """Raised when an exact-arithmetic operation is invalid."""

    pass


class Ring(Enum):
    """Coefficient ring of an exact matrix (value is the interchange tag)."""

    Z = "Z"
    Q = "Q"
    GF2 = "GF2"
    POLY = "PolyQ"
    FRAC = "FracQ"


def natural_key(name: str) -> tuple:
    """Sort key placing x2 before x10."""
    return tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name))


def sort_names(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=natural_key))


@lru_cache(maxsize=None)
def poly_domain(names: tuple[str, ...]) -> Any:
    """Polynomial ring QQ[names] in graded lexicographic order."""
    if not names:
        return QQ
    return QQ.poly_ring(*[Symbol(n) for n in names], order=grlex)


@lru_cache(maxsize=None)
def frac_domain(names: tuple[str, ...]) -> Any:
    """Field of rational functions QQ(names)."""
    if not names:
        return QQ
    return QQ.frac_field(*[Symbol(n) for n in names], order=grlex)


def ring_of(domain: Any) -> Ring:
    if domain.is_ZZ:
        return Ring.Z
    if domain.is_QQ:
        return Ring.Q
    if domain.is_FiniteField:
        return Ring.GF2
    if domain.is_PolynomialRing:
        return Ring.POLY
    if domain.is_FractionField:
        return Ring.FRAC
    raise AlgebraError(f"unsupported coefficient domain {domain}")


def domain_names(domain: Any) -> tuple[str, ...]:
    if domain.is_PolynomialRing or domain.is_FractionField:
        return tuple(str(s) for s in domain.symbols)
    return ()


def domain_for(ring: Ring, names: Iterable[str] = ()) -> Any:
    """Return the sympy domain for a ring tag and variable names."""
    names = sort_names(names)
    if ring is Ring.Z:
        return ZZ
    if ring is Ring.Q:
        return QQ
    if ring is Ring.GF2:
        return GF(2)
    if ring is Ring.POLY:
        return poly_domain(names)
    return frac_domain(names)


def unify_domains(first: Any, second: Any) -> Any:
    """Smallest domain containing both, keeping variable names sorted."""
    if first == second:
        return first
    rings = {ring_of(first), ring_of(second)}
    if Ring.GF2 in rings:
        raise AlgebraError("cannot mix GF(2) entries with characteristic-zero entries")
    names = sort_names(domain_names(first) + domain_names(second))
    if Ring.FRAC in rings:
        return frac_domain(names)
    if names:
        return poly_domain(names)
    return QQ


def parse_polynomial(text: str) -> Expr:
    """Parse a polynomial string such as ``"x^2 - 1/2*y"`` into a sympy expression.

    Args:
        text: Expression over identifiers matching [a-zA-Z][a-zA-Z0-9_]*

    Returns:
        The expanded sympy expression

    Raises:
        AlgebraError: If the text contains anything besides the polynomial grammar
    """
    if not _POLY_TEXT.match(text) or not text.strip():
        raise AlgebraError(f"invalid polynomial text: {text!r}")
    local = {name: Symbol(name) for name in IDENTIFIER.findall(text)}
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict=local,
            transformations=standard_transformations,
        )
    except (SyntaxError, TypeError, ValueError) as e:
        raise AlgebraError(f"invalid polynomial text: {text!r}") from e
    return expand(expr)


def format_scalar(value: Expr) -> Any:
    """Interchange form of a scalar: int, "p/q", or a polynomial string."""
    if isinstance(value, Integer):
        return int(value)
    if isinstance(value, Rational):
        return f"{value.p}/{value.q}"
    return str(value).replace("**", "^")


def _to_expr(value: Any) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        return Integer(int(value))
    if isinstance(value, int):
        return Integer(value)
    if isinstance(value, str):
        return parse_polynomial(value)
    return Rational(value)


def _is_polynomial_entry(expr: Expr, symbols: Sequence[Symbol]) -> bool:
    return bool(expr.is_polynomial(*symbols))


class ExactMatrix:
    """Immutable matrix with entries in one exact ring.

    Arithmetic between matrices over different rings promotes both operands to
    the smallest common ring (Z into Q into PolyQ into FracQ). GF(2) never mixes
    with the other rings.
    """

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix):
        ring_of(dm.domain)
        self._dm = dm.to_dense()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Any]],
        ring: Ring = Ring.Z,
        names: Iterable[str] = (),
    ) -> "ExactMatrix":
        """Build a matrix from nested rows of ints, Fractions, strings or sympy values.

        Args:
            rows: Row-major entries
            ring: Target ring
            names: Variable names for PolyQ / FracQ (inferred from entries if empty)

        Raises:
            AlgebraError: On ragged rows or entries outside the ring
        """
        exprs = [[_to_expr(v) for v in row] for row in rows]
        if ring in (Ring.POLY, Ring.FRAC):
            found = {str(s) for row in exprs for e in row for s in e.free_symbols}
            names = sort_names(set(names) | found)
        return cls._from_exprs(exprs, domain_for(ring, names))

    @classmethod
    def from_exprs(cls, rows: Sequence[Sequence[Any]], ring: Optional[Ring] = None) -> "ExactMatrix":
        """Build a matrix from expressions, inferring the smallest ring when none is given."""
        exprs = [[_to_expr(v) for v in row] for row in rows]
        if ring is not None:
            return cls.from_rows(exprs, ring)
        names = sort_names(str(s) for row in exprs for e in row for s in e.free_symbols)
        if names:
            symbols = [Symbol(n) for n in names]
            if all(_is_polynomial_entry(e, symbols) for row in exprs for e in row):
                return cls._from_exprs(exprs, poly_domain(names))
            return cls._from_exprs(exprs, frac_domain(names))
        if all(e.is_integer for row in exprs for e in row):
            return cls._from_exprs(exprs, ZZ)
        return cls._from_exprs(exprs, QQ)

    @classmethod
    def _from_exprs(cls, exprs: list[list[Expr]], domain: Any) -> "ExactMatrix":
        if not exprs or not exprs[0]:
            raise AlgebraError("matrix must have at least one row and one column")
        width = len(exprs[0])
        if any(len(row) != width for row in exprs):
            raise AlgebraError("ragged rows")
        try:
            elements = [[domain.from_sympy(e) for e in row] for row in exprs]
        except CoercionFailed as e:
            raise AlgebraError(f"entry not representable over {domain}: {e}") from e
        return cls(DomainMatrix(elements, (len(exprs), width), domain))

    @classmethod
    def from_elements(cls, elements: Sequence[Sequence[Any]], domain: Any) -> "ExactMatrix":
        """Build from raw domain elements (no conversion)."""
        rows = [list(r) for r in elements]
        return cls(DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), domain))

    @classmethod
    def identity(cls, m: int, ring: Ring = Ring.Z) -> "ExactMatrix":
        if m < 1:
            raise AlgebraError(f"identity size must be positive, got {m}")
        return cls(DomainMatrix.eye(m, domain_for(ring)))

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Ring = Ring.Z) -> "ExactMatrix":
        if rows < 1 or cols < 1:
            raise AlgebraError(f"matrix shape must be positive, got {rows}x{cols}")
        return cls(DomainMatrix.zeros((rows, cols), domain_for(ring)))

    # -- introspection ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def domain(self) -> Any:
        return self._dm.domain

    @property
    def ring(self) -> Ring:
        return ring_of(self._dm.domain)

    @property
    def variables(self) -> tuple[str, ...]:
        """Variable names of the coefficient ring (not only those that occur)."""
        return domain_names(self._dm.domain)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    def element(self, i: int, j: int) -> Any:
        """Raw domain element at 0-based (i, j)."""
        return self._dm[i, j].element

    def entry(self, i: int, j: int) -> Expr:
        """Entry at 0-based (i, j) as a sympy expression."""
        return self.domain.to_sympy(self.element(i, j))

    def to_lists(self) -> list[list[Expr]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def to_sympy(self) -> Matrix:
        return Matrix(self.to_lists())

    def free_symbols(self) -> tuple[str, ...]:
        """Names of variables that actually occur in some entry."""
        found = {str(s) for row in self.to_lists() for e in row for s in e.free_symbols}
        return sort_names(found)

    # -- conversion ---------------------------------------------------------

    def convert_to(self, domain: Any) -> "ExactMatrix":
        """Convert every entry to ``domain``.

        Raises:
            AlgebraError: If some entry has no image in the target domain
        """
        source = self.domain
        if source == domain:
            return self
        try:
            if ring_of(source) in (Ring.Z, Ring.Q) and ring_of(domain) in (Ring.Z, Ring.Q, Ring.GF2):
                return ExactMatrix(self._dm.convert_to(domain))
            elements = [
                [domain.from_sympy(source.to_sympy(self.element(i, j))) for j in range(self.cols)]
                for i in range(self.rows)
            ]
        except CoercionFailed as e:
            raise AlgebraError(f"cannot convert matrix over {source} to {domain}") from e
        return ExactMatrix.from_elements(elements, domain)

    def to_ring(self, ring: Ring, names: Iterable[str] = ()) -> "ExactMatrix":
        return self.convert_to(domain_for(ring, tuple(names) or self.variables))

    def _unified(self, other: "ExactMatrix") -> tuple[DomainMatrix, DomainMatrix]:
        domain = unify_domains(self.domain, other.domain)
        return self.convert_to(domain)._dm, other.convert_to(domain)._dm

    # -- arithmetic ---------------------------------------------------------

    def _require_same_shape(self, other: "ExactMatrix", op: str) -> None:
        if self.shape != other.shape:
            raise AlgebraError(f"dimension mismatch for {op}: {self.shape} vs {other.shape}")

    def _require_square(self, op: str) -> None:
        if not self.is_square:
            raise AlgebraError(f"{op} requires a square matrix, got {self.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_shape(other, "add")
        a, b = self._unified(other)
        return ExactMatrix(a + b)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_shape(other, "sub")
        a, b = self._unified(other)
        return ExactMatrix(a - b)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self._dm)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise AlgebraError(f"dimension mismatch for mul: {self.shape} @ {other.shape}")
        a, b = self._unified(other)
        return ExactMatrix(a * b)

    def scale(self, value: Any) -> "ExactMatrix":
        """Multiply every entry by a scalar (int, rational, or polynomial)."""
        scalar = ExactMatrix.from_exprs([[value]])
        domain = unify_domains(self.domain, scalar.domain)
        element = scalar.convert_to(domain).element(0, 0)
        return ExactMatrix(self.convert_to(domain)._dm * element)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self._dm.transpose())

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __pow__(self, k: int) -> "ExactMatrix":
        self._require_square("pow")
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix(DomainMatrix.eye(self.rows, self.domain))
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det_element(self) -> Any:
        self._require_square("det")
        return self._dm.det()

    def det(self) -> Expr:
        """Determinant as a sympy expression."""
        return self.domain.to_sympy(self.det_element())

    def charpoly_coeffs(self) -> list[Any]:
        """Coefficients [1, c_1, ..., c_n] of det(tI - M) as domain elements."""
        self._require_square("char_poly")
        return list(self._dm.charpoly())

    def char_poly(self, variable: str = "t") -> Poly:
        """Monic characteristic polynomial det(tI - M) in ``variable``."""
        coeffs = [self.domain.to_sympy(c) for c in self.charpoly_coeffs()]
        return Poly(coeffs, Symbol(variable))

    def evaluate_polynomial(self, coeffs: Sequence[Any]) -> "ExactMatrix":
        """Horner evaluation of c_0 M^n + c_1 M^(n-1) + ... + c_n I (coefficients in this domain)."""
        self._require_square("evaluate_polynomial")
        eye = DomainMatrix.eye(self.rows, self.domain)
        acc = DomainMatrix.zeros(self.shape, self.domain)
        for c in coeffs:
            acc = acc * self._dm + eye * c
        return ExactMatrix(acc)

    def inverse(self) -> "ExactMatrix":
        """Exact inverse over the matrix's own ring.

        Raises:
            AlgebraError: If the matrix is not square or its determinant is not a unit
        """
        self._require_square("inverse")
        domain = self.domain
        ring = self.ring
        try:
            if ring is Ring.Z:
                return ExactMatrix(self._dm.convert_to(QQ).inv().convert_to(ZZ))
            if domain.is_Field:
                return ExactMatrix(self._dm.inv())
        except (DMNonInvertibleMatrixError, ZeroDivisionError, CoercionFailed) as e:
            raise AlgebraError(f"matrix is not invertible over {ring.value}") from e
        return self._polynomial_inverse()

    def _polynomial_inverse(self) -> "ExactMatrix":
        coeffs = self.charpoly_coeffs()
        last = coeffs[-1]
        # det = (-1)^n c_n must be a nonzero constant
        if not last or not last.is_ground:
            raise AlgebraError("matrix is not invertible over PolyQ (determinant is not a unit)")
        domain = self.domain
        adj = self.evaluate_polynomial(coeffs[:-1])._dm
        factor = domain.convert(-QQ.one / last.LC)
        return ExactMatrix(adj * factor)

    def is_invertible(self) -> bool:
        try:
            self.inverse()
        except AlgebraError:
            return False
        return True

    # -- predicates ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if ring_of(self.domain) is Ring.GF2 or ring_of(other.domain) is Ring.GF2:
            if self.domain != other.domain:
                return False
            return bool((self._dm - other._dm).is_zero_matrix)
        a, b = self._unified(other)
        return bool((a - b).is_zero_matrix)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return bool(self._dm.is_zero_matrix)

    def is_identity(self) -> bool:
        return self.is_square and self == ExactMatrix(DomainMatrix.eye(self.rows, self.domain))

    def commutes_with(self, other: "ExactMatrix") -> bool:
        return self @ other == other @ self

    # -- structure ----------------------------------------------------------

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        """Entries at the given 0-based row and column indices."""
        return ExactMatrix.from_elements(
            [[self.element(i, j) for j in cols] for i in rows], self.domain
        )

    def replace(self, updates: dict[tuple[int, int], Any]) -> "ExactMatrix":
        """Copy with some 0-based entries replaced by new values."""
        rows = self.to_lists()
        for (i, j), value in updates.items():
            rows[i][j] = _to_expr(value)
        return ExactMatrix.from_exprs(rows)

    def subs(self, mapping: dict[str, Any]) -> "ExactMatrix":
        """Substitute variables simultaneously; the result lands in the smallest ring."""
        if not mapping:
            return self
        table = {Symbol(k): _to_expr(v) for k, v in mapping.items()}
        rows = [[e.subs(table, simultaneous=True) for e in row] for row in self.to_lists()]
        if self.ring is Ring.FRAC:
            rows = [[together(e) for e in row] for row in rows]
        else:
            rows = [[expand(e) for e in row] for row in rows]
        return ExactMatrix.from_exprs(rows)

    # -- interchange --------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        """Interchange document with ring tag, shape and nested entries."""
        ring = self.ring
        if ring is Ring.GF2:
            entries = [[int(self.element(i, j)) % 2 for j in range(self.cols)] for i in range(self.rows)]
        elif ring in (Ring.Z, Ring.Q):
            entries = [[format_scalar(e) for e in row] for row in self.to_lists()]
        else:
            entries = [[str(e).replace("**", "^") for e in row] for row in self.to_lists()]
        return {"ring": ring.value, "rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ExactMatrix":
        """Parse the interchange document produced by ``to_dict``.

        Raises:
            AlgebraError: On unknown ring tags or shape mismatches
        """
        try:
            ring = Ring(payload["ring"])
            rows, cols = int(payload["rows"]), int(payload["cols"])
            entries = payload["entries"]
        except (KeyError, ValueError, TypeError) as e:
            raise AlgebraError(f"invalid matrix document: {e}") from e
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise AlgebraError(f"entries do not match declared shape {rows}x{cols}")
        return cls.from_rows(entries, ring)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.to_lists())
        return f"ExactMatrix({self.ring.value}, [{body}])"


# -- standard matrices (1-based indices as in the literature) --------------


def identity(m: int) -> ExactMatrix:
    return ExactMatrix.identity(m)


def elementary(i: int, j: int, m: int) -> ExactMatrix:
    """The m x m matrix with a single 1 at (i, j)."""
    if not (1 <= i <= m and 1 <= j <= m):
        raise AlgebraError(f"elementary index ({i}, {j}) out of range for size {m}")
    rows = [[0] * m for _ in range(m)]
    rows[i - 1][j - 1] = 1
    return ExactMatrix.from_rows(rows)


def V() -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 1], [0, 1]])


def V_hat() -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 0], [-1, 1]])


def W() -> ExactMatrix:
    return ExactMatrix.from_rows(
        [[1, 1, 0, -1], [0, 1, 0, 0], [0, -1, 1, 1], [0, 0, 0, 1]]
    )


def block_diag(*blocks: ExactMatrix) -> ExactMatrix:
    """Block-diagonal matrix; all blocks are promoted to a common ring."""
    if not blocks:
        raise AlgebraError("block_diag needs at least one block")
    domain = blocks[0].domain
    for b in blocks[1:]:
        domain = unify_domains(domain, b.domain)
    size = sum(b.rows for b in blocks)
    width = sum(b.cols for b in blocks)
    rows = [[domain.zero] * width for _ in range(size)]
    r = c = 0
    for b in blocks:
        converted = b.convert_to(domain)
        for i in range(b.rows):
            for j in range(b.cols):
                rows[r + i][c + j] = converted.element(i, j)
        r += b.rows
        c += b.cols
    return ExactMatrix.from_elements(rows, domain)


def _embed(block: ExactMatrix, before: int, m: int) -> ExactMatrix:
    after = m - before - block.rows
    parts = []
    if before:
        parts.append(identity(before))
    parts.append(block)
    if after:
        parts.append(identity(after))
    return block_diag(*parts)


def A(i: int, m: int) -> ExactMatrix:
    """diag(I_{2i-2}, V, I_{m-2i})."""
    if not 2 <= 2 * i <= m:
        raise AlgebraError(f"A_{i} undefined in dimension {m}")
    return _embed(V(), 2 * i - 2, m)


def B(i: int, m: int) -> ExactMatrix:
    """diag(I_{2i-2}, V-hat, I_{m-2i})."""
    if not 2 <= 2 * i <= m:
        raise AlgebraError(f"B_{i} undefined in dimension {m}")
    return _embed(V_hat(), 2 * i - 2, m)


def C(j: int, m: int) -> ExactMatrix:
    """diag(I_{2j-2}, W, I_{m-2j-2})."""
    if not 2 <= 2 * j <= m - 2:
        raise AlgebraError(f"C_{j} undefined in dimension {m}")
    return _embed(W(), 2 * j - 2, m)


def omega(m: int) -> ExactMatrix:
    """Block form (0, I; -I, 0) of size m."""
    if m < 2 or m % 2:
        raise AlgebraError(f"omega needs an even positive size, got {m}")
    h = m // 2
    rows = [[0] * m for _ in range(m)]
    for k in range(h):
        rows[k][h + k] = 1
        rows[h + k][k] = -1
    return ExactMatrix.from_rows(rows)


STANDARD_KINDS = ("identity", "elementary", "V", "Vhat", "W", "A", "B", "C", "block_diag", "omega")


def build_standard(kind: str, *args: Any) -> ExactMatrix:
    """Dispatch to the standard matrix builders by name.

    Raises:
        AlgebraError: For unknown kinds or out-of-range indices
    """
    builders = {
        "identity": identity,
        "elementary": elementary,
        "V": V,
        "Vhat": V_hat,
        "W": W,
        "A": A,
        "B": B,
        "C": C,
        "block_diag": block_diag,
        "omega": omega,
    }
    if kind not in builders:
        raise AlgebraError(f"unknown standard matrix kind {kind!r}")
    try:
        return builders[kind](*args)
    except TypeError as e:
        raise AlgebraError(f"bad arguments for {kind}: {e}") from e


MATRIX_OPS = ("mul", "add", "sub", "transpose", "pow", "inverse", "det", "char_poly")


def matrix_op(op: str, *operands: Any) -> Any:
    """Apply a named operation to exact matrices."""
    if op == "mul":
        result = operands[0]
        for m in operands[1:]:
            result = result @ m
        return result
    if op == "add":
        return operands[0] + operands[1]
    if op == "sub":
        return operands[0] - operands[1]
    if op == "transpose":
        return operands[0].transpose()
    if op == "pow":
        return operands[0] ** int(operands[1])
    if op == "inverse":
        return operands[0].inverse()
    if op == "det":
        return operands[0].det()
    if op == "char_poly":
        return operands[0].char_poly()
    raise AlgebraError(f"unknown matrix operation {op!r}")


# -- linear solves ---------------------------------------------------------


def nullspace_rows(system: DomainMatrix) -> list[list[Any]]:
    """Basis of the right kernel of a matrix over a field, read off its RREF."""
    rref, pivots = system.rref()
    n = system.shape[1]
    domain = system.domain
    pivots = list(pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = [domain.zero] * n
        vec[free] = domain.one
        for row, p in enumerate(pivots):
            vec[p] = -rref[row, free].element
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class CommutantBasis:
    """Basis of the space of matrices M with M X = Y M for given pairs (X, Y)."""

    dimension: int
    basis: tuple[ExactMatrix, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def generic(self, prefix: str = "c") -> ExactMatrix:
        """The generic member c1*B1 + ... + cN*BN over PolyQ."""
        if not self.basis:
            return ExactMatrix.zeros(self.dimension, self.dimension, Ring.Q)
        total = None
        for k, b in enumerate(self.basis, start=1):
            term = b.scale(Symbol(f"{prefix}{k}"))
            total = term if total is None else total + term
        assert total is not None
        return total

    def combination(self, coefficients: Sequence[Any]) -> ExactMatrix:
        total = ExactMatrix.zeros(self.dimension, self.dimension, Ring.Q)
        for c, b in zip(coefficients, self.basis):
            total = total + b.scale(c)
        return total

    def invertible_member(self) -> Optional[ExactMatrix]:
        """An invertible integer combination of the basis, or None if every member is singular.

        det of the generic member has degree at most m in each coefficient, so
        when it is not identically zero it is nonzero somewhere on {1, ..., m+1}^N.

        Raises:
            AlgebraError: If the grid search finds no invertible member
        """
        if not self.basis:
            return None
        names = [Symbol(f"c{k}") for k in range(1, self.rank + 1)]
        det = Poly(self.generic("c").det(), *names)
        if det.is_zero:
            return None
        for point in itertools.product(range(1, self.dimension + 2), repeat=self.rank):
            if det.eval(dict(zip(names, point))) != 0:
                return self.combination(point)
        raise AlgebraError("no invertible member found on the search grid")

    def contains(self, candidate: ExactMatrix) -> bool:
        """True iff the candidate lies in the span (exact rank test)."""
        if not self.basis:
            return candidate.is_zero()
        columns = [_flatten(b) for b in self.basis]
        before = _rank(columns)
        return _rank(columns + [_flatten(candidate)]) == before


def _flatten(m: ExactMatrix) -> list[Any]:
    q = m.convert_to(QQ)
    return [q.element(i, j) for i in range(q.rows) for j in range(q.cols)]


def _rank(vectors: list[list[Any]]) -> int:
    dm = DomainMatrix([list(v) for v in vectors], (len(vectors), len(vectors[0])), QQ)
    return len(dm.rref()[1])


def intertwiner_basis(pairs: Sequence[tuple[ExactMatrix, ExactMatrix]], m: int) -> CommutantBasis:
    """Rational basis of {M : M X = Y M for every pair (X, Y)}.

    Args:
        pairs: Matrix pairs (X, Y), each of size m, over Z or Q
        m: Ambient dimension

    Raises:
        AlgebraError: On dimension mismatch
    """
    equations: list[list[Any]] = []
    for x, y in pairs:
        if x.shape != (m, m) or y.shape != (m, m):
            raise AlgebraError(f"intertwiner inputs must be {m}x{m}")
        xq, yq = x.convert_to(QQ), y.convert_to(QQ)
        for i in range(m):
            for j in range(m):
                # (M X)_ij - (Y M)_ij in the unknowns M_kl, index k*m + l
                row = [QQ.zero] * (m * m)
                for k in range(m):
                    row[i * m + k] += xq.element(k, j)
                    row[k * m + j] -= yq.element(i, k)
                if any(row):
                    equations.append(row)
    if equations:
        kernel = nullspace_rows(DomainMatrix(equations, (len(equations), m * m), QQ))
    else:
        kernel = [[QQ.one if c == k else QQ.zero for c in range(m * m)] for k in range(m * m)]
    basis = tuple(
        ExactMatrix.from_elements([vec[r * m:(r + 1) * m] for r in range(m)], QQ) for vec in kernel
    )
    logger.debug("intertwiner space of %d pairs in dim %d has dimension %d", len(pairs), m, len(basis))
    return CommutantBasis(dimension=m, basis=basis)


def commutant_basis(mats: Sequence[ExactMatrix], m: int) -> CommutantBasis:
    """Rational basis of {M : M X = X M for every X in mats}."""
    return intertwiner_basis([(x, x) for x in mats], m)


def scalar_window_check(M: ExactMatrix, k: int, l: int) -> bool:
    """True iff rows/cols 2k-1..2l of M form a scalar block decoupled from the rest.

    Raises:
        AlgebraError: If not 1 <= k <= l <= m/2
    """
    if not M.is_square:
        raise AlgebraError("window check needs a square matrix")
    m = M.rows
    if not 1 <= k <= l <= m // 2:
        raise AlgebraError(f"invalid window k={k}, l={l} for size {m}")
    window = range(2 * k - 2, 2 * l)
    lam = M.element(window[0], window[0])
    for i in range(m):
        for j in range(m):
            inside_i, inside_j = i in window, j in window
            value = M.element(i, j)
            if inside_i and inside_j:
                expected = lam if i == j else M.domain.zero
                if value != expected:
                    return False
            elif inside_i != inside_j and value:
                return False
    return True
