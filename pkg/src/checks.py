"""Check suites behind each CLI command.

A builder takes a ``CommandRequest`` and returns a ``Suite``: the checks the
runner executes plus a summary payload (the table, word image or scenario
conclusion the command was asked for). Builders raise the library's own
exceptions for bad input; checks only report pass, fail or skip.
"""

import logging
from dataclasses import dataclass, field
from functools import cache, lru_cache
from typing import Any, Callable, Optional

import numpy as np

from src.algebra import ExactMatrix
from src.config import Settings
from src.homology import (
    GeneratorTable,
    block_decompose,
    conjugacy_obstruction,
    derive_psi,
    homology_maps,
    involution_checks,
    lifted_generators,
    orientable_relations,
    rep_table,
)
from src.mod2 import (
    GF2,
    brute_force_isov,
    decompose,
    epsilon_word,
    genus_to_r,
    is_symplectic,
    make_A,
    make_B,
    random_isov,
    rho,
    rho_word,
    same,
    special_vectors,
    to_exact,
)
from src.models import ResultStatus
from src.presentation import (
    X,
    Y,
    N4Reading,
    Relation,
    Word,
    abelianize,
    d,
    dihedral_eval,
    e,
    format_word,
    n4_extra_relations,
    nonorientable,
    parse_word,
    relations_for,
    special_word,
    u,
)
from src.scenarios import run_scenario

logger = logging.getLogger(__name__)

COMMANDS = (
    "verify-relations",
    "show-generator",
    "derive-psi",
    "conjugacy",
    "epsilon",
    "decompose-isov",
    "brute-isov",
    "scenario",
    "abelianize",
    "dihedral",
    "eval",
)

RANDOM_WORD_LENGTH = 4
DIHEDRAL_POWER_LIMIT = 10_000


class UsageError(Exception):
    """Raised when a command is missing an option it needs."""

    pass


@dataclass(frozen=True)
class CheckOutcome:
    """What a single check observed."""

    status: ResultStatus
    detail: str = ""
    witness: Optional[Any] = None

    @classmethod
    def of(cls, passed: bool, detail: str = "", witness: Optional[Any] = None) -> "CheckOutcome":
        """Pass or fail; the witness is only kept for failures."""
        if passed:
            return cls(ResultStatus.PASS, detail)
        return cls(ResultStatus.FAIL, detail, witness)

    @classmethod
    def skip(cls, detail: str) -> "CheckOutcome":
        return cls(ResultStatus.SKIP, detail)


@dataclass(frozen=True)
class Check:
    """A named, deferred check."""

    check_id: str
    description: str
    run: Callable[[], CheckOutcome]


@dataclass
class Suite:
    checks: list[Check]
    summary: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CommandRequest:
    """Parsed options shared by every command."""

    command: str
    genus: Optional[int] = None
    rep: Optional[str] = None
    word: Optional[str] = None
    scenario: Optional[str] = None
    rank: Optional[int] = None
    settings: Settings = field(default_factory=Settings)


def _require(value: Any, flag: str, command: str) -> Any:
    if value is None:
        raise UsageError(f"{command} needs {flag}")
    return value


def _pair(lhs: ExactMatrix, rhs: ExactMatrix) -> dict[str, Any]:
    return {"lhs": lhs.to_dict(), "rhs": rhs.to_dict()}


def _rng(settings: Settings) -> np.random.Generator:
    return np.random.default_rng(settings.random_seed)


# -- genus-four relator reading ----------------------------------------------


def _reading_accepted(reading: N4Reading) -> bool:
    """Both the dihedral quotient and the mod-2 action kill the extra genus-four relators."""
    identity = GF2.Identity(4)
    for rel in n4_extra_relations(reading):
        if not dihedral_eval(rel.relator).is_identity:
            return False
        if not same(rho_word(4, rel.relator), identity):
            return False
    return True


@lru_cache(maxsize=None)
def n4_acceptance() -> dict[N4Reading, bool]:
    return {reading: _reading_accepted(reading) for reading in N4Reading}


def select_n4_reading(mode: str) -> N4Reading:
    """Resolve ``auto`` to the single reading that both genus-four quotients accept."""
    if mode != "auto":
        return N4Reading(mode)
    accepted = [reading for reading, ok in n4_acceptance().items() if ok]
    if len(accepted) != 1:
        logger.warning("%d genus-four readings accepted; using the corrected one", len(accepted))
        return N4Reading.CORRECTED
    logger.debug("selected the %s genus-four reading", accepted[0].value)
    return accepted[0]


# -- representation suites ---------------------------------------------------


def _relation_check(table: GeneratorTable, rel: Relation) -> Check:
    def run() -> CheckOutcome:
        missing = sorted(str(gen) for gen in rel.generators() if gen not in table)
        if missing:
            return CheckOutcome.skip(f"no image for {', '.join(missing)}")
        lhs, rhs = table.eval_word(rel.lhs), table.eval_word(rel.rhs)
        return CheckOutcome.of(lhs == rhs, witness=_pair(lhs, rhs))

    return Check(rel.id, f"{format_word(rel.lhs)} = {format_word(rel.rhs)}", run)


def _s_order_check(table: GeneratorTable) -> Check:
    genus = table.genus
    power = genus if genus % 2 == 0 else 2 * genus

    def run() -> CheckOutcome:
        image = table.eval_word(special_word("s", genus)) ** power
        return CheckOutcome.of(image.is_identity(), witness=image.to_dict())

    return Check("s-order", f"{table.name}(s)^{power} = I", run)


def _distinct_twists_check(table: GeneratorTable) -> Check:
    genus = table.genus
    r = (genus - 1) // 2

    def run() -> CheckOutcome:
        if (table[d(1)] ** 2).is_identity():
            return CheckOutcome.of(False, "the image of d1 squares to I", table[d(1)].to_dict())
        for i in range(1, r + 1):
            for j in range(2 * i + 1, genus):
                if table[e(i)] == table[d(j)]:
                    return CheckOutcome.of(False, f"e{i} and d{j} have equal images", table[e(i)].to_dict())
        return CheckOutcome.of(True)

    return Check("twist-images-distinct", "images of e_i and d_j differ for 2i+1 <= j, d1^2 is not I", run)


def build_verify_relations(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    table = rep_table(request.rep or "psi1", genus)
    if table.name == "Phi":
        checks = [_relation_check(table, rel) for rel in orientable_relations(genus - 1)]
    else:
        reading = select_n4_reading(request.settings.n4_reading)
        relations = relations_for(genus, reading=reading, include_shift=True)
        checks = [_relation_check(table, rel) for rel in relations]
        checks += [_s_order_check(table), _distinct_twists_check(table)]
    return Suite(checks, {"rep": table.name, "genus": genus, "dimension": table.dimension})


def _unimodular_check(label: str, matrix: ExactMatrix) -> Check:
    def run() -> CheckOutcome:
        det = matrix.det()
        return CheckOutcome.of(det in (1, -1), f"det = {det}", matrix.to_dict())

    return Check(f"det[{label}]", f"the image of {label} is invertible over Z", run)


def build_show_generator(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    table = rep_table(request.rep or "psi1", genus)
    checks = [_unimodular_check(str(gen), image) for gen, image in table.images.items()]
    return Suite(checks, table.to_dict())


def build_eval(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    text = _require(request.word, "--word", request.command)
    table = rep_table(request.rep or "psi1", genus)
    word = parse_word(text, table.context)
    image = table.eval_word(word)
    summary = {"rep": table.name, "genus": genus, "word": format_word(word), "matrix": image.to_dict()}
    return Suite([_unimodular_check(format_word(word), image)], summary)


def _random_twist_words(genus: int, settings: Settings) -> list[Word]:
    rng = _rng(settings)
    gens = lifted_generators(genus)
    ctx = nonorientable(genus)
    words = []
    for _ in range(settings.sample_words):
        picks = rng.integers(0, len(gens), size=RANDOM_WORD_LENGTH)
        signs = rng.choice([-1, 1], size=RANDOM_WORD_LENGTH)
        words.append(Word.of([(gens[int(k)], int(s)) for k, s in zip(picks, signs)], ctx))
    return words


def build_derive_psi(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    table = rep_table(request.rep or "psi1", genus)
    if table.name == "Phi":
        raise UsageError("derive-psi needs one of the Psi representations")
    which = 1 if table.name.startswith("Psi1") else 2
    maps = homology_maps(genus)
    derived = cache(lambda: derive_psi(genus, which))
    involution = cache(lambda: involution_checks(genus))
    ctx = nonorientable(genus)

    def matches(gen):
        def run() -> CheckOutcome:
            ours, theirs = derived()[gen], table[gen]
            return CheckOutcome.of(ours == theirs, witness={"derived": ours.to_dict(), "table": theirs.to_dict()})

        return run

    def block_shape(word: Word) -> CheckOutcome:
        blocks = block_decompose(genus, word, maps)
        return CheckOutcome.of(
            blocks.is_upper_triangular and blocks.dual_blocks,
            f"word {format_word(word)}",
            blocks.source.to_dict(),
        )

    def random_words() -> CheckOutcome:
        words = _random_twist_words(genus, request.settings)
        for word in words:
            outcome = block_shape(word)
            if outcome.status is ResultStatus.FAIL:
                return outcome
        return CheckOutcome.of(True, f"{len(words)} words")

    def involution_property(key: str):
        return lambda: CheckOutcome.of(involution()[key])

    checks = []
    for gen in lifted_generators(genus):
        checks.append(Check(f"derived[{gen}]", f"derived image of {gen} equals the {table.name} table", matches(gen)))
        word = Word.from_generators(ctx, gen)
        checks.append(
            Check(f"blocks[{gen}]", f"lift of {gen} is block triangular with dual blocks",
                  lambda word=word: block_shape(word))
        )
    checks.append(Check("blocks[random]", "random twist words keep the block shape", random_words))
    for key in ("involution", "anti_symplectic", "block_shape", "commutes_with_twists"):
        checks.append(Check(f"involution[{key}]", f"covering involution: {key.replace('_', ' ')}",
                            involution_property(key)))
    checks.append(Check("kernel", "q vanishes on the K basis", lambda: CheckOutcome.of(maps.kernel_check())))
    checks.append(
        Check("symplectic-basis", "<e_i, f_j> = delta_ij and <e, e> = <f, f> = 0",
              lambda: CheckOutcome.of(maps.symplectic_check(), witness=maps.pairing_table()))
    )
    return Suite(checks, {"rep": f"Psi{which}", "genus": genus, "generators": len(lifted_generators(genus))})


def build_conjugacy(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    report = conjugacy_obstruction(genus)
    expected = 1 if genus % 2 else 2
    checks = [
        Check("not-conjugate", f"{report.first} and {report.second} are not conjugate",
              lambda: CheckOutcome.of(not report.conjugate, witness=report.to_dict())),
        Check("twist-intertwiners", f"the shared twists have a {expected}-dimensional intertwiner space",
              lambda: CheckOutcome.of(report.twist_dimension == expected, f"dimension {report.twist_dimension}")),
    ]
    return Suite(checks, report.to_dict())


# -- mod-2 suites ------------------------------------------------------------


def _gf2_summary(matrix) -> dict[str, Any]:
    return to_exact(matrix).to_dict()


def build_epsilon(request: CommandRequest) -> Suite:
    genus = request.genus or 8
    r = genus_to_r(genus)
    ctx = nonorientable(genus)
    # validates r >= 2
    epsilon_word(genus, Word.empty(ctx))
    eye = GF2.Identity(2 * r)
    reading = select_n4_reading(request.settings.n4_reading)

    def kills(rel: Relation):
        def run() -> CheckOutcome:
            image = epsilon_word(genus, rel.relator)
            return CheckOutcome.of(same(image, eye), witness=_gf2_summary(image))

        return run

    checks = [
        Check(f"kills[{rel.id}]", f"epsilon kills {format_word(rel.relator)}", kills(rel))
        for rel in relations_for(genus, reading=reading)
    ]
    last = genus - 1
    for label, word in (
        ("kernel[du]", Word.of([(d(last), 1), (u(last), 1)], ctx)),
        ("kernel[de]", Word.of([(d(last), 1), (e(r), -1)], ctx)),
    ):
        checks.append(Check(label, f"epsilon({format_word(word)}) = I", kills(Relation(label, (), word, Word.empty(ctx)))))

    def factorization() -> CheckOutcome:
        sv = special_vectors(r)
        lhs = rho(genus, d(last))
        rhs = make_B(1, sv.v[r - 1], r) @ rho(genus, e(r))
        return CheckOutcome.of(same(lhs, rhs), witness={"lhs": _gf2_summary(lhs), "rhs": _gf2_summary(rhs)})

    checks.append(Check("factorization", f"rho(d{last}) = B(1, v{r}) rho(e{r})", factorization))
    summary: dict[str, Any] = {"genus": genus, "r": r}
    if request.word is not None:
        word = parse_word(request.word, ctx)
        image = epsilon_word(genus, word)
        summary.update(word=format_word(word), matrix=_gf2_summary(image))
        checks.append(
            Check("word-symplectic", f"epsilon({format_word(word)}) is symplectic",
                  lambda: CheckOutcome.of(is_symplectic(image, r), witness=_gf2_summary(image)))
        )
    return Suite(checks, summary)


def build_decompose_isov(request: CommandRequest) -> Suite:
    genus = request.genus or 8
    r = genus_to_r(genus)
    settings = request.settings

    def round_trip() -> CheckOutcome:
        rng = _rng(settings)
        for _ in range(settings.sample_words):
            triple = random_isov(r, rng)
            back = decompose(triple.rebuild(r))
            if back.x != triple.x or not same(back.z, triple.z) or not same(back.R, triple.R):
                return CheckOutcome.of(False, "decomposition differs", triple.to_dict())
        return CheckOutcome.of(True, f"{settings.sample_words} triples")

    def conjugation() -> CheckOutcome:
        rng = _rng(settings)
        for _ in range(settings.sample_words):
            triple = random_isov(r, rng)
            A_R = make_A(triple.R, r)
            lhs = A_R @ make_B(triple.x, triple.z, r) @ np.linalg.inv(A_R)
            rhs = make_B(triple.x, A_R @ triple.z, r)
            if not same(lhs, rhs):
                return CheckOutcome.of(False, "conjugate differs", triple.to_dict())
        return CheckOutcome.of(True, f"{settings.sample_words} triples")

    checks = [
        Check("round-trip", "B(x, z) A(R) decomposes back to (x, z, R)", round_trip),
        Check("conjugation", "A(R) B(x, z) A(R)^-1 = B(x, R z)", conjugation),
    ]
    summary: dict[str, Any] = {"genus": genus, "r": r}
    if request.word is not None:
        word = parse_word(request.word, nonorientable(genus))
        L = rho_word(genus, word)
        parts = decompose(L)
        summary.update(word=format_word(word), matrix=_gf2_summary(L), decomposition=parts.to_dict())
        checks.append(
            Check("word-rebuild", f"the decomposition of {format_word(word)} rebuilds it",
                  lambda: CheckOutcome.of(same(parts.rebuild(r), L), witness=parts.to_dict()))
        )
    return Suite(checks, summary)


def build_brute_isov(request: CommandRequest) -> Suite:
    result = brute_force_isov(1)
    checks = [
        Check("order", "Iso(V) has 48 elements at r = 1",
              lambda: CheckOutcome.of(result.order == 48, f"order {result.order}")),
        Check("constructive-order", "the products B(x, z) A(R) are 48 distinct elements",
              lambda: CheckOutcome.of(result.constructive_order == 48, f"order {result.constructive_order}")),
        Check("matches-constructive", "enumeration equals the constructive set",
              lambda: CheckOutcome.of(result.matches_constructive)),
        Check("fixes-d", "every isometry fixes d", lambda: CheckOutcome.of(result.all_fix_d)),
    ]
    return Suite(checks, result.to_dict())


# -- presentation suites -----------------------------------------------------


def build_abelianize(request: CommandRequest) -> Suite:
    genus = _require(request.genus, "--genus", request.command)
    text = _require(request.word, "--word", request.command)
    word = parse_word(text, nonorientable(genus))
    reading = select_n4_reading(request.settings.n4_reading)
    cls = abelianize(word)

    def kills(rel: Relation):
        def run() -> CheckOutcome:
            image = abelianize(rel.relator)
            return CheckOutcome.of(image.is_zero, str(image), image.to_dict())

        return run

    checks = [
        Check(f"kills[{rel.id}]", f"{rel.id} abelianizes to 0", kills(rel))
        for rel in relations_for(genus, reading=reading)
    ]
    summary = {"genus": genus, "word": format_word(word), "class": str(cls), "coordinates": cls.to_dict()}
    if genus == 4:
        summary["n4_reading"] = reading.value
    return Suite(checks, summary)


def build_dihedral(request: CommandRequest) -> Suite:
    text = _require(request.word, "--word", request.command)
    word = parse_word(text, nonorientable(request.genus or 4))
    image = dihedral_eval(word)
    reading = select_n4_reading(request.settings.n4_reading)

    def kills(rel: Relation):
        def run() -> CheckOutcome:
            value = dihedral_eval(rel.relator)
            return CheckOutcome.of(value.is_identity, str(value))

        return run

    def unique_reading() -> CheckOutcome:
        accepted = sorted(candidate.value for candidate, ok in n4_acceptance().items() if ok)
        return CheckOutcome.of(len(accepted) == 1, f"accepted: {', '.join(accepted) or 'none'}")

    def infinite_order() -> CheckOutcome:
        xy = X * Y
        hit = next((n for n in range(1, DIHEDRAL_POWER_LIMIT + 1) if (xy ** n).is_identity), None)
        return CheckOutcome.of(hit is None, f"(xy)^{hit} = 1" if hit else "")

    checks = [
        Check(f"kills[{rel.id}]", f"{rel.id} maps to 1 in D_inf", kills(rel))
        for rel in relations_for(4, reading=reading)
    ]
    checks.append(Check("n4-reading", "exactly one reading of the genus-four relator holds", unique_reading))
    checks.append(Check("xy-order", f"(xy)^n != 1 for n <= {DIHEDRAL_POWER_LIMIT}", infinite_order))
    order = image.order
    summary = {
        "word": format_word(word),
        "image": str(image),
        "order": "inf" if order is None else order,
        "n4_reading": reading.value,
    }
    return Suite(checks, summary)


# -- scenarios ---------------------------------------------------------------


def build_scenario(request: CommandRequest) -> Suite:
    scenario_id = _require(request.scenario, "a scenario id", request.command)
    report = run_scenario(scenario_id, request.rank, request.settings.branch_limit)
    checks = []
    for k, step in enumerate(report.steps, start=1):
        outcome = CheckOutcome.of(
            step.passed,
            f"expected {step.expected}; observed {step.observed}",
            step.to_dict(),
        )
        checks.append(Check(f"step-{k:03d}", step.description, lambda outcome=outcome: outcome))
    summary = {"scenario": report.scenario, "rank": report.rank, "conclusion": report.conclusion}
    return Suite(checks, summary)


CHECK_SUITES: dict[str, Callable[[CommandRequest], Suite]] = {
    "verify-relations": build_verify_relations,
    "show-generator": build_show_generator,
    "derive-psi": build_derive_psi,
    "conjugacy": build_conjugacy,
    "epsilon": build_epsilon,
    "decompose-isov": build_decompose_isov,
    "brute-isov": build_brute_isov,
    "scenario": build_scenario,
    "abelianize": build_abelianize,
    "dihedral": build_dihedral,
    "eval": build_eval,
}


def build_suite(request: CommandRequest) -> Suite:
    """Dispatch to the builder of ``request.command``.

    Raises:
        UsageError: For an unknown command or a missing option
    """
    try:
        builder = CHECK_SUITES[request.command]
    except KeyError:
        raise UsageError(f"unknown command {request.command!r}") from None
    suite = builder(request)
    logger.debug("%s: %d checks", request.command, len(suite.checks))
    return suite
