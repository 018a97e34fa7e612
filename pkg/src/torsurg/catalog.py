"""Built-in six-torus model, raw-material table, prototype labels and sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from torsurg.fpgroup import (
    FiniteGroup,
    FreeAbelian,
    GroupClass,
    NonAbelian,
    Presentation,
    Undetermined,
    Word,
    classify,
)
from torsurg.groupring import (
    HermitianForm,
    Pi2Descriptor,
    extend_from_integers,
    is_extended,
    pi2_structure,
)
from torsurg.linalg import (
    HYPERBOLIC,
    IntMatrix,
    Parity,
    direct_sum,
    inertia,
    is_unimodular,
    parity,
    signature,
)
from torsurg.surgery import (
    FormBlock,
    ManifoldModel,
    SpinFlags,
    SurgerySpec,
    TorusRecord,
    apply_surgeries,
    closed_pi1,
)

GENERATORS = ("x", "y", "a1", "a2", "b1", "b2")

COMPLEMENT_RELATORS = (
    "[x,a1]",
    "[x,a2]",
    "[y,a1]",
    "[y,a2]",
    "[x,y]",
    "[b1,b2]",
    "[a1,b1]",
    "[a1,b2]",
    "[a2,b2]",
)

# name, meridian, surgery curve, dual torus
TORUS_TABLE = (
    ("T1", "[b1^-1,y^-1]", "x", "R1"),
    ("T2", "[x^-1,b1]", "a1", "R2"),
    ("T3", "[b2^-1,y^-1]", "a2", "R3"),
    ("T4", "[x^-1,b2]", "y", "R4"),
    ("T1'", "[a2^-1,a1^-1]", "b1", "R1'"),
    ("T2'", "[b1,a2]", "b2", "R2'"),
)

TORUS_NAMES = tuple(row[0] for row in TORUS_TABLE)

BASE_BLOCK = IntMatrix.from_rows(
    [
        [-1, 0, 0, 1],
        [0, -1, 0, 1],
        [0, 0, 0, 1],
        [1, 1, 1, 0],
    ]
)

# Q_p: base block plus one hyperbolic summand
Q_P = direct_sum([BASE_BLOCK, HYPERBOLIC])


def _subsets(*groups: str) -> list[tuple[str, ...]]:
    order = {n: i for i, n in enumerate(TORUS_NAMES)}
    return [tuple(sorted(g.split(), key=order.__getitem__)) for g in groups]


# sub-collections whose (-1)-surgery is expected to give a free abelian group
EXPECTED_FREE_ABELIAN: dict[int, list[tuple[str, ...]]] = {
    0: [()],
    3: _subsets(
        "T1 T2 T4", "T1 T2 T1'", "T1 T3 T4", "T2 T4 T2'",
        "T2 T1' T2'", "T3 T4 T1'", "T3 T4 T2'", "T3 T1' T2'",
    ),
    4: _subsets(
        "T1 T2 T3 T4", "T1 T2 T4 T1'", "T1 T2 T1' T2'",
        "T1 T3 T4 T1'", "T1 T3 T4 T2'", "T1 T3 T1' T2'",
        "T2 T3 T1' T2'", "T2 T4 T1' T2'", "T3 T4 T1' T2'",
    ),
    5: list(combinations(TORUS_NAMES, 5)),
}

# sizes with a stated variant clause (one surgery at p instead of -1)
VARIANT_SIZES = (4, 5)


def expected_verdict(subset: Sequence[str]) -> int | None:
    """Expected free abelian rank, or ``None`` when a non-abelian group is expected."""
    subset = tuple(subset)
    if len(subset) == 6:
        return 0
    if len(subset) in (1, 2):
        return None
    return 6 - len(subset) if subset in EXPECTED_FREE_ABELIAN.get(len(subset), []) else None


def builtin_M() -> ManifoldModel:
    complement = Presentation(GENERATORS, tuple(Word.parse(r) for r in COMPLEMENT_RELATORS))
    tori = tuple(
        TorusRecord(name, Word.parse(mer), Word.parse(curve), form_slot=i + 1, dual_name=dual)
        for i, (name, mer, curve, dual) in enumerate(TORUS_TABLE)
    )
    blocks = (FormBlock(0, "H1 H2 H3 F", BASE_BLOCK),) + tuple(
        FormBlock(i + 1, f"{name} {dual}", HYPERBOLIC) for i, (name, _, _, dual) in enumerate(TORUS_TABLE)
    )
    return ManifoldModel(
        name="M",
        euler_char=6,
        signature=-2,
        b1=6,
        b2=16,
        complement=complement,
        all_tori=tori,
        block_form=blocks,
        spin_flags=SpinFlags(manifold_nonspin=True, universal_cover_nonspin=True),
    )


BUILTINS = {"M": builtin_M}


@dataclass(frozen=True)
class RawMaterial:
    k: int
    chi: int
    sigma: int
    surgeries_minus_one: tuple[int, ...]
    extra_surgeries: int
    description: str
    source_refs: str = "complement presentation not modeled"

    def surgeries_text(self) -> str:
        choices = " or ".join(str(n) for n in self.surgeries_minus_one)
        return f"({choices}) + {self.extra_surgeries}"


_TABLE2 = {
    2: RawMaterial(2, 5, -1, (4, 3), 1, "(T^4 # CP~2) #_S2 (T^2 x S2)"),
    3: RawMaterial(3, 6, -2, (4, 3), 1, "(T^4 #2 CP~2) #_S2 (T^2 x S2)"),
    4: RawMaterial(4, 7, -3, (2, 1), 1, "(T^4 # CP~2) #_S2 (T^4 #2 CP~2)"),
    5: RawMaterial(5, 8, -4, (2, 1), 1, "(T^2 x S^2 #4 CP~2) #_S2 (T^2 x S2)"),
}


def builtin_table2(k: int) -> RawMaterial:
    if k not in _TABLE2:
        raise ValueError(f"k must be one of 2, 3, 4, 5, got {k}")
    return _TABLE2[k]


class Tail(Enum):
    S1xS3 = "S1xS3"
    T2xS2 = "T2xS2"
    NONE = "none"


_TAIL_TEXT = {Tail.S1xS3: "(S^1 x S^3)", Tail.T2xS2: "(T^2 x S^2)"}


@dataclass(frozen=True)
class PrototypeLabel:
    n_pos: int
    n_neg: int
    tail: Tail = Tail.NONE

    @property
    def stable_range_gap(self) -> int:
        return self.n_pos + self.n_neg - abs(self.n_pos - self.n_neg)

    def __str__(self) -> str:
        parts = []
        if self.n_pos:
            parts.append(f"#{self.n_pos} CP^2")
        if self.n_neg:
            parts.append(f"#{self.n_neg} CP~2")
        if self.tail is not Tail.NONE:
            parts.append(f"# {_TAIL_TEXT[self.tail]}")
        return " ".join(parts) or "S^4"


class PrototypeError(ValueError):
    pass


def reduced_form(m: ManifoldModel, pi1_rank: int) -> IntMatrix:
    """Integer form on the classes that lift to the universal cover.

    Rank b2 when pi_1 = Z and rank chi when pi_1 = Z^2; in the second case
    trailing blocks are dropped, so chi must fall on a block boundary.
    """
    if pi1_rank == 1:
        return m.form()
    if pi1_rank != 2:
        raise PrototypeError(f"no reduced form for pi_1 of rank {pi1_rank}")
    kept, size = [], 0
    for b in m.block_form:
        if size >= m.euler_char:
            break
        kept.append(b.matrix)
        size += b.matrix.rows
    if size != m.euler_char:
        raise PrototypeError(f"chi = {m.euler_char} does not fall on a block boundary")
    return direct_sum(kept)


def prototype(m: ManifoldModel, pi1: GroupClass) -> PrototypeLabel:
    if not isinstance(pi1, FreeAbelian) or pi1.rank not in (1, 2):
        raise PrototypeError(f"prototype needs pi_1 = Z or Z^2, got {pi1}")
    if parity(m.form()) is not Parity.ODD:
        raise PrototypeError("intersection form is even")
    if not (m.spin_flags.manifold_nonspin and m.spin_flags.universal_cover_nonspin):
        raise PrototypeError("manifold or its universal cover is spin")
    q = reduced_form(m, pi1.rank)
    if is_extended(extend_from_integers(q, pi1.rank)) != q:
        raise PrototypeError("reduced equivariant form is not extended from the integers")
    sigma = signature(q)
    rank = q.rows
    if (rank + sigma) % 2:
        raise PrototypeError(f"rank {rank} and signature {sigma} have different parity")
    tail = Tail.S1xS3 if pi1.rank == 1 else Tail.T2xS2
    return PrototypeLabel((rank + sigma) // 2, (rank - sigma) // 2, tail)


def sw_family_value(p: int) -> int:
    """Seiberg-Witten value on the distinguished basic class of the p-th family member."""
    if p < 1:
        raise ValueError(f"family members are indexed by p >= 1, got {p}")
    return 1 + (p - 1)


SW_SYMPLECTIC_VALUE = 1


class KSign(Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"

    @classmethod
    def of(cls, value: int) -> KSign:
        return cls.NEGATIVE if value < 0 else cls.ZERO if value == 0 else cls.POSITIVE


NEG_INFINITY = -math.inf


def kodaira(chi: int, sigma: int, k_dot_omega: KSign, minimal: bool = True) -> float:
    """Symplectic Kodaira dimension of a minimal symplectic 4-manifold."""
    if not minimal:
        raise ValueError("the table applies to minimal models only")
    k2 = KSign.of(2 * chi + 3 * sigma)
    if k_dot_omega is KSign.NEGATIVE or k2 is KSign.NEGATIVE:
        return NEG_INFINITY
    if k_dot_omega is KSign.ZERO and k2 is KSign.ZERO:
        return 0
    if k_dot_omega is KSign.POSITIVE and k2 is KSign.ZERO:
        return 1
    if k_dot_omega is KSign.POSITIVE and k2 is KSign.POSITIVE:
        return 2
    raise ValueError(f"K.omega = 0 with K^2 = {2 * chi + 3 * sigma} > 0 is not a symplectic configuration")


def format_kodaira(value: float) -> str:
    return "-inf" if value == NEG_INFINITY else str(int(value))


def star_surface_genus(p: int, g: int) -> int:
    if p < 0 or g < 0:
        raise ValueError("p and g must be nonnegative")
    return 2 * p * g


# -- sub-collection sweeps -------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    subset: tuple[str, ...]
    p: int
    p_torus: str | None
    verdict: GroupClass

    @property
    def kind(self) -> str:
        return self.verdict.kind

    @property
    def rank(self) -> int | None:
        return getattr(self.verdict, "rank", None)

    @property
    def witness_group(self) -> str | None:
        return self.verdict.witness.target.name if isinstance(self.verdict, NonAbelian) else None

    def as_json(self) -> dict:
        out = {
            "subset": list(self.subset),
            "p": self.p,
            "p_torus": self.p_torus,
            "verdict": self.kind,
            "rank": self.rank,
            "witness_group": self.witness_group,
        }
        if isinstance(self.verdict, NonAbelian):
            out["witness"] = self.verdict.witness.as_names()
        if isinstance(self.verdict, Undetermined):
            out["torsion"] = list(self.verdict.torsion)
        return out


def sweep_spec(subset: Sequence[str], p: int, p_torus: str | None) -> SurgerySpec:
    return SurgerySpec.of({t: (p if t == p_torus else -1) for t in subset})


def reproduce_theorem41(
    p_values: Iterable[int] = (-1, 2, 3),
    sizes: Iterable[int] = (0, 1, 2, 3, 4, 5),
    catalog: Sequence[FiniteGroup] | None = None,
    model: ManifoldModel | None = None,
) -> list[SweepRecord]:
    """Classify pi_1 after surgery on every sub-collection of the given sizes.

    At ``p = -1`` every torus of the subset is surgered with coefficient -1.
    For other ``p`` (only sizes with a variant clause) one torus at a time
    carries ``p`` and the rest -1.
    """
    p_values = list(p_values)
    if not p_values:
        raise ValueError("no p values given")
    m = builtin_M() if model is None else model
    names = [t.name for t in m.tori]
    records = []
    for k in sorted(set(sizes)):
        for subset in combinations(names, k):
            for p in sorted(set(p_values)):
                if p == -1:
                    placements: list[str | None] = [None]
                elif k in VARIANT_SIZES:
                    placements = list(subset)
                else:
                    continue
                for where in placements:
                    pres = closed_pi1(m, sweep_spec(subset, p, where))
                    records.append(SweepRecord(subset, p, where, classify(pres, catalog)))
    return records


@dataclass(frozen=True)
class Comparison:
    mismatches: tuple[str, ...]
    undetermined: tuple[SweepRecord, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_with_expected(records: Iterable[SweepRecord]) -> Comparison:
    """Differences between sweep verdicts and the expected free abelian lists.

    A mismatch is a free abelian verdict where none is expected, a missing or
    wrong-rank free abelian verdict, or a non-abelian verdict on an expected
    free abelian sub-collection.  Undetermined verdicts on expected non-abelian
    sub-collections are not mismatches; they are returned separately.
    """
    bad, undetermined = [], []
    for r in records:
        want = expected_verdict(r.subset)
        where = f"{{{', '.join(r.subset)}}} p={r.p}" + (f" on {r.p_torus}" if r.p_torus else "")
        got = r.verdict
        if want is None:
            if isinstance(got, FreeAbelian):
                bad.append(f"- {where}: expected non-abelian, got Z^{got.rank}")
            elif isinstance(got, Undetermined):
                undetermined.append(r)
        elif not isinstance(got, FreeAbelian) or got.rank != want:
            shown = f"Z^{got.rank}" if isinstance(got, FreeAbelian) else got.kind
            if isinstance(got, NonAbelian):
                shown += f" ({got.witness.target.name} witness {got.witness.as_names()})"
            bad.append(f"- {where}: expected Z^{want}, got {shown}")
    return Comparison(tuple(bad), tuple(undetermined))


def _verdict_text(r: SweepRecord) -> str:
    v = r.verdict
    if isinstance(v, FreeAbelian):
        return f"Z^{v.rank}"
    if isinstance(v, NonAbelian):
        return "non-abelian"
    return "undetermined"


def sweep_table(records: Iterable[SweepRecord]) -> str:
    rows = [("size", "subset", "p", "p on", "pi_1", "witness")]
    for r in records:
        witness = ""
        if isinstance(r.verdict, NonAbelian):
            images = r.verdict.witness.as_names()
            shown = " ".join(f"{g}->{e}" for g, e in images.items() if e != r.verdict.witness.target.element_names[r.verdict.witness.target.identity])
            witness = f"{r.witness_group}: {shown}"
        elif isinstance(r.verdict, Undetermined):
            witness = f"H_1 rank {r.verdict.rank} torsion {list(r.verdict.torsion)}"
        rows.append(
            (
                str(len(r.subset)),
                "{" + ",".join(r.subset) + "}",
                str(r.p),
                r.p_torus or "-",
                _verdict_text(r),
                witness,
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# -- prototype pipeline ----------------------------------------------------


@dataclass(frozen=True)
class PrototypeReport:
    subset: tuple[str, ...]
    p: int
    p_torus: str
    model: ManifoldModel
    pi1: GroupClass
    form: IntMatrix
    b2_plus: int
    b2_minus: int
    reduced: IntMatrix
    equivariant: HermitianForm
    extended: bool
    unimodular: bool
    label: PrototypeLabel
    pi2: Pi2Descriptor
    sw_value: int | None
    kodaira: float | None

    def as_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "p": self.p,
            "p_torus": self.p_torus,
            "invariants": dict(zip(("chi", "sigma", "b1", "b2"), self.model.invariants())),
            "pi1": self.pi1.kind,
            "pi1_rank": getattr(self.pi1, "rank", None),
            "b2_plus": self.b2_plus,
            "b2_minus": self.b2_minus,
            "reduced_form": self.reduced.to_rows(),
            "extended_from_integers": self.extended,
            "unimodular": self.unimodular,
            "label": {"n_pos": self.label.n_pos, "n_neg": self.label.n_neg, "tail": self.label.tail.value},
            "label_text": str(self.label),
            "stable_range_gap": self.label.stable_range_gap,
            "pi2": str(self.pi2),
            "sw_value": self.sw_value,
            "kodaira": None if self.kodaira is None else format_kodaira(self.kodaira),
        }

    def render(self) -> str:
        chi, sigma, b1, b2 = self.model.invariants()
        lines = [
            f"surgeries   : {', '.join(t for t in self.subset if t != self.p_torus)} at -1, {self.p_torus} at {self.p}",
            f"invariants  : chi={chi} sigma={sigma} b1={b1} b2={b2}",
            f"pi_1        : Z^{self.pi1.rank}" if isinstance(self.pi1, FreeAbelian) else f"pi_1        : {self.pi1.kind}",
            f"b2+ / b2-   : {self.b2_plus} / {self.b2_minus}",
            f"reduced form: rank {self.reduced.rows}, extended={self.extended}, unimodular={self.unimodular}",
            f"pi_2        : {self.pi2}",
            f"prototype   : {self.label}",
            f"stable gap  : {self.label.stable_range_gap}",
            f"SW value    : {'-' if self.sw_value is None else self.sw_value}",
            f"Kodaira dim : {'-' if self.kodaira is None else format_kodaira(self.kodaira)}",
        ]
        return "\n".join(lines)


def pipeline_prototype(
    torus_names: Iterable[str],
    p: int,
    p_torus: str | None = None,
    catalog: Sequence[FiniteGroup] | None = None,
) -> PrototypeReport:
    """Surgery, pi_1, forms and prototype label for a 4- or 5-torus collection.

    All tori get -1 except ``p_torus`` (default: the last of the collection
    in table order), which gets ``p``.
    """
    m = builtin_M()
    order = {t.name: i for i, t in enumerate(m.all_tori)}
    names = set(torus_names)
    unknown = names - order.keys()
    if unknown:
        raise PrototypeError(f"unknown tori {sorted(unknown)}")
    subset = tuple(sorted(names, key=order.__getitem__))
    if len(subset) not in (4, 5):
        raise PrototypeError(f"prototype pipeline needs 4 or 5 tori, got {len(subset)}")
    p_torus = subset[-1] if p_torus is None else p_torus
    if p_torus not in names:
        raise PrototypeError(f"{p_torus} is not in the collection")
    after = apply_surgeries(m, sweep_spec(subset, p, p_torus))
    pi1 = classify(after.pi1(), catalog)
    expected_rank = 6 - len(subset)
    if not isinstance(pi1, FreeAbelian) or pi1.rank != expected_rank:
        raise PrototypeError(f"pi_1 is {pi1.kind}, not Z^{expected_rank}")
    form = after.form()
    pos, neg, _ = inertia(form)
    reduced = reduced_form(after, pi1.rank)
    eq = extend_from_integers(reduced, pi1.rank)
    extended = is_extended(eq) == reduced
    label = prototype(after, pi1)
    pi2 = pi2_structure(pi1.rank, after.b2, after.euler_char)
    sw = SW_SYMPLECTIC_VALUE if p == -1 else sw_family_value(p) if p >= 1 else None
    kod = kodaira(after.euler_char, after.signature, KSign.POSITIVE) if abs(p) == 1 else None
    return PrototypeReport(
        subset, p, p_torus, after, pi1, form, pos, neg, reduced, eq, extended,
        is_unimodular(reduced), label, pi2, sw, kod,
    )
