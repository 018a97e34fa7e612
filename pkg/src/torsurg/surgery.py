"""Manifold models and (p/q)-torus surgery at the level of invariants and pi_1."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from math import gcd
from typing import Any, Iterable, Mapping

from torsurg.fpgroup import Presentation, Word, WordParseError
from torsurg.linalg import HYPERBOLIC, IntMatrix, direct_sum, signature


class SurgeryError(ValueError):
    """A surgery request that the model cannot honour."""


class ModelFormatError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class Framing(Enum):
    LAGRANGIAN = "lagrangian"
    NULL_HOMOLOGOUS = "null_homologous"


@dataclass(frozen=True)
class TorusRecord:
    name: str
    meridian: Word
    surgery_curve: Word
    essential: bool = True
    curve_primitive: bool = True
    framing: Framing = Framing.LAGRANGIAN
    form_slot: int | None = None
    dual_name: str | None = None

    def __post_init__(self):
        if not self.meridian or not self.surgery_curve:
            raise ValueError(f"torus {self.name}: meridian and surgery curve must be nonempty")


@dataclass(frozen=True)
class Coefficient:
    p: int
    q: int = 1

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise SurgeryError(f"coefficient {self.p}/{self.q} is not in lowest terms")

    def __str__(self) -> str:
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


@dataclass(frozen=True)
class SurgerySpec:
    """Torus name -> coefficient.  Tori not mentioned are left untouched."""

    entries: tuple[tuple[str, Coefficient], ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.entries]
        if len(set(names)) != len(names):
            raise SurgeryError(f"torus listed twice in {names}")
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e[0])))

    @classmethod
    def of(cls, mapping: Mapping[str, Coefficient | int | tuple[int, int]]) -> SurgerySpec:
        out = []
        for name, c in mapping.items():
            if isinstance(c, int):
                c = Coefficient(c)
            elif isinstance(c, tuple):
                c = Coefficient(*c)
            out.append((name, c))
        return cls(tuple(out))

    @classmethod
    def uniform(cls, names: Iterable[str], p: int, q: int = 1) -> SurgerySpec:
        return cls(tuple((n, Coefficient(p, q)) for n in names))

    def as_dict(self) -> dict[str, Coefficient]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FormBlock:
    """Summand of the intersection form.  ``slot`` fixes its place in the sum."""

    slot: int
    label: str
    matrix: IntMatrix


@dataclass(frozen=True)
class CoreRecord:
    """A surgered torus, kept so that the surgery can be undone."""

    torus: TorusRecord
    coefficient: Coefficient
    block: FormBlock | None
    note: str = ""

    @property
    def name(self) -> str:
        return self.torus.name

    @property
    def null_homologous(self) -> bool:
        return self.coefficient.q == 1


@dataclass(frozen=True)
class SpinFlags:
    manifold_nonspin: bool = True
    universal_cover_nonspin: bool = True


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    euler_char: int
    signature: int
    b1: int
    b2: int
    complement: Presentation
    all_tori: tuple[TorusRecord, ...]
    block_form: tuple[FormBlock, ...]
    spin_flags: SpinFlags = field(default_factory=SpinFlags)
    cores: tuple[CoreRecord, ...] = ()

    def __post_init__(self):
        names = [t.name for t in self.all_tori]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate torus names {names}")
        slots = [b.slot for b in self.block_form]
        if len(set(slots)) != len(slots):
            raise ValueError(f"duplicate block slots {slots}")
        object.__setattr__(self, "block_form", tuple(sorted(self.block_form, key=lambda b: b.slot)))
        declared = set(self.complement.generators)
        for t in self.all_tori:
            extra = (t.meridian.generators() | t.surgery_curve.generators()) - declared
            if extra:
                raise ValueError(f"torus {t.name} uses undeclared generators {sorted(extra)}")
        cored = {c.name for c in self.cores}
        for t in self.all_tori:
            if t.name not in cored and t.form_slot is not None and t.form_slot not in slots:
                raise ValueError(f"torus {t.name}: form slot {t.form_slot} is not a block")
        if not cored <= set(names):
            raise ValueError(f"cores {sorted(cored - set(names))} are not tori of the model")
        order = {n: i for i, n in enumerate(names)}
        object.__setattr__(self, "cores", tuple(sorted(self.cores, key=lambda c: order[c.name])))

    @property
    def tori(self) -> tuple[TorusRecord, ...]:
        """Tori still available for surgery."""
        cored = {c.name for c in self.cores}
        return tuple(t for t in self.all_tori if t.name not in cored)

    @property
    def core_tori_nullhomologous(self) -> frozenset[str]:
        return frozenset(c.name for c in self.cores if c.null_homologous)

    def torus(self, name: str) -> TorusRecord:
        for t in self.all_tori:
            if t.name == name:
                return t
        raise SurgeryError(f"unknown torus {name!r}")

    def form(self) -> IntMatrix:
        return direct_sum(b.matrix for b in self.block_form)

    def invariants(self) -> tuple[int, int, int, int]:
        return self.euler_char, self.signature, self.b1, self.b2

    def pi1(self) -> Presentation:
        return closed_pi1(self, SurgerySpec())


def _surgery_relator(t: TorusRecord, c: Coefficient) -> Word:
    return t.meridian**c.p * t.surgery_curve**c.q


def closed_pi1(m: ManifoldModel, s: SurgerySpec) -> Presentation:
    """pi_1 after performing ``s`` on top of the surgeries already recorded in ``m``.

    Surgered tori contribute ``meridian^p curve^q``; untouched tori are glued
    back trivially and contribute their meridian.
    """
    wanted = s.as_dict()
    available = {t.name for t in m.tori}
    for name in wanted:
        m.torus(name)
        if name not in available:
            raise SurgeryError(f"torus {name} has already been surgered")
    relators = list(m.complement.relators)
    relators += [_surgery_relator(c.torus, c.coefficient) for c in m.cores]
    for t in m.tori:
        relators.append(_surgery_relator(t, wanted[t.name]) if t.name in wanted else t.meridian)
    return Presentation(m.complement.generators, tuple(relators))


def apply_surgeries(m: ManifoldModel, s: SurgerySpec) -> ManifoldModel:
    if not len(s):
        return m
    closed_pi1(m, s)  # name checks
    wanted = s.as_dict()
    problems = []
    for t in m.tori:
        if t.name not in wanted:
            continue
        c = wanted[t.name]
        if not t.essential:
            problems.append(f"{t.name}: torus is not homologically essential")
        if not t.curve_primitive:
            problems.append(f"{t.name}: surgery curve is not primitive")
        if c.q == 0:
            problems.append(f"{t.name}: q = 0 leaves the manifold unchanged")
        if t.form_slot is None:
            problems.append(f"{t.name}: no hyperbolic summand recorded")
    if problems:
        raise SurgeryError("; ".join(problems))

    blocks = {b.slot: b for b in m.block_form}
    cores = list(m.cores)
    for t in m.tori:
        if t.name not in wanted:
            continue
        c = wanted[t.name]
        block = blocks.pop(t.form_slot)
        note = f"H_1 gains torsion of order {abs(c.q)}" if abs(c.q) > 1 else ""
        cores.append(CoreRecord(t, c, block, note))
    k = len(wanted)
    return replace(
        m,
        b1=m.b1 - k,
        b2=m.b2 - 2 * k,
        block_form=tuple(blocks.values()),
        cores=tuple(cores),
    )


def reverse_surgery(m_after: ManifoldModel, core_name: str, original: TorusRecord) -> ManifoldModel:
    """Undo the surgery on ``core_name`` (0-surgery on its core torus)."""
    core = next((c for c in m_after.cores if c.name == core_name), None)
    if core is None:
        raise SurgeryError(f"no surgered torus named {core_name!r}")
    if not core.null_homologous:
        raise SurgeryError(f"core of {core_name} is not recorded null-homologous")
    if original != core.torus:
        raise SurgeryError(f"torus record for {core_name} does not match the surgered one")
    blocks = m_after.block_form + ((core.block,) if core.block is not None else ())
    return replace(
        m_after,
        b1=m_after.b1 + 1,
        b2=m_after.b2 + 2,
        block_form=blocks,
        cores=tuple(c for c in m_after.cores if c.name != core_name),
    )


def stabilize(m: ManifoldModel) -> ManifoldModel:
    """Connected sum with S^2 x S^2."""
    used = [b.slot for b in m.block_form] + [c.block.slot for c in m.cores if c.block is not None]
    slot = max(used, default=-1) + 1
    return replace(
        m,
        euler_char=m.euler_char + 2,
        b2=m.b2 + 2,
        block_form=m.block_form + (FormBlock(slot, "S2xS2", HYPERBOLIC),),
    )


def betti_check(m: ManifoldModel) -> bool:
    if m.euler_char != 2 - 2 * m.b1 + m.b2:
        return False
    if sum(b.matrix.rows for b in m.block_form) != m.b2:
        return False
    q = m.form()
    try:
        return signature(q) == m.signature
    except ValueError:
        return False


# -- JSON ------------------------------------------------------------------


def _word(text: Any, path: str) -> Word:
    if not isinstance(text, str):
        raise ModelFormatError("expected a word string", path)
    try:
        return Word.parse(text)
    except WordParseError as e:
        raise ModelFormatError(str(e), path) from None


def _get(d: Mapping, key: str, kind, path: str, default=...):
    if key not in d:
        if default is ...:
            raise ModelFormatError(f"missing field {key!r}", path)
        return default
    v = d[key]
    if kind is int and isinstance(v, bool) or not isinstance(v, kind):
        raise ModelFormatError(f"field {key!r} should be {getattr(kind, '__name__', kind)}", path)
    return v


def _matrix(rows: Any, path: str) -> IntMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ModelFormatError("matrix must be a list of integer rows", path)
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise ModelFormatError("matrix entries must be integers", path)
    try:
        return IntMatrix.from_rows(rows)
    except ValueError as e:
        raise ModelFormatError(str(e), path) from None


def torus_to_json(t: TorusRecord) -> dict:
    return {
        "name": t.name,
        "meridian": str(t.meridian),
        "surgery_curve": str(t.surgery_curve),
        "essential": t.essential,
        "curve_primitive": t.curve_primitive,
        "framing": t.framing.value,
        "form_slot": t.form_slot,
        "dual_name": t.dual_name,
    }


def torus_from_json(d: Any, path: str) -> TorusRecord:
    if not isinstance(d, dict):
        raise ModelFormatError("torus must be an object", path)
    try:
        framing = Framing(_get(d, "framing", str, path, "lagrangian"))
    except ValueError:
        raise ModelFormatError(f"unknown framing {d['framing']!r}", path) from None
    slot = d.get("form_slot")
    if slot is not None and (not isinstance(slot, int) or isinstance(slot, bool)):
        raise ModelFormatError("form_slot should be an integer or null", path)
    try:
        return TorusRecord(
            name=_get(d, "name", str, path),
            meridian=_word(d.get("meridian"), f"{path}.meridian"),
            surgery_curve=_word(d.get("surgery_curve"), f"{path}.surgery_curve"),
            essential=_get(d, "essential", bool, path, True),
            curve_primitive=_get(d, "curve_primitive", bool, path, True),
            framing=framing,
            form_slot=slot,
            dual_name=d.get("dual_name"),
        )
    except ValueError as e:
        raise ModelFormatError(str(e), path) from None


def _block_to_json(b: FormBlock) -> dict:
    return {"slot": b.slot, "label": b.label, "matrix": b.matrix.to_rows()}


def _block_from_json(d: Any, path: str) -> FormBlock:
    if not isinstance(d, dict):
        raise ModelFormatError("block must be an object", path)
    return FormBlock(
        _get(d, "slot", int, path), _get(d, "label", str, path, ""), _matrix(d.get("matrix"), f"{path}.matrix")
    )


def model_to_json(m: ManifoldModel) -> dict:
    return {
        "name": m.name,
        "euler_char": m.euler_char,
        "signature": m.signature,
        "b1": m.b1,
        "b2": m.b2,
        "complement": {
            "generators": list(m.complement.generators),
            "relators": [str(r) for r in m.complement.relators],
        },
        "tori": [torus_to_json(t) for t in m.all_tori],
        "block_form": [_block_to_json(b) for b in m.block_form],
        "spin_flags": {
            "manifold_nonspin": m.spin_flags.manifold_nonspin,
            "universal_cover_nonspin": m.spin_flags.universal_cover_nonspin,
        },
        "cores": [
            {
                "torus": c.name,
                "p": c.coefficient.p,
                "q": c.coefficient.q,
                "block": None if c.block is None else _block_to_json(c.block),
                "note": c.note,
            }
            for c in m.cores
        ],
        "core_tori_nullhomologous": sorted(m.core_tori_nullhomologous),
    }


def model_from_json(d: Any) -> ManifoldModel:
    if not isinstance(d, dict):
        raise ModelFormatError("model must be a JSON object")
    comp = _get(d, "complement", dict, "complement")
    gens = _get(comp, "generators", list, "complement")
    if not all(isinstance(g, str) for g in gens):
        raise ModelFormatError("generators must be strings", "complement.generators")
    rels = [_word(r, f"complement.relators[{i}]") for i, r in enumerate(_get(comp, "relators", list, "complement"))]
    try:
        complement = Presentation(tuple(gens), tuple(rels))
    except ValueError as e:
        raise ModelFormatError(str(e), "complement") from None
    tori = tuple(torus_from_json(t, f"tori[{i}]") for i, t in enumerate(_get(d, "tori", list, "")))
    by_name = {t.name: t for t in tori}
    blocks = tuple(_block_from_json(b, f"block_form[{i}]") for i, b in enumerate(_get(d, "block_form", list, "")))
    spin = _get(d, "spin_flags", dict, "", {})
    cores = []
    for i, c in enumerate(_get(d, "cores", list, "", [])):
        path = f"cores[{i}]"
        if not isinstance(c, dict):
            raise ModelFormatError("core must be an object", path)
        name = _get(c, "torus", str, path)
        if name not in by_name:
            raise ModelFormatError(f"unknown torus {name!r}", path)
        try:
            coeff = Coefficient(_get(c, "p", int, path), _get(c, "q", int, path, 1))
        except SurgeryError as e:
            raise ModelFormatError(str(e), path) from None
        block = c.get("block")
        block = None if block is None else _block_from_json(block, f"{path}.block")
        cores.append(CoreRecord(by_name[name], coeff, block, _get(c, "note", str, path, "")))
    try:
        m = ManifoldModel(
            name=_get(d, "name", str, "", "model"),
            euler_char=_get(d, "euler_char", int, ""),
            signature=_get(d, "signature", int, ""),
            b1=_get(d, "b1", int, ""),
            b2=_get(d, "b2", int, ""),
            complement=complement,
            all_tori=tori,
            block_form=blocks,
            spin_flags=SpinFlags(
                _get(spin, "manifold_nonspin", bool, "spin_flags", True),
                _get(spin, "universal_cover_nonspin", bool, "spin_flags", True),
            ),
            cores=tuple(cores),
        )
    except ValueError as e:
        raise ModelFormatError(str(e)) from None
    listed = d.get("core_tori_nullhomologous")
    if listed is not None and sorted(listed) != sorted(m.core_tori_nullhomologous):
        raise ModelFormatError("does not match the recorded cores", "core_tori_nullhomologous")
    return m
