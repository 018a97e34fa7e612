"""Verdicts on finitely presented groups: free abelian, non-abelian, or unknown."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from torsurg.fpgroup.finite import FiniteGroup, default_catalog
from torsurg.fpgroup.homs import Homomorphism, find_nonabelian_witness
from torsurg.fpgroup.presentation import (
    Presentation,
    abelianization,
    is_commutator_complete,
    simplify,
)


@dataclass(frozen=True)
class FreeAbelian:
    rank: int
    certificate: Presentation

    kind = "free_abelian"


@dataclass(frozen=True)
class NonAbelian:
    witness: Homomorphism

    kind = "non_abelian"


@dataclass(frozen=True)
class Undetermined:
    rank: int
    torsion: list[int] = field(default_factory=list)
    simplified: Presentation | None = None

    kind = "undetermined"


GroupClass = Union[FreeAbelian, NonAbelian, Undetermined]


def classify(p: Presentation, catalog: Sequence[FiniteGroup] | None = None) -> GroupClass:
    catalog = default_catalog() if catalog is None else catalog
    q = simplify(p)
    r = len(q.generators)
    if (r <= 1 and not q.relators) or (r > 1 and is_commutator_complete(q)):
        rank, torsion = abelianization(p)
        if rank != r or torsion:
            raise AssertionError(f"certificate rank {r} disagrees with abelianization {(rank, torsion)}")
        return FreeAbelian(r, q)
    witness = find_nonabelian_witness(p, catalog)
    if witness is not None:
        return NonAbelian(witness)
    rank, torsion = abelianization(p)
    return Undetermined(rank, torsion, q)
