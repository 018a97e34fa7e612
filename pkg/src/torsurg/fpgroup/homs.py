"""Homomorphisms from finitely presented groups into finite groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from torsurg.fpgroup.finite import FiniteGroup
from torsurg.fpgroup.presentation import Presentation, simplify_with_images
from torsurg.fpgroup.words import Word

DEFAULT_BUDGET = 10**7


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Homomorphism:
    """Generator images of a homomorphism ``source -> target``."""

    source: Presentation
    target: FiniteGroup
    images: tuple[int, ...]

    def as_names(self) -> dict[str, str]:
        return {g: self.target.element_names[e] for g, e in zip(self.source.generators, self.images)}

    def __call__(self, w: Word) -> int:
        return evaluate(w, dict(zip(self.source.generators, self.images)), self.target)

    def image_is_nonabelian(self) -> bool:
        im = self.images
        return any(not self.target.commute(a, b) for i, a in enumerate(im) for b in im[i + 1 :])

    def kills_relators(self) -> bool:
        return all(self(r) == self.target.identity for r in self.source.relators)


def evaluate(w: Word, assignment: dict[str, int], group: FiniteGroup) -> int:
    x = group.identity
    for name, sign in w.letters:
        g = assignment[name]
        x = group.mul(x, g if sign == 1 else group.inv(g))
    return x


def iter_homs(p: Presentation, group: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Iterator[Homomorphism]:
    """All homomorphisms, in lexicographic order of the image tuple.

    Backtracks over generators in declaration order and checks each relator
    as soon as all its generators are assigned.
    """
    n = len(p.generators)
    if group.order**n > budget:
        raise EnumerationBudgetExceeded(
            f"{group.order}^{n} assignments exceed the budget of {budget}"
        )
    pos = {g: i for i, g in enumerate(p.generators)}
    checks: list[list[Word]] = [[] for _ in range(max(n, 1))]
    for r in p.relators:
        last = max(pos[g] for g in r.generators())
        checks[last].append(r)
    assignment: dict[str, int] = {}
    images = [0] * n

    def rec(k: int) -> Iterator[Homomorphism]:
        if k == n:
            yield Homomorphism(p, group, tuple(images))
            return
        g = p.generators[k]
        for e in range(group.order):
            assignment[g] = e
            images[k] = e
            if all(evaluate(r, assignment, group) == group.identity for r in checks[k]):
                yield from rec(k + 1)
        assignment.pop(g, None)

    if n == 0:
        yield Homomorphism(p, group, ())
        return
    yield from rec(0)


def enumerate_homs(
    p: Presentation, group: FiniteGroup, limit: int | None = None, budget: int = DEFAULT_BUDGET
) -> list[Homomorphism]:
    out = []
    for h in iter_homs(p, group, budget):
        out.append(h)
        if limit is not None and len(out) >= limit:
            break
    return out


def find_nonabelian_witness(
    p: Presentation, catalog: Sequence[FiniteGroup], budget: int = DEFAULT_BUDGET
) -> Homomorphism | None:
    """First homomorphism (catalog order, then lexicographic) with non-abelian image.

    The search runs on a simplified presentation and the hit is pulled back
    to the generators of ``p``; the returned map is re-checked against every
    relator of ``p``.
    """
    simp = simplify_with_images(p)
    q = simp.presentation
    for group in catalog:
        if not group.non_abelian:
            continue
        try:
            candidates = iter_homs(q, group, budget)
            for h in candidates:
                if not h.image_is_nonabelian():
                    continue
                assign = dict(zip(q.generators, h.images))
                lifted = tuple(evaluate(simp.images[g], assign, group) for g in p.generators)
                hom = Homomorphism(p, group, lifted)
                if not hom.kills_relators():
                    raise AssertionError("pulled-back homomorphism fails a relator")
                return hom
        except EnumerationBudgetExceeded:
            continue
    return None
