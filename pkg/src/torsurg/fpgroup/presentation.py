"""Finite presentations, Tietze simplification and abelianization."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from torsurg.fpgroup.words import (
    IDENTITY,
    Letter,
    Word,
    commutator,
    cyclic_key,
    free_reduce,
)
from torsurg.linalg import IntMatrix, smith_normal_form

log = logging.getLogger(__name__)

DEFAULT_MAX_PASSES = 64
MAX_CENTRAL_DEPTH = 3
TRANSPORT_MAX_LEN = 8


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        declared = set(gens)
        rels = []
        for r in self.relators:
            if not isinstance(r, Word):
                r = Word(r)
            extra = r.generators() - declared
            if extra:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(extra)}")
            r = r.cyclic_reduce()
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Iterable[str]) -> Presentation:
        return cls(tuple(generators), tuple(Word.parse(r) for r in relators))

    def relator_set(self) -> frozenset[tuple[Letter, ...]]:
        """Relators up to rotation and inversion."""
        return frozenset(cyclic_key(r) for r in self.relators)

    def same_relators(self, other: Presentation) -> bool:
        return set(self.generators) == set(other.generators) and self.relator_set() == other.relator_set()

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class SimplifyResult:
    presentation: Presentation
    # every original generator -> word in the surviving generators
    images: dict[str, Word] = field(default_factory=dict)
    passes: int = 0
    budget_exhausted: bool = False


def _commuting_pair(r: Word) -> frozenset[str] | None:
    """Return ``{g, h}`` when ``r`` is cyclically ``g^a h^b g^-a h^-b``."""
    if len(r) != 4:
        return None
    (g1, a1), (h1, b1), (g2, a2), (h2, b2) = r.letters
    if g1 == g2 and h1 == h2 and g1 != h1 and a2 == -a1 and b2 == -b1:
        return frozenset((g1, h1))
    return None


def raag_reduce(w: Word, commuting: set[frozenset[str]]) -> Word:
    """Reduce ``w`` modulo the relations "these pairs of generators commute".

    Letters slide past commuting letters to meet and cancel their inverses.
    The result contains no subword ``g^e u g^-e`` with ``u`` commuting with
    ``g``, so it is empty exactly when ``w`` is trivial in the right-angled
    Artin group defined by ``commuting``.
    """
    stack: list[Letter] = []
    for name, sign in w.letters:
        i = len(stack) - 1
        cancelled = False
        while i >= 0:
            other, osign = stack[i]
            if other == name:
                if osign == -sign:
                    del stack[i]
                    cancelled = True
                break
            if frozenset((name, other)) not in commuting:
                break
            i -= 1
        if not cancelled:
            stack.append((name, sign))
    return Word._raw(tuple(stack))


def raag_cyclic_reduce(w: Word, commuting: set[frozenset[str]]) -> Word:
    """Shortest conjugate of ``w`` reachable by rotating and re-reducing."""
    best = raag_reduce(w, commuting).cyclic_reduce()
    improved = True
    while improved and best:
        improved = False
        for rot in best.rotations():
            cand = raag_reduce(rot, commuting).cyclic_reduce()
            if len(cand) < len(best):
                best = cand
                improved = True
                break
    return best


def _canonical_order(relators: Iterable[Word]) -> list[Word]:
    seen: dict[tuple, Word] = {}
    for r in relators:
        k = cyclic_key(r)
        if k and k not in seen:
            seen[k] = r.cyclic_reduce()
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


def _definitions(relators: Sequence[Word]) -> Iterator[tuple[str, Word]]:
    """Yield ``(g, w)`` for every relator that rewrites as ``g = w`` with ``w`` free of ``g``."""
    for r in relators:
        counts: dict[str, int] = {}
        for n, _ in r.letters:
            counts[n] = counts.get(n, 0) + 1
        for g, c in counts.items():
            if c == 1:
                yield g, _solve_for(r, g)


def _solve_for(r: Word, g: str) -> Word:
    lt = r.letters
    k = next(i for i, (n, _) in enumerate(lt) if n == g)
    rot = lt[k:] + lt[:k]
    rest = Word._raw(rot[1:])
    # g^s * rest = 1  =>  g = rest^-s
    return ~rest if rot[0][1] == 1 else rest


def _derived_commutations(
    gens: Sequence[str], relators: Sequence[Word], commuting: set[frozenset[str]]
) -> list[tuple[str, str]]:
    """Pairs that must commute: ``g = w`` and ``h`` commutes with every letter of ``w``.

    Iterated to a fixed point; only pairs not already known are returned.
    """
    order = {g: i for i, g in enumerate(gens)}
    known = set(commuting)
    defs = list(_definitions(relators))
    found: list[tuple[str, str]] = []
    changed = True
    while changed:
        changed = False
        for g, w in defs:
            letters = w.generators()
            for h in gens:
                pair = frozenset((g, h))
                if h == g or pair in known:
                    continue
                if all(h == n or frozenset((h, n)) in known for n in letters):
                    known.add(pair)
                    found.append(tuple(sorted((g, h), key=order.__getitem__)))
                    changed = True
    return found


def _central_kernel(
    gens: Sequence[str], relators: Sequence[Word], commuting: set[frozenset[str]], depth: int
) -> list[tuple[str, str]]:
    """New commuting pairs from the central subgroup generated by central generators.

    With ``Z`` the generators commuting with all others, ``<Z>`` is central.
    A generator that becomes trivial in ``G / <Z>`` lies in ``<Z>`` and is
    therefore central as well.
    """
    central = [g for g in gens if all(h == g or frozenset((g, h)) in commuting for h in gens)]
    if not central or len(central) == len(gens):
        return []
    kill = {g: IDENTITY for g in central}
    quotient = Presentation(tuple(gens), tuple(r.substitute(kill) for r in relators))
    images = simplify_with_images(quotient, depth=depth + 1).images
    order = {g: i for i, g in enumerate(gens)}
    out = []
    for g in gens:
        if g in central or images[g]:
            continue
        for h in gens:
            if h != g and frozenset((g, h)) not in commuting:
                out.append(tuple(sorted((g, h), key=order.__getitem__)))
    return out


def _conjugation_actions(
    h: str, gens: Sequence[str], relators: Sequence[Word], commuting: set[frozenset[str]]
) -> tuple[dict[str, Word], dict[str, Word]]:
    """Partial maps ``g -> h^-1 g h`` and ``g -> h g h^-1`` read off the relators.

    A relator rotating to ``h^-1 g^e h W`` (``W`` free of ``h``) gives the
    first, ``h g^e h^-1 W`` the second.  Each map is then completed through
    the other where the inverse image contains ``g`` exactly once.
    """
    down: dict[str, Word] = {h: Word.gen(h)}
    up: dict[str, Word] = {h: Word.gen(h)}
    for g in gens:
        if frozenset((g, h)) in commuting:
            down[g] = up[g] = Word.gen(g)
    for r in relators:
        for w in (r, ~r):
            for rot in w.rotations():
                L = rot.letters
                if len(L) < 4 or L[0][0] != h or L[2] != (h, -L[0][1]) or L[1][0] == h:
                    continue
                rest = Word._raw(L[3:])
                if h in rest.generators():
                    continue
                g, e = L[1]
                image = ~rest if e == 1 else rest
                target = down if L[0][1] == -1 else up
                target.setdefault(g, image)

    def complete(src: dict[str, Word], dst: dict[str, Word]) -> bool:
        grew = False
        for g, w in list(src.items()):
            if g in dst or sum(1 for n, _ in w.letters if n == g) != 1:
                continue
            i = next(i for i, (n, _) in enumerate(w.letters) if n == g)
            u, e, v = Word._raw(w.letters[:i]), w.letters[i][1], Word._raw(w.letters[i + 1 :])
            if not (u.generators() | v.generators()) <= dst.keys():
                continue
            # dst(u) dst(g)^e dst(v) = g
            solved = ~u.substitute(dst) * Word.gen(g) * ~v.substitute(dst)
            dst[g] = solved if e == 1 else ~solved
            grew = True
        return grew

    while complete(up, down) or complete(down, up):
        pass
    return down, up


def _conjugation_transport(
    gens: Sequence[str], relators: Sequence[Word], commuting: set[frozenset[str]]
) -> list[Word]:
    """Short relators obtained by conjugating commutation relators.

    If ``[u, v] = 1`` and conjugation by ``h`` is known on ``u`` and ``v``,
    then ``[h^-1 u h, h^-1 v h] = 1`` too.  Kept only when the reduced
    result is new and at most ``TRANSPORT_MAX_LEN`` long.
    """
    seen = {cyclic_key(r) for r in relators}
    order = {g: i for i, g in enumerate(gens)}
    pairs = sorted((sorted(p, key=order.__getitem__) for p in commuting), key=lambda p: (order[p[0]], order[p[1]]))
    out: list[Word] = []
    for h in gens:
        for action in _conjugation_actions(h, gens, relators, commuting):
            for u, v in pairs:
                if h in (u, v) or u not in action or v not in action:
                    continue
                r = raag_cyclic_reduce(commutator(action[u], action[v]), commuting)
                if not r or len(r) > TRANSPORT_MAX_LEN:
                    continue
                key = cyclic_key(r)
                if key not in seen:
                    seen.add(key)
                    out.append(r)
    return out


def _find_elimination(
    gens: Sequence[str], relators: Sequence[Word]
) -> tuple[str, Word, Word] | None:
    """Pick a relator where some generator occurs exactly once.

    Returns ``(g, image, relator)`` with ``g = image`` a consequence of the
    relator and ``image`` free of ``g``.  Shortest relator wins; ties go to
    generator declaration order.
    """
    order = {g: i for i, g in enumerate(gens)}
    best = None
    for r in relators:
        counts: dict[str, int] = {}
        for n, _ in r.letters:
            counts[n] = counts.get(n, 0) + 1
        for g, c in counts.items():
            if c != 1:
                continue
            key = (len(r), order[g], r.letters)
            if best is None or key < best[0]:
                best = (key, g, r)
    if best is None:
        return None
    _, g, r = best
    return g, _solve_for(r, g), r


def simplify_with_images(
    p: Presentation, max_passes: int = DEFAULT_MAX_PASSES, depth: int = 0
) -> SimplifyResult:
    """Tietze-simplify ``p`` and record where each original generator went.

    Each pass applies one of the following moves, in priority order:

    * reduce every non-commutation relator modulo the commutation relators
      (two-generator commutators) and drop the ones that become trivial;
    * add ``[g, h]`` whenever a relator reads ``g = w`` and ``h`` commutes
      with every letter of ``w``;
    * make central every generator that dies once the central generators
      are killed (it lies in a central subgroup);
    * conjugate commutation relators by a generator whose action on both
      letters can be read off a relator, keeping short new consequences;
    * delete a generator that some relator forces to be trivial;
    * eliminate a generator occurring exactly once in a relator.

    All moves replace relators by equivalent ones modulo the remaining
    relators, so the presented group is unchanged.
    """
    gens = list(p.generators)
    relators = _canonical_order(p.relators)
    images: dict[str, Word] = {g: Word.gen(g) for g in gens}
    passes = 0
    exhausted = False

    def substitute_all(g: str, image: Word) -> None:
        nonlocal relators
        sub = {g: image}
        for k in images:
            images[k] = images[k].substitute(sub)
        relators = _canonical_order(r.substitute(sub).cyclic_reduce() for r in relators)
        gens.remove(g)

    while True:
        commuting: set[frozenset[str]] = set()
        plain: list[Word] = []
        edges: list[Word] = []
        rank = {g: i for i, g in enumerate(gens)}
        for r in relators:
            pair = _commuting_pair(r)
            if pair is None:
                plain.append(r)
            elif pair not in commuting:
                # any [g^a, h^b] is equivalent to [g, h]
                commuting.add(pair)
                g, h = sorted(pair, key=rank.__getitem__)
                edges.append(commutator(Word.gen(g), Word.gen(h)))
        reduced = [raag_cyclic_reduce(r, commuting) for r in plain]
        derived = _derived_commutations(gens, reduced, commuting)
        if derived:
            for g, h in derived:
                commuting.add(frozenset((g, h)))
                edges.append(commutator(Word.gen(g), Word.gen(h)))
            reduced = [raag_cyclic_reduce(r, commuting) for r in plain]
        relators = _canonical_order(edges + reduced)

        single = next((r for r in relators if len(r) == 1), None)
        extra: list[Word] = []
        move = None
        if single is not None:
            move = (single.letters[0][0], IDENTITY)
        else:
            if depth < MAX_CENTRAL_DEPTH:
                pairs = _central_kernel(gens, relators, commuting, depth)
                extra = [commutator(Word.gen(g), Word.gen(h)) for g, h in pairs]
            if not extra:
                extra = _conjugation_transport(gens, relators, commuting)
            if not extra:
                elim = _find_elimination(gens, relators)
                move = None if elim is None else elim[:2]
        if move is None and not extra:
            break
        if passes >= max_passes:
            exhausted = True
            log.info("simplify stopped after %d passes", passes)
            break
        if extra:
            relators = _canonical_order(relators + extra)
        else:
            substitute_all(*move)
        passes += 1

    out = Presentation(tuple(gens), tuple(relators))
    return SimplifyResult(out, images, passes, exhausted)


def simplify(p: Presentation, max_passes: int = DEFAULT_MAX_PASSES) -> Presentation:
    return simplify_with_images(p, max_passes).presentation


def exponent_sum_matrix(p: Presentation) -> IntMatrix:
    rows = [[r.exponent_sum(g) for g in p.generators] for r in p.relators]
    return IntMatrix.from_rows(rows, cols=len(p.generators))


def abelianization(p: Presentation) -> tuple[int, list[int]]:
    """Return ``(free rank, torsion divisors > 1)`` of the abelianized group."""
    n = len(p.generators)
    if not p.relators or n == 0:
        return n, []
    _, d, _ = smith_normal_form(exponent_sum_matrix(p))
    diag = [d[i, i] for i in range(min(d.rows, d.cols))]
    nonzero = [x for x in diag if x != 0]
    return n - len(nonzero), [x for x in nonzero if x > 1]


def is_commutator_complete(p: Presentation) -> bool:
    """True when the relators are exactly the pairwise commutators of the generators."""
    pairs = set()
    for r in p.relators:
        pair = _commuting_pair(r)
        if pair is None:
            return False
        pairs.add(pair)
    wanted = {frozenset(c) for c in combinations(p.generators, 2)}
    return pairs == wanted and len(p.relator_set()) == len(wanted)


def certify_free_abelian(p: Presentation, max_passes: int = DEFAULT_MAX_PASSES) -> int | None:
    """Rank ``r`` when simplification lands on the standard presentation of Z^r."""
    q = simplify(p, max_passes)
    r = len(q.generators)
    if r <= 1:
        return r if not q.relators else None
    return r if is_commutator_complete(q) else None


def free_abelian_presentation(generators: Sequence[str]) -> Presentation:
    rels = [commutator(Word.gen(a), Word.gen(b)) for a, b in combinations(generators, 2)]
    return Presentation(tuple(generators), tuple(rels))


__all__ = [
    "Presentation",
    "SimplifyResult",
    "abelianization",
    "certify_free_abelian",
    "exponent_sum_matrix",
    "free_abelian_presentation",
    "free_reduce",
    "raag_reduce",
    "simplify",
    "simplify_with_images",
]
