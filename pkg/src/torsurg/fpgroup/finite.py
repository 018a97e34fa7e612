"""Small finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Hashable, Sequence


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    element_names: tuple[str, ...]

    def __post_init__(self):
        n = len(self.table)
        if len(self.element_names) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"{self.name}: table must be {n}x{n} with {n} names")
        if not 0 <= self.identity < n:
            raise ValueError(f"{self.name}: identity index out of range")
        e, t = self.identity, self.table
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                raise ValueError(f"{self.name}: identity fails at {a}")
            if sorted(t[a]) != list(range(n)):
                raise ValueError(f"{self.name}: row {a} is not a permutation")
            if e not in t[a]:
                raise ValueError(f"{self.name}: element {a} has no inverse")
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"{self.name}: not associative at {(a, b, c)}")
        inv = tuple(t[a].index(e) for a in range(n))
        object.__setattr__(self, "_inverse", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def non_abelian(self) -> bool:
        n = self.order
        return any(self.table[a][b] != self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def index(self, name: str) -> int:
        return self.element_names.index(name)

    def commute(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.table[b][a]

    def closure(self, gens: Sequence[int]) -> set[int]:
        """Subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    @classmethod
    def from_elements(
        cls,
        name: str,
        elements: Sequence[Hashable],
        mul: Callable[[Hashable, Hashable], Hashable],
        names: Sequence[str],
    ) -> FiniteGroup:
        index = {x: i for i, x in enumerate(elements)}
        table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
        ident = next(i for i, a in enumerate(elements) if all(mul(a, b) == b for b in elements))
        return cls(name, table, ident, tuple(names))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


@lru_cache(maxsize=None)
def quaternion_group() -> FiniteGroup:
    units = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}
    names, elements = [], []
    for n, q in units.items():
        names += [n, "-" + n]
        elements += [q, tuple(-x for x in q)]
    return FiniteGroup.from_elements("Q8", elements, _qmul, names)


def _compose(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def _perm_name(p) -> str:
    seen, cycles = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(str(x + 1))
            x = p[x]
        cycles.append("(" + " ".join(c) + ")")
    return "".join(cycles) or "()"


def _parity(p) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def _perm_group(name: str, elements) -> FiniteGroup:
    elements = sorted(elements)
    return FiniteGroup.from_elements(name, elements, _compose, [_perm_name(p) for p in elements])


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    return _perm_group(f"S{n}", permutations(range(n)))


@lru_cache(maxsize=None)
def alternating_group(n: int) -> FiniteGroup:
    return _perm_group(f"A{n}", [p for p in permutations(range(n)) if _parity(p) == 0])


@lru_cache(maxsize=None)
def dihedral_group_8() -> FiniteGroup:
    """Symmetries of a square, as permutations of its corners."""
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    elems = {(0, 1, 2, 3)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in (r, s):
            y = _compose(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return _perm_group("D8", elems)


@lru_cache(maxsize=None)
def sl2_3() -> FiniteGroup:
    def mul(a, b):
        (p, q, r, s), (t, u, v, w) = a, b
        return ((p * t + q * v) % 3, (p * u + q * w) % 3, (r * t + s * v) % 3, (r * u + s * w) % 3)

    elems = [m for m in product(range(3), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 3 == 1]
    names = ["[[%d,%d],[%d,%d]]" % m for m in elems]
    return FiniteGroup.from_elements("SL(2,3)", elems, mul, names)


@lru_cache(maxsize=None)
def trivial_group() -> FiniteGroup:
    return FiniteGroup("1", ((0,),), 0, ("1",))


def default_catalog() -> list[FiniteGroup]:
    return [quaternion_group()]


def full_catalog() -> list[FiniteGroup]:
    return [
        quaternion_group(),
        dihedral_group_8(),
        symmetric_group(3),
        symmetric_group(4),
        alternating_group(4),
        sl2_3(),
    ]


CATALOG_BY_NAME: dict[str, Callable[[], FiniteGroup]] = {
    "q8": quaternion_group,
    "d8": dihedral_group_8,
    "s3": lambda: symmetric_group(3),
    "s4": lambda: symmetric_group(4),
    "a4": lambda: alternating_group(4),
    "sl23": sl2_3,
}
