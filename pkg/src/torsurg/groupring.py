"""Group rings Z[Z^n] (n = 1, 2) as Laurent polynomials, and hermitian forms over them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from torsurg.linalg import IntMatrix, NotSymmetricError

VARIABLES = ("t", "s")

Exponent = tuple[int, ...]


class NotHermitianError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


def _check_rank(n: int) -> None:
    if n not in (1, 2):
        raise RankMismatchError(f"only Z and Z^2 group rings are supported, got rank {n}")


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of monomials with integer coefficients, terms sorted by exponent."""

    n: int
    terms: tuple[tuple[Exponent, int], ...] = ()

    def __post_init__(self):
        _check_rank(self.n)
        acc: dict[Exponent, int] = {}
        for e, c in self.terms:
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise RankMismatchError(f"exponent {e} has length {len(e)}, expected {self.n}")
            acc[e] = acc.get(e, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def from_dict(cls, n: int, d: Mapping[Exponent, int]) -> LaurentPoly:
        return cls(n, tuple(d.items()))

    @classmethod
    def constant(cls, n: int, c: int) -> LaurentPoly:
        return cls(n, (((0,) * n, c),))

    @classmethod
    def monomial(cls, n: int, exponent: Exponent | int, c: int = 1) -> LaurentPoly:
        if isinstance(exponent, int):
            exponent = (exponent,)
        return cls(n, ((tuple(exponent), c),))

    @classmethod
    def var(cls, n: int, i: int = 0) -> LaurentPoly:
        e = [0] * n
        e[i] = 1
        return cls.monomial(n, tuple(e))

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def _same_ring(self, other: LaurentPoly) -> None:
        if self.n != other.n:
            raise RankMismatchError(f"cannot combine Z[Z^{self.n}] with Z[Z^{other.n}]")

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(self.n, other)
        self._same_ring(other)
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._lift(other)
        return LaurentPoly(self.n, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.n, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> LaurentPoly:
        return self + -self._lift(other)

    def __rsub__(self, other) -> LaurentPoly:
        return -self + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._lift(other)
        out = [
            (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            for e1, c1 in self.terms
            for e2, c2 in other.terms
        ]
        return LaurentPoly(self.n, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        base = self
        if k < 0:
            if not self.is_unit():
                raise ValueError(f"{self} is not invertible")
            (e, c), = self.terms
            base, k = LaurentPoly.monomial(self.n, tuple(-x for x in e), c), -k
        out = LaurentPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * base
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def involute(self) -> LaurentPoly:
        return LaurentPoly(self.n, tuple((tuple(-x for x in e), c) for e, c in self.terms))

    def augment(self) -> int:
        return sum(c for _, c in self.terms)

    def support(self) -> set[Exponent]:
        return {e for e, _ in self.terms}

    def is_constant(self) -> bool:
        return self.support() <= {(0,) * self.n}

    def constant_term(self) -> int:
        return self.as_dict().get((0,) * self.n, 0)

    def is_unit(self) -> bool:
        """Units of Z[Z^n] are exactly the signed monomials."""
        return len(self.terms) == 1 and abs(self.terms[0][1]) == 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(VARIABLES, e) if x != 0
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def involute(f: LaurentPoly) -> LaurentPoly:
    return f.involute()


PolyMatrix = tuple[tuple[LaurentPoly, ...], ...]


def _as_poly_matrix(rows: Iterable[Iterable[LaurentPoly]]) -> PolyMatrix:
    out = tuple(tuple(r) for r in rows)
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out


def conj_transpose(h: Sequence[Sequence[LaurentPoly]]) -> PolyMatrix:
    k = len(h)
    return tuple(tuple(h[j][i].involute() for j in range(k)) for i in range(k))


def poly_matmul(a: Sequence[Sequence[LaurentPoly]], b: Sequence[Sequence[LaurentPoly]], n: int) -> PolyMatrix:
    if a and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    zero = LaurentPoly(n)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), zero) for j in range(cols))
        for i in range(len(a))
    )


def poly_determinant(h: Sequence[Sequence[LaurentPoly]], n: int) -> LaurentPoly:
    """Determinant over the (commutative) group ring by expansion along rows.

    Minors are memoised on the set of remaining columns, so this is
    ``O(k 2^k)`` products; fine for the sizes of intersection forms here.
    """
    k = len(h)
    if k == 0:
        return LaurentPoly.constant(n, 1)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset[int]) -> LaurentPoly:
        if row == k:
            return LaurentPoly.constant(n, 1)
        total = LaurentPoly(n)
        for pos, j in enumerate(sorted(cols)):
            if h[row][j]:
                term = h[row][j] * minor(row + 1, cols - {j})
                total = total + (term if pos % 2 == 0 else -term)
        return total

    return minor(0, frozenset(range(k)))


@dataclass(frozen=True)
class HermitianForm:
    n: int
    entries: PolyMatrix

    def __post_init__(self):
        _check_rank(self.n)
        entries = _as_poly_matrix(self.entries)
        for i, row in enumerate(entries):
            for j, f in enumerate(row):
                if f.n != self.n:
                    raise RankMismatchError(f"entry ({i},{j}) lives in Z[Z^{f.n}]")
                if f != entries[j][i].involute():
                    raise NotHermitianError(
                        f"entry ({i},{j}) = {f} but conjugate of ({j},{i}) is {entries[j][i].involute()}"
                    )
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def augment(self) -> IntMatrix:
        return IntMatrix.from_rows([[f.augment() for f in row] for row in self.entries], self.size)

    def render(self) -> str:
        cells = [[str(f) for f in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __str__(self) -> str:
        return self.render()


def extend_from_integers(q: IntMatrix, n: int) -> HermitianForm:
    if not q.is_symmetric():
        raise NotSymmetricError("only symmetric integer forms extend to hermitian ones")
    rows = [[LaurentPoly.constant(n, q[i, j]) for j in range(q.cols)] for i in range(q.rows)]
    return HermitianForm(n, _as_poly_matrix(rows))


def assemble_equivariant(data: Mapping[Exponent | int, IntMatrix], n: int | None = None) -> HermitianForm:
    """Hermitian form whose (i, j) entry is ``sum_g data[g][i, j] * g^-1``.

    ``data[g]`` holds the intersection numbers of lifted class ``i`` with the
    ``g``-translate of lifted class ``j``.
    """
    if not data:
        raise ValueError("no intersection data")
    keys = [(k,) if isinstance(k, int) else tuple(k) for k in data]
    if n is None:
        n = len(keys[0])
    if any(len(k) != n for k in keys):
        raise RankMismatchError(f"all group elements must have {n} coordinates")
    mats = list(data.values())
    size = mats[0].rows
    if any(not m.is_square or m.rows != size for m in mats):
        raise ValueError("all intersection matrices must be square of the same size")
    acc = [[dict() for _ in range(size)] for _ in range(size)]
    for g, m in zip(keys, mats):
        ginv = tuple(-x for x in g)
        for i in range(size):
            for j in range(size):
                if m[i, j]:
                    cell = acc[i][j]
                    cell[ginv] = cell.get(ginv, 0) + m[i, j]
    rows = [[LaurentPoly.from_dict(n, acc[i][j]) for j in range(size)] for i in range(size)]
    return HermitianForm(n, _as_poly_matrix(rows))


def is_extended(f: HermitianForm) -> IntMatrix | None:
    """The integer matrix if every entry is a constant, else ``None``.

    Constant entries are a sufficient witness that the form is extended from
    the integers.
    """
    if not all(e.is_constant() for row in f.entries for e in row):
        return None
    return IntMatrix.from_rows([[e.constant_term() for e in row] for row in f.entries], f.size)


def verify_isometry(h: Sequence[Sequence[LaurentPoly]], f1: HermitianForm, f2: HermitianForm) -> bool:
    """Check ``h* f2 h = f1`` with ``det h`` a unit of the group ring."""
    if f1.n != f2.n:
        raise RankMismatchError("forms over different group rings")
    k = f1.size
    if f2.size != k or len(h) != k or any(len(r) != k for r in h):
        raise ValueError(f"sizes differ: h is {len(h)}x{len(h[0]) if h else 0}, forms are {k} and {f2.size}")
    if any(e.n != f1.n for r in h for e in r):
        raise RankMismatchError("h has entries over a different group ring")
    if not poly_determinant(h, f1.n).is_unit():
        return False
    return poly_matmul(poly_matmul(conj_transpose(h), f2.entries, f1.n), h, f1.n) == f1.entries


def identity_matrix(k: int, n: int) -> PolyMatrix:
    one, zero = LaurentPoly.constant(n, 1), LaurentPoly(n)
    return tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))


@dataclass(frozen=True)
class Pi2Descriptor:
    group_rank: int
    free_rank: int
    extra_z: bool

    @property
    def reduced_rank(self) -> int:
        return self.free_rank

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.extra_z

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        ring = "Z[Z]" if self.group_rank == 1 else f"Z[Z^{self.group_rank}]"
        parts = (["Z"] if self.extra_z else []) + ([f"{ring}^{self.free_rank}"] if self.free_rank else [])
        return " + ".join(parts)


def pi2_structure(pi1_rank: int, b2: int, chi: int) -> Pi2Descriptor:
    """pi_2 of a closed 4-manifold with pi_1 = Z or Z^2 as a module over the group ring.

    For Z it is free of rank b2; for Z^2 it is Z plus a free module of rank chi.
    """
    _check_rank(pi1_rank)
    expected_chi = b2 if pi1_rank == 1 else b2 - 2
    if chi != expected_chi:
        raise ValueError(f"chi = {chi} is inconsistent with b2 = {b2} for pi_1 = Z^{pi1_rank}")
    if pi1_rank == 1:
        return Pi2Descriptor(1, b2, False)
    return Pi2Descriptor(2, chi, True)


def augmentation(f: HermitianForm) -> IntMatrix:
    return f.augment()
