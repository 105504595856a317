"""Concrete group elements: matrices over a prime field, permutations, table entries.

Each kind is immutable and hashable, and carries a canonical byte encoding;
two elements are equal exactly when their kinds, ambient parameters, and
encodings agree.  Matrix encodings are row-major residues, permutation
encodings are image lists, table encodings are the bare index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import MixedVariants, NotInvertible


def _byte_width(max_value: int) -> int:
    return max(1, (max_value.bit_length() + 7) // 8)


# ---------------------------------------------------------------------------
# matrices over Z/p
# ---------------------------------------------------------------------------


def _mat_rows(entries: tuple[int, ...], m: int) -> list[list[int]]:
    return [list(entries[i * m : (i + 1) * m]) for i in range(m)]


def _det_mod(entries: tuple[int, ...], m: int, p: int) -> int:
    rows = _mat_rows(entries, m)
    det = 1
    for col in range(m):
        pivot = next((r for r in range(col, m) if rows[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det % p
        det = det * rows[col][col] % p
        inv = pow(rows[col][col], -1, p)
        for r in range(col + 1, m):
            f = rows[r][col] * inv % p
            if f:
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[col])]
    return det % p


def _inv_entries(entries: tuple[int, ...], m: int, p: int) -> tuple[int, ...]:
    """Inverse mod p: adjugate for m <= 4, Gauss-Jordan above."""
    if m == 1:
        return (pow(entries[0], -1, p),)
    if m <= 4:
        det = _det_mod(entries, m, p)
        if det == 0:
            raise NotInvertible("singular matrix mod p")
        dinv = pow(det, -1, p)
        rows = _mat_rows(entries, m)
        adj = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                minor = [
                    [rows[r][c] for c in range(m) if c != j]
                    for r in range(m)
                    if r != i
                ]
                flat = tuple(x for row in minor for x in row)
                cof = _det_mod(flat, m - 1, p)
                adj[j][i] = (-cof if (i + j) % 2 else cof) * dinv % p
        return tuple(x for row in adj for x in row)
    rows = [
        list(entries[i * m : (i + 1) * m]) + [int(i == j) for j in range(m)]
        for i in range(m)
    ]
    for col in range(m):
        pivot = next((r for r in range(col, m) if rows[r][col] % p), None)
        if pivot is None:
            raise NotInvertible("singular matrix mod p")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = pow(rows[col][col], -1, p)
        rows[col] = [x * inv % p for x in rows[col]]
        for r in range(m):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[col])]
    return tuple(rows[i][m + j] for i in range(m) for j in range(m))


@dataclass(frozen=True)
class MatrixElement:
    """Invertible m x m matrix over Z/p, entries stored row-major in [0, p)."""

    p: int
    m: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2 or self.m < 1:
            raise ValueError("need p >= 2 and m >= 1")
        if len(self.entries) != self.m * self.m:
            raise ValueError("entry count does not match matrix size")
        if any(not (0 <= e < self.p) for e in self.entries):
            raise ValueError("entries must be residues in [0, p)")
        if _det_mod(self.entries, self.m, self.p) == 0:
            raise NotInvertible("matrix is singular mod p")

    @classmethod
    def from_rows(cls, rows, p: int) -> "MatrixElement":
        m = len(rows)
        entries = tuple(int(x) % p for row in rows for x in row)
        return cls(p, m, entries)

    @classmethod
    def identity(cls, p: int, m: int) -> "MatrixElement":
        return cls(p, m, tuple(int(i == j) for i in range(m) for j in range(m)))

    def rows(self) -> list[list[int]]:
        return _mat_rows(self.entries, self.m)

    @property
    def family(self) -> tuple:
        return ("matrix", self.p, self.m)

    def mul(self, other: "MatrixElement") -> "MatrixElement":
        if not isinstance(other, MatrixElement) or other.family != self.family:
            raise MixedVariants("matrix multiplication across different families")
        m, p = self.m, self.p
        a, b = self.entries, other.entries
        out = [0] * (m * m)
        for i in range(m):
            base = i * m
            for k in range(m):
                aik = a[base + k]
                if aik:
                    kb = k * m
                    for j in range(m):
                        out[base + j] += aik * b[kb + j]
        return MatrixElement(p, m, tuple(x % p for x in out))

    def inv(self) -> "MatrixElement":
        return MatrixElement(self.p, self.m, _inv_entries(self.entries, self.m, self.p))

    def is_identity(self) -> bool:
        m = self.m
        return all(
            self.entries[i * m + j] == (1 if i == j else 0)
            for i in range(m)
            for j in range(m)
        )

    def order(self, cap: int = 10**7) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = cur.mul(self)
            k += 1
            if k > cap:
                raise ArithmeticError("order loop exceeded cap")
        return k

    def encode(self) -> bytes:
        w = _byte_width(self.p - 1)
        return b"".join(e.to_bytes(w, "big") for e in self.entries)

    @classmethod
    def decode(cls, data: bytes, p: int, m: int) -> "MatrixElement":
        w = _byte_width(p - 1)
        if len(data) != w * m * m:
            raise ValueError("encoded length does not match matrix parameters")
        entries = tuple(
            int.from_bytes(data[i * w : (i + 1) * w], "big") for i in range(m * m)
        )
        return cls(p, m, entries)


# ---------------------------------------------------------------------------
# permutations of {0, ..., degree-1}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermutationElement:
    """Permutation given by its image tuple; product is function composition."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n < 1 or sorted(self.images) != list(range(n)):
            raise ValueError("images must be a bijection on {0,...,degree-1}")

    @classmethod
    def identity(cls, degree: int) -> "PermutationElement":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def family(self) -> tuple:
        return ("perm", self.degree)

    def mul(self, other: "PermutationElement") -> "PermutationElement":
        if not isinstance(other, PermutationElement) or other.degree != self.degree:
            raise MixedVariants("permutation product across different degrees")
        # (self * other)(x) = self(other(x))
        return PermutationElement(tuple(self.images[i] for i in other.images))

    def inv(self) -> "PermutationElement":
        out = [0] * self.degree
        for i, img in enumerate(self.images):
            out[img] = i
        return PermutationElement(tuple(out))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def order(self, cap: int = 10**7) -> int:
        seen = [False] * self.degree
        k = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length, cur = 0, start
            while not seen[cur]:
                seen[cur] = True
                cur = self.images[cur]
                length += 1
            k = k * length // gcd(k, length)
        return k

    def encode(self) -> bytes:
        w = _byte_width(self.degree - 1) if self.degree > 1 else 1
        return b"".join(i.to_bytes(w, "big") for i in self.images)

    @classmethod
    def decode(cls, data: bytes, degree: int) -> "PermutationElement":
        w = _byte_width(degree - 1) if degree > 1 else 1
        images = tuple(
            int.from_bytes(data[i * w : (i + 1) * w], "big") for i in range(degree)
        )
        return cls(images)


# ---------------------------------------------------------------------------
# explicit multiplication tables
# ---------------------------------------------------------------------------


class MulTable:
    """Immutable multiplication table on indices 0..size-1 (latin square + identity).

    Associativity is not verified here; it is property-tested on enumerated
    groups.  Compared and hashed by object identity, so elements of distinct
    tables never mix.
    """

    def __init__(self, rows) -> None:
        size = len(rows)
        table = tuple(tuple(int(x) for x in row) for row in rows)
        if any(len(row) != size for row in table):
            raise ValueError("table must be square")
        full = frozenset(range(size))
        for row in table:
            if frozenset(row) != full:
                raise ValueError("table rows must be permutations")
        for j in range(size):
            if frozenset(row[j] for row in table) != full:
                raise ValueError("table columns must be permutations")
        ident = None
        for e in range(size):
            if all(table[e][x] == x for x in range(size)) and all(
                table[x][e] == x for x in range(size)
            ):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no two-sided identity")
        inv = [0] * size
        for i in range(size):
            inv[i] = table[i].index(ident)
        self.size = size
        self.rows = table
        self.identity_index = ident
        self.inverse = tuple(inv)

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]


@dataclass(frozen=True)
class TableElement:
    """Element of an explicit multiplication table, identified by its index."""

    table: MulTable = field(repr=False)
    index: int

    def __post_init__(self) -> None:
        if not (0 <= self.index < self.table.size):
            raise ValueError("index outside table")

    @property
    def family(self) -> tuple:
        return ("table", id(self.table))

    def mul(self, other: "TableElement") -> "TableElement":
        if not isinstance(other, TableElement) or other.table is not self.table:
            raise MixedVariants("table elements from different tables")
        return TableElement(self.table, self.table.mul(self.index, other.index))

    def inv(self) -> "TableElement":
        return TableElement(self.table, self.table.inverse[self.index])

    def is_identity(self) -> bool:
        return self.index == self.table.identity_index

    def order(self, cap: int = 10**7) -> int:
        k, cur = 1, self.index
        while cur != self.table.identity_index:
            cur = self.table.mul(cur, self.index)
            k += 1
            if k > cap:
                raise ArithmeticError("order loop exceeded cap")
        return k

    def encode(self) -> bytes:
        return self.index.to_bytes(4, "big")

    @classmethod
    def decode(cls, data: bytes, table: MulTable) -> "TableElement":
        return cls(table, int.from_bytes(data, "big"))


GroupElement = MatrixElement | PermutationElement | TableElement


def same_family(elements) -> tuple:
    """Common family key of a nonempty element collection; MixedVariants otherwise."""
    it = iter(elements)
    try:
        first = next(it)
    except StopIteration:
        raise ValueError("need at least one element") from None
    fam = first.family
    for e in it:
        if e.family != fam:
            raise MixedVariants(f"mixed element families: {fam} vs {e.family}")
    return fam
