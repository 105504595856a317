"""Enumerated finite groups with index-based multiplication.

A `FiniteGroup` is built by breadth-first closure from a generator list.
Element indices follow BFS discovery order (identity at index 0); within a
BFS layer, newly discovered elements are sorted by their canonical encoding,
so indices are reproducible across runs.  Matrix groups get a vectorized
numpy path (codes + searchsorted) that scales to a few million elements;
permutation and table groups use a dict of encodings.  A dense index-level
multiplication table is built when the order is at most `DENSE_TABLE_CAP`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elements import (
    GroupElement,
    MatrixElement,
    MulTable,
    PermutationElement,
    TableElement,
    same_family,
)
from .errors import CapExceeded, NotInGroup, SizeCap

DEFAULT_CLOSURE_CAP = 4_000_000
DENSE_TABLE_CAP = 4096


# ---------------------------------------------------------------------------
# vectorized helpers for the matrix variant
# ---------------------------------------------------------------------------


def _mat_codes(mats: np.ndarray, p: int) -> np.ndarray:
    """Base-p integer codes, first entry most significant (matches byte encoding)."""
    flat = mats.reshape(mats.shape[0], -1).astype(np.int64)
    k = flat.shape[1]
    powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return flat @ powers


def _codes_fit(p: int, m: int) -> bool:
    return p ** (m * m) < 2**62


def _batch_inverse(mats: np.ndarray, p: int) -> np.ndarray:
    """Inverses mod p of a stack of m x m matrices, m <= 4 via adjugate."""
    m = mats.shape[1]
    a = mats.astype(np.int64)
    res_inv = np.array([0] + [pow(r, -1, p) for r in range(1, p)], dtype=np.int64)

    def det_stack(b: np.ndarray) -> np.ndarray:
        k = b.shape[1]
        if k == 1:
            return b[:, 0, 0] % p
        if k == 2:
            return (b[:, 0, 0] * b[:, 1, 1] - b[:, 0, 1] * b[:, 1, 0]) % p
        acc = np.zeros(b.shape[0], dtype=np.int64)
        for j in range(k):
            minor = np.delete(np.delete(b, 0, axis=1), j, axis=2)
            sub = det_stack(minor)
            term = b[:, 0, j] * sub % p
            acc = (acc - term) % p if j % 2 else (acc + term) % p
        return acc % p

    if m > 4:
        from .elements import _inv_entries

        out = np.empty_like(a)
        for idx in range(a.shape[0]):
            ent = tuple(int(x) for x in a[idx].reshape(-1))
            out[idx] = np.array(_inv_entries(ent, m, p), dtype=np.int64).reshape(m, m)
        return out

    dets = det_stack(a)
    if np.any(dets == 0):
        raise NotInGroup("singular matrix encountered")
    adj = np.empty_like(a)
    for i in range(m):
        for j in range(m):
            minor = np.delete(np.delete(a, i, axis=1), j, axis=2)
            cof = det_stack(minor) if m > 1 else np.ones(a.shape[0], dtype=np.int64)
            if (i + j) % 2:
                cof = (-cof) % p
            adj[:, j, i] = cof
    return adj * res_inv[dets][:, None, None] % p


# ---------------------------------------------------------------------------
# the group
# ---------------------------------------------------------------------------


class FiniteGroup:
    """Finite group enumerated from generators; all queries are index-based.

    Immutable after construction; safe to share across threads.
    """

    def __init__(self) -> None:  # populated by the factory functions below
        self.variant: str = ""
        self.order: int = 0
        self.generator_indices: tuple[int, ...] = ()
        self._inv: np.ndarray | None = None
        self._table: np.ndarray | None = None
        self._right_cols: dict[int, np.ndarray] = {}
        # matrix variant
        self.p: int | None = None
        self.m: int | None = None
        self._mats: np.ndarray | None = None
        self._codes: np.ndarray | None = None
        self._sorted_codes: np.ndarray | None = None
        self._code_perm: np.ndarray | None = None
        # permutation variant
        self.degree: int | None = None
        self._imgs: np.ndarray | None = None
        # table variant
        self._multable: MulTable | None = None
        self._member: np.ndarray | None = None  # group index -> table index
        # generic encoding lookup (perm / table)
        self._index: dict[bytes, int] | None = None

    def __len__(self) -> int:
        return self.order

    # -- element access ------------------------------------------------

    def element(self, i: int) -> GroupElement:
        if not (0 <= i < self.order):
            raise IndexError(i)
        if self.variant == "matrix":
            ent = tuple(int(x) for x in self._mats[i].reshape(-1))
            return MatrixElement(self.p, self.m, ent)
        if self.variant == "perm":
            return PermutationElement(tuple(int(x) for x in self._imgs[i]))
        return TableElement(self._multable, int(self._member[i]))

    def elements(self):
        return (self.element(i) for i in range(self.order))

    def index_of(self, g: GroupElement) -> int:
        if self.variant == "matrix":
            if not isinstance(g, MatrixElement) or g.family != ("matrix", self.p, self.m):
                raise NotInGroup("element family does not match group")
            code = 0
            for e in g.entries:
                code = code * self.p + e
            return int(self._lookup(np.array([code], dtype=np.int64))[0])
        if self.variant == "perm":
            if not isinstance(g, PermutationElement) or g.degree != self.degree:
                raise NotInGroup("element family does not match group")
        else:
            if not isinstance(g, TableElement) or g.table is not self._multable:
                raise NotInGroup("element belongs to a different table")
        idx = self._index.get(g.encode())
        if idx is None:
            raise NotInGroup("element not in enumerated group")
        return idx

    def encoding(self, i: int) -> bytes:
        return self.element(i).encode()

    # -- index arithmetic ------------------------------------------------

    def _lookup(self, codes: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_codes[pos] == codes):
            raise NotInGroup("product code not found (group not closed?)")
        return self._code_perm[pos]

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return int(self.mul_many(np.array([i]), j)[0])

    def inv(self, i: int) -> int:
        return int(self._inv[i])

    def mul_many(self, idxs: np.ndarray, j: int) -> np.ndarray:
        """Indices of g_i * g_j for all i in idxs."""
        if self._table is not None:
            return self._table[idxs, j]
        if self.variant == "matrix":
            prod = np.matmul(self._mats[idxs], self._mats[j]) % self.p
            return self._lookup(_mat_codes(prod, self.p))
        if self.variant == "perm":
            prod = self._imgs[idxs][:, self._imgs[j]]
            return np.array(
                [self._index[self._perm_bytes(row)] for row in prod], dtype=np.int64
            )
        raise AssertionError("table groups always carry a dense table")

    def lmul_many(self, i: int, idxs: np.ndarray) -> np.ndarray:
        """Indices of g_i * g_j for all j in idxs."""
        if self._table is not None:
            return self._table[i, idxs]
        if self.variant == "matrix":
            prod = np.matmul(self._mats[i], self._mats[idxs]) % self.p
            return self._lookup(_mat_codes(prod, self.p))
        if self.variant == "perm":
            prod = self._imgs[i][self._imgs[idxs]]
            return np.array(
                [self._index[self._perm_bytes(row)] for row in prod], dtype=np.int64
            )
        raise AssertionError("table groups always carry a dense table")

    def conj_many(self, idxs: np.ndarray, t: int) -> np.ndarray:
        """Indices of g_t * g_i * g_t^{-1} for all i in idxs."""
        return self.mul_many(self.lmul_many(t, idxs), self.inv(t))

    def right_column(self, j: int) -> np.ndarray:
        """Cached column i -> index(g_i * g_j), used by the walk engine."""
        col = self._right_cols.get(j)
        if col is None:
            if self._table is not None:
                col = np.array(self._table[:, j])
            else:
                col = self.mul_many(np.arange(self.order), j)
            self._right_cols[j] = col
        return col

    def left_row(self, i: int) -> np.ndarray:
        """Row h -> index(g_i * g_h), used for the regular representation."""
        if self._table is not None:
            return np.array(self._table[i, :])
        return self.lmul_many(i, np.arange(self.order))

    def _perm_bytes(self, row: np.ndarray) -> bytes:
        w = max(1, ((self.degree - 1).bit_length() + 7) // 8) if self.degree > 1 else 1
        if w == 1:
            return bytes(int(x) for x in row)
        return b"".join(int(x).to_bytes(w, "big") for x in row)

    # -- construction helpers ---------------------------------------------

    def _build_dense_table(self) -> None:
        n = self.order
        if n > DENSE_TABLE_CAP or self._table is not None:
            return
        table = np.empty((n, n), dtype=np.int32)
        idxs = np.arange(n)
        for j in range(n):
            table[:, j] = self.mul_many(idxs, j)
        self._table = table


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


def close_generators(generators, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Breadth-first closure of the generators under products and inverses.

    Deterministic element numbering: identity first, then layer by layer in
    canonical-encoding order.  Raises CapExceeded if the closure grows past
    `cap` (callers can fall back to the Monte-Carlo path), MixedVariants if
    the generators do not share one family.
    """
    gens = list(generators)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    fam = same_family(gens)
    if fam[0] == "matrix":
        if not _codes_fit(fam[1], fam[2]):
            raise SizeCap(f"matrix parameters p={fam[1]}, m={fam[2]} too large to enumerate")
        return _close_matrix(gens, cap)
    return _close_generic(gens, cap)


def _close_matrix(gens: list[MatrixElement], cap: int) -> FiniteGroup:
    p, m = gens[0].p, gens[0].m
    mult_mats = []
    seen_codes = set()
    for g in gens + [g.inv() for g in gens]:
        arr = np.array(g.rows(), dtype=np.int64)
        code = int(_mat_codes(arr[None, :, :], p)[0])
        if code not in seen_codes:
            seen_codes.add(code)
            mult_mats.append(arr)

    ident = np.eye(m, dtype=np.int64)
    levels = [ident[None, :, :]]
    known = {int(_mat_codes(ident[None, :, :], p)[0])}
    frontier = levels[0]
    total = 1
    while frontier.shape[0]:
        prods = np.concatenate([np.matmul(frontier, t) % p for t in mult_mats], axis=0)
        codes = _mat_codes(prods, p)
        uniq, first = np.unique(codes, return_index=True)
        mask = np.fromiter((int(c) not in known for c in uniq), dtype=bool, count=len(uniq))
        new = prods[first[mask]]
        if new.shape[0]:
            known.update(int(c) for c in uniq[mask])
            total += new.shape[0]
            if total > cap:
                raise CapExceeded(f"closure exceeded cap {cap}")
            levels.append(new)
        frontier = new

    mats = np.concatenate(levels, axis=0)
    G = FiniteGroup()
    G.variant = "matrix"
    G.p, G.m = p, m
    G.order = mats.shape[0]
    G._mats = mats
    G._codes = _mat_codes(mats, p)
    G._code_perm = np.argsort(G._codes).astype(np.int64)
    G._sorted_codes = G._codes[G._code_perm]
    G._inv = G._lookup(_mat_codes(_batch_inverse(mats, p), p))
    G.generator_indices = tuple(int(G.index_of(g)) for g in gens)
    G._build_dense_table()
    return G


def _close_generic(gens: list[GroupElement], cap: int) -> FiniteGroup:
    ident = _identity_like(gens[0])
    elements: list[GroupElement] = [ident]
    index: dict[bytes, int] = {ident.encode(): 0}
    multipliers = []
    seen = set()
    for g in gens + [g.inv() for g in gens]:
        k = g.encode()
        if k not in seen:
            seen.add(k)
            multipliers.append(g)
    frontier = [ident]
    while frontier:
        discovered: dict[bytes, GroupElement] = {}
        for g in frontier:
            for t in multipliers:
                h = g.mul(t)
                k = h.encode()
                if k not in index and k not in discovered:
                    discovered[k] = h
        frontier = []
        for k in sorted(discovered):
            index[k] = len(elements)
            elements.append(discovered[k])
            frontier.append(discovered[k])
            if len(elements) > cap:
                raise CapExceeded(f"closure exceeded cap {cap}")

    G = FiniteGroup()
    G._index = index
    G.order = len(elements)
    if isinstance(ident, PermutationElement):
        G.variant = "perm"
        G.degree = ident.degree
        G._imgs = np.array([e.images for e in elements], dtype=np.int64)
    else:
        G.variant = "table"
        G._multable = ident.table
        G._member = np.array([e.index for e in elements], dtype=np.int64)
        tab = np.array(ident.table.rows, dtype=np.int64)
        back = -np.ones(ident.table.size, dtype=np.int64)
        back[G._member] = np.arange(G.order)
        G._table = back[tab[np.ix_(G._member, G._member)]].astype(np.int32)
    G._inv = np.array([index[e.inv().encode()] for e in elements], dtype=np.int64)
    G.generator_indices = tuple(index[g.encode()] for g in gens)
    G._build_dense_table()
    return G


def _identity_like(g: GroupElement) -> GroupElement:
    if isinstance(g, MatrixElement):
        return MatrixElement.identity(g.p, g.m)
    if isinstance(g, PermutationElement):
        return PermutationElement.identity(g.degree)
    return TableElement(g.table, g.table.identity_index)


# ---------------------------------------------------------------------------
# orders, classes, centers
# ---------------------------------------------------------------------------


def element_order(G: FiniteGroup, g: GroupElement | int) -> int:
    """Smallest k >= 1 with g^k = identity."""
    i = g if isinstance(g, int) else G.index_of(g)
    if not (0 <= i < G.order):
        raise NotInGroup(f"index {i} out of range")
    k, cur = 1, i
    while cur != 0:
        cur = G.mul(cur, i)
        k += 1
    return k


@dataclass(frozen=True)
class ConjugacyClasses:
    """Partition of an enumerated group into conjugacy classes."""

    class_of: np.ndarray  # element index -> class id
    representatives: tuple[int, ...]  # lowest element index per class
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, cid: int) -> np.ndarray:
        return np.nonzero(self.class_of == cid)[0]


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbit computation under conjugation by the generators (BFS per class)."""
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    conjugators = list(
        dict.fromkeys(
            list(G.generator_indices) + [G.inv(t) for t in G.generator_indices]
        )
    )
    if not conjugators:
        conjugators = [0]
    reps: list[int] = []
    sizes: list[int] = []
    for start in range(n):
        if class_of[start] >= 0:
            continue
        cid = len(reps)
        reps.append(start)
        class_of[start] = cid
        frontier = np.array([start], dtype=np.int64)
        size = 1
        while frontier.size:
            new_parts = []
            for t in conjugators:
                c = G.conj_many(frontier, t)
                fresh = c[class_of[c] < 0]
                if fresh.size:
                    fresh = np.unique(fresh)
                    fresh = fresh[class_of[fresh] < 0]
                    class_of[fresh] = cid
                    new_parts.append(fresh)
            frontier = np.unique(np.concatenate(new_parts)) if new_parts else np.array([], dtype=np.int64)
            size += frontier.size
        sizes.append(size)
    return ConjugacyClasses(class_of, tuple(reps), tuple(sizes))


def center_and_centralizer(G: FiniteGroup, g: GroupElement | int) -> tuple[tuple[int, ...], int]:
    """(center as sorted element indices, order of the centralizer of g)."""
    i = g if isinstance(g, int) else G.index_of(g)
    if not (0 <= i < G.order):
        raise NotInGroup(f"index {i} out of range")
    idxs = np.arange(G.order)
    central = np.ones(G.order, dtype=bool)
    for t in G.generator_indices:
        central &= G.mul_many(idxs, t) == G.lmul_many(t, idxs)
    centralizer_size = int(np.count_nonzero(G.mul_many(idxs, i) == G.lmul_many(i, idxs)))
    return tuple(int(z) for z in np.nonzero(central)[0]), centralizer_size


def center_indices(G: FiniteGroup) -> tuple[int, ...]:
    return center_and_centralizer(G, 0)[0]


# ---------------------------------------------------------------------------
# group specification files (the on-disk contract)
# ---------------------------------------------------------------------------


def generators_from_spec(spec: dict) -> list[GroupElement]:
    """Parse a group-spec dict into a generator list."""
    kind = spec.get("kind")
    if kind == "matrix_mod_p":
        p, m = int(spec["p"]), int(spec["m"])
        gens = [MatrixElement.from_rows(rows, p) for rows in spec["generators"]]
        if any(g.m != m for g in gens):
            raise ValueError("generator size does not match 'm'")
        return gens
    if kind == "permutation":
        degree = int(spec["degree"])
        gens = [PermutationElement(tuple(int(x) for x in imgs)) for imgs in spec["generators"]]
        if any(g.degree != degree for g in gens):
            raise ValueError("generator degree does not match 'degree'")
        return gens
    if kind == "table":
        table = MulTable(spec["table"])
        if int(spec.get("size", table.size)) != table.size:
            raise ValueError("table size mismatch")
        gen_idx = spec.get("generators")
        if gen_idx is None:
            gen_idx = list(range(table.size))
        return [TableElement(table, int(i)) for i in gen_idx]
    raise ValueError(f"unknown group kind: {kind!r}")


def group_from_spec(spec: dict, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    return close_generators(generators_from_spec(spec), cap=cap)


def element_from_spec(G: FiniteGroup, data) -> GroupElement:
    """Inline element spec: matrix rows, permutation image list, or table index."""
    if G.variant == "matrix":
        return MatrixElement.from_rows(data, G.p)
    if G.variant == "perm":
        return PermutationElement(tuple(int(x) for x in data))
    return TableElement(G._multable, int(data))
