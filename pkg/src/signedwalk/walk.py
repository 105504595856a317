"""The signed-product walk: exact law, maximum point probability, bounds, Monte Carlo.

All probabilities of the walk are dyadic rationals; the exact engine therefore
keeps big-integer counts with denominator 2^n and never rounds.  The
Monte-Carlo estimator is deterministic for a fixed (seed, samples) pair
regardless of worker count: samples are processed in fixed-size batches whose
bit streams come from a counter-based generator keyed by (seed, batch index).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .elements import GroupElement, MatrixElement, PermutationElement, TableElement, same_family
from .errors import CapExceeded, ElementNotInGroup, NotNonTrivial
from .groups import FiniteGroup
from .primes import is_prime

MAX_WALK_LENGTH = 4096
_MC_BATCH = 4096


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedSequence:
    """The tuple (A_1, ..., A_n) driving the walk; repetition allowed.

    Every entry must be non-trivial.  `K` optionally records a declared bound
    on the integer parameters of a unipotent construction; it is carried
    through but not validated against the elements.
    """

    elements: tuple[GroupElement, ...]
    K: int | None = None

    def __post_init__(self) -> None:
        if len(self.elements) < 1:
            raise ValueError("sequence must contain at least one element")
        same_family(self.elements)
        if any(e.is_identity() for e in self.elements):
            raise NotNonTrivial("sequence entries must be non-trivial")
        if len(self.elements) > MAX_WALK_LENGTH:
            raise CapExceeded(f"walk length capped at {MAX_WALK_LENGTH}")

    @classmethod
    def constant(cls, element: GroupElement, n: int, K: int | None = None) -> "SignedSequence":
        return cls((element,) * n, K=K)

    @property
    def n(self) -> int:
        return len(self.elements)

    def orders(self) -> tuple[int, ...]:
        return tuple(e.order() for e in self.elements)

    @property
    def min_order(self) -> int:
        return min(self.orders())

    def count_order_at_least(self, sigma: int) -> int:
        return sum(1 for k in self.orders() if k >= sigma)


# ---------------------------------------------------------------------------
# exact distribution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RhoResult:
    """Maximum point probability as an exact dyadic rational."""

    count: int
    denom_exp: int
    maximizers: tuple[int, ...]  # element indices, ascending

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, 1 << self.denom_exp)

    @property
    def value(self) -> float:
        # via Fraction: exact rounding, no overflow for walk lengths past 1024
        return float(self.fraction)


@dataclass
class ExactDistribution:
    """Law of the signed product: integer counts over element indices, denominator 2^n."""

    counts: list[int]
    denom_exp: int

    def total(self) -> int:
        return sum(self.counts)

    def probability(self, i: int) -> Fraction:
        return Fraction(self.counts[i], 1 << self.denom_exp)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) if c]

    def rho(self) -> RhoResult:
        best = max(self.counts)
        maximizers = tuple(i for i, c in enumerate(self.counts) if c == best)
        return RhoResult(best, self.denom_exp, maximizers)

    def to_json(self, G: FiniteGroup) -> dict:
        return {
            "denom_exp": self.denom_exp,
            "entries": [
                {"element": G.encoding(i).hex(), "count": str(c)}
                for i, c in enumerate(self.counts)
                if c
            ],
        }


def exact_distribution(G: FiniteGroup, seq: SignedSequence) -> ExactDistribution:
    """Exact law of A_1^{±1} ... A_n^{±1} by n convolution steps over G.

    Step i sends mass from g to both g*A_i and g*A_i^{-1}; when A_i is an
    involution both increments land on the same target.
    """
    try:
        idxs = [G.index_of(e) for e in seq.elements]
    except Exception as exc:  # noqa: BLE001 - normalize to the walk-level error
        raise ElementNotInGroup(str(exc)) from exc
    n = G.order
    cols: dict[int, list[int]] = {}
    for a in set(idxs):
        cols[a] = G.right_column(a).tolist()
        ainv = G.inv(a)
        if ainv not in cols:
            cols[ainv] = G.right_column(ainv).tolist()

    cur = [0] * n
    cur[0] = 1
    for a in idxs:
        fwd = cols[a]
        bwd = cols[G.inv(a)]
        nxt = [0] * n
        for g, c in enumerate(cur):
            if c:
                nxt[fwd[g]] += c
                nxt[bwd[g]] += c
        cur = nxt
    return ExactDistribution(cur, seq.n)


def rho_exact(G: FiniteGroup, seq: SignedSequence) -> RhoResult:
    return exact_distribution(G, seq).rho()


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloResult:
    """Plug-in estimate of the maximum point probability.

    The max-frequency estimator is biased upward for a supremum; the distinct
    product count is reported so callers can judge how spread the law is.
    """

    samples: int
    seed: int
    max_count: int
    distinct_products: int
    top_encoding: str  # hex of the canonical encoding of the modal product

    @property
    def plugin_max_frequency(self) -> float:
        return self.max_count / self.samples

    @property
    def stderr(self) -> float:
        p = self.plugin_max_frequency
        return math.sqrt(p * (1.0 - p) / self.samples)

    def to_json(self) -> dict:
        return {
            "method": "plug-in",
            "samples": self.samples,
            "seed": self.seed,
            "max_count": self.max_count,
            "plugin_max_frequency": self.plugin_max_frequency,
            "distinct_products": self.distinct_products,
            "stderr": self.stderr,
            "top_element": self.top_encoding,
        }


def _mc_batch_products(elements, bits: np.ndarray):
    """Products for one batch; returns (codes array or byte-key list)."""
    first = elements[0]
    size, n = bits.shape
    if isinstance(first, MatrixElement):
        p, m = first.p, first.m
        mats = [np.array(e.rows(), dtype=np.int64) for e in elements]
        invs = [np.array(e.inv().rows(), dtype=np.int64) for e in elements]
        cur = np.broadcast_to(np.eye(m, dtype=np.int64), (size, m, m)).copy()
        for i in range(n):
            pick = bits[:, i].astype(bool)[:, None, None]
            step = np.where(pick, mats[i][None], invs[i][None])
            cur = np.matmul(cur, step) % p
        flat = cur.reshape(size, -1)
        powers = p ** np.arange(m * m - 1, -1, -1, dtype=np.int64)
        return flat @ powers
    if isinstance(first, PermutationElement):
        deg = first.degree
        imgs = [np.array(e.images, dtype=np.int64) for e in elements]
        invs = [np.array(e.inv().images, dtype=np.int64) for e in elements]
        cur = np.broadcast_to(np.arange(deg, dtype=np.int64), (size, deg)).copy()
        for i in range(n):
            pick = bits[:, i].astype(bool)[:, None]
            step = np.where(pick, imgs[i][None], invs[i][None])
            cur = np.take_along_axis(cur, step, axis=1)
        if deg <= 15:
            powers = deg ** np.arange(deg - 1, -1, -1, dtype=np.int64)
            return cur @ powers
        return [bytes(int(x) for x in row) for row in cur]
    table: TableElement = first  # table variant
    rows = np.array(table.table.rows, dtype=np.int64)
    fwd = np.array([e.index for e in elements], dtype=np.int64)
    bwd = np.array([e.inv().index for e in elements], dtype=np.int64)
    cur = np.full(size, table.table.identity_index, dtype=np.int64)
    for i in range(n):
        pick = bits[:, i].astype(bool)
        cur = np.where(pick, rows[cur, fwd[i]], rows[cur, bwd[i]])
    return cur


def rho_monte_carlo(
    seq: SignedSequence,
    samples: int,
    seed: int,
    threads: int = 1,
    distinct_cap: int = 1_000_000,
) -> MonteCarloResult:
    """Seeded plug-in estimate of the maximum point probability.

    No enumeration of the ambient group is required.  Output is identical for
    any `threads` value: batch b draws its sign bits from a Philox stream with
    counter (0, 0, 0, b) under key `seed`, and batch results are merged in
    batch order.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    elements = seq.elements
    n = seq.n
    n_batches = (samples + _MC_BATCH - 1) // _MC_BATCH

    def run_batch(b: int) -> dict:
        size = min(_MC_BATCH, samples - b * _MC_BATCH)
        gen = np.random.Generator(np.random.Philox(key=seed % 2**64, counter=[0, 0, 0, b]))
        bits = gen.integers(0, 2, size=(size, n), dtype=np.uint8)
        keys = _mc_batch_products(elements, bits)
        if isinstance(keys, list):
            counts: dict = {}
            for k in keys:
                counts[k] = counts.get(k, 0) + 1
            return counts
        uniq, cnt = np.unique(keys, return_counts=True)
        return {int(u): int(c) for u, c in zip(uniq, cnt)}

    merged: dict = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batch_results = list(pool.map(run_batch, range(n_batches)))
    else:
        batch_results = [run_batch(b) for b in range(n_batches)]
    for counts in batch_results:
        for k, c in counts.items():
            merged[k] = merged.get(k, 0) + c
        if len(merged) > distinct_cap:
            raise CapExceeded(f"distinct products exceeded cap {distinct_cap}")

    best = max(merged.values())
    top_key = min(k for k, c in merged.items() if c == best)
    top_hex = top_key.hex() if isinstance(top_key, bytes) else _code_to_hex(elements[0], top_key)
    return MonteCarloResult(
        samples=samples,
        seed=seed,
        max_count=best,
        distinct_products=len(merged),
        top_encoding=top_hex,
    )


def _code_to_hex(template: GroupElement, code: int) -> str:
    if isinstance(template, MatrixElement):
        p, m = template.p, template.m
        digits = []
        for _ in range(m * m):
            digits.append(code % p)
            code //= p
        ent = tuple(reversed(digits))
        return MatrixElement(p, m, ent).encode().hex()
    if isinstance(template, PermutationElement):
        deg = template.degree
        digits = []
        for _ in range(deg):
            digits.append(code % deg)
            code //= deg
        return PermutationElement(tuple(reversed(digits))).encode().hex()
    return TableElement(template.table, int(code)).encode().hex()


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------


def central_binomial_bound(n: int) -> Fraction:
    """Exact binomial ceiling C(n, floor(n/2)) / 2^n for the abelian walk."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(math.comb(n, n // 2), 1 << n)


def order_length_bound(s: int, n_or_N: int) -> tuple[float, bool]:
    """141 * max(1/s, 1/sqrt(n)); second component flags a vacuous (>= 1) bound."""
    if s < 2 or n_or_N < 2:
        raise ValueError("need s >= 2 and n >= 2")
    value = 141.0 * max(1.0 / s, 1.0 / math.sqrt(n_or_N))
    return value, value >= 1.0


def rho_below_order_length_bound(rho: Fraction, s: int, n_or_N: int) -> bool:
    """Exact test rho <= 141*max(1/s, 1/sqrt(n)) without floating point."""
    return rho * s <= 141 or rho * rho * n_or_N <= 141 * 141


def prime_order_length_bound(p: int, s: int, n: int) -> float:
    """2/p + 120/s + 19/sqrt(n) for walks in a projective group over Z/p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if s < 2 or n < 2:
        raise ValueError("need s >= 2 and n >= 2")
    return 2.0 / p + 120.0 / s + 19.0 / math.sqrt(n)


# ---------------------------------------------------------------------------
# the scalar (unipotent top-corner) walk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedSumResult:
    """Exact maximum point probability of S = sum ±a_i versus 1/(4K sqrt(n))."""

    n: int
    K: int
    rho: Fraction
    top_sum: int
    bound_holds: bool


def signed_sum_check(a_list, K: int | None = None) -> SignedSumResult:
    """Exact rho of the signed integer sum and the 1/(4K sqrt(n)) lower bound.

    Convolution runs over coefficients packed into one big integer (slot width
    n + 8 bits), which keeps the n-step update allocation-free and exact.
    """
    a = [int(x) for x in a_list]
    n = len(a)
    if n < 1:
        raise ValueError("need at least one term")
    if any(x == 0 for x in a):
        raise NotNonTrivial("terms must be nonzero")
    maxabs = max(abs(x) for x in a)
    K = maxabs if K is None else int(K)
    if K < maxabs:
        raise ValueError("K must dominate every |a_i|")

    width = n + 8
    mask = (1 << width) - 1
    packed = 1
    for x in a:
        packed *= (1 << (width * (K + x))) + (1 << (width * (K - x)))
    best, best_at = 0, 0
    for d in range(2 * n * K + 1):
        c = (packed >> (width * d)) & mask
        if c > best:
            best, best_at = c, d - n * K
    rho = Fraction(best, 1 << n)
    holds = 16 * K * K * n * rho * rho >= 1
    return SignedSumResult(n=n, K=K, rho=rho, top_sum=best_at, bound_holds=holds)


# ---------------------------------------------------------------------------
# sequence files
# ---------------------------------------------------------------------------


def sequence_from_spec(spec: dict, G: FiniteGroup) -> SignedSequence:
    """Sequence file contract: elements are indices or inline element specs."""
    from .groups import element_from_spec

    raw = spec["elements"]
    elems = []
    for item in raw:
        if isinstance(item, int):
            elems.append(G.element(item))
        else:
            elems.append(element_from_spec(G, item))
    repeat = int(spec.get("repeat", 1))
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    return SignedSequence(tuple(elems) * repeat, K=spec.get("K"))
