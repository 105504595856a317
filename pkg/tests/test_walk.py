import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedwalk import catalog
from signedwalk.elements import MatrixElement, PermutationElement
from signedwalk.errors import CapExceeded, ElementNotInGroup, NotNonTrivial
from signedwalk.groups import close_generators
from signedwalk.walk import (
    SignedSequence,
    central_binomial_bound,
    exact_distribution,
    rho_exact,
    rho_monte_carlo,
    sequence_from_spec,
)

from conftest import brute_force_distribution, random_sequence


def cyclic(k):
    return close_generators(catalog.cyclic_generators(k))


def test_sequence_rejects_identity():
    G = cyclic(5)
    with pytest.raises(NotNonTrivial):
        SignedSequence((G.element(0),))


def test_sequence_order_statistics():
    G = close_generators(catalog.symmetric_generators(4))
    transposition = G.index_of(PermutationElement((1, 0, 2, 3)))
    four_cycle = G.index_of(PermutationElement((1, 2, 3, 0)))
    seq = SignedSequence(
        (G.element(transposition), G.element(four_cycle), G.element(four_cycle))
    )
    assert seq.orders() == (2, 4, 4)
    assert seq.min_order == 2
    assert seq.count_order_at_least(3) == 2
    assert seq.count_order_at_least(5) == 0


def test_single_step_high_order():
    G = cyclic(7)
    d = exact_distribution(G, SignedSequence.constant(G.element(1), 1))
    nonzero = {i: c for i, c in enumerate(d.counts) if c}
    assert nonzero == {1: 1, G.inv(1): 1}


def test_involution_walk_is_deterministic():
    G = cyclic(2)
    d = exact_distribution(G, SignedSequence.constant(G.element(1), 3))
    assert d.counts == [0, 8]  # point mass at the involution, count 2^3


def test_four_step_counts_match_enumeration():
    G = cyclic(9)  # order > 8 so no wraparound
    seq = SignedSequence.constant(G.element(1), 4)
    d = exact_distribution(G, seq)
    assert d.counts == brute_force_distribution(G, seq)
    by_power = {i: c for i, c in enumerate(d.counts) if c}
    # walk lands on A^j with the central binomial pattern
    a2, am2 = G.mul(1, 1), G.inv(G.mul(1, 1))
    a4, am4 = G.mul(a2, a2), G.inv(G.mul(a2, a2))
    assert by_power == {0: 6, a2: 4, am2: 4, a4: 1, am4: 1}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10))
def test_oracle_agreement_random(bench_groups, seed, n):
    rng = np.random.default_rng(seed)
    G = bench_groups[["s3", "d4", "q8", "a4", "s4", "sl2_3"][int(rng.integers(6))]]
    seq = random_sequence(G, n, rng)
    d = exact_distribution(G, seq)
    assert d.total() == 2**n
    assert d.counts == brute_force_distribution(G, seq)


def test_conservation_longer_walks(bench_groups):
    rng = np.random.default_rng(99)
    for name in ("s4", "sl2_5"):
        G = bench_groups[name]
        seq = random_sequence(G, 40, rng)
        assert exact_distribution(G, seq).total() == 2**40


def test_support_inside_generated_subgroup(bench_groups):
    G = bench_groups["s4"]
    four_cycle = PermutationElement((1, 2, 3, 0))
    seq = SignedSequence.constant(G.element(G.index_of(four_cycle)), 6)
    sub = close_generators([four_cycle])
    sub_encodings = {sub.encoding(i) for i in range(sub.order)}
    d = exact_distribution(G, seq)
    for i in d.support():
        assert G.encoding(i) in sub_encodings


def test_reversal_symmetry(bench_groups):
    rng = np.random.default_rng(3)
    G = bench_groups["sl2_3"]
    seq = random_sequence(G, 7, rng)
    rev = SignedSequence(tuple(reversed(seq.elements)))
    d = exact_distribution(G, seq)
    drev = exact_distribution(G, rev)
    # reversed walk is the image of the original under g -> g^{-1}
    assert all(drev.counts[G.inv(i)] == d.counts[i] for i in range(G.order))
    assert rho_exact(G, seq).count == rho_exact(G, rev).count


def test_rho_example_one_parity():
    G = cyclic(67)
    a = G.element(1)
    for n in (5, 8):
        r = rho_exact(G, SignedSequence.constant(a, n))
        assert r.fraction == central_binomial_bound(n)
        if n % 2 == 0:
            assert r.maximizers == (0,)
        else:
            assert set(r.maximizers) == {1, G.inv(1)}


def test_rho_order_three_short_walk():
    G = cyclic(3)
    r = rho_exact(G, SignedSequence.constant(G.element(1), 2))
    assert r.fraction == Fraction(1, 2)
    assert r.maximizers == (0,)


def test_torsion_lower_bound_all_equal():
    for s in range(3, 9):
        G = cyclic(s)
        for n in (5, 12):
            r = rho_exact(G, SignedSequence.constant(G.element(1), n))
            assert r.fraction >= Fraction(1, s)


def test_element_not_in_group():
    G = cyclic(5)
    alien = PermutationElement((1, 2, 3, 4, 0, 5))
    with pytest.raises(ElementNotInGroup):
        exact_distribution(G, SignedSequence((alien,)))


def test_walk_length_cap():
    G = cyclic(5)
    with pytest.raises(CapExceeded):
        SignedSequence((G.element(1),) * 5000)


def test_long_walk_float_value():
    # counts near 2^1200 exceed float range; the convenience double must survive
    G = cyclic(5)
    r = rho_exact(G, SignedSequence.constant(G.element(1), 1200))
    assert r.value == pytest.approx(0.2, abs=1e-9)


def test_monte_carlo_exact_for_involution():
    G = cyclic(2)
    seq = SignedSequence.constant(G.element(1), 3)
    mc = rho_monte_carlo(seq, samples=5000, seed=1)
    assert mc.plugin_max_frequency == 1.0
    assert mc.distinct_products == 1


def test_monte_carlo_deterministic_across_threads(bench_groups):
    G = bench_groups["sl2_5"]
    rng = np.random.default_rng(17)
    seq = random_sequence(G, 8, rng)
    a = rho_monte_carlo(seq, samples=100_000, seed=7, threads=1)
    b = rho_monte_carlo(seq, samples=100_000, seed=7, threads=4)
    assert a == b


def test_monte_carlo_within_five_stderr(bench_groups):
    G = bench_groups["sl2_5"]
    rng = np.random.default_rng(23)
    seq = random_sequence(G, 8, rng)
    mc = rho_monte_carlo(seq, samples=100_000, seed=11)
    exact = rho_exact(G, seq)
    rho = exact.value
    assert abs(mc.plugin_max_frequency - rho) <= 5 * math.sqrt(rho * (1 - rho) / 100_000)


def test_monte_carlo_wide_permutation_bytes_path():
    # degree > 15 permutations fall back to byte-keyed accumulation
    cyc = PermutationElement(tuple((i + 1) % 17 for i in range(17)))
    G = close_generators([cyc])
    seq = SignedSequence.constant(G.element(G.index_of(cyc)), 9)
    mc = rho_monte_carlo(seq, samples=40_000, seed=3, threads=2)
    exact = rho_exact(G, seq)
    assert abs(mc.plugin_max_frequency - exact.value) <= 5 * mc.stderr + 1e-12
    assert mc == rho_monte_carlo(seq, samples=40_000, seed=3, threads=1)


def test_monte_carlo_permutation_and_table_paths():
    Gp = close_generators(catalog.symmetric_generators(4))
    seqp = SignedSequence.constant(Gp.element(Gp.index_of(PermutationElement((1, 2, 3, 0)))), 4)
    mcp = rho_monte_carlo(seqp, samples=20_000, seed=3)
    exact = rho_exact(Gp, seqp).value
    assert abs(mcp.plugin_max_frequency - exact) <= 5 * mcp.stderr + 1e-12

    rows = [[(i + j) % 8 for j in range(8)] for i in range(8)]
    from signedwalk.elements import MulTable, TableElement

    t = MulTable(rows)
    seqt = SignedSequence.constant(TableElement(t, 1), 6)
    Gt = close_generators([TableElement(t, 1)])
    mct = rho_monte_carlo(seqt, samples=20_000, seed=3)
    exact_t = rho_exact(Gt, seqt).value
    assert abs(mct.plugin_max_frequency - exact_t) <= 5 * mct.stderr + 1e-12


def test_distribution_json_dump():
    G = cyclic(5)
    d = exact_distribution(G, SignedSequence.constant(G.element(1), 2))
    payload = d.to_json(G)
    assert payload["denom_exp"] == 2
    assert sum(int(e["count"]) for e in payload["entries"]) == 4


def test_sequence_from_spec_indices_and_inline():
    G = close_generators(catalog.sl2_generators(5))
    seq = sequence_from_spec({"elements": [1, [[1, 1], [0, 1]]], "repeat": 2}, G)
    assert seq.n == 4
    assert seq.elements[1] == MatrixElement.from_rows([[1, 1], [0, 1]], 5)
