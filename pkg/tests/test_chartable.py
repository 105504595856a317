import cmath
from fractions import Fraction

import numpy as np
import pytest

from signedwalk import catalog
from signedwalk.chartable import (
    check_multiplicity_bounds,
    dixon_character_table,
    eigenvalue_multiplicities,
    max_character_ratio,
)
from signedwalk.errors import TooManyClasses
from signedwalk.groups import close_generators


def table_of(name):
    return dixon_character_table(catalog.named_group(name))


def test_cyclic_table_is_the_root_of_unity_grid():
    k = 7
    G = close_generators(catalog.cyclic_generators(k))
    t = dixon_character_table(G)
    assert t.degrees == (1,) * k
    # rows are j -> eps^{i j} for the generator's class, up to row order
    gen_class = int(t.classes.class_of[1])
    got = sorted(round(cmath.phase(v) / (2 * cmath.pi / k)) % k for v in t.values[:, gen_class])
    assert got == list(range(k))


def test_s3_degrees_and_orthogonality():
    t = table_of("s3")
    assert t.degrees == (1, 1, 2)
    sizes = np.array(t.classes.sizes, dtype=float)
    gram = (t.values * sizes) @ t.values.conj().T / t.group.order
    assert np.max(np.abs(gram - np.eye(3))) < 1e-10


def test_counts_match_classes(bench_groups):
    for name, G in bench_groups.items():
        t = dixon_character_table(G)
        assert len(t.degrees) == t.num_classes
        assert sum(d * d for d in t.degrees) == G.order
        assert all(int(t.values[i, 0].real.round()) == t.degrees[i] for i in range(len(t.degrees)))


def test_column_orthogonality(bench_groups):
    t = dixon_character_table(bench_groups["s4"])
    V = t.values
    for j in range(t.num_classes):
        for jp in range(t.num_classes):
            got = np.sum(V[:, j] * V[:, jp].conj())
            want = t.group.order / t.classes.sizes[j] if j == jp else 0.0
            assert abs(got - want) < 1e-6


def test_sl2_7_degree_squares():
    G = close_generators(catalog.sl2_generators(7))
    t = dixon_character_table(G)
    assert sum(d * d for d in t.degrees) == 7 * 48


def test_class_count_cap(bench_groups):
    with pytest.raises(TooManyClasses):
        dixon_character_table(bench_groups["s3"], max_classes=2)


def test_multiplicities_identity_class():
    t = table_of("s4")
    for i, d in enumerate(t.degrees):
        prof = eigenvalue_multiplicities(t, i, 0)
        assert prof.multiplicities == (d,)


def test_multiplicities_two_dim_at_three_cycle():
    t = table_of("s3")
    char = t.degrees.index(2)
    cls = next(c for c in range(3) if t.class_orders[c] == 3)
    prof = eigenvalue_multiplicities(t, char, cls)
    assert prof.multiplicities == (0, 1, 1)
    assert prof.central_order == 3


def test_multiplicities_linear_character():
    t = table_of("s3")
    cls = next(c for c in range(3) if t.class_orders[c] == 2)
    sign = next(
        i for i, d in enumerate(t.degrees) if d == 1 and abs(t.values[i, cls] + 1) < 1e-9
    )
    prof = eigenvalue_multiplicities(t, sign, cls)
    assert sum(prof.multiplicities) == 1
    assert prof.multiplicities[1] == 1  # eigenvalue -1 for the sign character


def test_multiplicities_match_explicit_matrices(bench_groups, bench_irreps):
    """Character-derived multiplicities equal the eigenvalue multiplicities of the
    explicit unitary blocks (independent path through eigendecomposition)."""
    for name in ("s4", "sl2_3"):
        G = bench_groups[name]
        t = dixon_character_table(G)
        for rep in bench_irreps[name]:
            # match the block to a table row by its character on class representatives
            chi = np.array([rep.character[r] for r in t.classes.representatives])
            row = min(
                range(t.num_classes),
                key=lambda i: np.max(np.abs(t.values[i] - chi)),
            )
            assert np.max(np.abs(t.values[row] - chi)) < 1e-6
            for cls in range(t.num_classes):
                prof = eigenvalue_multiplicities(t, row, cls)
                k = t.class_orders[cls]
                eigs = np.linalg.eigvals(rep.matrices[t.classes.representatives[cls]])
                counted = [0] * k
                for lam in eigs:
                    j = round(cmath.phase(lam) / (2 * cmath.pi / k)) % k
                    assert abs(lam - cmath.exp(2j * cmath.pi * j / k)) < 1e-6
                    counted[j] += 1
                assert tuple(counted) == prof.multiplicities


def test_max_character_ratio_s3():
    value, char_idx, _ = max_character_ratio(table_of("s3"))
    assert value == pytest.approx(0.5)
    assert table_of("s3").degrees[char_idx] == 2


def test_max_character_ratio_abelian_none():
    G = close_generators(catalog.cyclic_generators(6))
    assert max_character_ratio(dixon_character_table(G)) is None


def test_multiplicity_bounds_cyclic_empty():
    G = close_generators(catalog.cyclic_generators(10))
    report = check_multiplicity_bounds(dixon_character_table(G), Fraction(1, 6))
    assert report.entries == []
    assert report.all_pass


def test_multiplicity_bounds_hypothesis_failure_on_s4():
    # the 2-dim character of S4 kills the Klein four-group, so its ratio hits 1
    report = check_multiplicity_bounds(table_of("s4"), Fraction(1, 6))
    assert report.count("hypothesis_failed") > 0
    assert report.all_pass  # checked entries still satisfy their windows


def test_table_json_dump(bench_groups):
    payload = dixon_character_table(bench_groups["q8"]).to_json()
    assert payload["order"] == 8
    assert sorted(payload["degrees"]) == [1, 1, 1, 1, 2]
    assert len(payload["characters"]) == 5
