"""Flag counts, Eulerian matrices, reciprocity, and gamma expansions."""

import itertools
import math

import pytest

from bicox.cosets import double_quotient_size
from bicox.enumeration import (
    GammaTable,
    eulerian_from_flag,
    eulerian_symmetric,
    flag_f,
    flag_h,
    flag_h_from_f,
    gamma_basis_coeffs,
    gamma_expansion,
    h_specialization,
    reciprocity_holds,
    two_sided_eulerian,
)
from bicox.errors import GammaBasisError

from expected_tables import EULERIAN, GAMMA, grid_entries


# --- independent permutation-group oracles -----------------------------------


def census_from_cayley_graph(identity, n_gens, right_act, left_act):
    """Two-sided Eulerian matrix of a group given by explicit generator
    actions, with lengths from scratch by BFS of the right Cayley graph."""
    lengths = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for w in frontier:
            for s in range(n_gens):
                v = right_act(w, s)
                if v not in lengths:
                    lengths[v] = lengths[w] + 1
                    new.append(v)
        frontier = new
    matrix = [[0] * (n_gens + 1) for _ in range(n_gens + 1)]
    for w, lw in lengths.items():
        dl = sum(lengths[left_act(w, s)] < lw for s in range(n_gens))
        dr = sum(lengths[right_act(w, s)] < lw for s in range(n_gens))
        matrix[dl][dr] += 1
    return matrix


def swap_positions(w, i):
    out = list(w)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def type_a_census(n):
    """Symmetric group S_{n+1} with adjacent transpositions."""
    identity = tuple(range(1, n + 2))

    def left_act(w, s):
        a, b = s + 1, s + 2
        return tuple(b if x == a else a if x == b else x for x in w)

    return census_from_cayley_graph(identity, n, swap_positions, left_act)


def type_b_census(n):
    """Signed permutations; the last generator negates the last slot."""
    identity = tuple(range(1, n + 1))

    def right_act(w, s):
        if s < n - 1:
            return swap_positions(w, s)
        return w[:-1] + (-w[-1],)

    def left_act(w, s):
        if s < n - 1:
            a, b = s + 1, s + 2
            table = {a: b, b: a, -a: -b, -b: -a}
            return tuple(table.get(x, x) for x in w)
        return tuple(-x if abs(x) == n else x for x in w)

    return census_from_cayley_graph(identity, n, right_act, left_act)


def type_d_census(n):
    """Even-signed permutations; the last generator swaps and negates the
    last two slots."""
    identity = tuple(range(1, n + 1))

    def right_act(w, s):
        if s < n - 1:
            return swap_positions(w, s)
        return w[:-2] + (-w[-1], -w[-2])

    def left_act(w, s):
        if s < n - 1:
            a, b = s + 1, s + 2
            table = {a: b, b: a, -a: -b, -b: -a}
        else:
            a, b = n - 1, n
            table = {a: -b, -b: a, b: -a, -a: b}
        return tuple(table.get(x, x) for x in w)

    return census_from_cayley_graph(identity, n, right_act, left_act)


def permutation_flag_h(n):
    """Exact descent-pair census of S_{n+1} straight from one-line words."""
    size = 1 << n
    h = [[0] * size for _ in range(size)]
    for w in itertools.permutations(range(1, n + 2)):
        des_r = sum(1 << i for i in range(n) if w[i] > w[i + 1])
        inv = sorted(range(n + 1), key=lambda i: w[i])
        des_l = sum(1 << i for i in range(n) if inv[i] > inv[i + 1])
        h[des_l][des_r] += 1
    return h


# --- flag tables --------------------------------------------------------------


def test_flag_h_a2_descent_table(a2):
    h = flag_h(a2)
    expected = {
        (0, 0): 1,
        (0b01, 0b01): 1,
        (0b10, 0b10): 1,
        (0b01, 0b10): 1,
        (0b10, 0b01): 1,
        (0b11, 0b11): 1,
    }
    for gens_l in range(4):
        for gens_r in range(4):
            assert h[gens_l][gens_r] == expected.get((gens_l, gens_r), 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_flag_h_matches_permutation_census(n, tables):
    assert flag_h(tables(f"A{n}")) == permutation_flag_h(n)


def test_flag_f_a2_values(a2):
    f = flag_f(a2)
    expected = {
        (0, 0): 1,
        (1, 0): 1, (2, 0): 1, (0, 1): 1, (0, 2): 1,
        (3, 0): 1, (0, 3): 1,
        (1, 1): 2, (1, 2): 2, (2, 1): 2, (2, 2): 2,
        (3, 1): 3, (3, 2): 3, (1, 3): 3, (2, 3): 3,
        (3, 3): 6,
    }
    for (gens_l, gens_r), value in expected.items():
        assert f[gens_l][gens_r] == value


@pytest.mark.parametrize("spec", ["A2", "B2", "A3"])
def test_flag_f_equals_double_quotient_sizes(spec, tables):
    table = tables(spec)
    full = table.full_mask
    f = flag_f(table)
    for gens_l in range(full + 1):
        for gens_r in range(full + 1):
            assert f[gens_l][gens_r] == double_quotient_size(
                table, full ^ gens_l, full ^ gens_r
            )


def test_flag_f_corners(a3):
    f = flag_f(a3)
    assert f[0][0] == 1
    assert f[a3.full_mask][a3.full_mask] == a3.order


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "B2", "B3", "D4", "H3"])
def test_inclusion_exclusion_inverts_flag_f(spec, tables):
    table = tables(spec)
    assert flag_h_from_f(flag_f(table), table.rank) == flag_h(table)


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "B2", "B3", "D4", "H3"])
def test_reciprocity(spec, tables):
    table = tables(spec)
    assert reciprocity_holds(flag_f(table), flag_h(table), table.rank)


def test_reciprocity_rejects_corrupted_table(a2):
    f = flag_f(a2)
    h = flag_h(a2)
    f[1][1] += 1
    assert not reciprocity_holds(f, h, a2.rank)


# --- Eulerian matrices ---------------------------------------------------------


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "A4", "B2", "B3", "F4"])
def test_eulerian_matches_reference(spec, tables):
    assert two_sided_eulerian(tables(spec)) == EULERIAN[spec]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_census_oracle(n, tables):
    assert two_sided_eulerian(tables(f"A{n}")) == type_a_census(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_b_census_oracle(n, tables):
    assert two_sided_eulerian(tables(f"B{n}")) == type_b_census(n)


def test_type_d_census_oracle(tables):
    assert two_sided_eulerian(tables("D4")) == type_d_census(4)


@pytest.mark.parametrize("spec", ["A1", "A2", "A4", "B3", "D4", "H3", "I2(7)"])
def test_eulerian_from_flag_agrees(spec, tables):
    table = tables(spec)
    assert eulerian_from_flag(flag_f(table), table.rank) == two_sided_eulerian(table)


def test_dihedral_eulerian(tables):
    assert two_sided_eulerian(tables("I2(7)")) == [[1, 0, 0], [0, 12, 0], [0, 0, 1]]


@pytest.mark.parametrize("spec", list(EULERIAN))
def test_reference_matrices_are_symmetric(spec):
    assert eulerian_symmetric(EULERIAN[spec])


def test_symmetry_negative_control():
    bad = [row[:] for row in EULERIAN["A3"]]
    bad[1][2] += 1
    assert not eulerian_symmetric(bad)


def classical_eulerian_number(n, k):
    """Descent count distribution of S_n by the alternating-sum formula."""
    return sum(
        (-1) ** j * math.comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 2)
    )


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_row_sums_are_one_sided_eulerian(rank, tables):
    table = tables(f"A{rank}")
    matrix = two_sided_eulerian(table)
    row_sums = [sum(row) for row in matrix]
    assert row_sums == [
        classical_eulerian_number(rank + 1, k) for k in range(rank + 1)
    ]
    assert sum(row_sums) == table.order
    # and the marginal really is the left-descent census
    direct = [0] * (rank + 1)
    for w in range(table.order):
        direct[int(table.des_left[w]).bit_count()] += 1
    assert row_sums == direct


def test_flag_h_mass(b3):
    h = flag_h(b3)
    assert sum(sum(row) for row in h) == b3.order
    assert h[0][0] == 1


def test_inclusion_exclusion_rejects_corrupt_input(a2):
    from bicox.errors import InternalCheckError

    f = flag_f(a2)
    f[1][1] -= 10
    with pytest.raises(InternalCheckError):
        flag_h_from_f(f, a2.rank)


@pytest.mark.parametrize("spec", ["A3", "B3", "H3"])
def test_h_specialization(spec, tables):
    table = tables(spec)
    coeffs = h_specialization(two_sided_eulerian(table))
    direct = [0] * (2 * table.rank + 1)
    for w in range(table.order):
        total = int(table.des_left[w]).bit_count() + int(table.des_right[w]).bit_count()
        direct[total] += 1
    assert coeffs == direct


# --- gamma expansion ------------------------------------------------------------


def test_gamma_basis_coeffs():
    # (x + y)(1 + xy) over n = 2: x + y + x^2 y + x y^2
    assert gamma_basis_coeffs(2, 0, 1) == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert gamma_basis_coeffs(2, 1, 0) == [[0, 0, 0], [0, 1, 0], [0, 0, 0]]


def test_gamma_a2(a2):
    gamma = gamma_expansion(two_sided_eulerian(a2))
    assert gamma.entries[(0, 0)] == 1
    assert gamma.entries[(1, 0)] == 2
    assert all(v == 0 for k, v in gamma.entries.items() if k not in {(0, 0), (1, 0)})
    assert gamma.as_grid() == [[1, 0], [0, 2]]


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "A4", "B2", "B3", "F4"])
def test_gamma_matches_reference(spec, tables):
    gamma = gamma_expansion(two_sided_eulerian(tables(spec)))
    assert grid_entries(gamma.as_grid()) == grid_entries(GAMMA[spec])
    assert not gamma.negative_entries()


def test_gamma_reference_grids_reconstruct():
    """The pinned gamma grids reproduce the pinned Eulerian matrices."""
    for spec, grid in GAMMA.items():
        n = len(EULERIAN[spec]) - 1
        total = [[0] * (n + 1) for _ in range(n + 1)]
        for (row, a), value in grid_entries(grid).items():
            coeffs = gamma_basis_coeffs(n, a, row - a)
            for i in range(n + 1):
                for j in range(n + 1):
                    total[i][j] += value * coeffs[i][j]
        assert total == EULERIAN[spec], spec


def test_gamma_dihedral(tables):
    gamma = gamma_expansion(two_sided_eulerian(tables("I2(7)")))
    assert gamma.entries[(0, 0)] == 1
    assert gamma.entries[(1, 0)] == 10  # 2m - 4


@pytest.mark.parametrize("spec", ["H3", "H4", "I2(5)", "I2(6)"])
def test_gamma_nonnegative_observed(spec, tables):
    gamma = gamma_expansion(two_sided_eulerian(tables(spec)))
    assert not gamma.negative_entries()


def test_gamma_rejects_asymmetric_input():
    with pytest.raises(GammaBasisError):
        gamma_expansion([[1, 0], [5, 1]])


def test_gamma_negative_entries_reported_not_raised():
    table = GammaTable(n=2, entries={(0, 0): 1, (1, 0): -2})
    assert table.negative_entries() == {(1, 0): -2}
