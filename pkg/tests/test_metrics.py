import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtopo.errors import CapacityError, DomainError, InadmissibleNodeError
from symtopo.lattice import TopologySpec, from_weight_index, node_count, unlabel
from symtopo.metrics import (
    PathLengthHistogram,
    density,
    density_ratio,
    diameter,
    distance,
    hypercube_mesh_density_ratio,
    mean_path_length,
    path_length_histogram,
    path_length_histogram_sampled,
    summary,
    symplectic_hypercube_density_ratio,
    symplectic_mesh_density_ratio,
)
from symtopo.oracle import bfs_distances

mesh = TopologySpec.mesh
cube = TopologySpec.hypercube
symp = TopologySpec.symplectic


def hamming_histogram(n):
    # brute force over all unordered pairs of n-bit words
    counts = {}
    for a in range(2**n):
        for b in range(a + 1, 2**n):
            d = bin(a ^ b).count("1")
            counts[d] = counts.get(d, 0) + 1
    return counts


def test_distance_examples():
    assert distance((1, 2), (1, 2), mesh(3, 2)) == 0
    for mu, n in [(3, 2), (5, 4)]:
        assert distance((0,) * n, (mu - 1,) * n, mesh(mu, n)) == (mu - 1) * n
    for M, n in [(1, 2), (2, 5), (3, 3)]:
        assert distance((0,) * n, (2 * M,) * n, symp(M, n)) == M * n
    assert distance((2, 0), (0, 2), symp(1, 2)) == 2
    # confirm the last one with the BFS oracle
    assert bfs_distances(2, symp(1, 2))[6] == 2


def test_distance_rejects_inadmissible():
    with pytest.raises(InadmissibleNodeError):
        distance((1, 0), (0, 0), symp(1, 2))
    with pytest.raises(DomainError):
        distance((3, 0), (0, 0), mesh(3, 2))


def _random_node(spec, rng):
    if spec.is_symplectic:
        return from_weight_index(rng.randrange(node_count(spec)), spec)
    return unlabel(rng.randrange(node_count(spec)), spec)


@pytest.mark.parametrize("spec", [mesh(6, 4), cube(12), symp(2, 10), symp(5, 4), symp(1, 9)], ids=str)
def test_metric_axioms_sampled(spec):
    rng = random.Random(11)
    for _ in range(10**4):
        a, b, c = (_random_node(spec, rng) for _ in range(3))
        dab = distance(a, b, spec)
        assert dab == distance(b, a, spec)
        assert (dab == 0) == (a == b)
        assert distance(a, c, spec) <= dab + distance(b, c, spec)
        assert 0 <= dab <= diameter(spec)


@given(st.integers(1, 5), st.integers(1, 8), st.data())
def test_symplectic_taxicab_even(M, n, data):
    spec = symp(M, n)
    p = data.draw(st.integers(0, node_count(spec) - 1))
    q = data.draw(st.integers(0, node_count(spec) - 1))
    a, b = from_weight_index(p, spec), from_weight_index(q, spec)
    assert sum(abs(x - y) for x, y in zip(a, b)) % 2 == 0


@pytest.mark.parametrize(
    "spec,L",
    [(symp(2, 10), 20), (cube(10), 10), (cube(12), 12), (mesh(6, 3), 15), (mesh(6, 4), 20), (symp(1, 8), 8)],
    ids=str,
)
def test_diameter_examples(spec, L):
    assert diameter(spec) == L


def test_density_table_forms():
    for n in range(1, 12):
        assert density(cube(n)) == pytest.approx((2 / n) ** n, rel=1e-12)
        for mu in range(2, 10):
            assert density(mesh(mu, n)) == pytest.approx((mu / ((mu - 1) * n)) ** n, rel=1e-12)
        for M in range(1, 6):
            expected = 0.5 * ((2 * M + 1) ** n + 1) / (M * n) ** n
            assert density(symp(M, n)) == pytest.approx(expected, rel=1e-12)


def test_density_ratio_examples():
    for n in range(2, 11):
        assert density_ratio(symp(1, n), cube(n)) == pytest.approx((3**n + 1) / 2 ** (n + 1), rel=1e-12)
    assert density_ratio(mesh(2, 5), cube(5)) == 1.0


@pytest.mark.parametrize("n", range(2, 11))
def test_density_ratio_closed_forms(n):
    for mu in range(2, 10):
        assert density_ratio(cube(n), mesh(mu, n)) == pytest.approx(hypercube_mesh_density_ratio(mu, n), rel=1e-12)
        assert density_ratio(symp(mu - 1, n), mesh(mu, n)) == pytest.approx(
            symplectic_mesh_density_ratio(mu, n), rel=1e-12
        )
    for M in range(1, 6):
        assert density_ratio(symp(M, n), cube(n)) == pytest.approx(
            symplectic_hypercube_density_ratio(M, n), rel=1e-12
        )


def test_symplectic_mesh_ratio_equal_diameter_instances():
    # equal diameter pairs mesh:mu=6 vs symplectic:M=5 at n = 3, 4
    assert symplectic_mesh_density_ratio(6, 3) == pytest.approx(1332 / 432, rel=1e-12)
    assert symplectic_mesh_density_ratio(6, 4) == pytest.approx((11**4 + 1) / (2 * 6**4), rel=1e-12)


@pytest.mark.parametrize(
    "spec,row",
    [
        (cube(12), (4096, 12, 12, 12)),
        (symp(2, 5), (1563, 10, 50, 15)),
        (mesh(6, 4), (1296, 20, 8, 4)),
        (mesh(2, 4), (16, 4, 4, 4)),
        (symp(1, 2), (5, 2, 4, 3)),
    ],
    ids=str,
)
def test_summary_examples(spec, row):
    s = summary(spec)
    assert (s.nu, s.L, s.eps_max, s.eps_min) == row
    assert s.rho == node_count(spec) / s.L**spec.n
    assert 0 < s.eps_min <= s.eps_max < s.nu


@pytest.mark.parametrize("n", range(1, 9))
def test_hypercube_histogram_binomial(n):
    h = path_length_histogram(cube(n))
    brute = hamming_histogram(n)
    assert h.counts == {d: brute.get(d, 0) for d in range(1, n + 1)}
    assert h.counts == {d: math.comb(n, d) * 2 ** (n - 1) for d in range(1, n + 1)}


def test_hypercube_histogram_binomial_n12():
    h = path_length_histogram(cube(12))
    assert h.counts == {d: math.comb(12, d) * 2**11 for d in range(1, 13)}


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_mesh_mu2_equals_hypercube(n):
    assert path_length_histogram(mesh(2, n)).counts == path_length_histogram(cube(n)).counts


def test_mean_examples():
    h = PathLengthHistogram(cube(3), {1: 0, 2: 0, 3: 1}, 1, "exact")
    assert mean_path_length(h) == 3.0
    assert path_length_histogram(cube(4)).mean == pytest.approx(32 / 15, rel=1e-12)
    assert path_length_histogram(mesh(3, 1)).mean == pytest.approx(4 / 3, rel=1e-12)
    with pytest.raises(DomainError):
        mean_path_length(PathLengthHistogram(cube(3), {1: 0, 2: 0, 3: 0}, 0, "exact"))


def brute_histogram(spec):
    step = 2 if spec.is_symplectic else 1
    labels = range(0, spec.lattice_size, step)
    counts = {}
    for a, b in itertools.combinations(labels, 2):
        d = distance(unlabel(a, spec), unlabel(b, spec), spec)
        counts[d] = counts.get(d, 0) + 1
    return counts


@pytest.mark.parametrize("spec", [symp(2, 3), symp(1, 4), mesh(4, 3), symp(3, 2), mesh(5, 2)], ids=str)
def test_exact_histogram_matches_pair_loop(spec):
    h = path_length_histogram(spec)
    brute = brute_histogram(spec)
    assert h.counts == {d: brute.get(d, 0) for d in range(1, diameter(spec) + 1)}


def test_symplectic_m2_n5_exact_histogram():
    spec = symp(2, 5)
    h = path_length_histogram(spec)
    assert h.support() == list(range(1, 11))
    assert h.total_pairs == sum(h.counts.values()) == 1563 * 1562 // 2
    assert max(h.support()) == diameter(spec)


@pytest.mark.parametrize("spec", [symp(2, 4), mesh(5, 3), cube(9)], ids=str)
def test_exact_histogram_thread_independent(spec):
    base = path_length_histogram(spec).to_csv()
    for threads in (2, 8):
        assert path_length_histogram(spec, threads=threads).to_csv() == base


def test_exact_histogram_budget():
    with pytest.raises(CapacityError, match="sampled"):
        path_length_histogram(cube(20))
    with pytest.raises(CapacityError):
        path_length_histogram(cube(8), budget=100)


def test_sampled_determinism_and_threads():
    spec = symp(2, 6)
    a = path_length_histogram_sampled(spec, 200_000, 7)
    b = path_length_histogram_sampled(spec, 200_000, 7, threads=4)
    c = path_length_histogram_sampled(spec, 200_000, 8)
    assert a.to_csv() == b.to_csv()
    assert a.counts != c.counts
    assert a.total_pairs == sum(a.counts.values()) == 200_000


def test_sampled_close_to_exact():
    spec = symp(2, 5)
    exact = path_length_histogram(spec)
    h = path_length_histogram_sampled(spec, 300_000, 3)
    assert abs(h.mean - exact.mean) < 4 * h.std_error()


def test_sampled_small_graph_distinct_pairs():
    # two-node graph: every sampled pair must be the single edge
    h = path_length_histogram_sampled(cube(1), 1000, 0)
    assert h.counts == {1: 1000}


def test_sampled_errors():
    with pytest.raises(DomainError):
        path_length_histogram_sampled(cube(3), 0, 1)
    with pytest.raises(DomainError):
        path_length_histogram_sampled(cube(3), 10, -1)


def test_csv_format_and_round_trip():
    h = path_length_histogram(symp(1, 2))
    text = h.to_csv()
    lines = text.splitlines()
    assert lines[0] == "# spec=symplectic:M=1,n=2"
    assert "# mode=exact" in lines
    header = lines.index("distance,count,fraction")
    assert all(l.startswith("#") for l in lines[:header])
    rows = [l.split(",") for l in lines[header + 1 :]]
    assert [int(r[0]) for r in rows] == [1, 2]
    assert sum(int(r[1]) for r in rows) == 10
    assert sum(float(r[2]) for r in rows) == pytest.approx(1.0)
    back = PathLengthHistogram.from_csv(text)
    assert back.counts == h.counts and back.total_pairs == h.total_pairs and back.spec == h.spec
    assert text.isascii()

    s = path_length_histogram_sampled(cube(6), 500, 9)
    sl = s.to_csv().splitlines()
    assert "# seed=9" in sl and "# sample_size=500" in sl
    assert any(l.startswith("# generator=") for l in sl)
    assert PathLengthHistogram.from_csv(s.to_csv()).to_csv() == s.to_csv()
