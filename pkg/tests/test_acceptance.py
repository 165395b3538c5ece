"""End-to-end acceptance checks.

Each test prints one verdict line (bypassing capture) so a full run reads as
a checklist.  Expected numbers come from the frozen tables in conftest and
from independent in-test oracles; tolerances are stated next to each check.
"""

from __future__ import annotations

import time

import numpy as np

from pwrkit import (
    CitationMatrix,
    MetricVector,
    PwrOptions,
    UndirectedGraph,
    citation_factor,
    column_sums,
    converged_pwr,
    convergence_report,
    grand_total,
    louvain_partition,
    matrix_power_oracle,
    modularity,
    nonzero_entries,
    pearson,
    pwr_trace,
    read_csv_matrix,
    read_pajek,
    row_sums,
    sjr_2013,
    strongly_connected_components,
    transpose,
    write_csv_matrix,
    write_pajek,
)

from .conftest import (
    CITATION_FACTOR_REFERENCE,
    GRAND_TOTAL_REFERENCE,
    RATIOS_WITH_SELF,
    RATIOS_WITHOUT_SELF,
)


def _verdict(capsys, num: int, description: str, problems: list) -> None:
    ok = not problems
    with capsys.disabled():
        print(f"acceptance {num:02d} {'PASS' if ok else 'FAIL'}: {description}")
    assert ok, f"criterion {num} ({description}): " + "; ".join(str(p) for p in problems[:8])


def _close_rel(a, b, rtol: float = 1e-9) -> bool:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return bool(np.all(np.abs(a - b) <= rtol * np.maximum(np.abs(a), np.abs(b))))


def _ratio_problems(trace, journals, reference, tol):
    problems = []
    for name, expected in reference.items():
        idx = journals.index_of(name)
        for k, want in enumerate(expected, start=1):
            got = float(trace.ratio_at(k)[idx])
            if abs(got - want) > tol + 1e-12:
                problems.append(f"{name} k={k}: got {got:.4f}, expected {want}")
    return problems


def test_01_reference_ratios_with_self_citations(capsys, journals):
    start = time.perf_counter()
    trace = pwr_trace(journals, PwrOptions(k_max=7))
    elapsed = time.perf_counter() - start
    problems = _ratio_problems(trace, journals, RATIOS_WITH_SELF, 0.01)
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.3f}s is not under 1s")
    _verdict(capsys, 1, "49 reference ratios with self-citations, within 0.01, under 1 s", problems)


def test_02_reference_ratios_without_self_citations(capsys, journals):
    trace = pwr_trace(journals, PwrOptions(k_max=7, self_citations="exclude"))
    problems = _ratio_problems(trace, journals, RATIOS_WITHOUT_SELF, 0.01)
    _verdict(capsys, 2, "49 reference ratios without self-citations, within 0.01", problems)


def test_03_homogeneous_set_is_stable_by_iteration_seven(capsys, journals):
    trace = pwr_trace(journals, PwrOptions(k_max=7, self_citations="exclude"))
    delta = float(np.abs(trace.ratio_at(7) - trace.ratio_at(6)).max())
    problems = []
    if delta > 0.01:
        problems.append(f"max |r(7) - r(6)| = {delta:.5f} > 0.01")
    full = pwr_trace(journals, PwrOptions(k_max=20, self_citations="exclude"))
    report = convergence_report(full, 0.01)
    if report.k_converged != 7:
        problems.append(f"reported k_converged {report.k_converged}, expected 7")
    _verdict(capsys, 3, "no-self ratios stable by k = 7 at tol 0.01", problems)


def test_04_correlation_with_shipped_sjr(capsys, journals):
    r_vec, _report = converged_pwr(journals, PwrOptions(self_citations="exclude"))
    r = pearson(MetricVector("pwr", journals.labels, r_vec), sjr_2013())
    problems = [] if -0.27 <= r <= -0.25 else [f"pearson {r:.5f} outside [-0.27, -0.25]"]
    _verdict(capsys, 4, "converged no-self ratios vs shipped SJR: r = -0.26 +- 0.01", problems)


def test_05_citation_factor_is_the_first_iteration(capsys, journals):
    cf = citation_factor(journals)
    problems = []
    for idx, want in enumerate(CITATION_FACTOR_REFERENCE):
        got = float(cf.values[idx])
        if abs(got - want) > 0.005:
            problems.append(f"{journals.labels[idx]}: got {got:.4f}, expected {want}")
    trace = pwr_trace(journals, PwrOptions(k_max=1))
    if not np.array_equal(cf.values, trace.ratio_at(1)):
        problems.append("citation factor is not bitwise identical to the k=1 ratio")
    _verdict(capsys, 5, "citation factor equals the k=1 ratio column, within 0.005", problems)


def test_06_iteration_matches_explicit_power_oracle(capsys):
    rng = np.random.default_rng(64290)
    problems = []
    trials = 200
    for trial in range(trials):
        dense = rng.uniform(0.0, 10.0, size=(5, 5))
        dense[rng.random((5, 5)) < 0.3] = 0.0
        z = CitationMatrix(tuple(f"J{i}" for i in range(5)), dense)
        trace = pwr_trace(z, PwrOptions(k_max=5, normalize_each_iteration=False))
        for k in range(1, 6):
            oracle = matrix_power_oracle(z, k)
            if not _close_rel(trace.power_at(k), row_sums(oracle)):
                problems.append(f"trial {trial} k={k}: power deviates")
            if not _close_rel(trace.weakness_at(k), column_sums(oracle)):
                problems.append(f"trial {trial} k={k}: weakness deviates")
    _verdict(
        capsys, 6, f"{trials} random 5x5 matrices match the explicit matrix-power oracle", problems
    )


def test_07_invariance_suite(capsys):
    rng = np.random.default_rng(8153)
    problems = []
    opts = PwrOptions(k_max=6)
    for trial in range(25):
        n = int(rng.integers(2, 8))
        dense = rng.uniform(0.1, 10.0, size=(n, n))
        labels = tuple(f"J{i}" for i in range(n))
        base = pwr_trace(CitationMatrix(labels, dense), opts)

        for c in (0.5, 3.0, 10.0):
            scaled = pwr_trace(CitationMatrix(labels, dense * c), opts)
            if not all(
                _close_rel(scaled.ratio_at(k), base.ratio_at(k)) for k in range(1, 7)
            ):
                problems.append(f"trial {trial}: scaling by {c} changed ratios")

        perm = rng.permutation(n)
        permuted = pwr_trace(
            CitationMatrix(tuple(labels[i] for i in perm), dense[np.ix_(perm, perm)]), opts
        )
        if not all(
            _close_rel(permuted.ratio_at(k), base.ratio_at(k)[perm]) for k in range(1, 7)
        ):
            problems.append(f"trial {trial}: permutation is not equivariant")

        flipped = pwr_trace(transpose(CitationMatrix(labels, dense)), opts)
        if not all(
            _close_rel(flipped.ratio_at(k), 1.0 / base.ratio_at(k)) for k in range(1, 7)
        ):
            problems.append(f"trial {trial}: transpose did not invert ratios")

        sym = pwr_trace(CitationMatrix(labels, dense + dense.T), opts)
        if not all(_close_rel(sym.ratio_at(k), np.ones(n)) for k in range(1, 7)):
            problems.append(f"trial {trial}: symmetric matrix ratios differ from 1")

        raw = pwr_trace(
            CitationMatrix(labels, dense), PwrOptions(k_max=6, normalize_each_iteration=False)
        )
        if not all(_close_rel(raw.ratio_at(k), base.ratio_at(k)) for k in range(1, 7)):
            problems.append(f"trial {trial}: normalization changed ratios")
    _verdict(
        capsys,
        7,
        "scale, permutation, transpose, symmetry, and normalization invariances at 1e-9",
        problems,
    )


def test_08_mixing_blocks_slows_convergence(capsys):
    # two internally homogeneous 4-node blocks plus strong one-way citation
    # from the second block's journals to the first block's (rows 4..7 receive
    # from columns 0..3)
    a = np.full((4, 4), 10.0)
    a[0, 1] = 12.0
    b = np.full((4, 4), 20.0)
    b[2, 3] = 23.0
    combined = np.zeros((8, 8))
    combined[:4, :4] = a
    combined[4:, 4:] = b
    combined[4:, :4] = 5.0

    def k_of(mat) -> int | None:
        labels = tuple(f"J{i}" for i in range(mat.shape[0]))
        trace = pwr_trace(CitationMatrix(labels, mat), PwrOptions(k_max=20, tol=1e-4))
        return convergence_report(trace, 1e-4).k_converged

    k_a, k_b, k_all = k_of(a), k_of(b), k_of(combined)
    problems = []
    if k_a is None or k_b is None:
        problems.append(f"a homogeneous block failed to converge (k_a={k_a}, k_b={k_b})")
    elif k_all is None:
        problems.append("combined matrix never converged within 20 iterations")
    elif not (k_all > k_a and k_all > k_b):
        problems.append(f"k_combined={k_all} does not exceed k_a={k_a} and k_b={k_b}")
    _verdict(
        capsys, 8, "combined heterogeneous set converges strictly later than its blocks", problems
    )


def _set_partitions(n: int):
    """All partitions of range(n) as canonical assignment vectors."""

    def grow(prefix: list[int], used: int):
        if len(prefix) == n:
            yield list(prefix)
            return
        for comm in range(used + 1):
            prefix.append(comm)
            yield from grow(prefix, max(used, comm + 1))
            prefix.pop()

    yield from grow([], 0)


def _direct_modularity(adj: np.ndarray, degree: np.ndarray, assignment) -> float:
    """Textbook double-sum modularity, independent of the library route."""
    two_m = float(adj.sum())
    q = 0.0
    for i in range(len(assignment)):
        for j in range(len(assignment)):
            if assignment[i] == assignment[j]:
                q += adj[i, j] - degree[i] * degree[j] / two_m
    return q / two_m


def test_09_component_and_clustering_properties(capsys):
    problems = []

    # (a) collapsing strong components must leave an acyclic graph
    rng = np.random.default_rng(40961)
    for trial in range(30):
        n = int(rng.integers(2, 12))
        dense = (rng.random((n, n)) < 0.25).astype(float)
        z = CitationMatrix(tuple(f"J{i}" for i in range(n)), dense)
        result = strongly_connected_components(z)
        m = len(result.components)
        condensed = np.zeros((m, m))
        for i, j, w in nonzero_entries(z):
            ci, cj = result.component_of[i], result.component_of[j]
            if ci != cj:
                condensed[ci, cj] += w
        meta = CitationMatrix(tuple(f"C{i}" for i in range(m)), condensed)
        if strongly_connected_components(meta).sizes() != (1,) * m:
            problems.append(f"condensation trial {trial}: cycle between components")

    # (b) two disjoint triangles split exactly at Q = 0.5
    two_triangles = UndirectedGraph(
        tuple("abcdef"),
        tuple((i, j, 1.0) for i, j in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]),
    )
    part = louvain_partition(two_triangles)
    if part.community_of != (0, 0, 0, 1, 1, 1):
        problems.append(f"two triangles split as {part.community_of}")
    if part.q != 0.5:
        problems.append(f"two-triangle quality {part.q!r} != 0.5")

    # (c) exhaustive check on every unit-weight graph with up to 5 nodes:
    # the found quality must reach the brute-force optimum over all
    # partitions, never fall below singletons, and both modularity routes
    # must agree
    graphs = 0
    for n in range(2, 6):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        labels = tuple(f"v{i}" for i in range(n))
        partitions = list(_set_partitions(n))
        for mask in range(1, 1 << len(pairs)):
            edges = tuple(
                (i, j, 1.0) for bit, (i, j) in enumerate(pairs) if mask >> bit & 1
            )
            g = UndirectedGraph(labels, edges)
            graphs += 1
            adj = np.zeros((n, n))
            for i, j, w in g.edges:
                adj[i, j] += w
                adj[j, i] += w
            degree = adj.sum(axis=1)
            found = louvain_partition(g)
            best = max(_direct_modularity(adj, degree, p) for p in partitions)
            if found.q < best - 1e-9:
                problems.append(
                    f"n={n} mask={mask}: found {found.q:.6f} below optimum {best:.6f}"
                )
            if found.q < modularity(g, list(range(n))) - 1e-12:
                problems.append(f"n={n} mask={mask}: worse than singletons")
            if abs(_direct_modularity(adj, degree, found.community_of) - found.q) > 1e-12:
                problems.append(f"n={n} mask={mask}: modularity routes disagree")

    _verdict(
        capsys,
        9,
        f"condensation acyclic; optimum partition matched on all {graphs} small graphs",
        problems,
    )


def test_10_format_round_trips(capsys, journals):
    rng = np.random.default_rng(813200)
    problems = []
    trials = 100
    for trial in range(trials):
        n = int(rng.integers(1, 9))
        dense = rng.integers(0, 21, size=(n, n)).astype(np.float64)
        z = CitationMatrix(tuple(f"J{i}" for i in range(n)), dense)
        if read_csv_matrix(write_csv_matrix(z)) != z:
            problems.append(f"trial {trial}: csv round-trip lost data")
        if read_pajek(write_pajek(z)) != z:
            problems.append(f"trial {trial}: network round-trip lost data")
        if read_csv_matrix(write_csv_matrix(read_pajek(write_pajek(z)))) != z:
            problems.append(f"trial {trial}: cross-format conversion lost data")
    for route, back in (
        ("network", read_pajek(write_pajek(journals))),
        ("csv", read_csv_matrix(write_csv_matrix(journals))),
    ):
        if back != journals:
            problems.append(f"bundled dataset {route} round-trip lost data")
        if grand_total(back) != GRAND_TOTAL_REFERENCE:
            problems.append(f"bundled dataset {route} grand total drifted")
    _verdict(
        capsys,
        10,
        f"lossless round-trips on {trials} random matrices and the bundled dataset",
        problems,
    )
