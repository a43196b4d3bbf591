"""Acceptance suite: one test per numbered criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Criteria 2 and 3 pin the canonical-scale cell-grid sum to exact
Vinogradov solution counts; the sum provably counts solutions of the
congruence system instead, which exceeds the exact count for the parabola
once N is large enough.  Those two tests keep the exact-count expectation and
fail honestly, reporting the measured values; everything else passes.
"""

from __future__ import annotations

import csv
import math
import time
from fractions import Fraction

import pytest

from sparsemv.cli import main as cli_main
from sparsemv.counterexample import log_slope
from sparsemv.domains import LocalizationVector, build_domain, enumerate_cells
from sparsemv.meanvalue import (
    IndexDomain,
    modulate_coefficients,
    padic_short_mv,
    real_sparse_mv,
    sample_coefficients,
)
from sparsemv.numberfield import (
    MinimalPolynomial,
    epsilon_table,
    parabola_system,
    trace_power,
)
from sparsemv.padic import ScaleSpec, hensel_sqrt_minus_one
from sparsemv.vinogradov import count_solutions, count_solutions_brute, fit_growth

PARABOLA = parabola_system()


def _sigma(*vals):
    return LocalizationVector(tuple(Fraction(v) for v in vals))


def _report(number: int, passed: bool, detail: str, elapsed: float, limit: float):
    status = "PASS" if passed else "FAIL"
    print(f"[criterion {number}] {status} ({elapsed:.2f}s / limit {limit:.0f}s): {detail}")


def _run_cli(args, tmp_path, name):
    out = tmp_path / name
    code = cli_main(list(args) + ["--out", str(out)])
    rows = []
    if out.exists():
        lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
        reader = csv.reader(lines)
        header = next(reader)
        rows = [dict(zip(header, row)) for row in reader]
    return code, rows


def test_criterion_1_parseval(tmp_path, capsys):
    """mv-padic parabola, sigma=0, r=2: equals sum |a_n|^2 to 1e-9 relative."""
    start = time.perf_counter()
    worst = 0.0
    for p, K in ((3, 1), (3, 2), (5, 1), (5, 2)):
        code, rows = _run_cli(
            ["mv-padic", "--p", str(p), "--K", str(K), "--sigma", "0,0",
             "--r", "2", "--sampler", "random-phase", "--seed", str(2024 + K)],
            tmp_path, f"c1-{p}-{K}.csv",
        )
        assert code == 0
        value = float(rows[0]["value"])
        denom = float(rows[0]["denominator"])  # = sum |a_n|^2 at r = 2
        worst = max(worst, abs(value - denom) / denom)
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 1.0
    _report(1, ok, f"worst relative error {worst:.3e} over N in {{3,9,5,25}}",
            elapsed, 1.0)
    assert worst <= 1e-9
    assert elapsed < 1.0


def test_criterion_2_cov_identity_sigma_zero(tmp_path, capsys):
    """mv-real equals mv-padic at sigma=0 within 1e-6: parabola & moment curve,
    N in {3,9}, r in {2,4}.

    The identity fails for the parabola at (N, r) = (9, 4): the real torus
    integral counts exact solution tuples (153) while the p-adic value counts
    congruent tuples modulo (N, N^2) (161; e.g. 1+4 = 7+7 mod 9 with
    1+16 = 49+49 mod 81).  The test asserts the identity anyway and fails on
    that combination; all other combinations agree.
    """
    start = time.perf_counter()
    mismatches = []
    agreements = 0
    for k, name in ((2, "parabola"), (3, "moment3")):
        sigma_text = ",".join(["0"] * k)
        for p, K in ((3, 1), (3, 2)):
            for r in ("2", "4"):
                base = ["--p", str(p), "--K", str(K), "--sigma", sigma_text,
                        "--r", r, "--sampler", "all-ones", "--k", str(k)]
                code_p, rows_p = _run_cli(["mv-padic"] + base, tmp_path,
                                          f"c2p-{name}-{p}{K}-{r}.csv")
                code_r, rows_r = _run_cli(["mv-real"] + base, tmp_path,
                                          f"c2r-{name}-{p}{K}-{r}.csv")
                assert code_p == 0 and code_r == 0
                padic = float(rows_p[0]["value"])
                real = float(rows_r[0]["value"])
                if abs(real - padic) <= 1e-6 * abs(padic):
                    agreements += 1
                else:
                    mismatches.append((name, p**K, r, real, padic))
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    detail = f"{agreements}/8 combinations agree"
    if mismatches:
        detail += "; mismatches: " + ", ".join(
            f"{n} N={N} r={r}: real={re:.6f} padic={pa:.6f}"
            for n, N, r, re, pa in mismatches
        )
    _report(2, not mismatches and elapsed < 60.0, detail, elapsed, 60.0)
    assert elapsed < 60.0
    assert not mismatches, (
        "the identity fails where congruence tuples exceed exact tuples: "
        + detail
    )


def test_criterion_3_even_exponent_oracle(tmp_path, capsys):
    """mv-padic parabola, sigma=0, r=4, a=1: expected values 153 (N=9) and
    1225 (N=25), the brute-force exact Vinogradov counts 2N^2 - N.

    The p-adic cell-grid sum provably counts solutions of the congruence
    system modulo (N, N^2), which strictly exceeds the exact count at these
    scales (161 and 1257; verified by exhaustive enumeration).  The test
    keeps the exact-count expectation and fails, reporting the measured
    values.
    """
    start = time.perf_counter()
    results = {}
    for p, K in ((3, 2), (5, 2)):
        code, rows = _run_cli(
            ["mv-padic", "--p", str(p), "--K", str(K), "--sigma", "0,0",
             "--r", "4", "--sampler", "all-ones"],
            tmp_path, f"c3-{p}-{K}.csv",
        )
        assert code == 0
        results[p**K] = float(rows[0]["value"])
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    stated = {9: 2 * 81 - 9, 25: 2 * 625 - 25}
    congruence = {9: 161, 25: 1257}
    ok = all(
        abs(results[N] - stated[N]) <= 1e-6 * stated[N] for N in stated
    ) and elapsed < 10.0
    detail = ", ".join(
        f"N={N}: expected {stated[N]}, measured {results[N]:.6f} "
        f"(= congruence count {congruence[N]})"
        for N in sorted(stated)
    )
    _report(3, ok, detail, elapsed, 10.0)
    assert elapsed < 10.0
    for N in stated:
        assert results[N] == pytest.approx(float(congruence[N]), rel=1e-9), (
            "cell-grid sum no longer matches its own congruence count"
        )
        assert abs(results[N] - stated[N]) <= 1e-6 * stated[N], (
            f"N={N}: expected the exact-count value {stated[N]} but the "
            f"defining sum gives {results[N]:.6f}; the exact-count oracle and "
            f"the congruence-counting sum are different quantities here"
        )


def test_criterion_4_transference(tmp_path, capsys):
    """transfer-check passes on 50 seeded random vectors for the localized
    parabola (p=3, K=2, sigma=(0,1), r=4) and moment curve (p=3, K=1,
    sigma=(0,0,1), r=4)."""
    start = time.perf_counter()
    passes = 0
    for k, p, K, sigma_text in ((2, 3, 2, "0,1"), (3, 3, 1, "0,0,1")):
        code, rows = _run_cli(
            ["transfer-check", "--p", str(p), "--K", str(K),
             "--sigma", sigma_text, "--r", "4", "--k", str(k),
             "--sampler", "random-phase", "--vectors", "50", "--seed", "777"],
            tmp_path, f"c4-{k}.csv",
        )
        assert code == 0, f"transfer-check exited {code} for k={k}"
        assert len(rows) == 50
        passes += sum(int(row["passed"]) for row in rows)
        for row in rows:
            assert float(row["value"]) <= (1 + 1e-6) * float(row["padic_sup"]) \
                + float(row["error_bound"])
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = passes == 100 and elapsed < 600.0
    _report(4, ok, f"{passes}/100 vectors passed", elapsed, 600.0)
    assert passes == 100
    assert elapsed < 600.0


def test_criterion_5_phase_system_exact_match(tmp_path, capsys):
    """phase-system reproduces the worked displays as multiindex maps, the
    leading components carry scale d, and the sign table is half the trace
    sequence.

    The expected systems below are verified against the independent symbolic
    field-power oracle (test_numberfield): the degree-3 components for x^2+1
    necessarily carry binomial factors of 3, and normalization to collective
    gcd 1 forces scales other than d away from the leading components (4 for
    x^2+1 at (2,1); 6, 12, 18 for x^3-2), so scale = d is asserted exactly
    where it provably holds, on every ell = 0 component.
    """
    start = time.perf_counter()

    def load_system(minpoly, name):
        code, rows = _run_cli(
            ["phase-system", "--minpoly", minpoly, "--k", "3"], tmp_path, name
        )
        assert code == 0
        maps: dict[tuple[int, int], dict] = {}
        scales: dict[tuple[int, int], Fraction] = {}
        for row in rows:
            key = (int(row["j"]), int(row["ell"]))
            exps = tuple(int(x) for x in row["multiindex"].split("-"))
            maps.setdefault(key, {})[exps] = int(row["coefficient"])
            scales[key] = Fraction(row["component_scale"])
        return maps, scales

    maps, scales = load_system("1,0", "c5-x2p1.csv")
    for (j, ell), got in maps.items():
        expected = {}
        for e1 in range(j + 1):
            coeff = epsilon_table(ell, e1) * math.comb(j, e1)
            if coeff:
                expected[(j - e1, e1)] = coeff
        descaled = {e: c * scales[(j, ell)] / 2 for e, c in got.items()}
        assert descaled == {e: Fraction(c) for e, c in expected.items()}, (j, ell)
    assert [scales[(j, 0)] for j in (1, 2, 3)] == [2, 2, 2]

    maps, scales = load_system("-2,0,0", "c5-x3m2.csv")
    display = {
        (1, 0): {(1, 0, 0): 1},
        (1, 1): {(0, 0, 1): 1},
        (1, 2): {(0, 1, 0): 1},
        (2, 0): {(2, 0, 0): 1, (0, 1, 1): 4},
        (2, 1): {(0, 2, 0): 1, (1, 0, 1): 2},
        (2, 2): {(0, 0, 2): 1, (1, 1, 0): 1},
        (3, 0): {(0, 0, 3): 4, (0, 3, 0): 2, (1, 1, 1): 12, (3, 0, 0): 1},
        (3, 1): {(0, 1, 2): 2, (1, 2, 0): 1, (2, 0, 1): 1},
        (3, 2): {(0, 2, 1): 2, (1, 0, 2): 2, (2, 1, 0): 1},
    }
    assert maps == display
    assert [scales[(j, 0)] for j in (1, 2, 3)] == [3, 3, 3]

    x2p1 = MinimalPolynomial.parse("1,0")
    for kappa in range(21):
        assert 2 * epsilon_table(0, kappa) == trace_power(x2p1, kappa)
        assert 2 * epsilon_table(kappa % 2, kappa - kappa % 2) == trace_power(
            x2p1, kappa
        )
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = elapsed < 1.0
    _report(
        5, ok,
        "both displays reproduced as multiindex maps (x^2+1 cubic terms per "
        "the general formula); leading scales = d; epsilon = trace/2 for "
        "kappa <= 20", elapsed, 1.0,
    )
    assert elapsed < 1.0


def test_criterion_6_hensel(tmp_path, capsys):
    """xi^2 + 1 = 0 mod p^K for (5,10), (13,8), (17,6); coherent across K."""
    start = time.perf_counter()
    for p, K in ((5, 10), (13, 8), (17, 6)):
        code = cli_main(["hensel", "--p", str(p), "--K", str(K)])
        assert code == 0
        xi = int(capsys.readouterr().out.strip())
        assert (xi**2 + 1) % p**K == 0
        for smaller in range(1, K + 1):
            assert xi % p**smaller == hensel_sqrt_minus_one(p, smaller).xi
    elapsed = time.perf_counter() - start
    ok = elapsed < 1.0
    _report(6, ok, "exact roots and lift coherence for (5,10), (13,8), (17,6)",
            elapsed, 1.0)
    assert elapsed < 1.0


def test_criterion_7_vinogradov_counter(tmp_path, capsys):
    """hash == brute on the d <= 2 grid; s=1 gives N^d; slope for (1,2,2)
    over N in {4,8,16,32} lies in [1.9, 2.1] against envelope max(2,1) = 2."""
    start = time.perf_counter()
    polys = [
        MinimalPolynomial.parse("0"),     # x (d = 1)
        MinimalPolynomial.parse("1,0"),   # x^2 + 1
        MinimalPolynomial.parse("-2,0"),  # x^2 - 2
    ]  # x^3 - 2 has d = 3, excluded by the d <= 2 filter
    checked = 0
    for poly in polys:
        for s in (1, 2):
            for k in (1, 2, 3):
                for N in (2, 3, 4, 5, 6):
                    a = count_solutions(poly, s, k, N).J
                    b = count_solutions_brute(poly, s, k, N).J
                    assert a == b, (poly.coeffs, s, k, N)
                    if s == 1:
                        assert a == N**poly.degree
                    checked += 1
    # same grid corner through the command surface
    code, rows = _run_cli(
        ["vinogradov", "--minpoly", "1,0", "--s", "2", "--k", "3", "--N", "4",
         "--method", "brute"],
        tmp_path, "c7-brute.csv",
    )
    assert code == 0 and int(rows[0]["J"]) == count_solutions(polys[1], 2, 3, 4).J
    code, rows = _run_cli(
        ["vinogradov-fit", "--minpoly", "0", "--s", "2", "--k", "2",
         "--N", "4,8,16,32"],
        tmp_path, "c7-fit.csv",
    )
    assert code == 0
    slope = float(rows[0]["slope"])
    envelope = float(rows[0]["envelope_exponent"])
    assert 1.9 <= slope <= 2.1
    assert envelope == 2.0
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = elapsed < 300.0
    _report(
        7, ok,
        f"{checked} grid points hash==brute; slope {slope:.4f} in [1.9,2.1] "
        f"vs envelope 2", elapsed, 300.0,
    )
    assert elapsed < 300.0


def test_criterion_8_counterexample_growth(tmp_path, capsys):
    """p=5, r=6, k in {1,2,3}: sum-norm slope within 0.2 of 11/6 and ratio
    slope within 0.2 of 1/3; decoupling ratio at r=2 exactly 1."""
    start = time.perf_counter()
    code, rows = _run_cli(
        ["counterexample", "--p", "5", "--kmax", "3", "--r", "2,6"],
        tmp_path, "c8.csv",
    )
    assert code == 0
    r6 = [row for row in rows if float(row["r"]) == 6.0]
    r2 = [row for row in rows if float(row["r"]) == 2.0]
    assert len(r6) == 3 and len(r2) == 3
    Ns = [int(row["N"]) for row in r6]
    slope_sum = log_slope(Ns, [float(row["sum_norm"]) for row in r6])
    slope_ratio = log_slope(Ns, [float(row["ratio"]) for row in r6])
    assert abs(slope_sum - (1 + 5 / 6)) < 0.2
    assert abs(slope_ratio - (1 / 2 - 1 / 6)) < 0.2
    for row in r2:
        assert float(row["ratio"]) == pytest.approx(1.0, rel=1e-9)
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = elapsed < 900.0
    _report(
        8, ok,
        f"sum slope {slope_sum:.4f} (target 1.8333+-0.2), ratio slope "
        f"{slope_ratio:.4f} (target 0.3333+-0.2), r=2 ratio exactly 1",
        elapsed, 900.0,
    )
    assert elapsed < 900.0


def test_criterion_9_property_suite(tmp_path, capsys):
    """Measure identity (exact rational), modulation invariance, scaling
    covariance, and byte-identical CSV across thread counts."""
    start = time.perf_counter()

    # exact measure identity over assorted domains
    for p, K, degrees, sigma in [
        (3, 1, (1, 2), (0, 1)),
        (3, 2, (1, 2), (0, Fraction(3, 2))),
        (5, 1, (1, 2, 3), (0, 1, 2)),
    ]:
        dom = build_domain(ScaleSpec(p=p, K=K),
                           LocalizationVector(tuple(Fraction(s) for s in sigma)),
                           degrees)
        total = Fraction(0)
        for _, _, hw in enumerate_cells(dom):
            vol = Fraction(1)
            for h in hw:
                vol *= 2 * h
            total += vol
        assert total == dom.measure
        assert total == Fraction(1, dom.scale.p ** int(sum(Fraction(s) * K for s in sigma)))

    # modulation leaves the l^r denominator exactly invariant
    scale = ScaleSpec(p=3, K=2)
    domain = IndexDomain.box(9, 1)
    coeffs = sample_coefficients("random-phase", domain, seed=5, draw=1)
    modulated = modulate_coefficients(
        coeffs, (Fraction(1, 7), Fraction(2, 5)), PARABOLA
    )
    for r in (2.0, 4.0):
        assert modulated.ell_r(r) == coeffs.ell_r(r)

    # scaling covariance within 1e-9 relative
    base = padic_short_mv(PARABOLA, coeffs, 4.0, scale, _sigma(0, 1)).value
    c = 0.75 - 0.5j
    scaled = padic_short_mv(PARABOLA, coeffs.scaled(c), 4.0, scale, _sigma(0, 1)).value
    assert scaled == pytest.approx(abs(c) ** 4 * base, rel=1e-9)
    real_base = real_sparse_mv(PARABOLA, coeffs, 4.0, scale, _sigma(0, 1)).value
    real_scaled = real_sparse_mv(
        PARABOLA, coeffs.scaled(c), 4.0, scale, _sigma(0, 1)
    ).value
    assert real_scaled == pytest.approx(abs(c) ** 4 * real_base, rel=1e-9)

    # byte-identical CSV across runs and thread counts
    outputs = []
    for tag, threads in (("a", "1"), ("b", "4"), ("c", "1")):
        out = tmp_path / f"mv-{tag}.csv"
        code = cli_main([
            "mv-padic", "--p", "3", "--K", "2", "--sigma", "0,1", "--r", "4",
            "--sampler", "random-phase", "--seed", "31", "--threads", threads,
            "--out", str(out),
        ])
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    outputs = []
    for tag, threads in (("a", "1"), ("b", "3")):
        out = tmp_path / f"tc-{tag}.csv"
        code = cli_main([
            "transfer-check", "--p", "3", "--K", "1", "--sigma", "0,1",
            "--r", "4", "--vectors", "2", "--seed", "8", "--threads", threads,
            "--out", str(out),
        ])
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    capsys.readouterr()  # swallow CLI summaries

    elapsed = time.perf_counter() - start
    ok = elapsed < 300.0
    _report(
        9, ok,
        "measure identity exact; modulation and scaling invariances hold; "
        "CSV byte-identical across reruns and thread counts", elapsed, 300.0,
    )
    assert elapsed < 300.0
