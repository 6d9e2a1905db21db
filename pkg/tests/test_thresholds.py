import itertools
import math

import pytest

from conftest import random_monic
from hadstab import (
    BracketError,
    HalfLine,
    InvalidInputError,
    Kind,
    Method,
    MonicPolynomial,
    NotApplicableError,
    Status,
    UnsupportedDegreeError,
    auto_onset,
    beta_star,
    branch_set_stable,
    exact_onset,
    guardian_map,
    guardian_onset,
    hadamard_power,
    is_schur_stable,
    kstar_test,
    necessary_condition,
    principal_power,
    pstar_exact,
    pstar_grid,
)

F1 = MonicPolynomial((0.7, 0.2, 0.9, 0.0, 0.0))
G1 = MonicPolynomial((3.0, 2.0, 2.5, 0.0, 0.0))
F2 = MonicPolynomial((-0.9j, 0.7, 0.0, 0.2 - 0.4j))
G2 = MonicPolynomial((1.0 - 0.5j, 0.0, 2.0 - 1.0j, -1.5))


def brute_force_grid(moduli, mode, R):
    """Independent oracle: enumerate every composition of R and take the
    min of max-ratios (mode max) or max of min-ratios (mode min)."""
    d = len(moduli)
    logs = [math.log(m) for m in moduli]
    best = None
    for combo in itertools.product(range(1, R), repeat=d - 1):
        rest = R - sum(combo)
        if rest < 1:
            continue
        parts = list(combo) + [rest]
        ratios = [math.log(c / R) / L for c, L in zip(parts, logs)]
        v = max(ratios) if mode == "max" else min(ratios)
        if (
            best is None
            or (mode == "max" and v < best)
            or (mode == "min" and v > best)
        ):
            best = v
    return best


def random_contracting(rng, max_degree=8):
    """Random polynomial with every support modulus strictly below 1."""
    return random_monic(
        rng, rng.randint(2, max_degree), modulus_range=(0.05, 0.9), density=0.8
    )


def random_expanding(rng, max_degree=8):
    return random_monic(
        rng, rng.randint(2, max_degree), modulus_range=(1.1, 10.0), density=0.8
    )


class TestGridAgainstBruteForce:
    def test_single_term_is_zero(self):
        f = MonicPolynomial((0.5, 0.0))
        assert pstar_grid(f, "max", 100).value == pytest.approx(0.0, abs=1e-15)

    def test_matches_enumeration_max(self, rng):
        for _ in range(12):
            f = random_contracting(rng, max_degree=5)
            d = len(f.support)
            R = rng.choice([8, 13, 21]) + d
            got = pstar_grid(f, "max", R).value
            want = brute_force_grid(list(f.coefficient_moduli().values()), "max", R)
            assert got == pytest.approx(want, abs=1e-12)

    def test_matches_enumeration_min(self, rng):
        for _ in range(12):
            f = random_expanding(rng, max_degree=5)
            d = len(f.support)
            R = rng.choice([8, 13, 21]) + d
            got = pstar_grid(f, "min", R).value
            want = brute_force_grid(list(f.coefficient_moduli().values()), "min", R)
            assert got == pytest.approx(want, abs=1e-12)


class TestPstarGrid:
    def test_example_one_f(self):
        res = pstar_grid(F1, "max", 1000)
        assert res.kind is Kind.SUFFICIENT_MAX
        assert res.method is Method.GRID_SEARCH
        assert res.grid_resolution == 1000
        assert abs(res.value - 3.40372) <= 0.01

    def test_example_one_g(self):
        res = pstar_grid(G1, "min", 1000)
        assert res.kind is Kind.SUFFICIENT_MIN
        assert abs(res.value - (-1.24121)) <= 0.01

    def test_example_two(self):
        assert abs(pstar_grid(F2, "max", 1000).value - 3.69323) <= 0.02
        assert abs(pstar_grid(G2, "min", 1000).value - (-3.40696)) <= 0.02

    def test_hypothesis_violation_names_index(self):
        with pytest.raises(NotApplicableError) as err:
            pstar_grid(G1, "max", 100)
        assert err.value.index == 0
        with pytest.raises(NotApplicableError):
            pstar_grid(F1, "min", 100)

    def test_mixed_moduli_rejected(self):
        f = MonicPolynomial((0.5, 2.0))
        with pytest.raises(NotApplicableError):
            pstar_grid(f, "max", 100)
        with pytest.raises(NotApplicableError):
            pstar_grid(f, "min", 100)

    def test_empty_support_sentinel(self):
        f = MonicPolynomial((0j, 0j, 0j))
        assert pstar_grid(f, "max", 100).value == -math.inf
        assert pstar_grid(f, "min", 100).value == math.inf

    def test_resolution_too_small(self):
        with pytest.raises(InvalidInputError):
            pstar_grid(F1, "max", 2)

    def test_bad_mode(self):
        with pytest.raises(InvalidInputError):
            pstar_grid(F1, "median", 100)

    def test_stability_beyond_grid_threshold(self):
        res = pstar_grid(F1, "max", 200)
        for delta in (0.01, 0.5):
            power = principal_power(F1, res.value + delta)
            assert is_schur_stable(power).status is Status.STABLE


class TestPstarExact:
    def test_example_one_f(self):
        res = pstar_exact(F1, "max")
        assert res.method is Method.EQUATION_SOLVE
        assert abs(res.value - 3.40372) <= 0.01
        # the defining equation is satisfied to near machine precision
        s = sum(m ** res.value for m in (0.7, 0.2, 0.9))
        assert abs(s - 1.0) <= 1e-10

    def test_example_one_g(self):
        res = pstar_exact(G1, "min")
        assert abs(res.value - (-1.24121)) <= 0.01
        s = sum(m ** res.value for m in (3.0, 2.0, 2.5))
        assert abs(s - 1.0) <= 1e-10

    def test_single_term_threshold_is_zero(self):
        res = pstar_exact(MonicPolynomial((0.5, 0.0)), "max")
        assert res.value == pytest.approx(0.0, abs=1e-10)

    def test_bracket_certifies_sign_change(self):
        res = pstar_exact(F1, "max", tol=1e-6)
        lo, hi = res.bracket
        assert hi - lo <= 1e-6
        s = lambda p: sum(m ** p for m in (0.7, 0.2, 0.9)) - 1.0
        assert s(lo) >= 0.0 >= s(hi)

    def test_grid_dominates_exact(self, rng):
        for _ in range(25):
            f = random_contracting(rng)
            exact = pstar_exact(f, "max").value
            grid = pstar_grid(f, "max", 500).value
            assert grid >= exact - 1e-12

    def test_grid_below_exact_for_min_mode(self, rng):
        for _ in range(15):
            f = random_expanding(rng)
            exact = pstar_exact(f, "min").value
            grid = pstar_grid(f, "min", 500).value
            assert grid <= exact + 1e-12

    def test_stability_beyond_threshold_all_branches(self):
        from fractions import Fraction

        p0 = pstar_exact(F1, "max").value
        for delta in (0.01, 0.1, 1.0):
            frac = Fraction(p0 + delta).limit_denominator(4)
            if float(frac) <= p0:
                frac = Fraction(math.ceil((p0 + delta) * 4), 4)
            verdict = branch_set_stable(hadamard_power(F1, frac))
            assert verdict.status is Status.STABLE

    def test_empty_support_sentinel(self):
        f = MonicPolynomial((0j,))
        assert pstar_exact(f, "max").value == -math.inf


class TestBetaStar:
    def test_example_g_zero_bound(self):
        res = beta_star(G1, "max")
        assert res.kind is Kind.INSTABILITY_MAX
        assert res.value == pytest.approx(0.0, abs=1e-15)
        # beyond the bound every power is unstable
        for p in (0.5, 1.0, 2.0):
            assert is_schur_stable(principal_power(G1, p)).status is Status.UNSTABLE

    def test_example_f_zero_bound(self):
        res = beta_star(F1, "min")
        assert res.kind is Kind.INSTABILITY_MIN
        assert res.value == pytest.approx(0.0, abs=1e-15)

    def test_formula_values(self):
        # support moduli 3, 2, 2.5 at indices 0, 1, 2 of a quintic
        ratios = [
            math.log(math.comb(5, 0)) / math.log(3.0),
            math.log(math.comb(5, 1)) / math.log(2.0),
            math.log(math.comb(5, 2)) / math.log(2.5),
        ]
        assert beta_star(G1, "max").value == pytest.approx(min(ratios))

    def test_equality_case(self):
        n = 5
        f = MonicPolynomial((0j, float(n), 0j, 0j, 0j))  # |a_1| = C(5,1)
        res = beta_star(f, "max")
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert not necessary_condition(hadamard_power(f, 1).principal).satisfied

    def test_not_applicable_when_set_empty(self):
        with pytest.raises(NotApplicableError):
            beta_star(F1, "max")
        with pytest.raises(NotApplicableError):
            beta_star(G1, "min")

    def test_instability_at_sampled_powers(self, rng):
        for _ in range(10):
            f = random_expanding(rng, max_degree=6)
            bound = beta_star(f, "max").value
            for i in range(1, 11):
                p = bound + 0.3 * i
                assert is_schur_stable(principal_power(f, p)).status is Status.UNSTABLE


class TestKStar:
    def test_example_f(self):
        assert kstar_test(F1) == (0, HalfLine.NONPOSITIVE)

    def test_example_g(self):
        assert kstar_test(G1) == (0, HalfLine.NONNEGATIVE)

    def test_unit_modulus_gives_both(self):
        theta = 0.7
        f = MonicPolynomial((0j, complex(math.cos(theta), math.sin(theta)), 0j))
        assert kstar_test(f) == (1, HalfLine.BOTH)

    def test_empty_support(self):
        with pytest.raises(NotApplicableError):
            kstar_test(MonicPolynomial((0j, 0j)))


class TestExactOnset:
    def test_example_one_f(self):
        res = exact_onset(F1, "increasing", (0.0, 5.0), tol=1e-6)
        assert res.method is Method.BISECTION
        assert abs(res.value - 3.35457) <= 1e-3
        lo, hi = res.bracket
        assert hi - lo <= 1e-6
        assert is_schur_stable(principal_power(F1, lo)).status is Status.UNSTABLE
        assert is_schur_stable(principal_power(F1, hi)).status is Status.STABLE

    def test_example_one_g(self):
        res = exact_onset(G1, "decreasing", (-5.0, 0.0), tol=1e-6)
        assert abs(res.value - (-1.01579)) <= 1e-3

    def test_invalid_bracket(self):
        with pytest.raises(BracketError):
            exact_onset(F1, "increasing", (4.0, 5.0))  # stable at both ends
        with pytest.raises(BracketError):
            exact_onset(F1, "increasing", (0.0, 1.0))  # unstable at both ends
        with pytest.raises(BracketError):
            exact_onset(F1, "decreasing", (0.0, 5.0))  # swapped direction

    def test_empty_interval(self):
        with pytest.raises(InvalidInputError):
            exact_onset(F1, "increasing", (2.0, 2.0))

    def test_auto_onset_matches_manual(self):
        auto = auto_onset(F1, "max", tol=1e-6)
        manual = exact_onset(F1, "increasing", (0.0, 64.0), tol=1e-6)
        assert auto.value == pytest.approx(manual.value, abs=1e-6)

    def test_example_two_integer_transition(self):
        for p in (1, 2, 3):
            assert is_schur_stable(principal_power(F2, p)).status is Status.UNSTABLE
        assert is_schur_stable(principal_power(F2, 4)).status is Status.STABLE
        res = auto_onset(F2, "max", tol=1e-3)
        assert 3.0 < res.value < 4.0

    def test_marginal_midpoint_close_out(self, monkeypatch):
        # a narrow marginal band around the crossing is stepped over
        import hadstab.thresholds as th
        from hadstab import StabilityVerdict

        def fake_verdict(poly):
            p = math.log(abs(poly.coeffs[0])) / math.log(0.5)
            if abs(p - 2.0) < 1e-9:
                return StabilityVerdict(Status.MARGINAL, 1.0)
            if p < 2.0:
                return StabilityVerdict(Status.UNSTABLE, 1.5)
            return StabilityVerdict(Status.STABLE, 0.5)

        monkeypatch.setattr(th, "is_schur_stable", fake_verdict)
        f = MonicPolynomial((0.5, 0.0))
        res = th.exact_onset(f, "increasing", (0.0, 4.0), tol=1e-4)
        lo, hi = res.bracket
        assert lo <= 2.0 <= hi
        assert hi - lo <= 1e-4

    def test_marginal_zone_error(self, monkeypatch):
        # a marginal band wider than the tolerance cannot be certified
        import hadstab.thresholds as th
        from hadstab import MarginalZoneError, StabilityVerdict

        def fake_verdict(poly):
            p = math.log(abs(poly.coeffs[0])) / math.log(0.5)
            if abs(p - 2.0) < 0.5:
                return StabilityVerdict(Status.MARGINAL, 1.0)
            if p < 2.0:
                return StabilityVerdict(Status.UNSTABLE, 1.5)
            return StabilityVerdict(Status.STABLE, 0.5)

        monkeypatch.setattr(th, "is_schur_stable", fake_verdict)
        f = MonicPolynomial((0.5, 0.0))
        with pytest.raises(MarginalZoneError):
            th.exact_onset(f, "increasing", (0.0, 4.0), tol=1e-4)


class TestOrderingChain:
    def test_example_one(self):
        lo = beta_star(F1, "min").value
        onset = auto_onset(F1, "max", tol=1e-6).value
        exact = pstar_exact(F1, "max").value
        grid = pstar_grid(F1, "max", 1000).value
        assert lo <= onset <= exact + 1e-9 <= grid + 1e-9

    def test_random_instances(self, rng):
        checked = 0
        attempts = 0
        while checked < 100 and attempts < 400:
            attempts += 1
            f = random_contracting(rng, max_degree=6)
            if is_schur_stable(principal_power(f, 0.0)).status is not Status.UNSTABLE:
                continue  # onset undefined when the zeroth power is marginal
            lo = beta_star(f, "min").value
            onset = auto_onset(f, "max", tol=1e-4).value
            exact = pstar_exact(f, "max").value
            grid = pstar_grid(f, "max", 150).value
            assert lo <= onset + 1e-4
            assert onset <= exact + 1e-4
            assert exact <= grid + 1e-12
            checked += 1
        assert checked == 100


class TestGuardianMap:
    def test_zero_on_unit_circle_roots(self):
        f = MonicPolynomial((1.0, 0.0))  # roots +-i
        assert abs(guardian_map(f, 1.0)) <= 1e-12

    def test_nonzero_strictly_inside(self):
        f = MonicPolynomial((0.25, 0.0))
        assert abs(guardian_map(f, 1.0)) > 1e-6

    def test_sign_change_across_onset(self):
        a, b = guardian_map(F1, 3.3), guardian_map(F1, 3.4)
        assert a > 0 > b

    def test_complex_input_uses_real_carrier(self):
        val = guardian_map(F2, 2.0)
        assert math.isfinite(val)

    def test_degree_cap(self):
        f = MonicPolynomial(tuple([0.1j] * 7))  # real carrier degree 14
        with pytest.raises(UnsupportedDegreeError):
            guardian_map(f, 1.0)

    def test_guardian_onset_agrees_with_bisection(self):
        root_loc = exact_onset(F1, "increasing", (0.0, 5.0), tol=1e-6)
        det_loc = guardian_onset(F1, (3.0, 4.0), tol=1e-6)
        assert det_loc.method is Method.GUARDIAN_MAP
        assert det_loc.value == pytest.approx(root_loc.value, abs=1e-4)

    def test_guardian_onset_requires_sign_change(self):
        with pytest.raises(BracketError):
            guardian_onset(F1, (4.0, 5.0))


class TestThresholdResultJson:
    def test_plain(self):
        obj = pstar_grid(F1, "max", 100).to_json()
        assert obj["kind"] == "SufficientMax"
        assert obj["method"] == "GridSearch"
        assert obj["grid_n"] == 100
        assert obj["bracket"] is None

    def test_sentinel_serialization(self):
        obj = pstar_grid(MonicPolynomial((0j,)), "max", 100).to_json()
        assert obj["value"] == "-inf"
