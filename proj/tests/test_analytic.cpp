#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "cellcover/analytic.hpp"
#include "cellcover/specfun.hpp"

using namespace cellcover;

namespace {
NetworkScenario dual_scenario(double a0, double a1, double rc, double lambda, double noise) {
    return NetworkScenario{lambda, noise, make_dual(a0, a1, rc)};
}

std::vector<double> log_grid_local(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}
}  // namespace

TEST_CASE("standard-model anchor: alpha 4, no noise, T = 1") {
    // closed form 1/(1 + arctan 1) = 1/(1 + pi/4)
    const double expect = 1.0 / (1.0 + M_PI / 4.0);
    NetworkScenario s{1.0, 0.0, make_standard(4.0)};
    auto r = coverage_general(s, 1.0);
    CHECK(r.value == Approx(expect).margin(1e-6));
    CHECK(r.metric == Metric::sir);
    CHECK(r.error_estimate <= 1e-6);

    // density invariance of the standard model
    NetworkScenario dense{123.0, 0.0, make_standard(4.0)};
    CHECK(coverage_general(dense, 1.0).value == Approx(expect).margin(1e-6));
}

TEST_CASE("general route matches the closed form across alpha and T") {
    for (double alpha : {2.5, 3.0, 3.5, 5.0}) {
        for (double t_db : {-10.0, 0.0, 10.0}) {
            const double t = db_to_linear(t_db);
            NetworkScenario s{1.0, 0.0, make_standard(alpha)};
            CHECK(coverage_general(s, t).value ==
                  Approx(coverage_sir_standard(alpha, t)).margin(2e-6));
        }
    }
}

TEST_CASE("routes stay consistent just above the convergence boundary") {
    // far-field exponent close to 2: the interference tail decays slowly and
    // the tail substitution exponent q = 2/(alpha-2) becomes large
    NetworkScenario std_s{1.0, 0.0, make_standard(2.2)};
    CHECK(coverage_general(std_s, 1.0).value ==
          Approx(coverage_sir_standard(2.2, 1.0)).margin(5e-6));
    for (double noise : {0.0, 0.5}) {
        NetworkScenario s{1.0, noise, make_dual(2.0, 2.3, 1.0)};
        CHECK(coverage_general(s, 1.0).value ==
              Approx(coverage_dual(s, 1.0).value).margin(5e-6));
        CHECK(coverage_multislope(s, 1.0).value ==
              Approx(coverage_dual(s, 1.0).value).margin(1e-6));
    }
}

TEST_CASE("vanishing threshold gives near-certain coverage") {
    NetworkScenario s{1.0, 0.0, make_dual(2.0, 4.0, 1.0)};
    CHECK(coverage_general(s, 1e-9).value == Approx(1.0).margin(1e-4));
    CHECK(coverage_dual(s, 1e-9).value == Approx(1.0).margin(1e-4));
    CHECK(coverage_tworay(s, 1e-9).value == Approx(1.0).margin(1e-4));
}

TEST_CASE("general route agrees with the dual-slope route, with and without noise") {
    for (double noise : {0.0, 1.0}) {
        for (double lambda : {0.1, 1.0, 10.0}) {
            auto s = dual_scenario(2.0, 4.0, 1.0, lambda, noise);
            const double a = coverage_general(s, 1.0).value;
            const double b = coverage_dual(s, 1.0).value;
            CHECK(a == Approx(b).margin(3e-6));
        }
    }
    auto s = dual_scenario(3.2, 4.5, 2.0, 0.7, 0.3);
    CHECK(coverage_general(s, 2.0).value == Approx(coverage_dual(s, 2.0).value).margin(3e-6));
}

TEST_CASE("dual-slope route collapses to the standard model when slopes match") {
    auto s = dual_scenario(4.0, 4.0, 1.7, 1.0, 0.0);
    CHECK(coverage_dual(s, 1.0).value == Approx(1.0 / (1.0 + M_PI / 4.0)).margin(1e-6));
}

TEST_CASE("near-field invariance: coverage depends on lambda R_c^2 only") {
    const double t = db_to_linear(3.0);
    auto a = coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0), t).value;
    auto b = coverage_dual(dual_scenario(2.0, 4.0, 0.5, 4.0, 0.0), t).value;
    CHECK(a == Approx(b).margin(1e-6));
}

TEST_CASE("sparse and dense density limits recover the single-slope laws") {
    const double t = 1.0;
    const double p_far = coverage_sir_standard(4.0, t);
    const double p_near = coverage_sir_standard(3.0, t);
    CHECK(coverage_dual(dual_scenario(3.0, 4.0, 1.0, 1e-5, 0.0), t).value ==
          Approx(p_far).margin(1e-3));
    CHECK(coverage_dual(dual_scenario(3.0, 4.0, 1.0, 1e5, 0.0), t).value ==
          Approx(p_near).margin(1e-3));
    // looser check one decade earlier
    CHECK(coverage_dual(dual_scenario(3.0, 4.0, 1.0, 1e-4, 0.0), t).value ==
          Approx(p_far).margin(6e-3));
    CHECK(coverage_dual(dual_scenario(3.0, 4.0, 1.0, 1e4, 0.0), t).value ==
          Approx(p_near).margin(6e-3));
}

TEST_CASE("kernel integrand at the junction point reduces to the far-band kernel") {
    for (double t : {0.3, 1.0, 7.0}) {
        for (double d0 : {0.4, 1.0, 2.0}) {
            CHECK(integrand_I(d0, 0.5, t, 1.0) ==
                  Approx(specfun::c_beta(-0.5, t)).epsilon(1e-11));
        }
    }
}

TEST_CASE("kernel integrand hand-evaluates through the closed forms") {
    // delta0 = 1, delta1 = 1/2, T = 1, x = 0.5
    const double c1_2 = std::log(3.0) / 2.0;                             // C_1(2)
    const double cm = 1.0 + std::sqrt(0.5) * std::atan(std::sqrt(0.5));  // C_{-1/2}(1/2)
    const double c1_1 = std::log(2.0);                                   // C_1(1)
    const double expect = c1_2 + cm + 0.5 * (1.0 - c1_1) - 1.0;
    CHECK(integrand_I(1.0, 0.5, 1.0, 0.5) == Approx(expect).epsilon(1e-11));
}

TEST_CASE("kernel integrand vanishing-threshold limit is x") {
    for (double x : {0.1, 0.5, 1.0}) {
        CHECK(integrand_I(2.0, 0.5, 1e-12, x) == Approx(x).margin(1e-6));
    }
}

TEST_CASE("kernel integrand honors the zero near-field exponent convention") {
    const double t = 2.0;
    const double inf = std::numeric_limits<double>::infinity();
    // delta0 = inf: x^{1/delta0} = 1, C_inf(y) = 1/(1+y)
    const double expect =
        1.0 / (1.0 + 1.0 / t) + specfun::c_beta(-0.5, t) + 0.25 * (1.0 - t / (1.0 + t)) - 1.0;
    CHECK(integrand_I(inf, 0.5, t, 0.25) == Approx(expect).epsilon(1e-11));
}

TEST_CASE("two-ray route equals the dual-slope route") {
    for (double lambda : {0.1, 1.0, 10.0}) {
        for (double t_db : {-10.0, 0.0, 10.0}) {
            const double t = db_to_linear(t_db);
            auto s = dual_scenario(2.0, 4.0, 1.0, lambda, 1.0);
            CHECK(coverage_tworay(s, t).value ==
                  Approx(coverage_dual(s, t).value).margin(1e-6));
        }
    }
    auto s0 = dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0);
    CHECK(coverage_tworay(s0, 1.0).value == Approx(coverage_dual(s0, 1.0).value).margin(1e-6));
}

TEST_CASE("snr coverage is one without noise and matches its closed form with noise") {
    auto s0 = dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0);
    CHECK(coverage_snr(s0, 5.0).value == 1.0);

    for (double lambda : {0.1, 1.0, 30.0}) {
        for (double t_db : {-10.0, 0.0, 10.0}) {
            const double t = db_to_linear(t_db);
            auto s = dual_scenario(2.0, 4.0, 1.0, lambda, 1.0);
            const double integral = coverage_snr(s, t).value;
            const double closed = coverage_snr_tworay(s, t).value;
            CHECK(integral == Approx(closed).margin(1e-8));
        }
    }
}

TEST_CASE("snr closed form saturates at dense networks and vanishing thresholds") {
    CHECK(coverage_snr_tworay(dual_scenario(2.0, 4.0, 1.0, 1e3, 1.0), 1.0).value ==
          Approx(1.0).margin(1e-3));
    CHECK(coverage_snr_tworay(dual_scenario(2.0, 4.0, 1.0, 1.0, 1.0), 1e-9).value ==
          Approx(1.0).margin(1e-4));
    CHECK_THROWS_AS(coverage_snr_tworay(dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0), 1.0),
                    std::domain_error);
}

TEST_CASE("closed-form sinr bound sits below the exact curve and tightens as density falls") {
    for (double lambda : {0.1, 1.0, 10.0}) {
        for (double t_db : {-15.0, -5.0, 0.0, 10.0}) {
            const double t = db_to_linear(t_db);
            auto s = dual_scenario(2.0, 4.0, 1.0, lambda, 1.0);
            const double bound = coverage_sinr_lower_bound_tworay(s, t).value;
            const double exact = coverage_tworay(s, t).value;
            CHECK(bound <= exact + 1e-9);
        }
    }
    auto sparse = dual_scenario(2.0, 4.0, 1.0, 1e-4, 1.0);
    const double bound = coverage_sinr_lower_bound_tworay(sparse, 1.0).value;
    const double exact = coverage_tworay(sparse, 1.0).value;
    CHECK((exact - bound) / exact < 0.02);
}

TEST_CASE("bound and SNR closed form stay consistent away from unit critical distance") {
    for (double rc : {0.3, 3.0}) {
        for (double lambda : {0.05, 5.0}) {
            for (double t_db : {-12.0, 0.0, 12.0}) {
                const double t = db_to_linear(t_db);
                auto s = dual_scenario(2.0, 4.0, rc, lambda, 1.0);
                CHECK(coverage_sinr_lower_bound_tworay(s, t).value <=
                      coverage_tworay(s, t).value + 1e-9);
                CHECK(coverage_snr(s, t).value ==
                      Approx(coverage_snr_tworay(s, t).value).margin(1e-8));
            }
        }
        auto s = dual_scenario(2.0, 4.0, rc, 0.1, 1.0);
        const double exact = coverage_tworay(s, 1e-3).value;
        const double bound = coverage_sinr_lower_bound_tworay(s, 1e-3).value;
        CHECK((exact - bound) / exact < 1e-4);
    }
}

TEST_CASE("multislope route reduces to the dual route at two segments") {
    for (double noise : {0.0, 1.0}) {
        auto s = dual_scenario(2.0, 4.0, 1.0, 1.0, noise);
        CHECK(coverage_multislope(s, 1.0).value ==
              Approx(coverage_dual(s, 1.0).value).margin(1e-6));
    }
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double a1 = 2.5 + 3.0 * u01(gen);
        const double a0 = a1 * u01(gen);
        const double rc = std::pow(10.0, -1.0 + 2.0 * u01(gen));
        const double lambda = std::pow(10.0, -2.0 + 4.0 * u01(gen));
        const double noise = (i % 2) ? std::pow(10.0, -2.0 + 3.0 * u01(gen)) : 0.0;
        const double t = std::pow(10.0, -1.5 + 3.0 * u01(gen));
        auto s = dual_scenario(a0, a1, rc, lambda, noise);
        CHECK(coverage_multislope(s, t).value ==
              Approx(coverage_dual(s, t).value).margin(1e-6));
    }
}

TEST_CASE("multislope with equal exponents collapses to the standard model") {
    NetworkScenario s{1.0, 0.0, make_multislope({4.0, 4.0, 4.0}, {1.0, 10.0})};
    CHECK(coverage_multislope(s, 1.0).value ==
          Approx(coverage_sir_standard(4.0, 1.0)).margin(1e-6));
}

TEST_CASE("multislope agrees with the general route on a three-slope model") {
    NetworkScenario s{1e-5, 1e-8, make_multislope({0.0, 2.0, 4.0}, {1.0, 267.0})};
    for (double t_db : {-5.0, 5.0}) {
        const double t = db_to_linear(t_db);
        const double a = coverage_multislope(s, t).value;
        const double b = coverage_general(s, t).value;
        CHECK(a == Approx(b).margin(5e-6));
    }
}

TEST_CASE("multislope formula is valid for unordered exponents") {
    // steeper near field than far field; the integral form does not require
    // nondecreasing exponents as long as the last one exceeds 2
    auto model = make_multislope({5.0, 4.0}, {1.0});
    REQUIRE_FALSE(model.ordered());
    for (double noise : {0.0, 1.0}) {
        NetworkScenario s{0.5, noise, model};
        for (double t : {0.5, 2.0}) {
            CHECK(coverage_multislope(s, t).value ==
                  Approx(coverage_general(s, t).value).margin(3e-6));
            CHECK(coverage_dual(s, t).value ==
                  Approx(coverage_general(s, t).value).margin(3e-6));
        }
    }
}

TEST_CASE("coverage density and throughput are the stated products") {
    auto s = dual_scenario(3.0, 4.0, 1.0, 2.0, 0.0);
    const double cov = coverage_dual(s, 1.0).value;
    CHECK(coverage_density(s, 1.0) == Approx(2.0 * cov).epsilon(1e-12));
    CHECK(potential_throughput(s, 1.0) == Approx(coverage_density(s, 1.0)).epsilon(1e-12));
    CHECK(potential_throughput(s, 3.0) == Approx(2.0 * coverage_density(s, 3.0)).epsilon(1e-12));

    // interference-limited linear scaling: mu/lambda constant for alpha0 > 2
    auto s3 = dual_scenario(3.0, 4.0, 1.0, 1e3, 0.0);
    auto s4 = dual_scenario(3.0, 4.0, 1.0, 1e4, 0.0);
    const double ratio3 = coverage_density(s3, 1.0) / 1e3;
    const double ratio4 = coverage_density(s4, 1.0) / 1e4;
    CHECK(ratio4 == Approx(ratio3).epsilon(0.02));
}

TEST_CASE("ccdf curves are non-increasing in the threshold") {
    auto s = dual_scenario(2.0, 4.0, 1.0, 1.0, 1.0);
    std::vector<double> grid;
    for (double db = -20.0; db <= 20.0; db += 5.0) grid.push_back(db_to_linear(db));
    auto curve = ccdf_curve(s, grid, Metric::sinr);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].value <= curve.points[i - 1].value + 1e-9);
    }
    // sandwich: min(SIR, SNR) bounds SINR from above
    for (double t : grid) {
        const double sir = coverage_metric(s, t, Metric::sir).value;
        const double snr = coverage_metric(s, t, Metric::snr).value;
        const double sinr = coverage_metric(s, t, Metric::sinr).value;
        CHECK(sinr <= std::min(sir, snr) + 1e-7);
    }
}

TEST_CASE("standard-model SIR coverage increases with the path loss exponent") {
    for (double t : {0.1, 1.0, 10.0}) {
        double prev = 0.0;
        for (double alpha : {2.2, 2.6, 3.0, 3.5, 4.0, 5.0, 6.0}) {
            const double cov = coverage_sir_standard(alpha, t);
            CHECK(cov > prev);
            prev = cov;
        }
    }
}

TEST_CASE("three-slope coverage is monotone in density and recovers the slope limits") {
    auto model = make_multislope({2.5, 3.0, 4.0}, {1.0, 5.0});
    const double t = 1.0;
    double prev = 1.0;
    for (double lambda : log_grid_local(1e-4, 1e4, 9)) {
        NetworkScenario s{lambda, 0.0, model};
        const double cov = coverage_multislope(s, t).value;
        CHECK(cov <= prev + 1e-7);
        CHECK(cov <= coverage_sir_standard(4.0, t) + 1e-7);
        CHECK(cov >= coverage_sir_standard(2.5, t) - 1e-7);
        prev = cov;
    }
    NetworkScenario sparse{1e-7, 0.0, model};
    NetworkScenario dense{1e7, 0.0, model};
    CHECK(coverage_multislope(sparse, t).value ==
          Approx(coverage_sir_standard(4.0, t)).margin(5e-3));
    CHECK(coverage_multislope(dense, t).value ==
          Approx(coverage_sir_standard(2.5, t)).margin(5e-3));
}

TEST_CASE("SIR ordering and monotonicity on a small grid") {
    const double t = 1.0;
    const double upper = coverage_sir_standard(4.0, t);
    const double lower = coverage_sir_standard(3.0, t);
    double prev = 1.0;
    for (double lambda : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double cov = coverage_dual(dual_scenario(3.0, 4.0, 1.0, lambda, 0.0), t).value;
        CHECK(cov <= upper + 1e-7);
        CHECK(cov >= lower - 1e-7);
        CHECK(cov <= prev + 1e-7);
        prev = cov;
    }
}

TEST_CASE("dense-network outage when the near-field exponent is small") {
    const double t = 1.0;
    // alpha0 < 2: polynomial decay, lambda^(1 - 2/alpha0)
    const double p1_one = coverage_dual(dual_scenario(1.0, 4.0, 1.0, 1.0, 0.0), t).value;
    const double p1_dense = coverage_dual(dual_scenario(1.0, 4.0, 1.0, 1e4, 0.0), t).value;
    CHECK(p1_dense <= 0.05 * p1_one);

    // alpha0 = 2 is the boundary case: coverage still vanishes but only
    // logarithmically, so the drop over four decades is modest.
    const double p2_one = coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0), t).value;
    const double p2_dense = coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1e4, 0.0), t).value;
    CHECK(p2_dense < 0.3 * p2_one);
    const double p2_xdense = coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1e8, 0.0), t).value;
    CHECK(p2_xdense < p2_dense);
}

TEST_CASE("multislope and general routes agree on adversarial configurations") {
    struct Case {
        NetworkScenario s;
        double t;
    };
    const Case cases[] = {
        // wide-span breakpoints with noise killing the mid band early
        {{1e-4, 0.1, make_multislope({2.2, 3.0, 4.0}, {1e-3, 1e3})}, 0.5},
        {{1.0, 0.0, make_multislope({2.2, 3.0, 4.0}, {1e-3, 1e3})}, 1.0},
        // bounded near field at both density extremes
        {{1e-3, 0.01, make_multislope({0.0, 4.0}, {1.0})}, 2.0},
        // five segments
        {{0.3, 0.2, make_multislope({0.5, 1.5, 2.5, 3.5, 4.5}, {0.5, 1.0, 3.0, 9.0})}, 1.3},
        // extreme critical distances
        {{2.0, 1.0, make_multislope({2.0, 4.0}, {1e-4})}, 1.0},
        {{1e-6, 1.0, make_multislope({2.0, 4.0}, {1e4})}, 1.0},
    };
    for (const auto& c : cases) {
        const double g = coverage_general(c.s, c.t).value;
        const double m = coverage_multislope(c.s, c.t).value;
        INFO("general " << g << " multislope " << m);
        CHECK(std::abs(g - m) <= 5e-6);
    }
}

TEST_CASE("ccdf curves reject unsorted or non-positive grids") {
    auto s = dual_scenario(2.0, 4.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(ccdf_curve(s, {1.0, 0.5}, Metric::sinr), std::domain_error);
    CHECK_THROWS_AS(ccdf_curve(s, {0.0, 1.0}, Metric::sinr), std::domain_error);
    CHECK_THROWS_AS(ccdf_curve(s, {1.0, 1.0}, Metric::sinr), std::domain_error);
}

TEST_CASE("analytic domain errors") {
    CHECK_THROWS_AS(coverage_general(NetworkScenario{1.0, 0.0, make_standard(2.0)}, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_dual(dual_scenario(1.0, 2.0, 1.0, 1.0, 0.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_dual(dual_scenario(1.0, 2.0, 1.0, 1.0, 1.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_tworay(dual_scenario(2.0, 4.1, 1.0, 1.0, 1.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_sinr_lower_bound_tworay(dual_scenario(2.0, 4.0, 1.0, 1.0, 0.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1.0, 1.0), 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_dual(dual_scenario(2.0, 4.0, 1.0, 1.0, 1.0), -1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_multislope(NetworkScenario{1.0, 0.0, make_standard(4.0)}, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(coverage_sir_standard(2.0, 1.0), std::domain_error);
    NetworkScenario bad{-1.0, 0.0, make_standard(4.0)};
    CHECK_THROWS_AS(coverage_general(bad, 1.0), std::domain_error);
}
