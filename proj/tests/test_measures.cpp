#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "qent/measures.hpp"
#include "qent/states.hpp"

using namespace qent;
using Catch::Matchers::WithinAbs;

TEST_CASE("q_matrix", "[measures]") {
    SECTION("pure Bell state with the state vector as factor") {
        const auto psi = oracle::bell();
        const auto q = q_matrix(psi.density(), psi.vector());
        STATIC_REQUIRE(decltype(q)::rows == 1);
        CHECK_THAT(std::abs(q(0, 0)), WithinAbs(1.0, 1e-15));
    }
    SECTION("pure product state") {
        const PureState psi(Vec4{{0.6, 0.8, 0.0, 0.0}});
        CHECK(std::abs(q_matrix(psi.density(), psi.vector())(0, 0)) <= 1e-15);
    }
    SECTION("Q = -2 det psi~ for pure states") {
        for (std::uint64_t k = 0; k < 200; ++k) {
            const auto psi = random_pure(Seed{k});
            const Mat2 t = psi.tilde();
            const Complex det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
            CHECK(std::abs(q_matrix(psi.density(), psi.vector())(0, 0) + 2.0 * det) <= 1e-14);
        }
    }
    SECTION("singular values do not depend on the factor") {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const auto rho = random_mixed(Seed{k}, 4);
            const auto a = singular_values(q_matrix(rho, psd_sqrt(rho.matrix())));
            const auto b = singular_values(q_matrix(rho, oracle::cholesky_factor(rho)));
            auto rng = gen::rng_for(30, k);
            const auto c = singular_values(q_matrix(rho, psd_sqrt(rho.matrix()) * random_unitary<4>(rng)));
            for (std::size_t i = 0; i < 4; ++i) worst = std::max({worst, std::abs(a[i] - b[i]), std::abs(a[i] - c[i])});
        }
        CHECK(worst <= 1e-10);
    }
    SECTION("factor must reproduce rho") {
        const auto rho = random_mixed(Seed{1}, 4);
        CHECK_THROWS_AS(q_matrix(rho, Mat4::identity()), DomainError);
    }
}

TEST_CASE("concurrence", "[measures]") {
    CHECK_THAT(concurrence(oracle::bell().density()), WithinAbs(1.0, 1e-14));
    CHECK(concurrence(DensityMatrix::maximally_mixed()) == 0.0);
    // Werner: max(0, (3p - 1) / 2)
    CHECK_THAT(concurrence(oracle::werner(0.8)), WithinAbs(0.7, 1e-14));
    CHECK_THAT(oracle::wootters_concurrence(oracle::werner(0.8)), WithinAbs(0.7, 1e-14));
    CHECK(concurrence(oracle::werner(0.3)) == 0.0);

    SECTION("agrees with the rho rho~ eigenvalue form") {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 10000; ++k) {
            const auto rho = random_mixed(Seed{k}, 4);
            worst = std::max(worst, std::abs(concurrence(rho) - oracle::wootters_concurrence(rho)));
        }
        CHECK(worst <= 1e-10);
    }
    SECTION("pure-state shortcut") {
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const auto psi = random_pure(Seed{k});
            CHECK_THAT(concurrence(psi), WithinAbs(concurrence(psi.density()), 1e-12));
        }
    }
}

TEST_CASE("negativity", "[measures]") {
    CHECK_THAT(negativity(PureState(Vec4{{0.8, 0.0, 0.0, 0.6}}).density()), WithinAbs(0.96, 1e-14));
    CHECK(negativity(DensityMatrix::maximally_mixed()) == 0.0);
    // Werner: smallest partial-transpose eigenvalue (1 - 3p) / 4
    CHECK_THAT(negativity(oracle::werner(0.8)), WithinAbs(0.7, 1e-14));
    CHECK_THAT(oracle::min_pt_eigenvalue(oracle::werner(0.8)), WithinAbs(-0.35, 1e-14));

    SECTION("pure states: E_N = 2 |det psi~|") {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 10000; ++k) {
            const auto psi = random_pure(Seed{k});
            const Mat2 t = psi.tilde();
            worst = std::max(worst, std::abs(negativity(psi.density()) - 2.0 * std::abs(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0))));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("eof_from_concurrence", "[measures]") {
    CHECK(eof_from_concurrence(0.0) == 0.0);
    CHECK_THAT(eof_from_concurrence(1.0), WithinAbs(1.0, 1e-15));
    // -0.9 log2 0.9 - 0.1 log2 0.1, evaluated to 30 digits
    CHECK_THAT(eof_from_concurrence(0.6), WithinAbs(0.468995593589281221, 1e-14));
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double e = eof_from_concurrence(i / 1000.0);
        CHECK(e > prev);
        prev = e;
    }
    CHECK(eof_from_concurrence(1e-9) > 0.0);
    CHECK_THROWS_AS(eof_from_concurrence(1.1), DomainError);
    CHECK_THROWS_AS(eof_from_concurrence(-0.1), DomainError);
}

TEST_CASE("participation_ratio", "[measures]") {
    CHECK_THAT(participation_ratio(random_pure(Seed{2}).density()), WithinAbs(1.0, 1e-12));
    CHECK_THAT(participation_ratio(DensityMatrix::maximally_mixed()), WithinAbs(4.0, 1e-14));
    CHECK_THAT(participation_ratio(random_fixed_spectrum(Seed{3}, Spectrum({0.5, 0.5, 0.0, 0.0}))), WithinAbs(2.0, 1e-12));
}

TEST_CASE("pure_negativity_spectrum", "[measures]") {
    auto s = pure_negativity_spectrum(kInvSqrt2, kInvSqrt2);
    CHECK_THAT(s[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(s[1], WithinAbs(0.5, 1e-15));
    CHECK_THAT(s[2], WithinAbs(-0.5, 1e-15));
    CHECK_THAT(s[3], WithinAbs(0.5, 1e-15));
    CHECK(pure_negativity_spectrum(1.0, 0.0) == std::array<double, 4>{1.0, 0.0, -0.0, 0.0});
    s = pure_negativity_spectrum(0.8, 0.6);
    const std::array<double, 4> want{0.64, 0.48, -0.48, 0.36};
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(s[i], WithinAbs(want[i], 1e-15));

    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto psi = random_pure(Seed{k});
        const auto c = schmidt(psi);
        auto predicted = pure_negativity_spectrum(c.sigma1, c.sigma2);
        std::sort(predicted.begin(), predicted.end());
        const auto actual = herm_eigenvalues(partial_transpose(psi.density().matrix()));
        for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(actual[i], WithinAbs(predicted[i], 1e-10));
    }

    CHECK_THROWS_AS(pure_negativity_spectrum(0.6, 0.8), DomainError);
    CHECK_THROWS_AS(pure_negativity_spectrum(0.9, 0.1), DomainError);
}

TEST_CASE("report", "[measures]") {
    const auto bell = report(oracle::bell().density());
    CHECK_THAT(bell.concurrence, WithinAbs(1.0, 1e-14));
    CHECK_THAT(bell.negativity, WithinAbs(1.0, 1e-14));
    CHECK_THAT(bell.eof, WithinAbs(1.0, 1e-14));
    CHECK_THAT(bell.participation_ratio, WithinAbs(1.0, 1e-14));

    const auto mixed = report(DensityMatrix::maximally_mixed());
    CHECK(mixed.concurrence == 0.0);
    CHECK(mixed.negativity == 0.0);
    CHECK(mixed.eof == 0.0);
    CHECK_THAT(mixed.participation_ratio, WithinAbs(4.0, 1e-14));

    const auto eq = report(equality_class_state(Seed{5}, 3));
    CHECK_THAT(eq.concurrence, WithinAbs(eq.negativity, 1e-8));
}

TEST_CASE("C >= E_N on random mixed states of every rank", "[measures][property]") {
    for (int rank = 1; rank <= 4; ++rank) {
        double worst = -1.0;
        for (std::uint64_t k = 0; k < 100000; ++k) {
            const auto rho = random_mixed(derive(Seed{40}, "rank", static_cast<std::uint64_t>(rank) * 1000000 + k), rank);
            const auto r = report(rho);
            worst = std::max(worst, r.negativity - r.concurrence);
            // C = 0 <=> E_N = 0 and E_f = 0 <=> C = 0
            if (r.negativity == 0.0) REQUIRE(r.concurrence <= 1e-10);
            if (r.concurrence == 0.0) REQUIRE(r.negativity <= 1e-10);
            REQUIRE((r.eof == 0.0) == (r.concurrence == 0.0));
            REQUIRE(r.participation_ratio >= 1.0 - 1e-10);
            REQUIRE(r.participation_ratio <= 4.0 + 1e-10);
        }
        INFO("rank " << rank);
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("C = E_N on random pure states", "[measures][property]") {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        const auto rho = random_pure(Seed{k}).density();
        worst = std::max(worst, std::abs(concurrence(rho) - negativity(rho)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("average concurrence of any ensemble bounds C from above", "[measures][property]") {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 2000; ++k) {
        auto rng = gen::rng_for(41, k);
        Ensemble e;
        const std::size_t n = 2 + k % 4;
        e.weights = random_simplex_weights(rng, n);
        double average = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            e.members.push_back(PureState::normalized(rng.ginibre<4, 1>()));
            average += e.weights[i] * concurrence(e.members.back());
        }
        worst = std::min(worst, average - concurrence(e.density()));
    }
    CHECK(worst >= -1e-10);
}

TEST_CASE("separable states", "[measures]") {
    for (double p : {0.0, 0.1, 0.2, 1.0 / 3.0}) {
        CHECK(concurrence(oracle::werner(p)) <= 1e-12);
        CHECK(negativity(oracle::werner(p)) <= 1e-12);
    }
    const auto product = DensityMatrix::from_matrix(kron(Mat2::diagonal({0.3, 0.7}), Mat2::diagonal({0.9, 0.1})));
    CHECK(concurrence(product) == 0.0);
    CHECK(negativity(product) == 0.0);
}
