#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "qent/measures.hpp"
#include "qent/states.hpp"

using namespace qent;
using Catch::Matchers::WithinAbs;

TEST_CASE("reshape_to_matrix", "[states]") {
    const std::array<Complex, 4> a{1.0, 0.0, 0.0, 0.0};
    CHECK(reshape_to_matrix(a) == matrix_unit<2>(0, 0));

    const double h = kInvSqrt2;
    const std::array<Complex, 4> bell{h, 0.0, 0.0, h};
    CHECK(reshape_to_matrix(bell) == h * Mat2::identity());

    const std::array<Complex, 4> abcd{1.0, Complex{0.0, 2.0}, 3.0, 4.0};
    const Mat2 m = reshape_to_matrix(abcd);
    CHECK(m == Mat2{{1.0, Complex{0.0, 2.0}, 3.0, 4.0}});
    CHECK(flatten(m).data == abcd);

    const std::array<Complex, 3> short_vec{};
    CHECK_THROWS_AS(reshape_to_matrix(short_vec), DomainError);
}

TEST_CASE("schmidt", "[states]") {
    auto s = schmidt(oracle::bell());
    CHECK_THAT(s.sigma1, WithinAbs(kInvSqrt2, 1e-15));
    CHECK_THAT(s.sigma2, WithinAbs(kInvSqrt2, 1e-15));

    s = schmidt(PureState(Vec4{{1.0, 0.0, 0.0, 0.0}}));
    CHECK(s.sigma1 == 1.0);
    CHECK(s.sigma2 == 0.0);

    s = schmidt(PureState(Vec4{{0.8, 0.0, 0.0, 0.6}}));
    CHECK_THAT(s.sigma1, WithinAbs(0.8, 1e-15));
    CHECK_THAT(s.sigma2, WithinAbs(0.6, 1e-15));

    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto c = schmidt(random_pure(Seed{k}));
        CHECK(c.sigma1 >= c.sigma2);
        CHECK(c.sigma2 >= 0.0);
        CHECK_THAT(c.sigma1 * c.sigma1 + c.sigma2 * c.sigma2, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("PureState validates normalisation", "[states]") {
    CHECK_THROWS_AS(PureState(Vec4{{1.0, 1.0, 0.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(PureState::normalized(Vec4{}), DomainError);
}

TEST_CASE("random_pure", "[states]") {
    const auto a = random_pure(Seed{42});
    const auto b = random_pure(Seed{42});
    CHECK(a.vector() == b.vector());
    CHECK_THAT(frobenius_norm(a.vector()), WithinAbs(1.0, 1e-12));
    CHECK_FALSE(random_pure(Seed{43}).vector() == a.vector());

    // Haar: E|psi_k|^2 = 1/4 for every component.
    std::array<double, 4> mean{};
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        const auto v = random_pure(Seed{static_cast<std::uint64_t>(k)}).vector();
        for (std::size_t i = 0; i < 4; ++i) mean[i] += std::norm(v(i, 0)) / n;
    }
    for (double m : mean) CHECK_THAT(m, WithinAbs(0.25, 0.01));
}

TEST_CASE("random_mixed", "[states]") {
    CHECK_THAT(participation_ratio(random_mixed(Seed{3}, 1)), WithinAbs(1.0, 1e-10));
    for (std::uint64_t k = 0; k < 200; ++k) CHECK(random_mixed(Seed{k}, 4).eigenvalues()[0] > 1e-12);
    for (int rank = 1; rank <= 4; ++rank) {
        const auto ev = random_mixed(Seed{9}, rank).eigenvalues();
        CHECK(ev[static_cast<std::size_t>(4 - rank)] > 1e-6);
        if (rank < 4) CHECK(std::abs(ev[static_cast<std::size_t>(3 - rank)]) < 1e-12);
    }
    CHECK(random_mixed(Seed{5}, 3).matrix() == random_mixed(Seed{5}, 3).matrix());
    CHECK_THROWS_AS(random_mixed(Seed{0}, 0), DomainError);
    CHECK_THROWS_AS(random_mixed(Seed{0}, 5), DomainError);
}

TEST_CASE("random_fixed_spectrum", "[states]") {
    SECTION("pure spectrum gives a pure state") {
        const auto rho = random_fixed_spectrum(Seed{1}, Spectrum({1.0, 0.0, 0.0, 0.0}));
        CHECK_THAT(rho.purity(), WithinAbs(1.0, 1e-12));
    }
    SECTION("flat spectrum gives I/4 for every seed") {
        for (std::uint64_t k = 0; k < 20; ++k) {
            const auto rho = random_fixed_spectrum(Seed{k}, Spectrum({0.25, 0.25, 0.25, 0.25}));
            CHECK(max_abs(rho.matrix() - 0.25 * Mat4::identity()) <= 1e-14);
        }
    }
    SECTION("spectrum is reproduced") {
        const Spectrum l({0.5, 0.3, 0.2, 0.0});
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const auto ev = random_fixed_spectrum(Seed{k}, l).eigenvalues();
            for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(ev[i], WithinAbs(l[3 - i], 1e-10));
        }
    }
    SECTION("entanglement varies across the orbit") {
        const Spectrum l({0.7, 0.3, 0.0, 0.0});
        double cmin = 1.0, cmax = 0.0, nmin = 1.0, nmax = 0.0;
        for (std::uint64_t k = 0; k < 100; ++k) {
            const auto rho = random_fixed_spectrum(Seed{k}, l);
            cmin = std::min(cmin, concurrence(rho));
            cmax = std::max(cmax, concurrence(rho));
            nmin = std::min(nmin, negativity(rho));
            nmax = std::max(nmax, negativity(rho));
        }
        CHECK(cmax - cmin > 0.1);
        CHECK(nmax - nmin > 0.1);
    }
    CHECK_THROWS_AS(Spectrum({0.5, 0.6, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(Spectrum({0.6, 0.5, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(Spectrum({1.1, 0.0, 0.0, -0.1}), DomainError);
}

TEST_CASE("apply_local_unitary", "[states]") {
    const auto rho = random_mixed(Seed{4}, 3);
    CHECK(max_abs(apply_local_unitary(rho, Mat2::identity(), Mat2::identity()).matrix() - rho.matrix()) <= 1e-15);

    const auto flipped = apply_local_unitary(rho, pauli::y(), pauli::y());
    const auto a = rho.eigenvalues(), b = flipped.eigenvalues();
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(b[i], WithinAbs(a[i], 1e-14));

    const auto bell = oracle::bell().density();
    for (std::uint64_t k = 0; k < 100; ++k) {
        auto rng = gen::rng_for(20, k);
        const Mat2 u = random_unitary<2>(rng), v = random_unitary<2>(rng);
        CHECK_THAT(concurrence(apply_local_unitary(bell, u, v)), WithinAbs(1.0, 1e-10));
    }

    SECTION("measures are invariant") {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 1000; ++k) {
            auto rng = gen::rng_for(21, k);
            const auto s = random_mixed(Seed{k}, 1 + static_cast<int>(k % 4));
            const auto t = apply_local_unitary(s, random_unitary<2>(rng), random_unitary<2>(rng));
            const auto r1 = report(s), r2 = report(t);
            worst = std::max({worst, std::abs(r1.concurrence - r2.concurrence), std::abs(r1.negativity - r2.negativity),
                              std::abs(r1.eof - r2.eof), std::abs(r1.participation_ratio - r2.participation_ratio)});
        }
        CHECK(worst <= 1e-10);
    }

    CHECK_THROWS_AS(apply_local_unitary(rho, 2.0 * Mat2::identity(), Mat2::identity()), DomainError);
}

TEST_CASE("Ensemble reconstructs a valid state", "[states]") {
    for (std::uint64_t k = 0; k < 200; ++k) {
        auto rng = gen::rng_for(22, k);
        Ensemble e;
        const std::size_t n = 1 + k % 5;
        e.weights = random_simplex_weights(rng, n);
        for (std::size_t i = 0; i < n; ++i) e.members.push_back(PureState::normalized(rng.ginibre<4, 1>()));
        const auto rho = e.density();
        CHECK_THAT(trace(rho.matrix()).real(), WithinAbs(1.0, 1e-12));
        CHECK(rho.eigenvalues()[0] >= -1e-12);
    }
    Ensemble bad{{0.5, 0.6}, {oracle::bell(), oracle::bell()}};
    CHECK_THROWS_AS(bad.density(), DomainError);
}

TEST_CASE("equality_class_state", "[states]") {
    SECTION("Bell state from the identity reshape") {
        Ensemble e{{1.0}, {PureState(flatten(kInvSqrt2 * Mat2::identity()))}};
        const auto rho = apply_local_unitary(e.density(), Mat2::identity(), Mat2::identity());
        CHECK_THAT(concurrence(rho), WithinAbs(1.0, 1e-12));
        CHECK_THAT(negativity(rho), WithinAbs(1.0, 1e-12));
    }
    SECTION("product state from e^{11}") {
        Ensemble e{{1.0}, {PureState(flatten(matrix_unit<2>(0, 0)))}};
        const auto rho = e.density();
        CHECK(concurrence(rho) <= 1e-12);
        CHECK(negativity(rho) <= 1e-12);
    }
    SECTION("C equals E_N over many seeds and mixture sizes") {
        double worst = 0.0;
        for (int k : {1, 2, 3, 4, 8})
            for (std::uint64_t s = 0; s < 1000; ++s) {
                const auto rho = equality_class_state(Seed{s}, k);
                worst = std::max(worst, std::abs(concurrence(rho) - negativity(rho)));
            }
        CHECK(worst <= 1e-8);
    }
    SECTION("generic states do not satisfy equality") {
        int unequal = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const auto rho = random_mixed(Seed{s}, 2);
            if (concurrence(rho) - negativity(rho) > 1e-6) ++unequal;
        }
        CHECK(unequal > 50);
    }
    CHECK_THROWS_AS(equality_class_state(Seed{0}, 0), DomainError);
}

TEST_CASE("ensemble_eigvec_condition", "[states]") {
    SECTION("eigenvector formula matches the partial transpose") {
        for (std::uint64_t k = 0; k < 200; ++k) {
            const auto psi = random_pure(Seed{k});
            const auto d = svd(psi.tilde());
            const Vec4 singlet{{0.0, kInvSqrt2, -kInvSqrt2, 0.0}};
            const Vec4 predicted = kron(d.u, d.v) * singlet;
            const auto e = herm_eig(partial_transpose(psi.density().matrix()));
            Complex overlap{};
            for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(e.eigenvectors(i, 0)) * predicted(i, 0);
            CHECK_THAT(std::abs(overlap), WithinAbs(1.0, 1e-10));
        }
    }
    SECTION("single member") { CHECK(ensemble_eigvec_condition(Ensemble{{1.0}, {random_pure(Seed{1})}})); }
    SECTION("PSD Hermitian reshapes, before and after a common local rotation") {
        int multi = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto sample = equality_class_sample(Seed{s}, 4);
            // The sampler's eigenvalue shift leaves many members on the
            // rank-1 boundary of the PSD cone; those are product states.
            auto& members = sample.pre_rotation.members;
            std::erase_if(members, [](const PureState& m) { return schmidt(m).sigma2 <= 1e-10; });
            if (members.empty()) continue;
            multi += members.size() > 1;
            sample.pre_rotation.weights.assign(members.size(), 1.0 / static_cast<double>(members.size()));
            CHECK(ensemble_eigvec_condition(sample.pre_rotation));
            Ensemble rotated = sample.pre_rotation;
            for (auto& m : rotated.members) m = PureState(kron(sample.u, sample.v) * m.vector());
            CHECK(ensemble_eigvec_condition(rotated));
        }
        CHECK(multi > 0);
    }
    SECTION("full-rank PSD Hermitian reshapes") {
        for (std::uint64_t s = 0; s < 200; ++s) {
            auto rng = gen::rng_for(60, s);
            Ensemble e;
            e.weights = random_simplex_weights(rng, 4);
            for (int i = 0; i < 4; ++i) {
                const Mat2 g = rng.ginibre<2, 2>();
                e.members.push_back(PureState::normalized(flatten(g * adjoint(g))));
            }
            CHECK(ensemble_eigvec_condition(e));
            const Mat2 u = random_su2(rng), v = random_su2(rng);
            for (auto& m : e.members) m = PureState(kron(u, v) * m.vector());
            CHECK(ensemble_eigvec_condition(e));
        }
    }
    SECTION("independent random members") {
        int holds = 0;
        for (std::uint64_t s = 0; s < 200; ++s)
            holds += ensemble_eigvec_condition(Ensemble{{0.5, 0.5}, {random_pure(Seed{2 * s}), random_pure(Seed{2 * s + 1})}});
        CHECK(holds == 0);
    }
    SECTION("product member is rejected") {
        Ensemble e{{0.5, 0.5}, {oracle::bell(), PureState(Vec4{{1.0, 0.0, 0.0, 0.0}})}};
        CHECK_THROWS_AS(ensemble_eigvec_condition(e), DomainError);
        CHECK_THROWS_AS(ensemble_eigvec_condition(Ensemble{}), DomainError);
    }
}

TEST_CASE("DensityMatrix validation names the violated invariant", "[states]") {
    Mat4 m = 0.25 * Mat4::identity();
    m(0, 1) = 0.1;
    try {
        (void)DensityMatrix::from_matrix(m);
        FAIL("expected InvalidState");
    } catch (const InvalidState& e) {
        CHECK(e.invariant() == "hermiticity");
        CHECK(std::string(e.what()) == "hermiticity violated");
    }
    CHECK_THROWS_AS(DensityMatrix::from_matrix(0.3 * Mat4::identity()), InvalidState);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(Mat4::diagonal({1.2, -0.2, 0.0, 0.0})), InvalidState);
    CHECK_NOTHROW(DensityMatrix::from_matrix(0.25 * Mat4::identity()));
}
