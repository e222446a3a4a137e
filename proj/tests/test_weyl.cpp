#include <doctest.h>

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "gkz/oscillator.hpp"
#include "oracles.hpp"

using gkz::Complex;
using gkz::Generator;
using gkz::GeneratorKind;
using gkz::Rat;
using gkz::SeparableExponential;
using gkz::SpectralAssignment;
using gkz::SpectralPoly;
using gkz::WeylElement;

namespace {

WeylElement monomial(std::size_t n, const std::vector<unsigned>& a,
                     const std::vector<unsigned>& b, const Rat& c) {
    WeylElement w = WeylElement::scalar(n, SpectralPoly::constant(n, c));
    for (std::size_t v = 0; v < n; ++v)
        for (unsigned k = 0; k < a[v]; ++k) w = w * WeylElement::coordinate(n, v);
    for (std::size_t v = 0; v < n; ++v)
        for (unsigned k = 0; k < b[v]; ++k) w = w * WeylElement::derivative(n, v);
    return w;
}

WeylElement random_element(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<unsigned> expo(0, 2);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    WeylElement w = WeylElement::zero(n);
    for (int term = 0; term < 3; ++term) {
        std::vector<unsigned> a(n), b(n);
        for (std::size_t v = 0; v < n; ++v) {
            a[v] = expo(rng);
            b[v] = expo(rng);
        }
        w = w + monomial(n, a, b, Rat(num(rng), den(rng)));
    }
    return w;
}

// plain Lebesgue pairing of separable exponentials on the positive orthant
Complex plain_pairing(const std::vector<SeparableExponential>& fs,
                      const SeparableExponential& g) {
    Complex acc(0.0, 0.0);
    for (const auto& f : fs) {
        double prod = 1.0;
        for (std::size_t v = 0; v < g.powers.size(); ++v)
            prod *= oracles::exp_moment_oracle(
                static_cast<double>(f.powers[v] + g.powers[v]), f.qs[v] + g.qs[v]);
        acc += f.coef * g.coef * prod;
    }
    return acc;
}

} // namespace

TEST_CASE("normal ordering of the canonical pair") {
    const std::size_t n = 1;
    auto t = WeylElement::coordinate(n, 0);
    auto d = WeylElement::derivative(n, 0);
    CHECK(d * t == t * d + WeylElement::unit(n));
    CHECK(commutator(d, t) == WeylElement::unit(n));
    CHECK(commutator(t, d) == -WeylElement::unit(n));
}

TEST_CASE("higher contractions follow the binomial expansion") {
    const std::size_t n = 1;
    auto t = WeylElement::coordinate(n, 0);
    auto d = WeylElement::derivative(n, 0);
    // d^2 t^2 = t^2 d^2 + 4 t d + 2
    auto lhs = d * d * t * t;
    auto two = WeylElement::scalar(n, SpectralPoly::constant(n, 2));
    auto four = WeylElement::scalar(n, SpectralPoly::constant(n, 4));
    CHECK(lhs == t * t * d * d + four * (t * d) + two);
}

TEST_CASE("product is associative on random elements") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_element(rng, 2);
        auto b = random_element(rng, 2);
        auto c = random_element(rng, 2);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("oscillator structure constants hold in both representations") {
    const std::size_t n = 2;
    auto check_map = [&](auto&& rep) {
        auto E = [&](std::size_t i) { return rep(Generator{GeneratorKind::raising, i}); };
        auto F = [&](std::size_t i) { return rep(Generator{GeneratorKind::lowering, i}); };
        auto H = [&](std::size_t i) { return rep(Generator{GeneratorKind::grading, i}); };
        auto C = rep(Generator{GeneratorKind::center, 0});

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                auto delta = [&](const WeylElement& w) {
                    return i == j ? w : WeylElement::zero(n);
                };
                CHECK(commutator(E(i), F(j)) == delta(-C));
                CHECK(commutator(H(i), E(j)) == delta(E(j)));
                CHECK(commutator(H(i), F(j)) == delta(-F(j)));
                CHECK(commutator(E(i), E(j)).is_zero());
                CHECK(commutator(F(i), F(j)).is_zero());
            }
            CHECK(commutator(C, E(i)).is_zero());
            CHECK(commutator(C, H(i)).is_zero());
        }
    };

    for (const auto& gamma :
         {SpectralAssignment::formal(n),
          SpectralAssignment::numeric({Rat(1, 2), Rat(-3, 4)})}) {
        check_map([&](const Generator& g) { return gkz::represent(g, gamma); });
        check_map([&](const Generator& g) { return gkz::represent_dual(g, gamma); });
    }
}

TEST_CASE("euler operator identity") {
    for (unsigned n = 0; n <= 6; ++n) CHECK(gkz::euler_identity_check(n));
}

TEST_CASE("two-sided elements annihilate in the representation") {
    SUBCASE("hand-picked vectors, formal spectra") {
        CHECK(gkz::verify_annihilation({1}, SpectralAssignment::formal(1)));
        CHECK(gkz::verify_annihilation({-2}, SpectralAssignment::formal(1)));
        CHECK(gkz::verify_annihilation({2, -3}, SpectralAssignment::formal(2)));
        CHECK(gkz::verify_annihilation({0, 0}, SpectralAssignment::formal(2)));
        CHECK(gkz::verify_annihilation({3, -1, 2}, SpectralAssignment::formal(3)));
    }
    SUBCASE("exhaustive small vectors, formal and numeric spectra") {
        auto numeric = SpectralAssignment::numeric({Rat(5, 3), Rat(-7, 2)});
        for (long long l0 = -2; l0 <= 2; ++l0)
            for (long long l1 = -2; l1 <= 2; ++l1) {
                CHECK(gkz::verify_annihilation({l0, l1}, SpectralAssignment::formal(2)));
                CHECK(gkz::verify_annihilation({l0, l1}, numeric));
            }
    }
    SUBCASE("arity mismatch is rejected") {
        CHECK_THROWS_AS(gkz::casimir_image({1, 2}, SpectralAssignment::formal(3)),
                        std::invalid_argument);
    }
}

TEST_CASE("applying elements to separable exponentials") {
    const std::size_t n = 1;
    SeparableExponential f;
    f.powers = {2};
    f.qs = {1.3};

    auto td = WeylElement::coordinate(n, 0) * WeylElement::derivative(n, 0);
    auto terms = gkz::apply_weyl(td, f);

    // t d/dt (t^2 e^{-qt}) = (2 t^2 - q t^3) e^{-qt}
    const double t = 0.85;
    Complex got(0.0, 0.0);
    for (const auto& s : terms)
        got += s.coef * std::pow(t, static_cast<double>(s.powers[0])) * std::exp(-s.qs[0] * t);
    const double want = (2.0 * t * t - 1.3 * t * t * t) * std::exp(-1.3 * t);
    CHECK(std::abs(got - Complex(want, 0.0)) < 1e-14);

    // formal spectral coefficients cannot be applied numerically
    auto h = gkz::represent({GeneratorKind::grading, 0}, SpectralAssignment::formal(1));
    CHECK_THROWS_AS(gkz::apply_weyl(h, f), std::invalid_argument);
}

TEST_CASE("dual pairing antisymmetry against the moment oracle") {
    const std::size_t n = 2;
    auto gamma = SpectralAssignment::numeric({Rat(2, 5), Rat(-1, 3)});

    SeparableExponential phi;
    phi.powers = {1, 0};
    phi.qs = {1.1, 0.9};
    SeparableExponential psi;
    psi.powers = {0, 2};
    psi.qs = {0.8, 1.4};

    std::vector<Generator> gens;
    gens.push_back({GeneratorKind::center, 0});
    for (std::size_t i = 0; i < n; ++i) {
        gens.push_back({GeneratorKind::raising, i});
        gens.push_back({GeneratorKind::lowering, i});
        gens.push_back({GeneratorKind::grading, i});
    }

    for (const auto& g : gens) {
        auto left = plain_pairing(gkz::apply_weyl(gkz::represent_dual(g, gamma), phi), psi);
        auto right = plain_pairing(gkz::apply_weyl(gkz::represent(g, gamma), psi), phi);
        const double scale = std::max({std::abs(left), std::abs(right), 1e-3});
        CHECK(std::abs(left + right) / scale < 1e-8);
    }
}

TEST_CASE("left functional pairing against closed moments") {
    using gkz::IntegerMatrix;

    SUBCASE("relation-free datum gives a pure moment") {
        auto data = gkz::build_gkz_data(IntegerMatrix::from_rows({{1}}));
        SeparableExponential f;
        f.powers = {2};
        f.qs = {0.9};
        gkz::SpectralVector g{{Complex(0.6, 0.0)}};
        // Int t^{gamma+p} e^{-qt} dt/t = Gamma(gamma+p) / q^{gamma+p}
        Complex want =
            oracles::gamma_oracle(Complex(2.6, 0.0)) * std::pow(0.9, -2.6);
        Complex got = gkz::phiL_pairing(data, g, f);
        CHECK(std::abs(got - want) / std::abs(want) < 1e-9);
    }

    SUBCASE("one relation reduces to a symmetric one-dimensional integral") {
        auto data = gkz::build_gkz_data(IntegerMatrix::from_rows({{1, -1}}));
        SeparableExponential f;
        f.powers = {0, 0};
        f.qs = {1.0, 1.0};
        gkz::SpectralVector g{{Complex(0.9, 0.0), Complex(0.6, 0.0)}};

        // delta pins t1 t2 = 1: the pairing is Int t^{g1-g2} e^{-t-1/t} dt/t
        double acc = 0.0;
        const long npts = 400001;
        const double lo = -40.0, hi = 40.0, h = (hi - lo) / (npts - 1);
        for (long k = 0; k < npts; ++k) {
            const double T = lo + h * k;
            const double w = (k == 0 || k == npts - 1) ? 0.5 : 1.0;
            acc += std::exp(0.3 * T - 2.0 * std::cosh(T)) * w;
        }
        Complex want(acc * h, 0.0);
        Complex got = gkz::phiL_pairing(data, g, f);
        CHECK(std::abs(got - want) / std::abs(want) < 1e-9);
    }

    SUBCASE("rate validation") {
        auto data = gkz::build_gkz_data(IntegerMatrix::from_rows({{1}}));
        SeparableExponential f;
        f.powers = {0};
        f.qs = {0.0};
        gkz::SpectralVector g{{Complex(1.0, 0.0)}};
        CHECK_THROWS_AS(gkz::phiL_pairing(data, g, f), std::invalid_argument);
    }
}

TEST_CASE("torus dilation matrix element reproduces the direct evaluation") {
    using gkz::IntegerMatrix;
    auto data = gkz::build_gkz_data(IntegerMatrix::from_rows({{1, -1}}));
    gkz::SpectralVector g{{Complex(1.1, 0.0), Complex(0.7, 0.0)}};
    std::vector<double> y{0.3, -0.45};

    SeparableExponential dilated;
    dilated.powers = {0, 0};
    dilated.qs = {std::exp(y[0]), std::exp(y[1])};

    Complex lhs = std::exp(g[0] * y[0] + g[1] * y[1]) * gkz::phiL_pairing(data, g, dilated);
    auto rhs = gkz::evaluate_gg(data, g, gkz::ArgumentVector::from_logs(y));
    CHECK(std::abs(lhs - rhs.value) / std::abs(rhs.value) < 1e-8);
}
