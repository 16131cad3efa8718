#include <nonlocal_evolve/solver_hom.hpp>
#include <nonlocal_evolve/symbol.hpp>

#include <doctest.h>

#include <cmath>

using namespace nlevolve;

namespace {
const double pi2 = kPi * kPi;
}

TEST_CASE("solvability verdicts")
{
    auto const spec = SpectralCharacteristics::make(pi2, kPi / 6);
    CHECK(check_solvability({{0.5, 0.3}, {0.2, 0.4}, 1.0}, spec) == Solvability::UM1);
    CHECK(check_solvability({}, spec) == Solvability::UM1);
    CHECK(check_solvability({{1.2}, {0.5}, 1.0}, spec) == Solvability::UM2);
    CHECK(check_solvability({{1.0}, {0.5}, 1.0}, spec) == Solvability::UM2);

    auto const weak = SpectralCharacteristics::make(1.0, kPi / 6);
    CHECK(check_solvability({{2.0}, {0.01}, 1.0}, weak) == Solvability::Unknown);
    CHECK(check_solvability({{-0.5, 0.3}, {0.2, 0.4}, 1.0}, weak) == Solvability::UM1);
    CHECK(to_string(Solvability::UM2) == "UM2");
}

TEST_CASE("symbol B")
{
    NonlocalSpec const nl{{0.5, 0.3}, {0.2, 0.4}, 1.0};
    CHECK(symbol_B(nl, 0.0) == Complex(1.8));
    CHECK(symbol_B({}, Complex(3, 4)) == Complex(1.0));
    Complex const b = symbol_B(nl, pi2);
    CHECK(b.real() == doctest::Approx(1.075244457444705).epsilon(1e-14));
    CHECK(b.imag() == 0.0);
    CHECK(b.real() == doctest::Approx(1 + 0.5 * std::exp(-0.2 * pi2) + 0.3 * std::exp(-0.4 * pi2)));

    Complex const z(2.5, -7.25);
    CHECK(std::abs(symbol_B(nl, std::conj(z)) - std::conj(symbol_B(nl, z))) <= 1e-15);
}

TEST_CASE("Q bound")
{
    NonlocalSpec const nl{{0.5, 0.3}, {0.2, 0.4}, 1.0};
    auto const s0 = SpectralCharacteristics::make(1.0, kPi / 4, 0.0);
    CHECK(q_bound(nl, s0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(q_bound({}, s0) == 1.0);

    auto const spec = SpectralCharacteristics::make(pi2, kPi / 6);
    CHECK(q_bound({{1.0}, {0.5}, 1.0}, spec) == doctest::Approx(1.092663279323201).epsilon(1e-14));
    CHECK(q_bound_terms({{1.0}, {0.5}, 1.0}, spec).size() == 1);

    try
    {
        q_bound({{0.9, 0.2}, {0.1, 0.3}, 1.0}, s0);
        FAIL("expected ContourUnsafe");
    }
    catch (const Error& e)
    {
        CHECK(e.kind() == ErrorKind::ContourUnsafe);
        CHECK(std::string(e.what()).find("0.1") != std::string::npos);
    }
}

TEST_CASE("B stays away from zero on the contour")
{
    NonlocalSpec const nl{{1.0}, {0.5}, 1.0};
    auto const spec = SpectralCharacteristics::make(0.95 * pi2, kPi / 6);
    SincPlan const plan = make_plan(spec, nl, 64);
    for (auto const& node : plan.nodes)
        CHECK(std::abs(node.symbol) >= 1 / plan.Q - 1e-12);
}

TEST_CASE("nonlocal spec validation")
{
    CHECK_NOTHROW(NonlocalSpec({{0.5}, {0.2}, 1.0}).validate());
    CHECK_THROWS_AS(NonlocalSpec({{0.5, 0.1}, {0.2}, 1.0}).validate(), Error);
    CHECK_THROWS_AS(NonlocalSpec({{0.5, 0.1}, {0.4, 0.2}, 1.0}).validate(), Error);
    CHECK_THROWS_AS(NonlocalSpec({{0.5}, {0.0}, 1.0}).validate(), Error);
    CHECK_THROWS_AS(NonlocalSpec({{0.5}, {1.5}, 1.0}).validate(), Error);
    CHECK_THROWS_AS(NonlocalSpec({{0.5}, {0.5}, 0.0}).validate(), Error);
}
