#include <doctest.h>

#include <filesystem>
#include <numbers>
#include <random>

#include "odiff/catalog.hpp"
#include "odiff/error.hpp"
#include "odiff/io.hpp"
#include "odiff/solver.hpp"
#include "support/oracles.hpp"

using namespace odiff;

TEST_CASE("tableau json round-trips bit-exactly") {
    const double w = 120.0 * std::numbers::pi;
    for (auto id : kAllIntegrators) {
        const auto omega = is_frequency_optimized(id) ? std::optional<double>(w) : std::nullopt;
        const auto t = make_catalog(id, 1e-3, omega);
        const auto back = tableau_from_json(tableau_to_json(t));
        CHECK(back == t);
    }
    auto rng = oracle::make_rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = u(rng);
        const ObreshkovTableau t(2, 1, 1e-3 * (1.5 + u(rng)), {1.0}, {{a / 3.0, u(rng) * 1e-7}, {u(rng) * 1e-9, 0.0}});
        CHECK(tableau_from_json(tableau_to_json(t)) == t);
    }
}

TEST_CASE("tableau json parsing") {
    const auto t = tableau_from_json(
        R"({"k":2,"m":1,"h":0.001,"c0":[1.0],"c":[[6.651e-4,3.349e-4],[-1.671e-7,0.0]],"label":"E","omega_select":376.991})");
    CHECK(t.k() == 2);
    CHECK(t.coeff(2, 0) == -1.671e-7);
    CHECK(t.label() == "E");
    CHECK(t.omega_select() == 376.991);

    const auto bare = tableau_from_json(R"({"k":1,"m":1,"h":1E-3,"c0":[1],"c":[[5e-4,5e-4]]})");
    CHECK(bare.label().empty());
    CHECK_FALSE(bare.omega_select());

    CHECK_THROWS_AS((void)tableau_from_json("{"), ParseError);
    CHECK_THROWS_AS((void)tableau_from_json(R"({"k":1,"m":1,"h":1e-3,"c0":[1]})"), ParseError);
    CHECK_THROWS_AS((void)tableau_from_json(R"({"k":1,"m":1,"h":1e-3,"c0":[1],"c":[[1]]})"), ParseError);
    CHECK_THROWS_AS((void)tableau_from_json(R"({"k":"one","m":1,"h":1e-3,"c0":[1],"c":[[1,0]]})"), ParseError);
}

TEST_CASE("constraint json round-trip") {
    const auto c = integrator_e_constraints(1e-3, 120.0 * std::numbers::pi);
    const auto back = constraints_from_json(constraints_to_json(c));
    CHECK(back.k == c.k);
    CHECK(back.m == c.m);
    CHECK(back.h == c.h);
    CHECK(back.fixed == c.fixed);
    CHECK(back.origin_multiplicity == c.origin_multiplicity);
    CHECK(back.frequencies == c.frequencies);
    CHECK_THROWS_AS((void)constraints_from_json(R"({"k":2})"), ParseError);
}

TEST_CASE("atomic file write") {
    const auto dir = std::filesystem::temp_directory_path() / "odiff_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "x.json";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    CHECK_THROWS((void)read_file(dir / "missing.json"));
    std::filesystem::remove_all(dir);
}
