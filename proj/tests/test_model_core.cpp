#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssep/configuration.hpp"
#include "ssep/params.hpp"
#include "ssep/rng.hpp"

using namespace ssep;

namespace {

Configuration from_bits(int n, std::initializer_list<int> bits) {
    Configuration cfg(n);
    int x = 1;
    for (int b : bits) cfg.set_site(x++, b);
    REQUIRE(x - 1 == n - 1);
    return cfg;
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW(Params::make(2, 1.0, 0.0, 0.5, 0.5));
    CHECK_THROWS_AS(Params::make(1, 1.0, 0.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(4, 0.0, 0.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(4, 1.0, -0.5, 0.5, 0.5), std::invalid_argument);
    // reservoir densities live strictly inside (0,1)
    CHECK_THROWS_AS(Params::make(4, 1.0, 0.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(4, 1.0, 0.0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params::make(4, 1.0, 0.0, 0.5, 0.5, -1.0), std::invalid_argument);

    const Params p = Params::make(10, 2.0, 1.0, 0.3, 0.7, 0.5);
    CHECK(p.boundary_scale == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(p.speedup == doctest::Approx(std::pow(10.0, 2.5)).epsilon(1e-14));
    CHECK(p.num_sites() == 9);
    CHECK(p.num_bonds() == 8);
}

TEST_CASE("boundary flip rates") {
    // N=4, theta=0, c=1, eta=(1,0,1): annihilation at both ends
    const Params p = Params::make(4, 1.0, 0.0, 0.2, 0.8);
    const Configuration cfg = from_bits(4, {1, 0, 1});
    const auto [l, r] = boundary_flip_rates(p, cfg);
    CHECK(l == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(r == doctest::Approx(0.2).epsilon(1e-14));

    // empty left site with symmetric reservoir
    const Params p2 = Params::make(4, 1.0, 0.0, 0.5, 0.5);
    const Configuration empty = from_bits(4, {0, 0, 0});
    CHECK(boundary_flip_rates(p2, empty).first == doctest::Approx(0.5).epsilon(1e-14));

    // c N^-theta prefactor: 2 * (1-0.3) / 10 = 0.14
    const Params p3 = Params::make(10, 2.0, 1.0, 0.3, 0.7);
    Configuration cfg3(10);
    cfg3.set_site(1, 1);
    CHECK(boundary_flip_rates(p3, cfg3).first == doctest::Approx(0.14).epsilon(1e-12));
}

TEST_CASE("total rate") {
    const Params p = Params::make(4, 1.0, 0.0, 0.2, 0.8);
    CHECK(total_rate(p, from_bits(4, {1, 0, 1})) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(total_rate(p, from_bits(4, {0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-14));

    // N=2: no bulk, two creation channels of rate 1/2
    const Params p2 = Params::make(2, 1.0, 0.0, 0.5, 0.5);
    CHECK(total_rate(p2, from_bits(2, {0})) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("total rate is strictly positive for every configuration (N=5 exhaustive)") {
    const Params p = Params::make(5, 0.5, 2.0, 0.1, 0.9);
    for (std::uint64_t s = 0; s < 16; ++s) {
        Configuration cfg(5);
        for (int x = 1; x <= 4; ++x) cfg.set_site(x, (s >> (x - 1)) & 1);
        const auto [l, r] = boundary_flip_rates(p, cfg);
        CHECK(total_rate(p, cfg) == doctest::Approx(cfg.active_bond_count() + l + r));
        CHECK(total_rate(p, cfg) > 0.0);
    }
}

TEST_CASE("apply_event examples") {
    Configuration cfg = from_bits(4, {1, 0, 1});
    CHECK(cfg.active_bond_count() == 2);
    CHECK(cfg.bond_active(1));
    CHECK(cfg.bond_active(2));

    SUBCASE("bulk exchange at bond 1") {
        apply_event(cfg, Event{Event::Kind::bulk_exchange, 1, 0.0});
        CHECK(cfg.site(1) == 0);
        CHECK(cfg.site(2) == 1);
        CHECK(cfg.site(3) == 1);
        CHECK(cfg.particle_count() == 2);
    }
    SUBCASE("right flip removes the particle and shrinks the active set") {
        apply_event(cfg, Event{Event::Kind::right_flip, 3, 0.0});
        CHECK(cfg.site(3) == 0);
        CHECK(cfg.particle_count() == 1);
        CHECK(cfg.active_bond_count() == 1);
        CHECK(cfg.bond_active(1));
        CHECK_FALSE(cfg.bond_active(2));
    }
    SUBCASE("left flip creates a particle from vacuum") {
        Configuration vac = from_bits(4, {0, 0, 0});
        apply_event(vac, Event{Event::Kind::left_flip, 1, 0.0});
        CHECK(vac.site(1) == 1);
        CHECK(vac.particle_count() == 1);
        CHECK(vac.active_bond_count() == 1);
    }
    SUBCASE("exchange at an inactive bond is engine corruption") {
        Configuration flat = from_bits(4, {1, 1, 0});
        CHECK_THROWS_AS(flat.exchange(1), std::logic_error);
    }
}

TEST_CASE("state index") {
    CHECK(from_bits(4, {1, 0, 1}).state_index() == 0b101);
    CHECK(from_bits(4, {0, 0, 0}).state_index() == 0);
    CHECK(from_bits(2, {1}).state_index() == 1);
}

TEST_CASE("initial-configuration generators") {
    CHECK(make_all_occupied(8).particle_count() == 7);
    CHECK(make_all_empty(8).particle_count() == 0);

    const Configuration step = make_left_step(8);
    for (int x = 1; x <= 7; ++x) CHECK(step.site(x) == (2 * x <= 8 ? 1 : 0));

    Xoshiro256pp rng(42);
    const Configuration fc = make_fixed_count(33, 13, rng);
    CHECK(fc.particle_count() == 13);

    const Configuration bp =
        make_bernoulli_profile(64, [](double u) { return u; }, rng);
    int count = 0;
    for (int x = 1; x <= 63; ++x) count += bp.site(x);
    CHECK(count == bp.particle_count());
}

TEST_CASE("bookkeeping recount over 1e5 random events") {
    // Random walk through event space with incremental bookkeeping, checked
    // against a from-scratch recount. Sizes sampled across 2..64.
    Xoshiro256pp rng(123456789);
    int events_done = 0;
    while (events_done < 100000) {
        const int n = 2 + static_cast<int>(rng.below(63));  // 2..64
        Configuration cfg(n);
        for (int x = 1; x < n; ++x) cfg.set_site(x, static_cast<int>(rng.next() & 1));
        for (int k = 0; k < 200 && events_done < 100000; ++k, ++events_done) {
            const int choice = static_cast<int>(rng.below(3));
            if (choice == 0 && cfg.active_bond_count() > 0) {
                const int idx = static_cast<int>(rng.below(cfg.active_bond_count()));
                apply_event(cfg, Event{Event::Kind::bulk_exchange, cfg.active_bond(idx), 0.0});
            } else if (choice == 1) {
                apply_event(cfg, Event{Event::Kind::left_flip, 1, 0.0});
            } else {
                apply_event(cfg, Event{Event::Kind::right_flip, cfg.num_sites(), 0.0});
            }
        }
        // recount from the raw occupancies
        int particles = 0, active = 0;
        for (int x = 1; x < n; ++x) particles += cfg.site(x);
        for (int x = 1; x < n - 1; ++x) {
            const bool act = cfg.site(x) != cfg.site(x + 1);
            active += act;
            REQUIRE(cfg.bond_active(x) == act);
        }
        REQUIRE(cfg.particle_count() == particles);
        REQUIRE(cfg.active_bond_count() == active);
    }
    CHECK(events_done == 100000);
}
