/*
   Copyright 2026 The bdec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include "dynamics.hpp"
#include "errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bdec;

namespace {

constexpr double pi = std::numbers::pi;

// Inward normal of the a=r=1 stadium at a boundary point, computed without
// the geometry module.
Vec2 stadium_normal(Vec2 p)
{
    if (std::abs(p.x) <= 1.0)
        return {0.0, p.y > 0 ? -1.0 : 1.0};
    const Vec2 c{p.x > 0 ? 1.0 : -1.0, 0.0};
    return normalized(c - p);
}

bool stadium_inside(Vec2 p)
{
    if (std::abs(p.x) <= 1.0)
        return std::abs(p.y) <= 1.0;
    return std::hypot(std::abs(p.x) - 1.0, p.y) <= 1.0;
}

// Fixed-step integrator: straight steps of dt, wall crossings located by
// bisection and reflected there.
Vec2 brute_force_position(Vec2 q, Vec2 v, double t, double dt)
{
    double now = 0.0;
    while (now < t) {
        double h = std::min(dt, t - now);
        Vec2 next = q + v * h;
        if (!stadium_inside(next)) {
            double lo = 0.0, hi = h;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                (stadium_inside(q + v * mid) ? lo : hi) = mid;
            }
            const Vec2 hit = q + v * lo;
            const Vec2 n = stadium_normal(hit);
            v = v - n * (2.0 * dot(v, n));
            q = hit;
            now += lo;
            continue;
        }
        q = next;
        now += h;
    }
    return q;
}

} // namespace

TEST_CASE("propagate: 1D bouncing in the unit square")
{
    const auto sq = BilliardDomain::rectangle(1, 1);
    const auto tr = propagate(sq, {0.5, 0.5}, {1, 0}, 1.0, 2.0);
    const auto &bp = tr.breakpoints();
    REQUIRE(bp.size() == 4);
    CHECK(bp[1].t == doctest::Approx(0.5));
    CHECK(bp[2].t == doctest::Approx(1.5));
    CHECK(bp[3].t == 2.0);
    const Vec2 end = tr.position_at(2.0);
    CHECK(end.x == doctest::Approx(0.5));
    CHECK(end.y == doctest::Approx(0.5));
    CHECK(tr.position_at(0.5).x == doctest::Approx(1.0));
    CHECK(tr.position_at(1.0).x == doctest::Approx(0.5));
    CHECK(tr.position_at(0.0).x == 0.5);
    CHECK(tr.collisions() == 2);
}

TEST_CASE("propagate: disk diameter orbit")
{
    const auto d = BilliardDomain::disk(1);
    const auto tr = propagate(d, {0, 0}, {0, 1}, 1.0, 6.0);
    const auto &bp = tr.breakpoints();
    REQUIRE(bp.size() >= 4);
    CHECK(bp[1].t == doctest::Approx(1.0));
    for (std::size_t k = 2; k + 1 < bp.size(); ++k)
        CHECK(bp[k].t - bp[k - 1].t == doctest::Approx(2.0));
}

TEST_CASE("propagate: mass scales velocity")
{
    const auto sq = BilliardDomain::rectangle(1, 1);
    const auto tr = propagate(sq, {0.5, 0.5}, {2, 0}, 4.0, 1.0);
    CHECK(tr.velocity_at(0.1).x == doctest::Approx(0.5));
    CHECK(tr.breakpoints()[1].t == doctest::Approx(1.0));
}

TEST_CASE("propagate: errors")
{
    const auto sq = BilliardDomain::rectangle(1, 1);
    CHECK_THROWS_AS(propagate(sq, {0.5, 0.5}, {1, 0}, 1.0, 0.0), RangeError);
    CHECK_THROWS_AS(propagate(sq, {2.0, 0.5}, {1, 0}, 1.0, 1.0), GeometryError);
    const auto tr = propagate(sq, {0.5, 0.5}, {1, 0}, 1.0, 2.0);
    CHECK_THROWS_AS(tr.position_at(-0.1), RangeError);
    CHECK_THROWS_AS(tr.position_at(2.1), RangeError);
}

TEST_CASE("stadium trajectories satisfy the Trajectory invariants")
{
    const auto st = BilliardDomain::stadium(1, 1);
    Engine rng = stream_engine(9, 0, 0);
    std::uniform_real_distribution<double> ua(0.0, 2.0 * pi);
    const double diam = st.diameter();
    double worst_speed = 0.0;
    int built = 0;
    for (int i = 0; i < 10000; ++i) {
        const Vec2 q = sample_uniform_point(st, rng);
        const double a = ua(rng);
        // 10^3 flight times at unit speed.
        const double t_max = i < 20 ? 100.0 : 1000.0 * st.mean_free_path();
        Trajectory tr = [&] {
            for (;;) {
                try {
                    return propagate(st, q, {std::cos(a), std::sin(a)}, 1.0, t_max);
                }
                catch (const TangencyError &) {
                }
            }
        }();
        ++built;
        const auto &bp = tr.breakpoints();
        REQUIRE(bp.front().t == 0.0);
        REQUIRE(bp.back().t == t_max);
        const double v0 = norm(bp[0].v);
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            worst_speed = std::max(worst_speed, std::abs(norm(bp[k].v) - v0) / v0);
            const Vec2 pred = bp[k].q + bp[k].v * (bp[k + 1].t - bp[k].t);
            if (norm(pred - bp[k + 1].q) > 1e-10 * diam)
                FAIL("segment continuity broken at k=" << k);
            if (k >= 1 && std::abs(std::abs(bp[k].q.x) <= 1.0 ? std::abs(bp[k].q.y) - 1.0
                                                              : std::hypot(std::abs(bp[k].q.x) - 1.0, bp[k].q.y) - 1.0) >
                              1e-9)
                FAIL("collision point off the boundary at k=" << k);
        }
        if (i < 20) {
            std::uniform_real_distribution<double> ut(0.0, t_max);
            for (int j = 0; j < 5000; ++j)
                if (!st.contains(tr.position_at(ut(rng)), 1e-9 * diam))
                    FAIL("interpolated point outside the table");
        }
    }
    CHECK(built == 10000);
    CHECK(worst_speed < 1e-10);
}

TEST_CASE("position_at agrees with a fine fixed-step integrator")
{
    const auto st = BilliardDomain::stadium(1, 1);
    Engine rng = stream_engine(4, 0, 0);
    std::uniform_real_distribution<double> ua(0.0, 2.0 * pi), ut(0.0, 20.0);
    for (int i = 0; i < 10; ++i) {
        const Vec2 q = sample_uniform_point(st, rng);
        const double a = ua(rng);
        const Vec2 v{std::cos(a), std::sin(a)};
        const auto tr = propagate(st, q, v, 1.0, 20.0);
        const double t = ut(rng);
        const Vec2 ref = brute_force_position(q, v, t, 1e-4);
        CHECK(norm(tr.position_at(t) - ref) < 1e-6);
    }
}

TEST_CASE("advance matches propagate")
{
    const auto st = BilliardDomain::stadium(1, 1);
    const Vec2 q{0.1, 0.2}, v{std::cos(0.7), std::sin(0.7)};
    const auto tr = propagate(st, q, v, 1.0, 30.0);
    PhaseState s{q, v};
    const std::size_t hits = advance(st, s, 30.0);
    CHECK(hits == tr.collisions());
    CHECK(norm(s.q - tr.position_at(30.0)) < 1e-12);
}

TEST_CASE("Benettin: integrable tables are consistent with zero, the stadium is not")
{
    const auto st = BilliardDomain::stadium(1, 1);
    const auto disk = BilliardDomain::disk(1);
    const auto rect = BilliardDomain::rectangle(1, 0.7);
    LyapunovOptions o;
    o.t_max = 2000.0;
    o.ensemble = 32;
    o.seed = 3;
    const auto ls = lyapunov_benettin(st, o);
    const auto ld = lyapunov_benettin(disk, o);
    const auto lr = lyapunov_benettin(rect, o);
    CHECK(std::abs(ld.lambda) <= 3.0 * ld.uncertainty());
    CHECK(std::abs(lr.lambda) <= 3.0 * lr.uncertainty());
    CHECK(ls.lambda > 0.0);
    CHECK(ls.lambda > 3.0 * ls.uncertainty());
    CHECK(ls.converged);
    CHECK(ls.lambda > 20.0 * std::max(std::abs(ld.lambda), std::abs(lr.lambda)));
    CHECK(ls.std_error >= 0.0);
    CHECK(ls.ensemble_size == 32);

    LyapunovOptions o2 = o;
    o2.t_max = 2.0 * o.t_max;
    const auto ls2 = lyapunov_benettin(st, o2);
    CHECK(std::abs(ls2.lambda - ls.lambda) / ls.lambda < 0.05);
}

TEST_CASE("Benettin: exponent scales with speed")
{
    const auto st = BilliardDomain::stadium(1, 1);
    LyapunovOptions o;
    o.t_max = 2000.0;
    o.ensemble = 32;
    const auto l1 = lyapunov_benettin(st, o);
    o.speed = 2.0;
    o.t_max = 1000.0;
    o.seed = 2;
    const auto l2 = lyapunov_benettin(st, o);
    const double ratio = l2.lambda / l1.lambda;
    const double se = ratio * std::hypot(l1.uncertainty() / l1.lambda, l2.uncertainty() / l2.lambda);
    CHECK(std::abs(ratio - 2.0) <= 3.0 * se);
}

TEST_CASE("Benettin: deterministic across worker counts")
{
    const auto st = BilliardDomain::stadium(1, 1);
    LyapunovOptions o;
    o.t_max = 300.0;
    o.ensemble = 16;
    const auto a = lyapunov_benettin(st, o);
    o.workers = 4;
    const auto b = lyapunov_benettin(st, o);
    CHECK(a.lambda == b.lambda);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("Benettin: argument checks")
{
    const auto st = BilliardDomain::stadium(1, 1);
    LyapunovOptions o;
    o.t_max = 0.0;
    CHECK_THROWS_AS(lyapunov_benettin(st, o), RangeError);
    o.t_max = 1.0;
    CHECK_THROWS_AS(lyapunov_benettin(st, o), RangeError);
}

TEST_CASE("mean free time: mean-chord identity and scaling")
{
    const auto st = BilliardDomain::stadium(1, 1);
    const double expected = pi * (4.0 + pi) / (4.0 + 2.0 * pi);
    const auto m = mean_free_time(st, 1.0, 256, 500.0, 1);
    CHECK(std::abs(m.value - expected) < 3.0 * m.std_error);

    const auto big = BilliardDomain::stadium(2, 2);
    const auto m2 = mean_free_time(big, 1.0, 256, 1000.0, 2);
    CHECK(std::abs(m2.value - 2.0 * m.value) < 3.0 * std::hypot(m2.std_error, 2.0 * m.std_error));

    const auto m3 = mean_free_time(st, 2.0, 256, 250.0, 3);
    CHECK(std::abs(m3.value - 0.5 * m.value) < 3.0 * std::hypot(m3.std_error, 0.5 * m.std_error));
}
