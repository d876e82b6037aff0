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

#include "errors.hpp"
#include "geometry.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bdec;

namespace {

constexpr double pi = std::numbers::pi;

Vec2 random_direction(Engine &rng)
{
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    const double a = u(rng);
    return {std::cos(a), std::sin(a)};
}

// Signed distance-like residual of the stadium boundary a=r=1.
double stadium_residual(Vec2 p)
{
    if (std::abs(p.x) <= 1.0)
        return std::abs(p.y) - 1.0;
    const double cx = p.x > 0 ? 1.0 : -1.0;
    return std::hypot(p.x - cx, p.y) - 1.0;
}

} // namespace

TEST_CASE("next_collision: unit square axis ray")
{
    const auto sq = BilliardDomain::rectangle(1, 1);
    const auto ev = sq.next_collision({{0.5, 0.5}, {1, 0}, 1});
    CHECK(ev.time == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ev.point.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ev.point.y == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ev.normal.x == -1.0);
    CHECK(ev.normal.y == 0.0);
}

TEST_CASE("next_collision: unit disk radial ray")
{
    const auto d = BilliardDomain::disk(1);
    const auto ev = d.next_collision({{0, 0}, {0, 1}, 2});
    CHECK(ev.time == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ev.point.x == doctest::Approx(0.0));
    CHECK(ev.point.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ev.normal.x == doctest::Approx(0.0));
    CHECK(ev.normal.y == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("next_collision: stadium point against a bisection root of the boundary")
{
    const auto st = BilliardDomain::stadium(1, 1);
    const Vec2 dir{std::cos(0.3), std::sin(0.3)};
    const auto ev = st.next_collision({{0, 0}, dir, 1});
    CHECK(std::abs(stadium_residual(ev.point)) < 1e-10);

    // Independent oracle: bisection on the implicit boundary along the ray.
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (stadium_residual(dir * mid) < 0.0 ? lo : hi) = mid;
    }
    CHECK(ev.time == doctest::Approx(lo).epsilon(1e-12));
    CHECK(norm(ev.point - dir * ev.time) < 1e-14);
}

TEST_CASE("next_collision: errors")
{
    const auto sq = BilliardDomain::rectangle(1, 1);
    CHECK_THROWS_AS(sq.next_collision({{1.5, 0.5}, {1, 0}, 1}), GeometryError);
    const double s = std::sqrt(0.5);
    CHECK_THROWS_AS(sq.next_collision({{0.5, 0.5}, {s, s}, 1}), TangencyError);
    const auto sinai = BilliardDomain::sinai(2, 0.5);
    CHECK_THROWS_AS(sinai.next_collision({{-0.9, 0.5}, {1, 0}, 1}), TangencyError);
    const auto disk = BilliardDomain::disk(1);
    CHECK_THROWS_AS(disk.next_collision({{0.0, 0.0}, {1, 0}, 0.0}), GeometryError);
}

TEST_CASE("next_collision is minimal and lands on the boundary")
{
    Engine rng = stream_engine(11, 0, 0);
    for (const auto &dom : {BilliardDomain::rectangle(1.3, 0.7), BilliardDomain::disk(1.0),
                            BilliardDomain::stadium(1.0, 1.0), BilliardDomain::sinai(2.0, 0.4)}) {
        const double tol = 1e-9 * dom.diameter();
        int checked = 0;
        while (checked < 2500) {
            const Vec2 q = sample_uniform_point(dom, rng);
            const Vec2 v = random_direction(rng);
            CollisionEvent ev{};
            try {
                ev = dom.next_collision({q, v, 1.0});
            }
            catch (const TangencyError &) {
                continue;
            }
            ++checked;
            REQUIRE(ev.time > 0.0);
            CHECK(norm(ev.point - (q + v * ev.time)) < 1e-12 * dom.diameter());
            CHECK(dom.contains(ev.point, tol));
            CHECK_FALSE(dom.contains(ev.point + v * (1e-6 * dom.diameter()), 0.0));
            CHECK(std::abs(norm(ev.normal) - 1.0) < 1e-12);
            CHECK(dot(v, ev.normal) < 0.0);
            // No earlier crossing: sample the open interval densely.
            for (int k = 1; k < 64; ++k) {
                const double s = ev.time * k / 64.0;
                if (!dom.contains(q + v * s, tol)) {
                    FAIL("earlier boundary crossing at s=" << s);
                }
            }
        }
    }
}

TEST_CASE("reflect: examples")
{
    const Vec2 a = reflect({1, -1}, {0, 1});
    CHECK(a.x == 1.0);
    CHECK(a.y == 1.0);
    const Vec2 b = reflect({0, -3}, {0, 1});
    CHECK(b.x == 0.0);
    CHECK(b.y == 3.0);

    const double s = 1.0 / std::sqrt(2.0);
    const Vec2 v{2, -1}, n{s, s};
    // v.n = s > 0 is outgoing for this normal; use -n as the inward one.
    CHECK_THROWS_AS(reflect(v, n), ReflectError);
    const Vec2 w{-2, -1};
    const Vec2 r = reflect(w, n);
    CHECK(norm(r) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(cross(r - w, n)) < 1e-12);
    // Rotation oracle: mirror about the tangent line = rotate by twice its angle.
    const double th = std::atan2(n.y, n.x) + pi / 2.0;
    const Vec2 rot{std::cos(2 * th) * w.x + std::sin(2 * th) * w.y, std::sin(2 * th) * w.x - std::cos(2 * th) * w.y};
    CHECK(norm(rot - r) < 1e-12);
}

TEST_CASE("reflect: grazing and outgoing rejected")
{
    CHECK_THROWS_AS(reflect({1, 0}, {0, 1}), ReflectError);
    CHECK_THROWS_AS(reflect({1, 1}, {0, 1}), ReflectError);
}

TEST_CASE("reflect preserves speed and is undone by reflecting back")
{
    Engine rng = stream_engine(5, 0, 0);
    std::normal_distribution<double> g;
    double worst = 0.0, worst_back = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const Vec2 n = random_direction(rng);
        Vec2 v{g(rng), g(rng)};
        if (dot(v, n) >= 0.0)
            v = v - n * (2.0 * dot(v, n));
        if (!(dot(v, n) < 0.0))
            continue;
        const Vec2 r = reflect(v, n);
        worst = std::max(worst, std::abs(norm(r) - norm(v)) / norm(v));
        const Vec2 back = reflect(r, n * -1.0);
        worst_back = std::max(worst_back, norm(back - v) / norm(v));
    }
    CHECK(worst < 1e-12);
    CHECK(worst_back < 1e-12);
}

TEST_CASE("area: analytic values")
{
    CHECK(BilliardDomain::rectangle(1, 1).area() == 1.0);
    CHECK(BilliardDomain::disk(1).area() == doctest::Approx(pi).epsilon(1e-15));
    CHECK(BilliardDomain::stadium(1, 1).area() == doctest::Approx(4.0 + pi).epsilon(1e-15));
    CHECK(BilliardDomain::sinai(2, 0.5).area() == doctest::Approx(4.0 - pi * 0.25).epsilon(1e-15));
    CHECK(BilliardDomain::stadium(1, 1).perimeter() == doctest::Approx(4.0 + 2.0 * pi).epsilon(1e-15));
}

TEST_CASE("area matches a hit-rate Monte Carlo")
{
    Engine rng = stream_engine(21, 0, 0);
    for (const auto &dom : {BilliardDomain::rectangle(1.3, 0.7), BilliardDomain::disk(1.0),
                            BilliardDomain::stadium(1.0, 1.0), BilliardDomain::sinai(2.0, 0.5)}) {
        const Vec2 lo = dom.box_min(), hi = dom.box_max();
        std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
        const int n = 1000000;
        int hits = 0;
        for (int i = 0; i < n; ++i)
            hits += dom.contains({ux(rng), uy(rng)}) ? 1 : 0;
        const double box = (hi.x - lo.x) * (hi.y - lo.y);
        const double f = static_cast<double>(hits) / n;
        const double est = f * box;
        const double se = box * std::sqrt(f * (1 - f) / n);
        CHECK(std::abs(est - dom.area()) <= 3.0 * se);
    }
}

TEST_CASE("invalid domains are rejected")
{
    CHECK_THROWS_AS(BilliardDomain::rectangle(0, 1), GeometryError);
    CHECK_THROWS_AS(BilliardDomain::disk(-1), GeometryError);
    CHECK_THROWS_AS(BilliardDomain::stadium(1, 0), GeometryError);
    CHECK_THROWS_AS(BilliardDomain::sinai(1, 0.5), GeometryError);
    CHECK_THROWS_AS(BilliardDomain::rectangle(std::nan(""), 1), GeometryError);
}

TEST_CASE("sample_uniform_point: moments")
{
    Engine rng = stream_engine(3, 0, 0);
    const int n = 1000000;
    {
        const auto sq = BilliardDomain::rectangle(1, 1);
        double sx = 0, sy = 0;
        for (int i = 0; i < n; ++i) {
            const Vec2 p = sample_uniform_point(sq, rng);
            sx += p.x;
            sy += p.y;
        }
        const double tol = 3.0 * (1.0 / std::sqrt(12.0)) / 1e3;
        CHECK(std::abs(sx / n - 0.5) < tol);
        CHECK(std::abs(sy / n - 0.5) < tol);
    }
    {
        const auto d = BilliardDomain::disk(1);
        double s = 0;
        for (int i = 0; i < n; ++i)
            s += norm2(sample_uniform_point(d, rng));
        CHECK(std::abs(s / n - 0.5) < 0.002);
    }
    {
        const auto si = BilliardDomain::sinai(2, 0.5);
        bool all_outside = true;
        for (int i = 0; i < 100000; ++i) {
            const Vec2 p = sample_uniform_point(si, rng);
            all_outside = all_outside && norm(p) > 0.5 && std::abs(p.x) <= 1 && std::abs(p.y) <= 1;
        }
        CHECK(all_outside);
    }
}

TEST_CASE("geometric queries")
{
    const auto st = BilliardDomain::stadium(1, 1);
    CHECK(st.diameter() == doctest::Approx(4.0));
    CHECK(st.centroid().x == 0.0);
    CHECK(st.contains({1.5, 0.5}));
    CHECK_FALSE(st.contains({1.9, 0.9}));
    const auto r = BilliardDomain::rectangle(2, 1);
    CHECK(r.centroid().x == 1.0);
    CHECK(r.centroid().y == 0.5);
    CHECK(r.diameter() == doctest::Approx(std::sqrt(5.0)));
    CHECK(r.name() == "rectangle");
}
