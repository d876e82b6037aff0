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

#include "geometry.hpp"

#include "errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

namespace bdec {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative tolerances, in units of the table diameter.
constexpr double kReentryTol = 1e-12;
constexpr double kInsideTol = 1e-9;
constexpr double kCornerTol = 1e-9;
// Grazing threshold on |v.n| / |v|.
constexpr double kGrazingTol = 1e-9;

bool positive_length(double x) { return std::isfinite(x) && x > 0.0; }

void require_positive(double x, const char *what)
{
    if (!positive_length(x))
        throw GeometryError(std::string(what) + " must be a positive finite length");
}

} // namespace

BilliardDomain::BilliardDomain(DomainShape shape) : shape_(shape)
{
    std::visit(
        [this](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                require_positive(s.lx, "rectangle.lx");
                require_positive(s.ly, "rectangle.ly");
                const Vec2 p0{0, 0}, p1{s.lx, 0}, p2{s.lx, s.ly}, p3{0, s.ly};
                segments_ = {{p0, p1, {0, 1}}, {p1, p2, {-1, 0}}, {p2, p3, {0, -1}}, {p3, p0, {1, 0}}};
                corners_ = {p0, p1, p2, p3};
                box_min_ = p0;
                box_max_ = p2;
            }
            else if constexpr (std::is_same_v<T, Disk>) {
                require_positive(s.radius, "disk.r");
                arcs_ = {{{0, 0}, s.radius, false, 0}};
                box_min_ = {-s.radius, -s.radius};
                box_max_ = {s.radius, s.radius};
            }
            else if constexpr (std::is_same_v<T, Stadium>) {
                require_positive(s.half_length, "stadium.a");
                require_positive(s.radius, "stadium.r");
                const double a = s.half_length, r = s.radius;
                segments_ = {{{-a, r}, {a, r}, {0, -1}}, {{a, -r}, {-a, -r}, {0, 1}}};
                arcs_ = {{{a, 0}, r, false, +1}, {{-a, 0}, r, false, -1}};
                box_min_ = {-a - r, -r};
                box_max_ = {a + r, r};
            }
            else {
                require_positive(s.side, "sinai.l");
                require_positive(s.radius, "sinai.r");
                if (!(2.0 * s.radius < s.side))
                    throw GeometryError("sinai.r must satisfy 2 r < l");
                const double h = 0.5 * s.side;
                const Vec2 p0{-h, -h}, p1{h, -h}, p2{h, h}, p3{-h, h};
                segments_ = {{p0, p1, {0, 1}}, {p1, p2, {-1, 0}}, {p2, p3, {0, -1}}, {p3, p0, {1, 0}}};
                arcs_ = {{{0, 0}, s.radius, true, 0}};
                corners_ = {p0, p1, p2, p3};
                box_min_ = p0;
                box_max_ = p2;
            }
        },
        shape_);
}

std::string_view BilliardDomain::name() const
{
    constexpr std::string_view names[] = {"rectangle", "disk", "stadium", "sinai"};
    return names[shape_.index()];
}

double BilliardDomain::area() const
{
    return std::visit(
        [](const auto &s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>)
                return s.lx * s.ly;
            else if constexpr (std::is_same_v<T, Disk>)
                return kPi * s.radius * s.radius;
            else if constexpr (std::is_same_v<T, Stadium>)
                return 4.0 * s.half_length * s.radius + kPi * s.radius * s.radius;
            else
                return s.side * s.side - kPi * s.radius * s.radius;
        },
        shape_);
}

double BilliardDomain::perimeter() const
{
    return std::visit(
        [](const auto &s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>)
                return 2.0 * (s.lx + s.ly);
            else if constexpr (std::is_same_v<T, Disk>)
                return 2.0 * kPi * s.radius;
            else if constexpr (std::is_same_v<T, Stadium>)
                return 4.0 * s.half_length + 2.0 * kPi * s.radius;
            else
                return 4.0 * s.side + 2.0 * kPi * s.radius;
        },
        shape_);
}

double BilliardDomain::diameter() const
{
    return std::visit(
        [](const auto &s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>)
                return std::hypot(s.lx, s.ly);
            else if constexpr (std::is_same_v<T, Disk>)
                return 2.0 * s.radius;
            else if constexpr (std::is_same_v<T, Stadium>)
                return 2.0 * (s.half_length + s.radius);
            else
                return std::sqrt(2.0) * s.side;
        },
        shape_);
}

Vec2 BilliardDomain::centroid() const
{
    if (const auto *r = std::get_if<Rectangle>(&shape_))
        return {0.5 * r->lx, 0.5 * r->ly};
    return {0.0, 0.0};
}

bool BilliardDomain::contains(Vec2 p, double tol) const
{
    return std::visit(
        [p, tol](const auto &s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return p.x >= -tol && p.x <= s.lx + tol && p.y >= -tol && p.y <= s.ly + tol;
            }
            else if constexpr (std::is_same_v<T, Disk>) {
                return norm(p) <= s.radius + tol;
            }
            else if constexpr (std::is_same_v<T, Stadium>) {
                if (std::abs(p.y) > s.radius + tol)
                    return false;
                const double dx = std::abs(p.x) - s.half_length;
                return dx <= 0.0 || std::hypot(dx, p.y) <= s.radius + tol;
            }
            else {
                const double h = 0.5 * s.side + tol;
                return std::abs(p.x) <= h && std::abs(p.y) <= h && norm(p) >= s.radius - tol;
            }
        },
        shape_);
}

CollisionEvent BilliardDomain::next_collision(const Ray &ray) const
{
    const double diam = diameter();
    if (!(ray.speed > 0.0) || !std::isfinite(ray.speed))
        throw GeometryError("ray speed must be positive");
    if (std::abs(norm(ray.direction) - 1.0) > 1e-12)
        throw GeometryError("ray direction must be a unit vector");
    if (!contains(ray.origin, kInsideTol * diam))
        throw GeometryError("ray origin lies outside the " + std::string(name()));

    const Vec2 o = ray.origin;
    const Vec2 d = ray.direction;
    const double eps = kReentryTol * diam;

    double best = std::numeric_limits<double>::infinity();
    Vec2 best_normal{};

    for (const auto &w : segments_) {
        const double denom = dot(w.normal, d);
        if (denom >= 0.0)
            continue;
        const double s = dot(w.normal, w.a - o) / denom;
        if (!(s > eps) || s >= best)
            continue;
        const Vec2 h = o + s * d;
        const Vec2 ab = w.b - w.a;
        const double u = dot(h - w.a, ab) / norm2(ab);
        if (u < -kReentryTol || u > 1.0 + kReentryTol)
            continue;
        best = s;
        best_normal = w.normal;
    }

    for (const auto &c : arcs_) {
        const Vec2 rel = o - c.center;
        const double k = dot(d, rel);
        const double c0 = norm2(rel) - c.radius * c.radius;
        const double disc = k * k - c0;
        if (disc < 0.0)
            continue;
        const double root = std::sqrt(disc);
        double s;
        if (c.obstacle) {
            // Table is outside the circle: only the entry root counts.
            if (k >= 0.0)
                continue;
            s = c0 / (root - k);
        }
        else {
            // Table is inside the circle (the table is convex): exit root.
            if (k < 0.0)
                s = root - k;
            else if (c0 < 0.0)
                s = -c0 / (k + root);
            else
                continue;
        }
        if (!(s > eps) || s >= best)
            continue;
        const Vec2 h = o + s * d;
        if (c.side > 0 && h.x < c.center.x - kReentryTol * diam)
            continue;
        if (c.side < 0 && h.x > c.center.x + kReentryTol * diam)
            continue;
        best = s;
        best_normal = c.obstacle ? normalized(h - c.center) : normalized(c.center - h);
    }

    if (!std::isfinite(best))
        throw GeometryError("ray from inside the " + std::string(name()) + " found no wall");

    const Vec2 hit = o + best * d;
    if (std::abs(dot(d, best_normal)) < kGrazingTol)
        throw TangencyError("grazing collision");
    for (const auto &corner : corners_)
        if (norm(hit - corner) < kCornerTol * diam)
            throw TangencyError("corner collision");

    return {best / ray.speed, hit, best_normal};
}

Vec2 reflect(Vec2 velocity, Vec2 normal)
{
    const double vn = dot(velocity, normal);
    if (!(vn < 0.0))
        throw ReflectError("velocity is not incoming with respect to the wall normal");
    return velocity - 2.0 * vn * normal;
}

Vec2 sample_uniform_point(const BilliardDomain &domain, Engine &rng)
{
    const Vec2 lo = domain.box_min();
    const Vec2 hi = domain.box_max();
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    for (;;) {
        const Vec2 p{ux(rng), uy(rng)};
        if (domain.contains(p))
            return p;
    }
}

} // namespace bdec
