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

#pragma once

#include "rng.hpp"
#include "vec2.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace bdec {

/// Axis-aligned box [0, lx] x [0, ly].
struct Rectangle {
    double lx;
    double ly;
};

/// Disk of radius `radius` centered at the origin.
struct Disk {
    double radius;
};

/// Bunimovich stadium centered at the origin: straight walls y = +-radius for
/// |x| <= half_length, semicircular caps centered at (+-half_length, 0).
struct Stadium {
    double half_length;
    double radius;
};

/// Square [-side/2, side/2]^2 with a disk of radius `radius` removed from the
/// center. Requires 2 radius < side.
struct Sinai {
    double side;
    double radius;
};

using DomainShape = std::variant<Rectangle, Disk, Stadium, Sinai>;

struct Ray {
    Vec2 origin;
    Vec2 direction; // unit
    double speed;
};

struct CollisionEvent {
    double time;
    Vec2 point;
    Vec2 normal; // inward unit normal at `point`
};

/// A billiard table. Immutable once built; safe to share across threads.
class BilliardDomain {
public:
    /// Throws GeometryError for non-positive lengths or an oversized Sinai
    /// scatterer.
    explicit BilliardDomain(DomainShape shape);

    static BilliardDomain rectangle(double lx, double ly) { return BilliardDomain(Rectangle{lx, ly}); }
    static BilliardDomain disk(double radius) { return BilliardDomain(Disk{radius}); }
    static BilliardDomain stadium(double half_length, double radius)
    {
        return BilliardDomain(Stadium{half_length, radius});
    }
    static BilliardDomain sinai(double side, double radius) { return BilliardDomain(Sinai{side, radius}); }

    const DomainShape &shape() const { return shape_; }
    std::string_view name() const;

    double area() const;
    double perimeter() const;
    /// Largest distance between two points of the table.
    double diameter() const;
    Vec2 centroid() const;
    Vec2 box_min() const { return box_min_; }
    Vec2 box_max() const { return box_max_; }

    /// True if `p` is inside the closed table grown by `tol`.
    bool contains(Vec2 p, double tol = 0.0) const;

    /// Mean free path pi A / P, valid for ergodic tables.
    double mean_free_path() const { return 3.14159265358979323846 * area() / perimeter(); }

    /// First wall hit along `ray`. Hits closer than 1e-12 diameter are
    /// ignored so that a ray leaving a wall does not re-hit it.
    /// Throws GeometryError if the origin is outside the table and
    /// TangencyError for grazing or corner hits.
    CollisionEvent next_collision(const Ray &ray) const;

private:
    struct Segment {
        Vec2 a;
        Vec2 b;
        Vec2 normal;
    };
    struct Arc {
        Vec2 center;
        double radius;
        bool obstacle;  // true: table lies outside the circle
        int side;       // 0: full circle, +1: only x >= center.x, -1: only x <= center.x
    };

    DomainShape shape_;
    std::vector<Segment> segments_;
    std::vector<Arc> arcs_;
    std::vector<Vec2> corners_;
    Vec2 box_min_;
    Vec2 box_max_;
};

/// Specular reflection v - 2 (v.n) n. Throws ReflectError unless v.n < 0.
Vec2 reflect(Vec2 velocity, Vec2 normal);

/// Uniform point in the interior, by rejection from the bounding box.
Vec2 sample_uniform_point(const BilliardDomain &domain, Engine &rng);

} // namespace bdec
