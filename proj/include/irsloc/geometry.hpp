// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_GEOMETRY_HPP
#define IRSLOC_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irsloc {

// Planar position in meters. All node geometry is 2-D: the transmitter sits
// at the origin and user terminals / candidate surface sites are given in the
// same horizontal plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Axis-aligned rectangle, used both for the feasible deployment region and
// for suspicious eavesdropper areas. Degenerate (zero-width) boxes are legal
// and describe segments or single points.
struct Rect {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    void validate() const {
        if (!(x_min <= x_max) || !(y_min <= y_max))
            throw std::invalid_argument("Rect: requires x_min <= x_max and y_min <= y_max");
    }

    bool contains(Vec2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    // Euclidean projection onto the box; per-coordinate clamp.
    Vec2 clamp(Vec2 p) const {
        return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
    }

    Vec2 centroid() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    bool is_point() const { return x_min == x_max && y_min == y_max; }
};

} // namespace irsloc

#endif // IRSLOC_GEOMETRY_HPP
