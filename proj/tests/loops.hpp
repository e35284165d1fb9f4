#pragma once

// Golden loop suite shared by the config3 tests and the acceptance run.

#include "fbt/config3.hpp"

#include <cmath>
#include <numbers>

namespace loops {

using fbt::cplx;

// Rigid rotation of a triple about `center` by `angle` (ccw positive).
inline fbt::ConfigLoop rotation(std::array<cplx, 3> pts, cplx center, double angle, int samples = 400) {
    fbt::ConfigLoop loop;
    for (int n = 0; n <= samples; ++n) {
        double s = static_cast<double>(n) / samples;
        cplx r = std::polar(1.0, angle * s);
        loop.t.push_back(s);
        loop.samples.push_back({center + (pts[0] - center) * r, center + (pts[1] - center) * r,
                                center + (pts[2] - center) * r});
    }
    return loop;
}

// Half turn of points[i], points[i+1] about their midpoint, third point fixed.
inline fbt::ConfigLoop exchange(std::array<cplx, 3> pts, int i, bool ccw, int samples = 400) {
    fbt::ConfigLoop loop;
    cplx mid = 0.5 * (pts[i] + pts[i + 1]);
    for (int n = 0; n <= samples; ++n) {
        double s = static_cast<double>(n) / samples;
        cplx r = std::polar(1.0, (ccw ? 1.0 : -1.0) * std::numbers::pi * s);
        auto p = pts;
        p[i] = mid + (pts[i] - mid) * r;
        p[i + 1] = mid + (pts[i + 1] - mid) * r;
        loop.t.push_back(s);
        loop.samples.push_back(p);
    }
    return loop;
}

inline fbt::ConfigLoop constant(std::array<cplx, 3> pts) { return {{0.0, 1.0}, {pts, pts}}; }

// Circle of radius r about c starting at angle `start`, ccw for turns > 0.
inline fbt::PlaneLoop circle(cplx c, double r, double start, double turns, int samples = 720) {
    fbt::PlaneLoop loop;
    for (int n = 0; n <= samples; ++n) {
        double s = static_cast<double>(n) / samples;
        loop.t.push_back(s);
        loop.samples.push_back(c + std::polar(r, start + 2 * std::numbers::pi * turns * s));
    }
    loop.samples.back() = loop.samples.front();
    return loop;
}

inline fbt::PlaneLoop refine(const fbt::PlaneLoop& l) {
    fbt::PlaneLoop out;
    for (std::size_t i = 0; i + 1 < l.samples.size(); ++i) {
        out.t.insert(out.t.end(), {l.t[i], 0.5 * (l.t[i] + l.t[i + 1])});
        out.samples.insert(out.samples.end(), {l.samples[i], 0.5 * (l.samples[i] + l.samples[i + 1])});
    }
    out.t.push_back(l.t.back());
    out.samples.push_back(l.samples.back());
    return out;
}

inline fbt::ConfigLoop refine(const fbt::ConfigLoop& l) {
    fbt::ConfigLoop out;
    for (std::size_t i = 0; i + 1 < l.samples.size(); ++i) {
        std::array<cplx, 3> mid;
        for (int k = 0; k < 3; ++k) mid[k] = 0.5 * (l.samples[i][k] + l.samples[i + 1][k]);
        out.t.insert(out.t.end(), {l.t[i], 0.5 * (l.t[i] + l.t[i + 1])});
        out.samples.insert(out.samples.end(), {l.samples[i], mid});
    }
    out.t.push_back(l.t.back());
    out.samples.push_back(l.samples.back());
    return out;
}

inline const std::array<cplx, 3> kLine{cplx(-1, 0), cplx(0, 0), cplx(1, 0)};

}  // namespace loops
