#include "fbt/config3.hpp"

#include "fbt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace fbt {

namespace {

constexpr double kCloseTol = 1e-12;

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= kCloseTol * std::max(1.0, std::abs(a)); }

double min_gap(const std::array<cplx, 3>& p) {
    return std::min({std::abs(p[0] - p[1]), std::abs(p[0] - p[2]), std::abs(p[1] - p[2])});
}

void check_times(const std::vector<double>& t, std::size_t n) {
    if (t.size() != n) throw ValidationError("loop has mismatched time and sample counts");
    if (n < 2) throw ValidationError("loop needs at least two samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(t[i] > t[i - 1])) throw ValidationError("loop times must increase strictly (row " + std::to_string(i) + ")");
}

const std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// strands[n][i] is the position of strand i at sample n
std::vector<std::array<cplx, 3>> track(const ConfigLoop& loop) {
    std::vector<std::array<cplx, 3>> strands;
    strands.reserve(loop.samples.size());
    strands.push_back(loop.samples.front());
    for (std::size_t n = 0; n < loop.samples.size(); ++n) {
        if (min_gap(loop.samples[n]) == 0.0)
            throw ValidationError("two points coincide at sample " + std::to_string(n));
    }
    for (std::size_t n = 1; n < loop.samples.size(); ++n) {
        const auto& prev = strands.back();
        const auto& cur = loop.samples[n];
        double best = INFINITY;
        std::array<cplx, 3> next{};
        for (const auto& p : kPerms) {
            double worst = 0.0;
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(cur[p[i]] - prev[i]));
            if (worst < best) {
                best = worst;
                for (int i = 0; i < 3; ++i) next[i] = cur[p[i]];
            }
        }
        if (!(best < 0.5 * min_gap(prev)))
            throw ValidationError("tracking condition violated at sample " + std::to_string(n));
        strands.push_back(next);
    }
    return strands;
}

struct Crossing {
    double time;
    int a, b;  // strands
    double ya, yb;
};

// One projection attempt; returns false when the projection is not generic.
bool read_crossings(const std::vector<std::array<cplx, 3>>& strands, double angle, double shift,
                    std::vector<BraidLetter>& letters) {
    const cplx rot = std::polar(1.0, -angle);
    const std::array<cplx, 3> offset{cplx(0.0, 0.0), shift * cplx(0.618, 0.309), shift * cplx(-0.414, 0.707)};
    std::vector<std::array<cplx, 3>> p(strands.size());
    double scale = 0.0;
    for (std::size_t n = 0; n < strands.size(); ++n)
        for (int i = 0; i < 3; ++i) {
            p[n][i] = (strands[n][i] + offset[i]) * rot;
            scale = std::max(scale, std::abs(p[n][i]));
        }
    const double eps = 1e-13 * std::max(1.0, scale);

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int x, int y) { return p[0][x].real() < p[0][y].real(); });
    for (int i = 0; i < 2; ++i)
        if (p[0][order[i + 1]].real() - p[0][order[i]].real() <= eps) return false;

    letters.clear();
    for (std::size_t n = 0; n + 1 < p.size(); ++n) {
        std::vector<Crossing> cs;
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                double d0 = p[n][a].real() - p[n][b].real();
                double d1 = p[n + 1][a].real() - p[n + 1][b].real();
                if (std::abs(d1) <= eps) return false;
                if ((d0 < 0) == (d1 < 0)) continue;
                double s = d0 / (d0 - d1);
                cplx za = p[n][a] + s * (p[n + 1][a] - p[n][a]);
                cplx zb = p[n][b] + s * (p[n + 1][b] - p[n][b]);
                if (std::abs(za.imag() - zb.imag()) <= eps) return false;
                cs.push_back({s, a, b, za.imag(), zb.imag()});
            }
        }
        std::sort(cs.begin(), cs.end(), [](const Crossing& x, const Crossing& y) { return x.time < y.time; });
        for (std::size_t i = 1; i < cs.size(); ++i)
            if (cs[i].time - cs[i - 1].time <= 1e-12) return false;
        for (const auto& c : cs) {
            int pa = static_cast<int>(std::find(order.begin(), order.end(), c.a) - order.begin());
            int pb = static_cast<int>(std::find(order.begin(), order.end(), c.b) - order.begin());
            if (std::abs(pa - pb) != 1) return false;
            int left = std::min(pa, pb);
            int mover = order[left];  // travels left to right
            double y_mover = mover == c.a ? c.ya : c.yb;
            double y_other = mover == c.a ? c.yb : c.ya;
            letters.push_back({left == 0 ? BraidGen::S1 : BraidGen::S2, y_mover < y_other ? 1 : -1});
            std::swap(order[left], order[left + 1]);
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------- triples

Triple::Triple(cplx a, cplx b, cplx c) : pts_{a, b, c} {
    for (const auto& z : pts_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("triple has a non-finite point");
    if (a == b || a == c || b == c) throw ValidationError("degenerate triple: points must be distinct");
    std::sort(pts_.begin(), pts_.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
}

bool in_H(const Triple& t, double tol) {
    if (!(tol >= 0.0)) throw ValidationError("tolerance must be nonnegative");
    const auto& p = t.points();
    return std::abs(((p[1] - p[0]) / (p[2] - p[0])).imag()) <= tol;
}

cplx AffineMap::operator()(cplx z) const {
    if (z == from_minus) return -1.0;
    if (z == from_plus) return 1.0;
    if (from_minus == -1.0 && from_plus == 1.0) return z;
    return -1.0 + 2.0 * (z - from_minus) / (from_plus - from_minus);
}

double AffineMap::dilation() const { return 2.0 / std::abs(from_plus - from_minus); }

Normalized affine_normalize(const Triple& t, cplx anchor_minus, cplx anchor_plus) {
    if (anchor_minus == anchor_plus) throw ValidationError("anchors coincide");
    const auto& p = t.points();
    int im = -1, ip = -1;
    for (int i = 0; i < 3; ++i) {
        if (p[i] == anchor_minus) im = i;
        if (p[i] == anchor_plus) ip = i;
    }
    if (im < 0 || ip < 0) throw ValidationError("anchors must be points of the triple");
    AffineMap map{anchor_minus, anchor_plus};
    return Normalized{{-1.0, map(p[3 - im - ip]), 1.0}, map};
}

// ---------------------------------------------------------------- decoders

BraidWord decode_braid(const ConfigLoop& loop) {
    check_times(loop.t, loop.samples.size());
    auto strands = track(loop);
    for (int i = 0; i < 3; ++i) {
        bool matched = false;
        for (int j = 0; j < 3; ++j) matched = matched || same_point(strands.back()[i], loop.samples.front()[j]);
        if (!matched) throw ValidationError("configuration loop is not closed");
    }
    double gap = INFINITY;
    for (const auto& s : strands) gap = std::min(gap, min_gap(s));
    const double shift = 1e-4 * gap;

    std::vector<BraidLetter> letters;
    for (int attempt = 0; attempt < 8; ++attempt) {
        double angle = 0.1234 + 0.7853 * attempt;
        if (read_crossings(strands, angle, shift, letters)) return BraidWord(letters);
    }
    throw ValidationError("no generic projection after 8 retries");
}

FreeWord decode_word(const PlaneLoop& loop, double clearance) {
    check_times(loop.t, loop.samples.size());
    if (!same_point(loop.samples.front(), loop.samples.back())) throw ValidationError("plane loop is not closed");
    for (std::size_t n = 0; n < loop.samples.size(); ++n) {
        cplx z = loop.samples[n];
        if (std::abs(z - 1.0) < clearance || std::abs(z + 1.0) < clearance)
            throw ValidationError("sample " + std::to_string(n) + " is within clearance of a puncture");
    }
    std::vector<Letter> letters;
    for (std::size_t n = 0; n + 1 < loop.samples.size(); ++n) {
        cplx z0 = loop.samples[n], z1 = loop.samples[n + 1];
        bool up0 = z0.imag() >= 0.0, up1 = z1.imag() >= 0.0;
        if (up0 == up1) continue;
        double x = z0.real() + (z1.real() - z0.real()) * (-z0.imag()) / (z1.imag() - z0.imag());
        if (std::abs(x - 1.0) < clearance || std::abs(x + 1.0) < clearance)
            throw ValidationError("segment " + std::to_string(n) + " passes within clearance of a puncture");
        bool down = up0 && !up1;
        if (x < -1.0) letters.push_back(down ? 1 : -1);
        else if (x > 1.0) letters.push_back(down ? -2 : 2);
    }
    return reduce(letters);
}

ConfigLoop compose(const ConfigLoop& a, const ConfigLoop& b) {
    ConfigLoop out = a;
    const double dt = a.t.back() - b.t.front();
    for (std::size_t i = 1; i < b.samples.size(); ++i) {
        out.t.push_back(b.t[i] + dt);
        out.samples.push_back(b.samples[i]);
    }
    return out;
}

ConfigLoop reversed(const ConfigLoop& a) {
    ConfigLoop out;
    for (std::size_t i = a.samples.size(); i-- > 0;) {
        out.t.push_back(a.t.back() + a.t.front() - a.t[i]);
        out.samples.push_back(a.samples[i]);
    }
    return out;
}

PlaneLoop compose(const PlaneLoop& a, const PlaneLoop& b) {
    if (!same_point(a.samples.back(), b.samples.front())) throw ValidationError("loops do not share a base point");
    PlaneLoop out = a;
    const double dt = a.t.back() - b.t.front();
    for (std::size_t i = 1; i < b.samples.size(); ++i) {
        out.t.push_back(b.t[i] + dt);
        out.samples.push_back(b.samples[i]);
    }
    return out;
}

PlaneLoop reversed(const PlaneLoop& a) {
    PlaneLoop out;
    for (std::size_t i = a.samples.size(); i-- > 0;) {
        out.t.push_back(a.t.back() + a.t.front() - a.t[i]);
        out.samples.push_back(a.samples[i]);
    }
    return out;
}

// ---------------------------------------------------------------- CSV

namespace {

std::vector<std::vector<double>> read_csv(std::istream& in, const std::string& header, std::size_t columns) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty loop file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw ValidationError("expected header '" + header + "'");
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::logic_error&) {
                throw ValidationError("bad number on line " + std::to_string(lineno));
            }
        }
        if (row.size() != columns) throw ValidationError("wrong column count on line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ConfigLoop read_config_loop(std::istream& in) {
    ConfigLoop loop;
    for (const auto& r : read_csv(in, "t,re1,im1,re2,im2,re3,im3", 7)) {
        loop.t.push_back(r[0]);
        loop.samples.push_back({cplx(r[1], r[2]), cplx(r[3], r[4]), cplx(r[5], r[6])});
    }
    return loop;
}

PlaneLoop read_plane_loop(std::istream& in) {
    PlaneLoop loop;
    for (const auto& r : read_csv(in, "t,re,im", 3)) {
        loop.t.push_back(r[0]);
        loop.samples.push_back(cplx(r[1], r[2]));
    }
    return loop;
}

}  // namespace fbt
