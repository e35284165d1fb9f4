#pragma once

#include "fbt/braid.hpp"
#include "fbt/word.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <istream>
#include <vector>

namespace fbt {

using cplx = std::complex<double>;

/// Unordered triple of distinct points, stored sorted by (Re, Im).
class Triple {
public:
    Triple(cplx a, cplx b, cplx c);
    const std::array<cplx, 3>& points() const noexcept { return pts_; }

private:
    std::array<cplx, 3> pts_;
};

inline constexpr double kDefaultCollinearTol = 1e-9;
inline constexpr double kDefaultClearance = 1e-9;

/// |Im((z2 - z1)/(z3 - z1))| <= tol.
bool in_H(const Triple& t, double tol = kDefaultCollinearTol);

/// zeta -> -1 + 2 (zeta - from_minus)/(from_plus - from_minus); the anchors
/// land on -1 and 1 exactly.
struct AffineMap {
    cplx from_minus;
    cplx from_plus;

    cplx operator()(cplx z) const;
    /// |a| for zeta -> a zeta + b.
    double dilation() const;
};

struct Normalized {
    std::array<cplx, 3> image;  // (-1, third point, 1)
    AffineMap map;
};

/// Normalizes so that the anchors (two points of t) go to -1 and 1.
Normalized affine_normalize(const Triple& t, cplx anchor_minus, cplx anchor_plus);

/// Three labelled strands sampled at increasing times. Rows may list the
/// points in any order; strands are tracked by nearest matching.
struct ConfigLoop {
    std::vector<double> t;
    std::vector<std::array<cplx, 3>> samples;
};

struct PlaneLoop {
    std::vector<double> t;
    std::vector<cplx> samples;
};

/// Braid of a closed loop of unordered triples, read from signed crossings
/// of the x-projection after a generic rotation. Throws ValidationError on a
/// tracking violation (with the sample index) or when no generic projection
/// is found in 8 tries.
BraidWord decode_braid(const ConfigLoop& loop);

/// Word in a1 (around -1) and a2 (around 1), read from crossings of the rays
/// (-inf, -1) and (1, inf).
FreeWord decode_word(const PlaneLoop& loop, double clearance = kDefaultClearance);

/// Traverses a then b; b must start where a ends.
ConfigLoop compose(const ConfigLoop& a, const ConfigLoop& b);
ConfigLoop reversed(const ConfigLoop& a);
PlaneLoop compose(const PlaneLoop& a, const PlaneLoop& b);
PlaneLoop reversed(const PlaneLoop& a);

/// CSV readers for `t,re1,im1,re2,im2,re3,im3` and `t,re,im`.
ConfigLoop read_config_loop(std::istream& in);
PlaneLoop read_plane_loop(std::istream& in);

}  // namespace fbt
