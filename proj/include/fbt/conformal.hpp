#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fbt {

/// Analytic annulus-like domain with a closed-form extremal length.
struct AnnulusSpec {
    enum class Kind { Round, Rectangle, FlatCylinder };
    Kind kind;
    double p = 0.0;  // r | a (vertical side) | circumference
    double q = 0.0;  // R | b (horizontal side) | height

    static AnnulusSpec round(double r, double R);
    static AnnulusSpec rectangle(double a, double b);
    static AnnulusSpec flat_cylinder(double circumference, double height);
    void validate() const;
};

const char* to_string(AnnulusSpec::Kind kind);

/// Round: 2 pi / log(R/r). Rectangle: a/b. Flat cylinder: circumference /
/// height. All are the extremal length of the family of curves separating
/// the two boundary pieces (core curves).
double lambda_closed_form(const AnnulusSpec& spec);

/// Torus C/(Z + i alpha Z) with a closed (1 - sigma) x (alpha - sigma)
/// rectangle removed.
struct TorusWithHole {
    double alpha;
    double sigma;
    void validate() const;
};

/// Upper bounds for the extremal length attached to the two generators,
/// from the embedded flat cylinders |Re z| < sigma/2 and |Im z| < sigma/2.
struct GeneratorBounds {
    double vertical;    // alpha / sigma
    double horizontal;  // 1 / sigma
};

GeneratorBounds generator_upper_bounds(const TorusWithHole& x);

/// 4 (2 alpha + 1) / sigma.
double prop1a_lambda3_upper(const TorusWithHole& x);

/// Which curve family a grid solve measures. Separating curves have
/// extremal length equal to the effective conductance between the marked
/// boundary pieces; joining curves have its reciprocal.
enum class CurveFamily { Separating, Joining };

/// Resistor network on cell centers: free nodes, internal edges and edges
/// to fixed potentials 0 or 1.
struct GridDomain {
    struct Edge {
        std::size_t i, j;
        double conductance;
    };
    struct Terminal {
        std::size_t i;
        double conductance;
        double potential;
    };

    std::size_t nodes = 0;
    std::vector<Edge> edges;
    std::vector<Terminal> terminals;
    double h = 0.0;
    double symmetry_factor = 1.0;  // copies of the modelled piece
    CurveFamily family = CurveFamily::Separating;

    /// Quarter of {r < |z| < R}; boundary edges are cut at the circles.
    static GridDomain round_annulus(double r, double R, double h);
    /// [0,b] x [0,a] with the vertical sides marked.
    static GridDomain rectangle(double a, double b, double h, CurveFamily family = CurveFamily::Separating);
    /// Periodic in x with the given circumference, top and bottom marked.
    static GridDomain flat_cylinder(double circumference, double height, double h);

    /// Throws ValidationError unless both potentials are attached and every
    /// node reaches a terminal.
    void validate() const;
};

struct GridReport {
    double lambda;
    double h;
    int iterations;
    double residual;
    double conductance;
};

inline constexpr double kGridTolerance = 1e-10;

/// Solves the discrete Dirichlet problem by Jacobi-preconditioned conjugate
/// gradients. Throws ConvergenceError when the iteration cap is hit.
GridReport grid_extremal_length(const GridDomain& d, double tol = kGridTolerance, int max_iterations = 0);

}  // namespace fbt
