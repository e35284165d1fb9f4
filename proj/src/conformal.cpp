#include "fbt/conformal.hpp"

#include "fbt/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fbt {

namespace {
void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(what) + " must be a positive finite number");
}
}  // namespace

// ---------------------------------------------------------------- closed forms

AnnulusSpec AnnulusSpec::round(double r, double R) {
    AnnulusSpec s{Kind::Round, r, R};
    s.validate();
    return s;
}

AnnulusSpec AnnulusSpec::rectangle(double a, double b) {
    AnnulusSpec s{Kind::Rectangle, a, b};
    s.validate();
    return s;
}

AnnulusSpec AnnulusSpec::flat_cylinder(double circumference, double height) {
    AnnulusSpec s{Kind::FlatCylinder, circumference, height};
    s.validate();
    return s;
}

void AnnulusSpec::validate() const {
    require_positive(p, "first parameter");
    require_positive(q, "second parameter");
    if (kind == Kind::Round && !(p < q)) throw ValidationError("round annulus needs r < R");
}

const char* to_string(AnnulusSpec::Kind kind) {
    switch (kind) {
        case AnnulusSpec::Kind::Round: return "round";
        case AnnulusSpec::Kind::Rectangle: return "rectangle";
        case AnnulusSpec::Kind::FlatCylinder: return "flat-cylinder";
    }
    return "?";
}

double lambda_closed_form(const AnnulusSpec& s) {
    s.validate();
    switch (s.kind) {
        case AnnulusSpec::Kind::Round: return 2.0 * std::numbers::pi / std::log(s.q / s.p);
        case AnnulusSpec::Kind::Rectangle:
        case AnnulusSpec::Kind::FlatCylinder: return s.p / s.q;
    }
    return 0.0;
}

void TorusWithHole::validate() const {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
    if (!(sigma > 0.0 && sigma < 1.0)) throw ValidationError("sigma must lie in (0, 1)");
}

GeneratorBounds generator_upper_bounds(const TorusWithHole& x) {
    x.validate();
    return {x.alpha / x.sigma, 1.0 / x.sigma};
}

double prop1a_lambda3_upper(const TorusWithHole& x) {
    x.validate();
    return 4.0 * (2.0 * x.alpha + 1.0) / x.sigma;
}

// ---------------------------------------------------------------- grids

GridDomain GridDomain::round_annulus(double r, double R, double h) {
    AnnulusSpec::round(r, R);
    require_positive(h, "mesh size");
    GridDomain d;
    d.h = h;
    d.symmetry_factor = 4.0;
    d.family = CurveFamily::Separating;

    const long m = static_cast<long>(std::ceil(R / h)) + 1;
    auto center = [h](long i, long j) { return std::pair<double, double>((i + 0.5) * h, (j + 0.5) * h); };
    auto inside = [&](long i, long j) {
        auto [x, y] = center(i, j);
        double rho = std::hypot(x, y);
        return rho > r && rho < R;
    };
    std::vector<long> index(static_cast<std::size_t>(m * m), -1);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            if (inside(i, j)) index[static_cast<std::size_t>(i * m + j)] = static_cast<long>(d.nodes++);

    // fraction of the edge p -> q before it meets the circle of radius rho
    auto cut = [](double px, double py, double qx, double qy, double rho) {
        double dx = qx - px, dy = qy - py;
        double a = dx * dx + dy * dy, b = 2 * (px * dx + py * dy), c = px * px + py * py - rho * rho;
        double disc = std::sqrt(std::max(0.0, b * b - 4 * a * c));
        double t1 = (-b - disc) / (2 * a), t2 = (-b + disc) / (2 * a);
        double t = (t1 > 0.0 && t1 <= 1.0) ? t1 : t2;
        return std::clamp(t, 1e-2, 1.0);
    };

    const long di[2] = {1, 0}, dj[2] = {0, 1};
    for (long i = 0; i < m; ++i) {
        for (long j = 0; j < m; ++j) {
            long me = index[static_cast<std::size_t>(i * m + j)];
            if (me < 0) continue;
            auto [px, py] = center(i, j);
            for (long s : {-1L, 1L}) {
                for (int dir = 0; dir < 2; ++dir) {
                    long ni = i + s * di[dir], nj = j + s * dj[dir];
                    if (ni < 0 || nj < 0) continue;  // mirror line: no flux
                    long other = (ni < m && nj < m) ? index[static_cast<std::size_t>(ni * m + nj)] : -1;
                    if (other >= 0) {
                        if (other > me) d.edges.push_back({static_cast<std::size_t>(me), static_cast<std::size_t>(other), 1.0});
                        continue;
                    }
                    auto [qx, qy] = center(ni, nj);
                    bool inner = std::hypot(qx, qy) <= r;
                    double t = cut(px, py, qx, qy, inner ? r : R);
                    d.terminals.push_back({static_cast<std::size_t>(me), 1.0 / t, inner ? 1.0 : 0.0});
                }
            }
        }
    }
    d.validate();
    return d;
}

GridDomain GridDomain::rectangle(double a, double b, double h, CurveFamily family) {
    AnnulusSpec::rectangle(a, b);
    require_positive(h, "mesh size");
    const std::size_t nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(b / h)));
    const std::size_t ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(a / h)));
    const double hx = b / static_cast<double>(nx), hy = a / static_cast<double>(ny);
    const double gx = hy / hx, gy = hx / hy;
    GridDomain d;
    d.h = h;
    d.family = family;
    d.nodes = nx * ny;
    auto id = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            if (i + 1 < nx) d.edges.push_back({id(i, j), id(i + 1, j), gx});
            if (j + 1 < ny) d.edges.push_back({id(i, j), id(i, j + 1), gy});
        }
        d.terminals.push_back({id(0, j), 2.0 * gx, 1.0});
        d.terminals.push_back({id(nx - 1, j), 2.0 * gx, 0.0});
    }
    d.validate();
    return d;
}

GridDomain GridDomain::flat_cylinder(double circumference, double height, double h) {
    AnnulusSpec::flat_cylinder(circumference, height);
    require_positive(h, "mesh size");
    const std::size_t nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(circumference / h)));
    const std::size_t ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(height / h)));
    const double hx = circumference / static_cast<double>(nx), hy = height / static_cast<double>(ny);
    const double gx = hy / hx, gy = hx / hy;
    GridDomain d;
    d.h = h;
    d.family = CurveFamily::Separating;
    d.nodes = nx * ny;
    auto id = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            if (nx > 1) d.edges.push_back({id(i, j), id((i + 1) % nx, j), gx});
            if (j + 1 < ny) d.edges.push_back({id(i, j), id(i, j + 1), gy});
        }
    }
    for (std::size_t i = 0; i < nx; ++i) {
        d.terminals.push_back({id(i, 0), 2.0 * gy, 0.0});
        d.terminals.push_back({id(i, ny - 1), 2.0 * gy, 1.0});
    }
    d.validate();
    return d;
}

void GridDomain::validate() const {
    if (nodes == 0) throw ValidationError("grid domain has no nodes");
    bool zero = false, one = false;
    for (const auto& t : terminals) {
        if (t.i >= nodes) throw ValidationError("terminal refers to a missing node");
        zero = zero || t.potential == 0.0;
        one = one || t.potential == 1.0;
    }
    if (!zero || !one) throw ValidationError("grid domain needs both marked boundary pieces");

    std::vector<std::vector<std::size_t>> adj(nodes);
    for (const auto& e : edges) {
        if (e.i >= nodes || e.j >= nodes) throw ValidationError("edge refers to a missing node");
        if (!(e.conductance > 0.0)) throw ValidationError("edge conductances must be positive");
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    std::vector<char> seen(nodes, 0);
    std::vector<std::size_t> stack;
    for (const auto& t : terminals)
        if (!seen[t.i]) {
            seen[t.i] = 1;
            stack.push_back(t.i);
        }
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw ValidationError("grid domain has nodes cut off from the boundary");
}

GridReport grid_extremal_length(const GridDomain& d, double tol, int max_iterations) {
    d.validate();
    const auto n = static_cast<Eigen::Index>(d.nodes);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * d.edges.size() + d.terminals.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (const auto& e : d.edges) {
        auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
        trip.emplace_back(i, i, e.conductance);
        trip.emplace_back(j, j, e.conductance);
        trip.emplace_back(i, j, -e.conductance);
        trip.emplace_back(j, i, -e.conductance);
    }
    for (const auto& t : d.terminals) {
        auto i = static_cast<Eigen::Index>(t.i);
        trip.emplace_back(i, i, t.conductance);
        rhs[i] += t.conductance * t.potential;
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(trip.begin(), trip.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(max_iterations > 0 ? max_iterations : static_cast<int>(2 * n + 100));
    cg.compute(lap);
    Eigen::VectorXd u = cg.solve(rhs);
    if (cg.info() != Eigen::Success || !(cg.error() <= tol))
        throw ConvergenceError("grid solve did not converge", cg.error());

    double energy = 0.0;
    for (const auto& e : d.edges) {
        double du = u[static_cast<Eigen::Index>(e.i)] - u[static_cast<Eigen::Index>(e.j)];
        energy += e.conductance * du * du;
    }
    for (const auto& t : d.terminals) {
        double du = u[static_cast<Eigen::Index>(t.i)] - t.potential;
        energy += t.conductance * du * du;
    }
    const double conductance = energy * d.symmetry_factor;
    GridReport rep;
    rep.conductance = conductance;
    rep.lambda = d.family == CurveFamily::Separating ? conductance : 1.0 / conductance;
    rep.h = d.h;
    rep.iterations = static_cast<int>(cg.iterations());
    rep.residual = cg.error();
    return rep;
}

}  // namespace fbt
