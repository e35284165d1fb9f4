#include "cli.hpp"

#include "fbt/bounds.hpp"
#include "fbt/braid.hpp"
#include "fbt/config3.hpp"
#include "fbt/conformal.hpp"
#include "fbt/dbar.hpp"
#include "fbt/errors.hpp"
#include "fbt/lognumber.hpp"
#include "fbt/word.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>

namespace fbt::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json bound_json(const LogNumber& v) {
    json j{{"ln", v.ln()}, {"decimal", v.decimal()}};
    return j;
}

json bound_json(const Bound& b) {
    json j = bound_json(b.value);
    if (!b.exact.empty()) j["exact"] = b.exact;
    return j;
}

json syllables_json(const FreeWord& w) {
    json arr = json::array();
    for (const auto& s : syllables(w)) arr.push_back({{"kind", to_string(s.kind)}, {"degree", s.degree}});
    return arr;
}

json word_json(const FreeWord& w) {
    return {{"word", w.str()}, {"l_minus", l_minus(w)}, {"l_plus", l_plus(w)}, {"syllables", syllables_json(w)}};
}

json nf_json(const BraidNormalForm& nf) {
    return {{"delta_power", nf.delta_power}, {"j", nf.j}, {"k", nf.k}, {"b1", nf.b1.str()}, {"l", nf.l},
            {"ambient", nf.ambient == Ambient::B3 ? "B3" : "mod-center"}};
}

std::istream& open_input(const std::string& path, std::ifstream& file) {
    if (path == "-") return std::cin;
    file.open(path);
    if (!file) throw ValidationError("cannot open " + path);
    return file;
}

AnnulusSpec annulus_from(const std::string& kind, double p, double q) {
    if (kind == "round") return AnnulusSpec::round(p, q);
    if (kind == "rectangle") return AnnulusSpec::rectangle(p, q);
    if (kind == "flat-cylinder") return AnnulusSpec::flat_cylinder(p, q);
    throw ValidationError("unknown domain kind '" + kind + "'");
}

// {"kind": "...", "params": {...}}
AnnulusSpec annulus_from_file(const std::string& path) {
    std::ifstream file;
    std::istream& in = open_input(path, file);
    json j;
    try {
        in >> j;
        const std::string kind = j.at("kind").get<std::string>();
        const auto& p = j.at("params");
        if (kind == "round") return AnnulusSpec::round(p.at("r").get<double>(), p.at("R").get<double>());
        if (kind == "rectangle") return AnnulusSpec::rectangle(p.at("a").get<double>(), p.at("b").get<double>());
        if (kind == "flat-cylinder")
            return AnnulusSpec::flat_cylinder(p.at("circumference").get<double>(), p.at("height").get<double>());
        throw ValidationError("unknown domain kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad domain file: ") + e.what());
    }
}

json annulus_params(const AnnulusSpec& s) {
    switch (s.kind) {
        case AnnulusSpec::Kind::Round: return {{"r", s.p}, {"R", s.q}};
        case AnnulusSpec::Kind::Rectangle: return {{"a", s.p}, {"b", s.q}};
        case AnnulusSpec::Kind::FlatCylinder: return {{"circumference", s.p}, {"height", s.q}};
    }
    return {};
}

int to_int(double x, const char* what) {
    if (!(std::abs(x) < 1e9) || x != std::floor(x)) throw ValidationError(std::string(what) + " must be an integer");
    return static_cast<int>(x);
}

void dump_csv(const std::string& path, const std::vector<cplx>& z, const std::vector<cplx>& f) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << "re_z,im_z,re_f,im_f\n";
    for (std::size_t i = 0; i < z.size(); ++i)
        out << fmt(z[i].real()) << ',' << fmt(z[i].imag()) << ',' << fmt(f[i].real()) << ',' << fmt(f[i].imag()) << '\n';
}

// Holds option storage for one command line.
struct Options {
    std::string word, braid, file = "-", kind, format = "json", family = "separating", which = "wp_nu", target;
    std::vector<std::string> words, coords;
    std::string budget = "0", cap = "4.5", p, q, h, tol, max_iter, alpha = "1", sigma, N, nx, ny, re, im,
                lambda, k, k2, g = "0", m = "0", lambda4, lambda3, lambda8, C, c, slalom, delta = "0.1", c1, c2,
                c1_lower, c2_lower, clearance, dump, sweep, power = "2", domain;
};

double req(const std::string& s, const char* what) {
    if (s.empty()) throw ValidationError(std::string("missing required value --") + what);
    return parse_real(s);
}

}  // namespace

double parse_real(const std::string& text) {
    const std::string s = trim(text);
    static const std::regex log_form(R"(^(?:([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?(?:log|ln)\((.+)\)$)");
    std::smatch m;
    if (std::regex_match(s, m, log_form)) {
        const double k = m[1].matched ? parse_real(m[1].str()) : 1.0;
        const double x = parse_real(m[2].str());
        if (!(x > 0.0)) throw ValidationError("log argument must be positive: " + s);
        return k * std::log(x);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ValidationError("not a number: '" + text + "'");
    return v;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            if (!trim(cur).empty()) out.push_back(parse_real(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) out.push_back(parse_real(cur));
    return out;
}

namespace {

// ---------------------------------------------------------------- word

void cmd_word(CLI::App& word, const Options& o, std::ostream& out) {
    if (word.got_subcommand("linv")) {
        out << word_json(parse_word(o.word)).dump(2) << '\n';
    } else if (word.got_subcommand("enum")) {
        const double y = parse_real(o.budget);
        const auto words = enumerate_words(y, parse_real(o.cap));
        if (o.format == "csv") {
            out << "word,l_minus,l_plus\n";
            for (const auto& w : words) out << w.str() << ',' << fmt(l_minus(w)) << ',' << fmt(l_plus(w)) << '\n';
            return;
        }
        json arr = json::array();
        for (const auto& w : words) arr.push_back(w.str());
        out << json{{"budget", y}, {"count", words.size()}, {"bound", bound_json(word_count_bound(y))}, {"words", arr}}.dump(2)
            << '\n';
    } else if (word.got_subcommand("canon")) {
        if (o.words.empty()) throw ValidationError("canon needs at least one word");
        const int g = to_int(parse_real(o.g), "g"), m = to_int(parse_real(o.m), "m");
        if (o.words.size() == 1 && g == 0 && m == 0) {
            const auto w = parse_word(o.words[0]);
            json j{{"word", w.str()}, {"canonical", cyclic_canonical(w).str()}};
            j["primitive"] = w.is_identity() ? json(nullptr) : json(is_primitive(w));
            out << j.dump(2) << '\n';
            return;
        }
        std::vector<FreeWord> entries;
        for (const auto& s : o.words) entries.push_back(parse_word(s));
        const auto canon = tuple_canonical(MonodromyTuple(g, m, entries));
        json in = json::array(), res = json::array();
        for (const auto& w : entries) in.push_back(w.str());
        for (const auto& w : canon.entries()) res.push_back(w.str());
        out << json{{"g", g}, {"m", m}, {"tuple", in}, {"canonical", res}}.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------- braid

void cmd_braid(CLI::App& braid, const Options& o, std::ostream& out) {
    if (braid.got_subcommand("nf")) {
        const auto b = parse_braid(o.braid);
        const auto nf = normal_form(b);
        const auto img = matrix_image(b);
        json j = word_json(theta(nf));
        j["braid"] = b.str();
        j["normal_form"] = nf_json(nf);
        j["expanded"] = expand(nf).str();
        j["matrix"] = img.matrix.str();
        j["exponent_sum"] = img.exponent_sum.str();
        out << j.dump(2) << '\n';
    } else if (braid.got_subcommand("theta")) {
        const auto b = parse_braid(o.braid);
        const auto t = theta(b);
        out << json{{"braid", b.str()}, {"theta", t.str()}, {"l_minus", l_minus(t)}, {"l_plus", l_plus(t)}}.dump(2)
            << '\n';
    } else if (braid.got_subcommand("census")) {
        const double y = parse_real(o.budget);
        const auto all = census(y, parse_real(o.cap));
        if (o.format == "csv") {
            out << "braid,j,k,b1,l,delta_power\n";
            for (const auto& b : all) {
                const auto nf = normal_form(b);
                out << b.str() << ',' << nf.j << ',' << nf.k << ',' << nf.b1.str() << ',' << nf.l << ','
                    << (nf.delta_power ? 1 : 0) << '\n';
            }
            return;
        }
        json arr = json::array();
        for (const auto& b : all) arr.push_back({{"braid", b.str()}, {"normal_form", nf_json(normal_form(b))}});
        out << json{{"budget", y}, {"count", all.size()}, {"bound", bound_json(braid_count_bound(y))}, {"elements", arr}}
                   .dump(2)
            << '\n';
    } else if (braid.got_subcommand("bracket")) {
        if (!o.k.empty()) {
            const auto k = static_cast<std::int64_t>(to_int(parse_real(o.k), "k"));
            const auto k2 = static_cast<std::int64_t>(to_int(req(o.k2, "k2"), "k2"));
            const double lam = req(o.lambda, "lambda");
            out << json{{"k", k}, {"k2", k2}, {"lambda", lam}, {"lemma3a", lemma3a_check(k, k2, lam)}}.dump(2) << '\n';
            return;
        }
        const auto b = parse_braid(o.braid);
        json j{{"braid", b.str()}, {"theta", theta(b).str()}, {"lambda_tr_lower", lambda_tr_lower(b)}};
        if (!o.lambda.empty()) j["lemma4_admissible"] = lemma4_admissible(b, parse_real(o.lambda));
        out << j.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------- config3

void cmd_config3(CLI::App& c3, const Options& o, std::ostream& out) {
    if (c3.got_subcommand("decode-braid")) {
        std::ifstream file;
        const auto loop = read_config_loop(open_input(o.file, file));
        const auto b = decode_braid(loop);
        out << json{{"braid", b.str()}, {"samples", loop.samples.size()}, {"normal_form", nf_json(normal_form(b))}}.dump(2)
            << '\n';
    } else if (c3.got_subcommand("decode-word")) {
        std::ifstream file;
        const auto loop = read_plane_loop(open_input(o.file, file));
        const double clr = o.clearance.empty() ? kDefaultClearance : parse_real(o.clearance);
        const auto w = decode_word(loop, clr);
        out << json{{"word", w.str()}, {"samples", loop.samples.size()}}.dump(2) << '\n';
    } else if (c3.got_subcommand("in-h")) {
        if (o.coords.size() != 6) throw ValidationError("in-h needs six numbers: x1 y1 x2 y2 x3 y3");
        std::vector<double> v;
        for (const auto& s : o.coords) v.push_back(parse_real(s));
        const Triple t(cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]));
        const double tol = o.tol.empty() ? kDefaultCollinearTol : parse_real(o.tol);
        out << json{{"in_h", in_H(t, tol)}, {"tolerance", tol}}.dump(2) << '\n';
    }
}

// ---------------------------------------------------------------- conformal

void cmd_conformal(CLI::App& cf, const Options& o, std::ostream& out) {
    auto spec = [&] {
        if (!o.domain.empty()) return annulus_from_file(o.domain);
        if (o.kind.empty()) throw ValidationError("missing --kind or --domain");
        return annulus_from(o.kind, req(o.p, "p"), req(o.q, "q"));
    };
    if (cf.got_subcommand("lambda")) {
        const auto s = spec();
        out << json{{"kind", to_string(s.kind)}, {"params", annulus_params(s)}, {"lambda", lambda_closed_form(s)}}.dump(2)
            << '\n';
    } else if (cf.got_subcommand("grid")) {
        const auto s = spec();
        const double h = req(o.h, "h");
        CurveFamily fam = CurveFamily::Separating;
        if (o.family == "joining") fam = CurveFamily::Joining;
        else if (o.family != "separating") throw ValidationError("family must be separating or joining");
        GridDomain d;
        switch (s.kind) {
            case AnnulusSpec::Kind::Round:
                if (fam != CurveFamily::Separating) throw ValidationError("round annuli support the separating family only");
                d = GridDomain::round_annulus(s.p, s.q, h);
                break;
            case AnnulusSpec::Kind::Rectangle: d = GridDomain::rectangle(s.p, s.q, h, fam); break;
            case AnnulusSpec::Kind::FlatCylinder:
                if (fam != CurveFamily::Separating) throw ValidationError("cylinders support the separating family only");
                d = GridDomain::flat_cylinder(s.p, s.q, h);
                break;
        }
        const double tol = o.tol.empty() ? kGridTolerance : parse_real(o.tol);
        const int iters = o.max_iter.empty() ? 0 : to_int(parse_real(o.max_iter), "max-iter");
        const auto rep = grid_extremal_length(d, tol, iters);
        const double exact = lambda_closed_form(s);
        const double expect = fam == CurveFamily::Separating ? exact : 1.0 / exact;
        out << json{{"lambda", rep.lambda},
                    {"h", rep.h},
                    {"iterations", rep.iterations},
                    {"residual", rep.residual},
                    {"kind", to_string(s.kind)},
                    {"family", o.family},
                    {"closed_form", expect},
                    {"relative_error", std::abs(rep.lambda - expect) / expect}}
                       .dump(2)
            << '\n';
    } else if (cf.got_subcommand("torus-bounds")) {
        const TorusWithHole t{parse_real(o.alpha), req(o.sigma, "sigma")};
        const auto b = generator_upper_bounds(t);
        out << json{{"alpha", t.alpha},
                    {"sigma", t.sigma},
                    {"vertical", b.vertical},
                    {"horizontal", b.horizontal},
                    {"lambda3_upper", prop1a_lambda3_upper(t)}}
                       .dump(2)
            << '\n';
    }
}

// ---------------------------------------------------------------- dbar

void cmd_dbar(CLI::App& db, const Options& o, std::ostream& out) {
    if (db.got_subcommand("kernel")) {
        const auto kp = KernelParams::standard(parse_real(o.alpha), o.N.empty() ? 60 : to_int(parse_real(o.N), "N"));
        const cplx z(req(o.re, "re"), req(o.im, "im"));
        cplx v;
        double tail;
        if (o.which == "wp") v = wp(kp, z), tail = wp_tail_bound(kp, z);
        else if (o.which == "wp_nu") v = wp_nu(kp, z), tail = wp_nu_tail_bound(kp, z);
        else throw ValidationError("kernel must be wp or wp_nu");
        json j{{"kernel", o.which}, {"alpha", kp.alpha}, {"N", kp.N}, {"z", {z.real(), z.imag()}}, {"value", {v.real(), v.imag()}}};
        j["tail_bound"] = std::isfinite(tail) ? json(tail) : json(nullptr);
        out << j.dump(2) << '\n';
    } else if (db.got_subcommand("solve")) {
        const double alpha = parse_real(o.alpha), sigma = req(o.sigma, "sigma"), delta = parse_real(o.delta);
        const int n = to_int(parse_real(o.power), "power");
        if (n == 0) throw ValidationError("power must be nonzero");
        const auto kp = KernelParams::standard(alpha, o.N.empty() ? 50 : to_int(parse_real(o.N), "N"));
        const double k = 2 * std::numbers::pi * n / alpha, rho = 1.0 / std::cosh(1.5 * delta * std::abs(k));
        Blend blend([=](cplx z) { return -1.0 + rho * std::exp(k * z); }, delta);
        DbarConfig cfg;
        cfg.delta = delta;
        cfg.eps = sigma / delta;
        if (!o.nx.empty()) cfg.nx = static_cast<std::size_t>(to_int(parse_real(o.nx), "nx"));
        if (!o.ny.empty()) cfg.ny = static_cast<std::size_t>(to_int(parse_real(o.ny), "ny"));
        cfg.c1 = o.c1.empty() ? 1 + rho * std::exp(2.5 * delta * std::abs(k)) : parse_real(o.c1);
        cfg.c2 = o.c2.empty() ? remainder_estimate(kp, cfg) : parse_real(o.c2);
        const double max_phi = blend.max_phi(cfg);
        DbarSolver solver([&](cplx z) { return blend.phi(z); }, kp, cfg);
        const auto nodes = solver.interior_nodes(6);
        const auto d = solver.dbar(nodes, std::min(solver.hx(), solver.hy()) / 16);
        double fd = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) fd = std::max(fd, std::abs(d[i] - blend.phi(nodes[i])));
        const auto grid = cross_grid(alpha, sigma, delta, 60, 40);
        const auto fs = solver.f(grid);
        double sup = 0.0;
        for (cplx v : fs) sup = std::max(sup, std::abs(v));
        if (!o.dump.empty()) dump_csv(o.dump, grid, fs);
        out << json{{"alpha", alpha},      {"sigma", sigma},   {"delta", delta},  {"N", kp.N},
                    {"nx", cfg.nx},        {"ny", cfg.ny},     {"c1", cfg.c1},    {"c2", cfg.c2},
                    {"max_phi", max_phi},  {"dbar_error", fd}, {"sup_f", sup},    {"budget", sup_budget(cfg)},
                    {"samples", grid.size()}}
                       .dump(2)
            << '\n';
    } else if (db.got_subcommand("demo")) {
        DemoOptions opt;
        if (!o.N.empty()) opt.N = to_int(parse_real(o.N), "N");
        if (!o.nx.empty()) opt.nx = static_cast<std::size_t>(to_int(parse_real(o.nx), "nx"));
        if (!o.ny.empty()) opt.ny = static_cast<std::size_t>(to_int(parse_real(o.ny), "ny"));
        opt.delta = parse_real(o.delta);
        const auto rep = demo_construct(parse_real(o.alpha), req(o.sigma, "sigma"), parse_word(o.target), opt);
        if (!o.dump.empty()) {
            std::vector<cplx> z;
            for (double t : rep.loop.t) z.emplace_back(0.0, rep.alpha * t);
            dump_csv(o.dump, z, rep.loop.samples);
        }
        out << json{{"alpha", rep.alpha},
                    {"sigma", rep.sigma},
                    {"target", rep.target.str()},
                    {"sup_f", rep.sup_f},
                    {"clearance", rep.clearance},
                    {"decoded", rep.decoded.str()},
                    {"dbar_residual", rep.dbar_residual},
                    {"budget", rep.budget},
                    {"periodic_defect", rep.periodic_defect},
                    {"decoded_horizontal", rep.decoded_horizontal.str()}}
                       .dump(2)
            << '\n';
    }
}

// ---------------------------------------------------------------- bounds

void cmd_bounds(CLI::App& bd, const Options& o, std::ostream& out) {
    const SurfaceTopology t{to_int(parse_real(o.g), "g"), to_int(parse_real(o.m), "m")};
    if (bd.got_subcommand("thm1")) {
        const bool three = !o.lambda3.empty();
        if (three && !o.lambda4.empty()) throw ValidationError("give either --lambda4 or --lambda3");
        const double lam = three ? parse_real(o.lambda3) : req(o.lambda4, "lambda4");
        const auto b = thm1_bound(t, lam, three ? LambdaKind::Three : LambdaKind::Four);
        out << json{{"bound", bound_json(b)},
                    {"formula", "3*(3/2*exp(24*pi*lambda))^(2g+m)"},
                    {"inputs", {{"g", t.g}, {"m", t.m}, {three ? "lambda3" : "lambda4", lam}}}}
                       .dump(2)
            << '\n';
    } else if (bd.got_subcommand("thm2")) {
        const double lam = req(o.lambda8, "lambda8");
        out << json{{"bound", bound_json(thm2_bound(t, lam))},
                    {"formula", "(2*3^6*5^6*exp(36*pi*lambda))^(2g+m)"},
                    {"inputs", {{"g", t.g}, {"m", t.m}, {"lambda8", lam}}}}
                       .dump(2)
            << '\n';
    } else if (bd.got_subcommand("thm3")) {
        const double lam = req(o.lambda8, "lambda8");
        const auto a = thm3_bound(t, lam), b = thm3_bound_sixth_power(t, lam);
        out << json{{"bound", bound_json(a)},
                    {"formula", "(3^6*5^6*exp(36*pi*lambda))^(2g+m)"},
                    {"sixth_power", bound_json(b)},
                    {"inputs", {{"g", t.g}, {"m", t.m}, {"lambda8", lam}}},
                    {"reducible11", bound_json(reducible11_bound(t))}}
                       .dump(2)
            << '\n';
    } else if (bd.got_subcommand("prop1a")) {
        const double alpha = parse_real(o.alpha), sigma = req(o.sigma, "sigma");
        json j{{"bound", bound_json(prop1a_upper(alpha, sigma))},
               {"formula", "7*exp(192*pi*(2*alpha+1)/sigma)"},
               {"lambda3_upper", prop1a_lambda3_upper({alpha, sigma})},
               {"inputs", {{"alpha", alpha}, {"sigma", sigma}}}};
        if (!o.C.empty() || !o.c.empty()) {
            const double C = req(o.C, "C"), c = req(o.c, "c");
            j["lower"] = {{"bound", bound_json(prop1a_lower(alpha, sigma, C, c))},
                          {"formula", "c*exp(C*alpha/sigma)"},
                          {"inputs", {{"C", C}, {"c", c}}}};
        }
        if (!o.slalom.empty()) {
            const double s = parse_real(o.slalom), d = parse_real(o.delta);
            j["slalom_lower"] = {{"bound", bound_json(prop1a_slalom_lower(alpha, d, s))},
                                 {"formula", "2^(alpha/(10*C*delta)-1)"},
                                 {"inputs", {{"C", s}, {"delta", d}}}};
        }
        out << j.dump(2) << '\n';
    } else if (bd.got_subcommand("prop1b")) {
        const double sigma = req(o.sigma, "sigma");
        const double a = req(o.c1, "C1"), b = req(o.c2, "C2"), al = req(o.c1_lower, "C1-lower"), bl = req(o.c2_lower, "C2-lower");
        const auto [up, lo] = prop1b_bounds(sigma, a, b, al, bl);
        out << json{{"bound", bound_json(up)},
                    {"formula", "C1*exp(C2/sigma)"},
                    {"lower", {{"bound", bound_json(lo)}, {"formula", "C1'*exp(C2'/sigma)"}}},
                    {"inputs", {{"sigma", sigma}, {"C1", a}, {"C2", b}, {"C1_lower", al}, {"C2_lower", bl}}}}
                       .dump(2)
            << '\n';
    } else if (bd.got_subcommand("table")) {
        const auto values = parse_real_list(o.sweep);
        if (values.empty()) throw ValidationError("empty sweep");
        const std::string& kind = o.kind;
        if (kind == "prop1a") {
            const double alpha = parse_real(o.alpha);
            out << "alpha,sigma,ln,decimal\n";
            for (double s : values) {
                const auto v = prop1a_upper(alpha, s);
                out << fmt(alpha) << ',' << fmt(s) << ',' << fmt(v.ln()) << ',' << v.decimal() << '\n';
            }
        } else if (kind == "thm1" || kind == "thm2" || kind == "thm3") {
            out << "g,m,lambda,ln,decimal\n";
            for (double l : values) {
                const Bound v = kind == "thm1" ? thm1_bound(t, l) : kind == "thm2" ? thm2_bound(t, l) : thm3_bound(t, l);
                out << t.g << ',' << t.m << ',' << fmt(l) << ',' << fmt(v.value.ln()) << ',' << v.value.decimal() << '\n';
            }
        } else if (kind == "census" || kind == "words") {
            out << "budget,count,bound_ln\n";
            for (double y : values) {
                const std::size_t n = kind == "census" ? census(y).size() : enumerate_words(y).size();
                const auto b = kind == "census" ? braid_count_bound(y) : word_count_bound(y);
                out << fmt(y) << ',' << n << ',' << fmt(b.ln()) << '\n';
            }
        } else {
            throw ValidationError("table kind must be prop1a, thm1, thm2, thm3, census or words");
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"free-group, braid and extremal-length toolkit", "fbt"};
    app.require_subcommand(1);
    Options o;

    auto* word = app.add_subcommand("word", "reduced words and their invariants")->require_subcommand(1);
    word->add_subcommand("linv", "syllables, l_minus and l_plus of a word")->add_option("word", o.word)->required();
    auto* wenum = word->add_subcommand("enum", "all words with l_minus <= budget");
    wenum->add_option("--budget", o.budget)->required();
    wenum->add_option("--cap", o.cap);
    wenum->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    auto* canon = word->add_subcommand("canon", "conjugacy canonical form of a word or tuple");
    canon->add_option("words", o.words);
    canon->add_option("--g", o.g);
    canon->add_option("--m", o.m);

    auto* braid = app.add_subcommand("braid", "three-strand braids")->require_subcommand(1);
    braid->add_subcommand("nf", "normal form")->add_option("braid", o.braid)->required();
    braid->add_subcommand("theta", "the word attached to a braid")->add_option("braid", o.braid)->required();
    auto* bcen = braid->add_subcommand("census", "quotient elements under an l_minus budget");
    bcen->add_option("--budget", o.budget)->required();
    bcen->add_option("--cap", o.cap);
    bcen->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    auto* brk = braid->add_subcommand("bracket", "extremal-length brackets");
    brk->add_option("braid", o.braid);
    brk->add_option("--lambda", o.lambda);
    brk->add_option("--k", o.k);
    brk->add_option("--k2", o.k2);

    auto* c3 = app.add_subcommand("config3", "loops of point triples")->require_subcommand(1);
    c3->add_subcommand("decode-braid", "braid of a loop CSV")->add_option("file", o.file);
    auto* dw = c3->add_subcommand("decode-word", "word of a plane loop CSV");
    dw->add_option("file", o.file);
    dw->add_option("--clearance", o.clearance);
    auto* inh = c3->add_subcommand("in-h", "collinearity test");
    inh->add_option("coords", o.coords)->expected(6);
    inh->add_option("--tol", o.tol);

    auto* cf = app.add_subcommand("conformal", "extremal length")->require_subcommand(1);
    for (const char* name : {"lambda", "grid"}) {
        auto* s = cf->add_subcommand(name, name == std::string("lambda") ? "closed form" : "grid solve");
        s->add_option("--kind", o.kind)->check(CLI::IsMember({"round", "rectangle", "flat-cylinder"}));
        s->add_option("--p", o.p);
        s->add_option("--q", o.q);
        s->add_option("--domain", o.domain);
        if (name == std::string("grid")) {
            s->set_help_flag("--help", "Print this help message and exit");
            s->add_option("--h", o.h)->required();
            s->add_option("--family", o.family);
            s->add_option("--tol", o.tol);
            s->add_option("--max-iter", o.max_iter);
        }
    }
    auto* tb = cf->add_subcommand("torus-bounds", "generator bounds on the torus with a hole");
    tb->add_option("--alpha", o.alpha);
    tb->add_option("--sigma", o.sigma)->required();

    auto* db = app.add_subcommand("dbar", "the dbar correction on the torus with a hole")->require_subcommand(1);
    auto* ker = db->add_subcommand("kernel", "lattice kernels");
    ker->add_option("--which", o.which);
    ker->add_option("--alpha", o.alpha);
    ker->add_option("--N", o.N);
    ker->add_option("--re", o.re)->required();
    ker->add_option("--im", o.im)->required();
    for (const char* name : {"solve", "demo"}) {
        auto* s = db->add_subcommand(name, name == std::string("solve") ? "solve for the exp map" : "end-to-end demo");
        s->add_option("--alpha", o.alpha);
        s->add_option("--sigma", o.sigma)->required();
        s->add_option("--delta", o.delta);
        s->add_option("--N", o.N);
        s->add_option("--nx", o.nx);
        s->add_option("--ny", o.ny);
        s->add_option("--dump", o.dump);
        if (name == std::string("solve")) {
            s->add_option("--power", o.power);
            s->add_option("--C1", o.c1);
            s->add_option("--C2", o.c2);
        } else {
            s->add_option("--target", o.target)->required();
        }
    }

    auto* bd = app.add_subcommand("bounds", "counting bounds")->require_subcommand(1);
    for (const char* name : {"thm1", "thm2", "thm3"}) {
        auto* s = bd->add_subcommand(name, "theorem bound");
        s->add_option("--g", o.g);
        s->add_option("--m", o.m);
        if (name == std::string("thm1")) {
            s->add_option("--lambda4", o.lambda4);
            s->add_option("--lambda3", o.lambda3);
        } else {
            s->add_option("--lambda8", o.lambda8)->required();
        }
    }
    auto* p1a = bd->add_subcommand("prop1a", "torus with a hole");
    p1a->add_option("--alpha", o.alpha);
    p1a->add_option("--sigma", o.sigma)->required();
    p1a->add_option("--C", o.C);
    p1a->add_option("--c", o.c);
    p1a->add_option("--slalom-C", o.slalom);
    p1a->add_option("--delta", o.delta);
    auto* p1b = bd->add_subcommand("prop1b", "planar family");
    p1b->add_option("--sigma", o.sigma)->required();
    p1b->add_option("--C1", o.c1)->required();
    p1b->add_option("--C2", o.c2)->required();
    p1b->add_option("--C1-lower", o.c1_lower)->required();
    p1b->add_option("--C2-lower", o.c2_lower)->required();
    auto* tab = bd->add_subcommand("table", "CSV sweep");
    tab->add_option("--kind", o.kind)->required();
    tab->add_option("--sweep", o.sweep)->required();
    tab->add_option("--alpha", o.alpha);
    tab->add_option("--g", o.g);
    tab->add_option("--m", o.m);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (app.got_subcommand(word)) cmd_word(*word, o, out);
        else if (app.got_subcommand(braid)) cmd_braid(*braid, o, out);
        else if (app.got_subcommand(c3)) cmd_config3(*c3, o, out);
        else if (app.got_subcommand(cf)) cmd_conformal(*cf, o, out);
        else if (app.got_subcommand(db)) cmd_dbar(*db, o, out);
        else if (app.got_subcommand(bd)) cmd_bounds(*bd, o, out);
    } catch (const ValidationError& e) {
        err << "error: validation: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        err << "error: convergence: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitConvergence;
    }
    return kExitOk;
}

}  // namespace fbt::cli
