// gk: command-line front end. Every run echoes its configuration as `#`
// comment lines (CSV) or a leading {"config": ...} object (JSON lines).

#include "gk/errors.hpp"
#include "gk/functionals.hpp"
#include "gk/kernel.hpp"
#include "gk/rn.hpp"
#include "gk/sampler.hpp"
#include "gk/simd/cauchy.hpp"
#include "gk/zmeasure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>

using json = nlohmann::ordered_json;
using namespace gk;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

cplx parse_complex(const std::string& raw, const char* name) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    auto to_d = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw PreconditionError(name, "cannot parse complex number '" + raw + "'");
        }
    };
    if (s.empty()) throw PreconditionError(name, "empty complex number");
    if (s.back() != 'i') return {to_d(s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [&](std::string t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_d(t);
    };
    if (cut == std::string::npos) return {0.0, imag(body)};
    return {to_d(body.substr(0, cut)), imag(body.substr(cut))};
}

std::vector<double> parse_list(const std::string& s, const char* name) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw PreconditionError(name, "cannot parse number '" + tok + "'");
        }
    }
    return out;
}

// Rows are collected as strings and written either as CSV or JSON lines.
class Output {
public:
    Output(std::string format, const std::string& path, json config) : format_(std::move(format)) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw PreconditionError("out", "cannot open output file " + path);
        }
        os_ = file_ ? file_.get() : &std::cout;
        if (format_ == "csv") {
            for (auto& [k, v] : config.items()) *os_ << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        } else {
            *os_ << json{{"config", config}}.dump() << "\n";
        }
    }

    void columns(std::vector<std::string> cols) {
        cols_ = std::move(cols);
        if (format_ == "csv") {
            for (std::size_t i = 0; i < cols_.size(); ++i) *os_ << (i ? "," : "") << cols_[i];
            *os_ << "\n";
        }
    }

    // Values are either numbers (already formatted) or strings.
    using Cell = std::variant<double, std::string>;
    void row(const std::vector<Cell>& cells) {
        if (format_ == "csv") {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) *os_ << ',';
                if (auto d = std::get_if<double>(&cells[i]))
                    *os_ << num(*d);
                else
                    *os_ << quote(std::get<std::string>(cells[i]));
            }
            *os_ << "\n";
        } else {
            json j;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (auto d = std::get_if<double>(&cells[i]))
                    j[cols_[i]] = std::isfinite(*d) ? json(*d) : json(num(*d));
                else
                    j[cols_[i]] = std::get<std::string>(cells[i]);
            }
            *os_ << j.dump() << "\n";
        }
    }

    void raw_line(const json& j) { *os_ << j.dump() << "\n"; }
    const std::string& format() const { return format_; }

private:
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }

    std::string format_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
    std::vector<std::string> cols_;
};

struct Common {
    std::string z = "0.5", zp = "conj";
    double xi = -1.0;
    std::string format = "csv", out;
    QuadratureConfig q;
    std::string shape = "auto", route = "auto";

    Params params() const {
        const cplx zc = parse_complex(z, "z");
        const cplx zpc = zp == "conj" ? std::conj(zc) : parse_complex(zp, "zp");
        return Params::make(zc, zpc);
    }
    bool has_xi() const { return xi >= 0.0; }
    XiParams xi_params() const {
        require(has_xi(), "xi", "this command needs --xi");
        return XiParams::make(params(), xi);
    }
    QuadratureConfig quad() const {
        QuadratureConfig c = q;
        if (shape == "circle") c.shape = ContourShape::Circle;
        else if (shape == "keyhole") c.shape = ContourShape::Keyhole;
        else require(shape == "auto", "shape", "shape must be auto, circle or keyhole");
        return c;
    }
    Route route_value() const {
        if (route == "product") return Route::Product;
        if (route == "difference") return Route::Difference;
        require(route == "auto", "route", "route must be auto, product or difference");
        return Route::Auto;
    }
};

void add_common(CLI::App* sub, Common& c, bool quadrature) {
    sub->add_option("--z", c.z, "z as a, a+bi or a-bi")->capture_default_str();
    sub->add_option("--zp", c.zp, "z' (or 'conj' for the conjugate of z)")->capture_default_str();
    sub->add_option("--xi", c.xi, "xi in (0, 1); omit for the limit measure");
    sub->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
    sub->add_option("--out", c.out, "output path (default stdout)");
    if (!quadrature) return;
    sub->add_option("--nodes", c.q.nodes, "starting trapezoid nodes per circle")->capture_default_str();
    sub->add_option("--max-nodes", c.q.max_nodes, "node doubling cap")->capture_default_str();
    sub->add_option("--radius", c.q.radius, "circle radius (0 = automatic)")->capture_default_str();
    sub->add_option("--rho", c.q.rho, "hairpin offset, product form")->capture_default_str();
    sub->add_option("--rho1", c.q.rho1, "first contour offset, difference form")->capture_default_str();
    sub->add_option("--rho2", c.q.rho2, "second contour offset, difference form")->capture_default_str();
    sub->add_option("--ray-angle", c.q.ray_angle, "tilt of the second contour's rays")->capture_default_str();
    sub->add_option("--u-max", c.q.u_max, "ray truncation of limit contours")->capture_default_str();
    sub->add_option("--step", c.q.step, "starting double-exponential step")->capture_default_str();
    sub->add_option("--tol", c.q.tol, "quadrature tolerance")->capture_default_str();
    sub->add_option("--shape", c.shape, "auto, circle or keyhole")->capture_default_str();
    sub->add_option("--route", c.route, "auto, product or difference")->capture_default_str();
}

json base_config(const std::string& cmd, const Common& c, const std::vector<std::string>& argv) {
    std::string line;
    for (const auto& a : argv) {
        const bool plain = !a.empty() && a.find_first_of(" \t\"'$,;[]") == std::string::npos;
        line += (line.empty() ? "" : " ") + (plain ? a : "'" + a + "'");
    }
    json j;
    j["argv"] = line;
    j["command"] = cmd;
    j["z"] = c.z;
    j["zp"] = c.zp;
    if (c.has_xi()) j["xi"] = num(c.xi);
    j["simd"] = simd::isa_name(simd::active_isa());
    return j;
}

void add_quad_config(json& j, const Common& c) {
    const QuadratureConfig q = c.quad();
    j["nodes"] = q.nodes;
    j["max_nodes"] = q.max_nodes;
    j["radius"] = num(q.radius);
    j["rho"] = num(q.rho);
    j["rho1"] = num(q.rho1);
    j["rho2"] = num(q.rho2);
    j["ray_angle"] = num(q.ray_angle);
    j["u_max"] = num(q.u_max);
    j["step"] = num(q.step);
    j["tol"] = num(q.tol);
    j["shape"] = c.shape;
    j["route"] = c.route;
}

std::vector<HalfInt> window_points(int R) {
    std::vector<HalfInt> v;
    for (int i = 0; i < 2 * R; ++i) v.push_back(HalfInt::from_twice(2 * i - 2 * R + 1));
    return v;
}

// Pre-limit K or underline kernel on window R from a padded spectral window.
WindowKernel spectral_central(int R, const XiParams& p) {
    const int N = R + spectral_margin(p.xi);
    return underline_prelimit_spectral(N, p).central(R);
}

std::string join_points(const std::vector<HalfInt>& pts, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? std::string(1, sep) : "") + pts[i].str();
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    args[0] = "gk";
    CLI::App app{"Gamma-kernel determinantal measures: weights, kernels, Fredholm determinants, RN derivatives"};
    app.require_subcommand(1);
    Common c;

    // weight
    auto* weight = app.add_subcommand("weight", "z-measure weight of a partition or balanced configuration");
    add_common(weight, c, false);
    std::string lambda_s, config_s;
    int max_size = -1;
    auto* lambda_opt = weight->add_option("--lambda", lambda_s, "partition rows, e.g. 3,1,1");
    auto* config_opt = weight->add_option("--config", config_s, "balanced configuration, e.g. -1/2,1/2");
    weight->add_option("--max-size", max_size, "enumerate all partitions up to this size instead");

    // kernel
    auto* kernel = app.add_subcommand("kernel", "kernel values by one of four methods");
    add_common(kernel, c, true);
    std::string method = "integrable", x_s, y_s, kind = "underline";
    int grid = 0, window = 0;
    kernel->add_option("--method", method, "integrable, contour-limit, contour-prelimit, spectral")
        ->check(CLI::IsMember({"integrable", "contour-limit", "contour-prelimit", "spectral"}))
        ->capture_default_str();
    kernel->add_option("--x", x_s, "point n/2");
    kernel->add_option("--y", y_s, "point n/2");
    kernel->add_option("--grid", grid, "all pairs in the window of this radius");
    kernel->add_option("--window", window, "spectral window radius (default: grid + margin)");
    kernel->add_option("--kind", kind, "underline or k")->check(CLI::IsMember({"underline", "k"}))->capture_default_str();

    // correlate
    auto* correlate = app.add_subcommand("correlate", "enumeration oracle vs kernel minors");
    add_common(correlate, c, true);
    std::string points_s, side_s = "underline";
    int order = 3, cwin = 0;
    max_size = -1;
    int corr_max = 18;
    correlate->add_option("--points", points_s, "point sets separated by ';', e.g. '1/2;1/2,3/2'");
    correlate->add_option("--window", cwin, "all subsets of Z' ∩ [-R, R] up to --order points");
    correlate->add_option("--order", order, "largest subset size with --window")->capture_default_str();
    correlate->add_option("--max-size", corr_max, "enumeration cutoff")->capture_default_str();
    correlate->add_option("--side", side_s, "underline or k")->check(CLI::IsMember({"underline", "k"}))->capture_default_str();

    // fredholm
    auto* fredholm = app.add_subcommand("fredholm", "E[Phi_f] by enumeration and by Fredholm determinant");
    add_common(fredholm, c, false);
    std::string f_s;
    double decay = 0.0;
    int fmax = 20, fwin = 0;
    double det_tol = 1e-8;
    fredholm->add_option("--f", f_s, "point:value pairs, e.g. 1/2:-1,3/2:0.5")->required();
    fredholm->add_option("--decay", decay, "add f(x) = c/|x| beyond the window of --f");
    fredholm->add_option("--max-size", fmax, "enumeration cutoff")->capture_default_str();
    fredholm->add_option("--window", fwin, "largest determinant window (default 64 with tails)");
    fredholm->add_option("--det-tol", det_tol, "relative change for two consecutive window doublings")
        ->capture_default_str();

    // rn
    auto* rn = app.add_subcommand("rn", "Radon-Nikodym derivative: exact, closed form and limit");
    add_common(rn, c, false);
    std::string word_s, rn_config;
    int rn_window = 0;
    rn->add_option("--word", word_s, "JSON array of generators, rightmost acts first")->required();
    rn->add_option("--config", rn_config, "balanced configuration")->required();
    rn->add_option("--window", rn_window, "closed-form window radius (default support + 1)");

    // transport
    auto* transport = app.add_subcommand("transport", "verify the transport identity");
    add_common(transport, c, false);
    std::string t_word, t_f = "contains:1/2", t_windows = "64,128,256";
    int t_max = 16;
    double t_budget = 1e-5;
    transport->add_option("--word", t_word, "JSON array of generators")->required();
    transport->add_option("--F", t_f, "cylinder function, e.g. contains:1/2, avoids:-1/2, const:1, count:2, phi:...")
        ->capture_default_str();
    transport->add_option("--max-size", t_max, "enumeration cutoff (pre-limit)")->capture_default_str();
    transport->add_option("--windows", t_windows, "truncations for the limit right side")->capture_default_str();
    transport->add_option("--budget", t_budget, "limit agreement budget")->capture_default_str();

    // converge
    auto* converge = app.add_subcommand("converge", "xi -> 1 sweep tables");
    add_common(converge, c, true);
    std::string sweep_s = "0.9,0.99,0.999", report = "blocknorms", cv_word = "[0]", cv_config = "";
    int cv_window = 64;
    std::string cv_x = "1/2", cv_y = "1/2";
    converge->add_option("--sweep", sweep_s, "comma-separated xi values")->capture_default_str();
    converge->add_option("--report", report, "blocknorms, kernel or rn")
        ->check(CLI::IsMember({"blocknorms", "kernel", "rn"}))
        ->capture_default_str();
    converge->add_option("--window", cv_window, "window radius for blocknorms")->capture_default_str();
    converge->add_option("--x", cv_x, "kernel report point")->capture_default_str();
    converge->add_option("--y", cv_y, "kernel report point")->capture_default_str();
    converge->add_option("--word", cv_word, "rn report word")->capture_default_str();
    converge->add_option("--config", cv_config, "rn report configuration")->capture_default_str();

    // sample
    auto* sample = app.add_subcommand("sample", "exact samples of the window process");
    add_common(sample, c, false);
    int s_window = 8;
    std::size_t s_count = 1000;
    std::uint64_t s_seed = 1;
    bool involute = false;
    sample->add_option("--window", s_window, "window radius")->capture_default_str();
    sample->add_option("--count", s_count, "number of samples")->capture_default_str();
    sample->add_option("--seed", s_seed, "64-bit seed")->capture_default_str();
    sample->add_flag("--involute", involute, "emit K-side configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json{{"error", "precondition"}, {"name", "argv"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (weight->parsed()) {
            const XiParams p = c.xi_params();
            json cfg = base_config("weight", c, args);
            Output out(c.format, c.out, cfg);
            out.columns({"lambda", "config", "size", "weight", "log_weight"});
            auto emit = [&](const Partition& l) {
                out.row({l.str(), to_balanced_config(l).str(), static_cast<double>(l.size()), weight_partition(l, p),
                         log_weight_partition(l, p)});
            };
            if (max_size >= 0) {
                const Enumeration e = enumerate_weights(p, max_size);
                for (const auto& w : e.items) emit(w.lambda);
                out.row({"tail", "", static_cast<double>(max_size), e.tail_mass, std::log(e.tail_mass)});
            } else if (*lambda_opt) {
                emit(Partition::parse(lambda_s));
            } else {
                require(static_cast<bool>(*config_opt), "input", "need --lambda, --config or --max-size");
                emit(from_balanced_config(FiniteConfig::parse(config_s)));
            }
        } else if (kernel->parsed()) {
            const Params p = c.params();
            json cfg = base_config("kernel", c, args);
            cfg["method"] = method;
            cfg["kind"] = kind;
            add_quad_config(cfg, c);
            const QuadratureConfig q = c.quad();
            std::vector<std::pair<HalfInt, HalfInt>> pairs;
            if (grid > 0) {
                for (HalfInt x : window_points(grid))
                    for (HalfInt y : window_points(grid)) pairs.emplace_back(x, y);
            } else {
                require(!x_s.empty() && !y_s.empty(), "input", "need --x and --y, or --grid");
                pairs.emplace_back(HalfInt::parse(x_s), HalfInt::parse(y_s));
            }
            std::unique_ptr<WindowKernel> spec;
            if (method == "spectral") {
                const XiParams xp = c.xi_params();
                int R = 1;
                for (auto& [x, y] : pairs) R = std::max<int>(R, std::max(x.floor_abs(), y.floor_abs()) + 1);
                const int N = window > 0 ? window : R + spectral_margin(xp.xi);
                require(N >= R, "window", "spectral window smaller than the requested points");
                spec = std::make_unique<WindowKernel>(underline_prelimit_spectral(N, xp));
                cfg["window"] = N;
            }
            Output out(c.format, c.out, cfg);
            out.columns({"x", "y", "value", "imag", "error", "nodes", "levels"});
            for (auto& [x, y] : pairs) {
                ContourResult r;
                if (method == "integrable") r.value = underline_limit_integrable(x, y, p);
                else if (method == "contour-limit") r = underline_limit_contour(x, y, p, q, c.route_value());
                else if (method == "contour-prelimit") r = underline_prelimit_contour(x, y, c.xi_params(), q, c.route_value());
                else r.value = (*spec)(x, y);
                const double v = kind == "k" ? k_from_underline(x, y, r.value) : r.value;
                out.row({x.str(), y.str(), v, r.imag, r.error, static_cast<double>(r.nodes), static_cast<double>(r.levels)});
            }
        } else if (correlate->parsed()) {
            const XiParams p = c.xi_params();
            const QuadratureConfig q = c.quad();
            std::vector<std::vector<HalfInt>> sets;
            if (!points_s.empty()) {
                std::stringstream ss(points_s);
                std::string tok;
                while (std::getline(ss, tok, ';')) sets.push_back(FiniteConfig::parse(tok).points());
            } else {
                require(cwin >= 1 && order >= 1, "window", "need --points or --window >= 1");
                const auto pts = window_points(cwin);
                const int n = static_cast<int>(pts.size());
                for (unsigned m = 1; m < (1u << n); ++m) {
                    if (std::popcount(m) > order) continue;
                    std::vector<HalfInt> s;
                    for (int i = 0; i < n; ++i)
                        if (m >> i & 1u) s.push_back(pts[i]);
                    sets.push_back(s);
                }
            }
            const Side side = side_s == "k" ? Side::K : Side::Underline;
            const Enumeration e = enumerate_weights(p, corr_max);
            json cfg = base_config("correlate", c, args);
            cfg["max_size"] = corr_max;
            cfg["side"] = side_s;
            add_quad_config(cfg, c);
            Output out(c.format, c.out, cfg);
            out.columns({"points", "order", "oracle", "tail", "minor", "difference", "passed"});
            for (const auto& s : sets) {
                const int n = static_cast<int>(s.size());
                Eigen::MatrixXd m(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const double u = underline_prelimit_contour(s[i], s[j], p, q).value;
                        m(i, j) = side == Side::K ? k_from_underline(s[i], s[j], u) : u;
                    }
                const OracleValue o = correlation_oracle(s, e, side);
                const double minor = m.determinant(), d = std::abs(minor - o.value);
                out.row({join_points(s), static_cast<double>(n), o.value, o.tail, minor, d,
                         d <= o.tail + 1e-7 ? "true" : "false"});
            }
        } else if (fredholm->parsed()) {
            TestFunction f = TestFunction::parse(f_s);
            if (decay != 0.0) {
                const TestFunction t = TestFunction::inverse_decay(decay, f.radius());
                f = f.widened(f.radius()).with_tails(t.tail_pos(), t.tail_neg());
            }
            json cfg = base_config("fredholm", c, args);
            cfg["f"] = f.str();
            cfg["det_tol"] = num(det_tol);
            Output out(c.format, c.out, cfg);
            out.columns({"route", "value", "error", "window", "rcond"});
            const int maxw = fwin > 0 ? fwin : std::max(64, f.radius());
            if (c.has_xi()) {
                const XiParams p = c.xi_params();
                const Estimate s = expectation_sum(f, p, fmax);
                out.row({"sum", s.value, s.error, static_cast<double>(fmax), 1.0});
                const int R = f.has_tail() ? maxw : std::max(f.radius(), 1);
                const WindowKernel k = j_transform(spectral_central(R, p));
                const DetResult d = expectation_det(f, k, det_tol);
                out.row({"det", d.value, d.last_change, static_cast<double>(d.window), d.rcond});
            } else {
                const Params p = c.params();
                const int R = f.has_tail() ? maxw : std::max(f.radius(), 1);
                const DetResult d = expectation_det(
                    f, [&](int M) { return j_transform(underline_limit_window(M, p)); }, 4, R, det_tol);
                out.row({"det", d.value, d.last_change, static_cast<double>(d.window), d.rcond});
            }
        } else if (rn->parsed()) {
            const Params p = c.params();
            const FinitaryPermutation s = FinitaryPermutation::parse(word_s);
            const FiniteConfig x = FiniteConfig::parse(rn_config);
            require(x.is_balanced(), "balanced", "configuration " + x.str() + " is not balanced");
            const int N = rn_window > 0 ? rn_window : s.support_radius() + 1;
            const ClosedForm cf = rn_compose(s, restrict_to(x, N), N, p);
            json cfg = base_config("rn", c, args);
            cfg["window"] = N;
            Output out(c.format, c.out, cfg);
            out.columns({"word", "config", "exact", "a", "k", "closed_form", "limit"});
            const double exact = c.has_xi() ? rn_exact(s, x, c.xi_params()) : NAN;
            const double closed = c.has_xi() ? cf.evaluate(x, c.xi) : NAN;
            out.row({s.str(), x.str(), exact, cf.a, static_cast<double>(cf.k), closed, cf.evaluate(x, 1.0)});
        } else if (transport->parsed()) {
            const FinitaryPermutation s = FinitaryPermutation::parse(t_word);
            const CylinderFunction F = CylinderFunction::parse(t_f);
            json cfg = base_config("transport", c, args);
            cfg["F"] = F.name;
            if (c.has_xi()) {
                cfg["max_size"] = t_max;
                Output out(c.format, c.out, cfg);
                const TransportReport r = verify_transport(s, F, c.xi_params(), t_max);
                out.columns({"word", "F", "lhs", "rhs", "difference", "budget", "passed"});
                out.row({s.str(), F.name, r.lhs, r.rhs, r.difference, r.budget, r.passed ? "true" : "false"});
            } else {
                LimitTransportOptions o;
                o.windows.clear();
                for (double w : parse_list(t_windows, "windows")) o.windows.push_back(static_cast<int>(w));
                o.budget = t_budget;
                cfg["windows"] = t_windows;
                Output out(c.format, c.out, cfg);
                const LimitTransportReport r = verify_limit_transport(s, F, c.params(), o);
                out.columns({"word", "F", "lhs", "rhs", "difference", "extrapolation_error", "budget", "passed"});
                out.row({s.str(), F.name, r.lhs, r.rhs, r.difference, r.extrapolation_error, r.budget,
                         r.passed ? "true" : "false"});
            }
        } else if (converge->parsed()) {
            const Params p = c.params();
            const QuadratureConfig q = c.quad();
            const std::vector<double> sweep = parse_list(sweep_s, "sweep");
            json cfg = base_config("converge", c, args);
            cfg["report"] = report;
            cfg["sweep"] = sweep_s;
            add_quad_config(cfg, c);
            if (report == "blocknorms") {
                cfg["window"] = cv_window;
                Output out(c.format, c.out, cfg);
                // ++ trace and +- Hilbert-Schmidt norm of A_h K A_h, h = |x|^{-1/2}
                std::vector<HalfInt> pos, neg;
                for (int k = 0; k < cv_window; ++k) pos.push_back(HalfInt::above(k)), neg.push_back(-HalfInt::above(k));
                auto norms = [&](const Eigen::MatrixXd& pp, const Eigen::MatrixXd& pm) {
                    double tr = 0.0, hs = 0.0;
                    for (int i = 0; i < cv_window; ++i) {
                        tr += pp(i, i) / pos[i].value();
                        for (int j = 0; j < cv_window; ++j) {
                            // K(x, y) = eps(y) underline-K(x, y) for x > 0 > y
                            const double kv = epsilon(neg[j]) * pm(i, j);
                            hs += kv * kv / (pos[i].value() * -neg[j].value());
                        }
                    }
                    return std::pair{tr, std::sqrt(hs)};
                };
                const auto lim = norms(underline_limit_integrable(pos, pos, p), underline_limit_integrable(pos, neg, p));
                out.columns({"xi", "trace_pp", "hs_pm", "trace_gap", "hs_gap", "nodes"});
                for (double xi : sweep) {
                    const XiParams xp = XiParams::make(p, xi);
                    BlockReport r1, r2;
                    const auto v = norms(underline_prelimit_block(pos, pos, xp, q, Route::Auto, &r1),
                                         underline_prelimit_block(pos, neg, xp, q, Route::Auto, &r2));
                    out.row({xi, v.first, v.second, std::abs(v.first - lim.first), std::abs(v.second - lim.second),
                             static_cast<double>(std::max(r1.nodes, r2.nodes))});
                }
                out.row({1.0, lim.first, lim.second, 0.0, 0.0, 0.0});
            } else if (report == "kernel") {
                const HalfInt x = HalfInt::parse(cv_x), y = HalfInt::parse(cv_y);
                Output out(c.format, c.out, cfg);
                const double lim = underline_limit_integrable(x, y, p);
                out.columns({"xi", "x", "y", "value", "gap"});
                for (double xi : sweep) {
                    const double v = underline_prelimit_contour(x, y, XiParams::make(p, xi), q).value;
                    out.row({xi, x.str(), y.str(), v, std::abs(v - lim)});
                }
                out.row({1.0, x.str(), y.str(), lim, 0.0});
            } else {
                const FinitaryPermutation s = FinitaryPermutation::parse(cv_word);
                const FiniteConfig x = FiniteConfig::parse(cv_config);
                const int N = s.support_radius() + 1;
                const ClosedForm cf = rn_compose(s, restrict_to(x, N), N, p);
                const double lim = cf.evaluate(x, 1.0);
                Output out(c.format, c.out, cfg);
                out.columns({"xi", "rn", "gap"});
                for (double xi : sweep) {
                    const double v = rn_exact(s, x, XiParams::make(p, xi));
                    out.row({xi, v, std::abs(v - lim)});
                }
                out.row({1.0, lim, 0.0});
            }
        } else if (sample->parsed()) {
            const Params p = c.params();
            const WindowKernel k = c.has_xi() ? spectral_central(s_window, c.xi_params()) : underline_limit_window(s_window, p);
            const SampleBatch b =
                involute ? sample_underline_then_involute(k, s_count, s_seed) : sample_window(k, s_count, s_seed);
            json cfg = base_config("sample", c, args);
            cfg["window"] = s_window;
            cfg["count"] = s_count;
            cfg["seed"] = s_seed;
            cfg["rng"] = b.rng;
            cfg["involute"] = involute;
            cfg["max_clamp"] = num(b.max_clamp);
            Output out(c.format, c.out, cfg);
            if (out.format() == "jsonl") {
                for (const FiniteConfig& x : b.configs) {
                    json arr = json::array();
                    for (HalfInt pt : x.points()) arr.push_back(pt.str());
                    out.raw_line(arr);
                }
            } else {
                out.columns({"index", "points"});
                for (std::size_t i = 0; i < b.configs.size(); ++i)
                    out.row({static_cast<double>(i), join_points(b.configs[i].points())});
            }
        }
    } catch (const PreconditionError& e) {
        std::cout << json{{"error", "precondition"}, {"name", e.name()}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cout << json{{"error", "convergence"}, {"name", e.name()}, {"message", e.what()}}.dump() << "\n";
        return 3;
    }
    return 0;
}
