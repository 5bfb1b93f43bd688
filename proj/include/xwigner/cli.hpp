#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "xwigner/xwigner.hpp"

namespace xwigner::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;  // invalid configuration
inline constexpr int kExitDomain = 3;  // numerical domain errors from modules
inline constexpr int kExitIo = 4;      // file system / stream failures

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int stride = 1;
};

namespace cfg {

/// Fail-closed: any key outside the allowed set rejects the whole config.
inline void require_keys(const json& obj, const char* ctx,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ConfigurationError(std::string(ctx) + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigurationError(std::string(ctx) + ": unknown key '" + it.key() + "'");
    }
}

inline const json& require(const json& obj, const char* key, const char* ctx) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigurationError(std::string(ctx) + ": missing required key '" + key + "'");
    return *it;
}

inline double number(const json& v, const char* ctx) {
    if (!v.is_number())
        throw ConfigurationError(std::string(ctx) + ": expected a number");
    return v.get<double>();
}

inline int integer(const json& v, const char* ctx) {
    if (!v.is_number_integer())
        throw ConfigurationError(std::string(ctx) + ": expected an integer");
    return v.get<int>();
}

inline std::string text(const json& v, const char* ctx) {
    if (!v.is_string())
        throw ConfigurationError(std::string(ctx) + ": expected a string");
    return v.get<std::string>();
}

inline GridSpec parse_grid(const json& v) {
    require_keys(v, "grid", {"M", "L", "hbar"});
    return GridSpec(integer(require(v, "M", "grid"), "grid.M"),
                    number(require(v, "L", "grid"), "grid.L"),
                    number(require(v, "hbar", "grid"), "grid.hbar"));
}

inline PhaseSpacePoint parse_point(const json& v, const char* ctx) {
    if (!v.is_array() || v.size() != 2)
        throw ConfigurationError(std::string(ctx) + ": expected a [x, p] pair");
    return {number(v[0], ctx), number(v[1], ctx)};
}

inline WaveFunction parse_state(const json& v, const GridSpec& g, std::mt19937_64& rng);

inline WaveFunction parse_state_kind(const json& v, const GridSpec& g, std::mt19937_64& rng,
                                     const std::string& kind) {
    if (kind == "coherent") {
        require_keys(v, "state(coherent)", {"kind", "center", "normalize"});
        return gaussian_coherent(g, parse_point(require(v, "center", "state"), "state.center"));
    }
    if (kind == "hermite") {
        require_keys(v, "state(hermite)", {"kind", "n", "normalize"});
        return hermite_basis(g, integer(require(v, "n", "state"), "state.n"));
    }
    if (kind == "random") {
        require_keys(v, "state(random)", {"kind", "max_level", "normalize"});
        int level = v.contains("max_level") ? integer(v["max_level"], "state.max_level") : 10;
        return random_superposition(g, rng, level);
    }
    if (kind == "csv") {
        require_keys(v, "state(csv)", {"kind", "path", "normalize"});
        WaveFunction psi = read_wavefunction_csv(text(require(v, "path", "state"), "state.path"));
        if (psi.grid != g)
            throw ConfigurationError("state(csv): file grid differs from the configured grid");
        return psi;
    }
    if (kind == "superposition") {
        require_keys(v, "state(superposition)", {"kind", "terms", "normalize"});
        const json& terms = require(v, "terms", "state");
        if (!terms.is_array() || terms.empty())
            throw ConfigurationError("state(superposition): 'terms' must be a nonempty array");
        VectorXcd acc = VectorXcd::Zero(g.size);
        for (const json& term : terms) {
            require_keys(term, "superposition term", {"coeff", "state"});
            const json& cv = require(term, "coeff", "superposition term");
            if (!cv.is_array() || cv.size() != 2)
                throw ConfigurationError("superposition term: 'coeff' must be [re, im]");
            const Complex c(number(cv[0], "coeff"), number(cv[1], "coeff"));
            acc += c * parse_state(require(term, "state", "superposition term"), g, rng).samples;
        }
        return WaveFunction(g, Domain::position, std::move(acc));
    }
    throw ConfigurationError("state: unknown kind '" + kind + "'");
}

inline WaveFunction parse_state(const json& v, const GridSpec& g, std::mt19937_64& rng) {
    if (!v.is_object())
        throw ConfigurationError("state: expected a JSON object");
    WaveFunction psi =
        parse_state_kind(v, g, rng, text(require(v, "kind", "state"), "state.kind"));
    if (v.contains("normalize") && v["normalize"].is_boolean() && v["normalize"].get<bool>()) {
        const double n = psi.norm();
        if (n <= 0.0) throw ConfigurationError("state: cannot normalize the zero state");
        psi.samples /= n;
    }
    return psi;
}

inline Observable parse_observable(const json& v, const GridSpec& g) {
    if (!v.is_object())
        throw ConfigurationError("observable: expected a JSON object");
    const std::string kind = text(require(v, "kind", "observable"), "observable.kind");
    if (kind == "poly") {
        require_keys(v, "observable(poly)", {"kind", "terms"});
        const json& terms = require(v, "terms", "observable");
        if (!terms.is_array() || terms.empty())
            throw ConfigurationError("observable(poly): 'terms' must be a nonempty array");
        std::vector<Monomial> monomials;
        for (const json& term : terms) {
            require_keys(term, "poly term", {"x", "p", "coeff"});
            Monomial m;
            m.x_power = term.contains("x") ? integer(term["x"], "poly term.x") : 0;
            m.p_power = term.contains("p") ? integer(term["p"], "poly term.p") : 0;
            m.coeff = number(require(term, "coeff", "poly term"), "poly term.coeff");
            monomials.push_back(m);
        }
        return Observable::poly(std::move(monomials));
    }
    if (kind == "gaussian_bump") {
        require_keys(v, "observable(gaussian_bump)",
                     {"kind", "center", "width_sq", "amplitude"});
        PhaseSpacePoint center =
            v.contains("center") ? parse_point(v["center"], "observable.center")
                                 : PhaseSpacePoint{};
        const double width_sq = number(require(v, "width_sq", "observable"), "width_sq");
        const double amplitude =
            v.contains("amplitude") ? number(v["amplitude"], "amplitude") : 1.0;
        return Observable::gaussian_bump(g, center, width_sq, amplitude);
    }
    if (kind == "csv") {
        require_keys(v, "observable(csv)", {"kind", "path"});
        PhaseSpaceField f = read_field_csv(text(require(v, "path", "observable"), "path"));
        if (f.grid != g)
            throw ConfigurationError("observable(csv): file grid differs from the config grid");
        return Observable::sampled(std::move(f));
    }
    throw ConfigurationError("observable: unknown kind '" + kind + "'");
}

inline HamiltonianSpec parse_hamiltonian(const json& v, const GridSpec& g) {
    if (!v.is_object())
        throw ConfigurationError("hamiltonian: expected a JSON object");
    const std::string kind = text(require(v, "kind", "hamiltonian"), "hamiltonian.kind");
    const double mass = v.contains("mass") ? number(v["mass"], "hamiltonian.mass") : 1.0;
    if (kind == "free") {
        require_keys(v, "hamiltonian(free)", {"kind", "mass"});
        return FreeHamiltonian{mass};
    }
    if (kind == "harmonic") {
        require_keys(v, "hamiltonian(harmonic)", {"kind", "mass", "omega"});
        const double omega = v.contains("omega") ? number(v["omega"], "omega") : 1.0;
        return HarmonicHamiltonian{mass, omega};
    }
    if (kind == "potential") {
        require_keys(v, "hamiltonian(potential)", {"kind", "mass", "values"});
        const json& values = require(v, "values", "hamiltonian");
        if (!values.is_array() || static_cast<int>(values.size()) != g.size)
            throw ConfigurationError("hamiltonian(potential): 'values' must list one sample "
                                     "per position node");
        Eigen::VectorXd pot(g.size);
        for (int j = 0; j < g.size; ++j) pot[j] = number(values[j], "potential value");
        return SampledPotential{mass, std::move(pot)};
    }
    throw ConfigurationError("hamiltonian: unknown kind '" + kind + "'");
}

inline std::uint64_t effective_seed(const json& cfg, const CliOptions& opt) {
    if (opt.seed) return *opt.seed;
    if (cfg.contains("seed")) {
        if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
            throw ConfigurationError("config: 'seed' must be an unsigned integer");
        return cfg["seed"].get<std::uint64_t>();
    }
    return 12345;
}

}  // namespace cfg

namespace detail {

inline std::filesystem::path output_path(const CliOptions& opt, const std::string& name) {
    std::filesystem::path dir(opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + opt.out_dir + "'");
    return dir / name;
}

/// Buffered writer: nothing touches the file system until the whole
/// artifact is assembled, so failed runs leave no partial outputs.
inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << body;
    if (!out) throw IoError("stream failure while writing '" + path.string() + "'");
}

inline std::string report_header(const GridSpec& g) {
    std::ostringstream os;
    xwigner::detail::write_grid_header(os, "report", g);
    return os.str();
}

inline std::string format_complex_cells(Complex v) {
    return xwigner::detail::format_double(v.real()) + "," +
           xwigner::detail::format_double(v.imag());
}

}  // namespace detail

inline int run_wigner(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "wigner config", {"scenario", "grid", "phi", "psi", "output", "seed"});
    const GridSpec g = cfg::parse_grid(cfg::require(cfg, "grid", "wigner config"));
    std::mt19937_64 rng(cfg::effective_seed(cfg, opt));

    WaveFunction psi = cfg::parse_state(cfg::require(cfg, "psi", "wigner config"), g, rng);
    PhaseSpaceField field = cfg.contains("phi")
                                ? cross_wigner(cfg::parse_state(cfg["phi"], g, rng), psi)
                                : wigner(psi);

    const std::string name =
        cfg.contains("output") ? cfg::text(cfg["output"], "output") : "field.csv";
    std::ostringstream body;
    write_field_csv(body, field);
    const auto path = detail::output_path(opt, name);
    detail::write_text_file(path, body.str());

    const Complex total = phase_space_integral(field);
    std::cout << "wrote " << path.string() << " (label " << to_string(field.label)
              << ", integral " << total.real() << (total.imag() < 0 ? " - " : " + ")
              << std::abs(total.imag()) << "i)\n";
    return kExitOk;
}

inline int run_weakvalue(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "weakvalue config",
                      {"scenario", "grid", "phi", "psi", "observable", "methods", "output",
                       "seed"});
    const GridSpec g = cfg::parse_grid(cfg::require(cfg, "grid", "weakvalue config"));
    std::mt19937_64 rng(cfg::effective_seed(cfg, opt));

    WaveFunction phi = cfg::parse_state(cfg::require(cfg, "phi", "weakvalue config"), g, rng);
    WaveFunction psi = cfg::parse_state(cfg::require(cfg, "psi", "weakvalue config"), g, rng);
    Observable a = cfg::parse_observable(cfg::require(cfg, "observable", "weakvalue config"), g);

    bool want_quadrature = true, want_direct = true;
    if (cfg.contains("methods")) {
        const json& methods = cfg["methods"];
        if (!methods.is_array() || methods.empty())
            throw ConfigurationError("weakvalue config: 'methods' must be a nonempty array");
        want_quadrature = want_direct = false;
        for (const json& m : methods) {
            const std::string name = cfg::text(m, "methods entry");
            if (name == "quadrature")
                want_quadrature = true;
            else if (name == "direct")
                want_direct = true;
            else
                throw ConfigurationError("weakvalue config: unknown method '" + name + "'");
        }
    }

    std::vector<WeakValueReport> reports;
    if (want_quadrature) reports.push_back(weak_value_quadrature(a, phi, psi));
    if (want_direct) reports.push_back(weak_value_direct(a, phi, psi, kOverlapFloor, opt.stride));
    if (reports.size() == 2) {
        const double residual = std::abs(reports[0].value - reports[1].value);
        for (WeakValueReport& r : reports) r.residual_vs_alternate = residual;
    }

    std::ostringstream body;
    body << detail::report_header(g);
    body << "# columns=method,re_value,im_value,re_overlap,im_overlap,residual\n";
    for (const WeakValueReport& r : reports)
        body << to_string(r.method) << ',' << detail::format_complex_cells(r.value) << ','
             << detail::format_complex_cells(r.overlap) << ','
             << xwigner::detail::format_double(r.residual_vs_alternate) << "\n";

    const std::string name =
        cfg.contains("output") ? cfg::text(cfg["output"], "output") : "weakvalue.csv";
    const auto path = detail::output_path(opt, name);
    detail::write_text_file(path, body.str());

    for (const WeakValueReport& r : reports)
        std::cout << to_string(r.method) << ": value = " << r.value.real()
                  << (r.value.imag() < 0 ? " - " : " + ") << std::abs(r.value.imag())
                  << "i, |overlap| = " << std::abs(r.overlap)
                  << ", residual = " << r.residual_vs_alternate << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

inline int run_analytic(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "analytic config", {"scenario", "hbar", "z0", "z", "output"});
    const double hbar = cfg::number(cfg::require(cfg, "hbar", "analytic config"), "hbar");

    auto parse_point_n = [](const json& v, const char* ctx) {
        cfg::require_keys(v, ctx, {"x", "p"});
        const json& xs = cfg::require(v, "x", ctx);
        const json& ps = cfg::require(v, "p", ctx);
        if (!xs.is_array() || !ps.is_array() || xs.size() != ps.size() || xs.empty())
            throw ConfigurationError(std::string(ctx) +
                                     ": 'x' and 'p' must be equal-length nonempty arrays");
        Eigen::VectorXd x(xs.size()), p(ps.size());
        for (std::size_t d = 0; d < xs.size(); ++d) {
            x[d] = cfg::number(xs[d], ctx);
            p[d] = cfg::number(ps[d], ctx);
        }
        return PhaseSpacePointN(std::move(x), std::move(p));
    };

    const PhaseSpacePointN z0 = parse_point_n(cfg::require(cfg, "z0", "analytic config"), "z0");
    PhaseSpacePointN z(z0.dim());
    if (cfg.contains("z")) {
        z = parse_point_n(cfg["z"], "z");
        if (z.dim() != z0.dim())
            throw ConfigurationError("analytic config: z and z0 must share a dimension");
    }

    std::ostringstream body;
    body << "# kind=analytic\n# N=" << z0.dim() << "\n# hbar="
         << xwigner::detail::format_double(hbar) << "\n# sign_ledger=" << sign_ledger() << "\n";
    body << "# columns=quantity,component,log_magnitude,phase,re,im,overflow\n";
    auto emit = [&body](const std::string& quantity, int component, const LogComplex& v) {
        body << quantity << ',' << component << ','
             << xwigner::detail::format_double(v.log_magnitude) << ','
             << xwigner::detail::format_double(v.phase) << ',';
        if (auto val = v.value())
            body << xwigner::detail::format_double(val->real()) << ','
                 << xwigner::detail::format_double(val->imag()) << ",0\n";
        else
            body << ",,1\n";
    };

    emit("overlap_antipodal", 0, analytic::antipodal_overlap(z0, hbar));
    emit("amplification_factor", 0, analytic::amplification_factor(z0, hbar));
    emit("fiducial_wigner", 0, analytic::fiducial_wigner(z, hbar));
    emit("cross_wigner_antipodal", 0, analytic::antipodal_cross_wigner(z, z0, hbar));
    emit("rho_antipodal", 0, analytic::antipodal_rho(z, z0, hbar));
    const Eigen::VectorXcd wx = analytic::antipodal_weak_position(z0);
    const Eigen::VectorXcd wp = analytic::antipodal_weak_momentum(z0);
    for (int d = 0; d < z0.dim(); ++d) {
        const LogComplex lx{std::log(std::max(std::abs(wx[d]), 1e-300)), std::arg(wx[d])};
        const LogComplex lp{std::log(std::max(std::abs(wp[d]), 1e-300)), std::arg(wp[d])};
        emit("weak_position", d, lx);
        emit("weak_momentum", d, lp);
    }

    std::cout << body.str();
    if (cfg.contains("output")) {
        const auto path = detail::output_path(opt, cfg::text(cfg["output"], "output"));
        detail::write_text_file(path, body.str());
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

inline int run_evolve(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "evolve config",
                      {"scenario", "grid", "hamiltonian", "psi_in", "t_in", "phi_fin", "t_fin",
                       "observable", "sample_times", "output", "seed"});
    const GridSpec g = cfg::parse_grid(cfg::require(cfg, "grid", "evolve config"));
    std::mt19937_64 rng(cfg::effective_seed(cfg, opt));

    std::vector<double> times;
    const json& ts = cfg::require(cfg, "sample_times", "evolve config");
    if (!ts.is_array() || ts.empty())
        throw ConfigurationError("evolve config: 'sample_times' must be a nonempty array");
    for (const json& t : ts) times.push_back(cfg::number(t, "sample_times entry"));

    TwoStateScenario sc(
        cfg::parse_state(cfg::require(cfg, "psi_in", "evolve config"), g, rng),
        cfg::number(cfg::require(cfg, "t_in", "evolve config"), "t_in"),
        cfg::parse_state(cfg::require(cfg, "phi_fin", "evolve config"), g, rng),
        cfg::number(cfg::require(cfg, "t_fin", "evolve config"), "t_fin"),
        cfg::parse_hamiltonian(cfg::require(cfg, "hamiltonian", "evolve config"), g),
        cfg::parse_observable(cfg::require(cfg, "observable", "evolve config"), g),
        std::move(times));

    std::ostringstream body;
    body << detail::report_header(g);
    body << "# columns=t,re_value,im_value,re_overlap,im_overlap,residual\n";
    for (double t : sc.sample_times) {
        auto [phi_t, psi_t] = sc.states_at(t);
        try {
            WeakValueReport q = weak_value_quadrature(sc.observable, phi_t, psi_t);
            WeakValueReport d =
                weak_value_direct(sc.observable, phi_t, psi_t, kOverlapFloor, opt.stride);
            const double residual = std::abs(q.value - d.value);
            body << xwigner::detail::format_double(t) << ','
                 << detail::format_complex_cells(q.value) << ','
                 << detail::format_complex_cells(q.overlap) << ','
                 << xwigner::detail::format_double(residual) << "\n";
        } catch (const OrthogonalityError& e) {
            // overlap crossed zero at this time: leave a gap, never interpolate
            body << "# gap t=" << xwigner::detail::format_double(t) << " " << e.what() << "\n";
        }
    }

    const std::string name =
        cfg.contains("output") ? cfg::text(cfg["output"], "output") : "twostate.csv";
    const auto path = detail::output_path(opt, name);
    detail::write_text_file(path, body.str());
    std::cout << "wrote " << path.string() << " (" << sc.sample_times.size()
              << " sample times)\n";
    return kExitOk;
}

inline int run_reconstruct(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "reconstruct config",
                      {"scenario", "grid", "field", "psi", "phi", "gamma", "output", "seed"});
    const GridSpec g = cfg::parse_grid(cfg::require(cfg, "grid", "reconstruct config"));
    std::mt19937_64 rng(cfg::effective_seed(cfg, opt));

    WaveFunction phi = cfg::parse_state(cfg::require(cfg, "phi", "reconstruct config"), g, rng);
    WaveFunction gamma = cfg.contains("gamma") ? cfg::parse_state(cfg["gamma"], g, rng) : phi;

    std::optional<WaveFunction> reference;
    std::optional<PhaseSpaceField> field;
    if (cfg.contains("field")) {
        PhaseSpaceField f = read_field_csv(cfg::text(cfg["field"], "field"));
        if (f.grid != g)
            throw ConfigurationError("reconstruct config: field grid differs from config grid");
        field.emplace(std::move(f));
    }
    if (cfg.contains("psi")) {
        reference.emplace(cfg::parse_state(cfg["psi"], g, rng));
        if (!field) field.emplace(cross_wigner(phi, *reference));
    }
    if (!field)
        throw ConfigurationError("reconstruct config: need 'field' (a CSV path) or 'psi' "
                                 "(a state to round-trip)");

    WaveFunction rebuilt = reconstruct(ReconstructionInput(std::move(*field), phi, gamma),
                                       kOverlapFloor, opt.stride);

    std::ostringstream body;
    write_wavefunction_csv(body, rebuilt);
    const std::string name =
        cfg.contains("output") ? cfg::text(cfg["output"], "output") : "reconstructed.csv";
    const auto path = detail::output_path(opt, name);
    detail::write_text_file(path, body.str());
    std::cout << "wrote " << path.string() << "\n";

    if (reference) {
        PhaseAlignment align = phase_align(rebuilt, *reference);
        std::cout << "alignment residual vs reference: " << align.residual << "\n";
    }
    return kExitOk;
}

inline int run_compass(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "compass config",
                      {"scenario", "grid", "centers", "output", "write_pairs", "seed"});
    const GridSpec g = cfg::parse_grid(cfg::require(cfg, "grid", "compass config"));

    const json& cs = cfg::require(cfg, "centers", "compass config");
    if (!cs.is_array())
        throw ConfigurationError("compass config: 'centers' must be an array of [x, p] pairs");
    std::vector<PhaseSpacePoint> centers;
    for (const json& c : cs) centers.push_back(cfg::parse_point(c, "centers entry"));

    CompassResult result = compass_wigner(g, centers);

    std::ostringstream body;
    write_field_csv(body, result.total);
    const std::string name =
        cfg.contains("output") ? cfg::text(cfg["output"], "output") : "compass.csv";
    const auto path = detail::output_path(opt, name);
    detail::write_text_file(path, body.str());

    if (cfg.contains("write_pairs") && cfg["write_pairs"].is_boolean() &&
        cfg["write_pairs"].get<bool>()) {
        for (const CompassPair& pair : result.pairs) {
            std::ostringstream pair_body;
            write_field_csv(pair_body, pair.term);
            detail::write_text_file(
                detail::output_path(opt, "compass_pair_" + std::to_string(pair.a) + "_" +
                                             std::to_string(pair.b) + ".csv"),
                pair_body.str());
        }
    }

    const Complex total = phase_space_integral(result.total);
    const double min_real = result.total.values.real().minCoeff();
    std::cout << "wrote " << path.string() << " (" << result.pairs.size()
              << " pair terms, integral " << total.real() << ", min " << min_real << ")\n";
    return kExitOk;
}

inline int run_selftest_cmd(const json& cfg, const CliOptions& opt) {
    cfg::require_keys(cfg, "selftest config", {"scenario", "seed"});
    SelfTestReport report = run_selftest(cfg::effective_seed(cfg, opt));
    print_selftest_table(std::cout, report);
    return report.all_passed() ? kExitOk : kExitDomain;
}

/// Load the config (selftest runs without one), check the optional scenario
/// tag, dispatch, and fold every failure into the documented exit codes.
inline int run_subcommand(const std::string& name, const CliOptions& opt) {
    try {
        json cfg = json::object();
        if (!opt.config_path.empty()) {
            std::ifstream in(opt.config_path);
            if (!in) throw IoError("cannot open config '" + opt.config_path + "'");
            try {
                in >> cfg;
            } catch (const json::exception& e) {
                throw ConfigurationError("config parse: " + std::string(e.what()));
            }
        } else if (name != "selftest") {
            throw ConfigurationError(name + ": --config is required");
        }
        if (cfg.contains("scenario")) {
            const std::string tag = cfg::text(cfg["scenario"], "scenario");
            if (tag != name)
                throw ConfigurationError("config scenario '" + tag +
                                         "' does not match subcommand '" + name + "'");
        }
        if (opt.stride < 1)
            throw ConfigurationError("--stride must be at least 1");

        if (name == "wigner") return run_wigner(cfg, opt);
        if (name == "weakvalue") return run_weakvalue(cfg, opt);
        if (name == "analytic") return run_analytic(cfg, opt);
        if (name == "evolve") return run_evolve(cfg, opt);
        if (name == "reconstruct") return run_reconstruct(cfg, opt);
        if (name == "compass") return run_compass(cfg, opt);
        if (name == "selftest") return run_selftest_cmd(cfg, opt);
        throw ConfigurationError("unknown subcommand '" + name + "'");
    } catch (const ConfigurationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace xwigner::cli
