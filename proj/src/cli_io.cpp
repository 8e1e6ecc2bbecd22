#include "airydet/cli_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "airydet/detasym.hpp"
#include "airydet/kernels.hpp"
#include "airydet/rmt_mc.hpp"

namespace airydet::cli_io {

using nlohmann::ordered_json;
using operator_disc::SymbolFunction;

// ------------------------------------------------------------- symbols

SymbolSpec parse_symbol_spec(const std::string& text) {
    SymbolSpec spec;
    std::string params;
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        spec.family = text;
    } else {
        spec.family = text.substr(0, colon);
        params = text.substr(colon + 1);
    }
    if (spec.family != "gauss" && spec.family != "zero") {
        throw std::invalid_argument("unknown symbol family: " + spec.family);
    }
    std::stringstream ss(params);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("symbol parameter needs key=value: " +
                                        kv);
        }
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad numeric value in symbol spec: " +
                                        kv);
        }
        if (key == "t") {
            spec.t = value;
        } else if (key == "shift") {
            spec.shift = value;
        } else {
            throw std::invalid_argument("unknown symbol parameter: " + key);
        }
    }
    return spec;
}

SymbolFunction make_symbol(const SymbolSpec& spec) {
    if (spec.family == "gauss") {
        return operator_disc::gaussian_symbol(spec.t, spec.shift);
    }
    if (spec.family == "zero") return operator_disc::zero_symbol();
    throw std::invalid_argument("unknown symbol family: " + spec.family);
}

// ---------------------------------------------------------------- hash

namespace {

struct Fnv1a {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64(double v) {
        std::uint64_t u;
        std::memcpy(&u, &v, sizeof u);
        u64(u);
    }
    void str(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    void fvec(const std::vector<double>& v) {
        u64(v.size());
        for (double x : v) f64(x);
    }
};

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_join(const std::vector<double>& vals) {
    std::string row;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) row += ',';
        row += fmt17(vals[i]);
    }
    return row;
}

}  // namespace

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    Fnv1a f;
    f.str(cfg.command);
    f.str(cfg.symbol.family);
    f.f64(cfg.symbol.t);
    f.f64(cfg.symbol.shift);
    const std::string& c = cfg.command;
    // only fields the command's outputs actually depend on enter the hash
    if (c == "det" || c == "asymptotics" || c == "mc-gue" || c == "char-fn") {
        f.fvec(cfg.alpha);
    }
    if (c == "det" || c == "kernel-check") {
        f.u64(cfg.nodes);
        f.u64(cfg.has_window ? 1 : 0);
        if (cfg.has_window) {
            f.f64(cfg.window.a);
            f.f64(cfg.window.b);
        }
    }
    if (c == "mc-gue") {
        f.u64(cfg.n_matrix);
        f.u64(cfg.n_samples);
        f.u64(cfg.seed);
    }
    if (c == "char-fn") f.fvec(cfg.s_values);
    return f.h;
}

// ------------------------------------------------------------- commands

namespace {

ordered_json input_echo(const ExperimentConfig& cfg) {
    ordered_json in;
    in["symbol"] = ordered_json{{"family", cfg.symbol.family},
                                {"t", cfg.symbol.t},
                                {"shift", cfg.symbol.shift}};
    in["alpha"] = cfg.alpha;
    in["n_matrix"] = cfg.n_matrix;
    in["n_samples"] = cfg.n_samples;
    in["seed"] = cfg.seed;
    in["nodes"] = cfg.nodes;
    if (cfg.has_window) {
        in["window"] = ordered_json::array({cfg.window.a, cfg.window.b});
    } else {
        in["window"] = nullptr;
    }
    in["s_values"] = cfg.s_values;
    in["format"] = cfg.format;
    return in;
}

operator_disc::QuadratureGrid det_grid(const SymbolFunction& f, double alpha,
                                       const ExperimentConfig& cfg) {
    if (!cfg.has_window && cfg.nodes == 0) {
        return operator_disc::default_airy_grid(f, alpha);
    }
    operator_disc::Interval win =
        cfg.has_window
            ? cfg.window
            : operator_disc::Interval{-(alpha * f.decay_scale + 10.0), 8.0};
    std::size_t n =
        cfg.nodes > 0 ? cfg.nodes : operator_disc::default_node_count(win);
    return operator_disc::build_grid(win, n,
                                     operator_disc::Rule::composite_gl);
}

void require_alpha(const ExperimentConfig& cfg) {
    if (cfg.alpha.empty()) {
        throw std::invalid_argument(cfg.command + ": --alpha required");
    }
}

void cmd_det(const ExperimentConfig& cfg, const SymbolFunction& f,
             ResultRecord& rec, ordered_json& outputs, ordered_json& errs) {
    require_alpha(cfg);
    auto consts = detasym::asymptotic_constants(f);
    outputs["c1"] = consts.c1;
    outputs["c2"] = consts.c2;
    ordered_json rows = ordered_json::array();
    rec.csv_header = "alpha,log_det,predicted,residual";
    for (double a : cfg.alpha) {
        auto grid = det_grid(f, a, cfg);
        auto op = operator_disc::discretize_airy_operator(f, a, grid);
        double ld = detasym::log_det(op);
        double pred = consts.c1 * std::pow(a, 1.5) + consts.c2;
        double res = ld - pred;
        ordered_json row;
        row["alpha"] = a;
        row["n_nodes"] = grid.nodes.size();
        row["log_det"] = ld;
        row["predicted"] = pred;
        row["residual"] = res;
        rows.push_back(row);
        rec.csv_rows.push_back(csv_join({a, ld, pred, res}));
    }
    outputs["rows"] = rows;
    errs["constants_quad"] = consts.quad_error_est;
}

void cmd_asymptotics(const ExperimentConfig& cfg, const SymbolFunction& f,
                     ResultRecord& rec, ordered_json& outputs,
                     ordered_json& errs) {
    auto consts = detasym::asymptotic_constants(f);
    outputs["c1"] = consts.c1;
    outputs["c2"] = consts.c2;
    outputs["variance"] = consts.variance;
    ordered_json preds = ordered_json::array();
    for (double a : cfg.alpha) {
        ordered_json row;
        row["alpha"] = a;
        row["log_det"] = consts.c1 * std::pow(a, 1.5) + consts.c2;
        preds.push_back(row);
    }
    outputs["predicted"] = preds;
    errs["constants_quad"] = consts.quad_error_est;
    rec.csv_header = "c1,c2,variance,quad_error_est";
    rec.csv_rows.push_back(csv_join(
        {consts.c1, consts.c2, consts.variance, consts.quad_error_est}));
}

void cmd_wh_compare(const ExperimentConfig& cfg, const SymbolFunction& f,
                    ResultRecord& rec, ordered_json& outputs,
                    ordered_json& errs) {
    (void)cfg;
    double c2f = detasym::compute_c2(f);
    auto wh = detasym::wiener_hopf_c2_check(f);
    double diff = std::abs(c2f - wh.value);
    outputs["c2_fourier"] = c2f;
    outputs["c2_operator"] = wh.value;
    outputs["c2_operator_half"] = wh.value_half;
    outputs["abs_diff"] = diff;
    errs["wh_interval_conv"] = wh.conv_est;
    rec.csv_header = "c2_fourier,c2_operator,abs_diff,conv_est";
    rec.csv_rows.push_back(csv_join({c2f, wh.value, diff, wh.conv_est}));
}

void cmd_mc_gue(const ExperimentConfig& cfg, const SymbolFunction& f,
                ResultRecord& rec, ordered_json& outputs, ordered_json& errs) {
    require_alpha(cfg);
    ordered_json rows = ordered_json::array();
    rec.csv_header =
        "alpha,mean,variance,skewness,excess_kurtosis,std_err_mean,"
        "predicted_mean,predicted_variance";
    double max_se = 0.0;
    for (double a : cfg.alpha) {
        auto m = rmt_mc::run_mc(f, a, cfg.n_matrix, cfg.n_samples, cfg.seed);
        ordered_json row;
        row["alpha"] = a;
        row["mean"] = m.mean;
        row["variance"] = m.variance;
        row["skewness"] = m.skewness;
        row["excess_kurtosis"] = m.excess_kurtosis;
        row["std_err_mean"] = m.std_err_mean;
        row["predicted_mean"] = m.predicted_mean;
        row["predicted_variance"] = m.predicted_variance;
        row["mean_z"] = m.std_err_mean > 0.0
                            ? (m.mean - m.predicted_mean) / m.std_err_mean
                            : 0.0;
        rows.push_back(row);
        rec.csv_rows.push_back(
            csv_join({a, m.mean, m.variance, m.skewness, m.excess_kurtosis,
                      m.std_err_mean, m.predicted_mean, m.predicted_variance}));
        max_se = std::max(max_se, m.std_err_mean);
    }
    outputs["rows"] = rows;
    errs["max_std_err_mean"] = max_se;
}

void cmd_kernel_check(const ExperimentConfig& cfg, ResultRecord& rec,
                      ordered_json& outputs, ordered_json& errs) {
    double lo = -6.0, hi = 6.0;
    if (cfg.has_window) {
        lo = cfg.window.a;
        hi = cfg.window.b;
    }
    std::size_t nn = cfg.nodes > 0 ? cfg.nodes : 2000;
    double z_max = 40.0 + std::max(0.0, -lo);
    const std::size_t g = 20;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / (g - 1);
        for (std::size_t j = 0; j < g; ++j) {
            double y = lo + (hi - lo) * static_cast<double>(j) / (g - 1);
            double closed = kernels::airy_kernel(x, y).value;
            double integ = kernels::airy_kernel_integral_check(x, y, z_max, nn);
            max_diff = std::max(max_diff, std::abs(closed - integ));
        }
    }
    outputs["grid_n"] = g;
    outputs["window"] = ordered_json::array({lo, hi});
    outputs["z_max"] = z_max;
    outputs["n_nodes"] = nn;
    outputs["max_abs_diff"] = max_diff;
    errs["kernel_identity"] = max_diff;
    rec.csv_header = "grid_n,lo,hi,z_max,n_nodes,max_abs_diff";
    rec.csv_rows.push_back(csv_join({static_cast<double>(g), lo, hi, z_max,
                                     static_cast<double>(nn), max_diff}));
}

void cmd_char_fn(const ExperimentConfig& cfg, const SymbolFunction& f,
                 ResultRecord& rec, ordered_json& outputs,
                 ordered_json& errs) {
    require_alpha(cfg);
    if (cfg.s_values.empty()) {
        throw std::invalid_argument("char-fn: --s-values must be nonempty");
    }
    ordered_json rows = ordered_json::array();
    rec.csv_header = "alpha,s,log_phi_re,log_phi_im,gauss_re,gauss_im,abs_diff";
    double sigma2 = detasym::variance_integral(f);
    double mean_unit = detasym::mean_integral(f);
    double max_gap = 0.0;
    for (double a : cfg.alpha) {
        double mu = std::pow(a, 1.5) * mean_unit;
        for (double s : cfg.s_values) {
            auto lp = rmt_mc::char_function_log_det(f, s, a);
            std::complex<double> gauss(-0.5 * s * s * sigma2, s * mu);
            double gap = std::abs(lp - gauss);
            ordered_json row;
            row["alpha"] = a;
            row["s"] = s;
            row["log_phi_re"] = lp.real();
            row["log_phi_im"] = lp.imag();
            row["gauss_re"] = gauss.real();
            row["gauss_im"] = gauss.imag();
            row["abs_diff"] = gap;
            rows.push_back(row);
            rec.csv_rows.push_back(csv_join({a, s, lp.real(), lp.imag(),
                                             gauss.real(), gauss.imag(),
                                             gap}));
            max_gap = std::max(max_gap, gap);
        }
    }
    outputs["rows"] = rows;
    errs["max_gauss_gap"] = max_gap;
}

}  // namespace

ResultRecord run_command(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ResultRecord rec;
    ordered_json& doc = rec.doc;
    doc["command"] = cfg.command;
    doc["version"] = VERSION;
    doc["config_hash"] = hash_hex(config_hash(cfg));
    doc["inputs"] = input_echo(cfg);
    ordered_json outputs = ordered_json::object();
    ordered_json errs = ordered_json::object();

    if (cfg.command == "kernel-check") {
        cmd_kernel_check(cfg, rec, outputs, errs);
    } else {
        SymbolFunction f = make_symbol(cfg.symbol);
        if (cfg.command == "det") {
            cmd_det(cfg, f, rec, outputs, errs);
        } else if (cfg.command == "asymptotics") {
            cmd_asymptotics(cfg, f, rec, outputs, errs);
        } else if (cfg.command == "wh-compare") {
            cmd_wh_compare(cfg, f, rec, outputs, errs);
        } else if (cfg.command == "mc-gue") {
            cmd_mc_gue(cfg, f, rec, outputs, errs);
        } else if (cfg.command == "char-fn") {
            cmd_char_fn(cfg, f, rec, outputs, errs);
        } else {
            throw std::invalid_argument("unknown command: " + cfg.command);
        }
    }

    doc["outputs"] = outputs;
    doc["error_estimates"] = errs;
    auto t1 = std::chrono::steady_clock::now();
    doc["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

// ------------------------------------------------------------------ io

std::string render_json(const ResultRecord& rec) {
    return rec.doc.dump(2) + "\n";
}

std::string render_csv(const ResultRecord& rec) {
    std::string out = rec.csv_header + "\n";
    for (const auto& r : rec.csv_rows) {
        out += r;
        out += '\n';
    }
    return out;
}

void write_output(const ResultRecord& rec, const std::string& out_path,
                  const std::string& format) {
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("format must be json or csv");
    }
    std::string text = format == "json" ? render_json(rec) : render_csv(rec);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        throw std::invalid_argument("cannot open output path: " + out_path);
    }
    os << text;
    if (!os) {
        throw std::invalid_argument("failed writing output: " + out_path);
    }
}

nlohmann::ordered_json load_record(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::invalid_argument("cannot open record: " + path);
    }
    return nlohmann::ordered_json::parse(is);
}

// ----------------------------------------------------------------- cli

std::optional<ExperimentConfig> parse_command_line(
    const std::vector<std::string>& args) {
    ExperimentConfig cfg;
    std::string symbol_text = "gauss:t=0.25";
    std::vector<double> window_vec;

    CLI::App app{
        "Fredholm determinants of Airy-kernel operators, their "
        "large-alpha asymptotics, and GUE edge statistics"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* desc;
        bool needs_alpha;
    };
    const Sub subs[] = {
        {"det", "log det(I + A_alpha(f)) over an alpha sweep", true},
        {"asymptotics", "asymptotic constants c1, c2 and the variance",
         false},
        {"wh-compare",
         "c2 cross-check: Fourier formula vs Wiener-Hopf trace", false},
        {"mc-gue", "GUE Monte Carlo for the edge linear statistic", true},
        {"kernel-check",
         "Airy kernel: closed form vs integral representation", false},
        {"char-fn",
         "characteristic function det(I + A_alpha(e^{isf}-1)) vs its "
         "Gaussian limit",
         true},
    };
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.desc);
        sub->add_option("--symbol", symbol_text,
                        "symbol spec, e.g. gauss:t=0.25,shift=1")
            ->required();
        auto* alpha =
            sub->add_option("--alpha", cfg.alpha,
                            "comma-separated scaling parameters, e.g. 4,8,16")
                ->delimiter(',');
        if (s.needs_alpha) alpha->required();
        sub->add_option("--n-matrix", cfg.n_matrix,
                        "GUE matrix size (mc-gue)");
        sub->add_option("--n-samples", cfg.n_samples,
                        "Monte Carlo draws (mc-gue)");
        sub->add_option("--seed", cfg.seed, "RNG seed (mc-gue)");
        sub->add_option("--nodes", cfg.nodes,
                        "quadrature node count override");
        sub->add_option("--window", window_vec,
                        "quadrature window a,b (det, kernel-check)")
            ->delimiter(',')
            ->expected(2);
        sub->add_option("--s-values", cfg.s_values,
                        "char-fn evaluation points, comma-separated")
            ->delimiter(',');
        sub->add_option("--out", cfg.out, "output path ('-' for stdout)")
            ->required();
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }

    std::vector<const char*> argv;
    argv.push_back("airydet");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.symbol = parse_symbol_spec(symbol_text);
    if (!window_vec.empty()) {
        if (!(window_vec[0] < window_vec[1])) {
            throw std::invalid_argument("--window needs a < b");
        }
        cfg.has_window = true;
        cfg.window = {window_vec[0], window_vec[1]};
    }
    for (double a : cfg.alpha) {
        if (!(a > 0.0)) {
            throw std::invalid_argument("--alpha values must be positive");
        }
    }
    if (cfg.n_matrix < 2) {
        throw std::invalid_argument("--n-matrix must be at least 2");
    }
    if (cfg.n_samples < 1) {
        throw std::invalid_argument("--n-samples must be at least 1");
    }
    return cfg;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const detasym::numeric_error*>(&e)) return 3;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
    if (dynamic_cast<const std::domain_error*>(&e)) return 2;
    return 1;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        auto cfg = parse_command_line(args);
        if (!cfg) return 0;
        ResultRecord rec = run_command(*cfg);
        write_output(rec, cfg->out, cfg->format);
        return 0;
    } catch (const std::exception& e) {
        int code = exit_code_for(e);
        std::cerr << (code == 3 ? "numeric error: " : "error: ") << e.what()
                  << "\n";
        return code;
    }
}

}  // namespace airydet::cli_io
