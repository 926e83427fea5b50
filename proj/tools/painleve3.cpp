// Batch driver: reads one JSON config (file or stdin) and writes CSV/JSON tables.
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "painleve/painleve.hpp"

using namespace painleve;
using nlohmann::json;

namespace {

constexpr const char* csv_columns =
    "t_re,t_im,tau_fred_re,tau_fred_im,tau_maya_re,tau_maya_im,tau_nek_re,tau_nek_im,zeta_re,zeta_im,ode_residual,est_error";

struct RunConfig {
    cplx sigma{-0.13, 0.0};
    cplx eta{0.11, 0.0};
    double t_start = 0.05, t_stop = 0.05;
    int t_count = 1;
    bool log_spacing = false;
    std::vector<Method> methods{Method::fredholm, Method::maya, Method::nekrasov};
    Truncation truncation;
    double fd_step = 1e-3;
    double tolerance = 1e-8;
    std::string output;
    bool json_format = false;

    bool uses(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

    std::vector<double> grid() const
    {
        std::vector<double> g;
        for (int i = 0; i < t_count; ++i) {
            double f = t_count == 1 ? 0.0 : double(i) / (t_count - 1);
            if (i == t_count - 1 && t_count > 1) {
                g.push_back(t_stop);
                continue;
            }
            g.push_back(log_spacing ? std::exp(std::log(t_start) + f * (std::log(t_stop) - std::log(t_start)))
                                    : t_start + f * (t_stop - t_start));
        }
        return g;
    }
};

cplx read_cplx(const json& j, const char* name)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(std::string(name) + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

int read_int(const json& j, const char* name)
{
    if (!j.is_number_integer()) throw ValidationError(std::string(name) + ": expected an integer");
    return j.get<int>();
}

double read_real(const json& j, const char* name)
{
    if (!j.is_number()) throw ValidationError(std::string(name) + ": expected a number");
    return j.get<double>();
}

RunConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    static const std::set<std::string> known{"sigma",         "eta",           "t_grid",  "method",    "N_modes",
                                             "weight_cutoff", "charge_cutoff", "fd_step", "tolerance", "output",
                                             "format"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ValidationError("config: unknown field '" + key + "'");

    RunConfig c;
    if (j.contains("sigma")) c.sigma = read_cplx(j["sigma"], "sigma");
    if (j.contains("eta")) c.eta = read_cplx(j["eta"], "eta");
    if (j.contains("t_grid")) {
        const json& g = j["t_grid"];
        if (!g.is_object()) throw ValidationError("t_grid: expected an object");
        for (const auto& [key, value] : g.items())
            if (key != "start" && key != "stop" && key != "count" && key != "spacing")
                throw ValidationError("t_grid: unknown field '" + key + "'");
        if (g.contains("start")) c.t_start = read_real(g["start"], "t_grid.start");
        c.t_stop = g.contains("stop") ? read_real(g["stop"], "t_grid.stop") : c.t_start;
        if (g.contains("count")) c.t_count = read_int(g["count"], "t_grid.count");
        if (g.contains("spacing")) {
            std::string s = g["spacing"].is_string() ? g["spacing"].get<std::string>() : "";
            if (s != "linear" && s != "log") throw ValidationError("t_grid.spacing: expected \"linear\" or \"log\"");
            c.log_spacing = s == "log";
        }
    }
    if (j.contains("method")) {
        std::string m = j["method"].is_string() ? j["method"].get<std::string>() : "";
        if (m == "fredholm") c.methods = {Method::fredholm};
        else if (m == "maya") c.methods = {Method::maya};
        else if (m == "nekrasov") c.methods = {Method::nekrasov};
        else if (m != "all") throw ValidationError("method: expected fredholm, maya, nekrasov or all");
    }
    if (j.contains("N_modes")) c.truncation.modes = read_int(j["N_modes"], "N_modes");
    if (j.contains("weight_cutoff")) c.truncation.weight_cutoff = read_int(j["weight_cutoff"], "weight_cutoff");
    if (j.contains("charge_cutoff")) c.truncation.charge_cutoff = read_int(j["charge_cutoff"], "charge_cutoff");
    if (j.contains("fd_step")) c.fd_step = read_real(j["fd_step"], "fd_step");
    if (j.contains("tolerance")) c.tolerance = read_real(j["tolerance"], "tolerance");
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ValidationError("output: expected a path string");
        c.output = j["output"].get<std::string>();
    }
    if (j.contains("format")) {
        std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
        if (f != "csv" && f != "json") throw ValidationError("format: expected \"csv\" or \"json\"");
        c.json_format = f == "json";
    }

    if (c.t_count < 1) throw ValidationError("t_grid.count: must be >= 1");
    if (!(c.t_start > 0) || !(c.t_stop > 0))
        throw ValidationError(std::string("t_grid: start > 0 and stop > 0 required") + (c.log_spacing ? " for log spacing" : ""));
    if (c.truncation.modes < 0 || c.truncation.modes > 64) throw ValidationError("N_modes: must be in [0, 64]");
    if (c.truncation.weight_cutoff < 0) throw ValidationError("weight_cutoff: must be >= 0");
    if (c.truncation.charge_cutoff < 0) throw ValidationError("charge_cutoff: must be >= 0");
    if (!(c.fd_step > 0)) throw ValidationError("fd_step: must be > 0");
    if (!(c.tolerance > 0)) throw ValidationError("tolerance: must be > 0");
    MonodromyParams check(c.sigma, c.eta);  // throws on the half-integer lattice
    (void)check;
    return c;
}

std::string num(double x)
{
    if (x == 0) x = 0.0;  // no "-0" in the output
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

// A plain table; the CSV form is the header followed by one line per row.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::variant<double, std::string>>> rows;

    void csv(std::ostream& os) const
    {
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) os << ",";
                if (auto d = std::get_if<double>(&r[i])) os << num(*d);
                else os << std::get<std::string>(r[i]);
            }
            os << "\n";
        }
    }

    json records() const
    {
        json arr = json::array();
        for (const auto& r : rows) {
            json rec{{"schema", 1}};
            for (size_t i = 0; i < r.size(); ++i) {
                if (auto d = std::get_if<double>(&r[i])) rec[header[i]] = *d;
                else rec[header[i]] = std::get<std::string>(r[i]);
            }
            arr.push_back(rec);
        }
        return arr;
    }
};

void emit(const RunConfig& c, const std::string& text)
{
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output);
    if (!f) throw ValidationError("output: cannot open '" + c.output + "' for writing");
    f << text;
}

void emit_tables(const RunConfig& c, const std::vector<Table>& tables)
{
    std::ostringstream os;
    if (c.json_format) {
        if (tables.size() == 1) {
            os << tables[0].records().dump(2) << "\n";
        } else {
            json doc{{"schema", 1}};
            for (const auto& t : tables) doc[t.name] = t.records();
            os << doc.dump(2) << "\n";
        }
    } else {
        for (size_t i = 0; i < tables.size(); ++i) {
            if (i) os << "\n";
            tables[i].csv(os);
        }
    }
    emit(c, os.str());
}

// ---------------------------------------------------------------------------
// tau

struct PointResult {
    double t = 0;
    std::optional<TauValue> fred, maya, nek;
    Method zeta_method = Method::maya;
    cplx zeta;
    double ode_residual = 0;
    double est_error = 0;
    std::vector<std::string> warnings;
};

PointResult evaluate_point(const RunConfig& c, const MonodromyParams& p, double t)
{
    PointResult r;
    r.t = t;
    for (Method m : c.methods) {
        TauValue v = tau(t, p, m, c.truncation);
        r.est_error = std::max(r.est_error, v.est_error);
        for (auto& w : v.warnings)
            if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) r.warnings.push_back(w);
        if (v.est_error > c.tolerance * std::max(1.0, std::abs(v.tau)))
            r.warnings.push_back(std::string(method_name(m)) + ": est_error " + num(v.est_error) + " exceeds tolerance");
        (m == Method::fredholm ? r.fred : m == Method::maya ? r.maya : r.nek) = v;
    }
    for (Method m : {Method::maya, Method::nekrasov, Method::fredholm})
        if (c.uses(m)) {
            r.zeta_method = m;
            break;
        }
    double h = c.fd_step;
    if (h >= t / 4) {
        h = t / 8;
        r.warnings.push_back("fd_step reduced to t/8 = " + num(h));
    }
    ZetaJet j = zeta_jet(t, p, r.zeta_method, c.truncation, h);
    r.zeta = j.zeta;
    r.ode_residual = sigma_form_residual(j, t);
    if (!is_finite(r.zeta) || !std::isfinite(r.ode_residual)) throw NumericalError("zeta: non-finite value");
    return r;
}

// Evaluates f on every grid point in parallel; results keep grid order and the
// first failure in grid order is rethrown.
template <class R, class F>
std::vector<R> parallel_map(const std::vector<double>& grid, F f)
{
    std::vector<std::optional<R>> out(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < grid.size();) {
            try {
                out[i] = f(grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    size_t n = std::min<size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> threads;
    for (size_t k = 1; k < n; ++k) threads.emplace_back(work);
    work();
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> res;
    for (auto& o : out) res.push_back(std::move(*o));
    return res;
}

int run_tau(const RunConfig& c)
{
    MonodromyParams p(c.sigma, c.eta);
    auto results = parallel_map<PointResult>(c.grid(), [&](double t) { return evaluate_point(c, p, t); });
    for (const auto& r : results)
        for (const auto& w : r.warnings) std::cerr << "warning: t=" << num(r.t) << ": " << w << "\n";

    std::ostringstream os;
    if (c.json_format) {
        json arr = json::array();
        for (const auto& r : results) {
            json taus = json::object();
            if (r.fred) taus["fredholm"] = cplx_json(r.fred->tau);
            if (r.maya) taus["maya"] = cplx_json(r.maya->tau);
            if (r.nek) taus["nekrasov"] = cplx_json(r.nek->tau);
            arr.push_back({{"schema", 1},
                           {"t", cplx_json(r.t)},
                           {"tau", taus},
                           {"zeta", cplx_json(r.zeta)},
                           {"zeta_method", method_name(r.zeta_method)},
                           {"ode_residual", r.ode_residual},
                           {"est_error", r.est_error},
                           {"truncation",
                            {{"N_modes", c.truncation.modes},
                             {"weight_cutoff", c.truncation.weight_cutoff},
                             {"charge_cutoff", c.truncation.charge_cutoff}}},
                           {"warnings", r.warnings}});
        }
        os << arr.dump(2) << "\n";
    } else {
        os << csv_columns << "\n";
        auto pair = [](const std::optional<TauValue>& v) {
            return v ? num(v->tau.real()) + "," + num(v->tau.imag()) : std::string(",");
        };
        for (const auto& r : results)
            os << num(r.t) << ",0," << pair(r.fred) << "," << pair(r.maya) << "," << pair(r.nek) << ","
               << num(r.zeta.real()) << "," << num(r.zeta.imag()) << "," << num(r.ode_residual) << ","
               << num(r.est_error) << "\n";
    }
    emit(c, os.str());
    return 0;
}

// ---------------------------------------------------------------------------
// check

int run_check(const RunConfig& c)
{
    MonodromyParams p(c.sigma, c.eta);
    Table tab{"checks", {"check", "t", "value", "threshold", "status"}, {}};
    bool all = true;
    auto add = [&](const std::string& name, double t, double value, double threshold) {
        bool ok = value <= threshold;
        all = all && ok;
        tab.rows.push_back({name, t, value, threshold, std::string(ok ? "PASS" : "FAIL")});
    };

    MonodromyCheck mc = check_monodromy(p);
    add("monodromy_relations", 0, mc.worst(), 1e-10);
    add("rank_one_identity", 0, rank_one_residual(p, 8).worst(), 1e-10);
    FactorizationReport lr = check_factorization_identities(p.nu(), 4, 2);
    add("z_bif_tilde_modulus", 0, lr.tilde_modulus_error, 1e-10);
    add("xi_delta_factorization", 0, lr.xi_delta_error, 1e-10);
    add("quasi_periodicity", 0, quasi_periodicity_term_defect(p.nu(), p.eta(), c.truncation.series()), 1e-11);

    auto reports = parallel_map<std::pair<CrossValidationReport, double>>(c.grid(), [&](double t) {
        double h = std::min(c.fd_step, t / 8);
        return std::make_pair(cross_validate(t, p, c.truncation),
                              ode_residual(t, p, Method::maya, c.truncation, h, DiffScheme::analytic));
    });
    for (const auto& [r, ode] : reports) {
        double t = r.t.real();
        if (r.near_resonant)
            std::cerr << "warning: t=" << num(t) << ": 2 nu is close to an integer; route agreement not judged\n";
        else
            add("route_agreement", t, r.max_pairwise(), std::max(c.tolerance, 10.0 * r.max_relative_est()));
        add("quadrature_a", t, r.quadrature_a, 1e-10);
        add("quadrature_d", t, r.quadrature_d, 1e-10);
        add("eta_periodicity", t, r.eta_periodicity, 1e-12);
        add("sigma_form_residual", t, ode, 1e-6);
    }
    std::ostringstream os;
    if (c.json_format) {
        os << tab.records().dump(2) << "\n";
    } else {
        tab.csv(os);
    }
    emit(c, os.str());
    std::cerr << (all ? "all checks passed" : "some checks failed") << "\n";
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// series, modes, convergence

int run_series(const RunConfig& c)
{
    MonodromyParams p(c.sigma, c.eta);
    Table tab{"series", {"route", "sector", "weight", "exponent_re", "exponent_im", "coeff_re", "coeff_im"}, {}};
    auto add = [&](const char* route, const PowerSeries& s) {
        for (const auto& t : s.terms())
            tab.rows.push_back({std::string(route), double(t.sector), double(t.weight), t.exponent.real(),
                                t.exponent.imag(), t.coefficient.real(), t.coefficient.imag()});
    };
    if (c.uses(Method::maya)) add("maya", maya_series(p.nu(), p.eta(), c.truncation.series()).aggregated());
    if (c.uses(Method::nekrasov)) add("nekrasov", z_dual_series(p.nu(), p.eta(), c.truncation.series()));
    if (tab.rows.empty()) throw ValidationError("method: series needs maya, nekrasov or all");
    emit_tables(c, {tab});
    return 0;
}

int run_modes(const RunConfig& c)
{
    MonodromyParams p(c.sigma, c.eta);
    int N = c.truncation.modes;
    cplx t = c.t_start;
    MatrixX A = mode_matrix_a(p, N), D = mode_matrix_d(p, t, N);
    ContinuousKernel ka{KernelKind::a, p, 0.0}, kd{KernelKind::d, p, t};
    MatrixX Aq = modes_by_quadrature(ka, N, default_radius(ka)), Dq = modes_by_quadrature(kd, N, default_radius(kd));
    Table entries{"entries", {"matrix", "row_p", "row_s", "col_p", "col_s", "re", "im", "quadrature_re", "quadrature_im"}, {}};
    auto add = [&](const char* name, const MatrixX& M, const MatrixX& Q) {
        for (int r = 0; r < M.rows(); ++r)
            for (int k = 0; k < M.cols(); ++k) {
                ModeIndex a = mode_index(r), b = mode_index(k);
                entries.rows.push_back({std::string(name), a.p(), double(a.s), b.p(), double(b.s), M(r, k).real(),
                                        M(r, k).imag(), Q(r, k).real(), Q(r, k).imag()});
            }
    };
    add("a", A, Aq);
    add("d", D, Dq);
    Table summary{"summary", {"t", "N", "quadrature_max_diff_a", "quadrature_max_diff_d", "det", "det_block_diff"}, {}};
    ModeMatrices mm{A, D, N};
    cplx det = fredholm_det(mm);
    summary.rows.push_back({t.real(), double(N), N ? max_entry_diff(A, Aq) : 0.0, N ? max_entry_diff(D, Dq) : 0.0,
                            num(det.real()) + (det.imag() < 0 ? "" : "+") + num(det.imag()) + "i",
                            std::abs(det - fredholm_det_block(mm))});
    emit_tables(c, {summary, entries});
    return 0;
}

int run_convergence(const RunConfig& c)
{
    MonodromyParams p(c.sigma, c.eta);
    cplx t = c.t_start;
    Table nstudy{"N_study", {"N", "det_re", "det_im", "abs_change"}, {}};
    int Nmax = std::max(c.truncation.modes, 16);
    cplx prev = 1.0;
    for (int N = 1; N <= Nmax; ++N) {
        cplx d = FredholmTau(p, N)(t);
        nstudy.rows.push_back({double(N), d.real(), d.imag(), std::abs(d - prev)});
        prev = d;
    }
    Table wstudy{"W_study", {"W", "Qmax", "maya_re", "maya_im", "nek_re", "nek_im", "abs_change"}, {}};
    prev = 1.0;
    for (int W = 0; W <= c.truncation.weight_cutoff + 4; ++W) {
        SeriesTruncation tr{W, c.truncation.charge_cutoff};
        cplx m = maya_series(p.nu(), p.eta(), tr)(t), n = z_dual(t, p.nu(), p.eta(), tr);
        wstudy.rows.push_back({double(W), double(tr.charge_cutoff), m.real(), m.imag(), n.real(), n.imag(), std::abs(m - prev)});
        prev = m;
    }
    emit_tables(c, {nstudy, wstudy});
    return 0;
}

json read_config_json(const std::string& path)
{
    try {
        if (path.empty() || path == "-") return json::parse(std::cin);
        std::ifstream f(path);
        if (!f) throw ValidationError("config: cannot open '" + path + "'");
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Painleve III (D8) tau function: Fredholm determinant, Maya-diagram and Nekrasov routes"};
    app.footer(std::string("Config is one JSON object (file via --config, else stdin) with fields sigma, eta, t_grid "
                           "{start, stop, count, spacing}, method, N_modes, weight_cutoff, charge_cutoff, fd_step, "
                           "tolerance, output, format.\n`tau` CSV columns: ") +
               csv_columns +
               "\nUnselected methods leave their columns empty. Exit codes: 0 ok, 1 failed checks, 2 invalid input, "
               "3 numerical failure.");
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON config file ('-' or omitted: stdin)");
    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const Sub subs[] = {
        {"tau", "evaluate tau, zeta and the sigma-form residual on the t grid", run_tau},
        {"check", "run the invariant and identity suite", run_check},
        {"series", "list series terms (exponent, coefficient) of the maya and nekrasov routes", run_series},
        {"modes", "mode matrices at t = t_grid.start against quadrature of the kernels", run_modes},
        {"convergence", "N and W refinement at t = t_grid.start", run_convergence},
    };
    for (const auto& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = parse_config(read_config_json(config_path));
        for (const auto& s : subs)
            if (app.got_subcommand(s.name)) return s.run(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
