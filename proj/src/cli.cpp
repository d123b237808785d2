#include "amalgam/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "amalgam/errors.hpp"
#include "amalgam/gaussian_oracle.hpp"

namespace amalgam::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_sweeps_csv(std::ostream& out, const std::vector<SweepResult>& sweeps) {
    out << "scenario,family,engine,p,q,lambda,norm\n";
    for (const auto& s : sweeps) {
        for (const auto& pt : s.points) {
            out << s.scenario << ',' << s.family << ',' << to_string(s.engine) << ',' << s.exponents.p.to_string() << ','
                << s.exponents.q.to_string() << ',' << format_number(pt.lambda) << ',' << format_number(pt.norm) << '\n';
        }
    }
}

void emit_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts) {
    out << "scenario,measured_alpha,predicted_alpha,tolerance,r2,pass\n";
    for (const auto& v : verdicts) {
        out << v.scenario << ',' << format_number(v.measured) << ',' << format_number(v.predicted) << ','
            << format_number(v.tolerance) << ',' << format_number(v.r2) << ',' << (v.pass ? "true" : "false") << '\n';
    }
}

namespace {

std::string json_string(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            r += '\\';
            r += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            r += buf;
        } else {
            r += c;
        }
    }
    return r + "\"";
}

// Non-finite values have no JSON number form; they are written as strings.
std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : json_string(format_number(v)); }

std::string json_exponent(Exponent e) { return e.is_infinite() ? json_string("inf") : format_number(e.value()); }

} // namespace

void emit_json(std::ostream& out, const ScenarioReport& report) {
    out << "{\n  \"version\": 1,\n  \"sweeps\": [";
    bool first = true;
    for (const auto& s : report.sweeps) {
        for (const auto& pt : s.points) {
            out << (first ? "\n" : ",\n") << "    {\"scenario\": " << json_string(s.scenario)
                << ", \"family\": " << json_string(s.family) << ", \"engine\": " << json_string(to_string(s.engine))
                << ", \"p\": " << json_exponent(s.exponents.p) << ", \"q\": " << json_exponent(s.exponents.q)
                << ", \"lambda\": " << json_number(pt.lambda) << ", \"norm\": " << json_number(pt.norm) << "}";
            first = false;
        }
    }
    out << (first ? "]" : "\n  ]") << ",\n  \"verdicts\": [";
    first = true;
    for (const auto& v : report.verdicts) {
        out << (first ? "\n" : ",\n") << "    {\"scenario\": " << json_string(v.scenario)
            << ", \"measured_alpha\": " << json_number(v.measured) << ", \"predicted_alpha\": " << json_number(v.predicted)
            << ", \"tolerance\": " << json_number(v.tolerance) << ", \"r2\": " << json_number(v.r2)
            << ", \"pass\": " << (v.pass ? "true" : "false") << "}";
        first = false;
    }
    out << (first ? "]" : "\n  ]") << "\n}\n";
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParam("cannot read config file '" + path + "'");
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw InvalidParam(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

namespace {

const std::vector<std::string> kSubcommands = {"dilation", "convolution", "product", "inclusion",
                                               "schrodinger", "oracle", "norm", "equivalence"};

struct Settings {
    std::string config;
    bool print_config = false;
    bool gnuplot_hints = false;
    std::string csv, verdict_csv, json;
    int threads = 0;
    std::string engine = "oracle";
    std::optional<std::size_t> n;
    std::optional<double> dx;
    std::optional<double> lambda_min, lambda_max;
    std::optional<int> points;
    double eps = 0.05;
    double t0 = 1.0;
    double b = 0.0;
    double tol_oracle = 1e-3, tol_numeric = 0.05, tol_bound = 0.05, tol_band = 10.0;

    std::string p = "2", q = "2", p1 = "2", q1 = "2", p2 = "2", q2 = "2";
    std::string regime;
    std::string family = "gaussian";

    double a = 1.0;
    int d = 1;

    std::string space = "lp";
    std::string window;
    std::string input;
    double lambda = 1.0;

    std::string side = "both";
};

ScenarioOptions scenario_options(const Settings& s) {
    ScenarioOptions o;
    o.engine = parse_engine(s.engine);
    o.epsilon = s.eps;
    o.b = s.b;
    o.t0 = s.t0;
    o.threads = resolve_threads(s.threads);
    o.tolerances = {s.tol_oracle, s.tol_numeric, s.tol_bound, s.tol_band};
    if (s.n || s.dx) {
        if (!s.n || !s.dx) throw InvalidParam("--N and --dx must be given together");
        o.grid = Grid(1, *s.n, *s.dx);
    }
    if (s.lambda_min || s.lambda_max || s.points) {
        if (!s.lambda_min || !s.lambda_max) throw InvalidParam("--lambda-min and --lambda-max must be given together");
        if (!(*s.lambda_min > 0.0) || !(*s.lambda_max >= *s.lambda_min)) throw InvalidParam("need 0 < λ_min <= λ_max");
        const int count =
            s.points.value_or(1 + static_cast<int>(std::ceil(16.0 * std::log10(*s.lambda_max / *s.lambda_min) - 1e-9)));
        o.range = ParameterRange{*s.lambda_min, *s.lambda_max, std::max(1, count)};
    }
    return o;
}

IndexTuple tuple_of(const Settings& s) {
    return {Exponent::parse(s.p),  Exponent::parse(s.q),  Exponent::parse(s.p1),
            Exponent::parse(s.q1), Exponent::parse(s.p2), Exponent::parse(s.q2)};
}

Space parse_space(const std::string& s) {
    if (s == "lp") return Space::Lp;
    if (s == "flp") return Space::FLp;
    if (s == "wlplq" || s == "w_lp_lq") return Space::WLpLq;
    if (s == "wflplq" || s == "w_flp_lq") return Space::WFLpLq;
    if (s == "mpq") return Space::Mpq;
    throw InvalidParam("unknown space '" + s + "'");
}

Window parse_window(const std::string& s) {
    if (s == "gaussian") return Window::Gaussian;
    if (s == "box") return Window::Box;
    throw InvalidParam("unknown window '" + s + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParam("cannot write '" + path + "'");
    f << content;
    if (!f) throw InvalidParam("failed writing '" + path + "'");
}

void print_verdicts(std::ostream& out, const std::vector<Verdict>& verdicts) {
    for (const auto& v : verdicts) {
        out << (v.pass ? "PASS " : "FAIL ") << v.scenario << "  measured=" << format_number(v.measured)
            << "  predicted" << to_string(v.relation) << format_number(v.predicted)
            << "  tol=" << format_number(v.tolerance) << "  r2=" << format_number(v.r2);
        if (!v.note.empty()) out << "  (" << v.note << ")";
        out << '\n';
    }
}

void print_gnuplot_hints(std::ostream& out, const std::string& csv) {
    const std::string file = csv.empty() ? "sweeps.csv" : csv;
    out << "# log-log plot of the sweep CSV (columns: scenario,family,engine,p,q,lambda,norm)\n"
        << "set datafile separator ','\n"
        << "set logscale xy\n"
        << "set xlabel 'lambda'\n"
        << "set ylabel 'norm'\n"
        << "set key left bottom\n"
        << "plot '" << file << "' every ::1 using 6:7 with linespoints title 'norm'\n";
}

void dump_config(const CLI::App& app, const CLI::App& sub, std::ostream& out) {
    out << "scenario=" << sub.get_name() << '\n';
    for (const CLI::App* a : {&app, &sub}) {
        for (const CLI::Option* opt : a->get_options()) {
            if (opt->get_lnames().empty() || opt->get_type_size() == 0) continue;
            const std::string& name = opt->get_lnames().front();
            if (name == "config" || name == "print-config" || name == "gnuplot-hints") continue;
            std::string value = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
            if (value.empty()) continue;
            out << name << '=' << value << '\n';
        }
    }
}

// Config entries go right after the subcommand, before every command-line
// argument; with TakeLast the command line wins.
std::vector<std::string> assemble_arguments(int argc, const char* const* argv, std::vector<std::string>& notes) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    std::vector<std::pair<std::string, std::string>> entries;
    if (config_path) entries = read_config_file(*config_path);

    std::optional<std::string> sub;
    std::vector<std::string> rest;
    for (const auto& a : args) {
        if (!sub && std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end()) {
            sub = a;
        } else {
            rest.push_back(a);
        }
    }
    std::vector<std::string> out;
    for (const auto& [k, v] : entries) {
        if (k != "scenario") continue;
        if (!sub) {
            sub = v;
        } else if (*sub != v) {
            notes.push_back("config scenario '" + v + "' overridden by '" + *sub + "'");
        }
    }
    if (sub) out.push_back(*sub);
    for (const auto& [k, v] : entries) {
        if (k != "scenario") out.push_back("--" + k + "=" + v);
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Scaling experiments for Wiener amalgam and modulation space norms", "amalgam_lab"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    app.require_subcommand(1);

    app.add_option("--config", s.config, "flat key=value file; command-line flags override it");
    app.add_flag("--print-config", s.print_config, "print the resolved configuration and exit");
    app.add_flag("--gnuplot-hints", s.gnuplot_hints, "print a gnuplot recipe for the sweep CSV");
    app.add_option("--csv", s.csv, "write sweep points as CSV");
    app.add_option("--verdict-csv", s.verdict_csv, "write verdicts as CSV");
    app.add_option("--json", s.json, "write sweeps and verdicts as JSON");
    app.add_option("--threads", s.threads, "worker threads (0: hardware)")->envname(kThreadsEnv);
    app.add_option("--engine", s.engine, "oracle | numeric");
    app.add_option("--N", s.n, "grid points (power of two)");
    app.add_option("--dx", s.dx, "grid spacing");
    app.add_option("--lambda-min", s.lambda_min, "sweep start");
    app.add_option("--lambda-max", s.lambda_max, "sweep end");
    app.add_option("--points", s.points, "sweep points (default 16 per decade)");
    app.add_option("--eps", s.eps, "witness epsilon");
    app.add_option("--t0", s.t0, "evolution time for the Schrödinger λ-sweep");
    app.add_option("--tol-oracle", s.tol_oracle, "exponent tolerance, oracle engine");
    app.add_option("--tol-numeric", s.tol_numeric, "exponent tolerance, numeric engine");
    app.add_option("--tol-bound", s.tol_bound, "slack for envelope checks");
    app.add_option("--tol-band", s.tol_band, "largest admissible max/min ratio band");

    auto add_pq = [&](CLI::App* sub) {
        sub->add_option("--p", s.p, "inner exponent (1..inf, e.g. 3/2)");
        sub->add_option("--q", s.q, "outer exponent");
    };
    auto add_tuple = [&](CLI::App* sub) {
        add_pq(sub);
        sub->add_option("--p1", s.p1);
        sub->add_option("--q1", s.q1);
        sub->add_option("--p2", s.p2);
        sub->add_option("--q2", s.q2);
        sub->add_option("--regime", s.regime, "small | large (default: both)");
    };

    CLI::App* dil = app.add_subcommand("dilation", "W(Lp,Lq) norm of f(λ·): fitted exponent, sharp and weak envelopes");
    add_pq(dil);
    dil->add_option("--regime", s.regime, "small | large");
    dil->add_option("--family", s.family, "gaussian | complex_gaussian | witness_small | witness_large");
    dil->add_option("--b", s.b, "imaginary part for complex_gaussian");
    CLI::App* conv = app.add_subcommand("convolution", "Gaussian convolution exponents and index verdicts");
    add_tuple(conv);
    CLI::App* prod = app.add_subcommand("product", "Gaussian product exponents and index verdicts");
    add_tuple(prod);
    CLI::App* incl = app.add_subcommand("inclusion", "Gaussian exponents for M^{p1,q1} vs M^{p2,q2}");
    incl->add_option("--p1", s.p1);
    incl->add_option("--q1", s.q1);
    incl->add_option("--p2", s.p2);
    incl->add_option("--q2", s.q2);
    CLI::App* schro = app.add_subcommand("schrodinger", "free Schrödinger decay and sharpness exponents");
    add_pq(schro);
    CLI::App* orc = app.add_subcommand("oracle", "exact W(FLp,Lq) norm of the complex Gaussian G_(a+ib)");
    add_pq(orc);
    orc->add_option("--a", s.a);
    orc->add_option("--b", s.b);
    orc->add_option("--d", s.d);
    CLI::App* nrm = app.add_subcommand("norm", "one norm of a stored function or a Gaussian");
    add_pq(nrm);
    nrm->add_option("--space", s.space, "lp | flp | wlplq | wflplq | mpq");
    nrm->add_option("--window", s.window, "gaussian | box");
    nrm->add_option("--input", s.input, "binary sampled function");
    nrm->add_option("--family", s.family, "gaussian_phi | gaussian_u0 | complex_gaussian");
    nrm->add_option("--lambda", s.lambda);
    nrm->add_option("--b", s.b);
    CLI::App* eqv = app.add_subcommand("equivalence", "norm-equivalence bands for fixed-support families");
    eqv->add_option("--side", s.side, "time | frequency | both");
    eqv->add_option("--p", s.p);
    eqv->add_option("--q", s.q);
    for (CLI::App* sub : {dil, conv, prod, incl, schro, orc, nrm, eqv}) sub->fallthrough();

    std::vector<std::string> notes;
    std::vector<std::string> args;
    try {
        args = assemble_arguments(argc, argv, notes);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    for (const auto& n : notes) err << "note: " << n << '\n';
    std::vector<const char*> cargs{argc > 0 ? argv[0] : "amalgam_lab"};
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (s.print_config) {
        dump_config(app, *sub, out);
        return 0;
    }

    ScenarioReport report;
    try {
        const std::string name = sub->get_name();
        if (name == "oracle") {
            out << format_number(amalgam_flp_norm_exact({s.a, s.b, s.d}, Exponent::parse(s.p), Exponent::parse(s.q)))
                << '\n';
            return 0;
        }
        if (name == "norm") {
            NormSpec spec{parse_space(s.space), {Exponent::parse(s.p), Exponent::parse(s.q)}, std::nullopt};
            const bool windowed = spec.space == Space::WLpLq || spec.space == Space::WFLpLq || spec.space == Space::Mpq;
            if (windowed) spec.window = parse_window(s.window.empty() ? "gaussian" : s.window);
            if (!windowed && !s.window.empty()) throw InvalidParam("--window applies only to amalgam and modulation norms");
            double value;
            if (!s.input.empty()) {
                value = evaluate_norm(spec, read_binary(s.input));
            } else {
                SweepPlan plan;
                plan.family = parse_family(s.family);
                plan.norm = spec;
                plan.b = s.b;
                plan.engine = parse_engine(s.engine);
                plan.range = {s.lambda, s.lambda, 1};
                plan.regime = s.lambda <= 1.0 ? Regime::SmallLambda : Regime::LargeLambda;
                plan.grid = Grid(1, s.n.value_or(1024), s.dx.value_or(1.0 / 16));
                value = run_sweep(plan).front().norm;
            }
            out << format_number(value) << '\n';
            return 0;
        }

        ScenarioOptions o = scenario_options(s);
        if (name == "dilation") {
            const Family family = parse_family(s.family);
            Regime regime = Regime::SmallLambda;
            if (!s.regime.empty()) {
                regime = parse_regime(s.regime);
            } else if (family == Family::WitnessLarge) {
                regime = Regime::LargeLambda;
            }
            report = scenario_dilation(Exponent::parse(s.p), Exponent::parse(s.q), regime, family, o);
        } else if (name == "convolution" || name == "product") {
            if (!s.regime.empty() && !o.range) o.range = default_range(o.engine, parse_regime(s.regime));
            report = name == "convolution" ? scenario_convolution(tuple_of(s), o) : scenario_product(tuple_of(s), o);
        } else if (name == "inclusion") {
            report = scenario_inclusion(Exponent::parse(s.p1), Exponent::parse(s.q1), Exponent::parse(s.p2),
                                        Exponent::parse(s.q2), o);
        } else if (name == "schrodinger") {
            report = scenario_schrodinger(Exponent::parse(s.p), Exponent::parse(s.q), o);
        } else if (name == "equivalence") {
            std::vector<ExponentPair> pairs;
            if (eqv->count("--p") > 0 || eqv->count("--q") > 0) {
                pairs.push_back({Exponent::parse(s.p), Exponent::parse(s.q)});
            } else {
                for (const char* p : {"1", "2", "inf"})
                    for (const char* q : {"1", "2", "inf"}) pairs.push_back({Exponent::parse(p), Exponent::parse(q)});
            }
            if (s.side != "time" && s.side != "frequency" && s.side != "both") {
                throw InvalidParam("--side must be time, frequency or both");
            }
            if (s.side != "frequency") report.append(scenario_equivalence(CompactSide::Time, pairs, o));
            if (s.side != "time") report.append(scenario_equivalence(CompactSide::Frequency, pairs, o));
        }

        std::ostringstream sweeps_csv, verdicts_csv, json;
        if (!s.csv.empty()) emit_sweeps_csv(sweeps_csv, report.sweeps);
        if (!s.verdict_csv.empty()) emit_verdicts_csv(verdicts_csv, report.verdicts);
        if (!s.json.empty()) emit_json(json, report);
        if (!s.csv.empty()) write_file(s.csv, sweeps_csv.str());
        if (!s.verdict_csv.empty()) write_file(s.verdict_csv, verdicts_csv.str());
        if (!s.json.empty()) write_file(s.json, json.str());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    print_verdicts(out, report.verdicts);
    if (s.gnuplot_hints) print_gnuplot_hints(out, s.csv);
    return report.all_pass() ? 0 : 1;
}

} // namespace amalgam::cli
