// Command-line front end: evaluation, constants, randomized bound
// verification, multinomial-identity checking, and table emission with
// machine-readable (json/csv/plain) output.
//
// Exit codes: 0 success / bound holds; 1 bound or identity violated;
// 2 usage or parameter error; 3 numerical failure (overflow, convergence,
// budget, or pervasive trial errors in verify).

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mittag/identity.hpp"
#include "mittag/mittag.hpp"

namespace {

struct RunConfig {
    double tolerance = 1e-12;
    int k_max_classic = 10000;
    int k_max_multinomial = 500;
    std::uint64_t composition_budget = 100'000'000;
    std::uint64_t seed = 0;
    std::string format = "plain";
};

mittag::EvalConfig eval_config(const RunConfig& rc) {
    return mittag::EvalConfig{rc.k_max_classic, rc.k_max_multinomial, rc.composition_budget};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += fmt(xs[i]);
    }
    return out;
}

std::string json_array(const std::vector<double>& xs) { return "[" + fmt_list(xs, ",") + "]"; }

void apply_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw mittag::domain_error("config: cannot open '" + path + "'");
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw mittag::domain_error("config: expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "tolerance") {
                rc.tolerance = std::stod(value);
            } else if (key == "k_max_classic") {
                rc.k_max_classic = std::stoi(value);
            } else if (key == "k_max_multinomial") {
                rc.k_max_multinomial = std::stoi(value);
            } else if (key == "composition_budget") {
                rc.composition_budget = std::stoull(value);
            } else if (key == "seed") {
                rc.seed = std::stoull(value);
            } else if (key == "format") {
                if (value != "json" && value != "csv" && value != "plain") {
                    throw mittag::domain_error("config: bad format '" + value + "'");
                }
                rc.format = value;
            } else {
                throw mittag::domain_error("config: unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw mittag::domain_error("config: cannot parse value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw mittag::domain_error("config: value out of range for '" + key + "'");
        }
    }
}

void emit_eval(const mittag::EvalResult& r, const std::string& format) {
    const char* certified = r.certified ? "true" : "false";
    if (format == "json") {
        std::printf("{\"value\":%s,\"truncation_k\":%d,\"tail_bound\":%s,\"terms_used\":%" PRId64
                    ",\"certified\":%s}\n",
                    fmt(r.value).c_str(), r.truncation_k, fmt(r.tail_bound).c_str(), r.terms_used,
                    certified);
    } else if (format == "csv") {
        std::printf("value,truncation_k,tail_bound,terms_used,certified\n");
        std::printf("%s,%d,%s,%" PRId64 ",%s\n", fmt(r.value).c_str(), r.truncation_k,
                    fmt(r.tail_bound).c_str(), r.terms_used, certified);
    } else {
        std::printf("value = %s\ntruncation_k = %d\ntail_bound = %s\nterms_used = %" PRId64
                    "\ncertified = %s\n",
                    fmt(r.value).c_str(), r.truncation_k, fmt(r.tail_bound).c_str(), r.terms_used,
                    certified);
    }
}

void emit_constants(const mittag::EstimateConstants& c, const std::string& format) {
    if (format == "json") {
        std::printf("{\"x0\":%s,\"gamma_x0\":%s,\"n0\":%d,\"c0_paper\":%s,\"c_paper\":%s,"
                    "\"c0_safe\":%s,\"c_safe\":%s}\n",
                    fmt(c.x0).c_str(), fmt(c.gamma_x0).c_str(), c.n0, fmt(c.c0_paper).c_str(),
                    fmt(c.c_paper).c_str(), fmt(c.c0_safe).c_str(), fmt(c.c_safe).c_str());
    } else if (format == "csv") {
        std::printf("x0,gamma_x0,n0,c0_paper,c_paper,c0_safe,c_safe\n");
        std::printf("%s,%s,%d,%s,%s,%s,%s\n", fmt(c.x0).c_str(), fmt(c.gamma_x0).c_str(), c.n0,
                    fmt(c.c0_paper).c_str(), fmt(c.c_paper).c_str(), fmt(c.c0_safe).c_str(),
                    fmt(c.c_safe).c_str());
    } else {
        std::printf("x0 = %s\ngamma_x0 = %s\nn0 = %d\nc0_paper = %s\nc_paper = %s\nc0_safe = "
                    "%s\nc_safe = %s\n",
                    fmt(c.x0).c_str(), fmt(c.gamma_x0).c_str(), c.n0, fmt(c.c0_paper).c_str(),
                    fmt(c.c_paper).c_str(), fmt(c.c0_safe).c_str(), fmt(c.c_safe).c_str());
    }
}

void emit_verify(const mittag::VerifyReport& r, const std::string& format) {
    if (format == "json") {
        std::printf("{\"trials\":%" PRIu64 ",\"violations_paper\":%" PRIu64
                    ",\"violations_safe\":%" PRIu64
                    ",\"max_ratio_paper\":%s,\"max_ratio_safe\":%s,\"seed\":%" PRIu64
                    ",\"worst_case\":{\"mus\":%s,\"gamma\":%s,\"z\":%s}}\n",
                    r.trials, r.violations_paper, r.violations_safe, fmt(r.max_ratio_paper).c_str(),
                    fmt(r.max_ratio_safe).c_str(), r.seed, json_array(r.worst_case.mus).c_str(),
                    fmt(r.worst_case.gamma).c_str(), json_array(r.worst_case.z).c_str());
    } else if (format == "csv") {
        std::printf("trials,violations_paper,violations_safe,max_ratio_paper,max_ratio_safe,seed,"
                    "worst_mus,worst_gamma,worst_z\n");
        std::printf("%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%s,%s,%" PRIu64 ",\"%s\",%s,\"%s\"\n",
                    r.trials, r.violations_paper, r.violations_safe, fmt(r.max_ratio_paper).c_str(),
                    fmt(r.max_ratio_safe).c_str(), r.seed, fmt_list(r.worst_case.mus, " ").c_str(),
                    fmt(r.worst_case.gamma).c_str(), fmt_list(r.worst_case.z, " ").c_str());
    } else {
        std::printf("trials = %" PRIu64 "\nviolations_paper = %" PRIu64
                    "\nviolations_safe = %" PRIu64
                    "\nmax_ratio_paper = %s\nmax_ratio_safe = %s\nseed = %" PRIu64
                    "\nworst_mus = %s\nworst_gamma = %s\nworst_z = %s\n",
                    r.trials, r.violations_paper, r.violations_safe, fmt(r.max_ratio_paper).c_str(),
                    fmt(r.max_ratio_safe).c_str(), r.seed, fmt_list(r.worst_case.mus, " ").c_str(),
                    fmt(r.worst_case.gamma).c_str(), fmt_list(r.worst_case.z, " ").c_str());
    }
}

void emit_identity(int n, int k_max, std::uint64_t trials, std::uint64_t seed, double max_dev,
                   const std::string& format) {
    if (format == "json") {
        std::printf("{\"n\":%d,\"k_max\":%d,\"trials\":%" PRIu64 ",\"seed\":%" PRIu64
                    ",\"max_deviation\":%s}\n",
                    n, k_max, trials, seed, fmt(max_dev).c_str());
    } else if (format == "csv") {
        std::printf("n,k_max,trials,seed,max_deviation\n");
        std::printf("%d,%d,%" PRIu64 ",%" PRIu64 ",%s\n", n, k_max, trials, seed,
                    fmt(max_dev).c_str());
    } else {
        std::printf("n = %d\nk_max = %d\ntrials = %" PRIu64 "\nseed = %" PRIu64
                    "\nmax_deviation = %s\n",
                    n, k_max, trials, seed, fmt(max_dev).c_str());
    }
}

struct Axis {
    std::vector<double> points;
};

Axis parse_axis(const std::string& spec) {
    // "start:stop:count"
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) {
        throw mittag::domain_error("table: grid spec must be start:stop:count, got '" + spec + "'");
    }
    double start = 0.0, stop = 0.0;
    long count = 0;
    try {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        count = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw mittag::domain_error("table: cannot parse grid spec '" + spec + "'");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || count < 1) {
        throw mittag::domain_error("table: bad grid spec '" + spec + "'");
    }
    Axis axis;
    if (count == 1) {
        axis.points.push_back(start);
    } else {
        for (long i = 0; i < count; ++i) {
            axis.points.push_back(start + (stop - start) * static_cast<double>(i) /
                                              static_cast<double>(count - 1));
        }
    }
    return axis;
}

int cmd_table(const std::vector<double>& mus, double gamma_param,
              const std::vector<std::string>& grid_specs, const RunConfig& rc) {
    using namespace mittag;
    if (grid_specs.size() != mus.size()) {
        throw domain_error("table: need one --z-grid spec per mu");
    }
    std::vector<Axis> axes;
    std::uint64_t total = 1;
    for (const auto& spec : grid_specs) {
        axes.push_back(parse_axis(spec));
        total *= axes.back().points.size();
        if (total > 10000) {
            throw domain_error("table: grid exceeds 10^4 points");
        }
    }
    const MultiMLParams p{mus, gamma_param};
    const EstimateConstants consts = compute_constants(p);
    const EvalConfig cfg = eval_config(rc);
    const std::size_t n = mus.size();

    std::string header;
    for (std::size_t i = 0; i < n; ++i) header += "z" + std::to_string(i + 1) + ",";
    header += "value,bound,ratio";
    const bool json = rc.format == "json";
    if (json) {
        std::printf("{\"columns\":[");
        for (std::size_t i = 0; i < n; ++i) std::printf("\"z%zu\",", i + 1);
        std::printf("\"value\",\"bound\",\"ratio\"],\"rows\":[");
    } else {
        std::printf("%s\n", header.c_str());
    }

    std::vector<std::size_t> idx(n, 0);
    std::vector<double> z(n, 0.0);
    std::uint64_t failures = 0;
    for (std::uint64_t row = 0; row < total; ++row) {
        std::uint64_t rest = row;
        for (std::size_t i = n; i-- > 0;) { // last coordinate fastest
            idx[i] = rest % axes[i].points.size();
            rest /= axes[i].points.size();
        }
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = axes[i].points[idx[i]];
            r += std::fabs(z[i]);
        }
        double value = std::nan(""), bound = std::nan(""), ratio = std::nan("");
        try {
            value = eval_multinomial(p, z, rc.tolerance, cfg).value;
            bound = consts.c_safe * eval_classic(MLParams{mus.front(), gamma_param}, r,
                                                 rc.tolerance, cfg)
                                        .value;
            ratio = std::fabs(value) / bound;
        } catch (const domain_error&) {
            throw;
        } catch (const error&) {
            ++failures;
        }
        if (json) {
            std::printf("%s[", row ? "," : "");
            for (std::size_t i = 0; i < n; ++i) std::printf("%s,", fmt(z[i]).c_str());
            std::printf("%s,%s,%s]", fmt(value).c_str(), fmt(bound).c_str(), fmt(ratio).c_str());
        } else {
            for (std::size_t i = 0; i < n; ++i) std::printf("%s,", fmt(z[i]).c_str());
            std::printf("%s,%s,%s\n", fmt(value).c_str(), fmt(bound).c_str(), fmt(ratio).c_str());
        }
    }
    if (json) {
        std::printf("],\"failures\":%" PRIu64 "}\n", failures);
    } else {
        std::printf("# failures: %" PRIu64 "\n", failures);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multinomial Mittag-Leffler evaluation, estimate constants, and bound verification"};
    app.fallthrough(true);
    app.require_subcommand(1);

    RunConfig rc;
    double opt_tolerance = rc.tolerance;
    std::uint64_t opt_seed = rc.seed;
    std::string opt_format = rc.format;
    std::string opt_config;
    int opt_kmax_classic = rc.k_max_classic;
    int opt_kmax_multi = rc.k_max_multinomial;
    std::uint64_t opt_budget = rc.composition_budget;

    app.add_option("--tolerance", opt_tolerance, "evaluation tolerance (default 1e-12)");
    app.add_option("--seed", opt_seed, "64-bit seed for randomized commands (default 0)");
    app.add_option("--format", opt_format, "output format (default plain)")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--config", opt_config, "key=value config file; flags win over file values");
    app.add_option("--k-max-classic", opt_kmax_classic, "outer-term cap for the two-parameter series");
    app.add_option("--k-max-multinomial", opt_kmax_multi, "outer-term cap for the multinomial series");
    app.add_option("--composition-budget", opt_budget, "cumulative composition budget per evaluation");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate the multinomial function at a point");
    std::vector<double> eval_mus, eval_z;
    double eval_gamma = 0.0;
    eval_cmd->add_option("--mus", eval_mus, "exponents mu_1..mu_n")->required()->expected(-1);
    eval_cmd->add_option("--gamma", eval_gamma, "offset gamma")->required();
    eval_cmd->add_option("--z", eval_z, "arguments z_1..z_n")->required()->expected(-1);

    // classic
    auto* classic_cmd = app.add_subcommand("classic", "evaluate the two-parameter function");
    double classic_mu = 0.0, classic_nu = 0.0, classic_x = 0.0;
    classic_cmd->add_option("--mu", classic_mu, "exponent mu")->required();
    classic_cmd->add_option("--nu", classic_nu, "offset nu")->required();
    classic_cmd->add_option("--x", classic_x, "argument x")->required();

    // constant
    auto* constant_cmd = app.add_subcommand("constant", "compute the estimate constants");
    std::vector<double> const_mus;
    double const_gamma = 0.0;
    constant_cmd->add_option("--mus", const_mus, "strictly ascending mu_1..mu_n")
        ->required()
        ->expected(-1);
    constant_cmd->add_option("--gamma", const_gamma, "offset gamma")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "randomized verification of the bound");
    std::uint64_t verify_trials = 1000;
    mittag::VerifyRanges ranges;
    verify_cmd->add_option("--trials", verify_trials, "number of random trials (default 1000)");
    verify_cmd->add_option("--n-min", ranges.n_min, "minimum n (default 1)");
    verify_cmd->add_option("--n-max", ranges.n_max, "maximum n (default 4)");
    verify_cmd->add_option("--mu-max", ranges.mu_max, "mus drawn from (0, mu-max] (default 2)");
    verify_cmd->add_option("--gamma-min", ranges.gamma_min, "gamma lower bound (default 0.05)");
    verify_cmd->add_option("--gamma-max", ranges.gamma_max, "gamma upper bound (default 3)");
    verify_cmd->add_option("--z-max", ranges.z_max, "z_i drawn from [-z-max, z-max] (default 10)");

    // identity
    auto* identity_cmd = app.add_subcommand("identity", "numerical check of the multinomial identity");
    int id_n = 2, id_kmax = 12;
    std::uint64_t id_trials = 100;
    identity_cmd->add_option("--n", id_n, "number of variables, <= 6 (default 2)");
    identity_cmd->add_option("--k-max", id_kmax, "largest degree checked, <= 15 (default 12)");
    identity_cmd->add_option("--trials", id_trials, "random draws of z in [-3,3]^n (default 100)");

    // table
    auto* table_cmd = app.add_subcommand("table", "tabulate value, bound, and ratio on a z grid");
    std::vector<double> table_mus;
    double table_gamma = 0.0;
    std::vector<std::string> table_grid;
    table_cmd->add_option("--mus", table_mus, "strictly ascending mu_1..mu_n")
        ->required()
        ->expected(-1);
    table_cmd->add_option("--gamma", table_gamma, "offset gamma")->required();
    table_cmd->add_option("--z-grid", table_grid, "start:stop:count per coordinate")
        ->required()
        ->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!opt_config.empty()) apply_config_file(rc, opt_config);
        if (app.count("--tolerance")) rc.tolerance = opt_tolerance;
        if (app.count("--seed")) rc.seed = opt_seed;
        if (app.count("--format")) rc.format = opt_format;
        if (app.count("--k-max-classic")) rc.k_max_classic = opt_kmax_classic;
        if (app.count("--k-max-multinomial")) rc.k_max_multinomial = opt_kmax_multi;
        if (app.count("--composition-budget")) rc.composition_budget = opt_budget;

        if (app.got_subcommand(eval_cmd)) {
            if (eval_mus.size() != eval_z.size()) {
                throw mittag::domain_error("eval: --mus and --z must have equal length");
            }
            const auto res = mittag::eval_multinomial(mittag::MultiMLParams{eval_mus, eval_gamma},
                                                      eval_z, rc.tolerance, eval_config(rc));
            emit_eval(res, rc.format);
            return 0;
        }
        if (app.got_subcommand(classic_cmd)) {
            const auto res = mittag::eval_classic(mittag::MLParams{classic_mu, classic_nu},
                                                  classic_x, rc.tolerance, eval_config(rc));
            emit_eval(res, rc.format);
            return 0;
        }
        if (app.got_subcommand(constant_cmd)) {
            const auto c = mittag::compute_constants(mittag::MultiMLParams{const_mus, const_gamma});
            emit_constants(c, rc.format);
            return 0;
        }
        if (app.got_subcommand(verify_cmd)) {
            const auto report =
                mittag::verify_random(ranges, verify_trials, rc.seed, rc.tolerance, eval_config(rc));
            emit_verify(report, rc.format);
            if (report.error_trials > 0) {
                std::fprintf(stderr, "note: %" PRIu64 " of %" PRIu64
                             " trials failed to evaluate (budget/convergence/overflow) and were "
                             "excluded from the violation tally\n",
                             report.error_trials, report.trials);
            }
            if (report.violations_safe > 0) return 1;
            if (report.error_trials * 10 > report.trials) return 3;
            return 0;
        }
        if (app.got_subcommand(identity_cmd)) {
            const double max_dev =
                mittag::multinomial_identity_sweep(id_n, id_kmax, id_trials, rc.seed);
            emit_identity(id_n, id_kmax, id_trials, rc.seed, max_dev, rc.format);
            return max_dev <= 1e-12 ? 0 : 1;
        }
        if (app.got_subcommand(table_cmd)) {
            return cmd_table(table_mus, table_gamma, table_grid, rc);
        }
        return 2;
    } catch (const mittag::domain_error& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.name(), e.what());
        return 2;
    } catch (const mittag::error& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.name(), e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
