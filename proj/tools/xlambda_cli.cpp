#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xlambda/arithstat.hpp"
#include "xlambda/charsums.hpp"
#include "xlambda/curves.hpp"
#include "xlambda/gn.hpp"
#include "xlambda/parallel.hpp"
#include "xlambda/verify.hpp"

namespace {

using nlohmann::json;
using namespace xlam;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

json trace_to_json(const TraceRecord& r) {
    json j;
    j["p"] = r.p;
    j["lambda"] = r.lambda;
    if (r.a_leg) j["a_leg"] = *r.a_leg; else j["a_leg"] = nullptr;
    if (r.a_cl) j["a_cl"] = *r.a_cl; else j["a_cl"] = nullptr;
    j["A_p"] = r.A_p;
    j["provenance"] = r.provenance == TraceRecord::Provenance::both ? "both" : "fast";
    return j;
}

std::string trace_csv_row(const TraceRecord& r) {
    std::string row = std::to_string(r.p) + "," + std::to_string(r.lambda) + ",";
    row += r.a_leg ? std::to_string(*r.a_leg) : "";
    row += ",";
    row += r.a_cl ? std::to_string(*r.a_cl) : "";
    row += "," + std::to_string(r.A_p) + "\n";
    return row;
}

// key=value lines, '#' comments. Values for flags already on the command
// line are ignored: explicit flags override the file.
std::vector<std::string> with_config_applied(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            auto e = s.find_last_not_of(" \t\r");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        std::string key = "--" + trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "--" || value.empty()) continue;
        bool given = false;
        for (const auto& a : args) {
            if (a == key || a.rfind(key + "=", 0) == 0) given = true;
        }
        if (!given) {
            args.push_back(key);
            args.push_back(value);
        }
    }
    return args;
}

int run(int argc, char** argv) {
    CLI::App app{"xlambda: rational-point counts of the surface family X_lambda, character sums,\n"
                 "p-adic hypergeometric evaluation, and their identity/distribution checks"};
    app.require_subcommand(1);

    // verify ---------------------------------------------------------------
    std::string v_primes, v_suite = "all", v_out, v_format = "json";
    int v_prec = 3, v_workers = 0, v_maxm = 4;
    u64 v_samples = 20, v_seed = 1;
    double v_moment_tol = 0.15, v_ks_tol = 0.05, v_clausen_tol = 0.2;
    auto* sv = app.add_subcommand("verify", "run identity/trend suites and report failures");
    sv->add_option("--primes", v_primes, "prime range a..b or comma list")->required();
    sv->add_option("--suite", v_suite, "all|ff|gauss|gamma|floors|curves|cp|decomp|gn|moments|distribution|clausen");
    sv->add_option("--precision", v_prec, "p-adic unit precision N");
    sv->add_option("--samples", v_samples, "sample count for sampled checks at larger primes");
    sv->add_option("--seed", v_seed, "seed for the sampled-lambda generator");
    sv->add_option("--workers", v_workers, "worker threads (0 = available parallelism)");
    sv->add_option("--max-m", v_maxm, "largest moment order for the moments suite");
    sv->add_option("--moment-tol", v_moment_tol, "tolerance for normalized moment gaps");
    sv->add_option("--ks-tol", v_ks_tol, "tolerance for the min-model KS distance");
    sv->add_option("--clausen-tol", v_clausen_tol, "tolerance for Clausen even-moment gaps");
    sv->add_option("--out", v_out, "write the JSON report here instead of stdout");
    sv->add_option("--format", v_format, "json");

    // trace ----------------------------------------------------------------
    u64 t_prime = 0;
    i64 t_lambda = -1;
    bool t_direct = false;
    std::string t_out, t_format = "json";
    int t_workers = 0;
    auto* st = app.add_subcommand("trace", "traces a_leg, a_cl and the surface count A_p");
    st->add_option("--prime", t_prime, "prime p >= 5")->required();
    st->add_option("--lambda", t_lambda, "single lambda; omit for the full table");
    st->add_flag("--direct", t_direct, "also run the O(p^2) direct surface count and compare");
    st->add_option("--workers", t_workers, "worker threads (0 = available parallelism)");
    st->add_option("--out", t_out, "output path");
    st->add_option("--format", t_format, "json|csv");

    // moments ----------------------------------------------------------------
    u64 m_prime = 0;
    int m_maxm = 4, m_workers = 0, m_prec = 3;
    std::string m_family = "a", m_out, m_format = "json";
    auto* sm = app.add_subcommand("moments", "exact power sums vs Catalan-weighted targets");
    sm->add_option("--prime", m_prime, "prime p >= 5")->required();
    sm->add_option("--max-m", m_maxm, "largest moment order (<= 8)");
    sm->add_option("--family", m_family, "a (A_p) | 3g3 | 9g9");
    sm->add_option("--precision", m_prec, "p-adic precision for the gn families");
    sm->add_option("--workers", m_workers, "worker threads");
    sm->add_option("--out", m_out, "output path");
    sm->add_option("--format", m_format, "json");

    // distribution -----------------------------------------------------------
    u64 d_prime = 0;
    int d_bins = 60, d_workers = 0;
    std::string d_out, d_format = "json";
    auto* sd = app.add_subcommand("distribution", "histogram of A_p/p against both model densities");
    sd->add_option("--prime", d_prime, "prime p >= 5")->required();
    sd->add_option("--bins", d_bins, "bin count (>= 10)");
    sd->add_option("--workers", d_workers, "worker threads");
    sd->add_option("--out", d_out, "output path");
    sd->add_option("--format", d_format, "json|csv");

    // gn ----------------------------------------------------------------------
    u64 g_prime = 0;
    i64 g_lambda = -1;
    int g_prec = 3;
    std::string g_out, g_format = "json";
    auto* sg = app.add_subcommand("gn", "decoded p-adic hypergeometric values (3G3 or 9G9 by residue class)");
    sg->add_option("--prime", g_prime, "prime p >= 5")->required();
    sg->add_option("--lambda", g_lambda, "single lambda != 1; omit for the full table");
    sg->add_option("--precision", g_prec, "p-adic unit precision N");
    sg->add_option("--out", g_out, "output path");
    sg->add_option("--format", g_format, "json|csv");

    // gauss ---------------------------------------------------------------------
    u64 ga_prime = 0;
    i64 ga_j = -1;
    int ga_prec = 3;
    std::string ga_out, ga_format = "json";
    auto* sga = app.add_subcommand("gauss", "Gauss sums g(omega^j), numeric and Gross-Koblitz form");
    sga->add_option("--prime", ga_prime, "prime p >= 5")->required();
    sga->add_option("--j", ga_j, "character index; omit for all j");
    sga->add_option("--precision", ga_prec, "p-adic unit precision N");
    sga->add_option("--out", ga_out, "output path");
    sga->add_option("--format", ga_format, "json|csv");

    // jacobi ----------------------------------------------------------------------
    u64 j_prime = 0, j_j1 = 0, j_j2 = 0;
    std::string j_out, j_format = "json";
    auto* sj = app.add_subcommand("jacobi", "Jacobi sum J(omega^j1, omega^j2)");
    sj->add_option("--prime", j_prime, "prime p >= 5")->required();
    sj->add_option("--j1", j_j1, "first character index")->required();
    sj->add_option("--j2", j_j2, "second character index")->required();
    sj->add_option("--out", j_out, "output path");
    sj->add_option("--format", j_format, "json");

    std::string cfg_path;
    for (auto* sub : {sv, st, sm, sd, sg, sga, sj}) {
        sub->add_option("--config", cfg_path, "key-value config file mirroring the flags; flags override it");
    }

    try {
        std::vector<std::string> args = with_config_applied(argc, argv);
        std::reverse(args.begin(), args.end());  // App::parse(vector) takes reversed args
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the right (sub)command help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (sv->parsed()) {
        VerifyConfig cfg;
        cfg.primes = parse_primes(v_primes);
        cfg.suite = v_suite;
        cfg.precision = v_prec;
        cfg.samples = v_samples;
        cfg.seed = v_seed;
        cfg.workers = v_workers > 0 ? v_workers : default_workers();
        cfg.m_max = v_maxm;
        cfg.moment_tol = v_moment_tol;
        cfg.ks_tol = v_ks_tol;
        cfg.clausen_tol = v_clausen_tol;
        if (!is_known_suite(cfg.suite)) throw CLI::ValidationError("--suite", "unknown suite " + cfg.suite);
        auto results = run_verify(cfg);
        for (const auto& r : results) {
            for (const auto& n : r.notices) {
                std::cerr << "[" << r.suite << " p=" << r.prime << "] " << n << "\n";
            }
        }
        emit(verify_report_json(cfg, results), v_out);
        u64 fails = total_failures(results);
        if (fails) std::cerr << fails << " check(s) failed\n";
        return fails == 0 ? 0 : 1;
    }

    if (st->parsed()) {
        if (t_format != "csv" && t_format != "json") throw CLI::ValidationError("--format", "json|csv");
        PrimeFieldContext ctx(t_prime);
        std::vector<TraceRecord> records;
        if (t_lambda >= 0) {
            records.push_back(trace_record(ctx, ctx.reduce(t_lambda), t_direct));
        } else {
            records.resize(ctx.p() - 1);
            int workers = t_workers > 0 ? t_workers : default_workers();
            parallel_for(1, ctx.p(), workers, [&](u64 lo, u64 hi) {
                for (u64 lam = lo; lam < hi; ++lam) records[lam - 1] = trace_record(ctx, lam, t_direct);
            });
        }
        if (t_format == "csv") {
            std::string text = "p,lambda,a_leg,a_cl,A_p\n";
            for (const auto& r : records) text += trace_csv_row(r);
            emit(text, t_out);
        } else {
            json j = json::array();
            for (const auto& r : records) j.push_back(trace_to_json(r));
            emit(j.dump(2), t_out);
        }
        return 0;
    }

    if (sm->parsed()) {
        if (m_format != "json") throw CLI::ValidationError("--format", "moments reports are json");
        PrimeFieldContext ctx(m_prime);
        int workers = m_workers > 0 ? m_workers : default_workers();
        MomentReport r;
        if (m_family == "a") {
            r = empirical_moments(ctx, m_maxm, workers);
        } else if (m_family == "3g3") {
            r = gn_moment_check(ctx, GnFamily::g3, m_maxm, m_prec, workers);
        } else if (m_family == "9g9") {
            r = gn_moment_check(ctx, GnFamily::g9, m_maxm, m_prec, workers);
        } else {
            throw CLI::ValidationError("--family", "must be a, 3g3 or 9g9");
        }
        emit(moment_report_json(r), m_out);
        return 0;
    }

    if (sd->parsed()) {
        if (d_format != "csv" && d_format != "json") throw CLI::ValidationError("--format", "json|csv");
        PrimeFieldContext ctx(d_prime);
        int workers = d_workers > 0 ? d_workers : default_workers();
        HistogramReport r = distribution_report(ctx, d_bins, workers);
        emit(d_format == "csv" ? histogram_report_csv(r) : histogram_report_json(r), d_out);
        return 0;
    }

    if (sg->parsed()) {
        if (g_format != "csv" && g_format != "json") throw CLI::ValidationError("--format", "json|csv");
        PrimeFieldContext ctx(g_prime);
        const u64 p = ctx.p();
        json rows = json::array();
        std::string csv = "p,lambda,family,value_num,value_den\n";
        auto add = [&](u64 lam, const char* family, i64 num, i64 den) {
            rows.push_back({{"p", p}, {"lambda", lam}, {"family", family}, {"num", num}, {"den", den}});
            csv += std::to_string(p) + "," + std::to_string(lam) + "," + family + "," + std::to_string(num) +
                   "," + std::to_string(den) + "\n";
        };
        std::vector<u64> lams;
        if (g_lambda >= 0) {
            u64 lam = ctx.reduce(g_lambda);
            if (lam == 1) throw CLI::ValidationError("--lambda", "lambda = 1 is excluded");
            lams.push_back(lam);
        } else {
            for (u64 lam = 0; lam < p; ++lam)
                if (lam != 1) lams.push_back(lam);
        }
        if (p % 3 == 1) {
            G3Evaluator ev(ctx, g_prec);
            for (u64 lam : lams) add(lam, "3G3", ev.decode_times_p(lam), i64(p));
        } else {
            G9Evaluator ev(ctx, g_prec);
            for (u64 lam : lams) add(lam, "9G9", ev.decode(lam), 1);
        }
        emit(g_format == "csv" ? csv : rows.dump(2), g_out);
        return 0;
    }

    if (sga->parsed()) {
        if (ga_format != "csv" && ga_format != "json") throw CLI::ValidationError("--format", "json|csv");
        PrimeFieldContext ctx(ga_prime);
        const u64 p = ctx.p();
        json rows = json::array();
        std::string csv = "p,j,re,im,err,pi_exponent,unit_mod_pN\n";
        std::vector<u64> js;
        if (ga_j >= 0) js.push_back(u64(ga_j) % (p - 1));
        else for (u64 j = 0; j + 1 < p; ++j) js.push_back(j);
        for (u64 j : js) {
            ComplexApprox g = gauss_sum_numeric(ctx, CharacterIndex{j});
            GaussSumPadic gp = gauss_sum_padic(ctx, CharacterIndex{j}, ga_prec);
            rows.push_back({{"p", p}, {"j", j}, {"re", g.re}, {"im", g.im}, {"err", g.err},
                            {"pi_exponent", gp.e}, {"unit_mod_pN", gp.unit.unit()}});
            csv += std::to_string(p) + "," + std::to_string(j) + "," + std::to_string(g.re) + "," +
                   std::to_string(g.im) + "," + std::to_string(g.err) + "," + std::to_string(gp.e) + "," +
                   std::to_string(gp.unit.unit()) + "\n";
        }
        emit(ga_format == "csv" ? csv : rows.dump(2), ga_out);
        return 0;
    }

    if (sj->parsed()) {
        if (j_format != "json") throw CLI::ValidationError("--format", "jacobi reports are json");
        PrimeFieldContext ctx(j_prime);
        ComplexApprox jv = jacobi_sum_numeric(ctx, CharacterIndex{j_j1}, CharacterIndex{j_j2});
        json j{{"p", ctx.p()}, {"j1", j_j1 % (ctx.p() - 1)}, {"j2", j_j2 % (ctx.p() - 1)},
               {"re", jv.re}, {"im", jv.im}, {"err", jv.err}};
        emit(j.dump(2), j_out);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
