#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "berrylab/berrylab.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw berrylab::DomainError("cannot open output file: " + path);
    out << content;
}

berrylab::MixedLaw load_law(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw berrylab::DomainError("cannot read law file: " + path);
    json j;
    in >> j;
    std::vector<berrylab::Atom> atoms;
    std::vector<berrylab::StepPiece> steps;
    for (const auto& a : j.value("atoms", json::array())) {
        if (!a.is_array() || a.size() != 2)
            throw berrylab::DomainError("law file: each atom must be [location, mass]");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    for (const auto& s : j.value("steps", json::array())) {
        if (!s.is_array() || s.size() != 3)
            throw berrylab::DomainError("law file: each step must be [lo, hi, height]");
        steps.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
    }
    return berrylab::make_mixed_law(std::move(atoms), std::move(steps));
}

// shared sweep configuration for `verify`
struct VerifyOpts {
    double h = 0.5, w = 0.5;
    std::string law_path;
    std::vector<long long> Ns;
    int k = 3;
    double tol = 1e-6;
    double quad_tol = 1e-6;
    std::vector<std::string> modes;
    long long reps = 200000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    double conf = 0.99;
    std::string out;
    std::string format = "csv";
};

int usage_error(const std::string& msg) {
    std::cerr << "usage error: " << msg << "\n";
    return 64;
}

struct VerifyRow {
    long long N = 0;
    bool has_exact = false, has_mc = false, has_bounds = false, has_smoothing = false;
    berrylab::KSResult exact;
    berrylab::KSResult mc;
    berrylab::BoundReport bounds;
    double smoothing_ub = 0.0;
    bool ok = true;
};

std::string verify_csv(const std::vector<VerifyRow>& rows) {
    std::string out =
        "N,ks_exact,ks_err,ks_mc,mc_err,rhs_thm_main,rhs_thm_main2,smoothing_ub,verdict\n";
    for (const auto& r : rows) {
        out += std::to_string(r.N) + ",";
        out += (r.has_exact ? fmt17(r.exact.distance) : std::string()) + ",";
        out += (r.has_exact ? fmt17(r.exact.err) : std::string()) + ",";
        out += (r.has_mc ? fmt17(r.mc.distance) : std::string()) + ",";
        out += (r.has_mc ? fmt17(r.mc.err) : std::string()) + ",";
        out += (r.has_bounds ? fmt17(r.bounds.rhs_thm_main) : std::string()) + ",";
        out += (r.has_bounds ? fmt17(r.bounds.rhs_thm_main2) : std::string()) + ",";
        out += (r.has_smoothing ? fmt17(r.smoothing_ub) : std::string()) + ",";
        out += r.ok ? "ok" : "FAIL";
        out += "\n";
    }
    return out;
}

std::string verify_json(const std::vector<VerifyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["N"] = r.N;
        row["ks_exact"] = r.has_exact ? json(r.exact.distance) : json();
        row["ks_err"] = r.has_exact ? json(r.exact.err) : json();
        row["ks_mc"] = r.has_mc ? json(r.mc.distance) : json();
        row["mc_err"] = r.has_mc ? json(r.mc.err) : json();
        row["rhs_thm_main"] = r.has_bounds ? json(r.bounds.rhs_thm_main) : json();
        row["rhs_thm_main2"] = r.has_bounds ? json(r.bounds.rhs_thm_main2) : json();
        row["smoothing_ub"] = r.has_smoothing ? json(r.smoothing_ub) : json();
        row["verdict"] = r.ok ? "ok" : "FAIL";
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string verify_svg(const std::vector<VerifyRow>& rows) {
    berrylab::LogLogSvg plot("KS distance vs N", "N", "distance / bound");
    std::vector<double> ns;
    for (const auto& r : rows) ns.push_back(static_cast<double>(r.N));
    auto add = [&](const char* name, auto getter, auto pred) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!pred(rows[i])) continue;
            const double y = getter(rows[i]);
            if (y > 0.0) {
                xs.push_back(ns[i]);
                ys.push_back(y);
            }
        }
        if (!xs.empty()) plot.add_series(name, std::move(xs), std::move(ys));
    };
    add("ks_exact", [](const VerifyRow& r) { return r.exact.distance; },
        [](const VerifyRow& r) { return r.has_exact; });
    add("ks_mc", [](const VerifyRow& r) { return r.mc.distance; },
        [](const VerifyRow& r) { return r.has_mc; });
    add("rhs_thm_main", [](const VerifyRow& r) { return r.bounds.rhs_thm_main; },
        [](const VerifyRow& r) { return r.has_bounds; });
    add("rhs_thm_main2", [](const VerifyRow& r) { return r.bounds.rhs_thm_main2; },
        [](const VerifyRow& r) { return r.has_bounds; });
    add("smoothing_ub", [](const VerifyRow& r) { return r.smoothing_ub; },
        [](const VerifyRow& r) { return r.has_smoothing; });
    return plot.render();
}

int cmd_verify(const VerifyOpts& o) {
    if (o.Ns.empty()) return usage_error("verify needs a non-empty --N list");
    for (std::size_t i = 0; i + 1 < o.Ns.size(); ++i)
        if (o.Ns[i] >= o.Ns[i + 1]) return usage_error("--N list must be strictly ascending");
    std::set<std::string> modes;
    for (const auto& entry : o.modes) {
        std::stringstream ss(entry);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            if (tok != "exact" && tok != "mc" && tok != "bounds" && tok != "smoothing")
                return usage_error("unknown mode: " + tok);
            modes.insert(tok);
        }
    }
    if (modes.empty()) modes = {"exact", "mc", "bounds", "smoothing"};
    const bool from_file = !o.law_path.empty();
    if (from_file && modes.count("exact"))
        return usage_error("exact mode requires the (h, w) family, not --law");
    if (o.format != "csv" && o.format != "json" && o.format != "svg")
        return usage_error("verify --format must be csv, json, or svg");
    if (o.reps < 1) return usage_error("--reps must be >= 1");

    const berrylab::MixedLaw law = from_file ? load_law(o.law_path)
                                             : berrylab::mu_hw(o.h, o.w);
    const double E = berrylab::abs_moment(law, o.k + 1);
    const double m = std::max(1.0, std::pow(E, 1.0 / (o.k + 1)));
    double rect_h = o.h, rect_w = o.w;
    if (from_file) {
        const berrylab::DensityRectangle rect = berrylab::density_rectangle(law);
        rect_h = rect.h;
        rect_w = rect.w;
    }

    std::vector<VerifyRow> rows;
    bool all_ok = true;
    for (std::size_t i = 0; i < o.Ns.size(); ++i) {
        const long long N = o.Ns[i];
        if (N < 1) return usage_error("--N entries must be >= 1");
        VerifyRow row;
        row.N = N;
        if (modes.count("exact")) {
            row.exact = berrylab::ks_exact_mu_hw(o.h, o.w, N, o.tol);
            row.has_exact = true;
        }
        if (modes.count("mc")) {
            auto samples = berrylab::sample_normalized_sum(
                law, N, o.reps,
                berrylab::SeedSpec{o.seed, static_cast<std::uint64_t>(i) << 20},
                o.threads);
            std::sort(samples.begin(), samples.end());
            row.mc = berrylab::ks_empirical(samples, o.conf);
            row.has_mc = true;
        }
        if (modes.count("bounds")) {
            row.bounds = berrylab::thm_main2_rhs(o.k, E, rect_h, rect_w, N);
            row.has_bounds = true;
        }
        if (modes.count("smoothing")) {
            const double L = berrylab::paper_L(rect_h, rect_w, o.k, m, N);
            row.smoothing_ub = berrylab::smoothing_upper_bound(law, N, L, o.quad_tol);
            row.has_smoothing = true;
        }

        // certified comparisons available at this row
        if (row.has_exact) {
            const double lo = row.exact.distance - row.exact.err;
            if (row.has_bounds) {
                if (o.k >= 3 && lo > row.bounds.rhs_thm_main) row.ok = false;
                if (lo > row.bounds.rhs_thm_main2) row.ok = false;
            }
            if (row.has_smoothing && lo > row.smoothing_ub) row.ok = false;
            if (row.has_mc &&
                std::fabs(row.mc.distance - row.exact.distance) > row.mc.err + row.exact.err)
                row.ok = false;
        } else if (row.has_mc) {
            const double lo = row.mc.distance - row.mc.err;
            if (row.has_bounds) {
                if (o.k >= 3 && lo > row.bounds.rhs_thm_main) row.ok = false;
                if (lo > row.bounds.rhs_thm_main2) row.ok = false;
            }
            if (row.has_smoothing && lo > row.smoothing_ub) row.ok = false;
        }
        all_ok = all_ok && row.ok;
        rows.push_back(std::move(row));
    }

    if (o.format == "csv") write_output(o.out, verify_csv(rows));
    else if (o.format == "json") write_output(o.out, verify_json(rows));
    else write_output(o.out, verify_svg(rows));
    return all_ok ? 0 : 2;
}

int cmd_example(long long N, const std::string& out) {
    if (N < 100000) return usage_error("example needs --N >= 100000");
    const berrylab::ScaleCheckReport r = berrylab::example_1_4_check(N);
    std::ostringstream t;
    t << "vanishing-density family at N = " << r.N << "\n";
    t << "  delta        = " << fmt17(r.delta) << "\n";
    t << "  delta^2      = " << fmt17(r.delta_sq) << "  (<= 0.2: " << (r.delta_sq_ok ? "ok" : "FAIL")
      << ")\n";
    t << "  E[X^4]       = " << fmt17(r.m4_exact) << "  (<= " << fmt17(r.m4_bound) << ": "
      << (r.m4_ok ? "ok" : "FAIL") << ")\n";
    t << "  rhs          = " << fmt17(r.rhs) << "\n";
    t << "  8/N          = " << fmt17(r.eight_over_n) << "\n";
    t << "  verdict      = " << (r.verdict ? "ok" : "FAIL") << "\n";
    std::cout << t.str();
    if (!out.empty()) {
        std::string csv =
            "N,delta,delta_sq,delta_sq_ok,m4_exact,m4_bound,m4_ok,rhs,eight_over_n,verdict\n";
        csv += std::to_string(r.N) + "," + fmt17(r.delta) + "," + fmt17(r.delta_sq) + "," +
               (r.delta_sq_ok ? "1" : "0") + "," + fmt17(r.m4_exact) + "," + fmt17(r.m4_bound) +
               "," + (r.m4_ok ? "1" : "0") + "," + fmt17(r.rhs) + "," + fmt17(r.eight_over_n) +
               "," + (r.verdict ? "ok" : "FAIL") + "\n";
        write_output(out, csv);
    }
    return r.verdict ? 0 : 2;
}

struct ReverseOpts {
    double h = 0.2, w = 0.2;
    long long N = 16;
    double tol = 1e-6;
    bool witness = false;
    double C = 1.0, c = 1.0, rho = 1.0, rho_prime = 0.0;
    std::string out;
};

int cmd_reverse(const ReverseOpts& o) {
    if (o.witness) {
        const berrylab::ReverseWitness w = berrylab::thm_reverse_witness(o.C, o.c, o.rho, o.rho_prime);
        std::ostringstream t;
        t << "witness against rate exp(-c h^(1-rho) w^(3-rho') N / E): C = " << fmt17(o.C)
          << ", c = " << fmt17(o.c) << ", rho = " << fmt17(o.rho) << ", rho' = "
          << fmt17(o.rho_prime) << "\n";
        t << "  N          = " << w.N << "\n";
        t << "  h = w      = " << fmt17(w.h) << "\n";
        t << "  lhs lower  = " << fmt17(w.lhs_lower) << "\n";
        t << "  rhs value  = " << fmt17(w.rhs_value) << "\n";
        std::cout << t.str();
        if (!o.out.empty()) {
            std::string csv = "N,h,w,lhs_lower,rhs_value\n";
            csv += std::to_string(w.N) + "," + fmt17(w.h) + "," + fmt17(w.w) + "," +
                   fmt17(w.lhs_lower) + "," + fmt17(w.rhs_value) + "\n";
            write_output(o.out, csv);
        }
        return 0;
    }

    const berrylab::ReverseVerdict v = berrylab::reverse_condition(o.h, o.w, o.N);
    if (!v.admissible) {
        std::cerr << "inadmissible: need 0 < h, w <= 1, h*w <= 1/2 and h*w^3*N <= 1/24 "
                  << "(got h*w = " << fmt17(o.h * o.w) << ", h*w^3*N = "
                  << fmt17(o.h * o.w * o.w * o.w * static_cast<double>(o.N)) << ")\n";
        return 65;
    }
    std::ostringstream t;
    t << "anti-concentration regime at h = " << fmt17(o.h) << ", w = " << fmt17(o.w)
      << ", N = " << o.N << "\n";
    t << "  certified lower bound = " << fmt17(v.lower) << "\n";
    bool ok = true;
    bool ran_exact = false;
    berrylab::KSResult ks;
    if (o.N <= 64) {
        ks = berrylab::ks_exact_mu_hw(o.h, o.w, o.N, o.tol);
        ran_exact = true;
        ok = ks.distance + ks.err >= v.lower;
        t << "  ks_exact              = " << fmt17(ks.distance) << " +- " << fmt17(ks.err)
          << "\n";
        t << "  verdict               = " << (ok ? "ok" : "FAIL") << "\n";
    } else {
        t << "  exact engine skipped (N > 64); condition verdict only\n";
    }
    std::cout << t.str();
    if (!o.out.empty()) {
        std::string csv = "h,w,N,admissible,lower,ks_exact,ks_err,verdict\n";
        csv += fmt17(o.h) + "," + fmt17(o.w) + "," + std::to_string(o.N) + ",1," +
               fmt17(v.lower) + "," + (ran_exact ? fmt17(ks.distance) : std::string()) + "," +
               (ran_exact ? fmt17(ks.err) : std::string()) + "," + (ok ? "ok" : "FAIL") + "\n";
        write_output(o.out, csv);
    }
    return ok ? 0 : 2;
}

int cmd_bounds(int k, double h, double w, long long N, double E_opt, const std::string& out) {
    double E = E_opt;
    if (!(E > 0.0)) {
        const berrylab::MixedLaw law = berrylab::mu_hw(h, w);
        E = berrylab::abs_moment(law, k + 1);
    }
    const berrylab::BoundReport r = berrylab::thm_main2_rhs(k, E, h, w, N);
    json j;
    j["k"] = r.k;
    j["abs_moment_k1"] = r.abs_moment_k1;
    j["h"] = r.h;
    j["w"] = r.w;
    j["N"] = r.N;
    j["rhs_thm_main"] = r.rhs_thm_main;
    j["rhs_cor_sym"] = r.rhs_cor_sym ? json(*r.rhs_cor_sym) : json();
    j["rhs_thm_main2"] = r.rhs_thm_main2;
    j["C_k"] = r.C_k;
    j["c_tilde"] = r.c_tilde;
    j["c0"] = r.c0;
    j["L"] = r.L;
    j["vacuous"] = r.vacuous;
    write_output(out, j.dump(2) + "\n");
    return 0;
}

struct KsOpts {
    double h = 0.5, w = 0.5;
    long long N = 8;
    double tol = 1e-6;
    bool mc = false;
    std::string law_path;
    long long reps = 1000000;
    double conf = 0.99;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
};

int cmd_ks(const KsOpts& o) {
    berrylab::KSResult r;
    if (o.mc) {
        if (o.reps < 1) return usage_error("--reps must be >= 1");
        const berrylab::MixedLaw law =
            o.law_path.empty() ? berrylab::mu_hw(o.h, o.w) : load_law(o.law_path);
        auto samples = berrylab::sample_normalized_sum(law, o.N, o.reps,
                                                       berrylab::SeedSpec{o.seed, 0}, o.threads);
        std::sort(samples.begin(), samples.end());
        r = berrylab::ks_empirical(samples, o.conf);
    } else {
        if (!o.law_path.empty())
            return usage_error("certified ks requires the (h, w) family; use --mc with --law");
        r = berrylab::ks_exact_mu_hw(o.h, o.w, o.N, o.tol);
    }
    json j;
    j["distance"] = r.distance;
    j["err"] = r.err;
    j["mode"] = r.mode;
    j["arg_s"] = r.arg_s;
    write_output(o.out, j.dump(2) + "\n");
    return 0;
}

struct TableOpts {
    double h = 0.5, w = 0.5;
    std::string law_path;
    long long N = 1;
    double lo = 0.0, hi = 20.0;
    long long points = 201;
    double tol = 1e-9;
    std::string out;
    std::string format = "csv";
};

int cmd_cf_table(const TableOpts& o) {
    if (o.points < 2) return usage_error("--points must be >= 2");
    if (!(o.hi > o.lo)) return usage_error("need --tmax > --tmin");
    const berrylab::MixedLaw law =
        o.law_path.empty() ? berrylab::mu_hw(o.h, o.w) : load_law(o.law_path);
    json arr = json::array();
    std::string csv = "t,re,im,abs,gauss\n";
    for (long long i = 0; i < o.points; ++i) {
        const double t = o.lo + (o.hi - o.lo) * static_cast<double>(i)
                                    / static_cast<double>(o.points - 1);
        const std::complex<double> z = berrylab::cf_pow_rescaled(law, t, o.N);
        const double gauss = std::exp(-0.5 * t * t);
        if (o.format == "json") {
            json row;
            row["t"] = t;
            row["re"] = z.real();
            row["im"] = z.imag();
            row["abs"] = std::abs(z);
            row["gauss"] = gauss;
            arr.push_back(std::move(row));
        } else {
            csv += fmt17(t) + "," + fmt17(z.real()) + "," + fmt17(z.imag()) + "," +
                   fmt17(std::abs(z)) + "," + fmt17(gauss) + "\n";
        }
    }
    if (o.format == "json") write_output(o.out, arr.dump(2) + "\n");
    else if (o.format == "csv") write_output(o.out, csv);
    else return usage_error("cf-table --format must be csv or json");
    return 0;
}

int cmd_cdf_table(const TableOpts& o) {
    if (o.points < 2) return usage_error("--points must be >= 2");
    if (!(o.hi > o.lo)) return usage_error("need --smax > --smin");
    const berrylab::SumCdf F(o.h, o.w, o.N, o.tol);
    json arr = json::array();
    std::string csv = "s,F,err,Phi,diff\n";
    for (long long i = 0; i < o.points; ++i) {
        const double s = o.lo + (o.hi - o.lo) * static_cast<double>(i)
                                    / static_cast<double>(o.points - 1);
        const berrylab::CertifiedProb p = F.eval(s);
        const double phi = berrylab::std_normal_cdf(s);
        if (o.format == "json") {
            json row;
            row["s"] = s;
            row["F"] = p.value;
            row["err"] = p.err;
            row["Phi"] = phi;
            row["diff"] = p.value - phi;
            arr.push_back(std::move(row));
        } else {
            csv += fmt17(s) + "," + fmt17(p.value) + "," + fmt17(p.err) + "," + fmt17(phi) +
                   "," + fmt17(p.value - phi) + "\n";
        }
    }
    if (o.format == "json") write_output(o.out, arr.dump(2) + "\n");
    else if (o.format == "csv") write_output(o.out, csv);
    else return usage_error("cdf-table --format must be csv or json");
    return 0;
}

struct McOpts {
    double h = 0.5, w = 0.5;
    std::string law_path;
    long long N = 1;
    long long reps = 65536;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
};

int cmd_mc(const McOpts& o) {
    if (o.reps < 1) return usage_error("--reps must be >= 1");
    const berrylab::MixedLaw law =
        o.law_path.empty() ? berrylab::mu_hw(o.h, o.w) : load_law(o.law_path);
    const auto samples = berrylab::sample_normalized_sum(law, o.N, o.reps,
                                                         berrylab::SeedSpec{o.seed, 0}, o.threads);
    std::string csv = "index,value\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        csv += std::to_string(i) + "," + fmt17(samples[i]) + "\n";
    write_output(o.out, csv);
    return 0;
}

template <typename F>
int run_guarded(F&& f) {
    try {
        return f();
    } catch (const berrylab::TruncationError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const berrylab::QuadratureError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const berrylab::BudgetError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "usage error: bad JSON input: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 65;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified numerical checks for a Berry-Esseen bound family"};
    app.require_subcommand(1);
    // the family parameter is spelled --h, so help must not grab the short -h
    app.set_help_flag("--help", "print this help and exit");
    auto add_sub = [&app](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print this help and exit");
        return sub;
    };

    VerifyOpts vo;
    auto* verify = add_sub("verify", "sweep N: exact KS vs bounds, MC, smoothing");
    verify->add_option("--h", vo.h, "density height");
    verify->add_option("--w", vo.w, "density width");
    verify->add_option("--law", vo.law_path, "law JSON file (replaces --h/--w family)");
    verify->add_option("--N", vo.Ns, "sample sizes, strictly ascending");
    verify->add_option("--k", vo.k, "moment-match order (default 3)");
    verify->add_option("--tol", vo.tol, "certified KS tolerance");
    verify->add_option("--quad-tol", vo.quad_tol, "smoothing quadrature tolerance");
    verify->add_option("--modes", vo.modes, "comma list of exact,mc,bounds,smoothing");
    verify->add_option("--reps", vo.reps, "Monte Carlo replications per N");
    verify->add_option("--seed", vo.seed, "master seed");
    verify->add_option("--threads", vo.threads, "worker threads (0 = BERRYLAB_THREADS or 1)");
    verify->add_option("--conf", vo.conf, "DKW confidence level");
    verify->add_option("--out", vo.out, "output file (default stdout)");
    verify->add_option("--format", vo.format, "csv, json, or svg");

    long long example_N = 0;
    std::string example_out;
    auto* example = add_sub("example", "bound chain for the vanishing-density family");
    example->add_option("--N", example_N, "sample size, >= 100000")->required();
    example->add_option("--out", example_out, "CSV output file");

    ReverseOpts ro;
    auto* reverse = add_sub("reverse", "anti-concentration lower bound check");
    reverse->add_option("--h", ro.h, "density height");
    reverse->add_option("--w", ro.w, "density width");
    reverse->add_option("--N", ro.N, "sample size");
    reverse->add_option("--tol", ro.tol, "certified KS tolerance");
    reverse->add_flag("--witness", ro.witness, "search a witness N against a candidate rate");
    reverse->add_option("--C", ro.C, "candidate constant C");
    reverse->add_option("--c", ro.c, "candidate constant c");
    reverse->add_option("--rho", ro.rho, "candidate h exponent shift");
    reverse->add_option("--rhop", ro.rho_prime, "candidate w exponent shift");
    reverse->add_option("--out", ro.out, "CSV output file");

    int bounds_k = 3;
    double bounds_h = 0.5, bounds_w = 0.5, bounds_E = 0.0;
    long long bounds_N = 8;
    std::string bounds_out;
    auto* bounds = add_sub("bounds", "theorem right-hand sides as JSON");
    bounds->add_option("--k", bounds_k, "moment-match order");
    bounds->add_option("--h", bounds_h, "density height");
    bounds->add_option("--w", bounds_w, "density width");
    bounds->add_option("--N", bounds_N, "sample size");
    bounds->add_option("--E", bounds_E, "absolute (k+1)-moment (default: computed from family)");
    bounds->add_option("--out", bounds_out, "output file");

    KsOpts ko;
    auto* ks = add_sub("ks", "KS distance to the standard normal as JSON");
    ks->add_option("--h", ko.h, "density height");
    ks->add_option("--w", ko.w, "density width");
    ks->add_option("--N", ko.N, "sample size");
    ks->add_option("--tol", ko.tol, "certified tolerance");
    ks->add_flag("--mc", ko.mc, "statistical estimate instead of certified");
    ks->add_option("--law", ko.law_path, "law JSON file (with --mc)");
    ks->add_option("--reps", ko.reps, "Monte Carlo replications");
    ks->add_option("--conf", ko.conf, "DKW confidence level");
    ks->add_option("--seed", ko.seed, "master seed");
    ks->add_option("--threads", ko.threads, "worker threads");
    ks->add_option("--out", ko.out, "output file");

    TableOpts cfo;
    auto* cft = add_sub("cf-table", "characteristic function of the normalized sum");
    cft->add_option("--h", cfo.h, "density height");
    cft->add_option("--w", cfo.w, "density width");
    cft->add_option("--law", cfo.law_path, "law JSON file");
    cft->add_option("--N", cfo.N, "sample size");
    cft->add_option("--tmin", cfo.lo, "grid start");
    cft->add_option("--tmax", cfo.hi, "grid end");
    cft->add_option("--points", cfo.points, "grid size");
    cft->add_option("--out", cfo.out, "output file");
    cft->add_option("--format", cfo.format, "csv or json");

    TableOpts cdo;
    cdo.lo = -3.0;
    cdo.hi = 3.0;
    cdo.points = 121;
    auto* cdt = add_sub("cdf-table", "exact CDF of the normalized sum");
    cdt->add_option("--h", cdo.h, "density height");
    cdt->add_option("--w", cdo.w, "density width");
    cdt->add_option("--N", cdo.N, "sample size");
    cdt->add_option("--smin", cdo.lo, "grid start");
    cdt->add_option("--smax", cdo.hi, "grid end");
    cdt->add_option("--points", cdo.points, "grid size");
    cdt->add_option("--tol", cdo.tol, "engine tolerance");
    cdt->add_option("--out", cdo.out, "output file");
    cdt->add_option("--format", cdo.format, "csv or json");

    McOpts mo;
    auto* mc = add_sub("mc", "deterministic normalized-sum samples as CSV");
    mc->add_option("--h", mo.h, "density height");
    mc->add_option("--w", mo.w, "density width");
    mc->add_option("--law", mo.law_path, "law JSON file");
    mc->add_option("--N", mo.N, "sample size");
    mc->add_option("--reps", mo.reps, "replications");
    mc->add_option("--seed", mo.seed, "master seed");
    mc->add_option("--threads", mo.threads, "worker threads");
    mc->add_option("--out", mo.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    if (app.got_subcommand(verify)) return run_guarded([&] { return cmd_verify(vo); });
    if (app.got_subcommand(example))
        return run_guarded([&] { return cmd_example(example_N, example_out); });
    if (app.got_subcommand(reverse)) return run_guarded([&] { return cmd_reverse(ro); });
    if (app.got_subcommand(bounds))
        return run_guarded(
            [&] { return cmd_bounds(bounds_k, bounds_h, bounds_w, bounds_N, bounds_E, bounds_out); });
    if (app.got_subcommand(ks)) return run_guarded([&] { return cmd_ks(ko); });
    if (app.got_subcommand(cft)) return run_guarded([&] { return cmd_cf_table(cfo); });
    if (app.got_subcommand(cdt)) return run_guarded([&] { return cmd_cdf_table(cdo); });
    if (app.got_subcommand(mc)) return run_guarded([&] { return cmd_mc(mo); });
    return 64;
}
