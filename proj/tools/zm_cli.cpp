#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zm/blocks.hpp"
#include "zm/branchc.hpp"
#include "zm/harness.hpp"
#include "zm/hyper.hpp"
#include "zm/quadrature.hpp"
#include "zm/special.hpp"

using namespace zm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

using Params = std::map<std::string, CNum>;

struct FnEntry {
    std::vector<std::string> keys;
    // defaults for optional keys
    Params defaults;
    std::string regime;
    std::function<EvalResult(const Params&)> run;
};

EvalResult plain_value(CNum v) {
    EvalResult r;
    r.value = v;
    return r;
}

EvalResult from_hyper(const HyperEval& h) {
    EvalResult r;
    r.value = h.value;
    r.abs_err = h.abs_err;
    r.terms = h.terms;
    return r;
}

double real_of(const Params& p, const std::string& key) {
    const CNum v = p.at(key);
    if (v.imag() != 0.0) throw Error(ErrorKind::usage, "--" + key + " must be real");
    return v.real();
}

int int_of(const Params& p, const std::string& key) {
    const double v = real_of(p, key);
    if (v != std::round(v) || std::abs(v) > 1e9) throw Error(ErrorKind::usage, "--" + key + " must be an integer");
    return static_cast<int>(v);
}

IdentityCase case_of(const Params& p) {
    IdentityCase q;
    q.s = p.at("s");
    q.a = p.at("a");
    q.b = p.at("b");
    if (p.count("c")) q.c = p.at("c");
    if (p.count("d")) q.d = real_of(p, "d");
    return q;
}

const std::map<std::string, FnEntry>& functions() {
    static const std::map<std::string, FnEntry> t = [] {
        std::map<std::string, FnEntry> m;
        const Params c0{{"c", 0.0}};
        const Params d1{{"d", 1.0}};
        const Params cd{{"c", 0.0}, {"d", 1.0}};
        m["plog"] = {{"z"}, {}, "z != 0", [](const Params& p) { return plain_value(plog(p.at("z"))); }};
        m["cpow"] = {{"a", "b"}, {}, "a != 0 or Re b > 0", [](const Params& p) { return plain_value(cpow(p.at("a"), p.at("b"))); }};
        m["frac"] = {{"z"}, {}, "any z", [](const Params& p) { return plain_value(frac(p.at("z"))); }};
        m["floorc"] = {{"z"}, {}, "any z", [](const Params& p) { return plain_value(floorc(p.at("z"))); }};
        m["logsin_split"] = {{"z"}, {}, "z not an integer", [](const Params& p) { return plain_value(logsin_split(p.at("z"))); }};
        m["branch_plan"] = {{"a", "b", "d"}, d1, "d > 0; value is d+ + i d-", [](const Params& p) {
                                const BranchPlan bp = branch_plan(p.at("a"), p.at("b"), real_of(p, "d"));
                                return plain_value({bp.d_plus, double(bp.d_minus)});
                            }};
        m["gamma"] = {{"z"}, {}, "z not a pole", [](const Params& p) { return gamma(p.at("z")); }};
        m["digamma"] = {{"z"}, {}, "z not a pole", [](const Params& p) { return digamma(p.at("z")); }};
        m["hurwitz_em"] = {{"s", "x"}, {}, "s != 1, x off the nonpositive integers", [](const Params& p) {
                               return hurwitz_em(p.at("s"), p.at("x"));
                           }};
        m["polylog"] = {{"s", "z"}, {}, "any s; z != 1 when Re s <= 1", [](const Params& p) {
                            return polylog(p.at("s"), p.at("z"));
                        }};
        m["lerch_phi"] = {{"s", "z", "x"}, {}, "|z| <= 1, Re x > 0", [](const Params& p) {
                              return lerch_phi(p.at("s"), p.at("z"), p.at("x"));
                          }};
        m["upper_gamma"] = {{"nu", "z"}, {}, "z != 0", [](const Params& p) { return plain_value(upper_gamma(p.at("nu"), p.at("z"))); }};
        m["f1f1"] = {{"alpha", "beta", "z"}, {}, "beta not a nonpositive integer", [](const Params& p) {
                         return from_hyper(f1f1(p.at("alpha"), p.at("beta"), p.at("z")));
                     }};
        m["f1f2"] = {{"alpha", "beta", "gamma", "z"}, {}, "2 sqrt|z| <= 40", [](const Params& p) {
                         return from_hyper(f1f2(p.at("alpha"), p.at("beta"), p.at("gamma"), p.at("z")));
                     }};
        m["f2f1"] = {{"a", "b", "c", "z"}, {}, "z off [1, inf)", [](const Params& p) {
                         return from_hyper(f2f1(p.at("a"), p.at("b"), p.at("c"), p.at("z")));
                     }};
        m["f2f1_unit"] = {{"beta", "z"}, {}, "2F1(1, beta; beta + 1; z), z off [1, inf)", [](const Params& p) {
                              return from_hyper(f2f1_unit(p.at("beta"), p.at("z")));
                          }};
        m["kummer_check"] = {{"s", "z"}, {}, "s not an integer, z != 0, -1; value is the relative residual",
                             [](const Params& p) { return plain_value(kummer_check(p.at("s"), p.at("z"))); }};
        m["f_sk"] = {{"s", "a", "b", "c", "d", "k"}, cd, "s not a positive integer, k >= 1", [](const Params& p) {
                         return f_sk(case_of(p), int_of(p, "k"));
                     }};
        m["f_sk1"] = {{"s", "a", "b", "c", "d", "k"}, cd, "as f_sk", [](const Params& p) { return f_sk1(case_of(p), int_of(p, "k")); }};
        m["f_sk2"] = {{"s", "a", "b", "c", "d", "k"}, cd, "as f_sk", [](const Params& p) { return f_sk2(case_of(p), int_of(p, "k")); }};
        m["g_sk"] = {{"s", "a", "b", "c", "k"}, c0, "s not a nonnegative integer", [](const Params& p) {
                         return g_sk(p.at("s"), p.at("a"), p.at("b"), p.at("c"), int_of(p, "k"));
                     }};
        m["F_sk"] = {{"s", "a", "b", "c", "d", "k"}, cd, "as f_sk", [](const Params& p) { return F_sk(case_of(p), int_of(p, "k")); }};
        m["F_pair"] = {{"s", "a", "b", "c", "d", "k"}, cd, "as f_sk", [](const Params& p) { return F_pair(case_of(p), int_of(p, "k")); }};
        m["F_shift"] = {{"s", "a", "b", "c", "d", "k", "n"}, cd, "n >= 0", [](const Params& p) {
                            return F_shift(case_of(p), int_of(p, "k"), int_of(p, "n"));
                        }};
        m["mellin_exp_tail"] = {{"s", "alpha", "x"}, {}, "x > 0, alpha != 0", [](const Params& p) {
                                    return plain_value(mellin_exp_tail(p.at("s"), p.at("alpha"), real_of(p, "x")));
                                }};
        m["I_series"] = {{"s", "a", "b", "c", "d"}, cd, "Re a != 0", [](const Params& p) { return I_series(case_of(p)); }};
        m["I_series_real"] = {{"s", "a", "b", "c", "d"}, cd, "real a != 0, real b", [](const Params& p) {
                                  return I_series_real(case_of(p));
                              }};
        m["g_sum"] = {{"s", "a", "b", "c"}, c0, "Re s < 1 (b not in Z), Re s < 0 (b in Z)", [](const Params& p) {
                          return g_sum(p.at("s"), p.at("a"), p.at("b"), p.at("c"));
                      }};
        m["R_remainder"] = {{"s", "a", "b", "d"}, d1, "real a > 0, real b", [](const Params& p) {
                                return R_remainder(p.at("s"), real_of(p, "a"), real_of(p, "b"), real_of(p, "d"));
                            }};
        m["M_lhs"] = {{"s", "a", "b", "d"}, d1, "real a != 0, s != 1", [](const Params& p) {
                          return M_lhs(p.at("s"), real_of(p, "a"), real_of(p, "b"), real_of(p, "d"));
                      }};
        m["logsine_mellin_finite"] = {{"s", "a", "b", "d"}, d1, "Re s < 0, Re a != 0", [](const Params& p) {
                                          return logsine_mellin_finite(case_of(p));
                                      }};
        m["logsine_mellin_tail"] = {{"s", "a", "b", "d"}, d1, "Re s > 1, real a != 0, real b", [](const Params& p) {
                                        return logsine_mellin_tail(case_of(p));
                                    }};
        m["H_lhs"] = {{"s", "a", "b", "d"}, d1, "s not in {0, 1, 2, ...}, real a != 0", [](const Params& p) {
                          return H_lhs(p.at("s"), real_of(p, "a"), real_of(p, "b"), real_of(p, "d"));
                      }};
        m["hurwitz_continued"] = {{"s", "b", "a", "d"}, {{"a", 1.0}, {"d", 1.0}}, "s != 1, a > 0", [](const Params& p) {
                                      return hurwitz_continued(p.at("s"), real_of(p, "b"), real_of(p, "a"), real_of(p, "d"));
                                  }};
        m["hurwitz_derivative_at_zero"] = {{"b", "a", "d"}, {{"a", 1.0}, {"d", 1.0}}, "a > 0", [](const Params& p) {
                                               return hurwitz_derivative_at_zero(real_of(p, "b"), real_of(p, "a"), real_of(p, "d"));
                                           }};
        m["hurwitz_regular_at_one"] = {{"b", "a", "d"}, {{"a", 1.0}, {"d", 1.0}}, "a > 0", [](const Params& p) {
                                           return hurwitz_regular_at_one(real_of(p, "b"), real_of(p, "a"), real_of(p, "d"));
                                       }};
        m["ls_closed"] = {{"n", "a", "b", "d"}, d1, "n >= 1, real a != 0", [](const Params& p) {
                              return ls_closed(int_of(p, "n"), real_of(p, "a"), real_of(p, "b"), real_of(p, "d"));
                          }};
        return m;
    }();
    return t;
}

const std::vector<std::string> kParamKeys{"s", "a", "b", "c", "d", "k", "n", "z", "x", "alpha", "beta", "gamma", "nu"};

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Params collect(const std::map<std::string, std::string>& raw, const std::vector<std::string>& keys, const Params& defaults,
               const std::string& what) {
    Params p;
    for (const auto& [key, text] : raw) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw Error(ErrorKind::usage, what + " does not take --" + key);
        p[key] = parse_complex(text);
    }
    for (const auto& [key, v] : defaults)
        if (!p.count(key)) p[key] = v;
    for (const std::string& key : keys)
        if (!p.count(key)) throw Error(ErrorKind::usage, what + " needs --" + key);
    return p;
}

void print_eval(const std::string& fn, const Params& p, const EvalResult& r, Format f) {
    if (f == Format::plain) {
        std::cout << num17(r.value.real()) << " " << num17(r.value.imag()) << " " << num17(r.abs_err) << "\n";
        return;
    }
    if (f == Format::csv) {
        std::cout << "fn,value_re,value_im,abs_err,terms,converged\n"
                  << fn << "," << num17(r.value.real()) << "," << num17(r.value.imag()) << "," << num17(r.abs_err) << ","
                  << r.terms << "," << (r.converged ? "true" : "false") << "\n";
        return;
    }
    std::cout << "{\"fn\": " << nlohmann::json(fn).dump() << ", \"params\": {";
    bool first = true;
    for (const auto& [k, v] : p) {
        std::cout << (first ? "" : ", ") << "\"" << k << "\": [" << num17(v.real()) << ", " << num17(v.imag()) << "]";
        first = false;
    }
    std::cout << "}, \"value_re\": " << num17(r.value.real()) << ", \"value_im\": " << num17(r.value.imag())
              << ", \"abs_err\": " << num17(r.abs_err) << ", \"terms\": " << r.terms
              << ", \"converged\": " << (r.converged ? "true" : "false") << "}\n";
}

int error_exit(const Error& e) {
    std::cerr << "zm: " << e.what() << "\n";
    return e.kind() == ErrorKind::convergence ? kExitFail : kExitUsage;
}

Kernel kernel_of(const std::string& name) {
    for (Kernel k : {Kernel::frac_part, Kernel::log_sine, Kernel::sin_kernel, Kernel::exp_kernel, Kernel::floor_step,
                     Kernel::log_one_minus})
        if (name == kernel_name(k)) return k;
    throw Error(ErrorKind::usage, "unknown kernel '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zm: Mellin-type fractional-part and log-sine identities, evaluation and verification"};
    app.require_subcommand(1);

    std::string fn, format_name, suite, out_path, kind = "I";
    std::map<std::string, std::string> raw;
    double tol = 0.0, oracle_tol = 1e-9;
    std::int64_t max_terms = 1000000;
    int threads = 1, points = 100;
    std::uint64_t seed = default_grid().seed;
    bool timing = false;

    auto add_params = [&](CLI::App* sub) {
        for (const std::string& key : kParamKeys)
            sub->add_option_function<std::string>("--" + key, [&raw, key](const std::string& v) { raw[key] = v; },
                                                  "complex literal, e.g. 1.5, 2i, -0.5-1e-3i");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate one function at a point");
    eval->add_option("--fn", fn, "function name (see list)")->required();
    add_params(eval);
    eval->add_option("--format", format_name, "plain, json or csv")->default_val("plain");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite and emit its report");
    verify->add_option("--suite", suite, "suite id (see list)")->required();
    verify->add_option("--tol", tol, "override residual tolerances")->envname("ZM_TOL");
    verify->add_option("--max-terms", max_terms, "series term budget")->envname("ZM_MAX_TERMS");
    verify->add_option("--threads", threads, "worker threads; 1 gives byte-identical output")->envname("ZM_THREADS");
    verify->add_option("--seed", seed, "seed for randomized grids");
    verify->add_option("--points", points, "random points for randomized suites");
    verify->add_option("--format", format_name, "json, csv or plain")->default_val("json");
    verify->add_option("--out", out_path, "write the report here instead of stdout");
    verify->add_flag("--timing", timing, "record wall time in the summary");

    CLI::App* oracle = app.add_subcommand("oracle", "evaluate an integral by quadrature");
    oracle->add_option("--kind", kind, "I or a kernel: frac-part, log-sine, sin-kernel, exp-kernel, floor-step, log-one-minus")
        ->default_val("I");
    add_params(oracle);
    std::string lo_text = "0", hi_text = "inf";
    oracle->add_option("--lo", lo_text, "lower limit")->default_val("0");
    oracle->add_option("--hi", hi_text, "upper limit or inf")->default_val("inf");
    oracle->add_option("--tol", oracle_tol, "quadrature tolerance")->envname("ZM_TOL")->default_val(1e-9);
    oracle->add_option("--format", format_name, "plain, json or csv")->default_val("plain");

    CLI::App* list = app.add_subcommand("list", "list suites and functions with their regimes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*list) {
            std::cout << "suites:\n";
            for (const SuiteInfo& s : suite_list()) std::cout << "  " << s.id << "  " << s.summary << "\n";
            std::cout << "functions:\n";
            for (const auto& [name, e] : functions()) {
                std::cout << "  " << name << "(";
                for (std::size_t i = 0; i < e.keys.size(); ++i) std::cout << (i ? ", " : "") << e.keys[i];
                std::cout << ")  " << e.regime << "\n";
            }
            std::cout << "oracle kinds:\n  I (s, a, b, c, d; Re s > 0)\n";
            for (Kernel k : {Kernel::frac_part, Kernel::log_sine, Kernel::sin_kernel, Kernel::exp_kernel,
                             Kernel::floor_step, Kernel::log_one_minus})
                std::cout << "  " << kernel_name(k) << " (s, a, b, c, k on [lo, hi])\n";
            return kExitPass;
        }
        const Format fmt = parse_format(format_name);
        if (*eval) {
            const auto it = functions().find(fn);
            if (it == functions().end()) throw Error(ErrorKind::usage, "unknown function '" + fn + "'");
            const Params p = collect(raw, it->second.keys, it->second.defaults, fn);
            const EvalResult r = it->second.run(p);
            print_eval(fn, p, r, fmt);
            return r.converged ? kExitPass : kExitFail;
        }
        if (*verify) {
            if (threads < 1) throw Error(ErrorKind::usage, "--threads must be >= 1");
            if (points < 1) throw Error(ErrorKind::usage, "--points must be >= 1");
            GridSpec g = default_grid();
            g.seed = seed;
            g.random_points = points;
            RunOptions opt;
            opt.tol = tol;
            opt.threads = threads;
            opt.max_terms = max_terms;
            opt.timing = timing;
            const Report rep = run_suite(suite, g, opt);
            if (out_path.empty()) {
                emit(rep, fmt, std::cout);
            } else {
                std::ofstream f(out_path);
                if (!f) throw Error(ErrorKind::io, "cannot write " + out_path);
                emit(rep, fmt, f);
                if (!f) throw Error(ErrorKind::io, "write failed: " + out_path);
            }
            std::cerr << rep.suite << ": " << rep.summary.passes << "/" << rep.summary.cases << " passed\n";
            return rep.all_pass() ? kExitPass : kExitFail;
        }
        if (*oracle) {
            QuadResult q;
            Params p;
            if (kind == "I") {
                p = collect(raw, {"s", "a", "b", "c", "d"}, {{"c", 0.0}, {"d", 1.0}}, "oracle I");
                OracleCase oc;
                oc.s = p["s"];
                oc.a = p["a"];
                oc.b = p["b"];
                oc.c = p["c"];
                oc.d = real_of(p, "d");
                q = I_oracle(oc, oracle_tol);
            } else {
                IntegrandSpec sp;
                sp.kind = kernel_of(kind);
                p = collect(raw, {"s", "a", "b", "c", "k"}, {{"a", 1.0}, {"b", 0.0}, {"c", 0.0}, {"k", 1.0}}, "oracle " + kind);
                sp.s = p["s"];
                sp.a = p["a"];
                sp.b = p["b"];
                sp.c = p["c"];
                sp.k = real_of(p, "k");
                sp.lo = parse_complex(lo_text).real();
                sp.hi = hi_text == "inf" ? std::numeric_limits<double>::infinity() : parse_complex(hi_text).real();
                if (!(sp.hi > sp.lo)) throw Error(ErrorKind::usage, "oracle needs hi > lo");
                if (std::isfinite(sp.hi)) sp.breakpoints = kernel_breakpoints(sp, sp.hi);
                q = integrate(sp, oracle_tol);
            }
            EvalResult r;
            r.value = q.value;
            r.abs_err = q.err_est;
            r.terms = q.evals;
            r.converged = q.err_est <= oracle_tol;
            print_eval("oracle:" + kind, p, r, fmt);
            return r.converged ? kExitPass : kExitFail;
        }
    } catch (const Error& e) {
        return error_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "zm: error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
