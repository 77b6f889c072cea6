// One [PASS]/[FAIL] line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zm/harness.hpp"

using namespace zm;

namespace {

struct Timed {
    Report report;
    double seconds = 0.0;
};

Timed timed_run(const std::string& suite, const GridSpec& g = default_grid()) {
    const auto t0 = std::chrono::steady_clock::now();
    Timed t;
    t.report = run_suite(suite, g);
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

struct Tally {
    std::size_t n = 0, fails = 0;
    double worst = 0.0;
    std::string first_fail;
};

// records of the given checks must pass with a measure <= tol
Tally tally(const Report& r, const std::set<std::string>& checks, double tol) {
    Tally t;
    for (const VerificationRecord& v : r.records) {
        if (!checks.count(v.check)) continue;
        ++t.n;
        const double m = std::abs(v.lhs) < 1.0 ? v.abs_resid : v.rel_resid;
        const bool ok = v.pass && std::isfinite(m) && m <= tol;
        if (std::isfinite(m)) t.worst = std::max(t.worst, m);
        if (!ok) {
            ++t.fails;
            if (t.first_fail.empty()) {
                std::ostringstream o;
                o << v.check << " #" << v.index << " " << describe(v.cs) << " " << v.notes;
                t.first_fail = o.str();
            }
        }
    }
    return t;
}

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    if (!ok) ++failures;
}

std::string detail(const Tally& t) {
    std::ostringstream o;
    o.precision(3);
    o << t.n << " checks, worst " << t.worst;
    if (t.fails) o << ", " << t.fails << " failing, first: " << t.first_fail;
    return o.str();
}

bool ok_tally(const Tally& t) { return t.n > 0 && t.fails == 0; }

}  // namespace

int main() {
    // 1. Kummer relation on 100 seeded random points
    {
        const Timed k = timed_run("kummer");
        const Tally t = tally(k.report, {"random"}, 1e-9);
        const Tally cut = tally(k.report, {"on-cut"}, 1e-9);
        std::ostringstream o;
        o.precision(3);
        o << "Kummer relation <= 1e-9 relative: " << detail(t) << "; cut points " << cut.n << "/" << cut.n - cut.fails
          << "; " << k.seconds << " s";
        report(1, ok_tally(t) && t.n == 100 && ok_tally(cut) && k.seconds <= 10.0, o.str());
    }
    // 2. fractional-part identity, both regimes
    {
        const Timed r = timed_run("theorem1");
        const Tally p = tally(r.report, {"principal"}, 1e-8);
        const Tally s = tally(r.report, {"second"}, 1e-8);
        bool neg = false, pos = false;
        for (const auto& v : r.report.records) {
            if (v.check != "principal") continue;
            neg |= v.cs.a.real() < 0;
            pos |= v.cs.a.real() > 0;
        }
        std::ostringstream o;
        o.precision(3);
        o << "fractional-part identity <= 1e-8: principal " << detail(p) << "; second " << detail(s) << "; " << r.seconds
          << " s";
        report(2, ok_tally(p) && ok_tally(s) && neg && pos && r.seconds <= 60.0, o.str());
    }
    // 3. log-sine identity including the indicator branches
    {
        const Timed r = timed_run("theorem2");
        const Tally p = tally(r.report, {"principal"}, 1e-7);
        const Tally s = tally(r.report, {"second"}, 1e-7);
        bool bint = false, yint = false, s04 = false;
        for (const auto& v : r.report.records) {
            const double y = v.cs.a.real() * v.cs.d + v.cs.b.real();
            if (v.check == "principal") {
                bint |= v.cs.b.real() == std::round(v.cs.b.real());
                yint |= std::abs(y - std::round(y)) < 1e-15;
            }
            s04 |= v.check == "second" && v.cs.s == CNum(0.4);
        }
        report(3, ok_tally(p) && ok_tally(s) && bint && yint && s04,
               "log-sine identity <= 1e-7: principal " + detail(p) + "; second " + detail(s));
    }
    // 4. series vs oracle, real-path reduction, bounds
    {
        const Timed r = timed_run("convergence");
        const Tally re = tally(r.report, {"oracle-real"}, 1e-6);
        const Tally cx = tally(r.report, {"oracle-complex"}, 1e-5);
        const Tally rp = tally(r.report, {"real-path"}, 1e-12);
        const Tally bd = tally(r.report, {"bound-v", "bound-vi", "bound-vii", "bound-viii", "bound-ix"}, 0.0);
        report(4, ok_tally(re) && ok_tally(cx) && ok_tally(rp) && ok_tally(bd),
               "I_s series vs quadrature: real " + detail(re) + "; complex " + detail(cx) + "; real-path " + detail(rp) +
                   "; bounds " + detail(bd));
    }
    const Timed hz = timed_run("hurwitz-identity");
    // 5. continued Hurwitz zeta
    {
        const Tally c = tally(hz.report, {"continuation"}, 1e-9);
        const Tally z0 = tally(hz.report, {"value-at-zero"}, 1e-8);
        const Tally m1 = tally(hz.report, {"zeta-minus-one"}, 1e-9);
        report(5, ok_tally(c) && ok_tally(z0) && ok_tally(m1),
               "Hurwitz continuation vs Euler-Maclaurin <= 1e-9: " + detail(c) + "; zeta(0,1-{b}) " + detail(z0) +
                   "; zeta(-1) = -1/12 " + detail(m1));
    }
    // 6. functional equation and Hurwitz identity
    {
        const Timed fe = timed_run("functional-equation");
        const Tally f = tally(fe.report, {"riemann"}, 1e-9);
        const Tally h = tally(hz.report, {"polylog-form", "reflected-pair"}, 1e-9);
        std::set<double> bs;
        for (const auto& v : hz.report.records)
            if (v.check == "polylog-form") bs.insert(v.cs.b.real());
        report(6, ok_tally(f) && ok_tally(h) && bs == std::set<double>{0.1, 0.3, 0.7},
               "functional equation " + detail(f) + "; Hurwitz identity " + detail(h));
    }
    // 7. exponential decay in Im b
    {
        const Timed r = timed_run("corollary-limit");
        const Tally t = tally(r.report, {"decay"}, std::log(2.0));
        report(7, ok_tally(t), "ratio within [e^{-2 pi D}/2, 2 e^{-2 pi D}], |log(ratio/expected)|: " + detail(t));
    }
    const Timed oc = timed_run("oracle-consistency");
    // 8. log-sine closed forms and the Gamma integral
    {
        const Timed r = timed_run("logsine-recurrence");
        const Tally v = tally(r.report, {"ls-vanishing"}, 1e-10);
        const Tally c = tally(r.report, {"ls-closed"}, 1e-8);
        const Tally z = tally(r.report, {"zeta-negative"}, 1e-9);
        const Tally g = tally(oc.report, {"gamma-integral"}, 1e-8);
        std::set<int> ns;
        for (const auto& rec : r.report.records)
            if (rec.check == "ls-closed") ns.insert(rec.k);
        report(8, ok_tally(v) && ok_tally(c) && ok_tally(z) && ok_tally(g) && ns == std::set<int>{1, 2, 3},
               "Ls vanishing " + detail(v) + "; closed forms vs quadrature " + detail(c) + "; zeta(-n) forms " +
                   detail(z) + "; Gamma integral " + detail(g));
    }
    // 9. termwise integral identities
    {
        const Tally f = tally(oc.report, {"sine-integral"}, 1e-8);
        const Tally F = tally(oc.report, {"sine-tail"}, 1e-7);
        int kmax = 0;
        for (const auto& v : oc.report.records) kmax = std::max(kmax, v.k);
        report(9, ok_tally(f) && ok_tally(F) && kmax == 20,
               "finite sine integrals <= 1e-8 " + detail(f) + "; sine tails <= 1e-7 " + detail(F));
    }
    // 10. determinism
    {
        bool same = true;
        std::size_t bytes = 0;
        for (const char* s : {"kummer", "theorem1", "corollary-limit"}) {
            GridSpec g = default_grid();
            g.seed = 77;
            const std::string a = emit_string(run_suite(s, g), Format::json);
            const std::string b = emit_string(run_suite(s, g), Format::json);
            same &= a == b;
            bytes += a.size();
        }
        report(10, same, "two single-threaded runs give byte-identical JSON (" + std::to_string(bytes) + " bytes compared)");
    }
    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
