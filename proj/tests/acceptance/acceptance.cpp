// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.  Usage: acceptance <path-to-nonlocal-evolve> <scratch-dir>

#include "support.hpp"

#include <nonlocal_evolve/harness.hpp>
#include <nonlocal_evolve/solver_inhom.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nlevolve;
using namespace nlevolve::test;

namespace {

// Tolerances
constexpr double kExample1Factor = 3.0;
constexpr double kExample1Floor = 1e-12;
constexpr double kSecondsPerN = 1.0;
constexpr double kRateLow = 1.3;
constexpr double kRateHigh = 1.7;
constexpr double kExample2Value = -1.92907820e-2;
constexpr double kExample2Tol = 1e-6;
constexpr double kExample3Factor = 10.0;
constexpr double kExample3MinDecay = 1.0;
constexpr double kOracleTol128 = 1e-6;
constexpr double kOracleTol256 = 1e-8;
constexpr double kSymmetryTol = 1e-12;
constexpr double kResolventTol = 1e-10;
constexpr double kSech2Tol = 1e-10;
constexpr double kEndpointTol = 1e-12;
constexpr double kNonlocalTol = 1e-6;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail)
{
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " -- "
              << detail << std::endl;
    if (!pass)
        ++failures;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct Timed {
    double value;
    double seconds;
};

Timed timed_point(const Problem& p, int N)
{
    PlanOptions o;
    o.rule = StepRule::InverseSqrtN;
    auto const start = std::chrono::steady_clock::now();
    double const v = solve_point(p, N, 0.5, 0.3, o);
    auto const stop = std::chrono::steady_clock::now();
    return {v, std::chrono::duration<double>(stop - start).count()};
}

std::vector<double> example1_errors;

void criterion_1()
{
    Problem const p = make_example(1);
    double const exact = p.exact(0.5, 0.3);
    bool pass = true;
    double worst_ratio = 1, slowest = 0;
    std::ostringstream d;
    for (std::size_t i = 0; i < kReferenceN.size(); ++i)
    {
        Timed const r = timed_point(p, kReferenceN[i]);
        double const err = std::abs(r.value - exact);
        example1_errors.push_back(err);
        slowest = std::max(slowest, r.seconds);
        if (kReferenceN[i] == 512)
        {
            pass = pass && err <= kExample1Floor;
            d << "N=512 " << sci(err) << "; ";
            continue;
        }
        double const ratio = err / kExample1ReferenceErrors[i];
        worst_ratio = std::max({worst_ratio, ratio, 1 / ratio});
        pass = pass && ratio <= kExample1Factor && ratio >= 1 / kExample1Factor;
    }
    pass = pass && slowest <= kSecondsPerN;
    d << "worst ratio to reference errors " << sci(worst_ratio) << " (allowed " << kExample1Factor
      << "); slowest N " << sci(slowest) << " s";
    report(1, "Example 1 errors", pass, d.str());
}

void criterion_2()
{
    std::vector<ErrorSample> s;
    for (std::size_t i = 0; i < kReferenceN.size(); ++i)
        s.push_back({kReferenceN[i], example1_errors[i], std::exp(-0.3 * kPi * kPi)});
    auto const rates = estimate_rate_constants(s);
    bool pass = true;
    std::ostringstream d;
    for (auto const& r : rates)
    {
        if (r.N < 16 || r.N > 128)
            continue;
        pass = pass && r.valid && r.c >= kRateLow && r.c <= kRateHigh;
        d << "N=" << r.N << ":" << sci(r.c) << " ";
    }
    report(2, "rate constants in [1.3, 1.7]", pass, d.str());
}

void criterion_3()
{
    Problem const p = make_example(2);
    std::vector<double> v;
    for (int N : kReferenceN)
        v.push_back(timed_point(p, N).value);
    double const d256 = std::abs(v[6] - kExample2Value);
    bool pass = d256 <= kExample2Tol;
    std::ostringstream d;
    d << "|u(256) - ref| " << sci(d256) << "; diffs";
    double prev = 1e300;
    for (std::size_t i = 2; i + 1 < v.size(); ++i)
    {
        double const step = std::abs(v[i + 1] - v[i]);
        pass = pass && step < prev;
        prev = step;
        d << " " << sci(step);
    }
    report(3, "Example 2 stabilization", pass, d.str());
}

void criterion_4()
{
    Problem const p = make_example(3);
    double const exact = p.exact(0.5, 0.3);
    bool pass = true;
    double worst = 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int const rows = 7;
    for (int i = 0; i < rows; ++i)
    {
        double const err = std::abs(timed_point(p, kReferenceN[i]).value - exact);
        double const ratio = err / kExample3ReferenceErrors[i];
        worst = std::max({worst, ratio, 1 / ratio});
        pass = pass && ratio <= kExample3Factor && ratio >= 1 / kExample3Factor;
        double const x = std::sqrt(double(kReferenceN[i])), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double const c = -(rows * sxy - sx * sy) / (rows * sxx - sx * sx);
    pass = pass && c >= kExample3MinDecay;
    report(4, "Example 3 errors", pass,
           "worst ratio to reference errors " + sci(worst) + "; fitted c " + sci(c));
}

void criterion_5()
{
    FdCase const c;
    auto const A = dense_of(c.model);
    auto const ref = oracle::nonlocal_solution(A, c.nl, c.u0, c.source(), 0.3);
    SourceTerm f;
    RVector const w = c.w;
    f.eval = [w](double t) {
        CVector v(w.begin(), w.end());
        for (auto& x : v)
            x *= std::exp(-t);
        return v;
    };
    PlanOptions o;
    o.smoothness = 1;
    auto const u0 = to_complex(c.u0);
    double errs[2];
    int const Ns[2] = {128, 256};
    for (int i = 0; i < 2; ++i)
    {
        SincPlan const plan = make_plan(c.model.spectral(), c.nl, Ns[i], o);
        errs[i] = max_diff(solve_full(plan, c.model, u0, &f, 0.3), ref);
    }
    report(5, "oracle equivalence on the 8x8 problem", errs[0] <= kOracleTol128 && errs[1] <= kOracleTol256,
           "N=128 " + sci(errs[0]) + ", N=256 " + sci(errs[1]));
}

void criterion_6()
{
    std::ostringstream d;
    bool pass = true;

    // conjugate symmetry of every solver part
    {
        FdCase const c;
        PlanOptions o;
        o.smoothness = 1;
        SincPlan const plan = make_plan(c.model.spectral(), c.nl, 64, o);
        SourceTerm f;
        f.eval = [w = c.w](double t) {
            CVector v(w.begin(), w.end());
            for (auto& x : v)
                x *= std::exp(-t);
            return v;
        };
        double worst = 0;
        for (double t : {0.0, 0.3, 1.0})
        {
            worst = std::max(worst, symmetry_residual(solve_homogeneous(plan, c.model, to_complex(c.u0), t)));
            worst = std::max(worst, symmetry_residual(solve_u1(plan, c.model, f, t)));
            worst = std::max(worst, symmetry_residual(solve_u2(plan, c.model, f, t)));
        }
        pass = pass && worst <= kSymmetryTol;
        d << "symmetry " << sci(worst);
    }

    // resolvent identity, 20 triples per model
    {
        std::mt19937_64 rng(17);
        auto const spec = SpectralCharacteristics::make(0.9, kPi / 4);
        std::vector<std::shared_ptr<const OperatorModel>> models = {
            std::make_shared<SpectralModeModel>(6), std::make_shared<FdLaplacianModel>(40),
            std::make_shared<GreenFunctionModel>(128, SectorOptions{}, 80),
            std::make_shared<DenseMatrixModel>(2, std::vector<double>{2.0, -1.0, -1.0, 2.0}, spec)};
        std::uniform_real_distribution<double> xi(-4, 4);
        double worst = 0;
        for (auto const& m : models)
        {
            Hyperbola const h = integration_hyperbola(m->spectral());
            for (int trial = 0; trial < 20; ++trial)
            {
                Complex const z1 = hyperbola_eval(h, xi(rng)).z, z2 = hyperbola_eval(h, xi(rng)).z;
                auto const v = test_vector(rng, *m);
                auto const r1 = m->resolvent_apply(z1, v), r2 = m->resolvent_apply(z2, v);
                auto const rr = m->resolvent_apply(z1, r2);
                double e = 0;
                for (std::size_t i = 0; i < v.size(); ++i)
                    e = std::max(e, std::abs(r1[i] - r2[i] - (z2 - z1) * rr[i]));
                worst = std::max(worst, e / std::max(norm_inf(r1), norm_inf(r2)));
            }
        }
        pass = pass && worst <= kResolventTol;
        d << "; resolvent identity " << sci(worst);
    }

    // sech^2 normalization
    {
        double const h = 0.25;
        Complex s = 0;
        for (int p = -64; p <= 64; ++p)
            s += mu_weight(0.0, 2.0, p, h);
        double const dev = std::abs(h * s.real() / 2 - 1);
        pass = pass && dev <= kSech2Tol;
        d << "; sech2 " << sci(dev);
    }

    // a(nu) endpoints
    {
        double worst = 0;
        for (double phi : {0.2, kPi / 6, 1.11, 1.4})
            for (double frac : {0.0, 0.19, 0.5, 0.9})
            {
                auto const s = SpectralCharacteristics::make(0.95 * kPi * kPi, phi, frac * 0.95 * kPi * kPi);
                double const d1 = strip_height(s);
                worst = std::max(worst, std::abs(family_axes(s, d1 / 2).a - s.rho0) / s.rho0);
                worst = std::max(worst, std::abs(family_axes(s, -d1 / 2).a - s.rho1) / s.rho0);
            }
        pass = pass && worst <= kEndpointTol;
        d << "; a(nu) endpoints " << sci(worst);
    }

    // nonlocal residual on Example 3, N = 128
    {
        SpectralModeModel const model(1);
        NonlocalSpec const nl{{0.5}, {0.2}, 1.0};
        SourceTerm f;
        f.eval = [](double t) { return CVector{Complex((1 + kPi * kPi) * std::exp(t))}; };
        CVector const u0{Complex(1 + 0.5 * std::exp(0.2))};
        PlanOptions o;
        o.smoothness = 1;
        SincPlan const plan = make_plan(model.spectral(), nl, 128, o);
        Complex const r = solve_full(plan, model, u0, &f, 0.0)[0]
                          + 0.5 * solve_full(plan, model, u0, &f, 0.2)[0] - u0[0];
        pass = pass && std::abs(r) <= kNonlocalTol;
        d << "; nonlocal residual " << sci(std::abs(r));
    }

    // m = 0 reduction
    {
        FdCase const c;
        PlanOptions o;
        o.smoothness = 1;
        SincPlan const plan = make_plan(c.model.spectral(), {}, 64, o);
        SourceTerm f;
        f.eval = [w = c.w](double) { return CVector(w.begin(), w.end()); };
        auto const u0 = to_complex(c.u0);
        auto const full = solve_full(plan, c.model, u0, &f, 0.3);
        auto sum = solve_homogeneous(plan, c.model, u0, 0.3);
        auto const u1 = solve_u1(plan, c.model, f, 0.3);
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += u1[i];
        bool const bitwise = full == sum && solve_full(plan, c.model, u0, nullptr, 0.3)
                                                == solve_homogeneous(plan, c.model, u0, 0.3);
        pass = pass && bitwise;
        d << "; m=0 bitwise " << (bitwise ? "yes" : "no");
    }
    report(6, "property suite", pass, d.str());
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion_7(const std::string& exe, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    struct Run {
        std::string name;
        std::string args;
    };
    std::vector<Run> const runs = {
        {"reproduce2", "reproduce --example 2 --format jsonl"},
        {"study3", "study --example 3 --h-exact-paper"},
        {"study2", "study --example 2 --alpha 0.45"},
    };
    bool pass = true;
    std::ostringstream d;
    for (auto const& r : runs)
    {
        std::string files[2];
        for (int i = 0; i < 2; ++i)
        {
            unsigned const th = i == 0 ? 1 : 8;
            auto const out = dir / (r.name + "_t" + std::to_string(th) + ".out");
            std::string const cmd = "\"" + exe + "\" " + r.args + " --threads " + std::to_string(th)
                                    + " --output \"" + out.string() + "\" > /dev/null";
            int const rc = std::system(cmd.c_str());
            if (rc != 0)
            {
                pass = false;
                d << r.name << " exit " << rc << "; ";
            }
            files[i] = slurp(out);
        }
        bool const same = !files[0].empty() && files[0] == files[1];
        pass = pass && same;
        d << r.name << (same ? " identical" : " DIFFERENT") << " (" << files[0].size() << " bytes); ";
    }
    report(7, "thread-count determinism", pass, d.str());
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 3)
    {
        std::cerr << "usage: acceptance <nonlocal-evolve> <scratch-dir>\n";
        return 2;
    }
    try
    {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7(argv[1], std::filesystem::path(argv[2]) / "acceptance_scratch");
    }
    catch (const std::exception& e)
    {
        std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
