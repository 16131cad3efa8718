#include "nonlocal_evolve/solver_hom.hpp"

#include "nonlocal_evolve/parallel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace nlevolve {

std::string_view to_string(StepRule rule)
{
    switch (rule)
    {
        case StepRule::Uniform: return "uniform";
        case StepRule::FixedT: return "fixed-t";
        case StepRule::InverseSqrtN: return "inverse-sqrt-n";
    }
    return "uniform";
}

double step_size(StepRule rule, double d1, double smoothness, int N, double c1)
{
    if (N < 1)
        throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    switch (rule)
    {
        case StepRule::Uniform:
            if (!(smoothness > 0 && smoothness <= 1))
                throw Error(ErrorKind::InvalidArgument, "smoothness alpha must lie in (0, 1]");
            return std::sqrt(2 * kPi * d1 / (smoothness * (N + 1)));
        case StepRule::FixedT:
            if (N < 2)
                throw Error(ErrorKind::InvalidArgument, "fixed-t step needs N >= 2");
            if (!(c1 > 0))
                throw Error(ErrorKind::InvalidArgument, "c1 must be positive");
            return c1 * std::log(double(N)) / N;
        case StepRule::InverseSqrtN:
            return 1 / std::sqrt(double(N));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown step rule");
}

SincPlan make_plan(const SpectralCharacteristics& spec, const NonlocalSpec& nl,
                   int N, const PlanOptions& opts)
{
    spec.validate();
    nl.validate();

    SincPlan plan;
    plan.N = N;
    plan.options = opts;
    plan.spectral = spec;
    plan.nonlocal = nl;
    plan.verdict = check_solvability(nl, spec);
    if (plan.verdict == Solvability::Unknown && !opts.force)
        throw Error(ErrorKind::Unsolvable,
                    "neither sum |alpha| < 1 nor sum |alpha| exp(-rho0 t) < 1 holds");
    plan.Q = q_bound(nl, spec);
    plan.d1 = strip_height(spec);
    plan.contour = integration_hyperbola(spec);
    plan.h = step_size(opts.rule, plan.d1, opts.smoothness, N, opts.c1);

    plan.nodes.reserve(static_cast<std::size_t>(2 * N + 1));
    for (int k = -N; k <= N; ++k)
    {
        double const xi = k * plan.h;
        ContourPoint const p = hyperbola_eval(plan.contour, xi);
        plan.nodes.push_back({xi, p.z, p.dz, symbol_B(nl, p.z)});
    }
    return plan;
}

double negligible_log_magnitude()
{
    return std::log(std::numeric_limits<double>::min()) + 20;
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Scalar factor e^{-z t} z' / B(z) of node k, or nothing when negligible.
std::optional<Complex> hom_weight(const SincNode& node, double t)
{
    if (!finite(node.z) || !finite(node.dz))
        return std::nullopt;
    if (t > 0 && -t * node.z.real() < negligible_log_magnitude())
        return std::nullopt;
    return std::exp(-node.z * t) * node.dz / node.symbol;
}

void check_dim(const OperatorModel& model, std::size_t n)
{
    if (model.dim() != n)
        throw Error(ErrorKind::InvalidArgument, "vector length does not match model dimension");
}

}  // namespace

CVector integrand_F(const SincPlan& plan, const OperatorModel& model,
                    std::span<const Complex> u0, double t, int k)
{
    check_dim(model, u0.size());
    if (k < -plan.N || k > plan.N)
        throw Error(ErrorKind::InvalidArgument, "node index outside the plan");
    SincNode const& node = plan.node(k);
    CVector out(u0.size(), 0.0);
    auto const weight = hom_weight(node, t);
    if (!weight)
        return out;
    CVector const r = model.resolvent_apply(node.z, u0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = *weight * (r[i] - u0[i] / node.z);
    return out;
}

CVector contour_sum(const SincPlan& plan, std::size_t dim, unsigned threads,
                    const std::function<CVector(int)>& term)
{
    std::vector<CVector> terms(plan.nodes.size());
    parallel_for(terms.size(), threads, [&](std::size_t i) {
        terms[i] = term(static_cast<int>(i) - plan.N);
    });

    auto at = [&](int k) -> CVector const& { return terms[std::size_t(k + plan.N)]; };

    CVector total(dim, 0.0);
    if (!at(0).empty())
        total = at(0);
    CVector pair(dim);
    for (int j = 1; j <= plan.N; ++j)
    {
        CVector const& plus = at(j);
        CVector const& minus = at(-j);
        if (plus.empty() && minus.empty())
            continue;
        for (std::size_t i = 0; i < dim; ++i)
        {
            Complex const a = plus.empty() ? Complex(0.0) : plus[i];
            Complex const b = minus.empty() ? Complex(0.0) : minus[i];
            pair[i] = a + b;
        }
        for (std::size_t i = 0; i < dim; ++i)
            total[i] += pair[i];
    }

    Complex const factor = plan.h / (2 * kPi * Complex(0, 1));
    for (auto& v : total)
        v *= factor;
    return total;
}

CVector solve_homogeneous(const SincPlan& plan, const OperatorModel& model,
                          std::span<const Complex> u0, double t, unsigned threads)
{
    check_dim(model, u0.size());
    if (!(t >= 0))
        throw Error(ErrorKind::InvalidArgument, "t must be non-negative");
    return contour_sum(plan, u0.size(), threads, [&](int k) -> CVector {
        SincNode const& node = plan.node(k);
        auto const weight = hom_weight(node, t);
        if (!weight)
            return {};
        CVector r = model.resolvent_apply(node.z, u0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = *weight * (r[i] - u0[i] / node.z);
        return r;
    });
}

std::vector<RateEstimate> estimate_rate_constants(std::span<const ErrorSample> samples)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<RateEstimate> out;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    {
        auto const& a = samples[i];
        auto const& b = samples[i + 1];
        bool const above_floor = a.error > 50 * eps * a.scale && b.error > 50 * eps * b.scale;
        bool const valid = above_floor && b.N > a.N && a.error > 0 && b.error > 0;
        double c = 0;
        if (valid)
            c = std::log(a.error / b.error) / (std::sqrt(double(b.N)) - std::sqrt(double(a.N)));
        out.push_back({a.N, c, valid});
    }
    return out;
}

}  // namespace nlevolve
