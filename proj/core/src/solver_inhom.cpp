#include "nonlocal_evolve/solver_inhom.hpp"

#include "sinc_rules.hpp"

#include <cmath>

namespace nlevolve {

void SourceTerm::validate(const SpectralCharacteristics& spec) const
{
    if (!eval)
        throw Error(ErrorKind::InvalidArgument, "source term has no evaluator");
    if (!(decay_delta > 0 && decay_delta <= std::sqrt(2.0) * spec.rho0))
        throw Error(ErrorKind::InvalidArgument, "source decay delta must lie in (0, sqrt(2) rho0]");
    if (!(smoothness > 0 && smoothness <= 1))
        throw Error(ErrorKind::InvalidArgument, "source smoothness must lie in (0, 1]");
}

Complex mu_weight(Complex z, double t, int p, double h)
{
    double const x = p * h;
    // (t/2)(1 - tanh x) = t * logistic_minus(x), 1/cosh^2 x = 2 half_sech2(x)
    return t * detail::half_sech2(x) * std::exp(-t * z * detail::logistic_minus(x));
}

double omega_node(double t, int p, double h) { return t * detail::logistic_plus(p * h); }

InnerRule default_inner_rule(const SincPlan& plan) { return {plan.N, plan.h}; }

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Samples f(omega_p(T)) for p = -N..N.
std::vector<CVector> sample_source(const SourceTerm& f, double T, const InnerRule& rule,
                                   std::size_t dim)
{
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(2 * rule.N + 1));
    for (int p = -rule.N; p <= rule.N; ++p)
    {
        CVector v = f.eval(omega_node(T, p, rule.h));
        if (v.size() != dim)
            throw Error(ErrorKind::InvalidArgument, "source vector length does not match model");
        out.push_back(std::move(v));
    }
    return out;
}

// h sum_p mu(z, T, p) f_p, skipping negligible weights.
CVector inner_sum(Complex z, double T, const InnerRule& rule,
                  const std::vector<CVector>& samples, std::size_t dim)
{
    CVector acc(dim, 0.0);
    if (T <= 0)
        return acc;
    double const cutoff = negligible_log_magnitude();
    for (int p = -rule.N; p <= rule.N; ++p)
    {
        double const x = p * rule.h;
        double const log_mag = std::log(T * detail::half_sech2(x))
                               - T * z.real() * detail::logistic_minus(x);
        if (log_mag < cutoff)
            continue;
        Complex const mu = mu_weight(z, T, p, rule.h);
        axpy(mu, samples[std::size_t(p + rule.N)], acc);
    }
    for (auto& a : acc)
        a *= rule.h;
    return acc;
}

bool all_zero(const CVector& v)
{
    for (auto const& c : v)
        if (c != Complex(0.0))
            return false;
    return true;
}

InnerRule checked_rule(const SincPlan& plan, std::optional<InnerRule> inner)
{
    InnerRule const rule = inner.value_or(default_inner_rule(plan));
    if (rule.N < 1 || !(rule.h > 0))
        throw Error(ErrorKind::InvalidArgument, "inner rule needs N >= 1 and h > 0");
    return rule;
}

}  // namespace

CVector f_inner_quadrature(Complex z, double tj, const SourceTerm& f, int N, double h)
{
    if (!f.eval)
        throw Error(ErrorKind::InvalidArgument, "source term has no evaluator");
    InnerRule const rule{N, h};
    std::size_t const dim = f.eval(omega_node(tj, 0, h)).size();
    return inner_sum(z, tj, rule, sample_source(f, tj, rule, dim), dim);
}

CVector solve_u1(const SincPlan& plan, const OperatorModel& model, const SourceTerm& f,
                 double t, unsigned threads, std::optional<InnerRule> inner)
{
    if (!(t >= 0))
        throw Error(ErrorKind::InvalidArgument, "t must be non-negative");
    f.validate(plan.spectral);
    InnerRule const rule = checked_rule(plan, inner);
    std::size_t const dim = model.dim();
    auto const samples = sample_source(f, t, rule, dim);

    return contour_sum(plan, dim, threads, [&](int k) -> CVector {
        SincNode const& node = plan.node(k);
        if (!finite(node.z) || !finite(node.dz))
            return {};
        CVector const g = inner_sum(node.z, t, rule, samples, dim);
        if (all_zero(g))
            return {};
        CVector r = model.resolvent_apply(node.z, g);
        for (std::size_t i = 0; i < dim; ++i)
            r[i] = node.dz * (r[i] - g[i] / node.z);
        return r;
    });
}

CVector solve_u2(const SincPlan& plan, const OperatorModel& model,
                 const InnerIntegral& inner_integral, double t, unsigned threads)
{
    if (!(t >= 0))
        throw Error(ErrorKind::InvalidArgument, "t must be non-negative");
    std::size_t const dim = model.dim();
    NonlocalSpec const& nl = plan.nonlocal;
    if (nl.size() == 0)
        return CVector(dim, 0.0);

    double const cutoff = negligible_log_magnitude();
    return contour_sum(plan, dim, threads, [&](int k) -> CVector {
        SincNode const& node = plan.node(k);
        if (!finite(node.z) || !finite(node.dz))
            return {};
        if (t > 0 && -t * node.z.real() < cutoff)
            return {};
        CVector g(dim, 0.0);
        for (std::size_t j = 0; j < nl.size(); ++j)
        {
            CVector const fkj = inner_integral(node.z, j);
            if (fkj.size() != dim)
                throw Error(ErrorKind::InvalidArgument, "inner integral has wrong length");
            axpy(nl.alphas[j], fkj, g);
        }
        if (all_zero(g))
            return {};
        Complex const weight = std::exp(-node.z * t) * node.dz / node.symbol;
        CVector r = model.resolvent_apply(node.z, g);
        for (std::size_t i = 0; i < dim; ++i)
            r[i] = weight * (r[i] - g[i] / node.z);
        return r;
    });
}

CVector solve_u2(const SincPlan& plan, const OperatorModel& model, const SourceTerm& f,
                 double t, unsigned threads, std::optional<InnerRule> inner)
{
    f.validate(plan.spectral);
    InnerRule const rule = checked_rule(plan, inner);
    std::size_t const dim = model.dim();
    NonlocalSpec const& nl = plan.nonlocal;

    std::vector<std::vector<CVector>> samples;
    samples.reserve(nl.size());
    for (double tj : nl.times)
        samples.push_back(sample_source(f, tj, rule, dim));

    InnerIntegral const inner_integral = [&](Complex z, std::size_t j) {
        return inner_sum(z, nl.times[j], rule, samples[j], dim);
    };
    return solve_u2(plan, model, inner_integral, t, threads);
}

CVector solve_full(const SincPlan& plan, const OperatorModel& model,
                   std::span<const Complex> u0, const SourceTerm* f, double t,
                   unsigned threads, std::optional<InnerRule> inner)
{
    CVector u = solve_homogeneous(plan, model, u0, t, threads);
    if (!f)
        return u;

    CVector const u1 = solve_u1(plan, model, *f, t, threads, inner);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] += u1[i];
    if (plan.nonlocal.size() == 0)
        return u;

    CVector const u2 = solve_u2(plan, model, *f, t, threads, inner);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] -= u2[i];
    return u;
}

}  // namespace nlevolve
