#pragma once

#include "solver_hom.hpp"

#include <functional>
#include <optional>

namespace nlevolve {

/// Right-hand side f(t).  It is assumed analytic in a sector around the
/// positive axis with ||f(w)|| <= c exp(-delta |Re w|); the solvers only
/// sample it on the real axis and never check that assumption.
struct SourceTerm {
    std::function<CVector(double)> eval;
    double decay_delta = 1.0;
    double smoothness = 1.0;

    /// delta in (0, sqrt(2) rho0], smoothness in (0, 1].
    void validate(const SpectralCharacteristics& spec) const;
};

/// (t/2) exp(-(t/2) z (1 - tanh(p h))) / cosh^2(p h)
Complex mu_weight(Complex z, double t, int p, double h);
/// (t/2) (1 + tanh(p h))
double omega_node(double t, int p, double h);

/// Inner rule for the time integrals; by default it reuses the plan's N, h.
struct InnerRule {
    int N = 0;
    double h = 0;
};

InnerRule default_inner_rule(const SincPlan& plan);

/// int_0^{t_j} exp(-z (t_j - s)) f(s) ds via s = (t_j/2)(1 + tanh xi).
CVector f_inner_quadrature(Complex z, double tj, const SourceTerm& f, int N, double h);

/// int_0^t exp(-A(t - s)) f(s) ds (no nonlocal factor).
CVector solve_u1(const SincPlan& plan, const OperatorModel& model,
                 const SourceTerm& f, double t, unsigned threads = 1,
                 std::optional<InnerRule> inner = {});

/// Provides f_{k,j} = int_0^{t_j} exp(-z_k (t_j - s)) f(s) ds.
using InnerIntegral = std::function<CVector(Complex z, std::size_t j)>;

/// sum_j alpha_j u_{2,j,N}(t) with the given inner integrals.
CVector solve_u2(const SincPlan& plan, const OperatorModel& model,
                 const InnerIntegral& inner_integral, double t,
                 unsigned threads = 1);

/// sum_j alpha_j u_{2,j,N}(t) with Sinc inner quadratures.
CVector solve_u2(const SincPlan& plan, const OperatorModel& model,
                 const SourceTerm& f, double t, unsigned threads = 1,
                 std::optional<InnerRule> inner = {});

/// u = u_h + u_1 - u_2.  With no source this is solve_homogeneous.
CVector solve_full(const SincPlan& plan, const OperatorModel& model,
                   std::span<const Complex> u0, const SourceTerm* f, double t,
                   unsigned threads = 1, std::optional<InnerRule> inner = {});

}  // namespace nlevolve
