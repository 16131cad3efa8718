#pragma once

#include "contour.hpp"
#include "operators.hpp"
#include "symbol.hpp"
#include "types.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace nlevolve {

enum class StepRule {
    /// h = sqrt(2 pi d1 / (alpha (N + 1))), uniform in t >= 0
    Uniform,
    /// h = c1 ln(N) / N, for a fixed t > 0
    FixedT,
    /// h = N^{-1/2}, the choice behind the reference convergence data
    InverseSqrtN,
};

std::string_view to_string(StepRule rule);

double step_size(StepRule rule, double d1, double smoothness, int N, double c1);

struct PlanOptions {
    StepRule rule = StepRule::Uniform;
    /// Smoothness exponent alpha of u0 in D(A^alpha).
    double smoothness = 0.5;
    double c1 = 1.0;
    /// Run even when neither solvability condition holds.
    bool force = false;
};

struct SincNode {
    double xi;
    Complex z;
    Complex dz;
    Complex symbol;  // B(z)
};

/// Quadrature plan: nodes xi_k = k h, k = -N..N, on the integration
/// hyperbola with z, z' and B(z) cached.
struct SincPlan {
    int N = 0;
    double h = 0;
    PlanOptions options;
    SpectralCharacteristics spectral;
    NonlocalSpec nonlocal;
    Solvability verdict = Solvability::Unknown;
    Hyperbola contour;
    double d1 = 0;
    double Q = 1;
    std::vector<SincNode> nodes;

    const SincNode& node(int k) const { return nodes[static_cast<std::size_t>(k + N)]; }
};

/// Throws Unsolvable on an Unknown verdict (unless forced) and
/// ContourUnsafe when the Q bound fails.
SincPlan make_plan(const SpectralCharacteristics& spec, const NonlocalSpec& nl,
                   int N, const PlanOptions& opts = {});

/// Terms whose log-magnitude falls below this are dropped.
double negligible_log_magnitude();

/// e^{-z_k t} z'_k B_k^{-1} [(z_k - A)^{-1} u0 - u0 / z_k]
CVector integrand_F(const SincPlan& plan, const OperatorModel& model,
                    std::span<const Complex> u0, double t, int k);

/// (h / 2 pi i) sum_k term(k), summed as term(0) followed by the pairs
/// term(j) + term(-j) in ascending j.  Terms are evaluated with up to
/// `threads` threads; the result does not depend on the thread count.
/// A term may return an empty vector to signal "negligible".
CVector contour_sum(const SincPlan& plan, std::size_t dim, unsigned threads,
                    const std::function<CVector(int)>& term);

/// u_h(t) = exp(-At) B(A)^{-1} u0 by the Sinc rule on the hyperbola.
CVector solve_homogeneous(const SincPlan& plan, const OperatorModel& model,
                          std::span<const Complex> u0, double t,
                          unsigned threads = 1);

struct ErrorSample {
    int N;
    double error;
    /// Magnitude of the computed quantity; sets the precision floor.
    double scale = 1.0;
};

struct RateEstimate {
    int N;
    double c;
    bool valid;
};

/// c = ln(e_N / e_M) / (sqrt(M) - sqrt(N)) for consecutive samples; with
/// M = 2N this is ln(e_N / e_2N) / ((sqrt 2 - 1) sqrt N).  Pairs touching
/// the precision floor 50 eps scale are marked invalid.
std::vector<RateEstimate> estimate_rate_constants(std::span<const ErrorSample> samples);

}  // namespace nlevolve
