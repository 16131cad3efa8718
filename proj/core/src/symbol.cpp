#include "nonlocal_evolve/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlevolve {

void NonlocalSpec::validate() const
{
    if (alphas.size() != times.size())
        throw Error(ErrorKind::InvalidArgument,
                    "nonlocal coefficients and points differ in length");
    if (!(horizon > 0))
        throw Error(ErrorKind::InvalidArgument, "horizon T must be positive");
    double prev = 0;
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        if (!(times[k] > prev))
            throw Error(ErrorKind::InvalidArgument,
                        "nonlocal points must satisfy 0 < t_1 < ... < t_m");
        prev = times[k];
        if (!std::isfinite(alphas[k]))
            throw Error(ErrorKind::InvalidArgument, "non-finite nonlocal coefficient");
    }
    if (!times.empty() && times.back() > horizon)
        throw Error(ErrorKind::InvalidArgument, "t_m exceeds the horizon T");
}

std::string_view to_string(Solvability verdict)
{
    switch (verdict)
    {
        case Solvability::UM1: return "UM1";
        case Solvability::UM2: return "UM2";
        case Solvability::Unknown: return "Unknown";
    }
    return "Unknown";
}

Solvability check_solvability(const NonlocalSpec& nl,
                              const SpectralCharacteristics& spec)
{
    double plain = 0;
    for (double a : nl.alphas)
        plain += std::abs(a);
    if (plain < 1)
        return Solvability::UM1;

    double damped = 0;
    for (std::size_t k = 0; k < nl.size(); ++k)
        damped += std::abs(nl.alphas[k]) * std::exp(-spec.rho0 * nl.times[k]);
    return damped < 1 ? Solvability::UM2 : Solvability::Unknown;
}

Complex symbol_B(const NonlocalSpec& nl, Complex z)
{
    Complex sum = 1.0;
    for (std::size_t k = 0; k < nl.size(); ++k)
        sum += nl.alphas[k] * std::exp(-z * nl.times[k]);
    return sum;
}

std::vector<double> q_bound_terms(const NonlocalSpec& nl,
                                  const SpectralCharacteristics& spec)
{
    std::vector<double> terms(nl.size());
    for (std::size_t k = 0; k < nl.size(); ++k)
        terms[k] = std::abs(nl.alphas[k]) * std::exp(-spec.rho1 * nl.times[k]);
    return terms;
}

double q_bound(const NonlocalSpec& nl, const SpectralCharacteristics& spec)
{
    auto const terms = q_bound_terms(nl, spec);
    double sum = 0;
    for (double t : terms)
        sum += t;
    if (!(sum < 1))
    {
        auto const dominant = std::max_element(terms.begin(), terms.end()) - terms.begin();
        std::ostringstream os;
        os << "sum |alpha_k| exp(-rho1 t_k) = " << sum
           << " >= 1; B may vanish near the contour (dominant term t_"
           << dominant + 1 << " = " << nl.times[dominant]
           << "); increase rho1 or change the nonlocal data";
        throw Error(ErrorKind::ContourUnsafe, os.str());
    }
    return 1 / (1 - sum);
}

}  // namespace nlevolve
