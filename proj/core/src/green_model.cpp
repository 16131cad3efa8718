#include "nonlocal_evolve/operators.hpp"

#include "sinc_rules.hpp"

#include <cmath>
#include <sstream>

namespace nlevolve {

namespace {

// sin(w a) exp(-|Im w| a): bounded for a >= 0.
Complex scaled_sin(Complex w, double beta, double a)
{
    Complex const iwa = Complex(0, 1) * w * a;
    return (std::exp(iwa - beta * a) - std::exp(-iwa - beta * a)) / Complex(0, 2);
}

// Node coordinate: s = (1 + tanh((pi/2) sinh u))/2, so u = asinh(ln(s/(1-s)) / pi).
double sinc_coordinate(double s, double one_minus)
{
    return std::asinh(std::log(s / one_minus) / kPi);
}

double node_coordinate_step(std::size_t n)
{
    double const dn = double(n);
    return std::log(kPi * dn) / dn;
}

// sinc(a - j) with exact zeros at the other integers.
double shifted_sinc(double a, double sin_pi_a, long j)
{
    double const u = a - double(j);
    if (u == 0)
        return 1;
    double const sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * sin_pi_a / (kPi * u);
}

}  // namespace

GreenFunctionModel::GreenFunctionModel(std::size_t n_quad, SectorOptions opts,
                                       std::size_t n_nodes)
    : n_quad_(n_quad)
    , n_nodes_(n_nodes == 0 ? n_quad : n_nodes)
    , node_step_(node_coordinate_step(n_nodes == 0 ? n_quad : n_nodes))
    , spec_(self_adjoint_characteristics(kPi * kPi, opts))
{
    if (n_quad < 8)
        throw Error(ErrorKind::InvalidArgument, "Green's-function model needs n_quad >= 8");

    std::size_t const dim = 2 * n_nodes_ + 1;
    int const nn = int(n_nodes_);
    nodes_.resize(dim);
    node_one_minus_.resize(dim);
    for (int i = -nn; i <= nn; ++i)
    {
        double const y = 0.5 * kPi * std::sinh(i * node_step_);
        nodes_[std::size_t(i + nn)] = detail::logistic_plus(y);
        node_one_minus_[std::size_t(i + nn)] = detail::logistic_minus(y);
    }

    int const nq = int(n_quad_);
    double const hq = detail::tanh_rule_step(nq);
    std::size_t const per_side = 2 * n_quad_ + 1;
    std::size_t const per_output = 2 * per_side;
    quad_.reserve(dim * per_output);
    for (std::size_t i = 0; i < dim; ++i)
    {
        double const x = nodes_[i];
        double const one_minus_x = node_one_minus_[i];
        for (auto const& pt : detail::tanh_rule(0, x, nq, hq))
            quad_.push_back({pt.from_a, one_minus_x + pt.to_b, pt.to_b, pt.weight});
        for (auto const& pt : detail::tanh_rule(0, one_minus_x, nq, hq))
            quad_.push_back({x + pt.from_a, pt.to_b, pt.from_a, pt.weight});
    }

    interp_.resize(quad_.size() * dim);
    for (std::size_t q = 0; q < quad_.size(); ++q)
    {
        double const a = sinc_coordinate(quad_[q].s, quad_[q].one_minus) / node_step_;
        double const sin_pi_a = std::sin(kPi * a);
        double* row = &interp_[q * dim];
        for (int j = -nn; j <= nn; ++j)
            row[std::size_t(j + nn)] = shifted_sinc(a, sin_pi_a, j);
    }
}

CVector GreenFunctionModel::resolvent_apply(Complex z, std::span<const Complex> v) const
{
    std::size_t const dim = this->dim();
    if (v.size() != dim)
        throw Error(ErrorKind::InvalidArgument, "vector length does not match model dimension");

    Complex const w = std::sqrt(z);
    double const beta = std::abs(w.imag());
    bool const small = std::abs(w) < 1e-6;
    Complex const s1 = scaled_sin(w, beta, 1.0);
    if (!small && std::abs(s1) <= 1e-14)
    {
        std::ostringstream os;
        os << "sin(sqrt(z)) vanishes at z = " << z;
        throw Error(ErrorKind::SingularResolvent, os.str());
    }
    Complex const denom = w * s1;

    // G(x, s) = -sin(w p) sin(w q) / (w sin w), p = min(x, s), q = 1 - max(x, s);
    // scaled form exp(-beta |x - s|) s(p) s(q) / (w s(1)).
    auto kernel = [&](double p, double q, double dist) -> Complex {
        if (small)
            return -p * q * (1.0 + z * (1 - p * p - q * q) / 6.0);
        return -std::exp(-beta * dist) * scaled_sin(w, beta, p) * scaled_sin(w, beta, q)
               / denom;
    };

    std::size_t const per_side = 2 * n_quad_ + 1;
    CVector out(dim);
    CVector samples(2 * per_side);
    for (std::size_t i = 0; i < dim; ++i)
    {
        QuadPoint const* pts = &quad_[i * 2 * per_side];
        double const* weights = &interp_[i * 2 * per_side * dim];
        for (std::size_t q = 0; q < 2 * per_side; ++q)
        {
            Complex acc = 0;
            double const* row = weights + q * dim;
            for (std::size_t j = 0; j < dim; ++j)
                acc += row[j] * v[j];
            samples[q] = acc;
        }

        double const x = nodes_[i];
        double const one_minus_x = node_one_minus_[i];
        Complex sum = 0;
        for (std::size_t q = 0; q < per_side; ++q)
        {
            auto const& pt = pts[q];
            sum += pt.weight * kernel(pt.s, one_minus_x, pt.dist) * samples[q];
        }
        for (std::size_t q = per_side; q < 2 * per_side; ++q)
        {
            auto const& pt = pts[q];
            sum += pt.weight * kernel(x, pt.one_minus, pt.dist) * samples[q];
        }
        out[i] = sum;
    }
    return out;
}

CVector GreenFunctionModel::project(const std::function<double(double)>& g) const
{
    CVector out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        out[i] = g(nodes_[i]);
    return out;
}

Complex GreenFunctionModel::evaluate(std::span<const Complex> v, double x) const
{
    if (v.size() != dim())
        throw Error(ErrorKind::InvalidArgument, "vector length does not match model dimension");
    if (!(x >= 0 && x <= 1))
        throw Error(ErrorKind::InvalidArgument, "evaluation point outside [0, 1]");
    if (x == 0 || x == 1)
        return 0;
    double const a = sinc_coordinate(x, 1 - x) / node_step_;
    double const sin_pi_a = std::sin(kPi * a);
    int const nn = int(n_nodes_);
    Complex sum = 0;
    for (int j = -nn; j <= nn; ++j)
        sum += shifted_sinc(a, sin_pi_a, j) * v[std::size_t(j + nn)];
    return sum;
}

double GreenFunctionModel::quadrature_drift(Complex z, std::span<const Complex> v) const
{
    SectorOptions opts;
    opts.phi = spec_.phi;
    opts.M = spec_.M;
    opts.margin = spec_.rho0 / (kPi * kPi);
    opts.rho1_fraction = spec_.rho1 / spec_.rho0;
    GreenFunctionModel const finer(2 * n_quad_, opts, n_nodes_);
    CVector const coarse = resolvent_apply(z, v);
    CVector const fine = finer.resolvent_apply(z, v);
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
    {
        diff = std::max(diff, std::abs(coarse[i] - fine[i]));
        scale = std::max(scale, std::abs(fine[i]));
    }
    return scale > 0 ? diff / scale : diff;
}

}  // namespace nlevolve
