#pragma once

#include "contour.hpp"
#include "types.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace nlevolve {

/// Contract for a sectorial operator A as seen by the contour solvers:
/// only the action v -> (zI - A)^{-1} v is ever needed.
///
/// Implementations must be immutable after construction and
/// `resolvent_apply` must be reentrant; the solvers call it concurrently
/// for different contour nodes.
class OperatorModel {
  public:
    virtual ~OperatorModel() = default;

    virtual std::size_t dim() const = 0;
    virtual const SpectralCharacteristics& spectral() const = 0;
    virtual CVector resolvent_apply(Complex z, std::span<const Complex> v) const = 0;
};

/// A model of A = -d^2/dx^2 on (0,1) with u(0) = u(1) = 0.  Its vectors
/// represent functions, so it can sample a function and evaluate one.
class DirichletModel : public OperatorModel {
  public:
    virtual CVector project(const std::function<double(double)>& g) const = 0;
    virtual Complex evaluate(std::span<const Complex> v, double x) const = 0;
};

/// How a self-adjoint model picks its sector from its smallest eigenvalue:
/// rho0 = margin * lambda_min, rho1 = rho1_fraction * rho0.
struct SectorOptions {
    double phi = kPi / 6;
    double margin = 0.95;
    double rho1_fraction = 0.5;
    double M = 1.0;
};

SpectralCharacteristics self_adjoint_characteristics(double lambda_min,
                                                     const SectorOptions& opts);

//---------------------------------------------------------------------------//
/// Diagonal action on sine-series coefficients: mode k (1-based) is an
/// eigenfunction sin(k pi x) with eigenvalue (k pi)^2.
class SpectralModeModel final : public DirichletModel {
  public:
    explicit SpectralModeModel(std::size_t n_modes, SectorOptions opts = {});

    std::size_t dim() const override { return n_modes_; }
    const SpectralCharacteristics& spectral() const override { return spec_; }
    CVector resolvent_apply(Complex z, std::span<const Complex> v) const override;

    /// c_k = 2 int_0^1 g(x) sin(k pi x) dx
    CVector project(const std::function<double(double)>& g) const override;
    Complex evaluate(std::span<const Complex> v, double x) const override;

    static double eigenvalue(std::size_t k);

  private:
    std::size_t n_modes_;
    SpectralCharacteristics spec_;
};

//---------------------------------------------------------------------------//
/// Second-order finite differences: A = (n+1)^2 tridiag(-1, 2, -1) on the
/// interior points x_j = j/(n+1).
class FdLaplacianModel final : public DirichletModel {
  public:
    explicit FdLaplacianModel(std::size_t n, SectorOptions opts = {});

    std::size_t dim() const override { return n_; }
    const SpectralCharacteristics& spectral() const override { return spec_; }
    CVector resolvent_apply(Complex z, std::span<const Complex> v) const override;

    CVector project(const std::function<double(double)>& g) const override;
    /// Piecewise-linear interpolation with zero boundary values.
    Complex evaluate(std::span<const Complex> v, double x) const override;

    /// 4 (n+1)^2 sin^2(pi / (2(n+1)))
    static double lambda_min(std::size_t n);
    double grid_point(std::size_t j) const;
    /// Row-major n x n matrix of A.
    std::vector<double> dense_matrix() const;

  private:
    std::size_t n_;
    SpectralCharacteristics spec_;
};

//---------------------------------------------------------------------------//
/// Resolvent through the Green's function of w'' + z w = v, w(0)=w(1)=0.
///
/// Vectors hold values at the nodes s_i = (1 + tanh((pi/2) sinh(i h)))/2,
/// i = -n..n, h = ln(pi n)/n.  For every output node the integral is split
/// at s_i (the kernel has a derivative jump there) and each half is mapped
/// to the real line by s = a + (b - a)(1 + tanh tau)/2 and summed with
/// `n_quad` nodes per side.  The input is read off the quadrature points by
/// Sinc interpolation in the node coordinate; the interpolation weights are
/// computed once at construction.  Accuracy is limited by how well the
/// input is resolved on the nodes: with 64 nodes and n_quad = 64 the
/// relative error is about 1e-10 on sin(pi x) and 2e-7 on sin(5 pi x).
class GreenFunctionModel final : public DirichletModel {
  public:
    /// n_nodes == 0 means n_nodes = n_quad.
    explicit GreenFunctionModel(std::size_t n_quad, SectorOptions opts = {},
                                std::size_t n_nodes = 0);

    std::size_t dim() const override { return 2 * n_nodes_ + 1; }
    const SpectralCharacteristics& spectral() const override { return spec_; }
    CVector resolvent_apply(Complex z, std::span<const Complex> v) const override;

    CVector project(const std::function<double(double)>& g) const override;
    /// Sinc interpolation between nodes.
    Complex evaluate(std::span<const Complex> v, double x) const override;

    double node(std::size_t i) const { return nodes_[i]; }
    std::size_t n_quad() const { return n_quad_; }

    /// Relative change of resolvent_apply(z, v) when the per-side
    /// quadrature is doubled.  Above kAccuracyWarning the result should not
    /// be trusted.
    double quadrature_drift(Complex z, std::span<const Complex> v) const;
    static constexpr double kAccuracyWarning = 1e-8;

  private:
    struct QuadPoint {
        double s;          // abscissa
        double one_minus;  // 1 - s, computed without cancellation
        double dist;       // |s - x| for the owning output node x
        double weight;
    };

    std::size_t n_quad_;
    std::size_t n_nodes_;
    double node_step_;
    SpectralCharacteristics spec_;
    std::vector<double> nodes_;
    std::vector<double> node_one_minus_;
    // Per output node: 2 (2 n_quad + 1) quadrature points, left half first.
    std::vector<QuadPoint> quad_;
    // Row-major [output][quad point][input node] interpolation weights.
    std::vector<double> interp_;
};

//---------------------------------------------------------------------------//
/// Arbitrary dense real matrix; resolvent by complex LU.  Useful as a
/// brute-force reference and for scalar models.
class DenseMatrixModel final : public OperatorModel {
  public:
    DenseMatrixModel(std::size_t n, std::vector<double> row_major,
                     SpectralCharacteristics spec);

    std::size_t dim() const override { return n_; }
    const SpectralCharacteristics& spectral() const override { return spec_; }
    CVector resolvent_apply(Complex z, std::span<const Complex> v) const override;

    std::span<const double> matrix() const { return a_; }

  private:
    std::size_t n_;
    std::vector<double> a_;
    SpectralCharacteristics spec_;
};

}  // namespace nlevolve
