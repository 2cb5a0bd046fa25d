#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "kaf/kernels.hpp"

namespace kaf {

/// Growing radial-basis-function expansion: an ordered center set with one
/// coefficient per center. Prediction is a dense sum of Gaussian kernel
/// evaluations against every stored center. Centers are kept in insertion
/// order; indices handed out by the quantizer refer to this order.
class RbfNetwork {
  public:
    RbfNetwork() = default;
    explicit RbfNetwork(KernelParams kernel) : kernel_(kernel) {
        kernel_.validate();
    }

    /// sum_j a_j * kappa(u, center_j); 0 for an empty network.
    double predict(std::span<const double> u) const;

    /// Adds one kernel unit. Existing centers and coefficients are untouched.
    void append_center(std::span<const double> u, double coefficient);

    /// coefficient[index] += delta. Centers and size are unchanged.
    void merge_coefficient(std::size_t index, double delta);

    std::size_t size() const { return coefficients_.size(); }
    bool empty() const { return coefficients_.empty(); }
    std::size_t dim() const { return dim_; }
    const KernelParams& kernel() const { return kernel_; }

    std::span<const double> center(std::size_t index) const;
    std::span<const double> coefficients() const { return coefficients_; }

    /// Plain-text snapshot, round-trip exact. Format:
    ///   kaf-rbf-v1
    ///   bandwidth <h>
    ///   dim <d>
    ///   size <n>
    ///   <n lines of d center coordinates>
    ///   <n coefficient lines>
    void save(std::ostream& os) const;
    static RbfNetwork load(std::istream& is);

  private:
    void check_dim(std::span<const double> u) const;

    KernelParams kernel_{};
    std::size_t dim_ = 0;            // fixed by the first center
    std::vector<double> centers_;    // row-major, size() * dim_
    std::vector<double> coefficients_;
};

}  // namespace kaf
