#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kitten {

/// Real symmetric density matrix over the truncated Fock basis |0>..|dim-1>.
///
/// Every state in the pipeline is real because all squeezing happens at a zero
/// squeezing angle; complex states are out of scope. `trace_deficit` records the
/// probability mass that was lost to truncation when the state was built and is
/// carried along through channels so callers can judge cutoff adequacy.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(std::size_t dim, double trace_deficit = 0.0);
    DensityMatrix(std::size_t dim, std::vector<double> elements, double trace_deficit = 0.0);

    static DensityMatrix vacuum(std::size_t dim);
    static DensityMatrix fock(std::size_t dim, std::size_t n);
    /// |psi><psi| for a real amplitude vector.
    static DensityMatrix pure(std::span<const double> amplitudes, double trace_deficit = 0.0);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t nmax() const noexcept { return dim_ - 1; }
    double trace_deficit() const noexcept { return trace_deficit_; }
    void set_trace_deficit(double d) noexcept { trace_deficit_ = d; }

    double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * dim_ + col]; }
    double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }

    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }
    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * dim_, dim_}; }
    std::span<const double> elements() const noexcept { return data_; }
    std::span<double> elements() noexcept { return data_; }

    double trace() const noexcept;
    double purity() const;
    std::vector<double> diagonal() const;

    /// Scales to unit trace. Throws NumericalError if the trace is not positive.
    DensityMatrix& normalize();
    DensityMatrix normalized() const;

    /// Zero-padded (or truncated) copy with a different basis size.
    DensityMatrix resized(std::size_t new_dim) const;

    bool is_symmetric(double tol = 1e-12) const noexcept;
    /// Smallest eigenvalue (Eigen self-adjoint solver).
    double min_eigenvalue() const;
    /// Throws InvalidArgument when symmetry, diagonal sign, PSD or trace bounds are violated.
    void validate() const;

    /// this += weight * other (dimensions must match).
    void accumulate(double weight, const DensityMatrix& other);

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
    double trace_deficit_ = 0.0;
};

/// Max-abs elementwise difference; dimensions must match.
double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace kitten
