#include "kitten/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/kernels.hpp"

namespace kitten {

DensityMatrix::DensityMatrix(std::size_t dim, double trace_deficit)
    : dim_(dim), data_(dim * dim, 0.0), trace_deficit_(trace_deficit) {}

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<double> elements, double trace_deficit)
    : dim_(dim), data_(std::move(elements)), trace_deficit_(trace_deficit) {
    if (data_.size() != dim * dim) {
        throw InvalidArgument("density matrix expects " + std::to_string(dim * dim) +
                              " elements, got " + std::to_string(data_.size()));
    }
}

DensityMatrix DensityMatrix::vacuum(std::size_t dim) { return fock(dim, 0); }

DensityMatrix DensityMatrix::fock(std::size_t dim, std::size_t n) {
    if (n >= dim) throw InvalidArgument("Fock level outside the truncated basis");
    DensityMatrix rho(dim);
    rho(n, n) = 1.0;
    return rho;
}

DensityMatrix DensityMatrix::pure(std::span<const double> amplitudes, double trace_deficit) {
    const std::size_t dim = amplitudes.size();
    DensityMatrix rho(dim, trace_deficit);
    for (std::size_t i = 0; i < dim; ++i) {
        if (amplitudes[i] == 0.0) continue;
        simd::axpy(amplitudes[i], amplitudes, rho.row(i));
    }
    return rho;
}

double DensityMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
    return t;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum_ij rho_ij^2 for symmetric rho.
    return simd::dot(data_, data_);
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = data_[i * dim_ + i];
    return d;
}

DensityMatrix& DensityMatrix::normalize() {
    const double t = trace();
    if (!(t > 0.0)) throw NumericalError("cannot normalize a density matrix with non-positive trace");
    const double inv = 1.0 / t;
    for (double& v : data_) v *= inv;
    return *this;
}

DensityMatrix DensityMatrix::normalized() const {
    DensityMatrix copy = *this;
    copy.normalize();
    return copy;
}

DensityMatrix DensityMatrix::resized(std::size_t new_dim) const {
    DensityMatrix out(new_dim, trace_deficit_);
    const std::size_t keep = std::min(dim_, new_dim);
    for (std::size_t i = 0; i < keep; ++i) {
        std::copy_n(data_.data() + i * dim_, keep, out.data_.data() + i * new_dim);
    }
    return out;
}

bool DensityMatrix::is_symmetric(double tol) const noexcept {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            if (std::abs(data_[i * dim_ + j] - data_[j * dim_ + i]) > tol) return false;
        }
    }
    return true;
}

double DensityMatrix::min_eigenvalue() const {
    if (dim_ == 0) return 0.0;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        data_.data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (dim_ == 0) throw InvalidArgument("density matrix is empty");
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidArgument("density matrix has non-finite entries");
    }
    if (!is_symmetric(1e-12)) throw InvalidArgument("density matrix is not symmetric");
    for (std::size_t i = 0; i < dim_; ++i) {
        if (data_[i * dim_ + i] < -1e-12) throw InvalidArgument("density matrix has a negative diagonal entry");
    }
    if (min_eigenvalue() < -1e-9) throw InvalidArgument("density matrix is not positive semidefinite");
    const double t = trace();
    if (t > 1.0 + 1e-9 || t < 1.0 - trace_deficit_ - 1e-9) {
        throw InvalidArgument("density matrix trace " + std::to_string(t) + " outside [1 - deficit, 1]");
    }
}

void DensityMatrix::accumulate(double weight, const DensityMatrix& other) {
    if (other.dim_ != dim_) throw InvalidArgument("dimension mismatch in density-matrix accumulation");
    simd::axpy(weight, other.data_, data_);
}

double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
    double m = 0.0;
    const auto ea = a.elements();
    const auto eb = b.elements();
    for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

}  // namespace kitten
