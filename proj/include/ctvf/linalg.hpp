#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

#include "ctvf/errors.hpp"

namespace ctvf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline bool is_finite(const Mat& m) { return m.allFinite(); }
inline bool is_finite(const Vec& v) { return v.allFinite(); }

/// Cholesky factor of a symmetric positive definite matrix.
///
/// If the plain factorization fails (Gram matrices with near-duplicate
/// centers are numerically semidefinite), a diagonal jitter of
/// 1e-10 * trace / n is added once before giving up.
class SpdFactor {
 public:
  static SpdFactor compute(const Mat& m) {
    const Eigen::Index n = m.rows();
    if (n == 0 || m.cols() != n)
      throw DimensionMismatchError("factor_spd: matrix must be square and nonempty");
    if (!is_finite(m)) throw NotSpdError("factor_spd: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw NotSpdError("factor_spd: matrix is not symmetric");

    Eigen::LLT<Mat> llt(m);
    if (llt.info() == Eigen::Success)
      return SpdFactor(m, llt.matrixL(), 0.0);

    const double jitter = 1e-10 * m.trace() / static_cast<double>(n);
    Mat jittered = m;
    jittered.diagonal().array() += jitter;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success)
      return SpdFactor(m, llt.matrixL(), jitter);
    throw NotSpdError("factor_spd: pivot failure even after jitter");
  }

  /// Solves source * x = rhs through the cached factor.
  Vec solve(const Vec& rhs) const {
    if (rhs.size() != lower_.rows())
      throw DimensionMismatchError("solve_spd: rhs length mismatch");
    Vec y = lower_.triangularView<Eigen::Lower>().solve(rhs);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
  }

  Mat solve(const Mat& rhs) const {
    if (rhs.rows() != lower_.rows())
      throw DimensionMismatchError("solve_spd: rhs row mismatch");
    Mat y = lower_.triangularView<Eigen::Lower>().solve(rhs);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
  }

  const Mat& source() const { return source_; }
  const Mat& lower() const { return lower_; }
  double jitter() const { return jitter_; }
  Eigen::Index dim() const { return lower_.rows(); }

 private:
  SpdFactor(Mat source, Mat lower, double jitter)
      : source_(std::move(source)), lower_(std::move(lower)), jitter_(jitter) {}

  Mat source_;
  Mat lower_;
  double jitter_;
};

inline SpdFactor factor_spd(const Mat& m) { return SpdFactor::compute(m); }

inline Vec solve_spd(const SpdFactor& f, const Vec& rhs) { return f.solve(rhs); }

/// Solves a_bar' * P + P * a_bar + q_bar = 0 for symmetric P by vectorizing
/// into the Kronecker linear system. Adequate for the desk-scale n <= 8.
inline Mat solve_lyapunov(const Mat& a_bar, const Mat& q_bar) {
  const Eigen::Index n = a_bar.rows();
  if (a_bar.cols() != n || q_bar.rows() != n || q_bar.cols() != n)
    throw DimensionMismatchError("solve_lyapunov: dimension mismatch");

  const Mat at = a_bar.transpose();
  Mat system = Mat::Zero(n * n, n * n);
  // vec(A' P) = (I kron A') vec(P), vec(P A) = (A' kron I) vec(P), column-major
  for (Eigen::Index i = 0; i < n; ++i)
    system.block(i * n, i * n, n, n) = at;
  for (Eigen::Index bi = 0; bi < n; ++bi)
    for (Eigen::Index bj = 0; bj < n; ++bj)
      system.block(bi * n, bj * n, n, n).diagonal().array() += at(bi, bj);

  Eigen::FullPivLU<Mat> lu(system);
  if (!lu.isInvertible())
    throw NotHurwitzError("solve_lyapunov: Kronecker system is singular");

  Vec rhs = -Eigen::Map<const Vec>(q_bar.data(), n * n);
  Vec p_vec = lu.solve(rhs);
  Mat p = Eigen::Map<Mat>(p_vec.data(), n, n);
  return 0.5 * (p + p.transpose());
}

}  // namespace ctvf
