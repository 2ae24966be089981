#include "chimera/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chimera/error.hpp"

namespace chimera::kernels {

namespace {

struct RowEntries {
  std::vector<std::ptrdiff_t> start;
  std::vector<Eigen::Index> col;
  std::vector<double> val;
};

// Compressed rows of a dense matrix (exact zeros dropped).
RowEntries compress_rows(const Eigen::MatrixXd& A) {
  RowEntries r;
  const auto n = A.rows();
  r.start.reserve(static_cast<std::size_t>(n) + 1);
  r.start.push_back(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) != 0.0) {
        r.col.push_back(j);
        r.val.push_back(A(i, j));
      }
    }
    r.start.push_back(static_cast<std::ptrdiff_t>(r.col.size()));
  }
  return r;
}

void check_square_pair(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H) {
  if (S.rows() != S.cols() || H.rows() != H.cols() || S.rows() != H.rows()) {
    throw DimensionMismatch("commutator requires square matrices of equal size");
  }
}

// Interleaved cos/sin of exp(-2 pi i x / n), x in [0, n).
std::vector<double> dft_twiddles(int n) {
  std::vector<double> tw(2 * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const double a = 2.0 * std::numbers::pi * x / n;
    tw[2 * x] = std::cos(a);
    tw[2 * x + 1] = -std::sin(a);
  }
  return tw;
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H) {
  check_square_pair(S, H);
  const auto n = S.rows();
  const RowEntries rows = compress_rows(S);
  const RowEntries cols = compress_rows(S.transpose());  // rows of S^T = columns of S

  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto rs = rows.start[static_cast<std::size_t>(i)];
    const auto re = rows.start[static_cast<std::size_t>(i) + 1];
    for (Eigen::Index j = 0; j < n; ++j) {
      double sh = 0.0;
      for (auto p = rs; p < re; ++p) sh += rows.val[static_cast<std::size_t>(p)] * H(rows.col[static_cast<std::size_t>(p)], j);
      double hs = 0.0;
      const auto cs = cols.start[static_cast<std::size_t>(j)];
      const auto ce = cols.start[static_cast<std::size_t>(j) + 1];
      for (auto p = cs; p < ce; ++p) hs += H(i, cols.col[static_cast<std::size_t>(p)]) * cols.val[static_cast<std::size_t>(p)];
      worst = std::max(worst, std::abs(sh - hs));
    }
  }
  return worst;
}

Eigen::VectorXd projector_weights(const Eigen::MatrixXd& V,
                                  const std::vector<DegeneracyGroup>& groups, std::size_t v0) {
  const auto n = V.rows();
  if (static_cast<Eigen::Index>(v0) >= n) throw IndexError("projector origin out of range");
  const Eigen::RowVectorXd origin = V.row(static_cast<Eigen::Index>(v0));
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const auto& g : groups) {
      double amp = 0.0;
      for (std::size_t i = g.begin; i < g.end; ++i) {
        const auto c = static_cast<Eigen::Index>(i);
        amp += V(v, c) * origin(c);
      }
      acc += amp * amp;
    }
    out(v) = acc;
  }
  return out;
}

Eigen::VectorXcd spectral_propagate(const Eigen::MatrixXd& V, const Eigen::VectorXcd& phase,
                                    std::size_t v0) {
  const auto n = V.rows();
  if (static_cast<Eigen::Index>(v0) >= n) throw IndexError("propagation origin out of range");
  if (phase.size() != V.cols()) throw DimensionMismatch("phase vector length mismatch");
  const Eigen::VectorXcd coeff =
      phase.cwiseProduct(V.row(static_cast<Eigen::Index>(v0)).transpose().cast<std::complex<double>>());
  Eigen::VectorXcd psi(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index v = 0; v < n; ++v) {
    std::complex<double> acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < V.cols(); ++k) acc += V(v, k) * coeff(k);
    psi(v) = acc;
  }
  return psi;
}

Eigen::MatrixXd fourier_power(const Eigen::VectorXcd& psi, int M, int N, int cell_stride,
                              const std::vector<int>& offsets) {
  if (psi.size() != static_cast<Eigen::Index>(M) * N * cell_stride) {
    throw DimensionMismatch("state length does not match the cell grid");
  }
  const auto tm = dft_twiddles(M);
  const auto tn = dft_twiddles(N);
  const double norm = 1.0 / std::sqrt(static_cast<double>(M) * N);
  const int K = static_cast<int>(offsets.size());

  Eigen::MatrixXd power = Eigen::MatrixXd::Zero(M, N);
#pragma omp parallel
  {
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(M, N);
    Eigen::MatrixXcd grid(M, N);
    Eigen::MatrixXcd half(M, N);
#pragma omp for schedule(static)
    for (int o = 0; o < K; ++o) {
      const int mu = offsets[static_cast<std::size_t>(o)];
      for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) grid(m, n) = psi((static_cast<Eigen::Index>(m) * N + n) * cell_stride + mu);
      }
      // Separable transform: along n first, then along m.
      for (int m = 0; m < M; ++m) {
        for (int k2 = 0; k2 < N; ++k2) {
          std::complex<double> acc{0.0, 0.0};
          for (int n = 0; n < N; ++n) {
            const auto x = static_cast<std::size_t>((static_cast<long>(k2) * n) % N);
            acc += grid(m, n) * std::complex<double>(tn[2 * x], tn[2 * x + 1]);
          }
          half(m, k2) = acc;
        }
      }
      for (int k1 = 0; k1 < M; ++k1) {
        for (int k2 = 0; k2 < N; ++k2) {
          std::complex<double> acc{0.0, 0.0};
          for (int m = 0; m < M; ++m) {
            const auto x = static_cast<std::size_t>((static_cast<long>(k1) * m) % M);
            acc += half(m, k2) * std::complex<double>(tm[2 * x], tm[2 * x + 1]);
          }
          local(k1, k2) += std::norm(acc * norm);
        }
      }
    }
    // Only the summation order over offsets depends on the thread count.
#pragma omp critical
    power += local;
  }
  return power;
}

namespace serial {

double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H) {
  check_square_pair(S, H);
  return (S * H - H * S).cwiseAbs().maxCoeff();
}

Eigen::VectorXd projector_weights(const Eigen::MatrixXd& V,
                                  const std::vector<DegeneracyGroup>& groups, std::size_t v0) {
  const auto n = V.rows();
  if (static_cast<Eigen::Index>(v0) >= n) throw IndexError("projector origin out of range");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (const auto& g : groups) {
    const auto block = V.middleCols(static_cast<Eigen::Index>(g.begin),
                                    static_cast<Eigen::Index>(g.size()));
    const Eigen::MatrixXd projector = block * block.transpose();
    out += projector.col(static_cast<Eigen::Index>(v0)).array().square().matrix();
  }
  return out;
}

Eigen::VectorXcd spectral_propagate(const Eigen::MatrixXd& V, const Eigen::VectorXcd& phase,
                                    std::size_t v0) {
  if (static_cast<Eigen::Index>(v0) >= V.rows()) throw IndexError("propagation origin out of range");
  const Eigen::MatrixXcd Vc = V.cast<std::complex<double>>();
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(V.rows());
  e(static_cast<Eigen::Index>(v0)) = 1.0;
  return Vc * phase.asDiagonal() * Vc.transpose() * e;
}

Eigen::MatrixXd fourier_power(const Eigen::VectorXcd& psi, int M, int N, int cell_stride,
                              const std::vector<int>& offsets) {
  if (psi.size() != static_cast<Eigen::Index>(M) * N * cell_stride) {
    throw DimensionMismatch("state length does not match the cell grid");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(M) * N);
  Eigen::MatrixXd power = Eigen::MatrixXd::Zero(M, N);
  for (int mu : offsets) {
    for (int k1 = 0; k1 < M; ++k1) {
      for (int k2 = 0; k2 < N; ++k2) {
        std::complex<double> acc{0.0, 0.0};
        for (int m = 0; m < M; ++m) {
          for (int n = 0; n < N; ++n) {
            const double angle = -2.0 * std::numbers::pi *
                                 (static_cast<double>(k1) * m / M + static_cast<double>(k2) * n / N);
            acc += psi((static_cast<Eigen::Index>(m) * N + n) * cell_stride + mu) *
                   std::polar(1.0, angle);
          }
        }
        power(k1, k2) += std::norm(acc * norm);
      }
    }
  }
  return power;
}

}  // namespace serial

}  // namespace chimera::kernels
