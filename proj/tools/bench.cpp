// Times the serial reference kernels against the OpenMP versions and checks
// that the two produce bitwise identical results.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nvwgm/kernels.hpp"

using nvwgm::Complex;
using nvwgm::Matrix;
using nvwgm::Vector;
namespace kernels = nvwgm::kernels;

namespace {

Matrix random_matrix(long dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(dim, dim);
  for (long j = 0; j < dim; ++j) {
    for (long i = 0; i < dim; ++i) m(i, j) = Complex(dist(rng), dist(rng));
  }
  return m;
}

template <typename Fn>
double time_ms(long iters, Fn&& fn) {
  const auto begin = std::chrono::steady_clock::now();
  for (long i = 0; i < iters; ++i) fn();
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - begin).count() /
         static_cast<double>(iters);
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (long j = 0; j < a.cols(); ++j) {
    for (long i = 0; i < a.rows(); ++i) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

bool bitwise_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (long i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void report(const char* kernel, long dim, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-14s dim=%4ld  serial %10.4f ms  parallel %10.4f ms  speedup %5.2fx  %s\n",
              kernel, dim, serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<long> dims = {64, 128, 256, 512};
  if (argc > 1) {
    dims.clear();
    for (int i = 1; i < argc; ++i) dims.push_back(std::strtol(argv[i], nullptr, 10));
  }
  std::printf("OpenMP %s\n", kernels::parallel_available() ? "enabled" : "not compiled in");

  std::mt19937_64 rng(20240817);
  bool all_equal = true;
  for (long dim : dims) {
    const Matrix h = random_matrix(dim, rng);
    const Matrix rho = random_matrix(dim, rng);
    const Vector x = random_matrix(dim, rng).col(0);
    std::vector<kernels::JumpTerm> jumps;
    jumps.push_back(kernels::make_jump_term(0.3, random_matrix(dim, rng)));
    jumps.push_back(kernels::make_jump_term(0.7, random_matrix(dim, rng)));

    Vector ys, yp;
    const long mv_iters = std::max<long>(8, 40'000'000 / (dim * dim));
    const double mv_serial = time_ms(mv_iters, [&] { kernels::matvec_serial(h, x, ys); });
    const double mv_parallel = time_ms(mv_iters, [&] { kernels::matvec_parallel(h, x, yp); });
    kernels::matvec_serial(h, x, ys);
    kernels::matvec_parallel(h, x, yp);
    const bool mv_equal = bitwise_equal(ys, yp);
    report("matvec", dim, mv_serial, mv_parallel, mv_equal);

    Matrix cs, cp;
    const long mm_iters = std::max<long>(2, 400'000'000 / (dim * dim * dim));
    const double mm_serial = time_ms(mm_iters, [&] { kernels::matmul_serial(h, rho, cs); });
    const double mm_parallel = time_ms(mm_iters, [&] { kernels::matmul_parallel(h, rho, cp); });
    const bool mm_equal = bitwise_equal(cs, cp);
    report("matmul", dim, mm_serial, mm_parallel, mm_equal);

    Matrix ds, dp;
    kernels::LindbladWorkspace ws;
    const long lb_iters = std::max<long>(1, 40'000'000 / (dim * dim * dim));
    const double lb_serial =
        time_ms(lb_iters, [&] { kernels::lindblad_rhs_serial(h, jumps, rho, ds, ws); });
    const double lb_parallel =
        time_ms(lb_iters, [&] { kernels::lindblad_rhs_parallel(h, jumps, rho, dp, ws); });
    const bool lb_equal = bitwise_equal(ds, dp);
    report("lindblad_rhs", dim, lb_serial, lb_parallel, lb_equal);

    all_equal = all_equal && mv_equal && mm_equal && lb_equal;
  }
  return all_equal ? 0 : 1;
}
