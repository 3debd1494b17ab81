#include "nvwgm/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nvwgm::kernels {

namespace {

bool g_parallel = true;
int g_cutoff = 64;

bool use_parallel(long dim) { return parallel_available() && g_parallel && dim >= g_cutoff; }

void require_square(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("kernel expects a square matrix");
}

// Both the serial and the parallel entry run these workers, each output
// element accumulating over the inner index in ascending order, so results
// are bitwise equal whichever path executes. noinline keeps a single code
// instantiation; inlining into two call sites could contract the
// multiply-adds differently.
__attribute__((noinline)) void matvec_rows(const Matrix& a, const Vector& x, Vector& y,
                                           long row_begin, long row_end) {
  const long n = a.cols();
  const long len = row_end - row_begin;
  if (len <= 0) return;
  y.segment(row_begin, len).setZero();
  // Column sweep over a contiguous row block; each y[i] still accumulates
  // over j in ascending order.
  for (long j = 0; j < n; ++j) {
    y.segment(row_begin, len) += x[j] * a.col(j).segment(row_begin, len);
  }
}

__attribute__((noinline)) void matmul_cols(const Matrix& a, const Matrix& b, Matrix& c,
                                           long col_begin, long col_end) {
  const long n = a.rows();
  for (long j = col_begin; j < col_end; ++j) {
    c.col(j).setZero();
    for (long k = 0; k < n; ++k) {
      const Complex bkj = b(k, j);
      if (bkj == Complex{0.0, 0.0}) continue;
      c.col(j) += bkj * a.col(k);
    }
  }
}

}  // namespace

bool parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

bool parallel_enabled() { return g_parallel; }
void set_parallel(bool enabled) { g_parallel = enabled; }
int parallel_cutoff() { return g_cutoff; }
void set_parallel_cutoff(int dim) { g_cutoff = dim; }

void matvec_serial(const Matrix& a, const Vector& x, Vector& y) {
  require_square(a);
  if (x.size() != a.cols()) throw std::invalid_argument("matvec dimension mismatch");
  y.resize(a.rows());
  matvec_rows(a, x, y, 0, a.rows());
}

void matvec_parallel(const Matrix& a, const Vector& x, Vector& y) {
  require_square(a);
  if (x.size() != a.cols()) throw std::invalid_argument("matvec dimension mismatch");
  const long n = a.rows();
  y.resize(n);
#ifdef _OPENMP
#pragma omp parallel
  {
    const long nt = omp_get_num_threads();
    const long tid = omp_get_thread_num();
    matvec_rows(a, x, y, n * tid / nt, n * (tid + 1) / nt);
  }
#else
  matvec_rows(a, x, y, 0, n);
#endif
}

void matvec(const Matrix& a, const Vector& x, Vector& y) {
  if (use_parallel(a.rows())) {
    matvec_parallel(a, x, y);
  } else {
    matvec_serial(a, x, y);
  }
}

void matmul_serial(const Matrix& a, const Matrix& b, Matrix& c) {
  require_square(a);
  if (b.rows() != a.cols() || b.cols() != a.cols()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  c.resize(a.rows(), b.cols());
  matmul_cols(a, b, c, 0, b.cols());
}

void matmul_parallel(const Matrix& a, const Matrix& b, Matrix& c) {
  require_square(a);
  if (b.rows() != a.cols() || b.cols() != a.cols()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  const long n = b.cols();
  c.resize(a.rows(), n);
#ifdef _OPENMP
#pragma omp parallel
  {
    const long nt = omp_get_num_threads();
    const long tid = omp_get_thread_num();
    matmul_cols(a, b, c, n * tid / nt, n * (tid + 1) / nt);
  }
#else
  matmul_cols(a, b, c, 0, n);
#endif
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
  if (use_parallel(a.rows())) {
    matmul_parallel(a, b, c);
  } else {
    matmul_serial(a, b, c);
  }
}

JumpTerm make_jump_term(double rate, const Matrix& op) {
  if (rate < 0.0) throw std::invalid_argument("negative dissipator rate");
  JumpTerm term;
  term.rate = rate;
  term.op = op;
  term.op_dag = op.adjoint();
  term.dag_op = term.op_dag * op;
  return term;
}

void LindbladWorkspace::resize(long dim) {
  t1.resize(dim, dim);
  t2.resize(dim, dim);
}

namespace {

using MatMulFn = void (*)(const Matrix&, const Matrix&, Matrix&);

void lindblad_rhs_impl(MatMulFn mm, const Matrix& h, const std::vector<JumpTerm>& jumps,
                       const Matrix& rho, Matrix& drho, LindbladWorkspace& ws) {
  const long dim = rho.rows();
  ws.resize(dim);
  drho.resize(dim, dim);
  mm(h, rho, ws.t1);
  mm(rho, h, ws.t2);
  drho = -kImag * (ws.t1 - ws.t2);
  for (const JumpTerm& jump : jumps) {
    if (jump.rate == 0.0) continue;
    mm(jump.op, rho, ws.t1);
    mm(ws.t1, jump.op_dag, ws.t2);
    drho += (2.0 * jump.rate) * ws.t2;
    mm(jump.dag_op, rho, ws.t1);
    mm(rho, jump.dag_op, ws.t2);
    drho -= jump.rate * (ws.t1 + ws.t2);
  }
}

}  // namespace

void lindblad_rhs_serial(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                         Matrix& drho, LindbladWorkspace& ws) {
  lindblad_rhs_impl(&matmul_serial, h, jumps, rho, drho, ws);
}

void lindblad_rhs_parallel(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                           Matrix& drho, LindbladWorkspace& ws) {
  lindblad_rhs_impl(&matmul_parallel, h, jumps, rho, drho, ws);
}

void lindblad_rhs(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                  Matrix& drho, LindbladWorkspace& ws) {
  if (use_parallel(rho.rows())) {
    lindblad_rhs_parallel(h, jumps, rho, drho, ws);
  } else {
    lindblad_rhs_serial(h, jumps, rho, drho, ws);
  }
}

}  // namespace nvwgm::kernels
