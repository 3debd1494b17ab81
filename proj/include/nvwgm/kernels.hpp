#ifndef NVWGM_KERNELS_HPP
#define NVWGM_KERNELS_HPP

#include <vector>

#include "nvwgm/types.hpp"

// Dense linear-algebra kernels that carry the integrator inner loops. Every
// kernel has a serial reference (*_serial) and an OpenMP version
// (*_parallel); the unsuffixed entry dispatches on the runtime switch and a
// dimension cutoff. Both variants accumulate each output element in the
// same index order, so results are bitwise identical whichever path runs
// and however many threads are used.
namespace nvwgm::kernels {

bool parallel_available();  // compiled with OpenMP?
bool parallel_enabled();
void set_parallel(bool enabled);
int parallel_cutoff();  // minimum dimension before threads are used
void set_parallel_cutoff(int dim);

// y = A x
void matvec_serial(const Matrix& a, const Vector& x, Vector& y);
void matvec_parallel(const Matrix& a, const Vector& x, Vector& y);
void matvec(const Matrix& a, const Vector& x, Vector& y);

// c = a b
void matmul_serial(const Matrix& a, const Matrix& b, Matrix& c);
void matmul_parallel(const Matrix& a, const Matrix& b, Matrix& c);
void matmul(const Matrix& a, const Matrix& b, Matrix& c);

// One dissipator channel, with the adjoint and the rate-weighted products
// prepared once per run.
struct JumpTerm {
  double rate = 0.0;
  Matrix op;      // L
  Matrix op_dag;  // L^dag
  Matrix dag_op;  // L^dag L
};

JumpTerm make_jump_term(double rate, const Matrix& op);

struct LindbladWorkspace {
  Matrix t1, t2;
  void resize(long dim);
};

// drho = -i[H, rho] + sum_k rate_k (2 L_k rho L_k^dag - L_k^dag L_k rho
//                                   - rho L_k^dag L_k)
void lindblad_rhs_serial(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                         Matrix& drho, LindbladWorkspace& ws);
void lindblad_rhs_parallel(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                           Matrix& drho, LindbladWorkspace& ws);
void lindblad_rhs(const Matrix& h, const std::vector<JumpTerm>& jumps, const Matrix& rho,
                  Matrix& drho, LindbladWorkspace& ws);

}  // namespace nvwgm::kernels

#endif  // NVWGM_KERNELS_HPP
