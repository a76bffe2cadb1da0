#pragma once

// 4x4 kernels used by the critic: the quadratic form v'Mv and the symmetric
// rank-1 update M <- sym(M + s v v'). Matrices are column-major (Eigen default).
//
// Every variant evaluates the same operations in the same order (no fused
// multiply-add), so results are bit-identical across dispatch targets and
// episode logs do not depend on the host CPU.

#include <string_view>

namespace irltrack::kernels {

using QuadFormFn = double (*)(const double* m, const double* v);
using SymRank1Fn = void (*)(double* m, const double* v, double scale);

double quad_form4_scalar(const double* m, const double* v);
void sym_rank1_update4_scalar(double* m, const double* v, double scale);

#if defined(IRLTRACK_HAVE_AVX2_TU)
double quad_form4_avx2(const double* m, const double* v);
void sym_rank1_update4_avx2(double* m, const double* v, double scale);
#endif

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  QuadFormFn quad_form;
  SymRank1Fn sym_rank1_update;
};

/// Kernel set for `isa`; falls back to scalar when the ISA is not compiled in.
const KernelTable& table_for(Isa isa);

/// Best kernels for this CPU, chosen once. Setting IRLTRACK_ISA=scalar in the
/// environment forces the reference path.
const KernelTable& active();

bool cpu_has_avx2();
std::string_view name(Isa isa);

}  // namespace irltrack::kernels
