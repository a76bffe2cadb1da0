#include "irltrack/kernels/quad4.hpp"

namespace irltrack::kernels {

double quad_form4_scalar(const double* m, const double* v) {
  // y = M v accumulated column by column, then a pairwise dot product. The
  // order mirrors the vector path lane for lane.
  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = m[i] * v[0];
  for (int j = 1; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) y[i] = y[i] + m[4 * j + i] * v[j];
  }
  const double p0 = v[0] * y[0];
  const double p1 = v[1] * y[1];
  const double p2 = v[2] * y[2];
  const double p3 = v[3] * y[3];
  return (p0 + p2) + (p1 + p3);
}

void sym_rank1_update4_scalar(double* m, const double* v, double scale) {
  for (int j = 0; j < 4; ++j) {
    const double sj = scale * v[j];
    for (int i = 0; i < 4; ++i) m[4 * j + i] = m[4 * j + i] + sj * v[i];
  }
  for (int j = 0; j < 4; ++j) {
    for (int i = j + 1; i < 4; ++i) {
      const double s = (m[4 * j + i] + m[4 * i + j]) * 0.5;
      m[4 * j + i] = s;
      m[4 * i + j] = s;
    }
  }
}

}  // namespace irltrack::kernels
