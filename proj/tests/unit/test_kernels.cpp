#include <doctest.h>

#include <Eigen/Core>
#include <cstring>
#include <random>

#include "irltrack/kernels/quad4.hpp"

using namespace irltrack::kernels;

namespace {

// Straightforward double loop, no ordering tricks: the reference for both variants.
double naive_quad(const Eigen::Matrix4d& m, const Eigen::Vector4d& v) {
  long double s = 0.0L;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += static_cast<long double>(v(i)) * m(i, j) * v(j);
  return static_cast<double>(s);
}

bool bit_equal(const double* a, const double* b, int n) {
  return std::memcmp(a, b, sizeof(double) * static_cast<std::size_t>(n)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar quadratic form matches an extended-precision reference") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      Eigen::Matrix4d m;
      Eigen::Vector4d v;
      for (int i = 0; i < 16; ++i) m.data()[i] = n(rng);
      for (int i = 0; i < 4; ++i) v(i) = n(rng);
      const double ref = naive_quad(m, v);
      const double bound = 1e-14 * (m.cwiseAbs().sum() * v.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff());
      CHECK(std::abs(quad_form4_scalar(m.data(), v.data()) - ref) <= bound);
    }
  }

  TEST_CASE("scalar rank-1 update matches the matrix expression") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
      Eigen::Matrix4d m;
      Eigen::Vector4d v;
      for (int i = 0; i < 16; ++i) m.data()[i] = n(rng);
      for (int i = 0; i < 4; ++i) v(i) = n(rng);
      const double s = n(rng);
      Eigen::Matrix4d expected = m + s * v * v.transpose();
      expected = 0.5 * (expected + expected.transpose()).eval();
      Eigen::Matrix4d got = m;
      sym_rank1_update4_scalar(got.data(), v.data(), s);
      CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + expected.cwiseAbs().maxCoeff()));
      CHECK(got == got.transpose());
    }
  }

  TEST_CASE("every dispatch target is bit-identical to the scalar reference") {
    const KernelTable& simd = table_for(Isa::kAvx2);
    MESSAGE("testing kernels: " << name(simd.isa) << " (cpu avx2: " << cpu_has_avx2() << ")");
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_int_distribution<int> exp(-300, 300);
    for (int t = 0; t < 20000; ++t) {
      alignas(32) double m[16];
      alignas(32) double v[4];
      // Mix ordinary and extreme magnitudes so rounding paths are exercised.
      const bool wide = t % 4 == 0;
      for (double& x : m) x = wide ? std::ldexp(n(rng), exp(rng) / 4) : n(rng);
      for (double& x : v) x = wide ? std::ldexp(n(rng), exp(rng) / 4) : n(rng);
      const double a = quad_form4_scalar(m, v);
      const double b = simd.quad_form(m, v);
      CHECK(bit_equal(&a, &b, 1));

      double ms[16];
      double mv[16];
      std::memcpy(ms, m, sizeof m);
      std::memcpy(mv, m, sizeof m);
      const double s = n(rng);
      sym_rank1_update4_scalar(ms, v, s);
      simd.sym_rank1_update(mv, v, s);
      CHECK(bit_equal(ms, mv, 16));
    }
  }

  TEST_CASE("active table is one of the compiled targets") {
    const KernelTable& t = active();
    CHECK((t.isa == Isa::kScalar || t.isa == Isa::kAvx2));
    if (t.isa == Isa::kAvx2) CHECK(cpu_has_avx2());
  }
}
