#pragma once

#include <cstddef>

namespace twistor::kernels::detail {

struct ColumnIn {
  const double* re;
  const double* im;
};

struct ColumnOut {
  double* re;
  double* im;
};

struct EvalArgs {
  ColumnIn d0, d1, a0, a1, t0, t1;
  ColumnOut x0, x1, y0, y1;
  std::size_t n;
};

struct ChordalArgs {
  ColumnIn p0, p1, q0, q1;
  double* out;
  std::size_t n;
};

namespace scalar {
void eval_line(const EvalArgs& args, std::size_t begin, std::size_t end);
void chordal(const ChordalArgs& args, std::size_t begin, std::size_t end);
}  // namespace scalar

namespace avx2 {
bool supported();
void eval_line(const EvalArgs& args);
void chordal(const ChordalArgs& args);
}  // namespace avx2

}  // namespace twistor::kernels::detail
