#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "twistor/error.hpp"
#include "twistor/kernels.hpp"

namespace twistor::kernels {

const char* to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  static const bool avx2 = detail::avx2::supported();
  return isa == Isa::kScalar || avx2;
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* forced = std::getenv("TWISTOR_ISA");
    if (forced != nullptr && std::string_view(forced) == "scalar") return Isa::kScalar;
    return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

void LineBatch::set(std::size_t i, const LineParams& params, const SpherePoint& t_value) {
  const LineFrame f = to_frame(params);
  d.set(i, f.d0, f.d1);
  a.set(i, f.a);
  t.set(i, t_value);
}

namespace {

detail::ColumnIn in(const ComplexColumn& c) { return {c.re.data(), c.im.data()}; }
detail::ColumnOut out(ComplexColumn& c) { return {c.re.data(), c.im.data()}; }

void require_available(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorKind::kDomain, std::string("instruction set not available: ") + to_string(isa));
  }
}

}  // namespace

void eval_line(const LineBatch& batch, PointBatch& result, Isa isa) {
  require_available(isa);
  const std::size_t n = batch.size();
  result.resize(n);
  const detail::EvalArgs args{in(batch.d.z0), in(batch.d.z1), in(batch.a.z0), in(batch.a.z1),
                              in(batch.t.z0), in(batch.t.z1), out(result.x.z0), out(result.x.z1),
                              out(result.y.z0), out(result.y.z1), n};
  if (isa == Isa::kAvx2) {
    detail::avx2::eval_line(args);
  } else {
    detail::scalar::eval_line(args, 0, n);
  }
}

void chordal_distance(const ProjectiveColumn& p, const ProjectiveColumn& q,
                      std::span<double> result, Isa isa) {
  require_available(isa);
  const std::size_t n = p.size();
  if (q.size() != n || result.size() != n) {
    throw Error(ErrorKind::kDomain, "chordal_distance: column sizes differ");
  }
  const detail::ChordalArgs args{in(p.z0), in(p.z1), in(q.z0), in(q.z1), result.data(), n};
  if (isa == Isa::kAvx2) {
    detail::avx2::chordal(args);
  } else {
    detail::scalar::chordal(args, 0, n);
  }
}

}  // namespace twistor::kernels
