#include "hyperflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hyperflow {

namespace {

// FFTW planning is not thread-safe; plans are cached per (shape, direction)
// and executed with the new-array interface on caller buffers.
struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int, int, int>, fftw_plan> plans;

  fftw_plan get(const Grid& g, int sign) {
    std::scoped_lock lock(mu);
    auto key = std::make_tuple(g.dim, g.n[0], g.n[1], g.n[2], sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<fftw_complex> buf(g.num_points());
    int dims[3] = {g.n[0], g.n[1], g.n[2]};
    fftw_plan p = fftw_plan_dft(g.dim, dims, buf.data(), buf.data(), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

SpectralField transform(const RealField& field) {
  if (!field.finite()) throw std::invalid_argument("transform: non-finite field values");
  const Grid& g = field.grid();
  SpectralField out(g, field.ncomp());
  const std::size_t np = g.num_points();
  fftw_plan plan = cache().get(g, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(np);
  for (int c = 0; c < field.ncomp(); ++c) {
    for (std::size_t i = 0; i < np; ++i) out.at(c, i) = field.at(c, i);
    // plans are in-place; execute on the destination buffer
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(out.comp(c)),
                     reinterpret_cast<fftw_complex*>(out.comp(c)));
    for (std::size_t i = 0; i < np; ++i) out.at(c, i) *= scale;
  }
  return out;
}

RealField inverse_transform(const SpectralField& spec) {
  const Grid& g = spec.grid();
  RealField out(g, spec.ncomp());
  const std::size_t np = g.num_points();
  fftw_plan plan = cache().get(g, FFTW_BACKWARD);
  std::vector<std::complex<double>> buf(np);
  for (int c = 0; c < spec.ncomp(); ++c) {
    for (std::size_t i = 0; i < np; ++i) buf[i] = spec.at(c, i);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    for (std::size_t i = 0; i < np; ++i) out.at(c, i) = buf[i].real();
  }
  return out;
}

}  // namespace hyperflow
