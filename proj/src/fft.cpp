#include "gaugewave/fft.hpp"

#include <fftw3.h>
#include <malloc.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <new>
#include <string>
#include <tuple>

#include "gaugewave/error.hpp"

namespace gaugewave {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  void* p = fftw_malloc(n * sizeof(T));
  if (!p && n) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct FftwAllocator<cplx>;

namespace {

// Sample buffers are a few MB and churn every step; keeping them on the heap instead of fresh
// mmap regions avoids page-faulting them in on each allocation.
const bool heap_tuned = [] {
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 512 << 20);
  return true;
}();

std::mutex plan_mutex;
int fft_threads = 0;  // 0: not yet initialised

void init_threads_locked() {
  if (fft_threads) return;
  int t = 1;
  if (const char* env = std::getenv("GAUGEWAVE_THREADS")) {
    try {
      t = std::max(1, std::stoi(env));
    } catch (...) {
      t = 1;
    }
  }
  fftw_init_threads();
  fftw_plan_with_nthreads(t);
  fft_threads = t;
}

// In-place plans, FFTW_ESTIMATE so that output is reproducible run to run.
fftw_plan plan_for(int dim, int m, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard lock(plan_mutex);
  init_threads_locked();
  auto key = std::make_tuple(dim, m, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::size_t count = 1;
  int dims[3];
  for (int d = 0; d < dim; ++d) {
    dims[d] = m;
    count *= m;
  }
  ComplexSamples scratch(count);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE);
  if (!p) throw Error("FFTW planning failed");
  plans.emplace(key, p);
  return p;
}

void execute(ComplexSamples& buf, const Grid& g, Sampling s, int sign) {
  fftw_plan p = plan_for(g.dim, samples_per_axis(g, s), sign);
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(p, data, data);
}


std::size_t map_index(const ModeTable& t, Sampling s, std::size_t i) {
  return s == Sampling::padded ? t.padded[i] : i;
}

std::size_t map_negated(const ModeTable& t, Sampling s, std::size_t i) {
  return s == Sampling::padded ? t.padded_negated[i] : t.negated[i];
}

void require_real(const SpectralField& f) {
  if (!f.is_real()) throw PreconditionError("real-valued field expected");
}

}  // namespace

void set_fft_threads(int threads) {
  std::lock_guard lock(plan_mutex);
  if (!fft_threads) {
    fftw_init_threads();
  }
  fft_threads = std::max(1, threads);
  fftw_plan_with_nthreads(fft_threads);
}

int samples_per_axis(const Grid& g, Sampling s) { return s == Sampling::padded ? g.padded_n() : g.n; }

std::size_t sample_count(const Grid& g, Sampling s) {
  return s == Sampling::padded ? g.padded_size() : g.size();
}

std::array<double, 3> sample_point(const Grid& g, Sampling s, std::size_t flat) {
  const int m = samples_per_axis(g, s);
  const double h = g.box_length / m;
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = g.dim - 1; d >= 0; --d) {
    x[d] = h * static_cast<double>(flat % m);
    flat /= m;
  }
  return x;
}

ComplexSamples to_physical(const SpectralField& f, Sampling s) {
  const auto& t = modes(f.grid());
  ComplexSamples buf(sample_count(f.grid(), s));
  for (std::size_t i = 0; i < f.size(); ++i)
    if (t.resolved[i]) buf[map_index(t, s, i)] = f[i];
  execute(buf, f.grid(), s, FFTW_BACKWARD);
  return buf;
}

RealSamples to_physical_real(const SpectralField& f, Sampling s) {
  require_real(f);
  ComplexSamples z = to_physical(f, s);
  RealSamples out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

std::pair<RealSamples, RealSamples> to_physical_pair(const SpectralField& a, const SpectralField& b, Sampling s) {
  require_real(a);
  require_real(b);
  require_same_grid(a.grid(), b.grid());
  const auto& t = modes(a.grid());
  ComplexSamples buf(sample_count(a.grid(), s));
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (t.resolved[i]) buf[map_index(t, s, i)] = a[i] + I * b[i];
  execute(buf, a.grid(), s, FFTW_BACKWARD);
  std::pair<RealSamples, RealSamples> out{RealSamples(buf.size()), RealSamples(buf.size())};
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out.first[i] = buf[i].real();
    out.second[i] = buf[i].imag();
  }
  return out;
}

SpectralField from_physical(ComplexSamples samples, const Grid& g, Sampling s) {
  if (samples.size() != sample_count(g, s)) throw PreconditionError("sample count does not match grid");
  execute(samples, g, s, FFTW_FORWARD);
  const auto& t = modes(g);
  const double scale = 1.0 / static_cast<double>(samples.size());
  std::vector<cplx> c(g.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (t.resolved[i]) c[i] = scale * samples[map_index(t, s, i)];
  return SpectralField(g, Reality::complex, std::move(c));
}

SpectralField from_physical_real(const RealSamples& samples, const Grid& g, Sampling s) {
  if (samples.size() != sample_count(g, s)) throw PreconditionError("sample count does not match grid");
  ComplexSamples buf(samples.begin(), samples.end());
  execute(buf, g, s, FFTW_FORWARD);
  const auto& t = modes(g);
  const double scale = 0.5 / static_cast<double>(buf.size());
  std::vector<cplx> c(g.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (t.resolved[i]) c[i] = scale * (buf[map_index(t, s, i)] + std::conj(buf[map_negated(t, s, i)]));
  return SpectralField(g, Reality::real, std::move(c));
}

std::pair<SpectralField, SpectralField> from_physical_pair(const RealSamples& a, const RealSamples& b, const Grid& g,
                                                           Sampling s) {
  const std::size_t count = sample_count(g, s);
  if (a.size() != count || b.size() != count) throw PreconditionError("sample count does not match grid");
  ComplexSamples buf(count);
  for (std::size_t i = 0; i < count; ++i) buf[i] = cplx(a[i], b[i]);
  execute(buf, g, s, FFTW_FORWARD);
  const auto& t = modes(g);
  const double scale = 0.5 / static_cast<double>(count);
  const cplx I(0.0, 1.0);
  std::vector<cplx> ca(g.size()), cb(g.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!t.resolved[i]) continue;
    cplx z = buf[map_index(t, s, i)], zn = std::conj(buf[map_negated(t, s, i)]);
    ca[i] = scale * (z + zn);
    cb[i] = scale * (z - zn) / I;
  }
  return {SpectralField(g, Reality::real, std::move(ca)), SpectralField(g, Reality::real, std::move(cb))};
}

std::vector<RealSamples> to_physical_reals(const std::vector<const SpectralField*>& fields, Sampling s) {
  std::vector<RealSamples> out;
  out.reserve(fields.size());
  for (std::size_t i = 0; i < fields.size(); i += 2) {
    if (i + 1 < fields.size()) {
      auto [a, b] = to_physical_pair(*fields[i], *fields[i + 1], s);
      out.push_back(std::move(a));
      out.push_back(std::move(b));
    } else {
      out.push_back(to_physical_real(*fields[i], s));
    }
  }
  return out;
}

std::vector<SpectralField> from_physical_reals(const std::vector<const RealSamples*>& samples, const Grid& g,
                                               Sampling s) {
  std::vector<SpectralField> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); i += 2) {
    if (i + 1 < samples.size()) {
      auto [a, b] = from_physical_pair(*samples[i], *samples[i + 1], g, s);
      out.push_back(std::move(a));
      out.push_back(std::move(b));
    } else {
      out.push_back(from_physical_real(*samples[i], g, s));
    }
  }
  return out;
}

double integrate(const RealSamples& samples, const Grid& g, Sampling) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return g.volume() * sum / static_cast<double>(samples.size());
}

}  // namespace gaugewave
