#include "gaugewave/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gaugewave/error.hpp"

namespace gaugewave {

namespace {

std::uint64_t to_little(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t y = 0;
    for (int i = 0; i < 8; ++i) y |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return y;
  }
  return x;
}

void put(std::ostream& os, double v) {
  std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
  os.write(reinterpret_cast<const char*>(&bits), 8);
}

double get(std::istream& is) {
  std::uint64_t bits = 0;
  is.read(reinterpret_cast<char*>(&bits), 8);
  return std::bit_cast<double>(to_little(bits));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& f, std::string_view name, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write snapshot " + path.string());
  const Grid& g = f.grid();
  os << "GAUGEWAVE-SNAPSHOT 1\n"
     << "dim " << g.dim << "\n"
     << "n " << g.n << "\n"
     << "box_length " << format_double(g.box_length) << "\n"
     << "field " << name << "\n"
     << "reality " << (f.is_real() ? "real" : "complex") << "\n"
     << "normalization D2\n"
     << "time " << format_double(time) << "\n"
     << "end\n";
  for (const auto& c : f.coeffs()) {
    put(os, c.real());
    put(os, c.imag());
  }
  if (!os) throw IoError("failed writing snapshot " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open snapshot " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != "GAUGEWAVE-SNAPSHOT 1") throw IoError("not a snapshot file: " + path.string());
  std::map<std::string, std::string> header;
  while (std::getline(is, line) && line != "end") {
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw IoError("malformed snapshot header line: " + line);
    header[line.substr(0, sp)] = line.substr(sp + 1);
  }
  if (line != "end") throw IoError("snapshot header not terminated");
  for (const char* key : {"dim", "n", "box_length", "field", "reality", "normalization", "time"})
    if (!header.count(key)) throw IoError(std::string("snapshot header lacks ") + key);
  if (header["normalization"] != "D2") throw IoError("unsupported normalization " + header["normalization"]);
  Grid g;
  Snapshot s;
  Reality r;
  try {
    g.dim = std::stoi(header["dim"]);
    g.n = std::stoi(header["n"]);
    g.box_length = std::stod(header["box_length"]);
    s.time = std::stod(header["time"]);
  } catch (const std::exception&) {
    throw IoError("malformed numeric value in snapshot header");
  }
  if (header["reality"] == "real")
    r = Reality::real;
  else if (header["reality"] == "complex")
    r = Reality::complex;
  else
    throw IoError("unknown reality flag " + header["reality"]);
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw IoError(std::string("invalid snapshot grid: ") + e.what());
  }
  std::vector<cplx> c(g.size());
  for (auto& z : c) {
    double re = get(is), im = get(is);
    z = cplx(re, im);
  }
  if (!is) throw IoError("snapshot data truncated: " + path.string());
  s.name = header["field"];
  s.field = SpectralField(g, r, std::move(c));
  if (!s.field.all_finite()) throw IoError("snapshot holds non-finite coefficients");
  return s;
}

}  // namespace gaugewave
