#include "gaugewave/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gaugewave/gauge.hpp"
#include "gaugewave/snapshot.hpp"

namespace gaugewave::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> keys;
};

class Document {
 public:
  explicit Document(std::string_view text) {
    Section* current = nullptr;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      ++line;
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      if (const auto c = raw.find_first_of("#;"); c != std::string_view::npos) raw = raw.substr(0, c);
      const auto s = trim(raw);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError(line, "unterminated section header");
        const std::string name(trim(s.substr(1, s.size() - 2)));
        static const char* known[] = {"system", "grid", "integrator", "data", "output"};
        if (std::find(std::begin(known), std::end(known), name) == std::end(known))
          throw ConfigError(line, "unknown section [" + name + "]");
        if (sections_.count(name)) throw ConfigError(line, "duplicate section [" + name + "]");
        current = &sections_[name];
        current->line = line;
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw ConfigError(line, "expected key = value");
      if (!current) throw ConfigError(line, "key outside of any section");
      const std::string key(trim(s.substr(0, eq)));
      const std::string value(trim(s.substr(eq + 1)));
      if (key.empty()) throw ConfigError(line, "empty key");
      if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
      if (current->keys.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
      current->keys[key] = {value, line};
    }
  }

  const Entry& get(const std::string& section, const std::string& key) {
    auto it = sections_.find(section);
    if (it == sections_.end()) throw ConfigError(0, "missing section [" + section + "]");
    auto k = it->second.keys.find(key);
    if (k == it->second.keys.end())
      throw ConfigError(it->second.line, "missing key '" + key + "' in [" + section + "]");
    k->second.used = true;
    return k->second;
  }

  // every key present must have been consumed
  void finish() const {
    for (const auto& [name, sec] : sections_)
      for (const auto& [key, e] : sec.keys)
        if (!e.used) throw ConfigError(e.line, "unknown or inapplicable key '" + key + "' in [" + name + "]");
  }

 private:
  std::map<std::string, Section> sections_;
};

double to_double(const Entry& e) {
  double v = 0.0;
  const auto* end = e.value.data() + e.value.size();
  auto [p, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) throw ConfigError(e.line, "not a number: '" + e.value + "'");
  return v;
}

long long to_integer(const Entry& e) {
  long long v = 0;
  const auto* end = e.value.data() + e.value.size();
  auto [p, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(e.line, "not an integer: '" + e.value + "'");
  return v;
}

template <class T>
T choose(const Entry& e, std::initializer_list<std::pair<const char*, T>> options) {
  for (const auto& [name, value] : options)
    if (e.value == name) return value;
  std::string list;
  for (const auto& o : options) list += (list.empty() ? "" : ", ") + std::string(o.first);
  throw ConfigError(e.line, "'" + e.value + "' is not one of " + list);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Document doc(text);
  RunConfig c;

  const auto& name = doc.get("system", "name");
  c.system = choose<evolve::System>(name, {{"mkg", evolve::System::mkg}, {"mcsh", evolve::System::mcsh}});
  if (c.system == evolve::System::mcsh) {
    const auto& e = doc.get("system", "e");
    c.params.e = to_double(e);
    c.params.kappa = to_double(doc.get("system", "kappa"));
    c.params.v = to_double(doc.get("system", "v"));
    try {
      c.params.validate();
    } catch (const Error& err) {
      throw ConfigError(e.line, err.what());
    }
  }

  const auto& n = doc.get("grid", "n");
  c.grid.dim = c.system == evolve::System::mkg ? 3 : 2;
  c.grid.n = static_cast<int>(to_integer(n));
  c.grid.box_length = to_double(doc.get("grid", "box_length"));
  try {
    c.grid.validate();
  } catch (const Error& err) {
    throw ConfigError(n.line, err.what());
  }

  auto& ic = c.integrator;
  ic.scheme = choose<evolve::Scheme>(doc.get("integrator", "scheme"),
                                     {{"leapfrog", evolve::Scheme::leapfrog}, {"rk4", evolve::Scheme::rk4}});
  const auto& dt = doc.get("integrator", "dt");
  ic.dt = to_double(dt);
  ic.t_final = to_double(doc.get("integrator", "t_final"));
  const auto& every = doc.get("integrator", "snapshot_every");
  ic.snapshot_every = static_cast<long>(to_integer(every));
  ic.formulation = choose<evolve::Formulation>(
      doc.get("integrator", "formulation"),
      {{"raw", evolve::Formulation::raw}, {"decomposed", evolve::Formulation::decomposed}});
  const auto& regauge = doc.get("integrator", "regauge_every");
  if (regauge.value != "none") ic.regauge_every = static_cast<long>(to_integer(regauge));

  auto& d = c.data;
  const auto& kind = doc.get("data", "kind");
  d.kind = choose<DataKind>(kind, {{"random", DataKind::random},
                                   {"single_mode", DataKind::single_mode},
                                   {"file", DataKind::file}});
  const auto& support = doc.get("data", "support_diameter");
  if (support.value != "periodic") ic.support_diameter = to_double(support);
  if (d.kind == DataKind::random) {
    const auto& seed = doc.get("data", "seed");
    const long long s = to_integer(seed);
    if (s < 0) throw ConfigError(seed.line, "seed must be non-negative");
    d.seed = static_cast<std::uint64_t>(s);
    const auto& xi0 = doc.get("data", "xi0");
    d.xi0 = to_double(xi0);
    if (!(d.xi0 > 0.0)) throw ConfigError(xi0.line, "xi0 must be positive");
    d.amplitude = to_double(doc.get("data", "amplitude"));
  } else if (d.kind == DataKind::single_mode) {
    const auto& mode = doc.get("data", "mode");
    const auto w = words(mode.value);
    if (static_cast<int>(w.size()) != c.grid.dim)
      throw ConfigError(mode.line, "mode needs " + std::to_string(c.grid.dim) + " integers");
    for (int i = 0; i < c.grid.dim; ++i) {
      d.mode[i] = static_cast<int>(to_integer({w[i], mode.line}));
      if (std::abs(d.mode[i]) > c.grid.n / 2 - 1) throw ConfigError(mode.line, "mode outside the resolved band");
    }
    d.amplitude = to_double(doc.get("data", "amplitude"));
  } else {
    d.path = doc.get("data", "path").value;
  }

  c.output.directory = doc.get("output", "directory").value;
  const auto& formats = doc.get("output", "formats");
  for (const auto& f : words(formats.value)) {
    if (f == "csv")
      c.output.csv = true;
    else if (f == "jsonl")
      c.output.jsonl = true;
    else if (f == "snapshots")
      c.output.snapshots = true;
    else
      throw ConfigError(formats.line, "unknown output format '" + f + "'");
  }
  doc.finish();

  try {
    ic.validate(c.grid);
  } catch (const Error& err) {
    throw ConfigError(dt.line, err.what());
  }
  if (ic.regauge_every && *ic.regauge_every < 1) throw ConfigError(regauge.line, "regauge_every must be positive");
  if (ic.snapshot_every < 1) throw ConfigError(every.line, "snapshot_every must be positive");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

template <class F>
void for_each_field(evolve::SystemState& s, F&& f) {
  std::visit(
      [&](auto& x) {
        for (std::size_t i = 0; i < x.a.size(); ++i) f("A" + std::to_string(i), x.a[i]);
        for (std::size_t i = 0; i < x.da.size(); ++i) f("dA" + std::to_string(i), x.da[i]);
        f("phi", x.phi);
        f("dphi", x.dphi);
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, mcsh::State>) {
          f("N", x.n_tilde);
          f("dN", x.dn_tilde);
        }
      },
      s);
}

}  // namespace

void write_state(const std::filesystem::path& dir, const evolve::SystemState& s) {
  std::filesystem::create_directories(dir);
  evolve::SystemState copy = s;
  const double t = evolve::time_of(s);
  for_each_field(copy, [&](const std::string& name, SpectralField& f) { write_snapshot(dir / (name + ".snap"), f, name, t); });
}

evolve::SystemState read_state(const std::filesystem::path& dir, evolve::System sys) {
  // the grid is taken from the phi snapshot
  const Snapshot phi = read_snapshot(dir / "phi.snap");
  const Grid& g = phi.field.grid();
  evolve::SystemState s = sys == evolve::System::mkg ? evolve::SystemState(mkg::State::zero(g))
                                                     : evolve::SystemState(mcsh::State::zero(g));
  for_each_field(s, [&](const std::string& name, SpectralField& f) {
    Snapshot snap = read_snapshot(dir / (name + ".snap"));
    if (!(snap.field.grid() == g)) throw IoError(name + ".snap: grid differs from phi.snap");
    if (snap.field.reality() != f.reality()) throw IoError(name + ".snap: wrong reality");
    f = std::move(snap.field);
  });
  std::visit([&](auto& x) {
    x.time = phi.time;
    x.validate();
  }, s);
  return s;
}

evolve::SystemState build_initial(const RunConfig& cfg) {
  const auto& d = cfg.data;
  const Grid& g = cfg.grid;
  if (d.kind == DataKind::file) {
    auto s = read_state(d.path, cfg.system);
    if (!(evolve::grid_of(s) == g)) throw ConfigError(0, "snapshot grid does not match [grid]");
    return s;
  }
  if (d.kind == DataKind::random) {
    SpectrumProfile profile{d.xi0};
    if (cfg.system == evolve::System::mkg) return gauge::make_admissible_mkg(g, d.seed, profile, d.amplitude);
    return gauge::make_admissible_mcsh(g, d.seed, profile, d.amplitude, cfg.params);
  }
  // cos(xi.x) = (e^{i xi.x} + e^{-i xi.x}) / 2, at rest: the Gauss law holds trivially
  SpectralField phi(g, Reality::complex);
  const std::array<int, 3> neg{-d.mode[0], -d.mode[1], -d.mode[2]};
  phi.set_mode(d.mode, 0.5 * d.amplitude);
  phi.set_mode(neg, phi.mode(neg) + 0.5 * d.amplitude);
  if (cfg.system == evolve::System::mkg) {
    auto s = mkg::State::zero(g);
    s.phi = phi;
    return s;
  }
  auto s = mcsh::State::zero(g);
  s.phi = phi;
  return s;
}

}  // namespace gaugewave::cli
