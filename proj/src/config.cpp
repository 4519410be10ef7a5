#include "leslie/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace leslie {

std::string to_string(InitialSpec::Kind k) {
  switch (k) {
    case InitialSpec::Kind::constant: return "constant";
    case InitialSpec::Kind::perturbed: return "perturbed";
    case InitialSpec::Kind::smooth_random: return "smooth_random";
  }
  return "constant";
}

InitialSpec::Kind initial_kind_from_string(const std::string& s) {
  if (s == "constant") return InitialSpec::Kind::constant;
  if (s == "perturbed") return InitialSpec::Kind::perturbed;
  if (s == "smooth_random") return InitialSpec::Kind::smooth_random;
  throw std::invalid_argument("unknown initial kind '" + s + "' (expected constant|perturbed|smooth_random)");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
    throw std::invalid_argument("expected a finite number, got '" + s + "'");
  return x;
}

long long to_integer(const std::string& s) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  return x;
}

int to_int(const std::string& s) {
  const long long x = to_integer(s);
  if (x < -1000000000LL || x > 1000000000LL) throw std::invalid_argument("integer out of range: " + s);
  return static_cast<int>(x);
}

std::vector<double> to_list(const std::string& s) {
  std::string t = s;
  for (auto& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(tok));
  return out;
}

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

struct Pending {
  int dim = 2;
  int n = 32;
  double length = 1.0;
  Boundary bc = Boundary::periodic;
  std::string elastic = "isotropic";
  double elastic_k = 1.0;
  std::vector<double> entries;
  int entries_line = 0;
};

}  // namespace

RunConfig parse_config(const std::string& text, bool allow_invalid) {
  RunConfig cfg;
  Pending pend;
  ParameterSet& mp = cfg.material.params;
  StepperConfig& st = cfg.stepper;
  InitialSpec& in = cfg.initial;

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> keys = {
      {"grid",
       {{"dim", [&](const std::string& v) { pend.dim = to_int(v); }},
        {"n", [&](const std::string& v) { pend.n = to_int(v); }},
        {"length", [&](const std::string& v) { pend.length = to_double(v); }},
        {"bc", [&](const std::string& v) { pend.bc = boundary_from_string(v); }}}},
      {"material",
       {{"lambda", [&](const std::string& v) { mp.lambda = to_double(v); }},
        {"gamma", [&](const std::string& v) { mp.gamma = to_double(v); }},
        {"mu1", [&](const std::string& v) { mp.mu1 = to_double(v); }},
        {"mu2", [&](const std::string& v) { mp.mu2 = to_double(v); }},
        {"mu3", [&](const std::string& v) { mp.mu3 = to_double(v); }},
        {"mu4", [&](const std::string& v) { mp.mu4 = to_double(v); }},
        {"mu5", [&](const std::string& v) { mp.mu5 = to_double(v); }},
        {"mu6", [&](const std::string& v) { mp.mu6 = to_double(v); }},
        {"epsilon", [&](const std::string& v) { mp.epsilon = to_double(v); }},
        {"forcing", [&](const std::string& v) { mp.forcing.kind = forcing_kind_from_string(v); }},
        {"forcing_amplitude", [&](const std::string& v) { mp.forcing.amplitude = to_double(v); }},
        {"forcing_frequency", [&](const std::string& v) { mp.forcing.frequency = to_double(v); }},
        {"elastic", [&](const std::string& v) {
           if (v != "isotropic" && v != "explicit")
             throw std::invalid_argument("elastic must be isotropic|explicit, got '" + v + "'");
           pend.elastic = v;
         }},
        {"elastic_k", [&](const std::string& v) { pend.elastic_k = to_double(v); }},
        {"elastic_entries", [&](const std::string& v) { pend.entries = to_list(v); }}}},
      {"stepper",
       {{"dt", [&](const std::string& v) { st.dt = to_double(v); }},
        {"t_end", [&](const std::string& v) { st.t_end = to_double(v); }},
        {"poisson_tol", [&](const std::string& v) { st.poisson_tol = to_double(v); }},
        {"poisson_max_iter", [&](const std::string& v) { st.poisson_max_iter = to_int(v); }},
        {"output_every", [&](const std::string& v) { st.output_every = to_int(v); }},
        {"scheme", [&](const std::string& v) { st.scheme = scheme_from_string(v); }},
        {"solver_tol", [&](const std::string& v) { st.solver_tol = to_double(v); }},
        {"solver_max_iter", [&](const std::string& v) { st.solver_max_iter = to_int(v); }},
        {"gronwall_c", [&](const std::string& v) { cfg.gronwall_c = to_double(v); }},
        {"energy_tol", [&](const std::string& v) { cfg.energy_tol = to_double(v); }}}},
      {"initial",
       {{"kind", [&](const std::string& v) { in.kind = initial_kind_from_string(v); }},
        {"director", [&](const std::string& v) {
           const auto xs = to_list(v);
           if (xs.size() != 3) throw std::invalid_argument("director needs 3 components");
           in.director = {xs[0], xs[1], xs[2]};
         }},
        {"seed", [&](const std::string& v) {
           const long long s = to_integer(v);
           if (s < 0) throw std::invalid_argument("seed must be >= 0");
           in.seed = static_cast<std::uint64_t>(s);
         }},
        {"amplitude", [&](const std::string& v) { in.amplitude = to_double(v); }},
        {"velocity_amplitude", [&](const std::string& v) { in.velocity_amplitude = to_double(v); }},
        {"modes", [&](const std::string& v) { in.modes = to_int(v); }}}},
  };

  std::istringstream is(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "malformed section header '" + line + "'");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!keys.count(section)) throw ConfigError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value, got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) throw ConfigError(lineno, "key '" + key + "' outside of any section");
    const auto& table = keys.at(section);
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(lineno, "unknown key '" + key + "' in [" + section + "]");
    const std::string full = section + "." + key;
    if (seen.count(full))
      throw ConfigError(lineno, "duplicate key '" + key + "' (first set on line " +
                                    std::to_string(seen[full]) + ")");
    seen[full] = lineno;
    if (value.empty()) throw ConfigError(lineno, "empty value for '" + key + "'");
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(lineno, key + ": " + e.what());
    }
    if (full == "material.elastic_entries") pend.entries_line = lineno;
  }

  auto line_of = [&](const std::string& k) { return seen.count(k) ? seen[k] : 0; };
  try {
    cfg.grid = Grid::cube(pend.dim, pend.n, pend.length, pend.bc);
    cfg.grid.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line_of("grid.n"), std::string("grid: ") + e.what());
  }
  if (pend.elastic == "isotropic") {
    if (!(pend.elastic_k > 0.0)) throw ConfigError(line_of("material.elastic_k"), "elastic_k must be > 0");
    cfg.material.elastic = ElasticTensor::isotropic(pend.elastic_k);
  } else {
    if (pend.entries.size() != 81)
      throw ConfigError(pend.entries_line, "elastic_entries needs 81 numbers, got " +
                                               std::to_string(pend.entries.size()));
    try {
      cfg.material.elastic = ElasticTensor::from_entries(pend.entries);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(pend.entries_line, e.what());
    }
    const auto ell = ellipticity_check(cfg.material.elastic, 256, 1);
    if (ell.violated && !allow_invalid)
      throw ConfigError(pend.entries_line, "elastic tensor is not strongly elliptic (eta estimate " +
                                               fmt(ell.eta) + ")");
  }
  if (!(mp.epsilon > 0.0)) throw ConfigError(line_of("material.epsilon"), "epsilon must be > 0");
  try {
    st.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (!(in.amplitude >= 0.0) || !(in.velocity_amplitude >= 0.0))
    throw ConfigError(0, "initial amplitudes must be >= 0");
  if (in.modes < 1) throw ConfigError(line_of("initial.modes"), "modes must be >= 1");
  if (norm(in.director) == 0.0) throw ConfigError(line_of("initial.director"), "director must be nonzero");
  if (!(cfg.gronwall_c >= 0.0)) throw ConfigError(line_of("stepper.gronwall_c"), "gronwall_c must be >= 0");
  if (!(cfg.energy_tol > 0.0)) throw ConfigError(line_of("stepper.energy_tol"), "energy_tol must be > 0");

  if (!allow_invalid) {
    const auto bad = validate(mp);
    if (!bad.empty()) {
      std::string msg = "material parameters are not dissipative: violates ";
      for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? ", " : "") + describe(bad[i]);
      throw ConfigError(0, msg);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, bool allow_invalid) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), allow_invalid);
}

std::string format_config(const RunConfig& cfg) {
  const ParameterSet& p = cfg.material.params;
  std::ostringstream os;
  os << "[grid]\n"
     << "dim = " << cfg.grid.dim << "\n"
     << "n = " << cfg.grid.n[0] << "\n"
     << "length = " << fmt(cfg.grid.length(0)) << "\n"
     << "bc = " << to_string(cfg.grid.bc) << "\n\n";
  os << "[material]\n"
     << "lambda = " << fmt(p.lambda) << "\n"
     << "gamma = " << fmt(p.gamma) << "\n"
     << "mu1 = " << fmt(p.mu1) << "\nmu2 = " << fmt(p.mu2) << "\nmu3 = " << fmt(p.mu3) << "\n"
     << "mu4 = " << fmt(p.mu4) << "\nmu5 = " << fmt(p.mu5) << "\nmu6 = " << fmt(p.mu6) << "\n"
     << "epsilon = " << fmt(p.epsilon) << "\n"
     << "forcing = " << to_string(p.forcing.kind) << "\n"
     << "forcing_amplitude = " << fmt(p.forcing.amplitude) << "\n"
     << "forcing_frequency = " << fmt(p.forcing.frequency) << "\n";
  const ElasticTensor& L = cfg.material.elastic;
  if (L.is_isotropic()) {
    os << "elastic = isotropic\nelastic_k = " << fmt(L.isotropic_modulus()) << "\n";
  } else {
    os << "elastic = explicit\nelastic_entries =";
    for (double x : L.entries()) os << ' ' << fmt(x);
    os << "\n";
  }
  const StepperConfig& s = cfg.stepper;
  os << "\n[stepper]\n"
     << "dt = " << fmt(s.dt) << "\n"
     << "t_end = " << fmt(s.t_end) << "\n"
     << "poisson_tol = " << fmt(s.poisson_tol) << "\n"
     << "poisson_max_iter = " << s.poisson_max_iter << "\n"
     << "output_every = " << s.output_every << "\n"
     << "scheme = " << to_string(s.scheme) << "\n"
     << "solver_tol = " << fmt(s.solver_tol) << "\n"
     << "solver_max_iter = " << s.solver_max_iter << "\n"
     << "gronwall_c = " << fmt(cfg.gronwall_c) << "\n"
     << "energy_tol = " << fmt(cfg.energy_tol) << "\n";
  const InitialSpec& in = cfg.initial;
  os << "\n[initial]\n"
     << "kind = " << to_string(in.kind) << "\n"
     << "director = " << fmt(in.director[0]) << ' ' << fmt(in.director[1]) << ' '
     << fmt(in.director[2]) << "\n"
     << "seed = " << in.seed << "\n"
     << "amplitude = " << fmt(in.amplitude) << "\n"
     << "velocity_amplitude = " << fmt(in.velocity_amplitude) << "\n"
     << "modes = " << in.modes << "\n";
  return os.str();
}

}  // namespace leslie
