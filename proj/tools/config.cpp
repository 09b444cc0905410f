#include "config.hpp"

#include "tbdrive/observables.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <sstream>

namespace tbdrive::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty()) out.push_back(to_double(key, cell));
  }
  return out;
}

class Section {
 public:
  Section(std::string name, const pt::ptree& tree) : name_(std::move(name)), tree_(tree) {}

  std::optional<std::string> text(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  }
  std::string required(const std::string& key) const {
    auto v = text(key);
    if (!v || v->empty()) throw ConfigError("[" + name_ + "] is missing key '" + key + "'");
    return *v;
  }
  std::optional<double> number(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    return to_double(name_ + "." + key, *v);
  }
  double number_or(const std::string& key, double fallback) const { return number(key).value_or(fallback); }
  double required_number(const std::string& key) const { return to_double(name_ + "." + key, required(key)); }
  int required_int(const std::string& key) const { return to_int(name_ + "." + key, required(key)); }
  std::optional<int> integer(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    return to_int(name_ + "." + key, *v);
  }
  std::vector<double> list(const std::string& key) const {
    auto v = text(key);
    return v ? to_list(name_ + "." + key, *v) : std::vector<double>{};
  }

 private:
  std::string name_;
  const pt::ptree& tree_;
};

DriveProfile parse_drive(const Section& s, const std::filesystem::path& base_dir) {
  const auto kind = s.required("kind");
  if (kind == "constant") return DriveProfile::constant(s.required_number("value"));
  if (kind == "sinusoid") {
    return DriveProfile::sinusoid(s.required_number("amplitude"), s.required_number("angular_frequency"),
                                  s.number_or("phase", 0.0));
  }
  if (kind == "piecewise") return DriveProfile::piecewise(s.list("breakpoints"), s.list("values"));
  if (kind == "sampled") {
    std::filesystem::path file = s.required("file");
    if (file.is_relative()) file = base_dir / file;
    return load_sampled_drive(file);
  }
  throw ConfigError("unknown drive kind '" + kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  RunConfig cfg;
  try {
    if (auto node = tree.get_child_optional("lattice")) {
      Section s("lattice", *node);
      LatticeSpec spec;
      spec.boundary = parse_boundary(s.text("boundary").value_or("dirichlet"));
      spec.coupling = s.required_number("coupling");
      if (spec.boundary == Boundary::InfiniteWindow) {
        spec.window_halfwidth = s.required_int("window_halfwidth");
        spec.n_sites = 2 * spec.window_halfwidth + 1;
      } else {
        spec.n_sites = s.required_int("n_sites");
      }
      spec.validate();
      cfg.lattice = spec;
    }
    if (auto node = tree.get_child_optional("circuit")) {
      Section s("circuit", *node);
      CircuitSpec c;
      c.inductance = s.required_number("inductance");
      c.electron_charge = s.required_number("electron_charge");
      c.basis_halfwidth = s.required_int("basis_halfwidth");
      c.capacitance = s.number("capacitance");
      const auto units = s.text("units").value_or("natural");
      if (units == "natural") {
        c.units = UnitSystem::Natural;
      } else if (units == "si") {
        c.units = UnitSystem::SI;
      } else {
        throw ConfigError("unknown circuit units '" + units + "'");
      }
      cfg.circuit = c;
    }
    if (cfg.lattice && cfg.circuit) throw ConfigError("config must contain exactly one of [lattice] and [circuit]");

    if (auto node = tree.get_child_optional("drive")) {
      cfg.drive = parse_drive(Section("drive", *node), base_dir);
      if (cfg.circuit) cfg.circuit->drive_voltage = *cfg.drive;
    }
    if (auto node = tree.get_child_optional("initial_state")) {
      Section s("initial_state", *node);
      InitialState init;
      init.site = s.integer("site");
      const auto re = s.list("amplitudes");
      const auto im = s.list("amplitudes_im");
      if (!im.empty() && im.size() != re.size()) throw ConfigError("amplitudes_im must match amplitudes in length");
      for (std::size_t i = 0; i < re.size(); ++i) init.amplitudes.emplace_back(re[i], im.empty() ? 0.0 : im[i]);
      if (init.site.has_value() == !init.amplitudes.empty()) {
        throw ConfigError("[initial_state] needs exactly one of 'site' or 'amplitudes'");
      }
      cfg.initial = init;
    }
    if (auto node = tree.get_child_optional("time")) {
      Section s("time", *node);
      cfg.t_final = s.number("t_final");
      cfg.dt = s.number("dt");
      cfg.record_stride = s.integer("record_stride").value_or(1);
      if (cfg.record_stride < 1) throw ConfigError("record_stride must be >= 1");
    }
    if (auto node = tree.get_child_optional("method")) {
      Section s("method", *node);
      cfg.method = s.text("name").value_or("oracle");
      cfg.order = s.integer("order").value_or(cfg.order);
      for (double o : s.list("orders")) {
        if (o != std::floor(o) || o < 0.0) throw ConfigError("method.orders expects non-negative integers");
        cfg.orders.push_back(static_cast<int>(o));
      }
      if (cfg.method != "oracle" && cfg.method != "su2" && cfg.method != "series" && cfg.method != "all") {
        throw ConfigError("unknown method '" + cfg.method + "'");
      }
    }
    if (auto node = tree.get_child_optional("output")) {
      Section s("output", *node);
      if (auto dir = s.text("dir")) cfg.output_dir = *dir;
    }
    if (auto node = tree.get_child_optional("algebra")) {
      Section s("algebra", *node);
      cfg.algebra_n_min = s.integer("n_min");
      cfg.algebra_n_max = s.integer("n_max");
      if (auto b = s.text("boundary")) cfg.algebra_boundary = parse_boundary(*b);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception&) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  return parse_config(text, path.parent_path());
}

StateVector make_initial_state(const InitialState& init, const LatticeSpec& lattice) {
  if (init.site) {
    if (!lattice.contains(*init.site)) {
      throw ConfigError("initial site " + std::to_string(*init.site) + " is outside the lattice basis");
    }
    return site_state(lattice, *init.site);
  }
  if (static_cast<int>(init.amplitudes.size()) != lattice.dim()) {
    throw ConfigError("initial amplitudes have length " + std::to_string(init.amplitudes.size()) + ", lattice has " +
                      std::to_string(lattice.dim()) + " sites");
  }
  StateVector psi(lattice.dim());
  for (Eigen::Index r = 0; r < psi.size(); ++r) psi(r) = init.amplitudes[static_cast<std::size_t>(r)];
  if (psi.norm() == 0.0) throw ConfigError("initial amplitudes are all zero");
  return psi / psi.norm();
}

}  // namespace tbdrive::cli
