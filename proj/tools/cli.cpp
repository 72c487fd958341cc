// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "shgaunt/shgaunt.hpp"

namespace gsht {
namespace {

using nlohmann::ordered_json;

constexpr int kMaxOrder = 30;

struct TablesConfig {
  int n1 = 4;
  int n2 = 4;
  std::string basis = "real";
  std::string path = "exact";
  std::string format = "binary";
  std::string output;
  bool allow_large = false;
};

struct VerifyOptions {
  std::string suite = "all";
  int n1 = 3;
  int n2 = 3;
  double tolerance = 1e-11;
  int grid_band = -1;
  std::string path = "exact";
  bool allow_large = false;
  bool json = false;
};

struct DemoConfig {
  std::string name;
  DemoOptions opts;
  std::string direction;
  bool json = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_orders(int n1, int n2, bool allow_large) {
  if (n1 < 0 || n2 < 0) throw ConfigError("orders must be non-negative");
  if (!allow_large && (n1 > kMaxOrder || n2 > kMaxOrder)) {
    throw ConfigError("orders above 30 need --allow-large");
  }
  if (n1 + n2 > 65535) throw ConfigError("orders too large for the table format");
}

shg::FactorialPath parse_path(const std::string& s) {
  if (s == "exact") return shg::FactorialPath::exact;
  if (s == "fast") return shg::FactorialPath::fast;
  throw ConfigError("unknown factorial path: " + s);
}

/// "out.gsht" -> "out-real.gsht".
std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& tag) {
  std::filesystem::path out = p;
  out.replace_filename(p.stem().string() + "-" + tag + p.extension().string());
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_tables(const TablesConfig& cfg, std::ostream& out, std::ostream& err) {
  check_orders(cfg.n1, cfg.n2, cfg.allow_large);
  const shg::FactorialPath path = parse_path(cfg.path);
  std::vector<shg::Basis> bases;
  if (cfg.basis == "complex" || cfg.basis == "both") bases.push_back(shg::Basis::complex);
  if (cfg.basis == "real" || cfg.basis == "both") bases.push_back(shg::Basis::real);
  if (bases.empty()) throw ConfigError("unknown basis: " + cfg.basis);
  if (cfg.format != "binary" && cfg.format != "json") throw ConfigError("unknown format: " + cfg.format);
  if (cfg.output.empty()) throw ConfigError("missing output path (-o)");
  if (cfg.format == "binary" && cfg.output == "-") throw ConfigError("binary tables cannot go to stdout");

  std::vector<shg::GauntTable> tables;
  for (shg::Basis b : bases) {
    err << "building " << shg::to_string(b) << " table N1=" << cfg.n1 << " N2=" << cfg.n2 << " ("
        << shg::to_string(path) << " factorials, " << shg::worker_count() << " workers)\n";
    const auto t0 = std::chrono::steady_clock::now();
    tables.push_back(shg::build_table(b, cfg.n1, cfg.n2, path));
    const auto& t = tables.back();
    const std::size_t entries = t.size() * shg::coeff_count(cfg.n1) * shg::coeff_count(cfg.n2);
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", seconds_since(t0));
    out << "basis=" << shg::to_string(b) << " targets=" << t.size() << " entries=" << entries
        << " nonzeros=" << t.nonzeros() << " wall_s=" << wall << '\n';
  }

  if (cfg.format == "json") {
    if (cfg.output == "-") {
      shg::write_tables_json(out, tables);
    } else {
      shg::save_tables_json(cfg.output, tables);
      out << "wrote " << cfg.output << '\n';
    }
    return kExitOk;
  }
  for (const auto& t : tables) {
    const std::filesystem::path file =
        tables.size() > 1 ? with_suffix(cfg.output, shg::to_string(t.basis())) : std::filesystem::path(cfg.output);
    shg::save_table(file, t);
    out << "wrote " << file.string() << '\n';
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  check_orders(opt.n1, opt.n2, opt.allow_large);
  if (!(opt.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  shg::VerifyConfig cfg;
  cfg.n1 = opt.n1;
  cfg.n2 = opt.n2;
  cfg.tolerance = opt.tolerance;
  cfg.grid_band = opt.grid_band;
  cfg.path = parse_path(opt.path);

  std::vector<std::string> suites;
  if (opt.suite == "all") {
    suites = shg::suite_names();
  } else {
    const auto& names = shg::suite_names();
    if (std::find(names.begin(), names.end(), opt.suite) == names.end()) {
      throw ConfigError("unknown suite: " + opt.suite);
    }
    suites.push_back(opt.suite);
  }

  bool all_pass = true;
  ordered_json report = ordered_json::array();
  for (const auto& name : suites) {
    err << "running " << name << "\n";
    const shg::SuiteResult r = shg::run_suite(name, cfg);
    all_pass = all_pass && r.pass;
    if (opt.json) {
      report.push_back({{"suite", r.name},
                        {"max_error", r.max_error},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"detail", r.detail}});
    } else {
      out << (r.pass ? "PASS " : "FAIL ") << r.name << " max_error=" << shg::format_error(r.max_error)
          << " tolerance=" << shg::format_error(r.tolerance) << " " << r.detail << '\n';
    }
  }
  if (opt.json) {
    out << ordered_json{{"n1", opt.n1}, {"n2", opt.n2}, {"pass", all_pass}, {"suites", report}}.dump(2) << '\n';
  } else {
    out << (all_pass ? "PASS" : "FAIL") << '\n';
  }
  return all_pass ? kExitOk : kExitToleranceBreach;
}

void print_text(const ordered_json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      print_text(*it, out, prefix + it.key() + ".");
    } else {
      out << prefix << it.key() << " = " << it->dump() << '\n';
    }
  }
}

int cmd_demo(DemoConfig cfg, std::ostream& out) {
  const auto& names = demo_names();
  if (std::find(names.begin(), names.end(), cfg.name) == names.end()) {
    throw ConfigError("unknown demo: " + cfg.name);
  }
  if (!cfg.direction.empty()) {
    std::istringstream in(cfg.direction);
    char comma = 0;
    if (!(in >> cfg.opts.theta >> comma >> cfg.opts.phi) || comma != ',' || !(in >> std::ws).eof()) {
      throw ConfigError("--direction expects theta,phi");
    }
  }
  if (cfg.opts.order > kMaxOrder) throw ConfigError("order above 30");
  if (cfg.opts.kd < 0.0 || cfg.opts.spacing < 0.0 || cfg.opts.freq < 0.0 || !(cfg.opts.sound_speed > 0.0)) {
    throw ConfigError("kd, spacing and freq must be non-negative");
  }
  ordered_json report;
  try {
    report = run_demo(cfg.name, cfg.opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.json) {
    out << report.dump(2) << '\n';
  } else {
    print_text(report, out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaunt coefficient tables, verification suites and acoustic demos", "gsht"};
  app.require_subcommand(1);

  TablesConfig tables;
  auto* t = app.add_subcommand("tables", "Build Gaunt coupling tables and write them to a file");
  t->add_option("--n1", tables.n1, "First-factor order")->capture_default_str();
  t->add_option("--n2", tables.n2, "Second-factor order")->capture_default_str();
  t->add_option("--basis", tables.basis, "complex, real or both")->capture_default_str();
  t->add_option("--factorial-path", tables.path, "exact or fast")->capture_default_str();
  t->add_option("--format", tables.format, "binary or json")->capture_default_str();
  t->add_option("-o,--output", tables.output, "Output file ('-' = stdout for json)");
  t->add_flag("--allow-large", tables.allow_large, "Permit orders above 30");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run closed-form vs. oracle verification suites");
  v->add_option("--suite", verify.suite, "Suite name or 'all'")->capture_default_str();
  v->add_option("--n1", verify.n1, "First-factor order")->capture_default_str();
  v->add_option("--n2", verify.n2, "Second-factor order")->capture_default_str();
  v->add_option("--tolerance", verify.tolerance, "Max error allowed")->capture_default_str();
  v->add_option("--grid-band", verify.grid_band, "Quadrature band (default 3(N1+N2))");
  v->add_option("--factorial-path", verify.path, "exact or fast")->capture_default_str();
  v->add_flag("--allow-large", verify.allow_large, "Permit orders above 30");
  v->add_flag("--json", verify.json, "Machine-readable report");

  DemoConfig demo;
  auto* d = app.add_subcommand("demo", "Evaluate an application formula against quadrature");
  d->add_option("name", demo.name, "translate|intensity|energy-vector|window|beamform|diffuse-scm")->required();
  d->add_option("--order", demo.opts.order, "Field order");
  d->add_option("--direction", demo.direction, "theta,phi in radians");
  d->add_option("--kd", demo.opts.kd, "Wavenumber times distance")->capture_default_str();
  d->add_option("--expansion", demo.opts.expansion, "Plane-wave truncation order");
  d->add_option("--spacing", demo.opts.spacing, "Sensor spacing in m")->capture_default_str();
  d->add_option("--freq", demo.opts.freq, "Frequency in Hz")->capture_default_str();
  d->add_option("--sound-speed", demo.opts.sound_speed, "m/s")->capture_default_str();
  d->add_flag("--json", demo.json, "Print JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (t->parsed()) return cmd_tables(tables, out, err);
    if (v->parsed()) return cmd_verify(verify, out, err);
    return cmd_demo(demo, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const shg::TableIoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace gsht
