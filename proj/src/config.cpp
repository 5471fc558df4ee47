// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "wgpencil/error.hpp"

namespace wgp {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_factor(const std::string& f, std::string_view whole) {
  if (lower(f) == "pi") return std::numbers::pi;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(f, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != f.size()) {
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v + ",") {
    if (c == ',') {
      const std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

bool parse_bool(const std::string& v) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

int parse_int(const std::string& v) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

}  // namespace

double parse_number(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ConfigError("empty number");
  double sign = 1.0;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    sign = s[0] == '-' ? -1.0 : 1.0;
    pos = 1;
  }
  double value = 1.0;
  char op = '*';
  std::string factor;
  auto apply = [&]() {
    if (factor.empty()) throw ConfigError("malformed number '" + std::string(text) + "'");
    const double f = parse_factor(factor, text);
    value = op == '*' ? value * f : value / f;
    factor.clear();
  };
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    // An exponent sign belongs to the literal, e.g. 1e-6.
    const bool exponent_sign =
        (c == '-' || c == '+') && !factor.empty() &&
        (factor.back() == 'e' || factor.back() == 'E') && lower(factor) != "pi";
    if ((c == '*' || c == '/') && !exponent_sign) {
      apply();
      op = c;
    } else {
      factor += c;
    }
  }
  apply();
  const double out = sign * value;
  if (!std::isfinite(out)) throw ConfigError("number is not finite: '" + std::string(text) + "'");
  return out;
}

SolverConfig parse_config(std::string_view text,
                          const std::filesystem::path& base_dir) {
  SolverConfig c;
  std::map<std::string, int> lines;  // "section.key" -> line
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  int line_no = 0;

  using Setter = std::function<void(const std::string&)>;
  auto num = [](double& dst) -> Setter {
    return [&dst](const std::string& v) { dst = parse_number(v); };
  };
  auto integer = [](int& dst) -> Setter {
    return [&dst](const std::string& v) { dst = parse_int(v); };
  };
  auto str = [](std::string& dst) -> Setter {
    return [&dst](const std::string& v) { dst = v; };
  };
  const std::map<std::string, Setter> setters = {
      {"geometry.kind",
       [&](const std::string& v) {
         const std::string k = lower(v);
         if (k == "slab") c.geometry.kind = GeometryKind::kSlab;
         else if (k == "homogeneous") c.geometry.kind = GeometryKind::kHomogeneous;
         else if (k == "file") c.geometry.kind = GeometryKind::kFile;
         else throw ConfigError("geometry kind must be slab, homogeneous or file");
       }},
      {"geometry.width", num(c.geometry.width)},
      {"geometry.height", num(c.geometry.height)},
      {"geometry.interface_x", num(c.geometry.interface_x)},
      {"geometry.nx", integer(c.geometry.nx)},
      {"geometry.ny", integer(c.geometry.ny)},
      {"geometry.refinement", integer(c.geometry.refinement)},
      {"geometry.mesh_file",
       [&](const std::string& v) {
         std::filesystem::path p(v);
         c.geometry.mesh_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
       }},
      {"material.eps1", num(c.eps1)},
      {"material.eps2", num(c.eps2)},
      {"solver.backend",
       [&](const std::string& v) {
         try {
           c.backend = backend_from_string(lower(v));
         } catch (const Error& e) {
           throw ConfigError(e.what());
         }
       }},
      {"solver.classification_tol", num(c.classification_tol)},
      {"solver.residual_tol", num(c.residual_tol)},
      {"solver.pairing_tol", num(c.pairing_tol)},
      {"solver.qr_sweep_cap", integer(c.qr_sweep_cap)},
      {"solver.vector_radius", num(c.vector_radius)},
      {"solver.max_vectors", integer(c.max_vectors)},
      {"oracle.kind",
       [&](const std::string& v) {
         const std::string k = lower(v);
         if (k == "none") c.oracle.kind = OracleKind::kNone;
         else if (k == "homogeneous") c.oracle.kind = OracleKind::kHomogeneous;
         else if (k == "slab") c.oracle.kind = OracleKind::kSlab;
         else throw ConfigError("oracle kind must be none, homogeneous or slab");
       }},
      {"oracle.families",
       [&](const std::string& v) {
         c.oracle.families.clear();
         for (const auto& f : split_list(v)) {
           const auto fam = oracle_family_from_string(f);
           if (fam != OracleFamily::kLse && fam != OracleFamily::kLsm) {
             throw ConfigError("slab oracle families are LSE and LSM");
           }
           c.oracle.families.push_back(fam);
         }
       }},
      {"oracle.transverse_n",
       [&](const std::string& v) {
         c.oracle.transverse_n.clear();
         for (const auto& f : split_list(v)) c.oracle.transverse_n.push_back(parse_int(f));
       }},
      {"oracle.max_abs_gamma", num(c.oracle.max_abs_gamma)},
      {"oracle.samples", integer(c.oracle.samples)},
      {"oracle.rel_tol", num(c.oracle.rel_tol)},
      {"oracle.zero_abs_tol", num(c.oracle.zero_abs_tol)},
      {"oracle.exclusion_margin", num(c.oracle.exclusion_margin)},
      {"oracle.enabled",
       [&](const std::string& v) {
         if (!parse_bool(v)) c.oracle.kind = OracleKind::kNone;
       }},
      {"sweep.eps2_from", num(c.sweep.eps2_from)},
      {"sweep.eps2_to", num(c.sweep.eps2_to)},
      {"sweep.steps", integer(c.sweep.steps)},
      {"sweep.track_radius", num(c.sweep.track_radius)},
      {"output.dir", [&](const std::string& v) { c.output.dir = v; }},
      {"output.spectrum", str(c.output.spectrum)},
      {"output.report", str(c.output.report)},
      {"output.oracle", str(c.output.oracle)},
      {"output.plot", str(c.output.plot)},
      {"output.dispersion", str(c.output.dispersion)},
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = lower(trim(line.substr(1, line.size() - 2)));
      static const char* known[] = {"geometry", "material", "solver",
                                    "oracle",   "sweep",    "output"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError("unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    if (section.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key = section + "." + lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'", line_no);
    if (lines.count(key) != 0) throw ConfigError("duplicate key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_no);
    } catch (const Error& e) {
      throw ConfigError(e.what(), line_no);
    }
    lines[key] = line_no;
  }

  auto at = [&](const std::string& key) {
    const auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
  };
  auto require = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key + ": " + what, at(key));
  };
  require(c.eps1 >= 1.0, "material.eps1", "relative permittivity must be >= 1");
  require(c.eps2 >= 1.0, "material.eps2", "relative permittivity must be >= 1");
  require(c.geometry.refinement >= 1, "geometry.refinement", "must be >= 1");
  require(c.classification_tol > 0.0, "solver.classification_tol", "must be > 0");
  require(c.residual_tol > 0.0, "solver.residual_tol", "must be > 0");
  require(c.pairing_tol > 0.0, "solver.pairing_tol", "must be > 0");
  require(c.qr_sweep_cap > 0, "solver.qr_sweep_cap", "must be > 0");
  require(c.vector_radius >= 0.0, "solver.vector_radius", "must be >= 0");
  require(c.max_vectors >= 0, "solver.max_vectors", "must be >= 0");
  require(c.oracle.max_abs_gamma > 0.0, "oracle.max_abs_gamma", "must be > 0");
  require(c.oracle.samples >= 2, "oracle.samples", "must be >= 2");
  require(c.oracle.rel_tol > 0.0, "oracle.rel_tol", "must be > 0");
  require(c.oracle.zero_abs_tol > 0.0, "oracle.zero_abs_tol", "must be > 0");
  require(c.sweep.eps2_from >= 1.0, "sweep.eps2_from", "permittivity must be >= 1");
  require(c.sweep.eps2_to >= 1.0, "sweep.eps2_to", "permittivity must be >= 1");
  require(c.sweep.steps >= 2, "sweep.steps", "must be >= 2");
  if (c.geometry.kind == GeometryKind::kFile) {
    require(!c.geometry.mesh_file.empty(), "geometry.mesh_file",
            "required when geometry kind is file");
  } else {
    require(c.geometry.width > 0.0, "geometry.width", "must be > 0");
    require(c.geometry.height > 0.0, "geometry.height", "must be > 0");
    require(c.geometry.nx >= 2, "geometry.nx", "must be >= 2");
    require(c.geometry.ny >= 2, "geometry.ny", "must be >= 2");
    require(c.geometry.interface_x > 0.0 && c.geometry.interface_x < c.geometry.width,
            "geometry.interface_x", "must lie strictly inside (0, width)");
  }
  if (c.oracle.kind == OracleKind::kHomogeneous) {
    require(c.eps1 == c.eps2, "oracle.kind",
            "the homogeneous oracle needs eps1 == eps2");
  }
  if (c.oracle.kind != OracleKind::kNone) {
    require(c.geometry.kind != GeometryKind::kFile, "oracle.kind",
            "oracles need a generated rectangle");
  }
  return c;
}

SolverConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

Mesh make_mesh(const SolverConfig& config) {
  const auto& g = config.geometry;
  switch (g.kind) {
    case GeometryKind::kSlab:
      return generate_rect_slab(g.width, g.height, g.interface_x, config.nx(),
                                config.ny());
    case GeometryKind::kHomogeneous:
      return generate_homogeneous_rect(g.width, g.height, config.nx(),
                                       config.ny(), g.interface_x);
    case GeometryKind::kFile:
      return load_mesh_file(g.mesh_file);
  }
  throw ConfigError("unknown geometry kind");
}

double snapped_interface(const SolverConfig& config) {
  const auto& g = config.geometry;
  const long k = std::lround(g.interface_x / g.width * config.nx());
  return g.width * static_cast<double>(k) / config.nx();
}

}  // namespace wgp
