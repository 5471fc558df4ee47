// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wgpencil/error.hpp"
#include "wgpencil/mesh.hpp"

namespace wgp {

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  // Next non-blank line, split into whitespace-separated tokens.
  std::vector<std::string> next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    throw MeshError("mesh file ended early while reading " +
                    std::string(expecting));
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MeshError("mesh file line " + std::to_string(line_no_) + ": " + what);
  }

  int line() const { return line_no_; }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

long parse_int(LineReader& r, const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    r.fail("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) r.fail("expected an integer, got '" + s + "'");
  return v;
}

double parse_double(LineReader& r, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    r.fail("expected a number, got '" + s + "'");
  }
  if (used != s.size()) r.fail("expected a number, got '" + s + "'");
  return v;
}

std::size_t read_header(LineReader& r, const char* keyword) {
  const auto tokens = r.next(keyword);
  if (tokens.size() != 2 || tokens[0] != keyword) {
    r.fail(std::string("expected '") + keyword + " <count>'");
  }
  const long count = parse_int(r, tokens[1]);
  if (count < 0) r.fail(std::string("negative ") + keyword + " count");
  return static_cast<std::size_t>(count);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Mesh load_mesh(std::string_view text) {
  LineReader r(text);

  const std::size_t n_nodes = read_header(r, "nodes");
  std::vector<Point> nodes;
  nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const auto t = r.next("node coordinates");
    if (t.size() != 2) r.fail("node line needs exactly two coordinates");
    nodes.push_back({parse_double(r, t[0]), parse_double(r, t[1])});
  }

  const std::size_t n_tris = read_header(r, "triangles");
  std::vector<Triangle> triangles;
  triangles.reserve(n_tris);
  for (std::size_t i = 0; i < n_tris; ++i) {
    const auto t = r.next("triangles");
    if (t.size() != 4) r.fail("triangle line needs three nodes and a region");
    Triangle tri;
    for (int k = 0; k < 3; ++k) {
      tri.nodes[k] = static_cast<int>(parse_int(r, t[k]));
    }
    tri.region = static_cast<int>(parse_int(r, t[3]));
    triangles.push_back(tri);
  }

  const std::size_t n_edges = read_header(r, "edges");
  std::vector<TaggedEdge> edges;
  edges.reserve(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    const auto t = r.next("edges");
    if (t.size() != 3) r.fail("edge line needs two nodes and a tag");
    TaggedEdge e;
    e.a = static_cast<int>(parse_int(r, t[0]));
    e.b = static_cast<int>(parse_int(r, t[1]));
    try {
      e.tag = edge_tag_from_string(t[2]);
    } catch (const MeshError& err) {
      r.fail(err.what());
    }
    edges.push_back(e);
  }
  if (!r.at_end()) r.fail("unexpected content after the edge list");

  return Mesh(std::move(nodes), std::move(triangles), std::move(edges));
}

std::string save_mesh(const Mesh& mesh) {
  std::ostringstream os;
  os << "nodes " << mesh.num_nodes() << '\n';
  for (const auto& p : mesh.nodes()) {
    os << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
  os << "triangles " << mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles()) {
    os << t.nodes[0] << ' ' << t.nodes[1] << ' ' << t.nodes[2] << ' '
       << t.region << '\n';
  }
  os << "edges " << mesh.edges().size() << '\n';
  for (const auto& e : mesh.edges()) {
    os << e.a << ' ' << e.b << ' ' << to_string(e.tag) << '\n';
  }
  return os.str();
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_mesh(buf.str());
}

void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file " + path.string());
  out << save_mesh(mesh);
  if (!out) throw MeshError("failed writing mesh file " + path.string());
}

}  // namespace wgp
