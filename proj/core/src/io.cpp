#include "endlab/io.hpp"

#include <charconv>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "endlab/error.hpp"

namespace endlab::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++lineno;
    std::string_view raw = text.substr(pos, end - pos);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l{lineno, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) l.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!l.tokens.empty()) lines.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& what) {
  throw ParseError(l.number, t.column, what);
}

int to_int(const Line& l, const Token& t) {
  int v = 0;
  const auto* b = t.text.data();
  const auto* e = b + t.text.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) fail(l, t, "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

double to_double(const Line& l, const Token& t) {
  double v = 0;
  const auto* b = t.text.data();
  const auto* e = b + t.text.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) fail(l, t, "expected a number, got '" + std::string(t.text) + "'");
  return v;
}

int to_dart(const Line& l, const Token& t) {
  if (t.text.size() < 2 || (t.text[0] != '+' && t.text[0] != '-'))
    fail(l, t, "expected a signed edge reference like +3 or -3");
  const Token rest{t.text.substr(1), t.column + 1};
  const int e = to_int(l, rest);
  if (e < 0) fail(l, rest, "negative edge id");
  return CellSurface::dart(e, t.text[0] == '+');
}

struct Document {
  std::string format;
  std::size_t last_line = 1;
  int vertices = 0;
  std::vector<CellSurface::EdgeEnds> edges;
  std::vector<std::vector<int>> faces;
  std::map<int, double> theta;
  std::map<int, VertexGeom> geom;
  std::map<int, cplx> cr;
  std::map<int, EdgeState> orient;
};

Document parse(std::string_view text, std::string_view expected, std::string_view keys) {
  const auto lines = tokenize(text);
  Document doc;
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[1].text != "v1" ||
      lines[0].tokens[0].text != expected)
    throw ParseError(lines.empty() ? 1 : lines[0].number, 1, "expected header '" + std::string(expected) + " v1'");
  doc.format = std::string(expected);
  doc.last_line = lines.back().number;
  auto allowed = [&](std::string_view k) {
    std::size_t pos = 0;
    while (pos < keys.size()) {
      const std::size_t end = std::min(keys.find(' ', pos), keys.size());
      if (keys.substr(pos, end - pos) == k) return true;
      pos = end + 1;
    }
    return false;
  };
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const Line& l = lines[n];
    const auto& t = l.tokens;
    const std::string_view key = t[0].text;
    if (!allowed(key)) fail(l, t[0], "unknown key '" + std::string(key) + "' in " + doc.format + " file");
    auto need = [&](std::size_t count) {
      if (t.size() < count) fail(l, t.back(), "too few fields for '" + std::string(key) + "'");
      if (t.size() > count) fail(l, t[count], "unexpected field");
    };
    auto edge_ref = [&](const Token& tok) {
      const int e = to_int(l, tok);
      if (e < 0 || e >= static_cast<int>(doc.edges.size())) fail(l, tok, "unknown edge " + std::string(tok.text));
      return e;
    };
    auto vertex_ref = [&](const Token& tok) {
      const int v = to_int(l, tok);
      if (v < 0 || v >= doc.vertices) fail(l, tok, "unknown vertex " + std::string(tok.text));
      return v;
    };
    if (key == "v") {
      need(2);
      if (to_int(l, t[1]) != doc.vertices) fail(l, t[1], "vertex ids must be consecutive from 0");
      ++doc.vertices;
    } else if (key == "e") {
      need(4);
      if (to_int(l, t[1]) != static_cast<int>(doc.edges.size())) fail(l, t[1], "edge ids must be consecutive from 0");
      doc.edges.push_back({vertex_ref(t[2]), vertex_ref(t[3])});
    } else if (key == "f") {
      if (t.size() < 3) fail(l, t.back(), "face needs at least one dart");
      if (to_int(l, t[1]) != static_cast<int>(doc.faces.size())) fail(l, t[1], "face ids must be consecutive from 0");
      std::vector<int> c;
      for (std::size_t i = 2; i < t.size(); ++i) {
        const int d = to_dart(l, t[i]);
        if (CellSurface::edge_of(d) >= static_cast<int>(doc.edges.size())) fail(l, t[i], "unknown edge");
        c.push_back(d);
      }
      doc.faces.push_back(std::move(c));
    } else if (key == "theta") {
      need(3);
      const int e = edge_ref(t[1]);
      if (!doc.theta.emplace(e, to_double(l, t[2])).second) fail(l, t[1], "duplicate theta");
    } else if (key == "geom") {
      need(7);
      const int v = vertex_ref(t[1]);
      VertexGeom g;
      const std::string_view k = t[2].text;
      if (k == "compact") g.kind = VertexKind::Compact;
      else if (k == "ideal") g.kind = VertexKind::Ideal;
      else if (k == "hyper") g.kind = VertexKind::Hyperideal;
      else if (k == "desitter") g.kind = VertexKind::DeSitter;
      else fail(l, t[2], "vertex kind must be compact, ideal, hyper or desitter");
      g.x = {to_double(l, t[3]), to_double(l, t[4]), to_double(l, t[5]), to_double(l, t[6])};
      if (!doc.geom.emplace(v, g).second) fail(l, t[1], "duplicate geom");
    } else if (key == "cr") {
      need(4);
      const int e = edge_ref(t[1]);
      if (!doc.cr.emplace(e, cplx(to_double(l, t[2]), to_double(l, t[3]))).second) fail(l, t[1], "duplicate cr");
    } else if (key == "o") {
      need(3);
      const int e = to_int(l, t[1]);
      EdgeState s;
      if (t[2].text == "+") s = EdgeState::Forward;
      else if (t[2].text == "-") s = EdgeState::Backward;
      else fail(l, t[2], "orientation must be + or -");
      if (!doc.orient.emplace(e, s).second) fail(l, t[1], "duplicate orientation");
    }
  }
  return doc;
}

CellSurface surface_of(const Document& d) {
  try {
    return CellSurface::build(d.vertices, d.edges, d.faces);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(d.last_line + 1, 1, std::string("invalid surface: ") + e.what());
  }
}

std::string body(const CellSurface& s) {
  std::string out;
  for (int v = 0; v < s.num_vertices(); ++v) out += fmt::format("v {}\n", v);
  for (int e = 0; e < s.num_edges(); ++e) out += fmt::format("e {} {} {}\n", e, s.edge(e)[0], s.edge(e)[1]);
  for (int f = 0; f < s.num_faces(); ++f) {
    out += fmt::format("f {}", f);
    for (int d : s.face_darts(f)) out += fmt::format(" {}{}", (d & 1) ? '-' : '+', CellSurface::edge_of(d));
    out += '\n';
  }
  if (s.has_weights())
    for (int e = 0; e < s.num_edges(); ++e) out += fmt::format("theta {} {}\n", e, number(s.weights()[e]));
  return out;
}

}  // namespace

std::string number(double x) { return fmt::format("{:.17g}", x); }

std::string format_of(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[1].text != "v1")
    throw ParseError(lines.empty() ? 1 : lines[0].number, 1, "missing '<format> v1' header");
  return std::string(lines[0].tokens[0].text);
}

CellSurface parse_surf(std::string_view text) {
  const Document d = parse(text, "surf", "v e f theta");
  CellSurface s = surface_of(d);
  if (d.theta.empty()) return s;
  std::vector<double> w(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto it = d.theta.find(e);
    if (it == d.theta.end()) throw ParseError(d.last_line + 1, 1, fmt::format("missing theta for edge {}", e));
    w[e] = it->second;
  }
  return s.with_weights(std::move(w));
}

std::string write_surf(const CellSurface& s) { return "surf v1\n" + body(s); }

PolyData parse_poly(std::string_view text) {
  const Document d = parse(text, "poly", "v e f theta geom");
  PolyData p{surface_of(d), {}};
  for (int v = 0; v < d.vertices; ++v) {
    const auto it = d.geom.find(v);
    if (it == d.geom.end()) throw ParseError(d.last_line + 1, 1, fmt::format("missing geom for vertex {}", v));
    p.geom.push_back(it->second);
  }
  return p;
}

std::string write_poly(const CellSurface& base, const std::vector<VertexGeom>& geom) {
  std::string out = "poly v1\n" + body(base);
  for (std::size_t v = 0; v < geom.size(); ++v) {
    const auto& x = geom[v].x;
    out += fmt::format("geom {} {} {} {} {} {}\n", v, to_string(geom[v].kind), number(x.x1), number(x.x2),
                       number(x.x3), number(x.x4));
  }
  return out;
}

CrossRatioAssignment parse_cr(std::string_view text) {
  const Document d = parse(text, "cr", "v e f cr");
  const CellSurface s = surface_of(d);
  std::vector<cplx> cr(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto it = d.cr.find(e);
    if (it == d.cr.end()) throw ParseError(d.last_line + 1, 1, fmt::format("missing cr for edge {}", e));
    cr[e] = it->second;
  }
  try {
    return make_assignment(s, std::move(cr));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(d.last_line + 1, 1, e.what());
  }
}

std::string write_cr(const CrossRatioAssignment& a) {
  std::string out = "cr v1\n" + body(a.surface.without_weights());
  for (std::size_t e = 0; e < a.cr.size(); ++e)
    out += fmt::format("cr {} {} {}\n", e, number(a.cr[e].real()), number(a.cr[e].imag()));
  return out;
}

Decoration parse_decoration(std::string_view text, const CellSurface& s) {
  const Document d = parse(text, "decor", "o");
  Decoration dec = Decoration::trivial(s);
  for (const auto& [e, st] : d.orient) {
    if (e < 0 || e >= s.num_edges()) throw ParseError(d.last_line, 1, fmt::format("unknown edge {}", e));
    dec.state[e] = st;
  }
  return dec;
}

std::string write_decoration(const Decoration& d) {
  std::string out = "decor v1\n";
  for (std::size_t e = 0; e < d.state.size(); ++e)
    if (d.state[e] != EdgeState::Unoriented)
      out += fmt::format("o {} {}\n", e, d.state[e] == EdgeState::Forward ? '+' : '-');
  return out;
}

}  // namespace endlab::io
