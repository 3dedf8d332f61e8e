#include "spectral_layers/lgf.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace spectral_layers {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& message) {
  throw std::runtime_error("lgf: line " + std::to_string(line_no) + ": " + message);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) parse_fail(line_no, "malformed integer '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    parse_fail(line_no, "malformed integer '" + tok + "'");
  } catch (const std::out_of_range&) {
    parse_fail(line_no, "integer out of range '" + tok + "'");
  }
}

}  // namespace

LayeredGraph parse_lgf(std::string_view text) {
  std::optional<LayeredGraphBuilder> builder;
  std::vector<int> sizes;

  std::istringstream stream{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& keyword = tok[0];

    if (keyword == "spheres") {
      if (builder) parse_fail(line_no, "duplicate spheres line");
      if (tok.size() < 2) parse_fail(line_no, "spheres line needs at least s_0");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        std::int64_t s = parse_int(tok[i], line_no);
        if (s < 1) parse_fail(line_no, "sphere size must be >= 1");
        sizes.push_back(static_cast<int>(s));
      }
      if (sizes[0] != 1) parse_fail(line_no, "s_0 must be 1");
      builder.emplace(sizes);
      continue;
    }
    if (!builder) parse_fail(line_no, "spheres line must come first");

    const int depth = static_cast<int>(sizes.size()) - 1;
    if (keyword == "cross") {
      if (tok.size() != 4) parse_fail(line_no, "cross needs 3 fields: n i j");
      std::int64_t n = parse_int(tok[1], line_no);
      std::int64_t i = parse_int(tok[2], line_no);
      std::int64_t j = parse_int(tok[3], line_no);
      if (n < 0 || n >= depth) parse_fail(line_no, "cross sphere index out of range");
      if (j < 0 || j >= sizes[n] || i < 0 || i >= sizes[n + 1])
        parse_fail(line_no, "cross edge index out of range");
      builder->cross_edge(static_cast<int>(n), static_cast<int>(i),
                          static_cast<int>(j));
    } else if (keyword == "intra") {
      if (tok.size() != 4) parse_fail(line_no, "intra needs 3 fields: n i j");
      std::int64_t n = parse_int(tok[1], line_no);
      std::int64_t i = parse_int(tok[2], line_no);
      std::int64_t j = parse_int(tok[3], line_no);
      if (n < 0 || n > depth) parse_fail(line_no, "intra sphere index out of range");
      if (i < 0 || i >= sizes[n] || j < 0 || j >= sizes[n])
        parse_fail(line_no, "intra edge index out of range");
      if (i == j) parse_fail(line_no, "self loop");
      builder->intra_edge(static_cast<int>(n), static_cast<int>(i),
                          static_cast<int>(j));
    } else if (keyword == "outdeg") {
      if (tok.size() != 3) parse_fail(line_no, "outdeg needs 2 fields: i d");
      std::int64_t i = parse_int(tok[1], line_no);
      std::int64_t d = parse_int(tok[2], line_no);
      if (i < 0 || i >= sizes.back()) parse_fail(line_no, "outdeg index out of range");
      if (d < 0) parse_fail(line_no, "outdeg must be >= 0");
      builder->outward(static_cast<int>(i), d);
    } else {
      parse_fail(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!builder) throw std::runtime_error("lgf: missing spheres line");
  try {
    return builder->build();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("lgf: ") + e.what());
  }
}

std::string serialize_lgf(const LayeredGraph& g) {
  std::ostringstream out;
  out << "spheres";
  for (int n = 0; n <= g.depth(); ++n) out << ' ' << g.sphere_size(n);
  out << '\n';

  struct Line {
    std::string keyword;
    std::int64_t n, i, j;
  };
  std::vector<Line> lines;
  for (int n = 0; n < g.depth(); ++n) {
    const IntMatrix& e = g.cross_block(n);
    for (Eigen::Index i = 0; i < e.rows(); ++i)
      for (Eigen::Index j = 0; j < e.cols(); ++j)
        if (e(i, j)) lines.push_back({"cross", n, i, j});
  }
  for (int n = 0; n <= g.depth(); ++n) {
    const IntMatrix& v = g.intra_block(n);
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = i + 1; j < v.cols(); ++j)
        if (v(i, j)) lines.push_back({"intra", n, i, j});
  }
  for (std::size_t i = 0; i < g.outward_degrees().size(); ++i)
    lines.push_back({"outdeg", static_cast<std::int64_t>(i),
                     g.outward_degrees()[i], 0});

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.keyword, a.n, a.i, a.j) < std::tie(b.keyword, b.n, b.i, b.j);
  });
  for (const Line& l : lines) {
    out << l.keyword << ' ' << l.n << ' ' << l.i;
    if (l.keyword != "outdeg") out << ' ' << l.j;
    out << '\n';
  }
  return out.str();
}

std::string normalize_lgf(std::string_view text) { return serialize_lgf(parse_lgf(text)); }

}  // namespace spectral_layers
