#include "fdcop/problem_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace fdcop {
namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, int line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected integer, got '" + tok + "'", line_no);
  }
  return v;
}

double parse_double(const std::string& tok, int line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected number, got '" + tok + "'", line_no);
  }
  return v;
}

void format_double(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
  (void)ec;
}

}  // namespace

ParseError::ParseError(const std::string& msg, int line_number)
    : FdcopError(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg : msg),
      line(line_number) {}

Problem parse_problem(std::istream& in) {
  bool saw_version = false;
  int n = -1;
  std::vector<std::optional<IntervalDomain>> domains;
  std::vector<Edge> edges;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = tokenize(strip_comment(raw));
    if (toks.empty()) continue;
    const std::string& d = toks[0];

    if (!saw_version) {
      if (d != "fdcop") throw ParseError("file must start with 'fdcop 1'", line_no);
      if (toks.size() != 2 || toks[1] != "1") {
        throw ParseError("unsupported format version", line_no);
      }
      saw_version = true;
      continue;
    }

    if (d == "agents") {
      if (n >= 0) throw ParseError("repeated agents directive", line_no);
      if (toks.size() != 2) throw ParseError("usage: agents <count>", line_no);
      n = parse_int(toks[1], line_no);
      if (n <= 0) throw ParseError("agent count must be positive", line_no);
      domains.resize(n);
      continue;
    }
    if (n < 0) throw ParseError("'" + d + "' before agents directive", line_no);

    if (d == "domain") {
      if (toks.size() != 4) throw ParseError("usage: domain <var> <lb> <ub>", line_no);
      const int v = parse_int(toks[1], line_no);
      if (v < 0 || v >= n) throw ParseError("domain variable out of range", line_no);
      if (domains[v]) throw ParseError("repeated domain for x" + std::to_string(v), line_no);
      const double lb = parse_double(toks[2], line_no);
      const double ub = parse_double(toks[3], line_no);
      if (!(lb < ub)) throw ParseError("domain requires lb < ub", line_no);
      domains[v] = IntervalDomain(lb, ub);
      continue;
    }

    if (d == "edge") {
      if (toks.size() != 6) throw ParseError("usage: edge <x> <y> <a> <b> <c>", line_no);
      Edge e;
      e.x_var = parse_int(toks[1], line_no);
      e.y_var = parse_int(toks[2], line_no);
      if (e.x_var < 0 || e.x_var >= n || e.y_var < 0 || e.y_var >= n) {
        throw ParseError("edge endpoint out of range", line_no);
      }
      if (e.x_var == e.y_var) throw ParseError("self edge", line_no);
      e.cost.a = parse_double(toks[3], line_no);
      e.cost.b = parse_double(toks[4], line_no);
      e.cost.c = parse_double(toks[5], line_no);
      edges.push_back(e);
      continue;
    }

    throw ParseError("unknown directive '" + d + "'", line_no);
  }

  if (!saw_version) throw ParseError("empty input, expected 'fdcop 1'");
  if (n < 0) throw ParseError("missing agents directive");
  std::vector<IntervalDomain> doms;
  doms.reserve(n);
  for (int v = 0; v < n; ++v) {
    if (!domains[v]) throw ParseError("missing domain for x" + std::to_string(v));
    doms.push_back(*domains[v]);
  }
  return Problem(std::move(doms), std::move(edges));
}

Problem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FdcopError("cannot open " + path);
  return parse_problem(in);
}

void serialize_problem(const Problem& p, std::ostream& out) {
  out << "fdcop 1\n";
  out << "agents " << p.num_agents() << "\n";
  for (int v = 0; v < p.num_agents(); ++v) {
    const auto& d = p.domain(v);
    out << "domain " << v << " ";
    format_double(out, d.lb);
    out << " ";
    format_double(out, d.ub);
    out << "\n";
  }
  for (const Edge& e : p.edges()) {
    out << "edge " << e.x_var << " " << e.y_var << " ";
    format_double(out, e.cost.a);
    out << " ";
    format_double(out, e.cost.b);
    out << " ";
    format_double(out, e.cost.c);
    out << "\n";
  }
}

std::string serialize_problem(const Problem& p) {
  std::ostringstream os;
  serialize_problem(p, os);
  return os.str();
}

void write_problem_file(const Problem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FdcopError("cannot open " + path + " for writing");
  serialize_problem(p, out);
}

}  // namespace fdcop
