#pragma once

#include <iosfwd>
#include <string>

#include "fdcop/model.hpp"

namespace fdcop {

struct ParseError : FdcopError {
  ParseError(const std::string& msg, int line_number = 0);
  int line = 0;
};

// Text format, one directive per line, '#' starts a comment:
//
//   fdcop 1
//   agents 4
//   domain 0 -20 20
//   edge 0 1 1 -2 2      (x_var y_var a b c)
//
// Every agent needs exactly one domain line. Unknown directives are errors.
Problem parse_problem(std::istream& in);
Problem parse_problem_file(const std::string& path);

// Inverse of parse_problem. Doubles are written with shortest round-trip
// precision, so parse(serialize(p)) reproduces p bit for bit.
void serialize_problem(const Problem& p, std::ostream& out);
std::string serialize_problem(const Problem& p);
void write_problem_file(const Problem& p, const std::string& path);

}  // namespace fdcop
