#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epsexp/engine.hpp"

namespace epsexp {

/// Parse one parameter string of the grammar
///   param := term (('+'|'-') term)*
///   term  := coeff | coeff '*'? 'eps' | 'eps'
///   coeff := int | int '/' int | decimal | 'pi' ('/' int)?
/// (complex backend additionally allows an 'i' suffix on a coeff) into
/// constant + slope * eps.  Whitespace is ignored.  Throws parse_error
/// naming the offending string.
LinearParam parse_param(const std::string& text, Backend backend, mpfr_prec_t precision = 0);

/// Full command-line entry point; returns the process exit code
/// (0 success, 1 input error, 2 numerical failure).  `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace epsexp
