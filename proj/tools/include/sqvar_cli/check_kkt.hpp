#pragma once

#include <string>

#include "sqvar_cli/report.hpp"

namespace sqvar::cli {

/// Evaluates optimality measures for the point described by a JSON file.
///
/// Bound-constrained QP, min 1/2 x^T Q x + b^T x over x >= 0:
///   {"problem": {"type": "qp", "q": [[...]], "b": [...]}, "x": [...], "v": [...], "tol": 1e-8}
/// Either x or v (or both) may be given.
///
/// Inequality-constrained NLP, min f(x) s.t. c(x) >= 0, given by its
/// derivatives at the point:
///   {"problem": {"type": "nlp", "grad_f": [...], "c": [...], "jac": [[...]], "hess_l": [[...]]},
///    "x": [...], "s": [...], "v": [...], "a": [...], "zeta": 0.1}
/// v enables the squared-slack measures; zeta enables the direct measures
/// and, together with v, the transferred ones.
///
/// Returns a two-column table (measure, value).
Table check_kkt_json(const std::string& json_text);
Table check_kkt_file(const std::string& path);

}  // namespace sqvar::cli
