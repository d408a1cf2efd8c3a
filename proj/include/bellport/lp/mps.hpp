#ifndef BELLPORT_LP_MPS_HPP
#define BELLPORT_LP_MPS_HPP

#include <string>
#include <string_view>

#include "bellport/lp/linear_program.hpp"

namespace bellport::lp {

/// Fixed-format MPS text for `lp`.
///
/// Fixed MPS minimizes, so the objective row holds the negated maximization
/// coefficients; a comment header records this. Names longer than the
/// 8-character field (problem, rows, columns) are replaced by a deterministic
/// hashed truncation; unnamed rows and columns get R/C plus their index.
/// Coefficients are printed with 12 significant digits starting at column 25.
std::string export_mps(const LinearProgramd& lp, std::string_view name);

/// The 8-character field image of a name: unchanged when it fits, otherwise
/// its first two characters followed by 6 hex digits of its FNV-1a hash.
std::string mps_field_name(std::string_view name);

}  // namespace bellport::lp

#endif  // BELLPORT_LP_MPS_HPP
