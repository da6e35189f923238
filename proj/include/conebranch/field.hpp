#pragma once

#include <string>
#include <string_view>

namespace conebranch {

/// Base field of the matrices and vectors: real symmetric / GL(n, R), or
/// complex Hermitian / GL(n, C).
enum class Field { real, complex };

std::string_view to_string(Field field);

/// Parses "real" or "complex"; throws InvalidArgument otherwise.
Field parse_field(std::string_view text);

/// Real dimension of the field (1 or 2).
inline int real_dim(Field field) { return field == Field::real ? 1 : 2; }

}  // namespace conebranch
