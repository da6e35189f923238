#include "conebranch/field.hpp"

#include "conebranch/error.hpp"

namespace conebranch {

std::string_view to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field parse_field(std::string_view text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw InvalidArgument("unknown field '" + std::string(text) + "' (expected real or complex)");
}

}  // namespace conebranch
