#pragma once

#include <stdexcept>
#include <string>

namespace gridgon {

enum class errc {
  out_of_range,
  infeasible_geometry,
  no_proper_polygon,
  non_integer,
  invalid_input,
  parse_error,
  schema_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::out_of_range: return "OUT_OF_RANGE";
    case errc::infeasible_geometry: return "INFEASIBLE_GEOMETRY";
    case errc::no_proper_polygon: return "NO_PROPER_POLYGON";
    case errc::non_integer: return "NON_INTEGER";
    case errc::invalid_input: return "INVALID_INPUT";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::schema_error: return "SCHEMA_ERROR";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace gridgon
