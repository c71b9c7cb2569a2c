#ifndef PAPERSURF_SCHEME_IO_HPP_
#define PAPERSURF_SCHEME_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "papersurf/scheme.hpp"

namespace papersurf {

/// A parsed scheme file: the scheme plus the run settings stored with it.
struct SchemeFile {
  PairingScheme scheme;
  Metric metric = Metric::max;
  std::optional<std::uint64_t> seed;
  /// Non-fatal notes produced while loading (e.g. reoriented polygons).
  std::vector<std::string> warnings;
};

/// Parses the JSON scheme format ("format": 1). Throws ParseError for
/// malformed input and DomainError when the content fails validation.
SchemeFile parse_scheme(const std::string& text);
SchemeFile load_scheme(const std::filesystem::path& path);

/// Serializes a scheme; numbers round-trip exactly and geometric sequences
/// stay symbolic.
std::string serialize_scheme(const PairingScheme& scheme, Metric metric = Metric::max,
                             std::optional<std::uint64_t> seed = std::nullopt);

/// Names accepted by builtin_source / builtin_scheme.
std::vector<std::string> builtin_names();
/// JSON text of a builtin scheme; throws DomainError for an unknown name.
std::string builtin_source(const std::string& name);
PairingScheme builtin_scheme(const std::string& name);

/// Loads `spec` as a builtin name if it is one, else as a file path.
SchemeFile load_scheme_or_builtin(const std::string& spec);

}  // namespace papersurf

#endif  // PAPERSURF_SCHEME_IO_HPP_
