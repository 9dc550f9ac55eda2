#pragma once

#include <iosfwd>
#include <string>

#include "credal/agenda.hpp"

namespace credal::io {

// Profile documents:
// {
//   "agenda": {"propositions": [{"name": "X", "truth": [1, 0]}, ...]},
//   "agents": [{"name": "a", "credences": [0.5, 0.1], "weight": 0.4}, ...]
// }
// Credences must already be fractions in [0,1]; percentage-style values are
// rejected. Weights off by more than 1e-9 from summing to one are rescaled,
// and `normalized_weights` reports that so callers can warn.

struct LoadResult {
  Profile profile;
  bool normalized_weights = false;
};

/// Parses a profile document. Errors carry the offending field's path.
LoadResult load_profile(const std::string& text);
LoadResult load_profile_file(const std::string& path);

/// Serializes a profile with fixed field order and numbers printed to 17
/// significant digits, so emitting and re-ingesting reproduces every double
/// bit-exactly and identical inputs produce identical bytes.
std::string emit_profile_json(const Profile& profile);

/// CSV form: header "agent,weight,<prop names...>", one row per agent.
std::string emit_profile_csv(const Profile& profile);

/// A double printed to 17 significant digits.
std::string format_double(double x);

}  // namespace credal::io
