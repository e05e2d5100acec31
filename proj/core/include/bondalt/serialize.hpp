#pragma once

#include <filesystem>
#include <string>

#include "bondalt/imps.hpp"

namespace bondalt {

/// JSON container for persisting reference states across runs. Field order
/// and number formatting are fixed, so a given state always serializes to
/// the same bytes:
///   format   "bondalt-imps", version 1
///   period, chi_max
///   bond_dims   [D_0 .. D_{p-1}]            (D_k = bond right of site k)
///   lambdas     [[...], ...]                 per bond, descending
///   gammas      [site][phys][re, im, ...]    row-major over (left, right)
std::string state_to_json(const Imps& state);

Imps state_from_json(const std::string& text);

/// Throws IoError on filesystem problems; parse errors come back as
/// InvalidInputError.
void save_state(const Imps& state, const std::filesystem::path& path);
Imps load_state(const std::filesystem::path& path);

}  // namespace bondalt
