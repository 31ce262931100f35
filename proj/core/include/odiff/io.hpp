#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "odiff/solver.hpp"
#include "odiff/tableau.hpp"

namespace odiff {

/// {"k":2,"m":1,"h":0.001,"c0":[1.0],"c":[[c1_0,c1_-1],[c2_0,c2_-1]],"label":"E","omega_select":376.99}
/// Doubles are written in shortest round-trip form, so parse(dump(t)) == t.
[[nodiscard]] std::string tableau_to_json(const ObreshkovTableau& t);

/// Throws ParseError on malformed JSON or on a shape the tableau rejects.
[[nodiscard]] ObreshkovTableau tableau_from_json(std::string_view text);

/// {"k":2,"m":1,"h":0.001,
///  "fixed":[{"order":0,"lag":1,"value":1.0},{"order":2,"lag":1,"value":0.0}],
///  "origin_multiplicity":2,"frequencies":[376.99]}
[[nodiscard]] std::string constraints_to_json(const ConstraintSet& c);
[[nodiscard]] ConstraintSet constraints_from_json(std::string_view text);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace odiff
