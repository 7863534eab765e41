#pragma once

// JSON encodings of operators, posets and reports. Objects use nlohmann's
// sorted keys and every array is in a canonical order, so equal inputs give
// byte-identical output.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qctx/intervals.hpp"
#include "qctx/ks.hpp"

namespace qctx {

using Json = nlohmann::json;

/// Exact reals are written as canonical strings ("1/2", "-sqrt2"), floats as
/// numbers. Reading accepts either form; numbers are converted exactly.
template <Backend B>
Json real_to_json(const typename B::Real& x);
template <Backend B>
typename B::Real real_from_json(const Json& j);

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
template <Backend B>
Json matrix_to_json(const Matrix<B>& m);
template <Backend B>
Matrix<B> matrix_from_json(const Json& j);

/// {"dim", "backend", "contexts": [{"id", "atoms": [...]}], "order": [[lo, hi]...],
/// "trivial"}. Only "dim" and the atoms are read back; the order is
/// recomputed.
template <Backend B>
Json poset_to_json(const ContextPoset<B>& poset);
template <Backend B>
ContextPoset<B> poset_from_json(const Json& j);

Json mask_to_json(AtomMask m);
Json witness_to_json(const Witness& w);
Json property_to_json(const PropertyResult& r);
Json properties_to_json(const std::vector<PropertyResult>& rs);
/// [{"index", "id", "atoms"}] for every context of the shape.
Json contexts_to_json(const PosetShape& shape);
Json valuation_to_json(const ValuationTable& table);
Json intervals_to_json(const IntervalAssignment& intervals);
Json family_to_json(const ProjectorFamily& family);
Json section_to_json(const std::optional<Section>& section);

Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
std::string dump_json(const Json& j);

}  // namespace qctx
