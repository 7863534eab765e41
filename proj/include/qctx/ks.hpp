#pragma once

// Ray sets, the context posets they generate, and the search for global
// sections of the spectral presheaf.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qctx/poset.hpp"
#include "qctx/report.hpp"

namespace qctx {

/// Rays over Q(sqrt 2) grouped into orthogonal bases. Rays are kept
/// unnormalized.
struct RaySet {
  std::size_t dim = 0;
  std::string field = "int";
  std::vector<std::vector<ExactComplex>> rays;
  std::vector<std::vector<std::size_t>> bases;
};

/// Validates the rays (nonzero, correct length, entries in the field, no
/// two parallel) and the bases (dim distinct pairwise orthogonal rays). When
/// bases is empty every orthogonal dim-tuple is taken, in lexicographic
/// order. Throws InputError naming the offending ray or basis.
RaySet make_rayset(std::size_t dim, std::string field, std::vector<std::vector<ExactComplex>> rays,
                   std::optional<std::vector<std::vector<std::size_t>>> bases);

/// {"dim", "field": "int" | "quadratic_sqrt2", "rays", "bases"?}. Entries
/// are integers or strings such as "sqrt2" and "-1/2*sqrt2".
RaySet parse_rayset(const nlohmann::json& doc);
RaySet load_rayset(const std::filesystem::path& path);

/// One maximal context per basis, optionally closed under meets.
ContextPoset<ExactBackend> poset_from_rayset(const RaySet& rays, bool close_under_meet);

/// The chosen atom of every context, in poset order.
using Section = std::vector<std::size_t>;

struct SearchOptions {
  unsigned threads = 1;
};

struct SearchResult {
  std::optional<Section> section;
  /// Atom choices tried. Independent of the thread count.
  std::uint64_t nodes = 0;
};

/// Backtracking over the maximal contexts, most constrained first, with
/// forward checking through the shared lower contexts. Deterministic: ties
/// go to the lowest poset index and atoms are tried in increasing order.
SearchResult find_global_section(const PosetShape& shape, const SearchOptions& options = {});

struct SectionEnumeration {
  std::vector<Section> sections;
  bool truncated = false;
  std::uint64_t nodes = 0;
};

/// All sections in search order, stopping after limit of them; truncated
/// is set when more exist.
SectionEnumeration enumerate_global_sections(const PosetShape& shape, std::size_t limit);

/// Checks the matching law on every inclusion using the projector matrices
/// alone (property "section_matching").
template <Backend B>
PropertyResult validate_section(const ContextPoset<B>& poset, const Section& section);

}  // namespace qctx
