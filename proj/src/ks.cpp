#include "qctx/ks.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

namespace qctx {

namespace {

using Vec = std::vector<ExactComplex>;

ExactComplex dot(const Vec& v, const Vec& w) {
  ExactComplex s;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i].conj() * w[i];
  return s;
}

bool parallel(const Vec& v, const Vec& w) {
  const ExactComplex ip = dot(v, w);
  return ip.norm2() == dot(v, v).real() * dot(w, w).real();
}

void find_cliques(const std::vector<std::vector<char>>& orth, std::size_t dim, std::vector<std::size_t>& current,
                  std::size_t next, std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == dim) {
    out.push_back(current);
    return;
  }
  for (std::size_t r = next; r < orth.size(); ++r) {
    if (!std::all_of(current.begin(), current.end(), [&](std::size_t c) { return orth[c][r] != 0; })) continue;
    current.push_back(r);
    find_cliques(orth, dim, current, r + 1, out);
    current.pop_back();
  }
}

ExactComplex parse_entry(const nlohmann::json& x) {
  if (x.is_number_integer()) return ExactComplex(QuadraticNumber(Rational(x.get<long>())));
  if (x.is_number()) return ExactComplex(QuadraticNumber(rational_from_double(x.get<double>())));
  if (x.is_string()) return ExactComplex(parse_quadratic(x.get<std::string>()));
  throw InputError("ray entries must be numbers or strings");
}

}  // namespace

RaySet make_rayset(std::size_t dim, std::string field, std::vector<std::vector<ExactComplex>> rays,
                   std::optional<std::vector<std::vector<std::size_t>>> bases) {
  if (dim == 0) throw InputError("ray set dimension must be positive");
  if (field != "int" && field != "quadratic_sqrt2") throw InputError("unknown field '" + field + "'");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const auto& r = rays[i];
    const std::string name = "ray " + std::to_string(i);
    if (r.size() != dim) throw InputError(name + " has " + std::to_string(r.size()) + " entries, expected " +
                                          std::to_string(dim));
    if (std::all_of(r.begin(), r.end(), [](const ExactComplex& x) { return x.is_zero(); })) {
      throw InputError(name + " is zero");
    }
    for (const auto& x : r) {
      if (!x.imag().is_zero()) throw InputError(name + " has a non-real entry");
      if (field == "int" && !x.real().is_rational()) throw InputError(name + " has an entry outside the field");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (parallel(rays[j], r)) throw InputError(name + " is a multiple of ray " + std::to_string(j));
    }
  }
  std::vector<std::vector<char>> orth(rays.size(), std::vector<char>(rays.size(), 0));
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = 0; j < rays.size(); ++j) orth[i][j] = i != j && dot(rays[i], rays[j]).is_zero();
  }
  RaySet out{dim, std::move(field), std::move(rays), {}};
  if (!bases) {
    std::vector<std::size_t> current;
    find_cliques(orth, dim, current, 0, out.bases);
    return out;
  }
  for (std::size_t b = 0; b < bases->size(); ++b) {
    const auto& basis = (*bases)[b];
    const std::string name = "basis " + std::to_string(b);
    if (basis.size() != dim) {
      throw InputError(name + " has " + std::to_string(basis.size()) + " rays, expected " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] >= out.rays.size()) throw InputError(name + " refers to unknown ray " + std::to_string(basis[i]));
      for (std::size_t j = 0; j < i; ++j) {
        if (basis[i] == basis[j]) throw InputError(name + " repeats ray " + std::to_string(basis[i]));
        if (!orth[basis[i]][basis[j]]) {
          throw InputError(name + " contains non-orthogonal rays " + std::to_string(basis[j]) + " and " +
                           std::to_string(basis[i]));
        }
      }
    }
  }
  out.bases = std::move(*bases);
  return out;
}

RaySet parse_rayset(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InputError("ray set must be a JSON object");
    const auto dim = doc.at("dim").get<std::size_t>();
    const auto field = doc.contains("field") ? doc.at("field").get<std::string>() : std::string("int");
    std::vector<std::vector<ExactComplex>> rays;
    for (const auto& r : doc.at("rays")) {
      if (!r.is_array()) throw InputError("each ray must be an array");
      Vec v;
      for (const auto& x : r) v.push_back(parse_entry(x));
      rays.push_back(std::move(v));
    }
    std::optional<std::vector<std::vector<std::size_t>>> bases;
    if (doc.contains("bases")) {
      bases.emplace();
      for (const auto& b : doc.at("bases")) {
        if (!b.is_array()) throw InputError("each basis must be an array of ray indices");
        bases->push_back(b.get<std::vector<std::size_t>>());
      }
    }
    return make_rayset(dim, field, std::move(rays), std::move(bases));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed ray set: ") + e.what());
  }
}

RaySet load_rayset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_rayset(doc);
}

ContextPoset<ExactBackend> poset_from_rayset(const RaySet& rays, bool close_under_meet) {
  std::vector<Context<ExactBackend>> maximal;
  for (const auto& basis : rays.bases) {
    std::vector<Projector<ExactBackend>> atoms;
    for (std::size_t r : basis) atoms.push_back(Projector<ExactBackend>::from_vector(rays.rays[r]));
    maximal.push_back(Context<ExactBackend>::from_atoms(std::move(atoms)));
  }
  return build_poset(rays.dim, std::move(maximal), close_under_meet);
}

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

struct Link {
  std::size_t lower;
  const std::vector<std::size_t>* map;
};

class Solver {
 public:
  explicit Solver(const PosetShape& shape) : shape_(shape), maximal_(shape.maximal()) {
    for (std::size_t m : maximal_) {
      std::vector<Link> links;
      for (std::size_t lo : shape.down_set(m)) {
        if (lo != m) links.push_back({lo, &shape.refinement(lo, m)});
      }
      links_.push_back(std::move(links));
    }
  }

  struct State {
    std::vector<std::size_t> value;   // per context
    std::vector<AtomMask> domain;     // per maximal context
    std::vector<char> assigned;       // per maximal context
  };

  std::optional<State> root() const {
    State s{std::vector<std::size_t>(shape_.size(), kUnset), {}, std::vector<char>(maximal_.size(), 0)};
    for (std::size_t m : maximal_) s.domain.push_back(full_mask(shape_.atoms(m)));
    if (!propagate(s)) return std::nullopt;
    return s;
  }

  /// Index into maximal_ of the unassigned variable with the smallest
  /// domain, or none when all are assigned.
  std::optional<std::size_t> select(const State& s) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < maximal_.size(); ++i) {
      if (s.assigned[i]) continue;
      if (!best || mask_size(s.domain[i]) < mask_size(s.domain[*best])) best = i;
    }
    return best;
  }

  std::optional<State> assign(const State& s, std::size_t var, std::size_t atom) const {
    State next = s;
    next.assigned[var] = 1;
    next.domain[var] = AtomMask{1} << atom;
    next.value[maximal_[var]] = atom;
    for (const auto& link : links_[var]) {
      const std::size_t v = (*link.map)[atom];
      auto& current = next.value[link.lower];
      if (current != kUnset && current != v) return std::nullopt;
      current = v;
    }
    if (!propagate(next)) return std::nullopt;
    return next;
  }

  Section section(const State& s) const { return s.value; }

  /// Depth-first search below s, calling visit on each complete state until
  /// it returns false. Returns false if the search was stopped.
  bool search(const State& s, std::uint64_t& nodes, const std::function<bool(const State&)>& visit) const {
    const auto var = select(s);
    if (!var) return visit(s);
    for (std::size_t atom : mask_indices(s.domain[*var])) {
      ++nodes;
      if (auto next = assign(s, *var, atom)) {
        if (!search(*next, nodes, visit)) return false;
      }
    }
    return true;
  }

 private:
  bool propagate(State& s) const {
    for (std::size_t i = 0; i < maximal_.size(); ++i) {
      if (s.assigned[i]) continue;
      AtomMask keep = 0;
      for (std::size_t a : mask_indices(s.domain[i])) {
        bool ok = true;
        for (const auto& link : links_[i]) {
          const std::size_t v = s.value[link.lower];
          if (v != kUnset && (*link.map)[a] != v) {
            ok = false;
            break;
          }
        }
        if (ok) keep |= AtomMask{1} << a;
      }
      if (keep == 0) return false;
      s.domain[i] = keep;
    }
    return true;
  }

  const PosetShape& shape_;
  std::vector<std::size_t> maximal_;
  std::vector<std::vector<Link>> links_;
};

}  // namespace

SearchResult find_global_section(const PosetShape& shape, const SearchOptions& options) {
  const Solver solver(shape);
  SearchResult result;
  const auto root = solver.root();
  if (!root) return result;
  const auto var = solver.select(*root);
  if (!var) {
    result.section = solver.section(*root);
    return result;
  }
  const auto atoms = mask_indices(root->domain[*var]);
  struct Branch {
    std::uint64_t nodes = 0;
    std::optional<Section> section;
  };
  std::vector<Branch> branches(atoms.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_found{atoms.size()};
  auto work = [&] {
    for (std::size_t b = next++; b < atoms.size(); b = next++) {
      if (b > first_found.load()) continue;
      auto& branch = branches[b];
      branch.nodes = 1;
      if (auto state = solver.assign(*root, *var, atoms[b])) {
        solver.search(*state, branch.nodes, [&](const Solver::State& s) {
          branch.section = solver.section(s);
          return false;
        });
      }
      if (branch.section) {
        std::size_t seen = first_found.load();
        while (b < seen && !first_found.compare_exchange_weak(seen, b)) {
        }
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(atoms.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& branch : branches) {
    result.nodes += branch.nodes;
    if (branch.section) {
      result.section = std::move(branch.section);
      break;
    }
  }
  return result;
}

SectionEnumeration enumerate_global_sections(const PosetShape& shape, std::size_t limit) {
  const Solver solver(shape);
  SectionEnumeration out;
  const auto root = solver.root();
  if (!root) return out;
  solver.search(*root, out.nodes, [&](const Solver::State& s) {
    if (out.sections.size() == limit) {
      out.truncated = true;
      return false;
    }
    out.sections.push_back(solver.section(s));
    return true;
  });
  return out;
}

template <Backend B>
PropertyResult validate_section(const ContextPoset<B>& poset, const Section& section) {
  PropertyResult result("section_matching");
  if (section.size() != poset.size()) {
    Witness w;
    w.detail = "section has " + std::to_string(section.size()) + " entries for " + std::to_string(poset.size()) +
               " contexts";
    result.record(std::move(w));
    return result;
  }
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (section[i] >= poset.context(i).size()) {
      Witness w;
      w.stage = i;
      w.detail = "chosen atom out of range";
      result.record(std::move(w));
      return result;
    }
  }
  for (std::size_t hi = 0; hi < poset.size(); ++hi) {
    for (std::size_t lo = 0; lo < poset.size(); ++lo) {
      if (!is_subalgebra(poset.context(lo), poset.context(hi))) continue;
      ++result.checked;
      if (!poset.context(hi).atom(section[hi]).leq(poset.context(lo).atom(section[lo]))) {
        Witness w;
        w.stage = hi;
        w.lower = lo;
        w.p = AtomMask{1} << section[hi];
        w.actual = AtomMask{1} << section[lo];
        result.record(std::move(w));
      }
    }
  }
  return result;
}

template PropertyResult validate_section<ExactBackend>(const ContextPoset<ExactBackend>&, const Section&);
template PropertyResult validate_section<FloatBackend>(const ContextPoset<FloatBackend>&, const Section&);

}  // namespace qctx
