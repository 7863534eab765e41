#include "qctx/serialize.hpp"

#include <fstream>

namespace qctx {

template <Backend B>
Json real_to_json(const typename B::Real& x) {
  if constexpr (B::is_exact) {
    return x.to_string();
  } else {
    return x;
  }
}

template <Backend B>
typename B::Real real_from_json(const Json& j) {
  if (j.is_string()) return B::parse_real(j.get<std::string>());
  if (j.is_number_integer()) return typename B::Real(j.get<long>());
  if (j.is_number()) return B::real_from_double(j.get<double>());
  throw InputError("expected a number or a numeric string");
}

template <Backend B>
Json matrix_to_json(const Matrix<B>& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array();
    Json irow = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rrow.push_back(real_to_json<B>(B::real(m(i, j))));
      irow.push_back(real_to_json<B>(B::imag(m(i, j))));
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

template <Backend B>
Matrix<B> matrix_from_json(const Json& j) {
  try {
    const auto d = j.at("dim").get<std::size_t>();
    if (d == 0) throw InputError("matrix dimension must be positive");
    Matrix<B> m(d, d);
    const auto& re = j.at("re");
    if (re.size() != d) throw InputError("matrix 're' must have dim rows");
    const bool has_im = j.contains("im");
    if (has_im && j.at("im").size() != d) throw InputError("matrix 'im' must have dim rows");
    for (std::size_t r = 0; r < d; ++r) {
      if (re[r].size() != d || (has_im && j.at("im")[r].size() != d)) {
        throw InputError("matrix row " + std::to_string(r) + " must have dim entries");
      }
      for (std::size_t c = 0; c < d; ++c) {
        const auto x = real_from_json<B>(re[r][c]);
        const auto y = has_im ? real_from_json<B>(j.at("im")[r][c]) : typename B::Real{};
        m(r, c) = typename B::Scalar(x, y);
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed matrix: ") + e.what());
  }
}

template <Backend B>
Json poset_to_json(const ContextPoset<B>& poset) {
  const auto& shape = poset.shape();
  Json contexts = Json::array();
  for (const auto& v : poset.contexts()) {
    Json atoms = Json::array();
    for (const auto& a : v.atoms()) atoms.push_back(matrix_to_json(a.matrix()));
    contexts.push_back({{"id", v.id()}, {"atoms", std::move(atoms)}});
  }
  Json order = Json::array();
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo = 0; lo < shape.size(); ++lo) {
      if (lo != hi && shape.leq(lo, hi)) order.push_back({lo, hi});
    }
  }
  std::sort(order.begin(), order.end());
  return {{"dim", poset.dim()},
          {"backend", std::string(B::name)},
          {"contexts", std::move(contexts)},
          {"order", std::move(order)},
          {"trivial", shape.trivial()}};
}

template <Backend B>
ContextPoset<B> poset_from_json(const Json& j) {
  try {
    const auto d = j.at("dim").get<std::size_t>();
    std::vector<Context<B>> contexts;
    const auto& list = j.at("contexts");
    for (std::size_t c = 0; c < list.size(); ++c) {
      std::vector<Projector<B>> atoms;
      try {
        for (const auto& a : list[c].at("atoms")) {
          auto m = matrix_from_json<B>(a);
          require_same_dim(m.rows(), d, "poset atom");
          atoms.push_back(Projector<B>::from_matrix(std::move(m)));
        }
        contexts.push_back(Context<B>::from_atoms(std::move(atoms)));
      } catch (const Error& e) {
        throw InputError("context " + std::to_string(c) + ": " + e.what());
      }
    }
    return build_poset<B>(d, std::move(contexts), false);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed poset: ") + e.what());
  }
}

Json mask_to_json(AtomMask m) {
  Json out = Json::array();
  for (std::size_t i : mask_indices(m)) out.push_back(i);
  return out;
}

Json witness_to_json(const Witness& w) {
  Json out = Json::object();
  auto put_index = [&](const char* key, const std::optional<std::size_t>& v) {
    if (v) out[key] = *v;
  };
  auto put_mask = [&](const char* key, const std::optional<AtomMask>& v) {
    if (v) out[key] = mask_to_json(*v);
  };
  put_index("stage", w.stage);
  put_index("lower", w.lower);
  put_index("bottom", w.bottom);
  put_mask("p", w.p);
  put_mask("q", w.q);
  put_mask("expected", w.expected);
  put_mask("actual", w.actual);
  if (!w.expected_set.empty()) out["expected_set"] = w.expected_set;
  if (!w.actual_set.empty()) out["actual_set"] = w.actual_set;
  if (!w.detail.empty()) out["detail"] = w.detail;
  return out;
}

Json property_to_json(const PropertyResult& r) {
  return {{"name", r.name},
          {"enabled", r.enabled},
          {"holds", r.holds()},
          {"checked", r.checked},
          {"violations", r.violations},
          {"witness", r.first ? witness_to_json(*r.first) : Json(nullptr)}};
}

Json properties_to_json(const std::vector<PropertyResult>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(property_to_json(r));
  return out;
}

Json contexts_to_json(const PosetShape& shape) {
  Json out = Json::array();
  for (std::size_t v = 0; v < shape.size(); ++v) {
    out.push_back({{"index", v}, {"id", shape.id(v)}, {"atoms", shape.atoms(v)}, {"trivial", v == shape.trivial()}});
  }
  return out;
}

Json valuation_to_json(const ValuationTable& table) {
  Json stages = Json::array();
  for (std::size_t v = 0; v < table.values.size(); ++v) {
    Json values = Json::array();
    for (std::size_t p = 0; p < table.values[v].size(); ++p) {
      values.push_back({{"p", mask_to_json(static_cast<AtomMask>(p))},
                        {"sieve", table.values[v][p].members},
                        {"principal", is_principal(table.shape, table.values[v][p])}});
    }
    stages.push_back({{"stage", v}, {"values", std::move(values)}});
  }
  return stages;
}

Json intervals_to_json(const IntervalAssignment& intervals) {
  Json out = Json::array();
  for (AtomMask m : intervals) out.push_back(mask_to_json(m));
  return out;
}

Json family_to_json(const ProjectorFamily& family) {
  Json out = Json::array();
  for (const auto& stage : family) {
    Json row = Json::array();
    for (AtomMask m : stage) row.push_back(mask_to_json(m));
    out.push_back(std::move(row));
  }
  return out;
}

Json section_to_json(const std::optional<Section>& section) {
  if (!section) return nullptr;
  return *section;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

#define QCTX_INSTANTIATE(B)                                                                                  \
  template Json real_to_json<B>(const B::Real&);                                                             \
  template B::Real real_from_json<B>(const Json&);                                                           \
  template Json matrix_to_json<B>(const Matrix<B>&);                                                         \
  template Matrix<B> matrix_from_json<B>(const Json&);                                                       \
  template Json poset_to_json<B>(const ContextPoset<B>&);                                                    \
  template ContextPoset<B> poset_from_json<B>(const Json&);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
