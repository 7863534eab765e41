#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qctx/qctx.hpp"

namespace fx {

using E = qctx::ExactBackend;
using F = qctx::FloatBackend;
using qctx::AtomMask;

template <class B>
qctx::Projector<B> coord(std::size_t dim, std::initializer_list<std::size_t> idx) {
  std::vector<typename B::Real> d(dim);
  for (auto i : idx) d[i] = typename B::Real(1);
  return qctx::Projector<B>::from_matrix(qctx::Matrix<B>::diagonal(d));
}

/// Context whose atoms are the coordinate projectors onto the given blocks.
template <class B>
qctx::Context<B> blocks(std::size_t dim, std::initializer_list<std::initializer_list<std::size_t>> parts) {
  std::vector<qctx::Projector<B>> atoms;
  for (auto p : parts) atoms.push_back(coord<B>(dim, p));
  return qctx::Context<B>::from_atoms(std::move(atoms));
}

template <class B>
qctx::HermitianOperator<B> diag(std::initializer_list<long> values) {
  std::vector<typename B::Real> v;
  for (long x : values) v.push_back(typename B::Real(x));
  return qctx::HermitianOperator<B>::diagonal(v);
}

template <class B>
std::vector<typename B::Real> reals(std::initializer_list<const char*> text) {
  std::vector<typename B::Real> out;
  for (auto t : text) out.push_back(B::parse_real(t));
  return out;
}

template <class B>
qctx::DensityMatrix<B> diag_state(std::initializer_list<const char*> text) {
  return qctx::DensityMatrix<B>::diagonal(reals<B>(text));
}

/// The diagonal context in dim 3, its three two-atom coarsenings and the
/// trivial context.
template <class B>
qctx::ContextPoset<B> diag3_poset() {
  return qctx::build_poset<B>(3,
                              {blocks<B>(3, {{0}, {1}, {2}}), blocks<B>(3, {{0}, {1, 2}}),
                               blocks<B>(3, {{1}, {0, 2}}), blocks<B>(3, {{2}, {0, 1}})},
                              false);
}

template <class B>
std::size_t index_of(const qctx::ContextPoset<B>& p, const qctx::Context<B>& v) {
  return p.require(v);
}

/// Mask of the atoms of v whose coordinate blocks are listed.
template <class B>
AtomMask mask_of(const qctx::Context<B>& v, std::initializer_list<std::initializer_list<std::size_t>> parts) {
  qctx::Projector<B> p = qctx::Projector<B>::zero(v.dim());
  for (auto part : parts) p = p.plus(coord<B>(v.dim(), part));
  auto m = v.mask_of(p);
  if (!m) throw std::logic_error("projector not in context");
  return *m;
}

inline std::string data_path(const std::string& name) { return std::string(QCTX_DATA_DIR) + "/" + name; }

}  // namespace fx
