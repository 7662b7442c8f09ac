#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmld/poly.hpp"

namespace qmld {

struct GroebnerOptions {
  std::size_t budget = 50000;  // cap on S-polynomial reductions
};

/// Full multivariate division remainder of f against the basis.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& ord);

/// Buchberger with the normal selection strategy and both classical
/// criteria. Throws BudgetExceeded past the reduction cap.
std::vector<Poly> buchberger(std::vector<Poly> gens, const MonomialOrder& ord,
                             std::size_t budget);

/// Interreduce and normalize to the unique monic reduced basis, sorted by
/// ascending leading monomial.
std::vector<Poly> reduce_basis(std::vector<Poly> gb, const MonomialOrder& ord);

/// An ideal presented by generators under a fixed order, with a cached
/// reduced Groebner basis.
class IdealBasis {
 public:
  IdealBasis(std::size_t nvars, MonomialOrder ord, std::vector<Poly> gens);

  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return ord_; }
  const std::vector<Poly>& generators() const { return gens_; }

  const std::vector<Poly>& groebner(const GroebnerOptions& opts = {}) const;
  bool is_unit(const GroebnerOptions& opts = {}) const;
  bool is_zero_ideal() const { return gens_.empty(); }
  Poly normal_form_of(const Poly& f, const GroebnerOptions& opts = {}) const;
  bool contains(const Poly& f, const GroebnerOptions& opts = {}) const;

  /// Stable identifier of (generators, order); the cache key.
  std::string cache_key() const;

 private:
  std::size_t nvars_;
  MonomialOrder ord_;
  std::vector<Poly> gens_;
  mutable std::optional<std::vector<Poly>> gb_;
};

/// Krull dimension of the affine coordinate ring, via maximal variable sets
/// independent modulo the initial ideal; -1 for the unit ideal.
long krull_dimension(const IdealBasis& I, const GroebnerOptions& opts = {});

/// Exhaustive-oracle variant scanning every variable subset (test support;
/// intended for small rings).
long krull_dimension_exhaustive(const IdealBasis& I, const GroebnerOptions& opts = {});

/// I : var^infty by the extra-variable trick.
IdealBasis saturate_by_var(const IdealBasis& I, std::size_t var,
                           const GroebnerOptions& opts = {});

/// I : g^infty.
IdealBasis saturate_by_poly(const IdealBasis& I, const Poly& g,
                            const GroebnerOptions& opts = {});

/// Eliminates the listed variables and contracts to the ring of the kept
/// variables (original relative order), returning generators of the
/// elimination ideal sorted under `out_ord`.
std::vector<Poly> eliminate_and_contract(const std::vector<Poly>& gens, std::size_t nvars,
                                         std::vector<std::size_t> eliminated,
                                         const MonomialOrder& out_ord, std::size_t budget);

/// Process-wide Groebner cache; optional on-disk persistence (versioned
/// JSON, canonical key -> reduced basis).
class GroebnerCache {
 public:
  static GroebnerCache& instance();

  void set_directory(const std::optional<std::string>& dir);
  void clear_memory();

  std::optional<std::vector<Poly>> lookup(const std::string& key, std::size_t nvars,
                                          const MonomialOrder& ord);
  void store(const std::string& key, std::size_t nvars, const std::vector<Poly>& gb);

 private:
  GroebnerCache() = default;
  struct Impl;
  Impl& impl();
};

}  // namespace qmld
