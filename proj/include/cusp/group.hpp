#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp/rng.hpp"
#include "cusp/word.hpp"

namespace cusp {

enum class GroupKind { FreeAbelian, Free, FreeProduct };

struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// A peripheral subgroup, given by the ambient generators that generate it.
/// The subgroup inherits the ambient normal form: an element lies in the
/// peripheral iff its canonical word uses only these generators, and the
/// canonical word is geodesic in the peripheral's own word metric.
struct Peripheral {
  std::vector<int> gens;  // ascending ambient generator indices
  std::string name;
};

/// A finitely generated group from the catalog (free abelian, free, or a free
/// product of catalog groups), with a solvable shortlex normal form, exact
/// word lengths, Cayley adjacency and peripheral-coset bookkeeping.
///
/// Canonical forms:
///   free abelian  - letters sorted by (generator, sign), e.g. aabB -> ab.
///   free          - freely reduced word.
///   free product  - alternating syllables, each canonical in its factor.
/// Each canonical word is geodesic, so length() is the word metric.
class MarkedGroup {
 public:
  static MarkedGroup free_abelian(int rank);
  static MarkedGroup free_group(int rank);
  static MarkedGroup free_product(std::vector<MarkedGroup> factors);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::vector<MarkedGroup>& factors() const { return factors_; }
  int generator_count() const { return n_gens_; }
  const std::vector<std::string>& generator_names() const { return names_; }

  /// Which free-product factor a generator belongs to (0 for non-products).
  int factor_of_generator(int gen) const;

  Word normalize(const Word& w) const;
  Word multiply(const Word& canonical_a, const Word& canonical_b) const;
  Word inverse(const Word& canonical) const { return normalize(inverse_word(canonical)); }
  int length(const Word& canonical) const { return static_cast<int>(canonical.size()); }
  int distance(const Word& x, const Word& y) const;

  std::string format(const Word& w) const { return format_word(w, names_); }
  Word parse(const std::string& text) const { return normalize(parse_word(text, names_)); }

  /// Cayley neighbours of a canonical word: {x*s : s in S u S^-1}, deduplicated,
  /// x itself excluded (identity generators on rank-0 corner cases aside).
  std::vector<Word> neighbors(const Word& x) const;

  /// All elements at word distance <= radius from center, sorted shortlex.
  /// Throws SizeLimitError when the ball would exceed `cap` elements.
  std::vector<Word> ball(const Word& center, int radius, std::size_t cap = 2'000'000) const;

  // ---- peripherals ----------------------------------------------------
  int add_peripheral(std::vector<int> gens, std::string name = "");
  int peripheral_count() const { return static_cast<int>(peripherals_.size()); }
  const Peripheral& peripheral(int i) const { return peripherals_.at(static_cast<std::size_t>(i)); }

  bool in_peripheral(const Word& canonical, int i) const;

  /// Shortlex-minimal representative of the left coset x*P_i.
  Word coset_representative(const Word& canonical, int i) const;

  /// The peripheral part q with x = rep * q (canonical words throughout).
  Word coset_offset(const Word& canonical, int i) const;

  /// Elements p of P_i with |p| <= radius, as ambient canonical words,
  /// identity included, sorted shortlex. Cap guarded.
  std::vector<Word> peripheral_ball(int i, int radius, std::size_t cap = 2'000'000) const;

  /// Number of elements of the P_i-ball of the given radius (identity included).
  /// Exact closed form for free abelian peripherals; enumeration otherwise.
  std::uint64_t peripheral_ball_size(int i, int radius) const;

  /// Uniform random nontrivial element p of P_i with |p| <= radius.
  /// Closed-form sampling for free abelian peripherals of rank 1 or 2;
  /// enumeration fallback (cap guarded) otherwise.
  Word random_peripheral_element(int i, int radius, Rng& rng, std::size_t cap = 300'000) const;

  /// A geodesic word from the identity whose powers stay geodesic; used to
  /// translate geodesic lines through points far from the base point.
  Word axis_step() const;

 private:
  MarkedGroup() = default;
  void validate_peripheral(const std::vector<int>& gens) const;
  const MarkedGroup& peripheral_subgroup(int i) const;

  GroupKind kind_ = GroupKind::FreeAbelian;
  int rank_ = 0;    // free abelian / free
  int n_gens_ = 0;  // ambient generator count
  std::vector<MarkedGroup> factors_;
  std::vector<int> gen_factor_;  // ambient gen -> factor index (products)
  std::vector<int> gen_local_;   // ambient gen -> generator index inside factor
  std::vector<std::string> names_;
  std::vector<Peripheral> peripherals_;
  // lazily built subgroup views for peripherals (ambient-letter relabeling)
  mutable std::vector<std::shared_ptr<MarkedGroup>> peripheral_subs_;
};

}  // namespace cusp
