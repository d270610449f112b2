#include "cusp/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <unordered_set>

namespace cusp {

namespace {

std::vector<std::string> default_names(int count, int offset = 0) {
  if (offset + count > 26) throw std::invalid_argument("generator alphabet exhausted (max 26)");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) names.push_back(std::string(1, static_cast<char>('a' + offset + i)));
  return names;
}

// Free-abelian canonical form: exponent vector rendered with generators in
// ascending order, positive letters before inverses of the next generator.
Word abelian_canonical(const std::vector<long long>& exps) {
  Word out;
  for (std::size_t g = 0; g < exps.size(); ++g) {
    const long long e = exps[g];
    const bool inv = e < 0;
    for (long long j = 0; j < std::llabs(e); ++j) out.push_back(letter(static_cast<int>(g), inv));
  }
  return out;
}

}  // namespace

MarkedGroup MarkedGroup::free_abelian(int rank) {
  if (rank < 1) throw std::invalid_argument("free abelian rank must be >= 1");
  MarkedGroup g;
  g.kind_ = GroupKind::FreeAbelian;
  g.rank_ = rank;
  g.n_gens_ = rank;
  g.names_ = default_names(rank);
  return g;
}

MarkedGroup MarkedGroup::free_group(int rank) {
  if (rank < 1) throw std::invalid_argument("free rank must be >= 1");
  MarkedGroup g;
  g.kind_ = GroupKind::Free;
  g.rank_ = rank;
  g.n_gens_ = rank;
  g.names_ = default_names(rank);
  return g;
}

MarkedGroup MarkedGroup::free_product(std::vector<MarkedGroup> factors) {
  if (factors.size() < 2) throw std::invalid_argument("free product needs at least two factors");
  MarkedGroup g;
  g.kind_ = GroupKind::FreeProduct;
  g.factors_ = std::move(factors);
  int offset = 0;
  for (std::size_t f = 0; f < g.factors_.size(); ++f) {
    const MarkedGroup& fac = g.factors_[f];
    if (!fac.peripherals_.empty()) throw std::invalid_argument("declare peripherals on the product, not on factors");
    for (int j = 0; j < fac.generator_count(); ++j) {
      g.gen_factor_.push_back(static_cast<int>(f));
      g.gen_local_.push_back(j);
    }
    offset += fac.generator_count();
  }
  g.n_gens_ = offset;
  g.names_ = default_names(offset);
  return g;
}

int MarkedGroup::factor_of_generator(int gen) const {
  if (gen < 0 || gen >= n_gens_) throw std::out_of_range("generator index");
  if (kind_ != GroupKind::FreeProduct) return 0;
  return gen_factor_[static_cast<std::size_t>(gen)];
}

Word MarkedGroup::normalize(const Word& w) const {
  for (Letter l : w) {
    if (gen_of(l) < 0 || gen_of(l) >= n_gens_) throw MalformedWordError("unknown generator in word");
  }
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      std::vector<long long> exps(static_cast<std::size_t>(rank_), 0);
      for (Letter l : w) exps[static_cast<std::size_t>(gen_of(l))] += is_inverse(l) ? -1 : 1;
      return abelian_canonical(exps);
    }
    case GroupKind::Free: {
      Word out;
      out.reserve(w.size());
      for (Letter l : w) {
        if (!out.empty() && out.back() == inverse_of(l)) {
          out.pop_back();
        } else {
          out.push_back(l);
        }
      }
      return out;
    }
    case GroupKind::FreeProduct: {
      // ambient generator offset of each factor
      std::vector<int> offset(factors_.size(), 0);
      for (std::size_t f = 1; f < factors_.size(); ++f) {
        offset[f] = offset[f - 1] + factors_[f - 1].generator_count();
      }
      // stack of syllables (factor, canonical word in factor-local letters)
      std::vector<std::pair<int, Word>> stack;
      std::size_t pos = 0;
      while (pos < w.size()) {
        const int fac = gen_factor_[static_cast<std::size_t>(gen_of(w[pos]))];
        Word run;
        while (pos < w.size() && gen_factor_[static_cast<std::size_t>(gen_of(w[pos]))] == fac) {
          const Letter l = w[pos];
          run.push_back(letter(gen_local_[static_cast<std::size_t>(gen_of(l))], is_inverse(l)));
          ++pos;
        }
        if (!stack.empty() && stack.back().first == fac) {
          run = factors_[static_cast<std::size_t>(fac)].normalize(stack.back().second + run);
          stack.pop_back();
        } else {
          run = factors_[static_cast<std::size_t>(fac)].normalize(run);
        }
        if (!run.empty()) stack.emplace_back(fac, std::move(run));
        // an emptied syllable may expose two same-factor neighbours; merge them
        while (stack.size() >= 2 && stack[stack.size() - 1].first == stack[stack.size() - 2].first) {
          const int f2 = stack.back().first;
          Word merged = factors_[static_cast<std::size_t>(f2)].normalize(stack[stack.size() - 2].second +
                                                                         stack[stack.size() - 1].second);
          stack.pop_back();
          stack.pop_back();
          if (!merged.empty()) stack.emplace_back(f2, std::move(merged));
        }
      }
      Word out;
      for (const auto& [fac, local] : stack) {
        for (Letter l : local) out.push_back(letter(offset[static_cast<std::size_t>(fac)] + gen_of(l), is_inverse(l)));
      }
      return out;
    }
  }
  return {};
}

Word MarkedGroup::multiply(const Word& a, const Word& b) const { return normalize(a + b); }

int MarkedGroup::distance(const Word& x, const Word& y) const {
  return static_cast<int>(normalize(inverse_word(x) + y).size());
}

std::vector<Word> MarkedGroup::neighbors(const Word& x) const {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(2 * n_gens_));
  for (int g = 0; g < n_gens_; ++g) {
    for (int inv = 0; inv < 2; ++inv) {
      Word step(1, letter(g, inv != 0));
      Word y = multiply(x, step);
      if (y != x) out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Word> MarkedGroup::ball(const Word& center, int radius, std::size_t cap) const {
  std::unordered_set<Word> seen;
  std::vector<Word> frontier{normalize(center)};
  seen.insert(frontier.front());
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const Word& x : frontier) {
      for (Word& y : neighbors(x)) {
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw SizeLimitError("ball enumeration exceeds cap");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

void MarkedGroup::validate_peripheral(const std::vector<int>& gens) const {
  if (gens.empty()) throw std::invalid_argument("peripheral needs at least one generator");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] < 0 || gens[i] >= n_gens_) throw std::invalid_argument("peripheral generator out of range");
    if (i > 0 && gens[i] <= gens[i - 1]) throw std::invalid_argument("peripheral generators must be ascending");
  }
  if (kind_ == GroupKind::FreeProduct) {
    const int fac = gen_factor_[static_cast<std::size_t>(gens[0])];
    for (int g : gens) {
      if (gen_factor_[static_cast<std::size_t>(g)] != fac) {
        throw std::invalid_argument("peripheral generators must lie in a single free factor");
      }
    }
  }
}

int MarkedGroup::add_peripheral(std::vector<int> gens, std::string name) {
  std::sort(gens.begin(), gens.end());
  validate_peripheral(gens);
  Peripheral p;
  p.gens = std::move(gens);
  p.name = name.empty() ? ("P" + std::to_string(peripherals_.size() + 1)) : std::move(name);
  peripherals_.push_back(std::move(p));
  peripheral_subs_.push_back(nullptr);
  return static_cast<int>(peripherals_.size()) - 1;
}

bool MarkedGroup::in_peripheral(const Word& x, int i) const {
  const auto& gens = peripheral(i).gens;
  for (Letter l : x) {
    if (!std::binary_search(gens.begin(), gens.end(), gen_of(l))) return false;
  }
  return true;
}

namespace {

// Strips the trailing peripheral part of a canonical word; recursive over
// free-product structure when the peripheral sits inside one factor.
Word coset_rep_impl(const MarkedGroup& g, const Word& x, const std::vector<int>& gens) {
  auto in_gens = [&gens](Letter l) { return std::binary_search(gens.begin(), gens.end(), gen_of(l)); };
  switch (g.kind()) {
    case GroupKind::FreeAbelian: {
      Word out;
      for (Letter l : x) {
        if (!in_gens(l)) out.push_back(l);
      }
      return out;
    }
    case GroupKind::Free: {
      Word out = x;
      while (!out.empty() && in_gens(out.back())) out.pop_back();
      return out;
    }
    case GroupKind::FreeProduct: {
      if (x.empty()) return x;
      const int fac = g.factor_of_generator(gens[0]);
      // locate the trailing syllable
      const int last_fac = g.factor_of_generator(gen_of(x.back()));
      if (last_fac != fac) return x;
      std::size_t cut = x.size();
      while (cut > 0 && g.factor_of_generator(gen_of(x[cut - 1])) == fac) --cut;
      // translate trailing syllable and the peripheral generators to factor-local indices
      int offset = 0;
      for (int f = 0; f < fac; ++f) offset += g.factors()[static_cast<std::size_t>(f)].generator_count();
      Word local;
      for (std::size_t j = cut; j < x.size(); ++j) local.push_back(letter(gen_of(x[j]) - offset, is_inverse(x[j])));
      std::vector<int> local_gens;
      for (int gg : gens) local_gens.push_back(gg - offset);
      Word stripped = coset_rep_impl(g.factors()[static_cast<std::size_t>(fac)], local, local_gens);
      Word out = x.substr(0, cut);
      for (Letter l : stripped) out.push_back(letter(gen_of(l) + offset, is_inverse(l)));
      return out;
    }
  }
  return x;
}

}  // namespace

Word MarkedGroup::coset_representative(const Word& x, int i) const {
  return coset_rep_impl(*this, x, peripheral(i).gens);
}

Word MarkedGroup::coset_offset(const Word& x, int i) const {
  return multiply(inverse(coset_representative(x, i)), x);
}

const MarkedGroup& MarkedGroup::peripheral_subgroup(int i) const {
  auto& slot = peripheral_subs_.at(static_cast<std::size_t>(i));
  if (!slot) {
    const auto& gens = peripheral(i).gens;
    const MarkedGroup* host = this;
    std::vector<int> local = gens;
    while (host->kind_ == GroupKind::FreeProduct) {
      const int fac = host->gen_factor_[static_cast<std::size_t>(local[0])];
      int offset = 0;
      for (int f = 0; f < fac; ++f) offset += host->factors_[static_cast<std::size_t>(f)].generator_count();
      for (int& gg : local) gg -= offset;
      host = &host->factors_[static_cast<std::size_t>(fac)];
    }
    auto sub = std::make_shared<MarkedGroup>(
        host->kind_ == GroupKind::FreeAbelian ? free_abelian(static_cast<int>(local.size()))
                                              : free_group(static_cast<int>(local.size())));
    slot = std::move(sub);
  }
  return *slot;
}

std::vector<Word> MarkedGroup::peripheral_ball(int i, int radius, std::size_t cap) const {
  const MarkedGroup& sub = peripheral_subgroup(i);
  const auto& gens = peripheral(i).gens;
  std::vector<Word> local = sub.ball(Word{}, radius, cap);
  std::vector<Word> out;
  out.reserve(local.size());
  for (const Word& lw : local) {
    Word w;
    w.reserve(lw.size());
    for (Letter l : lw) w.push_back(letter(gens[static_cast<std::size_t>(gen_of(l))], is_inverse(l)));
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::uint64_t MarkedGroup::peripheral_ball_size(int i, int radius) const {
  const MarkedGroup& sub = peripheral_subgroup(i);
  const auto r = static_cast<std::uint64_t>(radius);
  if (sub.kind_ == GroupKind::FreeAbelian) {
    // |{x in Z^n : |x|_1 <= r}| = sum_k 2^k C(n,k) C(r,k)
    const int n = sub.rank_;
    std::uint64_t total = 0;
    for (int k = 0; k <= n && k <= radius; ++k) {
      std::uint64_t cnk = 1, crk = 1;
      for (int j = 0; j < k; ++j) cnk = cnk * (static_cast<std::uint64_t>(n) - j) / (j + 1);
      for (int j = 0; j < k; ++j) crk = crk * (r - j) / (j + 1);
      total += (cnk * crk) << k;
    }
    return total;
  }
  if (sub.kind_ == GroupKind::Free) {
    const std::uint64_t k2 = static_cast<std::uint64_t>(2 * sub.rank_);
    std::uint64_t total = 1, sphere = k2;
    for (int j = 1; j <= radius; ++j) {
      total += sphere;
      sphere *= (k2 - 1);
    }
    return total;
  }
  return static_cast<std::uint64_t>(peripheral_ball(i, radius).size());
}

Word MarkedGroup::random_peripheral_element(int i, int radius, Rng& rng, std::size_t cap) const {
  if (radius < 1) throw std::invalid_argument("radius must be >= 1");
  const MarkedGroup& sub = peripheral_subgroup(i);
  const auto& gens = peripheral(i).gens;
  if (sub.kind_ == GroupKind::FreeAbelian && sub.rank_ == 1) {
    const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(radius)));
    const bool inv = rng.below(2) == 1;
    Word w;
    for (int j = 0; j < len; ++j) w.push_back(letter(gens[0], inv));
    return w;
  }
  if (sub.kind_ == GroupKind::FreeAbelian && sub.rank_ == 2) {
    // sphere of radius l has 4l points; cumulative 2l(l+1)
    const std::uint64_t total = 2ULL * static_cast<std::uint64_t>(radius) * (static_cast<std::uint64_t>(radius) + 1);
    const std::uint64_t u = rng.below(total);
    int l = 1;
    while (2ULL * static_cast<std::uint64_t>(l) * (static_cast<std::uint64_t>(l) + 1) <= u) ++l;
    const std::uint64_t j = rng.below(4ULL * static_cast<std::uint64_t>(l));
    const int quadrant = static_cast<int>(j / static_cast<std::uint64_t>(l));
    const int t = static_cast<int>(j % static_cast<std::uint64_t>(l));
    long long ex = 0, ey = 0;
    switch (quadrant) {
      case 0: ex = l - t; ey = t; break;
      case 1: ex = -t; ey = l - t; break;
      case 2: ex = -(l - t); ey = -t; break;
      default: ex = t; ey = -(l - t); break;
    }
    Word w;
    for (long long v = 0; v < std::llabs(ex); ++v) w.push_back(letter(gens[0], ex < 0));
    for (long long v = 0; v < std::llabs(ey); ++v) w.push_back(letter(gens[1], ey < 0));
    return w;
  }
  std::vector<Word> all = peripheral_ball(i, radius, cap);
  // skip the identity at index 0 (shortlex order puts it first)
  const std::uint64_t idx = 1 + rng.below(all.size() - 1);
  return all[static_cast<std::size_t>(idx)];
}

Word MarkedGroup::axis_step() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
    case GroupKind::Free:
      return Word(1, letter(0, false));
    case GroupKind::FreeProduct: {
      Word w(1, letter(0, false));
      const int offset = factors_[0].generator_count();
      w.push_back(letter(offset, false));
      return w;
    }
  }
  return {};
}

}  // namespace cusp
