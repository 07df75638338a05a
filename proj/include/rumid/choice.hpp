#pragma once

#include "rumid/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rumid {

inline constexpr std::size_t kDefaultUniverseCap = 8;

/// Descending ranking of alternative indices.
using Preference = std::vector<int>;
/// Bit i set iff alternative i belongs to the menu.
using Menu = std::uint32_t;
/// Masses keyed by preference; absent keys are zero.
using SignedMeasure = std::map<Preference, Rational>;

/// A finite set of labelled alternatives. Labels are kept sorted so that
/// index order and key order agree.
class Universe {
 public:
  explicit Universe(std::vector<std::string> labels, std::size_t cap = kDefaultUniverseCap);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  int index(const std::string& label) const;
  Menu full() const { return size() == 32 ? ~Menu{0} : (Menu{1} << size()) - 1; }

  /// Single-character labels concatenate ("abcd"); otherwise joined by ','.
  std::string key(const std::vector<int>& seq) const;
  std::string menu_key(Menu m) const;  // "{}" for the empty menu
  std::string pref_key(const Preference& p) const { return key(p); }
  std::vector<int> parse_sequence(const std::string& key) const;
  Preference parse_preference(const std::string& key) const;
  Menu parse_menu(const std::string& key) const;

  /// All |X|! preferences in lexicographic order.
  std::vector<Preference> preferences() const;
  /// All nonempty menus, ordered by menu key.
  std::vector<Menu> menus() const;

  bool operator==(const Universe& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  bool compact_ = true;
};

bool is_preference(const Universe& u, const Preference& p);
void check_preference(const Universe& u, const Preference& p);

/// Choice probabilities; probs[m][x] for each covered menu m, zero off-menu.
struct ChoiceRule {
  std::map<Menu, std::vector<Rational>> probs;

  const Rational& at(Menu m, int x) const;
  bool operator==(const ChoiceRule& o) const { return probs == o.probs; }
};

/// Throws InvalidInput unless masses are nonnegative and sum to one.
void check_distribution(const Universe& u, const SignedMeasure& mu);
/// Throws InvalidInput unless every menu of `menus` is present, entries lie in
/// [0,1], vanish off-menu and sum to one.
void check_choice_rule(const Universe& u, const ChoiceRule& rho, const std::vector<Menu>& menus);

SignedMeasure uniform(const std::vector<Preference>& support);
SignedMeasure add(const SignedMeasure& a, const SignedMeasure& b, const Rational& scale = 1);
void prune_zeros(SignedMeasure& m);

int best_in(const Preference& p, Menu m);

/// rho(x, A) = mass of preferences whose best element in A is x, over every
/// nonempty menu. Linear, so signed measures are accepted.
ChoiceRule phi(const Universe& u, const SignedMeasure& mu);
bool obs_equiv(const Universe& u, const SignedMeasure& mu, const SignedMeasure& nu);

/// Top-k sets coincide.
bool k_compatible(const Preference& p, const Preference& q, int k);
/// Compatible, with differing top-k rankings and differing bottom rankings.
bool nontrivially_k_compatible(const Preference& p, const Preference& q, int k);
/// (top_k(p) bottom(q), top_k(q) bottom(p)); rejects incompatible input.
std::pair<Preference, Preference> conjugates(const Preference& p, const Preference& q, int k);

}  // namespace rumid
