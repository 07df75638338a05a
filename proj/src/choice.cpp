#include "rumid/choice.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <numeric>

namespace rumid {

Universe::Universe(std::vector<std::string> labels, std::size_t cap) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidInput("universe must contain at least one alternative");
  if (labels_.size() > cap) throw CapExceeded("universe size", labels_.size(), cap);
  if (labels_.size() > 31) throw CapExceeded("universe size", labels_.size(), 31);
  std::sort(labels_.begin(), labels_.end());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::string& l = labels_[i];
    if (l.empty()) throw InvalidInput("empty alternative label");
    if (l.find_first_of(",{}| ") != std::string::npos)
      throw InvalidInput("alternative label \"" + l + "\" contains a reserved character");
    if (!index_.emplace(l, static_cast<int>(i)).second)
      throw InvalidInput("duplicate alternative label \"" + l + "\"");
    if (l.size() != 1) compact_ = false;
  }
}

int Universe::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InvalidInput("unknown alternative \"" + label + "\"");
  return it->second;
}

std::string Universe::key(const std::vector<int>& seq) const {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!compact_ && i > 0) out += ',';
    out += label(seq[i]);
  }
  return out;
}

std::string Universe::menu_key(Menu m) const {
  if (m == 0) return "{}";
  std::vector<int> members;
  for (int i = 0; i < size(); ++i)
    if (m >> i & 1u) members.push_back(i);
  return key(members);
}

std::vector<int> Universe::parse_sequence(const std::string& k) const {
  std::vector<int> out;
  if (compact_) {
    for (char c : k) out.push_back(index(std::string(1, c)));
    return out;
  }
  std::size_t start = 0;
  while (start <= k.size()) {
    const auto comma = k.find(',', start);
    const auto end = comma == std::string::npos ? k.size() : comma;
    out.push_back(index(k.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Preference Universe::parse_preference(const std::string& k) const {
  Preference p = parse_sequence(k);
  if (!is_preference(*this, p)) throw InvalidInput("\"" + k + "\" is not a preference over the universe");
  return p;
}

Menu Universe::parse_menu(const std::string& k) const {
  if (k == "{}" || k.empty()) return 0;
  Menu m = 0;
  for (int i : parse_sequence(k)) {
    if (m >> i & 1u) throw InvalidInput("menu \"" + k + "\" repeats an alternative");
    m |= Menu{1} << i;
  }
  return m;
}

std::vector<Preference> Universe::preferences() const {
  Preference p(static_cast<std::size_t>(size()));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Preference> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Menu> Universe::menus() const {
  std::vector<Menu> out;
  for (Menu m = 1; m <= full(); ++m) out.push_back(m);
  std::sort(out.begin(), out.end(), [this](Menu a, Menu b) { return menu_key(a) < menu_key(b); });
  return out;
}

bool is_preference(const Universe& u, const Preference& p) {
  if (static_cast<int>(p.size()) != u.size()) return false;
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= u.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

void check_preference(const Universe& u, const Preference& p) {
  if (!is_preference(u, p)) throw InvalidInput("sequence is not a permutation of the universe");
}

const Rational& ChoiceRule::at(Menu m, int x) const {
  auto it = probs.find(m);
  if (it == probs.end()) throw InvalidInput("choice rule has no entry for the requested menu");
  return it->second.at(static_cast<std::size_t>(x));
}

void check_distribution(const Universe& u, const SignedMeasure& mu) {
  Rational total = 0;
  for (const auto& [p, w] : mu) {
    if (!is_preference(u, p)) throw InvalidInput("distribution contains a malformed preference");
    if (w < 0) throw InvalidInput("negative mass on " + u.pref_key(p));
    total += w;
  }
  if (total != 1) throw InvalidInput("masses sum to " + format_rational(total) + ", not 1");
}

void check_choice_rule(const Universe& u, const ChoiceRule& rho, const std::vector<Menu>& menus) {
  for (Menu m : menus) {
    auto it = rho.probs.find(m);
    if (it == rho.probs.end()) throw InvalidInput("choice rule is missing menu " + u.menu_key(m));
    const auto& row = it->second;
    if (static_cast<int>(row.size()) != u.size()) throw InvalidInput("malformed row for menu " + u.menu_key(m));
    Rational total = 0;
    for (int x = 0; x < u.size(); ++x) {
      const Rational& v = row[static_cast<std::size_t>(x)];
      if (!(m >> x & 1u) && !v.is_zero())
        throw InvalidInput("probability on " + u.label(x) + " outside menu " + u.menu_key(m));
      if (v < 0 || v > 1) throw InvalidInput("probability outside [0,1] in menu " + u.menu_key(m));
      total += v;
    }
    if (total != 1) throw InvalidInput("menu " + u.menu_key(m) + " sums to " + format_rational(total));
  }
}

SignedMeasure uniform(const std::vector<Preference>& support) {
  SignedMeasure out;
  if (support.empty()) return out;
  for (const auto& p : support) out[p] += Rational(1, static_cast<long>(support.size()));
  return out;
}

SignedMeasure add(const SignedMeasure& a, const SignedMeasure& b, const Rational& scale) {
  SignedMeasure out = a;
  for (const auto& [p, w] : b) out[p] += scale * w;
  prune_zeros(out);
  return out;
}

void prune_zeros(SignedMeasure& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second.is_zero()) it = m.erase(it);
    else ++it;
  }
}

int best_in(const Preference& p, Menu m) {
  for (int x : p)
    if (m >> x & 1u) return x;
  return -1;
}

ChoiceRule phi(const Universe& u, const SignedMeasure& mu) {
  ChoiceRule rho;
  const auto n = static_cast<std::size_t>(u.size());
  for (Menu m = 1; m <= u.full(); ++m) rho.probs.emplace(m, std::vector<Rational>(n, Rational(0)));
  for (const auto& [p, w] : mu) {
    check_preference(u, p);
    if (w.is_zero()) continue;
    for (auto& [m, row] : rho.probs) row[static_cast<std::size_t>(best_in(p, m))] += w;
  }
  return rho;
}

bool obs_equiv(const Universe& u, const SignedMeasure& mu, const SignedMeasure& nu) {
  return phi(u, mu) == phi(u, nu);
}

namespace {

std::uint64_t top_set(const Preference& p, int k) {
  std::uint64_t s = 0;
  for (int i = 0; i < k; ++i) s |= std::uint64_t{1} << p[static_cast<std::size_t>(i)];
  return s;
}

void check_k(const Preference& p, const Preference& q, int k) {
  if (p.size() != q.size()) throw InvalidInput("preferences over different universes");
  if (k < 0 || k > static_cast<int>(p.size())) throw InvalidInput("k out of range");
}

}  // namespace

bool k_compatible(const Preference& p, const Preference& q, int k) {
  check_k(p, q, k);
  return top_set(p, k) == top_set(q, k);
}

bool nontrivially_k_compatible(const Preference& p, const Preference& q, int k) {
  if (!k_compatible(p, q, k)) return false;
  const auto ks = static_cast<std::ptrdiff_t>(k);
  const bool top_differs = !std::equal(p.begin(), p.begin() + ks, q.begin());
  const bool bottom_differs = !std::equal(p.begin() + ks, p.end(), q.begin() + ks);
  return top_differs && bottom_differs;
}

std::pair<Preference, Preference> conjugates(const Preference& p, const Preference& q, int k) {
  if (!k_compatible(p, q, k)) throw InvalidInput("preferences are not k-compatible");
  const auto ks = static_cast<std::ptrdiff_t>(k);
  Preference a(p.begin(), p.begin() + ks), b(q.begin(), q.begin() + ks);
  a.insert(a.end(), q.begin() + ks, q.end());
  b.insert(b.end(), p.begin() + ks, p.end());
  return {a, b};
}

}  // namespace rumid
