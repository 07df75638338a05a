#include "rumid/linalg.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <cctype>

namespace rumid {

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw InvalidInput("malformed rational \"" + std::string(whole) + "\"");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw InvalidInput("malformed rational \"" + std::string(whole) + "\"");
  Integer z(std::string(s.substr(i)));
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  const Integer num = parse_integer(t.substr(0, slash), text);
  const std::string_view den_text = t.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '+' || den_text.front() == '-'))
    throw InvalidInput("malformed rational \"" + std::string(text) + "\"");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  const Integer num = mp::numerator(q);
  const Integer den = mp::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

void SpanBasis::reduce(RatVector& v) const {
  for (const auto& [pivot, row] : rows_) {
    if (v(pivot).is_zero()) continue;
    const Rational f = v(pivot);
    for (const auto& [j, x] : row) v(j) -= f * x;
  }
}

bool SpanBasis::contains(const RatVector& v) const {
  if (v.size() != dim_) throw InvalidInput("vector dimension does not match span");
  RatVector w = v;
  reduce(w);
  for (Index j = 0; j < dim_; ++j)
    if (!w(j).is_zero()) return false;
  return true;
}

bool SpanBasis::insert(const RatVector& v) {
  if (v.size() != dim_) throw InvalidInput("vector dimension does not match span");
  RatVector w = v;
  reduce(w);
  Index lead = -1;
  for (Index j = 0; j < dim_; ++j) {
    if (!w(j).is_zero()) {
      lead = j;
      break;
    }
  }
  if (lead < 0) return false;
  const Rational inv = Rational(1) / w(lead);
  SparseRow row;
  for (Index j = lead; j < dim_; ++j)
    if (!w(j).is_zero()) row.emplace_back(j, w(j) * inv);
  // keep existing rows reduced against the new pivot
  for (auto& [pivot, other] : rows_) {
    auto it = std::lower_bound(other.begin(), other.end(), lead,
                               [](const auto& e, Index c) { return e.first < c; });
    if (it == other.end() || it->first != lead) continue;
    const Rational f = it->second;
    RatVector dense = RatVector::Zero(dim_);
    for (const auto& [j, x] : other) dense(j) = x;
    for (const auto& [j, x] : row) dense(j) -= f * x;
    SparseRow fresh;
    for (Index j = 0; j < dim_; ++j)
      if (!dense(j).is_zero()) fresh.emplace_back(j, dense(j));
    other = std::move(fresh);
  }
  rows_.emplace(lead, std::move(row));
  return true;
}

}  // namespace rumid
