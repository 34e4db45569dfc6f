#include "jetham/expr.hpp"

#include <algorithm>
#include <unordered_map>

#include "jetham/errors.hpp"

namespace jetham {

std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

Rational rational_from_decimal(std::string_view digits) {
  auto dot = digits.find('.');
  std::string whole(digits.substr(0, dot));
  std::string frac = dot == std::string_view::npos ? std::string() : std::string(digits.substr(dot + 1));
  if (whole.empty()) whole = "0";
  mpz_class num(whole + frac, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(CoordinateId c, int exponent) {
  if (exponent > 0) factors_.push_back({c, exponent});
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.coord < b.coord; });
  for (const auto& f : factors) {
    if (!factors_.empty() && factors_.back().coord == f.coord) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(f);
    }
  }
  std::erase_if(factors_, [](const Factor& f) { return f.exponent == 0; });
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.exponent;
  return d;
}

int Monomial::exponent_of(const CoordinateId& c) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), c,
                             [](const Factor& f, const CoordinateId& v) { return f.coord < v; });
  return it != factors_.end() && it->coord == c ? it->exponent : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin(), ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->coord < ib->coord) {
      r.factors_.push_back(*ia++);
    } else if (ib->coord < ia->coord) {
      r.factors_.push_back(*ib++);
    } else {
      r.factors_.push_back({ia->coord, ia->exponent + ib->exponent});
      ++ia;
      ++ib;
    }
  }
  r.factors_.insert(r.factors_.end(), ia, a.factors_.end());
  r.factors_.insert(r.factors_.end(), ib, b.factors_.end());
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto ia = a.factors_.rbegin(), ib = b.factors_.rbegin();
  for (; ia != a.factors_.rend() && ib != b.factors_.rend(); ++ia, ++ib) {
    if (ia->coord != ib->coord) return ia->coord <=> ib->coord;
    if (ia->exponent != ib->exponent) return ib->exponent <=> ia->exponent;
  }
  return a.factors_.size() <=> b.factors_.size();
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Expr Expr::variable(const CoordinateId& c) { return monomial(Monomial(c), 1); }

Expr Expr::monomial(Monomial m, Rational coeff) {
  Expr e;
  if (coeff != 0) e.terms_.push_back({std::move(m), std::move(coeff)});
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  Expr e;
  for (auto& t : terms) {
    if (!e.terms_.empty() && e.terms_.back().monomial == t.monomial) {
      e.terms_.back().coeff += t.coeff;
    } else {
      if (!e.terms_.empty() && e.terms_.back().coeff == 0) e.terms_.pop_back();
      e.terms_.push_back(std::move(t));
    }
  }
  if (!e.terms_.empty() && e.terms_.back().coeff == 0) e.terms_.pop_back();
  return e;
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Expr::constant_term() const {
  // The unit monomial is the least element of the term order.
  if (!terms_.empty() && terms_.front().monomial.is_one()) return terms_.front().coeff;
  return 0;
}

int Expr::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::set<CoordinateId> Expr::coordinates() const {
  std::set<CoordinateId> out;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) out.insert(f.coord);
  }
  return out;
}

bool Expr::depends_on(const CoordinateId& c) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.monomial.exponent_of(c) > 0; });
}

bool Expr::any_coordinate(const std::function<bool(const CoordinateId&)>& pred) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) {
      if (pred(f.coord)) return true;
    }
  }
  return false;
}

int Expr::degree_in(const std::function<bool(const CoordinateId&)>& pred) const {
  int best = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (const auto& f : t.monomial.factors()) {
      if (pred(f.coord)) d += f.exponent;
    }
    best = std::max(best, d);
  }
  return best;
}

Expr& Expr::operator+=(const Expr& b) {
  if (b.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + b.terms_.size());
  auto ia = terms_.begin();
  auto ib = b.terms_.begin();
  while (ia != terms_.end() && ib != b.terms_.end()) {
    auto c = ia->monomial <=> ib->monomial;
    if (c < 0) {
      merged.push_back(std::move(*ia++));
    } else if (c > 0) {
      merged.push_back(*ib++);
    } else {
      Rational s = ia->coeff + ib->coeff;
      if (s != 0) merged.push_back({std::move(ia->monomial), std::move(s)});
      ++ia;
      ++ib;
    }
  }
  std::move(ia, terms_.end(), std::back_inserter(merged));
  merged.insert(merged.end(), ib, b.terms_.end());
  terms_ = std::move(merged);
  return *this;
}

Expr& Expr::operator-=(const Expr& b) { return *this += -b; }

Expr& Expr::operator*=(const Expr& b) {
  *this = *this * b;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.terms_.front().coeff);
  if (b.is_constant()) return a.scaled(b.terms_.front().coeff);
  std::vector<Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) products.push_back({ta.monomial * tb.monomial, ta.coeff * tb.coeff});
  }
  return Expr::from_terms(std::move(products));
}

Expr operator-(const Expr& a) { return a.scaled(-1); }

Expr Expr::scaled(const Rational& c) const {
  if (c == 0) return {};
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

bool operator==(const Expr& a, const Expr& b) {
  return a.terms_.size() == b.terms_.size() &&
         std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), [](const Term& x, const Term& y) {
           return x.coeff == y.coeff && x.monomial == y.monomial;
         });
}

Expr pow(const Expr& base, unsigned exponent) {
  Expr result(1);
  Expr b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent > 0) b = b * b;
  }
  return result;
}

std::strong_ordering compare(const Expr& a, const Expr& b) {
  auto ta = a.terms(), tb = b.terms();
  for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
    if (auto c = ta[k].monomial <=> tb[k].monomial; c != 0) return c;
    int s = cmp(ta[k].coeff, tb[k].coeff);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return ta.size() <=> tb.size();
}

Expr partial(const Expr& e, const CoordinateId& c) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    int k = t.monomial.exponent_of(c);
    if (k == 0) continue;
    std::vector<Factor> fs(t.monomial.factors().begin(), t.monomial.factors().end());
    for (auto& f : fs) {
      if (f.coord == c) f.exponent -= 1;
    }
    out.push_back({Monomial(std::move(fs)), t.coeff * k});
  }
  return Expr::from_terms(std::move(out));
}

Expr substitute(const Expr& e, const std::map<CoordinateId, Expr>& bindings) {
  if (bindings.empty()) return e;
  std::map<std::pair<CoordinateId, int>, Expr> powers;
  auto power_of = [&](const Expr& b, const CoordinateId& c, int k) -> const Expr& {
    auto key = std::make_pair(c, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, pow(b, static_cast<unsigned>(k))).first;
    return it->second;
  };
  Expr result;
  std::vector<Term> untouched;
  for (const auto& t : e.terms()) {
    std::vector<Factor> kept;
    Expr product(t.coeff);
    bool hit = false;
    for (const auto& f : t.monomial.factors()) {
      auto b = bindings.find(f.coord);
      if (b == bindings.end()) {
        kept.push_back(f);
      } else {
        hit = true;
        product = product * power_of(b->second, f.coord, f.exponent);
      }
    }
    if (!hit) {
      untouched.push_back(t);
      continue;
    }
    result += product * Expr::monomial(Monomial(std::move(kept)));
  }
  return result + Expr::from_terms(std::move(untouched));
}

Expr sign_normalized(const Expr& e) {
  if (!e.is_zero() && e.terms().back().coeff < 0) return -e;
  return e;
}

std::map<CoordinateId, Expr> linear_coefficients(
    const Expr& e, const std::function<bool(const CoordinateId&)>& pred, Expr* rest) {
  std::map<CoordinateId, std::vector<Term>> parts;
  std::vector<Term> remainder;
  for (const auto& t : e.terms()) {
    const Factor* selected = nullptr;
    int degree = 0;
    for (const auto& f : t.monomial.factors()) {
      if (pred(f.coord)) {
        degree += f.exponent;
        selected = &f;
      }
    }
    if (degree > 1) throw DomainError("expression is not affine in the selected coordinates");
    if (degree == 0) {
      remainder.push_back(t);
      continue;
    }
    std::vector<Factor> fs;
    for (const auto& f : t.monomial.factors()) {
      if (!(f.coord == selected->coord)) fs.push_back(f);
    }
    parts[selected->coord].push_back({Monomial(std::move(fs)), t.coeff});
  }
  std::map<CoordinateId, Expr> out;
  for (auto& [c, ts] : parts) {
    Expr coeff = Expr::from_terms(std::move(ts));
    if (!coeff.is_zero()) out.emplace(c, std::move(coeff));
  }
  if (rest != nullptr) *rest = Expr::from_terms(std::move(remainder));
  return out;
}

}  // namespace jetham
