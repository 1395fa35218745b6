#include "siqs/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace siqs {

MultiPoly MultiPoly::var(Symbol s, int e) {
  if (e == 0) return MultiPoly(Rational(1));
  ExpVec ev{};
  ev[static_cast<size_t>(s.id())] = static_cast<int16_t>(e);
  return monomial(Rational(1), ev);
}

MultiPoly MultiPoly::monomial(const Rational& coeff, const ExpVec& e) {
  MultiPoly p;
  if (!coeff.is_zero()) p.terms_[e] = coeff;
  return p;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::domain_error("MultiPoly: not a constant: " + str());
  return terms_.begin()->second;
}

int MultiPoly::degree(Symbol s) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<size_t>(s.id())]));
  return d;
}

int MultiPoly::min_degree(Symbol s) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::min(d, static_cast<int>(e[static_cast<size_t>(s.id())]));
  return d;
}

void MultiPoly::add_term(const ExpVec& e, const Rational& r) {
  if (r.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, r);
  } else {
    it->second += r;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      ExpVec e;
      for (size_t i = 0; i < kNumSymbols; ++i)
        e[i] = static_cast<int16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& r) const {
  MultiPoly out;
  if (r.is_zero()) return out;
  for (const auto& [e, c] : terms_) out.terms_[e] = c * r;
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) {
    if (!is_monomial()) throw std::domain_error("MultiPoly::pow: negative power of non-monomial");
    const auto& [ev, c] = *terms_.begin();
    ExpVec inv;
    for (size_t i = 0; i < kNumSymbols; ++i) inv[i] = static_cast<int16_t>(-ev[i]);
    return monomial(Rational(1) / c, inv).pow(-e);
  }
  MultiPoly r(Rational(1));
  MultiPoly base = *this;
  int k = e;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<std::pair<Symbol, MultiPoly>>& bindings) const {
  MultiPoly out;
  for (const auto& [e, coeff] : terms_) {
    MultiPoly term(coeff);
    ExpVec rest = e;
    for (const auto& [s, val] : bindings) {
      int k = rest[static_cast<size_t>(s.id())];
      rest[static_cast<size_t>(s.id())] = 0;
      if (k != 0) term = term * val.pow(k);
    }
    term = term * monomial(Rational(1), rest);
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::rename(Symbol from, Symbol to) const {
  MultiPoly out;
  const size_t fi = static_cast<size_t>(from.id()), ti = static_cast<size_t>(to.id());
  for (const auto& [e, c] : terms_) {
    if (e[ti] != 0) throw std::domain_error("MultiPoly::rename: target symbol occurs");
    ExpVec ne = e;
    ne[ti] = ne[fi];
    ne[fi] = 0;
    out.add_term(ne, c);
  }
  return out;
}

Rational MultiPoly::eval(const std::vector<std::pair<Symbol, Rational>>& bindings) const {
  std::array<std::optional<Rational>, kNumSymbols> vals;
  for (const auto& [s, r] : bindings) vals[static_cast<size_t>(s.id())] = r;
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < kNumSymbols; ++i) {
      if (e[i] == 0) continue;
      if (!vals[i])
        throw std::domain_error("MultiPoly::eval: unbound symbol " + std::string(kSymbolNames[i]));
      t *= vals[i]->pow_int(e[i]);
    }
    acc += t;
  }
  return acc;
}

double MultiPoly::eval_double(const std::array<double, kNumSymbols>& vals) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (size_t i = 0; i < kNumSymbols; ++i)
      if (e[i] != 0) t *= std::pow(vals[i], static_cast<double>(e[i]));
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(Symbol s) const {
  const size_t si = static_cast<size_t>(s.id());
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[si] == 0) continue;
    ExpVec ne = e;
    ne[si] = static_cast<int16_t>(ne[si] - 1);
    out.add_term(ne, c * Rational(e[si]));
  }
  return out;
}

std::map<int, MultiPoly> MultiPoly::collect(Symbol s) const {
  const size_t si = static_cast<size_t>(s.id());
  std::map<int, MultiPoly> out;
  for (const auto& [e, c] : terms_) {
    ExpVec ne = e;
    int k = ne[si];
    ne[si] = 0;
    out[k].add_term(ne, c);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

MultiPoly MultiPoly::coeff_of(Symbol s, int k) const {
  auto m = collect(s);
  auto it = m.find(k);
  return it == m.end() ? MultiPoly() : it->second;
}

Rational MultiPoly::rational_content() const {
  if (terms_.empty()) return Rational(0);
  Rational g(0);
  for (const auto& [e, c] : terms_) g = siqs::gcd(g, c);
  // Normalize sign to the lexicographically-last (leading) term.
  if (terms_.rbegin()->second.sign() < 0) g = -g;
  return g;
}

ExpVec MultiPoly::monomial_gcd() const {
  ExpVec m{};
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (size_t i = 0; i < kNumSymbols; ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

MultiPoly MultiPoly::divide_by_monomial(const ExpVec& m) const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    ExpVec ne;
    for (size_t i = 0; i < kNumSymbols; ++i) ne[i] = static_cast<int16_t>(e[i] - m[i]);
    out.terms_[ne] = c;
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return MultiPoly();
  // Shift so all exponents are non-negative, then sparse long division by
  // the leading term in lexicographic order.
  ExpVec ma = a.monomial_gcd(), mb = b.monomial_gcd();
  MultiPoly ra = a.divide_by_monomial(ma), rb = b.divide_by_monomial(mb);
  MultiPoly rem = ra, quot;
  const auto& blead = *rb.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms_.rbegin();
    ExpVec qe;
    for (size_t i = 0; i < kNumSymbols; ++i) {
      int d = rlead.first[i] - blead.first[i];
      if (d < 0) return std::nullopt;
      qe[i] = static_cast<int16_t>(d);
    }
    MultiPoly qt = monomial(rlead.second / blead.second, qe);
    quot += qt;
    rem -= qt * rb;
  }
  ExpVec shift;
  for (size_t i = 0; i < kNumSymbols; ++i) shift[i] = static_cast<int16_t>(mb[i] - ma[i]);
  return quot.divide_by_monomial(shift);
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest lexicographic term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational cc = c;
    if (first) {
      if (cc.sign() < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc.sign() < 0 ? " - " : " + ");
      cc = cc.abs();
    }
    first = false;
    bool has_sym = false;
    std::ostringstream syms;
    bool sfirst = true;
    for (size_t i = 0; i < kNumSymbols; ++i) {
      if (e[i] == 0) continue;
      if (!sfirst) syms << "*";
      sfirst = false;
      syms << kSymbolNames[i];
      if (e[i] != 1) syms << "^" << e[i];
      has_sym = true;
    }
    if (!has_sym) {
      os << cc.str();
    } else if (cc.is_one()) {
      os << syms.str();
    } else {
      os << cc.str() << "*" << syms.str();
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw std::invalid_argument("MultiPoly::parse: expected '" + std::string(1, c) + "' in '" + s + "'");
  }

  MultiPoly parse_expr() {
    MultiPoly acc = parse_term_signed();
    while (true) {
      skip_ws();
      if (accept('+')) acc += parse_term();
      else if (accept('-')) acc -= parse_term();
      else break;
    }
    return acc;
  }

  MultiPoly parse_term_signed() {
    skip_ws();
    if (accept('-')) return -parse_term();
    accept('+');
    return parse_term();
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_power();
    while (true) {
      skip_ws();
      if (accept('*')) acc = acc * parse_power();
      else if (accept('/')) {
        MultiPoly d = parse_power();
        if (!d.is_constant()) {
          if (!d.is_monomial()) throw std::invalid_argument("MultiPoly::parse: non-monomial divisor");
          acc = acc * d.pow(-1);
        } else {
          acc = acc / d.constant_value();
        }
      } else break;
    }
    return acc;
  }

  MultiPoly parse_power() {
    MultiPoly base = parse_atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw std::invalid_argument("MultiPoly::parse: bad exponent in '" + s + "'");
      int e = std::stoi(s.substr(i, j - i));
      i = j;
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  MultiPoly parse_atom() {
    skip_ws();
    if (accept('(')) {
      MultiPoly inner = parse_expr();
      expect(')');
      return inner;
    }
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      std::string num = s.substr(i, j - i);
      i = j;
      return MultiPoly(Rational::parse(num));
    }
    if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string name = s.substr(i, j - i);
      i = j;
      return MultiPoly::var(Symbol::named(name));
    }
    throw std::invalid_argument("MultiPoly::parse: unexpected char in '" + s + "'");
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& s) {
  Parser p(s);
  MultiPoly r = p.parse_expr();
  p.skip_ws();
  if (p.i != s.size()) throw std::invalid_argument("MultiPoly::parse: trailing input in '" + s + "'");
  return r;
}

}  // namespace siqs
