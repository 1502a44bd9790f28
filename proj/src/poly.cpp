#include "mfcy/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mfcy/error.hpp"

namespace mfcy {

Monomial Monomial::variable(std::size_t nvars, std::size_t i, unsigned power) {
    if (i >= nvars) throw ValidationError("variable index out of range");
    Monomial m(nvars);
    m.e_[i] = power;
    return m;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (unsigned e : e_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& m) const {
    if (e_.size() != m.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > m.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += m.e_[i];
    return r;
}

Monomial Monomial::divide_by(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= m.e_[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(r.e_[i], m.e_[i]);
    return r;
}

namespace {

// degrevlex on a contiguous range of permuted positions; returns +1 if a > b.
int degrevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<std::size_t>& perm,
                  std::size_t lo, std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t j = lo; j < hi; ++j) {
        da += a.exp(perm[j]);
        db += b.exp(perm[j]);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t j = hi; j-- > lo;) {
        unsigned ea = a.exp(perm[j]), eb = b.exp(perm[j]);
        if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
}

} // namespace

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
    std::vector<std::size_t> id;
    const std::vector<std::size_t>* p = &perm;
    if (perm.empty()) {
        id.resize(a.nvars());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        p = &id;
    }
    const std::size_t n = p->size();
    switch (kind) {
        case Kind::lex:
            for (std::size_t j = 0; j < n; ++j) {
                unsigned ea = a.exp((*p)[j]), eb = b.exp((*p)[j]);
                if (ea != eb) return ea > eb;
            }
            return false;
        case Kind::degrevlex:
            return degrevlex_cmp(a, b, *p, 0, n) > 0;
        case Kind::block: {
            std::size_t split = std::min(block_split, n);
            int c = degrevlex_cmp(a, b, *p, 0, split);
            if (c != 0) return c > 0;
            return degrevlex_cmp(a, b, *p, split, n) > 0;
        }
    }
    return false;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
    Poly p(nvars);
    p.add_term(Monomial::variable(nvars, i), Rational(1));
    return p;
}

Poly Poly::term(const Monomial& m, const Rational& c) {
    Poly p(m.nvars());
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::check_same_ring(const Poly& o) const {
    if (nvars_ != o.nvars_) throw ValidationError("polynomial ring mismatch: different variable counts");
}

Rational Poly::coefficient_of(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

unsigned Poly::degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exp(i));
    return d;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [mm, v] : terms_) r.terms_.emplace(mm * m, v * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::constant(nvars_, 1);
    for (unsigned i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

Poly Poly::partial_derivative(std::size_t i) const {
    if (i >= nvars_) throw ValidationError("partial derivative index out of range");
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exp(i);
        if (e == 0) continue;
        std::vector<unsigned> exps(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) exps[j] = m.exp(j);
        exps[i] = e - 1;
        r.add_term(Monomial(std::move(exps)), c * Rational(static_cast<long>(e)));
    }
    return r;
}

Poly Poly::coefficient_in_variable(std::size_t i, unsigned k) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.exp(i) != k) continue;
        std::vector<unsigned> exps(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) exps[j] = m.exp(j);
        exps[i] = 0;
        r.add_term(Monomial(std::move(exps)), c);
    }
    return r;
}

Poly Poly::translate(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw ValidationError("translation point has wrong dimension");
    Poly result(nvars_);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(nvars_, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            unsigned e = m.exp(i);
            if (e == 0) continue;
            Poly shifted = Poly::variable(nvars_, i) + Poly::constant(nvars_, x[i]);
            t = t * shifted.pow(e);
        }
        result += t;
    }
    return result;
}

Poly Poly::truncate_total_degree(unsigned bound) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        if (m.degree() <= bound) r.terms_.emplace(m, c);
    return r;
}

Rational Poly::evaluate(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw ValidationError("evaluation point has wrong dimension");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m.exp(i) > 0) t *= x[i].pow(m.exp(i));
        acc += t;
    }
    return acc;
}

std::complex<double> Poly::evaluate(const std::vector<std::complex<double>>& x) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        std::complex<double> t(c.to_double(), 0.0);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m.exp(i); ++e) t *= x[i];
        acc += t;
    }
    return acc;
}

const Monomial& Poly::leading_monomial(const MonomialOrder& order) const {
    if (is_zero()) throw ValidationError("leading monomial of zero polynomial");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || order.greater(m, *best)) best = &m;
    return *best;
}

Rational Poly::leading_coefficient(const MonomialOrder& order) const {
    return coefficient_of(leading_monomial(order));
}

std::optional<Poly> Poly::exact_divide(const Poly& p, const Poly& q) {
    p.check_same_ring(q);
    if (q.is_zero()) throw ValidationError("division by zero polynomial");
    MonomialOrder order;    // any fixed order works for exact division
    Poly rem = p, quot(p.nvars());
    const Monomial& lmq = q.leading_monomial(order);
    const Rational lcq = q.coefficient_of(lmq);
    while (!rem.is_zero()) {
        const Monomial& lmr = rem.leading_monomial(order);
        if (!lmq.divides(lmr)) return std::nullopt;
        Monomial m = lmr.divide_by(lmq);
        Rational c = rem.coefficient_of(lmr) / lcq;
        quot.add_term(m, c);
        rem -= q.times_monomial(m, c);
    }
    return quot;
}

int Poly::compare(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_ ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

std::vector<std::string> default_variable_names(std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = "z" + std::to_string(i + 1);
    return names;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (names.size() != nvars_) throw ValidationError("variable name list has wrong length");
    if (is_zero()) return "0";

    // Display order: descending degrevlex.
    MonomialOrder order;
    std::vector<const TermMap::value_type*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [&](auto* x, auto* y) { return order.greater(x->first, y->first); });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : ts) {
        const Rational& c = t->second;
        const Monomial& m = t->first;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit_coeff = a.is_one() && !m.is_unit();
        if (!unit_coeff) os << a.to_string();
        bool need_star = !unit_coeff;
        for (std::size_t i = 0; i < nvars_; ++i) {
            unsigned e = m.exp(i);
            if (e == 0) continue;
            if (need_star) os << "*";
            os << names[i];
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& names)
        : text_(text), names_(names) {}

    Poly run() {
        Poly result(names_.size());
        skip_ws();
        if (eof()) throw ParseError("empty polynomial");
        bool negate = consume_sign();
        result += parse_term(negate);
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (c != '+' && c != '-') throw ParseError(err("expected '+' or '-'"));
            ++pos_;
            skip_ws();
            result += parse_term(c == '-');
        }
        return result;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string err(const std::string& what) const {
        return what + " at position " + std::to_string(pos_) + " in '" + text_ + "'";
    }

    bool consume_sign() {
        bool neg = false;
        while (!eof() && (peek() == '+' || peek() == '-')) {
            if (peek() == '-') neg = !neg;
            ++pos_;
            skip_ws();
        }
        return neg;
    }

    std::string read_integer() {
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
        if (digits.empty()) throw ParseError(err("expected integer"));
        return digits;
    }

    // Longest-match variable name lookup.
    std::optional<std::size_t> try_variable() {
        std::optional<std::size_t> best;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const std::string& nm = names_[i];
            if (nm.size() > best_len && text_.compare(pos_, nm.size(), nm) == 0) {
                best = i;
                best_len = nm.size();
            }
        }
        if (best) pos_ += best_len;
        return best;
    }

    Poly parse_term(bool negate) {
        Rational coeff(1);
        std::vector<unsigned> exps(names_.size(), 0);
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string num = read_integer();
                std::string den = "1";
                skip_ws();
                if (!eof() && peek() == '/') {
                    ++pos_;
                    skip_ws();
                    den = read_integer();
                }
                coeff *= Rational::from_string(num + "/" + den);
                saw_factor = true;
            } else {
                auto v = try_variable();
                if (!v) {
                    if (!saw_factor) throw ParseError(err("expected coefficient or variable"));
                    throw ParseError(err("expected factor"));
                }
                unsigned e = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    ++pos_;
                    skip_ws();
                    e = static_cast<unsigned>(std::stoul(read_integer()));
                }
                exps[*v] += e;
                saw_factor = true;
            }
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (negate) coeff = -coeff;
        return Poly::term(Monomial(std::move(exps)), coeff);
    }

    const std::string& text_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

Poly Poly::parse(const std::string& text, const std::vector<std::string>& names) {
    return PolyParser(text, names).run();
}

Poly truncated_inverse(const Poly& u, unsigned degree_bound) {
    Rational c = u.constant_term();
    if (c.is_zero()) throw ValidationError("truncated_inverse: not a unit (zero constant term)");
    // u = c (1 - w)  =>  1/u = (1/c) sum w^k, truncated.
    Poly w = Poly::constant(u.nvars(), 1) - u.scaled(c.inverse());
    w = w.truncate_total_degree(degree_bound);
    Poly acc = Poly::constant(u.nvars(), 1);
    Poly wk = Poly::constant(u.nvars(), 1);
    for (unsigned k = 1; k <= degree_bound; ++k) {
        wk = (wk * w).truncate_total_degree(degree_bound);
        if (wk.is_zero()) break;
        acc += wk;
    }
    return acc.scaled(c.inverse());
}

} // namespace mfcy
