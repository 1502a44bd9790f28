#include "mfcy/rational.hpp"

#include <ostream>

namespace mfcy {

Rational::Rational(long n, long d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty rational literal");
    auto check = [&](const std::string& part) {
        if (part.empty()) throw ParseError("bad rational literal: '" + s + "'");
        std::size_t start = (part[0] == '+' || part[0] == '-') ? 1 : 0;
        if (start == part.size()) throw ParseError("bad rational literal: '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw ParseError("bad rational literal: '" + s + "'");
    };
    auto strip_plus = [](std::string part) {
        if (!part.empty() && part[0] == '+') part.erase(0, 1);   // mpq rejects a leading '+'
        return part;
    };
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        check(t);
        return Rational(mpq_class(strip_plus(t)));
    }
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    check(num);
    check(den);
    mpq_class q(strip_plus(num) + "/" + strip_plus(den));
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ValidationError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw ValidationError("inverse of zero rational");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(unsigned e) const {
    mpq_class acc(1), base = v_;
    for (unsigned k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= base;
        if (k > 1) base *= base;
    }
    return Rational(acc);
}

Rational Rational::factorial(unsigned n) {
    mpz_class acc(1);
    for (unsigned i = 2; i <= n; ++i) acc *= i;
    return Rational(mpq_class(acc));
}

std::string Rational::to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace mfcy
