#include "matchgames/rational.hpp"

#include <stdexcept>

namespace matchgames {

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_display_string(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        if (part.empty()) return false;
        size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational: " + s);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational lcm_of_denominators(const std::vector<Rational>& values) {
    mpz_class r = 1;
    for (const auto& v : values) mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), v.get_den_mpz_t());
    return Rational(r);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace matchgames
