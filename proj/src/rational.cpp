#include "aarhus/rational.hpp"

#include <stdexcept>

namespace aarhus {

std::string rat_str(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw std::invalid_argument("bad rational: " + s);
        Int d(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(Int(num), d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

}  // namespace aarhus
