#include "mixdae/rational.hpp"

#include <cctype>
#include <sstream>

namespace mixdae {

Rational parse_rational(const std::string &text) {
    require(!text.empty(), ErrorKind::ParseError, "empty rational literal");
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto check_int = [&](const std::string &part) {
        require(!part.empty(), ErrorKind::ParseError, "bad rational literal '" + text + "'");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        require(i < part.size(), ErrorKind::ParseError, "bad rational literal '" + text + "'");
        for (; i < part.size(); ++i)
            require(std::isdigit(static_cast<unsigned char>(part[i])) != 0, ErrorKind::ParseError,
                    "bad rational literal '" + text + "'");
    };
    check_int(num);
    check_int(den);
    Integer d(den);
    require(d != 0, ErrorKind::ParseError, "zero denominator in '" + text + "'");
    return Rational(Integer(num), d);
}

std::string rational_to_string(const Rational &value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

} // namespace mixdae
