#include "thinsem/alphabet.hpp"

#include <sstream>

namespace thinsem {

Alphabet Alphabet::parse(const std::string& text) {
    std::vector<std::int64_t> letters;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto dash = tok.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                std::int64_t lo = std::stoll(tok.substr(0, dash));
                std::int64_t hi = std::stoll(tok.substr(dash + 1));
                if (hi < lo) throw ValidationError("alphabet: empty range " + tok);
                for (std::int64_t a = lo; a <= hi; ++a) letters.push_back(a);
            } else {
                letters.push_back(std::stoll(tok));
            }
        } catch (const std::invalid_argument&) {
            throw ValidationError("alphabet: cannot parse token '" + tok + "'");
        } catch (const std::out_of_range&) {
            throw ValidationError("alphabet: token out of range '" + tok + "'");
        }
    }
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    return Alphabet(std::move(letters));
}

std::string Alphabet::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ",";
        os << letters[i];
    }
    return os.str();
}

}  // namespace thinsem
