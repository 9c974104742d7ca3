#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "thinsem/numeric.hpp"

namespace thinsem {

// Finite set of allowed partial quotients, strictly increasing, all >= 1.
struct Alphabet {
    std::vector<std::int64_t> letters;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::int64_t> ls) : letters(std::move(ls)) { validate(); }

    void validate() const {
        if (letters.empty()) throw ValidationError("alphabet must be nonempty");
        for (size_t i = 0; i < letters.size(); ++i) {
            if (letters[i] < 1) throw ValidationError("alphabet entries must be >= 1");
            if (i > 0 && letters[i] <= letters[i - 1])
                throw ValidationError("alphabet entries must be strictly increasing");
        }
    }

    std::size_t size() const { return letters.size(); }
    std::int64_t max_letter() const { return letters.back(); }

    bool contains_one_two() const {
        return std::binary_search(letters.begin(), letters.end(), 1) &&
               std::binary_search(letters.begin(), letters.end(), 2);
    }

    bool all_even() const {
        return std::all_of(letters.begin(), letters.end(), [](std::int64_t a) { return a % 2 == 0; });
    }

    // "1,2,5" or "1-10" or a mix, e.g. "1-3,7".
    static Alphabet parse(const std::string& text);

    std::string to_string() const;
};

inline Alphabet alphabet_range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> ls;
    for (std::int64_t a = lo; a <= hi; ++a) ls.push_back(a);
    return Alphabet(std::move(ls));
}

}  // namespace thinsem
