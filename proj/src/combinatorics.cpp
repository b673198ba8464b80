#include "mscodec/combinatorics.hpp"

#include <algorithm>

#include "mscodec/error.hpp"

namespace mscodec {

std::uint64_t binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

std::string sum_string(const std::vector<int>& v) {
    std::string out;
    for (int x : v) {
        if (x >= 0 && x <= 9)
            out.push_back(static_cast<char>('0' + x));
        else
            out += "(" + std::to_string(x) + ")";
    }
    return out;
}

std::vector<int> parse_sum(const std::string& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            auto close = s.find(')', i);
            if (close == std::string::npos) throw Error(Errc::ParseError, "bad sum string");
            out.push_back(std::stoi(s.substr(i + 1, close - i - 1)));
            i = close;
        } else if (s[i] >= '0' && s[i] <= '9') {
            out.push_back(s[i] - '0');
        } else {
            throw Error(Errc::ParseError, "bad sum string: " + s);
        }
    }
    return out;
}

}  // namespace mscodec
