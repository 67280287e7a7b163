#include "cstar/chain.hpp"

#include <algorithm>
#include <cctype>

#include "cstar/error.hpp"

namespace cstar {

namespace {

std::int64_t checked_mul_sub(std::int64_t a, std::int64_t b, std::int64_t c) {
    std::int64_t prod = 0;
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_sub_overflow(prod, c, &out)) {
        throw Error(ErrorCode::Overflow, "chain discriminant overflow");
    }
    return out;
}

std::int64_t discriminant_range(const Chain& chain, std::size_t first, std::size_t last) {
    // d over chain[first..last), evaluated from the far end.
    std::int64_t next = 0;
    std::int64_t cur = 1;  // d of the empty tail
    for (std::size_t i = last; i > first; --i) {
        std::int64_t val = checked_mul_sub(chain[i - 1], cur, next);
        next = cur;
        cur = val;
    }
    return cur;
}

void require_nonempty(const Chain& chain) {
    if (chain.empty()) throw Error(ErrorCode::InvalidInput, "empty chain");
}

void require_admissible(const Chain& chain) {
    require_nonempty(chain);
    if (!is_admissible(chain)) {
        throw Error(ErrorCode::NotAdmissible, "chain " + format_chain(chain) + " is not admissible");
    }
}

}  // namespace

bool is_admissible(const Chain& chain) {
    return std::all_of(chain.begin(), chain.end(), [](std::int64_t w) { return w >= 2; });
}

std::int64_t discriminant(const Chain& chain) { return discriminant_range(chain, 0, chain.size()); }

std::int64_t d_prime(const Chain& chain) {
    require_nonempty(chain);
    return discriminant_range(chain, 1, chain.size());
}

std::int64_t d_doubleprime(const Chain& chain) {
    require_nonempty(chain);
    return discriminant_range(chain, 0, chain.size() - 1);
}

Rational e_twig(const Chain& chain) {
    require_admissible(chain);
    return Rational(d_prime(chain), discriminant(chain));
}

Rational e_quotient_chain(const Chain& chain) {
    require_admissible(chain);
    return Rational(d_prime(chain) + d_doubleprime(chain) + 2, discriminant(chain));
}

Chain reversed(const Chain& chain) { return Chain(chain.rbegin(), chain.rend()); }

std::string format_chain(const Chain& chain) {
    std::string out = "[";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(chain[i]);
    }
    return out + "]";
}

Chain parse_chain(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char ch) {
        skip_ws();
        if (pos >= text.size() || text[pos] != ch) {
            throw ParseError(pos, std::string("expected '") + ch + "'");
        }
        ++pos;
    };
    auto read_int = [&]() -> std::int64_t {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') {
            neg = true;
            ++pos;
        }
        std::int64_t v = 0;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, text[pos] - '0', &v)) {
                throw ParseError(start, "integer out of range");
            }
            ++pos;
            ++digits;
        }
        if (digits == 0) throw ParseError(start, "expected integer");
        return neg ? -v : v;
    };

    Chain chain;
    expect('[');
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        while (true) {
            chain.push_back(read_int());
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
    }
    skip_ws();
    if (pos != text.size()) throw ParseError(pos, "trailing characters after chain");
    return chain;
}

}  // namespace cstar
