#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cstar/rational.hpp"

namespace cstar {

// Linear divisor, stored tip-first as weights w_i = -T_i^2.
using Chain = std::vector<std::int64_t>;

bool is_admissible(const Chain& chain);

// det(-Q) by the three-term recurrence; the empty chain has discriminant 1.
std::int64_t discriminant(const Chain& chain);

// Discriminant with the first (d') or last (d'') component removed.
std::int64_t d_prime(const Chain& chain);
std::int64_t d_doubleprime(const Chain& chain);

// d(R_2..R_s) / d(R) for an admissible chain read from its tip.
Rational e_twig(const Chain& chain);

// (d' + d'' + 2) / d, the negated bark square of a whole admissible chain.
Rational e_quotient_chain(const Chain& chain);

Chain reversed(const Chain& chain);

// "[w1,w2,...]"
std::string format_chain(const Chain& chain);
Chain parse_chain(std::string_view text);

}  // namespace cstar
