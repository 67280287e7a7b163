#include "cstar/hn.hpp"

#include <cctype>
#include <numeric>

#include "cstar/error.hpp"

namespace cstar {

namespace {

BranchTrace simulate_pairs(WeightedGraph& g, int base, const std::vector<HNPair>& pairs) {
    BranchTrace trace;
    int x = base;
    for (const HNPair& pair : pairs) {
        PairTrace pt{pair, {}, -1};
        // (a,b): intersection of the branch with x and with y. y starts as a
        // virtual smooth curve transversal to x, which is not part of D.
        std::int64_t a = pair.c;
        std::int64_t b = pair.p;
        int y = -1;
        while (true) {
            trace.multiplicities.push_back(std::min(a, b));
            int e = g.add_vertex(1);
            for (int r : {x, y}) {
                if (r < 0) continue;
                g.set_weight(r, g.weight(r) + 1);
                g.add_edge(e, r);
            }
            if (x >= 0 && y >= 0) g.remove_edge(x, y);
            pt.created.push_back(e);
            if (a == b) break;
            if (a > b) {
                a -= b;
                y = e;
            } else {
                b -= a;
                x = e;
            }
        }
        pt.last = pt.created.back();
        x = pt.last;
        trace.pairs.push_back(std::move(pt));
    }
    trace.last = x;
    return trace;
}

class LiteralParser {
public:
    explicit LiteralParser(std::string_view text) : text_(text) {}

    HNBranch parse() {
        HNBranch b;
        keyword("j:");
        b.j = static_cast<int>(integer());
        keyword("pairs:");
        skip_ws();
        if (at_end() || text_[pos_] != '(') throw ParseError(pos_, "expected '(' to start a pair");
        while (true) {
            skip_ws();
            if (at_end()) break;
            expect('(');
            std::int64_t c = integer();
            expect(',');
            std::int64_t p = integer();
            expect(')');
            b.pairs.push_back({c, p});
        }
        return b;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char ch) {
        skip_ws();
        if (at_end() || text_[pos_] != ch) {
            throw ParseError(pos_, std::string("expected '") + ch + "'");
        }
        ++pos_;
    }

    void keyword(std::string_view word) {
        for (char ch : word) expect(ch);
    }

    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        std::int64_t v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, text_[pos_] - '0', &v) ||
                v > 1'000'000'000) {
                throw ParseError(start, "integer out of range");
            }
            ++pos_;
        }
        if (pos_ == start) throw ParseError(start, "expected a nonnegative integer");
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<HNPair> HNBranch::expanded() const {
    std::vector<HNPair> out(static_cast<std::size_t>(j), HNPair{c1(), c1()});
    out.insert(out.end(), pairs.begin(), pairs.end());
    return out;
}

void validate(const HNBranch& b) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::InvalidBranch, "invalid branch " + format_branch(b) + ": " + why);
    };
    if (b.j < 0) fail("j must be nonnegative");
    if (b.pairs.empty()) fail("no pairs");
    for (const auto& pr : b.pairs) {
        if (pr.p < 1 || pr.p > pr.c) fail("pairs need 1 <= p <= c");
    }
    if (b.c1() <= 1) fail("c1 must exceed 1");
    if (b.p1() >= b.c1()) fail("p1 must be smaller than c1");
    for (std::size_t i = 0; i + 1 < b.pairs.size(); ++i) {
        if (b.pairs[i + 1].c != std::gcd(b.pairs[i].c, b.pairs[i].p)) fail("c_{i+1} must equal gcd(c_i, p_i)");
    }
    const HNPair& last = b.last();
    if (std::gcd(last.c, last.p) != 1 || last.p >= last.c) fail("last pair must be coprime with p < c");
}

bool is_valid(const HNBranch& b) {
    try {
        validate(b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string format_pairs(const std::vector<HNPair>& pairs) {
    std::string out;
    for (const auto& pr : pairs) out += "(" + std::to_string(pr.c) + "," + std::to_string(pr.p) + ")";
    return out;
}

std::string format_branch(const HNBranch& b) {
    return "j:" + std::to_string(b.j) + " pairs:" + format_pairs(b.pairs);
}

HNBranch parse_branch(std::string_view text) {
    HNBranch b = LiteralParser(text).parse();
    try {
        validate(b);
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
    return b;
}

std::int64_t mult_sum(const HNBranch& b) {
    std::int64_t s = (b.j + 1) * b.c1() - 1;
    for (const auto& pr : b.pairs) s += pr.p;
    return s;
}

std::int64_t mult_sq_sum(const HNBranch& b) {
    std::int64_t s = b.j * b.c1() * b.c1();
    for (const auto& pr : b.pairs) s += pr.c * pr.p;
    return s;
}

int jumping_prefix(const HNBranch& b) { return b.j; }

std::int64_t blowups_for_pair(std::int64_t c, std::int64_t p) {
    std::int64_t count = 0;
    while (p != 0) {
        count += c / p;
        std::int64_t r = c % p;
        c = p;
        p = r;
    }
    return count;
}

BranchTrace simulate_branch(WeightedGraph& g, int base, const HNBranch& branch, Label last_label) {
    validate(branch);
    BranchTrace trace = simulate_pairs(g, base, branch.expanded());
    g.set_label(trace.last, last_label);
    return trace;
}

ResolutionResult resolve_branch(const HNBranch& branch) {
    ResolutionResult out;
    out.line_id = out.graph.add_vertex(-1, Label::LineInfty);
    out.trace = simulate_branch(out.graph, out.line_id, branch, Label::C);
    out.multiplicities = out.trace.multiplicities;
    out.blowup_count = static_cast<std::int64_t>(out.multiplicities.size());
    out.c_id = out.trace.last;
    return out;
}

Twig twig_in_graph(const WeightedGraph& g, const PairTrace& trace) {
    Twig twig;
    if (trace.pair.p == trace.pair.c) return twig;
    int prev = -1;
    int cur = trace.created.front();
    while (cur != trace.last) {
        twig.ids.push_back(cur);
        twig.chain.push_back(g.weight(cur));
        int next = -1;
        for (int n : g.neighbors(cur)) {
            if (n != prev) next = n;
        }
        if (next < 0 || (prev >= 0 && g.degree(cur) != 2)) {
            throw Error(ErrorCode::InvalidInput, "pair twig does not end at its last curve");
        }
        prev = cur;
        cur = next;
    }
    return twig;
}

Chain twig_of_pair(std::int64_t c, std::int64_t p) {
    if (p < 1 || p >= c) {
        throw Error(ErrorCode::InvalidInput, "twig_of_pair needs 1 <= p < c");
    }
    WeightedGraph g;
    int base = g.add_vertex(1);
    BranchTrace trace = simulate_pairs(g, base, {HNPair{c, p}});
    return twig_in_graph(g, trace.pairs.front()).chain;
}

}  // namespace cstar
