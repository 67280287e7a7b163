#include "cstar/filters.hpp"

#include <functional>
#include <sstream>
#include <tuple>

#include "cstar/boundary.hpp"
#include "cstar/error.hpp"
#include "cstar/intersection.hpp"

namespace cstar {

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::Arithmetic: return "arithmetic";
        case Stage::Graph: return "graph";
        case Stage::Bmy: return "bmy";
        case Stage::Case: return "case";
    }
    return "?";
}

const char* to_string(Status status) {
    switch (status) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Inapplicable: return "INAPPLICABLE";
    }
    return "?";
}

std::optional<Stage> parse_stage(std::string_view text) {
    for (Stage s : {Stage::Arithmetic, Stage::Graph, Stage::Bmy, Stage::Case}) {
        if (text == to_string(s)) return s;
    }
    return std::nullopt;
}

namespace {

struct Context {
    EmbeddingCandidate cand;
    std::int64_t d = 0;
    GammaPrime gp;
    std::int64_t gamma = 0;
    std::int64_t eps = 0;
    int t = 0;
    int j = 0;
    int jt = 0;
    std::optional<BoundaryGraph> boundary;

    const HNBranch& a() const { return cand.lambda; }
    const HNBranch& b() const { return cand.lambda_tilde; }

    const BoundaryGraph& graph() {
        if (!boundary) boundary = assemble_boundary(cand);
        return *boundary;
    }
};

struct Outcome {
    Status status;
    Witness witness;
};

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }
std::string str(const Rational& v) { return v.str(); }

Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

Outcome f_consistency(Context& c) {
    return {pass_if(c.gp.consistent()),
            {{"gamma_from_sum", str(c.gp.from_sum)}, {"gamma_from_squares", str(c.gp.from_squares)}}};
}

Outcome f_eps(Context& c) { return {pass_if(c.eps >= 0), {{"epsilon", str(c.eps)}}}; }

Outcome f_gamma_lo(Context& c) { return {pass_if(c.gamma >= 2), {{"gamma", str(c.gamma)}}}; }

Outcome f_basic(Context& c) {
    return {pass_if(2 * c.eps + c.gamma <= 7 + c.t),
            {{"lhs", str(2 * c.eps + c.gamma)}, {"rhs", str(static_cast<std::int64_t>(7 + c.t))}}};
}

Outcome f_gamma8(Context& c) { return {pass_if(c.gamma <= 8), {{"gamma", str(c.gamma)}}}; }

Outcome f_j1(Context& c) { return {pass_if(c.j <= 1), {{"j", str(static_cast<std::int64_t>(c.j))}}}; }

Outcome f_gamma5(Context& c) { return {pass_if(c.gamma <= 5), {{"gamma", str(c.gamma)}}}; }

Outcome f_jt6(Context& c) { return {pass_if(c.jt <= 6), {{"jt", str(static_cast<std::int64_t>(c.jt))}}}; }

Outcome f_noasy_gen(Context& c) {
    const std::int64_t c1 = c.a().c1();
    const std::int64_t ct1 = c.b().c1();
    bool ok = true;
    bool applied = false;
    Witness w;
    auto need = [&](bool when, std::int64_t value, const std::string& name) {
        if (!when) return;
        applied = true;
        w.emplace_back(name, str(value));
        ok = ok && value >= 2;
    };
    need(c.jt >= 1, c1 - c.b().p1(), "c1-pt1");
    need(c.jt > 1, c1 - ct1, "c1-ct1");
    need(c.j >= 1, ct1 - c.a().p1(), "ct1-p1");
    need(c.j > 1, ct1 - c1, "ct1-c1");
    if (!applied) return {Status::Inapplicable, {}};
    return {pass_if(ok), w};
}

Outcome f_assembly(Context& c) {
    const BoundaryGraph& g = c.graph();
    Witness w{{"contracted", str(static_cast<std::int64_t>(g.contracted.size()))},
              {"e_weight", g.tree.contains(g.parts.e) ? str(g.tree.weight(g.parts.e)) : "missing"}};
    if (!g.well_formed()) w.emplace_back("problem", g.problem);
    return {pass_if(g.well_formed()), w};
}

Outcome f_gg(Context& c) {
    const auto& q = c.graph().parts;
    return {pass_if(q.g != q.g_tilde), {{"g", str(static_cast<std::int64_t>(q.g))},
                                        {"g_tilde", str(static_cast<std::int64_t>(q.g_tilde))}}};
}

Outcome f_q0_minimal(Context& c) {
    const BoundaryGraph& g = c.graph();
    for (int id : g.parts.q0) {
        std::int64_t w = g.tree.weight(id);
        if (w <= 0) return {Status::Fail, {{"vertex", str(static_cast<std::int64_t>(id))}, {"weight", str(w)}}};
        if (w == 1 && g.tree.degree(id) <= 2) {
            return {Status::Fail,
                    {{"vertex", str(static_cast<std::int64_t>(id))}, {"weight", "1"}, {"non_branching", "true"}}};
        }
    }
    return {Status::Pass, {{"q0_size", str(static_cast<std::int64_t>(g.parts.q0.size()))}}};
}

Outcome f_ebound(Context& c) {
    Rational e = e_value(c.graph().tree);
    Rational bound = Rational(1 + c.eps);
    return {pass_if(e <= bound), {{"e", str(e)}, {"bound", str(bound)}}};
}

// One side of the twig count bound: R is the last-pair twig of one branch and
// T = Q - R + (last curve of the other branch).
struct DeltaSide {
    bool applicable = false;
    bool ok = true;
    Witness witness;
};

DeltaSide delta_side(const Context& c, const BoundaryGraph& g, bool tilde_side) {
    const QDecomposition& q = g.parts;
    const std::vector<int>& r_ids = tilde_side ? q.q1_tilde : q.q1;
    const std::vector<int>& other_twig = tilde_side ? q.q1 : q.q1_tilde;
    const int other_last = tilde_side ? q.c : q.c_tilde;
    const std::int64_t ch = tilde_side ? c.b().last().c : c.a().last().c;
    const std::string tag = tilde_side ? "tilde_" : "";

    std::vector<int> t_ids = q.q0;
    t_ids.insert(t_ids.end(), other_twig.begin(), other_twig.end());
    t_ids.push_back(q.e);
    t_ids.push_back(other_last);
    WeightedGraph t = g.tree.induced(t_ids);

    DeltaSide out;
    ComponentClass cls = classify_component(t);
    if (cls.is_quotient()) {
        out.witness.emplace_back(tag + "T", "quotient type");
        return out;
    }
    out.applicable = true;

    Chain r;
    for (int id : r_ids) r.push_back(g.tree.weight(id));
    const std::int64_t dd = d_prime(r) + d_doubleprime(r);
    DeltaResult dl = delta(t);
    const std::int64_t s = dl.twig_count;
    out.ok = (s - 3 - c.eps) * ch + dd - 7 <= 0;

    Rational lower = Rational(s - 2) - Rational(6, ch);
    Rational e = e_value(t);
    Rational upper = Rational(1 + c.eps) - Rational(dd - 1, ch);
    bool chain_holds = lower <= dl.delta && dl.delta <= e && e <= upper;

    out.witness = {{tag + "s", str(s)},
                   {tag + "c_h", str(ch)},
                   {tag + "d1+d2", str(dd)},
                   {tag + "lhs", str(Rational(s - 3 - c.eps))},
                   {tag + "rhs", str(Rational(7 - dd, ch))},
                   {tag + "delta", str(dl.delta)},
                   {tag + "e", str(e)},
                   {tag + "delta_lower", str(lower)},
                   {tag + "e_upper", str(upper)},
                   {tag + "delta_e_chain_holds", str(chain_holds)}};
    return out;
}

Outcome f_delta_eps(Context& c) {
    if (!(c.eps <= 1 || c.gamma >= 5)) return {Status::Inapplicable, {{"guard", "eps > 1 and gamma < 5"}}};
    const BoundaryGraph& g = c.graph();
    DeltaSide left = delta_side(c, g, false);
    DeltaSide right = delta_side(c, g, true);
    Witness w = left.witness;
    w.insert(w.end(), right.witness.begin(), right.witness.end());
    if (!left.applicable && !right.applicable) return {Status::Inapplicable, w};
    bool ok = (!left.applicable || left.ok) && (!right.applicable || right.ok);
    return {pass_if(ok), w};
}

Outcome f_bmy(Context& c) {
    if (!(c.gamma + c.t >= 6 || c.eps <= c.t)) {
        return {Status::Inapplicable, {{"guard", "gamma + t < 6 and eps > t"}}};
    }
    const BoundaryGraph& g = c.graph();
    GammaOrder order = gamma_order_lower(g.part(g.parts.q0));
    Rational q0_term = order.infinite ? Rational(0) : Rational(1, order.value);
    Rational sum = Rational(1, c.a().last().c) + Rational(1, c.b().last().c) + Rational(1, c.gamma) + q0_term;
    return {pass_if(sum >= Rational(1)),
            {{"c_h", str(c.a().last().c)},
             {"ct_h", str(c.b().last().c)},
             {"gamma", str(c.gamma)},
             {"d_q0", order.infinite ? "not negative definite" : str(order.value)},
             {"q0_order", order.infinite ? "infinite" : (order.exact ? "exact" : "lower bound d(Q0)")},
             {"sum", str(sum)}}};
}

Outcome f_noasy_03(Context& c) {
    if (!(c.j == 0 && c.jt >= 3)) return {Status::Inapplicable, {}};
    const std::int64_t c1 = c.a().c1();
    const std::int64_t p1 = c.a().p1();
    const std::int64_t ct1 = c.b().c1();
    const std::int64_t pt1 = c.b().p1();
    if (c.jt == 3) {
        return {pass_if(2 * c1 - ct1 >= pt1 + p1), {{"2c1-ct1", str(2 * c1 - ct1)}, {"pt1+p1", str(pt1 + p1)}}};
    }
    return {pass_if(2 * (c1 - ct1) >= p1), {{"2(c1-ct1)", str(2 * (c1 - ct1))}, {"p1", str(p1)}}};
}

Outcome f_noasy_11(Context& c) {
    if (!(c.j == 1 && c.jt == 1)) return {Status::Inapplicable, {}};
    const std::int64_t x = c.b().c1() - c.a().p1();
    const std::int64_t y = c.a().c1() - c.b().p1();
    return {pass_if(x >= 2 && y >= 2), {{"ct1-p1", str(x)}, {"c1-pt1", str(y)}}};
}

Outcome f_type0_reduce(Context& c) {
    if (!(c.j == 0 && c.jt <= 2)) return {Status::Inapplicable, {}};
    Type0Reduction r = reduce_type0(c.cand);
    if (!r.applicable) return {Status::Pass, {{"reduction", "not applicable"}}};
    return {pass_if(!r.drops),
            {{"branch", r.on_tilde ? "lambda_tilde" : "lambda"},
             {"k", str(r.k)},
             {"r", str(r.r)},
             {"c2", str(r.c2)},
             {"new_type", "(0," + std::to_string(r.new_jt) + ")"},
             {"new_degree", str(r.new_degree)},
             {"old_degree", str(r.old_degree)}}};
}

struct Filter {
    FilterInfo info;
    std::function<Outcome(Context&)> run;
};

const std::vector<Filter>& filters() {
    static const std::vector<Filter> table = {
        {{"F_CONSISTENCY", Stage::Arithmetic,
          "gamma' from the sum of multiplicities equals gamma' from the sum of their squares"},
         f_consistency},
        {{"F_EPS", Stage::Arithmetic, "eps >= 0, where (K+D+E)^2 = 2 - eps"}, f_eps},
        {{"F_GAMMA_LO", Stage::Arithmetic, "gamma >= 2"}, f_gamma_lo},
        {{"F_BASIC", Stage::Arithmetic, "2 eps + gamma <= 7 + t"}, f_basic},
        {{"F_GAMMA8", Stage::Arithmetic, "gamma <= 8"}, f_gamma8},
        {{"F_J1", Stage::Arithmetic, "j <= 1"}, f_j1},
        {{"F_GAMMA5", Stage::Arithmetic, "gamma <= 5"}, f_gamma5},
        {{"F_JT6", Stage::Arithmetic, "jt <= 6"}, f_jt6},
        {{"F_NOASY_GEN", Stage::Arithmetic,
          "no good asymptote: c1 - pt1 >= 2 if jt >= 1 and c1 - ct1 >= 2 if jt > 1, and symmetrically"},
         f_noasy_gen},
        {{"F_ASSEMBLY", Stage::Graph, "snc-minimalization of D' leaves C, C~ and E untouched"}, f_assembly},
        {{"F_GG", Stage::Graph, "C and C~ meet different components of Q0"}, f_gg},
        {{"F_Q0_MINIMAL", Stage::Graph, "Q0 is snc-minimal and has only negative curves"}, f_q0_minimal},
        {{"F_EBOUND", Stage::Graph, "e(D+E) <= 1 + eps"}, f_ebound},
        {{"F_DELTA_EPS", Stage::Graph,
          "if eps <= 1 or gamma >= 5: s - 3 - eps <= -(d'(Q1) + d''(Q1) - 7)/c_h, s the number of maximal twigs "
          "of Q - Q1 + C~ when that divisor is not of quotient type, and symmetrically"},
         f_delta_eps},
        {{"F_BMY", Stage::Bmy,
          "if gamma + t >= 6 or eps <= t: 1/c_h + 1/ct_h + 1/gamma + 1/|Gamma(Q0)| >= 1, with |Gamma(Q0)| "
          "replaced by its lower bound d(Q0)"},
         f_bmy},
        {{"F_NOASY_03", Stage::Case,
          "type (0,jt): 2c1 - ct1 >= pt1 + p1 if jt = 3 and 2(c1 - ct1) >= p1 if jt > 3"},
         f_noasy_03},
        {{"F_NOASY_11", Stage::Case, "type (1,1): ct1 - p1 >= 2 and c1 - pt1 >= 2"}, f_noasy_11},
        {{"F_TYPE0_REDUCE", Stage::Case,
          "type (0,jt) with jt <= 2: the coordinates have minimal degree, so no degree-lowering change exists"},
         f_type0_reduce},
    };
    return table;
}

}  // namespace

const std::vector<FilterInfo>& filter_catalog() {
    static const std::vector<FilterInfo> catalog = [] {
        std::vector<FilterInfo> out;
        for (const auto& f : filters()) out.push_back(f.info);
        return out;
    }();
    return catalog;
}

const FilterInfo& filter_info(std::string_view name) {
    for (const auto& f : filter_catalog()) {
        if (f.name == name) return f;
    }
    throw Error(ErrorCode::InvalidInput, "unknown filter " + std::string(name));
}

namespace {

Context make_context(const EmbeddingCandidate& cand) {
    validate(cand);
    Context ctx;
    ctx.cand = normalized(cand);
    ctx.d = degree(ctx.cand);
    ctx.gp = gamma_prime(ctx.cand);
    ctx.gamma = ctx.gp.from_sum;
    ctx.eps = total_length(ctx.cand) - ctx.gamma - 2;
    ctx.t = t_value(ctx.cand);
    ctx.j = ctx.cand.lambda.j;
    ctx.jt = ctx.cand.lambda_tilde.j;
    return ctx;
}

}  // namespace

Verdict evaluate_filter(const EmbeddingCandidate& cand, std::string_view name) {
    Context ctx = make_context(cand);
    for (const auto& f : filters()) {
        if (f.info.name != name) continue;
        if (f.info.stage > Stage::Arithmetic && (!ctx.gp.consistent() || ctx.gamma < 1)) {
            throw Error(ErrorCode::InvalidInput, "graph filters need a consistent gamma' >= 1");
        }
        Outcome o = f.run(ctx);
        return {f.info.name, f.info.stage, o.status, f.info.citation, std::move(o.witness)};
    }
    throw Error(ErrorCode::InvalidInput, "unknown filter " + std::string(name));
}

ConstraintReport apply_filters(const EmbeddingCandidate& cand, Stage stage) {
    Context ctx = make_context(cand);
    ConstraintReport report;
    report.candidate = ctx.cand;
    report.stage = stage;
    for (const auto& f : filters()) {
        if (f.info.stage > stage) break;
        Outcome o = f.run(ctx);
        report.verdicts.push_back({f.info.name, f.info.stage, o.status, f.info.citation, std::move(o.witness)});
        if (o.status == Status::Fail) {
            report.eliminated_by = f.info.name;
            break;
        }
    }
    return report;
}

Json report_to_json(const ConstraintReport& report) {
    const EmbeddingCandidate& c = report.candidate;
    GammaPrime gp = gamma_prime(c);
    Json out;
    out["candidate"] = candidate_to_json(c);
    out["coordinates"] = format_coordinates(c);
    out["d"] = degree(c);
    out["type"] = Json::array({c.lambda.j, c.lambda_tilde.j});
    if (gp.consistent()) {
        out["gamma"] = gp.from_sum;
        out["epsilon"] = *epsilon(c);
    } else {
        out["gamma"] = nullptr;
        out["epsilon"] = nullptr;
    }
    out["t"] = t_value(c);
    out["stage"] = to_string(report.stage);
    out["eliminated_by"] = report.eliminated_by ? Json(*report.eliminated_by) : Json(nullptr);
    Json verdicts = Json::array();
    for (const auto& v : report.verdicts) {
        Json jv;
        jv["filter"] = v.filter;
        jv["stage"] = to_string(v.stage);
        jv["status"] = to_string(v.status);
        jv["citation"] = v.citation;
        Json w = Json::object();
        for (const auto& [k, val] : v.witness) w[k] = val;
        jv["witness"] = w;
        verdicts.push_back(jv);
    }
    out["verdicts"] = verdicts;
    return out;
}

std::string report_to_text(const ConstraintReport& report) {
    const EmbeddingCandidate& c = report.candidate;
    std::ostringstream os;
    os << "candidate " << format_candidate(c) << "  d=" << degree(c);
    if (auto e = epsilon(c)) os << " gamma=" << gamma_prime(c).from_sum << " eps=" << *e;
    os << " t=" << t_value(c) << "\n";
    for (const auto& v : report.verdicts) {
        os << "  " << v.filter;
        for (std::size_t pad = v.filter.size(); pad < 16; ++pad) os << ' ';
        os << to_string(v.status);
        if (!v.witness.empty()) {
            os << "  [";
            for (std::size_t i = 0; i < v.witness.size(); ++i) {
                os << (i ? ", " : "") << v.witness[i].first << "=" << v.witness[i].second;
            }
            os << "]";
        }
        os << "\n      " << v.citation << "\n";
    }
    os << (report.eliminated_by ? "eliminated by " + *report.eliminated_by : std::string("survives")) << "\n";
    return os.str();
}

namespace {

Type0Reduction try_reduce(const HNBranch& b, std::int64_t other_c1, bool on_tilde) {
    Type0Reduction out;
    out.on_tilde = on_tilde;
    if (b.j != 0 || b.h() < 2) return out;
    const std::int64_t c1 = b.c1();
    const std::int64_t c2 = b.pairs[1].c;
    if (c1 - b.p1() != c2) return out;
    std::int64_t r = 0;
    for (std::size_t i = 1; i < b.pairs.size() && b.pairs[i].p == c2 && b.pairs[i].c == c2; ++i) ++r;
    const std::int64_t k = c1 / c2;
    if (r < k - 1) return out;
    out.applicable = true;
    out.k = k;
    out.r = r;
    out.c2 = c2;
    out.new_jt = static_cast<int>(r - k + 1);
    out.old_degree = c1 + other_c1;
    out.new_degree = k * other_c1 + c2;
    out.drops = other_c1 < c2;
    return out;
}

}  // namespace

Type0Reduction reduce_type0(const EmbeddingCandidate& cand) {
    EmbeddingCandidate c = normalized(cand);
    if (c.lambda.j != 0 || c.lambda_tilde.j > 2) return {};
    Type0Reduction first = try_reduce(c.lambda, c.lambda_tilde.c1(), false);
    Type0Reduction second = try_reduce(c.lambda_tilde, c.lambda.c1(), true);
    // A drop needs the other c1 below c2, so prefer the larger c2 among equals.
    auto rank = [](const Type0Reduction& r) { return std::make_tuple(r.applicable, r.drops, r.c2); };
    return rank(second) > rank(first) ? second : first;
}

}  // namespace cstar
