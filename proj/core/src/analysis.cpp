#include "rsg/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rsg/bounds.hpp"
#include "rsg/error.hpp"

namespace rsg {

namespace {

using u128 = unsigned __int128;

int clamp_jobs(int jobs, std::uint64_t work_items) {
    if (jobs < 1) jobs = 1;
    if (jobs > 64) jobs = 64;
    if (work_items > 0 && static_cast<std::uint64_t>(jobs) > work_items)
        jobs = static_cast<int>(work_items);
    return jobs;
}

// Runs fn(range_index, lo, hi) over an even partition of [0, n).
template <typename Fn>
void parallel_ranges(std::uint64_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n == 0) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs - 1);
    for (int r = 1; r < jobs; ++r) {
        const std::uint64_t lo = n * r / jobs;
        const std::uint64_t hi = n * (r + 1) / jobs;
        pool.emplace_back(fn, r, lo, hi);
    }
    fn(0, 0, n / jobs);
    for (auto& th : pool) th.join();
}

}  // namespace

ProfileSpace::ProfileSpace(const AccessibilityGraph& g, std::uint64_t budget) : g_(&g) {
    const int n = g.num_agents();
    u128 count = 1;
    for (AgentId a = 0; a < n; ++a) {
        count *= static_cast<std::uint64_t>(g.agent_degree(a));
        if (count > u128(UINT64_MAX)) count = u128(UINT64_MAX);  // saturate for reporting
    }
    if (count > budget)
        throw BudgetError(static_cast<std::uint64_t>(count), budget);
    stride_.assign(n, 1);
    for (int a = n - 2; a >= 0; --a)
        stride_[a] = stride_[a + 1] * static_cast<std::uint64_t>(g.agent_degree(a + 1));
    size_ = static_cast<std::uint64_t>(count);
}

StrategyProfile ProfileSpace::profile_at(std::uint64_t index) const {
    if (index >= size_)
        throw std::invalid_argument("profile_at: index " + std::to_string(index) +
                                    " out of range");
    const int n = g_->num_agents();
    StrategyProfile s;
    s.choice.resize(n);
    for (AgentId a = 0; a < n; ++a) {
        const auto& qs = g_->accessible(a);
        s.choice[a] = qs[(index / stride_[a]) % qs.size()];
    }
    return s;
}

std::uint64_t ProfileSpace::index_of(const StrategyProfile& s) const {
    if (!is_feasible(*g_, s))
        throw std::invalid_argument("index_of: profile is not feasible");
    std::uint64_t index = 0;
    for (AgentId a = 0; a < g_->num_agents(); ++a) {
        const auto& qs = g_->accessible(a);
        const auto it = std::lower_bound(qs.begin(), qs.end(), s.choice[a]);
        index += static_cast<std::uint64_t>(it - qs.begin()) * stride_[a];
    }
    return index;
}

std::vector<StrategyProfile> enumerate_profiles(const AccessibilityGraph& g,
                                                std::uint64_t budget) {
    const ProfileSpace space(g, budget);
    std::vector<StrategyProfile> out;
    out.reserve(space.size());
    for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.profile_at(i));
    return out;
}

namespace {

// reflect keys for every achievable (count, total) pair with total <= cap,
// so the hot digraph loop never re-derives a rational.
class KeyTable {
public:
    KeyTable(int cap, const Rational& lambda) : cap_(cap), keys_((cap + 1) * (cap + 2) / 2) {
        for (int total = 1; total <= cap; ++total)
            for (int count = 0; count <= total; ++count)
                keys_[slot(count, total)] = reflect(Rational(count, total), lambda);
    }
    const Rational& key(int count, int total) const { return keys_[slot(count, total)]; }

private:
    std::size_t slot(int count, int total) const { return total * (total - 1) / 2 + count; }
    int cap_;
    std::vector<Rational> keys_;
};

}  // namespace

ImprovementDigraph build_improvement_digraph(const AccessibilityGraph& g, const UtilitySpec& spec,
                                             Mode mode, int jobs, std::uint64_t budget) {
    const ProfileSpace space(g, budget);
    const std::uint64_t n_nodes = space.size();
    const int n = g.num_agents();
    // Post-move totals never exceed the target's degree, so the max resource
    // degree caps every (count, total) pair seen below.
    const KeyTable table(std::max(g.max_resource_degree(), 1), spec.lambda());

    jobs = clamp_jobs(jobs, n_nodes);
    std::vector<std::uint64_t> counts(n_nodes, 0);
    std::vector<std::vector<ImprovementDigraph::Edge>> blocks(jobs);
    std::vector<std::uint64_t> block_lo(jobs, 0);

    parallel_ranges(n_nodes, jobs, [&](int range_idx, std::uint64_t lo, std::uint64_t hi) {
        block_lo[range_idx] = lo;
        auto& block = blocks[range_idx];
        std::vector<ResourceState> states;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const StrategyProfile s = space.profile_at(i);
            states = state_counts(g, s);
            for (AgentId a = 0; a < n; ++a) {
                const Color c = g.color(a);
                const ResourceId from = s.choice[a];
                const ResourceState& src = states[from];
                const Rational& current = table.key(src.count(c), src.total());
                const auto& qs = g.accessible(a);
                std::size_t pos_from = 0;
                for (std::size_t pos = 0; pos < qs.size(); ++pos)
                    if (qs[pos] == from) { pos_from = pos; break; }
                for (std::size_t pos = 0; pos < qs.size(); ++pos) {
                    const ResourceId to = qs[pos];
                    if (to == from) continue;
                    const ResourceState& tgt = states[to];
                    bool improving;
                    if (mode == Mode::ImpactBlind) {
                        improving = !tgt.empty() &&
                                    table.key(tgt.count(c), tgt.total()) > current;
                    } else {
                        improving = table.key(tgt.count(c) + 1, tgt.total() + 1) > current;
                    }
                    if (!improving) continue;
                    // Same mixed-radix number with agent a's digit swapped.
                    const std::uint64_t target =
                        i - pos_from * space.stride(a) + pos * space.stride(a);
                    block.push_back({target, Move{a, from, to}});
                    ++counts[i];
                }
            }
        }
    });

    ImprovementDigraph d;
    d.offsets_.assign(n_nodes + 1, 0);
    for (std::uint64_t i = 0; i < n_nodes; ++i) d.offsets_[i + 1] = d.offsets_[i] + counts[i];
    d.edges_.resize(d.offsets_[n_nodes]);
    for (int r = 0; r < jobs; ++r) {
        std::copy(blocks[r].begin(), blocks[r].end(), d.edges_.begin() + d.offsets_[block_lo[r]]);
    }
    return d;
}

std::vector<std::uint64_t> digraph_sinks(const ImprovementDigraph& d) {
    std::vector<std::uint64_t> sinks;
    for (std::uint64_t i = 0; i < d.num_nodes(); ++i)
        if (d.is_sink(i)) sinks.push_back(i);
    return sinks;
}

std::optional<CycleWitness> find_cycle(const ImprovementDigraph& d) {
    const std::uint64_t n = d.num_nodes();
    enum : std::uint8_t { White, Gray, Black };
    std::vector<std::uint8_t> color(n, White);
    std::vector<std::uint64_t> stack_pos(n, 0);
    struct Frame {
        std::uint64_t node;
        std::uint32_t next;
    };
    std::vector<Frame> stack;

    for (std::uint64_t root = 0; root < n; ++root) {
        if (color[root] != White) continue;
        color[root] = Gray;
        stack_pos[root] = 0;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            const std::uint64_t node = stack.back().node;
            const auto edges = d.out(node);
            if (stack.back().next < edges.size()) {
                const auto& e = edges[stack.back().next++];
                if (color[e.target] == White) {
                    color[e.target] = Gray;
                    stack_pos[e.target] = stack.size();
                    stack.push_back({e.target, 0});
                } else if (color[e.target] == Gray) {
                    CycleWitness w;
                    w.start_node = e.target;
                    for (std::uint64_t p = stack_pos[e.target]; p + 1 < stack.size(); ++p) {
                        const Frame& f = stack[p];
                        w.moves.push_back(d.out(f.node)[f.next - 1].move);
                    }
                    w.moves.push_back(e.move);
                    return w;
                }
            } else {
                color[node] = Black;
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

std::vector<StrategyProfile> find_equilibria(const AccessibilityGraph& g, const UtilitySpec& spec,
                                             Mode mode, int jobs, std::uint64_t budget) {
    const ProfileSpace space(g, budget);
    const std::uint64_t n_nodes = space.size();
    jobs = clamp_jobs(jobs, n_nodes);
    std::vector<std::vector<std::uint64_t>> found(jobs);
    std::vector<std::uint64_t> block_lo(jobs, 0);
    parallel_ranges(n_nodes, jobs, [&](int range_idx, std::uint64_t lo, std::uint64_t hi) {
        block_lo[range_idx] = lo;
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (!has_improving_move(g, space.profile_at(i), spec, mode))
                found[range_idx].push_back(i);
        }
    });
    std::vector<StrategyProfile> out;
    std::vector<std::pair<std::uint64_t, int>> order(jobs);
    for (int r = 0; r < jobs; ++r) order[r] = {block_lo[r], r};
    std::sort(order.begin(), order.end());
    for (const auto& [lo, r] : order)
        for (const std::uint64_t i : found[r]) out.push_back(space.profile_at(i));
    return out;
}

FipReport fip_check(const AccessibilityGraph& g, const UtilitySpec& spec, Mode mode, int jobs,
                    std::uint64_t budget) {
    const ImprovementDigraph d = build_improvement_digraph(g, spec, mode, jobs, budget);
    FipReport report;
    report.profile_count = d.num_nodes();
    auto cycle = find_cycle(d);
    report.holds = !cycle.has_value();
    if (cycle) {
        const ProfileSpace space(g, budget);
        report.cycle_start = space.profile_at(cycle->start_node);
        report.cycle = std::move(cycle->moves);
    }
    return report;
}

PhiLex phi_lex(const AccessibilityGraph& g, const StrategyProfile& s, const UtilitySpec& spec) {
    if (spec.shape() != PShape::Linear)
        throw std::invalid_argument("phi_lex: welfare component requires the linear shape");
    const int delta = g.max_resource_degree();
    PhiLex phi;
    phi.mono_counts.assign(delta, 0);
    for (const ResourceState& st : state_counts(g, s)) {
        if (st.empty()) ++phi.empty_count;
        else if (st.monochromatic()) ++phi.mono_counts[st.total() - 1];
        if (st.red == delta - 1 || st.blue == delta - 1) ++phi.near_cap_count;
    }
    phi.welfare = social_welfare(g, s, spec);
    return phi;
}

std::string PhiLex::str() const {
    std::string out = "(empty=" + std::to_string(empty_count) + ", mono=[";
    for (std::size_t i = 0; i < mono_counts.size(); ++i)
        out += (i ? "," : "") + std::to_string(mono_counts[i]);
    out += "], near_cap=" + std::to_string(near_cap_count) + ", welfare=" + welfare.str() + ")";
    return out;
}

PhiLexAudit audit_phi_lex(const AccessibilityGraph& g, const Trace& t, const UtilitySpec& spec) {
    if (spec.shape() != PShape::Linear)
        throw std::invalid_argument("audit_phi_lex: requires the linear shape");
    const int delta = g.max_resource_degree();
    if (delta >= 2 && spec.lambda() < lower_bound_L(delta))
        throw std::invalid_argument("audit_phi_lex: peak " + spec.lambda().str() +
                                    " lies below the increasing-regime bound " +
                                    lower_bound_L(delta).str() + " for max degree " +
                                    std::to_string(delta));
    PhiLexAudit audit;
    PhiLex prev = phi_lex(g, t.initial, spec);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        PhiLex cur = phi_lex(g, t.steps[i].profile, spec);
        if (!(prev < cur)) {
            audit.ok = false;
            audit.step = i;
            audit.before = std::move(prev);
            audit.after = std::move(cur);
            return audit;
        }
        prev = std::move(cur);
    }
    return audit;
}

std::int64_t phi_majority(const AccessibilityGraph& g, const StrategyProfile& s) {
    std::int64_t total = 0;
    for (const ResourceState& st : state_counts(g, s)) total += std::max(st.red, st.blue);
    return total;
}

PhiMajorityAudit audit_phi_majority(const AccessibilityGraph& g, const Trace& t,
                                    const UtilitySpec& spec) {
    const int delta = g.max_resource_degree();
    if (delta >= 2 && spec.lambda() > upper_bound_U(delta))
        throw std::invalid_argument("audit_phi_majority: peak " + spec.lambda().str() +
                                    " exceeds the decreasing-regime bound " +
                                    upper_bound_U(delta).str() + " for max degree " +
                                    std::to_string(delta));
    PhiMajorityAudit audit;
    StrategyProfile prev = t.initial;
    std::int64_t prev_phi = phi_majority(g, prev);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step& step = t.steps[i];
        if (!(apply(g, prev, step.move) == step.profile))
            throw std::invalid_argument("audit_phi_majority: step " + std::to_string(i) +
                                        " profile does not match its move");
        const std::int64_t cur_phi = phi_majority(g, step.profile);
        if (cur_phi > prev_phi) {
            audit.ok = false;
            audit.step = i;
            audit.detail = "potential increased from " + std::to_string(prev_phi) + " to " +
                           std::to_string(cur_phi);
            return audit;
        }
        if (classify_move(g, prev, step.move) == MoveClass::MajorityToMinority &&
            cur_phi != prev_phi - 1) {
            audit.ok = false;
            audit.step = i;
            audit.detail = "majority-to-minority step moved potential from " +
                           std::to_string(prev_phi) + " to " + std::to_string(cur_phi) +
                           ", expected a drop of one";
            return audit;
        }
        prev = step.profile;
        prev_phi = cur_phi;
    }
    return audit;
}

std::string move_class_name(MoveClass c) {
    switch (c) {
        case MoveClass::MajorityToMinority: return "majority-to-minority";
        case MoveClass::MajorityToMajority: return "majority-to-majority";
        case MoveClass::MinorityToMinority: return "minority-to-minority";
        case MoveClass::MinorityToMajority: return "minority-to-majority";
        default: return "tie-involved";
    }
}

MoveClass classify_move(const AccessibilityGraph& g, const StrategyProfile& s, const Move& m) {
    validate_move(g, s, m);
    const Color c = g.color(m.agent);
    const ResourceState src = resource_state(g, s, m.from);
    const ResourceState tgt = resource_state(g, s, m.to);
    const int src_own = src.count(c), src_other = src.count(opposite(c));
    const int tgt_own = tgt.count(c), tgt_other = tgt.count(opposite(c));

    if (tgt.empty()) return MoveClass::TieInvolved;
    if (src_other == 0) return MoveClass::TieInvolved;   // mover's color fills the source
    if (src_own == src_other) return MoveClass::TieInvolved;  // exact tie at the source
    if (tgt_other == 0) return MoveClass::TieInvolved;   // target already own-color only

    const bool from_majority = src_own > src_other;
    const bool to_majority = tgt_own >= tgt_other;  // pre-move tie tips the mover's way
    if (from_majority)
        return to_majority ? MoveClass::MajorityToMajority : MoveClass::MajorityToMinority;
    return to_majority ? MoveClass::MinorityToMajority : MoveClass::MinorityToMinority;
}

ExtremalFractions extremal_fraction_report(const AccessibilityGraph& g, const StrategyProfile& s,
                                           const StrategyProfile& s_after, ResourceId q_from,
                                           ResourceId q_to) {
    const Rational half(1, 2), zero(0), one(1);
    const auto collect = [&](const StrategyProfile& p, std::optional<Rational>& max_minority,
                             std::optional<Rational>& max_majority) {
        for (const ResourceId q : {q_from, q_to}) {
            const ResourceState st = resource_state(g, p, q);
            for (const Color c : {Color::Red, Color::Blue}) {
                const auto f = fraction(st, c);
                if (!f || *f == zero || *f == one) continue;
                if (*f < half) {
                    if (!max_minority || *f > *max_minority) max_minority = *f;
                } else {
                    if (!max_majority || *f > *max_majority) max_majority = *f;
                }
            }
        }
    };
    ExtremalFractions r;
    collect(s, r.max_minority_before, r.max_majority_before);
    collect(s_after, r.max_minority_after, r.max_majority_after);
    return r;
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (const char ch : text) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

void write_dot(std::ostream& out, const AccessibilityGraph& g, const ImprovementDigraph& d) {
    const ProfileSpace space(g, std::max<std::uint64_t>(d.num_nodes(), 1));
    out << "digraph improvement {\n";
    for (std::uint64_t i = 0; i < d.num_nodes(); ++i) {
        const StrategyProfile s = space.profile_at(i);
        std::string label;
        for (AgentId a = 0; a < g.num_agents(); ++a) {
            if (a) label += " ";
            label += g.agent_name(a) + "=" + g.resource_name(s.choice[a]);
        }
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (std::uint64_t i = 0; i < d.num_nodes(); ++i) {
        for (const auto& e : d.out(i)) {
            out << "  n" << i << " -> n" << e.target << " [label=\""
                << dot_escape(g.agent_name(e.move.agent) + ": " + g.resource_name(e.move.from) +
                              " -> " + g.resource_name(e.move.to))
                << "\"];\n";
        }
    }
    out << "}\n";
}

}  // namespace rsg
