#pragma once

#include "digerm/homology.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace digerm {

/// A cellular flow presentation: the image of a globular complex under the
/// categorization functor.  Dimensions shift down by one (a globular cell of
/// dimension n+1 is attached along an n-disk of execution paths); the
/// attaching chains are carried over unchanged.
struct FlowCell {
    std::string id;
    int dim = 0;
    std::string src;
    std::string tgt;
    ChainSum attach;

    bool operator==(const FlowCell&) const = default;
};

struct FlowPresentation {
    std::vector<std::string> states;
    std::vector<FlowCell> cells;

    bool operator==(const FlowPresentation&) const = default;
};

/// Categorization.  Requires attaching chains on every cell of dimension
/// >= 2; realize() and globe() outputs always carry them.
inline FlowPresentation cat(const GlobularComplex& x)
{
    {
        // structural level only: whether the stored incidence matches the
        // chains is precisely what oracle_check is for
        ValidationReport rep = validate_complex(x, false);
        if (!rep.ok())
            throw InputError("cat: invalid complex:\n" + rep.str());
    }
    FlowPresentation f;
    f.states = x.states;
    for (const auto& c : x.cells) {
        if (c.dim >= 2 && !c.flow)
            throw InputError("cat: cell '" + c.id +
                             "' has no attaching chains; the flow side needs them");
        FlowCell fc;
        fc.id = c.id;
        fc.dim = c.dim - 1;
        fc.src = c.src;
        fc.tgt = c.tgt;
        if (c.flow)
            fc.attach = *c.flow;
        f.cells.push_back(std::move(fc));
    }
    return f;
}

/// Branching chain complexes of a flow, all states in one pass: cells with
/// each source, every attaching chain collapsed onto its first factor (the
/// u*v = u identification).  Chains whose first factor drops more than one
/// dimension land in a lower skeleton and contribute nothing in the top
/// degree.
inline std::vector<std::pair<std::string, ChainComplex>>
flow_branching_chains(const FlowPresentation& f)
{
    std::vector<std::pair<std::string, ChainComplex>> out;
    out.reserve(f.states.size());
    std::unordered_map<std::string, std::size_t> state_pos;
    for (const auto& s : f.states) {
        state_pos.emplace(s, out.size());
        out.emplace_back(s, ChainComplex{});
    }
    struct Slot {
        std::size_t state = 0;
        std::size_t row = 0;
        int dim = 0;
    };
    std::unordered_map<std::string, Slot> where;
    where.reserve(f.cells.size());
    for (const auto& c : f.cells) {
        auto it = state_pos.find(c.src);
        if (it == state_pos.end())
            throw InputError("flow_branching_chains: cell '" + c.id +
                             "' has unknown src '" + c.src + "'");
        ChainComplex& cc = out[it->second].second;
        if (cc.ranks.size() <= static_cast<std::size_t>(c.dim))
            cc.ranks.resize(static_cast<std::size_t>(c.dim) + 1, 0);
        where[c.id] = {it->second,
                       static_cast<std::size_t>(cc.ranks[static_cast<std::size_t>(c.dim)]++),
                       c.dim};
    }
    for (auto& [s, cc] : out) {
        (void)s;
        cc.boundary.resize(cc.ranks.size());
        if (!cc.ranks.empty())
            cc.boundary[0] = Mat(0, static_cast<std::size_t>(cc.ranks[0]));
        for (std::size_t k = 1; k < cc.ranks.size(); ++k)
            cc.boundary[k] = Mat(static_cast<std::size_t>(cc.ranks[k - 1]),
                                 static_cast<std::size_t>(cc.ranks[k]));
    }
    for (const auto& c : f.cells) {
        if (c.dim < 1)
            continue;
        const Slot& slot = where.at(c.id);
        ChainComplex& cc = out[slot.state].second;
        for (const auto& [coef, chain] : c.attach.terms) {
            if (chain.empty())
                continue;
            auto it = where.find(chain.front());
            if (it == where.end())
                throw InputError("flow_branching_chains: chain factor '" + chain.front() +
                                 "' is not a cell");
            if (it->second.dim != c.dim - 1)
                continue; // collapses into a lower skeleton
            if (it->second.state != slot.state)
                throw InputError("flow_branching_chains: first factor '" + chain.front() +
                                 "' does not start at '" + c.src + "'");
            cc.boundary[static_cast<std::size_t>(c.dim)](it->second.row, slot.row) += coef;
        }
    }
    for (const auto& [s, cc] : out)
        for (std::size_t k = 2; k < cc.boundary.size(); ++k)
            if (!mul(cc.boundary[k - 1], cc.boundary[k]).is_zero())
                throw InputError(
                    "flow_branching_chains: boundaries do not square to zero at '" + s + "'");
    return out;
}

inline ChainComplex flow_branching_chain(const FlowPresentation& f, const std::string& alpha)
{
    bool known = false;
    for (const auto& s : f.states)
        if (s == alpha)
            known = true;
    if (!known)
        throw InputError("flow_branching_chain: unknown state '" + alpha + "'");
    for (auto& [s, cc] : flow_branching_chains(f))
        if (s == alpha)
            return std::move(cc);
    return {};
}

struct OracleMismatch {
    std::string state;
    int degree = 0;
    long long row = 0;
    long long col = 0;
    std::string lhs; // germ-side entry
    std::string rhs; // flow-side entry

    bool operator==(const OracleMismatch&) const = default;
};

/// Result of playing the two constructions against each other.
struct OracleReport {
    bool pass = true;
    std::size_t states_checked = 0;
    std::vector<OracleMismatch> mismatches;

    json to_json() const
    {
        json out;
        out["pass"] = pass;
        out["states_checked"] = states_checked;
        json arr = json::array();
        for (const auto& m : mismatches)
            arr.push_back({{"state", m.state},
                           {"degree", m.degree},
                           {"row", m.row},
                           {"col", m.col},
                           {"germ", m.lhs},
                           {"flow", m.rhs}});
        out["mismatches"] = arr;
        return out;
    }
};

/// Independent confirmation that the germ-side and flow-side constructions
/// produce identical boundary matrices at every state, entry by entry under
/// the cell-identity bijection.
inline OracleReport oracle_check(const GlobularComplex& x)
{
    FlowPresentation f = cat(x);
    OracleReport rep;
    auto germ_all = branching_spaces(x);
    auto flow_all = flow_branching_chains(f);
    for (std::size_t si = 0; si < x.states.size(); ++si) {
        const std::string& alpha = x.states[si];
        ++rep.states_checked;
        const CWComplexData& germ = germ_all[si].second;
        const ChainComplex& flow = flow_all[si].second;
        const std::size_t degs = std::max(germ.boundary.size(), flow.boundary.size());
        for (std::size_t k = 0; k < degs; ++k) {
            const Mat* a = k < germ.boundary.size() ? &germ.boundary[k] : nullptr;
            const Mat* b = k < flow.boundary.size() ? &flow.boundary[k] : nullptr;
            const std::size_t rows = std::max(a ? a->rows() : 0, b ? b->rows() : 0);
            const std::size_t cols = std::max(a ? a->cols() : 0, b ? b->cols() : 0);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    Int lhs = (a && i < a->rows() && j < a->cols()) ? (*a)(i, j) : Int(0);
                    Int rhs = (b && i < b->rows() && j < b->cols()) ? (*b)(i, j) : Int(0);
                    if (lhs != rhs) {
                        rep.pass = false;
                        rep.mismatches.push_back({alpha, static_cast<int>(k),
                                                  static_cast<long long>(i),
                                                  static_cast<long long>(j), lhs.str(),
                                                  rhs.str()});
                    }
                }
        }
    }
    return rep;
}

} // namespace digerm
